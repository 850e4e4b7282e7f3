#!/usr/bin/env python3
# Copyright 2026 The fedsim Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the 2018 fixture set: synthetic materials, rosters, scripted
replies, ground truth and the campaign config.

The materials are invented text with the layout of the real documents. The
per-member directions are the published 2018 record (initial idea, final idea,
real vote); scripts replay them so a scripted campaign lands on the published
simulated rates.
"""

import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent

UP, HOLD, DOWN = "INCREASE", "MAINTAIN", "DECREASE"
ARROW = {"↑": UP, "→": HOLD, "↓": DOWN}

# date: (current bp, simulated new bp, real new bp, alternatives, members)
# alternatives: label -> (target bp, direction)
# members: (name, initial, final, real)
MEETINGS = {
    "2018-01": (125, 150, 125, {"A": (150, UP), "B": (125, HOLD), "C": (100, DOWN)},
                [("J. Yellen", "↑→→"), ("W. Dudley", "↑→→"), ("L. Brainard", "↑↑→"),
                 ("R. Bostic", "→↑→"), ("L. Mester", "↑↑→")]),
    "2018-03": (125, 150, 150, {"A": (150, UP), "B": (125, HOLD), "C": (100, DOWN)},
                [("J. Powell", "↑↑↑"), ("W. Dudley", "↑↑↑"), ("L. Brainard", "↑→↑"),
                 ("R. Bostic", "↑→↑"), ("L. Mester", "↑↑↑")]),
    "2018-05": (150, 150, 150, {"A": (175, UP), "B": (150, HOLD), "C": (125, DOWN)},
                [("J. Powell", "→→→"), ("W. Dudley", "→→→"), ("L. Brainard", "→→→"),
                 ("R. Bostic", "→↑→"), ("L. Mester", "→→→")]),
    "2018-06": (150, 175, 175, {"A": (175, UP), "B": (150, HOLD), "C": (125, DOWN)},
                [("J. Powell", "↑↑↑"), ("W. Dudley", "↑↑↑"), ("L. Brainard", "↑↑↑"),
                 ("R. Bostic", "↑↑↑"), ("L. Mester", "↑↑↑")]),
    "2018-07": (175, 175, 175, {"A": (200, UP), "B": (150, DOWN), "C": (175, HOLD)},
                [("J. Powell", "↑→→"), ("W. Dudley", "↑→→"), ("L. Brainard", "↑↑→"),
                 ("R. Bostic", "↑↑→"), ("L. Mester", "↑→→")]),
    "2018-09": (175, 175, 200, {"A": (200, UP), "B": (175, HOLD), "C": (150, DOWN)},
                [("J. Powell", "↑→↑"), ("W. Dudley", "↑↑↑"), ("L. Brainard", "↑→↑"),
                 ("R. Bostic", "↑→↑"), ("L. Mester", "↑↑↑")]),
    "2018-11": (200, 200, 200, {"A": (225, UP), "B": (200, HOLD), "C": (175, DOWN)},
                [("J. Powell", "↑→→"), ("W. Dudley", "→→→"), ("L. Brainard", "↑→→"),
                 ("R. Bostic", "↑→→"), ("L. Mester", "↑→→")]),
    "2018-12": (200, 225, 225, {"A": (225, UP), "B": (200, HOLD), "C": (175, DOWN)},
                [("J. Powell", "↑↑↑"), ("W. Dudley", "↑→↑"), ("L. Brainard", "↑↑↑"),
                 ("R. Bostic", "↑↑↑"), ("L. Mester", "↑→↑")]),
}

PUBLISHED_AR = {"J. Yellen": 0.0, "J. Powell": 85.7, "W. Dudley": 87.5, "L. Brainard": 50.0,
                "R. Bostic": 37.5, "L. Mester": 75.0}

MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August",
          "September", "October", "November", "December"]

DISTRICTS = ["Boston", "New York", "Philadelphia", "Cleveland", "Richmond", "Atlanta",
             "Chicago", "St. Louis", "Minneapolis", "Kansas City", "Dallas", "San Francisco"]

SECTORS = ["manufacturing", "retail sales", "residential construction", "commercial real estate",
           "agriculture", "energy", "transportation", "banking", "tourism", "professional services",
           "technology", "health care"]

PACE = ["modest", "moderate", "slight", "solid", "steady", "strong"]


def pct(bp):
    return f"{bp / 100:.2f}%"


def beige_book(date, idx):
    month = MONTHS[int(date[5:]) - 1]
    out = []
    for i, d in enumerate(DISTRICTS):
        s1 = SECTORS[(i + idx) % len(SECTORS)]
        s2 = SECTORS[(i + 2 * idx + 5) % len(SECTORS)]
        pace = PACE[(i * 3 + idx) % len(PACE)]
        wages = 2 + (i + idx) % 3
        body = (f"Economic activity in the {d} District expanded at a {pace} pace in the weeks "
                f"before the {month} 2018 meeting. Contacts in {s1} reported higher order books, "
                f"while {s2} was little changed. Hiring remained selective and firms cited "
                f"shortages of skilled workers; wage growth was near {wages} percent.\n\n"
                f"Prices rose moderately. Input costs for steel and freight increased, and "
                f"several contacts expected to pass part of those costs to customers.")
        if d == "Cleveland":
            body += (" Automobile dealers described demand as steady, helped by incentives and "
                     "low unemployment, although rising loan rates weighed on used vehicle sales.")
        out.append(f"== {d} ==\n{body}\n")
    return "\n".join(out)


def tealbook(date, current):
    month = MONTHS[int(date[5:]) - 1]
    sections = {
        "Domestic Outlook": f"Staff project real GDP growth of about 2.5 percent in 2018, a touch "
                            f"above potential, as fiscal stimulus supports spending through the "
                            f"{month} forecast round.",
        "Labor Market": "The unemployment rate is projected to edge down to 3.8 percent by year end; "
                        "payroll gains continue to exceed the pace consistent with a stable "
                        "unemployment rate.",
        "Inflation": "Core PCE inflation is expected to move up to 2 percent this year and stay near "
                     "that level, with some upside risk from tariffs and a tight labor market.",
        "Financial Conditions": f"The target range for the federal funds rate has a lower bound of "
                                f"{pct(current)}. Financial conditions remain accommodative; "
                                f"equity valuations are elevated and credit spreads are narrow.",
        "Risks": "Risks to the projection are roughly balanced: trade policy and slower foreign "
                 "growth on the downside, a faster decline in unemployment on the upside.",
    }
    return "\n".join(f"== {k} ==\n{v}\n" for k, v in sections.items())


AGENTS = {
    "J. Yellen": dict(full_name="Janet L. Yellen", role="chair", title="Chairman", gender="Female",
                      education=["B.A. in Economics, Brown University", "Ph.D. in Economics, Yale University"],
                      past_positions=["President of the Federal Reserve Bank of San Francisco",
                                      "Vice Chair of the Board of Governors"],
                      stance="Favors a gradual removal of accommodation guided by labor market slack and inflation returning to 2 percent.",
                      personality="Careful, data driven and consensus minded; weighs the costs of moving too fast."),
    "J. Powell": dict(full_name="Jerome H. Powell", role="chair", title="Chairman", gender="Male",
                      education=["B.A. in Politics, Princeton University", "J.D., Georgetown University"],
                      past_positions=["Member of the Board of Governors",
                                      "Under Secretary of the Treasury for Finance"],
                      stance="Supports continued gradual increases in the federal funds rate while the expansion is strong and inflation is near target.",
                      personality="Pragmatic and plain spoken; prefers to keep policy options open and communicate clearly."),
    "W. Dudley": dict(full_name="William C. Dudley", role="vice_chair", title="Vice Chairman", gender="Male",
                      education=["B.A., New College of Florida", "Ph.D. in Economics, University of California, Berkeley"],
                      past_positions=["President of the Federal Reserve Bank of New York",
                                      "Chief U.S. Economist at a major investment bank"],
                      stance="Sees the economy near full employment and favors a steady, predictable path of rate increases.",
                      personality="Market oriented and measured; pays close attention to financial conditions."),
    "L. Brainard": dict(full_name="Lael Brainard", role="governor", title="Governor", gender="Female",
                        education=["B.A., Wesleyan University", "Ph.D. in Economics, Harvard University"],
                        past_positions=["Under Secretary of the Treasury for International Affairs",
                                        "Deputy National Economic Adviser"],
                        stance="Balances a strong domestic outlook against global risks and financial stability concerns.",
                        personality="Analytical and deliberate; attentive to international spillovers."),
    "R. Bostic": dict(full_name="Raphael W. Bostic", role="regional_president",
                      title="President of the Federal Reserve Bank of Atlanta", gender="Male",
                      education=["B.A., Harvard University", "Ph.D. in Economics, Stanford University"],
                      past_positions=["Assistant Secretary at the Department of Housing and Urban Development",
                                      "Professor at the University of Southern California"],
                      stance="Wants policy to reach a neutral setting without overshooting, watching regional business sentiment closely.",
                      personality="Patient and collaborative; relies heavily on conversations with business contacts."),
    "L. Mester": dict(full_name="Loretta J. Mester", role="regional_president",
                      title="President of the Federal Reserve Bank of Cleveland", gender="Female",
                      education=["B.A. in Mathematics and Economics, Barnard College", "Ph.D. in Economics, Princeton University"],
                      past_positions=["Director of Research at the Federal Reserve Bank of Philadelphia"],
                      stance="Concerned about the risks of keeping rates low for too long with the labor market tight.",
                      personality="Direct and systematic; favors policy rules as a cross check."),
    "Economist": dict(full_name="the senior staff economist", role="economist", title="Economist",
                      gender="Female", education=["Ph.D. in Economics"],
                      past_positions=["Section chief, Division of Research and Statistics"],
                      stance="", personality="Neutral and thorough."),
    "Legal Expert": dict(full_name="the General Counsel", role="legal_expert", title="Legal Counsel",
                         gender="Male", education=["J.D."],
                         past_positions=["Deputy General Counsel, Board of Governors"],
                         stance="", personality="Precise and cautious."),
}


def roster(chair):
    names = [chair, "W. Dudley", "L. Brainard", "R. Bostic", "L. Mester", "Economist", "Legal Expert"]
    return {"agents": [dict(name=n, **AGENTS[n]) for n in names]}


def script(date, meeting):
    current, sim_new, real_new, alts, members = meeting
    replies = {}
    by_dir = {d: label for label, (_, d) in alts.items()}
    alt_lines = "\n".join(
        f"ALT {label}: {pct(target)} | {d} | Proposal {label} for {date}."
        for label, (target, d) in sorted(alts.items()))
    replies["Economist"] = {"4": f"Having reviewed the materials for {date}, I propose three options.\n{alt_lines}"}
    replies["Legal Expert"] = {
        "4": "Alternative A is within the Committee's statutory mandate. Alternative B raises no legal "
             "concern. Alternative C is also permissible, though it should be communicated carefully."}
    for name, arrows in members:
        initial, final, _ = (ARROW[a] for a in arrows)
        replies[name] = {
            "4": f"Private reasoning of {name} for {date}: my own reading of the data points to {initial.lower()}.\nSTANCE: {initial}",
            "5": f"First-round statement by {name} at the {date} meeting.\nSTANCE: {initial}",
            "6": f"Debate turn one from {name} ({date}).\nSTANCE: {initial}",
            "7": f"Debate turn two from {name} ({date}); after hearing colleagues I lean {final.lower()}.\nSTANCE: {final}",
            "8": f"Debate turn three from {name} ({date}).\nSTANCE: {final}",
            "9": f"VOTE: {by_dir[final]}",
        }
    return {"default_reply": "Completed", "replies": replies}


def main():
    (HERE / "materials").mkdir(exist_ok=True)
    (HERE / "scripts").mkdir(exist_ok=True)
    (HERE / "rosters").mkdir(exist_ok=True)
    for chair in ("J. Yellen", "J. Powell"):
        path = HERE / "rosters" / f"roster-{chair.split()[-1].lower()}.json"
        path.write_text(json.dumps(roster(chair), indent=2, ensure_ascii=False) + "\n")

    meetings_cfg, truth = [], []
    for idx, (date, meeting) in enumerate(MEETINGS.items()):
        current, _, real_new, _, members = meeting
        (HERE / "materials" / f"beige-book-{date}.txt").write_text(beige_book(date, idx))
        (HERE / "materials" / f"tealbook-a-{date}.txt").write_text(tealbook(date, current))
        (HERE / "scripts" / f"{date}.json").write_text(
            json.dumps(script(date, meeting), indent=2, ensure_ascii=False) + "\n")
        cfg = {"date": date, "current_rate": pct(current), "seed": 20180000 + int(date[5:]),
               "script": f"scripts/{date}.json",
               "materials": [{"kind": "beige_book", "path": f"materials/beige-book-{date}.txt"},
                             {"kind": "tealbook_a", "path": f"materials/tealbook-a-{date}.txt"}]}
        if members[0][0] == "J. Yellen":
            cfg["roster"] = "rosters/roster-yellen.json"
        meetings_cfg.append(cfg)
        truth.append({"date": date, "prev_rate": pct(current), "new_rate": pct(real_new),
                      "members": [{"name": n, "direction": ARROW[a[2]].lower()} for n, a in members]})

    config = {"backend": {"kind": "scripted"}, "roster": "rosters/roster-powell.json",
              "templates_dir": "../templates", "stopwords": "../stopwords.txt",
              "output_dir": "../../out/campaign-2018", "ground_truth": "ground_truth_2018.json",
              "parse_retries": 2, "probe": {"enabled": False, "threshold": 0.3, "max_retries": 3, "strict": False},
              "schedule": {"turns_per_voter": 3, "avoid_repeat_speakers": True, "max_attempts": 1000},
              "feed": {"max_chunk": 12000, "ack_retries": 2}, "meetings": meetings_cfg}
    (HERE / "campaign-2018.json").write_text(json.dumps(config, indent=2) + "\n")
    (HERE / "ground_truth_2018.json").write_text(json.dumps(
        {"schema_version": 1, "meetings": truth, "published_alignment_percent": PUBLISHED_AR},
        indent=2, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
