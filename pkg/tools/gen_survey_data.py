"""Regenerate the synthetic survey fixtures in data/.

The raw per-participant responses are constructed so that the per-question
mean and sample standard deviation round to the reference values in
data/survey_summary.csv (after reversing the negatively phrased items Q1
and Q13). Day 1 covers participants p01..p11, day 2 covers p12..p22; only
day-2 participants answered the three-way comparison items Q15..Q23.

Run from the repository root:  python3 tools/gen_survey_data.py
"""

import csv
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "..", "data")

N = 22
PARTICIPANTS = [f"p{i:02d}" for i in range(1, N + 1)]
DAY = {p: (1 if i < 11 else 2) for i, p in enumerate(PARTICIPANTS)}

CATEGORIES = {
    **{q: "Usability & Comprehensibility" for q in ("Q1", "Q2", "Q3")},
    **{q: "Technical Performance" for q in ("Q4", "Q5", "Q6", "Q7", "Q8")},
    **{q: "Satisfaction" for q in ("Q9", "Q10", "Q11", "Q12", "Q13", "Q14")},
}

# reference (mean, sd) per question, in reversed orientation for Q1/Q13
SUMMARY = {
    "Q1": (3.82, 1.30), "Q2": (3.73, 1.08), "Q3": (3.86, 1.08),
    "Q4": (4.36, 1.05), "Q5": (4.32, 1.21), "Q6": (4.09, 1.02),
    "Q7": (4.36, 1.00), "Q8": (4.18, 1.22), "Q9": (4.09, 1.15),
    "Q10": (4.23, 0.97), "Q11": (4.23, 0.92), "Q12": (4.32, 1.09),
    "Q13": (4.18, 1.44), "Q14": (3.77, 1.15),
}

# how many participants answered 1..5, in reversed orientation; each row
# sums to 22 and reproduces the rounded mean/sd above
LIKERT_COUNTS = {
    "Q1": (2, 2, 2, 8, 8), "Q2": (1, 2, 4, 10, 5), "Q3": (1, 1, 5, 8, 7),
    "Q4": (1, 0, 3, 4, 14), "Q5": (1, 2, 1, 3, 15), "Q6": (0, 2, 4, 6, 10),
    "Q7": (0, 2, 2, 4, 14), "Q8": (1, 2, 2, 4, 13), "Q9": (1, 1, 4, 5, 11),
    "Q10": (0, 2, 2, 7, 11), "Q11": (0, 1, 4, 6, 11), "Q12": (1, 1, 1, 6, 13),
    "Q13": (3, 0, 2, 2, 15), "Q14": (1, 2, 5, 7, 7),
}
REVERSED_ITEMS = ("Q1", "Q13")

# understanding items U1..U4: which items each participant got wrong.
# Fractions come out as 12 x 1.0, 7 x 0.75, 1 x 0.5, 2 x 0.25.
WRONG_ITEMS = {
    "p13": {"U1"}, "p14": {"U2"}, "p15": {"U3"}, "p16": {"U4"},
    "p17": {"U1"}, "p18": {"U2"}, "p19": {"U3"},
    "p20": {"U1", "U3"},
    "p21": {"U1", "U3", "U4"}, "p22": {"U1", "U2", "U3"},
}

# three-way comparison answered on day 2 only: counts for options
# 1 (first system), 2 (both equally), 3 (second system), 11 answers each
THREEWAY_COUNTS = {
    "Q15": (2, 1, 8), "Q16": (1, 2, 8), "Q17": (2, 2, 7),
    "Q18": (1, 3, 7), "Q19": (3, 3, 5), "Q20": (3, 2, 6),
    "Q21": (8, 2, 1), "Q22": (2, 5, 4), "Q23": (3, 2, 6),
}


def assign(counts, participants, seed):
    scores = [level for level, c in enumerate(counts, start=1) for _ in range(c)]
    rng = random.Random(seed)
    rng.shuffle(scores)
    return dict(zip(participants, scores))


def build_rows():
    per_question = {}
    for qi, (qid, counts) in enumerate(sorted(LIKERT_COUNTS.items())):
        scores = assign(counts, PARTICIPANTS, seed=1000 + qi)
        if qid in REVERSED_ITEMS:
            scores = {p: 6 - s for p, s in scores.items()}
        per_question[qid] = scores
    day2 = [p for p in PARTICIPANTS if DAY[p] == 2]
    for qi, (qid, counts) in enumerate(sorted(THREEWAY_COUNTS.items())):
        per_question[qid] = assign(counts, day2, seed=2000 + qi)

    def qkey(q):
        return (q[0], int(q[1:]))

    rows = []
    for p in PARTICIPANTS:
        for qid in sorted(LIKERT_COUNTS, key=qkey):
            rows.append((p, DAY[p], qid, per_question[qid][p]))
        for item in ("U1", "U2", "U3", "U4"):
            rows.append((p, DAY[p], item, 0 if item in WRONG_ITEMS.get(p, ()) else 1))
        if DAY[p] == 2:
            for qid in sorted(THREEWAY_COUNTS, key=qkey):
                rows.append((p, DAY[p], qid, per_question[qid][p]))
    return rows


def main():
    os.makedirs(DATA, exist_ok=True)
    raw_path = os.path.join(DATA, "survey_raw.csv")
    with open(raw_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["participant_id", "day", "question_id", "score"])
        for row in build_rows():
            w.writerow(row)
    print(f"wrote {raw_path}")

    summary_path = os.path.join(DATA, "survey_summary.csv")
    with open(summary_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["question_id", "category", "mean", "sd", "n"])
        for qid, (mean, sd) in SUMMARY.items():
            w.writerow([qid, CATEGORIES[qid], f"{mean:.2f}", f"{sd:.2f}", N])
    print(f"wrote {summary_path}")


if __name__ == "__main__":
    main()
