#!/usr/bin/env python3
"""Walk through the survey statistics on the bundled dataset.

Covers the full pipeline: loading the raw responses, reversing the two
negatively phrased items, the per-question t-table, the understanding
score, and a day-1 vs day-2 Mann-Whitney check on one question.
"""

import os

from arnav import stats as st

HERE = os.path.dirname(os.path.abspath(__file__))
RAW = os.path.join(HERE, "..", "data", "survey_raw.csv")


def main():
    responses = st.load_raw_csv(RAW)
    print(f"{len(responses)} responses from "
          f"{len({r.participant_id for r in responses})} participants\n")

    grouped = st.scores_by_question(responses, reverse_ids=["Q1", "Q13"])
    raw_q1 = [r.score for r in responses if r.question_id == "Q1"]
    print(f"Q1 is negatively phrased: raw mean {sum(raw_q1) / len(raw_q1):.2f} "
          f"-> reversed mean {sum(grouped['Q1']) / len(grouped['Q1']):.2f}\n")

    rows = []
    for qid in sorted((q for q in grouped if q.startswith("Q") and len(grouped[q]) == 22),
                      key=lambda q: int(q[1:])):
        rows.append({"question_id": qid, "category": "",
                     "result": st.one_sample_t_raw(grouped[qid])})
    text, _ = st.render_tables(rows)
    print(text)

    fractions = st.understanding_rows(responses)
    print(f"understanding: mean correctness "
          f"{st.understanding_score(fractions):.4f} over {len(fractions)} visitors")

    day1 = st.scores_by_question(responses, day=1)["Q7"]
    day2 = st.scores_by_question(responses, day=2)["Q7"]
    u, p = st.mann_whitney_u(day1, day2)
    print(f"\nQ7 day 1 vs day 2: U={u:g}, p={p:.4f} "
          f"({'no' if p > 0.05 else 'a'} day effect at the 5% level)")


if __name__ == "__main__":
    main()
