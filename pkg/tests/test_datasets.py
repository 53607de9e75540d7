"""Consistency checks for the synthetic survey fixtures in data/."""

from collections import Counter
from pathlib import Path

import pytest

from arnav import stats as st

DATA = Path(__file__).resolve().parent.parent / "data"
RAW = str(DATA / "survey_raw.csv")
SUMMARY = str(DATA / "survey_summary.csv")
REVERSED_ITEMS = ["Q1", "Q13"]


@pytest.fixture(scope="module")
def raw_rows():
    return st.load_raw_csv(RAW)


@pytest.fixture(scope="module")
def summary_rows():
    return st.load_summary_csv(SUMMARY)


def test_cohort_shape(raw_rows):
    participants = sorted({r.participant_id for r in raw_rows})
    assert len(participants) == 22
    days = {p: {r.day for r in raw_rows if r.participant_id == p} for p in participants}
    assert all(len(d) == 1 for d in days.values())
    assert sum(1 for d in days.values() if d == {1}) == 11
    assert sum(1 for d in days.values() if d == {2}) == 11


def test_raw_rounds_to_summary(raw_rows, summary_rows):
    grouped = st.scores_by_question(raw_rows, reverse_ids=REVERSED_ITEMS)
    for ref in summary_rows:
        res = st.one_sample_t_raw(grouped[ref["question_id"]])
        assert res.n == ref["n"] == 22
        assert round(res.mean, 2) == ref["mean"]
        assert round(res.sd, 2) == ref["sd"]


def test_reversed_items_stored_in_original_orientation(raw_rows, summary_rows):
    means = {r["question_id"]: r["mean"] for r in summary_rows}
    grouped = st.scores_by_question(raw_rows)
    for qid in REVERSED_ITEMS:
        raw_mean = sum(grouped[qid]) / len(grouped[qid])
        assert round(6 - raw_mean, 2) == means[qid]


def test_understanding_distribution(raw_rows):
    fractions = st.understanding_rows(raw_rows)
    assert Counter(fractions) == {1.0: 12, 0.75: 7, 0.5: 1, 0.25: 2}
    assert st.understanding_score(fractions) == pytest.approx(18.25 / 22, abs=1e-12)


def test_comparison_items_are_day_two_only(raw_rows):
    for qid in (f"Q{i}" for i in range(15, 24)):
        rows = [r for r in raw_rows if r.question_id == qid]
        assert len(rows) == 11
        assert {r.day for r in rows} == {2}
        assert all(1 <= r.score <= 3 for r in rows)


def test_likert_items_cover_both_days(raw_rows):
    for qid in (f"Q{i}" for i in range(1, 15)):
        rows = [r for r in raw_rows if r.question_id == qid]
        assert len(rows) == 22
        assert {r.day for r in rows} == {1, 2}
        assert all(1 <= r.score <= 5 for r in rows)
