"""Survey statistics: Likert reversal, one-sample t-tests against a neutral
midpoint, Mann-Whitney U, and understanding-score aggregation.

The t-test accepts either raw 1..5 scores or (mean, sd, n) summary rows,
and the two agree to float precision because the summary path is the only
computation. The Mann-Whitney implementation carries two routes on
purpose: exact enumeration over all group assignments of the pooled
multiset (used for small samples) and the tie-corrected normal
approximation with continuity correction. Keeping both lets tests compare
them directly instead of trusting one blindly.

Input CSV formats:

  raw responses   participant_id,day,question_id,score
                  day is 1/2 or Day1/Day2; Likert items score 1..5;
                  understanding items (see understanding_rows) score 0/1;
                  three-way comparison items score 1/2/3
  summary rows    question_id,category,mean,sd,n
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from scipy.special import betainc

NEUTRAL_MIDPOINT = 3.0
ALLOWED_FRACTIONS = (0.0, 0.25, 0.5, 0.75, 1.0)
EXACT_MWU_LIMIT = 12  # pooled size at or below which the exact route is used


class StatsError(Exception):
    pass


class OutOfRange(StatsError):
    pass


class DegenerateSample(StatsError):
    pass


class EmptyInput(StatsError):
    pass


@dataclass(frozen=True)
class LikertResponse:
    participant_id: str
    question_id: str
    score: int
    day: int  # 1 or 2

    def __post_init__(self):
        if self.day not in (1, 2):
            raise OutOfRange(f"day must be 1 or 2, got {self.day}")


@dataclass(frozen=True)
class TestResult:
    mean: float
    sd: float  # sample standard deviation (n - 1 denominator)
    n: int
    t: float
    p_two_sided: float


def reverse_item(score: int) -> int:
    """Reverse a negatively phrased 5-point item: 1 <-> 5, 2 <-> 4, 3 fixed."""
    if not isinstance(score, (int,)) or isinstance(score, bool):
        raise OutOfRange(f"score must be an integer 1..5, got {score!r}")
    if not 1 <= score <= 5:
        raise OutOfRange(f"score must be in 1..5, got {score}")
    return 6 - score


def one_sample_t(mean: float, sd: float, n: int, mu0: float = NEUTRAL_MIDPOINT) -> TestResult:
    """Two-sided one-sample t-test from summary statistics.

    p comes from the Student-t survival function expressed through the
    regularized incomplete beta function: for df degrees of freedom,
    P(|T| >= |t|) = I(df/2, 1/2)(df / (df + t^2)).
    """
    if n < 2:
        raise DegenerateSample(f"need n >= 2, got {n}")
    if not sd > 0:
        raise DegenerateSample(f"need sd > 0, got {sd}")
    t = (mean - mu0) / (sd / math.sqrt(n))
    df = n - 1
    p = float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return TestResult(mean=mean, sd=sd, n=n, t=t, p_two_sided=min(1.0, max(0.0, p)))


def one_sample_t_raw(scores: Sequence[float], mu0: float = NEUTRAL_MIDPOINT) -> TestResult:
    if len(scores) < 2:
        raise DegenerateSample(f"need at least 2 scores, got {len(scores)}")
    n = len(scores)
    mean = sum(scores) / n
    var = sum((s - mean) ** 2 for s in scores) / (n - 1)
    sd = math.sqrt(var)
    return one_sample_t(mean, sd, n, mu0)


# ----------------------------------------------------------------------
# Mann-Whitney U


def _midranks(pooled: Sequence[float]) -> List[float]:
    order = sorted(range(len(pooled)), key=lambda i: pooled[i])
    ranks = [0.0] * len(pooled)
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and pooled[order[j]] == pooled[order[i]]:
            j += 1
        mid = (i + 1 + j) / 2.0
        for k in range(i, j):
            ranks[order[k]] = mid
        i = j
    return ranks


def mwu_statistic(a: Sequence[float], b: Sequence[float]) -> float:
    """U statistic for sample a, from midrank sums."""
    pooled = list(a) + list(b)
    ranks = _midranks(pooled)
    r1 = sum(ranks[: len(a)])
    return r1 - len(a) * (len(a) + 1) / 2.0


def mwu_exact_p(a: Sequence[float], b: Sequence[float]) -> float:
    """Exact two-sided p by enumerating group assignments of the pooled multiset.

    Ties are handled for free: the permutation distribution of U is built
    from the data as they are. Cost is C(n, |a|), fine for pooled n <= 12.
    """
    pooled = list(a) + list(b)
    n = len(pooled)
    n1 = len(a)
    ranks = _midranks(pooled)
    offset = n1 * (n1 + 1) / 2.0
    u_obs = sum(ranks[:n1]) - offset
    le = ge = total = 0
    for idx in combinations(range(n), n1):
        u = sum(ranks[i] for i in idx) - offset
        total += 1
        if u <= u_obs + 1e-9:
            le += 1
        if u >= u_obs - 1e-9:
            ge += 1
    p = 2.0 * min(le / total, ge / total)
    return min(1.0, p)


def mwu_normal_p(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided p via the normal approximation.

    Variance is tie-corrected; a 0.5 continuity correction shrinks the
    deviation from the mean. Degenerate pooled samples (all values equal)
    give p = 1.
    """
    n1, n2 = len(a), len(b)
    n = n1 + n2
    u = mwu_statistic(a, b)
    mu = n1 * n2 / 2.0
    counts: Dict[float, int] = {}
    for v in list(a) + list(b):
        counts[v] = counts.get(v, 0) + 1
    tie_term = sum(c ** 3 - c for c in counts.values())
    var = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1))) if n > 1 else 0.0
    if var <= 0.0:
        return 1.0
    z = max(0.0, abs(u - mu) - 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> Tuple[float, float]:
    """U for sample a plus a two-sided p.

    Exact enumeration for pooled sizes up to 12, normal approximation with
    tie correction and continuity correction above that.
    """
    if len(a) < 1 or len(b) < 1:
        raise EmptyInput("both samples need at least one value")
    u = mwu_statistic(a, b)
    if len(a) + len(b) <= EXACT_MWU_LIMIT:
        return u, mwu_exact_p(a, b)
    return u, mwu_normal_p(a, b)


# ----------------------------------------------------------------------
# understanding score


def understanding_score(per_participant: Sequence[float]) -> float:
    """Mean of per-participant correctness fractions (0, .25, .5, .75, 1)."""
    if len(per_participant) == 0:
        raise EmptyInput("no participant fractions given")
    for f in per_participant:
        if not any(abs(f - allowed) < 1e-9 for allowed in ALLOWED_FRACTIONS):
            raise OutOfRange(f"fraction {f} not on the quarter grid")
    return sum(per_participant) / len(per_participant)


# ----------------------------------------------------------------------
# CSV input


def _parse_day(raw: str) -> int:
    s = raw.strip().lower()
    if s in ("1", "day1"):
        return 1
    if s in ("2", "day2"):
        return 2
    raise OutOfRange(f"day must be 1/2/Day1/Day2, got {raw!r}")


def load_raw_csv(path: str) -> List[LikertResponse]:
    out: List[LikertResponse] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"participant_id", "day", "question_id", "score"}
        if reader.fieldnames is None or not required.issubset(set(reader.fieldnames)):
            raise StatsError(
                f"{path}: header must contain participant_id,day,question_id,score"
            )
        for i, row in enumerate(reader, start=2):
            try:
                score = int(row["score"])
            except ValueError as e:
                raise StatsError(f"{path}:{i}: bad score {row['score']!r}") from e
            out.append(
                LikertResponse(
                    participant_id=row["participant_id"].strip(),
                    question_id=row["question_id"].strip(),
                    score=score,
                    day=_parse_day(row["day"]),
                )
            )
    if not out:
        raise EmptyInput(f"{path}: no data rows")
    return out


def load_summary_csv(path: str) -> List[Dict[str, object]]:
    """Rows of question_id, category, mean, sd, n."""
    out: List[Dict[str, object]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"question_id", "mean", "sd", "n"}
        if reader.fieldnames is None or not required.issubset(set(reader.fieldnames)):
            raise StatsError(f"{path}: header must contain question_id,category,mean,sd,n")
        for i, row in enumerate(reader, start=2):
            try:
                out.append({
                    "question_id": row["question_id"].strip(),
                    "category": (row.get("category") or "").strip(),
                    "mean": float(row["mean"]),
                    "sd": float(row["sd"]),
                    "n": int(row["n"]),
                })
            except ValueError as e:
                raise StatsError(f"{path}:{i}: bad summary row: {e}") from e
    if not out:
        raise EmptyInput(f"{path}: no data rows")
    return out


def scores_by_question(
    responses: Iterable[LikertResponse],
    reverse_ids: Sequence[str] = (),
    day: Optional[int] = None,
) -> Dict[str, List[int]]:
    """Group scores per question, optionally filtered by day and with the
    named negatively-phrased items reversed."""
    rev = set(reverse_ids)
    out: Dict[str, List[int]] = {}
    for r in responses:
        if day is not None and r.day != day:
            continue
        s = reverse_item(r.score) if r.question_id in rev else r.score
        out.setdefault(r.question_id, []).append(s)
    return out


def understanding_rows(
    responses: Iterable[LikertResponse], prefix: str = "U"
) -> List[float]:
    """Per-participant correctness fractions from binary 0/1 item rows.

    Rows whose question_id starts with the prefix are the understanding
    items; each participant's fraction is the mean of their items.
    """
    per: Dict[str, List[int]] = {}
    for r in responses:
        if not r.question_id.startswith(prefix):
            continue
        if r.score not in (0, 1):
            raise OutOfRange(
                f"understanding item {r.question_id} must be 0/1, got {r.score}"
            )
        per.setdefault(r.participant_id, []).append(r.score)
    if not per:
        raise EmptyInput(f"no question ids start with {prefix!r}")
    return [sum(v) / len(v) for _, v in sorted(per.items())]


# ----------------------------------------------------------------------
# rendering


def format_p(p: float) -> str:
    return "<0.0001" if p < 0.0001 else f"{p:.4f}"


def render_tables(rows: Sequence[Dict[str, object]]) -> Tuple[str, str]:
    """Text table plus CSV for a list of t-test rows.

    Each row needs question_id, category, and a TestResult under "result".
    Categories are kept grouped in input order, printed once per block.
    """
    header = ("Category", "Question", "Mean +/- SD", "t", "p")
    lines: List[Tuple[str, ...]] = []
    csv_lines = ["category,question_id,mean,sd,n,t,p"]
    last_cat = None
    for row in rows:
        res: TestResult = row["result"]  # type: ignore[assignment]
        cat = str(row.get("category", ""))
        shown_cat = "" if cat == last_cat else cat
        last_cat = cat
        lines.append((
            shown_cat,
            str(row["question_id"]),
            f"{res.mean:.2f} +/- {res.sd:.2f}",
            f"{res.t:.2f}",
            format_p(res.p_two_sided),
        ))
        csv_lines.append(
            f"{cat},{row['question_id']},{res.mean},{res.sd},{res.n},"
            f"{res.t:.6f},{format_p(res.p_two_sided)}"
        )
    widths = [max(len(header[i]), *(len(l[i]) for l in lines)) if lines else len(header[i])
              for i in range(len(header))]
    def fmt(cells: Tuple[str, ...]) -> str:
        return "  ".join(c.ljust(widths[i]) for i, c in enumerate(cells)).rstrip()
    text = "\n".join([fmt(header), fmt(tuple("-" * w for w in widths))] + [fmt(l) for l in lines])
    return text + "\n", "\n".join(csv_lines) + "\n"


def render_distributions(
    responses: Iterable[LikertResponse],
    likert_ids: Optional[Sequence[str]] = None,
    threeway_ids: Optional[Sequence[str]] = None,
) -> Dict[str, Dict[str, List[int]]]:
    """Stacked-bar data: per-question counts per response level.

    Likert items count levels 1..5; three-way comparison items count
    levels 1..3. Unlisted ids are classified by their observed score range.
    """
    by_q: Dict[str, List[int]] = {}
    for r in responses:
        by_q.setdefault(r.question_id, []).append(r.score)
    likert: Dict[str, List[int]] = {}
    threeway: Dict[str, List[int]] = {}
    for qid in sorted(by_q):
        scores = by_q[qid]
        if likert_ids is not None and qid in likert_ids:
            target, levels = likert, 5
        elif threeway_ids is not None and qid in threeway_ids:
            target, levels = threeway, 3
        elif likert_ids is None and threeway_ids is None:
            target, levels = (threeway, 3) if max(scores) <= 3 else (likert, 5)
        else:
            continue
        target[qid] = [sum(1 for s in scores if s == lvl) for lvl in range(1, levels + 1)]
    return {"likert": likert, "threeway": threeway}
