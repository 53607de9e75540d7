"""Command line interface.

Subcommands:
  serve          run a session server on a TCP address
  replay         run a scenario offline and write the snapshot log
  verify         compare two snapshot logs by hash
  stats          survey statistics (t-test, mwu, understanding, plot)

Exit codes: 0 success, 1 usage error (also: log mismatch in verify),
2 scenario or scene problem. ARNAV_BIND overrides --bind for serve.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import stats as st
from .scenario import ScenarioError, load_scenario
from .scene import SceneError

USAGE_EXIT = 1
SCENARIO_EXIT = 2


class CliParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this project reserves 2 for
    scenario problems, so usage errors exit 1 instead."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def build_parser() -> CliParser:
    p = CliParser(prog="arnav", description=__doc__,
                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=CliParser)

    sp = sub.add_parser("serve", help="run the session server")
    sp.add_argument("--scenario", required=True, help="scenario JSON file")
    sp.add_argument("--bind", default="127.0.0.1:8765",
                    help="host:port to listen on (env ARNAV_BIND overrides)")

    rp = sub.add_parser("replay", help="run a scenario offline, write the snapshot log")
    rp.add_argument("--scenario", required=True, help="scenario JSON file")
    rp.add_argument("--ticks", type=int, required=True, help="number of ticks to run")
    rp.add_argument("--out", required=True, help="output log path")

    vp = sub.add_parser("verify", help="compare two snapshot logs")
    vp.add_argument("--log", action="append", required=True,
                    help="log file (give exactly twice)")

    stp = sub.add_parser("stats", help="survey statistics tools")
    ssub = stp.add_subparsers(dest="stats_command", required=True, parser_class=CliParser)

    tp = ssub.add_parser("t-test", help="one-sample t-tests against the neutral midpoint")
    src = tp.add_mutually_exclusive_group(required=True)
    src.add_argument("--summary", help="summary CSV (question_id,category,mean,sd,n)")
    src.add_argument("--raw", help="raw CSV (participant_id,day,question_id,score)")
    tp.add_argument("--reverse", default="",
                    help="comma-separated question ids to reverse before testing")
    tp.add_argument("--mu0", type=float, default=st.NEUTRAL_MIDPOINT)
    tp.add_argument("--csv-out", help="also write the table as CSV here")

    mp = ssub.add_parser("mwu", help="Mann-Whitney U per question, day 1 vs day 2")
    mp.add_argument("--raw", required=True)

    up = ssub.add_parser("understanding", help="mean correctness from binary items")
    up.add_argument("--raw", required=True)
    up.add_argument("--prefix", default="U", help="question id prefix of the items")

    pp = ssub.add_parser("plot", help="distribution SVGs")
    pp.add_argument("--raw", required=True)
    pp.add_argument("--out", required=True, help="output directory")

    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "stats":
            return _cmd_stats(args)
    except (ScenarioError, SceneError) as e:
        print(f"scenario error: {e}", file=sys.stderr)
        return SCENARIO_EXIT
    except st.StatsError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_EXIT
    return 0


def _cmd_serve(args) -> int:
    from .server import BindFailure, SessionServer
    from .session import Session

    scenario = load_scenario(args.scenario)
    session = Session(scenario)
    bind = os.environ.get("ARNAV_BIND", args.bind)
    try:
        server = SessionServer(session, bind)
    except BindFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return SCENARIO_EXIT
    host, port = server.address
    print(f"listening on {host}:{port}", flush=True)
    server.run_forever()
    return 0


def _cmd_replay(args) -> int:
    from .protocol import canonical_dumps
    from .session import Session

    if args.ticks < 1:
        print("error: --ticks must be >= 1", file=sys.stderr)
        return USAGE_EXIT
    scenario = load_scenario(args.scenario)
    session = Session(scenario)
    with open(args.out, "w", encoding="utf-8") as fh:
        for _ in range(args.ticks):
            snapshot = session.run_tick()
            fh.write(canonical_dumps(snapshot.to_wire()))
            fh.write("\n")
    print(f"wrote {args.ticks} snapshots to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    from .protocol import log_hash

    logs = args.log
    if len(logs) != 2:
        print("error: verify needs exactly two --log arguments", file=sys.stderr)
        return USAGE_EXIT
    h1, h2 = log_hash(logs[0]), log_hash(logs[1])
    print(f"{h1}  {logs[0]}")
    print(f"{h2}  {logs[1]}")
    if h1 == h2:
        print("logs match")
        return 0
    print("logs differ")
    return USAGE_EXIT


def _cmd_stats(args) -> int:
    if args.stats_command == "t-test":
        reverse_ids = [s for s in args.reverse.split(",") if s]
        if args.summary:
            rows_in = st.load_summary_csv(args.summary)
            rows = [{
                "question_id": r["question_id"],
                "category": r["category"],
                "result": st.one_sample_t(r["mean"], r["sd"], r["n"], args.mu0),
            } for r in rows_in]
        else:
            responses = st.load_raw_csv(args.raw)
            grouped = st.scores_by_question(responses, reverse_ids=reverse_ids)
            rows = [{
                "question_id": qid,
                "category": "",
                "result": st.one_sample_t_raw(scores, args.mu0),
            } for qid, scores in sorted(grouped.items()) if not qid.startswith("U")]
        text, csv_text = st.render_tables(rows)
        print(text, end="")
        if args.csv_out:
            with open(args.csv_out, "w", encoding="utf-8") as fh:
                fh.write(csv_text)
        return 0

    if args.stats_command == "mwu":
        responses = st.load_raw_csv(args.raw)
        day1 = st.scores_by_question(responses, day=1)
        day2 = st.scores_by_question(responses, day=2)
        print("question  U        p        route")
        for qid in sorted(set(day1) | set(day2)):
            a = day1.get(qid, [])
            b = day2.get(qid, [])
            if not a or not b:
                continue
            u, p = st.mann_whitney_u(a, b)
            route = "exact" if len(a) + len(b) <= st.EXACT_MWU_LIMIT else "normal"
            print(f"{qid:<8}  {u:<7g}  {p:.4f}   {route}")
        return 0

    if args.stats_command == "understanding":
        responses = st.load_raw_csv(args.raw)
        fractions = st.understanding_rows(responses, prefix=args.prefix)
        mean = st.understanding_score(fractions)
        counts = {f: fractions.count(f) for f in sorted(set(fractions), reverse=True)}
        for frac, cnt in counts.items():
            print(f"score {frac:>4}: {cnt} participants")
        print(f"mean correctness: {mean:.4f} (n={len(fractions)})")
        return 0

    if args.stats_command == "plot":
        from .plots import write_distribution_plots

        responses = st.load_raw_csv(args.raw)
        # binary understanding items are not distribution figures
        plotted = [r for r in responses if not r.question_id.startswith("U")]
        dist = st.render_distributions(plotted)
        written = write_distribution_plots(dist, args.out)
        for path in written:
            print(f"wrote {path}")
        return 0

    return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
