#!/usr/bin/env python3
"""Run the scripted tour twice and prove the runs are identical.

The tour scenario carries scripted commands (mode changes, a goal trigger,
audio, a reset). We run it tick by tick, print every event as it happens,
write both runs as canonical snapshot logs, and compare their hashes the
same way the `arnav verify` subcommand does.
"""

import os
import tempfile

from arnav.protocol import canonical_dumps, log_hash
from arnav.scenario import load_scenario
from arnav.session import Session

HERE = os.path.dirname(os.path.abspath(__file__))
SCENARIO = os.path.join(HERE, "..", "scenarios", "museum", "scripted_tour.json")
TICKS = 260


def run_once(path):
    session = Session(load_scenario(SCENARIO))
    with open(path, "w", encoding="utf-8") as fh:
        for _ in range(TICKS):
            snap = session.run_tick()
            fh.write(canonical_dumps(snap.to_wire()) + "\n")
            for ev in snap.events:
                extra = {k: v for k, v in ev.items() if k != "kind"}
                print(f"tick {snap.tick:3d}  {ev['kind']:<13} {extra if extra else ''}")
    return log_hash(path)


def main():
    with tempfile.TemporaryDirectory() as td:
        log_a = os.path.join(td, "run_a.jsonl")
        log_b = os.path.join(td, "run_b.jsonl")
        print(f"--- run A ({TICKS} ticks) ---")
        h1 = run_once(log_a)
        print("--- run B (same scenario, fresh session) ---")
        h2 = run_once(log_b)
        print(f"\nrun A sha256 {h1}")
        print(f"run B sha256 {h2}")
        print("identical" if h1 == h2 else "DIVERGED")


if __name__ == "__main__":
    main()
