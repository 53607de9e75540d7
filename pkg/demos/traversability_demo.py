#!/usr/bin/env python3
"""ASCII view of the traversability grid filling in during discovery.

Legend:  '.' free   '#' blocked   ' ' unknown   '@' robot
Rows are iy (the z axis), columns ix (the x axis).
"""

import os

from arnav.scenario import load_scenario
from arnav.session import Session
from arnav.traversability import CellState

HERE = os.path.dirname(os.path.abspath(__file__))
SCENARIO = os.path.join(HERE, "..", "scenarios", "museum", "museum.json")

GLYPH = {CellState.FREE: ".", CellState.BLOCKED: "#", CellState.UNKNOWN: " "}


def render(session):
    grid = session.grid
    rix, riy = grid.cell_of(session.agent.state.pose.x, session.agent.state.pose.z)
    lines = []
    for iy in range(grid.spec.height):
        row = []
        for ix in range(grid.spec.width):
            if (ix, iy) == (rix, riy):
                row.append("@")
            else:
                row.append(GLYPH[grid.state_at(ix, iy)])
        lines.append("".join(row))
    return "\n".join(lines)


def counts(session):
    out = {s: 0 for s in CellState}
    g = session.grid
    for iy in range(g.spec.height):
        for ix in range(g.spec.width):
            out[g.state_at(ix, iy)] += 1
    return out


def main():
    session = Session(load_scenario(SCENARIO))
    checkpoints = (1, 90, 300)
    for tick_stop in checkpoints:
        while session.tick < tick_stop:
            session.run_tick()
        c = counts(session)
        print(f"--- after tick {session.tick}: {c[CellState.FREE]} free, "
              f"{c[CellState.BLOCKED]} blocked, {c[CellState.UNKNOWN]} unknown ---")
        print(render(session))
        print()


if __name__ == "__main__":
    main()
