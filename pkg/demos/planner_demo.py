#!/usr/bin/env python3
"""Plan a route across the discovered museum hall and sketch it.

Runs discovery long enough to map the hall, then asks the planner for a
path from the robot's home corner to the far side. The printed overlay
marks the path with 'o', start with 'S', goal with 'G'.
"""

import os

from arnav.planner import Cell, plan
from arnav.scenario import load_scenario
from arnav.session import Session
from arnav.traversability import CellState

HERE = os.path.dirname(os.path.abspath(__file__))
SCENARIO = os.path.join(HERE, "..", "scenarios", "museum", "museum.json")


def main():
    session = Session(load_scenario(SCENARIO))
    for _ in range(300):
        session.run_tick()

    grid = session.grid
    start = Cell(*grid.cell_of(session.agent.state.pose.x,
                               session.agent.state.pose.z))
    goal = Cell(40, 26)
    path = plan(grid, start, goal)
    print(f"start {tuple(start)} -> goal {tuple(goal)}: "
          f"{len(path.cells)} cells, cost {path.cost:.3f} m")
    print(f"first waypoints: "
          + " ".join(f"({w.x:.2f},{w.z:.2f})" for w in path.waypoints[:4]))

    on_path = set(path.cells)
    glyph = {CellState.FREE: ".", CellState.BLOCKED: "#", CellState.UNKNOWN: " "}
    for iy in range(grid.spec.height):
        row = []
        for ix in range(grid.spec.width):
            cell = Cell(ix, iy)
            if cell == start:
                row.append("S")
            elif cell == goal:
                row.append("G")
            elif cell in on_path:
                row.append("o")
            else:
                row.append(glyph[grid.state_at(ix, iy)])
        print("".join(row))


if __name__ == "__main__":
    main()
