#!/usr/bin/env python3
"""Drop an obstacle onto the moving robot and watch it recover.

The robot follows a path across an open floor. Mid-drive we mark its own
cell Blocked, as if freshly meshed geometry had appeared under it. The
agent teleports to the nearest free cell, reports Recovered for exactly
one tick, replans, and carries on toward the goal.
"""

import math

from arnav.agent import Agent, AgentParams, Pose2D
from arnav.geometry import Vec3
from arnav.traversability import CellState, GridSpec, RobotFootprint, TraversabilityGrid

DT = 1.0 / 30.0


def open_floor(width=20, height=12):
    spec = GridSpec(origin=Vec3(0, 0, 0), cell_size=0.5, width=width, height=height)
    grid = TraversabilityGrid(spec, RobotFootprint(), math.radians(30))
    grid.cells[:, :] = int(CellState.FREE)
    grid.ground[:, :] = 0.0
    return grid


def main():
    grid = open_floor()
    agent = Agent(Pose2D(x=1.25, z=2.75, heading=0.0), AgentParams())
    agent.set_goal(grid, Vec3(8.75, 0.0, 3.25))
    print(f"goal set, mode={agent.state.mode.value}, "
          f"path of {len(agent.state.current_path.cells)} cells")

    for tick in range(1, 400):
        if tick == 60:
            cell = agent.current_cell(grid)
            grid.cells[cell.iy, cell.ix] = int(CellState.BLOCKED)
            print(f"tick {tick:3d}: obstacle appears on the robot cell {tuple(cell)}")

        agent.tick(grid, DT)
        st = agent.state
        if st.events:
            p = st.pose
            print(f"tick {tick:3d}: events={st.events} mode={st.mode.value} "
                  f"pos=({p.x:.2f},{p.z:.2f}) cell={tuple(agent.current_cell(grid))}")
        if st.mode.value == "Idle" and st.goal is None and tick > 60:
            print(f"tick {tick:3d}: goal reached at "
                  f"({st.pose.x:.2f},{st.pose.z:.2f})")
            break


if __name__ == "__main__":
    main()
