#!/usr/bin/env python3
"""One simulated LiDAR revolution, printed as a range profile.

A 60-beam scanner sits in the mapped museum hall. Each row is one beam:
azimuth, measured range (or no return), and a crude intensity bar. The
rotating highlight index advances with the tick counter, which is what the
LiDAR visualization mode animates.
"""

import math
import os

from arnav.lidar import LidarParams, highlighted_beam_index, scan
from arnav.scenario import load_scenario
from arnav.session import Session

HERE = os.path.dirname(os.path.abspath(__file__))
SCENARIO = os.path.join(HERE, "..", "scenarios", "museum", "museum.json")


def main():
    session = Session(load_scenario(SCENARIO))
    for _ in range(300):
        session.run_tick()

    params = LidarParams(beam_count=60, max_range=8.0)
    pose = session.agent.state.pose
    frame = scan(session.discovered, pose, params, tick=session.tick)

    print(f"robot at ({pose.x:.2f}, {pose.z:.2f}), heading {pose.heading:+.2f}")
    hits = iter(frame.hit_points)
    for i, r in enumerate(frame.ranges):
        az = math.degrees(pose.heading + 2 * math.pi * i / params.beam_count) % 360
        mark = "<" if i == frame.highlighted_beam else " "
        if r is None:
            print(f"beam {i:2d}  {az:6.1f} deg   no return {mark}")
        else:
            next(hits)
            bar = "=" * int(round(r * 4))
            print(f"beam {i:2d}  {az:6.1f} deg  {r:5.2f} m  |{bar} {mark}")

    print("\nhighlight sweep over 8 ticks:",
          [highlighted_beam_index(t, params) for t in range(8)])


if __name__ == "__main__":
    main()
