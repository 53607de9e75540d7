"""A* over the traversability grid.

The graph is 8-connected with step costs of one cell edge straight and
sqrt(2) edges diagonal. Two details matter more than the search itself:

  * costs are carried as integer (straight, diagonal) step counts and only
    converted to meters on demand, so path costs are bit-for-bit equal to
    any other search using the same step counts (no float drift to "almost
    equal" a Dijkstra reference);
  * ties are broken deterministically: smaller f, then smaller h, then
    smaller iy * width + ix. Equal inputs give the identical cell sequence,
    not merely an equal-cost one.

Diagonal moves may not cut corners: if either orthogonal neighbor flanking
the diagonal is Blocked, the move is forbidden. Unknown cells are never
traversable but do not forbid a diagonal past them.
"""

from __future__ import annotations

import math
from heapq import heappush, heappop
from typing import List, NamedTuple, Optional, Tuple

from .geometry import Vec3
from .traversability import CellState, TraversabilityGrid

SQRT2 = math.sqrt(2.0)


class PlannerError(Exception):
    pass


class StartNotNavigable(PlannerError):
    pass


class GoalNotNavigable(PlannerError):
    pass


class NoPath(PlannerError):
    pass


class Cell(NamedTuple):
    ix: int
    iy: int


class PlannedPath(NamedTuple):
    cells: Tuple[Cell, ...]
    waypoints: Tuple[Vec3, ...]  # cell centers at ground height
    cost: float  # meters


# (dx, dy, is_diagonal), fixed expansion order
_MOVES = (
    (1, 0, False), (-1, 0, False), (0, 1, False), (0, -1, False),
    (1, 1, True), (1, -1, True), (-1, 1, True), (-1, -1, True),
)


def _free(grid: TraversabilityGrid, ix: int, iy: int) -> bool:
    return grid.in_bounds(ix, iy) and grid.state_at(ix, iy) is CellState.FREE


def _blocked(grid: TraversabilityGrid, ix: int, iy: int) -> bool:
    return grid.in_bounds(ix, iy) and grid.state_at(ix, iy) is CellState.BLOCKED


def diagonal_allowed(grid: TraversabilityGrid, from_ix: int, from_iy: int,
                     to_ix: int, to_iy: int) -> bool:
    """Corner rule: both orthogonal cells flanking the diagonal must not be Blocked."""
    return not (
        _blocked(grid, from_ix, to_iy) or _blocked(grid, to_ix, from_iy)
    )


def _octile(dx: int, dy: int) -> Tuple[int, int]:
    """Octile heuristic as (straight, diagonal) step counts."""
    dx, dy = abs(dx), abs(dy)
    return (dx - dy, dy) if dx >= dy else (dy - dx, dx)


def _steps_to_meters(straight: int, diagonal: int, cell_size: float) -> float:
    return (straight + diagonal * SQRT2) * cell_size


def plan(grid: TraversabilityGrid, start: Cell, goal: Cell) -> PlannedPath:
    """Minimum-cost 8-connected path from start to goal.

    Raises GoalNotNavigable / StartNotNavigable when an endpoint is not
    Free, NoPath when no route exists. start == goal returns the single
    cell at zero cost.
    """
    if not _free(grid, goal.ix, goal.iy):
        raise GoalNotNavigable(f"goal cell {tuple(goal)} is not Free")
    if not _free(grid, start.ix, start.iy):
        raise StartNotNavigable(f"start cell {tuple(start)} is not Free")
    if start == goal:
        return _make_path(grid, [start], 0, 0)

    width = grid.spec.width
    start_i = start.iy * width + start.ix
    goal_i = goal.iy * width + goal.ix

    # g as (straight, diagonal) integer pairs per visited node
    g_pairs = {start_i: (0, 0)}
    parents = {start_i: -1}
    closed = set()

    h0 = _octile(goal.ix - start.ix, goal.iy - start.iy)
    open_heap: List[Tuple[float, float, int, int, int]] = []
    # entries: (f, h, node_index, g_straight, g_diagonal)
    heappush(open_heap, (_pair_cost(h0), _pair_cost(h0), start_i, 0, 0))

    while open_heap:
        f, h, node, gs, gd = heappop(open_heap)
        if node in closed:
            continue
        if g_pairs.get(node) != (gs, gd):
            continue  # superseded entry
        closed.add(node)
        if node == goal_i:
            break
        ix, iy = node % width, node // width
        for dx, dy, diag in _MOVES:
            nx, ny = ix + dx, iy + dy
            if not _free(grid, nx, ny):
                continue
            if diag and not diagonal_allowed(grid, ix, iy, nx, ny):
                continue
            ng = (gs, gd + 1) if diag else (gs + 1, gd)
            nnode = ny * width + nx
            if nnode in closed:
                continue
            old = g_pairs.get(nnode)
            if old is not None and _pair_cost(old) <= _pair_cost(ng):
                continue
            g_pairs[nnode] = ng
            parents[nnode] = node
            nh = _pair_cost(_octile(goal.ix - nx, goal.iy - ny))
            heappush(open_heap, (_pair_cost(ng) + nh, nh, nnode, ng[0], ng[1]))
    else:
        raise NoPath(f"no route from {tuple(start)} to {tuple(goal)}")

    cells: List[Cell] = []
    node = goal_i
    while node != -1:
        cells.append(Cell(node % width, node // width))
        node = parents[node]
    cells.reverse()
    gs, gd = g_pairs[goal_i]
    return _make_path(grid, cells, gs, gd)


def _pair_cost(pair: Tuple[int, int]) -> float:
    return pair[0] + pair[1] * SQRT2


def _make_path(grid: TraversabilityGrid, cells: List[Cell], straight: int,
               diagonal: int) -> PlannedPath:
    waypoints = []
    for c in cells:
        x, z = grid.cell_center(c.ix, c.iy)
        gy = grid.ground_height_at(c.ix, c.iy)
        waypoints.append(Vec3(x, gy if gy is not None else 0.0, z))
    cost = _steps_to_meters(straight, diagonal, grid.spec.cell_size)
    return PlannedPath(tuple(cells), tuple(waypoints), cost)


def validate(path: PlannedPath, grid: TraversabilityGrid) -> Optional[int]:
    """First path index that is no longer valid, or None.

    A step is invalid when its destination cell is not Free anymore, or
    when a diagonal entry into it now violates the corner rule.
    """
    if not path.cells:
        raise ValueError("path is empty")
    prev: Optional[Cell] = None
    for i, cell in enumerate(path.cells):
        if not _free(grid, cell.ix, cell.iy):
            return i
        if prev is not None and abs(cell.ix - prev.ix) == 1 and abs(cell.iy - prev.iy) == 1:
            if not diagonal_allowed(grid, prev.ix, prev.iy, cell.ix, cell.iy):
                return i
        prev = cell
    return None
