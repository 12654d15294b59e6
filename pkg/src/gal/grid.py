"""Grid geometry, neighbor expansion, heuristics, and instance validation.

All planners share these conventions: 8-connected moves, unit step cost
for every move including diagonals, path length counted in moves, and the
Chebyshev distance as the heuristic (consistent for this move model).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, InvalidNodeError, ValidationError

# Fixed expansion scan order (row-major): NW, N, NE, W, E, SW, S, SE.
# This order is the global tie-break substrate; do not reorder.
NEIGHBOR_OFFSETS = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1), (0, 1),
    (1, -1), (1, 0), (1, 1),
)

# Minimum side length for planning-scale maps (enforced by validate_instance).
MIN_MAP_SIDE = 4


@dataclass(frozen=True, order=True)
class Node:
    """A cell position, (row, col)."""

    row: int
    col: int


class GridMap:
    """Binary occupancy grid; True cells are traversable."""

    def __init__(self, cells):
        cells = np.ascontiguousarray(cells, dtype=bool)
        if cells.ndim != 2 or cells.size == 0:
            raise DataError("occupancy grid must be a non-empty 2-D array")
        cells.setflags(write=False)
        self.cells = cells

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    def in_bounds(self, node: Node) -> bool:
        return 0 <= node.row < self.height and 0 <= node.col < self.width

    def traversable(self, node: Node) -> bool:
        return self.in_bounds(node) and bool(self.cells[node.row, node.col])

    def free_count(self) -> int:
        return int(self.cells.sum())

    def __eq__(self, other):
        return isinstance(other, GridMap) and np.array_equal(self.cells, other.cells)

    def __repr__(self):
        return f"GridMap({self.height}x{self.width}, free={self.free_count()})"


@dataclass(frozen=True)
class ProblemInstance:
    """A map with endpoints and the oracle-computed optimal move count."""

    map: GridMap
    start: Node
    goal: Node
    optimal_length: int


def neighbors(grid: GridMap, node: Node) -> list[Node]:
    """Traversable 8-connected neighbors of ``node`` in fixed scan order.

    Raises InvalidNodeError if ``node`` is out of bounds or an obstacle.
    """
    if not grid.traversable(node):
        raise InvalidNodeError(f"node {node} is out of bounds or not traversable")
    cells = grid.cells
    h, w = cells.shape
    out = []
    for dr, dc in NEIGHBOR_OFFSETS:
        r, c = node.row + dr, node.col + dc
        if 0 <= r < h and 0 <= c < w and cells[r, c]:
            out.append(Node(r, c))
    return out


def heuristic(a: Node, b: Node) -> int:
    """Chebyshev distance; admissible and consistent for unit 8-connected moves."""
    return max(abs(a.row - b.row), abs(a.col - b.col))


def heuristic_map(grid: GridMap, goal: Node) -> np.ndarray:
    """Chebyshev distance from every cell to ``goal`` as a float32 (H, W) array."""
    rows = np.abs(np.arange(grid.height) - goal.row)
    cols = np.abs(np.arange(grid.width) - goal.col)
    return np.maximum(rows[:, None], cols[None, :]).astype(np.float32)


def validate_instance(instance: ProblemInstance) -> ProblemInstance:
    """Check every instance invariant and recompute the ground truth.

    The stored optimal length is re-derived with the Dijkstra oracle and must
    match exactly; a mismatch means the stored ground truth is stale.
    """
    from .search import dijkstra_oracle

    grid = instance.map
    if grid.width < MIN_MAP_SIDE or grid.height < MIN_MAP_SIDE:
        raise ValidationError(
            f"map is {grid.height}x{grid.width}; planning maps must be at least "
            f"{MIN_MAP_SIDE}x{MIN_MAP_SIDE}"
        )
    for label, node in (("start", instance.start), ("goal", instance.goal)):
        if not grid.in_bounds(node):
            raise ValidationError(f"{label} {node} is out of bounds")
        if not grid.traversable(node):
            raise ValidationError(f"{label} {node} lies on an obstacle")
    if instance.start == instance.goal:
        raise ValidationError("start equals goal")
    length, _ = dijkstra_oracle(grid, instance.start, instance.goal)
    if length is None:
        raise ValidationError(f"goal {instance.goal} unreachable from {instance.start}")
    if length != instance.optimal_length:
        raise ValidationError(
            f"stale ground truth: stored optimal_length {instance.optimal_length}, "
            f"oracle recomputed {length}"
        )
    return instance
