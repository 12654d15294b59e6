"""Classic discrete planners and the Dijkstra ground-truth oracle.

Variants: vanilla A*, weighted A* (g_ratio-parameterized), best-first, and
beam search, each optionally consuming a guidance cost map.

Cost model shared with the differentiable planner (and kept bit-compatible
with it): node selection minimizes f = g_ratio*g + (1-g_ratio)*h computed in
float32, where g is the accumulated cost-to-come (unit step cost plus, when
guided, the guidance value of the entered node) and h is the Chebyshev
heuristic. Ties break on lower f, then lexicographic (row, col). Open nodes
are decrease-keyed on strict g improvement; closed nodes are never reopened.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, ShapeError
from .grid import NEIGHBOR_OFFSETS, GridMap, Node, ProblemInstance, heuristic_map

F32 = np.float32
VARIANTS = ("vanilla", "weighted", "best_first", "beam")


@dataclass(frozen=True)
class SearchPolicy:
    """Which planner to run and how to weigh cost-to-come against heuristic."""

    variant: str
    g_ratio: float
    beam_width: int | None = None
    use_guidance: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigError(f"unknown variant {self.variant!r}")
        if not 0.0 <= self.g_ratio <= 1.0:
            raise ConfigError(f"g_ratio must lie in [0, 1], got {self.g_ratio}")
        if self.variant == "vanilla" and (self.g_ratio != 0.5 or self.use_guidance):
            raise ConfigError("vanilla means g_ratio = 0.5 and no guidance")
        if self.variant == "best_first" and self.g_ratio != 0.0:
            raise ConfigError("best_first means g_ratio = 0")
        if self.variant == "beam":
            if self.beam_width is None or self.beam_width < 1:
                raise ConfigError("beam requires beam_width >= 1")
        elif self.beam_width is not None:
            raise ConfigError("beam_width only applies to the beam variant")


def vanilla_policy() -> SearchPolicy:
    return SearchPolicy("vanilla", 0.5)


def weighted_policy(g_ratio: float, use_guidance: bool = False) -> SearchPolicy:
    return SearchPolicy("weighted", g_ratio, use_guidance=use_guidance)


def best_first_policy(use_guidance: bool = False) -> SearchPolicy:
    return SearchPolicy("best_first", 0.0, use_guidance=use_guidance)


def beam_policy(g_ratio: float, beam_width: int, use_guidance: bool = False) -> SearchPolicy:
    return SearchPolicy("beam", g_ratio, beam_width=beam_width, use_guidance=use_guidance)


@dataclass(frozen=True)
class SearchTrace:
    """One planning episode: closed map, returned path, and counts."""

    closed: np.ndarray          # bool (H, W), every popped node
    path: np.ndarray            # bool (H, W), nodes on the returned path
    explorations: int           # popcount of closed
    path_length: int            # moves; 0 when no path was returned
    success: bool


def _reconstruct(parent: np.ndarray, start: tuple, goal: tuple) -> tuple[np.ndarray, int]:
    h, w = parent.shape[:2]
    path = np.zeros((h, w), dtype=bool)
    node = goal
    moves = 0
    while node != start:
        path[node] = True
        node = (int(parent[node][0]), int(parent[node][1]))
        moves += 1
    path[start] = True
    return path, moves


def plan(instance: ProblemInstance, policy: SearchPolicy,
         guidance: np.ndarray | None = None) -> SearchTrace:
    """Run one classic search episode and return its trace.

    ``guidance`` must be present iff ``policy.use_guidance`` and match the
    map's shape; values are per-node costs added to g on entering a node.
    """
    grid = instance.map
    if policy.use_guidance:
        if guidance is None:
            raise ConfigError("policy requires a guidance map but none was given")
        guidance = np.ascontiguousarray(guidance, dtype=F32)
        if guidance.shape != (grid.height, grid.width):
            raise ShapeError(
                f"guidance shape {guidance.shape} does not match map "
                f"{(grid.height, grid.width)}"
            )
    else:
        guidance = None

    cells = grid.cells
    hgt, wdt = cells.shape
    gr = F32(policy.g_ratio)
    h_term = heuristic_map(grid, instance.goal) * (F32(1.0) - gr)
    one = F32(1.0)

    g = np.full((hgt, wdt), np.inf, dtype=F32)
    closed = np.zeros((hgt, wdt), dtype=bool)
    parent = np.full((hgt, wdt, 2), -1, dtype=np.int32)
    start = (instance.start.row, instance.start.col)
    goal = (instance.goal.row, instance.goal.col)

    g[start] = F32(0.0)
    f_start = gr * g[start] + h_term[start]
    success = False

    if policy.variant == "beam":
        success = _beam_loop(cells, g, closed, parent, h_term, guidance,
                             gr, one, start, goal, policy.beam_width)
    else:
        heap = [(f_start, start[0], start[1], g[start])]
        while heap:
            _, r, c, g_e = heapq.heappop(heap)
            if closed[r, c] or g_e != g[r, c]:
                continue  # stale entry superseded by a decrease-key
            closed[r, c] = True
            if (r, c) == goal:
                success = True
                break
            g_here = g[r, c]
            step = g_here + one
            for dr, dc in NEIGHBOR_OFFSETS:
                nr, nc = r + dr, c + dc
                if not (0 <= nr < hgt and 0 <= nc < wdt):
                    continue
                if not cells[nr, nc] or closed[nr, nc]:
                    continue
                g_new = step + guidance[nr, nc] if guidance is not None else step
                if g_new < g[nr, nc]:
                    g[nr, nc] = g_new
                    parent[nr, nc] = (r, c)
                    heapq.heappush(heap, (gr * g_new + h_term[nr, nc], nr, nc, g_new))

    if success:
        path, moves = _reconstruct(parent, start, goal)
    else:
        path, moves = np.zeros((hgt, wdt), dtype=bool), 0
    return SearchTrace(closed=closed, path=path, explorations=int(closed.sum()),
                       path_length=moves, success=success)


def _beam_loop(cells, g, closed, parent, h_term, guidance, gr, one,
               start, goal, beam_width) -> bool:
    """Scan-based loop for beam search: prune open to beam_width after each expansion.

    Selection is identical to the heap loop (min f, then lexicographic), so a
    beam wider than the free-cell count reproduces the unpruned search exactly.
    """
    hgt, wdt = cells.shape
    open_set = {start}

    def f_of(node):
        return gr * g[node] + h_term[node]

    while open_set:
        sel = min(open_set, key=lambda n: (f_of(n), n[0], n[1]))
        open_set.remove(sel)
        closed[sel] = True
        if sel == goal:
            return True
        r, c = sel
        step = g[sel] + one
        for dr, dc in NEIGHBOR_OFFSETS:
            nr, nc = r + dr, c + dc
            if not (0 <= nr < hgt and 0 <= nc < wdt):
                continue
            if not cells[nr, nc] or closed[nr, nc]:
                continue
            g_new = step + guidance[nr, nc] if guidance is not None else step
            if g_new < g[nr, nc]:
                g[nr, nc] = g_new
                parent[nr, nc] = (r, c)
                open_set.add((nr, nc))
        if len(open_set) > beam_width:
            kept = sorted(open_set, key=lambda n: (f_of(n), n[0], n[1]))[:beam_width]
            open_set = set(kept)
    return False


def dijkstra_oracle(grid: GridMap, start: Node, goal: Node
                    ) -> tuple[int | None, np.ndarray | None]:
    """Exact shortest move count and one canonical shortest path map.

    The canonical path is reconstructed backward from the goal, choosing at
    each step the lexicographically smallest neighbor whose distance is one
    less. Returns (None, None) when the goal is unreachable.
    """
    cells = grid.cells
    hgt, wdt = cells.shape
    if not grid.traversable(start) or not grid.traversable(goal):
        return None, None

    dist = np.full((hgt, wdt), -1, dtype=np.int32)
    s = (start.row, start.col)
    t = (goal.row, goal.col)
    dist[s] = 0
    heap = [(0, s[0], s[1])]
    settled = np.zeros((hgt, wdt), dtype=bool)
    while heap:
        d, r, c = heapq.heappop(heap)
        if settled[r, c]:
            continue
        settled[r, c] = True
        if (r, c) == t:
            break
        for dr, dc in NEIGHBOR_OFFSETS:
            nr, nc = r + dr, c + dc
            if 0 <= nr < hgt and 0 <= nc < wdt and cells[nr, nc] and not settled[nr, nc]:
                nd = d + 1
                if dist[nr, nc] < 0 or nd < dist[nr, nc]:
                    dist[nr, nc] = nd
                    heapq.heappush(heap, (nd, nr, nc))
    if not settled[t]:
        return None, None

    path = np.zeros((hgt, wdt), dtype=bool)
    node = t
    path[t] = True
    while node != s:
        r, c = node
        want = dist[r, c] - 1
        nxt = None
        for dr, dc in NEIGHBOR_OFFSETS:
            nr, nc = r + dr, c + dc
            if 0 <= nr < hgt and 0 <= nc < wdt and cells[nr, nc] and dist[nr, nc] == want:
                cand = (nr, nc)
                if nxt is None or cand < nxt:
                    nxt = cand
        node = nxt
        path[node] = True
    return int(dist[t]), path
