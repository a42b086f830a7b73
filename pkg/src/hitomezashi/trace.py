"""Loop tracing over the degree-2 structure of a pattern.

Every vertex has exactly two present edges, so a walk that never reverses is
forced: the continuation of an edge is the unique other edge at its endpoint.
Components are therefore simple cycles (loops) or bi-infinite simple paths;
tracing a path exhausts its step budget and is reported as Unresolved.

Hot paths work on raw ``(x, y, d)`` triples where d indexes ``DX``/``DY``;
the public API wraps them in :class:`OrientedEdge` / :class:`TracedComponent`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Tuple

from .pattern import ContractViolation, Edge, PatternHandle, Vertex, has_edge
from .sequence import bit_func, period_of

PLUS_X, PLUS_Y, MINUS_X, MINUS_Y = 0, 1, 2, 3
DX = (1, 0, -1, 0)
DY = (0, 1, 0, -1)
OPPOSITE = (MINUS_X, MINUS_Y, PLUS_X, PLUS_Y)
DIR_NAMES = ("+x", "+y", "-x", "-y")

LOOP = "loop"
UNRESOLVED = "unresolved"

DEFAULT_BUDGET = 10**6

RawEdge = Tuple[int, int, int]
Window = Tuple[int, int, int, int]


class InternalContradiction(RuntimeError):
    """A structural fact that must hold was observed to fail.

    If this is ever raised on untampered data, either the implementation or
    the underlying mathematics is wrong; tests treat it as a hard failure.
    """

    def __init__(self, message: str, **context):
        super().__init__(message if not context else f"{message} ({context})")
        self.context = context


class OrientedEdge(NamedTuple):
    start: Vertex
    dir: int  # index into DX/DY

    @property
    def end(self) -> Vertex:
        x, y = self.start
        return (x + DX[self.dir], y + DY[self.dir])

    @property
    def undirected(self) -> Edge:
        return Edge(self.start, self.end)

    @property
    def vertical(self) -> bool:
        return self.dir in (PLUS_Y, MINUS_Y)


@dataclass(frozen=True)
class TracedComponent:
    """An oriented walk: a closed loop or a budget-exhausted open walk."""

    kind: str  # LOOP or UNRESOLVED
    edges: Tuple[OrientedEdge, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_loop(self) -> bool:
        return self.kind == LOOP

    def vertices(self) -> List[Vertex]:
        vs = [e.start for e in self.edges]
        if self.kind == UNRESOLVED and self.edges:
            vs.append(self.edges[-1].end)
        return vs


def _to_oriented(raw: Iterable[RawEdge]) -> Tuple[OrientedEdge, ...]:
    return tuple(OrientedEdge((x, y), d) for x, y, d in raw)


def _to_raw(edges: Iterable[OrientedEdge]) -> List[RawEdge]:
    return [(e.start[0], e.start[1], e.dir) for e in edges]


def _reverse_raw(path: List[RawEdge]) -> List[RawEdge]:
    return [(x + DX[d], y + DY[d], OPPOSITE[d]) for x, y, d in reversed(path)]


def next_edge(p: PatternHandle, incoming: OrientedEdge) -> OrientedEdge:
    """The unique continuation of a walk: the other edge at incoming's endpoint."""
    if not has_edge(p, incoming.undirected):
        raise ContractViolation(f"edge not present in pattern: {incoming}")
    ebit = bit_func(p.eps)
    hbit = bit_func(p.eta)
    x, y, d = incoming.start[0], incoming.start[1], incoming.dir
    nx, ny, nd = _step(ebit, hbit, x, y, d)
    return OrientedEdge((nx, ny), nd)


def _step(ebit, hbit, x: int, y: int, d: int) -> RawEdge:
    # Continuation alternates horizontal/vertical; the parity rules pick
    # which of the two candidate directions is present.
    nx = x + DX[d]
    ny = y + DY[d]
    if d == PLUS_X or d == MINUS_X:
        nd = PLUS_Y if (ny - ebit(nx)) % 2 == 0 else MINUS_Y
    else:
        nd = PLUS_X if (nx - hbit(ny)) % 2 == 0 else MINUS_X
    return nx, ny, nd


def _trace_raw(ebit, hbit, seed: RawEdge, budget: int):
    """Follow the forced walk from seed.

    Returns ``(closed, path)`` where path is the list of raw edges walked.
    ``closed`` is True when the walk returned to the seed's start vertex.
    """
    x0, y0, _ = seed
    path = [seed]
    append = path.append
    x, y, d = seed
    while True:
        nx = x + DX[d]
        ny = y + DY[d]
        if nx == x0 and ny == y0:
            return True, path
        if len(path) >= budget:
            return False, path
        if d == PLUS_X or d == MINUS_X:
            nd = PLUS_Y if (ny - ebit(nx)) % 2 == 0 else MINUS_Y
        else:
            nd = PLUS_X if (nx - hbit(ny)) % 2 == 0 else MINUS_X
        append((nx, ny, nd))
        x, y, d = nx, ny, nd


def trace_from(p: PatternHandle, seed: OrientedEdge, budget: int) -> TracedComponent:
    """Trace the component through seed until closure or budget exhaustion."""
    if budget <= 0:
        raise ContractViolation(f"budget must be positive, got {budget}")
    if not has_edge(p, seed.undirected):
        raise ContractViolation(f"seed edge not present in pattern: {seed}")
    ebit = bit_func(p.eps)
    hbit = bit_func(p.eta)
    closed, path = _trace_raw(ebit, hbit, (seed.start[0], seed.start[1], seed.dir), budget)
    return TracedComponent(LOOP if closed else UNRESOLVED, _to_oriented(path))


def _canonical_raw(path: List[RawEdge]) -> List[RawEdge]:
    """Canonical form of a closed raw walk.

    Rotated to start at the lexicographically least vertex, oriented so the
    first step from it goes +y (the least vertex of a loop always carries a
    +x and a +y loop edge, so +y is always available).
    """
    k = min(range(len(path)), key=lambda i: (path[i][0], path[i][1]))
    if path[k][2] != PLUS_Y:
        path = _reverse_raw(path)
        k = min(range(len(path)), key=lambda i: (path[i][0], path[i][1]))
        if path[k][2] != PLUS_Y:
            raise InternalContradiction("no +y edge at least vertex of loop", vertex=path[k])
    return path[k:] + path[:k]


def canonicalize_loop(comp: TracedComponent) -> TracedComponent:
    """Rotate/orient a loop into its canonical form."""
    if not comp.is_loop:
        raise ContractViolation("canonicalize_loop requires a loop")
    return TracedComponent(LOOP, _to_oriented(_canonical_raw(_to_raw(comp.edges))))


def _decomposition_raw(path: List[RawEdge]) -> List[RawEdge]:
    """Orient a closed raw walk so the leftmost-column verticals point -y,
    rotated so the first edge is the leftmost crossing with the largest
    starting y."""
    a = min(x for x, _, _ in path)
    crossing_dirs = {d for x, _, d in path if x == a and d in (PLUS_Y, MINUS_Y)}
    if len(crossing_dirs) != 1:
        raise InternalContradiction(
            "leftmost-column verticals disagree in direction", column=a, dirs=crossing_dirs
        )
    if crossing_dirs == {PLUS_Y}:
        path = _reverse_raw(path)
    k = max(
        (i for i, (x, _, d) in enumerate(path) if x == a and d == MINUS_Y),
        key=lambda i: path[i][1],
    )
    return path[k:] + path[:k]


def orient_loop_for_decomposition(loop: TracedComponent) -> TracedComponent:
    """Re-orient a loop so all verticals on its leftmost column point -y."""
    if not loop.is_loop:
        raise ContractViolation("orient_loop_for_decomposition requires a loop")
    return TracedComponent(LOOP, _to_oriented(_decomposition_raw(_to_raw(loop.edges))))


def effective_budget(p: PatternHandle, budget: int) -> int:
    """Tighten the step budget when both sequences are periodic.

    A pattern with x-period Lx and y-period Ly has at most 4*Lx*Ly distinct
    walk states (vertex mod periods, direction).  A walk longer than that has
    repeated a state with a non-zero displacement and is provably an infinite
    path, so no loop can exceed the bound and truncating there is exact.
    """
    pe = period_of(p.eps)
    ph = period_of(p.eta)
    if pe is None or ph is None:
        return budget
    lx = pe if pe % 2 == 0 else 2 * pe
    ly = ph if ph % 2 == 0 else 2 * ph
    return min(budget, 4 * lx * ly)


def _enumerate_raw(ebit, hbit, window: Window, budget: int):
    """Trace every component meeting the window once.

    Returns ``(loops, unresolved)``: loops as canonical raw paths sorted by
    least vertex, unresolved as raw paths in seed order.  A walk that reaches
    a vertex visited by an earlier trace belongs to a component already
    recorded (components are vertex-disjoint and a loop would have closed on
    its first trace), so it is dropped.
    """
    x0, y0, x1, y1 = window
    visited = set()
    loops = []
    unresolved = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if (x, y) in visited:
                continue
            d = PLUS_Y if (y - ebit(x)) % 2 == 0 else MINUS_Y
            path = [(x, y, d)]
            append = path.append
            cx, cy, cd = x, y, d
            closed = False
            absorbed = False
            while True:
                nx = cx + DX[cd]
                ny = cy + DY[cd]
                if nx == x and ny == y:
                    closed = True
                    break
                if (nx, ny) in visited:
                    absorbed = True
                    break
                if len(path) >= budget:
                    break
                if cd == PLUS_X or cd == MINUS_X:
                    nd = PLUS_Y if (ny - ebit(nx)) % 2 == 0 else MINUS_Y
                else:
                    nd = PLUS_X if (nx - hbit(ny)) % 2 == 0 else MINUS_X
                append((nx, ny, nd))
                cx, cy, cd = nx, ny, nd
            visited.update((px, py) for px, py, _ in path)
            if closed:
                loops.append(_canonical_raw(path))
            elif not absorbed:
                visited.add((cx + DX[cd], cy + DY[cd]))
                unresolved.append(path)
    loops.sort(key=lambda pth: (pth[0][0], pth[0][1]))
    return loops, unresolved


def enumerate_loops(
    p: PatternHandle, window: Window, budget: int = DEFAULT_BUDGET
) -> List[TracedComponent]:
    """All distinct loops touching the window (canonical form, traced in full,
    possibly extending outside the window), followed by unresolved walks."""
    x0, y0, x1, y1 = window
    if x0 > x1 or y0 > y1:
        raise ContractViolation(f"window is not well-ordered: {window}")
    if budget <= 0:
        raise ContractViolation(f"budget must be positive, got {budget}")
    ebit = bit_func(p.eps)
    hbit = bit_func(p.eta)
    loops, unresolved = _enumerate_raw(ebit, hbit, window, budget)
    out = [TracedComponent(LOOP, _to_oriented(raw)) for raw in loops]
    out.extend(TracedComponent(UNRESOLVED, _to_oriented(raw)) for raw in unresolved)
    return out
