"""Recursive excursion decomposition of loops, with verifiable certificates.

A loop is cut along the vertical edges of its leftmost column into excursions
(paths that leave a column to the right and come back).  Each excursion is cut
again one column to the right, recursively, down to 3-edge base excursions.
The resulting tree of crossing lists and lengths is a certificate: its local
ordering, parity, and length identities can be re-checked without repeating
the decomposition, and together they force every excursion's length to be
2*|end_y - start_y| + 1 (mod 8) and every loop's length to be 4 (mod 8).

The decomposer asserts every ordering and parity fact it relies on; a failed
assertion raises :class:`InternalContradiction`, which no input reachable
from a real pattern can trigger.

Implementation notes.  Excursions are index intervals of one shared edge
array, never copies, and the tree is built with an explicit stack: loops at
desk scale reach tens of thousands of edges and nesting depths in the
thousands, which rules out both per-node slicing and Python recursion.
Per-node crossing lookups bisect per-column index lists and the half-plane
check is a range-minimum query, so the whole decomposition runs in
O(L log L) for a loop of length L.
"""

from __future__ import annotations

import json
import sys
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .pattern import ContractViolation, Vertex
from .trace import (
    DX,
    DY,
    MINUS_Y,
    OPPOSITE,
    PLUS_Y,
    InternalContradiction,
    OrientedEdge,
    TracedComponent,
)

BASE = "base"
CASE1 = "case1"
CASE2 = "case2"


@dataclass(frozen=True)
class Excursion:
    """A path whose endpoints lie on x = level - 1 and whose interior stays
    in the half-plane x >= level."""

    level: int
    edges: Tuple[OrientedEdge, ...]

    @property
    def start(self) -> Vertex:
        return self.edges[0].start

    @property
    def end(self) -> Vertex:
        return self.edges[-1].end

    @property
    def length(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class ExcursionCertificate:
    level: int
    start_y: int
    end_y: int
    was_reversed: bool  # True if the excursion was flipped so start_y < end_y
    case: str  # BASE, CASE1 or CASE2
    crossings: Tuple[int, ...]  # starting y of each vertical edge on x = level, traversal order
    pivot: Optional[int]  # CASE2 only: 1-based index of the first ascent
    children: Tuple["ExcursionCertificate", ...]
    length: int

    def original_endpoints(self) -> Tuple[int, int]:
        """(start_y, end_y) of the excursion as traversed before normalization."""
        if self.was_reversed:
            return self.end_y, self.start_y
        return self.start_y, self.end_y


@dataclass(frozen=True)
class LoopCertificate:
    level: int  # leftmost column of the loop
    crossings: Tuple[int, ...]  # starting y of each crossing, largest first
    children: Tuple[ExcursionCertificate, ...]
    length: int


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    path: Optional[str] = None
    message: Optional[str] = None


def predicted_mod8(start_y: int, end_y: int) -> int:
    """Residue mod 8 that an excursion between these endpoint rows must have."""
    return (2 * abs(end_y - start_y) + 1) % 8


# ---------------------------------------------------------------------------
# Shared edge-array machinery
# ---------------------------------------------------------------------------


def _edges_to_seq(edges) -> Tuple[List[int], List[int], List[int]]:
    xs = [e.start[0] for e in edges]
    ys = [e.start[1] for e in edges]
    ds = [e.dir for e in edges]
    return xs, ys, ds


def _check_walk(xs, ys, ds, closed: bool) -> None:
    """Continuity plus vertex-simplicity of a whole walk, checked once."""
    n = len(xs)
    for k in range(n - 1):
        if xs[k] + DX[ds[k]] != xs[k + 1] or ys[k] + DY[ds[k]] != ys[k + 1]:
            raise ContractViolation(f"edge list is not a walk at index {k}")
    seen = set(zip(xs, ys))
    if len(seen) != n:
        raise ContractViolation("walk repeats a vertex")
    last_end = (xs[-1] + DX[ds[-1]], ys[-1] + DY[ds[-1]])
    if closed:
        if last_end != (xs[0], ys[0]):
            raise ContractViolation("loop edge list does not close")
    elif last_end in seen:
        raise ContractViolation("walk repeats a vertex")


def _reverse_seq(xs, ys, ds):
    n = len(xs)
    rx = [0] * n
    ry = [0] * n
    rd = [0] * n
    for k in range(n):
        m = n - 1 - k
        d = ds[m]
        rx[k] = xs[m] + DX[d]
        ry[k] = ys[m] + DY[d]
        rd[k] = OPPOSITE[d]
    return rx, ry, rd


def _crossing_columns(xs, ds) -> Dict[int, List[int]]:
    """Column -> ascending indices of vertical edges on that column."""
    by_col: Dict[int, List[int]] = {}
    for k, d in enumerate(ds):
        if d & 1:
            by_col.setdefault(xs[k], []).append(k)
    return by_col


def _min_table(xs) -> List[List[int]]:
    """Sparse table for O(1) range-minimum queries over edge start columns."""
    tabs = [list(xs)]
    n = len(xs)
    size = 1
    while 2 * size <= n:
        prev = tabs[-1]
        cur = [0] * (n - 2 * size + 1)
        for i in range(len(cur)):
            a = prev[i]
            b = prev[i + size]
            cur[i] = a if a < b else b
        tabs.append(cur)
        size *= 2
    return tabs


def _range_min(tabs, lo: int, hi: int) -> int:
    j = (hi - lo).bit_length() - 1
    row = tabs[j]
    half = 1 << j
    a = row[lo]
    b = row[hi - half]
    return a if a < b else b


class _Frame:
    """An excursion being decomposed: an interval [lo, hi) of the shared
    edge array, read backwards (with flipped directions) when rev is set."""

    __slots__ = (
        "level",
        "lo",
        "hi",
        "rev",
        "was_reversed",
        "start_y",
        "end_y",
        "case",
        "crossings",
        "pivot",
        "arcs",
        "child_endpoints",
        "children",
    )


def _open_frame(xs, ys, ds, by_col, mintab, level, lo, hi, rev, was_reversed_in=False):
    """Validate an excursion interval and classify it.

    Returns a finished certificate for base excursions, otherwise a frame
    whose child arcs still need decomposing.
    """
    n_edges = hi - lo
    if n_edges < 3:
        raise InternalContradiction("excursion shorter than 3 edges", level=level, n=n_edges)
    last = hi - 1
    fwd_start = (xs[lo], ys[lo])
    fwd_end = (xs[last] + DX[ds[last]], ys[last] + DY[ds[last]])
    (sx, sy), (ex, ey) = ((fwd_end, fwd_start) if rev else (fwd_start, fwd_end))
    if sx != level - 1 or ex != level - 1:
        raise InternalContradiction(
            "excursion endpoints off the entry column", level=level, start=(sx, sy), end=(ex, ey)
        )
    if _range_min(mintab, lo + 1, hi) < level:
        raise InternalContradiction("excursion interior left the half-plane", level=level)
    i, j = sy, ey
    was_reversed = i > j
    if was_reversed:
        rev = not rev
        i, j = j, i
    if i == j:
        raise InternalContradiction("excursion endpoints share a row", level=level, y=i)
    if (j - i) % 2 != 1:
        raise InternalContradiction("endpoint rows share a parity", i=i, j=j)

    col = by_col.get(level, ())
    a_idx = bisect_left(col, lo)
    b_idx = bisect_right(col, hi - 1)
    idxs = col[a_idx:b_idx]
    if not idxs:
        raise InternalContradiction("excursion has no crossing on its column", level=level)
    if idxs[0] != lo + 1 or idxs[-1] != hi - 2:
        raise InternalContradiction(
            "crossings not flanked by the entry and exit edges", level=level, lo=lo, hi=hi
        )
    if rev:
        order = idxs[::-1]
        cys = [ys[k] + DY[ds[k]] for k in order]
        dirs = {OPPOSITE[ds[k]] for k in order}
    else:
        order = idxs
        cys = [ys[k] for k in order]
        dirs = {ds[k] for k in order}
    t = len(cys) - 1
    for y in cys:
        if (y - i) % 2 != 0:
            raise InternalContradiction("crossing parity differs from start row", y=y, i=i)
    if cys[0] != i:
        raise InternalContradiction("first crossing not at the start row", y0=cys[0], i=i)

    if t == 0:
        if n_edges != 3 or j != i + 1:
            raise InternalContradiction("base excursion malformed", n=n_edges, i=i, j=j)
        return ExcursionCertificate(
            level=level,
            start_y=i,
            end_y=j,
            was_reversed=was_reversed,
            case=BASE,
            crossings=(i,),
            pivot=None,
            children=(),
            length=3,
        )

    if len(dirs) != 1:
        raise InternalContradiction("crossings disagree in direction", dirs=dirs)
    pivot = None
    if dirs == {PLUS_Y}:
        case = CASE1
        if cys[-1] != j - 1:
            raise InternalContradiction("last crossing misses the end row", yt=cys[-1], j=j)
        if any(cys[k] >= cys[k + 1] for k in range(t)):
            raise InternalContradiction("upward crossings not increasing", ys=cys)
        child_endpoints = [(cys[k - 1] + 1, cys[k]) for k in range(1, t + 1)]
    else:
        case = CASE2
        if cys[-1] != j + 1:
            raise InternalContradiction("last crossing misses the end row", yt=cys[-1], j=j)
        pivot = next((k for k in range(1, t + 1) if cys[k - 1] < cys[k]), None)
        if pivot is None:
            raise InternalContradiction("downward crossings never ascend", ys=cys)
        if any(cys[k] <= cys[k + 1] for k in range(pivot - 1)):
            raise InternalContradiction("prefix not decreasing before pivot", ys=cys, s=pivot)
        if any(cys[k] <= cys[k + 1] for k in range(pivot, t)):
            raise InternalContradiction("suffix not decreasing after pivot", ys=cys, s=pivot)
        if cys[0] >= cys[-1]:
            raise InternalContradiction("pivoted ordering broken: y0 >= yt", ys=cys)
        child_endpoints = [(cys[k - 1] - 1, cys[k]) for k in range(1, t + 1)]

    if rev:
        arcs = [(order[k] + 1, order[k - 1]) for k in range(1, t + 1)]
    else:
        arcs = [(order[k - 1] + 1, order[k]) for k in range(1, t + 1)]

    f = _Frame()
    f.level = level
    f.lo = lo
    f.hi = hi
    f.rev = rev
    f.was_reversed = was_reversed
    f.start_y = i
    f.end_y = j
    f.case = case
    f.crossings = tuple(cys)
    f.pivot = pivot
    f.arcs = arcs
    f.child_endpoints = child_endpoints
    f.children = []
    return f


def _close_frame(f: _Frame) -> ExcursionCertificate:
    length = f.hi - f.lo
    t = len(f.crossings) - 1
    if length != 3 + t + sum(c.length for c in f.children):
        raise InternalContradiction("excursion length identity failed", length=length, t=t)
    if length % 8 != predicted_mod8(f.start_y, f.end_y):
        raise InternalContradiction(
            "excursion residue failed", length=length, i=f.start_y, j=f.end_y
        )
    return ExcursionCertificate(
        level=f.level,
        start_y=f.start_y,
        end_y=f.end_y,
        was_reversed=f.was_reversed,
        case=f.case,
        crossings=f.crossings,
        pivot=f.pivot,
        children=tuple(f.children),
        length=length,
    )


def _accept_child(frame: _Frame, cert: ExcursionCertificate) -> None:
    k = len(frame.children)
    if cert.original_endpoints() != frame.child_endpoints[k]:
        raise InternalContradiction(
            "child endpoints disagree with crossing list",
            expected=frame.child_endpoints[k],
            got=cert.original_endpoints(),
        )
    frame.children.append(cert)


def _decompose_interval(xs, ys, ds, by_col, mintab, level, lo, hi, rev) -> ExcursionCertificate:
    root = _open_frame(xs, ys, ds, by_col, mintab, level, lo, hi, rev)
    if isinstance(root, ExcursionCertificate):
        return root
    stack = [root]
    while True:
        top = stack[-1]
        k = len(top.children)
        if k < len(top.arcs):
            alo, ahi = top.arcs[k]
            node = _open_frame(xs, ys, ds, by_col, mintab, top.level + 1, alo, ahi, top.rev)
            if isinstance(node, ExcursionCertificate):
                _accept_child(top, node)
            else:
                stack.append(node)
        else:
            cert = _close_frame(top)
            stack.pop()
            if not stack:
                return cert
            _accept_child(stack[-1], cert)


def _unit_loop_cert(xs, ys, ds) -> Optional[LoopCertificate]:
    """The certificate of a 4-edge loop (necessarily a unit square), built
    directly.  Dominant case in seeded campaigns; the general path spends
    most of its time on per-loop setup that a unit square never needs.
    Returns None when the edges are not a unit-square walk."""
    a = min(xs)
    b = min(ys)
    if {(xs[k], ys[k]) for k in range(4)} != {
        (a, b),
        (a + 1, b),
        (a, b + 1),
        (a + 1, b + 1),
    }:
        return None
    for k in range(4):
        m = (k + 1) % 4
        if xs[k] + DX[ds[k]] != xs[m] or ys[k] + DY[ds[k]] != ys[m]:
            return None
    child = ExcursionCertificate(
        level=a + 1,
        start_y=b,
        end_y=b + 1,
        was_reversed=False,
        case=BASE,
        crossings=(b,),
        pivot=None,
        children=(),
        length=3,
    )
    return LoopCertificate(level=a, crossings=(b + 1,), children=(child,), length=4)


def _decompose_loop_seq(xs, ys, ds) -> LoopCertificate:
    """Certify a closed walk given as parallel coordinate/direction lists."""
    n = len(xs)
    if n == 4:
        cert = _unit_loop_cert(xs, ys, ds)
        if cert is not None:
            return cert
    a = min(xs)
    dirs = {ds[k] for k in range(n) if ds[k] & 1 and xs[k] == a}
    if len(dirs) != 1:
        raise InternalContradiction("leftmost-column verticals disagree in direction", column=a)
    if dirs == {PLUS_Y}:
        xs, ys, ds = _reverse_seq(xs, ys, ds)
    # Rotate so the first edge is the leftmost crossing with the largest start y.
    k0 = max(
        (k for k in range(n) if ds[k] == MINUS_Y and xs[k] == a),
        key=lambda k: ys[k],
    )
    xs = xs[k0:] + xs[:k0]
    ys = ys[k0:] + ys[:k0]
    ds = ds[k0:] + ds[:k0]

    by_col = _crossing_columns(xs, ds)
    mintab = _min_table(xs)
    idxs = by_col[a]
    cys = [ys[k] for k in idxs]
    t = len(cys)
    if idxs[0] != 0:
        raise InternalContradiction("loop orientation lost its first crossing", column=a)
    if any(cys[k] <= cys[k + 1] for k in range(t - 1)):
        raise InternalContradiction("loop crossings not strictly decreasing", ys=cys)
    if any((y - cys[0]) % 2 != 0 for y in cys):
        raise InternalContradiction("loop crossings mix parities", ys=cys)

    children = []
    covered = t
    for k in range(1, t + 1):
        lo = idxs[k - 1] + 1
        hi = idxs[k] if k < t else n
        child = _decompose_interval(xs, ys, ds, by_col, mintab, a + 1, lo, hi, rev=False)
        expected = (cys[k - 1] - 1, cys[k % t])
        if child.original_endpoints() != expected:
            raise InternalContradiction(
                "loop child endpoints disagree with crossing list",
                expected=expected,
                got=child.original_endpoints(),
            )
        covered += hi - lo
        children.append(child)

    if covered != n or n != t + sum(c.length for c in children):
        raise InternalContradiction("loop edge partition failed", length=n, t=t)
    if n % 8 != 4:
        raise InternalContradiction("loop residue is not 4 mod 8", length=n)
    return LoopCertificate(level=a, crossings=tuple(cys), children=tuple(children), length=n)


def decompose_loop(loop: TracedComponent) -> LoopCertificate:
    """Certify a traced loop via its leftmost-column decomposition."""
    if not loop.is_loop:
        raise ContractViolation("decompose_loop requires a loop")
    xs, ys, ds = _edges_to_seq(loop.edges)
    _check_walk(xs, ys, ds, closed=True)
    return _decompose_loop_seq(xs, ys, ds)


def decompose_excursion(exc: Excursion) -> ExcursionCertificate:
    """Certify an excursion (asserting every structural fact along the way)."""
    xs, ys, ds = _edges_to_seq(exc.edges)
    _check_walk(xs, ys, ds, closed=False)
    by_col = _crossing_columns(xs, ds)
    mintab = _min_table(xs)
    return _decompose_interval(
        xs, ys, ds, by_col, mintab, exc.level, 0, len(xs), rev=False
    )


# ---------------------------------------------------------------------------
# Independent verification (never re-runs the decomposition)
# ---------------------------------------------------------------------------


def _fail(path: str, message: str) -> VerificationReport:
    return VerificationReport(ok=False, path=path, message=message)


def _check_excursion_node(
    cert: ExcursionCertificate, level: int, endpoints: Tuple[int, int], path: str
):
    """One node's local checks.  Returns (failure, child work items)."""
    if cert.level != level:
        return _fail(path, f"level {cert.level} != expected {level}"), ()
    if cert.original_endpoints() != endpoints:
        return _fail(path, f"endpoints {cert.original_endpoints()} != expected {endpoints}"), ()
    i, j = cert.start_y, cert.end_y
    if i >= j:
        return _fail(path, f"normalized endpoints not increasing: {i} >= {j}"), ()
    ys = cert.crossings
    if not ys:
        return _fail(path, "empty crossing list"), ()
    t = len(ys) - 1
    if (j - i) % 2 != 1:
        return _fail(path, f"endpoint parity violated: i={i}, j={j}"), ()
    if any((y - i) % 2 != 0 for y in ys):
        return _fail(path, f"crossing parity violated: {list(ys)}"), ()
    if ys[0] != i:
        return _fail(path, f"first crossing {ys[0]} != start row {i}"), ()
    if len(cert.children) != t:
        return _fail(path, f"{len(cert.children)} children for t={t}"), ()

    child_endpoints = ()
    if cert.case == BASE:
        if t != 0 or cert.length != 3 or j != i + 1 or cert.pivot is not None:
            return _fail(path, "base node malformed"), ()
    elif cert.case == CASE1:
        if t == 0 or cert.pivot is not None:
            return _fail(path, "case1 node malformed"), ()
        if ys[-1] != j - 1:
            return _fail(path, f"case1 last crossing {ys[-1]} != j-1 = {j - 1}"), ()
        if any(ys[k] >= ys[k + 1] for k in range(t)):
            return _fail(path, f"case1 crossings not increasing: {list(ys)}"), ()
        child_endpoints = tuple((ys[k - 1] + 1, ys[k]) for k in range(1, t + 1))
    elif cert.case == CASE2:
        s = cert.pivot
        if t == 0 or s is None or not 1 <= s <= t:
            return _fail(path, "case2 pivot out of range"), ()
        if ys[-1] != j + 1:
            return _fail(path, f"case2 last crossing {ys[-1]} != j+1 = {j + 1}"), ()
        if any(ys[k] <= ys[k + 1] for k in range(s - 1)):
            return _fail(path, f"case2 prefix not decreasing: {list(ys)}"), ()
        if ys[s - 1] >= ys[s]:
            return _fail(path, f"case2 pivot is not an ascent: {list(ys)}"), ()
        if any(ys[k] <= ys[k + 1] for k in range(s, t)):
            return _fail(path, f"case2 suffix not decreasing: {list(ys)}"), ()
        if ys[0] >= ys[-1]:
            return _fail(path, f"case2 ordering broken (y0 >= yt): {list(ys)}"), ()
        child_endpoints = tuple((ys[k - 1] - 1, ys[k]) for k in range(1, t + 1))
    else:
        return _fail(path, f"unknown case tag {cert.case!r}"), ()

    if cert.length != 3 + t + sum(c.length for c in cert.children):
        return _fail(path, f"length identity failed: {cert.length}"), ()
    if cert.length % 8 != predicted_mod8(i, j):
        return _fail(path, f"residue failed: length {cert.length}, endpoints ({i},{j})"), ()

    # Re-derive the residue from the crossing list alone, per case.
    if cert.case == CASE1:
        lhs = (3 + t + sum(2 * (ys[k] - ys[k - 1]) - 1 for k in range(1, t + 1))) % 8
        if lhs != (2 * (j - i) + 1) % 8:
            return _fail(path, f"case1 residue algebra failed: {lhs}"), ()
    elif cert.case == CASE2:
        s = cert.pivot
        lhs = (4 * ys[s] - 4 * ys[s - 1] - 2 * j + 2 * i + 5) % 8
        if lhs != (2 * (j - i) + 1) % 8:
            return _fail(path, f"case2 residue algebra failed: {lhs}"), ()

    work = tuple(
        (child, level + 1, child_endpoints[k], f"{path}/child[{k}]")
        for k, child in enumerate(cert.children)
    )
    return None, work


def verify_certificate(loop: TracedComponent, cert: LoopCertificate) -> VerificationReport:
    """Check a loop certificate against the traced loop, recursively.

    Re-checks every structural invariant, every length identity, and every
    residue claim from the certificate's own data; the only facts taken from
    the loop are its length, leftmost column, and crossing rows.
    """
    if not loop.is_loop:
        return _fail("loop", "component is not a loop")
    xs, ys, ds = _edges_to_seq(loop.edges)
    return _verify_loop_seq(xs, ys, ds, cert)


def _verify_loop_seq(xs, ys, ds, cert: LoopCertificate) -> VerificationReport:
    n = len(xs)
    if n == 4:
        # A unit square has exactly one valid certificate; compare whole trees.
        expected = _unit_loop_cert(xs, ys, ds)
        if expected is not None and cert == expected:
            return VerificationReport(ok=True)
    a = min(xs)
    if cert.level != a:
        return _fail("loop", f"level {cert.level} != leftmost column {a}")
    # Crossing rows, as they read under the downward orientation: the larger
    # endpoint y of each undirected vertical edge on x = a.
    actual = sorted(
        (ys[k] + 1 if ds[k] == PLUS_Y else ys[k])
        for k in range(n)
        if ds[k] & 1 and xs[k] == a
    )
    if sorted(cert.crossings) != actual:
        return _fail("loop", f"crossings {list(cert.crossings)} != traced rows {actual}")
    cys = cert.crossings
    t = len(cys)
    if t < 1:
        return _fail("loop", "empty crossing list")
    if any(cys[k] <= cys[k + 1] for k in range(t - 1)):
        return _fail("loop", f"crossings not strictly decreasing: {list(cys)}")
    if any((y - cys[0]) % 2 != 0 for y in cys):
        return _fail("loop", f"crossings mix parities: {list(cys)}")
    if len(cert.children) != t:
        return _fail("loop", f"{len(cert.children)} children for t={t}")
    if cert.length != t + sum(c.length for c in cert.children):
        return _fail("loop", f"length identity failed: {cert.length}")
    if cert.length != n:
        return _fail("loop", f"certificate length {cert.length} != traced {n}")
    if cert.length % 8 != 4:
        return _fail("loop", f"loop residue is {cert.length % 8}, not 4")

    stack = [
        (child, a + 1, (cys[k] - 1, cys[(k + 1) % t]), f"loop/child[{k}]")
        for k, child in enumerate(cert.children)
    ]
    while stack:
        node, level, endpoints, path = stack.pop()
        failure, work = _check_excursion_node(node, level, endpoints, path)
        if failure is not None:
            return failure
        stack.extend(work)
    return VerificationReport(ok=True)


# ---------------------------------------------------------------------------
# Serialization (fixed field order for byte-stable golden files)
# ---------------------------------------------------------------------------


def _tree_depth(cert) -> int:
    depth = 0
    stack = [(cert, 1)]
    while stack:
        node, d = stack.pop()
        depth = max(depth, d)
        stack.extend((c, d + 1) for c in node.children)
    return depth


class _DeepRecursion:
    """Temporarily widen the recursion limit for deep certificate trees."""

    def __init__(self, depth: int):
        self._need = 4 * depth + 200
        self._old = None

    def __enter__(self):
        self._old = sys.getrecursionlimit()
        if self._need > self._old:
            sys.setrecursionlimit(self._need)

    def __exit__(self, *exc):
        sys.setrecursionlimit(self._old)
        return False


def _exc_to_dict(cert: ExcursionCertificate) -> dict:
    return {
        "level": cert.level,
        "start": cert.start_y,
        "end": cert.end_y,
        "reversed": cert.was_reversed,
        "case": cert.case,
        "crossings": list(cert.crossings),
        "pivot": cert.pivot,
        "children": [_exc_to_dict(c) for c in cert.children],
        "length": cert.length,
    }


def certificate_to_dict(cert: LoopCertificate) -> dict:
    with _DeepRecursion(_tree_depth(cert)):
        return {
            "level": cert.level,
            "crossings": list(cert.crossings),
            "children": [_exc_to_dict(c) for c in cert.children],
            "length": cert.length,
        }


def _exc_open(c: ExcursionCertificate) -> str:
    return (
        f'{{"level": {c.level}, "start": {c.start_y}, "end": {c.end_y}, '
        f'"reversed": {"true" if c.was_reversed else "false"}, '
        f'"case": {json.dumps(c.case)}, "crossings": {json.dumps(list(c.crossings))}, '
        f'"pivot": {json.dumps(c.pivot)}, "children": ['
    )


def serialize_certificate(cert: LoopCertificate) -> str:
    """Render a loop certificate as deterministic single-line JSON.

    Emitted iteratively with an explicit stack: certificate trees reach
    depths in the thousands, where recursive encoders overflow and indented
    output grows quadratically (every line repeats its nesting prefix).
    """
    parts = [
        f'{{"level": {cert.level}, "crossings": {json.dumps(list(cert.crossings))}, '
        '"children": ['
    ]
    stack: List = [[cert, 0]]
    while stack:
        top = stack[-1]
        node, k = top
        if k < len(node.children):
            top[1] = k + 1
            if k:
                parts.append(", ")
            child = node.children[k]
            parts.append(_exc_open(child))
            stack.append([child, 0])
        else:
            stack.pop()
            parts.append(f'], "length": {node.length}}}')
    return "".join(parts) + "\n"


def _exc_from_dict(d: dict) -> ExcursionCertificate:
    return ExcursionCertificate(
        level=d["level"],
        start_y=d["start"],
        end_y=d["end"],
        was_reversed=d["reversed"],
        case=d["case"],
        crossings=tuple(d["crossings"]),
        pivot=d["pivot"],
        children=tuple(_exc_from_dict(c) for c in d["children"]),
        length=d["length"],
    )


def certificate_from_dict(d: dict) -> LoopCertificate:
    with _DeepRecursion(_dict_depth(d)):
        return LoopCertificate(
            level=d["level"],
            crossings=tuple(d["crossings"]),
            children=tuple(_exc_from_dict(c) for c in d["children"]),
            length=d["length"],
        )


def _dict_depth(d: dict) -> int:
    depth = 0
    stack = [(d, 1)]
    while stack:
        node, k = stack.pop()
        depth = max(depth, k)
        stack.extend((c, k + 1) for c in node.get("children", ()))
    return depth


def parse_certificate(text: str) -> LoopCertificate:
    # Scan brace nesting first: json.loads itself recurses per level.
    depth = 0
    cur = 0
    for ch in text:
        if ch == "{":
            cur += 1
            if cur > depth:
                depth = cur
        elif ch == "}":
            cur -= 1
    with _DeepRecursion(depth):
        d = json.loads(text)
    return certificate_from_dict(d)
