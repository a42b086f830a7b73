"""Edge-membership queries for a stitch pattern on the integer grid.

A pattern is determined by two sequences: eps (indexed by x) gates vertical
edges and eta (indexed by y) gates horizontal ones.  The horizontal edge
{(i,j),(i+1,j)} is present iff i = eta_j (mod 2); the vertical edge
{(i,j),(i,j+1)} is present iff j = eps_i (mod 2).  Python's % already gives
the mathematical (non-negative) residue, so negative coordinates work the
same as positive ones.

Consequence of the parity rules: every vertex has exactly one present
horizontal edge and exactly one present vertical edge, i.e. the pattern is a
disjoint union of simple cycles and bi-infinite simple paths.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from typing import Set, Tuple

from .sequence import SequenceSpec, bit_at

Vertex = Tuple[int, int]


class ContractViolation(ValueError):
    """An operation was called outside its contract."""


_EdgeBase = namedtuple("Edge", ("u", "v"))


class Edge(_EdgeBase):
    """An unordered grid edge, stored with endpoints in lexicographic order."""

    __slots__ = ()

    def __new__(cls, u: Vertex, v: Vertex):
        if u > v:
            u, v = v, u
        dx = v[0] - u[0]
        dy = v[1] - u[1]
        if (dx, dy) not in ((1, 0), (0, 1)):
            raise ContractViolation(f"endpoints are not grid-adjacent: {u}, {v}")
        return super().__new__(cls, u, v)

    @property
    def horizontal(self) -> bool:
        return self.u[1] == self.v[1]


@dataclass(frozen=True)
class PatternHandle:
    """A pattern as a pair of sequence specs; answers queries on demand."""

    eps: SequenceSpec
    eta: SequenceSpec


def has_edge(p: PatternHandle, e: Edge) -> bool:
    """Whether the grid edge is present in the pattern."""
    if not isinstance(e, Edge):
        e = Edge(*e)
    (x, y), _ = e
    if e.horizontal:
        return (x - bit_at(p.eta, y)) % 2 == 0
    return (y - bit_at(p.eps, x)) % 2 == 0


def incident_edges(p: PatternHandle, v: Vertex) -> Set[Edge]:
    """The two present edges at a vertex: one horizontal, one vertical."""
    x, y = v
    if (x - bit_at(p.eta, y)) % 2 == 0:
        h = Edge((x, y), (x + 1, y))
    else:
        h = Edge((x - 1, y), (x, y))
    if (y - bit_at(p.eps, x)) % 2 == 0:
        w = Edge((x, y), (x, y + 1))
    else:
        w = Edge((x, y - 1), (x, y))
    return {h, w}
