"""Bi-infinite binary sequences defined by a finite window plus an extension policy.

A spec is a finite description of an element of {0,1}^Z: explicit bits on a
window of indices, and a rule (constant, periodic, or seeded hash) for every
index outside the window.  All values are immutable and every lookup is a pure
function of (spec, index), so specs can be shared freely between workers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Union

_MASK64 = (1 << 64) - 1


class SpecParseError(ValueError):
    """Raised when a sequence-spec string does not follow the grammar."""


def splitmix64(z: int) -> int:
    """One round of the splitmix64 finalizer (public-domain avalanche mix).

    Pure 64-bit integer arithmetic, so results are identical on every
    platform and Python version.
    """
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix64(a: int, b: int) -> int:
    """Deterministic 64-bit combination of two values (seed derivation)."""
    return splitmix64((a & _MASK64) ^ splitmix64(b & _MASK64))


@dataclass(frozen=True)
class Constant:
    """Every index outside the window holds the fixed bit."""

    bit: int

    def __post_init__(self):
        if self.bit not in (0, 1):
            raise ValueError(f"constant bit must be 0 or 1, got {self.bit!r}")


@dataclass(frozen=True)
class Periodic:
    """The window repeats with period equal to its length."""


@dataclass(frozen=True)
class Seeded:
    """Indices outside the window get the low bit of splitmix64(seed ^ splitmix64(index)).

    The index is reduced modulo 2**64 (two's complement for negatives) before
    mixing.  Stateless and random-access: the bit at any index can be computed
    without generating its neighbours.
    """

    seed: int

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


Extension = Union[Constant, Periodic, Seeded]


@dataclass(frozen=True)
class SequenceSpec:
    """A bi-infinite {0,1} sequence: explicit window bits plus an extension policy."""

    window: tuple
    offset: int
    extension: Extension

    def __post_init__(self):
        object.__setattr__(self, "window", tuple(self.window))
        if any(b not in (0, 1) for b in self.window):
            raise ValueError(f"window bits must be 0 or 1: {self.window!r}")
        if isinstance(self.extension, Periodic) and not self.window:
            raise ValueError("periodic extension requires a non-empty window")

    def bit_at(self, index: int) -> int:
        return bit_at(self, index)


def bit_at(spec: SequenceSpec, index: int) -> int:
    """Bit of the sequence at any integer index.  Total and deterministic."""
    off = spec.offset
    k = index - off
    if 0 <= k < len(spec.window):
        return spec.window[k]
    ext = spec.extension
    if isinstance(ext, Constant):
        return ext.bit
    if isinstance(ext, Periodic):
        return spec.window[k % len(spec.window)]
    return splitmix64(ext.seed ^ splitmix64(index & _MASK64)) & 1


def bit_func(spec: SequenceSpec) -> Callable[[int], int]:
    """A fast callable equivalent to ``bit_at(spec, .)`` (hot-loop helper).

    Periodic and pure-constant specs get closed forms; everything else gets a
    memoizing closure, since tracing revisits the same rows and columns often.
    """
    win = spec.window
    off = spec.offset
    ext = spec.extension
    if isinstance(ext, Periodic):
        n = len(win)
        return lambda i: win[(i - off) % n]
    if isinstance(ext, Constant) and not win:
        b = ext.bit
        return lambda i: b
    cache: dict = {}

    def f(i, _cache=cache, _spec=spec):
        try:
            return _cache[i]
        except KeyError:
            v = _cache[i] = bit_at(_spec, i)
            return v

    return f


def period_of(spec: SequenceSpec) -> int | None:
    """Period of the sequence as a whole, or None if it is not periodic.

    Constant extension with an empty window has period 1; periodic extension
    has period len(window).  Anything else is treated as aperiodic.
    """
    if isinstance(spec.extension, Periodic):
        return len(spec.window)
    if isinstance(spec.extension, Constant) and not spec.window:
        return 1
    return None


_RAND_RE = re.compile(r"rand:(\d+)\Z")
_WINDOW_RE = re.compile(r"([01]+)@([+-]?\d+):(\w+)\Z")


def parse_spec(text: str) -> SequenceSpec:
    """Parse the spec grammar: ``<bits>@<offset>:<ext>`` or ``rand:<seed>``."""
    m = _RAND_RE.match(text)
    if m:
        seed = int(m.group(1))
        if seed > _MASK64:
            raise SpecParseError(f"seed out of 64-bit range: {m.group(1)!r}")
        return SequenceSpec(window=(), offset=0, extension=Seeded(seed))
    m = _WINDOW_RE.match(text)
    if not m:
        raise SpecParseError(f"malformed sequence spec: {text!r}")
    bits, offset, ext = m.groups()
    window = tuple(int(c) for c in bits)
    if ext == "const0":
        extension: Extension = Constant(0)
    elif ext == "const1":
        extension = Constant(1)
    elif ext == "periodic":
        extension = Periodic()
    else:
        raise SpecParseError(f"unknown extension: {ext!r}")
    return SequenceSpec(window=window, offset=int(offset), extension=extension)


def format_spec(spec: SequenceSpec) -> str:
    """Inverse of :func:`parse_spec` for grammar-representable specs."""
    ext = spec.extension
    if isinstance(ext, Seeded):
        if spec.window:
            raise ValueError("seeded specs with window bits are not representable")
        return f"rand:{ext.seed}"
    if not spec.window:
        raise ValueError("window must be non-empty for windowed grammar forms")
    bits = "".join(str(b) for b in spec.window)
    if isinstance(ext, Constant):
        return f"{bits}@{spec.offset}:const{ext.bit}"
    return f"{bits}@{spec.offset}:periodic"
