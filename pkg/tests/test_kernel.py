import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hitomezashi import kernel
from hitomezashi.kernel import HAVE_NUMBA, _kernel_applicable, enumerate_arrays
from hitomezashi.pattern import PatternHandle
from hitomezashi.sequence import Periodic, Seeded, SequenceSpec, bit_at, bit_func
from hitomezashi.trace import _enumerate_raw

from .conftest import seeded_pattern

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


def as_triples(xs, ys, ds):
    return list(zip(xs.tolist(), ys.tolist(), ds.tolist()))


class TestSeededBit:
    @given(st.integers(0, 2**64 - 1), st.integers(-(10**6), 10**6))
    @settings(max_examples=200, deadline=None)
    def test_matches_bit_at(self, seed, index):
        spec = SequenceSpec((), 0, Seeded(seed))
        assert int(kernel._bit(np.uint64(seed), index)) == bit_at(spec, index)


class TestApplicability:
    def test_seeded_pair_applicable(self):
        assert _kernel_applicable(seeded_pattern(1, 2))

    def test_periodic_not_applicable(self):
        p = PatternHandle(
            SequenceSpec((0, 1), 0, Periodic()),
            SequenceSpec((), 0, Seeded(1)),
        )
        assert not _kernel_applicable(p)

    def test_windowed_seeded_not_applicable(self):
        p = PatternHandle(
            SequenceSpec((1,), 0, Seeded(1)),
            SequenceSpec((), 0, Seeded(2)),
        )
        assert not _kernel_applicable(p)


class TestEquivalence:
    @pytest.mark.parametrize(
        "seeds,window,budget",
        [
            ((0, 1), (0, 0, 9, 9), 4096),
            ((42, 43), (-8, -8, 7, 7), 4096),  # negative coordinates
            ((2**64 - 1, 2**63), (0, 0, 15, 15), 2048),  # extreme seeds
            ((5, 5), (3, -2, 12, 9), 1024),
        ],
    )
    def test_matches_pure_python(self, seeds, window, budget):
        p = seeded_pattern(*seeds)
        comps = enumerate_arrays(p, window, budget)
        raw_loops, raw_unres = _enumerate_raw(bit_func(p.eps), bit_func(p.eta), window, budget)
        k_loops = [as_triples(xs, ys, ds) for ok, xs, ys, ds in comps if ok]
        k_unres = [as_triples(xs, ys, ds) for ok, xs, ys, ds in comps if not ok]
        assert k_loops == [[tuple(e) for e in l] for l in raw_loops]
        assert k_unres == [[tuple(e) for e in u] for u in raw_unres]

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**64 - 1), st.integers(0, 2**64 - 1))
    def test_matches_pure_python_random(self, se, sh):
        p = seeded_pattern(se, sh)
        comps = enumerate_arrays(p, (0, 0, 7, 7), 1500)
        raw_loops, raw_unres = _enumerate_raw(
            bit_func(p.eps), bit_func(p.eta), (0, 0, 7, 7), 1500
        )
        k_loops = [as_triples(xs, ys, ds) for ok, xs, ys, ds in comps if ok]
        assert k_loops == [[tuple(e) for e in l] for l in raw_loops]
        assert sum(1 for ok, *_ in comps if not ok) == len(raw_unres)

    def test_fallback_path_for_periodic(self):
        p = PatternHandle(
            SequenceSpec((0, 1, 1), 0, Periodic()),
            SequenceSpec((1, 0), 0, Periodic()),
        )
        comps = enumerate_arrays(p, (0, 0, 9, 9), 4096)
        raw_loops, _ = _enumerate_raw(bit_func(p.eps), bit_func(p.eta), (0, 0, 9, 9), 4096)
        k_loops = [as_triples(xs, ys, ds) for ok, xs, ys, ds in comps if ok]
        assert k_loops == [[tuple(e) for e in l] for l in raw_loops]


class TestCanonPacked:
    def test_loops_canonical(self):
        comps = enumerate_arrays(seeded_pattern(9, 10), (0, 0, 15, 15), 4096)
        for ok, xs, ys, ds in comps:
            if not ok:
                continue
            assert ds[0] == 1  # first step +y
            least = min(zip(xs.tolist(), ys.tolist()))
            assert (int(xs[0]), int(ys[0])) == least
            np_xs, np_ys, np_ds = kernel._canonicalize_np(xs, ys, ds)
            assert as_triples(np_xs, np_ys, np_ds) == as_triples(xs, ys, ds)
