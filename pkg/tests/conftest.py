import pytest

from hitomezashi.pattern import PatternHandle
from hitomezashi.sequence import Constant, Seeded, SequenceSpec


def constant_pattern(eps_bit: int = 0, eta_bit: int = 0) -> PatternHandle:
    return PatternHandle(
        SequenceSpec((), 0, Constant(eps_bit)),
        SequenceSpec((), 0, Constant(eta_bit)),
    )


def seeded_pattern(eps_seed: int, eta_seed: int) -> PatternHandle:
    return PatternHandle(
        SequenceSpec((), 0, Seeded(eps_seed)),
        SequenceSpec((), 0, Seeded(eta_seed)),
    )


@pytest.fixture
def zero_pattern() -> PatternHandle:
    return constant_pattern(0, 0)
