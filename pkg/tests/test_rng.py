from collections import Counter

import pytest
from hypothesis import given, strategies as st

from vsdnplace.rng import SplitMix64


def test_reference_vector():
    # Published SplitMix64 outputs for seed 1234567.
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_seed_is_reduced_mod_2_64():
    a, b = SplitMix64(5), SplitMix64(5 + 2**64)
    assert a.next_u64() == b.next_u64()


@given(st.integers(0, 2**64 - 1), st.integers(1, 10**6))
def test_below_in_range(seed, n):
    rng = SplitMix64(seed)
    assert all(0 <= rng.below(n) < n for _ in range(20))


def test_below_rejects_bad_bound():
    with pytest.raises(ValueError):
        SplitMix64(0).below(0)


@given(st.integers(0, 2**64 - 1), st.integers(1, 30), st.data())
def test_sample_distinct(seed, population, data):
    k = data.draw(st.integers(0, population))
    out = SplitMix64(seed).sample(population, k)
    assert len(out) == k == len(set(out))
    assert all(0 <= x < population for x in out)


def test_between_roughly_uniform():
    rng = SplitMix64(99)
    counts = Counter(rng.between(2, 5) for _ in range(8000))
    assert set(counts) == {2, 3, 4, 5}
    assert all(1700 < c < 2300 for c in counts.values())
