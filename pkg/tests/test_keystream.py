import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fibsteg.keystream import MASK64, ZERO_SEED_REMAP, KeyStream, message_stream


def test_seed_one_first_output():
    # s = 1: s ^= s >> 12 -> 1; s ^= s << 25 -> 2**25 + 1; s ^= s >> 27 -> unchanged
    state = 2**25 + 1
    assert KeyStream(1).next_u64() == (state * 2685821657736338717) % 2**64 == 5180492295206395165


def test_determinism():
    a, b = KeyStream(99), KeyStream(99)
    assert [a.next_u64() for _ in range(1000)] == [b.next_u64() for _ in range(1000)]


def test_seed_zero_is_remapped():
    a, b = KeyStream(0), KeyStream(ZERO_SEED_REMAP)
    assert a.state != 0
    assert [a.next_u64() for _ in range(10)] == [b.next_u64() for _ in range(10)]


@pytest.mark.parametrize("bad", [-1, 2**64])
def test_seed_range(bad):
    with pytest.raises(ValueError):
        KeyStream(bad)


def test_small_permutations():
    assert KeyStream(1).permutation(0).tolist() == []
    assert KeyStream(1).permutation(1).tolist() == [0]
    assert sorted(KeyStream(42).permutation(5).tolist()) == [0, 1, 2, 3, 4]


def test_permutation_matches_reference_shuffle():
    ref_stream = KeyStream(42)
    perm = list(range(5))
    for i in range(4, 0, -1):
        j = ref_stream.next_u64() % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    assert KeyStream(42).permutation(5).tolist() == perm == [4, 1, 3, 2, 0]


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, MASK64), n=st.integers(0, 3000))
def test_permutation_is_bijective(seed, n):
    perm = KeyStream(seed).permutation(n)
    assert np.array_equal(np.sort(perm), np.arange(n))


def test_message_bits_are_low_bits_of_draws():
    ref = KeyStream(7)
    expected = [ref.next_u64() & 1 for _ in range(8)]
    assert KeyStream(7).message_bits(8).tolist() == expected == [0, 0, 0, 0, 1, 0, 1, 0]
    assert KeyStream(7).message_bits(0).size == 0


def test_message_bits_are_balanced():
    bits = KeyStream(2024).message_bits(10**6)
    assert 0.49 <= bits.mean() <= 0.51


def test_distinct_seeds_diverge_quickly():
    rng = np.random.default_rng(0)
    seeds = rng.integers(0, 2**63, size=(1000, 2), dtype=np.uint64)
    same = 0
    for a, b in seeds:
        if a == b:
            continue
        x, y = KeyStream(int(a)), KeyStream(int(b))
        same += [x.next_u64() for _ in range(4)] == [y.next_u64() for _ in range(4)]
    assert same == 0


def test_message_stream_differs_from_order_stream():
    assert message_stream(5).next_u64() != KeyStream(5).next_u64()
