import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfequiv.normalize import BACKENDS, is_trivial, radix_sort_keys, reduce

keyed = st.lists(st.tuples(st.binary(max_size=6), st.integers(-5, 5)), max_size=80)


@pytest.mark.parametrize("backend", BACKENDS)
def test_examples(backend):
    assert reduce([(b"a", 3), (b"b", 1), (b"a", -3)], backend) == {b"b": 1}
    assert reduce([], backend) == {}
    assert is_trivial([(b"k", 2), (b"k", -2)], backend) == (True, None)
    assert is_trivial([(b"z", 1), (b"y", 4), (b"z", -1), (b"x", 0)], backend) == (False, (b"y", 4))


def test_unknown_backend():
    with pytest.raises(ValueError):
        reduce([(b"a", 1)], "bogus")


@settings(max_examples=300, deadline=None)
@given(keyed, st.randoms(use_true_random=False))
def test_backends_agree_and_ignore_order(terms, rnd):
    expected = reduce(terms, "hash")
    shuffled = list(terms)
    rnd.shuffle(shuffled)
    for backend in BACKENDS:
        got = reduce(shuffled, backend)
        assert got == expected
        assert list(got) == sorted(got)
        assert all(got.values())


@settings(max_examples=200, deadline=None)
@given(keyed, keyed)
def test_additive(a, b):
    ra, rb = reduce(a), reduce(b)
    merged = {k: ra.get(k, 0) + rb.get(k, 0) for k in set(ra) | set(rb)}
    assert reduce(a + b) == {k: x for k, x in sorted(merged.items()) if x}


def test_radix_sort_large_buckets():
    rng = random.Random(0)
    keys = [bytes(rng.randrange(3) for _ in range(rng.randint(0, 12))) for _ in range(5000)]
    order = radix_sort_keys(keys)
    assert sorted(order) == list(range(len(keys)))
    assert [keys[i] for i in order] == sorted(keys)
