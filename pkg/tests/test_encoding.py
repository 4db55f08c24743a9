import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfequiv.encoding import (
    ANY,
    EncodedKey,
    EncodedTerm,
    Interval,
    Point,
    PowA1,
    Rect,
    ShortKey,
    UBracket,
    UEps,
    ULetter,
    core_of,
    decode_word,
    describe_key,
    deserialize_key,
    e_list,
    encode_word,
    encoded_length,
    expand_key,
    format_compact,
    serialize_key,
)


def test_e_list_examples():
    assert e_list((2, 2, 1, 1, 1, 2, 1, 2), 2) == (0, 3, 1)
    assert e_list((2,), 2) == ()
    assert e_list((2, 1, 3, 1, 1, 1, 1, 2, 1, 1, 3), 3) == (2, 1, 3, 4, 2, 2, 3)
    with pytest.raises(ValueError):
        e_list((1, 2), 2)


def test_encode_word_examples():
    assert encode_word((1, 1), 2) == PowA1(2)
    assert encode_word((), 2) == PowA1(0)
    assert encode_word((2,), 2) == ShortKey(2, None, 2)
    assert encode_word((2, 1, 1, 1, 2), 2) == ShortKey(2, Point(3), 2)
    assert encode_word((2, 2, 1, 1, 1, 2, 1, 2), 2) == EncodedKey(2, Point(0), (3,), Point(1), 2, 2)
    with pytest.raises(ValueError):
        encode_word((2, 1), 2)


def test_encoded_length_examples():
    assert encoded_length(PowA1(5)) == -1
    assert encoded_length(encode_word((2,), 2)) == 0
    assert encoded_length(EncodedTerm(EncodedKey.from_list([Interval(2), 4, 1], 2), 7)) == 3
    assert encoded_length(EncodedKey.from_list([2, 1, 3, 4, 2, 2, 3], 3)) == 3


def test_core_examples():
    assert core_of(EncodedKey.from_list([3, 0, 7], 2)) == (0,)
    assert core_of(EncodedKey.from_list([1, 5], 2)) == ()
    assert core_of(EncodedKey.from_list([2, 1, 3, 4, 2, 2, 3], 3)) == (3, 4, 2)
    with pytest.raises(ValueError):
        core_of(ShortKey(2, Point(1), 2))


def test_from_list_rejects_short_lists():
    with pytest.raises(ValueError):
        EncodedKey.from_list([3], 2)
    with pytest.raises(ValueError):
        EncodedKey.from_list([2, 1, 3], 3)


def words(rank, max_len):
    return st.lists(st.integers(1, rank), max_size=max_len).map(tuple)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 6).flatmap(lambda r: st.tuples(st.just(r), words(r, 30))))
def test_decode_inverts_encode(rw):
    r, w = rw
    if w and (w[0] == 1) != (w[-1] == 1) or (w and w[0] == 1 and any(c != 1 for c in w)):
        return
    assert decode_word(encode_word(w, r)) == w
    assert expand_key(encode_word(w, r), r) == [(1, w)]


def test_sum_keys_do_not_decode():
    with pytest.raises(ValueError):
        decode_word(ShortKey(ANY, Interval(2), 2))
    with pytest.raises(ValueError):
        decode_word(EncodedKey(2, Interval(1), (0,), Point(0), 2, 2))


def test_expand_key_examples():
    assert expand_key(ShortKey(ANY, Interval(1), 2), 3) == [
        (1, (2, 2)), (1, (2, 1, 2)), (1, (3, 2)), (1, (3, 1, 2)),
    ]
    assert expand_key(Rect(2, (), 2, 1, 2, 2), 2) == [(1, (2, 2, 2)), (1, (2, 1, 2, 2))]
    assert expand_key(Rect(2, (0,), 1, 1, 2, 2), 2) == [(1, (2, 2, 2, 2))]
    assert expand_key(EncodedKey(2, Interval(-1), (), Point(0), 2, 2), 2) == []
    assert expand_key(UBracket(1, 2, 3), 3) == [(1, (1, 1, 1, 3))]


def test_text_size_bound():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.choice([1, 2, 10, 100, 1000, 10000])
        r = rng.randint(2, 5)
        w = (2,) + tuple(1 if rng.random() < 0.7 else rng.randint(1, r) for _ in range(n - 1)) + (2,)
        text = len(" ".join(map(str, w)).encode())
        assert len(serialize_key(encode_word(w, r))) <= 3 * text + 16


def all_key_kinds():
    return [
        PowA1(0), PowA1(3), PowA1(300),
        ShortKey(2, None, 2), ShortKey(2, Point(3), 2), ShortKey(2, Interval(3), 2),
        ShortKey(ANY, Interval(3), 2), ShortKey(2, Interval(3), ANY), ShortKey(2, Interval(-1), ANY),
        EncodedKey(2, Point(0), (), Point(0), 2, 2), EncodedKey(2, Point(0), (0,), Point(0), 2, 2),
        EncodedKey(2, Interval(0), (0,), Point(0), 2, 2), EncodedKey(2, Point(0), (0, 0), Point(0), 2, 2),
        EncodedKey(3, Point(1), (2, 0, 3), Interval(4), 2, 3),
        UEps(), ULetter(1), ULetter(3), UBracket(1, 0, 1), UBracket(1, 0, 3), UBracket(3, 0, 1),
        Rect(2, (), 1, 1, 2, 2), Rect(2, (0,), 1, 1, 2, 2), Rect(2, (0,), 1, 2, 2, 2), Rect(2, (1,), 1, 1, 2, 2),
        Rect(3, (2, 5, 3), 2**80, 7, 2, 3),
        Rect(2, (2**3000,), 1, 1, 2, 2),
    ]


def test_serialization_injective_and_invertible():
    keys = all_key_kinds()
    blobs = [serialize_key(k) for k in keys]
    assert len(set(blobs)) == len(blobs)
    for k, b in zip(keys, blobs):
        assert deserialize_key(b, getattr(k, "rank", 3)) == k
    # prefix-free: no blob is a proper prefix of another
    for a in blobs:
        for b in blobs:
            assert a == b or not b.startswith(a)


def test_point_and_interval_differ():
    assert serialize_key(ShortKey(2, Point(3), 2)) != serialize_key(ShortKey(2, Interval(3), 2))


def test_deserialize_rejects_garbage():
    for bad in [b"", b"Z", b"V\x01", b"UX", b"UE\x00", b"S\x01\x02Q"]:
        with pytest.raises(ValueError):
            deserialize_key(bad, 2)


@settings(max_examples=300, deadline=None)
@given(
    st.integers(2, 5),
    st.lists(st.integers(0, 2**40), max_size=6),
    st.integers(1, 2**20),
    st.integers(1, 2**20),
)
def test_rect_round_trip(r, core, K, M):
    if r > 2:
        core = [c if i % 2 else 2 + c % (r - 1) for i, c in enumerate(core)]
        if len(core) % 2 == 0:
            core = core + [2]
    key = Rect(2, tuple(core), K, M, r, r)
    assert deserialize_key(serialize_key(key), r) == key


def test_rendering():
    assert format_compact(()) == "e"
    assert format_compact((2, 1, 1, 1, 2, 1)) == "2 1^3 2 1"
    assert describe_key(UEps()) == "rho(e)"
    assert describe_key(UBracket(1, 2, 3)) == "rho(1^3 3)"
    assert describe_key(Rect(2, (0,), 3, 1, 2, 2)) == "sigma[K=3,M=1](2 | 2 2 | 2)"
