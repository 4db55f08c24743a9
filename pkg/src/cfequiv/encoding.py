"""Run-length encodings of words and sums of words, and their canonical byte keys.

A word whose first and last letters differ from a_1 is written as the list of
a_1-run lengths between its other letters::

    s1 a1^k1 s2 a1^k2 ... a1^km s(m+1)   ->   (s1, k1, s2, k2, ..., km, s(m+1))

For rank 2 every delimiter is a_2, so only the integers are kept. The first and
last integer entry may also be an interval {0..hi}, which stands for the sum
over that range; everything strictly between them is the *core*.

Keys come in three families:

* ``PowA1``, ``ShortKey``, ``EncodedKey``: encoded terms before rewriting,
* ``UEps``, ``ULetter``, ``UBracket``: the basis used for the U part,
* ``Rect``: the (0,0)-anchored rectangle sums used for the V part.

``serialize_key`` maps any of them to bytes, injectively and prefix-free;
the reduction step groups on those bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from cfequiv.words import A1, A2

# Letter placeholder in short keys meaning "summed over every letter other than a1".
ANY = 0


@dataclass(frozen=True)
class Point:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("Point index must be >= 0")

    def __str__(self):
        return str(self.k)


@dataclass(frozen=True)
class Interval:
    """The index set {0..hi}; hi = -1 is the empty set."""

    hi: int

    def __post_init__(self):
        if self.hi < -1:
            raise ValueError("Interval upper bound must be >= -1")

    @property
    def count(self) -> int:
        return self.hi + 1

    def __str__(self):
        return f"[0,{self.hi}]"


Boundary = Union[Point, Interval]


@dataclass(frozen=True)
class PowA1:
    """rho_{a1^k}; k = 0 is rho_eps."""

    k: int


@dataclass(frozen=True)
class ShortKey:
    """An encoded list with at most one integer entry.

    ``entry is None``: the single letter ``first`` (== ``last``).
    Otherwise the word ``first a1^i last`` for i in the entry; a side equal to
    ``ANY`` is summed over all letters other than a1.
    """

    first: int
    entry: Optional[Boundary]
    last: int


@dataclass(frozen=True)
class EncodedKey:
    s_first: int
    left: Boundary
    core: tuple
    right: Boundary
    s_last: int
    rank: int

    @classmethod
    def from_list(cls, entries, rank: int) -> "EncodedKey":
        """Build from a flat list: integers only for rank 2, letters and integers alternating otherwise."""
        entries = list(entries)
        if rank == 2:
            if len(entries) < 2:
                raise ValueError("encoded length must be >= 2")
            return cls(A2, _as_boundary(entries[0]), tuple(entries[1:-1]), _as_boundary(entries[-1]), A2, rank)
        if len(entries) < 5 or len(entries) % 2 == 0:
            raise ValueError("encoded length must be >= 2")
        core = tuple(entries[2:-2])
        return cls(entries[0], _as_boundary(entries[1]), core, _as_boundary(entries[-2]), entries[-1], rank)

    def entries(self) -> tuple:
        """The flat list back, boundaries as Point/Interval and core integers as ints."""
        if self.rank == 2:
            return (self.left,) + self.core + (self.right,)
        return (self.s_first, self.left) + self.core + (self.right, self.s_last)


def _as_boundary(e) -> Boundary:
    return e if isinstance(e, (Point, Interval)) else Point(int(e))


@dataclass(frozen=True)
class EncodedTerm:
    key: object
    coef: int


@dataclass(frozen=True)
class UEps:
    """rho_eps."""


@dataclass(frozen=True)
class ULetter:
    """rho_s, s != a2."""

    s: int


@dataclass(frozen=True)
class UBracket:
    """rho_{left a1^k right}, left and right != a2 (either may be a1)."""

    left: int
    k: int
    right: int


BUPrimeKey = Union[UEps, ULetter, UBracket]


@dataclass(frozen=True)
class Rect:
    """sum_{i<K, j<M} rho_{s_first a1^i v a1^j s_last} where v is spelled by ``core``."""

    s_first: int
    core: tuple
    K: int
    M: int
    s_last: int
    rank: int


# --- word encoding ---------------------------------------------------------------------


def run_lengths(w) -> tuple[list, list]:
    """Split a word with non-a1 ends into its non-a1 letters and the a1-run lengths between them."""
    delims = []
    gaps = []
    run = 0
    for c in w:
        if c == A1:
            run += 1
        else:
            if delims:
                gaps.append(run)
            delims.append(c)
            run = 0
    return delims, gaps


def make_core(delims, gaps, rank: int) -> tuple:
    """Alternating d0, g0, d1, ..., d_n (or just the gaps for rank 2)."""
    if rank == 2:
        return tuple(gaps)
    out = [delims[0]]
    for d, g in zip(delims[1:], gaps):
        out.append(g)
        out.append(d)
    return tuple(out)


def e_list(w, rank: int) -> tuple:
    """The flat encoding list of a word with first and last letter != a1."""
    if not w or w[0] == A1 or w[-1] == A1:
        raise ValueError("word must be non-empty with first and last letter != a1")
    delims, gaps = run_lengths(w)
    return make_core(delims, gaps, rank)


def encode_word(w, rank: int):
    """PowA1 for a1-powers; ShortKey or EncodedKey for words with non-a1 ends."""
    w = tuple(w)
    if all(c == A1 for c in w):
        return PowA1(len(w))
    if w[0] == A1 or w[-1] == A1:
        raise ValueError(f"word {w} starts or ends with a1; split off the a1 affixes first")
    delims, gaps = run_lengths(w)
    if not gaps:
        return ShortKey(delims[0], None, delims[0])
    if len(gaps) == 1:
        return ShortKey(delims[0], Point(gaps[0]), delims[1])
    core = make_core(delims[1:-1], gaps[1:-1], rank)
    return EncodedKey(delims[0], Point(gaps[0]), core, Point(gaps[-1]), delims[-1], rank)


def encoded_length(t) -> int:
    """Number of integer/interval entries; -1 for a1-powers."""
    key = t.key if isinstance(t, EncodedTerm) else t
    if isinstance(key, PowA1):
        return -1
    if isinstance(key, ShortKey):
        return 0 if key.entry is None else 1
    if isinstance(key, EncodedKey):
        return 2 + (len(key.core) if key.rank == 2 else len(key.core) // 2)
    raise TypeError(f"not an encoded key: {key!r}")


def core_of(key: EncodedKey) -> tuple:
    if not isinstance(key, EncodedKey):
        raise ValueError("core is only defined for encoded lists of length >= 2")
    return key.core


def core_word(core: tuple, rank: int) -> tuple:
    if rank == 2:
        w = [A2]
        for g in core:
            w.extend((A1,) * g)
            w.append(A2)
        return tuple(w)
    w = []
    for i, c in enumerate(core):
        if i % 2:
            w.extend((A1,) * c)
        else:
            w.append(c)
    return tuple(w)


def _point_word(first, k, last):
    return (first,) + (A1,) * k + (last,)


def decode_word(key) -> tuple:
    """Inverse of ``encode_word`` for keys without intervals or ANY sides."""
    if isinstance(key, PowA1):
        return (A1,) * key.k
    if isinstance(key, ShortKey):
        if ANY in (key.first, key.last) or isinstance(key.entry, Interval):
            raise ValueError("key denotes a sum, not a word")
        if key.entry is None:
            return (key.first,)
        return _point_word(key.first, key.entry.k, key.last)
    if isinstance(key, EncodedKey):
        if not (isinstance(key.left, Point) and isinstance(key.right, Point)):
            raise ValueError("key denotes a sum, not a word")
        return (
            (key.s_first,) + (A1,) * key.left.k + core_word(key.core, key.rank) + (A1,) * key.right.k + (key.s_last,)
        )
    raise TypeError(f"cannot decode {key!r}")


def _indices(b: Boundary):
    return range(b.count) if isinstance(b, Interval) else (b.k,)


def expand_key(key, rank: int) -> list:
    """Every elementary word (with multiplicity) a key stands for, as a list of (coef, word).

    Plain loops over the definitions; used by tests and for printing small witnesses.
    """
    others = range(2, rank + 1)
    if isinstance(key, (PowA1, UEps, ULetter, UBracket)):
        if isinstance(key, PowA1):
            w = (A1,) * key.k
        elif isinstance(key, UEps):
            w = ()
        elif isinstance(key, ULetter):
            w = (key.s,)
        else:
            w = _point_word(key.left, key.k, key.right)
        return [(1, w)]
    if isinstance(key, ShortKey):
        if key.entry is None:
            return [(1, (key.first,))]
        firsts = others if key.first == ANY else (key.first,)
        lasts = others if key.last == ANY else (key.last,)
        return [(1, _point_word(a, i, b)) for a in firsts for i in _indices(key.entry) for b in lasts]
    if isinstance(key, EncodedKey):
        mid = core_word(key.core, key.rank)
        return [
            (1, (key.s_first,) + (A1,) * i + mid + (A1,) * j + (key.s_last,))
            for i in _indices(key.left)
            for j in _indices(key.right)
        ]
    if isinstance(key, Rect):
        mid = core_word(key.core, key.rank)
        return [
            (1, (key.s_first,) + (A1,) * i + mid + (A1,) * j + (key.s_last,))
            for i in range(key.K)
            for j in range(key.M)
        ]
    raise TypeError(f"cannot expand {key!r}")


# --- canonical bytes -------------------------------------------------------------------


def _uint(n: int) -> bytes:
    """Length-prefixed big-endian magnitude; the prefix itself recurses past 254 bytes."""
    if n < 0:
        raise ValueError("negative integer in key")
    body = n.to_bytes((n.bit_length() + 7) // 8, "big")
    if len(body) < 255:
        return bytes((len(body),)) + body
    return b"\xff" + _uint(len(body)) + body


def _boundary(b) -> bytes:
    if b is None:
        return b"N"
    if isinstance(b, Point):
        return b"P" + _uint(b.k)
    return b"I" + _uint(b.hi + 1)


def _core(core: tuple) -> bytes:
    return _uint(len(core)) + b"".join(_uint(c) for c in core)


def serialize_key(key) -> bytes:
    """Canonical bytes: equal keys give equal bytes, distinct keys give distinct, prefix-free bytes.

    The rank is not recorded; keys from one run share it.
    """
    if isinstance(key, Rect):
        return b"V" + _uint(key.s_first) + _uint(key.s_last) + _core(key.core) + _uint(key.K) + _uint(key.M)
    if isinstance(key, UBracket):
        return b"UB" + _uint(key.left) + _uint(key.k) + _uint(key.right)
    if isinstance(key, ULetter):
        return b"UL" + _uint(key.s)
    if isinstance(key, UEps):
        return b"UE"
    if isinstance(key, PowA1):
        return b"A" + _uint(key.k)
    if isinstance(key, ShortKey):
        return b"S" + _uint(key.first) + _boundary(key.entry) + _uint(key.last)
    if isinstance(key, EncodedKey):
        return (
            b"K"
            + _uint(key.s_first)
            + _boundary(key.left)
            + _core(key.core)
            + _boundary(key.right)
            + _uint(key.s_last)
        )
    raise TypeError(f"not a key: {key!r}")


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def byte(self) -> int:
        if self.pos >= len(self.data):
            raise ValueError("truncated key")
        b = self.data[self.pos]
        self.pos += 1
        return b

    def uint(self) -> int:
        n = self.byte()
        if n == 255:
            n = self.uint()
        body = self.data[self.pos:self.pos + n]
        if len(body) != n:
            raise ValueError("truncated key")
        self.pos += n
        return int.from_bytes(body, "big")

    def boundary(self):
        tag = self.byte()
        if tag == ord("N"):
            return None
        if tag == ord("P"):
            return Point(self.uint())
        if tag == ord("I"):
            return Interval(self.uint() - 1)
        raise ValueError("bad boundary tag")

    def core(self) -> tuple:
        return tuple(self.uint() for _ in range(self.uint()))


def deserialize_key(data: bytes, rank: int):
    """Inverse of ``serialize_key``; the rank fills the field bytes do not carry."""
    rd = _Reader(data)
    tag = chr(rd.byte())
    if tag == "V":
        s_first, s_last = rd.uint(), rd.uint()
        core = rd.core()
        key = Rect(s_first, core, rd.uint(), rd.uint(), s_last, rank)
    elif tag == "U":
        sub = chr(rd.byte())
        if sub == "B":
            key = UBracket(rd.uint(), rd.uint(), rd.uint())
        elif sub == "L":
            key = ULetter(rd.uint())
        elif sub == "E":
            key = UEps()
        else:
            raise ValueError("bad U key tag")
    elif tag == "A":
        key = PowA1(rd.uint())
    elif tag == "S":
        key = ShortKey(rd.uint(), rd.boundary(), rd.uint())
    elif tag == "K":
        key = EncodedKey(rd.uint(), rd.boundary(), rd.core(), rd.boundary(), rd.uint(), rank)
    else:
        raise ValueError(f"unknown key tag {tag!r}")
    if rd.pos != len(data):
        raise ValueError("trailing bytes after key")
    return key


# --- rendering -------------------------------------------------------------------------


def format_compact(w) -> str:
    """Word with a1-runs collapsed, e.g. ``2 1^5 3``."""
    if not w:
        return "e"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = j - i
        if w[i] == A1 and n > 1:
            parts.append(f"1^{n}")
        else:
            parts.extend([str(w[i])] * n)
        i = j
    return " ".join(parts)


def describe_key(key) -> str:
    if isinstance(key, UEps):
        return "rho(e)"
    if isinstance(key, ULetter):
        return f"rho({key.s})"
    if isinstance(key, UBracket):
        return f"rho({format_compact(_point_word(key.left, key.k, key.right))})"
    if isinstance(key, Rect):
        v = format_compact(core_word(key.core, key.rank))
        return f"sigma[K={key.K},M={key.M}]({key.s_first} | {v} | {key.s_last})"
    if isinstance(key, PowA1):
        return f"rho({format_compact((A1,) * key.k)})"
    return repr(key)
