"""Words over S_r = {1..r}, elementary counting functions and their linear combinations.

Letters are integer indices; ``A1 = 1`` is the distinguished letter that the
basis constructions treat specially. A word is a plain tuple of ints and the
empty tuple is the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from cfequiv.errors import RankMismatch

A1 = 1
A2 = 2

Word = tuple


@dataclass(frozen=True)
class MonoidSpec:
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 2:
            raise ValueError(f"rank must be an integer >= 2, got {self.rank!r}")

    @property
    def letters(self) -> range:
        return range(1, self.rank + 1)

    @property
    def non_a1(self) -> range:
        return range(2, self.rank + 1)

    def valid_word(self, w: Sequence[int]) -> bool:
        r = self.rank
        return all(isinstance(c, int) and 1 <= c <= r for c in w)

    def check_word(self, w: Sequence[int]) -> None:
        if not self.valid_word(w):
            raise ValueError(f"word {tuple(w)} is not over an alphabet of rank {self.rank}")


@dataclass(frozen=True)
class Term:
    coef: int
    word: Word

    def __iter__(self):
        # allows ``x, w = term``
        yield self.coef
        yield self.word


@dataclass(frozen=True)
class CountingFunction:
    """A formal sum of ``coef * rho_word`` terms; the input order carries no meaning."""

    spec: MonoidSpec
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(t if isinstance(t, Term) else Term(int(t[0]), tuple(t[1])) for t in self.terms)
        for t in terms:
            self.spec.check_word(t.word)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, rank: int, pairs: Iterable) -> "CountingFunction":
        """Build from ``(coef, word)`` pairs; words may be any int sequence."""
        return cls(MonoidSpec(rank), tuple(Term(int(x), tuple(w)) for x, w in pairs))

    @property
    def rank(self) -> int:
        return self.spec.rank

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "CountingFunction") -> "CountingFunction":
        _same_spec(self, other)
        return CountingFunction(self.spec, self.terms + other.terms)

    def __neg__(self) -> "CountingFunction":
        return CountingFunction(self.spec, tuple(Term(-t.coef, t.word) for t in self.terms))

    def __sub__(self, other: "CountingFunction") -> "CountingFunction":
        return difference(self, other)

    def scaled(self, c: int) -> "CountingFunction":
        return CountingFunction(self.spec, tuple(Term(c * t.coef, t.word) for t in self.terms))

    def combined(self) -> dict:
        """Coefficients summed per word, zeros dropped."""
        out: dict = {}
        for x, w in self.terms:
            out[w] = out.get(w, 0) + x
        return {w: x for w, x in out.items() if x}

    def __call__(self, w: Sequence[int]) -> int:
        return evaluate(self, w)


def _same_spec(f: CountingFunction, g: CountingFunction) -> None:
    if f.spec.rank != g.spec.rank:
        raise RankMismatch(f"rank mismatch: {f.spec.rank} vs {g.spec.rank}")


def count_occurrences(v: Sequence[int], w: Sequence[int]) -> int:
    """Number of possibly overlapping occurrences of ``v`` in ``w``; the empty word counts ``|w|``."""
    v = tuple(v)
    w = tuple(w)
    n = len(v)
    if n == 0:
        return len(w)
    return sum(1 for i in range(len(w) - n + 1) if w[i:i + n] == v)


def evaluate(f: CountingFunction, w: Sequence[int]) -> int:
    w = tuple(w)
    return sum(t.coef * count_occurrences(t.word, w) for t in f.terms)


def difference(f: CountingFunction, g: CountingFunction) -> CountingFunction:
    _same_spec(f, g)
    return CountingFunction(f.spec, f.terms + tuple(Term(-t.coef, t.word) for t in g.terms))


def left_relation(w: Sequence[int], spec: MonoidSpec) -> CountingFunction:
    """l_w = rho_w - sum_s rho_{sw}; bounded, equal to 1 exactly on words with prefix w."""
    w = tuple(w)
    return CountingFunction(spec, (Term(1, w),) + tuple(Term(-1, (s,) + w) for s in spec.letters))


def right_relation(w: Sequence[int], spec: MonoidSpec) -> CountingFunction:
    """r_w = rho_w - sum_s rho_{ws}; bounded, equal to 1 exactly on words with suffix w."""
    w = tuple(w)
    return CountingFunction(spec, (Term(1, w),) + tuple(Term(-1, w + (s,)) for s in spec.letters))


def apply_left_extension(t: Term, spec: MonoidSpec) -> list[Term]:
    """Replace ``x rho_{s1 w}`` by ``x rho_w - sum_{s != s1} x rho_{s w}``."""
    if not t.word:
        raise ValueError("cannot extend the empty word")
    first, rest = t.word[0], t.word[1:]
    return [Term(t.coef, rest)] + [Term(-t.coef, (s,) + rest) for s in spec.letters if s != first]


def apply_right_extension(t: Term, spec: MonoidSpec) -> list[Term]:
    """Replace ``x rho_{w s2}`` by ``x rho_w - sum_{s != s2} x rho_{w s}``."""
    if not t.word:
        raise ValueError("cannot extend the empty word")
    last, rest = t.word[-1], t.word[:-1]
    return [Term(t.coef, rest)] + [Term(-t.coef, rest + (s,)) for s in spec.letters if s != last]


def input_size(f: CountingFunction) -> int:
    """Sum over terms of word length + bit length of |coef| + 1."""
    return sum(len(t.word) + abs(t.coef).bit_length() + 1 for t in f.terms)


def in_basis_B(w: Sequence[int]) -> bool:
    """Empty, or first and last letters both different from a_1."""
    return len(w) == 0 or (w[0] != A1 and w[-1] != A1)
