"""Brute-force ground truth.

Rewrites every term into the basis B = {rho_w : w empty, or w_1 != a_1 and
w_fin != a_1} by repeatedly applying extension relations, with no encoding
tricks. Deliberately slow; the fast path is tested against it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from cfequiv.errors import BudgetExceeded
from cfequiv.words import A1, CountingFunction, MonoidSpec, Term, difference, in_basis_B

DEFAULT_BUDGET = 10**7


def to_basis_B(f: CountingFunction, budget: int = DEFAULT_BUDGET) -> dict:
    """Coordinates of the class of ``f`` in the basis B, as ``{word: nonzero coef}``."""
    letters = tuple(f.spec.letters)
    # pending[n] holds words of length n still to rewrite; rewrites never lengthen a word,
    # so draining from the longest length down lets duplicates merge before expansion
    pending: dict[int, dict] = {}
    result: dict = {}
    emitted = 0

    def push(w, x):
        bucket = pending.setdefault(len(w), {})
        bucket[w] = bucket.get(w, 0) + x

    for x, w in f.terms:
        if x:
            push(w, x)

    while pending:
        n = max(pending)
        bucket = pending[n]
        while bucket:
            w, x = bucket.popitem()
            if x == 0:
                continue
            if in_basis_B(w):
                result[w] = result.get(w, 0) + x
                continue
            emitted += len(letters)
            if emitted > budget:
                raise BudgetExceeded(f"basis rewriting exceeded {budget} intermediate terms")
            if w[0] == A1:
                rest = w[1:]
                push(rest, x)
                for s in letters:
                    if s != A1:
                        push((s,) + rest, -x)
            else:
                rest = w[:-1]
                push(rest, x)
                for s in letters:
                    if s != A1:
                        push(rest + (s,), -x)
        del pending[n]
    return {w: x for w, x in result.items() if x}


@dataclass(frozen=True)
class OracleVerdict:
    equivalent: bool
    witness: Optional[tuple] = None  # (basis word, coefficient)

    def __bool__(self):
        return self.equivalent


def oracle_equivalent(f: CountingFunction, g: CountingFunction, budget: int = DEFAULT_BUDGET) -> OracleVerdict:
    coords = to_basis_B(difference(f, g), budget)
    if not coords:
        return OracleVerdict(True)
    w = min(coords)
    return OracleVerdict(False, (w, coords[w]))


def all_words(spec: MonoidSpec, max_len: int):
    for n in range(max_len + 1):
        yield from itertools.product(spec.letters, repeat=n)


def _word_count(r: int, max_len: int) -> int:
    return sum(r**n for n in range(max_len + 1))


def exhaustive_bound_scan(f: CountingFunction, g: CountingFunction, max_len: int, cap: int = 10**7) -> int:
    """max |f(w) - g(w)| over all words with |w| <= max_len.

    Walks the word tree depth first; appending a letter adds the coefficients of
    every term word that is a suffix of the extended word (plus the rho_eps weight).
    """
    d = difference(f, g)
    r = d.spec.rank
    if _word_count(r, max_len) > cap:
        raise BudgetExceeded(f"{r}^{max_len} words exceeds the scan cap {cap}")
    weights = d.combined()
    eps_weight = weights.pop((), 0)
    longest = max((len(w) for w in weights), default=0)
    letters = tuple(d.spec.letters)

    best = 0
    word: list = []
    # stack of (value at current node, next letter index)
    stack = [[0, 0]]
    while stack:
        top = stack[-1]
        if len(word) == max_len or top[1] == r:
            stack.pop()
            if word:
                word.pop()
            continue
        c = letters[top[1]]
        top[1] += 1
        word.append(c)
        val = top[0] + eps_weight
        n = len(word)
        for k in range(1, min(longest, n) + 1):
            x = weights.get(tuple(word[n - k:]))
            if x:
                val += x
        if abs(val) > best:
            best = abs(val)
        stack.append([val, 0])
    return best


def expand_sigma(kind: str, v, k: int, m: int, s1: int, s2: int, spec: MonoidSpec) -> CountingFunction:
    """Literal term list of the left, right or two-sided sums over ``v``.

    left:  sum_{i<k} rho_{s1 a1^i v}
    right: sum_{j<m} rho_{v a1^j s2}
    both:  sum_{i<k, j<m} rho_{s1 a1^i v a1^j s2}
    """
    v = tuple(v)
    spec.check_word(v)
    if not v or v[0] == A1 or v[-1] == A1:
        raise ValueError("v must be non-empty with first and last letter != a1")
    if kind not in ("left", "right", "both"):
        raise ValueError(f"unknown sigma kind {kind!r}")
    if (kind in ("left", "both") and s1 in (None, A1)) or (kind in ("right", "both") and s2 in (None, A1)):
        raise ValueError("boundary letters must differ from a1")
    if k < 0 or m < 0:
        raise ValueError("sigma indices must be nonnegative")
    terms = []
    if kind == "left":
        terms = [Term(1, (s1,) + (A1,) * i + v) for i in range(k)]
    elif kind == "right":
        terms = [Term(1, v + (A1,) * j + (s2,)) for j in range(m)]
    else:
        terms = [Term(1, (s1,) + (A1,) * i + v + (A1,) * j + (s2,)) for i in range(k) for j in range(m)]
    return CountingFunction(spec, tuple(terms))
