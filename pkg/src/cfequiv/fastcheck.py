"""Linear-time equivalence check.

Pipeline for D = f - g:

1. every term x*rho_w with w = a1^k v a1^m (v with non-a1 ends) is replaced by
   rho_v minus the left and right one-sided sums plus the two-sided sums, all
   kept in run-length encoded form (``decompose_term``); pure a1-powers stay as is;
2. encoded terms with at most one integer entry span the U part, the rest the V part
   (``classify``);
3. U terms are rewritten in the basis {rho_eps, rho_s, rho_{s a1^k s'} : s, s' != a2}
   (``rewrite_U``), V terms into (0,0)-anchored rectangle sums (``rectangleize``);
4. both streams are reduced; D is bounded iff both reduce to nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from cfequiv import normalize
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
    deserialize_key,
    describe_key,
    encode_word,
    encoded_length,
    expand_key,
    make_core,
    run_lengths,
    serialize_key,
)
from cfequiv.words import A1, A2, CountingFunction, MonoidSpec, difference, input_size


@dataclass(frozen=True)
class Witness:
    element: object  # UEps / ULetter / UBracket / Rect
    coefficient: int

    def describe(self) -> str:
        return describe_key(self.element)


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    witness: Optional[Witness] = None

    def __bool__(self):
        return self.equivalent


def split_a1_affix(w) -> tuple[int, tuple, int]:
    """Maximal ``(k, v, m)`` with ``w = a1^k v a1^m`` and v's ends != a1."""
    w = tuple(w)
    n = len(w)
    k = 0
    while k < n and w[k] == A1:
        k += 1
    if k == n:
        raise ValueError("empty word or pure a1-power has no a1 affix split")
    m = 0
    while w[n - 1 - m] == A1:
        m += 1
    return k, w[k:n - m], m


def decompose_term(x: int, w, spec: MonoidSpec) -> list[EncodedTerm]:
    """Encoded terms of ``x*rho_w`` for ``w = a1^k v a1^m``.

    When v is a single letter the one-sided sums are emitted summed over their
    free letter (``ANY``), because only the full sum telescopes to a
    constant-size expression in the U basis.
    """
    k, v, m = split_a1_affix(w)
    rank = spec.rank
    out = [EncodedTerm(encode_word(v, rank), x)]
    if k == 0 and m == 0:
        return out
    delims, gaps = run_lengths(v)
    others = spec.non_a1
    left = Interval(k - 1)
    right = Interval(m - 1)
    if not gaps:
        b = delims[0]
        if k:
            out.append(EncodedTerm(ShortKey(ANY, left, b), -x))
        if m:
            out.append(EncodedTerm(ShortKey(b, right, ANY), -x))
    else:
        if k:
            # (s, [0,k-1], d0, g0, ..., d_last): last integer entry is the final gap
            core = make_core(delims[:-1], gaps[:-1], rank)
            last = Point(gaps[-1])
            out.extend(EncodedTerm(EncodedKey(s, left, core, last, delims[-1], rank), -x) for s in others)
        if m:
            core = make_core(delims[1:], gaps[1:], rank)
            first = Point(gaps[0])
            out.extend(EncodedTerm(EncodedKey(delims[0], first, core, right, s, rank), -x) for s in others)
    if k and m:
        core = make_core(delims, gaps, rank)
        out.extend(
            EncodedTerm(EncodedKey(s1, left, core, right, s2, rank), x) for s1 in others for s2 in others
        )
    return out


def encode_terms(d: CountingFunction) -> list[EncodedTerm]:
    """Route every term of ``d`` to its encoded form; zero coefficients are dropped."""
    out: list = []
    rank = d.spec.rank
    for x, w in d.terms:
        if not x:
            continue
        if all(c == A1 for c in w):
            out.append(EncodedTerm(PowA1(len(w)), x))
        else:
            out.extend(decompose_term(x, w, d.spec))
    return out


def classify(t) -> str:
    return "U" if encoded_length(t) <= 1 else "V"


# --- U part ---------------------------------------------------------------------------


def _canon(left, k: int, right):
    """B_U' key of the word ``left a1^k right``; sides are None (absent) or letters != a2."""
    if left == A1:
        left, k = None, k + 1
    if right == A1:
        right, k = None, k + 1
    if left is None and right is None:
        if k == 0:
            return UEps()
        if k == 1:
            return ULetter(A1)
        return UBracket(A1, k - 2, A1)
    if left is None:
        return ULetter(right) if k == 0 else UBracket(A1, k - 1, right)
    if right is None:
        return ULetter(left) if k == 0 else UBracket(left, k - 1, A1)
    return UBracket(left, k, right)


def _side(s, letters):
    # an a2 boundary is traded via an extension relation for "no letter" minus every other letter
    if s == A2:
        return [(None, 1)] + [(t, -1) for t in letters if t != A2]
    return [(s, 1)]


def _word_in_U_basis(left, k: int, right, x: int, letters, acc: dict) -> None:
    """Add x * rho_{left a1^k right} to ``acc`` in B_U' coordinates (sides None or != a1)."""
    for ls, lc in _side(left, letters):
        for rs, rc in _side(right, letters):
            key = _canon(ls, k, rs)
            acc[key] = acc.get(key, 0) + lc * rc * x


def rewrite_U(t: EncodedTerm, spec: MonoidSpec) -> list[tuple]:
    """``[(B_U' key, coef)]`` equal in class to ``t``; at most r^2 keys."""
    key, x = t.key, t.coef
    letters = spec.letters
    acc: dict = {}
    if isinstance(key, PowA1):
        acc[_canon(None, key.k, None)] = x
    elif isinstance(key, ShortKey):
        e = key.entry
        if e is None:
            _word_in_U_basis(key.first, 0, None, x, letters, acc)
        elif isinstance(e, Point):
            _word_in_U_basis(key.first, e.k, key.last, x, letters, acc)
        else:
            if e.hi < 0:
                return []
            first, last = key.first, key.last
            if spec.rank == 2 and ANY not in (first, last):
                # a single a2 choice is the full sum over non-a1 letters
                first = ANY
            # sum_{i<=hi} sum_s rho_{s a1^i b} = rho_b - rho_{a1^(hi+1) b}; mirror image on the right
            if first == ANY and last != ANY:
                _word_in_U_basis(last, 0, None, x, letters, acc)
                _word_in_U_basis(None, e.hi + 1, last, -x, letters, acc)
            elif last == ANY and first != ANY:
                _word_in_U_basis(first, 0, None, x, letters, acc)
                _word_in_U_basis(first, e.hi + 1, None, -x, letters, acc)
            else:
                raise ValueError(f"one-sided sum {key!r} must be summed over exactly one side")
    else:
        raise ValueError(f"{key!r} does not lie in U")
    return [(k, c) for k, c in acc.items() if c]


# --- V part ---------------------------------------------------------------------------


def rectangleize(t: EncodedTerm) -> list[tuple]:
    """Inclusion-exclusion of a V term into ``[(Rect, coef)]`` with positive multiplicities."""
    key, x = t.key, t.coef
    if not isinstance(key, EncodedKey):
        raise ValueError(f"{key!r} does not lie in V")

    def spans(b):
        # (multiplicity, sign) pairs whose signed sum covers exactly this boundary
        if isinstance(b, Interval):
            return ((b.hi + 1, 1),)
        return ((b.k + 1, 1), (b.k, -1))

    out = []
    for K, sk in spans(key.left):
        if K == 0:
            continue
        for M, sm in spans(key.right):
            if M == 0:
                continue
            out.append((Rect(key.s_first, key.core, K, M, key.s_last, key.rank), sk * sm * x))
    return out


# --- driver ---------------------------------------------------------------------------


@dataclass
class Reduction:
    """The reduced U and V coordinates of a function, keyed by canonical bytes."""

    rank: int
    u: dict
    v: dict
    keyed_terms: int = 0
    keyed_bytes: int = 0

    def elements(self) -> list[tuple]:
        """``[(basis element, coef)]``, U part first, each in byte order."""
        return [(deserialize_key(k, self.rank), c) for part in (self.u, self.v) for k, c in part.items()]

    @property
    def trivial(self) -> bool:
        return not self.u and not self.v


def keyed_streams(d: CountingFunction) -> tuple[list, list]:
    """The (bytes key, coef) streams fed to the reduction for the U and V parts."""
    spec = d.spec
    u_stream: list = []
    v_stream: list = []
    for t in encode_terms(d):
        if classify(t) == "U":
            u_stream.extend((serialize_key(k), c) for k, c in rewrite_U(t, spec))
        else:
            v_stream.extend((serialize_key(k), c) for k, c in rectangleize(t))
    return u_stream, v_stream


def reduce_function(d: CountingFunction, backend: str = "hash") -> Reduction:
    u_stream, v_stream = keyed_streams(d)
    n_bytes = sum(len(k) + (abs(c).bit_length() + 7) // 8 + 1 for k, c in u_stream) + sum(
        len(k) + (abs(c).bit_length() + 7) // 8 + 1 for k, c in v_stream
    )
    return Reduction(
        d.spec.rank,
        normalize.reduce(u_stream, backend),
        normalize.reduce(v_stream, backend),
        len(u_stream) + len(v_stream),
        n_bytes,
    )


def check_equivalent(f: CountingFunction, g: CountingFunction, backend: str = "hash") -> Verdict:
    d = difference(f, g)
    if not d.terms:
        return Verdict(True)
    u_stream, v_stream = keyed_streams(d)
    for stream in (u_stream, v_stream):
        ok, wit = normalize.is_trivial(stream, backend)
        if not ok:
            key, coef = wit
            return Verdict(False, Witness(deserialize_key(key, d.spec.rank), coef))
    return Verdict(True)


def element_terms(key, rank: int) -> list[tuple]:
    """Elementary (coef, word) expansion of a basis element (for printing and tests)."""
    return expand_key(key, rank)


__all__ = [
    "Reduction",
    "Verdict",
    "Witness",
    "check_equivalent",
    "classify",
    "decompose_term",
    "element_terms",
    "encode_terms",
    "input_size",
    "keyed_streams",
    "rectangleize",
    "reduce_function",
    "rewrite_U",
    "split_a1_affix",
]
