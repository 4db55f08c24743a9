"""Group identical byte keys and sum their coefficients.

Two interchangeable backends:

* ``"hash"``: a dict; expected linear time. Default.
* ``"radix"``: MSD radix sort over key bytes; deterministic and linear in the
  total key length, with no reliance on hashing.

Both return the surviving keys in lexicographic byte order.
"""

from __future__ import annotations

from typing import Iterable, Optional

BACKENDS = ("hash", "radix")

# below this bucket size the radix sort hands off to a comparison sort
_SMALL = 32


def reduce(terms: Iterable[tuple], backend: str = "hash") -> dict:
    """``{key: summed coef}`` with zero sums removed, keys in byte order."""
    if backend == "hash":
        acc: dict = {}
        for key, x in terms:
            acc[key] = acc.get(key, 0) + x
        return {k: acc[k] for k in sorted(k for k, x in acc.items() if x)}
    if backend == "radix":
        return _reduce_radix(list(terms))
    raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def is_trivial(terms: Iterable[tuple], backend: str = "hash") -> tuple[bool, Optional[tuple]]:
    """(True, None) if everything cancels, else (False, (smallest surviving key, its coef))."""
    reduced = reduce(terms, backend)
    if not reduced:
        return True, None
    key = next(iter(reduced))
    return False, (key, reduced[key])


def radix_sort_keys(keys: list) -> list:
    """Indices of ``keys`` in lexicographic byte order (stable)."""
    order: list = []
    # explicit stack of (index list, depth); processed in lexicographic order
    stack = [(list(range(len(keys))), 0)]
    while stack:
        idx, depth = stack.pop()
        if len(idx) <= _SMALL:
            order.extend(sorted(idx, key=lambda i: keys[i][depth:]))
            continue
        done = []
        buckets: dict = {}
        for i in idx:
            k = keys[i]
            if len(k) <= depth:
                done.append(i)
            else:
                buckets.setdefault(k[depth], []).append(i)
        order.extend(done)
        # push in reverse so the smallest byte is popped first
        for b in sorted(buckets, reverse=True):
            stack.append((buckets[b], depth + 1))
    return order


def _reduce_radix(terms: list) -> dict:
    keys = [k for k, _ in terms]
    out: dict = {}
    prev = None
    total = 0
    for i in radix_sort_keys(keys):
        k, x = terms[i]
        if k != prev:
            if prev is not None and total:
                out[prev] = total
            prev, total = k, 0
        total += x
    if prev is not None and total:
        out[prev] = total
    return out
