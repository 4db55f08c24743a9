"""Random instance families shared by the differential and acceptance tests."""

import random

from cfequiv.genbench import perturb_equivalent, perturb_inequivalent, random_coef, random_word, rewrite_randomly
from cfequiv.words import CountingFunction, MonoidSpec, Term


def random_function(rng, rank, max_terms, max_len, coef_bits, a1_bias=0.5):
    n = rng.randint(0, max_terms)
    return CountingFunction(
        MonoidSpec(rank),
        tuple(Term(random_coef(rng, coef_bits), random_word(rng, rank, max_len, a1_bias)) for _ in range(n)),
    )


def random_pair(rng, rank, max_terms=12, max_len=8, coef_bits=16):
    """One (f, g) drawn from a mix of independent, equivalent and nearly equivalent pairs.

    Both functions keep at most ``max_terms`` terms and words of at most ``max_len`` letters.
    """
    mode = rng.choice(("random", "equivalent", "equivalent", "near"))
    if mode == "random":
        return (
            random_function(rng, rank, max_terms, max_len, coef_bits),
            random_function(rng, rank, max_terms, max_len, coef_bits),
        )
    while True:
        f = random_function(rng, rank, max(1, max_terms // 3), max_len, coef_bits)
        g = rewrite_randomly(f, rng.randrange(1 << 30), fraction=rng.random())
        if rng.random() < 0.7:
            g = perturb_equivalent(g, rng.randrange(1 << 30), rng.randint(1, 2), max_len=max_len - 1, coef_bits=4)
        if mode == "near":
            g = perturb_inequivalent(g, rng.randrange(1 << 30), max_len=max_len)
        if len(g) <= max_terms:
            return f, g
