"""Random instances, equivalence-preserving/breaking perturbations, and the scaling benchmark."""

from __future__ import annotations

import csv
import gc
import io
import math
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Optional

from cfequiv.fastcheck import check_equivalent
from cfequiv.instance import Instance, serialize_instance
from cfequiv.oracle import oracle_equivalent
from cfequiv.words import (
    A1,
    CountingFunction,
    MonoidSpec,
    Term,
    apply_left_extension,
    apply_right_extension,
    left_relation,
    right_relation,
)


@dataclass(frozen=True)
class GenParams:
    rank: int
    term_count: int
    max_word_len: int
    coef_bits: int
    seed: int
    # probability of drawing a1 before the uniform draw; > 0 yields longer a1-runs
    a1_bias: float = 0.0

    def __post_init__(self):
        if self.rank < 2 or self.term_count < 0 or self.max_word_len < 0 or self.coef_bits < 1:
            raise ValueError(f"invalid generator parameters {self}")


def random_word(rng: random.Random, rank: int, max_len: int, a1_bias: float = 0.0) -> tuple:
    n = rng.randint(0, max_len)
    return tuple(A1 if rng.random() < a1_bias else rng.randint(1, rank) for _ in range(n))


def random_coef(rng: random.Random, bits: int) -> int:
    """Nonzero, magnitude below 2**bits, uniform sign."""
    x = rng.randint(1, (1 << bits) - 1) if bits > 1 else 1
    return x if rng.random() < 0.5 else -x


def gen_random(p: GenParams) -> CountingFunction:
    rng = random.Random(p.seed)
    terms = tuple(
        Term(random_coef(rng, p.coef_bits), random_word(rng, p.rank, p.max_word_len, p.a1_bias))
        for _ in range(p.term_count)
    )
    return CountingFunction(MonoidSpec(p.rank), terms)


def perturb_equivalent(
    f: CountingFunction, seed: int, count: int, max_len: Optional[int] = None, coef_bits: int = 8
) -> CountingFunction:
    """``f`` plus ``count`` random nonzero multiples of extension relations l_w / r_w."""
    if count == 0:
        return f
    rng = random.Random(seed)
    spec = f.spec
    if max_len is None:
        max_len = max((len(t.word) for t in f.terms), default=3)
    terms = list(f.terms)
    for _ in range(count):
        w = random_word(rng, spec.rank, max_len)
        rel = left_relation(w, spec) if rng.random() < 0.5 else right_relation(w, spec)
        c = random_coef(rng, coef_bits)
        terms.extend(Term(c * t.coef, t.word) for t in rel.terms)
    return CountingFunction(spec, tuple(terms))


def random_basis_word(rng: random.Random, rank: int, max_len: int) -> tuple:
    """ε or a word whose first and last letters differ from a1."""
    n = rng.randint(0, max(max_len, 1))
    if n == 0:
        return ()
    if n == 1:
        return (rng.randint(2, rank),)
    mid = tuple(rng.randint(1, rank) for _ in range(n - 2))
    return (rng.randint(2, rank),) + mid + (rng.randint(2, rank),)


def perturb_inequivalent(f: CountingFunction, seed: int, max_len: int = 6, coef_bits: int = 8) -> CountingFunction:
    """``f + c*rho_b`` for a random basis word b and c != 0: shifts one basis coordinate."""
    rng = random.Random(seed)
    b = random_basis_word(rng, f.spec.rank, max_len)
    c = random_coef(rng, coef_bits)
    return CountingFunction(f.spec, f.terms + (Term(c, b),))


def rewrite_randomly(f: CountingFunction, seed: int, fraction: float = 0.5) -> CountingFunction:
    """Replace a fraction of terms by one left/right extension step each (same class), then shuffle."""
    rng = random.Random(seed)
    out: list = []
    for t in f.terms:
        if t.word and rng.random() < fraction:
            step = apply_left_extension if rng.random() < 0.5 else apply_right_extension
            out.extend(step(t, f.spec))
        else:
            out.append(t)
    rng.shuffle(out)
    return CountingFunction(f.spec, tuple(out))


# --- benchmark -------------------------------------------------------------------------


def equivalent_pair_of_size(target: int, rank: int, seed: int) -> Instance:
    """An equivalent (f, g) whose serialized instance is close to ``target`` bytes.

    Besides many short terms, f carries two terms with a1-affixes of length
    ~target/400, whose naive expansion would be quadratic in that length.
    """
    spec = MonoidSpec(rank)
    heavy_rng = random.Random(seed + 7)
    run = max(1, target // 400)
    heavy = []
    for _ in range(2):
        v = random_basis_word(heavy_rng, rank, 6) or (2,)
        heavy.append(Term(random_coef(heavy_rng, 16), (A1,) * run + v + (A1,) * run))
    heavy_g = [u for t in heavy for u in apply_left_extension(t, spec)]

    def build(n):
        rng = random.Random(seed)
        light = CountingFunction(
            spec, tuple(Term(random_coef(rng, 16), random_word(rng, rank, 24, a1_bias=0.5)) for _ in range(n))
        )
        g = rewrite_randomly(light, seed + 1)
        g = perturb_equivalent(g, seed + 2, n // 8, max_len=12, coef_bits=16)
        return Instance(spec, CountingFunction(spec, light.terms + tuple(heavy)), CountingFunction(spec, g.terms + tuple(heavy_g)))

    # size is affine in n up to sampling noise; a few secant steps land within a few percent
    offset = len(serialize_instance(build(0)))
    n = 128
    for _ in range(4):
        inst = build(n)
        size = len(serialize_instance(inst))
        if size <= offset or abs(size - target) <= 0.02 * target:
            break
        n = max(1, round(n * (target - offset) / (size - offset)))
    return inst


@dataclass
class BenchRow:
    size_bytes: int
    fast_ns: int
    oracle_ns: Optional[int]
    equivalent: bool


@dataclass
class BenchReport:
    rows: list = field(default_factory=list)

    @property
    def ratios(self) -> list:
        return [b.fast_ns / a.fast_ns for a, b in zip(self.rows, self.rows[1:])]

    @property
    def slope(self) -> float:
        """Least-squares slope of log(runtime) against log(size)."""
        xs = [math.log(r.size_bytes) for r in self.rows]
        ys = [math.log(r.fast_ns) for r in self.rows]
        return statistics.linear_regression(xs, ys).slope

    def table(self) -> str:
        lines = [f"{'size_bytes':>12} {'fast_ms':>10} {'oracle_ms':>10} {'ratio':>7}  verdict"]
        ratios = [None] + self.ratios
        for r, q in zip(self.rows, ratios):
            oracle = "-" if r.oracle_ns is None else f"{r.oracle_ns / 1e6:.2f}"
            ratio = "-" if q is None else f"{q:.2f}"
            verdict = "EQUIVALENT" if r.equivalent else "NOT_EQUIVALENT"
            lines.append(f"{r.size_bytes:>12} {r.fast_ns / 1e6:>10.2f} {oracle:>10} {ratio:>7}  {verdict}")
        if len(self.rows) >= 2:
            lines.append(f"log-log slope: {self.slope:.3f}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["size_bytes", "fast_ns", "oracle_ns", "ratio"])
        ratios = [None] + self.ratios
        for r, q in zip(self.rows, ratios):
            w.writerow([r.size_bytes, r.fast_ns, "" if r.oracle_ns is None else r.oracle_ns, "" if q is None else f"{q:.4f}"])
        return buf.getvalue()


def _median_ns(fn, reps: int) -> tuple[int, object]:
    times = []
    result = None
    enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for _ in range(reps):
            t0 = time.perf_counter_ns()
            result = fn()
            times.append(time.perf_counter_ns() - t0)
    finally:
        if enabled:
            gc.enable()
    return int(statistics.median(times)), result


def bench_scaling(
    sizes,
    seed: int = 0,
    rank: int = 2,
    reps: int = 5,
    oracle_cutoff: int = 10**4,
    backend: str = "hash",
) -> BenchReport:
    """Time ``check_equivalent`` (parse excluded) on equivalent pairs of the given byte sizes."""
    sizes = list(sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    report = BenchReport()
    for i, target in enumerate(sizes):
        inst = equivalent_pair_of_size(target, rank, seed + 1000 * i)
        size = len(serialize_instance(inst))
        fast_ns, verdict = _median_ns(lambda: check_equivalent(inst.f, inst.g, backend), reps)
        oracle_ns = None
        if size <= oracle_cutoff:
            oracle_ns, _ = _median_ns(lambda: oracle_equivalent(inst.f, inst.g), 1)
        if report.rows and size <= report.rows[-1].size_bytes:
            raise ValueError(f"generated size {size} not above previous row; spread the targets further")
        report.rows.append(BenchRow(size, fast_ns, oracle_ns, verdict.equivalent))
    return report
