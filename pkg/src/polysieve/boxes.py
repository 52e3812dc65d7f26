"""Dyadic box iteration q ~ Q and representation-count statistics.

The box is the product of [Q, 2Q) over each of the L coordinates; iteration
order is lexicographic with the last coordinate fastest.  All aggregations
here are order-independent counts, so the box may be partitioned by leading
coordinate across workers and merged by addition.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import BudgetError
from .mvpoly import MvPoly

DEFAULT_BOX_BUDGET = 5_000_000
_PARALLEL_MIN = 4096


@dataclass(frozen=True)
class DyadicBox:
    Q: int
    ell: int

    def __post_init__(self):
        if self.Q < 1 or self.ell < 1:
            raise ValueError("Q and ell must be positive")

    @property
    def size(self) -> int:
        return self.Q ** self.ell

    def __iter__(self):
        return product(range(self.Q, 2 * self.Q), repeat=self.ell)

    def leading_ranges(self, parts: int):
        """Split the leading coordinate into at most `parts` contiguous ranges."""
        qs = list(range(self.Q, 2 * self.Q))
        parts = max(1, min(parts, len(qs)))
        step = -(-len(qs) // parts)
        return [qs[i:i + step] for i in range(0, len(qs), step)]


def check_box_budget(Q: int, ell: int, budget: int = DEFAULT_BOX_BUDGET) -> None:
    size = Q ** ell
    if size > budget:
        raise BudgetError("box enumeration", size, budget)


def _count_chunk(args) -> Counter:
    poly, Q, ell, leading = args
    counts: Counter = Counter()
    for q1 in leading:
        for rest in product(range(Q, 2 * Q), repeat=ell - 1):
            counts[poly.evaluate((q1,) + rest)] += 1
    return counts


def value_counts(P: MvPoly, Q: int, workers: int = 1,
                 budget: int = DEFAULT_BOX_BUDGET) -> Counter:
    """Multiplicity of each value P(q) over the box, in one enumeration pass."""
    box = DyadicBox(Q, P.num_vars)
    check_box_budget(Q, P.num_vars, budget)
    if workers > 1 and box.size >= _PARALLEL_MIN:
        chunks = [(P, Q, P.num_vars, rng) for rng in box.leading_ranges(workers)]
        total: Counter = Counter()
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_count_chunk, chunks):
                total.update(part)
        return total
    return _count_chunk((P, Q, P.num_vars, list(range(Q, 2 * Q))))


def representation_count(P: MvPoly, m: int, Q: int) -> int:
    """Number of q ~ Q with P(q) = m, by exact enumeration."""
    return sum(1 for q in DyadicBox(Q, P.num_vars) if P.evaluate(q) == m)


def max_representation_count(P: MvPoly, Q: int, workers: int = 1,
                             budget: int = DEFAULT_BOX_BUDGET) -> int:
    """Largest multiplicity of a single value over the box (always >= 1)."""
    counts = value_counts(P, Q, workers=workers, budget=budget)
    return max(counts.values())


@dataclass(frozen=True)
class BadModuliReport:
    """Count of q ~ Q with |P(q)| <= eps * Q^k, plus the density comparator.

    comparator is eps^(1/k) * Q^ell; ratio = count / comparator (None when
    the comparator vanishes, i.e. eps = 0).
    """
    count: int
    box_size: int
    eps: float
    threshold: Fraction
    comparator: float
    ratio: float | None


def count_bad_moduli(P: MvPoly, Q: int, eps, workers: int = 1,
                     budget: int = DEFAULT_BOX_BUDGET) -> BadModuliReport:
    """Exact count of small-value tuples; the threshold is compared exactly."""
    if eps < 0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    k = P.total_degree()
    ell = P.num_vars
    threshold = Fraction(eps) * Q ** k
    counts = value_counts(P, Q, workers=workers, budget=budget)
    count = sum(mult for v, mult in counts.items() if abs(v) <= threshold)
    comparator = float(eps) ** (1.0 / k) * Q ** ell if eps > 0 else 0.0
    ratio = count / comparator if comparator > 0 else None
    return BadModuliReport(count=count, box_size=Q ** ell, eps=float(eps),
                           threshold=threshold, comparator=comparator, ratio=ratio)
