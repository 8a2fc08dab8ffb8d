"""Checks of the leading terms of P_m(T, k) for trees, and of the two
pairwise bounds on |A_v1 ∩ A_v2| used to show the intersections are
lower order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .counting import (
    DEFAULT_BUDGET,
    ConstraintParams,
    count_av_enumerated,
    count_pairwise_intersection,
    degree_chromatic_polynomial,
    pair_count_table,
)
from .graph import Graph, LabeledTree, certify_tree, prufer_encode
from .polyalg import BigPolynomial, assert_integral, coefficient

__all__ = [
    "BoundReport",
    "HypothesisViolation",
    "PredictedTail",
    "VerificationReport",
    "case1_bound_check",
    "case2_bound_check",
    "check_pair_bound",
    "predicted_tail",
    "sweep_pair_bounds",
    "verify_tree_theorem",
]


class HypothesisViolation(ValueError):
    pass


@dataclass(frozen=True)
class PredictedTail:
    n: int
    m: int
    top: int
    zeros: tuple[int, ...]
    second: int


def _check_range(n: int, m: int) -> None:
    if not 1 < m < n:
        raise HypothesisViolation(f"leading-term formula needs 1 < m < n, got m={m}, n={n}")


def predicted_tail(t: LabeledTree, m: int) -> PredictedTail:
    """Predicted top coefficients: ``k^n``, zeros down to ``k^(n-m+1)``,
    then ``-sum_v C(deg v, m)`` at ``k^(n-m)``."""
    t = certify_tree(t)
    n = t.n
    _check_range(n, m)
    second = -sum(math.comb(d, m) for d in t.degrees())
    return PredictedTail(n=n, m=m, top=1, zeros=tuple(range(n - 1, n - m, -1)), second=second)


def describe_tree(t: Graph, source: str | None = None) -> dict:
    desc = {"n": t.n}
    if source is not None:
        desc["source"] = source
    if t.n >= 2:
        desc["prufer"] = prufer_encode(t)
    else:
        desc["edges"] = [list(e) for e in t.edges]
    return desc


@dataclass
class VerificationReport:
    tree: dict
    m: int
    polynomial: BigPolynomial
    monic: bool
    zero_band: bool
    second_expected: int
    second_actual: int
    elapsed_ms: float | None = None
    checks: dict = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.checks = {
            "monic": self.monic,
            "zero_band": self.zero_band,
            "second_coefficient": self.second_expected == self.second_actual,
        }
        self.passed = all(self.checks.values())

    def to_dict(self, include_polynomial: bool = True) -> dict:
        out = {
            "tree": self.tree,
            "m": self.m,
            "pass": self.passed,
            "checks": dict(self.checks),
            "second_coeff_expected": str(self.second_expected),
            "second_coeff_actual": str(self.second_actual),
            "elapsed_ms": self.elapsed_ms,
        }
        if include_polynomial:
            out["coefficients"] = [str(c) for c in assert_integral(self.polynomial)]
        return out


def verify_tree_theorem(t: LabeledTree, m: int, source: str | None = None,
                        timed: bool = True) -> VerificationReport:
    """Compute P_m(t, k) with the tree DP and compare its top coefficients
    with :func:`predicted_tail`.  Coefficients below ``k^(n-m)`` are not
    checked."""
    t = certify_tree(t)
    tail = predicted_tail(t, m)
    start = time.perf_counter()
    p = degree_chromatic_polynomial(t, m, method="tree-dp")
    elapsed = (time.perf_counter() - start) * 1000.0
    n = t.n
    actual = coefficient(p, n - m)
    return VerificationReport(
        tree=describe_tree(t, source),
        m=m,
        polynomial=p,
        monic=p.degree == n and coefficient(p, n) == tail.top,
        zero_band=all(coefficient(p, j) == 0 for j in tail.zeros),
        second_expected=tail.second,
        second_actual=int(actual),
        elapsed_ms=round(elapsed, 3) if timed else None,
    )


@dataclass(frozen=True)
class BoundReport:
    case: str
    v1: int
    v2: int
    adjacent: bool
    m: int
    k: int
    a_v1: int
    measured: int
    bound: int | Fraction
    w_size: int | None = None
    strict_required: bool = False

    @property
    def slack(self) -> int | Fraction:
        return self.bound - self.measured

    @property
    def strict(self) -> bool:
        return self.measured < self.bound

    @property
    def passed(self) -> bool:
        if self.measured > self.bound:
            return False
        return self.strict or not self.strict_required

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "pair": [self.v1, self.v2],
            "adjacent": self.adjacent,
            "m": self.m,
            "k": self.k,
            "a_v1": str(self.a_v1),
            "measured": str(self.measured),
            "bound": str(self.bound),
            "slack": str(self.slack),
            "w_size": self.w_size,
            "strict": self.strict,
            "strict_required": self.strict_required,
            "pass": self.passed,
        }


def _bound_prelude(t, v1, v2, params):
    t = certify_tree(t)
    t.check_vertex(v1)
    t.check_vertex(v2)
    if v1 == v2:
        raise ValueError(f"vertices must be distinct, got {v1} twice")
    if params.k < 1:
        raise ValueError("bound checks need k >= 1")
    return t


def _ratio(num: int, den: int) -> int | Fraction:
    q, r = divmod(num, den)
    return q if r == 0 else Fraction(num, den)


def _case1(t, v1, v2, m, k, a1, both) -> BoundReport:
    bound = _ratio(a1 * (t.degree(v2) // m), k)
    return BoundReport("case1", v1, v2, False, m, k, a1, both, bound)


def _case2(t, v1, v2, m, k, a1, both) -> BoundReport:
    w = t.degree(v2) - 1
    bound = _ratio(a1 * 2**w, k)
    return BoundReport("case2", v1, v2, True, m, k, a1, both, bound,
                       w_size=w, strict_required=a1 > 0)


def case1_bound_check(t: LabeledTree, v1: int, v2: int, params: ConstraintParams,
                      budget: int | None = DEFAULT_BUDGET) -> BoundReport:
    """Non-adjacent pair: |A_v1 ∩ A_v2| <= (|A_v1| / k) * floor(d(v2) / m).

    Recoloring ``v2`` alone does not change membership in ``A_v1``, so
    ``A_v1`` splits into classes of ``k`` colorings, and in each class at most
    ``floor(d(v2)/m)`` colors of ``v2`` give it ``m`` friends.
    """
    t = _bound_prelude(t, v1, v2, params)
    if t.is_adjacent(v1, v2):
        raise ValueError(f"vertices {v1} and {v2} are adjacent; use case2_bound_check")
    a1 = count_av_enumerated(t, v1, params, budget).value
    both = count_pairwise_intersection(t, v1, v2, params, budget).value
    return _case1(t, v1, v2, params.m, params.k, a1, both)


def case2_bound_check(t: LabeledTree, v1: int, v2: int, params: ConstraintParams,
                      budget: int | None = DEFAULT_BUDGET) -> BoundReport:
    """Adjacent pair: |A_v1 ∩ A_v2| <= |A_v1| * 2**|W| / k, strictly when
    ``A_v1`` is non-empty.  ``W`` is the neighbourhood of ``v2`` minus ``v1``."""
    t = _bound_prelude(t, v1, v2, params)
    if not t.is_adjacent(v1, v2):
        raise ValueError(f"vertices {v1} and {v2} are not adjacent; use case1_bound_check")
    if params.m < 2:
        raise ValueError("the adjacent-pair bound needs m >= 2")
    a1 = count_av_enumerated(t, v1, params, budget).value
    both = count_pairwise_intersection(t, v1, v2, params, budget).value
    return _case2(t, v1, v2, params.m, params.k, a1, both)


def check_pair_bound(t: LabeledTree, v1: int, v2: int, params: ConstraintParams,
                     budget: int | None = DEFAULT_BUDGET) -> BoundReport:
    """Dispatch to the bound that applies to the pair."""
    t = certify_tree(t)
    if t.is_adjacent(v1, v2):
        return case2_bound_check(t, v1, v2, params, budget)
    return case1_bound_check(t, v1, v2, params, budget)


def sweep_pair_bounds(t: LabeledTree, params: ConstraintParams, ordered: bool = True,
                      budget: int | None = DEFAULT_BUDGET) -> list[BoundReport]:
    """Applicable bound for every pair of distinct vertices.

    Same reports as calling :func:`check_pair_bound` pair by pair, but the
    enumeration tables are fetched once.  With ``ordered=False`` only pairs
    ``v1 < v2`` are reported.
    """
    t = certify_tree(t)
    m, k = params.m, params.k
    if k < 1:
        raise ValueError("bound checks need k >= 1")
    if m < 2 and t.edges:
        raise ValueError("the adjacent-pair bound needs m >= 2")
    table = pair_count_table(t, params, budget)
    reports = []
    for v1 in range(t.n):
        a1 = int(table[v1, v1])
        row = table[v1].tolist()
        nbrs = t.adjacency[v1]
        for v2 in range(v1 + 1 if not ordered else 0, t.n):
            if v2 == v1:
                continue
            make = _case2 if v2 in nbrs else _case1
            reports.append(make(t, v1, v2, m, k, a1, row[v2]))
    return reports
