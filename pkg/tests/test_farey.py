from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import pairwise_min_spacing, quadratic_close_count
from polysieve.arith import euler_phi
from polysieve.errors import BudgetError
from polysieve.farey import (FareySystem, build_farey, close_points_comparator,
                             max_close_points, min_spacing)
from polysieve.mvpoly import parse_poly

P_SUM_SQ = parse_poly("x1^2+x2^2")


def make_system(pairs):
    pts = sorted(Fraction(a, b) for a, b in pairs)
    distinct = len(set(pts))
    return FareySystem(points=tuple(pts), Q=0, distinct_count=distinct,
                       total_count=len(pts), skipped_unit_moduli=0,
                       skipped_filtered=0, modulus_counts={})


def test_build_farey_q1():
    system = build_farey(P_SUM_SQ, 1)
    assert system.points == (Fraction(1, 2),)
    assert system.total_count == 1


def test_build_farey_q2():
    system = build_farey(P_SUM_SQ, 2)
    assert system.total_count == euler_phi(8) + 2 * euler_phi(13) + euler_phi(18) == 34
    filtered = build_farey(P_SUM_SQ, 2, min_modulus=9)
    assert filtered.total_count == 30
    assert filtered.skipped_filtered == 1
    assert filtered.skipped_unit_moduli == 0


def test_unit_moduli_skipped():
    # x1^2 - x2^2 vanishes on the diagonal and hits 1 at no box point of Q=2;
    # zero values must be skipped and counted
    system = build_farey(parse_poly("x1^2-x2^2"), 2)
    assert system.skipped_unit_moduli == 2  # (2,2) and (3,3)
    assert system.total_count == euler_phi(5) * 2


def test_min_spacing_examples():
    assert min_spacing(make_system([(1, 2), (1, 3)])) == Fraction(1, 6)
    assert min_spacing(make_system([(1, 8), (7, 8)])) == Fraction(1, 4)


def test_min_spacing_requires_two_distinct():
    with pytest.raises(ValueError):
        min_spacing(make_system([(1, 2), (1, 2)]))


def test_min_spacing_q2_matches_pairwise_oracle():
    system = build_farey(P_SUM_SQ, 2)
    assert min_spacing(system) == pairwise_min_spacing(system.distinct_values())


def test_max_close_points_examples():
    assert max_close_points(make_system([(1, 2)]), 64) == 1
    assert max_close_points(make_system([(1, 3), (2, 3)]), 1) == 2


def test_max_close_points_strict_tie_exclusion():
    # distance exactly 1/2N is excluded
    system = make_system([(0, 1), (1, 4)])
    assert max_close_points(system, 2) == 1
    assert max_close_points(system, 1) == 2


def test_multiplicity_counted():
    system = make_system([(1, 2), (1, 2), (1, 2), (1, 3)])
    assert max_close_points(system, 100) == 3


def test_sliding_window_matches_quadratic_oracle_on_systems():
    for poly, Q in ((P_SUM_SQ, 2), (P_SUM_SQ, 3), (parse_poly("x1^3+2*x2^3"), 2)):
        system = build_farey(poly, Q)
        k = poly.total_degree()
        for N in (Q ** k, 2 * Q ** k, Q ** (2 * k)):
            assert (max_close_points(system, N)
                    == quadratic_close_count(list(system.points), N))


franc = st.fractions(min_value=0, max_value=Fraction(99, 100)).map(
    lambda f: f.limit_denominator(40))


@given(st.lists(franc, min_size=1, max_size=40), st.integers(1, 64))
@settings(max_examples=120)
def test_sliding_window_matches_quadratic_oracle_random(vals, N):
    pts = tuple(sorted(vals))
    system = FareySystem(points=pts, Q=0, distinct_count=len(set(pts)),
                         total_count=len(pts), skipped_unit_moduli=0,
                         skipped_filtered=0, modulus_counts={})
    assert max_close_points(system, N) == quadratic_close_count(list(pts), N)


def test_wide_window_counts_max_multiplicity():
    system = build_farey(P_SUM_SQ, 2)
    delta = min_spacing(system)
    # once 1/(2N) <= min spacing, only copies of one value can be close
    N = int(1 / (2 * delta)) + 1
    assert Fraction(1, 2 * N) <= delta
    max_mult = max(
        sum(1 for p in system.points if p == v) for v in system.distinct_values())
    assert max_close_points(system, N) == max_mult


def test_all_pairs_at_least_min_spacing():
    system = build_farey(P_SUM_SQ, 2)
    delta = min_spacing(system)
    vals = system.distinct_values()
    for i, x in enumerate(vals):
        for y in vals[i + 1:]:
            d = abs(x - y)
            assert min(d, 1 - d) >= delta


def test_comparator_value():
    # k=2, ell=2, r=5: Q^(2 + 2/15) * N^(-1/15)
    assert close_points_comparator(2, 2, 2, 64) == pytest.approx(
        2 ** (2 + 2 / 15) * 64 ** (-1 / 15), rel=1e-12)


def test_point_budget():
    with pytest.raises(BudgetError):
        build_farey(P_SUM_SQ, 40, point_budget=1000)


def test_points_sorted_and_reduced():
    system = build_farey(P_SUM_SQ, 3)
    pts = list(system.points)
    assert pts == sorted(pts)
    for p in pts:
        assert 0 < p < 1
