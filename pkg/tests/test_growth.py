"""Growth functions: monomial spans, ranks over Q[d], degree detection."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confal import (
    DOp,
    DifferentialAlgebra,
    Poly,
    PolyRing,
    ResourceBound,
    ScaledDdx,
    coeff_growth_check,
    cur_dual_numbers,
    cur_matrix,
    detect_degree,
    enumerate_span,
    growth_table,
    module_rank,
    poly_zero,
    weyl_algebra,
)
from confal.growth import difference_table, generator_order_bound, monomial_cap

WEYL = weyl_algebra()
CUR2 = cur_matrix(2)


# -- frozen growth values --------------------------------------------------------------------


def test_weyl_growth_is_linear():
    rep = growth_table(WEYL, 8)
    assert rep.gamma == [2, 3, 4, 5, 6, 7, 8, 9]
    assert rep.degree == 1
    assert rep.order_bound == 1


def test_cur2_growth_is_constant():
    rep = growth_table(CUR2, 6)
    assert rep.gamma == [4, 4, 4, 4, 4, 4]
    assert rep.degree == 0
    assert rep.order_bound == 0


def test_dual_numbers_growth():
    rep = growth_table(cur_dual_numbers(), 4)
    assert rep.gamma == [2, 2, 2, 2]
    assert rep.degree == 0


def test_gamma_nondecreasing_invariant():
    for alg in (WEYL, CUR2, cur_dual_numbers(), poly_zero()):
        rep = growth_table(alg, 5)
        diffs = difference_table(rep.gamma, 1)[1]
        assert all(d >= 0 for d in diffs), (alg.name, rep.gamma)


def test_empty_generator_set():
    base = PolyRing("x")
    empty = DifferentialAlgebra(base, ScaledDdx(base), {}, name="empty")
    assert growth_table(empty, 3).gamma == [0, 0, 0]


# -- invariance properties ---------------------------------------------------------------------


def test_degree_invariant_under_redundant_generator():
    # add M = x^2, already reachable as L (0) L: detected degree is
    # unchanged and gamma'(r) <= gamma(2 r).
    base = PolyRing("x")
    fat = DifferentialAlgebra(
        base,
        ScaledDdx(base),
        {"e": base.one(), "L": Poly.variable("x"), "M": Poly.monomial(2)},
        name="weyl+",
    )
    slim_rep = growth_table(WEYL, 8)
    fat_rep = growth_table(fat, 4)
    assert fat_rep.degree == slim_rep.degree == 1
    for r in range(1, 5):
        assert fat_rep.gamma[r - 1] <= slim_rep.gamma[2 * r - 1]


def test_subalgebra_growth_monotone():
    base = PolyRing("x")
    sub = DifferentialAlgebra(base, ScaledDdx(base), {"e": base.one()}, name="sub")
    sub_rep = growth_table(sub, 6)
    full_rep = growth_table(WEYL, 6)
    for a, b in zip(sub_rep.gamma, full_rep.gamma):
        assert a <= b


def test_span_entries_respect_order_bound():
    span = enumerate_span(WEYL, 4)
    assert span.order_bound == generator_order_bound(WEYL) == 1
    for entry in span.entries:
        assert not WEYL.is_zero(entry.elem)
        assert all(n <= span.order_bound for n in entry.orders)
        assert entry.length == len(entry.word)


def test_over_order_monomials_vanish():
    # orders above the pairwise locality bound evaluate to zero
    rng = random.Random(7)
    gens = [g for _, g in WEYL.generator_items()]
    bound = generator_order_bound(WEYL)
    for _ in range(25):
        u, v = rng.choice(gens), rng.choice(gens)
        cur = WEYL.nth(u, v, rng.randint(bound + 1, bound + 3))
        assert WEYL.is_zero(cur)


# -- rank computation ---------------------------------------------------------------------------


def test_module_rank_values():
    one, d = DOp.one(), DOp.d()
    assert module_rank([]) == 0
    assert module_rank([{0: one}]) == 1
    # d * e is a Q[d]-multiple of e: rank stays 1
    assert module_rank([{0: one}, {0: d}]) == 1
    assert module_rank([{0: one}, {1: one}, {0: one, 1: one}]) == 2
    # d-scaled second coordinate is independent of the plain first
    assert module_rank([{0: one, 1: d}, {0: one, 1: one}]) == 2


@settings(max_examples=20, deadline=None)
@given(st.randoms(use_true_random=False))
def test_module_rank_order_independent(rnd):
    vectors = [
        {0: DOp.one()},
        {0: DOp.d(), 1: DOp.one()},
        {1: DOp.d(2)},
        {0: DOp.one() + DOp.d(), 1: DOp.one() + DOp.d(2)},
        {2: DOp.const(3)},
    ]
    baseline = module_rank(vectors)
    shuffled = list(vectors)
    rnd.shuffle(shuffled)
    assert module_rank(shuffled) == baseline


# -- degree detection --------------------------------------------------------------------------


def test_detect_degree_classes():
    assert detect_degree([2, 3, 4, 5, 6, 7]) == 1
    assert detect_degree([4, 4, 4, 4]) == 0
    assert detect_degree([1, 4, 9, 16, 25, 36, 49]) == 2
    assert detect_degree([2, 4, 8, 16, 32, 64]) == "exponential"
    assert detect_degree([1, 2]) == "inconclusive"
    assert detect_degree([5, 1, 5, 1, 5, 1]) == "inconclusive"


def test_difference_table():
    assert difference_table([1, 4, 9, 16], 2) == [[1, 4, 9, 16], [3, 5, 7], [2, 2]]


# -- resource bounds --------------------------------------------------------------------------


def test_resource_bound_and_env_override(monkeypatch):
    with pytest.raises(ResourceBound):
        enumerate_span(WEYL, 6, cap=10)
    monkeypatch.setenv("CONFAL_MAX_MONOMIALS", "10")
    assert monomial_cap() == 10
    with pytest.raises(ResourceBound):
        growth_table(WEYL, 6)
    monkeypatch.setenv("CONFAL_MAX_MONOMIALS", "not-a-number")
    with pytest.raises(ValueError):
        monomial_cap()


# -- coefficient growth -----------------------------------------------------------------------


def test_coeff_growth_bound_holds_on_weyl():
    rep = coeff_growth_check(WEYL, (-1, 1), 4)
    assert rep.coeff_dims is not None and len(rep.coeff_dims) == 4
    assert all(rep.bound_ok)
    # dims strictly increase for the Weyl instance
    assert all(a < b for a, b in zip(rep.coeff_dims, rep.coeff_dims[1:]))


def test_coeff_growth_window_must_contain_zero():
    with pytest.raises(ValueError):
        coeff_growth_check(WEYL, (1, 3), 3)


def test_csv_shape():
    rep = coeff_growth_check(CUR2, (-1, 1), 3)
    lines = rep.csv_text().strip().splitlines()
    assert lines[0] == "r,gamma,delta1,delta2,coeff_dim,bound_rhs,bound_ok"
    assert len(lines) == 4
    first = lines[1].split(",")
    assert first[0] == "1" and first[1] == "4"
