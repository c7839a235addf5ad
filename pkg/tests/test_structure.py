"""Structure recovery: identities, peeling, recognition, transport, ideals."""

from fractions import Fraction

import pytest

from confal import (
    ClosureBoundExceeded,
    DOp,
    DifferentialAlgebra,
    MatPoly,
    MismatchWitness,
    NotNilpotent,
    NotUnital,
    Poly,
    PolyRing,
    ScaledDdx,
    ZeroDerivation,
    canonical_rep,
    coefficient_fit_degree,
    cur_dual_numbers,
    cur_matrix,
    cur_matrix_presented,
    delta_stable_closure,
    find_identity,
    matrix_findim,
    peel_components,
    poly_zero,
    recognition_roundtrip,
    recognize_unital,
    simplicity_probe,
    transport_identity,
    weyl_algebra,
)
from confal.structure import class_coords, iterated_derivation_check

WEYL = weyl_algebra()
CUR2 = cur_matrix(2)


# -- identity search ----------------------------------------------------------------------


def test_find_identity_weyl():
    e = find_identity(WEYL)
    assert WEYL.eq(e, WEYL.generator("e"))


def test_find_identity_not_unital():
    base = PolyRing("x")
    no_id = DifferentialAlgebra(
        base, ZeroDerivation(base), {"g": Poly.variable("x")}, name="xQ[x]"
    )
    with pytest.raises(NotUnital):
        find_identity(no_id)


# -- peeling ------------------------------------------------------------------------------


def test_peel_components_frozen():
    # G = L + d e peels to the layers [(1, -e), (0, L)]
    e, L = WEYL.generator("e"), WEYL.generator("L")
    G = WEYL.add(L, WEYL.derive_elem(e))
    comps = peel_components(WEYL, G, e)
    assert [n for n, _ in comps] == [1, 0]
    assert WEYL.eq(comps[0][1], WEYL.scale(e, -1))
    assert WEYL.eq(comps[1][1], L)


def test_peel_reconstructs():
    e, L = WEYL.generator("e"), WEYL.generator("L")
    f = WEYL.add(
        WEYL.apply_dop_power(L, 2), WEYL.scale(WEYL.derive_elem(e), Fraction(1, 3))
    )
    comps = peel_components(WEYL, f, e)
    rebuilt = WEYL.zero_elem()
    for n, c in comps:
        piece = WEYL.apply_dop_power(c, n)
        rebuilt = WEYL.add(rebuilt, WEYL.scale(piece, (-1) ** n))
    assert WEYL.eq(rebuilt, f)
    # layer indices strictly decrease (the peeling loop variant)
    orders = [n for n, _ in comps]
    assert orders == sorted(orders, reverse=True) and len(set(orders)) == len(orders)


def test_peeled_pieces_are_normalized():
    # every peeled layer g satisfies g (0) e = g, and products of layers
    # stay normalized: (g (0) h) (0) e = g (0) h
    e, L = WEYL.generator("e"), WEYL.generator("L")
    G = WEYL.add(L, WEYL.derive_elem(e))
    layers = [c for _, c in peel_components(WEYL, G, e)]
    for g in layers:
        assert WEYL.eq(WEYL.nth(g, e, 0), g)
        for h in layers:
            gh = WEYL.nth(g, h, 0)
            assert WEYL.eq(WEYL.nth(gh, e, 0), gh)


def test_peel_requires_identity():
    L = WEYL.generator("L")
    with pytest.raises(NotUnital):
        peel_components(WEYL, WEYL.generator("e"), L)


# -- cross-check helpers ---------------------------------------------------------------------


def test_coefficient_fit_degree():
    e, L = WEYL.generator("e"), WEYL.generator("L")
    assert coefficient_fit_degree(WEYL, e) == 0
    assert coefficient_fit_degree(WEYL, WEYL.derive_elem(e)) == 1
    two_layers = WEYL.add(L, WEYL.apply_dop_power(e, 2))
    assert coefficient_fit_degree(WEYL, two_layers) == 2
    assert two_layers.max_dop_degree() == 2


def test_iterated_derivation_identity():
    assert iterated_derivation_check(WEYL, WEYL.generator("e")) == []
    assert iterated_derivation_check(CUR2, CUR2.add(
        CUR2.generator("u11"), CUR2.generator("u22"))) == []


def test_canonical_rep_and_class():
    e, L = WEYL.generator("e"), WEYL.generator("L")
    u = WEYL.add(L, WEYL.derive_elem(e))  # d-part must drop out of the class
    c = canonical_rep(WEYL, u)
    assert WEYL.eq(c, L)
    assert class_coords(WEYL, u) == class_coords(WEYL, L)


# -- recognition ----------------------------------------------------------------------------


def test_recognize_weyl_recovers_derivation():
    res = recognize_unital(WEYL)
    assert res.ok and not res.closed and not res.delta_is_zero
    assert res.labels[:2] == ["e", "L"]
    assert res.delta_vector("e") == {}
    assert res.delta_vector("L") == {"e": Fraction(1)}
    assert res.fit_ok and res.dtilde_ok and res.leibniz_ok
    # the d-layer decomposition of each generator is recorded
    assert [n for n, _ in res.components["L"]] == [0]
    replay = recognition_roundtrip(WEYL, res, n_max=2)
    assert replay["checked"] > 0


def test_recognize_cur2_recovers_matrix_algebra():
    res = recognize_unital(CUR2)
    assert res.ok and res.closed and res.delta_is_zero
    assert res.dim == 4
    assert res.product_vector("u12", "u21") == {"u11": Fraction(1)}
    assert res.product_vector("u12", "u12") == {}
    assert res.unit_coords == {
        res.labels.index("u11"): Fraction(1),
        res.labels.index("u22"): Fraction(1),
    }
    fd = res.to_findim()
    assert fd.dim == 4 and fd.unit is not None
    replay = recognition_roundtrip(CUR2, res, n_max=2)
    assert replay["skipped"] == 0 and replay["checked"] == 48


def test_recognize_presented_current_algebra():
    res = recognize_unital(cur_matrix_presented(2))
    assert res.ok and res.closed and res.delta_is_zero and res.dim == 4


def test_recognition_open_table_has_no_findim():
    res = recognize_unital(WEYL, word_bound=4)
    assert not res.closed
    with pytest.raises(ClosureBoundExceeded):
        res.to_findim()


def test_recognize_rejects_non_identity():
    with pytest.raises(NotUnital):
        recognize_unital(WEYL, e=WEYL.generator("L"))


def test_recognize_with_explicit_identity():
    res = recognize_unital(WEYL, e=WEYL.generator("e"))
    assert res.ok and res.delta_vector("L") == {"e": Fraction(1)}


def test_dtilde_matches_higher_products():
    # delta-tilde iterates: (-e (1) .)^n f = (-1)^n e (n) f for n <= 3
    e, L = WEYL.generator("e"), WEYL.generator("L")
    for f in (L, WEYL.nth(L, L, 0), WEYL.derive_elem(L)):
        cur = f
        for n in range(1, 4):
            cur = WEYL.scale(WEYL.nth(e, cur, 1), -1)
            direct = WEYL.scale(WEYL.nth(e, f, n), (-1) ** n)
            assert WEYL.eq(cur, direct), n


def test_mismatch_witness_message():
    err = MismatchWitness("a", "b", 2, detail="why")
    assert "product mismatch at (a, b, n=2)" in str(err)


# -- transport ------------------------------------------------------------------------------


def test_transport_mat2_frozen():
    m2 = matrix_findim(2)
    r = m2.basis_element(m2.names.index("E(1,2)"))
    res = transport_identity(m2, r)
    assert res.nil_index == 2 and res.report.ok
    alg = res.algebra
    want = alg.add(
        alg.add(alg.generator("E(1,1)"), alg.generator("E(2,2)")),
        alg.derive_elem(alg.generator("E(1,2)")),
    )
    assert alg.eq(res.identity, want)


def test_transport_keeps_plain_identity():
    # f_1 and the transported identity are BOTH identities in the same algebra
    from confal import identity_report

    m2 = matrix_findim(2)
    r = m2.basis_element(m2.names.index("E(1,2)"))
    res = transport_identity(m2, r)
    alg = res.algebra
    plain = alg.add(alg.generator("E(1,1)"), alg.generator("E(2,2)"))
    assert identity_report(alg, plain).ok
    assert identity_report(alg, res.identity).ok


def test_transport_mat3_three_terms():
    m3 = matrix_findim(3)
    r = m3.add(
        m3.basis_element(m3.names.index("E(1,2)")),
        m3.basis_element(m3.names.index("E(2,3)")),
    )
    res = transport_identity(m3, r)
    assert res.nil_index == 3
    alg = res.algebra
    one = alg.add(
        alg.add(alg.generator("E(1,1)"), alg.generator("E(2,2)")),
        alg.generator("E(3,3)"),
    )
    mid = alg.derive_elem(alg.add(alg.generator("E(1,2)"), alg.generator("E(2,3)")))
    top = alg.scale(
        alg.apply_dop_power(alg.generator("E(1,3)"), 2), Fraction(1, 2)
    )
    assert alg.eq(res.identity, alg.add(alg.add(one, mid), top))


def test_transport_rejects_non_nilpotent():
    m2 = matrix_findim(2)
    with pytest.raises(NotNilpotent):
        transport_identity(m2, m2.basis_element(m2.names.index("E(1,1)")))


# -- delta-stable ideals ----------------------------------------------------------------------


def test_closure_dual_numbers_proper_ideal():
    alg = cur_dual_numbers()
    base, delta = alg.base, alg.delta
    eps = base.basis_element(1)
    closure = delta_stable_closure(base, delta, [eps])
    assert closure.contains(eps) and not closure.unit_found
    assert not closure.contains(base.basis_element(0))
    assert closure.dim == 1 and closure.saturated


def test_closure_detects_unit_through_derivation():
    # seed x in (Q[x], d/dx): delta(x) = 1 so the closure reaches the unit
    base = PolyRing("x")
    delta = ScaledDdx(base)
    closure = delta_stable_closure(base, delta, [Poly.variable("x")])
    assert closure.unit_found


def test_simplicity_witnesses():
    eps_rep = simplicity_probe(cur_dual_numbers(), trials=10)
    assert eps_rep.witness_found and eps_rep.witness_missing
    poly_rep = simplicity_probe(poly_zero(), trials=10)
    assert poly_rep.witness_found and "x" in poly_rep.witness


def test_simplicity_no_witness_on_simple_instances():
    for alg in (CUR2, WEYL):
        rep = simplicity_probe(alg, trials=50, degree_bound=5, seed=0)
        assert not rep.witness_found, alg.name
        assert rep.candidates_checked > 0


def test_simplicity_requires_differential_instance():
    with pytest.raises(TypeError):
        simplicity_probe(cur_matrix_presented(2))
