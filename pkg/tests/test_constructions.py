import random
from fractions import Fraction as F

import pytest

import oracle
from conftest import raw_matrix, raw_structure
from contactpairs.constructions import (
    AlmostContact,
    ProductSpec,
    boothby_wang_extend,
    bw_base_conditions,
    central_extension,
    direct_sum,
    direct_sum_endo,
    double_extension,
    eta_invariance,
    extend_symplectic_pair,
    extension_spec,
    lift_form,
)
from contactpairs.exterior import AltForm, LieAlgebra, Vector, exterior_derivative, jacobi_check
from contactpairs.fixtures import acss, endo, heisenberg_phi, load_fixture
from contactpairs.normality import (
    ConsistencyError,
    almost_contact_normality,
    build_J,
    lie_derivative_endo,
    normality_report,
)
from contactpairs.pairs import (
    AlmostContactSymplecticStructure,
    NotAPair,
    classify_contact_pair,
    classify_contact_symplectic,
    construct_decomposable_psi,
    is_decomposable,
    psi_decomposable,
    splitting_bases,
    verify_acss,
    verify_cps,
)
from contactpairs.sampling import (
    _line_factor,
    heis_R2_base,
    heisenberg_factor,
    random_psi,
    sl2_elliptic,
    sl2_elliptic_deformed,
    sl2_split,
)


def ac_normal(A):
    return bool(almost_contact_normality(A.algebra, A.alpha, A.Z, A.phi))


def oracle_J_integrable(S):
    P = S.pair
    c = raw_structure(P.algebra)
    J = oracle.J_matrix(list(P.alpha1.as_vector()), list(P.alpha2.as_vector()),
                        list(P.Z1.coeffs), list(P.Z2.coeffs), raw_matrix(S.phi))
    return oracle.is_zero_tensor(oracle.nijenhuis(c, J))


def with_plane(A: AlmostContact) -> AlmostContactSymplecticStructure:
    """``A + R^2`` with ``eta`` the area form of the plane and ``psi`` a rotation there."""
    L = A.algebra
    n = L.dim
    B = LieAlgebra.from_brackets(n + 2, {(i, j): tuple(L.basis_bracket(i, j).coeffs) + (0, 0)
                                         for i in range(n) for j in range(i + 1, n)})
    beta = AltForm(n + 2, 1, dict(A.alpha.terms))
    C = classify_contact_symplectic(B, beta, AltForm(n + 2, 2, {(n, n + 1): 1}))
    return AlmostContactSymplecticStructure(C, direct_sum_endo(A.phi, endo(2, {0: (1, 1), 1: (0, -1)})))


# ---------------------------------------------------------------- products


def test_heisenberg_product():
    H = heisenberg_factor()
    S = direct_sum(ProductSpec(H, H))
    assert (S.pair.h, S.pair.k) == (1, 1)
    assert verify_cps(S.pair, S.phi)
    assert is_decomposable(S.pair, S.phi, splitting_bases(S.pair))


def test_product_with_line_has_type_h0():
    S = direct_sum(ProductSpec(heisenberg_factor(), _line_factor()))
    assert (S.pair.h, S.pair.k) == (1, 0)


def test_sl2_times_heisenberg():
    for left in (sl2_split(), sl2_elliptic()):
        S = direct_sum(ProductSpec(left, heisenberg_factor()))
        assert (S.pair.h, S.pair.k) == (1, 1)
        assert verify_cps(S.pair, S.phi)


def test_product_rejects_bad_factor():
    H = heisenberg_factor()
    bad = AlmostContact(H.algebra, H.alpha, H.Z, endo(3, {0: (0, 1), 1: (1, 1)}))
    with pytest.raises(ValueError):
        direct_sum(ProductSpec(bad, H))
    flat = AlmostContact(LieAlgebra.abelian(3), AltForm.covector(3, 2), Vector.basis(3, 2), heisenberg_phi())
    with pytest.raises(NotAPair):
        direct_sum(ProductSpec(flat, H))


COMBINATIONS = [
    (heisenberg_factor, heisenberg_factor),
    (sl2_elliptic, heisenberg_factor),
    (sl2_elliptic_deformed, heisenberg_factor),
    (heisenberg_factor, sl2_elliptic_deformed),
    (sl2_elliptic_deformed, sl2_elliptic_deformed),
    (sl2_split, sl2_elliptic),
]


@pytest.mark.parametrize("left,right", COMBINATIONS, ids=lambda f: f.__name__)
def test_product_normal_iff_factors_normal(left, right):
    A, B = left(), right()
    S = direct_sum(ProductSpec(A, B))
    r = normality_report(S)
    assert r.pair_normal == (ac_normal(A) and ac_normal(B))
    assert r.pair_normal == oracle_J_integrable(S) == r.J_integrable
    # the left factor is a leaf of F2, the right one a leaf of F1
    assert r.induced1_normal == ac_normal(A)
    assert r.induced2_normal == ac_normal(B)
    assert r.eq11_holds


def test_deforming_one_factor_flips_one_leaf_equation():
    base = normality_report(direct_sum(ProductSpec(sl2_elliptic(), heisenberg_factor())))
    left = normality_report(direct_sum(ProductSpec(sl2_elliptic_deformed(), heisenberg_factor())))
    right = normality_report(direct_sum(ProductSpec(heisenberg_factor(), sl2_elliptic_deformed())))
    assert base.pair_normal and not left.pair_normal and not right.pair_normal
    changed = lambda r: {k for k, v in r.flags().items() if k.startswith("eq") and v != base.flags()[k]}
    assert changed(left) == {"eq9_holds"}
    assert changed(right) == {"eq10_holds"}


# ---------------------------------------------------------------- central extensions


def test_flat3_extension():
    A = acss(load_fixture("flat3"))
    S = boothby_wang_extend(A)
    assert (S.pair.h, S.pair.k) == (1, 0)
    assert is_decomposable(S.pair, S.phi, splitting_bases(S.pair))
    assert normality_report(S).pair_normal
    assert oracle_J_integrable(S)


def test_zero_eta_is_not_a_pair():
    L = LieAlgebra.abelian(3)
    ext, a1 = central_extension(L, AltForm.zero(3, 2))
    assert exterior_derivative(ext, a1).is_zero()
    with pytest.raises(NotAPair):
        classify_contact_pair(ext, a1, lift_form(AltForm.covector(3, 2)))


def test_heis_R2_extension():
    C = heis_R2_base()
    A = AlmostContactSymplecticStructure(C, construct_decomposable_psi(C))
    S = boothby_wang_extend(A)
    assert S.dim == 6 and (S.pair.h, S.pair.k) == (1, 1)
    assert S.pair.Z1 == Vector.basis(6, 5)
    assert lie_derivative_endo(S.algebra, S.pair.Z1, S.phi).is_zero()
    assert exterior_derivative(S.algebra, S.pair.alpha1) == lift_form(C.eta)


def test_extension_rejects_non_closed_eta():
    C = heis_R2_base()
    A = AlmostContactSymplecticStructure(C, construct_decomposable_psi(C))
    from dataclasses import replace
    bad = replace(A, csp=replace(C, eta=C.eta + AltForm(5, 2, {(2, 3): 1})))
    with pytest.raises(ValueError):
        extension_spec(bad)


@pytest.mark.parametrize("extra,closed", [({(0, 3): 1}, True), ({(2, 3): 1}, False), ({(1, 4): F(1, 2)}, True)])
def test_jacobi_iff_eta_closed(extra, closed):
    C = heis_R2_base()
    eta = C.eta + AltForm(5, 2, extra)
    assert exterior_derivative(C.algebra, eta).is_zero() == closed
    assert not oracle.d2(raw_structure(C.algebra), _full(eta)) == closed
    ext, a1 = central_extension(C.algebra, eta)
    assert bool(jacobi_check(ext)) == closed == oracle.jacobi_ok(raw_structure(ext))
    if closed:
        assert exterior_derivative(ext, a1) == lift_form(eta)


def _full(w):
    n = w.dim
    M = [[F(0)] * n for _ in range(n)]
    for (i, j), v in w.terms.items():
        M[i][j], M[j][i] = F(v), -F(v)
    return M


def test_double_extension():
    L = LieAlgebra.abelian(4)
    w1, w2 = AltForm(4, 2, {(0, 1): 1}), AltForm(4, 2, {(2, 3): 1})
    C = extend_symplectic_pair(L, w1, w2)
    assert (C.h, C.k) == (1, 1)
    P = double_extension(L, w1, w2)
    assert P.dim == 6 and (P.h, P.k) == (1, 1)


# ---------------------------------------------------------------- base conditions


def test_flat3_base_conditions():
    bc = bw_base_conditions(acss(load_fixture("flat3")))
    assert bc.scalar and bc.vector and bc.reeb and bc.J_integrable_upstairs


def test_engineered_failure_on_heis_R2():
    C = heis_R2_base()
    A = AlmostContactSymplecticStructure(C, random_psi(C, random.Random(0)))
    assert not eta_invariance(A)
    bc = bw_base_conditions(A)
    assert not bc.scalar and not bc.holds
    S = boothby_wang_extend(A)
    assert not oracle_J_integrable(S)


def _bases():
    C = heis_R2_base()
    out = [acss(load_fixture("flat3")),
           AlmostContactSymplecticStructure(C, construct_decomposable_psi(C)),
           with_plane(sl2_elliptic()), with_plane(sl2_elliptic_deformed())]
    out += [AlmostContactSymplecticStructure(C, random_psi(C, random.Random(s))) for s in range(3)]
    return out


@pytest.mark.parametrize("A", _bases())
def test_base_conditions_equal_J_upstairs(A):
    bc = bw_base_conditions(A)
    S = boothby_wang_extend(A)
    assert bc.holds == oracle_J_integrable(S) == bc.J_integrable_upstairs


def test_invariant_psi_reduces_to_base_normality():
    seen = set()
    for A in _bases():
        if not eta_invariance(A):
            continue
        C = A.csp
        base_normal = bool(almost_contact_normality(C.algebra, C.beta, C.W, A.psi))
        bc = bw_base_conditions(A)
        assert bc.vector == base_normal
        S = boothby_wang_extend(A)
        assert bc.J_integrable_upstairs == base_normal
        if psi_decomposable(C, A.psi):
            assert normality_report(S).pair_normal == base_normal
            seen.add(base_normal)
    assert seen == {True, False}


def test_eta_invariance():
    assert eta_invariance(acss(load_fixture("flat3")))
    C = heis_R2_base()
    assert eta_invariance(AlmostContactSymplecticStructure(C, construct_decomposable_psi(C)))
    # a rotation on a 2-plane always preserves its area, so mix the two planes with a scaling:
    # e1 -> 2 e4 -> -e1, e2 -> e5 -> -e2
    psi = endo(5, {0: (3, 2), 1: (4, 1), 4: (1, -1)}) + endo(5, {3: (0, 1)}) * F(-1, 2)
    A = AlmostContactSymplecticStructure(C, psi)
    assert verify_acss(C, psi)
    rep = eta_invariance(A)
    assert not rep and rep.witness == (0, 1) and rep.residual == 2


def test_printed_conditions_recorded():
    for A in _bases():
        bc = bw_base_conditions(A)
        assert bc.printed_agrees == (bc.printed_holds == bc.J_integrable_upstairs)


def test_base_conditions_reject_bad_base():
    C = heis_R2_base()
    with pytest.raises(ValueError):
        bw_base_conditions(AlmostContactSymplecticStructure(C, endo(5, {})))
