import random

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import raw_matrix, raw_structure
from contactpairs.constructions import ProductSpec, direct_sum
from contactpairs.exterior import AltForm, Endomorphism, Vector
from contactpairs.fixtures import heisenberg_algebra, heisenberg_phi, load_fixture, pair_structure
from contactpairs.normality import (
    ConsistencyError,
    NJ_expanded,
    NT_expanded,
    almost_contact_normality,
    build_J,
    build_T,
    induced_normality,
    k_contact_flags,
    nijenhuis_of_complex,
    normality_report,
    normality_tensor,
    split_equations,
    theorem_checks,
)
from contactpairs.pairs import ContactPairStructure, splitting_bases
from contactpairs.sampling import (
    _line_factor,
    random_structures,
    sl2_elliptic,
    sl2_elliptic_deformed,
)

SEED = 11


@pytest.fixture(scope="module")
def samples():
    return random_structures(SEED, 20)


def raw_data(S):
    P = S.pair
    return (raw_structure(P.algebra), list(P.alpha1.as_vector()), list(P.alpha2.as_vector()),
            list(P.Z1.coeffs), list(P.Z2.coeffs), raw_matrix(S.phi))


def bilinear(tensor, n, X, Y):
    """Evaluate an oracle tensor given on ``i < j`` at arbitrary vectors."""
    out = [0] * n
    for (i, j), v in tensor.items():
        s = X[i] * Y[j] - X[j] * Y[i]
        if s:
            out = [a + s * b for a, b in zip(out, v)]
    return out


# ---------------------------------------------------------------- J and T


@pytest.mark.parametrize("name", ["solvable6", "nilpotent6", "nil4", "heisHeis"])
def test_J_T_algebra(name):
    S = pair_structure(load_fixture(name))
    P = S.pair
    J, T = build_J(S), build_T(S)
    I = Endomorphism.identity(S.dim)
    assert J @ J == -I and T @ T == -I
    assert J @ T == T @ J
    assert J(P.Z1) == P.Z2 and J(P.Z2) == -P.Z1
    assert T(P.Z1) == -P.Z2 and T(P.Z2) == P.Z1
    c, a1, a2, Z1, Z2, phi = raw_data(S)
    assert raw_matrix(J) == oracle.J_matrix(a1, a2, Z1, Z2, phi)
    assert raw_matrix(T) == oracle.T_matrix(a1, a2, Z1, Z2, phi)


def test_build_J_rejects_bad_phi():
    S = pair_structure(load_fixture("solvable6"))
    with pytest.raises(ConsistencyError):
        build_J(ContactPairStructure(S.pair, Endomorphism.zero(6)))


def test_tensors_against_oracle(samples):
    for smp in samples:
        S = smp.structure
        c, a1, a2, Z1, Z2, phi = raw_data(S)
        n = S.dim
        NJ = nijenhuis_of_complex(S.algebra, build_J(S))
        NT = nijenhuis_of_complex(S.algebra, build_T(S))
        NN = normality_tensor(S)
        refJ = oracle.nijenhuis(c, oracle.J_matrix(a1, a2, Z1, Z2, phi))
        refT = oracle.nijenhuis(c, oracle.T_matrix(a1, a2, Z1, Z2, phi))
        refN = oracle.normality_tensor(c, a1, a2, Z1, Z2, phi)
        for (i, j) in refJ:
            assert list(NJ.on_basis(i, j).coeffs) == refJ[(i, j)], smp.label
            assert list(NT.on_basis(i, j).coeffs) == refT[(i, j)], smp.label
            assert list(NN.on_basis(i, j).coeffs) == refN[(i, j)], smp.label
        # expanded formulas are a second route to the same tensors
        assert NJ_expanded(S) == NJ, smp.label
        assert NT_expanded(S) == NT, smp.label
        assert (NJ.is_zero() and NT.is_zero()) == NN.is_zero() == oracle.is_zero_tensor(refN)
        for t in (NJ, NT, NN):
            for i in range(n):
                assert t.on_basis(i, i).is_zero()
                for j in range(n):
                    assert t.on_basis(i, j) == -t.on_basis(j, i)


# ---------------------------------------------------------------- the solvable fixture


def test_solvable6_NJ_witness():
    S = pair_structure(load_fixture("solvable6"))
    NJ = nijenhuis_of_complex(S.algebra, build_J(S))
    X = lambda i: Vector.basis(6, i - 1)
    assert NJ(X(1), X(5)) == X(4) + X(6)
    c, a1, a2, Z1, Z2, phi = raw_data(S)
    ref = oracle.nijenhuis(c, oracle.J_matrix(a1, a2, Z1, Z2, phi))
    assert ref[(0, 4)] == list((X(4) + X(6)).coeffs)


def test_solvable6_tensor_lives_on_cross_pairs():
    S = pair_structure(load_fixture("solvable6"))
    B = splitting_bases(S.pair)
    c, a1, a2, Z1, Z2, phi = raw_data(S)
    ref = oracle.normality_tensor(c, a1, a2, Z1, Z2, phi)
    val = lambda u, v: bilinear(ref, 6, list(u.coeffs), list(v.coeffs))
    for basis in (B.TF1, B.TF2):
        for u in basis:
            for v in basis:
                assert not any(val(u, v))
    assert any(any(val(u, v)) for u in B.TF1 for v in B.TF2)
    NN = normality_tensor(S)
    for u in B.TF1:
        for v in B.TF2:
            assert list(NN(u, v).coeffs) == val(u, v)


def test_solvable6_split_witness():
    S = pair_structure(load_fixture("solvable6"))
    B = splitting_bases(S.pair)
    eqs = split_equations(S, B)
    assert eqs["eq9"] is None and eqs["eq10"] is None
    (a, b), residual = eqs["eq11"]
    c, a1, a2, Z1, Z2, phi = raw_data(S)
    ref = oracle.nijenhuis(c, phi)
    assert list(residual.coeffs) == bilinear(ref, 6, list(B.TF1[a].coeffs), list(B.TF2[b].coeffs))


def test_solvable6_induced_normality():
    S = pair_structure(load_fixture("solvable6"))
    B = splitting_bases(S.pair)
    assert induced_normality(S, B, 1) and induced_normality(S, B, 2)
    with pytest.raises(ValueError):
        induced_normality(S, B, 3)


def test_nil4_induced_and_flags():
    S = pair_structure(load_fixture("nil4"))
    r = normality_report(S)
    assert r.decomposable and not r.pair_normal
    B = splitting_bases(S.pair)
    assert induced_normality(S, B, 2)  # one-dimensional leaf carries the zero tensor
    assert r.induced1_normal == r.eq9_holds


def test_product_is_normal():
    r = normality_report(pair_structure(load_fixture("heisHeis")))
    assert all(v for v in r.flags().values())
    assert normality_tensor(pair_structure(load_fixture("heisHeis"))).is_zero()


# ---------------------------------------------------------------- almost contact


def test_heisenberg_normal_and_sheared():
    L = heisenberg_algebra()
    alpha, Z = AltForm.covector(3, 2), Vector.basis(3, 2)
    assert almost_contact_normality(L, alpha, Z, heisenberg_phi())
    # shear inside ker alpha: keeps Z and the phi^2 identity
    A = Endomorphism.from_columns([Vector.basis(3, 0), Vector.basis(3, 1) + Vector.basis(3, 0), Z])
    phi = A @ heisenberg_phi() @ A.inverse()
    rep = almost_contact_normality(L, alpha, Z, phi)
    c = raw_structure(L)
    da = oracle.d1(c, [0, 0, 1])
    N = oracle.nijenhuis(c, raw_matrix(phi))
    ref = {k: [a + da[k[0]][k[1]] * z for a, z in zip(v, [0, 0, 1])] for k, v in N.items()}
    assert rep.passed == oracle.is_zero_tensor(ref)


def test_almost_contact_rejects_bad_data():
    with pytest.raises(ValueError):
        almost_contact_normality(heisenberg_algebra(), AltForm.covector(3, 2), Vector.basis(3, 2),
                                 Endomorphism.zero(3))


def test_sl2_factors():
    for A, expected in ((sl2_elliptic(), True), (sl2_elliptic_deformed(), False)):
        rep = almost_contact_normality(A.algebra, A.alpha, A.Z, A.phi)
        c = raw_structure(A.algebra)
        a, z = list(A.alpha.as_vector()), list(A.Z.coeffs)
        da = oracle.d1(c, a)
        N = oracle.nijenhuis(c, raw_matrix(A.phi))
        ref = {k: [x + da[k[0]][k[1]] * y for x, y in zip(v, z)] for k, v in N.items()}
        assert rep.passed == oracle.is_zero_tensor(ref) == expected


# ---------------------------------------------------------------- L_Z phi


def test_k_contact_flags():
    S = pair_structure(load_fixture("solvable6"))
    assert k_contact_flags(S) == (True, True)
    # the deformed sl2 tensor does not commute with ad Z
    D = direct_sum(ProductSpec(sl2_elliptic_deformed(), _line_factor()))
    lz1, lz2 = k_contact_flags(D)
    c, a1, a2, Z1, Z2, phi = raw_data(D)
    ref = oracle.lie_derivative_endo(c, Z1, phi)
    assert lz1 is False and any(any(r) for r in ref)
    assert lz2 is True
    E = direct_sum(ProductSpec(sl2_elliptic(), _line_factor()))
    assert k_contact_flags(E) == (True, True)


# ---------------------------------------------------------------- theorem suites


def test_theorem_checks_on_random_structures(samples):
    for smp in samples:
        r = normality_report(smp.structure)
        for chk in theorem_checks(r):
            assert chk.holds, (smp.label, chk.name)


def test_flag_statistics_cover_both_truth_values(samples):
    flags = [normality_report(s.structure).flags() for s in samples]
    for key in ("pair_normal", "decomposable", "eq11_holds", "LZ1_phi_zero"):
        seen = {f[key] for f in flags if f[key] is not None}
        assert seen == {True, False}, key


@settings(max_examples=5)
@given(st.integers(0, 10 ** 6))
def test_report_is_basis_independent(seed):
    from contactpairs.sampling import random_gl, transform_structure

    rng = random.Random(seed)
    for smp in random_structures(seed, 6, change_basis=False):
        S = smp.structure
        T = transform_structure(S, random_gl(S.dim, rng, 1))
        a, b = normality_report(S).flags(), normality_report(T).flags()
        # decomposability is basis free; so is every flag
        assert a == b, smp.label
