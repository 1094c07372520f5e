import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import raw_structure
from contactpairs.constructions import AlmostContact, ProductSpec, direct_sum
from contactpairs.exterior import AltForm, Endomorphism, LieAlgebra, Vector, bracket, vector
from contactpairs.fixtures import endo, heisenberg_algebra, heisenberg_phi, load_fixture
from contactpairs.pairs import (
    ContactPairStructure,
    InconsistentPair,
    NotAPair,
    classify_contact_pair,
    classify_contact_symplectic,
    classify_symplectic_pair,
    construct_decomposable_phi,
    construct_decomposable_psi,
    contact_pair,
    darboux_basis,
    in_span,
    is_decomposable,
    psi_decomposable,
    random_symplectic_change,
    reeb_identities,
    reeb_pair,
    span_rank,
    splitting_bases,
    verify_acss,
    verify_cps,
)
from contactpairs.sampling import base_pairs, heis_R2_base, random_phi

X = lambda n, i: Vector.basis(n, i - 1)  # 1-based basis vector


def pair_of(name):
    F_ = load_fixture(name)
    return contact_pair(F_.algebra, F_.forms["alpha1"], F_.forms["alpha2"])


# ---------------------------------------------------------------- classification


def test_solvable6_type_and_reeb():
    P = pair_of("solvable6")
    assert (P.h, P.k) == (1, 1)
    assert (P.Z1, P.Z2) == (X(6, 2), X(6, 3))


def test_nil4_type_and_reeb():
    P = pair_of("nil4")
    assert (P.h, P.k) == (1, 0)
    assert (P.Z1, P.Z2) == (X(4, 3), X(4, 1))


def test_heisenberg_product_reeb():
    P = pair_of("heisHeis")
    assert (P.Z1, P.Z2) == (X(6, 3), X(6, 6))


def test_nilpotent6_type():
    assert (pair_of("nilpotent6").h, pair_of("nilpotent6").k) == (1, 1)


@pytest.mark.parametrize("name", ["solvable6", "nil4", "nilpotent6", "heisHeis"])
def test_reeb_matches_oracle(name):
    P = pair_of(name)
    Z1, Z2 = oracle.reeb(raw_structure(P.algebra), list(P.alpha1.as_vector()), list(P.alpha2.as_vector()))
    assert (list(P.Z1.coeffs), list(P.Z2.coeffs)) == (Z1, Z2)
    assert reeb_identities(P)


def test_classification_failures():
    L4 = LieAlgebra.abelian(4)
    with pytest.raises(NotAPair, match="volume form vanishes"):
        classify_contact_pair(L4, AltForm.covector(4, 0), AltForm.covector(4, 1))
    with pytest.raises(NotAPair, match="odd dimension"):
        classify_contact_pair(heisenberg_algebra(), AltForm.covector(3, 2), AltForm.covector(3, 0))
    # heis5 contact form plus a closed form in dimension 6 is fine; in dimension 4 heis + R is (1,0)
    H = LieAlgebra.from_brackets(4, {(0, 1): (0, 0, 1, 0)})
    assert classify_contact_pair(H, AltForm.covector(4, 2), AltForm.covector(4, 3)) == (1, 0)
    with pytest.raises(NotAPair, match="rank conditions"):
        classify_contact_pair(H, AltForm.covector(4, 2), AltForm.covector(4, 2))


def test_rank_conditions_inconsistent():
    # heis + heis with alpha2 = e^3 + e^6: classes add up past the dimension
    P = pair_of("heisHeis")
    a = P.alpha1 + P.alpha2
    with pytest.raises(NotAPair):
        classify_contact_pair(P.algebra, a, P.alpha2)


@pytest.mark.parametrize("name", ["solvable6", "nil4", "nilpotent6", "heisHeis"])
def test_swapping_the_forms_swaps_the_type(name):
    P = pair_of(name)
    Q = contact_pair(P.algebra, P.alpha2, P.alpha1)
    assert (Q.h, Q.k, Q.Z1, Q.Z2) == (P.k, P.h, P.Z2, P.Z1)
    assert Q == P.swapped()


def test_reeb_fields_commute_on_catalog():
    for P in base_pairs().values():
        assert reeb_identities(P)
        assert bracket(P.algebra, P.Z1, P.Z2).is_zero()


# ---------------------------------------------------------------- splittings


def test_solvable6_splitting():
    P = pair_of("solvable6")
    B = splitting_bases(P)
    span = lambda vs: {tuple(v.coeffs) for v in vs}
    TG1_expected = [X(6, 1), X(6, 4)]
    TG2_expected = [X(6, 5), X(6, 6)]
    assert span_rank(B.TG1) == 2 and all(in_span(B.TG1, v) for v in TG1_expected)
    assert span_rank(B.TG2) == 2 and all(in_span(B.TG2, v) for v in TG2_expected)
    assert all(in_span(B.TF1, v) for v in TG1_expected + [X(6, 3)])
    assert all(in_span(B.TF2, v) for v in TG2_expected + [X(6, 2)])
    assert span(B.TF1) != span(B.TF2)


def test_type_h0_splitting():
    P = pair_of("nil4")
    B = splitting_bases(P)
    assert B.TG1 == () and B.TF1 == (P.Z2,)
    assert len(B.TG2) == 2


def test_product_splitting_is_the_factors():
    P = pair_of("heisHeis")
    B = splitting_bases(P)
    assert all(in_span(B.TF2, X(6, i)) for i in (1, 2, 3))
    assert all(in_span(B.TF1, X(6, i)) for i in (4, 5, 6))


def test_splitting_dimensions_on_catalog():
    for P in base_pairs().values():
        B = splitting_bases(P)
        assert len(B.TG1) == 2 * P.k and len(B.TG2) == 2 * P.h
        assert span_rank(B.TF1 + B.TF2) == P.dim


# ---------------------------------------------------------------- symplectic and contact-symplectic


def test_symplectic_pairs():
    L = LieAlgebra.abelian(4)
    e = lambda i, j: AltForm(4, 2, {(i, j): 1})
    assert classify_symplectic_pair(L, e(0, 1), e(2, 3)) == (1, 1)
    with pytest.raises(NotAPair):
        classify_symplectic_pair(L, e(0, 1), e(0, 2))
    with pytest.raises(NotAPair):
        classify_symplectic_pair(L, e(0, 1) + e(2, 3), e(0, 1))


def test_contact_symplectic_examples():
    L = LieAlgebra.abelian(3)
    C = classify_contact_symplectic(L, AltForm.covector(3, 2), AltForm(3, 2, {(0, 1): 1}))
    assert (C.h, C.k, C.W) == (0, 1, X(3, 3))
    with pytest.raises(NotAPair):
        classify_contact_symplectic(L, AltForm.covector(3, 2), AltForm.zero(3, 2))
    C = heis_R2_base()
    assert (C.h, C.k) == (1, 1)
    assert C.W == X(5, 3)


def test_non_closed_eta_rejected():
    S6 = load_fixture("solvable6").algebra
    with pytest.raises(NotAPair, match="not closed"):
        classify_contact_symplectic(S6, AltForm.covector(6, 1), AltForm(6, 2, {(2, 4): 1}))


# ---------------------------------------------------------------- structure tensors


def test_verify_cps_examples():
    F_ = load_fixture("solvable6")
    P = pair_of("solvable6")
    phi = F_.endomorphisms["phi"]
    assert verify_cps(P, phi)
    bad = endo(6, {4: (4, 1), 5: (4, -1), 0: (3, 1), 3: (0, -1)})  # phi(X5) = X5
    rep = verify_cps(P, bad)
    assert not rep and rep.witness == (4,) and "phi^2" in rep.reason
    rep = verify_cps(P, Endomorphism.zero(6))
    assert not rep


def test_decomposable_examples():
    F_ = load_fixture("solvable6")
    P = pair_of("solvable6")
    assert is_decomposable(P, F_.endomorphisms["phi"], splitting_bases(P))
    # heis x heis with phi mixing the factors: e1 -> e4, e4 -> -e1, e2 -> e5, e5 -> -e2
    H = pair_of("heisHeis")
    mixed = endo(6, {0: (3, 1), 3: (0, -1), 1: (4, 1), 4: (1, -1)})
    assert verify_cps(H, mixed)
    assert not is_decomposable(H, mixed, splitting_bases(H))


@given(st.integers(0, 10 ** 6))
def test_type_h0_every_valid_phi_is_decomposable(seed):
    P = pair_of("nil4")
    phi = random_phi(P, random.Random(seed))
    assert verify_cps(P, phi)
    assert is_decomposable(P, phi, splitting_bases(P))


@given(st.integers(0, 10 ** 6))
def test_constructed_phi_postconditions(seed):
    rng = random.Random(seed)
    for P in base_pairs().values():
        B = splitting_bases(P)
        phi = construct_decomposable_phi(P, B, rng)
        assert verify_cps(P, phi)
        assert is_decomposable(P, phi, B)
        assert phi.rank() == P.dim - 2


def test_darboux_basis():
    w = AltForm(4, 2, {(0, 1): 1, (2, 3): 2, (0, 3): F(1, 2)})
    vs = [Vector.basis(4, i) for i in range(4)]
    pairs = darboux_basis(w, vs)
    flat = [v for p in pairs for v in p]
    for a, (u, v) in enumerate(pairs):
        assert w(u, v) == 1
        for b, (s, t) in enumerate(pairs):
            if a != b:
                assert w(u, s) == w(u, t) == w(v, s) == w(v, t) == 0
    assert span_rank(flat) == 4
    moved = random_symplectic_change(pairs, random.Random(3), steps=10)
    for a, (u, v) in enumerate(moved):
        assert w(u, v) == 1
    with pytest.raises(InconsistentPair):
        darboux_basis(AltForm(3, 2, {(0, 1): 1}), [Vector.basis(3, i) for i in range(3)])


def test_product_phi_agrees_with_factor_rotations():
    H = AlmostContact(heisenberg_algebra(), AltForm.covector(3, 2), Vector.basis(3, 2), heisenberg_phi())
    S = direct_sum(ProductSpec(H, H))
    phi = construct_decomposable_phi(S.pair, splitting_bases(S.pair))
    assert verify_cps(S.pair, phi)
    # each factor plane is preserved by the constructed phi
    for block in ((0, 1), (3, 4)):
        plane = [Vector.basis(6, i) for i in block]
        assert all(in_span(plane, phi(v)) for v in plane)


def test_verify_acss_examples():
    L = LieAlgebra.abelian(3)
    C = classify_contact_symplectic(L, AltForm.covector(3, 2), AltForm(3, 2, {(0, 1): 1}))
    psi = endo(3, {0: (1, 1), 1: (0, -1)})
    assert verify_acss(C, psi, check_decomposable=True)
    bad = endo(3, {0: (1, 1), 1: (0, -1), 2: (0, 1)})
    rep = verify_acss(C, bad)
    assert not rep and "psi" in rep.reason
    C = heis_R2_base()
    psi = construct_decomposable_psi(C)
    assert verify_acss(C, psi, check_decomposable=True)
    assert psi_decomposable(C, psi)
