"""Associated almost complex structures and normality of contact pair structures.

Normalization note: the classical almost-contact criterion is written
``[phi, phi](X, Y) + 2 d alpha(X, Y) Z = 0`` with 2-forms evaluated in
the 1/2-normalized convention.  Here 2-forms are evaluated in the
determinant convention (``d alpha(X, Y) = -alpha([X, Y])``), so every such
term enters with coefficient 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg
from .exterior import (
    AltForm,
    Endomorphism,
    LieAlgebra,
    Vector,
    VectorValuedTwoForm,
    VerificationReport,
    bracket,
    exterior_derivative,
    lie_derivative_endo,
    lie_derivative_form,
    nijenhuis_endo,
)
from .pairs import (
    ContactPairStructure,
    SplittingBases,
    almost_contact_identities,
    is_decomposable,
    splitting_bases,
    verify_cps,
)


class ConsistencyError(AssertionError):
    """Two independently computed sides of an identity disagree."""


# --------------------------------------------------------------------------
# J and T


def build_J(S: ContactPairStructure) -> Endomorphism:
    """``J = phi - alpha2 (x) Z1 + alpha1 (x) Z2``."""
    P = S.pair
    J = S.phi - Endomorphism.outer(P.alpha2, P.Z1) + Endomorphism.outer(P.alpha1, P.Z2)
    if J @ J != -Endomorphism.identity(S.dim):
        raise ConsistencyError("J^2 != -Id: phi is not a contact pair structure tensor")
    return J


def build_T(S: ContactPairStructure) -> Endomorphism:
    """``T = phi + alpha2 (x) Z1 - alpha1 (x) Z2``; commutes with J."""
    P = S.pair
    T = S.phi + Endomorphism.outer(P.alpha2, P.Z1) - Endomorphism.outer(P.alpha1, P.Z2)
    if T @ T != -Endomorphism.identity(S.dim):
        raise ConsistencyError("T^2 != -Id: phi is not a contact pair structure tensor")
    J = build_J(S)
    if J @ T != T @ J:
        raise ConsistencyError("J and T do not commute")
    return T


def nijenhuis_of_complex(L: LieAlgebra, J: Endomorphism) -> VectorValuedTwoForm:
    """``N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]`` for ``J^2 = -Id``."""
    if J @ J != -Endomorphism.identity(L.dim):
        raise ValueError("nijenhuis_of_complex needs J^2 = -Id")

    def value(X: Vector, Y: Vector) -> Vector:
        JX, JY = J(X), J(Y)
        return bracket(L, JX, JY) - J(bracket(L, JX, Y)) - J(bracket(L, X, JY)) - bracket(L, X, Y)

    return VectorValuedTwoForm.from_function(L.dim, value)


def _expanded(S: ContactPairStructure, sign: int) -> VectorValuedTwoForm:
    """Expanded Nijenhuis tensor; ``sign=+1`` gives N_J, ``-1`` gives N_T."""
    P = S.pair
    L, phi = P.algebra, S.phi
    a1, a2, Z1, Z2 = P.alpha1, P.alpha2, P.Z1, P.Z2
    da1, da2 = P.d_alpha1, P.d_alpha2
    bracket_phi = nijenhuis_endo(L, phi)
    LZ1 = lie_derivative_endo(L, Z1, phi)
    LZ2 = lie_derivative_endo(L, Z2, phi)

    def lie_form(V: Vector, a: AltForm, Y: Vector) -> Fraction:
        return lie_derivative_form(L, V, a)(Y)

    def value(X: Vector, Y: Vector) -> Vector:
        out = bracket_phi(X, Y) + da1(X, Y) * Z1 + da2(X, Y) * Z2
        reeb_terms = (a1(X) * LZ2(Y) - a1(Y) * LZ2(X) + a2(Y) * LZ1(X) - a2(X) * LZ1(Y))
        pX, pY = phi(X), phi(Y)
        form_terms = ((lie_form(pX, a1, Y) - lie_form(pY, a1, X)) * Z2
                      + (lie_form(pY, a2, X) - lie_form(pX, a2, Y)) * Z1)
        return out + sign * (reeb_terms + form_terms)

    return VectorValuedTwoForm.from_function(S.dim, value)


def NJ_expanded(S: ContactPairStructure) -> VectorValuedTwoForm:
    return _expanded(S, +1)


def NT_expanded(S: ContactPairStructure) -> VectorValuedTwoForm:
    return _expanded(S, -1)


def normality_tensor(S: ContactPairStructure) -> VectorValuedTwoForm:
    """``[phi, phi] + d alpha1 (x) Z1 + d alpha2 (x) Z2``; zero iff the pair is normal."""
    P = S.pair
    return nijenhuis_endo(P.algebra, S.phi) + VectorValuedTwoForm.from_function(
        S.dim, lambda X, Y: P.d_alpha1(X, Y) * P.Z1 + P.d_alpha2(X, Y) * P.Z2)


# --------------------------------------------------------------------------
# almost contact normality and leaves


def almost_contact_normality(L: LieAlgebra, alpha: AltForm, Z: Vector,
                             phi: Endomorphism) -> VerificationReport:
    """Normality criterion ``[phi, phi](X, Y) + d alpha(X, Y) Z = 0`` on all basis pairs."""
    pre = almost_contact_identities(L, alpha, Z, phi)
    if not pre:
        raise ValueError(f"not an almost contact structure: {pre.reason}")
    da = exterior_derivative(L, alpha)
    tensor = nijenhuis_endo(L, phi) + VectorValuedTwoForm.from_function(
        L.dim, lambda X, Y: da(X, Y) * Z)
    first = tensor.first_nonzero()
    if first is None:
        return VerificationReport.ok("almost contact normality")
    return VerificationReport.fail("almost contact normality", first[0], first[1],
                                   "[phi, phi] + d alpha (x) Z does not vanish")


@dataclass(frozen=True)
class Leaf:
    """A subalgebra written in its own basis, with the induced almost contact data."""

    basis: tuple[Vector, ...]
    algebra: LieAlgebra
    alpha: AltForm
    Z: Vector
    phi: Endomorphism


def _coords(basis: Sequence[Vector], v: Vector) -> tuple[Fraction, ...]:
    c = linalg.coordinates([b.coeffs for b in basis], v.coeffs)
    if c is None:
        raise ValueError("vector leaves the subalgebra")
    return c


def restrict_to_leaf(L: LieAlgebra, basis: Sequence[Vector], alpha: AltForm, Z: Vector,
                     phi: Endomorphism) -> Leaf:
    m = len(basis)
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            brackets[(a, b)] = _coords(basis, bracket(L, basis[a], basis[b]))
    sub = LieAlgebra.from_brackets(m, brackets)
    alpha_leaf = AltForm(m, 1, {(a,): alpha(basis[a]) for a in range(m)})
    Z_leaf = Vector(_coords(basis, Z))
    phi_leaf = Endomorphism.from_columns([Vector(_coords(basis, phi(b))) for b in basis])
    return Leaf(tuple(basis), sub, alpha_leaf, Z_leaf, phi_leaf)


def induced_normality(S: ContactPairStructure, B: SplittingBases, which: int) -> VerificationReport:
    """Normality of ``(alpha1, Z1, phi)`` on the leaves of F2 (``which=1``)
    or of ``(alpha2, Z2, phi)`` on the leaves of F1 (``which=2``)."""
    P = S.pair
    if not is_decomposable(P, S.phi, B):
        raise ValueError("induced structures need a decomposable phi")
    if which == 1:
        leaf = restrict_to_leaf(P.algebra, B.TF2, P.alpha1, P.Z1, S.phi)
    elif which == 2:
        leaf = restrict_to_leaf(P.algebra, B.TF1, P.alpha2, P.Z2, S.phi)
    else:
        raise ValueError("which must be 1 or 2")
    rep = almost_contact_normality(leaf.algebra, leaf.alpha, leaf.Z, leaf.phi)
    return VerificationReport(f"induced structure {which}", rep.passed, rep.witness, rep.residual,
                              rep.reason)


def k_contact_flags(S: ContactPairStructure) -> tuple[bool, bool]:
    P = S.pair
    return (lie_derivative_endo(P.algebra, P.Z1, S.phi).is_zero(),
            lie_derivative_endo(P.algebra, P.Z2, S.phi).is_zero())


# --------------------------------------------------------------------------
# the full report


@dataclass
class NormalityReport:
    """Normality flags of a contact pair structure.

    Split-system flags (``eq9_holds`` .. ``induced2_normal``) are None when
    ``phi`` is not decomposable.  ``witnesses`` maps a failed flag to
    ``(basis pair, residual)``; for the split equations the pair indexes the
    ``TF`` bases of the splitting.
    """

    pair_normal: bool
    J_integrable: bool
    T_integrable: bool
    tensor_zero: bool
    decomposable: bool
    LZ1_phi_zero: bool
    LZ2_phi_zero: bool
    h: int
    k: int
    eq9_holds: bool | None = None
    eq10_holds: bool | None = None
    eq11_holds: bool | None = None
    induced1_normal: bool | None = None
    induced2_normal: bool | None = None
    witnesses: dict[str, tuple[tuple[int, ...], object]] = field(default_factory=dict)

    def flags(self) -> dict[str, bool | None]:
        return {
            "pair_normal": self.pair_normal,
            "J_integrable": self.J_integrable,
            "T_integrable": self.T_integrable,
            "normality_tensor_zero": self.tensor_zero,
            "decomposable": self.decomposable,
            "eq9_holds": self.eq9_holds,
            "eq10_holds": self.eq10_holds,
            "eq11_holds": self.eq11_holds,
            "LZ1_phi_zero": self.LZ1_phi_zero,
            "LZ2_phi_zero": self.LZ2_phi_zero,
            "induced1_normal": self.induced1_normal,
            "induced2_normal": self.induced2_normal,
        }


def _first_failure(tensor: VectorValuedTwoForm):
    first = tensor.first_nonzero()
    return None if first is None else (first[0], first[1])


def _check_on(S: ContactPairStructure, tensor: VectorValuedTwoForm, left: Sequence[Vector],
              right: Sequence[Vector], same: bool):
    """First ``(a, b)`` with ``tensor(left[a], right[b]) != 0`` or None."""
    for a, b in product(range(len(left)), range(len(right))):
        if same and b <= a:
            continue
        v = tensor(left[a], right[b])
        if not v.is_zero():
            return (a, b), v
    return None


def split_equations(S: ContactPairStructure, B: SplittingBases) -> dict[str, tuple | None]:
    """Failures of the three split equations (None where an equation holds)."""
    P = S.pair
    bphi = nijenhuis_endo(P.algebra, S.phi)
    t9 = bphi + VectorValuedTwoForm.from_function(S.dim, lambda X, Y: P.d_alpha1(X, Y) * P.Z1)
    t10 = bphi + VectorValuedTwoForm.from_function(S.dim, lambda X, Y: P.d_alpha2(X, Y) * P.Z2)
    return {
        "eq9": _check_on(S, t9, B.TF2, B.TF2, True),
        "eq10": _check_on(S, t10, B.TF1, B.TF1, True),
        "eq11": _check_on(S, bphi, B.TF1, B.TF2, False),
    }


def normality_report(S: ContactPairStructure, B: SplittingBases | None = None) -> NormalityReport:
    """Compute every flag independently, then assert the identities linking them."""
    P = S.pair
    pre = verify_cps(P, S.phi)
    if not pre:
        raise ValueError(f"not a contact pair structure: {pre.reason}")
    if B is None:
        B = splitting_bases(P)
    L = P.algebra
    witnesses: dict[str, tuple] = {}
    NJ = nijenhuis_of_complex(L, build_J(S))
    NT = nijenhuis_of_complex(L, build_T(S))
    NN = normality_tensor(S)
    for name, t in (("J_integrable", NJ), ("T_integrable", NT), ("normality_tensor_zero", NN)):
        fail = _first_failure(t)
        if fail:
            witnesses[name] = fail
    lz1, lz2 = k_contact_flags(S)
    decomposable = bool(is_decomposable(P, S.phi, B))
    rep = NormalityReport(
        pair_normal=NJ.is_zero() and NT.is_zero(),
        J_integrable=NJ.is_zero(),
        T_integrable=NT.is_zero(),
        tensor_zero=NN.is_zero(),
        decomposable=decomposable,
        LZ1_phi_zero=lz1,
        LZ2_phi_zero=lz2,
        h=P.h,
        k=P.k,
        witnesses=witnesses,
    )
    if rep.pair_normal != rep.tensor_zero:
        raise ConsistencyError("N_J = N_T = 0 disagrees with the vanishing of the normality tensor")
    if decomposable:
        eqs = split_equations(S, B)
        rep.eq9_holds = eqs["eq9"] is None
        rep.eq10_holds = eqs["eq10"] is None
        rep.eq11_holds = eqs["eq11"] is None
        for name, fail in eqs.items():
            if fail:
                witnesses[name + "_holds"] = fail
        ind1 = induced_normality(S, B, 1)
        ind2 = induced_normality(S, B, 2)
        rep.induced1_normal = ind1.passed
        rep.induced2_normal = ind2.passed
        for name, r in (("induced1_normal", ind1), ("induced2_normal", ind2)):
            if not r:
                witnesses[name] = (r.witness, r.residual)
        if rep.tensor_zero != (rep.eq9_holds and rep.eq10_holds and rep.eq11_holds):
            raise ConsistencyError("split system disagrees with the normality tensor")
        if rep.induced1_normal != rep.eq9_holds or rep.induced2_normal != rep.eq10_holds:
            raise ConsistencyError("leaf normality disagrees with the split equations")
    return rep


def split_system_check(S: ContactPairStructure, B: SplittingBases) -> NormalityReport:
    if not is_decomposable(S.pair, S.phi, B):
        raise ValueError("split system needs a decomposable phi")
    return normality_report(S, B)


# --------------------------------------------------------------------------
# theorem-level equivalences


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    applicable: bool
    holds: bool


def theorem_checks(r: NormalityReport) -> list[TheoremCheck]:
    """Evaluate each equivalence on the computed flags (``holds`` is True when not applicable)."""
    J, T = r.J_integrable, r.T_integrable
    dec = r.decomposable
    checks = []

    def add(name, applicable, statement):
        checks.append(TheoremCheck(name, bool(applicable), bool(statement) if applicable else True))

    add("J and T integrable iff normality tensor vanishes", True, (J and T) == r.tensor_zero)
    add("decomposable: normal iff eq9, eq10, eq11", dec,
        dec and r.tensor_zero == (r.eq9_holds and r.eq10_holds and r.eq11_holds))
    add("decomposable: normal iff induced normal and eq11", dec,
        dec and r.pair_normal == (r.induced1_normal and r.induced2_normal and r.eq11_holds))
    add("induced normal both: J integrable iff T integrable",
        dec and r.induced1_normal and r.induced2_normal, J == T)
    add("J integrable, decomposable: T iff L_Z1 phi = 0 iff L_Z2 phi = 0", dec and J,
        T == r.LZ1_phi_zero == r.LZ2_phi_zero)
    for i, lz, other in ((1, r.LZ1_phi_zero, r.LZ2_phi_zero), (2, r.LZ2_phi_zero, r.LZ1_phi_zero)):
        hyp = dec and lz
        add(f"L_Z{i} phi = 0, decomposable: J iff T iff (induced normal and eq11)", hyp,
            hyp and J == T == bool(r.induced1_normal and r.induced2_normal and r.eq11_holds))
        add(f"L_Z{i} phi = 0, decomposable: J integrable implies L_Z{3 - i} phi = 0", hyp,
            (not J) or other)
    add("type (h,0): phi decomposable", r.k == 0, dec)
    add("type (h,0), L_Z2 phi = 0: normal iff induced structure on F2 leaves normal",
        r.k == 0 and r.LZ2_phi_zero and dec, r.pair_normal == r.induced1_normal)
    return checks


__all__ = [
    "ConsistencyError", "build_J", "build_T", "nijenhuis_of_complex", "NJ_expanded", "NT_expanded",
    "normality_tensor", "almost_contact_normality", "Leaf", "restrict_to_leaf", "induced_normality",
    "k_contact_flags", "NormalityReport", "split_equations", "normality_report", "split_system_check",
    "TheoremCheck", "theorem_checks",
]
