"""Direct sums of almost contact structures and central (Boothby-Wang) extensions.

At the Lie-algebra level a Boothby-Wang fibration with curvature ``eta`` is
the central extension ``g + R Z1`` with ``[X, Y]' = [X, Y] - eta(X, Y) Z1``;
the connection form ``alpha1`` (dual to ``Z1``) then satisfies
``d alpha1 = eta``.  The new basis vector is appended last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

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
    nijenhuis_endo,
)
from .normality import ConsistencyError, build_J, nijenhuis_of_complex
from .pairs import (
    AlmostContactSymplecticStructure,
    ContactPair,
    ContactPairStructure,
    ContactSymplecticPair,
    InconsistentPair,
    NotAPair,
    almost_contact_identities,
    classify_contact_symplectic,
    classify_symplectic_pair,
    contact_pair,
    is_decomposable,
    psi_decomposable,
    reeb_vector,
    splitting_bases,
    verify_acss,
    verify_cps,
)


@dataclass(frozen=True)
class AlmostContact:
    """Almost contact structure ``(alpha, Z, phi)`` on a Lie algebra."""

    algebra: LieAlgebra
    alpha: AltForm
    Z: Vector
    phi: Endomorphism


def almost_contact(L: LieAlgebra, alpha: AltForm, phi: Endomorphism,
                   Z: Vector | None = None) -> AlmostContact:
    """Build a factor; ``Z`` defaults to the Reeb field of the contact form ``alpha``."""
    if Z is None:
        Z = reeb_vector(L, alpha)
    return AlmostContact(L, alpha, Z, phi)


@dataclass(frozen=True)
class ProductSpec:
    left: AlmostContact
    right: AlmostContact


def _embed_form(a: AltForm, n: int, offset: int) -> AltForm:
    return AltForm(n, a.degree, {tuple(i + offset for i in idx): v for idx, v in a.terms.items()})


def _embed_vector(v: Vector, n: int, offset: int) -> Vector:
    out = [Fraction(0)] * n
    for i, x in enumerate(v.coeffs):
        out[i + offset] = x
    return Vector(tuple(out))


def direct_sum_algebra(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    n, m = A.dim, B.dim
    brackets = {}
    for i, j in combinations(range(n), 2):
        brackets[(i, j)] = _embed_vector(A.basis_bracket(i, j), n + m, 0)
    for i, j in combinations(range(m), 2):
        brackets[(n + i, n + j)] = _embed_vector(B.basis_bracket(i, j), n + m, n)
    return LieAlgebra.from_brackets(n + m, brackets)


def direct_sum_endo(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    n, m = f.dim, g.dim
    cols = [_embed_vector(f.column(j), n + m, 0) for j in range(n)]
    cols += [_embed_vector(g.column(j), n + m, n) for j in range(m)]
    return Endomorphism.from_columns(cols)


def direct_sum(spec: ProductSpec) -> ContactPairStructure:
    """Contact pair structure ``(alpha1, alpha2, phi1 + phi2)`` on the product."""
    for side, f in (("left", spec.left), ("right", spec.right)):
        rep = almost_contact_identities(f.algebra, f.alpha, f.Z, f.phi)
        if not rep:
            raise ValueError(f"{side} factor is not an almost contact structure: {rep.reason}")
    A, B = spec.left, spec.right
    n, m = A.algebra.dim, B.algebra.dim
    L = direct_sum_algebra(A.algebra, B.algebra)
    a1 = _embed_form(A.alpha, n + m, 0)
    a2 = _embed_form(B.alpha, n + m, n)
    P = contact_pair(L, a1, a2)
    if (P.h, P.k) != ((n - 1) // 2, (m - 1) // 2):
        raise NotAPair(f"factor forms are not contact forms (type {(P.h, P.k)})")
    if P.Z1 != _embed_vector(A.Z, n + m, 0) or P.Z2 != _embed_vector(B.Z, n + m, n):
        raise InconsistentPair("factor Reeb fields do not lift to the Reeb fields of the pair")
    S = ContactPairStructure(P, direct_sum_endo(A.phi, B.phi))
    rep = verify_cps(P, S.phi)
    if not rep:
        raise ConsistencyError(f"product tensor fails: {rep.reason}")
    if not is_decomposable(P, S.phi, splitting_bases(P)):
        raise ConsistencyError("product tensor is not decomposable")
    return S


# --------------------------------------------------------------------------
# central extensions


def central_extension(L: LieAlgebra, eta: AltForm) -> tuple[LieAlgebra, AltForm]:
    """``(g + R Z1, alpha1)`` with ``[X, Y]' = [X, Y] - eta(X, Y) Z1``.

    No closedness check: the result satisfies Jacobi exactly when
    ``d eta = 0``.
    """
    n = L.dim
    brackets = {}
    for i, j in combinations(range(n), 2):
        base = L.basis_bracket(i, j)
        brackets[(i, j)] = tuple(base.coeffs) + (-eta.terms.get((i, j), Fraction(0)),)
    ext = LieAlgebra.from_brackets(n + 1, brackets)
    return ext, AltForm.covector(n + 1, n)


def lift_form(a: AltForm) -> AltForm:
    """Pullback along the projection that forgets the last basis vector."""
    return AltForm(a.dim + 1, a.degree, a.terms)


def lift_vector(v: Vector) -> Vector:
    """Horizontal lift (last coordinate 0)."""
    return Vector(tuple(v.coeffs) + (Fraction(0),))


def lift_endo(f: Endomorphism) -> Endomorphism:
    """``X -> (f pi_* X)^*``: ``f`` on the base directions, 0 on the fibre."""
    n = f.dim
    cols = [lift_vector(f.column(j)) for j in range(n)] + [Vector.zero(n + 1)]
    return Endomorphism.from_columns(cols)


@dataclass(frozen=True)
class ExtensionSpec:
    """A central extension of an almost contact-symplectic base."""

    base: AlmostContactSymplecticStructure
    algebra: LieAlgebra
    alpha1: AltForm
    alpha2: AltForm
    phi: Endomorphism


def extension_spec(A: AlmostContactSymplecticStructure) -> ExtensionSpec:
    C = A.csp
    if not exterior_derivative(C.algebra, C.eta).is_zero():
        raise ValueError("eta is not closed")
    L, a1 = central_extension(C.algebra, C.eta)
    return ExtensionSpec(A, L, a1, lift_form(C.beta), lift_endo(A.psi))


def boothby_wang_extend(A: AlmostContactSymplecticStructure) -> ContactPairStructure:
    """Lift ``(beta, eta, psi)`` to an invariant contact pair structure one dimension up."""
    rep = verify_acss(A.csp, A.psi)
    if not rep:
        raise ValueError(f"base is not an almost contact-symplectic structure: {rep.reason}")
    E = extension_spec(A)
    if exterior_derivative(E.algebra, E.alpha1) != lift_form(A.csp.eta):
        raise ConsistencyError("d alpha1 differs from the pullback of eta")
    P = contact_pair(E.algebra, E.alpha1, E.alpha2)
    n = A.csp.dim
    if P.Z1 != Vector.basis(n + 1, n) or P.Z2 != lift_vector(A.csp.W):
        raise ConsistencyError("Reeb fields are not (fibre generator, lift of W)")
    S = ContactPairStructure(P, E.phi)
    cps = verify_cps(P, E.phi)
    if not cps:
        raise ConsistencyError(f"lifted tensor fails: {cps.reason}")
    if psi_decomposable(A.csp, A.psi) and not is_decomposable(P, E.phi, splitting_bases(P)):
        raise ConsistencyError("psi decomposable but its lift is not")
    if not lie_derivative_endo(P.algebra, P.Z1, E.phi).is_zero():
        raise ConsistencyError("L_Z1 phi does not vanish")
    return S


def extend_symplectic_pair(L: LieAlgebra, w1: AltForm, w2: AltForm) -> ContactSymplecticPair:
    """Extend along ``w1``; ``(connection form, pullback of w2)`` is contact-symplectic."""
    classify_symplectic_pair(L, w1, w2)
    ext, beta = central_extension(L, w1)
    return classify_contact_symplectic(ext, beta, lift_form(w2))


def double_extension(L: LieAlgebra, w1: AltForm, w2: AltForm) -> ContactPair:
    """Two successive extensions of a symplectic pair give a contact pair."""
    csp = extend_symplectic_pair(L, w1, w2)
    ext, a1 = central_extension(csp.algebra, csp.eta)
    return contact_pair(ext, a1, lift_form(csp.beta))


# --------------------------------------------------------------------------
# base conditions


def eta_invariance(A: AlmostContactSymplecticStructure) -> VerificationReport:
    """``eta(psi X, psi Y) = eta(X, Y)`` on all basis pairs."""
    C, psi = A.csp, A.psi
    L = C.algebra
    for i, j in combinations(range(L.dim), 2):
        X, Y = L.basis(i), L.basis(j)
        r = C.eta(psi(X), psi(Y)) - C.eta(X, Y)
        if r:
            return VerificationReport.fail("eta invariance", (i, j), r, "eta(psi X, psi Y) != eta(X, Y)")
    return VerificationReport.ok("eta invariance")


@dataclass
class BaseConditions:
    """Base-space conditions for integrability of J on the extension.

    ``scalar``, ``vector`` and ``reeb`` are the conditions derived for the
    algebraic extension (2-forms in the determinant convention).  The
    ``printed_*`` flags evaluate the conditions with the coefficients as
    usually printed (1/2-normalized 2-forms, scalar terms along ``W``); they
    are recorded for comparison only.
    """

    scalar: bool
    vector: bool
    reeb: bool
    printed_scalar: bool
    printed_vector: bool
    J_integrable_upstairs: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.scalar and self.vector and self.reeb

    @property
    def printed_holds(self) -> bool:
        return self.printed_scalar and self.printed_vector and self.reeb

    @property
    def printed_agrees(self) -> bool:
        return self.printed_holds == self.J_integrable_upstairs


def _scalar_fail(L: LieAlgebra, f):
    for i, j in combinations(range(L.dim), 2):
        v = f(L.basis(i), L.basis(j))
        if v:
            return (i, j), v
    return None


def bw_base_conditions(A: AlmostContactSymplecticStructure) -> BaseConditions:
    rep = verify_acss(A.csp, A.psi)
    if not rep:
        raise ValueError(f"base is not an almost contact-symplectic structure: {rep.reason}")
    C, psi = A.csp, A.psi
    L, W, eta, db = C.algebra, C.W, C.eta, C.d_beta
    half = Fraction(1, 2)
    bpsi = nijenhuis_endo(L, psi)

    def scalar(X, Y):
        return eta(X, Y) - eta(psi(X), psi(Y)) - db(psi(X), Y) - db(X, psi(Y))

    def printed_scalar(X, Y):
        return eta(X, Y) - eta(psi(X), psi(Y)) - half * (db(psi(X), Y) + db(X, psi(Y)))

    def vector(X, Y):
        return bpsi(X, Y) + (db(X, Y) + eta(psi(X), Y) + eta(X, psi(Y))) * W

    def printed_vector(X, Y):
        return bpsi(X, Y) + (db(X, Y) + half * (eta(psi(X), Y) + eta(X, psi(Y)))) * W

    witnesses = {}
    s_fail = _scalar_fail(L, scalar)
    ps_fail = _scalar_fail(L, printed_scalar)
    v_fail = VectorValuedTwoForm.from_function(L.dim, vector).first_nonzero()
    pv_fail = VectorValuedTwoForm.from_function(L.dim, printed_vector).first_nonzero()
    LW = lie_derivative_endo(L, W, psi)
    for name, fail in (("scalar", s_fail), ("vector", v_fail), ("printed_scalar", ps_fail),
                       ("printed_vector", pv_fail)):
        if fail:
            witnesses[name] = fail
    if not LW.is_zero():
        j = next(j for j in range(L.dim) if not LW.column(j).is_zero())
        witnesses["reeb"] = ((j,), LW.column(j))

    E = extension_spec(A)
    S = ContactPairStructure(contact_pair(E.algebra, E.alpha1, E.alpha2), E.phi)
    J_up = nijenhuis_of_complex(E.algebra, build_J(S)).is_zero()

    out = BaseConditions(s_fail is None, v_fail is None, LW.is_zero(), ps_fail is None,
                         pv_fail is None, J_up, witnesses)
    if out.holds != J_up:
        raise ConsistencyError("base conditions disagree with integrability of J on the extension")
    return out


__all__ = [
    "AlmostContact", "almost_contact", "ProductSpec", "direct_sum_algebra", "direct_sum_endo",
    "direct_sum", "central_extension", "lift_form", "lift_vector", "lift_endo", "ExtensionSpec",
    "extension_spec", "boothby_wang_extend", "extend_symplectic_pair", "double_extension",
    "eta_invariance", "BaseConditions", "bw_base_conditions",
]
