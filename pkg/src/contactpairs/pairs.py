"""Contact pairs, symplectic pairs and contact-symplectic pairs.

Classification, Reeb fields, the characteristic splittings and the
structure tensors ``phi`` (contact pair structures) and ``psi`` (almost
contact-symplectic structures).  Subspaces are lists of :class:`Vector`
bases and every subspace computation is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import linalg
from .exterior import (
    AltForm,
    Endomorphism,
    LieAlgebra,
    Vector,
    VerificationReport,
    bracket,
    exterior_derivative,
    form_power,
    interior_product,
    is_volume_form,
    wedge,
)


class NotAPair(ValueError):
    """The given forms do not define a pair of the requested kind."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class InconsistentPair(ValueError):
    """Derived data (Reeb fields, splittings) contradict the classification."""


# --------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class ContactPair:
    algebra: LieAlgebra
    alpha1: AltForm
    alpha2: AltForm
    h: int
    k: int
    Z1: Vector
    Z2: Vector

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def d_alpha1(self) -> AltForm:
        return exterior_derivative(self.algebra, self.alpha1)

    @cached_property
    def d_alpha2(self) -> AltForm:
        return exterior_derivative(self.algebra, self.alpha2)

    def swapped(self) -> ContactPair:
        return ContactPair(self.algebra, self.alpha2, self.alpha1, self.k, self.h, self.Z2, self.Z1)


@dataclass(frozen=True)
class SplittingBases:
    """Bases of ``TF_i`` (characteristic foliations) and ``TG_i``.

    ``TF1 = TG1 + R Z2`` and ``TF2 = TG2 + R Z1``; ``TG1`` has dimension
    ``2k`` and ``TG2`` dimension ``2h``.
    """

    TF1: tuple[Vector, ...]
    TF2: tuple[Vector, ...]
    TG1: tuple[Vector, ...]
    TG2: tuple[Vector, ...]
    Z1: Vector
    Z2: Vector


@dataclass(frozen=True)
class ContactSymplecticPair:
    algebra: LieAlgebra
    beta: AltForm
    eta: AltForm
    h: int
    k: int
    W: Vector
    TH: tuple[Vector, ...]
    TF2cs: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def d_beta(self) -> AltForm:
        return exterior_derivative(self.algebra, self.beta)


@dataclass(frozen=True)
class ContactPairStructure:
    pair: ContactPair
    phi: Endomorphism

    @property
    def algebra(self) -> LieAlgebra:
        return self.pair.algebra

    @property
    def dim(self) -> int:
        return self.pair.dim


@dataclass(frozen=True)
class AlmostContactSymplecticStructure:
    csp: ContactSymplecticPair
    psi: Endomorphism

    @property
    def algebra(self) -> LieAlgebra:
        return self.csp.algebra


# --------------------------------------------------------------------------
# helpers


def _contraction_rows(omega: AltForm) -> list[list[Fraction]]:
    """Rows whose kernel is ``{X : i_X omega = 0}`` for a 2-form."""
    return omega.matrix()


def kernel(rows: Sequence[Sequence[Fraction]], n: int) -> tuple[Vector, ...]:
    return tuple(Vector(v) for v in linalg.nullspace([list(r) for r in rows], n))


def span_rank(vectors: Sequence[Vector]) -> int:
    return linalg.rank([v.coeffs for v in vectors]) if vectors else 0


def in_span(vectors: Sequence[Vector], v: Vector) -> bool:
    return linalg.in_span([u.coeffs for u in vectors], v.coeffs)


def _max_power(a: AltForm, da: AltForm, limit: int) -> int:
    """Largest ``m <= limit`` with ``a ^ da^m != 0`` (``a`` itself nonzero)."""
    m = 0
    p = a
    while m < limit:
        p = wedge(p, da)
        if p.is_zero():
            break
        m += 1
    return m


def _rank_half(omega: AltForm) -> int:
    """Largest ``m`` with ``omega^m != 0``."""
    m = 0
    p = AltForm.constant(omega.dim)
    while True:
        p = wedge(p, omega)
        if p.is_zero():
            return m
        m += 1


# --------------------------------------------------------------------------
# contact pairs


def classify_contact_pair(L: LieAlgebra, a1: AltForm, a2: AltForm) -> tuple[int, int]:
    """Type ``(h, k)`` of the contact pair ``(a1, a2)``; raises :class:`NotAPair`."""
    n = L.dim
    for a in (a1, a2):
        if a.degree != 1 or a.dim != n:
            raise ValueError("contact pair forms must be 1-forms on the algebra")
    if n % 2:
        raise NotAPair("odd dimension")
    if a1.is_zero() or a2.is_zero():
        raise NotAPair("volume form vanishes")
    da1 = exterior_derivative(L, a1)
    da2 = exterior_derivative(L, a2)
    h = _max_power(a1, da1, n // 2)
    k = _max_power(a2, da2, n // 2)
    if 2 * h + 2 * k + 2 < n:
        raise NotAPair("volume form vanishes")
    if 2 * h + 2 * k + 2 > n:
        raise NotAPair(f"rank conditions inconsistent (classes {2 * h + 1} and {2 * k + 1} in dim {n})")
    vol = wedge(wedge(wedge(a1, form_power(da1, h)), a2), form_power(da2, k))
    if not is_volume_form(vol):
        raise NotAPair("volume form vanishes")
    if not form_power(da1, h + 1).is_zero():
        raise NotAPair(f"(d alpha1)^{h + 1} does not vanish")
    if not form_power(da2, k + 1).is_zero():
        raise NotAPair(f"(d alpha2)^{k + 1} does not vanish")
    return h, k


def reeb_pair(L: LieAlgebra, a1: AltForm, a2: AltForm, h: int | None = None,
              k: int | None = None) -> tuple[Vector, Vector]:
    """Solve ``a_i(Z_j) = delta_ij``, ``i_{Z_j} d a_i = 0`` exactly.

    The unknowns are the ``2n`` coordinates of ``(Z1, Z2)``; the solution
    must be unique.  ``h`` and ``k`` are accepted for signature
    compatibility and are not needed by the solve.
    """
    n = L.dim
    w1, w2 = a1.as_vector(), a2.as_vector()
    M1 = exterior_derivative(L, a1).matrix()
    M2 = exterior_derivative(L, a2).matrix()
    zero = [Fraction(0)] * n
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for block in (0, 1):
        for i, w in enumerate((w1, w2)):
            left = list(w.coeffs) if block == 0 else zero
            right = zero if block == 0 else list(w.coeffs)
            rows.append(left + right)
            rhs.append(Fraction(int(i == block)))
        for M in (M1, M2):
            for m in range(n):
                col = [M[l][m] for l in range(n)]
                rows.append(col + zero if block == 0 else zero + col)
                rhs.append(Fraction(0))
    try:
        x = linalg.solve(rows, rhs, 2 * n)
    except linalg.LinearAlgebraError as exc:
        raise InconsistentPair(f"Reeb system has no unique solution: {exc}") from exc
    Z1, Z2 = Vector(x[:n]), Vector(x[n:])
    if not bracket(L, Z1, Z2).is_zero():
        raise InconsistentPair("Reeb vector fields do not commute")
    return Z1, Z2


def contact_pair(L: LieAlgebra, a1: AltForm, a2: AltForm) -> ContactPair:
    h, k = classify_contact_pair(L, a1, a2)
    Z1, Z2 = reeb_pair(L, a1, a2, h, k)
    return ContactPair(L, a1, a2, h, k, Z1, Z2)


def reeb_identities(P: ContactPair) -> VerificationReport:
    """All six Reeb identities plus ``[Z1, Z2] = 0``."""
    L = P.algebra
    checks = [
        ("alpha1(Z1) = 1", P.alpha1(P.Z1) == 1),
        ("alpha2(Z2) = 1", P.alpha2(P.Z2) == 1),
        ("alpha1(Z2) = 0", P.alpha1(P.Z2) == 0),
        ("alpha2(Z1) = 0", P.alpha2(P.Z1) == 0),
    ]
    for zname, Z in (("Z1", P.Z1), ("Z2", P.Z2)):
        for aname, da in (("d alpha1", P.d_alpha1), ("d alpha2", P.d_alpha2)):
            checks.append((f"i_{zname} {aname} = 0", interior_product(Z, da).is_zero()))
    checks.append(("[Z1, Z2] = 0", bracket(L, P.Z1, P.Z2).is_zero()))
    for name, ok in checks:
        if not ok:
            return VerificationReport.fail("reeb", reason=f"violated: {name}")
    return VerificationReport.ok("reeb")


def splitting_bases(P: ContactPair) -> SplittingBases:
    """``TG_i = ker d alpha_i ∩ ker alpha_1 ∩ ker alpha_2`` and ``TF_i`` from them."""
    n = P.dim
    w1, w2 = list(P.alpha1.as_vector()), list(P.alpha2.as_vector())
    TG1 = kernel(_contraction_rows(P.d_alpha1) + [w1, w2], n)
    TG2 = kernel(_contraction_rows(P.d_alpha2) + [w1, w2], n)
    if len(TG1) != 2 * P.k or len(TG2) != 2 * P.h:
        raise InconsistentPair(
            f"splitting dimensions ({len(TG1)}, {len(TG2)}) do not match type ({P.h}, {P.k})")
    TF1 = TG1 + (P.Z2,)
    TF2 = TG2 + (P.Z1,)
    if span_rank(TF1 + TF2) != n:
        raise InconsistentPair("TF1 and TF2 do not span the algebra")
    for name, TF in (("TF1", TF1), ("TF2", TF2)):
        for u, v in combinations(TF, 2):
            if not in_span(TF, bracket(P.algebra, u, v)):
                raise InconsistentPair(f"{name} is not closed under the bracket")
    return SplittingBases(TF1, TF2, TG1, TG2, P.Z1, P.Z2)


# --------------------------------------------------------------------------
# symplectic and contact-symplectic pairs


def classify_symplectic_pair(L: LieAlgebra, w1: AltForm, w2: AltForm) -> tuple[int, int]:
    n = L.dim
    for w in (w1, w2):
        if w.degree != 2 or w.dim != n:
            raise ValueError("symplectic pair forms must be 2-forms on the algebra")
        if not exterior_derivative(L, w).is_zero():
            raise NotAPair("form is not closed")
    if n % 2:
        raise NotAPair("odd dimension")
    h, k = _rank_half(w1), _rank_half(w2)
    if h == 0 or k == 0:
        raise NotAPair("volume form vanishes")
    if 2 * h + 2 * k != n:
        raise NotAPair(f"rank conditions inconsistent (ranks {2 * h} and {2 * k} in dim {n})")
    if not is_volume_form(wedge(form_power(w1, h), form_power(w2, k))):
        raise NotAPair("volume form vanishes")
    return h, k


def reeb_vector(L: LieAlgebra, beta: AltForm, *two_forms: AltForm) -> Vector:
    """Unique ``W`` with ``beta(W) = 1`` and ``i_W omega = 0`` for each given 2-form.

    With no 2-forms given, ``d beta`` is used (Reeb field of a contact form).
    """
    n = L.dim
    if not two_forms:
        two_forms = (exterior_derivative(L, beta),)
    rows = [list(beta.as_vector())]
    rhs = [Fraction(1)]
    for om in two_forms:
        rows.extend(om.matrix())
        rhs.extend([Fraction(0)] * n)
    try:
        return Vector(linalg.solve(rows, rhs, n))
    except linalg.LinearAlgebraError as exc:
        raise InconsistentPair(f"Reeb system has no unique solution: {exc}") from exc


def classify_contact_symplectic(L: LieAlgebra, b: AltForm, e: AltForm) -> ContactSymplecticPair:
    n = L.dim
    if b.degree != 1 or e.degree != 2 or b.dim != n or e.dim != n:
        raise ValueError("expected a 1-form and a 2-form on the algebra")
    if not exterior_derivative(L, e).is_zero():
        raise NotAPair("eta is not closed")
    if n % 2 == 0:
        raise NotAPair("even dimension")
    if b.is_zero():
        raise NotAPair("volume form vanishes")
    db = exterior_derivative(L, b)
    h = _max_power(b, db, n // 2)
    k = _rank_half(e)
    if 2 * h + 2 * k + 1 < n:
        raise NotAPair("volume form vanishes")
    if 2 * h + 2 * k + 1 > n:
        raise NotAPair(f"rank conditions inconsistent (class {2 * h + 1}, rank {2 * k} in dim {n})")
    if not is_volume_form(wedge(wedge(b, form_power(db, h)), form_power(e, k))):
        raise NotAPair("volume form vanishes")
    if not form_power(db, h + 1).is_zero():
        raise NotAPair(f"(d beta)^{h + 1} does not vanish")
    W = reeb_vector(L, b, db, e)
    wb = list(b.as_vector())
    TH = kernel(e.matrix() + [wb], n)
    TF2cs = kernel(db.matrix() + [wb], n)
    if len(TH) != 2 * h or len(TF2cs) != 2 * k:
        raise InconsistentPair("splitting dimensions do not match the type")
    if span_rank((W,) + TH + TF2cs) != n:
        raise InconsistentPair("W, TH and TF2 do not span the algebra")
    return ContactSymplecticPair(L, b, e, h, k, W, TH, TF2cs)


# --------------------------------------------------------------------------
# structure tensors


def verify_cps(P: ContactPair, phi: Endomorphism) -> VerificationReport:
    """``phi^2 = -Id + a1 (x) Z1 + a2 (x) Z2``, ``phi Z_i = 0``, ``a_i o phi = 0``, rank n-2."""
    n = P.dim
    name = "contact pair structure"
    if phi.dim != n:
        return VerificationReport.fail(name, reason=f"phi has dim {phi.dim}, algebra {n}")
    phi2 = phi @ phi
    for j in range(n):
        e = P.algebra.basis(j)
        res = phi2(e) + e - P.alpha1(e) * P.Z1 - P.alpha2(e) * P.Z2
        if not res.is_zero():
            return VerificationReport.fail(name, (j,), res, "phi^2 = -Id + alpha1 (x) Z1 + alpha2 (x) Z2")
    for zname, Z in (("Z1", P.Z1), ("Z2", P.Z2)):
        if not phi(Z).is_zero():
            return VerificationReport.fail(name, None, phi(Z), f"phi({zname}) = 0")
    for aname, a in (("alpha1", P.alpha1), ("alpha2", P.alpha2)):
        for j in range(n):
            v = a(phi.column(j))
            if v:
                return VerificationReport.fail(name, (j,), v, f"{aname} o phi = 0")
    r = phi.rank()
    if r != n - 2:
        return VerificationReport.fail(name, None, r, f"rank phi = {r}, expected {n - 2}")
    return VerificationReport.ok(name)


def is_decomposable(P: ContactPair, phi: Endomorphism, S: SplittingBases) -> VerificationReport:
    """``phi(TF_i) ⊂ TF_i``; witness is ``(i, position in the TF_i basis)``."""
    for i, TF in ((1, S.TF1), (2, S.TF2)):
        for pos, b in enumerate(TF):
            img = phi(b)
            if not in_span(TF, img):
                return VerificationReport.fail("decomposable", (i, pos), img,
                                               f"phi does not preserve TF{i}")
    return VerificationReport.ok("decomposable")


def darboux_basis(omega: AltForm, vectors: Sequence[Vector]) -> list[tuple[Vector, Vector]]:
    """Symplectic Gram-Schmidt: pairs ``(u, v)`` with ``omega(u, v) = 1``.

    Deterministic given the order of ``vectors``; raises if ``omega`` is
    degenerate on their span.
    """
    rest = [v for v in vectors]
    pairs = []
    while rest:
        u = rest.pop(0)
        idx = next((i for i, w in enumerate(rest) if omega(u, w) != 0), None)
        if idx is None:
            raise InconsistentPair("2-form is degenerate on the given subspace")
        v = rest.pop(idx)
        v = v * (1 / omega(u, v))
        rest = [w - omega(w, v) * u + omega(w, u) * v for w in rest]
        pairs.append((u, v))
    return pairs


def random_symplectic_change(pairs: list[tuple[Vector, Vector]], rng: random.Random,
                             steps: int = 4) -> list[tuple[Vector, Vector]]:
    """Apply random rational symplectic transvections to a Darboux basis.

    Each step is one of ``u_i += t v_i``, ``v_i += t u_i`` or, for two
    planes, ``u_i += t u_j, v_j -= t v_i``; each preserves the pairing.
    """
    us = [p[0] for p in pairs]
    vs = [p[1] for p in pairs]
    m = len(pairs)
    for _ in range(steps):
        t = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if not t:
            continue
        kind = rng.randrange(3 if m > 1 else 2)
        i = rng.randrange(m)
        if kind == 0:
            us[i] = us[i] + t * vs[i]
        elif kind == 1:
            vs[i] = vs[i] + t * us[i]
        else:
            j = rng.choice([x for x in range(m) if x != i])
            us[i] = us[i] + t * us[j]
            vs[j] = vs[j] - t * vs[i]
    return list(zip(us, vs))


def _rotation(n: int, planes: list[tuple[Vector, Vector]], kernel_vectors: Sequence[Vector]) -> Endomorphism:
    """Endomorphism with ``u -> v``, ``v -> -u`` on each plane and 0 on ``kernel_vectors``."""
    src, dst = [], []
    for u, v in planes:
        src += [u, v]
        dst += [v, -u]
    for z in kernel_vectors:
        src.append(z)
        dst.append(Vector.zero(n))
    B = Endomorphism.from_columns(src)
    img = Endomorphism.from_columns(dst)
    return img @ B.inverse()


def construct_decomposable_phi(P: ContactPair, S: SplittingBases,
                               rng: random.Random | None = None) -> Endomorphism:
    """Decomposable ``phi`` from Darboux bases of ``d alpha1 | TG2`` and ``d alpha2 | TG1``.

    With ``rng`` the Darboux bases are first moved by a random exact
    symplectic change, which gives other valid decomposable tensors.
    """
    planes2 = darboux_basis(P.d_alpha1, S.TG2)
    planes1 = darboux_basis(P.d_alpha2, S.TG1)
    if rng is not None:
        if planes2:
            planes2 = random_symplectic_change(planes2, rng)
        if planes1:
            planes1 = random_symplectic_change(planes1, rng)
    return _rotation(P.dim, planes1 + planes2, (P.Z1, P.Z2))


def construct_decomposable_psi(C: ContactSymplecticPair,
                               rng: random.Random | None = None) -> Endomorphism:
    """Decomposable ``psi`` rotating Darboux planes of ``d beta | TH`` and ``eta | TF2``."""
    planes_h = darboux_basis(C.d_beta, C.TH)
    planes_f = darboux_basis(C.eta, C.TF2cs)
    if rng is not None:
        if planes_h:
            planes_h = random_symplectic_change(planes_h, rng)
        if planes_f:
            planes_f = random_symplectic_change(planes_f, rng)
    return _rotation(C.dim, planes_h + planes_f, (C.W,))


def verify_acss(C: ContactSymplecticPair, psi: Endomorphism,
                check_decomposable: bool = False) -> VerificationReport:
    """``psi^2 = -Id + beta (x) W`` and ``psi W = 0``; optionally ``psi(TH) = TH``, ``psi(TF2) = TF2``."""
    n = C.dim
    name = "almost contact-symplectic structure"
    if psi.dim != n:
        return VerificationReport.fail(name, reason=f"psi has dim {psi.dim}, algebra {n}")
    psi2 = psi @ psi
    for j in range(n):
        e = C.algebra.basis(j)
        res = psi2(e) + e - C.beta(e) * C.W
        if not res.is_zero():
            return VerificationReport.fail(name, (j,), res, "psi^2 = -Id + beta (x) W")
    if not psi(C.W).is_zero():
        return VerificationReport.fail(name, None, psi(C.W), "psi(W) = 0")
    if check_decomposable:
        rep = psi_decomposable(C, psi)
        if not rep:
            return VerificationReport.fail(name, rep.witness, rep.residual, rep.reason)
    return VerificationReport.ok(name)


def psi_decomposable(C: ContactSymplecticPair, psi: Endomorphism) -> VerificationReport:
    for label, V in (("TH", C.TH), ("TF2", C.TF2cs)):
        for pos, b in enumerate(V):
            if not in_span(V, psi(b)):
                return VerificationReport.fail("psi decomposable", (pos,), psi(b),
                                               f"psi does not preserve {label}")
    return VerificationReport.ok("psi decomposable")


def almost_contact_identities(L: LieAlgebra, alpha: AltForm, Z: Vector,
                              phi: Endomorphism) -> VerificationReport:
    """``alpha(Z) = 1``, ``phi^2 = -Id + alpha (x) Z``, ``phi Z = 0``."""
    name = "almost contact structure"
    if alpha(Z) != 1:
        return VerificationReport.fail(name, None, alpha(Z), "alpha(Z) = 1")
    phi2 = phi @ phi
    for j in range(L.dim):
        e = L.basis(j)
        res = phi2(e) + e - alpha(e) * Z
        if not res.is_zero():
            return VerificationReport.fail(name, (j,), res, "phi^2 = -Id + alpha (x) Z")
    if not phi(Z).is_zero():
        return VerificationReport.fail(name, None, phi(Z), "phi(Z) = 0")
    return VerificationReport.ok(name)


__all__ = [
    "NotAPair", "InconsistentPair", "ContactPair", "SplittingBases", "ContactSymplecticPair",
    "ContactPairStructure", "AlmostContactSymplecticStructure", "classify_contact_pair",
    "reeb_pair", "contact_pair", "reeb_identities", "splitting_bases", "classify_symplectic_pair",
    "reeb_vector", "classify_contact_symplectic", "verify_cps", "is_decomposable", "darboux_basis",
    "random_symplectic_change", "construct_decomposable_phi", "construct_decomposable_psi",
    "verify_acss", "psi_decomposable", "almost_contact_identities", "kernel", "span_rank", "in_span",
]
