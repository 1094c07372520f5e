"""Seeded random contact pair structures over a small catalog of algebras."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .constructions import AlmostContact, ProductSpec, boothby_wang_extend, direct_sum
from .exterior import (
    AltForm,
    Endomorphism,
    LieAlgebra,
    Vector,
    change_basis_algebra,
    change_basis_endo,
    change_basis_form,
    change_basis_vector,
)
from .fixtures import heisenberg_algebra, heisenberg_phi, load_fixture, sl2_algebra
from .pairs import (
    AlmostContactSymplecticStructure,
    ContactPair,
    ContactPairStructure,
    ContactSymplecticPair,
    InconsistentPair,
    classify_contact_symplectic,
    construct_decomposable_phi,
    construct_decomposable_psi,
    contact_pair,
    kernel,
    splitting_bases,
    verify_cps,
)


def random_fraction(rng: random.Random, bound: int = 2) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 2))


def random_gl(n: int, rng: random.Random, bound: int = 2) -> Endomorphism:
    """Invertible rational matrix: permuted product of unit lower and upper triangular factors."""
    def entry(i, j, below):
        if i == j:
            return Fraction(1)
        return random_fraction(rng, bound) if (i > j) == below else Fraction(0)

    Lm = Endomorphism(tuple(tuple(entry(i, j, True) for j in range(n)) for i in range(n)))
    Um = Endomorphism(tuple(tuple(entry(i, j, False) for j in range(n)) for i in range(n)))
    perm = list(range(n))
    rng.shuffle(perm)
    Pm = Endomorphism.from_columns([Vector.basis(n, p) for p in perm])
    return Pm @ Lm @ Um


def random_basis(n: int, basis: Sequence[Vector], rng: random.Random) -> list[Vector]:
    """Another basis of the same span."""
    m = len(basis)
    if not m:
        return []
    A = random_gl(m, rng)
    return [sum((b * A.matrix[i][j] for i, b in enumerate(basis)), Vector.zero(n)) for j in range(m)]


def rotation(n: int, basis: Sequence[Vector], kernel_vectors: Sequence[Vector]) -> Endomorphism:
    """``b_{2i} -> b_{2i+1} -> -b_{2i}``, 0 on ``kernel_vectors``; together they must form a basis."""
    if len(basis) % 2:
        raise ValueError("complex structures need an even-dimensional subspace")
    src, dst = [], []
    for a in range(0, len(basis), 2):
        src += [basis[a], basis[a + 1]]
        dst += [basis[a + 1], -basis[a]]
    for z in kernel_vectors:
        src.append(z)
        dst.append(Vector.zero(n))
    return Endomorphism.from_columns(dst) @ Endomorphism.from_columns(src).inverse()


def random_decomposable_phi(P: ContactPair, rng: random.Random) -> Endomorphism:
    """Independent random complex structures on ``TG1`` and ``TG2``."""
    B = splitting_bases(P)
    n = P.dim
    return rotation(n, random_basis(n, B.TG1, rng) + random_basis(n, B.TG2, rng), (P.Z1, P.Z2))


def random_phi(P: ContactPair, rng: random.Random) -> Endomorphism:
    """Random complex structure on ``ker alpha1 ∩ ker alpha2``, 0 on the Reeb fields."""
    H = kernel([list(P.alpha1.as_vector()), list(P.alpha2.as_vector())], P.dim)
    return rotation(P.dim, random_basis(P.dim, H, rng), (P.Z1, P.Z2))


def random_psi(C: ContactSymplecticPair, rng: random.Random) -> Endomorphism:
    """Random complex structure on ``ker beta``, 0 on ``W``."""
    H = kernel([list(C.beta.as_vector())], C.dim)
    return rotation(C.dim, random_basis(C.dim, H, rng), (C.W,))


def transform_structure(S: ContactPairStructure, A: Endomorphism) -> ContactPairStructure:
    """The same structure written in the basis ``f_j = A e_j``."""
    L = change_basis_algebra(S.algebra, A)
    a1 = change_basis_form(S.pair.alpha1, A)
    a2 = change_basis_form(S.pair.alpha2, A)
    P = contact_pair(L, a1, a2)
    if P.Z1 != change_basis_vector(S.pair.Z1, A) or P.Z2 != change_basis_vector(S.pair.Z2, A):
        raise InconsistentPair("Reeb fields do not transform as vectors")
    return ContactPairStructure(P, change_basis_endo(S.phi, A))


# --------------------------------------------------------------------------
# catalog


def sl2_elliptic() -> AlmostContact:
    """sl2 with the contact form ``e^1 - e^2``; its Reeb field ``(e1 - e2)/2`` acts by rotation."""
    L = sl2_algebra()
    alpha = AltForm(3, 1, {(0,): 1, (1,): -1})
    Z = Vector((Fraction(1, 2), Fraction(-1, 2), Fraction(0)))
    u, e3 = Vector.basis(3, 0) + Vector.basis(3, 1), Vector.basis(3, 2)
    phi = Endomorphism.from_columns([e3, -u, Vector.zero(3)]) @ Endomorphism.from_columns([u, e3, Z]).inverse()
    return AlmostContact(L, alpha, Z, phi)


def sl2_elliptic_deformed() -> AlmostContact:
    """Same form and Reeb field; ``phi`` conjugated by a scaling that does not commute with ``ad Z``."""
    F = sl2_elliptic()
    u, e3 = Vector.basis(3, 0) + Vector.basis(3, 1), Vector.basis(3, 2)
    phi = (Endomorphism.from_columns([e3 * Fraction(1, 2), -u * 2, Vector.zero(3)])
           @ Endomorphism.from_columns([u, e3, F.Z]).inverse())
    return AlmostContact(F.algebra, F.alpha, F.Z, phi)


def sl2_split() -> AlmostContact:
    """sl2 with ``e^3``: Reeb field ``e3`` acts hyperbolically, so no invariant tensor is normal."""
    return AlmostContact(sl2_algebra(), AltForm.covector(3, 2), Vector.basis(3, 2), heisenberg_phi())


def heisenberg_factor() -> AlmostContact:
    return AlmostContact(heisenberg_algebra(), AltForm.covector(3, 2), Vector.basis(3, 2), heisenberg_phi())


def heisenberg5() -> LieAlgebra:
    return LieAlgebra.from_brackets(5, {(0, 1): (0, 0, 0, 0, 1), (2, 3): (0, 0, 0, 0, 1)})


def _line_factor() -> AlmostContact:
    return AlmostContact(LieAlgebra.abelian(1), AltForm.covector(1, 0), Vector.basis(1, 0),
                         Endomorphism.zero(1))


def heis_R2_base() -> ContactSymplecticPair:
    """Heisenberg + R^2 with ``beta = e^3``, ``eta = e^4 ^ e^5`` (type (1,1))."""
    H = LieAlgebra.from_brackets(5, {(0, 1): (0, 0, 1, 0, 0)})
    return classify_contact_symplectic(H, AltForm.covector(5, 2), AltForm(5, 2, {(3, 4): 1}))


def base_pairs() -> dict[str, ContactPair]:
    """Contact pairs used as seeds for the random structures."""
    out: dict[str, ContactPair] = {}
    for name in ("nil4", "solvable6", "nilpotent6", "heisHeis"):
        F = load_fixture(name)
        out[name] = contact_pair(F.algebra, F.forms["alpha1"], F.forms["alpha2"])
    line = _line_factor()
    out["heis+R"] = direct_sum(ProductSpec(heisenberg_factor(), line)).pair
    out["sl2+R"] = direct_sum(ProductSpec(sl2_split(), line)).pair
    out["sl2e+R"] = direct_sum(ProductSpec(sl2_elliptic(), line)).pair
    out["sl2xheis"] = direct_sum(ProductSpec(sl2_split(), heisenberg_factor())).pair
    out["sl2e x heis"] = direct_sum(ProductSpec(sl2_elliptic(), heisenberg_factor())).pair
    out["heis5+R"] = contact_pair(_sum_with_line(heisenberg5()), AltForm.covector(6, 4),
                                  AltForm.covector(6, 5))
    C = heis_R2_base()
    out["bw(heis+R2)"] = boothby_wang_extend(
        AlmostContactSymplecticStructure(C, construct_decomposable_psi(C))).pair
    return out


def _sum_with_line(L: LieAlgebra) -> LieAlgebra:
    n = L.dim
    return LieAlgebra.from_brackets(n + 1, {(i, j): tuple(L.basis_bracket(i, j).coeffs) + (0,)
                                            for i in range(n) for j in range(i + 1, n)})


@dataclass(frozen=True)
class Sample:
    label: str
    base: str
    phi_kind: str
    structure: ContactPairStructure


PHI_KINDS = ("darboux", "decomposable", "generic")


def make_phi(P: ContactPair, kind: str, rng: random.Random) -> Endomorphism:
    if kind == "darboux":
        return construct_decomposable_phi(P, splitting_bases(P), rng)
    if kind == "decomposable":
        return random_decomposable_phi(P, rng)
    if kind == "generic":
        return random_phi(P, rng)
    raise ValueError(f"unknown phi kind {kind!r}")


def random_structures(seed: int, count: int = 20, change_basis: bool = True) -> list[Sample]:
    """``count`` valid structures cycling through the catalog and the three ``phi`` kinds.

    Every third sample is additionally written in a random basis.
    """
    rng = random.Random(seed)
    bases = base_pairs()
    names = sorted(bases)
    out = []
    for i in range(count):
        name = names[i % len(names)]
        kind = PHI_KINDS[(i // len(names) + i) % len(PHI_KINDS)]
        P = bases[name]
        S = ContactPairStructure(P, make_phi(P, kind, rng))
        if change_basis and i % 3 == 2:
            S = transform_structure(S, random_gl(P.dim, rng, 1))
        rep = verify_cps(S.pair, S.phi)
        if not rep:
            raise InconsistentPair(f"sample {i} is not a contact pair structure: {rep.reason}")
        out.append(Sample(f"{i:02d}:{name}:{kind}", name, kind, S))
    return out


__all__ = [
    "random_fraction", "random_gl", "random_basis", "rotation", "random_decomposable_phi", "random_phi",
    "random_psi", "transform_structure", "sl2_elliptic", "sl2_elliptic_deformed", "sl2_split",
    "heisenberg_factor", "heisenberg5", "heis_R2_base", "base_pairs", "Sample", "PHI_KINDS",
    "make_phi", "random_structures",
]
