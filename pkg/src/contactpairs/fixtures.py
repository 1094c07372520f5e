"""Named example structures with their expected verdicts.

Indices in the structure equations below are 1-based as in the usual
notation ``d w_t = w_i ^ w_j``; the encodings use 0-based indices.

``heisenberg3`` encoding: the contact form ``dz - x dy`` on R^3 is
left-invariant for the group law whose invariant frame is
``e1 = d/dx``, ``e2 = d/dy + x d/dz``, ``e3 = d/dz``; then
``[e1, e2] = e3`` and ``d w^3 = -w^1 ^ w^2`` with ``d w(X, Y) = -w([X, Y])``.
The tensor sends ``d/dx`` to ``-(d/dy + x d/dz)``, i.e. ``e1 -> -e2``,
``e2 -> e1``, ``e3 -> 0``.  With this orientation the almost contact
structure is normal, which fixes the remaining sign freedom.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable

from .exterior import (
    AltForm,
    Endomorphism,
    LieAlgebra,
    Vector,
    VerificationReport,
    exterior_derivative,
    jacobi_check,
)
from .normality import almost_contact_normality, normality_report
from .pairs import (
    AlmostContactSymplecticStructure,
    ContactPairStructure,
    classify_contact_pair,
    classify_contact_symplectic,
    construct_decomposable_phi,
    construct_decomposable_psi,
    contact_pair,
    is_decomposable,
    splitting_bases,
    verify_acss,
    verify_cps,
)

NILPOTENT6_SAMPLE_SEED = 20240611
NILPOTENT6_SAMPLES = 12


@dataclass(frozen=True)
class Expectation:
    predicate: str
    expected: object


@dataclass(frozen=True)
class Fixture:
    """``kind`` is ``"pair"`` (forms alpha1, alpha2; tensor phi),
    ``"almost-contact"`` (alpha, Z, phi) or ``"acss"`` (beta, eta, psi)."""

    name: str
    kind: str
    algebra: LieAlgebra
    forms: dict[str, AltForm]
    endomorphisms: dict[str, Endomorphism] = field(default_factory=dict)
    vectors: dict[str, Vector] = field(default_factory=dict)
    expectations: tuple[Expectation, ...] = ()
    structure_equations: dict[int, list[tuple[int, int, int]]] | None = None
    description: str = ""


class UnknownFixture(KeyError):
    pass


# --------------------------------------------------------------------------
# algebras


def heisenberg_algebra() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1)})


def sl2_algebra() -> LieAlgebra:
    """``[e1, e2] = e3``, ``[e3, e1] = 2 e1``, ``[e3, e2] = -2 e2``."""
    return LieAlgebra.from_brackets(3, {(0, 1): (0, 0, 1), (0, 2): (-2, 0, 0), (1, 2): (0, 2, 0)})


def endo(n: int, images: dict[int, tuple[int, int]]) -> Endomorphism:
    """Endomorphism from ``{j: (i, s)}`` meaning ``e_j -> s e_i``; unlisted columns are 0."""
    return Endomorphism.from_images(n, {j: Vector.basis(n, i) * s for j, (i, s) in images.items()})


def heisenberg_phi() -> Endomorphism:
    return endo(3, {0: (1, -1), 1: (0, 1)})


SOLVABLE6_EQUATIONS = {1: [(4, 5, 1)], 2: [(0, 3, 1)], 3: [(0, 4, 1)], 4: [(0, 5, 1)]}
NILPOTENT6_EQUATIONS = {3: [(0, 1, 1)], 4: [(0, 2, 1)], 5: [(1, 3, 1)]}
NIL4_EQUATIONS = {1: [(0, 3, 1)], 2: [(1, 3, 1)]}
HEISENBERG_EQUATIONS = {2: [(0, 1, -1)]}


def _pair_expectations(**flags) -> tuple[Expectation, ...]:
    return tuple(Expectation(k, v) for k, v in flags.items())


def _solvable6() -> Fixture:
    L = LieAlgebra.from_structure_equations(6, SOLVABLE6_EQUATIONS)
    phi = endo(6, {4: (5, 1), 5: (4, -1), 0: (3, 1), 3: (0, -1)})
    return Fixture(
        "solvable6", "pair", L,
        {"alpha1": AltForm.covector(6, 1), "alpha2": AltForm.covector(6, 2)},
        {"phi": phi},
        expectations=(
            Expectation("jacobi", True),
            Expectation("structure_roundtrip", True),
            Expectation("type", (1, 1)),
            Expectation("reeb", (Vector.basis(6, 1), Vector.basis(6, 2))),
            Expectation("verify_cps", True),
            *_pair_expectations(decomposable=True, LZ1_phi_zero=True, LZ2_phi_zero=True,
                                induced1_normal=True, induced2_normal=True, eq9_holds=True,
                                eq10_holds=True, eq11_holds=False, J_integrable=False,
                                T_integrable=False, normality_tensor_zero=False,
                                pair_normal=False),
        ),
        structure_equations=SOLVABLE6_EQUATIONS,
        description="solvable 6-dim algebra; decomposable structure with normal leaves, not normal",
    )


def _nilpotent6() -> Fixture:
    L = LieAlgebra.from_structure_equations(6, NILPOTENT6_EQUATIONS)
    a1, a2 = AltForm.covector(6, 4), AltForm.covector(6, 5)
    P = contact_pair(L, a1, a2)
    phi = construct_decomposable_phi(P, splitting_bases(P))
    return Fixture(
        "nilpotent6", "pair", L, {"alpha1": a1, "alpha2": a2}, {"phi": phi},
        expectations=(
            Expectation("jacobi", True),
            Expectation("structure_roundtrip", True),
            Expectation("type", (1, 1)),
            Expectation("verify_cps", True),
            *_pair_expectations(decomposable=True, eq9_holds=True, eq10_holds=True,
                                eq11_holds=False, pair_normal=False),
            Expectation("sampled_split", (NILPOTENT6_SAMPLES, True, True, False)),
        ),
        structure_equations=NILPOTENT6_EQUATIONS,
        description="nilpotent 6-dim algebra; every sampled decomposable structure fails eq11",
    )


def _nil4() -> Fixture:
    L = LieAlgebra.from_structure_equations(4, NIL4_EQUATIONS)
    a1, a2 = AltForm.covector(4, 2), AltForm.covector(4, 0)
    P = contact_pair(L, a1, a2)
    phi = construct_decomposable_phi(P, splitting_bases(P))
    return Fixture(
        "nil4", "pair", L, {"alpha1": a1, "alpha2": a2}, {"phi": phi},
        expectations=(
            Expectation("jacobi", True),
            Expectation("structure_roundtrip", True),
            Expectation("type", (1, 0)),
            Expectation("verify_cps", True),
            Expectation("decomposable", True),
            Expectation("pair_normal", False),
            Expectation("sampled_decomposable", 10),
        ),
        structure_equations=NIL4_EQUATIONS,
        description="4-dim filiform nilpotent algebra; type (1,0) pair, never normal",
    )


def _heisenberg3() -> Fixture:
    L = heisenberg_algebra()
    return Fixture(
        "heisenberg3", "almost-contact", L,
        {"alpha": AltForm.covector(3, 2)}, {"phi": heisenberg_phi()}, {"Z": Vector.basis(3, 2)},
        expectations=(
            Expectation("jacobi", True),
            Expectation("structure_roundtrip", True),
            Expectation("almost_contact_normal", True),
        ),
        structure_equations=HEISENBERG_EQUATIONS,
        description="Heisenberg algebra with its standard normal almost contact structure",
    )


def _flat3() -> Fixture:
    L = LieAlgebra.abelian(3)
    beta, eta = AltForm.covector(3, 2), AltForm(3, 2, {(0, 1): 1})
    psi = construct_decomposable_psi(classify_contact_symplectic(L, beta, eta))
    return Fixture(
        "flat3", "acss", L, {"beta": beta, "eta": eta}, {"psi": psi},
        expectations=(
            Expectation("jacobi", True),
            Expectation("structure_roundtrip", True),
            Expectation("acss_valid", True),
            Expectation("almost_contact_normal", True),
            Expectation("eta_invariant", True),
            Expectation("extension_type", (1, 0)),
            Expectation("extension_normal", True),
        ),
        structure_equations={},
        description="abelian R^3 with beta = e^3, eta = e^1 ^ e^2 and a rotation",
    )


def _heisHeis() -> Fixture:
    from .constructions import AlmostContact, ProductSpec, direct_sum

    H = AlmostContact(heisenberg_algebra(), AltForm.covector(3, 2), Vector.basis(3, 2), heisenberg_phi())
    S = direct_sum(ProductSpec(H, H))
    return Fixture(
        "heisHeis", "pair", S.algebra,
        {"alpha1": S.pair.alpha1, "alpha2": S.pair.alpha2}, {"phi": S.phi},
        expectations=(
            Expectation("jacobi", True),
            Expectation("structure_roundtrip", True),
            Expectation("type", (1, 1)),
            Expectation("verify_cps", True),
            *_pair_expectations(decomposable=True, eq9_holds=True, eq10_holds=True,
                                eq11_holds=True, pair_normal=True),
        ),
        structure_equations={2: [(0, 1, -1)], 5: [(3, 4, -1)]},
        description="product of two Heisenberg factors with the product structure",
    )


_BUILDERS: dict[str, Callable[[], Fixture]] = {
    "solvable6": _solvable6,
    "nilpotent6": _nilpotent6,
    "nil4": _nil4,
    "heisenberg3": _heisenberg3,
    "flat3": _flat3,
    "heisHeis": _heisHeis,
}

FIXTURE_NAMES = tuple(_BUILDERS)


def load_fixture(name: str) -> Fixture:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None


# --------------------------------------------------------------------------
# evaluation


def pair_structure(F: Fixture) -> ContactPairStructure:
    P = contact_pair(F.algebra, F.forms["alpha1"], F.forms["alpha2"])
    return ContactPairStructure(P, F.endomorphisms["phi"])


def acss(F: Fixture) -> AlmostContactSymplecticStructure:
    C = classify_contact_symplectic(F.algebra, F.forms["beta"], F.forms["eta"])
    return AlmostContactSymplecticStructure(C, F.endomorphisms["psi"])


def nilpotent6_samples(F: Fixture, count: int = NILPOTENT6_SAMPLES,
                       seed: int = NILPOTENT6_SAMPLE_SEED) -> list[ContactPairStructure]:
    """Distinct decomposable structures: Darboux rotations after random symplectic changes."""
    P = contact_pair(F.algebra, F.forms["alpha1"], F.forms["alpha2"])
    B = splitting_bases(P)
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        phi = construct_decomposable_phi(P, B, rng)
        if phi.matrix not in seen:
            seen.add(phi.matrix)
            out.append(ContactPairStructure(P, phi))
    return out


def _roundtrip(F: Fixture) -> bool:
    L = F.algebra
    if F.structure_equations is None:
        return True
    rebuilt = LieAlgebra.from_structure_equations(L.dim, F.structure_equations)
    if rebuilt != L:
        return False
    for t in range(L.dim):
        expected = AltForm.from_unsorted(L.dim, 2, [((i, j), c) for i, j, c in F.structure_equations.get(t, [])])
        if exterior_derivative(L, AltForm.covector(L.dim, t)) != expected:
            return False
    return True


def evaluate(F: Fixture, predicate: str):
    """Actual value of one predicate on the fixture."""
    if predicate == "jacobi":
        return jacobi_check(F.algebra).passed
    if predicate == "structure_roundtrip":
        return _roundtrip(F)
    if F.kind == "pair":
        if predicate == "type":
            return classify_contact_pair(F.algebra, F.forms["alpha1"], F.forms["alpha2"])
        S = pair_structure(F)
        if predicate == "reeb":
            return (S.pair.Z1, S.pair.Z2)
        if predicate == "verify_cps":
            return verify_cps(S.pair, S.phi).passed
        if predicate == "sampled_split":
            samples = nilpotent6_samples(F)
            reps = [normality_report(s) for s in samples]
            return (len({s.phi.matrix for s in samples}), all(r.eq9_holds for r in reps),
                    all(r.eq10_holds for r in reps), any(r.eq11_holds for r in reps))
        if predicate == "sampled_decomposable":
            B = splitting_bases(S.pair)
            rng = random.Random(NILPOTENT6_SAMPLE_SEED)
            good = 0
            for _ in range(10):
                phi = construct_decomposable_phi(S.pair, B, rng)
                if verify_cps(S.pair, phi) and is_decomposable(S.pair, phi, B):
                    good += 1
            return good
        flags = normality_report(S).flags()
        if predicate in flags:
            return flags[predicate]
    elif F.kind == "almost-contact":
        if predicate == "almost_contact_normal":
            return almost_contact_normality(F.algebra, F.forms["alpha"], F.vectors["Z"],
                                            F.endomorphisms["phi"]).passed
    elif F.kind == "acss":
        from .constructions import boothby_wang_extend, eta_invariance

        A = acss(F)
        if predicate == "acss_valid":
            return verify_acss(A.csp, A.psi).passed
        if predicate == "almost_contact_normal":
            return almost_contact_normality(F.algebra, A.csp.beta, A.csp.W, A.psi).passed
        if predicate == "eta_invariant":
            return eta_invariance(A).passed
        if predicate in ("extension_type", "extension_normal"):
            S = boothby_wang_extend(A)
            if predicate == "extension_type":
                return (S.pair.h, S.pair.k)
            return normality_report(S).pair_normal
    raise KeyError(f"predicate {predicate!r} does not apply to fixture kind {F.kind!r}")


@dataclass(frozen=True)
class ExpectationResult:
    predicate: str
    expected: object
    actual: object
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.error and self.actual == self.expected


def expectation_results(F: Fixture) -> list[ExpectationResult]:
    out = []
    for e in F.expectations:
        try:
            out.append(ExpectationResult(e.predicate, e.expected, evaluate(F, e.predicate)))
        except Exception as exc:  # a failing operation is a failed expectation
            out.append(ExpectationResult(e.predicate, e.expected, None, f"{type(exc).__name__}: {exc}"))
    return out


def run_expectations(F: Fixture) -> VerificationReport:
    name = f"fixture {F.name}"
    for r in expectation_results(F):
        if not r.passed:
            why = r.error or f"expected {r.expected!r}, got {r.actual!r}"
            return VerificationReport.fail(name, None, r.actual, f"{r.predicate}: {why}")
    return VerificationReport.ok(name)


def corrupted(F: Fixture, i: int, j: int, k: int, delta=1) -> Fixture:
    """Copy with ``c[i][j][k]`` (and ``c[j][i][k]``) shifted by ``delta``."""
    L = F.algebra
    c = [[list(row) for row in plane] for plane in L.structure]
    c[i][j][k] += delta
    c[j][i][k] -= delta
    bad = LieAlgebra(L.dim, tuple(tuple(tuple(r) for r in plane) for plane in c))
    return replace(F, algebra=bad)


__all__ = [
    "Expectation", "Fixture", "UnknownFixture", "FIXTURE_NAMES", "load_fixture", "run_expectations",
    "expectation_results", "ExpectationResult", "evaluate", "pair_structure", "acss",
    "nilpotent6_samples", "corrupted", "heisenberg_algebra", "sl2_algebra", "heisenberg_phi", "endo",
]
