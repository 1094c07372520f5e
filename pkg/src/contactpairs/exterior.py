"""Exact exterior calculus for left-invariant objects on a Lie algebra.

Everything is expressed in a fixed basis ``e_0, ..., e_{n-1}`` with dual
basis ``e^0, ..., e^{n-1}``.  Conventions:

* forms are alternating multilinear maps, and ``e^I`` evaluated on
  ``(e_{I_0}, ..., e_{I_{k-1}})`` is 1 (determinant convention, no ``1/k!``);
* for an invariant 1-form, ``d w(X, Y) = -w([X, Y])``;
* ``[f, f](X, Y) = f^2[X, Y] + [fX, fY] - f[fX, Y] - f[X, fY]``.

All values are immutable; every operation returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import linalg

Scalar = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 if an entry repeats)."""
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


# --------------------------------------------------------------------------
# vectors and reports


@dataclass(frozen=True)
class Vector:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @classmethod
    def zero(cls, n: int) -> Vector:
        return cls((Fraction(0),) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> Vector:
        return cls(tuple(Fraction(int(j == i)) for j in range(n)))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def _check(self, other: Vector) -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Vector) -> Vector:
        self._check(other)
        return Vector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> Vector:
        return Vector(tuple(-a for a in self.coeffs))

    def __mul__(self, s) -> Vector:
        s = _frac(s)
        return Vector(tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def __repr__(self) -> str:
        return "Vector(" + ", ".join(str(c) for c in self.coeffs) + ")"


def vector(*coeffs) -> Vector:
    return Vector(tuple(coeffs))


def combination(coeffs: Sequence, vectors: Sequence[Vector]) -> Vector:
    n = vectors[0].dim
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v.coeffs):
                if x:
                    out[i] += c * x
    return Vector(tuple(out))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a check.

    ``witness`` holds basis indices (0-based) where the check failed and
    ``residual`` the offending value (a Vector or a scalar).
    """

    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    residual: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, name: str) -> VerificationReport:
        return cls(name, True)

    @classmethod
    def fail(cls, name: str, witness=None, residual=None, reason: str = "") -> VerificationReport:
        return cls(name, False, None if witness is None else tuple(witness), residual, reason)


# --------------------------------------------------------------------------
# Lie algebras


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants ``[e_i, e_j] = sum_k c[i][j][k] e_k``."""

    dim: int
    structure: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        n = self.dim
        if n <= 0:
            raise ValueError("dimension must be positive")
        c = tuple(tuple(tuple(_frac(x) for x in row) for row in plane) for plane in self.structure)
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise ValueError(f"structure constants must have shape ({n}, {n}, {n})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        raise ValueError(
                            f"structure constants not antisymmetric at (i, j, k) = ({i}, {j}, {k})")
        object.__setattr__(self, "structure", c)

    @classmethod
    def abelian(cls, n: int) -> LieAlgebra:
        z = Fraction(0)
        return cls(n, tuple(tuple((z,) * n for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_brackets(cls, n: int, brackets: Mapping[tuple[int, int], Sequence]) -> LieAlgebra:
        """Build from ``{(i, j): coefficients of [e_i, e_j]}`` (0-based, i != j)."""
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vals in brackets.items():
            if i == j:
                raise ValueError(f"[e_{i}, e_{i}] must vanish")
            vals = vals.coeffs if isinstance(vals, Vector) else vals
            for k, v in enumerate(vals):
                c[i][j][k] += _frac(v)
                c[j][i][k] -= _frac(v)
        return cls(n, tuple(tuple(tuple(r) for r in p) for p in c))

    @classmethod
    def from_structure_equations(cls, n: int,
                                 equations: Mapping[int, Iterable[tuple[int, int, object]]]) -> LieAlgebra:
        """Build from ``d e^t = sum coeff * e^i ^ e^j`` (0-based indices).

        With ``d w(X, Y) = -w([X, Y])`` each term contributes
        ``[e_i, e_j] = -coeff * e_t``.
        """
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for t, terms in equations.items():
            if not 0 <= t < n:
                raise ValueError(f"target index {t} out of range for dim {n}")
            for i, j, coeff in terms:
                coeff = _frac(coeff)
                if not (0 <= i < n and 0 <= j < n):
                    raise ValueError(f"term ({i}, {j}) out of range for dim {n}")
                if i == j:
                    if coeff:
                        raise ValueError(f"term e^{i} ^ e^{i} breaks antisymmetry")
                    continue
                c[i][j][t] -= coeff
                c[j][i][t] += coeff
        return cls(n, tuple(tuple(tuple(r) for r in p) for p in c))

    def structure_equations(self) -> dict[int, AltForm]:
        """``{t: d e^t}`` for every basis covector."""
        return {t: exterior_derivative(self, AltForm.covector(self.dim, t)) for t in range(self.dim)}

    def basis(self, i: int) -> Vector:
        return Vector.basis(self.dim, i)

    def basis_bracket(self, i: int, j: int) -> Vector:
        return Vector(self.structure[i][j])

    def ad_matrix(self, i: int) -> tuple[tuple[Fraction, ...], ...]:
        """Matrix of ``ad(e_i)`` (column j = [e_i, e_j])."""
        n = self.dim
        return tuple(tuple(self.structure[i][j][k] for j in range(n)) for k in range(n))


def bracket(L: LieAlgebra, X: Vector, Y: Vector) -> Vector:
    n = L.dim
    if X.dim != n or Y.dim != n:
        raise ValueError(f"dimension mismatch: algebra has dim {n}, got {X.dim} and {Y.dim}")
    out = [Fraction(0)] * n
    c = L.structure
    for i, x in enumerate(X.coeffs):
        if not x:
            continue
        for j, y in enumerate(Y.coeffs):
            if not y or i == j:
                continue
            xy = x * y
            cij = c[i][j]
            for k in range(n):
                if cij[k]:
                    out[k] += xy * cij[k]
    return Vector(tuple(out))


def jacobi_check(L: LieAlgebra) -> VerificationReport:
    """Jacobi identity on every basis triple ``i < j < k``."""
    n = L.dim
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = L.basis(i), L.basis(j), L.basis(k)
        res = (bracket(L, ei, bracket(L, ej, ek))
               + bracket(L, ej, bracket(L, ek, ei))
               + bracket(L, ek, bracket(L, ei, ej)))
        if not res.is_zero():
            return VerificationReport.fail("jacobi", (i, j, k), res, "Jacobiator does not vanish")
    return VerificationReport.ok("jacobi")


# --------------------------------------------------------------------------
# alternating forms


@dataclass(frozen=True)
class AltForm:
    """Alternating ``degree``-form; ``terms`` maps increasing index tuples to coefficients."""

    dim: int
    degree: int
    terms: Mapping[tuple[int, ...], Fraction]

    def __post_init__(self):
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, val in dict(self.terms).items():
            key = tuple(key)
            val = _frac(val)
            if len(key) != self.degree:
                raise ValueError(f"term {key} does not have degree {self.degree}")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise ValueError(f"index tuple {key} is not strictly increasing")
            if any(not 0 <= a < self.dim for a in key):
                raise ValueError(f"index tuple {key} out of range for dim {self.dim}")
            if val:
                clean[key] = val
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.dim, self.degree, tuple(self.terms.items())))

    @classmethod
    def zero(cls, n: int, degree: int) -> AltForm:
        return cls(n, degree, {})

    @classmethod
    def constant(cls, n: int, value=1) -> AltForm:
        return cls(n, 0, {(): value})

    @classmethod
    def covector(cls, n: int, i: int, coeff=1) -> AltForm:
        return cls(n, 1, {(i,): coeff})

    @classmethod
    def from_unsorted(cls, n: int, degree: int, items: Iterable[tuple[Sequence[int], object]]) -> AltForm:
        """Accumulate terms given on arbitrary index orders (sign-corrected)."""
        acc: dict[tuple[int, ...], Fraction] = {}
        for idx, val in items:
            sgn = permutation_sign(idx)
            if sgn == 0:
                continue
            key = tuple(sorted(idx))
            acc[key] = acc.get(key, Fraction(0)) + sgn * _frac(val)
        return cls(n, degree, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: AltForm) -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: AltForm) -> AltForm:
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return AltForm(self.dim, self.degree, acc)

    def __neg__(self) -> AltForm:
        return AltForm(self.dim, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: AltForm) -> AltForm:
        return self + (-other)

    def __mul__(self, s) -> AltForm:
        s = _frac(s)
        return AltForm(self.dim, self.degree, {k: s * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: AltForm) -> AltForm:
        return wedge(self, other)

    def __call__(self, *vectors: Vector) -> Fraction:
        """Evaluate on ``degree`` vectors (sum of coefficient times minor)."""
        if len(vectors) != self.degree:
            raise ValueError(f"{self.degree}-form evaluated on {len(vectors)} vectors")
        if self.degree == 0:
            return self.terms.get((), Fraction(0))
        if self.degree == 1:
            return sum((v * vectors[0][i] for (i,), v in self.terms.items()), Fraction(0))
        if self.degree == 2:
            X, Y = vectors
            return sum((v * (X[i] * Y[j] - X[j] * Y[i]) for (i, j), v in self.terms.items()),
                       Fraction(0))
        total = Fraction(0)
        for idx, v in self.terms.items():
            minor = [[vec[i] for vec in vectors] for i in idx]
            total += v * linalg.determinant(minor)
        return total

    def matrix(self) -> list[list[Fraction]]:
        """Gram matrix ``a(e_i, e_j)`` of a 2-form."""
        if self.degree != 2:
            raise ValueError("matrix() needs a 2-form")
        n = self.dim
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in self.terms.items():
            m[i][j] = v
            m[j][i] = -v
        return m

    def as_vector(self) -> Vector:
        """Coefficient vector of a 1-form."""
        if self.degree != 1:
            raise ValueError("as_vector() needs a 1-form")
        return Vector(tuple(self.terms.get((i,), Fraction(0)) for i in range(self.dim)))

    def __repr__(self) -> str:
        if not self.terms:
            return f"AltForm(0, degree={self.degree})"
        parts = []
        for idx, v in self.terms.items():
            name = "^".join(f"e{i + 1}" for i in idx) or "1"
            parts.append(f"{v}*{name}")
        return "AltForm(" + " + ".join(parts) + ")"


def covector_form(v: Vector | Sequence) -> AltForm:
    coeffs = v.coeffs if isinstance(v, Vector) else tuple(v)
    return AltForm(len(coeffs), 1, {(i,): c for i, c in enumerate(coeffs)})


def wedge(a: AltForm, b: AltForm) -> AltForm:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    acc: dict[tuple[int, ...], Fraction] = {}
    for I, x in a.terms.items():
        for J, y in b.terms.items():
            idx = I + J
            sgn = permutation_sign(idx)
            if sgn:
                key = tuple(sorted(idx))
                acc[key] = acc.get(key, Fraction(0)) + sgn * x * y
    return AltForm(a.dim, a.degree + b.degree, acc)


def form_power(a: AltForm, m: int) -> AltForm:
    if m < 0:
        raise ValueError("power must be non-negative")
    out = AltForm.constant(a.dim)
    for _ in range(m):
        out = wedge(out, a)
    return out


def is_volume_form(a: AltForm) -> bool:
    return a.degree == a.dim and not a.is_zero()


def evaluate_on_basis(a: AltForm, idx: Sequence[int]) -> Fraction:
    """Value of ``a`` on ``(e_{idx_0}, ...)`` for an arbitrary index sequence."""
    sgn = permutation_sign(idx)
    if not sgn:
        return Fraction(0)
    return sgn * a.terms.get(tuple(sorted(idx)), Fraction(0))


def exterior_derivative(L: LieAlgebra, a: AltForm) -> AltForm:
    """Chevalley-Eilenberg differential of an invariant form.

    ``d a(X_0..X_k) = sum_{i<j} (-1)^{i+j} a([X_i, X_j], X_0, ^i, ^j, X_k)``,
    evaluated on every increasing basis tuple.
    """
    if a.dim != L.dim:
        raise ValueError(f"dimension mismatch: algebra dim {L.dim}, form dim {a.dim}")
    n, k = L.dim, a.degree
    if k >= n or a.is_zero():
        return AltForm.zero(n, k + 1)
    out: dict[tuple[int, ...], Fraction] = {}
    c = L.structure
    for idx in combinations(range(n), k + 1):
        total = Fraction(0)
        for p, q in combinations(range(k + 1), 2):
            rest = [idx[r] for r in range(k + 1) if r != p and r != q]
            br = c[idx[p]][idx[q]]
            s = Fraction(0)
            for m in range(n):
                if br[m]:
                    s += br[m] * evaluate_on_basis(a, [m] + rest)
            if s:
                total += (-1) ** (p + q) * s
        if total:
            out[idx] = total
    return AltForm(n, k + 1, out)


def interior_product(X: Vector, a: AltForm) -> AltForm:
    if a.degree < 1:
        raise ValueError("interior product of a 0-form is undefined")
    if X.dim != a.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {a.dim}")
    acc: dict[tuple[int, ...], Fraction] = {}
    for idx, v in a.terms.items():
        for pos, m in enumerate(idx):
            x = X[m]
            if x:
                key = idx[:pos] + idx[pos + 1:]
                acc[key] = acc.get(key, Fraction(0)) + (-1) ** pos * x * v
    return AltForm(a.dim, a.degree - 1, acc)


def lie_derivative_form(L: LieAlgebra, X: Vector, a: AltForm) -> AltForm:
    """Cartan formula ``L_X = i_X d + d i_X`` on invariant forms."""
    out = AltForm.zero(a.dim, a.degree)
    if a.degree < a.dim:
        out = out + interior_product(X, exterior_derivative(L, a))
    if a.degree >= 1:
        out = out + exterior_derivative(L, interior_product(X, a))
    return out


# --------------------------------------------------------------------------
# endomorphisms


@dataclass(frozen=True)
class Endomorphism:
    """``matrix[i][j]`` is the ``e_i`` coefficient of the image of ``e_j``."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(_frac(x) for x in row) for row in self.matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("endomorphism matrix must be square")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def identity(cls, n: int) -> Endomorphism:
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> Endomorphism:
        return cls(tuple((Fraction(0),) * n for _ in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Vector]) -> Endomorphism:
        n = len(columns)
        return cls(tuple(tuple(columns[j][i] for j in range(n)) for i in range(n)))

    @classmethod
    def from_images(cls, n: int, images: Mapping[int, Vector]) -> Endomorphism:
        """Basis images; unspecified basis vectors map to 0."""
        cols = [images.get(j, Vector.zero(n)) for j in range(n)]
        return cls.from_columns(cols)

    @classmethod
    def outer(cls, a: AltForm, Z: Vector) -> Endomorphism:
        """``a (x) Z : X -> a(X) Z``."""
        w = a.as_vector()
        return cls(tuple(tuple(Z[i] * w[j] for j in range(Z.dim)) for i in range(Z.dim)))

    def column(self, j: int) -> Vector:
        return Vector(tuple(row[j] for row in self.matrix))

    def __call__(self, X: Vector) -> Vector:
        if X.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {X.dim}")
        return Vector(tuple(sum((a * x for a, x in zip(row, X.coeffs) if x), Fraction(0))
                            for row in self.matrix))

    def __matmul__(self, other: Endomorphism) -> Endomorphism:
        n = self.dim
        B = other.matrix
        A = self.matrix
        return Endomorphism(tuple(
            tuple(sum((A[i][k] * B[k][j] for k in range(n) if A[i][k]), Fraction(0)) for j in range(n))
            for i in range(n)))

    def __add__(self, other: Endomorphism) -> Endomorphism:
        return Endomorphism(tuple(tuple(a + b for a, b in zip(r, s))
                                  for r, s in zip(self.matrix, other.matrix)))

    def __neg__(self) -> Endomorphism:
        return Endomorphism(tuple(tuple(-a for a in r) for r in self.matrix))

    def __sub__(self, other: Endomorphism) -> Endomorphism:
        return self + (-other)

    def __mul__(self, s) -> Endomorphism:
        s = _frac(s)
        return Endomorphism(tuple(tuple(s * a for a in r) for r in self.matrix))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def rank(self) -> int:
        return linalg.rank(self.matrix, self.dim)

    def inverse(self) -> Endomorphism:
        return Endomorphism(tuple(tuple(r) for r in linalg.inverse(self.matrix)))

    def compose_form(self, a: AltForm) -> AltForm:
        """Pullback of a 1-form: ``a o f``."""
        w = a.as_vector()
        return covector_form([sum((w[i] * self.matrix[i][j] for i in range(self.dim)), Fraction(0))
                              for j in range(self.dim)])


def lie_derivative_endo(L: LieAlgebra, X: Vector, f: Endomorphism) -> Endomorphism:
    """``(L_X f)(Y) = [X, fY] - f[X, Y]``, column by column."""
    n = L.dim
    cols = []
    for j in range(n):
        ej = L.basis(j)
        cols.append(bracket(L, X, f(ej)) - f(bracket(L, X, ej)))
    return Endomorphism.from_columns(cols)


# --------------------------------------------------------------------------
# vector-valued 2-forms


@dataclass(frozen=True)
class VectorValuedTwoForm:
    """Antisymmetric bilinear map with values in the algebra, stored on pairs ``i < j``."""

    dim: int
    values: Mapping[tuple[int, int], Vector]

    def __post_init__(self):
        clean = {}
        for (i, j), v in dict(self.values).items():
            if not i < j:
                raise ValueError(f"pair ({i}, {j}) is not strictly increasing")
            if not v.is_zero():
                clean[(i, j)] = v
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    def __hash__(self):
        return hash((self.dim, tuple(self.values.items())))

    @classmethod
    def from_function(cls, n: int, f: Callable[[Vector, Vector], Vector],
                      pairs: Iterable[tuple[int, int]] | None = None) -> VectorValuedTwoForm:
        if pairs is None:
            pairs = combinations(range(n), 2)
        return cls(n, {(i, j): f(Vector.basis(n, i), Vector.basis(n, j)) for i, j in pairs})

    def on_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return Vector.zero(self.dim)
        if i < j:
            return self.values.get((i, j), Vector.zero(self.dim))
        return -self.values.get((j, i), Vector.zero(self.dim))

    def __call__(self, X: Vector, Y: Vector) -> Vector:
        out = Vector.zero(self.dim)
        for (i, j), v in self.values.items():
            c = X[i] * Y[j] - X[j] * Y[i]
            if c:
                out = out + c * v
        return out

    def is_zero(self) -> bool:
        return not self.values

    def first_nonzero(self) -> tuple[tuple[int, int], Vector] | None:
        """Lexicographically first basis pair with a nonzero value."""
        for key, v in self.values.items():
            return key, v
        return None

    def __add__(self, other: VectorValuedTwoForm) -> VectorValuedTwoForm:
        keys = set(self.values) | set(other.values)
        z = Vector.zero(self.dim)
        return VectorValuedTwoForm(self.dim, {k: self.values.get(k, z) + other.values.get(k, z)
                                              for k in keys})

    def __neg__(self) -> VectorValuedTwoForm:
        return VectorValuedTwoForm(self.dim, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: VectorValuedTwoForm) -> VectorValuedTwoForm:
        return self + (-other)


def nijenhuis_endo(L: LieAlgebra, f: Endomorphism) -> VectorValuedTwoForm:
    """``[f, f](X, Y) = f^2[X, Y] + [fX, fY] - f[fX, Y] - f[X, fY]`` on basis pairs."""
    f2 = f @ f

    def value(X: Vector, Y: Vector) -> Vector:
        fX, fY = f(X), f(Y)
        return (f2(bracket(L, X, Y)) + bracket(L, fX, fY)
                - f(bracket(L, fX, Y)) - f(bracket(L, X, fY)))

    return VectorValuedTwoForm.from_function(L.dim, value)


# --------------------------------------------------------------------------
# change of basis


def change_basis_algebra(L: LieAlgebra, A: Endomorphism) -> LieAlgebra:
    """Structure constants in the basis ``f_j = A e_j``."""
    n = L.dim
    Ainv = A.inverse()
    cols = [A.column(j) for j in range(n)]
    brackets = {}
    for i, j in combinations(range(n), 2):
        brackets[(i, j)] = Ainv(bracket(L, cols[i], cols[j]))
    return LieAlgebra.from_brackets(n, brackets)


def change_basis_form(a: AltForm, A: Endomorphism) -> AltForm:
    cols = [A.column(j) for j in range(a.dim)]
    return AltForm(a.dim, a.degree,
                   {idx: a(*[cols[i] for i in idx]) for idx in combinations(range(a.dim), a.degree)})


def change_basis_vector(X: Vector, A: Endomorphism) -> Vector:
    return A.inverse()(X)


def change_basis_endo(f: Endomorphism, A: Endomorphism) -> Endomorphism:
    return A.inverse() @ f @ A


__all__ = [
    "Scalar", "Vector", "vector", "combination", "VerificationReport", "LieAlgebra", "bracket",
    "jacobi_check", "AltForm", "covector_form", "wedge", "form_power", "is_volume_form",
    "evaluate_on_basis", "exterior_derivative", "interior_product", "lie_derivative_form",
    "Endomorphism", "lie_derivative_endo", "VectorValuedTwoForm", "nijenhuis_endo",
    "change_basis_algebra", "change_basis_form", "change_basis_vector", "change_basis_endo",
    "permutation_sign",
]
