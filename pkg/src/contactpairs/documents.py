"""JSON input documents: parsing, validation and export.

Indices are 1-based in files and 0-based in memory.  Every coefficient is
an exact rational written as a string (``"3"``, ``"-1/2"``); JSON integers
are accepted, JSON floats are not.  The full schema is in ``docs/format.md``
and ``data/input.schema.json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .exterior import AltForm, Endomorphism, LieAlgebra, Vector, jacobi_check

FORMAT_TAG = "contact-pairs/1"


class DocumentError(ValueError):
    """Base class for input document errors."""


class ParseError(DocumentError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"syntax error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SemanticError(DocumentError):
    """Well-formed JSON that violates a document invariant; ``path`` locates it."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class InputDocument:
    dim: int
    algebra: LieAlgebra
    forms: dict[str, AltForm] = field(default_factory=dict)
    endomorphisms: dict[str, Endomorphism] = field(default_factory=dict)
    vectors: dict[str, Vector] = field(default_factory=dict)
    task: dict[str, Any] = field(default_factory=dict)
    expect: dict[str, Any] = field(default_factory=dict)
    name: str = ""
    source: Path | None = None


# --------------------------------------------------------------------------
# scalars and indices


def parse_fraction(value, path: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SemanticError(path, f"bad fraction {value!r}: coefficients must be exact (string or integer)")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise SemanticError(path, f"bad fraction {value!r}: expected a string like \"p/q\"")
    text = value.strip()
    num, _, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if den else 1
    except ValueError:
        raise SemanticError(path, f"bad fraction {value!r}: expected integers p or p/q") from None
    if q == 0:
        raise SemanticError(path, f"bad fraction {value!r}: zero denominator")
    return Fraction(p, q)


def format_fraction(x: Fraction) -> str:
    return str(Fraction(x))


def _index(value, n: int, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SemanticError(path, f"index must be an integer, got {value!r}")
    if not 1 <= value <= n:
        raise SemanticError(path, f"index {value} out of range 1..{n}")
    return value - 1


def _require(obj: dict, key: str, path: str, kind: type | tuple[type, ...]):
    if key not in obj:
        raise SemanticError(path, f"missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or (isinstance(val, bool) and kind is int):
        raise SemanticError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}")
    return val


# --------------------------------------------------------------------------
# parsing


def _parse_structure_equations(entries, n: int) -> tuple[LieAlgebra, dict[int, AltForm]]:
    if not isinstance(entries, list):
        raise SemanticError("structure_equations", "expected a list")
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    declared: dict[int, dict[tuple[int, int], Fraction]] = {}
    for a, entry in enumerate(entries):
        path = f"structure_equations[{a}]"
        if not isinstance(entry, dict):
            raise SemanticError(path, "expected an object")
        t = _index(_require(entry, "target", path, int), n, f"{path}.target")
        terms = _require(entry, "terms", path, list)
        acc = declared.setdefault(t, {})
        for b, term in enumerate(terms):
            tp = f"{path}.terms[{b}]"
            if not isinstance(term, dict):
                raise SemanticError(tp, "expected an object")
            i = _index(_require(term, "i", tp, int), n, f"{tp}.i")
            j = _index(_require(term, "j", tp, int), n, f"{tp}.j")
            coeff = parse_fraction(term.get("coeff", "1"), f"{tp}.coeff")
            if i == j:
                if coeff:
                    raise SemanticError(tp, f"antisymmetry violated: term e^{i + 1} ^ e^{i + 1}")
                continue
            c[i][j][t] -= coeff
            c[j][i][t] += coeff
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            acc[key] = acc.get(key, Fraction(0)) + sign * coeff
    L = _algebra(n, c)
    return L, {t: AltForm(n, 2, terms) for t, terms in declared.items()}


def _parse_structure_constants(entries, n: int) -> LieAlgebra:
    if not isinstance(entries, list):
        raise SemanticError("structure_constants", "expected a list")
    given: dict[tuple[int, int, int], Fraction] = {}
    for a, entry in enumerate(entries):
        path = f"structure_constants[{a}]"
        if not isinstance(entry, dict):
            raise SemanticError(path, "expected an object")
        i = _index(_require(entry, "i", path, int), n, f"{path}.i")
        j = _index(_require(entry, "j", path, int), n, f"{path}.j")
        k = _index(_require(entry, "k", path, int), n, f"{path}.k")
        coeff = parse_fraction(_require(entry, "coeff", path, (str, int)), f"{path}.coeff")
        if (i, j, k) in given:
            raise SemanticError(path, f"duplicate entry c[{i + 1}][{j + 1}][{k + 1}]")
        if i == j and coeff:
            raise SemanticError(path, f"antisymmetry violated: c[{i + 1}][{i + 1}][{k + 1}] = {coeff} must be 0")
        given[(i, j, k)] = coeff
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in given.items():
        other = given.get((j, i, k))
        if other is not None and other != -v:
            raise SemanticError(
                "structure_constants",
                f"antisymmetry violated: c[{i + 1}][{j + 1}][{k + 1}] = {v} but "
                f"c[{j + 1}][{i + 1}][{k + 1}] = {other}")
        c[i][j][k] = v
        c[j][i][k] = -v
    return _algebra(n, c)


def _algebra(n: int, c) -> LieAlgebra:
    L = LieAlgebra(n, tuple(tuple(tuple(r) for r in p) for p in c))
    rep = jacobi_check(L)
    if not rep:
        i, j, k = (x + 1 for x in rep.witness)
        raise SemanticError("algebra", f"Jacobi identity fails on (e{i}, e{j}, e{k})")
    return L


def _parse_form(name: str, obj, n: int) -> AltForm:
    path = f"forms.{name}"
    if not isinstance(obj, dict):
        raise SemanticError(path, "expected an object")
    degree = _require(obj, "degree", path, int)
    if not 0 <= degree <= n:
        raise SemanticError(f"{path}.degree", f"degree {degree} out of range 0..{n}")
    terms = _require(obj, "terms", path, dict)
    items = []
    for key, val in terms.items():
        kp = f"{path}.terms[{key!r}]"
        parts = [p for p in key.replace(" ", "").split(",") if p] if key.strip() else []
        try:
            idx = [int(p) for p in parts]
        except ValueError:
            raise SemanticError(kp, "term keys are comma-separated 1-based indices") from None
        if len(idx) != degree:
            raise SemanticError(kp, f"expected {degree} indices")
        idx = [_index(i, n, kp) for i in idx]
        if len(set(idx)) != len(idx):
            raise SemanticError(kp, "repeated index in an alternating form")
        items.append((idx, parse_fraction(val, kp)))
    return AltForm.from_unsorted(n, degree, items)


def _parse_matrix(name: str, rows, n: int) -> Endomorphism:
    path = f"endomorphisms.{name}"
    if not isinstance(rows, list) or len(rows) != n:
        raise SemanticError(path, f"expected {n} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SemanticError(f"{path}[{i}]", f"expected {n} entries")
        out.append(tuple(parse_fraction(x, f"{path}[{i}][{j}]") for j, x in enumerate(row)))
    return Endomorphism(tuple(out))


def _parse_vector(name: str, vals, n: int) -> Vector:
    path = f"vectors.{name}"
    if not isinstance(vals, list) or len(vals) != n:
        raise SemanticError(path, f"expected {n} entries")
    return Vector(tuple(parse_fraction(x, f"{path}[{i}]") for i, x in enumerate(vals)))


def from_data(data, source: Path | None = None) -> InputDocument:
    if not isinstance(data, dict):
        raise SemanticError("document", "top level must be an object")
    fmt = data.get("format", FORMAT_TAG)
    if fmt != FORMAT_TAG:
        raise SemanticError("format", f"unsupported format {fmt!r}")
    n = _require(data, "dim", "document", int)
    if n <= 0:
        raise SemanticError("dim", "dimension must be positive")
    has_eq, has_c = "structure_equations" in data, "structure_constants" in data
    if has_eq and has_c:
        raise SemanticError("document", "give structure_equations or structure_constants, not both")
    if has_c:
        L = _parse_structure_constants(data["structure_constants"], n)
    else:
        L, declared = _parse_structure_equations(data.get("structure_equations", []), n)
        for t in range(n):
            d = L.structure_equations()[t]
            if d != declared.get(t, AltForm.zero(n, 2)):
                raise SemanticError(f"structure_equations (target {t + 1})",
                                    "equation does not round-trip through the exterior derivative")
    forms = {k: _parse_form(k, v, n) for k, v in _section(data, "forms").items()}
    endos = {k: _parse_matrix(k, v, n) for k, v in _section(data, "endomorphisms").items()}
    vecs = {k: _parse_vector(k, v, n) for k, v in _section(data, "vectors").items()}
    task = data.get("task", {})
    if not isinstance(task, dict) or ("name" not in task and task):
        raise SemanticError("task", "expected an object with a 'name'")
    if task and not isinstance(task.get("args", {}), dict):
        raise SemanticError("task.args", "expected an object")
    expect = data.get("expect", {})
    if not isinstance(expect, dict):
        raise SemanticError("expect", "expected an object")
    return InputDocument(n, L, forms, endos, vecs, task, expect, str(data.get("name", "")), source)


def _section(data: dict, key: str) -> dict:
    val = data.get(key, {})
    if not isinstance(val, dict):
        raise SemanticError(key, "expected an object")
    return val


def parse(text: str, source: Path | None = None) -> InputDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_data(data, source)


def load(path: str | Path) -> InputDocument:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), path)


# --------------------------------------------------------------------------
# export


def structure_equation_entries(L: LieAlgebra) -> list[dict]:
    out = []
    for t, d in L.structure_equations().items():
        if d.is_zero():
            continue
        terms = [{"i": i + 1, "j": j + 1, "coeff": format_fraction(v)} for (i, j), v in sorted(d.terms.items())]
        out.append({"target": t + 1, "terms": terms})
    return out


def form_data(a: AltForm) -> dict:
    return {"degree": a.degree,
            "terms": {",".join(str(i + 1) for i in idx): format_fraction(v) for idx, v in sorted(a.terms.items())}}


def matrix_data(f: Endomorphism) -> list[list[str]]:
    return [[format_fraction(x) for x in row] for row in f.matrix]


def vector_data(v: Vector) -> list[str]:
    return [format_fraction(x) for x in v.coeffs]


def to_data(dim: int, algebra: LieAlgebra, forms: dict[str, AltForm] | None = None,
            endomorphisms: dict[str, Endomorphism] | None = None, vectors: dict[str, Vector] | None = None,
            task: dict | None = None, expect: dict | None = None, name: str = "") -> dict:
    data: dict[str, Any] = {"format": FORMAT_TAG, "dim": dim}
    if name:
        data["name"] = name
    data["structure_equations"] = structure_equation_entries(algebra)
    data["forms"] = {k: form_data(v) for k, v in (forms or {}).items()}
    if endomorphisms:
        data["endomorphisms"] = {k: matrix_data(v) for k, v in endomorphisms.items()}
    if vectors:
        data["vectors"] = {k: vector_data(v) for k, v in vectors.items()}
    if task:
        data["task"] = task
    if expect:
        data["expect"] = expect
    return data


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def document_data(doc: InputDocument) -> dict:
    return to_data(doc.dim, doc.algebra, doc.forms, doc.endomorphisms, doc.vectors, doc.task,
                   doc.expect, doc.name)


# --------------------------------------------------------------------------
# fixtures as documents

_FIXTURE_TASKS = {
    "pair": {"name": "normality", "args": {"alpha1": "alpha1", "alpha2": "alpha2", "phi": "phi"}},
    "almost-contact": {"name": "almost-contact", "args": {"alpha": "alpha", "Z": "Z", "phi": "phi"}},
    "acss": {"name": "extend", "args": {"beta": "beta", "eta": "eta", "psi": "psi"}},
}

_EXPECT_KEYS = {
    "pair": ("pair_normal", "J_integrable", "T_integrable", "normality_tensor_zero", "decomposable",
             "eq9_holds", "eq10_holds", "eq11_holds", "LZ1_phi_zero", "LZ2_phi_zero",
             "induced1_normal", "induced2_normal"),
    "almost-contact": ("almost_contact_normal",),
    "acss": ("extension_type", "extension_normal"),
}


def fixture_data(name: str) -> dict:
    """Reference document for a fixture, with its expected verdicts."""
    from .fixtures import load_fixture

    F = load_fixture(name)
    expect = {}
    wanted = {e.predicate: e.expected for e in F.expectations}
    for key in _EXPECT_KEYS[F.kind]:
        if key in wanted:
            val = wanted[key]
            expect[key] = list(val) if isinstance(val, tuple) else val
    return to_data(F.algebra.dim, F.algebra, F.forms, F.endomorphisms, F.vectors,
                   _FIXTURE_TASKS[F.kind], expect, F.name)


def data_dir() -> Path:
    return Path(__file__).with_name("data")


def reference_files() -> list[Path]:
    return sorted(p for p in data_dir().glob("*.json") if not p.name.endswith(".schema.json"))


__all__ = [
    "FORMAT_TAG", "DocumentError", "ParseError", "SemanticError", "InputDocument", "parse_fraction",
    "format_fraction", "from_data", "parse", "load", "to_data", "dumps", "document_data",
    "fixture_data", "data_dir", "reference_files", "form_data", "matrix_data", "vector_data",
    "structure_equation_entries",
]
