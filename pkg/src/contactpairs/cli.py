"""Command-line front end.

Exit codes: 0 when every verdict is as expected (or passes), 1 when a check
evaluated cleanly to false, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import documents as docs
from .constructions import (
    AlmostContact,
    ProductSpec,
    boothby_wang_extend,
    bw_base_conditions,
    direct_sum,
    eta_invariance,
)
from .exterior import AltForm, Endomorphism, Vector, VerificationReport
from .fixtures import FIXTURE_NAMES, expectation_results, load_fixture
from .normality import (
    almost_contact_normality,
    induced_normality,
    normality_report,
    theorem_checks,
)
from .pairs import (
    AlmostContactSymplecticStructure,
    ContactPairStructure,
    NotAPair,
    classify_contact_pair,
    classify_contact_symplectic,
    classify_symplectic_pair,
    contact_pair,
    is_decomposable,
    reeb_identities,
    reeb_vector,
    splitting_bases,
    verify_acss,
    verify_cps,
)

TASKS = ("classify", "reeb", "verify-structure", "decomposable", "normality", "induced",
         "almost-contact", "extend", "product", "fixtures")

EXIT_PASS, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class TaskError(ValueError):
    pass


# --------------------------------------------------------------------------
# JSON encoding of results


def jsonable(x):
    if isinstance(x, Fraction):
        return docs.format_fraction(x)
    if isinstance(x, Vector):
        return docs.vector_data(x)
    if isinstance(x, AltForm):
        return docs.form_data(x)
    if isinstance(x, Endomorphism):
        return docs.matrix_data(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def witness_data(witness, residual) -> dict:
    out: dict[str, Any] = {}
    if witness is not None:
        out["indices"] = [i + 1 for i in witness]
    if residual is not None:
        out["residual"] = jsonable(residual)
    return out


def report_witness(rep: VerificationReport) -> dict:
    out = witness_data(rep.witness, rep.residual)
    if rep.reason:
        out["reason"] = rep.reason
    return out


class Report:
    def __init__(self, task: str, args: dict, name: str = ""):
        self.task = task
        self.args = args
        self.name = name
        self.verdicts: dict[str, Any] = {}
        self.results: dict[str, Any] = {}
        self.witnesses: dict[str, Any] = {}
        self.primary: str | None = None
        self.error: str | None = None
        self.mismatches: list[dict] = []
        self.expect: dict[str, Any] = {}

    def verdict(self, key: str, value, witness: dict | None = None, primary: bool = False):
        self.verdicts[key] = value
        if witness:
            self.witnesses[key] = witness
        if primary:
            self.primary = key

    def check_expectations(self, expect: dict):
        self.expect = expect
        for key, want in sorted(expect.items()):
            if key in self.verdicts:
                got = self.verdicts[key]
            elif key in self.results:
                got = self.results[key]
            else:
                self.mismatches.append({"key": key, "expected": want, "actual": None})
                continue
            if jsonable(got) != want:
                self.mismatches.append({"key": key, "expected": want, "actual": jsonable(got)})

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        if self.expect:
            return "fail" if self.mismatches else "pass"
        if self.primary is None:
            return "pass"
        return "pass" if self.verdicts[self.primary] else "fail"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FALSE, "error": EXIT_ERROR}[self.status]

    def data(self) -> dict:
        out: dict[str, Any] = {
            "task": {"name": self.task, "args": jsonable(self.args)},
            "status": self.status,
            "verdicts": jsonable(self.verdicts),
            "witnesses": jsonable(self.witnesses),
            "results": jsonable(self.results),
        }
        if self.name:
            out["input"] = self.name
        if self.primary:
            out["primary"] = self.primary
        if self.expect:
            out["expected"] = self.expect
            out["mismatches"] = self.mismatches
        if self.error is not None:
            out["error"] = self.error
        return out


# --------------------------------------------------------------------------
# argument lookup


def _get(table: dict, kind: str, args: dict, key: str, default=None, required=True):
    name = args.get(key, key)
    if name in table:
        return table[name]
    if not required:
        return default
    raise TaskError(f"task needs {kind} {key!r} (looked up {name!r}); available: {sorted(table)}")


def _form(doc, args, key, required=True):
    return _get(doc.forms, "form", args, key, required=required)


def _endo(doc, args, key, required=True):
    return _get(doc.endomorphisms, "endomorphism", args, key, required=required)


def _pair(doc, args):
    return contact_pair(doc.algebra, _form(doc, args, "alpha1"), _form(doc, args, "alpha2"))


def _structure(doc, args) -> ContactPairStructure:
    return ContactPairStructure(_pair(doc, args), _endo(doc, args, "phi"))


def _acss(doc, args) -> AlmostContactSymplecticStructure:
    C = classify_contact_symplectic(doc.algebra, _form(doc, args, "beta"), _form(doc, args, "eta"))
    return AlmostContactSymplecticStructure(C, _endo(doc, args, "psi"))


# --------------------------------------------------------------------------
# tasks


def task_classify(doc, args, R: Report):
    kind = args.get("kind")
    if kind is None:
        if "alpha1" in args or "alpha1" in doc.forms:
            kind = "contact-pair"
        elif "w1" in args or "w1" in doc.forms:
            kind = "symplectic-pair"
        else:
            kind = "contact-symplectic"
    R.results["kind"] = kind
    key = kind.replace("-", "_")
    try:
        if kind == "contact-pair":
            R.results["type"] = list(classify_contact_pair(doc.algebra, _form(doc, args, "alpha1"),
                                                           _form(doc, args, "alpha2")))
        elif kind == "symplectic-pair":
            R.results["type"] = list(classify_symplectic_pair(doc.algebra, _form(doc, args, "w1"),
                                                              _form(doc, args, "w2")))
        elif kind == "contact-symplectic":
            C = classify_contact_symplectic(doc.algebra, _form(doc, args, "beta"), _form(doc, args, "eta"))
            R.results["type"] = [C.h, C.k]
            R.results["W"] = C.W
        else:
            raise TaskError(f"unknown classification kind {kind!r}")
    except NotAPair as exc:
        R.verdict(key, False, {"reason": exc.reason}, primary=True)
        return
    R.verdict(key, True, primary=True)


def task_reeb(doc, args, R: Report):
    P = _pair(doc, args)
    R.results.update({"type": [P.h, P.k], "Z1": P.Z1, "Z2": P.Z2})
    rep = reeb_identities(P)
    R.verdict("reeb_identities", rep.passed, report_witness(rep) if not rep else None, primary=True)


def task_verify(doc, args, R: Report):
    if _endo(doc, args, "phi", required=False) is not None:
        S = _structure(doc, args)
        rep = verify_cps(S.pair, S.phi)
    else:
        A = _acss(doc, args)
        rep = verify_acss(A.csp, A.psi)
    R.verdict("structure_valid", rep.passed, report_witness(rep) if not rep else None, primary=True)


def task_decomposable(doc, args, R: Report):
    S = _structure(doc, args)
    B = splitting_bases(S.pair)
    rep = is_decomposable(S.pair, S.phi, B)
    R.results["splitting"] = {"TF1": B.TF1, "TF2": B.TF2, "TG1": B.TG1, "TG2": B.TG2}
    R.verdict("decomposable", rep.passed, report_witness(rep) if not rep else None, primary=True)


def _normality_into(S: ContactPairStructure, R: Report, primary: bool = True, prefix: str = ""):
    r = normality_report(S)
    R.results[prefix + "type"] = [r.h, r.k]
    for key, val in r.flags().items():
        w = r.witnesses.get(key)
        R.verdict(prefix + key, val, witness_data(*w) if w else None)
    if primary:
        R.primary = prefix + "pair_normal"
    R.results[prefix + "theorems"] = {t.name: {"applicable": t.applicable, "holds": t.holds}
                                      for t in theorem_checks(r)}
    return r


def task_normality(doc, args, R: Report):
    _normality_into(_structure(doc, args), R)


def task_induced(doc, args, R: Report):
    S = _structure(doc, args)
    B = splitting_bases(S.pair)
    ok = True
    for which in (1, 2):
        rep = induced_normality(S, B, which)
        R.verdict(f"induced{which}_normal", rep.passed, report_witness(rep) if not rep else None)
        ok = ok and rep.passed
    R.verdict("induced_normal", ok, primary=True)


def _almost_contact(doc, args) -> AlmostContact:
    alpha = _form(doc, args, "alpha")
    Z = _get(doc.vectors, "vector", args, "Z", required=False)
    if Z is None:
        Z = reeb_vector(doc.algebra, alpha)
    return AlmostContact(doc.algebra, alpha, Z, _endo(doc, args, "phi"))


def task_almost_contact(doc, args, R: Report):
    F = _almost_contact(doc, args)
    R.results["Z"] = F.Z
    rep = almost_contact_normality(F.algebra, F.alpha, F.Z, F.phi)
    R.verdict("almost_contact_normal", rep.passed, report_witness(rep) if not rep else None, primary=True)


def pair_document(S: ContactPairStructure, name: str) -> dict:
    return docs.to_data(S.dim, S.algebra, {"alpha1": S.pair.alpha1, "alpha2": S.pair.alpha2},
                        {"phi": S.phi}, task={"name": "normality",
                                              "args": {"alpha1": "alpha1", "alpha2": "alpha2", "phi": "phi"}},
                        name=name)


def task_extend(doc, args, R: Report):
    A = _acss(doc, args)
    base_normal = almost_contact_normality(A.algebra, A.csp.beta, A.csp.W, A.psi)
    R.verdict("base_normal", base_normal.passed, report_witness(base_normal) if not base_normal else None)
    R.verdict("eta_invariant", eta_invariance(A).passed)
    bc = bw_base_conditions(A)
    R.verdict("base_conditions", bc.holds, {"failed": sorted(bc.witnesses)} if not bc.holds else None)
    R.verdict("printed_base_conditions", bc.printed_holds)
    R.verdict("printed_conditions_agree", bc.printed_agrees)
    S = boothby_wang_extend(A)
    R.verdict("extension_valid", True, primary=True)
    r = _normality_into(S, R, primary=False, prefix="")
    R.verdict("extension_normal", r.pair_normal)
    R.results["extension_type"] = [S.pair.h, S.pair.k]
    R.results["document"] = pair_document(S, (doc.name + "-extension") if doc.name else "extension")


def _subdocument(doc, ref) -> docs.InputDocument:
    if isinstance(ref, str):
        base = doc.source.parent if doc.source else Path.cwd()
        return docs.load(base / ref)
    if isinstance(ref, dict):
        return docs.from_data(ref)
    raise TaskError("product factors must be file paths or inline documents")


def task_product(doc, args, R: Report):
    factors = []
    for side in ("left", "right"):
        if side not in args:
            raise TaskError(f"product needs a {side!r} factor")
        sub = _subdocument(doc, args[side])
        F = _almost_contact(sub, sub.task.get("args", {}))
        rep = almost_contact_normality(F.algebra, F.alpha, F.Z, F.phi)
        R.verdict(f"{side}_normal", rep.passed)
        factors.append(F)
    S = direct_sum(ProductSpec(*factors))
    _normality_into(S, R)
    R.results["document"] = pair_document(S, (doc.name or "product"))


def task_fixtures(doc, args, R: Report):
    action = args.get("action", "run")
    names = [args["name"]] if args.get("name") else list(FIXTURE_NAMES)
    if action == "list":
        R.results["fixtures"] = {n: load_fixture(n).description for n in names}
        return
    if action != "run":
        raise TaskError(f"unknown fixtures action {action!r}")
    ok = True
    for n in names:
        F = load_fixture(n)
        for r in expectation_results(F):
            key = f"{n}.{r.predicate}"
            w = None if r.passed else {"expected": jsonable(r.expected), "actual": jsonable(r.actual),
                                        "reason": r.error}
            R.verdict(key, r.passed, w)
            ok = ok and r.passed
    R.verdict("all_expectations", ok, primary=True)


_DISPATCH = {
    "classify": task_classify,
    "reeb": task_reeb,
    "verify-structure": task_verify,
    "decomposable": task_decomposable,
    "normality": task_normality,
    "induced": task_induced,
    "almost-contact": task_almost_contact,
    "extend": task_extend,
    "product": task_product,
    "fixtures": task_fixtures,
}


def run(doc: docs.InputDocument | None, task: str | None = None, args: dict | None = None) -> Report:
    """Run the document's task (or ``task``) and collect a report; operation errors are recorded."""
    if task is None:
        task = (doc.task.get("name") if doc else None) or ""
    if args is None:
        args = dict(doc.task.get("args", {})) if doc and doc.task.get("name") == task else {}
    R = Report(task, args, doc.name if doc else "")
    try:
        if task not in _DISPATCH:
            raise TaskError(f"unknown task {task!r}; expected one of {', '.join(TASKS)}")
        if doc is None and task != "fixtures":
            raise TaskError(f"task {task!r} needs an input document")
        _DISPATCH[task](doc, args, R)
        if doc is not None and doc.expect:
            R.check_expectations(doc.expect)
    except (ValueError, KeyError, AssertionError) as exc:
        R.error = f"{type(exc).__name__}: {exc}"
    return R


# --------------------------------------------------------------------------
# output


def render_machine(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _fmt(v) -> str:
    if v is True:
        return "pass"
    if v is False:
        return "FAIL"
    if v is None:
        return "n/a"
    return json.dumps(v, sort_keys=True)


def render_text(data: dict, elapsed: float | None = None) -> str:
    lines = [f"task: {data['task']['name']}" + (f" ({data['input']})" if data.get("input") else "")]
    for key in sorted(data["verdicts"]):
        mark = " *" if key == data.get("primary") else ""
        lines.append(f"  {key}: {_fmt(data['verdicts'][key])}{mark}")
        w = data["witnesses"].get(key)
        if w:
            lines.append(f"      witness: {json.dumps(w, sort_keys=True)}")
    for key in sorted(data["results"]):
        if key == "document":
            lines.append("  document: emitted (use --format machine or --emit)")
        elif key != "theorems" and not key.endswith("theorems"):
            lines.append(f"  {key}: {json.dumps(data['results'][key], sort_keys=True)}")
    for m in data.get("mismatches", []):
        lines.append(f"  mismatch {m['key']}: expected {_fmt(m['expected'])}, got {_fmt(m['actual'])}")
    if data.get("error"):
        lines.append(f"  error: {data['error']}")
    lines.append(f"status: {data['status']}")
    if elapsed is not None:
        lines.append(f"elapsed: {elapsed:.3f} s")
    return "\n".join(lines) + "\n"


def write_reference_files(directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in FIXTURE_NAMES:
        p = directory / f"{name}.json"
        p.write_text(docs.dumps(docs.fixture_data(name)), encoding="utf-8")
        out.append(p)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contactpairs",
                                description="Verify invariant contact pair structures on Lie algebras.")
    p.add_argument("--input", type=Path, help="input document (JSON)")
    p.add_argument("--task", choices=TASKS, help="task to run (default: the document's task)")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--fixture", help="run the expectations of one built-in fixture")
    p.add_argument("--run-all", action="store_true", help="run the expectations of every fixture")
    p.add_argument("--list-fixtures", action="store_true", help="list built-in fixtures")
    p.add_argument("--emit", type=Path, help="write the document produced by extend/product here")
    p.add_argument("--write-references", type=Path, metavar="DIR",
                   help="write the reference input files for all fixtures")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    opts = build_parser().parse_args(argv)
    start = time.perf_counter()
    if opts.write_references:
        for path in write_reference_files(opts.write_references):
            print(path)
        return EXIT_PASS
    doc = None
    task, args = opts.task, None
    if opts.run_all or opts.fixture or opts.list_fixtures:
        task = "fixtures"
        args = {"action": "list" if opts.list_fixtures else "run"}
        if opts.fixture:
            args["name"] = opts.fixture
    if opts.input is not None:
        try:
            doc = docs.load(opts.input)
        except (docs.DocumentError, OSError) as exc:
            R = Report(task or "parse", {}, str(opts.input))
            R.error = f"{type(exc).__name__}: {exc}"
            return _emit(R, opts, start)
    elif task != "fixtures":
        build_parser().error("--input is required unless a fixture option is given")
    R = run(doc, task, args)
    return _emit(R, opts, start)


def _emit(R: Report, opts, start: float) -> int:
    data = R.data()
    if opts.format == "machine":
        sys.stdout.write(render_machine(data))
    else:
        sys.stdout.write(render_text(data, time.perf_counter() - start))
    if opts.emit and "document" in data["results"]:
        opts.emit.write_text(docs.dumps(data["results"]["document"]), encoding="utf-8")
    return R.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
