"""Command-line front end.

Exit codes: 0 for YES / valid, 1 for NO / invalid, 2 for UNKNOWN (a bounded
search gave up), 3 for errors.  Error messages go to stderr as
``[stage] message``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import (
    HomLieAlgebra,
    NotAnIdeal,
    ValidationError,
    check_axioms,
    quotient,
    validate,
)
from .catalog import CatalogError, load_catalog
from .factorset import (
    FactorSetError,
    PipelineError,
    build_algebra,
    extract_factor_set,
    factor_set_failure,
    stem_decompose,
)
from .linalg import Subspace
from .morphisms import (
    IsoclinismError,
    Verdict,
    bounded_isoclinism_search,
    bounded_isomorphism_search,
)
from .serialize import (
    ParseError,
    algebra_from_doc,
    algebra_to_doc,
    dumps,
    factor_set_from_doc,
    factor_set_to_doc,
    loads,
    matrix_to_doc,
)

YES, NO, UNKNOWN, ERROR = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, stage: str, message: str):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage


def _read_doc(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return loads(text)
    except ParseError as exc:
        raise CliError("parse", f"{path}: {exc}") from exc


def _load_algebra(path: str) -> HomLieAlgebra:
    doc = _read_doc(path)
    # catalog entries wrap the algebra document
    if isinstance(doc, dict) and "algebra" in doc and "brackets" not in doc:
        doc = doc["algebra"]
    try:
        return algebra_from_doc(doc)
    except (ParseError, ValueError) as exc:
        raise CliError("parse", f"{path}: {exc}") from exc


def _checked(a: HomLieAlgebra, stage: str) -> HomLieAlgebra:
    try:
        check_axioms(a)
    except ValidationError as exc:
        raise CliError(stage, f"{a.name or 'algebra'} is not a Hom-Lie algebra: {exc}") from exc
    return a


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_validate(args) -> int:
    a = _load_algebra(args.file)
    try:
        profile = validate(a)
    except ValidationError as exc:
        _out("invalid")
        _out(f"reason={exc}")
        _out("at=" + ",".join(str(i + 1) for i in exc.where))
        return NO
    _out("valid")
    _out(f"multiplicative={_flag(profile.is_multiplicative)}")
    _out(f"regular={_flag(profile.is_regular)}")
    return YES


def cmd_invariants(args) -> int:
    a = _load_algebra(args.file)
    try:
        report = validate(a).report()
    except ValidationError as exc:
        _out("invalid")
        _out(f"reason={exc}")
        return NO
    for key, value in report.items():
        _out(f"{key}={_flag(value) if isinstance(value, bool) else value}")
    return YES


def parse_ideal(spec: str, n: int) -> Subspace:
    """Comma-separated basis labels such as ``v2,v3`` or ``2,3`` (1-based)."""
    indices = []
    for raw in spec.split(","):
        label = raw.strip()
        if not label:
            continue
        digits = label.lstrip("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
        if not digits.isdigit() or not 1 <= int(digits) <= n:
            raise CliError("parse", f"bad basis label {label!r} for an algebra of dimension {n}")
        indices.append(int(digits) - 1)
    return Subspace.coordinate(n, indices)


def cmd_quotient(args) -> int:
    a = _checked(_load_algebra(args.file), "quotient")
    ideal = parse_ideal(args.ideal, a.dim)
    try:
        q, _ = quotient(a, ideal, name=f"{a.name}/<{args.ideal}>")
    except NotAnIdeal as exc:
        raise CliError("quotient", str(exc)) from exc
    _out(dumps(algebra_to_doc(q)))
    return YES


def cmd_factorset_extract(args) -> int:
    a = _checked(_load_algebra(args.file), "extract")
    try:
        fs, theta = extract_factor_set(a)
    except (FactorSetError, IsoclinismError) as exc:
        raise CliError("extract", str(exc)) from exc
    doc = factor_set_to_doc(fs)
    doc["theta"] = matrix_to_doc(theta.m)
    _out(dumps(doc))
    return YES


def cmd_factorset_build(args) -> int:
    base = _checked(_load_algebra(args.base_file), "build")
    try:
        fs = factor_set_from_doc(_read_doc(args.fs_file), base)
    except ParseError as exc:
        raise CliError("parse", f"{args.fs_file}: {exc}") from exc
    try:
        problem = factor_set_failure(fs)
    except (FactorSetError, IsoclinismError, ValueError) as exc:
        raise CliError("build", str(exc)) from exc
    if problem is not None:
        _out("invalid")
        _out(f"reason={problem}")
        return NO
    _out(dumps(algebra_to_doc(build_algebra(fs, name=f"R({base.name})"))))
    return YES


def _verdict(result, witness_doc) -> int:
    if result.verdict is Verdict.FOUND:
        _out("YES")
        _out(dumps(witness_doc(result.witness)))
        return YES
    if result.verdict is Verdict.IMPOSSIBLE:
        _out("NO")
        _out(f"reason={result.reason}")
        return NO
    _out("UNKNOWN")
    _out(f"reason={result.reason}")
    return UNKNOWN


def _bound(value: int) -> int:
    if value < 1:
        raise CliError("arguments", "--bound must be a positive integer")
    return value


def cmd_isoclinic(args) -> int:
    a = _checked(_load_algebra(args.a), "isoclinic")
    b = _checked(_load_algebra(args.b), "isoclinic")
    try:
        result = bounded_isoclinism_search(a, b, _bound(args.bound))
    except IsoclinismError as exc:
        raise CliError("isoclinic", str(exc)) from exc
    return _verdict(result, lambda p: {"alpha": matrix_to_doc(p.alpha.m),
                                       "beta": matrix_to_doc(p.beta.m)})


def cmd_isomorphic(args) -> int:
    a = _checked(_load_algebra(args.a), "isomorphic")
    b = _checked(_load_algebra(args.b), "isomorphic")
    result = bounded_isomorphism_search(a, b, _bound(args.bound))
    return _verdict(result, lambda f: {"map": matrix_to_doc(f.m)})


def cmd_stem_decompose(args) -> int:
    a = _checked(_load_algebra(args.file), "stem-decompose")
    try:
        d = stem_decompose(a)
    except (FactorSetError, IsoclinismError) as exc:
        raise CliError("stem-decompose", str(exc)) from exc
    _out(dumps({"stem": algebra_to_doc(d.t), "abelian": algebra_to_doc(d.a),
                "witness": matrix_to_doc(d.witness.m)}))
    return YES


def _catalog():
    try:
        return load_catalog()
    except (CatalogError, ParseError) as exc:
        raise CliError("catalog", str(exc)) from exc


def cmd_catalog_list(args) -> int:
    for name in _catalog():
        _out(name)
    return YES


def cmd_catalog_emit(args) -> int:
    catalog = _catalog()
    if args.name not in catalog:
        raise CliError("catalog", f"no entry named {args.name!r}")
    _out(dumps(algebra_to_doc(catalog[args.name].algebra)))
    return YES


def cmd_catalog_verify(args) -> int:
    from .checks import run_checks

    results = run_checks(_catalog())
    for r in results:
        _out(r.line())
    return YES if all(r.passed for r in results) else NO


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 3; argparse's default 2 means UNKNOWN here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ERROR, f"[arguments] {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="homlie", description="Exact computations with Hom-Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the Hom-Lie axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("invariants", help="print the profile as key=value lines")
    s.add_argument("file")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("quotient", help="quotient by the span of basis vectors")
    s.add_argument("file")
    s.add_argument("--ideal", required=True, help='basis labels, e.g. "v4" or "2,3"')
    s.set_defaults(func=cmd_quotient)

    fs = sub.add_parser("factorset", help="extract or build factor sets")
    fsub = fs.add_subparsers(dest="action", required=True)
    s = fsub.add_parser("extract")
    s.add_argument("file")
    s.set_defaults(func=cmd_factorset_extract)
    s = fsub.add_parser("build")
    s.add_argument("fs_file")
    s.add_argument("base_file")
    s.set_defaults(func=cmd_factorset_build)

    for name, func in (("isoclinic", cmd_isoclinic), ("isomorphic", cmd_isomorphic)):
        s = sub.add_parser(name, help=f"bounded {name} search")
        s.add_argument("a")
        s.add_argument("b")
        s.add_argument("--bound", type=int, default=1)
        s.set_defaults(func=func)

    s = sub.add_parser("stem-decompose", help="split into stem and abelian parts")
    s.add_argument("file")
    s.set_defaults(func=cmd_stem_decompose)

    cat = sub.add_parser("catalog", help="built-in examples")
    csub = cat.add_subparsers(dest="action", required=True)
    csub.add_parser("list").set_defaults(func=cmd_catalog_list)
    s = csub.add_parser("emit")
    s.add_argument("name")
    s.set_defaults(func=cmd_catalog_emit)
    csub.add_parser("verify-paper").set_defaults(func=cmd_catalog_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, PipelineError) as exc:
        print(exc, file=sys.stderr)
        return ERROR
    except (ValueError, ArithmeticError) as exc:
        print(f"[{args.command}] {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
