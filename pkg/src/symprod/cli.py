"""Command-line front end.

Every command prints one JSON document (sorted keys, scalars as "p/q"
strings) to stdout or ``--output`` and a one-line summary to stderr.

Exit codes: 0 ok, 1 failed check or method mismatch, 2 unreadable or
malformed input, 3 algebra not connected, 4 guardrail or cutoff exceeded,
5 a free model was required but not available.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import DegreeOverflow
from .cdga import (
    CdgaModel,
    NotFreeError,
    ReductionError,
    cohomology_dims,
    contractible_pair_reduction,
    cpm_sp_model,
    even_sphere_minimal_model,
    infinite_sp_model,
    linearized_homotopy,
    odd_sphere_minimal_model,
    sp_free_model,
)
from .fixtures import fixture_names, fixture_text
from .presentation import NotConnectedError, Presentation, PresentationError, parse_presentation, realize
from .series import macdonald_sp_series, series_to_json
from .symmetric import GuardrailError, SymmetricPower, sp_basis
from .verify import SUITES, run_suite

MAX_N = 6
MAX_DEGREE = 16

EXIT_FAIL, EXIT_PARSE, EXIT_CONNECTED, EXIT_GUARDRAIL, EXIT_NOT_FREE = 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str, **extra):
        super().__init__(message)
        self.code = code
        self.kind = kind
        self.extra = extra


def _scalar(c) -> str:
    return str(Fraction(c))


def _table(dims: dict[int, int]) -> dict[str, int]:
    return {str(k): v for k, v in sorted(dims.items()) if v}


def read_presentation(source: str | None) -> Presentation:
    if source is None:
        raise CliError(EXIT_PARSE, "usage", "--input is required")
    if source.startswith("builtin:"):
        name = source[len("builtin:") :]
        if name not in fixture_names():
            raise CliError(EXIT_PARSE, "input", f"no built-in fixture {name!r}", available=fixture_names())
        text = fixture_text(name)
    elif source == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise CliError(EXIT_PARSE, "input", f"cannot read {source}: {exc.strerror}") from None
    return parse_presentation(text)


def check_guardrails(args, n: int | None = None, degree: int | None = None) -> None:
    if args.force:
        return
    if n is not None and n > MAX_N:
        raise CliError(EXIT_GUARDRAIL, "guardrail", f"n = {n} exceeds {MAX_N}; pass --force to override")
    if degree is not None and degree > MAX_DEGREE:
        raise CliError(EXIT_GUARDRAIL, "guardrail", f"max degree {degree} exceeds {MAX_DEGREE}; pass --force to override")


def _require_n(args) -> int:
    if args.n is None or args.n < 0:
        raise CliError(EXIT_PARSE, "usage", "--n must be given and non-negative")
    return args.n


def _degree(args) -> int:
    if args.max_degree < 0:
        raise CliError(EXIT_PARSE, "usage", "--max-degree must be non-negative")
    return args.max_degree


# -- commands ------------------------------------------------------------------------


def cmd_poincare(args) -> tuple[dict, int, str]:
    n, top = _require_n(args), _degree(args)
    check_guardrails(args, n, top)
    a = realize(read_presentation(args.input), top)
    formula = [int(c) for c in series_to_json(macdonald_sp_series(a.betti(), n, top))]
    brute = [len(sp_basis(a, n, d)) for d in range(top + 1)]
    results = {"macdonald": formula, "brute": brute}
    other = "brute" if args.method == "macdonald" else "macdonald"
    out = {
        "method": args.method,
        "n": n,
        "D": top,
        "coefficients": [str(c) for c in results[args.method]],
        "cross_check": {"method": other, "agree": formula == brute},
    }
    if formula != brute:
        first = next(d for d in range(top + 1) if formula[d] != brute[d])
        out["counterexample"] = {"degree": first, "macdonald": str(formula[first]), "brute": str(brute[first])}
        return out, EXIT_FAIL, f"poincare: methods disagree in degree {first}"
    return out, 0, f"poincare SP^{n} through degree {top}: {' '.join(map(str, results[args.method]))}"


def cmd_sp_basis(args) -> tuple[dict, int, str]:
    n, top = _require_n(args), _degree(args)
    check_guardrails(args, n, top)
    a = realize(read_presentation(args.input), top)
    basis = {}
    for d in range(top + 1):
        classes = sp_basis(a, n, d)
        if classes:
            basis[str(d)] = [sorted(c.factor_names(a)) for c in classes]
    dims = [len(sp_basis(a, n, d)) for d in range(top + 1)]
    out = {"n": n, "D": top, "dims": [str(c) for c in dims], "basis": basis}
    return out, 0, f"sp-basis SP^{n}: {sum(dims)} classes through degree {top}"


def cmd_cohomology(args) -> tuple[dict, int, str]:
    top = _degree(args)
    check_guardrails(args, None, top)
    p = read_presentation(args.input)
    a = realize(p, top + 1)
    out: dict = {"D": top}
    if args.sp is not None:
        if args.sp == "inf":
            raise CliError(EXIT_PARSE, "usage", "cohomology takes --sp N with a finite N")
        n = _parse_sp(args.sp)
        check_guardrails(args, n, top)
        a = SymmetricPower(a, n)
        out["sp"] = n
    result = cohomology_dims(a, top)
    out["dims"] = [str(c) for c in result.dims]
    out["valid_through"] = result.valid_through
    return out, 0, f"cohomology through degree {top}: {' '.join(map(str, result.dims))}"


def _parse_sp(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise CliError(EXIT_PARSE, "usage", f"--sp expects an integer or 'inf', got {text!r}") from None
    if n < 1:
        raise CliError(EXIT_PARSE, "usage", "--sp must be at least 1")
    return n


def _family_model(args) -> tuple[CdgaModel, dict]:
    n, m = args.n, args.m
    if n is None or m is None or n < 1 or m < 1:
        raise CliError(EXIT_PARSE, "usage", "--family needs --m and --n, both at least 1")
    check_guardrails(args, n)
    extra: dict = {"family": args.family, "m": m, "n": n}
    if args.family == "cpm":
        red = contractible_pair_reduction(cpm_sp_model(m, n))
        extra["eliminated"] = _pairs(red.pairs)
        return red.model, extra
    if args.family == "even-sphere":
        res = even_sphere_minimal_model(m, n)
        extra["eliminated"] = _pairs(res.pairs)
        extra["constant"] = _scalar(res.constant)
        extra["sign"] = res.sign
        return res.model, extra
    return odd_sphere_minimal_model(m, n), extra


def _pairs(pairs) -> list[list[str]]:
    return [[u, v, _scalar(c)] for u, v, c in pairs]


def _input_model(args) -> tuple[CdgaModel, dict]:
    """The free model named by --input, optionally replaced by SP^n or SP via --sp."""
    p = read_presentation(args.input)
    if args.sp is None:
        return CdgaModel.from_presentation(p), {}
    if args.sp == "inf":
        top = _degree(args)
        check_guardrails(args, None, top)
        return infinite_sp_model(realize(p, top + 1)), {"sp": "inf"}
    n = _parse_sp(args.sp)
    check_guardrails(args, n)
    red = contractible_pair_reduction(sp_free_model(p, n))
    return red.model, {"sp": n, "eliminated": _pairs(red.pairs)}


def _model(args) -> tuple[CdgaModel, dict]:
    if args.family is not None:
        if args.input is not None:
            raise CliError(EXIT_PARSE, "usage", "give either --family or --input, not both")
        return _family_model(args)
    return _input_model(args)


def cmd_homotopy(args) -> tuple[dict, int, str]:
    top = _degree(args)
    model, extra = _model(args)
    table = linearized_homotopy(model, top)
    out = {**extra, "D": top, "homotopy": _table(table.dims), "valid_through": table.valid_through}
    summary = ", ".join(f"{k}:{v}" for k, v in out["homotopy"].items()) or "none"
    return out, 0, f"rational homotopy through degree {table.valid_through}: {summary}"


def cmd_minimal_model(args) -> tuple[dict, int, str]:
    model, extra = _model(args)
    if "eliminated" not in extra:
        red = contractible_pair_reduction(model)
        model, extra = red.model, {**extra, "eliminated": _pairs(red.pairs)}
    desc = model.describe()
    out = {
        **extra,
        "generators": {k: v for k, v in desc["generators"].items()},
        "differential": desc["differential"],
        "minimal": model.is_minimal(),
        "model": model.to_text(),
    }
    if desc["cutoff"] is not None:
        out["valid_through"] = desc["cutoff"]
    gens = " ".join(f"{k}:{v}" for k, v in desc["generators"].items())
    return out, 0, f"minimal model on {gens or 'no generators'}"


def cmd_verify(args) -> tuple[dict, int, str]:
    kwargs = {}
    suite = args.suite
    if args.n is not None:
        key = {"lemma-iso": "max_n", "series-stability": "max_n", "cpm-cohomology": "max_n"}.get(suite)
        if key is None:
            raise CliError(EXIT_PARSE, "usage", f"--n does not apply to {suite}")
        kwargs[key] = args.n
        check_guardrails(args, args.n)
    if args.m is not None:
        if suite != "cpm-cohomology":
            raise CliError(EXIT_PARSE, "usage", f"--m does not apply to {suite}")
        kwargs["max_m"] = args.m
    if args.max_degree_given:
        key = {"lemma-iso": "cutoff", "series-stability": "top", "dold-thom": "top", "prop-free": "cutoff"}.get(suite)
        if key is None:
            raise CliError(EXIT_PARSE, "usage", f"--max-degree does not apply to {suite}")
        kwargs[key] = _degree(args)
        check_guardrails(args, None, args.max_degree)
    if suite == "dold-thom":
        kwargs["count"] = args.count
        kwargs["seed"] = args.seed
    report = run_suite(suite, **kwargs).as_dict()
    code = 0 if report["passed"] else EXIT_FAIL
    status = "PASS" if report["passed"] else "FAIL"
    summary = f"verify {suite}: {status} ({report['total'] - report['failed']}/{report['total']} checks)"
    if report["counterexample"]:
        summary += f"; first failure: {json.dumps(report['counterexample'], sort_keys=True)}"
    return report, code, summary


COMMANDS = {
    "poincare": cmd_poincare,
    "sp-basis": cmd_sp_basis,
    "cohomology": cmd_cohomology,
    "homotopy": cmd_homotopy,
    "minimal-model": cmd_minimal_model,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symprod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_n=False):
        p.add_argument("--input", help="presentation file, '-' for stdin, or builtin:NAME")
        p.add_argument("--n", type=int, help="symmetric power" if needs_n else "size parameter")
        p.add_argument("--max-degree", type=int, default=None, help="degree cutoff D (default 10)")
        p.add_argument("--json", action="store_true", help="compact single-line JSON")
        p.add_argument("--output", help="write JSON here instead of stdout")
        p.add_argument("--force", action="store_true", help="ignore the n <= 6, D <= 16 guardrails")

    p = sub.add_parser("poincare", help="Poincaré series of SP^n(A)")
    common(p, needs_n=True)
    p.add_argument("--method", choices=["macdonald", "brute"], default="macdonald")

    p = sub.add_parser("sp-basis", help="orbit-sum basis of SP^n(A)")
    common(p, needs_n=True)

    p = sub.add_parser("cohomology", help="cohomology of (A, d) or of SP^n(A, d)")
    common(p)
    p.add_argument("--sp", help="take SP^N first")

    for name, text in (("homotopy", "rational homotopy of a free model"), ("minimal-model", "minimal model")):
        p = sub.add_parser(name, help=text)
        common(p)
        p.add_argument("--sp", help="N or 'inf': use the model of SP^N or SP")
        p.add_argument("--family", choices=["cpm", "even-sphere", "odd-sphere"])
        p.add_argument("--m", type=int)

    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    common(p)
    p.add_argument("--m", type=int, help="largest m (cpm-cohomology)")
    p.add_argument("--count", type=int, default=20, help="random models (dold-thom)")
    p.add_argument("--seed", type=int, default=0, help="random seed (dold-thom)")
    return parser


def dump(doc: dict, compact: bool) -> str:
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args.max_degree_given = args.max_degree is not None
    if args.max_degree is None:
        args.max_degree = 10
    try:
        doc, code, summary = COMMANDS[args.command](args)
    except CliError as exc:
        doc, code, summary = {"error": exc.kind, "message": str(exc), **exc.extra}, exc.code, str(exc)
    except NotConnectedError as exc:
        doc, code, summary = _error("not-connected", exc), EXIT_CONNECTED, str(exc)
    except PresentationError as exc:
        doc, code, summary = _error("parse", exc), EXIT_PARSE, str(exc)
    except (GuardrailError, DegreeOverflow) as exc:
        doc, code, summary = {"error": "guardrail", "message": str(exc)}, EXIT_GUARDRAIL, str(exc)
    except (NotFreeError, ReductionError) as exc:
        doc, code, summary = {"error": "not-free", "message": str(exc)}, EXIT_NOT_FREE, str(exc)
    doc["command"] = args.command
    text = dump(doc, args.json) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return code


def _error(kind: str, exc: PresentationError) -> dict:
    out = {"error": kind, "message": str(exc)}
    if exc.line is not None:
        out["line"] = exc.line
        out["column"] = exc.column
    return out


if __name__ == "__main__":
    raise SystemExit(main())
