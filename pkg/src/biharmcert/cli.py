"""Command-line driver: every certificate and check as a subcommand.

Exit codes: 0 verified, 1 some step failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction

from . import geomcheck as gc
from .exactnum import format_rational, parse_rational
from .polyalg import (
    PolynomialSyntaxError,
    UnknownVariable,
    VarTable,
    parse_extended,
    parse_polynomial,
    resultant,
    resultant_sylvester,
    sturm_count,
)
from .report import Certificate, StepReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERIFY_TARGETS = ("thm31", "prelim", "beta", "x1f2", "firstpol", "eliminate", "branches", "all")


class CliError(Exception):
    """Bad input discovered after argument parsing."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("-v", "--verbose", action="count", default=0)
    return p


def _seed(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("seed must be a nonnegative integer")
    return n


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="biharmcert", description="Exact certificates for biharmonic hypersurface results.")
    sub = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    verify = sub.add_parser("verify", help="re-derive a chain of identities")
    vsub = verify.add_subparsers(dest="target", required=True, parser_class=_Parser)
    for t in VERIFY_TARGETS:
        vsub.add_parser(t, parents=[common])

    check = sub.add_parser("check", help="classify a concrete hypersurface")
    csub = check.add_subparsers(dest="target", required=True, parser_class=_Parser)
    sp = csub.add_parser("sphere", parents=[common])
    sp.add_argument("--m", type=int)
    sp.add_argument("--a2", type=_rational)
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--config")
    tp = csub.add_parser("torus", parents=[common])
    tp.add_argument("--m1", type=int)
    tp.add_argument("--m2", type=int)
    tp.add_argument("--r1sq", type=_rational)
    tp.add_argument("--c", type=int, default=1)
    tp.add_argument("--config")
    op = csub.add_parser("obstruction", parents=[common])
    op.add_argument("--c", type=int, required=True)

    poly = sub.add_parser("poly", help="polynomial utilities")
    psub = poly.add_subparsers(dest="target", required=True, parser_class=_Parser)
    st = psub.add_parser("sturm", parents=[common])
    st.add_argument("--var", required=True)
    st.add_argument("--poly", action="append", required=True)
    st.add_argument("--lo", default="-inf")
    st.add_argument("--hi", default="inf")
    rs = psub.add_parser("resultant", parents=[common])
    rs.add_argument("--var", required=True)
    rs.add_argument("--poly", action="append", required=True)
    pp = psub.add_parser("parse", parents=[common])
    pp.add_argument("--var", help="comma-separated variable precedence")
    pp.add_argument("--poly", action="append", required=True)
    return top


# -- verify --------------------------------------------------------------


def _verify_certificates(target: str, seed: int, progress) -> list:
    from . import framecalc as fc

    runners = {
        "thm31": fc.thm31_certificate,
        "prelim": fc.verify_prelim_chain,
        "beta": fc.verify_beta_vanishing,
        "x1f2": fc.verify_x1f2,
        "firstpol": fc.verify_first_pol,
        "eliminate": lambda: fc.eliminate_to_univariate(seed=seed),
        "branches": fc.verify_degenerate_branches,
    }
    names = list(runners) if target == "all" else [target]
    certs = []
    for name in names:
        progress(f"running {name}")
        certs.append(runners[name]())
    if target == "all":
        progress("running geometry suite")
        certs.extend(geometry_suite())
    return certs


def geometry_suite() -> list:
    """The concrete instances of the low-dimensional classification."""
    half = Fraction(1, 2)
    certs = [
        _instance_certificate("sphere[3,1/2]", gc.Sphere(3, half, 1)),
        _instance_certificate("torus[1,2,1/2]", gc.CliffordTorus(1, 2, half)),
        _instance_certificate("torus[1,1,1/2]", gc.CliffordTorus(1, 1, half), expect=gc.MINIMAL),
    ]
    certs.extend(gc.space_form_obstruction(c) for c in (0, -1))
    return certs


def _instance_certificate(name: str, h, expect: str = gc.PROPER) -> Certificate:
    d = gc.curvature_data(h)
    defect, status = gc.biharmonic_defect(d)
    steps = [
        StepReport(
            "curvature",
            f"|A|^2 = {format_rational(d.A_sq)}, |H|^2 = {format_rational(d.H_sq)}, |H| = {d.H}",
            "caract_bih_hipersurf_spheres",
            "0",
        ),
        StepReport.from_bool(
            "biharmonic",
            f"instance is {expect} (defect |A|^2 - m*c = {format_rational(defect)})",
            "caract_bih_hipersurf_spheres",
            status == expect,
            detail=f"instance is {status}",
        ),
        gc.scalar_curvature_check(d),
    ]
    if d.m == 3 and d.c == 1:
        cls = gc.classify_compact_S4(h)
        steps.append(
            StepReport("classification", f"{cls.label}: {cls.rationale}",
                       "the hypersphere and the torus", "0")
        )
    return Certificate(name, steps, f"{name}: {status}")


# -- check ---------------------------------------------------------------


def _load_config(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return gc.instance_from_config(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read config {path!r}: {exc.strerror}") from exc


def _check(ns) -> list:
    if ns.target == "obstruction":
        return [gc.space_form_obstruction(ns.c)]
    if ns.config:
        h = _load_config(ns.config)
    elif ns.target == "sphere":
        if ns.m is None or ns.a2 is None:
            raise CliError("check sphere needs --m and --a2 (or --config)")
        h = gc.Sphere(ns.m, ns.a2, ns.c)
    else:
        if ns.m1 is None or ns.m2 is None or ns.r1sq is None:
            raise CliError("check torus needs --m1, --m2 and --r1sq (or --config)")
        h = gc.CliffordTorus(ns.m1, ns.m2, ns.r1sq, ns.c)
    return [_instance_certificate(ns.target, h)]


# -- poly ----------------------------------------------------------------

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")


def _table_for(texts, first=()) -> VarTable:
    names = list(first)
    for t in texts:
        for n in _NAME_RE.findall(t):
            if n not in names:
                names.append(n)
    return VarTable(names or ["x"])


def _poly(ns) -> list:
    if ns.target == "sturm":
        if len(ns.poly) != 1:
            raise CliError("poly sturm takes exactly one --poly")
        table = _table_for(ns.poly, [ns.var])
        p = parse_polynomial(ns.poly[0], table)
        extra = [v for v in p.variables() if v != ns.var]
        if extra:
            raise CliError(f"polynomial is not univariate in {ns.var}: also uses {', '.join(extra)}")
        try:
            lo, hi = parse_extended(ns.lo), parse_extended(ns.hi)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"malformed interval endpoint: {exc}") from exc
        n = sturm_count(p, ns.var, lo, hi)
        step = StepReport("sturm", f"{p} has {n} distinct real roots in ({ns.lo}, {ns.hi}]", "", "0")
        return [Certificate("sturm", [step], f"count {n}")]
    if ns.target == "resultant":
        if len(ns.poly) != 2:
            raise CliError("poly resultant takes exactly two --poly")
        table = _table_for(ns.poly, [ns.var])
        a, b = (parse_polynomial(t, table) for t in ns.poly)
        try:
            r = resultant(a, b, ns.var)
            r2 = resultant_sylvester(a, b, ns.var)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        steps = [
            StepReport("resultant", f"Res_{ns.var} = {r}", "", "0"),
            StepReport.from_residual("sylvester", "Sylvester determinant agrees", "", r - r2),
        ]
        return [Certificate("resultant", steps, f"Res_{ns.var} = {r}")]
    first = ns.var.split(",") if ns.var else []
    table = _table_for(ns.poly, [v.strip() for v in first if v.strip()])
    steps = []
    for text in ns.poly:
        p = parse_polynomial(text, table)
        again = parse_polynomial(str(p), table)
        steps.append(StepReport.from_residual("parse", f"canonical form {p}", "", p - again))
    return [Certificate("parse", steps, "; ".join(s.claim for s in steps))]


# -- output --------------------------------------------------------------


def _report(command: str, certs: list, elapsed_ms: int, seed: int, status=None) -> dict:
    steps = []
    multi = len(certs) > 1
    for cert in certs:
        for s in cert.steps:
            d = s.to_dict()
            if multi:
                d["name"] = f"{cert.name}:{d['name']}"
            steps.append(d)
    if status is None:
        status = "verified" if all(c.verified for c in certs) else "failed"
    return {"command": command, "status": status, "steps": steps, "timing_ms": elapsed_ms, "seed": seed}


def _render_text(report: dict, certs: list, verbose: int) -> str:
    lines = [f"command: {report['command']}", f"status: {report['status']}"]
    for s in report["steps"]:
        ref = f" [{s['paper_ref']}]" if s["paper_ref"] and verbose else ""
        lines.append(f"  {s['status']:<9} {s['name']}: {s['claim']}{ref}")
        if s["status"] != "verified" or verbose > 1:
            lines.append(f"            witness: {s['witness']}")
    for c in certs:
        lines.append(f"conclusion: {c.conclusion}")
    if verbose:
        lines.append(f"seed: {report['seed']}  timing: {report['timing_ms']} ms")
    return "\n".join(lines) + "\n"


_VALUE_FLAGS = {"--poly", "--lo", "--hi", "--c", "--a2", "--r1sq", "--var", "--m", "--m1", "--m2"}


def _glue_values(args: list) -> list:
    """Attach values like ``-inf`` or ``-x + 1`` to their flag so argparse keeps them."""
    out, i = [], 0
    while i < len(args):
        a = args[i]
        if a in _VALUE_FLAGS and i + 1 < len(args) and args[i + 1].startswith("-"):
            out.append(f"{a}={args[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def _requested_format(args: list) -> str:
    for i, a in enumerate(args):
        if a == "--format=json" or (a == "--format" and args[i + 1 : i + 2] == ["json"]):
            return "json"
    return "text"


def run_cli(args=None, stdout=None, stderr=None) -> int:
    args = list(sys.argv[1:] if args is None else args)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    command = " ".join(args)
    fmt = _requested_format(args)
    seed = 0
    start = time.perf_counter()

    def fail(msg: str) -> int:
        print(f"error: {msg}", file=stderr)
        if fmt == "json":
            rep = _report(command, [], int((time.perf_counter() - start) * 1000), seed, status="error")
            stdout.write(json.dumps(rep, indent=2) + "\n")
        return EXIT_USAGE

    try:
        ns = build_parser().parse_args(_glue_values(args))
    except CliError as exc:
        return fail(str(exc))
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    fmt, seed = ns.format, ns.seed

    def progress(msg):
        if fmt == "text" and ns.verbose >= 1:
            print(msg, file=stderr)

    try:
        if ns.group == "verify":
            certs = _verify_certificates(ns.target, ns.seed, progress)
        elif ns.group == "check":
            certs = _check(ns)
        else:
            certs = _poly(ns)
    except (CliError, gc.InvalidInstance, gc.UsageError, PolynomialSyntaxError, UnknownVariable) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownVariable) else str(exc)
        if isinstance(exc, UnknownVariable):
            msg = f"unknown variable {msg!r}"
        return fail(msg)
    except (ValueError, ZeroDivisionError) as exc:
        return fail(str(exc))

    elapsed = int((time.perf_counter() - start) * 1000)
    report = _report(command, certs, elapsed, ns.seed)
    if fmt == "json":
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        stdout.write(_render_text(report, certs, ns.verbose))
    return EXIT_OK if report["status"] == "verified" else EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
