"""Command line entry point: ``nctorus <subcommand> ...``.

Exit status 0 when every requested check passes, 1 when a check fails (the
report is still written) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .bialgebra import VerificationReport, _jsonable

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    params: dict = dc_field(default_factory=dict)
    output: str | None = None
    format: str = "json"
    jobs: int = 1


# -- deterministic JSON -------------------------------------------------------


def _plain(x):
    if isinstance(x, VerificationReport):
        return _plain(x.to_json())
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return str(x)
    return _plain(_jsonable(x)) if isinstance(x, (set, frozenset)) else str(x)


def _fmt_float(v: float) -> str:
    if math.isnan(v):
        return '"nan"'
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    s = format(v, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _dump(x, indent: int = 0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(x[k], indent + 1)}" for k in sorted(x)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(x, list):
        if not x:
            return "[]"
        return "[\n" + ",\n".join(inner + _dump(v, indent + 1) for v in x) + "\n" + pad + "]"
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, float):
        return _fmt_float(x)
    return json.dumps(x)


def dumps(report: dict) -> str:
    """Sorted keys, floats at 17 significant digits and a schema tag."""
    return _dump(_plain({"schema": SCHEMA, **report})) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- subcommands ------------------------------------------------------------


def _backend_field(N: int, backend: str):
    from .rational_torus import torus_field

    return torus_field(N, backend)


def cmd_verify_manin(cfg: RunConfig) -> int:
    from .bialgebra import verify_manin
    from .rational_torus import manin_witness

    N, backend = cfg.params["n"], cfg.params["backend"]
    w = manin_witness(N, _backend_field(N, backend))
    r = verify_manin(w)
    report = {"command": "verify-manin", "n": N, "backend": backend, "report": r}
    if cfg.params.get("dump_matrices"):
        report["matrices"] = {
            "labels": [str(lab) for lab in w.labels],
            "A": [m.to_json() for m in w.a_basis],
            "B": [m.to_json() for m in w.b_basis],
        }
    _emit(dumps(report), cfg.output)
    print(r.line(), file=sys.stderr)
    return EXIT_OK if r.passed else EXIT_FAIL


def cmd_structure_constants(cfg: RunConfig) -> int:
    from .bialgebra import extract_constants
    from .rational_torus import manin_witness

    N, backend = cfg.params["n"], cfg.params["backend"]
    sc = extract_constants(manin_witness(N, _backend_field(N, backend)))
    if cfg.format == "csv":
        _emit(sc.to_csv(), cfg.output)
    else:
        _emit(dumps({"command": "structure-constants", "n": N, "backend": backend, "constants": sc.to_json()}), cfg.output)
    return EXIT_OK


def cmd_sl_fixtures(cfg: RunConfig) -> int:
    from .acceptance import c3_sl_fixtures

    ok, summary, _ = c3_sl_fixtures()
    _emit(dumps({"command": "sl-fixtures", "passed": ok, "fixtures": summary}), cfg.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classical(cfg: RunConfig) -> int:
    from .classical_torus import bracket_table_check, gram_check, mixed_constants

    W = cfg.params["window"]
    report: dict = {"command": "classical", "window": W}
    checks = [gram_check(W)]
    report["gram"] = checks[0]
    if cfg.params.get("check_tables"):
        checks.append(bracket_table_check(W))
        report["tables"] = checks[-1]
    if cfg.params.get("mixed"):
        mixed = mixed_constants(W)
        checks.append(mixed.report)
        report["mixed"] = {"report": mixed.report, "constants": mixed.constants.to_json()}
    ok = all(c.passed for c in checks)
    report["passed"] = ok
    _emit(dumps(report), cfg.output)
    for c in checks:
        print(c.line(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_nc_torus(cfg: RunConfig) -> int:
    from .nc_torus import nc_constants, order_csv, parse_theta

    theta, W = parse_theta(cfg.params["theta"]), cfg.params["window"]
    ok = True
    if cfg.params.get("order_plot"):
        _emit(order_csv(theta, cfg.params.get("order_window", 20)), cfg.params["order_plot"])
    if cfg.params.get("constants") or not cfg.params.get("order_plot"):
        res = nc_constants(theta, W)
        ok = res.report.passed
        report = {
            "command": "nc-torus",
            "theta": str(theta),
            "window": W,
            "report": res.report,
            "display_matches": res.display_matches,
            "informational": res.informational,
            "constants": res.constants.to_json(),
        }
        _emit(dumps(report), cfg.params.get("constants") or cfg.output)
        print(res.report.line(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _rieffel_one(args):
    from .rieffel import rieffel_report

    theta, grid, profile = args
    return rieffel_report(theta, grid, profile)


def cmd_rieffel(cfg: RunConfig) -> int:
    thetas, grid, profile = cfg.params["theta"], cfg.params["grid"], cfg.params["profile"]
    jobs = [(t, grid, profile) for t in thetas]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            reps = list(ex.map(_rieffel_one, jobs))
    else:
        reps = [_rieffel_one(j) for j in jobs]
    ok = all(all(c.passed for c in r["checks"].values()) for r in reps)
    body = reps[0] if len(reps) == 1 else {"runs": reps}
    _emit(dumps({"command": "rieffel", "passed": ok, **body}), cfg.output)
    for r in reps:
        for c in r["checks"].values():
            print(c.line(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_taft(cfg: RunConfig) -> int:
    from .taft import taft_report

    N = cfg.params["n"]
    rep = taft_report(N, cfg.params["s"], with_rank=cfg.params.get("rank", False))
    checks = [rep["hopf"], rep["comodule"]] + ([rep["translation"]] if "translation" in rep else [])
    ok = all(c.passed for c in checks) and rep["coinvariant_dimension"] == 1 and rep.get("bijective", True)
    _emit(dumps({"command": "taft", "passed": ok, **rep}), cfg.output)
    for c in checks:
        print(c.line(), file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _criterion(n: int):
    from .acceptance import run_criterion

    return run_criterion(n)


def run_all(numbers, jobs: int = 1):
    from .acceptance import suite_report

    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_criterion, numbers))
    else:
        results = [_criterion(n) for n in numbers]
    for r in results:
        r.reports = []
    return results, suite_report(results)


def cmd_all(cfg: RunConfig) -> int:
    from .acceptance import CRITERIA

    numbers = cfg.params.get("criteria") or sorted(CRITERIA)
    results, report = run_all(numbers, cfg.jobs)
    for r in results:
        print(r.line(), file=sys.stderr)
    text = dumps({"command": "all", **report})
    if cfg.params.get("determinism"):
        _, again = run_all(numbers, cfg.jobs)
        same = dumps({"command": "all", **again}) == text
        report["criteria"]["11"] = {"title": "determinism of the report", "passed": same, "summary": {"identical": same}}
        report["passed"] = report["passed"] and same
        text = dumps({"command": "all", **report})
        print(f"criterion 11 [{'PASS' if same else 'FAIL'}] determinism of the report", file=sys.stderr)
    _emit(text, cfg.output)
    return EXIT_OK if report["passed"] else EXIT_FAIL


COMMANDS = {
    "verify-manin": cmd_verify_manin,
    "structure-constants": cmd_structure_constants,
    "sl-fixtures": cmd_sl_fixtures,
    "classical": cmd_classical,
    "nc-torus": cmd_nc_torus,
    "rieffel": cmd_rieffel,
    "taft": cmd_taft,
    "all": cmd_all,
}


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nctorus", description="Lie bi-algebra checks for the non-commutative torus.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def out(sp):
        sp.add_argument("--json", dest="output", metavar="PATH", help="write the JSON report here (default stdout)")

    sp = sub.add_parser("verify-manin", help="Manin triple checks for gl_N")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--backend", choices=("exact", "approx"), default="exact")
    sp.add_argument("--dump-matrices", action="store_true")
    out(sp)

    sp = sub.add_parser("structure-constants", help="export Gamma and Delta for gl_N")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--backend", choices=("exact", "approx"), default="exact")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--output", "-o", metavar="PATH")

    sp = sub.add_parser("sl-fixtures", help="SL(2) and SL(3) fixtures")
    out(sp)

    sp = sub.add_parser("classical", help="classical torus bracket tables")
    sp.add_argument("--window", type=int, default=4)
    sp.add_argument("--check-tables", action="store_true")
    sp.add_argument("--mixed", action="store_true")
    out(sp)

    sp = sub.add_parser("nc-torus", help="irrational torus constants and the K-order")
    sp.add_argument("--theta", required=True, help="float or p/q")
    sp.add_argument("--window", type=int, default=3)
    sp.add_argument("--constants", metavar="PATH", help="write the constants report here")
    sp.add_argument("--order-plot", metavar="PATH", help="write the cone classification as CSV")
    sp.add_argument("--order-window", type=int, default=20)

    sp = sub.add_parser("rieffel", help="Powers-Rieffel projection")
    sp.add_argument("--theta", type=float, nargs="+", required=True)
    sp.add_argument("--grid", type=int, default=2**14)
    sp.add_argument("--profile", choices=("flat-exp", "cosine"), default="flat-exp")
    sp.add_argument("--jobs", type=int, default=1)
    out(sp)

    sp = sub.add_parser("taft", help="Taft algebra and Galois objects")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", default="1", help="complex parameter, e.g. 0, -1, i, 1/2-3i")
    sp.add_argument("--rank", action="store_true")
    out(sp)

    sp = sub.add_parser("all", help="run the acceptance suite")
    sp.add_argument("--criteria", type=lambda t: [int(x) for x in t.split(",")], help="comma separated subset")
    sp.add_argument("--determinism", action="store_true", help="run twice and compare the reports")
    sp.add_argument("--jobs", type=int, default=1)
    out(sp)
    return p


def parse_config(argv) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    params = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "output", "format", "jobs")}
    cfg = RunConfig(ns.subcommand, params, getattr(ns, "output", None), getattr(ns, "format", "json"), getattr(ns, "jobs", 1))
    if "n" in params and params["n"] < 2:
        parser.error("--n must be at least 2")
    if cfg.subcommand == "taft" and params.get("rank") and params["n"] not in (2, 3):
        parser.error("--rank needs --n 2 or 3")
    if cfg.subcommand == "taft":
        from .taft import default_field, parse_s

        try:
            parse_s(params["s"], default_field(params["n"]))
        except (ValueError, ZeroDivisionError):
            try:
                complex(params["s"].replace("i", "j"))
            except ValueError:
                parser.error(f"cannot read --s {params['s']!r}")
    if cfg.subcommand == "nc-torus":
        from .nc_torus import parse_theta

        try:
            parse_theta(params["theta"])
        except (ValueError, ZeroDivisionError):
            parser.error(f"cannot read --theta {params['theta']!r}")
    if cfg.subcommand == "rieffel":
        from .rieffel import build_bump

        for t in params["theta"]:
            try:
                build_bump(t, params["grid"], params["profile"])
            except ValueError as exc:
                parser.error(str(exc))
    if cfg.subcommand == "all" and params.get("criteria"):
        from .acceptance import CRITERIA

        bad = [n for n in params["criteria"] if n not in CRITERIA]
        if bad:
            parser.error(f"unknown criteria {bad}")
    if cfg.jobs < 1:
        parser.error("--jobs must be positive")
    return cfg


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.subcommand](cfg)


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
