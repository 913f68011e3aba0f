"""Command line entry point: ``qtetra check ...`` and ``qtetra emit ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .cache import ENV_VAR
from .report import SCHEMA_VERSION, CheckReport
from .suites import FORMATS, MODES, PROFILES, ConfigError, RunConfig, RunResult, parse_pair, parse_value, run_suite

# check subcommand -> (suite name, [(flag, dest, type, default-from-suite)])
_CHECKS = {
    "tetra": ("tetra", [("--max-charge", "max_charge", int)]),
    "rlll": ("rlll", [("--max-level", "max_level", int)]),
    "boundary": ("boundary", [("--s", "s", int), ("--cutoff", "cutoff", int), ("--side", "side", str)]),
    "closed-form": ("closed-form", [("--st", "st", str), ("--max-degree", "max_degree", int),
                                    ("--z-order", "z_order", int)]),
    "relation-21-12": ("relation-21-12", [("--max-degree", "max_degree", int), ("--w-order", "w_order", int)]),
    "ybe": ("ybe", [("--st", "st", str), ("--max-degree", "max_degree", int)]),
    "module-relations": ("module-relations", [("--kind", "kind", str), ("--max-level", "max_level", int),
                                              ("--param", "param", str)]),
    "intertwiner": ("intertwiner", [("--kind", "kind", str), ("--max-degree", "max_degree", int),
                                    ("--param", "param", str), ("--q-base", "q_base", str)]),
    "spectral": ("spectral", [("--kind", "kind", str), ("--max-degree", "max_degree", int),
                              ("--param", "param", str), ("--q-base", "q_base", str)]),
    "quantum-ybe": ("quantum-ybe", [("--kind", "kind", str), ("--max-degree", "max_degree", int),
                                    ("--param", "param", str), ("--q-base", "q_base", str)]),
    "theorem": ("theorem", [("--part", "part", str), ("--max-degree", "max_degree", int)]),
    "corollary": ("corollary", [("--max-d", "max_d", int), ("--max-d22", "max_d22", int)]),
    "rtr01": ("rtr01", [("--z-order", "z_order", int), ("--max-d", "max_d", int), ("--gauge", "gauge", str)]),
    "ffr-ybe": ("ffr-ybe", []),
    "gen-ybe": ("gen-ybe", [("--family", "family", str), ("--eps", "eps", str), ("--z-order", "z_order", int),
                            ("--max-sector", "max_sector", int), ("--st", "st", str)]),
}
_FLAGS = {"ybe": [("--printed", "printed")], "gen-ybe": [("--gauge", "gauge")]}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--mode", choices=MODES, default="exact", help="equality testing mode")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized equality")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for multi-suite runs")
    p.add_argument("--cache-dir", default=None, help=f"block cache directory (default: ${ENV_VAR})")
    p.add_argument("--timings", action="store_true", help="include wall-clock times in JSON output")
    p.add_argument("--report-dir", default=None, help="also write report.json and report.txt here")
    p.add_argument("-v", "--verbose", action="store_true", help="list every sector in text output")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qtetra", description="Exact checks of tetrahedron-equation reductions.")
    top = parser.add_subparsers(dest="command", required=True)

    check = top.add_parser("check", help="run a verification suite")
    checks = check.add_subparsers(dest="suite", required=True)
    for name, (_suite, options) in _CHECKS.items():
        sp = checks.add_parser(name, parents=[common])
        for flag, dest, typ in options:
            sp.add_argument(flag, dest=dest, type=typ, default=None)
        for flag, dest in _FLAGS.get(name, []):
            sp.add_argument(flag, dest=dest, action="store_true", default=None)
    sp = checks.add_parser("all", parents=[common])
    sp.add_argument("--profile", choices=PROFILES, default="acceptance")

    emit = top.add_parser("emit", help="print a matrix")
    emits = emit.add_subparsers(dest="what", required=True)
    sp = emits.add_parser("matrix", parents=[common])
    sp.add_argument("--st", required=True)
    sp.add_argument("--d", type=int, required=True)
    sp = emits.add_parser("quantum-r", parents=[common])
    sp.add_argument("--kind", choices=("a11", "a22"), required=True)
    sp.add_argument("--max-degree", type=int, default=2)
    sp.add_argument("--param", default="q", help="alpha = beta for a11")
    sp.add_argument("--q-base", default="q")
    sp = emits.add_parser("ffr", parents=[common])
    sp.add_argument("--mu", required=True)
    sp.add_argument("--nu", required=True)
    return parser


# ---------------------------------------------------------------------------
# rendering


def _latex_escape(text: str) -> str:
    out = str(text)
    for a, b in (("\\", r"\textbackslash{}"), ("_", r"\_"), ("&", r"\&"), ("%", r"\%"), ("#", r"\#"),
                 ("{", r"\{"), ("}", r"\}"), ("^", r"\^{}")):
        out = out.replace(a, b)
    return out


def result_dict(result: RunResult, timings: bool) -> Dict[str, Any]:
    cfg = result.config
    doc: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "suite": cfg.suite,
        "params": cfg.params,
        "arithmetic": {"mode": cfg.mode, "randomized_calls": sum(r.randomized_calls for r in result.reports)},
        "status": "PASS" if result.passed else "FAIL",
    }
    if cfg.mode == "randomized":
        doc["arithmetic"]["seed"] = cfg.seed
    if result.criteria is None:
        doc["reports"] = [r.to_dict(timings) for r in result.reports]
    else:
        doc["criteria"] = [{"criterion": c.number, "title": c.title, "status": "PASS" if c.passed else "FAIL",
                            "reports": [r.to_dict(timings) for r in c.reports]} for c in result.criteria]
    return doc


def result_text(result: RunResult, verbose: bool = False) -> str:
    lines: List[str] = []
    if result.criteria is None:
        lines += [r.to_text(verbose) for r in result.reports]
    else:
        for c in result.criteria:
            lines.append(f"criterion {c.number:2d}: {'PASS' if c.passed else 'FAIL'}  {c.title}")
            lines += ["    " + ln for r in c.reports for ln in r.to_text(verbose).splitlines()]
    lines.append(f"overall: {'PASS' if result.passed else 'FAIL'}")
    return "\n".join(lines)


def result_latex(result: RunResult) -> str:
    rows = []
    groups = ([(None, result.reports)] if result.criteria is None
              else [(c.number, c.reports) for c in result.criteria])
    for num, reports in groups:
        for r in reports:
            lead = "" if num is None else f"{num} & "
            rows.append(f"{lead}{_latex_escape(r.identity)} & {r.count('PASS')} & {r.count('FAIL')} & "
                        f"{r.count('SKIPPED')} & {'PASS' if r.passed else 'FAIL'} \\\\")
    cols = "lrrrl" if result.criteria is None else "rlrrrl"
    head = ("" if result.criteria is None else "criterion & ") + r"identity & pass & fail & skipped & status \\"
    return "\n".join([rf"\begin{{tabular}}{{{cols}}}", r"\hline", head, r"\hline", *rows, r"\hline",
                      r"\end{tabular}"])


def render(result: RunResult, fmt: str, timings: bool = False, verbose: bool = False) -> str:
    if fmt == "json":
        return json.dumps(result_dict(result, timings), sort_keys=True, indent=2)
    if fmt == "latex":
        return result_latex(result)
    return result_text(result, verbose)


def _matrix_out(doc: Dict[str, Any], rows_rf, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    if fmt == "latex":
        body = " \\\\\n".join(" & ".join(v.to_latex() for v in row) for row in rows_rf)
        return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"
    return "\n".join(" | ".join(v.to_text() for v in row) for row in rows_rf)


# ---------------------------------------------------------------------------
# commands


def _emit(args) -> str:
    if args.what == "matrix":
        from ..reduction import build_M, use_block_cache
        from .cache import BlockCache

        s, t = parse_pair(args.st)
        if args.d < 0:
            raise ConfigError("--d must be nonnegative")
        use_block_cache(BlockCache.from_env(args.cache_dir))
        M = build_M((s, t), args.d)
        doc = {"spec": [s, t], "d": args.d, "rows": [[v.to_text() for v in row] for row in M]}
        return _matrix_out(doc, M, args.format)
    if args.what == "quantum-r":
        from ..qaffine import A11, build_quantum_R

        kind = args.kind.upper()
        if args.max_degree < 0:
            raise ConfigError("--max-degree must be nonnegative")
        extra = (parse_value(args.q_base), parse_value(args.param), parse_value(args.param)) if kind == A11 else ()
        R = build_quantum_R(kind, args.max_degree, *extra)
        blocks = {str(D): [[v.to_text() for v in row] for row in R.blocks[D]] for D in range(args.max_degree + 1)}
        doc = {"kind": args.kind, "param": args.param if kind == A11 else None, "blocks": blocks}
        if args.format == "json":
            return json.dumps(doc, sort_keys=True, indent=2)
        return "\n\n".join(f"block {D}\n" + _matrix_out({}, R.blocks[D], args.format)
                           for D in range(args.max_degree + 1))
    from ..mixed import FreeFermionR

    M = FreeFermionR(parse_value(args.mu), parse_value(args.nu)).matrix()
    doc = {"mu": args.mu, "nu": args.nu, "basis": ["00", "01", "10", "11"],
           "rows": [[v.to_text() for v in row] for row in M]}
    return _matrix_out(doc, M, args.format)


def config_from_args(args) -> RunConfig:
    cache_dir = args.cache_dir or os.environ.get(ENV_VAR) or None
    if args.suite == "all":
        params = {"profile": args.profile}
    else:
        suite, options = _CHECKS[args.suite]
        dests = [d for _f, d, _t in options] + [d for _f, d in _FLAGS.get(args.suite, [])]
        params = {d: getattr(args, d) for d in dests if getattr(args, d) is not None}
        args.suite = suite
    if args.suite != "all" and "kind" in params:
        params["kind"] = params["kind"].lower()
    return RunConfig.from_mapping({"suite": args.suite, "params": params, "mode": args.mode, "seed": args.seed,
                                   "jobs": args.jobs, "cache_dir": cache_dir, "format": args.format,
                                   "timings": args.timings})


def write_reports(result: RunResult, directory: str, timings: bool) -> None:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(render(result, "json", timings) + "\n", encoding="utf-8")
    (out / "report.txt").write_text(render(result, "text", verbose=True) + "\n", encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "emit":
            print(_emit(args))
            return 0
        cfg = config_from_args(args)
    except ConfigError as exc:
        parser.error(str(exc))
    result = run_suite(cfg)
    print(render(result, cfg.format, cfg.timings, args.verbose))
    if args.report_dir:
        write_reports(result, args.report_dir, cfg.timings)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
