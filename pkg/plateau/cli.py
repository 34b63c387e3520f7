"""
Command-line front end.

    plateau analyze SPEC [--spectrum]
    plateau build-code SPEC [--emit-codewords PATH]
    plateau verify SPEC
    plateau search --p P --m M --modulus C0,C1,.. --exponents E1,E2,..
    plateau tables --p P --m M --r R [--epsilon ±1] [--balanced]
    plateau serve

Exit codes: 0 success, 1 verification mismatch or not plateaued, 2 input
error, 3 budget exceeded. Results go to stdout (or ``--out``), logs to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence, TextIO

from plateau.config import Settings, configure_logging, get_settings
from plateau.engine.classifier import Regularity
from plateau.engine.code_builder import codewords, format_codeword
from plateau.engine.finite_field import make_field
from plateau.engine.search import SearchMode, make_filter, sweep
from plateau.engine.theory import render_table
from plateau.exceptions import FieldTooLarge, PlateauError
from plateau.models.reports import PlateauedReportModel, SearchHitModel
from plateau.models.spec import FunctionSpecModel, load_spec
from plateau.service import (
    analysis_report,
    code_report,
    table_prediction,
    tables_report,
    verify_report,
)

logger = logging.getLogger("plateau.cli")

EXIT_OK = 0
EXIT_MISMATCH = 1


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


# ── Parser ─────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--out", type=Path, help="write results to this file")
    common.add_argument("--threads", type=int, help="worker threads for enumeration and search")
    common.add_argument("--budget", type=int, help="operation budget for enumeration or search")
    common.add_argument("--seed", type=int, help="seed for random search")
    common.add_argument("--log-level", help="DEBUG | INFO | WARNING | ERROR")

    parser = argparse.ArgumentParser(
        prog="plateau",
        description="Plateaued p-ary functions, their Walsh spectra and three-weight codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", parents=[common], help="classify Tr(Ψ)")
    analyze.add_argument("spec", type=Path)
    analyze.add_argument("--spectrum", action="store_true", help="include every W_f(b) in JSON")

    build = sub.add_parser("build-code", parents=[common], help="build C_ψ1 and its weights")
    build.add_argument("spec", type=Path)
    build.add_argument("--emit-codewords", type=Path, metavar="PATH", help="write every codeword")

    verify = sub.add_parser("verify", parents=[common], help="cross-check theory and enumeration")
    verify.add_argument("spec", type=Path)

    search = sub.add_parser("search", parents=[common], help="sweep coefficients for a template")
    search.add_argument("--p", type=int, required=True)
    search.add_argument("--m", type=int, required=True)
    search.add_argument("--modulus", type=_int_list, required=True, help="constant term first")
    search.add_argument("--exponents", type=_int_list, required=True)
    search.add_argument("--mode", choices=[m.value for m in SearchMode], default=SearchMode.EXHAUSTIVE.value)
    search.add_argument("--count", type=int, default=100, help="candidates in random mode")
    search.add_argument(
        "--regularity",
        action="append",
        choices=[r.value for r in Regularity],
        help="keep only these regularity classes (repeatable)",
    )
    search.add_argument("--r", type=int, help="keep only this plateau amplitude")
    search.add_argument("--theory-ready", action="store_true", help="keep only tabulated cases")

    tables = sub.add_parser("tables", parents=[common], help="print a closed-form table")
    tables.add_argument("--p", type=int, required=True)
    tables.add_argument("--m", type=int, required=True)
    tables.add_argument("--r", type=int, required=True)
    tables.add_argument("--epsilon", type=int, default=1, choices=[1, -1])
    tables.add_argument("--balanced", action="store_true", help="dual g balanced over the support")

    serve = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    serve.add_argument("--host")
    serve.add_argument("--port", type=int)

    return parser


def _settings_from(args: argparse.Namespace) -> Settings:
    settings = get_settings()
    overrides = {
        "threads": args.threads,
        "seed": args.seed,
        "log_level": args.log_level,
        "host": getattr(args, "host", None),
        "port": getattr(args, "port", None),
    }
    if args.budget is not None:
        key = "search_budget" if args.command == "search" else "enumeration_budget"
        overrides[key] = args.budget
    return settings.model_copy(update={k: v for k, v in overrides.items() if v is not None})


# ── Commands ───────────────────────────────────────────────────────────

def _cmd_analyze(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    report = analysis_report(load_spec(args.spec), settings, include_spectrum=args.spectrum)
    if args.json:
        out.write(report.model_dump_json(indent=2, exclude_none=True) + "\n")
    elif report.plateau is None:
        out.write(f"{report.function}: not plateaued ({report.error})\n")
    else:
        plateau = report.plateau
        out.write(f"{report.function}\n{plateau.summary}\n")
        out.write(f"support size: {plateau.support_size}\n")
        if plateau.epsilon is not None:
            out.write(f"epsilon: {plateau.epsilon:+d}, u: {plateau.u}\n")
        out.write(f"dual value counts N_g: {plateau.ng_counts} ({'balanced' if plateau.g_balanced else 'unbalanced'})\n")
        if plateau.sign_discrepancy:
            out.write(
                f"sign bookkeeping: table sign {plateau.table_sign:+d}, dual sign {plateau.dual_sign_expected:+d}\n"
            )
    return EXIT_OK if report.plateau is not None else EXIT_MISMATCH


def _cmd_build_code(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    report, code = code_report(load_spec(args.spec), settings)
    if args.emit_codewords:
        with args.emit_codewords.open("w", encoding="utf-8") as sink:
            for alpha, index, word in codewords(code):
                sink.write(f"{alpha} {index} {format_codeword(word, code.p)}\n")
        logger.info("Codewords written | path=%s", args.emit_codewords)
    if args.json:
        out.write(report.model_dump_json(indent=2) + "\n")
    else:
        out.write(f"{report.parameters}\n{report.enumerator}\n")
        if report.degenerate:
            out.write(f"warning: degenerate dimension k={report.k} < {report.expected_k}\n")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    report = verify_report(load_spec(args.spec), settings)
    if args.json:
        out.write(report.model_dump_json(indent=2, exclude_none=True) + "\n")
    else:
        out.write(f"{report.plateau.summary}\n{report.code.parameters} {report.code.enumerator}\n")
        for check in report.checks:
            detail = f" ({check.detail})" if check.detail else ""
            out.write(f"[{check.status:>4}] {check.name}{detail}\n")
        out.write("PASS\n" if report.passed else "FAIL\n")
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _cmd_search(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    if args.p**args.m > settings.max_field_size:
        raise FieldTooLarge(f"p^m = {args.p**args.m} exceeds the limit {settings.max_field_size}")
    field = make_field(args.p, args.m, args.modulus)
    accept = make_filter(
        regularity=[Regularity(r) for r in args.regularity] if args.regularity else None,
        r=args.r,
        theory_ready=args.theory_ready,
    )
    hits = sweep(
        args.exponents,
        field,
        args.mode,
        count=args.count,
        seed=settings.seed,
        accept=accept,
        budget=settings.search_budget,
        max_workers=settings.threads,
    )
    for hit in hits:
        model = SearchHitModel(
            spec=FunctionSpecModel.from_spec(hit.spec),
            function=hit.spec.describe(),
            report=PlateauedReportModel.from_report(hit.report),
        )
        if args.json:
            out.write(model.model_dump_json() + "\n")
        else:
            out.write(f"{model.function}: {model.report.summary}\n")
        out.flush()
    return EXIT_OK


def _cmd_tables(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    if args.json:
        report = tables_report(args.p, args.m, args.r, args.epsilon, args.balanced)
        out.write(report.model_dump_json(indent=2) + "\n")
    else:
        prediction = table_prediction(args.p, args.m, args.r, args.epsilon, args.balanced)
        out.write(f"{prediction.provenance}\n{render_table(prediction)}\n")
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    import uvicorn

    uvicorn.run(
        "plateau.main:app",
        host=settings.host,
        port=settings.port,
        log_level=settings.log_level.lower(),
    )
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "build-code": _cmd_build_code,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "tables": _cmd_tables,
    "serve": _cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = _settings_from(args)
    configure_logging(settings.log_level, stream=sys.stderr)

    out: TextIO = args.out.open("w", encoding="utf-8") if args.out else sys.stdout
    try:
        return _COMMANDS[args.command](args, settings, out)
    except PlateauError as exc:
        logger.error("%s | %s", exc.code, exc)
        if args.json:
            out.write(json.dumps({"error": exc.code, "detail": str(exc)}) + "\n")
        return exc.exit_code
    finally:
        if args.out:
            out.close()
