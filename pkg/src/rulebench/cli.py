"""Command line entry points.

`rulebench evaluate` parses a dataset and a rule file, prints a summary
table, and writes any requested exports. `rulebench serve` starts the
local HTTP service.

Exit codes: 0 success, 1 parse/bind diagnostics, 2 I/O failures.
"""

import argparse
import os
import sys
from typing import Optional

from .dataset import parse_dataset, parse_dataset_pair
from .errors import ArchiveWriteFailure, RulebenchError
from .evaluate import EvaluationResult, evaluate_session
from .report import (
    coverage_csv,
    export_json,
    measures_csv,
    pyramid_data,
    scatter_data,
)
from .rules import AlgorithmRegistry, parse_rules
from .server import DEFAULT_MAX_UPLOAD, DEFAULT_PORT, make_server

PORT_ENV_VAR = "SDRD_PORT"

EXIT_OK = 0
EXIT_DIAGNOSTIC = 1
EXIT_IO = 2


def _read_text(path: str, label: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read {label} file {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise _IOFailure(f"{label} file {path} is not UTF-8 text: {exc}") from exc


class _IOFailure(Exception):
    pass


def _load_registry(path: Optional[str]) -> Optional[AlgorithmRegistry]:
    if path is None:
        return None
    try:
        return AlgorithmRegistry.from_file(path)
    except OSError as exc:
        raise _IOFailure(f"cannot read registry file {path}: {exc}") from exc


def _diagnostic(exc: RulebenchError, label: str, path: str) -> str:
    return f"{type(exc).__name__}: {exc} [{label} file: {path}]"


def _summary_lines(result: EvaluationResult) -> list[str]:
    summary = result.summary
    distribution = ", ".join(
        f"{value}: {count}" for value, count in summary.class_distribution.items()
    )
    num_labels = result.ruleset.num_labels
    labels_note = f", {num_labels} labels" if num_labels is not None else ""
    lines = [
        f"dataset {summary.relation_name}: {summary.example_count} examples, "
        f"target {summary.target_name} ({distribution})",
        f"algorithm {result.ruleset.algorithm_name} "
        f"({result.ruleset.dialect}{labels_note}): {len(result.rules)} rule"
        + ("s" if len(result.rules) != 1 else ""),
    ]
    if result.dataset.range_warnings:
        lines.append(
            f"warning: {len(result.dataset.range_warnings)} value(s) outside "
            "declared attribute ranges"
        )
    lines.append("")
    header = (
        f"{'id':>4}  {'consequent':<20} {'tp':>5} {'fp':>5} {'fn':>5} {'tn':>5}  "
        f"{'TPr':>8} {'FPr':>8} {'Conf':>8} {'WRAcc':>8}"
    )
    lines.append(header)
    lines.append("-" * len(header))
    for ev in result.rules:
        t, q = ev.table, ev.quality
        lines.append(
            f"{ev.rule.id:>4}  {ev.rule.consequent:<20} "
            f"{t.tp:>5} {t.fp:>5} {t.fn:>5} {t.tn:>5}  "
            f"{q.tpr:>8.6g} {q.fpr:>8.6g} {q.confidence:>8.6g} {q.wracc_norm:>8.6g}"
        )
    return lines


def _write(path: str, payload: bytes) -> None:
    try:
        with open(path, "wb") as handle:
            handle.write(payload)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


def _cmd_evaluate(args: argparse.Namespace) -> int:
    try:
        registry = _load_registry(args.registry)
        data_text = _read_text(args.data, "data")
        rules_text = _read_text(args.rules, "rules")
        test_text = _read_text(args.test, "test") if args.test else None
    except _IOFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"bad registry file {args.registry}: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTIC

    try:
        if test_text is not None:
            data = parse_dataset_pair(data_text, test_text)
        else:
            data = parse_dataset(data_text)
    except RulebenchError as exc:
        print(_diagnostic(exc, "data", args.data), file=sys.stderr)
        return EXIT_DIAGNOSTIC
    try:
        rules = parse_rules(rules_text, registry=registry)
        result = evaluate_session(data, rules)
    except RulebenchError as exc:
        print(_diagnostic(exc, "rules", args.rules), file=sys.stderr)
        return EXIT_DIAGNOSTIC

    print("\n".join(_summary_lines(result)))

    wants_export = args.json or args.csv or args.svg or args.zip
    if not wants_export:
        return EXIT_OK
    out_dir = args.out or "."
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        print(f"cannot create output directory {out_dir}: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        scatter_svg = pyramid_svg = None
        if args.svg or args.zip:
            from .figures import render_pyramid_svg, render_scatter_svg

            scatter_svg = render_scatter_svg(scatter_data(result))
            pyramid_svg = render_pyramid_svg(pyramid_data(result))
        if args.json:
            _write(os.path.join(out_dir, "result.json"), export_json(result))
        if args.csv:
            _write(os.path.join(out_dir, "measures.csv"), measures_csv(result))
            _write(os.path.join(out_dir, "coverage.csv"), coverage_csv(result))
        if args.svg:
            _write(os.path.join(out_dir, "scatter.svg"), scatter_svg)
            _write(os.path.join(out_dir, "pyramid.svg"), pyramid_svg)
        if args.zip:
            from .report import export_report_zip

            _write(os.path.join(out_dir, "report.zip"), export_report_zip(result))
    except (ArchiveWriteFailure, _IOFailure) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _resolve_port(args: argparse.Namespace) -> int:
    if args.port is not None:
        return args.port
    env_value = os.environ.get(PORT_ENV_VAR)
    if env_value:
        try:
            return int(env_value)
        except ValueError:
            raise _IOFailure(f"{PORT_ENV_VAR} is not an integer: {env_value!r}")
    return DEFAULT_PORT


def _cmd_serve(args: argparse.Namespace) -> int:
    try:
        registry = _load_registry(args.registry)
        port = _resolve_port(args)
    except _IOFailure as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"bad registry file {args.registry}: {exc}", file=sys.stderr)
        return EXIT_DIAGNOSTIC

    try:
        server = make_server(
            host=args.host,
            port=port,
            registry=registry,
            ui_dir=args.ui_dir,
            max_upload=args.max_upload * 1024 * 1024,
        )
    except OSError as exc:
        print(f"cannot bind {args.host}:{port}: {exc}", file=sys.stderr)
        return EXIT_IO

    host, bound_port = server.server_address[:2]
    print(f"serving on http://{host}:{bound_port}/ (API under /api/sessions)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rulebench",
        description="Evaluate supervised descriptive rules against datasets "
        "and report quality measures.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate = commands.add_parser(
        "evaluate", help="evaluate a rule file against a dataset"
    )
    evaluate.add_argument("--data", required=True, help="dataset file")
    evaluate.add_argument("--rules", required=True, help="rule file")
    evaluate.add_argument("--test", help="optional test dataset, appended after schema check")
    evaluate.add_argument("--out", help="output directory for exports (default .)")
    evaluate.add_argument("--json", action="store_true", help="write result.json")
    evaluate.add_argument(
        "--csv", action="store_true", help="write measures.csv and coverage.csv"
    )
    evaluate.add_argument(
        "--svg", action="store_true", help="write scatter.svg and pyramid.svg"
    )
    evaluate.add_argument(
        "--zip", action="store_true", help="write the full report.zip bundle"
    )
    evaluate.add_argument(
        "--registry", help="algorithm registry file mapping names to dialects"
    )
    evaluate.set_defaults(func=_cmd_evaluate)

    serve = commands.add_parser("serve", help="start the local HTTP service")
    serve.add_argument(
        "--port",
        type=int,
        help=f"listen port (default {PORT_ENV_VAR} or {DEFAULT_PORT})",
    )
    serve.add_argument("--host", default="127.0.0.1", help="bind address")
    serve.add_argument("--ui-dir", help="directory of built web assets to serve")
    serve.add_argument(
        "--max-upload",
        type=int,
        default=DEFAULT_MAX_UPLOAD // (1024 * 1024),
        help="maximum upload size in MiB (default 64)",
    )
    serve.add_argument(
        "--registry", help="algorithm registry file mapping names to dialects"
    )
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
