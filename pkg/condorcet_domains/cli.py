"""Command-line entry point.

Examples:
    python condorcet.py check samples/crab.txt --property maximal
    python condorcet.py compose samples/sp_123.txt samples/sp_234.txt
    python condorcet.py enumerate --n 4 --classes --flags
    python condorcet.py catalog verify --json-out catalog_report.json
    python condorcet.py theorem
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from condorcet_domains.catalog import CatalogLookupError, catalog_entries, catalog_get, verify_catalog
from condorcet_domains.claims import run_all_claims
from condorcet_domains.composition import (
    is_right_obstruction,
    nl_compose,
    nl_decompose,
    theorem_hypotheses,
)
from condorcet_domains.config import load_settings
from condorcet_domains.core import DomainError, is_condorcet
from condorcet_domains.domain_text import read_domain, read_domains, render_domain_blocks, render_domain_text, write_domain
from condorcet_domains.enumeration import (
    class_flags,
    classify,
    decomposability_census,
    enumerate_maximal,
    enumerate_maximal_backtracking,
)
from condorcet_domains.graphs import build_graph, graph_summary, write_dot
from condorcet_domains.properties import (
    Axis,
    has_maximal_width,
    is_ample,
    is_arrow_single_peaked,
    is_copious,
    is_maximal,
    is_single_crossing,
    is_single_peaked_wrt,
)


PROPERTIES: dict[str, Callable] = {
    "condorcet": is_condorcet,
    "maximal": is_maximal,
    "ample": is_ample,
    "copious": is_copious,
    "max-width": has_maximal_width,
    "arrow-sp": is_arrow_single_peaked,
    "single-crossing": is_single_crossing,
}


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _stderr_events(event_type: str, message: str, details: dict[str, Any]) -> None:
    print(f"[{event_type}] {message}", file=sys.stderr)


def _cmd_check(args) -> int:
    domain = read_domain(args.file)
    if args.property == "single-peaked":
        if not args.axis:
            raise DomainError("--property single-peaked needs --axis")
        result = is_single_peaked_wrt(domain, Axis.parse(args.axis))
    else:
        if args.axis:
            raise DomainError(f"--axis only applies to --property single-peaked, not {args.property}")
        result = PROPERTIES[args.property](domain)
    print(_bool(result))
    return 0 if result else 1


def _cmd_compose(args) -> int:
    composed = nl_compose(read_domain(args.file1), read_domain(args.file2))
    if args.output:
        write_domain(composed, args.output)
    sys.stdout.write(render_domain_text(composed))
    return 0


def _cmd_decompose(args) -> int:
    decompositions = nl_decompose(read_domain(args.file))
    if not decompositions:
        print("none")
        return 0
    for roles, left, right in decompositions:
        print(f"x={roles.x} y={roles.y}")
        print(f"left: {left}")
        print(f"right: {right}")
    return 0


def _cmd_obstruction(args) -> int:
    print(_bool(is_right_obstruction(read_domain(args.file), args.a, args.b, args.c)))
    return 0


def _cmd_hypotheses(args) -> int:
    report = theorem_hypotheses(read_domain(args.file1), read_domain(args.file2))
    if args.json:
        print(report.to_json())
        return 0
    for key, value in report.to_dict().items():
        print(f"{key}: {_bool(value) if isinstance(value, bool) else value}")
    return 0


def _print_classes(classes, show_flags: bool, as_json: bool) -> None:
    census = decomposability_census(classes)
    if as_json:
        payload = {
            "classes": [class_flags(item).to_dict() for item in classes],
            "census": census.to_dict(),
        }
        print(json.dumps(payload, ensure_ascii=False, indent=2))
        return
    for item in classes:
        line = item.canonical_key
        if show_flags:
            flags = class_flags(item).to_dict()
            flags.pop("canonical_key")
            line += " " + " ".join(
                f"{key}={_bool(value) if isinstance(value, bool) else ('-' if value is None else value)}"
                for key, value in flags.items()
            )
        print(line)
    print(f"CENSUS: {census.count}/{census.total} decomposable")


def _cmd_enumerate(args, event_callback) -> int:
    if args.labeled and args.iso_only:
        raise DomainError("--iso-only groups classes and cannot be combined with --labeled")
    if args.method == "backtracking":
        domains = enumerate_maximal_backtracking(args.n, allow_large=args.allow_large, event_callback=event_callback)
    else:
        domains = enumerate_maximal(args.n, allow_large=args.allow_large, event_callback=event_callback)
    if args.classes or args.iso_only:
        _print_classes(classify(domains, with_flip=not args.iso_only), args.flags, args.json)
        return 0
    if args.json:
        print(json.dumps({"n": args.n, "count": len(domains), "domains": [domain.key() for domain in domains]}, indent=2))
        return 0
    sys.stdout.write(render_domain_blocks(domains))
    return 0


def _cmd_classify(args) -> int:
    _print_classes(classify(read_domains(args.file), with_flip=not args.iso_only), args.flags, args.json)
    return 0


def _cmd_graph(args) -> int:
    graph = build_graph(read_domain(args.file))
    if args.dot:
        write_dot(graph, args.dot)
    if args.summary or not args.dot:
        for key, value in graph_summary(graph).to_dict().items():
            print(f"{key}: {_bool(value) if isinstance(value, bool) else value}")
    return 0


def _cmd_catalog(args, event_callback) -> int:
    if args.catalog_command == "list":
        for entry in catalog_entries():
            print(f"{entry.id}\t{entry.alias or '-'}\t{len(entry.matrix_orders)} orders")
        return 0
    if args.catalog_command == "show":
        entry = catalog_get(args.id)
        print(f"# {entry.id} {entry.alias or ''}".rstrip())
        sys.stdout.write(render_domain_text(entry.matrix_orders))
        return 0

    report = verify_catalog(event_callback=event_callback)
    if args.json_out:
        Path(args.json_out).write_text(report.to_json() + "\n", encoding="utf-8")
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def _cmd_theorem(args, event_callback) -> int:
    results = run_all_claims(event_callback=event_callback, workers=load_settings().workers)
    if args.json:
        print(json.dumps([result.to_dict() for result in results], ensure_ascii=False, indent=2))
    else:
        for result in results:
            print(f"{'PASS' if result.passed else 'FAIL'} {result.name} ({result.cases} cases)")
            for failure in result.failures:
                print(f"  - {failure}")
    return 0 if all(result.passed for result in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Condorcet domain toolkit: properties, composition, enumeration")
    parser.add_argument("--verbose", action="store_true", help="Print progress events to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="Test a property of a domain file")
    check.add_argument("file")
    check.add_argument("--property", required=True, choices=[*PROPERTIES, "single-peaked"])
    check.add_argument("--axis", help='Axis for single-peaked checks, e.g. "1 2 3 4"')

    compose = commands.add_parser("compose", help="Never-last composition of two domain files")
    compose.add_argument("file1")
    compose.add_argument("file2")
    compose.add_argument("-o", "--output", help="Also write the composed domain to this file")

    decompose = commands.add_parser("decompose", help="List every never-last decomposition")
    decompose.add_argument("file")

    obstruction = commands.add_parser("obstruction", help="Is a a right obstruction to the swap bc -> cb?")
    obstruction.add_argument("file")
    obstruction.add_argument("--a", type=int, required=True)
    obstruction.add_argument("--b", type=int, required=True)
    obstruction.add_argument("--c", type=int, required=True)

    hypotheses = commands.add_parser("hypotheses", help="Report the composition theorem's hypotheses")
    hypotheses.add_argument("file1")
    hypotheses.add_argument("file2")
    hypotheses.add_argument("--json", action="store_true")

    enumerate_ = commands.add_parser("enumerate", help="All maximal Condorcet domains on {1..n}")
    enumerate_.add_argument("--n", type=int, required=True)
    mode = enumerate_.add_mutually_exclusive_group()
    mode.add_argument("--classes", action="store_true", help="One canonical representative per class")
    mode.add_argument("--labeled", action="store_true", help="Every labeled domain (default)")
    enumerate_.add_argument("--flags", action="store_true", help="Show per-class flags")
    enumerate_.add_argument("--iso-only", action="store_true", help="Classes up to relabeling only, without flip merging")
    enumerate_.add_argument("--method", choices=["conditions", "backtracking"], default="conditions")
    enumerate_.add_argument("--allow-large", action="store_true", help="Permit n above CONDORCET_MAX_ENUMERATION_N")
    enumerate_.add_argument("--json", action="store_true")

    classify_ = commands.add_parser("classify", help="Group the domains of a multi-domain file into classes")
    classify_.add_argument("file")
    classify_.add_argument("--iso-only", action="store_true", help="Do not merge flipped domains")
    classify_.add_argument("--flags", action="store_true")
    classify_.add_argument("--json", action="store_true")

    graph = commands.add_parser("graph", help="Swap graph of a domain")
    graph.add_argument("file")
    graph.add_argument("--dot", help="Write DOT output to this path")
    graph.add_argument("--summary", action="store_true")

    catalog = commands.add_parser("catalog", help="Printed domain catalog")
    catalog_commands = catalog.add_subparsers(dest="catalog_command", required=True)
    catalog_commands.add_parser("list")
    show = catalog_commands.add_parser("show")
    show.add_argument("id")
    verify = catalog_commands.add_parser("verify")
    verify.add_argument("--json-out", help="Optional path to write the full JSON report")

    theorem = commands.add_parser("theorem", help="Run the exhaustive claim checks")
    theorem.add_argument("--json", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    event_callback = _stderr_events if args.verbose else None
    try:
        if args.command == "enumerate":
            return _cmd_enumerate(args, event_callback)
        if args.command == "catalog":
            return _cmd_catalog(args, event_callback)
        if args.command == "theorem":
            return _cmd_theorem(args, event_callback)
        handlers = {
            "check": _cmd_check,
            "compose": _cmd_compose,
            "decompose": _cmd_decompose,
            "obstruction": _cmd_obstruction,
            "hypotheses": _cmd_hypotheses,
            "classify": _cmd_classify,
            "graph": _cmd_graph,
        }
        return handlers[args.command](args)
    except (DomainError, CatalogLookupError, OSError) as exc:
        if event_callback:
            event_callback("failed", str(exc), {"error": exc.__class__.__name__})
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
