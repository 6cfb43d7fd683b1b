"""Catalog of printed domains and a verifier for the claims made about them.

The matrices in `catalog.yaml` are the fixtures of record. Stated never-conditions,
composition identities and flags are recomputed from the matrices; every
disagreement must appear as a `mismatch` record in the discrepancy ledger.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable

import yaml

from condorcet_domains.composition import (
    COMPOSE_SYMBOL,
    complete_reduction,
    infer_roles,
    nl_compose,
    nl_decompose,
)
from condorcet_domains.core import (
    Domain,
    DomainError,
    EmptyDomainError,
    LinearOrder,
    NeverCondition,
    domain_from_conditions,
    is_condorcet,
    never_conditions_of,
    relabel,
    sorted_conditions,
)
from condorcet_domains.graphs import GraphSummary, build_graph, graph_summary, is_path
from condorcet_domains.properties import (
    Axis,
    addable_orders,
    generate_single_peaked,
    has_maximal_width,
    is_ample,
    is_arrow_single_peaked,
    is_copious,
    is_maximal,
    is_single_crossing,
    single_peaked_axes,
)


CATALOG_PATH = Path(__file__).with_name("catalog.yaml")
FACTOR_RE = re.compile(r"^D3_([123])\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$")
BASE_IDS = ("D3_1", "D3_2", "D3_3")

FLAG_CHECKS: dict[str, Callable[[Domain], bool]] = {
    "maximal": is_maximal,
    "ample": is_ample,
    "copious": is_copious,
    "arrow_sp": is_arrow_single_peaked,
    "single_crossing": is_single_crossing,
    "not_maximal_width": lambda domain: not has_maximal_width(domain),
    "path_graph": lambda domain: is_path(build_graph(domain)),
    "not_single_peaked": lambda domain: not single_peaked_axes(domain),
}


class CatalogLookupError(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    alias: str | None
    matrix_orders: Domain
    stated_conditions: frozenset[NeverCondition] | None = None
    stated_identity: tuple[str, str] | None = None
    stated_flags: tuple[str, ...] = ()
    left_addable: frozenset[LinearOrder] | None = None
    left_containment: tuple[str, ...] = ()
    single_peaked_axis: Axis | None = None
    completely_reducible: str | None = None


@dataclass(frozen=True)
class Discrepancy:
    entry: str
    check: str
    kind: str
    description: str

    @property
    def key(self) -> str:
        return f"{self.entry}:{self.check}"


@dataclass(frozen=True)
class CheckRecord:
    entry: str
    check: str
    matched: bool
    stated: str
    computed: str

    @property
    def key(self) -> str:
        return f"{self.entry}:{self.check}"

    def line(self) -> str:
        if self.matched:
            return f"ENTRY {self.entry}: {self.check} = MATCH"
        return f"ENTRY {self.entry}: {self.check} = MISMATCH({self.stated} vs {self.computed})"


@dataclass(frozen=True)
class EntryReport:
    id: str
    alias: str | None
    size: int
    flags: dict[str, bool]
    conditions: list[str]
    decompositions: list[str]
    stated_conditions_domain: str | None
    graph: GraphSummary
    checks: tuple[CheckRecord, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class VerificationReport:
    entries: tuple[EntryReport, ...]
    expected_mismatches: tuple[str, ...]
    unexpected: tuple[str, ...]
    missing: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.unexpected and not self.missing

    def lines(self) -> list[str]:
        lines = [record.line() for entry in self.entries for record in entry.checks]
        lines.append(
            f"SUMMARY: {'OK' if self.ok else 'FAILED'} "
            f"({len(self.expected_mismatches)} known mismatches, "
            f"{len(self.unexpected)} unexpected, {len(self.missing)} missing)"
        )
        return lines

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["ok"] = self.ok
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


@lru_cache(maxsize=None)
def _load_raw(path: str) -> dict[str, Any]:
    with open(path, encoding="utf-8") as handle:
        return yaml.safe_load(handle) or {}


def _parse_entry(raw: dict[str, Any]) -> CatalogEntry:
    identity = raw.get("stated_identity")
    axis = raw.get("single_peaked_axis")
    conditions = raw.get("stated_conditions")
    addable = raw.get("left_addable")
    return CatalogEntry(
        id=raw["id"],
        alias=raw.get("alias"),
        matrix_orders=Domain.of(raw["orders"]),
        stated_conditions=frozenset(NeverCondition.parse(text) for text in conditions) if conditions else None,
        stated_identity=(identity["left"], identity["right"]) if identity else None,
        stated_flags=tuple(raw.get("stated_flags") or ()),
        left_addable=frozenset(LinearOrder.parse(text) for text in addable) if addable else None,
        left_containment=tuple(raw.get("left_containment") or ()),
        single_peaked_axis=Axis.parse(axis) if axis else None,
        completely_reducible=raw.get("completely_reducible"),
    )


def catalog_entries(path: str | Path = CATALOG_PATH) -> list[CatalogEntry]:
    return [_parse_entry(raw) for raw in _load_raw(str(path)).get("entries", [])]


def known_discrepancies(path: str | Path = CATALOG_PATH) -> list[Discrepancy]:
    return [Discrepancy(**raw) for raw in _load_raw(str(path)).get("discrepancies", [])]


def catalog_get(name: str, path: str | Path = CATALOG_PATH) -> CatalogEntry:
    """Look up an entry by id (`D4_5`, `d4,5`) or alias (`crab`)."""
    wanted = name.strip().lower().replace(",", "_")
    for entry in catalog_entries(path):
        if entry.id.lower() == wanted or (entry.alias and entry.alias.lower() == wanted):
            return entry
    raise CatalogLookupError(f"unknown catalog entry {name!r}")


def parse_factor(text: str) -> Domain:
    """Parse `D3_k(a,b,c)` (a relabeled base domain) or an explicit `{123,213}`."""
    text = text.strip()
    match = FACTOR_RE.match(text)
    if match:
        base = catalog_get(f"D3_{match.group(1)}").matrix_orders
        return relabel(base, [int(label) for label in match.groups()[1:]])
    if text.startswith("{") and text.endswith("}"):
        return Domain.of(token.strip() for token in text[1:-1].split(",") if token.strip())
    raise DomainError(f"malformed factor {text!r}")


def factor_name(domain: Domain) -> str:
    if len(domain.alternatives) == 1:
        return f"({next(iter(domain.alternatives))})"
    if len(domain.alternatives) == 3:
        labels = sorted(domain.alternatives)
        for base_id in BASE_IDS:
            base = catalog_get(base_id).matrix_orders
            for permutation in itertools.permutations(labels):
                if relabel(base, permutation) == domain:
                    return f"{base_id}({','.join(map(str, permutation))})"
    return str(domain)


def stated_conditions_domain(entry: CatalogEntry) -> Domain | None:
    """D(stated conditions) on the entry's alternatives."""
    if not entry.stated_conditions:
        return None
    try:
        return domain_from_conditions(entry.matrix_orders.alternatives, entry.stated_conditions)
    except EmptyDomainError:
        return None


def _render_conditions(conditions) -> str:
    return "{" + ", ".join(str(condition) for condition in sorted_conditions(conditions)) + "}"


def _render_orders(orders) -> str:
    return "{" + ",".join(str(order) for order in sorted(orders)) + "}"


def _identity_text(left: Domain, right: Domain) -> str:
    return f"{factor_name(left)} {COMPOSE_SYMBOL} {factor_name(right)}"


def _check_identity(entry: CatalogEntry) -> CheckRecord:
    left_text, right_text = entry.stated_identity
    left, right = parse_factor(left_text), parse_factor(right_text)
    stated = f"{left_text} {COMPOSE_SYMBOL} {right_text}"
    matrix = entry.matrix_orders
    if nl_compose(left, right) == matrix:
        return CheckRecord(entry.id, "identity", True, stated, stated)
    roles = infer_roles(left, right)
    decompositions = nl_decompose(matrix)
    same_roles = [item for item in decompositions if item[0] == roles]
    if same_roles:
        computed = _identity_text(same_roles[0][1], same_roles[0][2])
    elif decompositions:
        computed = _identity_text(decompositions[0][1], decompositions[0][2])
    else:
        computed = "not decomposable"
    return CheckRecord(entry.id, "identity", False, stated, computed)


def _check_left_containment(entry: CatalogEntry) -> CheckRecord:
    left = parse_factor(entry.stated_identity[0])
    stated = f"{left} ⊆ {' ∩ '.join(entry.left_containment)}"
    containers = [parse_factor(text) for text in entry.left_containment]
    outside = {order for order in left.orders if any(order not in container.orders for container in containers)}
    if not outside:
        return CheckRecord(entry.id, "left_containment", True, stated, stated)
    return CheckRecord(entry.id, "left_containment", False, stated, f"{_render_orders(outside)} outside")


def _entry_checks(entry: CatalogEntry) -> list[CheckRecord]:
    matrix = entry.matrix_orders
    checks = [CheckRecord(entry.id, "condorcet", is_condorcet(matrix), "true", str(is_condorcet(matrix)).lower())]

    for flag in entry.stated_flags:
        if flag not in FLAG_CHECKS:
            raise DomainError(f"unknown stated flag {flag!r} on {entry.id}")
        value = FLAG_CHECKS[flag](matrix)
        checks.append(CheckRecord(entry.id, flag, value, "true", str(value).lower()))

    if entry.stated_conditions is not None:
        computed = never_conditions_of(matrix)
        checks.append(
            CheckRecord(
                entry.id,
                "conditions",
                computed == entry.stated_conditions,
                _render_conditions(entry.stated_conditions),
                _render_conditions(computed),
            )
        )

    if entry.stated_identity is not None:
        checks.append(_check_identity(entry))

    if entry.left_addable is not None:
        computed = addable_orders(parse_factor(entry.stated_identity[0]))
        checks.append(
            CheckRecord(
                entry.id,
                "left_addable",
                computed == entry.left_addable,
                _render_orders(entry.left_addable),
                _render_orders(computed),
            )
        )

    if entry.left_containment:
        checks.append(_check_left_containment(entry))

    if entry.single_peaked_axis is not None:
        stated = f"SP({entry.single_peaked_axis})"
        matched = generate_single_peaked(entry.single_peaked_axis) == matrix
        axes = single_peaked_axes(matrix)
        computed = stated if matched else ", ".join(f"SP({axis})" for axis in axes) or "none"
        checks.append(CheckRecord(entry.id, "single_peaked_axis", matched, stated, computed))

    if entry.completely_reducible is not None:
        computed = complete_reduction(matrix) or "none"
        checks.append(
            CheckRecord(
                entry.id,
                "completely_reducible",
                computed == entry.completely_reducible,
                entry.completely_reducible,
                computed,
            )
        )
    return checks


def verify_entry(entry: CatalogEntry) -> EntryReport:
    matrix = entry.matrix_orders
    size = len(matrix.alternatives)
    flags = {
        "condorcet": is_condorcet(matrix),
        "maximal": is_maximal(matrix),
        "ample": is_ample(matrix),
        "copious": is_copious(matrix) if size >= 3 else False,
        "maximal_width": has_maximal_width(matrix),
        "arrow_sp": is_arrow_single_peaked(matrix) if size >= 3 else False,
        "single_crossing": is_single_crossing(matrix),
        "single_peaked": bool(single_peaked_axes(matrix)),
    }
    decompositions = [
        f"x={roles.x}, y={roles.y}: {_identity_text(left, right)}" for roles, left, right in nl_decompose(matrix)
    ]
    from_conditions = stated_conditions_domain(entry)
    return EntryReport(
        id=entry.id,
        alias=entry.alias,
        size=len(matrix),
        flags=flags,
        conditions=[str(condition) for condition in sorted_conditions(never_conditions_of(matrix))],
        decompositions=decompositions,
        stated_conditions_domain=str(from_conditions) if from_conditions else None,
        graph=graph_summary(build_graph(matrix)),
        checks=tuple(_entry_checks(entry)),
    )


def verify_catalog(
    event_callback: Callable[[str, str, dict[str, Any]], None] | None = None,
    path: str | Path = CATALOG_PATH,
) -> VerificationReport:
    entries = catalog_entries(path)
    _emit(event_callback, "started", f"Verifying {len(entries)} catalog entries", {"entries": len(entries)})
    reports = []
    for entry in entries:
        report = verify_entry(entry)
        reports.append(report)
        mismatches = sum(1 for record in report.checks if not record.matched)
        _emit(
            event_callback,
            "entry_verified",
            f"{entry.id}: {len(report.checks)} checks, {mismatches} mismatches",
            {"entry": entry.id, "checks": len(report.checks), "mismatches": mismatches},
        )

    computed = {record.key for report in reports for record in report.checks if not record.matched}
    ledger = {item.key for item in known_discrepancies(path) if item.kind == "mismatch"}
    result = VerificationReport(
        entries=tuple(reports),
        expected_mismatches=tuple(sorted(computed & ledger)),
        unexpected=tuple(sorted(computed - ledger)),
        missing=tuple(sorted(ledger - computed)),
    )
    _emit(
        event_callback,
        "completed" if result.ok else "failed",
        "Catalog verified" if result.ok else "Catalog verification found unexpected results",
        {"unexpected": list(result.unexpected), "missing": list(result.missing)},
    )
    return result


def _emit(event_callback, event_type: str, message: str, details: dict[str, Any] | None = None):
    if event_callback:
        event_callback(event_type, message, details or {})
