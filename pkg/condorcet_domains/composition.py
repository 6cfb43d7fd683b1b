"""Never-last composition, right obstructions and decomposition."""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Iterable

from condorcet_domains.config import load_settings
from condorcet_domains.core import (
    Domain,
    DomainError,
    LinearOrder,
    guard_alternatives,
    has_cycle,
    is_condorcet,
    restrict_domain,
)
from condorcet_domains.properties import is_ample, is_copious, is_maximal


EventCallback = Callable[[str, str, dict[str, Any]], None]
COMPOSE_SYMBOL = "⋄"


@dataclass(frozen=True)
class CompositionRoles:
    """x is appended below the left factor's orders, y below the right factor's."""

    x: int
    y: int


@dataclass(frozen=True)
class HypothesisReport:
    x: int
    y: int
    e_is_condorcet: bool
    x_never_obstructs_in_d2: bool
    y_never_obstructs_in_d1: bool
    d1_maximal: bool
    d2_maximal: bool
    d1_ample: bool
    d2_ample: bool
    d1_copious: bool
    d2_copious: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.e_is_condorcet and self.x_never_obstructs_in_d2 and self.y_never_obstructs_in_d1

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


@dataclass(frozen=True)
class TheoremCounterexample:
    left: str
    right: str
    claim: str
    composed: str

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def infer_roles(d1: Domain, d2: Domain) -> CompositionRoles:
    union = d1.alternatives | d2.alternatives
    missing_left = union - d1.alternatives
    missing_right = union - d2.alternatives
    if len(missing_left) != 1 or len(missing_right) != 1:
        raise DomainError(
            "each factor must miss exactly one alternative of the union, "
            f"got {sorted(d1.alternatives)} and {sorted(d2.alternatives)}"
        )
    return CompositionRoles(x=next(iter(missing_left)), y=next(iter(missing_right)))


def nl_compose(d1: Domain, d2: Domain) -> Domain:
    """d1 ⋄ d2: orders of d1 with x appended plus orders of d2 with y appended."""
    roles = infer_roles(d1, d2)
    orders = {order.append(roles.x) for order in d1.orders} | {order.append(roles.y) for order in d2.orders}
    return Domain(d1.alternatives | d2.alternatives, frozenset(orders))


def nl_decompose(domain: Domain) -> list[tuple[CompositionRoles, Domain, Domain]]:
    """Every way of writing `domain` as d1 ⋄ d2, ordered by (x, y)."""
    if len(domain.alternatives) < 2:
        raise DomainError("decomposition needs at least two alternatives")
    lasts = {order.last for order in domain.orders}
    if len(lasts) != 2:
        return []
    decompositions = []
    for x, y in itertools.permutations(sorted(lasts)):
        left = _strip_block(domain, x)
        right = _strip_block(domain, y)
        decompositions.append((CompositionRoles(x, y), left, right))
    return decompositions


def _strip_block(domain: Domain, last: int) -> Domain:
    return Domain(
        domain.alternatives - {last},
        frozenset(LinearOrder(order.ranking[:-1]) for order in domain.orders if order.last == last),
    )


def _check_triple(domain: Domain, labels: Iterable[int]) -> tuple[int, int, int]:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise DomainError(f"alternatives {labels} must be distinct")
    foreign = set(labels) - domain.alternatives
    if foreign:
        raise DomainError(f"alternatives {sorted(foreign)} are not in the domain")
    return tuple(sorted(labels))


def is_right_obstruction(domain: Domain, a: int, b: int, c: int) -> bool:
    """True when adding c≻b≻a to the restriction on {a, b, c} creates a cycle."""
    triple = _check_triple(domain, (a, b, c))
    restricted = {order.ranking for order in restrict_domain(domain, triple).orders}
    if has_cycle(triple, restricted):
        raise DomainError(f"the restriction to {set(triple)} is not Condorcet")
    return has_cycle(triple, restricted | {(c, b, a)})


def never_obstructs(domain: Domain, a: int, pairs: Iterable[Iterable[int]]) -> bool:
    for pair in pairs:
        i, j = tuple(pair)
        _check_triple(domain, (a, i, j))
        if is_right_obstruction(domain, a, j, i) or is_right_obstruction(domain, a, i, j):
            return False
    return True


def overlap_domain(d1: Domain, d2: Domain) -> Domain:
    """Both factors restricted to the alternatives they share."""
    roles = infer_roles(d1, d2)
    common = (d1.alternatives | d2.alternatives) - {roles.x, roles.y}
    if not common:
        raise DomainError("the factors share no alternatives")
    return Domain(common, restrict_domain(d1, common).orders | restrict_domain(d2, common).orders)


def _ample_flag(domain: Domain) -> bool:
    if len(domain.alternatives) < 2:
        return True
    return is_ample(domain)


def _copious_flag(domain: Domain) -> bool:
    if len(domain.alternatives) < 3:
        return _ample_flag(domain)
    return is_copious(domain)


def theorem_hypotheses(d1: Domain, d2: Domain) -> HypothesisReport:
    roles = infer_roles(d1, d2)
    if not (is_condorcet(d1) and is_condorcet(d2)):
        raise DomainError("both factors must be Condorcet domains")
    common = sorted((d1.alternatives | d2.alternatives) - {roles.x, roles.y})
    pairs = list(itertools.combinations(common, 2))
    return HypothesisReport(
        x=roles.x,
        y=roles.y,
        e_is_condorcet=is_condorcet(overlap_domain(d1, d2)) if common else True,
        x_never_obstructs_in_d2=never_obstructs(d2, roles.x, pairs),
        y_never_obstructs_in_d1=never_obstructs(d1, roles.y, pairs),
        d1_maximal=is_maximal(d1),
        d2_maximal=is_maximal(d2),
        d1_ample=_ample_flag(d1),
        d2_ample=_ample_flag(d2),
        d1_copious=_copious_flag(d1),
        d2_copious=_copious_flag(d2),
    )


def check_theorem_pair(d1: Domain, d2: Domain) -> list[TheoremCounterexample]:
    """Counterexamples to the composition theorem contributed by one factor pair."""
    report = theorem_hypotheses(d1, d2)
    if not report.hypotheses_hold:
        return []
    composed = nl_compose(d1, d2)

    def counterexample(claim: str) -> TheoremCounterexample:
        return TheoremCounterexample(left=d1.key(), right=d2.key(), claim=claim, composed=composed.key())

    if not is_condorcet(composed):
        return [counterexample("condorcet")]
    failures = []
    if report.d1_maximal and report.d2_maximal and report.d1_ample and report.d2_ample:
        if not (is_maximal(composed) and _ample_flag(composed)):
            failures.append(counterexample("maximal_ample"))
    if report.d1_copious and report.d2_copious and not _copious_flag(composed):
        failures.append(counterexample("copious"))
    return failures


def verify_composition_theorem(
    factor_pool_1: list[Domain],
    factor_pool_2: list[Domain],
    event_callback: EventCallback | None = None,
    workers: int | None = None,
) -> list[TheoremCounterexample]:
    """Check the theorem on every pair from the two pools; returns violations in input order."""
    pairs = list(itertools.product(factor_pool_1, factor_pool_2))
    workers = workers or load_settings().workers
    _emit(event_callback, "started", f"Checking {len(pairs)} factor pairs", {"pairs": len(pairs), "workers": workers})

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(check_theorem_pair, [d1 for d1, _ in pairs], [d2 for _, d2 in pairs]))
    else:
        results = [check_theorem_pair(d1, d2) for d1, d2 in pairs]

    counterexamples = [item for result in results for item in result]
    _emit(
        event_callback,
        "completed",
        f"Checked {len(pairs)} pairs, {len(counterexamples)} counterexamples",
        {"pairs": len(pairs), "counterexamples": len(counterexamples)},
    )
    return counterexamples


def complete_reduction(domain: Domain) -> str | None:
    """Reduce to single alternatives by repeated decomposition, e.g. ((1)⋄(2))⋄((2)⋄(3))."""
    guard_alternatives(domain.alternatives, "complete_reduction")
    reduced = _reduce(domain)
    return reduced[0] if reduced else None


def _reduce(domain: Domain) -> tuple[str, bool] | None:
    if len(domain.alternatives) == 1:
        return f"({next(iter(domain.alternatives))})", True
    top, bottom = max(domain.alternatives), min(domain.alternatives)
    candidates = sorted(
        nl_decompose(domain),
        key=lambda item: (item[0].x != top or item[0].y != bottom, item[0].x, item[0].y),
    )
    for _, left, right in candidates:
        left_text = _reduce(left)
        right_text = _reduce(right)
        if left_text and right_text:
            return f"{_group(left_text)}{COMPOSE_SYMBOL}{_group(right_text)}", False
    return None


def _group(reduced: tuple[str, bool]) -> str:
    text, is_leaf = reduced
    return text if is_leaf else f"({text})"


def _emit(event_callback: EventCallback | None, event_type: str, message: str, details: dict[str, Any] | None = None):
    if event_callback:
        event_callback(event_type, message, details or {})
