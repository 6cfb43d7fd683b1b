"""Exhaustive checks of the composition results on small alternative sets."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from condorcet_domains.catalog import catalog_get, parse_factor
from condorcet_domains.composition import (
    is_right_obstruction,
    nl_compose,
    theorem_hypotheses,
    verify_composition_theorem,
)
from condorcet_domains.core import (
    Domain,
    DomainError,
    NeverCondition,
    all_orders_on,
    domain_from_conditions,
    is_condorcet,
    never_conditions_of,
)
from condorcet_domains.enumeration import enumerate_maximal, relabel_to
from condorcet_domains.properties import Axis, generate_single_peaked, is_maximal


EventCallback = Callable[[str, str, dict[str, Any]], None]


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    cases: int
    failures: tuple[str, ...] = ()
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def labeled_maximal_on(alternatives) -> list[Domain]:
    """The nine labeled maximal domains on three alternatives, moved onto `alternatives`."""
    alternatives = sorted(alternatives)
    if len(alternatives) != 3:
        raise DomainError(f"expected three alternatives, got {alternatives}")
    return [relabel_to(domain, alternatives) for domain in enumerate_maximal(3)]


def check_composition_theorem(
    event_callback: EventCallback | None = None,
    workers: int | None = None,
) -> ClaimResult:
    left_pool = labeled_maximal_on((1, 2, 3))
    right_pool = labeled_maximal_on((2, 3, 4))
    counterexamples = verify_composition_theorem(left_pool, right_pool, event_callback, workers)
    satisfied = sum(
        1 for d1, d2 in itertools.product(left_pool, right_pool) if theorem_hypotheses(d1, d2).hypotheses_hold
    )
    return ClaimResult(
        name="composition_theorem",
        passed=not counterexamples,
        cases=len(left_pool) * len(right_pool),
        failures=tuple(f"{item.claim}: {item.left} with {item.right}" for item in counterexamples),
        details={"hypotheses_hold": satisfied},
    )


def check_obstruction_characterization() -> ClaimResult:
    """Obstruction to the swap bc→cb ⟺ the conditions are non-empty and within {cN1, bN2}."""
    triple = (1, 2, 3)
    orders = [order.ranking for order in all_orders_on(triple)]
    cases = 0
    failures = []
    for a, b, c in itertools.permutations(triple):
        allowed = {NeverCondition(c, triple, 1), NeverCondition(b, triple, 2)}
        for size in range(1, len(orders) + 1):
            for subset in itertools.combinations(orders, size):
                if (b, c, a) not in subset or (c, b, a) in subset:
                    continue
                domain = Domain.of(subset)
                if not is_condorcet(domain):
                    continue
                cases += 1
                conditions = never_conditions_of(domain)
                expected = bool(conditions) and conditions <= allowed
                if is_right_obstruction(domain, a, b, c) != expected:
                    failures.append(f"a={a} b={b} c={c} domain={domain}")
    return ClaimResult(name="obstruction_characterization", passed=not failures, cases=cases, failures=tuple(failures))


def check_converse_failure() -> ClaimResult:
    failures = []

    # a non-maximal factor can still compose to a maximal domain
    left = parse_factor("{123,213,231}")
    right = parse_factor("D3_1(2,3,4)")
    report = theorem_hypotheses(left, right)
    composed = nl_compose(left, right)
    if report.d1_maximal:
        failures.append("left factor {123,213,231} unexpectedly maximal")
    if not is_maximal(composed):
        failures.append("composition with a non-maximal factor is not maximal")
    if composed != catalog_get("snake").matrix_orders:
        failures.append("composition does not reproduce the snake")

    # maximal factors whose composition is not Condorcet
    broken = [
        f"{d1} with {d2}"
        for d1, d2 in itertools.product(labeled_maximal_on((1, 2, 3)), labeled_maximal_on((2, 3, 4)))
        if not is_condorcet(nl_compose(d1, d2))
    ]
    witness_left = parse_factor("D3_3(1,2,3)")
    witness_right = domain_from_conditions({2, 3, 4}, [NeverCondition.parse("2N{2,3,4}1")])
    witness = f"{witness_left} with {witness_right}"
    if witness not in broken:
        failures.append(f"expected non-Condorcet witness {witness}")
    if theorem_hypotheses(witness_left, witness_right).hypotheses_hold:
        failures.append("the non-Condorcet witness passes the hypotheses")

    return ClaimResult(
        name="converse_failure",
        passed=not failures,
        cases=1 + len(broken),
        failures=tuple(failures),
        details={"composed": str(composed), "non_condorcet_pairs": len(broken), "witness": witness},
    )


def check_single_peaked_recursion(n: int) -> ClaimResult:
    """SP(1..n) = SP(1..n-1) ⋄ SP(2..n)."""
    if n < 2:
        raise DomainError(f"the recursion needs at least two alternatives, got {n}")
    whole = generate_single_peaked(Axis(tuple(range(1, n + 1))))
    left = generate_single_peaked(Axis(tuple(range(1, n))))
    right = generate_single_peaked(Axis(tuple(range(2, n + 1))))
    failures = []
    if nl_compose(left, right) != whole:
        failures.append("composition of the smaller single-peaked domains differs")
    if len(whole) != 2 ** (n - 1):
        failures.append(f"expected {2 ** (n - 1)} orders, got {len(whole)}")
    if n == 4:
        if whole != catalog_get("single-peaked").matrix_orders:
            failures.append("does not match the single-peaked catalog matrix")
        if whole != nl_compose(parse_factor("D3_3(1,2,3)"), parse_factor("D3_3(2,3,4)")):
            failures.append("does not match D3_3(1,2,3) ⋄ D3_3(2,3,4)")
    return ClaimResult(
        name=f"single_peaked_recursion_{n}",
        passed=not failures,
        cases=1,
        failures=tuple(failures),
        details={"size": len(whole)},
    )


def run_all_claims(event_callback: EventCallback | None = None, workers: int | None = None) -> list[ClaimResult]:
    checks = [
        lambda: check_composition_theorem(event_callback, workers),
        check_obstruction_characterization,
        check_converse_failure,
        lambda: check_single_peaked_recursion(4),
        lambda: check_single_peaked_recursion(5),
    ]
    results = []
    for check in checks:
        result = check()
        results.append(result)
        if event_callback:
            event_callback(
                "claim_checked",
                f"{result.name}: {'passed' if result.passed else 'FAILED'}",
                {"name": result.name, "passed": result.passed, "cases": result.cases},
            )
    return results
