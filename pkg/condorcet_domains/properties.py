"""Structural predicates on domains.

Maximality, ampleness, copiousness, maximal width, single-peakedness (on an
axis and Arrow's triple-wise form) and single-crossing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from condorcet_domains.config import load_settings
from condorcet_domains.core import (
    Domain,
    DomainError,
    DomainSizeError,
    LinearOrder,
    Triple,
    all_orders_on,
    guard_alternatives,
    has_cycle,
    is_condorcet,
    triple_restrictions,
)


@dataclass(frozen=True)
class Axis:
    """A left-to-right arrangement of alternatives (the spectrum)."""

    spectrum: tuple[int, ...]

    def __post_init__(self):
        spectrum = tuple(self.spectrum)
        if not spectrum:
            raise DomainError("an axis needs at least one alternative")
        if len(set(spectrum)) != len(spectrum):
            raise DomainError(f"repeated alternative on axis {spectrum}")
        object.__setattr__(self, "spectrum", spectrum)

    @classmethod
    def parse(cls, text: str) -> Axis:
        return cls(LinearOrder.parse(text).ranking)

    @property
    def alternatives(self) -> frozenset[int]:
        return frozenset(self.spectrum)

    def reversed(self) -> Axis:
        return Axis(self.spectrum[::-1])

    def __str__(self) -> str:
        return "◁".join(str(label) for label in self.spectrum)


def addable_orders(domain: Domain) -> frozenset[LinearOrder]:
    """Orders outside `domain` whose addition keeps it Condorcet."""
    guard_alternatives(domain.alternatives, "addable_orders")
    restrictions = triple_restrictions(domain)
    if any(has_cycle(triple, restricted) for triple, restricted in restrictions.items()):
        raise DomainError("addable_orders needs a Condorcet domain")
    return frozenset(
        order
        for order in all_orders_on(domain.alternatives)
        if order not in domain.orders and _keeps_condorcet(order, restrictions)
    )


def _keeps_condorcet(order: LinearOrder, restrictions: dict[Triple, frozenset[tuple[int, ...]]]) -> bool:
    for triple, restricted in restrictions.items():
        image = tuple(label for label in order.ranking if label in triple)
        if image in restricted:
            continue
        if has_cycle(triple, restricted | {image}):
            return False
    return True


def is_maximal(domain: Domain) -> bool:
    guard_alternatives(domain.alternatives, "is_maximal")
    if not is_condorcet(domain):
        return False
    return not addable_orders(domain)


def is_ample(domain: Domain) -> bool:
    """Every pair of alternatives occurs in both relative orders."""
    if len(domain.alternatives) < 2:
        raise DomainError("ampleness needs at least two alternatives")
    for a, b in itertools.combinations(sorted(domain.alternatives), 2):
        outcomes = {order.position(a) < order.position(b) for order in domain.orders}
        if len(outcomes) != 2:
            return False
    return True


def is_copious(domain: Domain) -> bool:
    """Every restriction to three alternatives has the maximal size 4."""
    if len(domain.alternatives) < 3:
        raise DomainError("copiousness needs at least three alternatives")
    return all(len(restricted) == 4 for restricted in triple_restrictions(domain).values())


def has_maximal_width(domain: Domain) -> bool:
    return any(order.reversed() in domain.orders for order in domain.orders)


def generate_single_peaked(axis: Axis) -> Domain:
    """All orders whose top segments are intervals of `axis` (2^(k-1) of them)."""
    spectrum = axis.spectrum

    def rankings(low: int, high: int) -> list[tuple[int, ...]]:
        # the worst remaining alternative is always an end of the interval
        if low == high:
            return [(spectrum[low],)]
        return [
            *(ranking + (spectrum[low],) for ranking in rankings(low + 1, high)),
            *(ranking + (spectrum[high],) for ranking in rankings(low, high - 1)),
        ]

    orders = frozenset(LinearOrder(ranking) for ranking in rankings(0, len(spectrum) - 1))
    return Domain(axis.alternatives, orders)


def is_single_peaked_wrt(domain: Domain, axis: Axis) -> bool:
    if axis.alternatives != domain.alternatives:
        raise DomainError(f"axis {axis} is not a permutation of the domain's alternatives")
    return domain.orders <= generate_single_peaked(axis).orders


def single_peaked_axes(domain: Domain) -> list[Axis]:
    """Axes (one per reversal pair) the domain is single-peaked on."""
    guard_alternatives(domain.alternatives, "single_peaked_axes")
    axes = []
    for spectrum in itertools.permutations(sorted(domain.alternatives)):
        if spectrum[0] > spectrum[-1]:
            continue
        axis = Axis(spectrum)
        if is_single_peaked_wrt(domain, axis):
            axes.append(axis)
    return axes


def is_arrow_single_peaked(domain: Domain) -> bool:
    """Every triple restriction satisfies some never-bottom condition."""
    if len(domain.alternatives) < 3:
        raise DomainError("Arrow's single-peakedness needs at least three alternatives")
    return all(
        len({ranking[2] for ranking in restricted}) < 3
        for restricted in triple_restrictions(domain).values()
    )


def single_crossing_arrangement(domain: Domain) -> list[LinearOrder] | None:
    """An arrangement in which every pairwise comparison flips at most once."""
    limit = load_settings().max_single_crossing_orders
    if len(domain) > limit:
        raise DomainSizeError(f"single-crossing search supports at most {limit} orders, got {len(domain)}")

    orders = domain.sorted_orders()
    pairs = list(itertools.combinations(sorted(domain.alternatives), 2))
    above = {order: tuple(order.position(a) < order.position(b) for a, b in pairs) for order in orders}

    def extend(sequence: list[LinearOrder], flips: tuple[int, ...], remaining: list[LinearOrder]):
        if not remaining:
            return list(sequence)
        for candidate in remaining:
            if sequence:
                previous = above[sequence[-1]]
                current = above[candidate]
                next_flips = tuple(count + (p != c) for count, p, c in zip(flips, previous, current))
                if any(count > 1 for count in next_flips):
                    continue
            else:
                next_flips = flips
            sequence.append(candidate)
            found = extend(sequence, next_flips, [order for order in remaining if order != candidate])
            if found:
                return found
            sequence.pop()
        return None

    return extend([], (0,) * len(pairs), orders)


def is_single_crossing(domain: Domain) -> bool:
    return single_crossing_arrangement(domain) is not None
