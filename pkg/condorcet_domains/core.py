"""Linear orders, domains, restrictions and never-conditions.

Every type here is an immutable value and every function is pure. Positions
are 1-based: position 1 is the most preferred alternative, position 3 the
bottom of a restriction to three alternatives.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from condorcet_domains.config import load_settings


Alternative = int
Triple = tuple[int, int, int]

COMPACT_LABEL_MAX = 9
CONDITION_RE = re.compile(r"^\s*(\d+)\s*N\s*\{\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\}\s*([123])\s*$")


class DomainError(ValueError):
    pass


class EmptyDomainError(DomainError):
    pass


class DomainSizeError(DomainError):
    pass


class DomainParseError(DomainError):
    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True, order=True)
class LinearOrder:
    ranking: tuple[int, ...]

    def __post_init__(self):
        ranking = tuple(self.ranking)
        if not ranking:
            raise DomainError("a linear order needs at least one alternative")
        for label in ranking:
            if isinstance(label, bool) or not isinstance(label, int) or label < 1:
                raise DomainError(f"alternative labels must be positive integers, got {label!r}")
        if len(set(ranking)) != len(ranking):
            raise DomainError(f"repeated alternative in order {ranking}")
        object.__setattr__(self, "ranking", ranking)

    @classmethod
    def parse(cls, text: str) -> LinearOrder:
        """Parse `2314` (compact, labels <= 9) or `1 10 2` (space-separated)."""
        tokens = text.split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        try:
            labels = tuple(int(token) for token in tokens)
        except ValueError:
            raise DomainError(f"malformed order {text!r}") from None
        return cls(labels)

    @property
    def alternatives(self) -> frozenset[int]:
        return frozenset(self.ranking)

    @property
    def last(self) -> int:
        return self.ranking[-1]

    def position(self, x: int) -> int:
        return self.ranking.index(x) + 1

    def reversed(self) -> LinearOrder:
        return LinearOrder(self.ranking[::-1])

    def append(self, x: int) -> LinearOrder:
        return LinearOrder(self.ranking + (x,))

    def __len__(self) -> int:
        return len(self.ranking)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ranking)

    def __str__(self) -> str:
        if all(label <= COMPACT_LABEL_MAX for label in self.ranking):
            return "".join(str(label) for label in self.ranking)
        return " ".join(str(label) for label in self.ranking)


@dataclass(frozen=True)
class Domain:
    alternatives: frozenset[int]
    orders: frozenset[LinearOrder]

    def __post_init__(self):
        alternatives = frozenset(self.alternatives)
        orders = frozenset(self.orders)
        if not orders:
            raise EmptyDomainError("a domain needs at least one order")
        for order in orders:
            if order.alternatives != alternatives:
                raise DomainError(
                    f"order {order} is not a permutation of {{{', '.join(map(str, sorted(alternatives)))}}}"
                )
        object.__setattr__(self, "alternatives", alternatives)
        object.__setattr__(self, "orders", orders)

    @classmethod
    def of(cls, orders: Iterable[LinearOrder | str | Sequence[int]]) -> Domain:
        """Build a domain from orders, inferring the alternative set."""
        parsed = [_as_order(order) for order in orders]
        if not parsed:
            raise EmptyDomainError("a domain needs at least one order")
        return cls(parsed[0].alternatives, frozenset(parsed))

    def sorted_orders(self) -> list[LinearOrder]:
        return sorted(self.orders)

    def key(self) -> str:
        return ",".join(str(order) for order in self.sorted_orders())

    def with_orders(self, extra: Iterable[LinearOrder]) -> Domain:
        return Domain(self.alternatives, self.orders | frozenset(extra))

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self) -> Iterator[LinearOrder]:
        return iter(self.sorted_orders())

    def __contains__(self, order: object) -> bool:
        if isinstance(order, str):
            order = LinearOrder.parse(order)
        return order in self.orders

    def __str__(self) -> str:
        return "{" + ",".join(str(order) for order in self.sorted_orders()) + "}"


@dataclass(frozen=True)
class NeverCondition:
    """`x N_triple position`: x never sits at `position` in the restriction to `triple`."""

    x: int
    triple: tuple[int, int, int]
    position: int

    def __post_init__(self):
        triple = tuple(sorted(set(self.triple)))
        if len(triple) != 3:
            raise DomainError(f"a never-condition needs three distinct alternatives, got {self.triple!r}")
        if self.x not in triple:
            raise DomainError(f"alternative {self.x} is not in triple {triple}")
        if self.position not in (1, 2, 3):
            raise DomainError(f"position must be 1, 2 or 3, got {self.position!r}")
        object.__setattr__(self, "triple", triple)

    @classmethod
    def parse(cls, text: str) -> NeverCondition:
        """Parse the textual form `2N{1,2,3}3`."""
        match = CONDITION_RE.match(text)
        if not match:
            raise DomainError(f"malformed never-condition {text!r}")
        x, a, b, c, position = (int(group) for group in match.groups())
        return cls(x, (a, b, c), position)

    def violated_by(self, order: LinearOrder) -> bool:
        restricted = [label for label in order.ranking if label in self.triple]
        return restricted.index(self.x) + 1 == self.position

    def sort_key(self) -> tuple:
        return (self.triple, self.x, self.position)

    def relabel(self, table: Mapping[int, int]) -> NeverCondition:
        return NeverCondition(table[self.x], tuple(table[label] for label in self.triple), self.position)

    def flipped(self) -> NeverCondition:
        return NeverCondition(self.x, self.triple, 4 - self.position)

    def __str__(self) -> str:
        a, b, c = self.triple
        return f"{self.x}N{{{a},{b},{c}}}{self.position}"


def _as_order(order: LinearOrder | str | Sequence[int]) -> LinearOrder:
    if isinstance(order, LinearOrder):
        return order
    if isinstance(order, str):
        return LinearOrder.parse(order)
    return LinearOrder(tuple(order))


def all_orders_on(alternatives: Iterable[int]) -> list[LinearOrder]:
    """Every linear order on `alternatives`, lexicographic in label sequence."""
    return [LinearOrder(ranking) for ranking in itertools.permutations(sorted(alternatives))]


def guard_alternatives(alternatives: Iterable[int], operation: str) -> None:
    limit = load_settings().max_alternatives
    count = len(frozenset(alternatives))
    if count > limit:
        raise DomainSizeError(f"{operation} supports at most {limit} alternatives, got {count}")


def restrict_order(order: LinearOrder, subset: Iterable[int]) -> LinearOrder:
    subset = frozenset(subset)
    if not subset:
        raise DomainError("cannot restrict to an empty set of alternatives")
    missing = subset - order.alternatives
    if missing:
        raise DomainError(f"alternatives {sorted(missing)} do not appear in order {order}")
    return LinearOrder(tuple(label for label in order.ranking if label in subset))


def restrict_domain(domain: Domain, subset: Iterable[int]) -> Domain:
    subset = frozenset(subset)
    if not subset:
        raise DomainError("cannot restrict to an empty set of alternatives")
    missing = subset - domain.alternatives
    if missing:
        raise DomainError(f"alternatives {sorted(missing)} are not in the domain")
    return Domain(subset, frozenset(restrict_order(order, subset) for order in domain.orders))


def relabel(domain: Domain, mapping: Mapping[int, int] | Sequence[int]) -> Domain:
    """Replace alternatives through a bijection.

    A sequence is read positionally, as in the notation D(a1,...,ak): the i-th
    smallest alternative of `domain` becomes `mapping[i]`.
    """
    table = relabel_table(domain.alternatives, mapping)
    return Domain(
        frozenset(table.values()),
        frozenset(LinearOrder(tuple(table[label] for label in order.ranking)) for order in domain.orders),
    )


def relabel_table(alternatives: Iterable[int], mapping: Mapping[int, int] | Sequence[int]) -> dict[int, int]:
    alternatives = frozenset(alternatives)
    if isinstance(mapping, Mapping):
        table = dict(mapping)
    else:
        labels = tuple(mapping)
        source = sorted(alternatives)
        if len(labels) != len(source):
            raise DomainError(f"expected {len(source)} labels, got {len(labels)}")
        table = dict(zip(source, labels))
    if set(table) != alternatives:
        raise DomainError("mapping must be defined on exactly the domain's alternatives")
    if len(set(table.values())) != len(table):
        raise DomainError("mapping is not a bijection")
    return table


def flip(domain: Domain) -> Domain:
    return Domain(domain.alternatives, frozenset(order.reversed() for order in domain.orders))


def triples_of(alternatives: Iterable[int]) -> list[Triple]:
    return list(itertools.combinations(sorted(alternatives), 3))


def cyclic_triples(triple: Triple) -> tuple[frozenset[tuple[int, ...]], frozenset[tuple[int, ...]]]:
    a, b, c = triple
    return (
        frozenset({(a, b, c), (b, c, a), (c, a, b)}),
        frozenset({(a, c, b), (c, b, a), (b, a, c)}),
    )


def has_cycle(triple: Triple, restricted: Iterable[tuple[int, ...]]) -> bool:
    present = set(restricted)
    return any(cycle <= present for cycle in cyclic_triples(triple))


def triple_restrictions(domain: Domain) -> dict[Triple, frozenset[tuple[int, ...]]]:
    restrictions = {}
    for triple in triples_of(domain.alternatives):
        members = set(triple)
        restrictions[triple] = frozenset(
            tuple(label for label in order.ranking if label in members) for order in domain.orders
        )
    return restrictions


def is_condorcet(domain: Domain) -> bool:
    """No restriction to three alternatives contains a full cyclic triple."""
    return not any(has_cycle(triple, restricted) for triple, restricted in triple_restrictions(domain).items())


def conditions_on(triple: Triple, restricted: Iterable[tuple[int, ...]]) -> list[NeverCondition]:
    realized = {(label, ranking.index(label) + 1) for ranking in restricted for label in ranking}
    return [
        NeverCondition(x, triple, position)
        for x in triple
        for position in (1, 2, 3)
        if (x, position) not in realized
    ]


def never_conditions_of(domain: Domain) -> frozenset[NeverCondition]:
    conditions: set[NeverCondition] = set()
    for triple, restricted in triple_restrictions(domain).items():
        conditions.update(conditions_on(triple, restricted))
    return frozenset(conditions)


def never_conditions_by_triple(domain: Domain) -> dict[Triple, list[NeverCondition]]:
    return {
        triple: sorted(conditions_on(triple, restricted), key=NeverCondition.sort_key)
        for triple, restricted in triple_restrictions(domain).items()
    }


def sorted_conditions(conditions: Iterable[NeverCondition]) -> list[NeverCondition]:
    return sorted(conditions, key=NeverCondition.sort_key)


def domain_from_conditions(alternatives: Iterable[int], conditions: Iterable[NeverCondition]) -> Domain:
    """D(N): every order on `alternatives` that violates none of `conditions`."""
    alternatives = frozenset(alternatives)
    conditions = list(conditions)
    for condition in conditions:
        if not set(condition.triple) <= alternatives:
            raise DomainError(f"condition {condition} mentions alternatives outside the domain")
    guard_alternatives(alternatives, "domain_from_conditions")
    orders = [
        order
        for order in all_orders_on(alternatives)
        if not any(condition.violated_by(order) for condition in conditions)
    ]
    if not orders:
        raise EmptyDomainError("no linear order satisfies the conditions")
    return Domain(alternatives, frozenset(orders))
