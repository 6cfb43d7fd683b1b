"""Exhaustive search for maximal Condorcet domains and their classification.

Two independent enumerators are provided. `enumerate_maximal` intersects one
never-condition per triple and keeps the maximal results; the backtracking
enumerator searches maximal independent sets of the hypergraph whose edges
are the order triples that restrict to a cycle. Both return labeled domains
on {1, ..., n} sorted by their textual key.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Iterable

from condorcet_domains.composition import nl_decompose
from condorcet_domains.config import load_settings
from condorcet_domains.core import (
    Domain,
    DomainError,
    DomainSizeError,
    LinearOrder,
    NeverCondition,
    all_orders_on,
    cyclic_triples,
    flip,
    guard_alternatives,
    relabel,
    triples_of,
)
from condorcet_domains.properties import (
    has_maximal_width,
    is_ample,
    is_arrow_single_peaked,
    is_copious,
    is_maximal,
    is_single_crossing,
)


EventCallback = Callable[[str, str, dict[str, Any]], None]


@dataclass(frozen=True)
class DomainClass:
    canonical_key: str
    representatives: tuple[Domain, ...]
    decomposable: bool
    flip_decomposable: bool
    with_flip: bool

    @property
    def representative(self) -> Domain:
        return self.representatives[0]


@dataclass(frozen=True)
class ClassFlags:
    canonical_key: str
    size: int
    labeled: int
    decomposable: bool
    ample: bool | None
    copious: bool | None
    maximal_width: bool
    arrow_sp: bool | None
    single_crossing: bool | None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class CensusResult:
    count: int
    total: int
    keys: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def all_linear_orders(alternatives: Iterable[int]) -> list[LinearOrder]:
    alternatives = frozenset(alternatives)
    if not alternatives:
        raise DomainError("need at least one alternative")
    guard_alternatives(alternatives, "all_linear_orders")
    return all_orders_on(alternatives)


def _check_n(n: int, allow_large: bool) -> None:
    if n < 2:
        raise DomainError(f"enumeration needs at least two alternatives, got {n}")
    limit = load_settings().max_enumeration_n
    if n > limit and not allow_large:
        raise DomainSizeError(f"enumeration supports n <= {limit}; pass allow_large to go further")
    guard_alternatives(range(1, n + 1), "enumerate_maximal")


def _mask_domain(alternatives: frozenset[int], orders: list[LinearOrder], mask: int) -> Domain:
    return Domain(alternatives, frozenset(order for index, order in enumerate(orders) if mask >> index & 1))


def _intersections(start: int, rest: list[list[int]]) -> set[int]:
    """Non-empty intersections of `start` with one mask from each remaining triple."""
    found: set[int] = set()

    def descend(mask: int, depth: int):
        if not mask:
            return
        if depth == len(rest):
            found.add(mask)
            return
        for option in rest[depth]:
            descend(mask & option, depth + 1)

    descend(start, 0)
    return found


def enumerate_maximal(
    n: int,
    *,
    allow_large: bool = False,
    event_callback: EventCallback | None = None,
    workers: int | None = None,
) -> list[Domain]:
    """All labeled maximal Condorcet domains on {1, ..., n}."""
    _check_n(n, allow_large)
    alternatives = frozenset(range(1, n + 1))
    orders = all_orders_on(alternatives)
    full = (1 << len(orders)) - 1

    # one allowed-order mask per never-condition, grouped by triple
    options = []
    for triple in triples_of(alternatives):
        masks = []
        for x, position in itertools.product(triple, (1, 2, 3)):
            condition = NeverCondition(x, triple, position)
            masks.append(sum(1 << index for index, order in enumerate(orders) if not condition.violated_by(order)))
        options.append(masks)

    workers = workers or load_settings().workers
    _emit(event_callback, "started", f"Enumerating maximal domains for n={n}", {"n": n, "method": "conditions"})

    chunks = options[0] if options else [full]
    rest = options[1:]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_intersections, chunks, itertools.repeat(rest)))
    else:
        results = [_intersections(start, rest) for start in chunks]

    candidates: set[int] = set()
    for index, found in enumerate(results, start=1):
        candidates |= found
        _emit(event_callback, "chunk_completed", f"Chunk {index}/{len(chunks)} done", {"chunk": index, "candidates": len(found)})
    _emit(event_callback, "candidates_built", f"{len(candidates)} candidate domains", {"candidates": len(candidates)})

    domains = [_mask_domain(alternatives, orders, mask) for mask in candidates]
    maximal = sorted((domain for domain in domains if is_maximal(domain)), key=Domain.key)
    _emit(event_callback, "completed", f"{len(maximal)} maximal domains for n={n}", {"n": n, "count": len(maximal)})
    return maximal


def _cycle_hypergraph(orders: list[LinearOrder], alternatives: frozenset[int]) -> list[tuple[int, ...]]:
    """For each order index, bitmasks of the order pairs that complete a cycle with it."""
    pair_masks: list[set[int]] = [set() for _ in orders]
    for triple in triples_of(alternatives):
        groups: dict[tuple[int, ...], list[int]] = {}
        for index, order in enumerate(orders):
            image = tuple(label for label in order.ranking if label in triple)
            groups.setdefault(image, []).append(index)
        for cycle in cyclic_triples(triple):
            first, second, third = (groups.get(image, []) for image in sorted(cycle))
            for i, j, k in itertools.product(first, second, third):
                pair_masks[i].add(1 << j | 1 << k)
                pair_masks[j].add(1 << i | 1 << k)
                pair_masks[k].add(1 << i | 1 << j)
    return [tuple(sorted(masks)) for masks in pair_masks]


def enumerate_maximal_backtracking(
    n: int,
    *,
    allow_large: bool = False,
    event_callback: EventCallback | None = None,
) -> list[Domain]:
    """Maximal Condorcet domains as maximal independent sets of the cycle hypergraph."""
    _check_n(n, allow_large)
    alternatives = frozenset(range(1, n + 1))
    orders = all_orders_on(alternatives)
    pair_masks = _cycle_hypergraph(orders, alternatives)
    involved = [0] * len(orders)
    for index, masks in enumerate(pair_masks):
        for mask in masks:
            involved[index] |= mask
    total = len(orders)
    _emit(event_callback, "started", f"Backtracking over {total} orders", {"n": n, "method": "backtracking"})

    def blocked(index: int, chosen: int) -> bool:
        return any(mask & chosen == mask for mask in pair_masks[index])

    def blockable(index: int, excluded: int) -> bool:
        return any(not mask & excluded for mask in pair_masks[index])

    found: list[int] = []

    # every skipped order must still be completable into a cycle by chosen or undecided orders
    def search(position: int, chosen: int, excluded: int, skipped: tuple[int, ...]):
        if position == total:
            found.append(chosen)
            return
        bit = 1 << position
        if not blocked(position, chosen):
            search(position + 1, chosen | bit, excluded, skipped)
        next_excluded = excluded | bit
        if not blockable(position, next_excluded):
            return
        if all(blockable(index, next_excluded) for index in skipped if involved[index] & bit):
            search(position + 1, chosen, next_excluded, skipped + (position,))

    search(0, 0, 0, ())
    domains = sorted((_mask_domain(alternatives, orders, mask) for mask in found), key=Domain.key)
    _emit(event_callback, "completed", f"{len(domains)} maximal domains for n={n}", {"n": n, "count": len(domains)})
    return domains


def _transforms(domain: Domain, with_flip: bool) -> Iterable[Domain]:
    labels = sorted(domain.alternatives)
    variants = [domain, flip(domain)] if with_flip else [domain]
    for permutation in itertools.permutations(range(1, len(labels) + 1)):
        table = dict(zip(labels, permutation))
        for variant in variants:
            yield relabel(variant, table)


def canonical_form(domain: Domain) -> str:
    """Least textual key over every relabeling onto 1..k, with and without flip."""
    guard_alternatives(domain.alternatives, "canonical_form")
    return min(candidate.key() for candidate in _transforms(domain, with_flip=True))


def canonical_form_iso(domain: Domain) -> str:
    guard_alternatives(domain.alternatives, "canonical_form_iso")
    return min(candidate.key() for candidate in _transforms(domain, with_flip=False))


def relabel_to(domain: Domain, alternatives: Iterable[int]) -> Domain:
    """Move `domain` onto `alternatives`, keeping the relative order of labels."""
    return relabel(domain, sorted(alternatives))


def classify(domains: Iterable[Domain], with_flip: bool = True) -> list[DomainClass]:
    keyer = canonical_form if with_flip else canonical_form_iso
    groups: dict[str, list[Domain]] = {}
    for domain in domains:
        groups.setdefault(keyer(domain), []).append(domain)

    classes = []
    for key in sorted(groups):
        members = tuple(sorted(set(groups[key]), key=Domain.key))
        classes.append(
            DomainClass(
                canonical_key=key,
                representatives=members,
                decomposable=any(_decomposable(member) for member in members),
                flip_decomposable=any(_decomposable(flip(member)) for member in members),
                with_flip=with_flip,
            )
        )
    return classes


def _decomposable(domain: Domain) -> bool:
    return len(domain.alternatives) >= 2 and bool(nl_decompose(domain))


def class_flags(domain_class: DomainClass) -> ClassFlags:
    domain = domain_class.representative
    size = len(domain.alternatives)
    try:
        single_crossing = is_single_crossing(domain)
    except DomainSizeError:
        single_crossing = None
    return ClassFlags(
        canonical_key=domain_class.canonical_key,
        size=len(domain),
        labeled=len(domain_class.representatives),
        decomposable=_counts_as_decomposable(domain_class),
        ample=is_ample(domain) if size >= 2 else None,
        copious=is_copious(domain) if size >= 3 else None,
        maximal_width=has_maximal_width(domain),
        arrow_sp=is_arrow_single_peaked(domain) if size >= 3 else None,
        single_crossing=single_crossing,
    )


def _counts_as_decomposable(domain_class: DomainClass) -> bool:
    return domain_class.decomposable or (domain_class.with_flip and domain_class.flip_decomposable)


def decomposability_census(classes: list[DomainClass]) -> CensusResult:
    keys = tuple(item.canonical_key for item in classes if _counts_as_decomposable(item))
    return CensusResult(count=len(keys), total=len(classes), keys=keys)


def _emit(event_callback: EventCallback | None, event_type: str, message: str, details: dict[str, Any] | None = None):
    if event_callback:
        event_callback(event_type, message, details or {})
