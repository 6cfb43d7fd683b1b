"""Swap graphs: orders joined when they differ by one adjacent transposition."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import networkx as nx

from condorcet_domains.core import Domain, LinearOrder


@dataclass(frozen=True)
class DomainGraph:
    vertices: tuple[LinearOrder, ...]
    edges: frozenset[tuple[LinearOrder, LinearOrder]]

    def sorted_edges(self) -> list[tuple[LinearOrder, LinearOrder]]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class GraphSummary:
    vertices: int
    edges: int
    connected: bool
    path: bool
    max_degree: int

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def is_adjacent_swap(u: LinearOrder, v: LinearOrder) -> bool:
    if len(u) != len(v):
        return False
    differing = [index for index, (a, b) in enumerate(zip(u.ranking, v.ranking)) if a != b]
    if len(differing) != 2:
        return False
    first, second = differing
    return second == first + 1 and u.ranking[first] == v.ranking[second] and u.ranking[second] == v.ranking[first]


def build_graph(domain: Domain) -> DomainGraph:
    vertices = tuple(domain.sorted_orders())
    edges = frozenset(
        (u, v) for u, v in itertools.combinations(vertices, 2) if is_adjacent_swap(u, v)
    )
    return DomainGraph(vertices, edges)


def is_path(graph: DomainGraph) -> bool:
    """Connected, acyclic and no vertex of degree above two."""
    if not graph.vertices:
        return False
    g = graph.to_networkx()
    return nx.is_tree(g) and max(degree for _, degree in g.degree) <= 2


def graph_summary(graph: DomainGraph) -> GraphSummary:
    g = graph.to_networkx()
    return GraphSummary(
        vertices=g.number_of_nodes(),
        edges=g.number_of_edges(),
        connected=nx.is_connected(g) if graph.vertices else False,
        path=is_path(graph),
        max_degree=max((degree for _, degree in g.degree), default=0),
    )


def to_dot(graph: DomainGraph) -> str:
    lines = ["graph D {"]
    for vertex in graph.vertices:
        lines.append(f'  "{vertex}" [label="{vertex}"];')
    for u, v in graph.sorted_edges():
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(graph: DomainGraph, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_dot(graph), encoding="utf-8")
    return path
