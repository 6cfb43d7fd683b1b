"""Line-oriented domain files.

One order per line, compact (`2314`) when every label is at most 9 and
whitespace-separated otherwise. `#` starts a comment, blank lines are ignored,
an optional `alts: ...` line fixes the alternative set, and `---` separates
domains in multi-domain files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from condorcet_domains.core import (
    COMPACT_LABEL_MAX,
    Domain,
    DomainError,
    DomainParseError,
    LinearOrder,
)


BLOCK_SEPARATOR = "---"
ALTS_PREFIX = "alts:"


def _content_lines(text: str, first_line: int = 1) -> list[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))
    return lines


def _parse_order(line: str, alternatives: frozenset[int] | None) -> LinearOrder:
    tokens = line.split()
    if alternatives is not None and len(alternatives) == 1 and len(tokens) == 1 and tokens[0].isdigit():
        return LinearOrder((int(tokens[0]),))
    return LinearOrder.parse(line)


def _parse_block(lines: list[tuple[int, str]]) -> Domain:
    if not lines:
        raise DomainParseError("no orders found")

    alternatives = None
    if lines[0][1].lower().startswith(ALTS_PREFIX):
        number, header = lines[0]
        try:
            labels = [int(token) for token in header[len(ALTS_PREFIX):].split()]
        except ValueError:
            raise DomainParseError(f"malformed alts header {header!r}", number) from None
        if not labels or len(set(labels)) != len(labels) or min(labels) < 1:
            raise DomainParseError(f"alts header must list distinct positive labels, got {header!r}", number)
        alternatives = frozenset(labels)
        lines = lines[1:]
        if not lines:
            raise DomainParseError("no orders found", number)

    orders: list[LinearOrder] = []
    seen: set[LinearOrder] = set()
    for number, line in lines:
        if line == BLOCK_SEPARATOR or line.lower().startswith(ALTS_PREFIX):
            raise DomainParseError(f"unexpected {line!r}", number)
        try:
            order = _parse_order(line, alternatives)
        except DomainError as exc:
            raise DomainParseError(str(exc), number) from exc
        if alternatives is None:
            alternatives = order.alternatives
        elif order.alternatives != alternatives:
            raise DomainParseError(
                f"order {order} does not use the alternatives {sorted(alternatives)}", number
            )
        if order in seen:
            raise DomainParseError(f"duplicate order {order}", number)
        seen.add(order)
        orders.append(order)
    return Domain(alternatives, frozenset(orders))


def parse_domain_text(text: str) -> Domain:
    return _parse_block(_content_lines(text))


def render_domain_text(domain: Domain) -> str:
    lines = []
    if len(domain.alternatives) == 1 and max(domain.alternatives) > COMPACT_LABEL_MAX:
        lines.append(f"{ALTS_PREFIX} {next(iter(domain.alternatives))}")
    lines.extend(str(order) for order in domain.sorted_orders())
    return "\n".join(lines) + "\n"


def _split_blocks(text: str) -> list[list[tuple[int, str]]]:
    blocks: list[list[tuple[int, str]]] = [[]]
    for number, line in _content_lines(text):
        if line == BLOCK_SEPARATOR:
            blocks.append([])
        else:
            blocks[-1].append((number, line))
    return [block for block in blocks if block]


def parse_domain_blocks(text: str) -> list[Domain]:
    """Parse a `---`-separated multi-domain file."""
    blocks = _split_blocks(text)
    if not blocks:
        raise DomainParseError("no domains found")
    return [_parse_block(block) for block in blocks]


def render_domain_blocks(domains: Iterable[Domain]) -> str:
    return f"{BLOCK_SEPARATOR}\n".join(render_domain_text(domain) for domain in domains)


def validate_domain_text(text: str) -> list[str]:
    """Return every parse failure in a (possibly multi-domain) file."""
    blocks = _split_blocks(text)
    if not blocks:
        return ["no domains found"]
    failures = []
    for block in blocks:
        try:
            _parse_block(block)
        except DomainError as exc:
            failures.append(str(exc))
    return failures


def assert_valid_domain_text(text: str) -> None:
    failures = validate_domain_text(text)
    if failures:
        raise DomainParseError("; ".join(failures))


def _read_text(path: Path) -> str:
    if not path.exists():
        raise FileNotFoundError(f"Domain file does not exist: {path}")
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise DomainParseError(f"{path} is not valid UTF-8 (byte {exc.start})") from exc


def read_domain(path: str | Path) -> Domain:
    return parse_domain_text(_read_text(Path(path)))


def read_domains(path: str | Path) -> list[Domain]:
    return parse_domain_blocks(_read_text(Path(path)))


def write_domain(domain: Domain, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_domain_text(domain), encoding="utf-8")
    return path
