from __future__ import annotations

import tempfile
import unittest
from pathlib import Path

from condorcet_domains.catalog import catalog_entries
from condorcet_domains.core import Domain, DomainParseError
from condorcet_domains.domain_text import (
    assert_valid_domain_text,
    parse_domain_blocks,
    parse_domain_text,
    read_domain,
    read_domains,
    render_domain_blocks,
    render_domain_text,
    validate_domain_text,
    write_domain,
)


D3_3 = Domain.of(["123", "213", "231", "321"])


class ParseTest(unittest.TestCase):
    def test_parse_listed_orders(self):
        self.assertEqual(parse_domain_text("123\n213\n231\n321\n"), D3_3)
        self.assertEqual(parse_domain_text("12\n21\n"), Domain.of(["12", "21"]))

    def test_comments_blank_lines_and_header(self):
        text = "# never last\nalts: 1 2 3\n\n321  # reversed\n123\n213\n231\n"
        self.assertEqual(parse_domain_text(text), D3_3)

    def test_spaced_labels(self):
        domain = parse_domain_text("1 10 2\n10 1 2\n")
        self.assertEqual(domain.alternatives, frozenset({1, 2, 10}))

    def test_errors_carry_line_numbers(self):
        cases = {
            "123\n12\n": 2,
            "123\n123\n": 2,
            "123\n1x3\n": 2,
            "alts: 1 2\n123\n": 2,
            "# nothing\n\n": None,
        }
        for text, line_number in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(DomainParseError) as ctx:
                    parse_domain_text(text)
                self.assertEqual(ctx.exception.line_number, line_number)

    def test_validate_and_assert(self):
        self.assertEqual(validate_domain_text("123\n213\n"), [])
        failures = validate_domain_text("123\n12\n---\n21\n21\n")
        self.assertEqual(len(failures), 2)
        self.assertTrue(failures[0].startswith("line 2:"))
        with self.assertRaises(DomainParseError):
            assert_valid_domain_text("123\n12\n")


class RenderTest(unittest.TestCase):
    def test_sorted_compact_output(self):
        self.assertEqual(render_domain_text(Domain.of(["321", "231", "213", "123"])), "123\n213\n231\n321\n")
        self.assertEqual(render_domain_text(Domain.of(["1"])), "1\n")

    def test_large_labels(self):
        domain = Domain.of([(1, 10, 2), (2, 1, 10)])
        self.assertEqual(render_domain_text(domain), "1 10 2\n2 1 10\n")
        self.assertEqual(parse_domain_text(render_domain_text(domain)), domain)

    def test_single_large_label_uses_header(self):
        domain = Domain.of([(12,)])
        self.assertEqual(render_domain_text(domain), "alts: 12\n12\n")
        self.assertEqual(parse_domain_text(render_domain_text(domain)), domain)

    def test_catalog_fixtures_round_trip(self):
        for entry in catalog_entries():
            with self.subTest(entry=entry.id):
                self.assertEqual(parse_domain_text(render_domain_text(entry.matrix_orders)), entry.matrix_orders)

    def test_blocks(self):
        domains = [D3_3, Domain.of(["12", "21"])]
        text = render_domain_blocks(domains)
        self.assertEqual(text, "123\n213\n231\n321\n---\n12\n21\n")
        self.assertEqual(parse_domain_blocks(text), domains)

    def test_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_domain(D3_3, Path(tmp) / "d3_3.txt")
            self.assertEqual(read_domain(path), D3_3)
            with self.assertRaises(FileNotFoundError):
                read_domain(Path(tmp) / "missing.txt")

    def test_invalid_utf8_is_a_parse_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "bad.txt"
            path.write_bytes(b"12\n\xff\xfe21\n")
            for reader in (read_domain, read_domains):
                with self.subTest(reader=reader.__name__):
                    with self.assertRaises(DomainParseError):
                        reader(path)


if __name__ == "__main__":
    unittest.main()
