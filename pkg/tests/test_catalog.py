from __future__ import annotations

import json
import tempfile
import unittest
from pathlib import Path

from condorcet_domains.catalog import (
    CatalogLookupError,
    catalog_entries,
    catalog_get,
    factor_name,
    known_discrepancies,
    parse_factor,
    stated_conditions_domain,
    verify_catalog,
)
from condorcet_domains.core import Domain, DomainError, is_condorcet
from condorcet_domains.properties import is_maximal


class CatalogLookupTest(unittest.TestCase):
    def test_twelve_entries(self):
        entries = catalog_entries()
        self.assertEqual(len(entries), 12)
        self.assertTrue(all(is_condorcet(entry.matrix_orders) for entry in entries))

    def test_lookup_by_alias_and_id(self):
        self.assertEqual(
            catalog_get("crab").matrix_orders,
            Domain.of(["1234", "2134", "2314", "3214", "2341", "3241", "2431", "4231"]),
        )
        self.assertEqual(
            catalog_get("snake").matrix_orders,
            Domain.of(["1234", "2134", "2314", "2341", "2431", "4231", "4321"]),
        )
        self.assertEqual(catalog_get("D3_2").matrix_orders, Domain.of(["123", "231", "132", "321"]))
        self.assertEqual(catalog_get("d4,5").id, "D4_5")

    def test_unknown_entry(self):
        with self.assertRaises(CatalogLookupError):
            catalog_get("D4_1")

    def test_four_alternative_sizes(self):
        for entry in catalog_entries():
            if len(entry.matrix_orders.alternatives) != 4:
                continue
            with self.subTest(entry=entry.id):
                self.assertTrue(is_maximal(entry.matrix_orders))
                expected = 7 if entry.id in ("D4_2", "D4_3") else 8
                self.assertEqual(len(entry.matrix_orders), expected)


class FactorTest(unittest.TestCase):
    def test_parse_factor(self):
        self.assertEqual(parse_factor("D3_3(2,3,4)"), Domain.of(["234", "324", "342", "432"]))
        self.assertEqual(parse_factor("D3_1(2,3,1)"), Domain.of(["231", "123", "213", "132"]))
        self.assertEqual(parse_factor("{123,213,231}"), Domain.of(["123", "213", "231"]))
        with self.assertRaises(DomainError):
            parse_factor("D3_4(1,2,3)")

    def test_factor_names(self):
        self.assertEqual(factor_name(Domain.of(["234", "324", "342", "432"])), "D3_3(2,3,4)")
        self.assertEqual(factor_name(Domain.of(["123", "231", "132", "321"])), "D3_2(1,2,3)")
        self.assertEqual(factor_name(Domain.of(["213", "321", "231", "312"])), "D3_1(2,1,3)")
        self.assertEqual(factor_name(Domain.of(["5"])), "(5)")
        self.assertEqual(factor_name(Domain.of(["123", "213", "231"])), "{123,213,231}")

    def test_stated_conditions_domain(self):
        entry = catalog_get("half-crab-half-sun")
        domain = stated_conditions_domain(entry)
        self.assertEqual(len(domain), 8)
        self.assertNotEqual(domain, entry.matrix_orders)
        self.assertIsNone(stated_conditions_domain(catalog_get("snake")))


class VerifyCatalogTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.events = []
        cls.report = verify_catalog(event_callback=lambda event_type, message, details: cls.events.append(event_type))
        cls.records = {record.key: record for entry in cls.report.entries for record in entry.checks}

    def test_verification_matches_the_ledger(self):
        self.assertTrue(self.report.ok)
        self.assertEqual(self.report.unexpected, ())
        self.assertEqual(self.report.missing, ())
        self.assertEqual(
            set(self.report.expected_mismatches),
            {"D4_7:identity", "D4_7:conditions", "D4_16:identity", "D4_3:left_containment"},
        )

    def test_identities(self):
        for entry_id in ("D4_2", "D4_3", "D4_4", "D4_5", "D4_6", "D4_11", "D4_17"):
            with self.subTest(entry=entry_id):
                self.assertTrue(self.records[f"{entry_id}:identity"].matched)
        self.assertEqual(self.records["D4_7:identity"].computed, "D3_1(2,1,3) ⋄ D3_3(2,3,4)")
        self.assertEqual(self.records["D4_16:identity"].computed, "D3_2(1,2,3) ⋄ D3_2(4,2,3)")

    def test_condition_sets(self):
        for entry_id in ("D4_4", "D4_5", "D4_6", "D4_11", "D4_16", "D4_17"):
            with self.subTest(entry=entry_id):
                self.assertTrue(self.records[f"{entry_id}:conditions"].matched)
        self.assertEqual(
            self.records["D4_7:conditions"].computed,
            "{1N{1,2,3}1, 2N{1,2,4}3, 3N{1,3,4}3, 3N{2,3,4}3}",
        )

    def test_stated_flags(self):
        for key in (
            "D4_5:arrow_sp",
            "D4_5:not_maximal_width",
            "D4_5:not_single_peaked",
            "D4_6:copious",
            "D4_6:not_maximal_width",
            "D4_7:copious",
            "D4_7:not_maximal_width",
            "D4_2:single_crossing",
            "D4_2:path_graph",
            "D4_2:left_addable",
            "D4_2:left_containment",
            "D4_3:left_addable",
            "D4_4:single_peaked_axis",
            "D3_3:completely_reducible",
        ):
            with self.subTest(check=key):
                self.assertTrue(self.records[key].matched)

    def test_snake_graph_summary(self):
        snake = next(entry for entry in self.report.entries if entry.id == "D4_2")
        self.assertEqual((snake.graph.vertices, snake.graph.edges, snake.graph.path), (7, 6, True))

    def test_report_lines(self):
        lines = self.report.lines()
        self.assertIn("ENTRY D4_5: identity = MATCH", lines)
        self.assertIn(
            "ENTRY D4_16: identity = MISMATCH(D3_3(1,2,3) ⋄ D3_2(4,2,3) vs D3_2(1,2,3) ⋄ D3_2(4,2,3))",
            lines,
        )
        self.assertTrue(lines[-1].startswith("SUMMARY: OK"))

    def test_events(self):
        self.assertEqual(self.events[0], "started")
        self.assertEqual(self.events.count("entry_verified"), 12)
        self.assertEqual(self.events[-1], "completed")

    def test_json_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            path.write_text(self.report.to_json(), encoding="utf-8")
            data = json.loads(path.read_text(encoding="utf-8"))
        self.assertTrue(data["ok"])
        self.assertEqual(len(data["entries"]), 12)

    def test_ledger_kinds(self):
        kinds = {item.key: item.kind for item in known_discrepancies()}
        self.assertEqual(kinds["D4_7:identity"], "mismatch")
        self.assertEqual(kinds["D4_5:label"], "note")
        self.assertEqual(kinds["D4_2:notation"], "note")

    def test_swap_graph_notes_name_the_disconnected_matrices(self):
        noted = {item.entry for item in known_discrepancies() if item.check == "swap_graph"}
        self.assertTrue(all(item.kind == "note" for item in known_discrepancies() if item.check == "swap_graph"))
        disconnected = {entry.id for entry in self.report.entries if not entry.graph.connected}
        self.assertEqual(noted, disconnected)
        self.assertEqual(disconnected, {"D3_2", "D4_3", "D4_11", "D4_16", "D4_17"})


if __name__ == "__main__":
    unittest.main()
