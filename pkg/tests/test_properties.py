from __future__ import annotations

import itertools
import math
import os
import unittest
from unittest.mock import patch

from condorcet_domains.catalog import catalog_entries
from condorcet_domains.core import Domain, DomainError, DomainSizeError, LinearOrder, flip, relabel
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
    is_single_peaked_wrt,
    single_crossing_arrangement,
    single_peaked_axes,
)


D3_1 = Domain.of(["123", "312", "132", "321"])
D3_2 = Domain.of(["123", "231", "132", "321"])
D3_3 = Domain.of(["123", "213", "231", "321"])
SNAKE = Domain.of(["1234", "2134", "2314", "2341", "2431", "4231", "4321"])
SP_1234 = Domain.of(["1234", "2134", "2314", "3214", "2341", "3241", "3421", "4321"])
CRAB = Domain.of(["1234", "2134", "2314", "3214", "2341", "3241", "2431", "4231"])
SUN = Domain.of(["3124", "3214", "2314", "2134", "3421", "3241", "2341", "2431"])


class MaximalityTest(unittest.TestCase):
    def test_three_alternative_domains_are_maximal(self):
        for domain in (D3_1, D3_2, D3_3):
            with self.subTest(domain=str(domain)):
                self.assertTrue(is_maximal(domain))
                self.assertEqual(addable_orders(domain), frozenset())

    def test_catalog_matrices_are_maximal(self):
        for domain in (SNAKE, SP_1234, CRAB, SUN):
            with self.subTest(domain=str(domain)):
                self.assertTrue(is_maximal(domain))

    def test_addable_orders_of_snake_left_factor(self):
        left = Domain.of(["123", "213", "231"])
        self.assertFalse(is_maximal(left))
        self.assertEqual(addable_orders(left), {LinearOrder.parse("132"), LinearOrder.parse("321")})

    def test_non_condorcet_input(self):
        cyclic = Domain.of(["123", "231", "312"])
        self.assertFalse(is_maximal(cyclic))
        with self.assertRaises(DomainError):
            addable_orders(cyclic)

    def test_full_two_alternative_domain_is_maximal(self):
        self.assertTrue(is_maximal(Domain.of(["12", "21"])))
        self.assertFalse(is_maximal(Domain.of(["12"])))

    def test_size_guard(self):
        with patch.dict(os.environ, {"CONDORCET_MAX_ALTERNATIVES": "3"}):
            with self.assertRaises(DomainSizeError):
                is_maximal(SP_1234)


class AmpleCopiousWidthTest(unittest.TestCase):
    def test_ample(self):
        self.assertTrue(is_ample(D3_1))
        self.assertTrue(is_ample(SNAKE))
        self.assertFalse(is_ample(Domain.of(["123", "213"])))
        with self.assertRaises(DomainError):
            is_ample(Domain.of(["1"]))

    def test_copious(self):
        for domain in (D3_1, D3_2, D3_3, CRAB, SUN):
            with self.subTest(domain=str(domain)):
                self.assertTrue(is_copious(domain))
        self.assertFalse(is_copious(Domain.of(["123", "213", "231"])))
        with self.assertRaises(DomainError):
            is_copious(Domain.of(["12", "21"]))

    def test_maximal_width(self):
        self.assertTrue(has_maximal_width(SNAKE))
        self.assertTrue(has_maximal_width(SP_1234))
        self.assertFalse(has_maximal_width(CRAB))
        self.assertFalse(has_maximal_width(SUN))
        self.assertFalse(has_maximal_width(Domain.of(["123", "213"])))

    def test_properties_survive_relabel_and_flip(self):
        for domain in (CRAB, SUN, SNAKE):
            for variant in (relabel(domain, (4, 1, 3, 2)), flip(domain)):
                with self.subTest(domain=str(variant)):
                    self.assertEqual(is_maximal(variant), is_maximal(domain))
                    self.assertEqual(is_copious(variant), is_copious(domain))
                    self.assertEqual(has_maximal_width(variant), has_maximal_width(domain))


class SinglePeakedTest(unittest.TestCase):
    def test_generate_counts(self):
        self.assertEqual(len(generate_single_peaked(Axis((1,)))), 1)
        self.assertEqual(generate_single_peaked(Axis((1, 2, 3))), D3_3)
        self.assertEqual(generate_single_peaked(Axis((1, 2, 3, 4))), SP_1234)
        self.assertEqual(len(generate_single_peaked(Axis((1, 2, 3, 4, 5)))), 16)

    def test_axis_membership(self):
        self.assertTrue(is_single_peaked_wrt(SP_1234, Axis.parse("1 2 3 4")))
        self.assertTrue(is_single_peaked_wrt(SP_1234, Axis.parse("4321")))
        self.assertFalse(is_single_peaked_wrt(SP_1234, Axis.parse("2134")))
        with self.assertRaises(DomainError):
            is_single_peaked_wrt(SP_1234, Axis.parse("123"))

    def test_axes_found_up_to_reversal(self):
        self.assertEqual(single_peaked_axes(SP_1234), [Axis((1, 2, 3, 4))])
        self.assertEqual(single_peaked_axes(CRAB), [])
        self.assertEqual(str(Axis((1, 2, 3))), "1◁2◁3")

    def test_arrow_single_peaked(self):
        self.assertTrue(is_arrow_single_peaked(CRAB))
        self.assertTrue(is_arrow_single_peaked(SP_1234))
        self.assertFalse(is_arrow_single_peaked(D3_1))
        self.assertFalse(is_arrow_single_peaked(SUN))
        with self.assertRaises(DomainError):
            is_arrow_single_peaked(Domain.of(["12"]))

    def test_axis_rejects_repeats(self):
        with self.assertRaises(DomainError):
            Axis((1, 2, 1))


class SingleCrossingTest(unittest.TestCase):
    def test_snake_is_single_crossing(self):
        arrangement = single_crossing_arrangement(SNAKE)
        self.assertIsNotNone(arrangement)
        self.assertEqual(set(arrangement), set(SNAKE.orders))
        self.assertTrue(is_single_crossing(SNAKE))

    def test_arrangement_flips_each_pair_at_most_once(self):
        arrangement = single_crossing_arrangement(SNAKE)
        for a, b in ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)):
            sides = [order.position(a) < order.position(b) for order in arrangement]
            flips = sum(1 for left, right in zip(sides, sides[1:]) if left != right)
            self.assertLessEqual(flips, 1)

    def test_cyclic_triple_is_not_single_crossing(self):
        self.assertFalse(is_single_crossing(Domain.of(["123", "231", "312"])))

    def test_single_order(self):
        self.assertEqual(single_crossing_arrangement(Domain.of(["21"])), [LinearOrder.parse("21")])

    def test_guard(self):
        with patch.dict(os.environ, {"CONDORCET_MAX_SINGLE_CROSSING_ORDERS": "5"}):
            with self.assertRaises(DomainSizeError):
                is_single_crossing(SNAKE)


class DomainInvariantTest(unittest.TestCase):
    def test_single_peaked_domain_ignores_axis_direction(self):
        for spectrum in itertools.permutations((1, 2, 3, 4)):
            axis = Axis(spectrum)
            with self.subTest(axis=str(axis)):
                self.assertEqual(generate_single_peaked(axis), generate_single_peaked(axis.reversed()))

    def test_single_peaked_catalog_domains_are_arrow_single_peaked(self):
        axes = [Axis(spectrum) for spectrum in itertools.permutations((1, 2, 3, 4)) if spectrum[0] < spectrum[-1]]
        self.assertEqual(len(axes), 12)
        for entry in catalog_entries():
            if len(entry.matrix_orders.alternatives) != 4:
                continue
            for axis in axes:
                with self.subTest(entry=entry.id, axis=str(axis)):
                    if is_single_peaked_wrt(entry.matrix_orders, axis):
                        self.assertTrue(is_arrow_single_peaked(entry.matrix_orders))

    def test_single_crossing_catalog_domains_are_small(self):
        for entry in catalog_entries():
            domain = entry.matrix_orders
            k = len(domain.alternatives)
            with self.subTest(entry=entry.id):
                if is_single_crossing(domain):
                    self.assertLessEqual(len(domain), math.comb(k, 2) + 1)

    def test_single_peaked_example_is_not_single_crossing(self):
        self.assertFalse(is_single_crossing(SP_1234))
        self.assertIsNone(single_crossing_arrangement(SP_1234))


if __name__ == "__main__":
    unittest.main()
