# -*- coding: utf8 -*-

import math
import unittest
from fractions import Fraction

from tdl.canonical import is_isomorphic
from tdl.commons import BudgetExceededException, InvalidInputException
from tdl.containment import contains
from tdl.digraph import (Digraph, WeightParam, blow_up_pattern, directed_cycle, is_legal,
                         transitive_tournament, turan_graph_digraph, turan_number, weighted_size)
from tdl.extremal import (ExtremalCertificate, brute_force_extremal, exact_extremal, extremal_gap_scan,
                          extremal_second_best, lower_bound_construction)

T3 = transitive_tournament(3)


class TestExtremal(unittest.TestCase):

    def test_oriented_triangle(self):
        cert = exact_extremal(3, T3, 2, "oriented", name="T_3")
        self.assertEqual(cert.value, 3)
        self.assertTrue(cert.unique_up_to_iso)
        self.assertTrue(is_isomorphic(cert.witnesses[0], directed_cycle(3)))

    def test_digraph_triangle(self):
        cert = exact_extremal(3, T3, 2, "digraph", r=2, name="T_3")
        self.assertEqual(cert.value, 4)
        self.assertEqual(len(cert.witnesses), 1)
        self.assertTrue(is_isomorphic(cert.witnesses[0], turan_graph_digraph(3, 2)))
        record = cert.to_dict()
        self.assertEqual((record["value_num"], record["value_den"]), (4, 1))
        self.assertTrue(record["unique_up_to_iso"])
        back = ExtremalCertificate.from_dict(record, T3)
        self.assertEqual(back.value, 4)
        self.assertEqual(back.witnesses, cert.witnesses)

    def test_against_brute_force(self):
        for kind in ("oriented", "digraph"):
            for a in (2, Fraction(3, 2), 3):
                for n in (3, 4):
                    fast = exact_extremal(n, T3, a, kind)
                    slow = brute_force_extremal(n, T3, a, kind)
                    self.assertEqual(fast.value, slow.value)
                    self.assertEqual(len(fast.witnesses), len(slow.witnesses))

    def test_witnesses_are_sound(self):
        for kind in ("oriented", "digraph"):
            for a in (2, Fraction(3, 2)):
                for n in (2, 3, 4):
                    cert = exact_extremal(n, T3, a, kind)
                    if kind == "digraph":
                        self.assertGreaterEqual(cert.value, a * turan_number(n, 2))
                    for w in cert.witnesses:
                        self.assertEqual(weighted_size(w, a), cert.value)
                        self.assertFalse(contains(w, T3))
                        self.assertTrue(is_legal(w, kind))

    def test_incumbent_does_not_change_answer(self):
        plain = exact_extremal(4, T3, 2, "digraph")
        seeded = exact_extremal(4, T3, 2, "digraph", r=2)
        self.assertEqual(plain.value, seeded.value)
        self.assertEqual(plain.witnesses, seeded.witnesses)

    def test_threads(self):
        single = exact_extremal(4, T3, 2, "digraph", threads=1)
        pooled = exact_extremal(4, T3, 2, "digraph", threads=2)
        self.assertEqual(single.value, pooled.value)
        self.assertEqual(single.witnesses, pooled.witnesses)

    def test_float_weight(self):
        cert = exact_extremal(3, T3, WeightParam.oriented(), "digraph")
        self.assertAlmostEqual(cert.value, 2 * math.log2(3), places=9)
        self.assertEqual(len(cert.witnesses), 1)
        self.assertFalse(cert.exact)
        self.assertIn("value_float", cert.to_dict())

    def test_large_pattern(self):
        cert = exact_extremal(3, blow_up_pattern(2, 2), 2, "digraph")
        self.assertEqual(cert.value, 6)
        rows = extremal_gap_scan([3], blow_up_pattern(2, 2), 2, "digraph", 2)
        self.assertEqual(rows[0]["gap"], 2)

    def test_gap_scan(self):
        rows = extremal_gap_scan(range(2, 4), T3, 2, "digraph", 2)
        self.assertEqual([row["n"] for row in rows], [2, 3])
        self.assertEqual([row["gap"] for row in rows], [0, 0])
        g, lower = lower_bound_construction(5, 2, 2)
        self.assertEqual(lower, 12)
        self.assertEqual(g, turan_graph_digraph(5, 2))

    def test_second_best(self):
        self.assertEqual(extremal_second_best(3, T3, 2, "digraph"), (4, 3, 1))
        ex, second, gap = extremal_second_best(2, T3, 2, "oriented")
        self.assertEqual((ex, second, gap), (1, 0, 1))

    def test_errors(self):
        with self.assertRaises(BudgetExceededException) as ctx:
            exact_extremal(9, T3, 2, "digraph")
        self.assertEqual(ctx.exception.largest_feasible_n, 7)
        self.assertRaises(BudgetExceededException, exact_extremal, 9, T3, 2, "oriented")
        self.assertRaises(InvalidInputException, exact_extremal, 3, Digraph.empty(2), 2, "digraph")
        self.assertRaises(InvalidInputException, exact_extremal, 3, T3, "1/2", "digraph")


if __name__ == '__main__':
    unittest.main()
