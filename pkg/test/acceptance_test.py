# -*- coding: utf8 -*-

import unittest
from unittest import mock

import tdl
from tdl import acceptance
from tdl.census import labelled_census
from tdl.digraph import Digraph, transitive_tournament

T3 = transitive_tournament(3)


class TestAcceptance(unittest.TestCase):

    def setUp(self):
        self.lab = tdl.DigraphLab(threads=1)

    def test_blow_up_transfer_is_exhaustive(self):
        passed, detail = acceptance.criterion_blow_up_transfer(self.lab, max_n=4)
        self.assertTrue(passed)
        containing = sum(4 ** (n * (n - 1) // 2) - labelled_census(n, T3, 2, "digraph").f_count for n in (3, 4))
        self.assertEqual(detail["checked"], containing)
        self.assertLessEqual(detail["blow_ups_tested"], detail["checked"])
        passed, detail = acceptance.criterion_blow_up_transfer(self.lab, max_n=3)
        self.assertEqual(detail["checked"], 64 - 39)

    def test_blow_up_transfer_threads(self):
        pooled = tdl.DigraphLab(threads=2)
        single = acceptance.criterion_blow_up_transfer(self.lab, max_n=4)
        self.assertEqual(acceptance.criterion_blow_up_transfer(pooled, max_n=4)[1]["checked"],
                         single[1]["checked"])

    def test_blow_up_transfer_reports_counterexample(self):
        with mock.patch("tdl.acceptance.blow_up", return_value=Digraph.empty(6)):
            passed, detail = acceptance.criterion_blow_up_transfer(self.lab, max_n=3)
        self.assertFalse(passed)
        self.assertTrue(detail["counterexample"].startswith("D 3 "))

    def test_stability_frontier_compares_rows(self):
        rows = [dict(deficit=d, count=c, max_distance=m, level_max_distance=m, argmax_graph_hex="")
                for d, c, m in acceptance.STABILITY_FRONTIER]
        sweep = mock.Mock(rows=rows, max_distance=12)
        sweep.frontier.return_value = [(d, m) for d, _, m in acceptance.STABILITY_FRONTIER]
        with mock.patch.object(self.lab, "stability", return_value=sweep):
            self.assertTrue(acceptance.criterion_stability(self.lab)[0])
            rows[4]["count"] += 1
            passed, detail = acceptance.criterion_stability(self.lab)
        self.assertFalse(passed)
        self.assertEqual(detail["rows"][4], (4, 6411, 8))
        self.assertEqual(sum(c for _, c, _ in acceptance.STABILITY_FRONTIER), 47462)

    def test_property_suites(self):
        for func in (acceptance.properties_digraph, acceptance.properties_extremal):
            passed, detail = func(self.lab)
            self.assertTrue(passed, detail)

    def test_run_checks(self):
        names = [name for name, _ in acceptance.CHECKS]
        self.assertIn("properties-digraph", names)
        self.assertEqual(len(names), len(set(names)))
        results = acceptance.run_checks(self.lab, only=["pattern-quantities", "properties-digraph"])
        self.assertEqual([r.name for r in results], ["pattern-quantities", "properties-digraph"])
        self.assertTrue(all(r.passed for r in results))

    def test_run_checks_catches_errors(self):
        def broken(lab):
            raise ValueError("boom")

        with mock.patch.object(acceptance, "CHECKS", [("broken", broken)]):
            with self.assertLogs("tdl", level="ERROR"):
                results = acceptance.run_checks(self.lab)
        self.assertFalse(results[0].passed)
        self.assertEqual(results[0].detail["error"], "ValueError: boom")


if __name__ == '__main__':
    unittest.main()
