# -*- coding: utf8 -*-

import unittest
from fractions import Fraction

import numpy as np

from tdl.commons import BudgetExceededException, InvalidInputException
from tdl.digraph import Digraph, complete_digraph, transitive_tournament, turan_graph_digraph
from tdl.structure import (RPartition, balanced_table, crossing_count, dt_distance, dt_distance_mask,
                           f2_deficit, f_conditions_check, few_partitions_condition,
                           find_ordered_transversal, internal_degree_bound, internal_degree_profile,
                           internal_degree_violations, iter_canonical_assignments, min_non_crossing_mask,
                           non_crossing_count, optimal_partition, optimal_partitions, pair_densities,
                           partition_report, partition_table, stability_sweep)


class TestPartition(unittest.TestCase):

    def test_rpartition(self):
        q = RPartition.from_assignment([0, 1, 0], 2)
        self.assertEqual(q.classes, [[0, 2], [1]])
        self.assertEqual(q.assignment, [0, 1, 0])
        self.assertEqual(q.masks(), [5, 2])
        self.assertRaises(InvalidInputException, RPartition, 2, [[0, 1], [1]])
        self.assertRaises(InvalidInputException, RPartition, 2, [[0, 2], []])
        self.assertRaises(InvalidInputException, RPartition, 3, [[0], [1]])
        self.assertRaises(InvalidInputException, RPartition.from_assignment, [0, 2], 2)

    def test_canonical_assignments(self):
        # Stirling numbers S(4,1) + S(4,2)
        self.assertEqual(len(list(iter_canonical_assignments(4, 2))), 8)
        self.assertEqual(len(partition_table(4, 4)), 15)
        self.assertEqual(list(iter_canonical_assignments(0, 2)), [()])
        self.assertEqual(len(balanced_table(4, 2)), 3)

    def test_counts(self):
        g = complete_digraph(3)
        q = RPartition(2, [[0, 1], [2]])
        self.assertEqual(non_crossing_count(g, q), 2)
        self.assertEqual(crossing_count(g, q), 4)
        self.assertEqual(f2_deficit(g, q), 0)
        report = partition_report(transitive_tournament(3), q)
        self.assertEqual((report.non_crossing_arcs, report.f2_deficit), (1, 2))
        self.assertEqual(report.edit_distance_to_DTr, 3)
        self.assertRaises(InvalidInputException, non_crossing_count, Digraph.empty(4), q)

    def test_optimal_double_triangle(self):
        report = optimal_partition(complete_digraph(3), 2)
        self.assertEqual(report.non_crossing_arcs, 2)
        self.assertEqual(report.partition.classes, [[0, 1], [2]])
        self.assertTrue(report.is_optimal)
        best, found = optimal_partitions(complete_digraph(3), 2)
        self.assertEqual(best, 2)
        self.assertEqual(len(found), 3)
        distance, q = dt_distance(complete_digraph(3), 2)
        self.assertEqual(distance, 2)
        self.assertEqual(sorted(len(c) for c in q.classes), [1, 2])

    def test_exact_beyond_table(self):
        g = turan_graph_digraph(11, 2)
        report = optimal_partition(g, 2)
        self.assertEqual(report.non_crossing_arcs, 0)
        self.assertEqual(report.edit_distance_to_DTr, 0)
        best, found = optimal_partitions(g, 2)
        self.assertEqual((best, len(found)), (0, 1))
        g = g.with_arc(0, 1)
        self.assertEqual(optimal_partition(g, 2).non_crossing_arcs, 1)

    def test_exact_matches_table(self):
        rng = np.random.Generator(np.random.Philox(11))
        for _ in range(30):
            n = int(rng.integers(2, 7))
            g = Digraph(n, sum(1 << i for i in range(n * n) if rng.random() < 0.5 and i // n != i % n))
            for r in (2, 3):
                report = optimal_partition(g, r)
                self.assertEqual(report.non_crossing_arcs, min_non_crossing_mask(g.arc_mask, n, r))
                self.assertEqual(non_crossing_count(g, report.partition), report.non_crossing_arcs)
                self.assertEqual(dt_distance(g, r)[0], dt_distance_mask(g.arc_mask, n, r))

    def test_local_search(self):
        report = optimal_partition(turan_graph_digraph(6, 2), 2, mode="local_search", seed=3)
        self.assertEqual(report.non_crossing_arcs, 0)
        self.assertTrue(report.is_optimal)
        g = complete_digraph(5)
        first = optimal_partition(g, 2, mode="local_search", seed=9)
        again = optimal_partition(g, 2, mode="local_search", seed=9)
        self.assertEqual(first.partition, again.partition)
        self.assertGreaterEqual(first.non_crossing_arcs, optimal_partition(g, 2).non_crossing_arcs)

    def test_partition_errors(self):
        self.assertRaises(InvalidInputException, optimal_partition, Digraph.empty(3), 2, "annealing")
        self.assertRaises(InvalidInputException, optimal_partition, Digraph.empty(3), 0)
        self.assertRaises(BudgetExceededException, optimal_partition, Digraph.empty(17), 2)


class TestConditions(unittest.TestCase):

    def test_pair_densities(self):
        d = pair_densities(turan_graph_digraph(4, 2), [0, 1], [2, 3], 2)
        self.assertEqual((d.d2, d.d1_ab, d.d1_ba, d.w_ab), (1, 0, 0, 2))
        d = pair_densities(transitive_tournament(3), [0], [1, 2], Fraction(3, 2))
        self.assertEqual((d.d2, d.d1_ab, d.d1_ba), (0, 1, 0))
        self.assertEqual(d.w_ba, 0)
        self.assertRaises(InvalidInputException, pair_densities, complete_digraph(3), [0, 1], [1, 2], 2)
        self.assertRaises(InvalidInputException, pair_densities, complete_digraph(3), [], [1, 2], 2)

    def test_f2_failure_on_empty_graph(self):
        q = RPartition(2, [[0, 1], [2, 3]])
        report = f_conditions_check(Digraph.empty(4), q, 0, Fraction(1, 2))
        self.assertTrue(report.F1)
        self.assertTrue(report.F3)
        self.assertFalse(report.F2)
        self.assertEqual(report.witnesses["F2"]["U_i"], [0, 1])
        self.assertEqual(report.witnesses["F2"]["U_j"], [2, 3])
        self.assertTrue(report.f2_exhaustive)

    def test_unbalanced_partition(self):
        q = RPartition(2, [[0, 1, 2], [3, 4]])
        report = f_conditions_check(turan_graph_digraph(5, 2), q, 0, 0.05)
        self.assertFalse(report.F3)
        self.assertTrue(report.F2)
        self.assertTrue(report.F1)
        report = f_conditions_check(turan_graph_digraph(5, 2).with_arc(0, 1), q, 0, 0.25)
        self.assertFalse(report.F1)
        self.assertTrue(report.F3)

    def test_float_levels_are_read_as_decimals(self):
        g = turan_graph_digraph(10, 2).without_arc(0, 5).without_arc(5, 0)
        q = RPartition(2, [list(range(5)), list(range(5, 10))])
        for mu in (Fraction(1, 10), 0.1, "0.1"):
            report = f_conditions_check(g, q, 0, mu)
            self.assertFalse(report.F2)
            self.assertEqual(report.witnesses["F2"]["U_i"], [0])
            self.assertEqual(report.witnesses["F2"]["U_j"], [5])
        q = RPartition(2, [list(range(8)), [8, 9]])
        self.assertTrue(f_conditions_check(turan_graph_digraph(10, 2), q, 0, 0.3).F3)
        self.assertFalse(f_conditions_check(turan_graph_digraph(10, 2), q, 0, 0.29).F3)
        self.assertEqual(internal_degree_bound(10, 2, 0.1), 2)

    def test_sampled_f2(self):
        q = RPartition(2, [[0, 1], [2, 3]])
        report = f_conditions_check(turan_graph_digraph(4, 2), q, 0, Fraction(1, 2), max_exhaustive_n=2,
                                    samples=50)
        self.assertTrue(report.F2)
        self.assertFalse(report.f2_exhaustive)
        self.assertEqual(report.f2_samples, 50)
        self.assertTrue(report.to_dict()["F2_pass_is_probabilistic"])
        self.assertRaises(InvalidInputException, f_conditions_check, Digraph.empty(4), q, 1, 0)

    def test_internal_degrees(self):
        self.assertEqual(internal_degree_bound(10, 2, Fraction(1, 10)), 2)
        self.assertEqual(internal_degree_bound(10, 3, Fraction(1, 10)), 24)
        g = turan_graph_digraph(4, 2).with_arc(0, 1).with_arc(1, 0)
        q = RPartition(2, [[0, 1], [2, 3]])
        self.assertEqual(internal_degree_profile(g, q), [2, 2, 0, 0])
        self.assertEqual(internal_degree_violations(g, q, Fraction(1, 8)), [0, 1])
        self.assertEqual(internal_degree_violations(g, q, Fraction(1, 4)), [])
        self.assertRaises(InvalidInputException, internal_degree_bound, 10, 1, Fraction(1, 10))

    def test_few_partitions_condition(self):
        self.assertTrue(few_partitions_condition(2, Fraction(1, 10 ** 13), Fraction(1, 10 ** 27)))
        self.assertFalse(few_partitions_condition(2, Fraction(1, 100), Fraction(1, 10 ** 6)))
        self.assertFalse(few_partitions_condition(2, Fraction(1, 10 ** 13), Fraction(1, 10 ** 20)))

    def test_ordered_transversal(self):
        self.assertEqual(find_ordered_transversal(complete_digraph(3), [[0], [1], [2]], (2, 0, 1)), [0, 1, 2])
        g = turan_graph_digraph(6, 3)
        sets = [[0, 1], [2, 3], [4, 5]]
        found = find_ordered_transversal(g, sets, (0, 1, 2))
        self.assertIsNotNone(found)
        for i, v in enumerate(found):
            self.assertIn(v, sets[i])
        self.assertIsNone(find_ordered_transversal(Digraph.empty(6), sets, (0, 1, 2)))
        cycle_order = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
        self.assertIsNone(find_ordered_transversal(cycle_order, [[0], [1], [2]], (0, 1, 2)))
        self.assertRaises(InvalidInputException, find_ordered_transversal, g, sets, (0, 0, 1))


class TestStability(unittest.TestCase):

    def test_zero_gamma(self):
        sweep = stability_sweep(4, 2, 1, 2, 0, "digraph")
        self.assertEqual(len(sweep.rows), 1)
        row = sweep.rows[0]
        self.assertEqual((row["deficit"], row["count"], row["max_distance"]), (0, 3, 0))
        self.assertEqual(sweep.frontier(), [(0, 0)])

    def test_full_sweep(self):
        sweep = stability_sweep(4, 2, 1, 2, Fraction(1, 2), "digraph")
        self.assertEqual(sweep.max_distance, 8)
        self.assertEqual(sweep.rows[0]["deficit"], 0)
        distances = [d for _, d in sweep.frontier()]
        self.assertEqual(distances, sorted(distances))
        csv = sweep.to_csv()
        self.assertTrue(csv.startswith("deficit,count,max_distance,argmax_graph_hex,level_max_distance\n"))
        self.assertEqual(len(csv.strip().split("\n")), len(sweep.rows) + 1)

    def test_threads(self):
        single = stability_sweep(4, 2, 1, 2, Fraction(1, 4), "oriented")
        pooled = stability_sweep(4, 2, 1, 2, Fraction(1, 4), "oriented", threads=2)
        self.assertEqual(single.rows, pooled.rows)

    def test_five_vertex_frontier(self):
        sweep = stability_sweep(5, 2, 1, 2, Fraction(12, 25), "digraph")
        rows = [(row["deficit"], row["count"], row["max_distance"]) for row in sweep.rows]
        self.assertEqual(rows, [(0, 10, 0), (1, 120, 1), (2, 672, 6), (3, 2500, 6), (4, 6410, 8), (5, 11160, 9),
                                (6, 12570, 10), (7, 8844, 10), (8, 3885, 10), (9, 1080, 11), (10, 190, 11),
                                (11, 20, 11), (12, 1, 12)])
        self.assertEqual(sum(row["count"] for row in sweep.rows), 47462)
        self.assertEqual(sweep.max_distance, 12)

    def test_cap(self):
        self.assertRaises(BudgetExceededException, stability_sweep, 6, 2, 1, 2, 0, "digraph")


if __name__ == '__main__':
    unittest.main()
