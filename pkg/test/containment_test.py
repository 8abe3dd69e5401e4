# -*- coding: utf8 -*-

import unittest
from fractions import Fraction

import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from tdl.containment import (Pattern, automorphism_count, contains, contains_with_arc, count_copies,
                             find_embedding, greedy_make_h_free, iter_embeddings, naive_count_copies,
                             pattern_stats)
from tdl.digraph import (Digraph, blow_up, blow_up_pattern, complete_digraph, directed_cycle,
                         transitive_tournament, turan_graph_digraph)

T3 = transitive_tournament(3)


def random_digraph(rng, n, p):
    return Digraph(n, sum(1 << i for i in range(n * n) if rng.random() < p and i // n != i % n))


class TestContainment(unittest.TestCase):

    def test_counts(self):
        self.assertEqual(count_copies(T3, T3), 1)
        self.assertEqual(count_copies(complete_digraph(3), T3), 6)
        self.assertEqual(automorphism_count(directed_cycle(3)), 3)
        self.assertEqual(automorphism_count(complete_digraph(3)), 6)
        self.assertEqual(automorphism_count(blow_up_pattern(2, 2)), 8)
        self.assertEqual(count_copies(Digraph.empty(2), T3), 0)

    def test_bipartite_is_t3_free(self):
        self.assertFalse(contains(turan_graph_digraph(6, 2), T3))
        self.assertTrue(contains(turan_graph_digraph(6, 3), T3))
        self.assertFalse(contains(directed_cycle(3), T3))

    def test_embedding_is_valid(self):
        g = turan_graph_digraph(6, 3)
        emb = find_embedding(g, T3)
        self.assertEqual(len(set(emb.values())), 3)
        for a, b in T3.arcs():
            self.assertTrue(g.has_arc(emb[a], emb[b]))

    def test_candidates(self):
        t4 = transitive_tournament(4)
        self.assertEqual(find_embedding(t4, T3, candidates={0: [1]}), {0: 1, 1: 2, 2: 3})
        self.assertIsNone(find_embedding(t4, T3, candidates={0: [3]}))

    def test_against_naive_and_networkx(self):
        rng = np.random.Generator(np.random.Philox(2))
        patterns = [T3, transitive_tournament(4), directed_cycle(3), complete_digraph(2)]
        for _ in range(80):
            n = int(rng.integers(3, 7))
            g = random_digraph(rng, n, float(rng.uniform(0.2, 0.8)))
            for h in patterns:
                count = count_copies(g, h)
                self.assertEqual(count, naive_count_copies(g, h))
                self.assertEqual(count, sum(1 for _ in iter_embeddings(g, h)))
                self.assertEqual(count > 0, find_embedding(g, h) is not None)
                matcher = DiGraphMatcher(g.to_networkx(), h.to_networkx())
                self.assertEqual(count > 0, matcher.subgraph_is_monomorphic())

    def test_monotone(self):
        rng = np.random.Generator(np.random.Philox(3))
        for _ in range(50):
            g = random_digraph(rng, 6, 0.3)
            bigger = Digraph(6, g.arc_mask | random_digraph(rng, 6, 0.3).arc_mask)
            if contains(g, T3):
                self.assertTrue(contains(bigger, T3))

    def test_blow_up_transfer(self):
        rng = np.random.Generator(np.random.Philox(4))
        target = blow_up_pattern(2, 2)
        for _ in range(40):
            r_graph = random_digraph(rng, 5, 0.5)
            if contains(r_graph, T3):
                self.assertTrue(contains(blow_up(r_graph, 2), target))

    def test_contains_with_arc(self):
        g = Digraph.from_arcs(4, T3.arcs() + [(2, 3)])
        self.assertTrue(contains_with_arc(g.out_rows, g.in_rows, 4, T3, 0, 1))
        self.assertFalse(contains_with_arc(g.out_rows, g.in_rows, 4, T3, 2, 3))
        dk = complete_digraph(3)
        self.assertTrue(contains_with_arc(dk.out_rows, dk.in_rows, 3, complete_digraph(2), 1, 0))

    def test_greedy(self):
        cleaned, deleted = greedy_make_h_free(complete_digraph(3), T3)
        self.assertEqual(deleted, [(0, 1), (1, 0)])
        self.assertFalse(contains(cleaned, T3))
        cleaned, deleted = greedy_make_h_free(transitive_tournament(4), T3)
        self.assertEqual(len(deleted), 2)
        self.assertFalse(contains(cleaned, T3))
        rng = np.random.Generator(np.random.Philox(5))
        for _ in range(20):
            cleaned, _ = greedy_make_h_free(random_digraph(rng, 6, 0.6), T3)
            self.assertFalse(contains(cleaned, T3))

    def test_pattern_t3(self):
        p = Pattern(T3, "T_3")
        self.assertEqual(p.delta, 2)
        self.assertEqual(p.m_value, 2)
        self.assertEqual(p.cond_a_threshold, 1)
        self.assertTrue(p.condition_a(2))
        self.assertFalse(p.dense_pair)
        self.assertEqual(p.copies_as_subgraphs(count_copies(complete_digraph(3), T3)), 6)

    def test_pattern_double_triangle(self):
        p = pattern_stats(complete_digraph(3), "DK_3")
        self.assertEqual(p.cond_a_threshold, 2)
        self.assertFalse(p.condition_a(2))
        self.assertTrue(p.condition_a(4))
        self.assertEqual(p.m_value, 5)
        self.assertTrue(p.dense_pair)

    def test_pattern_blow_up(self):
        p = Pattern(blow_up_pattern(2, 2), "T_3^2")
        self.assertEqual(p.delta, 4)
        self.assertEqual(p.m_value, Fraction(11, 4))
        self.assertEqual(p.cond_a_threshold, 2)
        record = p.to_dict([2, 4])
        self.assertEqual(record["aut"], 8)
        self.assertEqual(record["m"], "11/4")

    def test_pattern_without_m(self):
        p = Pattern(Digraph.from_arcs(2, [(0, 1)]))
        self.assertIsNone(p.m_value)
        self.assertIsNone(p.cond_a_threshold)
        self.assertTrue(p.condition_a(1))


if __name__ == '__main__':
    unittest.main()
