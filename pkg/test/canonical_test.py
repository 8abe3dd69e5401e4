# -*- coding: utf8 -*-

import itertools
import unittest

import networkx as nx
import numpy as np

from tdl.canonical import canonical_form, canonical_mask, is_isomorphic
from tdl.digraph import Digraph, GraphKind, directed_cycle, transitive_tournament, turan_graph_digraph
from tdl.generate import iter_all


class TestCanonical(unittest.TestCase):

    def test_class_counts(self):
        # unlabelled digraphs on 3 and 4 vertices, and oriented graphs
        self.assertEqual(len(set(canonical_mask(Digraph(3, m)) for m in iter_all(3, GraphKind.DIGRAPH))), 16)
        self.assertEqual(len(set(canonical_mask(Digraph(4, m)) for m in iter_all(4, GraphKind.DIGRAPH))), 218)
        self.assertEqual(len(set(canonical_mask(Digraph(3, m)) for m in iter_all(3, GraphKind.ORIENTED))), 7)
        self.assertEqual(len(set(canonical_mask(Digraph(4, m)) for m in iter_all(4, GraphKind.ORIENTED))), 42)

    def test_invariant_under_relabelling(self):
        g = turan_graph_digraph(5, 2).with_arc(0, 1)
        forms = set(canonical_form(g.relabel(list(p))) for p in itertools.permutations(range(5)))
        self.assertEqual(len(forms), 1)

    def test_against_networkx(self):
        rng = np.random.Generator(np.random.Philox(1))
        for _ in range(200):
            n = 5
            a = Digraph(n, sum(1 << i for i in range(n * n) if rng.random() < 0.4 and i // n != i % n))
            b = a.relabel([int(x) for x in rng.permutation(n)])
            if rng.random() < 0.5:
                b = b.with_arc(0, 1) if not b.has_arc(0, 1) else b.without_arc(0, 1)
            self.assertEqual(is_isomorphic(a, b), nx.is_isomorphic(a.to_networkx(), b.to_networkx()))

    def test_distinguishes(self):
        self.assertFalse(is_isomorphic(transitive_tournament(3), directed_cycle(3)))
        self.assertFalse(is_isomorphic(Digraph.empty(3), Digraph.empty(4)))
        self.assertTrue(is_isomorphic(Digraph(0), Digraph(0)))


if __name__ == '__main__':
    unittest.main()
