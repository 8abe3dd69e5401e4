"""Deterministic canonical labelling of small digraphs.

Colour refinement on (colour, out-neighbour colours, in-neighbour colours)
signatures, then individualisation of each vertex of the first non-singleton
cell. Every discrete colouring is a labelling; the canonical form is the
relabelled graph with the largest arc mask. No automorphism pruning, which is
fine at the vertex counts the exhaustive modules reach.
"""
from functools import lru_cache

from .digraph import Digraph


def _refine(g, colors):
    out_rows, in_rows = g.out_rows, g.in_rows
    n = g.n
    cells = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            outs = tuple(sorted(colors[u] for u in range(n) if out_rows[v] >> u & 1))
            ins = tuple(sorted(colors[u] for u in range(n) if in_rows[v] >> u & 1))
            sigs.append((colors[v], outs, ins))
        rank = dict((s, i) for i, s in enumerate(sorted(set(sigs))))
        colors = [rank[s] for s in sigs]
        if len(rank) == cells:
            return colors
        cells = len(rank)


def _relabelled_mask(g, perm):
    n = g.n
    mask = 0
    for u, v in g.arcs():
        mask |= 1 << (perm[u] * n + perm[v])
    return mask


def _search(g, colors, best):
    colors = _refine(g, colors)
    n = g.n
    if len(set(colors)) == n:
        cert = _relabelled_mask(g, colors)
        return cert if best is None or cert > best else best
    sizes = {}
    for c in colors:
        sizes[c] = sizes.get(c, 0) + 1
    target = min(c for c, size in sizes.items() if size > 1)
    for v in range(n):
        if colors[v] != target:
            continue
        split = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)]
        best = _search(g, split, best)
    return best


@lru_cache(maxsize=65536)
def canonical_mask(g):
    if g.n == 0:
        return 0
    return _search(g, [0] * g.n, None)


def canonical_form(g):
    return Digraph(g.n, canonical_mask(g))


def is_isomorphic(g1, g2):
    if g1.n != g2.n or g1.arc_count != g2.arc_count:
        return False
    return canonical_mask(g1) == canonical_mask(g2)
