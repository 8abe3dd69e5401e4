"""Exhaustive generation of labelled H-free graphs.

Unordered pairs are decided in order of their larger endpoint, then their
smaller one; each pair takes one of 3 (oriented) or 4 (digraph) states. After
a state adds arcs, the anchored check ``contains_with_arc`` rejects the branch
as soon as a copy of H appears, so only H-free prefixes are ever extended.
"""
import itertools
import logging

from .containment import contains_with_arc
from .digraph import GraphKind

logger = logging.getLogger("tdl")

NONE, FORWARD, BACKWARD, BOTH = 0, 1, 2, 3


def pair_order(n):
    return [(i, j) for j in range(1, n) for i in range(j)]


def pair_states(kind):
    return (NONE, FORWARD, BACKWARD) if GraphKind.parse(kind) is GraphKind.ORIENTED \
        else (NONE, FORWARD, BACKWARD, BOTH)


def split_prefixes(n, kind, depth):
    """Static split of the search space over the first ``depth`` pair states."""
    depth = max(0, min(depth, len(pair_order(n))))
    return list(itertools.product(pair_states(kind), repeat=depth))


def iter_h_free(n, h, kind, prefix=(), budget=None, prune=None):
    """Yield ``(arc_mask, f1, f2)`` for every H-free graph of ``kind`` on ``n`` labelled vertices.

    :param prefix: fixed states for the first pairs; used to split work.
    :param budget: optional ``commons.Budget`` ticked once per search node.
    :param prune: optional ``prune(pairs_left, f1, f2)``; a true result cuts the
        subtree below the current node.
    """
    pairs = pair_order(n)
    states = pair_states(kind)
    out_rows = [0] * n
    in_rows = [0] * n
    never = h.arc_count == 0 and h.n <= n  # an arcless H sits in every graph
    check = h.arc_count > 0 and h.n <= n
    if never:
        return

    def creates_copy(u, v):
        return check and contains_with_arc(out_rows, in_rows, n, h, u, v)

    def walk(idx, mask, f1, f2):
        if budget is not None:
            budget.tick()
        if prune is not None and prune(len(pairs) - idx, f1, f2):
            return
        if idx == len(pairs):
            yield mask, f1, f2
            return
        i, j = pairs[idx]
        options = (prefix[idx],) if idx < len(prefix) else states
        for state in options:
            if state == NONE:
                for item in walk(idx + 1, mask, f1, f2):
                    yield item
                continue
            bits = 0
            if state != BACKWARD:
                out_rows[i] |= 1 << j
                in_rows[j] |= 1 << i
                bits |= 1 << (i * n + j)
            if state != FORWARD:
                out_rows[j] |= 1 << i
                in_rows[i] |= 1 << j
                bits |= 1 << (j * n + i)
            bad = (state != BACKWARD and creates_copy(i, j)) or (state != FORWARD and creates_copy(j, i))
            if not bad:
                if state == BOTH:
                    sub = walk(idx + 1, mask | bits, f1, f2 + 1)
                else:
                    sub = walk(idx + 1, mask | bits, f1 + 1, f2)
                for item in sub:
                    yield item
            if state != BACKWARD:
                out_rows[i] &= ~(1 << j)
                in_rows[j] &= ~(1 << i)
            if state != FORWARD:
                out_rows[j] &= ~(1 << i)
                in_rows[i] &= ~(1 << j)

    for item in walk(0, 0, 0, 0):
        yield item


def iter_all(n, kind, prefix=()):
    """Every labelled graph of ``kind`` on ``n`` vertices, as arc masks, no pruning.

    :param prefix: fixed states for the first pairs, as in ``iter_h_free``.
    """
    pairs = pair_order(n)
    prefix = tuple(prefix[:len(pairs)])
    for tail in itertools.product(pair_states(kind), repeat=len(pairs) - len(prefix)):
        combo = prefix + tail
        mask = 0
        for (i, j), state in zip(pairs, combo):
            if state in (FORWARD, BOTH):
                mask |= 1 << (i * n + j)
            if state in (BACKWARD, BOTH):
                mask |= 1 << (j * n + i)
        yield mask
