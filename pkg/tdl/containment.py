"""Subdigraph containment, copy counting and the greedy H-removal cleaner.

Containment is non-induced: an injection phi of V(H) into V(G) is a copy when
every arc u->v of H lands on an arc phi(u)->phi(v) of G. Copies are counted as
such maps; divide by |Aut(H)| to count subgraphs.
"""
import itertools
import logging
from fractions import Fraction
from functools import lru_cache

logger = logging.getLogger("tdl")


class _Plan:
    """Matching order for the vertices of H plus the arc checks at each step.

    ``constraints[k]`` lists ``(p, outward)`` for earlier positions p: the
    image of position k must be an out-neighbour (``outward``) or an
    in-neighbour of the image of position p.
    """

    def __init__(self, h, first=()):
        self.h = h
        order = list(first)
        rest = [v for v in range(h.n) if v not in order]
        adjacent = [h.out_rows[v] | h.in_rows[v] for v in range(h.n)]
        while rest:
            placed = 0
            for v in order:
                placed |= 1 << v
            # most arcs back into the placed set, then highest degree, then label
            best = max(rest, key=lambda v: ((adjacent[v] & placed).bit_count(), h.degree(v), -v))
            order.append(best)
            rest.remove(best)
        self.order = order
        self.size = len(order)
        self.constraints = []
        for k, hv in enumerate(order):
            cons = []
            for p in range(k):
                hp = order[p]
                if h.has_arc(hp, hv):
                    cons.append((p, True))
                if h.has_arc(hv, hp):
                    cons.append((p, False))
            self.constraints.append(cons)
        self.out_deg = [h.out_degree(v) for v in order]
        self.in_deg = [h.in_degree(v) for v in order]


@lru_cache(maxsize=256)
def _plan(h):
    return _Plan(h)


@lru_cache(maxsize=256)
def _anchored_plans(h):
    # one plan per arc (a, b) of H, placing a then b first
    return tuple(_Plan(h, (a, b)) for a, b in h.arcs())


def _degree_filters(g, plan):
    filters = []
    for k in range(plan.size):
        mask = 0
        for v in range(g.n):
            if g.out_degree(v) >= plan.out_deg[k] and g.in_degree(v) >= plan.in_deg[k]:
                mask |= 1 << v
        filters.append(mask)
    return filters


def _backtrack(out_rows, in_rows, plan, images, k, free, filters, pinned, find_one):
    if k == plan.size:
        return 1
    cand = free
    if filters is not None:
        cand &= filters[k]
    if k < len(pinned):
        cand &= 1 << pinned[k]
    for p, outward in plan.constraints[k]:
        cand &= out_rows[images[p]] if outward else in_rows[images[p]]
        if not cand:
            return 0
    total = 0
    while cand:
        low = cand & -cand
        images[k] = low.bit_length() - 1
        got = _backtrack(out_rows, in_rows, plan, images, k + 1, free ^ low, filters, pinned, find_one)
        if got and find_one:
            return got
        total += got
        cand ^= low
    return total


def _candidate_filters(g, h, plan, candidates):
    filters = _degree_filters(g, plan)
    if candidates:
        for k, hv in enumerate(plan.order):
            allowed = candidates.get(hv)
            if allowed is None:
                continue
            if not isinstance(allowed, int):
                allowed = sum(1 << v for v in allowed)
            filters[k] &= allowed
    return filters


def find_embedding(g, h, candidates=None):
    """Return an arc-preserving injection ``{h_vertex: g_vertex}`` or None.

    :param candidates: optional ``{h_vertex: allowed g vertices}`` (bit mask or
        iterable) restricting where single vertices of H may land.
    """
    if h.n > g.n:
        return None
    if h.n == 0:
        return {}
    plan = _plan(h)
    images = [0] * plan.size
    filters = _candidate_filters(g, h, plan, candidates)
    found = _backtrack(g.out_rows, g.in_rows, plan, images, 0, (1 << g.n) - 1, filters, (), True)
    if not found:
        return None
    return dict((hv, images[k]) for k, hv in enumerate(plan.order))


def contains(g, h):
    return find_embedding(g, h) is not None


def count_copies(g, h):
    """Number of arc-preserving injections of H into G."""
    if h.n > g.n:
        return 0
    if h.n == 0:
        return 1
    plan = _plan(h)
    images = [0] * plan.size
    filters = _degree_filters(g, plan)
    return _backtrack(g.out_rows, g.in_rows, plan, images, 0, (1 << g.n) - 1, filters, (), False)


def iter_embeddings(g, h):
    """Yield every arc-preserving injection as a ``{h_vertex: g_vertex}`` dict."""
    if h.n > g.n:
        return
    plan = _plan(h)
    filters = _degree_filters(g, plan)
    out_rows, in_rows = g.out_rows, g.in_rows
    images = [0] * plan.size

    def walk(k, free):
        if k == plan.size:
            yield dict((hv, images[i]) for i, hv in enumerate(plan.order))
            return
        cand = free & filters[k]
        for p, outward in plan.constraints[k]:
            cand &= out_rows[images[p]] if outward else in_rows[images[p]]
        while cand:
            low = cand & -cand
            images[k] = low.bit_length() - 1
            for emb in walk(k + 1, free ^ low):
                yield emb
            cand ^= low

    for emb in walk(0, (1 << g.n) - 1):
        yield emb


def contains_with_arc(out_rows, in_rows, n, h, u, v):
    """True iff the graph given by ``out_rows``/``in_rows`` has a copy of H using arc u->v.

    Works on raw row lists so enumerators and chains can call it on their
    mutable state. Assumes the arc u->v is present.
    """
    if h.n > n:
        return False
    free = ((1 << n) - 1) ^ (1 << u) ^ (1 << v)
    for plan in _anchored_plans(h):
        images = [u, v] + [0] * (plan.size - 2)
        # position 1 must still satisfy the reverse arc of H if there is one
        ok = True
        for p, outward in plan.constraints[1]:
            row = out_rows[images[p]] if outward else in_rows[images[p]]
            if not row >> v & 1:
                ok = False
        if ok and _backtrack(out_rows, in_rows, plan, images, 2, free, None, (), True):
            return True
    return False


def naive_count_copies(g, h):
    """Reference count over all injections, no pruning."""
    arcs = h.arcs()
    total = 0
    for phi in itertools.permutations(range(g.n), h.n):
        if all(g.has_arc(phi[a], phi[b]) for a, b in arcs):
            total += 1
    return total


def automorphism_count(h):
    # an arc-preserving injection of H into itself is an automorphism
    return count_copies(h, h)


def greedy_make_h_free(g, h):
    """Delete arcs until G is H-free.

    Each round deletes the arc lying in the most remaining copies of H, ties
    going to the lexicographically smallest ``(u, v)``.

    :return: ``(h_free_graph, deleted_arcs)``.
    """
    deleted = []
    current = g
    while True:
        load = {}
        for emb in iter_embeddings(current, h):
            for a, b in h.arcs():
                arc = (emb[a], emb[b])
                load[arc] = load.get(arc, 0) + 1
        if not load:
            break
        arc = min(load, key=lambda x: (-load[x], x))
        logger.debug("[greedy-h-free] delete arc:%s lying in %s copies" % (arc, load[arc]))
        current = current.without_arc(*arc)
        deleted.append(arc)
    logger.info("[greedy-h-free] %s arcs deleted" % len(deleted))
    return current, deleted


class Pattern:
    """A forbidden digraph H with its container-theory quantities.

    * ``delta`` - max over vertices of out-degree plus in-degree.
    * ``m_value`` - max (e-1)/(v-2) over induced subgraphs on >= 3 vertices
      with more than one arc, None when no such subgraph exists.
    * ``cond_a_threshold`` - max e/v over induced subgraphs with more than
      one arc; Condition A at weight a holds iff it is at most a/2.
    * ``dense_pair`` - H has a 2-cycle, i.e. a 2-vertex subgraph with two
      arcs, which the m(H) maximum leaves out.
    """

    def __init__(self, h, name=None):
        self.h = h
        self.name = name or "H"
        self.delta = h.max_degree()
        self.m_value = None
        self.cond_a_threshold = None
        self.dense_pair = h.f2 > 0
        self._aut = None
        for subset in range(1, 1 << h.n):
            v = subset.bit_count()
            e = sum((h.out_rows[u] & subset).bit_count() for u in range(h.n) if subset >> u & 1)
            if e <= 1:
                continue
            ratio = Fraction(e, v)
            if self.cond_a_threshold is None or ratio > self.cond_a_threshold:
                self.cond_a_threshold = ratio
            if v >= 3:
                m = Fraction(e - 1, v - 2)
                if self.m_value is None or m > self.m_value:
                    self.m_value = m

    @property
    def aut_count(self):
        if self._aut is None:
            self._aut = automorphism_count(self.h)
        return self._aut

    def condition_a(self, a):
        """Condition A: e(H')/v(H') <= a/2 for all H' with e(H') > 1."""
        if self.cond_a_threshold is None:
            return True
        value = a.value if hasattr(a, "value") else a
        if isinstance(value, float):
            return float(self.cond_a_threshold) <= value / 2 + 1e-9
        return self.cond_a_threshold <= Fraction(value) / 2

    def copies_as_subgraphs(self, map_count):
        return map_count // self.aut_count

    def to_dict(self, weights=()):
        return {
            "name": self.name,
            "v": self.h.n,
            "e": self.h.arc_count,
            "delta": self.delta,
            "m": None if self.m_value is None else str(self.m_value),
            "cond_a_threshold": None if self.cond_a_threshold is None else str(self.cond_a_threshold),
            "dense_pair_flag": self.dense_pair,
            "aut": self.aut_count,
            "condition_a": dict((str(a), self.condition_a(a)) for a in weights),
            "hex": self.h.to_hex(),
        }

    def __repr__(self):
        return "Pattern(%s, delta=%s, m=%s, e/v=%s)" % (self.name, self.delta, self.m_value,
                                                         self.cond_a_threshold)


def pattern_stats(h, name=None):
    pattern = Pattern(h, name)
    if pattern.m_value is None:
        logger.warning("[pattern-stats] m(H) undefined for %s (needs a subgraph on >= 3 vertices "
                       "with more than one arc)" % pattern.name)
    if pattern.dense_pair:
        logger.warning("[pattern-stats] %s has a 2-cycle; 2-vertex subgraphs are left out of m(H)"
                       % pattern.name)
    return pattern
