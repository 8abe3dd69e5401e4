"""Exact weighted Turan numbers ex_a(n, H) with witness certificates."""
import logging
from fractions import Fraction

import networkx as nx

from .canonical import canonical_mask
from .commons import (DEFAULTS, Budget, InvalidInputException, ensure_size, fmt_float, run_jobs,
                      split_depth)
from .containment import Pattern, contains, naive_count_copies
from .digraph import (Digraph, GraphKind, WeightParam, from_hex, is_legal, to_hex, turan_graph_digraph,
                      turan_number, weighted_size)
from .generate import iter_all, iter_h_free, split_prefixes

logger = logging.getLogger("tdl")


class ExtremalCertificate:
    """Maximum of e_a over H-free graphs on n labelled vertices, with all maximisers up to isomorphism."""

    def __init__(self, n, pattern, a, kind, value, witnesses):
        self.n = n
        self.pattern = pattern
        self.a = a
        self.kind = kind
        self.value = value
        self.witnesses = witnesses

    @property
    def exact(self):
        return self.a.exact

    @property
    def unique_up_to_iso(self):
        return len(self.witnesses) == 1

    def to_dict(self):
        record = {
            "n": self.n,
            "h_name": self.pattern.name,
            "kind": self.kind.value,
            "a": str(self.a),
        }
        if self.exact:
            record["value_num"] = self.value.numerator
            record["value_den"] = self.value.denominator
        else:
            record["value_float"] = fmt_float(self.value)
        record["witness_count"] = len(self.witnesses)
        record["unique_up_to_iso"] = self.unique_up_to_iso
        record["witnesses"] = [to_hex(w) for w in self.witnesses]
        return record

    @classmethod
    def from_dict(cls, record, h):
        a = WeightParam.parse(record["a"])
        if "value_num" in record:
            value = Fraction(record["value_num"], record["value_den"])
        else:
            value = float(record["value_float"])
        witnesses = [from_hex(line) for line in record["witnesses"]]
        return cls(record["n"], Pattern(h, record["h_name"]), a, GraphKind.parse(record["kind"]), value,
                   witnesses)

    def __repr__(self):
        return "ExtremalCertificate(n=%s, %s, a=%s, value=%s, witnesses=%s)" % (
            self.n, self.pattern.name, self.a, self.value, len(self.witnesses))


def _better(value, best, tol):
    return best is None or value > best + tol


def _same(value, best, tol):
    return best is not None and abs(value - best) <= tol


def _extremal_job(job):
    n, h_n, h_mask, kind, a_value, tol, incumbent, prefix, budget_secs = job
    h = Digraph(h_n, h_mask)
    budget = Budget(budget_secs, tag="exact-extremal")
    # both arcs of a pair are worth a >= 1, one arc is worth 1
    cap = a_value if kind is GraphKind.DIGRAPH else 1
    state = {"best": incumbent, "found": set()}

    def prune(pairs_left, f1, f2):
        best = state["best"]
        return best is not None and a_value * f2 + f1 + cap * pairs_left < best - tol

    for mask, f1, f2 in iter_h_free(n, h, kind, prefix, budget, prune):
        value = a_value * f2 + f1
        if _better(value, state["best"], tol):
            state["best"] = value
            state["found"] = set([canonical_mask(Digraph(n, mask))])
        elif _same(value, state["best"], tol):
            state["found"].add(canonical_mask(Digraph(n, mask)))
    # an incumbent this subtree never reached carries no witnesses
    return state["best"], state["found"]


def _incumbent(n, h, kind, r):
    if r is None:
        return None
    g = turan_graph_digraph(n, r)
    if is_legal(g, kind) and not contains(g, h):
        return g
    return None


def exact_extremal(n, h, a, kind, r=None, name=None, budget_secs=None, threads=1, max_n=None):
    """ex_a(n, H) by branch and bound over pair states.

    A subtree is cut when its weighted size plus the best possible value of
    the undecided pairs falls strictly below the incumbent, so every
    maximiser is still reached. When ``r`` is given and DT_r(n) is legal and
    H-free it seeds the incumbent.

    :raise BudgetExceededException: ``n`` beyond the per-kind cap, or the
        wall-clock budget ran out. No partial value is ever returned.
    """
    kind = GraphKind.parse(kind)
    w = a if isinstance(a, WeightParam) else WeightParam(a)
    if max_n is None:
        max_n = DEFAULTS["MAX_N_EXTREMAL_ORIENTED" if kind is GraphKind.ORIENTED else "MAX_N_EXTREMAL_DIGRAPH"]
    ensure_size(n, max_n, "exact extremal search (%s)" % kind.value)
    if h.arc_count == 0 and h.n <= n:
        raise InvalidInputException("H has no arcs, so no graph on %s vertices is H-free." % n)
    pattern = Pattern(h, name)
    tol = 0 if w.exact else DEFAULTS["FLOAT_TOL"]
    seed = _incumbent(n, h, kind, r)
    incumbent = None if seed is None else weighted_size(seed, w)
    logger.info("[exact-extremal] n:%s, pattern:%s, a:%s, kind:%s, incumbent:%s"
                % (n, pattern.name, w, kind.value, incumbent))

    pairs = n * (n - 1) // 2
    depth = split_depth(kind.base, threads, pairs)
    jobs = [(n, h.n, h.arc_mask, kind, w.value, tol, incumbent, p, budget_secs)
            for p in split_prefixes(n, kind, depth)]
    best, found = None, set()
    for value, masks in run_jobs(_extremal_job, jobs, threads):
        if not masks:
            continue
        if _better(value, best, tol):
            best, found = value, set(masks)
        elif _same(value, best, tol):
            found |= masks
    witnesses = [Digraph(n, m) for m in sorted(found)]
    logger.info("[exact-extremal] n:%s, pattern:%s, value:%s, witnesses:%s"
                % (n, pattern.name, best, len(witnesses)))
    return ExtremalCertificate(n, pattern, w, kind, best, witnesses)


def lower_bound_construction(n, r, a):
    """DT_r(n) and its weighted size a * t_r(n)."""
    w = a if isinstance(a, WeightParam) else WeightParam(a)
    return turan_graph_digraph(n, r), w.value * turan_number(n, r)


def extremal_gap_scan(n_range, h, a, kind, r, name=None, budget_secs=None, threads=1, max_n=None):
    """Rows ``{n, ex, lower, gap}`` with gap = ex_a(n, H) - a * t_r(n)."""
    rows = []
    for n in n_range:
        cert = exact_extremal(n, h, a, kind, r=r, name=name, budget_secs=budget_secs, threads=threads,
                             max_n=max_n)
        _, lower = lower_bound_construction(n, r, cert.a)
        rows.append({"n": n, "ex": cert.value, "lower": lower, "gap": cert.value - lower,
                     "witness_count": len(cert.witnesses)})
        logger.info("[gap-scan] n:%s, ex:%s, lower:%s" % (n, cert.value, lower))
    return rows


def brute_force_extremal(n, h, a, kind, name=None):
    """Reference maximum over every labelled graph, no pruning, networkx isomorphism dedup."""
    kind = GraphKind.parse(kind)
    w = a if isinstance(a, WeightParam) else WeightParam(a)
    tol = 0 if w.exact else DEFAULTS["FLOAT_TOL"]
    best, found = None, []
    for mask in iter_all(n, kind):
        g = Digraph(n, mask)
        if h.n <= n and naive_count_copies(g, h):
            continue
        value = weighted_size(g, w)
        if _better(value, best, tol):
            best, found = value, [g]
        elif _same(value, best, tol):
            ng = g.to_networkx()
            if not any(nx.is_isomorphic(ng, x.to_networkx()) for x in found):
                found.append(g)
    return ExtremalCertificate(n, Pattern(h, name), w, kind, best, found)


def extremal_second_best(n, h, a, kind, budget_secs=None, max_n=None):
    """ex_a(n, H), the best weighted size strictly below it, and their gap.

    :return: ``(ex, second, gap)``; ``second`` is None when every H-free
        graph attains the maximum.
    """
    kind = GraphKind.parse(kind)
    w = a if isinstance(a, WeightParam) else WeightParam(a)
    if max_n is None:
        max_n = DEFAULTS["MAX_N_CENSUS_ORIENTED" if kind is GraphKind.ORIENTED else "MAX_N_CENSUS_DIGRAPH"]
    ensure_size(n, max_n, "second-best search (%s)" % kind.value)
    tol = 0 if w.exact else DEFAULTS["FLOAT_TOL"]
    budget = Budget(budget_secs, tag="second-best")
    best = second = None
    for _, f1, f2 in iter_h_free(n, h, kind, budget=budget):
        value = w.value * f2 + f1
        if _better(value, best, tol):
            best, second = value, best
        elif not _same(value, best, tol) and _better(value, second, tol):
            second = value
    gap = None if second is None else best - second
    logger.info("[second-best] n:%s, ex:%s, second:%s" % (n, best, second))
    return best, second, gap
