"""Labelled counts of H-free graphs against r-partite graphs.

f(n, H) counts H-free graphs on the labelled vertex set 0..n-1, T(n, r) the
graphs whose underlying graph is properly r-colourable. Counts are exact
ints; ratios become floats only for display.
"""
import itertools
import logging
import math
from fractions import Fraction

from scipy import stats

from .commons import (DEFAULTS, Budget, InvalidInputException, ensure_size, fmt_float, run_jobs,
                      split_depth)
from .containment import naive_count_copies
from .digraph import Digraph, GraphKind, turan_number
from .generate import iter_all, iter_h_free, pair_order, split_prefixes
from .structure import min_non_crossing_mask, partition_table

logger = logging.getLogger("tdl")


class CensusRecord:
    """One census row.

    ``defects`` maps the least number of non-crossing arcs over r-partitions
    to the number of H-free graphs attaining it; near-partite counts are
    cumulative sums of it.
    """

    def __init__(self, n, kind, pattern_name, r, f_count, t_count, defects, alphas=()):
        self.n = n
        self.kind = kind
        self.pattern_name = pattern_name
        self.r = r
        self.f_count = f_count
        self.t_count = t_count
        self.defects = defects
        self.alphas = list(alphas)

    @property
    def partite_h_free_count(self):
        return self.defects.get(0, 0)

    def near_partite_count(self, alpha):
        limit = Fraction(str(alpha)) * self.n * self.n
        return sum(c for d, c in self.defects.items() if d <= limit)

    @property
    def ratio(self):
        return self.f_count / self.t_count

    def csv_header(self):
        return ",".join(["n", "kind", "pattern", "f", "t", "ratio"] +
                        ["near_partite@%s" % a for a in self.alphas])

    def csv_row(self):
        cells = [str(self.n), self.kind.value, self.pattern_name, str(self.f_count), str(self.t_count),
                 fmt_float(self.ratio)]
        cells.extend(str(self.near_partite_count(a)) for a in self.alphas)
        return ",".join(cells)

    def to_dict(self):
        return {
            "n": self.n,
            "kind": self.kind.value,
            "pattern": self.pattern_name,
            "r": self.r,
            "f": self.f_count,
            "t": self.t_count,
            "ratio": fmt_float(self.ratio),
            "partite_h_free": self.partite_h_free_count,
            "near_partite": dict((str(a), self.near_partite_count(a)) for a in self.alphas),
        }


def _census_job(job):
    n, r, h_n, h_mask, kind, prefix, budget_secs = job
    h = Digraph(h_n, h_mask)
    budget = Budget(budget_secs, tag="labelled-census")
    defects = {}
    for mask, _, _ in iter_h_free(n, h, kind, prefix, budget):
        d = min_non_crossing_mask(mask, n, r)
        defects[d] = defects.get(d, 0) + 1
    return defects


def _census_cap(kind, max_n):
    if max_n is not None:
        return max_n
    return DEFAULTS["MAX_N_CENSUS_ORIENTED" if kind is GraphKind.ORIENTED else "MAX_N_CENSUS_DIGRAPH"]


def labelled_census(n, h, r, kind, alphas=(), name="H", budget_secs=None, threads=1, max_n=None):
    """Exact f(n, H), T(n, r) and near-partite counts by full enumeration.

    :raise BudgetExceededException: beyond the per-kind cap or the time budget.
    """
    kind = GraphKind.parse(kind)
    ensure_size(n, _census_cap(kind, max_n), "labelled census (%s)" % kind.value)
    for alpha in alphas:
        if Fraction(str(alpha)) < 0:
            raise InvalidInputException("alpha must be non-negative, got %s." % alpha)
    logger.info("[labelled-census] n:%s, pattern:%s, r:%s, kind:%s" % (n, name, r, kind.value))
    depth = split_depth(kind.base, threads, n * (n - 1) // 2)
    jobs = [(n, r, h.n, h.arc_mask, kind, p, budget_secs) for p in split_prefixes(n, kind, depth)]
    defects = {}
    for part in run_jobs(_census_job, jobs, threads):
        for d, c in part.items():
            defects[d] = defects.get(d, 0) + c
    f_count = sum(defects.values())
    t_count = rpartite_count(n, r, kind)
    record = CensusRecord(n, kind, name, r, f_count, t_count, defects, alphas)
    if t_count > f_count:
        logger.warning("[labelled-census] t:%s exceeds f:%s, H does not contain T_%s"
                       % (t_count, f_count, r + 1))
    logger.info("[labelled-census] n:%s, f:%s, t:%s" % (n, f_count, t_count))
    return record


def _edge_mask(n, edges):
    mask = 0
    for i, j in edges:
        mask |= 1 << (i * n + j) | 1 << (j * n + i)
    return mask


def rpartite_count(n, r, kind):
    """T(n, r) (oriented) or T*(n, r) (digraph): labelled graphs with an r-colourable underlying graph.

    Each colourable underlying graph with e edges carries 2^e orientations,
    or 3^e digraphs.
    """
    kind = GraphKind.parse(kind)
    per_edge = kind.base - 1
    pairs = pair_order(n)
    table = [internal for _, internal in partition_table(n, r)]
    total = 0
    for chosen in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if chosen >> k & 1]
        mask = _edge_mask(n, edges)
        if any(mask & internal == 0 for internal in table):
            total += per_edge ** len(edges)
    return total


def rpartite_lower_bound(n, r, kind):
    """ceil(r^n * b^t_r(n) / (2 * r! * n^(r-1))) with b = 3 (oriented) or 4 (digraph).

    Integer arithmetic throughout; the ceiling is taken as negated floor
    division of the negated numerator.
    """
    kind = GraphKind.parse(kind)
    if n < 0 or r < 1:
        raise InvalidInputException("rpartite_lower_bound needs n >= 0 and r >= 1.")
    if n == 0:
        return 1
    num = r ** n * kind.base ** turan_number(n, r)
    den = 2 * math.factorial(r) * n ** (r - 1)
    return -(-num // den)


def binary_entropy(p):
    """H(p) = -p log2 p - (1-p) log2 (1-p), with H(0) = H(1) = 0."""
    p = float(p)
    if not 0 <= p <= 1:
        raise InvalidInputException("binary_entropy needs p in [0, 1], got %s." % p)
    return float(stats.entropy([p, 1 - p], base=2))


def good_subfamily_condition(eta, mu):
    """mu^2 >= 24 * H(eta), the requirement tying the two closeness parameters together."""
    return float(mu) ** 2 >= 24 * binary_entropy(eta)


def ratio_trend(n_range, h, r, kind, name="H", budget_secs=None, threads=1, max_n=None):
    """Rows ``{n, f, t, ratio}`` and whether f/t is nonincreasing over them (reported, not asserted)."""
    rows = []
    for n in n_range:
        record = labelled_census(n, h, r, kind, name=name, budget_secs=budget_secs, threads=threads,
                                 max_n=max_n)
        rows.append({"n": n, "f": record.f_count, "t": record.t_count,
                     "ratio": Fraction(record.f_count, record.t_count)})
    nonincreasing = all(a["ratio"] >= b["ratio"] for a, b in zip(rows, rows[1:]))
    logger.info("[ratio-trend] %s rows, nonincreasing:%s" % (len(rows), nonincreasing))
    return rows, nonincreasing


def naive_census(n, h, r, kind):
    """Reference ``(f, t)``: every labelled graph, all-injection H test, all r^n colourings."""
    kind = GraphKind.parse(kind)
    f_count = t_count = 0
    colourings = list(itertools.product(range(r), repeat=n))
    for mask in iter_all(n, kind):
        g = Digraph(n, mask)
        if not (h.n <= n and naive_count_copies(g, h)):
            f_count += 1
        edges = g.underlying_edges()
        if any(all(c[i] != c[j] for i, j in edges) for c in colourings):
            t_count += 1
    return f_count, t_count
