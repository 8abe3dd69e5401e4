"""r-partitions, crossing arcs, optimal partitions and distances to DT_r(n).

Partitions are class-assignment vectors. The canonical representative of a
partition is its restricted growth form: vertex 0 in class 0 and every vertex
in a class at most one above the largest class used before it, which removes
the r! relabellings of the classes.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .commons import (DEFAULTS, Budget, InvalidInputException, ensure_size, fmt_float, run_jobs,
                      split_depth)
from .containment import find_embedding
from .digraph import (Digraph, GraphKind, WeightParam, blow_up_pattern, full_mask, to_hex,
                      turan_number, turan_part_sizes)
from .generate import iter_h_free, split_prefixes

logger = logging.getLogger("tdl")

TABLE_MAX_N = 10
F2_DENSITY = Fraction(1, 6)


class RPartition:
    """An ordered partition of ``0..n-1`` into ``r`` classes; classes may be empty."""

    def __init__(self, r, classes):
        if r < 1:
            raise InvalidInputException("A partition needs r >= 1 classes.")
        classes = [sorted(c) for c in classes]
        if len(classes) != r:
            raise InvalidInputException("Expected %s classes, got %s." % (r, len(classes)))
        self.r = r
        self.classes = classes
        seen = set()
        for c in classes:
            for v in c:
                if v in seen:
                    raise InvalidInputException("Vertex %s appears in two classes." % v)
                seen.add(v)
        self.n = len(seen)
        if seen != set(range(self.n)):
            raise InvalidInputException("Classes must cover 0..n-1 exactly.")

    @classmethod
    def from_assignment(cls, assignment, r):
        classes = [[] for _ in range(r)]
        for v, c in enumerate(assignment):
            if not 0 <= c < r:
                raise InvalidInputException("Class %s of vertex %s is outside 0..%s." % (c, v, r - 1))
            classes[c].append(v)
        return cls(r, classes)

    @property
    def assignment(self):
        owner = [0] * self.n
        for i, c in enumerate(self.classes):
            for v in c:
                owner[v] = i
        return owner

    def masks(self):
        return [sum(1 << v for v in c) for c in self.classes]

    def check_covers(self, g):
        if self.n != g.n:
            raise InvalidInputException("Partition covers %s vertices but the graph has %s." % (self.n, g.n))

    def to_dict(self):
        return {"r": self.r, "classes": self.classes}

    def __eq__(self, other):
        return isinstance(other, RPartition) and self.r == other.r and self.classes == other.classes

    def __repr__(self):
        return "RPartition(%s, %s)" % (self.r, self.classes)


def _internal_mask(assignment):
    n = len(assignment)
    mask = 0
    for u in range(n):
        for v in range(n):
            if u != v and assignment[u] == assignment[v]:
                mask |= 1 << (u * n + v)
    return mask


def iter_canonical_assignments(n, r):
    """Restricted growth vectors with fewer than ``r`` classes, in lexicographic order."""
    if n == 0:
        yield ()
        return
    assignment = [0] * n

    def walk(v, used):
        if v == n:
            yield tuple(assignment)
            return
        for c in range(min(used + 1, r)):
            assignment[v] = c
            for a in walk(v + 1, max(used, c + 1)):
                yield a

    assignment[0] = 0
    for a in walk(1, 1):
        yield a


@lru_cache(maxsize=64)
def partition_table(n, r):
    """``[(assignment, internal_arc_mask)]`` over canonical assignments."""
    return tuple((a, _internal_mask(a)) for a in iter_canonical_assignments(n, r))


@lru_cache(maxsize=64)
def balanced_table(n, r):
    """Canonical assignments whose class sizes are those of DT_r(n)."""
    sizes = sorted(turan_part_sizes(n, r))
    result = []
    for a, internal in partition_table(n, r):
        counts = [0] * r
        for c in a:
            counts[c] += 1
        if sorted(counts) == sizes:
            result.append((a, internal))
    return tuple(result)


def min_non_crossing_mask(arc_mask, n, r):
    """Least number of non-crossing arcs over all r-partitions (table path, small n)."""
    return min((arc_mask & internal).bit_count() for _, internal in partition_table(n, r))


def dt_distance_mask(arc_mask, n, r):
    """Edit distance of an arc mask to DT_r(n): min over balanced partitions."""
    off = full_mask(n)
    best = None
    for _, internal in balanced_table(n, r):
        d = (arc_mask & internal).bit_count() + (off & ~internal & ~arc_mask).bit_count()
        if best is None or d < best:
            best = d
    return best


def non_crossing_count(g, q):
    q.check_covers(g)
    return (g.arc_mask & _internal_mask(q.assignment)).bit_count()


def crossing_count(g, q):
    return g.arc_count - non_crossing_count(g, q)


def f2_deficit(g, q):
    """Crossing ordered pairs (u, v) without the arc u->v."""
    q.check_covers(g)
    cross = full_mask(g.n) & ~_internal_mask(q.assignment)
    return (cross & ~g.arc_mask).bit_count()


class PartitionReport:
    def __init__(self, partition, non_crossing_arcs, f2_deficit, is_optimal=False, method="given"):
        self.partition = partition
        self.non_crossing_arcs = non_crossing_arcs
        self.f2_deficit = f2_deficit
        self.is_optimal = is_optimal
        self.method = method

    @property
    def edit_distance_to_DTr(self):
        # delete every non-crossing arc, add every missing crossing arc
        return self.non_crossing_arcs + self.f2_deficit

    def to_dict(self):
        return {
            "partition": self.partition.to_dict(),
            "non_crossing_arcs": self.non_crossing_arcs,
            "f2_deficit": self.f2_deficit,
            "edit_distance_to_DTr": self.edit_distance_to_DTr,
            "is_optimal": self.is_optimal,
            "method": self.method,
        }


def partition_report(g, q, is_optimal=False, method="given"):
    return PartitionReport(q, non_crossing_count(g, q), f2_deficit(g, q), is_optimal, method)


def _exact_dfs(g, r, budget, collect_all=False):
    n = g.n
    out_rows, in_rows = g.out_rows, g.in_rows
    members = [0] * r
    assignment = [0] * n
    state = {"best": None, "found": []}

    def walk(v, used, cost):
        budget.tick()
        best = state["best"]
        if best is not None and (cost > best or (cost == best and not collect_all)):
            return
        if v == n:
            if best is None or cost < best:
                state["best"] = cost
                state["found"] = [tuple(assignment)]
            else:
                state["found"].append(tuple(assignment))
            return
        for c in range(min(used + 1, r)):
            added = (out_rows[v] & members[c]).bit_count() + (in_rows[v] & members[c]).bit_count()
            assignment[v] = c
            members[c] |= 1 << v
            walk(v + 1, max(used, c + 1), cost + added)
            members[c] &= ~(1 << v)

    if n == 0:
        return 0, [()]
    members[0] = 1
    walk(1, 1, 0)
    return state["best"], state["found"]


def optimal_partitions(g, r, budget=None):
    """All optimal r-partitions of G (canonical forms) and the optimum."""
    budget = budget or Budget(tag="optimal-partitions")
    if g.n <= TABLE_MAX_N:
        scored = [((g.arc_mask & internal).bit_count(), a) for a, internal in partition_table(g.n, r)]
        best = min(s for s, _ in scored)
        found = [a for s, a in scored if s == best]
    else:
        best, found = _exact_dfs(g, r, budget, collect_all=True)
    return best, [RPartition.from_assignment(a, r) for a in found]


def _normalise(assignment):
    relabel = {}
    out = []
    for c in assignment:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


def _local_search(g, r, restarts, seed):
    n = g.n
    rng = np.random.Generator(np.random.Philox(seed))
    out_rows, in_rows = g.out_rows, g.in_rows
    best_cost, best_assignment = None, None
    for _ in range(restarts):
        assignment = [int(c) for c in rng.integers(0, r, size=n)]
        members = [0] * r
        for v, c in enumerate(assignment):
            members[c] |= 1 << v
        while True:
            move = None
            gain_best = 0
            for v in range(n):
                cur = assignment[v]
                inside = (out_rows[v] & members[cur]).bit_count() + (in_rows[v] & members[cur]).bit_count()
                for c in range(r):
                    if c == cur:
                        continue
                    there = (out_rows[v] & members[c]).bit_count() + (in_rows[v] & members[c]).bit_count()
                    gain = inside - there
                    if gain > gain_best:
                        gain_best, move = gain, (v, c)
            if move is None:
                break
            v, c = move
            members[assignment[v]] &= ~(1 << v)
            members[c] |= 1 << v
            assignment[v] = c
        cost = (g.arc_mask & _internal_mask(assignment)).bit_count()
        canon = _normalise(assignment)
        if best_cost is None or cost < best_cost or (cost == best_cost and canon < best_assignment):
            best_cost, best_assignment = cost, canon
    return best_cost, best_assignment


def optimal_partition(g, r, mode="exact", budget=None, restarts=None, seed=0, max_n=None):
    """Partition minimising the number of non-crossing arcs.

    ``exact`` returns a true minimiser, ties to the lexicographically smallest
    class-assignment vector. ``local_search`` runs steepest single-vertex
    moves from seeded random starts and is only marked optimal at 0.
    """
    if r < 1:
        raise InvalidInputException("optimal_partition needs r >= 1.")
    logger.debug("[optimal-partition] n:%s, r:%s, mode:%s" % (g.n, r, mode))
    if mode == "exact":
        ensure_size(g.n, max_n if max_n is not None else DEFAULTS["MAX_N_EXACT_PARTITION"],
                    "exact optimal partition")
        budget = budget or Budget(tag="optimal-partition")
        if g.n <= TABLE_MAX_N:
            best = None
            for a, internal in partition_table(g.n, r):
                cost = (g.arc_mask & internal).bit_count()
                if best is None or cost < best[0]:
                    best = (cost, a)
            cost, assignment = best
        else:
            cost, found = _exact_dfs(g, r, budget)
            assignment = found[0]
        q = RPartition.from_assignment(assignment, r)
        return PartitionReport(q, cost, f2_deficit(g, q), True, "exact")
    if mode == "local_search":
        restarts = restarts or DEFAULTS["LOCAL_SEARCH_RESTARTS"]
        if g.n == 0:
            q = RPartition(r, [[] for _ in range(r)])
            return PartitionReport(q, 0, 0, True, "local_search")
        cost, assignment = _local_search(g, r, restarts, seed)
        q = RPartition.from_assignment(assignment, r)
        return PartitionReport(q, cost, f2_deficit(g, q), cost == 0, "local_search")
    raise InvalidInputException("Unknown partition mode %r, use exact or local_search." % mode)


def dt_distance(g, r):
    """Fewest arc changes turning G into a labelled copy of DT_r(n).

    :return: ``(distance, RPartition)`` for the best balanced partition.
    """
    off = full_mask(g.n)
    best = None
    for a, internal in balanced_table(g.n, r):
        d = (g.arc_mask & internal).bit_count() + (off & ~internal & ~g.arc_mask).bit_count()
        if best is None or d < best[0]:
            best = (d, a)
    return best[0], RPartition.from_assignment(best[1], r)


class PairDensities:
    def __init__(self, d2, d1_ab, d1_ba, a):
        self.d2 = d2
        self.d1_ab = d1_ab
        self.d1_ba = d1_ba
        self.w_ab = a * d2 + d1_ab
        self.w_ba = a * d2 + d1_ba

    def to_dict(self):
        return dict((k, str(getattr(self, k))) for k in ("d2", "d1_ab", "d1_ba", "w_ab", "w_ba"))


def pair_densities(g, a_set, b_set, a):
    """2-cycle and single-arc densities between disjoint vertex sets, and the weights a*d2 + d1."""
    a_set, b_set = set(a_set), set(b_set)
    if not a_set or not b_set:
        raise InvalidInputException("pair_densities needs two nonempty vertex sets.")
    if a_set & b_set:
        raise InvalidInputException("pair_densities needs disjoint vertex sets.")
    w = a if isinstance(a, WeightParam) else WeightParam(a)
    both = forward = backward = 0
    for u in a_set:
        for v in b_set:
            uv, vu = g.has_arc(u, v), g.has_arc(v, u)
            if uv and vu:
                both += 1
            elif uv:
                forward += 1
            elif vu:
                backward += 1
    size = len(a_set) * len(b_set)
    return PairDensities(Fraction(both, size), Fraction(forward, size), Fraction(backward, size), w.value)


class FConditionsReport:
    def __init__(self):
        self.F1 = True
        self.F2 = True
        self.F3 = True
        self.f2_exhaustive = True
        self.f2_samples = 0
        self.witnesses = {}
        self.flags = ["density constant 1/6 used for oriented graphs and digraphs alike"]

    def to_dict(self):
        return {
            "F1": self.F1,
            "F2": self.F2,
            "F3": self.F3,
            "F2_exhaustive": self.f2_exhaustive,
            "F2_samples": self.f2_samples,
            "F2_pass_is_probabilistic": self.F2 and not self.f2_exhaustive,
            "witnesses": self.witnesses,
            "flags": self.flags,
        }


def _f2_scan(g, ui_members, vj, min_size, size_ui):
    """For a fixed U_i, find U_j in V_j breaking the 1/6 density either way.

    The sparsest k-subset of V_j towards U_i is the k vertices with the fewest
    arcs from (or to) U_i, so every size is decided exactly.
    """
    fwd = sorted((sum(1 for x in ui_members if g.has_arc(x, v)), v) for v in vj)
    bwd = sorted((sum(1 for x in ui_members if g.has_arc(v, x)), v) for v in vj)
    for label, ranked in (("forward", fwd), ("backward", bwd)):
        total = 0
        for k, (count, _) in enumerate(ranked, 1):
            total += count
            if k >= min_size and total < F2_DENSITY * k * size_ui:
                return label, [v for _, v in ranked[:k]]
    return None


def f_conditions_check(g, q, eta, mu, max_exhaustive_n=None, samples=None, seed=0):
    """Check (F1) few non-crossing arcs, (F2) 1/6 cross density on large subsets, (F3) balance."""
    q.check_covers(g)
    eta, mu = Fraction(str(eta)), Fraction(str(mu))
    if not (0 <= eta < 1 and 0 <= mu < 1):
        raise InvalidInputException("eta and mu must lie in [0, 1).")
    n, r = g.n, q.r
    report = FConditionsReport()

    nc = non_crossing_count(g, q)
    if nc > eta * n * n:
        report.F1 = False
        report.witnesses["F1"] = {"non_crossing_arcs": nc, "limit": str(eta * n * n)}

    bad = [i for i, c in enumerate(q.classes) if abs(len(c) - Fraction(n, r)) > mu * n]
    if bad:
        report.F3 = False
        report.witnesses["F3"] = {"classes": bad, "sizes": [len(q.classes[i]) for i in bad]}

    min_size = max(1, math.ceil(mu * n))
    max_exhaustive_n = DEFAULTS["MAX_N_F2_EXHAUSTIVE"] if max_exhaustive_n is None else max_exhaustive_n
    samples = DEFAULTS["F2_SAMPLES"] if samples is None else samples
    report.f2_exhaustive = n <= max_exhaustive_n
    rng = np.random.Generator(np.random.Philox(seed))
    for i in range(r):
        vi = q.classes[i]
        if len(vi) < min_size:
            continue
        for j in range(i + 1, r):
            vj = q.classes[j]
            if len(vj) < min_size:
                continue
            hit = None
            if report.f2_exhaustive:
                # Gray-code walk over subsets of V_i
                current = set()
                for step in range(1, 1 << len(vi)):
                    flip = (step & -step).bit_length() - 1
                    x = vi[flip]
                    if x in current:
                        current.remove(x)
                    else:
                        current.add(x)
                    if len(current) < min_size:
                        continue
                    found = _f2_scan(g, current, vj, min_size, len(current))
                    if found:
                        hit = (sorted(current), found)
                        break
            else:
                for _ in range(samples):
                    size = int(rng.integers(min_size, len(vi) + 1))
                    current = set(int(x) for x in rng.choice(vi, size=size, replace=False))
                    found = _f2_scan(g, current, vj, min_size, size)
                    if found:
                        hit = (sorted(current), found)
                        break
                report.f2_samples += samples
            if hit:
                ui, (direction, uj) = hit
                report.F2 = False
                report.witnesses["F2"] = {"parts": [i, j], "direction": direction,
                                          "U_i": ui, "U_j": sorted(uj)}
                break
        if not report.F2:
            break
    if not report.f2_exhaustive:
        report.flags.append("F2 checked on %s random subsets; a pass is probabilistic" % report.f2_samples)
    logger.info("[f-conditions] F1:%s, F2:%s, F3:%s" % (report.F1, report.F2, report.F3))
    return report


def internal_degree_profile(g, q):
    """Out- plus in-degree of every vertex inside its own class."""
    q.check_covers(g)
    masks = q.masks()
    owner = q.assignment
    return [(g.out_rows[v] & masks[owner[v]]).bit_count() + (g.in_rows[v] & masks[owner[v]]).bit_count()
            for v in range(g.n)]


def internal_degree_bound(n, r, mu):
    """12^(r-2) * 2 * mu * n, the cap on internal degree in a well-behaved optimal partition."""
    if r < 2:
        raise InvalidInputException("internal_degree_bound needs r >= 2.")
    return Fraction(12) ** (r - 2) * 2 * Fraction(str(mu)) * n


def internal_degree_violations(g, q, mu):
    bound = internal_degree_bound(g.n, q.r, mu)
    return [v for v, d in enumerate(internal_degree_profile(g, q)) if d > bound]


def few_partitions_condition(r, mu, eta):
    """0 < mu < 1/(3r^2)^12 and 0 < eta < mu^2/3."""
    mu, eta = Fraction(str(mu)), Fraction(str(eta))
    return 0 < mu < Fraction(1, (3 * r * r) ** 12) and 0 < eta < mu * mu / 3


def find_ordered_transversal(g, sets, sigma):
    """A T_r with v_i in ``sets[i]`` and arc v_i->v_j iff ``sigma[i] < sigma[j]``.

    :return: list ``[v_0, .., v_{r-1}]`` or None.
    """
    r = len(sets)
    if len(sigma) != r or len(set(sigma)) != r:
        raise InvalidInputException("sigma must rank the %s sets with distinct values." % r)
    h = Digraph.from_arcs(r, [(i, j) for i in range(r) for j in range(r) if sigma[i] < sigma[j]])
    emb = find_embedding(g, h, candidates=dict((i, set(s)) for i, s in enumerate(sets)))
    if emb is None:
        return None
    return [emb[i] for i in range(r)]


class StabilitySweep:
    """Deficit-vs-distance frontier over near-extremal H-free graphs.

    Each row holds one deficit value ``a*t_r(n) - e_a(G)`` with the number of
    graphs at exactly that deficit, the largest DT_r(n)-distance among them,
    and the largest distance over all graphs with deficit at most this value
    together with a graph attaining it.
    """

    def __init__(self, n, r, t, a, gamma, kind, rows):
        self.n = n
        self.r = r
        self.t = t
        self.a = a
        self.gamma = gamma
        self.kind = kind
        self.rows = rows

    @property
    def max_distance(self):
        return self.rows[-1]["max_distance"] if self.rows else None

    def frontier(self):
        return [(row["deficit"], row["max_distance"]) for row in self.rows]

    def to_csv(self):
        lines = ["deficit,count,max_distance,argmax_graph_hex,level_max_distance"]
        for row in self.rows:
            d = row["deficit"]
            deficit = fmt_float(d) if isinstance(d, float) else str(d)
            lines.append("%s,%s,%s,%s,%s" % (deficit, row["count"], row["max_distance"],
                                             row["argmax_graph_hex"], row["level_max_distance"]))
        return "\n".join(lines) + "\n"


def _sweep_job(job):
    n, r, h_n, h_mask, kind, a_value, floor, prefix, budget_secs = job
    h = Digraph(h_n, h_mask)
    budget = Budget(budget_secs, tag="stability-sweep")
    target = a_value * turan_number(n, r)
    levels = {}
    cap = a_value if kind is GraphKind.DIGRAPH else 1

    def prune(pairs_left, f1, f2):
        return a_value * f2 + f1 + cap * pairs_left < floor

    for mask, f1, f2 in iter_h_free(n, h, kind, prefix, budget, prune):
        value = a_value * f2 + f1
        if value < floor:
            continue
        deficit = target - value
        dist = dt_distance_mask(mask, n, r)
        level = levels.get(deficit)
        if level is None:
            levels[deficit] = [1, dist, mask]
        else:
            level[0] += 1
            if dist > level[1] or (dist == level[1] and mask < level[2]):
                level[1], level[2] = dist, mask
    return levels


def stability_sweep(n, r, t, a, gamma, kind, budget_secs=None, threads=1, max_n=None):
    """Max over T_{r+1}^t-free graphs with e_a >= a*t_r(n) - gamma*n^2 of the distance to DT_r(n)."""
    kind = GraphKind.parse(kind)
    w = a if isinstance(a, WeightParam) else WeightParam(a)
    if max_n is None:
        max_n = DEFAULTS["MAX_N_CENSUS_ORIENTED" if kind is GraphKind.ORIENTED else "MAX_N_CENSUS_DIGRAPH"]
    ensure_size(n, max_n, "stability sweep (%s)" % kind.value)
    h = blow_up_pattern(r, t)
    gamma_value = Fraction(str(gamma)) if w.exact else float(gamma)
    target = w.value * turan_number(n, r)
    floor = target - gamma_value * n * n
    if not w.exact:
        floor -= DEFAULTS["FLOAT_TOL"]
    logger.info("[stability-sweep] n:%s, r:%s, t:%s, a:%s, gamma:%s, kind:%s" % (n, r, t, w, gamma, kind.value))
    depth = split_depth(kind.base, threads, n * (n - 1) // 2)
    jobs = [(n, r, h.n, h.arc_mask, kind, w.value, floor, p, budget_secs) for p in split_prefixes(n, kind, depth)]
    merged = {}
    for levels in run_jobs(_sweep_job, jobs, threads):
        for deficit, (count, dist, mask) in levels.items():
            cur = merged.get(deficit)
            if cur is None:
                merged[deficit] = [count, dist, mask]
            else:
                cur[0] += count
                if dist > cur[1] or (dist == cur[1] and mask < cur[2]):
                    cur[1], cur[2] = dist, mask
    rows = []
    best = None
    for deficit in sorted(merged):
        count, dist, mask = merged[deficit]
        if best is None or dist > best[0]:
            best = (dist, mask)
        rows.append({"deficit": deficit, "count": count, "level_max_distance": dist,
                     "max_distance": best[0], "argmax_graph_hex": to_hex(Digraph(n, best[1]))})
    logger.info("[stability-sweep] %s deficit levels, max distance:%s" % (len(rows), best and best[0]))
    return StabilitySweep(n, r, t, w, gamma, kind, rows)
