"""Acceptance criteria and property suites behind ``tdl check``.

Each check returns ``(passed, detail)``; ``run_checks`` times them, logs the
outcome and never stops at the first failure.
"""
import itertools
import logging
import time
from fractions import Fraction

import numpy as np
from scipy import stats

from .canonical import canonical_mask, is_isomorphic
from .census import naive_census, rpartite_lower_bound
from .commons import run_jobs, split_depth
from .containment import (Pattern, contains, count_copies, find_embedding, greedy_make_h_free,
                          naive_count_copies)
from .digraph import (Digraph, GraphKind, blow_up, blow_up_pattern, complete_digraph, from_hex, to_hex,
                      transitive_tournament, turan_graph_digraph, turan_number, weighted_size)
from .extremal import brute_force_extremal
from .generate import iter_all, iter_h_free, split_prefixes
from .sampler import ChainConfig, HFreeChain, mcmc_sample, proposal_probability
from .structure import (RPartition, crossing_count, dt_distance, f2_deficit, non_crossing_count,
                        optimal_partition, pair_densities, stability_sweep)

logger = logging.getLogger("tdl")

T3 = transitive_tournament(3)
CHI2_LEVEL = 1e-3

# (deficit, count, max_distance) for T_3-free digraphs on 5 vertices, a = 2, gamma = 12/25
STABILITY_FRONTIER = [
    (0, 10, 0), (1, 120, 1), (2, 672, 6), (3, 2500, 6), (4, 6410, 8), (5, 11160, 9), (6, 12570, 10),
    (7, 8844, 10), (8, 3885, 10), (9, 1080, 11), (10, 190, 11), (11, 20, 11), (12, 1, 12),
]


class CheckResult:
    def __init__(self, name, passed, detail, seconds):
        self.name = name
        self.passed = passed
        self.detail = detail
        self.seconds = seconds

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def _rng(seed):
    return np.random.Generator(np.random.Philox(seed))


def _random_digraph(rng, n, density=0.5):
    bits = rng.random(n * n) < density
    return Digraph(n, sum(1 << i for i in range(n * n) if bits[i] and i // n != i % n))


def criterion_extremal(lab):
    detail = {}
    for n in (3, 4, 5):
        cert = lab.extremal(n, T3, 2, GraphKind.DIGRAPH, r=2, name="T_3")
        expected = 2 * turan_number(n, 2)
        ok = cert.value == expected and cert.unique_up_to_iso and \
            is_isomorphic(cert.witnesses[0], turan_graph_digraph(n, 2))
        detail[n] = {"value": str(cert.value), "expected": expected, "witnesses": len(cert.witnesses)}
        if not ok:
            return False, detail
    for n in (3, 4):
        naive = brute_force_extremal(n, T3, 2, GraphKind.DIGRAPH)
        if naive.value != 2 * turan_number(n, 2):
            detail["naive_%s" % n] = str(naive.value)
            return False, detail
    return True, detail


def criterion_census(lab):
    record = lab.census(3, T3, 2, GraphKind.ORIENTED, name="T_3")
    detail = {"f": record.f_count, "t": record.t_count}
    if (record.f_count, record.t_count) != (21, 19):
        return False, detail
    for kind in GraphKind:
        for n in range(0, 5):
            fast = lab.census(n, T3, 2, kind, name="T_3")
            naive = naive_census(n, T3, 2, kind)
            if (fast.f_count, fast.t_count) != naive:
                detail["mismatch"] = {"n": n, "kind": kind.value, "fast": [fast.f_count, fast.t_count],
                                      "naive": list(naive)}
                return False, detail
    return True, detail


def _transfer_job(job):
    n, prefix = job
    target = blow_up_pattern(2, 2)
    checked, verdicts = 0, {}
    for mask in iter_all(n, GraphKind.DIGRAPH, prefix):
        r_graph = Digraph(n, mask)
        if not contains(r_graph, T3):
            continue
        checked += 1
        key = canonical_mask(r_graph)
        if key not in verdicts:
            verdicts[key] = contains(blow_up(r_graph, 2), target)
            if not verdicts[key]:
                return checked, len(verdicts), to_hex(r_graph)
    return checked, len(verdicts), None


def criterion_blow_up_transfer(lab, max_n=5):
    """blow_up(R, 2) contains T_3^2 whenever R contains T_3, for every labelled R on 3..max_n vertices.

    Isomorphic graphs share one blow-up test.
    """
    jobs = []
    for n in range(3, max_n + 1):
        depth = split_depth(GraphKind.DIGRAPH.base, lab.threads, n * (n - 1) // 2)
        jobs.extend((n, p) for p in split_prefixes(n, GraphKind.DIGRAPH, depth))
    checked = tested = 0
    for count, distinct, counterexample in run_jobs(_transfer_job, jobs, lab.threads):
        checked += count
        tested += distinct
        if counterexample is not None:
            return False, {"counterexample": counterexample}
    return True, {"checked": checked, "blow_ups_tested": tested, "max_n": max_n}


def criterion_stability(lab):
    n, r = 5, 2
    gamma = Fraction(2 * turan_number(n, r), n * n)
    sweep = lab.stability(n, r, 1, 2, gamma, GraphKind.DIGRAPH)
    got = [(row["deficit"], row["count"], row["max_distance"]) for row in sweep.rows]
    frontier = sweep.frontier()
    ok = got == STABILITY_FRONTIER and all(a[1] <= b[1] for a, b in zip(frontier, frontier[1:]))
    detail = {"levels": len(got), "max_distance": sweep.max_distance}
    if got != STABILITY_FRONTIER:
        detail["rows"] = got
    return ok, detail


def criterion_sampler(lab, samples=100000):
    n = 3
    states = sorted(m for m, _, _ in iter_h_free(n, T3, GraphKind.DIGRAPH))
    cfg = ChainConfig(n, GraphKind.DIGRAPH, T3, "T_3", burn_in=50 * n * n, thin=4 * n * n, samples=samples,
                      seed=20240611, chains=4)
    observed = dict((m, 0) for m in states)
    for index in range(cfg.chains):
        for g in mcmc_sample(cfg, index):
            observed[g.arc_mask] = observed.get(g.arc_mask, 0) + 1
    if len(observed) != len(states):
        return False, {"unexpected_states": len(observed) - len(states)}
    _, p_value = stats.chisquare([observed[m] for m in states])
    return p_value > CHI2_LEVEL, {"states": len(states), "samples": samples, "p_value": float(p_value)}


def criterion_pattern(lab):
    t3 = Pattern(T3, "T_3")
    dk3 = Pattern(complete_digraph(3), "DK_3")
    ok = t3.m_value == 2 and t3.condition_a(2) and not dk3.condition_a(2) and dk3.condition_a(4)
    return ok, {"m(T_3)": str(t3.m_value), "DK_3@2": dk3.condition_a(2), "DK_3@4": dk3.condition_a(4)}


def properties_containment(lab):
    rng = _rng(7)
    patterns = [T3, transitive_tournament(4), blow_up_pattern(2, 2)]
    for _ in range(60):
        n = int(rng.integers(3, 7))
        g = _random_digraph(rng, n, float(rng.uniform(0.2, 0.8)))
        for h in patterns:
            if (find_embedding(g, h) is not None) != (count_copies(g, h) > 0):
                return False, {"graph": to_hex(g), "pattern": to_hex(h)}
            if h.n <= 4 and count_copies(g, h) != naive_count_copies(g, h):
                return False, {"count": to_hex(g), "pattern": to_hex(h)}
            bigger = Digraph(n, g.arc_mask | _random_digraph(rng, n).arc_mask)
            if contains(g, h) and not contains(bigger, h):
                return False, {"monotonicity": to_hex(g)}
        cleaned, _ = greedy_make_h_free(g, T3)
        if contains(cleaned, T3):
            return False, {"greedy": to_hex(g)}
        if from_hex(to_hex(g)) != g:
            return False, {"hex": to_hex(g)}
    for r, t in ((1, 2), (2, 2), (3, 1)):
        target = blow_up_pattern(r, t)
        tr = transitive_tournament(r + 1)
        for _ in range(10):
            n = int(rng.integers(r + 1, 5))
            g = _random_digraph(rng, n, 0.7)
            if contains(g, tr) and not contains(blow_up(g, t), target):
                return False, {"transfer": to_hex(g), "r": r, "t": t}
    return True, {}


def properties_digraph(lab):
    rng = _rng(5)
    for _ in range(30):
        h = _random_digraph(rng, int(rng.integers(1, 5)), float(rng.uniform(0.2, 0.8)))
        if blow_up(h, 1) != h:
            return False, {"identity": to_hex(h)}
        s, t = int(rng.integers(1, 4)), int(rng.integers(1, 3))
        if blow_up(blow_up(h, s), t) != blow_up(h, s * t):
            return False, {"compose": to_hex(h), "s": s, "t": t}
        if weighted_size(h, 1) != len(h.underlying_edges()):
            return False, {"unit_weight": to_hex(h)}
    for r in range(1, 5):
        tr = transitive_tournament(r + 1)
        for n in range(1, 11):
            g = turan_graph_digraph(n, r)
            if contains(g, tr):
                return False, {"turan_contains": [n, r]}
            for a in (Fraction(3, 2), 2):
                if weighted_size(g, a) != a * turan_number(n, r):
                    return False, {"turan_weight": [n, r, str(a)]}
    return True, {}


def properties_extremal(lab):
    previous = None
    for n in range(2, 6):
        cert = lab.extremal(n, T3, 2, GraphKind.DIGRAPH, r=2)
        if previous is not None and cert.value < previous:
            return False, {"monotone_at": n}
        previous = cert.value
        if cert.value < 2 * turan_number(n, 2):
            return False, {"below_construction": n}
        for w in cert.witnesses:
            if weighted_size(w, 2) != cert.value or contains(w, T3):
                return False, {"unsound_witness": to_hex(w)}
    for n in range(2, 5):
        oriented = lab.extremal(n, T3, 2, GraphKind.ORIENTED)
        if oriented.value > lab.extremal(n, T3, 2, GraphKind.DIGRAPH).value:
            return False, {"dominance_at": n}
        if any(contains(w, T3) for w in oriented.witnesses):
            return False, {"witness_not_free": n}
    return True, {}


def properties_structure(lab):
    rng = _rng(11)
    for _ in range(40):
        n = int(rng.integers(2, 9))
        r = int(rng.integers(2, 4))
        g = _random_digraph(rng, n, float(rng.uniform(0.1, 0.9)))
        q = RPartition.from_assignment([int(c) for c in rng.integers(0, r, size=n)], r)
        if non_crossing_count(g, q) + crossing_count(g, q) != g.arc_count:
            return False, {"split": to_hex(g)}
        exact = optimal_partition(g, r)
        if exact.non_crossing_arcs > non_crossing_count(g, q):
            return False, {"minimality": to_hex(g)}
        local = lab.partition(g, r, mode="local_search", seed=n)
        if local.non_crossing_arcs < exact.non_crossing_arcs:
            return False, {"local_below_exact": to_hex(g)}
        # apply the edits implied by q and re-check
        owner = q.assignment
        edited = Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if owner[u] != owner[v]])
        if non_crossing_count(edited, q) or f2_deficit(edited, q):
            return False, {"edits": to_hex(g)}
        nonempty = [c for c in q.classes if c]
        for a_set, b_set in itertools.combinations(nonempty, 2):
            d = pair_densities(g, a_set, b_set, 2)
            if d.w_ab + d.w_ba != 4 * d.d2 + d.d1_ab + d.d1_ba:
                return False, {"weights": to_hex(g)}
            if pair_densities(edited, a_set, b_set, 2).d2 != 1:
                return False, {"edited_density": to_hex(g)}
    if dt_distance(Digraph.empty(4), 2)[0] != 8:
        return False, {"dt_distance_empty4": dt_distance(Digraph.empty(4), 2)[0]}
    previous = None
    for gamma in (Fraction(2, 25), Fraction(1, 25), Fraction(0)):
        dist = stability_sweep(5, 2, 1, 2, gamma, GraphKind.DIGRAPH, threads=lab.threads).max_distance
        if previous is not None and dist > previous:
            return False, {"gamma": str(gamma)}
        previous = dist
    return True, {}


def properties_census(lab):
    for n in range(0, 5):
        for_kind = {}
        for kind in GraphKind:
            record = lab.census(n, T3, 2, kind, alphas=[0, Fraction(1, 20), Fraction(1, 10), 1], name="T_3")
            near = [record.near_partite_count(a) for a in record.alphas]
            if near != sorted(near) or near[-1] != record.f_count or record.t_count > record.f_count:
                return False, {"n": n, "kind": kind.value}
            if rpartite_lower_bound(n, 2, kind) > record.t_count:
                return False, {"lower_bound": n, "kind": kind.value}
            for_kind[kind] = record.f_count
        if for_kind[GraphKind.ORIENTED] > for_kind[GraphKind.DIGRAPH]:
            return False, {"mode_order": n}
    return True, {}


def properties_sampler(lab):
    n = 3
    for kind in GraphKind:
        states = [Digraph(n, mask) for mask, _, _ in iter_h_free(n, T3, kind)]
        for x, y in itertools.product(states, repeat=2):
            if proposal_probability(x, y, kind) != proposal_probability(y, x, kind):
                return False, {"symmetry": [to_hex(x), to_hex(y)]}
        cfg = ChainConfig(5, kind, T3, burn_in=100, thin=10, samples=200, seed=5)
        first = [g.arc_mask for g in mcmc_sample(cfg)]
        if first != [g.arc_mask for g in mcmc_sample(cfg)]:
            return False, {"reproducible": kind.value}
        if any(contains(Digraph(5, m), T3) for m in first):
            return False, {"sample_not_free": kind.value}
        chain = HFreeChain(cfg)
        for _ in range(50):
            chain.step()
        if kind is GraphKind.ORIENTED and chain.graph().f2:
            return False, {"oriented_2_cycle": to_hex(chain.graph())}
    return True, {}


CHECKS = [
    ("extremal-exactness", criterion_extremal),
    ("census-goldens", criterion_census),
    ("blow-up-transfer", criterion_blow_up_transfer),
    ("stability-frontier", criterion_stability),
    ("sampler-uniformity", criterion_sampler),
    ("pattern-quantities", criterion_pattern),
    ("properties-digraph", properties_digraph),
    ("properties-containment", properties_containment),
    ("properties-extremal", properties_extremal),
    ("properties-structure", properties_structure),
    ("properties-census", properties_census),
    ("properties-sampler", properties_sampler),
]


def run_checks(lab, only=None):
    results = []
    for name, func in CHECKS:
        if only and name not in only:
            continue
        started = time.time()
        try:
            passed, detail = func(lab)
        except Exception as e:
            logger.exception("[check] %s raised" % name)
            passed, detail = False, {"error": "%s: %s" % (type(e).__name__, e)}
        result = CheckResult(name, passed, detail, time.time() - started)
        logger.info("[check] %s passed:%s in %.1fs" % (name, passed, result.seconds))
        results.append(result)
    return results
