"""Metropolis chain over H-free graphs with a flat target.

Digraph mode toggles the arc of a uniform ordered pair. Oriented mode picks
a uniform unordered pair and moves it to one of its two other states
(none, forward, backward). Both proposals are symmetric, moves that create a
copy of H are rejected and deletions never are, so the chain is reversible
with respect to the uniform distribution on H-free graphs.

Randomness comes from numpy's Philox counter-based generator; chain ``i`` of
a run uses child ``i`` of ``SeedSequence(seed)``, so a run is fully
determined by its seed whatever the worker count.
"""
import logging
import math

import numpy as np
from scipy import stats

from .commons import DEFAULTS, InvalidInputException, fmt_float, run_jobs
from .containment import contains_with_arc
from .digraph import Digraph, GraphKind
from .generate import pair_order
from .structure import TABLE_MAX_N, min_non_crossing_mask, optimal_partition

logger = logging.getLogger("tdl")

BLOCK = 4096
UNIFORMITY_FLAG = "chain uniformity is only validated against exact counts at small n"


class ChainConfig:
    def __init__(self, n, kind, h, name="H", burn_in=None, thin=None, samples=1000, seed=0, chains=1):
        self.n = n
        self.kind = GraphKind.parse(kind)
        self.h = h
        self.name = name
        square = max(1, n * n)
        self.burn_in = DEFAULTS["BURN_IN_FACTOR"] * square if burn_in is None else burn_in
        self.thin = DEFAULTS["THIN_FACTOR"] * square if thin is None else thin
        self.samples = samples
        self.seed = seed
        self.chains = chains
        for field in ("burn_in", "thin", "samples", "chains"):
            if getattr(self, field) < 1:
                raise InvalidInputException("Chain %s must be at least 1, got %s." % (field, getattr(self, field)))
        if n < 0:
            raise InvalidInputException("Chain needs n >= 0.")
        if not 0 <= seed < 1 << 64:
            raise InvalidInputException("Seed must be a 64-bit unsigned integer.")
        if h.arc_count == 0 and h.n <= n:
            raise InvalidInputException("H has no arcs, so the empty start state is not H-free.")

    def per_chain(self, index):
        """Samples drawn by chain ``index``; the total is split as evenly as possible."""
        q, rem = divmod(self.samples, self.chains)
        return q + (1 if index < rem else 0)

    def to_dict(self):
        return {"n": self.n, "kind": self.kind.value, "pattern": self.name, "burn_in": self.burn_in,
                "thin": self.thin, "samples": self.samples, "seed": self.seed, "chains": self.chains,
                "rng": "numpy Philox4x64 via SeedSequence.spawn"}


class HFreeChain:
    """One chain; ``step`` makes one proposal and reports whether it was accepted."""

    def __init__(self, cfg, index=0):
        self.cfg = cfg
        self.n = cfg.n
        self.h = cfg.h
        self.oriented = cfg.kind is GraphKind.ORIENTED
        seq = np.random.SeedSequence(cfg.seed).spawn(index + 1)[index]
        self.rng = np.random.Generator(np.random.Philox(seq))
        self.pairs = pair_order(self.n)
        self.out_rows = [0] * self.n
        self.in_rows = [0] * self.n
        self.steps = 0
        self.accepted = 0
        self._draws = []
        self._flips = []

    @property
    def proposals(self):
        return len(self.pairs) if self.oriented else self.n * (self.n - 1)

    def _draw(self):
        if not self._draws:
            self._draws = self.rng.integers(0, self.proposals, size=BLOCK).tolist()[::-1]
            self._flips = self.rng.integers(0, 2, size=BLOCK).tolist()[::-1]
        return self._draws.pop(), self._flips.pop()

    def _set(self, u, v, on):
        if on:
            self.out_rows[u] |= 1 << v
            self.in_rows[v] |= 1 << u
        else:
            self.out_rows[u] &= ~(1 << v)
            self.in_rows[v] &= ~(1 << u)

    def _has(self, u, v):
        return bool(self.out_rows[u] >> v & 1)

    def _creates_copy(self, u, v):
        return contains_with_arc(self.out_rows, self.in_rows, self.n, self.h, u, v)

    def step(self):
        self.steps += 1
        if self.proposals == 0:
            self.accepted += 1
            return True
        k, flip = self._draw()
        if self.oriented:
            i, j = self.pairs[k]
            state = 1 if self._has(i, j) else 2 if self._has(j, i) else 0
            target = [s for s in (0, 1, 2) if s != state][flip]
            if state:
                self._set(*((i, j) if state == 1 else (j, i)), on=False)
            if target:
                u, v = (i, j) if target == 1 else (j, i)
                self._set(u, v, True)
                if self._creates_copy(u, v):
                    self._set(u, v, False)
                    if state:
                        self._set(*((i, j) if state == 1 else (j, i)), on=True)
                    return False
        else:
            u, w = divmod(k, self.n - 1)
            v = w if w < u else w + 1
            if self._has(u, v):
                self._set(u, v, False)
            else:
                self._set(u, v, True)
                if self._creates_copy(u, v):
                    self._set(u, v, False)
                    return False
        self.accepted += 1
        return True

    def graph(self):
        return Digraph.from_rows(self.out_rows)


def mcmc_sample(cfg, index=0, chain=None):
    """Yield ``cfg.per_chain(index)`` samples of chain ``index`` after burn-in, ``thin`` steps apart."""
    chain = chain or HFreeChain(cfg, index)
    for _ in range(cfg.burn_in):
        chain.step()
    for _ in range(cfg.per_chain(index)):
        for _ in range(cfg.thin):
            chain.step()
        yield chain.graph()


def proposal_probability(x, y, kind):
    """Probability that one proposal of the chain moves ``x`` to ``y``."""
    kind = GraphKind.parse(kind)
    if x.n != y.n:
        return 0
    n = x.n
    diff = x.arc_mask ^ y.arc_mask
    if diff == 0:
        return 0
    if kind is GraphKind.DIGRAPH:
        return 1 / (n * (n - 1)) if diff.bit_count() == 1 else 0
    touched = set()
    for u, v in Digraph(n, diff).arcs():
        touched.add((min(u, v), max(u, v)))
    return 1 / (len(pair_order(n)) * 2) if len(touched) == 1 else 0


class SampleStats:
    def __init__(self, cfg, r, alpha, defects, accepted, steps, method):
        self.cfg = cfg
        self.r = r
        self.alpha = alpha
        self.defects = defects
        self.accepted = accepted
        self.steps = steps
        self.method = method
        square = max(1, cfg.n * cfg.n)
        count = len(defects)
        self.fraction_r_partite = sum(1 for d in defects if d == 0) / count
        self.fraction_near = sum(1 for d in defects if d <= alpha * square) / count
        z = stats.norm.ppf(0.975)
        p = self.fraction_r_partite
        self.half_width = z * math.sqrt(p * (1 - p) / count)
        self.mean_defect = sum(defects) / count / square
        self.max_defect = max(defects) / square

    @property
    def acceptance_rate(self):
        return self.accepted / self.steps if self.steps else 0.0

    def to_dict(self):
        flags = [UNIFORMITY_FLAG]
        if self.method == "local_search":
            flags.append("defects come from local search and bound the true minimum from above")
        return {
            "chain": self.cfg.to_dict(),
            "r": self.r,
            "alpha": fmt_float(self.alpha),
            "fraction_r_partite": fmt_float(self.fraction_r_partite),
            "half_width_95": fmt_float(self.half_width),
            "fraction_within_alpha": fmt_float(self.fraction_near),
            "mean_defect": fmt_float(self.mean_defect),
            "max_defect": fmt_float(self.max_defect),
            "acceptance_rate": fmt_float(self.acceptance_rate),
            "defect_method": self.method,
            "flags": flags,
        }

    def defects_csv(self):
        lines = ["sample,defect"]
        for i, d in enumerate(self.defects):
            lines.append("%s,%s" % (i, d))
        return "\n".join(lines) + "\n"


def _defect_method(n):
    return "exact" if n <= TABLE_MAX_N else "local_search"


def _chain_job(job):
    cfg, index, r, restarts = job
    chain = HFreeChain(cfg, index)
    exact = _defect_method(cfg.n) == "exact"
    defects = []
    for g in mcmc_sample(cfg, index, chain):
        if exact:
            defects.append(min_non_crossing_mask(g.arc_mask, g.n, r))
        else:
            defects.append(optimal_partition(g, r, mode="local_search", restarts=restarts,
                                              seed=cfg.seed + index).non_crossing_arcs)
    return defects, chain.accepted, chain.steps


def typicality_experiment(cfg, r, alpha, threads=1, restarts=None):
    """Share of sampled H-free graphs that are r-partite, or within alpha * n^2 non-crossing arcs of it.

    Chains run independently and their results are concatenated in chain
    order, so the statistics do not depend on ``threads``. ``restarts`` sets the
    local-search restarts used for defects beyond the exact partition table.
    """
    if r < 1:
        raise InvalidInputException("typicality_experiment needs r >= 1.")
    logger.info("[typicality] n:%s, pattern:%s, kind:%s, samples:%s, chains:%s, seed:%s"
                % (cfg.n, cfg.name, cfg.kind.value, cfg.samples, cfg.chains, cfg.seed))
    defects, accepted, steps = [], 0, 0
    for part, acc, total in run_jobs(_chain_job, [(cfg, i, r, restarts) for i in range(cfg.chains)], threads):
        defects.extend(part)
        accepted += acc
        steps += total
    result = SampleStats(cfg, r, float(alpha), defects, accepted, steps, _defect_method(cfg.n))
    logger.info("[typicality] fraction r-partite:%s, acceptance:%s"
                % (fmt_float(result.fraction_r_partite), fmt_float(result.acceptance_rate)))
    logger.warning("[typicality] %s" % UNIFORMITY_FLAG)
    return result
