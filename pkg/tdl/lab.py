import logging

from . import census, extremal, structure
from .commons import DEFAULTS, Budget
from .containment import pattern_stats
from .digraph import GraphKind
from .sampler import ChainConfig, typicality_experiment

logger = logging.getLogger("tdl")

OPTIONS = set(
    ["threads", "budget_secs", "max_n_extremal_digraph", "max_n_extremal_oriented", "max_n_census_digraph",
     "max_n_census_oriented", "max_n_exact_partition", "max_n_f2_exhaustive", "f2_samples",
     "local_search_restarts", "burn_in_factor", "thin_factor"])


class DigraphLab:
    """Entry point bundling the exhaustive searches with one set of limits.

    available API:
    * extremal / gap_scan / second_best
    * census / ratio_trend
    * partition / f_conditions / stability
    * sample
    * pattern
    """
    debug = False

    @staticmethod
    def set_debugging():
        if not DigraphLab.debug:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s:%(message)s"))
            logger.addHandler(handler)
            logger.setLevel(logging.DEBUG)
            DigraphLab.debug = True

    def __init__(self, threads=None, budget_secs=None):
        self.threads = threads or DEFAULTS["THREADS"]
        self.budget_secs = budget_secs if budget_secs is not None else DEFAULTS["BUDGET_SECS"]
        self.max_n_extremal_digraph = DEFAULTS["MAX_N_EXTREMAL_DIGRAPH"]
        self.max_n_extremal_oriented = DEFAULTS["MAX_N_EXTREMAL_ORIENTED"]
        self.max_n_census_digraph = DEFAULTS["MAX_N_CENSUS_DIGRAPH"]
        self.max_n_census_oriented = DEFAULTS["MAX_N_CENSUS_ORIENTED"]
        self.max_n_exact_partition = DEFAULTS["MAX_N_EXACT_PARTITION"]
        self.max_n_f2_exhaustive = DEFAULTS["MAX_N_F2_EXHAUSTIVE"]
        self.f2_samples = DEFAULTS["F2_SAMPLES"]
        self.local_search_restarts = DEFAULTS["LOCAL_SEARCH_RESTARTS"]
        self.burn_in_factor = DEFAULTS["BURN_IN_FACTOR"]
        self.thin_factor = DEFAULTS["THIN_FACTOR"]
        logger.info("[lab-init] threads:%s, budget:%s" % (self.threads, self.budget_secs))

    def set_options(self, **kwargs):
        for k, v in kwargs.items():
            if k not in OPTIONS:
                logger.warning("[set_options] unknown option:%s, ignored" % k)
                continue

            logger.debug("[set_options] key:%s, value:%s" % (k, v))
            setattr(self, k, v)

    def _extremal_cap(self, kind):
        return self.max_n_extremal_oriented if kind is GraphKind.ORIENTED else self.max_n_extremal_digraph

    def _census_cap(self, kind):
        return self.max_n_census_oriented if kind is GraphKind.ORIENTED else self.max_n_census_digraph

    def extremal(self, n, h, a, kind, r=None, name=None):
        kind = GraphKind.parse(kind)
        return extremal.exact_extremal(n, h, a, kind, r=r, name=name, budget_secs=self.budget_secs,
                                       threads=self.threads, max_n=self._extremal_cap(kind))

    def gap_scan(self, n_range, h, a, kind, r, name=None):
        kind = GraphKind.parse(kind)
        return extremal.extremal_gap_scan(n_range, h, a, kind, r, name=name, budget_secs=self.budget_secs,
                                          threads=self.threads, max_n=self._extremal_cap(kind))

    def second_best(self, n, h, a, kind):
        kind = GraphKind.parse(kind)
        return extremal.extremal_second_best(n, h, a, kind, budget_secs=self.budget_secs,
                                             max_n=self._census_cap(kind))

    def census(self, n, h, r, kind, alphas=(), name="H"):
        kind = GraphKind.parse(kind)
        return census.labelled_census(n, h, r, kind, alphas, name=name, budget_secs=self.budget_secs,
                                      threads=self.threads, max_n=self._census_cap(kind))

    def ratio_trend(self, n_range, h, r, kind, name="H"):
        kind = GraphKind.parse(kind)
        return census.ratio_trend(n_range, h, r, kind, name=name, budget_secs=self.budget_secs,
                                  threads=self.threads, max_n=self._census_cap(kind))

    def partition(self, g, r, mode="exact", seed=0):
        return structure.optimal_partition(g, r, mode, budget=Budget(self.budget_secs, tag="optimal-partition"),
                                           restarts=self.local_search_restarts, seed=seed,
                                           max_n=self.max_n_exact_partition)

    def f_conditions(self, g, q, eta, mu, seed=0):
        return structure.f_conditions_check(g, q, eta, mu, max_exhaustive_n=self.max_n_f2_exhaustive,
                                            samples=self.f2_samples, seed=seed)

    def stability(self, n, r, t, a, gamma, kind):
        kind = GraphKind.parse(kind)
        return structure.stability_sweep(n, r, t, a, gamma, kind, budget_secs=self.budget_secs,
                                         threads=self.threads, max_n=self._census_cap(kind))

    def chain_config(self, n, kind, h, name="H", burn_in=None, thin=None, samples=1000, seed=0, chains=None):
        square = max(1, n * n)
        return ChainConfig(n, kind, h, name,
                           burn_in=burn_in or self.burn_in_factor * square,
                           thin=thin or self.thin_factor * square,
                           samples=samples, seed=seed, chains=chains or 1)

    def sample(self, cfg, r, alpha):
        return typicality_experiment(cfg, r, alpha, threads=self.threads, restarts=self.local_search_restarts)

    def pattern(self, h, name=None):
        return pattern_stats(h, name)

    def largest_feasible_n(self, kind, what="extremal"):
        kind = GraphKind.parse(kind)
        return self._extremal_cap(kind) if what == "extremal" else self._census_cap(kind)

