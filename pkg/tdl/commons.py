import logging
import os
import time

logger = logging.getLogger("tdl")

BUDGET_ENV = "TDL_BUDGET_SECS"

DEFAULTS = {
    "MAX_N_EXTREMAL_DIGRAPH": 7,
    "MAX_N_EXTREMAL_ORIENTED": 8,
    "MAX_N_CENSUS_DIGRAPH": 5,
    "MAX_N_CENSUS_ORIENTED": 6,
    "MAX_N_EXACT_PARTITION": 16,
    "MAX_N_F2_EXHAUSTIVE": 14,
    "F2_SAMPLES": 100000,
    "LOCAL_SEARCH_RESTARTS": 32,
    "BURN_IN_FACTOR": 50,  # burn-in = factor * n^2
    "THIN_FACTOR": 1,  # thin = factor * n^2
    "THREADS": os.cpu_count() or 1,
    "FLOAT_TOL": 1e-9,
    "BUDGET_SECS": None,
}


class TDLException(Exception):
    pass


class InvalidInputException(TDLException):
    pass


class BudgetExceededException(TDLException):
    def __init__(self, msg, largest_feasible_n=None):
        super(BudgetExceededException, self).__init__(msg)
        self.largest_feasible_n = largest_feasible_n


def truncate(ori_str, length=100):
    if not ori_str:
        return ""
    return ori_str[:length] + "..." if len(ori_str) > length else ori_str


def fmt_float(x):
    return "%.10g" % x


class Budget:
    """Wall-clock cap for exhaustive searches.

    The cap comes from the explicit argument, else from ``TDL_BUDGET_SECS``;
    ``None`` means unlimited. ``tick`` is cheap enough for inner loops, the
    clock is only read every ``every`` calls.
    """

    def __init__(self, seconds=None, tag="search", every=4096):
        if seconds is None:
            env = os.getenv(BUDGET_ENV)
            if env:
                try:
                    seconds = float(env)
                except ValueError:
                    logger.warning("[budget] bad %s value:%s ignored" % (BUDGET_ENV, env))
        self.seconds = seconds
        self.tag = tag
        self.every = every
        self.started = time.time()
        self._calls = 0

    def tick(self):
        if self.seconds is None:
            return
        self._calls += 1
        if self._calls % self.every:
            return
        self.check()

    def check(self):
        if self.seconds is None:
            return
        elapsed = time.time() - self.started
        if elapsed > self.seconds:
            logger.error("[budget] %s exceeded %.1fs budget after %.1fs" % (self.tag, self.seconds, elapsed))
            raise BudgetExceededException("%s exceeded the %ss budget" % (self.tag, self.seconds))

    def elapsed(self):
        return time.time() - self.started


def ensure_size(n, limit, what):
    if limit is not None and n > limit:
        logger.error("[ensure-size] %s at n:%s is beyond the configured cap %s" % (what, n, limit))
        raise BudgetExceededException("%s is limited to n <= %s (got n=%s)" % (what, limit, n),
                                      largest_feasible_n=limit)


def run_jobs(func, jobs, threads=1):
    """Map ``func`` over ``jobs`` in a process pool; results keep job order."""
    jobs = list(jobs)
    if threads is None or threads <= 1 or len(jobs) <= 1:
        return [func(job) for job in jobs]
    from multiprocessing import Pool

    workers = min(threads, len(jobs))
    logger.debug("[run-jobs] %s jobs on %s workers" % (len(jobs), workers))
    with Pool(workers) as pool:
        return pool.map(func, jobs)


def split_depth(base, threads, pairs):
    """Smallest prefix depth giving at least 4 jobs per worker."""
    if threads is None or threads <= 1:
        return 0
    depth, jobs = 0, 1
    while jobs < 4 * threads and depth < pairs:
        depth += 1
        jobs *= base
    return depth
