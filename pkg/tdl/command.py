import gettext
import json
import platform
import sys
import time


# argparse titles its option group "optional arguments" even for required flags
def translate_patch(msg):
    return "arguments" if msg in ("optional arguments", "options") else msg


gettext.gettext = translate_patch

import argparse

import networkx
import numpy
import scipy

from . import __version__
from .acceptance import run_checks
from .commons import BudgetExceededException, InvalidInputException, fmt_float, truncate
from .digraph import WeightParam, blow_up_pattern, pattern_name, turan_number
from .files import digest, read_file, save_file
from .lab import DigraphLab
from .params import (check_n, parse_alpha_list, parse_fraction, parse_graph_text, parse_kind,
                     parse_pattern_spec, parse_set_list, parse_weight, pattern_from_spec)
from .structure import RPartition, partition_report

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BUDGET = 2


def _colored(txt, color="green"):
    cm = {
        "green": 32,
        "red": 31,
        "yellow": 33,
        "grey": 30,
    }

    return "\033[1;%sm%s\033[0m" % (cm[color], txt)


def _number(x):
    if isinstance(x, float):
        return fmt_float(x)
    return str(x)


def _load_graph(path):
    text = read_file(path)
    if text is None:
        raise InvalidInputException("Cannot read graph file %s." % path)
    return parse_graph_text(text)


def _pattern(args):
    """``(H, name, r)`` from ``--pattern-file``, ``--pattern r,t`` or ``--r/--t``."""
    if getattr(args, "pattern_file", None):
        return _load_graph(args.pattern_file), "H", getattr(args, "r", None)
    if getattr(args, "pattern", None):
        return pattern_from_spec(args.pattern)
    if getattr(args, "r", None) is not None:
        t = args.t or 1
        r, t = parse_pattern_spec("%s,%s" % (args.r, t))
        return blow_up_pattern(r, t), pattern_name(r, t), r
    raise InvalidInputException("Give the forbidden pattern with --pattern r,t, --r/--t or --pattern-file.")


def _graph(args):
    if getattr(args, "graph_file", None):
        return _load_graph(args.graph_file)
    if getattr(args, "graph", None):
        return parse_graph_text(args.graph)
    raise InvalidInputException("Give the graph with --graph 'D <n> <hex>' or --graph-file.")


def _n_range(text):
    text = str(text)
    try:
        if "-" in text:
            lo, hi = text.split("-", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise InvalidInputException("Vertex range %r must look like 3-5 or 3,4,5." % text)


def _lab(args):
    return DigraphLab(threads=args.threads, budget_secs=args.budget_secs)


def extremal(args):
    lab = _lab(args)
    h, name, r = _pattern(args)
    kind = parse_kind(args.kind)
    a = parse_weight(args.a)
    if args.n_range:
        if r is None:
            raise InvalidInputException("The gap scan needs r (use --pattern r,t or --r).")
        rows = lab.gap_scan(_n_range(args.n_range), h, a, kind, r, name=name)
        lines = ["n,ex,lower,gap,witness_count"]
        for row in rows:
            lines.append("%s,%s,%s,%s,%s" % (row["n"], _number(row["ex"]), _number(row["lower"]),
                                             _number(row["gap"]), row["witness_count"]))
        return "\n".join(lines) + "\n"
    cert = lab.extremal(args.n, h, a, kind, r=r, name=name)
    record = cert.to_dict()
    if r is not None:
        record["lower_bound"] = _number(a.value * turan_number(args.n, r))
    if args.second_best:
        _, second, gap = lab.second_best(args.n, h, a, kind)
        record["second_best"] = None if second is None else _number(second)
        record["second_gap"] = None if gap is None else _number(gap)
    return json.dumps(record, indent=2) + "\n"


def census(args):
    lab = _lab(args)
    h, name, r = _pattern(args)
    r = args.r or r
    if r is None:
        raise InvalidInputException("The census needs r (use --pattern r,t or --r).")
    kind = parse_kind(args.kind)
    alphas = parse_alpha_list(args.alpha)
    if args.n_range:
        rows, nonincreasing = lab.ratio_trend(_n_range(args.n_range), h, r, kind, name=name)
        lines = ["n,f,t,ratio"]
        for row in rows:
            lines.append("%s,%s,%s,%s" % (row["n"], row["f"], row["t"], fmt_float(float(row["ratio"]))))
        lines.append("# ratio nonincreasing over range: %s (observed, not claimed)" % nonincreasing)
        return "\n".join(lines) + "\n"
    record = lab.census(args.n, h, r, kind, alphas, name=name)
    return record.csv_header() + "\n" + record.csv_row() + "\n"


def partition(args):
    lab = _lab(args)
    g = _graph(args)
    if args.classes:
        q = RPartition(args.r, parse_set_list(args.classes))
        report = partition_report(g, q)
    else:
        report = lab.partition(g, args.r, mode=args.mode, seed=args.seed)
    result = report.to_dict()
    if args.eta is not None and args.mu is not None:
        eta = parse_fraction(args.eta, "eta", 0, 1)
        mu = parse_fraction(args.mu, "mu", 0, 1)
        result["f_conditions"] = lab.f_conditions(g, report.partition, eta, mu, seed=args.seed).to_dict()
    return json.dumps(result, indent=2) + "\n"


def stability(args):
    lab = _lab(args)
    r, t = parse_pattern_spec(args.pattern) if args.pattern else parse_pattern_spec("%s,%s" % (args.r, args.t))
    kind = parse_kind(args.kind)
    gamma = parse_fraction(args.gamma, "gamma", 0)
    sweep = lab.stability(args.n, r, t, parse_weight(args.a), gamma, kind)
    return sweep.to_csv()


def sample(args):
    lab = _lab(args)
    h, name, r = _pattern(args)
    r = args.r or r
    if r is None:
        raise InvalidInputException("The typicality experiment needs r (use --pattern r,t or --r).")
    kind = parse_kind(args.kind)
    cfg = lab.chain_config(args.n, kind, h, name, burn_in=args.burnin, thin=args.thin, samples=args.samples,
                           seed=args.seed, chains=args.chains)
    result = lab.sample(cfg, r, float(parse_fraction(args.alpha, "alpha", 0)))
    if args.defects_csv:
        save_file(args.defects_csv, result.defects_csv())
    return json.dumps(result.to_dict(), indent=2) + "\n"


def pattern(args):
    lab = _lab(args)
    h, name, _ = _pattern(args)
    stats = lab.pattern(h, name)
    weights = [WeightParam.parse(a) for a in args.a.split(",")]
    lines = ["pattern %s: v=%s e=%s" % (stats.name, h.n, h.arc_count),
             "Delta=%s" % stats.delta,
             "m=%s" % (stats.m_value if stats.m_value is not None else "undefined"),
             "max e/v=%s" % stats.cond_a_threshold,
             "|Aut|=%s" % stats.aut_count]
    for w in weights:
        verdict = "holds" if stats.condition_a(w) else "fails"
        if args.color:
            verdict = _colored(verdict, "green" if verdict == "holds" else "red")
        lines.append("Condition A at a=%s: %s" % (w, verdict))
    if stats.dense_pair:
        lines.append("note: H has a 2-cycle, left out of m(H)")
    return "\n".join(lines) + "\n"


def check(args):
    lab = _lab(args)
    only = set(args.only.split(",")) if args.only else None
    results = run_checks(lab, only=only)
    lines = []
    for res in results:
        mark = "PASS" if res.passed else "FAIL"
        if args.color:
            mark = _colored(mark, "green" if res.passed else "red")
        detail = truncate(json.dumps(res.detail, default=str), 200)
        lines.append("%s %s (%.1fs) %s" % (mark, res.name, res.seconds, detail))
    failed = [r.name for r in results if not r.passed]
    lines.append("%s of %s checks passed" % (len(results) - len(failed), len(results)))
    args.failed_checks = failed
    return "\n".join(lines) + "\n"


def _manifest(args, argv, output_digest, seconds):
    params = dict((k, v) for k, v in vars(args).items() if k not in ("func", "failed_checks"))
    return {
        "subcommand": args.command,
        "argv": list(argv),
        "params": params,
        "versions": {"tdl": __version__, "python": platform.python_version(), "numpy": numpy.__version__,
                     "scipy": scipy.__version__, "networkx": networkx.__version__},
        "seed": getattr(args, "seed", None),
        "wall_time_secs": round(seconds, 3),
        "outputs": {args.out or "<stdout>": output_digest},
    }


def arg_parse():
    parser = argparse.ArgumentParser(prog="tdl",
                                     description="Exact and sampled experiments on digraphs avoiding "
                                                 "blow-ups of transitive tournaments.")
    parser.add_argument("--out", default=None, help="write the result to this file instead of stdout; "
                                                    "the run manifest goes to <out>.manifest.json.")
    parser.add_argument("--threads", type=int, default=None, help="worker processes, default all cores.")
    parser.add_argument("--budget-secs", dest="budget_secs", type=float, default=None,
                        help="wall-clock cap for exhaustive searches (overrides TDL_BUDGET_SECS).")
    parser.add_argument("--debug", action="store_true", default=False, help="log at DEBUG level to stderr.")
    parser.add_argument("--color", action="store_true", default=False, help="colour verdicts.")
    subparsers = parser.add_subparsers(dest="command", help="sub-command help", title="Sub commands")

    def pattern_args(p, need_r=False):
        p.add_argument("--pattern", default=None, help="forbidden T_{r+1}^t given as r,t.")
        p.add_argument("--pattern-file", dest="pattern_file", default=None,
                       help="forbidden digraph from a file holding one 'D <n> <hex>' line.")
        p.add_argument("--r", type=int, default=None, help="number of classes r" +
                       (" (required with --pattern-file)." if need_r else "."))
        p.add_argument("--t", type=int, default=None, help="blow-up size t, default 1.")

    # extremal
    parser_extremal = subparsers.add_parser("extremal", help="exact weighted Turan number",
                                            description="Exact ex_a(n, H) with all maximisers up to isomorphism.",
                                            epilog="Example: tdl extremal --n 4 --r 2 --t 1 --a 2 --kind digraph")
    parser_extremal.add_argument("--n", type=int, default=None, help="number of vertices.")
    parser_extremal.add_argument("--n-range", dest="n_range", default=None,
                                 help="scan ex_a - a*t_r(n) over a range such as 3-5.")
    pattern_args(parser_extremal)
    parser_extremal.add_argument("--a", default="2", help="2-cycle weight a >= 1, or log2(3).")
    parser_extremal.add_argument("--kind", default="digraph", help="oriented or digraph.")
    parser_extremal.add_argument("--second-best", dest="second_best", action="store_true", default=False,
                                 help="also report the best non-extremal value.")
    parser_extremal.set_defaults(func=extremal)

    # census
    parser_census = subparsers.add_parser("census", help="labelled census of H-free graphs",
                                          description="Exact labelled counts f(n, H) and T(n, r).",
                                          epilog="Example: tdl census --n 3 --pattern 2,1 --kind oriented")
    parser_census.add_argument("--n", type=int, default=None, help="number of vertices.")
    parser_census.add_argument("--n-range", dest="n_range", default=None, help="ratio trend over e.g. 2-5.")
    pattern_args(parser_census, True)
    parser_census.add_argument("--kind", default="oriented", help="oriented or digraph.")
    parser_census.add_argument("--alpha", default=None, help="comma separated closeness levels.")
    parser_census.set_defaults(func=census)

    # partition
    parser_partition = subparsers.add_parser("partition", help="optimal r-partition of a graph",
                                             description="Optimal partition report, optionally with the "
                                                         "(F1)-(F3) checks.")
    parser_partition.add_argument("--graph", default=None, help="graph line 'D <n> <hex>'.")
    parser_partition.add_argument("--graph-file", dest="graph_file", default=None, help="file with a graph line.")
    parser_partition.add_argument("--r", type=int, required=True, help="number of classes.")
    parser_partition.add_argument("--mode", default="exact", choices=["exact", "local_search"])
    parser_partition.add_argument("--classes", default=None, help="use this partition, e.g. '0,1;2,3'.")
    parser_partition.add_argument("--eta", default=None, help="F1 level.")
    parser_partition.add_argument("--mu", default=None, help="F2/F3 level.")
    parser_partition.add_argument("--seed", type=int, default=0)
    parser_partition.set_defaults(func=partition)

    # stability
    parser_stability = subparsers.add_parser("stability", help="deficit vs distance frontier",
                                             description="Largest distance to DT_r(n) among near-extremal "
                                                         "H-free graphs, as CSV.")
    parser_stability.add_argument("--n", type=int, required=True)
    parser_stability.add_argument("--pattern", default=None, help="r,t")
    parser_stability.add_argument("--r", type=int, default=2)
    parser_stability.add_argument("--t", type=int, default=1)
    parser_stability.add_argument("--a", default="2")
    parser_stability.add_argument("--gamma", default="1", help="admit graphs with e_a >= a*t_r(n) - gamma*n^2.")
    parser_stability.add_argument("--kind", default="digraph")
    parser_stability.set_defaults(func=stability)

    # sample
    parser_sample = subparsers.add_parser("sample", help="MCMC typicality experiment",
                                          description="Metropolis sampling of H-free graphs and the share "
                                                      "that is r-partite.")
    parser_sample.add_argument("--n", type=int, required=True)
    pattern_args(parser_sample, True)
    parser_sample.add_argument("--kind", default="oriented")
    parser_sample.add_argument("--burnin", type=int, default=None, help="default 50*n^2 steps.")
    parser_sample.add_argument("--thin", type=int, default=None, help="default n^2 steps.")
    parser_sample.add_argument("--samples", type=int, default=1000)
    parser_sample.add_argument("--chains", type=int, default=1)
    parser_sample.add_argument("--seed", type=int, default=0)
    parser_sample.add_argument("--alpha", default="0.05")
    parser_sample.add_argument("--defects-csv", dest="defects_csv", default=None,
                               help="write per-sample defects to this CSV.")
    parser_sample.set_defaults(func=sample)

    # pattern
    parser_pattern = subparsers.add_parser("pattern", help="pattern quantities",
                                           description="Max degree, m(H) and Condition A verdicts.",
                                           epilog="Example: tdl pattern --r 2 --t 1")
    pattern_args(parser_pattern)
    parser_pattern.add_argument("--a", default="2,4", help="weights to test Condition A at.")
    parser_pattern.set_defaults(func=pattern)

    # check
    parser_check = subparsers.add_parser("check", help="run the acceptance suite",
                                         description="Acceptance criteria and property suites; exits 1 "
                                                     "on any failure.")
    parser_check.add_argument("--only", default=None, help="comma separated check names.")
    parser_check.set_defaults(func=check)

    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    parser = arg_parse()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        print("No sub command is specified, use -h for help.")
        return EXIT_INVALID
    if args.debug:
        DigraphLab.set_debugging()

    started = time.time()
    try:
        if args.command in ("extremal", "census") and args.n is None and not args.n_range:
            raise InvalidInputException("Give --n or --n-range.")
        if getattr(args, "n", None) is not None:
            check_n(args.n)
        output = args.func(args)
    except InvalidInputException as e:
        print("invalid input: %s" % e, file=sys.stderr)
        return EXIT_INVALID
    except BudgetExceededException as e:
        hint = "" if e.largest_feasible_n is None else " (largest feasible n: %s)" % e.largest_feasible_n
        print("budget exceeded: %s%s" % (e, hint), file=sys.stderr)
        return EXIT_BUDGET

    if args.out:
        output_digest = save_file(args.out, output)
    else:
        sys.stdout.write(output)
        output_digest = digest(output)
    manifest = json.dumps(_manifest(args, argv, output_digest, time.time() - started), indent=2, default=str)
    if args.out:
        save_file(args.out + ".manifest.json", manifest + "\n")
    else:
        print(manifest, file=sys.stderr)
    if getattr(args, "failed_checks", None):
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
