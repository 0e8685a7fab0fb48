"""Command-line front end.

Exit codes: 0 success, 1 domain error (e.g. a reducible chain where an
irreducible one is required), 2 bad input or usage.  Output is CSV with a
header row unless ``--format json`` is given; identical inputs, flags and
seed give identical bytes.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import errors
from .absorption import analyze
from .chain import TransitionMatrix, is_irreducible, period, simulate
from .distance import NotReached, convergence_curve, empirical_mixing_time
from .graph import Graph, erdos_renyi, generate
from .martingale import check_space_time_harmonic
from .models import polya_pmf_exact, polya_simulate
from .optimize import ObjectiveOnGraph, log_schedule, simulated_annealing
from .rng import RandomSource
from .samplers import degree_corrected_walk, gibbs_sweep, metropolis_step, run_chain
from .spectral import mixing_bounds, spectrum
from .stationary import check_reversible, solve_stationary

TOL_ENV = "MARKOVKIT_TOL"
DEFAULT_TOL = 1e-9


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        if message.startswith("argument command: invalid choice"):
            raise errors.UnknownSubcommand(f"{self.prog}: {message}")
        raise errors.InputError(f"{self.prog}: {message}")


# --- input ---------------------------------------------------------------


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise errors.ParseError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise errors.ParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                                f"{exc.msg}") from None


def _field(doc, name, path):
    if not isinstance(doc, dict) or name not in doc:
        raise errors.ParseError(f"{path}: missing field {name!r}")
    return doc[name]


def load_input(path, kind):
    """Parse and validate a graph, chain or objective JSON file."""
    doc = _read_json(path)
    try:
        if kind == "graph":
            return Graph.from_edges(_field(doc, "vertices", path), _field(doc, "edges", path))
        if kind == "chain":
            return TransitionMatrix(_field(doc, "matrix", path), doc.get("states"))
        if kind == "objective":
            vals = doc if isinstance(doc, list) else _field(doc, "values", path)
            return [float(v) for v in vals]
        if kind == "weights":
            vals = doc if isinstance(doc, list) else _field(doc, "weights", path)
            return [float(v) for v in vals]
        if kind == "table":
            return [[float(v) for v in row] for row in _field(doc, "values", path)]
    except errors.InputError:
        raise
    except (errors.MarkovError, TypeError, ValueError) as exc:
        raise errors.ValidationError(f"{path}: {exc}") from None
    raise ValueError(f"unknown input kind {kind!r}")


# --- output --------------------------------------------------------------


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


class _Table:
    def __init__(self, header):
        self.header = list(header)
        self.rows = []

    def add(self, *row):
        self.rows.append(list(row))

    def render(self, fmt):
        if fmt == "json":
            recs = [dict(zip(self.header, (_jsonable(v) for v in r))) for r in self.rows]
            return json.dumps(recs, indent=2) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for r in self.rows:
            w.writerow([_fmt(v) for v in r])
        return buf.getvalue()


def _jsonable(v):
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    return v


def _state_list(text):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise errors.InputError(f"cannot parse state list {text!r}") from None


# --- subcommands ----------------------------------------------------------


def cmd_gen_graph(args, rng):
    if args.kind == "erdos_renyi":
        if len(args.size) != 1 or args.p is None:
            raise errors.InputError("erdos_renyi needs one size and --p")
        g = erdos_renyi(args.size[0], args.p, rng)
    else:
        g = generate(args.kind, *args.size)
    if args.format == "json":
        return json.dumps(g.to_json()) + "\n"
    t = _Table(["u", "v"])
    for u, v in sorted(g.edges):
        t.add(u, v)
    return t.render("csv")


def cmd_analyze(args, rng):
    P = load_input(args.chain, "chain")
    t = _Table(["key", "value"])
    irr = is_irreducible(P)
    t.add("states", P.n)
    t.add("irreducible", irr)
    if irr:
        d = period(P)
        t.add("period", d)
        t.add("aperiodic", d == 1)
        rep = check_reversible(P, solve_stationary(P), args.tol)
        t.add("reversible", rep.reversible)
        t.add("max_dbe_violation", rep.max_violation)
    return t.render(args.format)


def cmd_stationary(args, rng):
    P = load_input(args.chain, "chain")
    pi = solve_stationary(P)
    t = _Table(["state", "prob"])
    for x, p in enumerate(pi):
        t.add(P.label(x), p)
    return t.render(args.format)


def cmd_hitting(args, rng):
    P = load_input(args.chain, "chain")
    res = analyze(P, _state_list(args.boundary))
    t = _Table(["state", "hit_time"] + [f"p_{P.label(b)}" for b in res.boundary])
    for i, x in enumerate(res.interior):
        t.add(P.label(x), res.hit_times[i], *res.hit_probs[i])
    return t.render(args.format)


def cmd_mixing(args, rng):
    P = load_input(args.chain, "chain")
    pi = solve_stationary(P)
    spec = spectrum(P, pi)
    lower, upper = mixing_bounds(spec, float(pi.min()), args.eps)
    t = _Table(["key", "value"])
    for j, lam in enumerate(spec.eigenvalues):
        t.add(f"eigenvalue_{j}", lam)
    t.add("lambda_star", spec.lambda_star)
    t.add("gap", spec.gap)
    t.add("t_rel", spec.t_rel)
    t.add("eps", args.eps)
    t.add("lower_bound", lower)
    t.add("upper_bound", upper)
    if args.empirical:
        tm = empirical_mixing_time(P, pi, args.eps, args.cap)
        t.add("t_mix", f"not_reached({tm.n_cap})" if isinstance(tm, NotReached) else tm)
    return t.render(args.format)


def cmd_tv_curve(args, rng):
    P = load_input(args.chain, "chain")
    pi = solve_stationary(P)
    t = _Table(["n", "tv"])
    for n, d in enumerate(convergence_curve(P, args.start, pi, args.steps)):
        t.add(n, d)
    return t.render(args.format)


def cmd_sample(args, rng):
    P = load_input(args.chain, "chain")
    traj = simulate(P, args.start, args.steps, rng)
    if args.pmf:
        counts = np.bincount(traj.states, minlength=P.n)
        t = _Table(["state", "count", "freq"])
        for x in range(P.n):
            t.add(P.label(x), int(counts[x]), counts[x] / len(traj))
        return t.render(args.format)
    t = _Table(["step", "state"])
    for i, x in enumerate(traj.states):
        t.add(i, P.label(x))
    return t.render(args.format)


def cmd_mcmc(args, rng):
    weights = np.array(load_input(args.target, "weights"))
    g = load_input(args.base, "graph")
    if len(weights) != g.n_vertices or np.any(weights <= 0):
        raise errors.ValidationError(f"{args.target}: need one positive weight per vertex "
                                     f"({g.n_vertices})")
    base = degree_corrected_walk(g)
    spec = type(base)(base.base_sample, base.base_ratio, lambda x, y: weights[y] / weights[x])
    samples = run_chain(lambda x, r: metropolis_step(spec, x, r), args.start, args.steps,
                        burn_in=args.burn_in, thinning=args.thinning, rng=rng)
    counts = np.bincount(samples, minlength=g.n_vertices)
    target = weights / weights.sum()
    t = _Table(["state", "count", "empirical", "target"])
    for x in range(g.n_vertices):
        t.add(x, int(counts[x]), counts[x] / max(len(samples), 1), target[x])
    return t.render(args.format)


def triangle_region_conditionals(N):
    """Full conditionals of the uniform law on {(m, k): m, k >= 1, m + k <= N}."""
    return [
        lambda x, r: 1 + r.randbelow(N - x[1]),
        lambda x, r: 1 + r.randbelow(N - x[0]),
    ]


def cmd_gibbs(args, rng):
    N = args.n
    if N < 2:
        raise errors.InputError("--n must be >= 2")
    cond = triangle_region_conditionals(N)
    samples = run_chain(lambda x, r: gibbs_sweep(cond, x, args.scan, r), (1, 1), args.sweeps,
                        burn_in=args.burn_in, rng=rng)
    counts = {}
    for s in samples:
        counts[s] = counts.get(s, 0) + 1
    t = _Table(["m", "k", "count", "freq"])
    for m in range(1, N):
        for k in range(1, N - m + 1):
            c = counts.get((m, k), 0)
            t.add(m, k, c, c / max(len(samples), 1))
    return t.render(args.format)


def cmd_anneal(args, rng):
    g = load_input(args.graph, "graph")
    obj = ObjectiveOnGraph(g, load_input(args.objective, "objective"))
    res = simulated_annealing(obj, log_schedule(args.c), args.steps, args.start, rng)
    if args.trace:
        t = _Table(["t", "lambda", "state", "f"])
        for row in res.trace:
            t.add(*row)
        return t.render(args.format)
    t = _Table(["best_vertex", "best_value"])
    t.add(res.best_vertex, res.best_value)
    return t.render(args.format)


def cmd_polya(args, rng):
    emp = polya_simulate(args.a, args.b, args.steps, args.trials, rng)
    exact = polya_pmf_exact(args.a, args.b, args.steps)
    t = _Table(["black", "empirical", "exact"])
    for k in range(args.a, args.a + args.steps + 1):
        t.add(k, emp[k], exact[k])
    return t.render(args.format)


def cmd_martingale_check(args, rng):
    P = load_input(args.chain, "chain")
    table = load_input(args.table, "table")
    if any(len(row) != P.n for row in table):
        raise errors.ValidationError(f"{args.table}: every row needs {P.n} values")
    steps = len(table) - 1
    if steps < 1:
        raise errors.ValidationError(f"{args.table}: need rows for at least two steps")
    states = _state_list(args.states) if args.states else None
    res = check_space_time_harmonic(P, lambda n, x: table[n][x], steps, args.tol, states)
    t = _Table(["key", "value"])
    t.add("holds", res.holds)
    t.add("worst_violation", res.worst_violation)
    t.add("worst_step", res.worst_at[0])
    t.add("worst_state", res.worst_at[1])
    return t.render(args.format)


# --- dispatch --------------------------------------------------------------


def build_parser():
    env_tol = os.environ.get(TOL_ENV)
    try:
        default_tol = float(env_tol) if env_tol else DEFAULT_TOL
    except ValueError:
        default_tol = DEFAULT_TOL

    common = _ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", default="-", help="output file (default stdout)")
    common.add_argument("--tol", type=float, default=default_tol)
    common.add_argument("--format", choices=["csv", "json"], default="csv")

    parser = _ArgumentParser(prog="markovkit", parents=[common],
                             description="Finite Markov chain analysis and sampling.")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("gen-graph", cmd_gen_graph, "generate a named graph")
    p.add_argument("--kind", required=True,
                   choices=["cycle", "path", "complete", "complete_bipartite", "hypercube", "star",
                            "erdos_renyi"])
    p.add_argument("--size", type=int, nargs="+", required=True)
    p.add_argument("--p", type=float)

    p = add("analyze", cmd_analyze, "irreducibility, period, reversibility")
    p.add_argument("--chain", required=True)

    p = add("stationary", cmd_stationary, "stationary distribution")
    p.add_argument("--chain", required=True)

    p = add("hitting", cmd_hitting, "expected hitting times and absorption probabilities")
    p.add_argument("--chain", required=True)
    p.add_argument("--boundary", required=True, help="comma-separated states")

    p = add("mixing", cmd_mixing, "spectrum, relaxation time and mixing bounds")
    p.add_argument("--chain", required=True)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--empirical", action="store_true")
    p.add_argument("--cap", type=int, default=10_000)

    p = add("tv-curve", cmd_tv_curve, "TV distance to stationarity over time")
    p.add_argument("--chain", required=True)
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--steps", type=int, default=64)

    p = add("sample", cmd_sample, "simulate a trajectory")
    p.add_argument("--chain", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--pmf", action="store_true", help="emit occupation frequencies instead")

    p = add("mcmc", cmd_mcmc, "Metropolis sampling of vertex weights on a graph")
    p.add_argument("--target", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--thinning", type=int, default=1)

    p = add("gibbs", cmd_gibbs, "Gibbs sampling of the uniform law on {m,k >= 1, m+k <= N}")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--sweeps", type=int, required=True)
    p.add_argument("--scan", choices=["random", "systematic"], default="random")
    p.add_argument("--burn-in", type=int, default=0)

    p = add("anneal", cmd_anneal, "simulated annealing of a vertex objective")
    p.add_argument("--graph", required=True)
    p.add_argument("--objective", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--c", type=float, default=1.0, help="schedule lambda(t) = c ln(1+t)")
    p.add_argument("--trace", action="store_true")

    p = add("polya", cmd_polya, "Polya urn: simulated vs exact law of the black count")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)

    p = add("martingale-check", cmd_martingale_check, "exact one-step martingale check")
    p.add_argument("--chain", required=True)
    p.add_argument("--table", required=True, help='JSON {"values": [[f(0,x)...], [f(1,x)...], ...]}')
    p.add_argument("--states", help="comma-separated states to check (default all)")
    return parser


def run_command(argv, stdout=None, stderr=None):
    """Run one CLI invocation and return its exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise errors.InputError("missing subcommand; see --help")
        text = args.func(args, RandomSource(args.seed))
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except errors.InputError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except errors.MarkovError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    if args.out == "-":
        stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    return 0


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
