"""Benchmark command line: generate problems, solve, sweep, print constants.

Subcommands
    generate   write a synthetic instance (matrix, rhs, oracle truth, metadata)
    solve      one run with a full report and optional error-curve CSV
    bench      multi-trial sweeps over algorithms, block sizes, and stepsizes
    rates      the theoretical constants for a (matrix, partition, stepsize)

Stepsizes accept an ``x`` suffix meaning multiples of 1 / beta_max (so
``1.75x`` resolves against the instance and block size at hand); bare
numbers are absolute.  The master seed comes from --seed or KACZMARZ_SEED.
Exit codes: 0 success, 1 usage error, 2 data error, 3 non-convergence in
``solve``.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass

import numpy as np

from .factorizations import numerical_rank, pinv_apply, residual_split, svd
from .matrix import Matrix
from .matrix_io import (
    MatrixMarketError,
    read_matrix_market,
    read_vector,
    write_matrix_market,
    write_vector,
)
from .problems import ProblemInstance, ProblemMeta, gen_type1, gen_type2, make_rhs
from .rates import compute_beta_max, optimal_alpha, rate_constants
from .sampling import contiguous_partition
from .solvers import ALGORITHMS, SolverConfig, StoppingRule, run

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NO_CONVERGENCE = 3

PAPER_SCALE_CELLS = 4_000_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract says 1
        raise UsageError(message)


def derive_seed(master: int, *key: int) -> int:
    """Collision-resistant child seed derived by hashing (master, key)."""
    seq = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    return int(seq.generate_state(1, np.uint64)[0])


def _seed_default() -> int:
    return int(os.environ.get("KACZMARZ_SEED", "0"))


def _parse_alpha_spec(text: str) -> tuple[float, bool]:
    """Returns (value, is_multiple_of_inverse_beta_max)."""
    text = text.strip()
    relative = text.endswith(("x", "X"))
    if relative:
        text = text[:-1]
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"bad stepsize {text!r}; use e.g. 1.75x or 10.87") from None
    if value <= 0.0:
        raise UsageError("stepsizes must be positive")
    return value, relative


def _split_list(text: str) -> list[str]:
    return [part for part in (p.strip() for p in text.split(",")) if part]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


# -- config file -------------------------------------------------------------


def _read_config_tokens(path) -> list[str]:
    """key = value lines mapped to CLI tokens; flags given later win."""
    tokens: list[str] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                tokens.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                tokens.extend([flag, value])
    return tokens


def _apply_config_file(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    at = argv.index("--config")
    if at + 1 >= len(argv):
        raise UsageError("--config needs a file path")
    path = argv[at + 1]
    rest = argv[:at] + argv[at + 2:]
    if not rest:
        raise UsageError("--config needs a subcommand")
    return [rest[0]] + _read_config_tokens(path) + rest[1:]


# -- problem sources ----------------------------------------------------------


@dataclass
class ProblemSource:
    """Either generator parameters (fresh instance per seed) or fixed files."""

    label: str
    kind: str  # "type1" | "type2" | "files"
    m: int = 0
    n: int = 0
    rank: int = 0
    kappa: float = 0.0
    inconsistent: bool = False
    perp_scale: float = 1.0
    fixed: ProblemInstance | None = None

    @property
    def regenerates(self) -> bool:
        return self.kind != "files"

    def instance(self, seed: int) -> ProblemInstance:
        if self.fixed is not None:
            return self.fixed
        if self.kind == "type1":
            a = gen_type1(self.m, self.n, self.rank, self.kappa, derive_seed(seed, 0))
            kappa_bound = self.kappa
        else:
            a = gen_type2(self.m, self.n, derive_seed(seed, 0))
            kappa_bound = None
        return make_rhs(
            a,
            derive_seed(seed, 1),
            inconsistent=self.inconsistent,
            perp_scale=self.perp_scale,
            kappa_bound=kappa_bound,
        )


def _add_generator_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--type", type=int, choices=(1, 2), help="synthetic matrix family")
    parser.add_argument("--m", type=int, help="rows")
    parser.add_argument("--n", type=int, help="columns")
    parser.add_argument("--rank", type=int, help="target rank (type 1)")
    parser.add_argument("--kappa", type=float, default=2.0, help="condition bound (type 1)")
    parser.add_argument("--inconsistent", action="store_true",
                        help="add a residual in null(A^T)")
    parser.add_argument("--perp-scale", type=float, default=1.0,
                        help="scale of the inconsistency residual")


def _add_problem_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--problem", help="directory written by 'generate'")
    parser.add_argument("--matrix", help="MatrixMarket file")
    parser.add_argument("--rhs", help="right-hand side vector file")
    parser.add_argument("--x-star", help="oracle solution vector file")
    _add_generator_flags(parser)


def _guard_paper_scale(m: int, n: int, allow: bool):
    if m * n > PAPER_SCALE_CELLS:
        if not allow:
            raise UsageError(
                f"{m}x{n} is paper scale ({m * n} cells); pass --paper-scale to run it"
            )
        print(f"warning: paper-scale problem {m}x{n}; expect long runtimes", file=sys.stderr)


def _source_from_args(args) -> ProblemSource:
    if args.problem or args.matrix:
        problem, label = _load_problem_files(args)
        return ProblemSource(label=label, kind="files", fixed=problem)
    if args.type is None:
        raise UsageError("give --problem, --matrix, or generator parameters (--type ...)")
    if args.m is None or args.n is None:
        raise UsageError("generator parameters need --m and --n")
    _guard_paper_scale(args.m, args.n, getattr(args, "paper_scale", False))
    if args.type == 1:
        if args.rank is None:
            raise UsageError("type 1 needs --rank")
        label = f"type1:{args.m}x{args.n}:r{args.rank}:k{args.kappa:g}"
    else:
        label = f"type2:{args.m}x{args.n}"
    if args.inconsistent:
        label += ":inconsistent"
    return ProblemSource(
        label=label,
        kind=f"type{args.type}",
        m=args.m,
        n=args.n,
        rank=args.rank or 0,
        kappa=args.kappa,
        inconsistent=args.inconsistent,
        perp_scale=args.perp_scale,
    )


def _load_problem_files(args) -> tuple[ProblemInstance, str]:
    if args.problem:
        base = args.problem
        matrix_path = os.path.join(base, "A.mtx")
        rhs_path = os.path.join(base, "b.txt")
        x_star_path = os.path.join(base, "x_star.txt")
        label = os.path.basename(os.path.normpath(base))
    else:
        matrix_path = args.matrix
        rhs_path = args.rhs
        x_star_path = args.x_star
        label = os.path.basename(matrix_path)
    a = read_matrix_market(matrix_path)
    if rhs_path and os.path.exists(rhs_path):
        b = read_vector(rhs_path)
    else:
        raise UsageError("a right-hand side is required (--rhs or problem directory)")
    x_star = None
    if x_star_path and os.path.exists(x_star_path):
        x_star = read_vector(x_star_path)
    meta = ProblemMeta(declared_rank=0, kappa_bound=None, consistent=False,
                       seed=0, residual_norm=0.0)
    problem = ProblemInstance(a=a, b=b, x_star=x_star, b_perp=None, meta=meta)
    return problem, label


# -- generate ------------------------------------------------------------------


def _cmd_generate(args) -> int:
    source = _source_from_args(args)
    if not source.regenerates:
        raise UsageError("generate needs generator parameters, not files")
    problem = source.instance(args.seed)
    os.makedirs(args.out, exist_ok=True)
    write_matrix_market(problem.a, os.path.join(args.out, "A.mtx"))
    write_vector(problem.b, os.path.join(args.out, "b.txt"))
    write_vector(problem.x_star, os.path.join(args.out, "x_star.txt"))
    write_vector(problem.b_perp, os.path.join(args.out, "b_perp.txt"))
    meta = problem.meta
    with open(os.path.join(args.out, "meta.txt"), "w", encoding="utf-8") as handle:
        handle.write(f"label = {source.label}\n")
        handle.write(f"m = {problem.a.rows}\n")
        handle.write(f"n = {problem.a.cols}\n")
        handle.write(f"declared_rank = {meta.declared_rank}\n")
        handle.write(f"kappa_bound = {_fmt(meta.kappa_bound)}\n")
        handle.write(f"consistent = {_fmt(meta.consistent)}\n")
        handle.write(f"seed = {args.seed}\n")
        handle.write(f"residual_norm = {_fmt(meta.residual_norm)}\n")
        handle.write(f"perp_scale = {_fmt(args.perp_scale)}\n")
    print(f"wrote {source.label} (rank {meta.declared_rank}, "
          f"{'consistent' if meta.consistent else 'inconsistent'}) to {args.out}")
    return EXIT_OK


# -- solve ---------------------------------------------------------------------


def _resolve_alpha(spec: str, problem: ProblemInstance, tau_row: int, tau_col: int,
                   beta_cache: dict | None = None):
    """Absolute stepsize plus the beta_max it came from (None if unused)."""
    value, relative = _parse_alpha_spec(spec)
    if not relative:
        return value, None
    key = (id(problem), tau_row, tau_col)
    beta = beta_cache.get(key) if beta_cache is not None else None
    if beta is None:
        row_p = contiguous_partition(problem.a.rows, min(tau_row, problem.a.rows), "row")
        col_p = contiguous_partition(problem.a.cols, min(tau_col, problem.a.cols), "col")
        beta = compute_beta_max(problem.a, row_p, col_p)[2]
        if beta_cache is not None:
            beta_cache[key] = beta
    return value / beta, beta


def _build_config(algo: str, problem: ProblemInstance, tau_row: int, tau_col: int,
                  alpha: float, seed: int, tol: float, max_iters: int, stride: int,
                  stop_mode: str, record_errors: bool = False,
                  beta_max: float | None = None) -> SolverConfig:
    a = problem.a
    row_p = col_p = None
    if algo not in ("rk", "rek"):
        row_p = contiguous_partition(a.rows, min(tau_row, a.rows), "row")
        col_p = contiguous_partition(a.cols, min(tau_col, a.cols), "col")
    return SolverConfig(
        algorithm=algo,
        alpha=alpha,
        row_partition=row_p,
        col_partition=col_p,
        seed=seed,
        max_iters=max_iters,
        stop=StoppingRule(mode=stop_mode, tol=tol, check_stride=stride),
        record_errors=record_errors,
        beta_max=beta_max,
    )


def _cmd_solve(args) -> int:
    source = _source_from_args(args)
    problem = source.instance(args.seed)
    stop_mode = {"oracle": "oracle_error", "residual": "residual_proxy",
                 "none": "max_iters_only"}[args.stop]
    if stop_mode == "oracle_error":
        problem.ensure_oracle()
    algo = args.algo.lower()
    if algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {args.algo!r}; choose from {', '.join(ALGORITHMS)}")
    tau_col = args.tau_col or args.tau
    alpha = 1.0
    beta = None
    if algo in ("rk", "rek", "rabk", "dsbgs", "rebk"):
        alpha, beta = _resolve_alpha(args.alpha, problem, args.tau, tau_col)
    config = _build_config(algo, problem, args.tau, tau_col, alpha,
                           derive_seed(args.seed, 2, 0), args.tol, args.max_iters,
                           args.stride, stop_mode, record_errors=bool(args.curve),
                           beta_max=beta)
    trace = run(problem, config)

    print(f"algorithm      {algo}")
    print(f"problem        {source.label} ({problem.a.rows}x{problem.a.cols})")
    if algo not in ("rk", "rek"):
        print(f"tau            {args.tau} (rows) / {tau_col} (cols)")
    print(f"alpha          {_fmt(alpha)}  (spec {args.alpha})")
    print(f"iters          {trace.iters}")
    print(f"converged      {_fmt(trace.converged)}")
    print(f"final_error    {_fmt(trace.final_error)}")
    if problem.oracle is not None and algo in ("rk", "rek", "rabk", "rebk"):
        a = problem.a
        row_p = config.row_partition or contiguous_partition(a.rows, 1, "row")
        col_p = config.col_partition or contiguous_partition(a.cols, 1, "col")
        consts = rate_constants(a, row_p, col_p, alpha, oracle=problem.oracle)
        alpha_star, delta_star = optimal_alpha(problem.oracle, consts.fro_sq)
        print(f"delta          {_fmt(consts.delta)}")
        print(f"eta            {_fmt(consts.eta)}")
        print(f"rho            {_fmt(consts.rho)}")
        print(f"rho_hat        {_fmt(consts.rho_hat)}")
        print(f"beta_rows      {_fmt(consts.beta_max_rows)}")
        print(f"beta_cols      {_fmt(consts.beta_max_cols)}")
        print(f"guaranteed     {_fmt(consts.guaranteed)}")
        print(f"optimal_alpha  {_fmt(alpha_star)} (delta {_fmt(delta_star)})")
    for warning in trace.warnings:
        print(f"warning        {warning}")
    if args.curve:
        with open(args.curve, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["iteration", "error"])
            for k, err in zip(trace.checkpoints, trace.errors):
                writer.writerow([int(k), repr(float(err))])
        print(f"curve          {args.curve}")
    return EXIT_OK if trace.converged or stop_mode == "max_iters_only" else EXIT_NO_CONVERGENCE


# -- bench ---------------------------------------------------------------------


_BENCH_COLUMNS = [
    "kind", "problem", "m", "n", "algorithm", "tau_row", "tau_col",
    "alpha_spec", "alpha", "trial", "seed", "iters", "converged", "wall_time",
    "mean_iter", "mean_cpu", "speedup", "unconverged",
]


def _bench_combos(algos, taus, alpha_specs):
    """One combo per table cell; rek/rk have no blocks, rbk/rdbk no stepsize."""
    combos = []
    for algo in algos:
        if algo in ("rk", "rek"):
            combos.append((algo, None, "1"))
        elif algo in ("rbk", "rdbk"):
            combos.extend((algo, tau, "1") for tau in taus)
        else:
            combos.extend((algo, tau, spec) for tau in taus for spec in alpha_specs)
    return combos


def _cmd_bench(args) -> int:
    source = _source_from_args(args)
    algos = [a.lower() for a in _split_list(args.algo)]
    for algo in algos:
        if algo not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {algo!r}")
    taus = [int(t) for t in _split_list(args.tau)]
    alpha_specs = _split_list(args.alpha)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    combos = _bench_combos(algos, taus, alpha_specs)

    results = {combo: [] for combo in combos}
    for trial in range(args.trials):
        problem = source.instance(derive_seed(args.seed, 1, trial))
        problem.ensure_oracle()
        solver_seed = derive_seed(args.seed, 2, trial)
        beta_cache: dict = {}
        for combo in combos:
            algo, tau, spec = combo
            tau_row = tau_col = tau or 1
            alpha, beta = _resolve_alpha(spec, problem, tau_row, tau_col, beta_cache)
            config = _build_config(algo, problem, tau_row, tau_col, alpha, solver_seed,
                                   args.tol, args.max_iters, args.stride, "oracle_error",
                                   beta_max=beta)
            trace = run(problem, config)
            results[combo].append({
                "trial": trial,
                "seed": solver_seed,
                "alpha": alpha,
                "iters": trace.iters,
                "converged": trace.converged,
                "wall_time": trace.wall_time,
            })

    aggregates = {}
    for combo, rows in results.items():
        converged_iters = [r["iters"] for r in rows if r["converged"]]
        mean_iter = float(np.mean(converged_iters)) if converged_iters else None
        mean_cpu = float(np.mean([r["wall_time"] for r in rows]))
        aggregates[combo] = {
            "mean_iter": mean_iter,
            "mean_cpu": mean_cpu,
            "unconverged": sum(1 for r in rows if not r["converged"]),
        }
    baseline = next((aggregates[c]["mean_cpu"] for c in combos if c[0] == "rek"), None)

    with open(args.out, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(_BENCH_COLUMNS)
        for combo in combos:
            algo, tau, spec = combo
            shared = {
                "problem": source.label,
                "m": source.fixed.a.rows if source.fixed else source.m,
                "n": source.fixed.a.cols if source.fixed else source.n,
                "algorithm": algo,
                "tau_row": tau,
                "tau_col": tau,
                "alpha_spec": spec,
            }
            for row in results[combo]:
                record = {"kind": "trial", **shared,
                          "alpha": row["alpha"], "trial": row["trial"], "seed": row["seed"],
                          "iters": row["iters"], "converged": row["converged"],
                          "wall_time": row["wall_time"]}
                writer.writerow([_fmt(record.get(c)) for c in _BENCH_COLUMNS])
            agg = aggregates[combo]
            speedup = None
            if baseline is not None and agg["mean_cpu"] > 0.0:
                speedup = baseline / agg["mean_cpu"]
            record = {"kind": "aggregate", **shared,
                      "mean_iter": agg["mean_iter"], "mean_cpu": agg["mean_cpu"],
                      "speedup": speedup, "unconverged": agg["unconverged"]}
            writer.writerow([_fmt(record.get(c)) for c in _BENCH_COLUMNS])

    for combo in combos:
        algo, tau, spec = combo
        agg = aggregates[combo]
        cell = f"{algo}" + (f" tau={tau}" if tau else "") + (f" alpha={spec}" if spec != "1" else "")
        mean_iter = "n/a" if agg["mean_iter"] is None else f"{agg['mean_iter']:.1f}"
        print(f"{cell:32s} mean ITER {mean_iter:>12s}   mean CPU {agg['mean_cpu']:.4f}s"
              + (f"   unconverged {agg['unconverged']}" if agg["unconverged"] else ""))
    print(f"wrote {args.out}")
    return EXIT_OK


# -- rates ---------------------------------------------------------------------


def _cmd_rates(args) -> int:
    source = _source_from_args(args)
    problem = source.instance(args.seed)
    oracle = problem.ensure_oracle()
    a = problem.a
    tau_col = args.tau_col or args.tau
    row_p = contiguous_partition(a.rows, min(args.tau, a.rows), "row")
    col_p = contiguous_partition(a.cols, min(tau_col, a.cols), "col")
    fro_sq = a.frobenius_sq()
    beta_rows, beta_cols, beta_max = compute_beta_max(a, row_p, col_p)
    alpha_star, delta_star = optimal_alpha(oracle, fro_sq)

    print(f"problem        {source.label} ({a.rows}x{a.cols})")
    print(f"rank           {numerical_rank(oracle)}")
    print(f"sigma1_sq      {_fmt(float(oracle.sigma[0]) ** 2)}")
    print(f"sigma_r_sq     {_fmt(float(oracle.sigma[-1]) ** 2)}")
    print(f"fro_sq         {_fmt(fro_sq)}")
    print(f"beta_rows      {_fmt(beta_rows)} (tau {args.tau})")
    print(f"beta_cols      {_fmt(beta_cols)} (tau {tau_col})")
    print(f"beta_max       {_fmt(beta_max)}")
    print(f"optimal_alpha  {_fmt(alpha_star)} (delta {_fmt(delta_star)})")

    rows = []
    header = ["alpha_spec", "alpha", "delta", "eta", "rho", "rho_hat", "guaranteed"]
    print("  ".join(f"{h:>12s}" for h in header))
    for spec in _split_list(args.alpha):
        value, relative = _parse_alpha_spec(spec)
        alpha = value / beta_max if relative else value
        consts = rate_constants(a, row_p, col_p, alpha, oracle=oracle)
        row = [spec, alpha, consts.delta, consts.eta, consts.rho, consts.rho_hat,
               consts.guaranteed]
        rows.append(row)
        print("  ".join(f"{(f'{v:.6g}' if isinstance(v, float) else str(v)):>12s}" for v in row))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            for row in rows:
                writer.writerow([_fmt(v) for v in row])
        print(f"wrote {args.csv}")
    return EXIT_OK


# -- entry ----------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="kaczmarz", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    common = dict(seed=lambda p: p.add_argument(
        "--seed", type=int, default=_seed_default(),
        help="master seed (default: KACZMARZ_SEED or 0)"))

    gen = sub.add_parser("generate", help="write a synthetic problem instance")
    _add_generator_flags(gen)
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--paper-scale", action="store_true",
                     help="allow paper-scale shapes (long runtimes)")
    common["seed"](gen)
    gen.set_defaults(func=_cmd_generate, problem=None, matrix=None)

    solve = sub.add_parser("solve", help="run one algorithm on one instance")
    _add_problem_flags(solve)
    solve.add_argument("--algo", required=True, help=f"one of {', '.join(ALGORITHMS)}")
    solve.add_argument("--tau", type=int, default=10, help="row block size")
    solve.add_argument("--tau-col", type=int, help="column block size (default: --tau)")
    solve.add_argument("--alpha", default="1", help="stepsize, e.g. 1.75x or 10.87")
    solve.add_argument("--tol", type=float, default=1e-5)
    solve.add_argument("--max-iters", type=int, default=1_000_000)
    solve.add_argument("--stride", type=int, default=1, help="error check cadence")
    solve.add_argument("--stop", choices=("oracle", "residual", "none"), default="oracle")
    solve.add_argument("--curve", help="write per-checkpoint error CSV here")
    solve.add_argument("--paper-scale", action="store_true")
    common["seed"](solve)
    solve.set_defaults(func=_cmd_solve)

    bench = sub.add_parser("bench", help="multi-trial benchmark sweep to CSV")
    _add_problem_flags(bench)
    bench.add_argument("--algo", required=True, help="comma list, e.g. rek,rdbk,rebk")
    bench.add_argument("--tau", default="10", help="comma list of block sizes")
    bench.add_argument("--alpha", default="1x", help="comma list of stepsizes")
    bench.add_argument("--trials", type=int, default=10)
    bench.add_argument("--tol", type=float, default=1e-5)
    bench.add_argument("--max-iters", type=int, default=1_000_000)
    bench.add_argument("--stride", type=int, default=1)
    bench.add_argument("--out", required=True, help="CSV output path")
    bench.add_argument("--paper-scale", action="store_true")
    common["seed"](bench)
    bench.set_defaults(func=_cmd_bench)

    rates = sub.add_parser("rates", help="print the theoretical constants")
    _add_problem_flags(rates)
    rates.add_argument("--tau", type=int, default=10)
    rates.add_argument("--tau-col", type=int)
    rates.add_argument("--alpha", default="1x", help="comma list of stepsizes")
    rates.add_argument("--csv", help="also write the table as CSV")
    rates.add_argument("--paper-scale", action="store_true")
    common["seed"](rates)
    rates.set_defaults(func=_cmd_rates)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        argv = _apply_config_file(argv)
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse --help
        code = exc.code
        return int(code) if code else EXIT_OK
    except (MatrixMarketError, FileNotFoundError, NotADirectoryError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
