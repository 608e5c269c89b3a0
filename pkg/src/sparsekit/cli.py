"""Command line interface.

Subcommands: ``noiseless`` and ``noisy`` run the Monte Carlo grids and
write CSV; ``coherence`` prints a dictionary's coherence; ``bounds``
prints the evaluated success conditions for one parameter point.

Exit codes: 0 success, 1 invalid arguments, 2 runtime failure.
"""

import argparse
import os
import sys

import numpy as np

from .dictionaries import DIRAC_DCT, DIRAC_DCT_RANDOM, coherence
from .experiments import (
    ExperimentConfig,
    dictionary_for,
    run_noiseless,
    run_noisy,
    write_csv,
)
from .signals import geometric_profile, snr_to_nu
from .theory import (
    geometric_to_decay_params,
    noiseless_condition,
    noisy_conditions,
    recoverable_count,
    worst_case_conditions,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the CLI contract wants 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"error: {message}")


def _add_shared(sub, need_seed):
    sub.add_argument("--d", type=int, default=128, help="ambient dimension (default 128)")
    sub.add_argument(
        "--dict", dest="dict_kind", choices=[DIRAC_DCT, DIRAC_DCT_RANDOM],
        default=DIRAC_DCT, help="dictionary construction",
    )
    sub.add_argument("--seed", type=int, required=need_seed, default=None if need_seed else 0,
                     help="master seed")


def _add_grid(sub):
    sub.add_argument("--alpha-min", type=float, default=0.75)
    sub.add_argument("--alpha-max", type=float, default=1.0)
    sub.add_argument("--alpha-steps", type=int, default=11)
    sub.add_argument("--s-min", type=int, default=2)
    sub.add_argument("--s-max", type=int, default=48)
    sub.add_argument("--s-step", type=int, default=2)
    sub.add_argument("--trials", type=int, default=1000)
    sub.add_argument("--out", required=True, help="output CSV path")
    sub.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                     help="parallel workers (default: available cores)")


def build_parser():
    parser = _Parser(prog="sparsekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_noiseless = sub.add_parser("noiseless", help="full-support recovery phase diagram")
    _add_shared(p_noiseless, need_seed=True)
    _add_grid(p_noiseless)
    p_noiseless.add_argument(
        "--algorithms", default="bp,omp,thr",
        help="comma-separated subset of bp,omp,thr (default all)",
    )

    p_noisy = sub.add_parser("noisy", help="noisy partial-recovery grid (OMP)")
    _add_shared(p_noisy, need_seed=True)
    _add_grid(p_noisy)
    p_noisy.add_argument("--snr", type=float, required=True, help="signal-to-noise ratio")

    p_coh = sub.add_parser("coherence", help="print the dictionary coherence")
    _add_shared(p_coh, need_seed=False)

    p_bounds = sub.add_parser("bounds", help="evaluate the success conditions")
    _add_shared(p_bounds, need_seed=False)
    p_bounds.add_argument("--S", type=int, required=True)
    p_bounds.add_argument("--alpha", type=float, required=True)
    p_bounds.add_argument("--m", type=float, default=1.0)
    p_bounds.add_argument("--t", type=int, default=1)
    p_bounds.add_argument("--snr", type=float, default=None)
    return parser


def _grid_config(args, snr=None, algorithms=None):
    if args.alpha_steps < 1 or args.s_step < 1:
        raise ValueError("grid steps must be positive")
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_steps)
    sparsities = range(args.s_min, args.s_max + 1, args.s_step)
    return ExperimentConfig(
        d=args.d,
        dict_kind=args.dict_kind,
        alpha_grid=tuple(alphas),
        s_grid=tuple(sparsities),
        trials=args.trials,
        master_seed=args.seed,
        snr=snr,
        algorithms=algorithms if algorithms is not None else ("omp",),
    )


def _cmd_noiseless(args):
    algorithms = tuple(a.strip() for a in args.algorithms.split(",") if a.strip())
    cfg = _grid_config(args, algorithms=algorithms)
    grid = run_noiseless(cfg, jobs=args.jobs)
    write_csv(grid, args.out)
    print(f"wrote {len(grid.cells)} cells to {args.out}")
    return 0


def _cmd_noisy(args):
    cfg = _grid_config(args, snr=args.snr, algorithms=("omp",))
    grid = run_noisy(cfg, jobs=args.jobs)
    write_csv(grid, args.out)
    print(f"wrote {len(grid.cells)} cells to {args.out}")
    return 0


def _cmd_coherence(args):
    dictionary = dictionary_for(args.dict_kind, args.d, args.seed)
    print(f"{coherence(dictionary):.6g}")
    return 0


def _report_lines(reports):
    rows = [("condition", "lhs", "threshold", "satisfied", "failure_prob")]
    for r in reports:
        rows.append(
            (r.label, f"{r.lhs:.6g}", f"{r.threshold:.6g}", "yes" if r.satisfied else "no",
             f"{r.failure_probability:.6g}")
        )
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    return ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in rows]


def _cmd_bounds(args):
    dictionary = dictionary_for(args.dict_kind, args.d, args.seed)
    mu = coherence(dictionary)
    profile = geometric_profile(args.S, args.alpha)
    reports = list(worst_case_conditions(args.S, mu, profile))

    if args.alpha < 1.0:
        if args.t == 1:
            params = geometric_to_decay_params(args.alpha, args.S, args.m, dictionary.K, mu)
        else:
            # c_{i+t}/c_i = alpha^t for a geometric profile.
            from .theory import DecayParams

            params = DecayParams(
                t=args.t, lam=args.S * (1.0 - args.alpha ** args.t), m=args.m,
                S=args.S, K=dictionary.K, mu=mu,
            )
        reports.append(noiseless_condition(params))
        if args.snr is not None:
            nu = snr_to_nu(args.snr, args.d)
            s = max(1, recoverable_count(profile, nu, dictionary.K))
            reports.extend(noisy_conditions(params, s, nu, profile))
    else:
        print("note: alpha = 1 has no decay; only the worst-case conditions apply")

    print(f"d={args.d} K={dictionary.K} mu={mu:.6g} S={args.S} alpha={args.alpha:g} m={args.m:g}")
    for line in _report_lines(reports):
        print(line)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 1
        return 0 if exc.code in (0, None) else 1
    handlers = {
        "noiseless": _cmd_noiseless,
        "noisy": _cmd_noisy,
        "coherence": _cmd_coherence,
        "bounds": _cmd_bounds,
    }
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        # Bad parameter combinations surface as usage errors.
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
