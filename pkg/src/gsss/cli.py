"""Command-line front end: ``gsss <command> [options]``.

Commands
--------
rate-table   contraction rate bound per dimension
iat-sweep    mean-IAT sweep over dimensions (replicated seeded chains)
couple       rotation-coupling Monte Carlo estimate
sample       dump a raw chain (CSV + JSON sidecar)
decay        empirical W1 decay from a point mass

Output goes to ``--output`` (stdout by default); progress and errors go to
stderr.  On failure the process exits with status 1 and prints a JSON
object ``{"error": ..., "message": ...}`` on stderr.
"""

import argparse
import json
import logging
import re
import sys
from dataclasses import asdict
from pathlib import Path

from . import contraction, experiments
from .errors import InvalidRange
from .rng import DEFAULT_SEED
from .sampler import BUILTIN_DENSITIES, run_chain, write_trace
from .sphere import basis_vector

log = logging.getLogger("gsss")

MAX_TABLE_DIM = 10**5

_RANGE = re.compile(r"^(\d+)\.\.(\d+)(?:\s+step\s+(\d+)(x?))?$")


def parse_dims(text):
    """Parse ``"2,4,8"``, ``"3..1000"``, ``"3..99 step 2"`` or ``"2..1024 step 2x"``.

    A trailing ``x`` makes the step multiplicative.
    """
    text = text.strip()
    m = _RANGE.match(text)
    if m is None:
        try:
            return [int(tok) for tok in text.split(",") if tok.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"cannot parse dimension list {text!r}") from None
    lo, hi = int(m.group(1)), int(m.group(2))
    step = int(m.group(3) or 1)
    if lo > hi or step < 1 or (m.group(4) and step < 2):
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}")
    if m.group(4):
        out, d = [], lo
        while d <= hi:
            out.append(d)
            d *= step
        return out
    return list(range(lo, hi + 1, step))


def _emit(args, text, path=None):
    path = path or args.output
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def cmd_rate_table(args):
    dims = args.dims if args.dims is not None else ([args.dim] if args.dim else parse_dims("3..1000"))
    if not dims or min(dims) < 2 or max(dims) > MAX_TABLE_DIM:
        raise InvalidRange(f"dimensions must lie in [2, {MAX_TABLE_DIM}]")
    table = contraction.rate_table(dims)
    _emit(args, table.to_json() if args.format == "json" else table.to_csv())


def cmd_iat_sweep(args):
    dims = args.dims if args.dims is not None else ([args.dim] if args.dim else list(experiments.SWEEP_DIMS))
    runs, agg = experiments.iat_sweep(dims, args.iters, args.reps, args.seed, statistic=args.statistic)
    if args.format == "json":
        _emit(args, _json({"statistic": args.statistic, "n_its": args.iters, "n_rep": args.reps,
                           "seed": args.seed, "runs": [asdict(r) for r in runs],
                           "aggregate": [asdict(a) for a in agg]}))
        return
    runs_csv, agg_csv = experiments.runs_to_csv(runs), experiments.aggregate_to_csv(agg)
    if args.output in (None, "-"):
        _emit(args, runs_csv + "\n" + agg_csv if args.aggregate is None else runs_csv)
    else:
        _emit(args, runs_csv)
    agg_path = args.aggregate
    if agg_path is None and args.output not in (None, "-"):
        out = Path(args.output)
        agg_path = str(out.with_name(out.stem + "_aggregate" + out.suffix))
    if agg_path is not None:
        _emit(args, agg_csv, agg_path)


def cmd_couple(args):
    report = contraction.estimate_dobrushin_coupled(args.dim or 3, args.alpha, args.samples, args.seed)
    if args.format == "json":
        _emit(args, report.to_json())
    else:
        fields = asdict(report)
        vals = [f"{v:.17g}" if isinstance(v, float) else str(v) for v in fields.values()]
        _emit(args, ",".join(fields) + "\n" + ",".join(vals) + "\n")


def cmd_sample(args):
    d = args.dim or 3
    kernel = "constant"
    if args.density is not None:
        kernel = BUILTIN_DENSITIES[args.density](args.kappa)
    trace = run_chain(basis_vector(d), args.iters, kernel, args.seed)
    if args.format == "json":
        meta = trace.metadata()
        meta["rejection_counts"] = trace.rejection_counts.tolist()
        meta["states"] = trace.states.tolist()
        _emit(args, _json(meta))
        return
    sidecar = args.sidecar
    if sidecar is None and args.output not in (None, "-"):
        sidecar = str(Path(args.output).with_suffix(".json"))
    if args.output in (None, "-"):
        write_trace(trace, sys.stdout, sidecar)
    else:
        write_trace(trace, args.output, sidecar)


def cmd_decay(args):
    result = contraction.wasserstein_decay_experiment(args.dim or 3, args.samples, args.steps, args.seed)
    if args.format == "json":
        rows = [{"step": int(k), "w1": float(w), "floor": result.floor, "excess": float(e)}
                for k, w, e in zip(result.steps, result.w1, result.excess)]
        _emit(args, _json({"d": result.d, "n_samples": result.n_samples, "seed": result.seed,
                           "floor_sd": result.floor_sd, "rows": rows}))
    else:
        _emit(args, result.to_csv())


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", "--dim", type=int, help="single dimension d >= 2")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="master seed (default 42)")
    common.add_argument("--output", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(prog="gsss", description=__doc__.split("\n")[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rate-table", parents=[common], help="contraction rate bound per dimension")
    p.add_argument("--dims", type=parse_dims, help="dimension list or range (default 3..1000)")
    p.set_defaults(func=cmd_rate_table)

    p = sub.add_parser("iat-sweep", parents=[common], help="mean-IAT sweep over dimensions")
    p.add_argument("--dims", type=parse_dims, help="default 2..1024 step 2x")
    p.add_argument("--iters", type=int, default=experiments.SWEEP_ITERS)
    p.add_argument("--reps", type=int, default=experiments.SWEEP_REPS)
    p.add_argument("--statistic", choices=experiments.STATISTICS, default="coordinates",
                   help="IAT of raw or squared coordinates")
    p.add_argument("--aggregate", default=None, help="aggregate CSV path")
    p.set_defaults(func=cmd_iat_sweep)

    p = sub.add_parser("couple", parents=[common], help="rotation-coupling estimate")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=10**6)
    p.set_defaults(func=cmd_couple)

    p = sub.add_parser("sample", parents=[common], help="dump a raw chain")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--density", choices=sorted(BUILTIN_DENSITIES),
                   help="use ideal GSSS for a built-in density (default: constant-target kernel)")
    p.add_argument("--kappa", type=float, default=None, help="concentration for exp-linear")
    p.add_argument("--sidecar", default=None, help="JSON sidecar path")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("decay", parents=[common], help="empirical W1 decay from a point mass")
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_decay)
    return parser


def _validate(args):
    for name in ("iters", "reps", "samples", "steps"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            raise InvalidRange(f"--{name} must be positive")
    if args.dim is not None and args.dim < 2:
        raise InvalidRange("--dim must be >= 2")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(message)s")
    try:
        _validate(args)
        args.func(args)
    except Exception as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                     "command": args.command}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
