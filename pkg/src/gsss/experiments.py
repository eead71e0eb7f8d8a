"""Replicated experiments: the mean-IAT dimension sweep and its CSV output.

Work items ``(d, rep)`` each get their own seed ``derive_seed(seed, d, rep)``
and may run in worker processes; results are always returned sorted by
``(d, rep)``.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .diagnostics import mean_iat
from .rng import DEFAULT_SEED, derive_seed
from .sampler import run_chain
from .sphere import basis_vector

log = logging.getLogger(__name__)

SWEEP_DIMS = tuple(2**k for k in range(1, 11))
SWEEP_ITERS = 10**4
SWEEP_REPS = 10

STATISTICS = ("coordinates", "squared")


def worker_count():
    """Worker processes to use: ``GSSS_THREADS`` if set and positive, else the CPU count."""
    raw = os.environ.get("GSSS_THREADS", "0").strip() or "0"
    n = int(raw)
    if n < 0:
        raise ValueError(f"GSSS_THREADS must be >= 0, got {n}")
    return n if n > 0 else (os.cpu_count() or 1)


@dataclass(frozen=True)
class IatRun:
    d: int
    rep: int
    seed: int
    mean_iat: float


@dataclass(frozen=True)
class IatAggregate:
    d: int
    mean_of_means: float
    stddev: float


def _one_run(item):
    d, rep, seed, n_its, statistic = item
    trace = run_chain(basis_vector(d), n_its, "constant", seed)
    states = trace.states if statistic == "coordinates" else trace.states**2
    return IatRun(d, rep, seed, mean_iat(states).mean_iat)


def iat_sweep(dims=SWEEP_DIMS, n_its=SWEEP_ITERS, n_rep=SWEEP_REPS, seed=DEFAULT_SEED,
              statistic="coordinates", workers=None):
    """Mean IAT of constant-target GSSS chains across dimensions.

    Every chain starts at ``e_1`` with no burn-in and keeps all `n_its`
    states, the initial one included.  With ``statistic="coordinates"`` the
    IAT is taken over the raw coordinate series; ``"squared"`` uses the
    squared coordinates instead.

    Returns
    -------
    (list of IatRun, list of IatAggregate)
    """
    if statistic not in STATISTICS:
        raise ValueError(f"statistic must be one of {STATISTICS}")
    dims = sorted(set(int(d) for d in dims))
    if not dims or dims[0] < 2:
        raise ValueError("every dimension must be >= 2")
    if n_its < 8 or n_rep < 1:
        raise ValueError("need n_its >= 8 and n_rep >= 1")
    items = [(d, r, derive_seed(seed, d, r), int(n_its), statistic) for d in dims for r in range(n_rep)]
    workers = worker_count() if workers is None else workers
    runs = []
    if workers <= 1:
        results = map(_run_checked, items)
    else:
        pool = ProcessPoolExecutor(max_workers=min(workers, len(items)))
        results = pool.map(_run_checked, items, chunksize=1)
    try:
        for run in results:
            log.info("d=%d rep=%d mean_iat=%.4f", run.d, run.rep, run.mean_iat)
            runs.append(run)
    finally:
        if workers > 1:
            pool.shutdown()
    runs.sort(key=lambda r: (r.d, r.rep))
    aggregate = []
    for d in dims:
        vals = np.array([r.mean_iat for r in runs if r.d == d])
        sd = float(np.std(vals, ddof=1)) if vals.size > 1 else 0.0
        aggregate.append(IatAggregate(d, float(np.mean(vals)), sd))
    return runs, aggregate


def _run_checked(item):
    d, rep = item[:2]
    try:
        return _one_run(item)
    except Exception as exc:
        raise RuntimeError(f"iat-sweep failed at d={d}, rep={rep}: {exc}") from exc


def runs_to_csv(runs):
    lines = ["d,rep,seed,mean_iat"]
    lines += [f"{r.d},{r.rep},{r.seed},{r.mean_iat:.17g}" for r in runs]
    return "\n".join(lines) + "\n"


def aggregate_to_csv(aggregate):
    lines = ["d,mean_of_means,stddev"]
    lines += [f"{a.d},{a.mean_of_means:.17g},{a.stddev:.17g}" for a in aggregate]
    return "\n".join(lines) + "\n"
