"""Geodesic slice sampling (GSSS) transitions and a seeded chain runner.

Two kernels are provided:

* :func:`gsss_step_constant` -- the transition for a constant target
  density, where the slice is the whole sphere: pick a uniformly random
  great circle through the current state, then a uniformly random point on
  it.
* :func:`gsss_step_ideal` -- ideal GSSS for an arbitrary unnormalized
  density: draw a threshold below the current density value, pick a random
  great circle through the current state and sample uniformly from the part
  of that circle lying above the threshold.  The on-circle draw is done by
  rejection from the uniform angle distribution.
"""

import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    ChainStepError,
    RejectionBudgetExceeded,
    ZeroDensityAtState,
)
from .rng import DEFAULT_SEED, make_rng
from .sphere import TWO_PI, normalize, sample_tangent_uniform

REJECTION_BUDGET = 10**6
THRESHOLD_RETRIES = 3


@dataclass(frozen=True)
class TargetDensity:
    """Unnormalized density on the sphere.

    `eval` maps a unit vector to a finite nonnegative float.
    """

    eval: Callable[[np.ndarray], float]
    label: str = "custom"

    def __call__(self, v):
        val = float(self.eval(v))
        if not (np.isfinite(val) and val >= 0.0):
            raise ValueError(f"density {self.label!r} returned {val!r}; must be finite and >= 0")
        return val


def constant_density(c=1.0):
    c = float(c)
    if not c > 0:
        raise ValueError("constant density must be positive")
    return TargetDensity(lambda v: c, label="constant")


def hemisphere_density():
    """Indicator of the open hemisphere ``{v : v_1 > 0}``."""
    return TargetDensity(lambda v: 1.0 if v[0] > 0 else 0.0, label="hemisphere")


def exp_linear_density(kappa=1.0):
    """``exp(kappa * v_1)``, a von Mises-Fisher shape around ``e_1``."""
    kappa = float(kappa)
    return TargetDensity(lambda v: float(np.exp(kappa * v[0])), label=f"exp-linear(kappa={kappa:g})")


BUILTIN_DENSITIES = {
    "constant": lambda kappa=None: constant_density(),
    "hemisphere": lambda kappa=None: hemisphere_density(),
    "exp-linear": lambda kappa=1.0: exp_linear_density(1.0 if kappa is None else kappa),
}


def _constant_step_parts(x, rng):
    z = sample_tangent_uniform(x, rng)
    omega = rng.uniform(0.0, TWO_PI)
    y = np.cos(omega) * x + np.sin(omega) * z
    return z, omega, y / np.linalg.norm(y)


def gsss_step_constant(x, rng):
    """One GSSS transition for a constant target density.

    Consumes exactly one tangent draw and one angle draw from `rng`.
    """
    return _constant_step_parts(np.asarray(x, dtype=float), rng)[2]


def step_constant_batch(states, rng):
    """Advance every row of ``states`` by one constant-target GSSS step.

    Same transition as :func:`gsss_step_constant`, vectorized over rows.  The
    random stream is consumed in a different order, so rows are not bitwise
    equal to repeated scalar steps.
    """
    x = np.asarray(states, dtype=float)
    n, d = x.shape
    w = rng.standard_normal((n, d))
    w -= np.einsum("ij,ij->i", x, w)[:, None] * x
    norms = np.linalg.norm(w, axis=1)
    bad = norms <= 1e-12
    while np.any(bad):
        fresh = rng.standard_normal((int(bad.sum()), d))
        fresh -= np.einsum("ij,ij->i", x[bad], fresh)[:, None] * x[bad]
        w[bad] = fresh
        norms[bad] = np.linalg.norm(fresh, axis=1)
        bad = norms <= 1e-12
    z = w / norms[:, None]
    omega = rng.uniform(0.0, TWO_PI, size=n)
    y = np.cos(omega)[:, None] * x + np.sin(omega)[:, None] * z
    return y / np.linalg.norm(y, axis=1)[:, None]


def _draw_threshold(level, rng):
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    return level * u


def _ideal_step(x, target, rng):
    level = target(x)
    if level <= 0.0:
        raise ZeroDensityAtState(f"target {target.label!r} vanishes at the current state")
    rejected = 0
    for _ in range(THRESHOLD_RETRIES + 1):
        t = _draw_threshold(level, rng)
        z = sample_tangent_uniform(x, rng)
        for _ in range(REJECTION_BUDGET):
            omega = rng.uniform(0.0, TWO_PI)
            y = np.cos(omega) * x + np.sin(omega) * z
            y /= np.linalg.norm(y)
            if target(y) > t:
                return y, rejected
            rejected += 1
    raise RejectionBudgetExceeded(
        f"no point above the threshold after {THRESHOLD_RETRIES + 1} x {REJECTION_BUDGET} proposals "
        f"for target {target.label!r}")


def gsss_step_ideal(x, target, rng):
    """One ideal GSSS transition for the unnormalized density `target`.

    Parameters
    ----------
    x : ndarray
        Current state, a unit vector with ``target(x) > 0``.
    target : TargetDensity
    rng : numpy.random.Generator

    Returns
    -------
    ndarray
        The next state, uniform on the intersection of the chosen great
        circle with the slice ``{v : target(v) > t}``.

    Raises
    ------
    ZeroDensityAtState
        If ``target(x) == 0``.
    RejectionBudgetExceeded
        If 10**6 angle proposals fail for each of 4 fresh thresholds.
    """
    return _ideal_step(np.asarray(x, dtype=float), target, rng)[0]


@dataclass(frozen=True)
class ChainTrace:
    """States of one seeded chain run, row 0 being the initial state."""

    states: np.ndarray
    seed: int
    kernel_label: str
    rejection_counts: np.ndarray = field(default=None)

    def __post_init__(self):
        states = np.array(self.states, dtype=float)
        if states.ndim != 2 or states.shape[0] < 1:
            raise ValueError("states must be a non-empty (n_its, d) array")
        norms = np.linalg.norm(states, axis=1)
        if np.max(np.abs(norms - 1.0)) > 1e-10:
            raise ValueError("every state must have unit norm")
        counts = self.rejection_counts
        counts = np.zeros(states.shape[0], dtype=np.int64) if counts is None else np.array(counts, dtype=np.int64)
        if counts.shape != (states.shape[0],):
            raise ValueError("rejection_counts needs one entry per state")
        states.flags.writeable = False
        counts.flags.writeable = False
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "rejection_counts", counts)

    @property
    def n_its(self):
        return self.states.shape[0]

    @property
    def d(self):
        return self.states.shape[1]

    def metadata(self):
        return {"seed": int(self.seed), "d": self.d, "n_its": self.n_its,
                "kernel_label": self.kernel_label}


def kernel_label(kernel):
    if isinstance(kernel, TargetDensity):
        return f"ideal({kernel.label})"
    if kernel == "constant":
        return "constant"
    raise ValueError(f"unknown kernel {kernel!r}; use 'constant' or a TargetDensity")


def run_chain(init, n_its, kernel="constant", seed=DEFAULT_SEED):
    """Run a GSSS chain for ``n_its`` states (including `init`).

    Parameters
    ----------
    init : array_like
        Initial state; used as-is when its norm is within 1e-12 of one,
        renormalized otherwise.
    n_its : int
        Number of rows in the returned trace, ``>= 1``.
    kernel : "constant" or TargetDensity
        ``"constant"`` selects :func:`gsss_step_constant`; a
        :class:`TargetDensity` selects ideal GSSS for that density.
    seed : int
        64-bit seed of the chain's Philox stream.

    Returns
    -------
    ChainTrace
    """
    n_its = int(n_its)
    if n_its < 1:
        raise ValueError("n_its must be >= 1")
    label = kernel_label(kernel)
    rng = make_rng(seed)
    x = np.asarray(init, dtype=float)
    if x.ndim != 1 or abs(np.linalg.norm(x) - 1.0) > 1e-12:
        x = normalize(init)
    states = np.empty((n_its, x.shape[0]))
    counts = np.zeros(n_its, dtype=np.int64)
    states[0] = x
    for k in range(1, n_its):
        try:
            if kernel == "constant":
                x = _constant_step_parts(x, rng)[2]
            else:
                x, counts[k] = _ideal_step(x, kernel, rng)
        except Exception as exc:
            raise ChainStepError(k, exc) from exc
        states[k] = x
    return ChainTrace(states, seed=int(seed), kernel_label=label, rejection_counts=counts)


def write_trace(trace, csv_file, json_file=None):
    """Write `trace` as CSV (``iter,c0,...``) plus an optional JSON sidecar.

    Floats carry 17 significant digits so the CSV round-trips exactly.  The
    sidecar holds the run metadata and the per-step rejection counts.
    """
    header = "iter," + ",".join(f"c{i}" for i in range(trace.d))
    lines = [header]
    for k, row in enumerate(trace.states):
        lines.append(str(k) + "," + ",".join(f"{c:.17g}" for c in row))
    _write_text(csv_file, "\n".join(lines) + "\n")
    if json_file is not None:
        meta = trace.metadata()
        meta["rejection_counts"] = trace.rejection_counts.tolist()
        _write_text(json_file, json.dumps(meta, indent=2) + "\n")


def read_trace(csv_file, json_file):
    data = np.loadtxt(csv_file, delimiter=",", skiprows=1, ndmin=2)
    with open(json_file, encoding="utf-8") as fh:
        meta = json.load(fh)
    return ChainTrace(data[:, 1:], seed=meta["seed"], kernel_label=meta["kernel_label"],
                      rejection_counts=meta.get("rejection_counts"))


def _write_text(target, text):
    if hasattr(target, "write"):
        target.write(text)
        return
    with open(target, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
