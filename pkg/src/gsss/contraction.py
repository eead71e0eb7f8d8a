"""Wasserstein contraction of GSSS for a constant target.

Analytic side: the contraction rate bound

    rho(d) = (1/2pi) int_0^{2pi} sqrt(cos^2 w + sin^2 w / (d-1)) dw,

its d -> infinity limit 2/pi and the spectral gap bound ``1 - rho``.

Monte Carlo side: the rotation coupling between ``P(e_1, .)`` and
``P(y_alpha, .)`` with ``y_alpha = R_alpha e_1``, whose coupled cost ratio
reduces to ``E sqrt(v_1^2 + v_2^2)`` for ``v ~ P(e_1, .)``, and an empirical
W1 decay experiment started from a point mass.
"""

import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .errors import InvalidAlpha, InvalidDimension, OutOfRange, SizeMismatch, TooLarge
from .rng import DEFAULT_SEED, block_rngs, derive_seed, make_rng
from .sampler import step_constant_batch
from .sphere import TWO_PI, basis_vector, rotate_alpha, sample_uniform_sphere

QUAD_NODES = 4096
MAX_OT_POINTS = 2048
MC_BLOCKS = 16
FLOOR_REPS = 8
NOISE_REPS = 32

_omega = TWO_PI * np.arange(QUAD_NODES) / QUAD_NODES
_COS2 = np.cos(_omega) ** 2
_SIN2 = np.sin(_omega) ** 2
del _omega


def rate_bound(d):
    """Contraction rate bound for dimension `d` (``d >= 2``).

    Periodic trapezoidal rule on 4096 equispaced nodes.  The integrand is
    analytic and 2pi-periodic, so the error is at rounding level up to
    ``d ~ 10**4`` and stays below 1e-8 at ``d = 10**6``, where the integrand
    develops a near-kink at ``w = pi/2``.  ``d = 2`` returns exactly 1.
    """
    if int(d) != d or d < 2:
        raise InvalidDimension(f"d must be an integer >= 2, got {d!r}")
    if d == 2:
        return 1.0
    return float(np.mean(np.sqrt(_COS2 + _SIN2 / (d - 1))))


def rate_bound_asymptote():
    """Limit of :func:`rate_bound` as ``d -> infinity``: the mean of ``|cos|``."""
    return 2.0 / math.pi


def spectral_gap_lower_bound(rho):
    """Lower bound ``1 - rho`` on the L2 spectral gap of a kernel contracting at rate `rho`."""
    rho = float(rho)
    if not 0.0 <= rho <= 1.0:
        raise OutOfRange(f"rho must lie in [0, 1], got {rho}")
    return 1.0 - rho


@dataclass(frozen=True)
class RateRow:
    d: int
    rho: float
    gap_lower: float
    asymptote_excess: float


@dataclass(frozen=True)
class RateTable:
    rows: tuple

    def __post_init__(self):
        rho = [r.rho for r in self.rows]
        if any(b >= a for a, b in zip(rho, rho[1:])):
            raise ValueError("rate table rows must be strictly decreasing in rho")

    def to_csv(self):
        lines = ["d,rho,gap_lower,asymptote_excess"]
        for r in self.rows:
            lines.append(f"{r.d},{r.rho:.17g},{r.gap_lower:.17g},{r.asymptote_excess:.17g}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return json.dumps({"asymptote": rate_bound_asymptote(),
                           "rows": [asdict(r) for r in self.rows]}, indent=2) + "\n"


def rate_table(dims):
    """Tabulate :func:`rate_bound` and derived quantities for sorted dimensions."""
    asym = rate_bound_asymptote()
    rows = []
    for d in sorted(set(int(d) for d in dims)):
        rho = rate_bound(d)
        rows.append(RateRow(d, rho, spectral_gap_lower_bound(rho), rho - asym))
    return RateTable(tuple(rows))


def coupled_chord_factor(alpha, v):
    """``||v - R_alpha v||`` via the closed form ``sqrt(2 (1 - cos a) (v_1^2 + v_2^2))``.

    Evaluated as ``2 |sin(a/2)| sqrt(v_1^2 + v_2^2)``, which avoids the
    cancellation in ``1 - cos a`` for small angles.  Accepts a single vector
    or an ``(n, d)`` array.
    """
    v = np.asarray(v, dtype=float)
    if v.shape[-1] < 2:
        raise InvalidDimension("need d >= 2")
    return 2.0 * abs(np.sin(0.5 * alpha)) * np.hypot(v[..., 0], v[..., 1])


def _check_alpha(alpha):
    alpha = float(alpha)
    if not 0.0 < alpha < TWO_PI:
        raise InvalidAlpha(f"alpha must lie in (0, 2pi), got {alpha}")
    return alpha


def coupled_ratios(alpha, v):
    """Per-sample coupled cost ratios ``||v - R_alpha v|| / ||e_1 - y_alpha||``.

    Computed directly from the rotation, not from the closed form.
    """
    alpha = _check_alpha(alpha)
    v = np.asarray(v, dtype=float)
    x = basis_vector(v.shape[-1])
    base = np.linalg.norm(x - rotate_alpha(alpha, x))
    return np.linalg.norm(v - rotate_alpha(alpha, v), axis=-1) / base


def sample_kernel_from(x, n, seed):
    """``n`` independent draws from ``P(x, .)``, generated in fixed-size blocks.

    Each of the 16 blocks has its own stream derived from `seed`, so the
    output depends only on ``(x, n, seed)``.
    """
    x = np.asarray(x, dtype=float)
    sizes = np.full(MC_BLOCKS, n // MC_BLOCKS)
    sizes[: n % MC_BLOCKS] += 1
    parts = [step_constant_batch(np.broadcast_to(x, (m, x.shape[0])), rng)
             for m, rng in zip(sizes, block_rngs(seed, MC_BLOCKS)) if m > 0]
    return np.concatenate(parts)


@dataclass(frozen=True)
class CouplingReport:
    d: int
    alpha: float
    n_samples: int
    estimate: float
    std_error: float
    rate_bound: float
    seed: int

    def to_json(self):
        return json.dumps(asdict(self), indent=2) + "\n"


def estimate_dobrushin_coupled(d, alpha, n_samples, seed=DEFAULT_SEED):
    """Monte Carlo estimate of the rotation-coupling bound on the Dobrushin coefficient.

    Draws ``v ~ P(e_1, .)`` and averages ``sqrt(v_1^2 + v_2^2)``, which equals
    the coupled ratio ``||v - R_alpha v|| / ||e_1 - y_alpha||`` for every
    `alpha`.  The alpha-dependent ratios are computed as well and must agree
    sample by sample to 1e-10.

    Parameters
    ----------
    d : int
        Dimension, ``>= 2``.
    alpha : float
        Rotation angle in ``(0, 2pi)``; only enters the cross-check.
    n_samples : int
        ``>= 2``.
    seed : int

    Returns
    -------
    CouplingReport
    """
    if int(d) != d or d < 2:
        raise InvalidDimension(f"d must be an integer >= 2, got {d!r}")
    alpha = _check_alpha(alpha)
    n_samples = int(n_samples)
    if n_samples < 2:
        raise ValueError("n_samples must be >= 2")
    v = sample_kernel_from(basis_vector(d), n_samples, seed)
    values = np.hypot(v[:, 0], v[:, 1])
    ratios = coupled_ratios(alpha, v)
    worst = float(np.max(np.abs(ratios - values)))
    if worst > 1e-10:
        raise RuntimeError(f"coupled ratio deviates from sqrt(v1^2+v2^2) by {worst:.3e}")
    return CouplingReport(
        d=int(d), alpha=alpha, n_samples=n_samples,
        estimate=math.fsum(values) / n_samples,
        std_error=float(np.std(values, ddof=1) / math.sqrt(n_samples)),
        rate_bound=rate_bound(d), seed=int(seed),
    )


def empirical_wasserstein1(a, b):
    """Exact W1 (chord metric) between two equal-size uniform empirical measures.

    Solves the n x n assignment problem on chord distances with a
    shortest-augmenting-path solver.  Limited to ``n <= 2048``.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        raise SizeMismatch(f"point sets differ in shape: {a.shape} vs {b.shape}")
    n = a.shape[0]
    if n > MAX_OT_POINTS:
        raise TooLarge(f"n = {n} exceeds the {MAX_OT_POINTS}-point limit")
    # fixed argument order makes the result exactly symmetric
    if b.tobytes() < a.tobytes():
        a, b = b, a
    cost = cdist(a, b)
    rows, cols = linear_sum_assignment(cost)
    return math.fsum(cost[rows, cols]) / n


@dataclass(frozen=True)
class DecayResult:
    d: int
    n_samples: int
    seed: int
    w1: np.ndarray
    floor: float
    floor_sd: float = 0.0

    @property
    def steps(self):
        return np.arange(self.w1.shape[0])

    @property
    def excess(self):
        return self.w1 - self.floor

    def rows(self):
        return list(zip(self.steps.tolist(), self.w1.tolist()))

    def to_csv(self):
        lines = ["step,w1,floor,excess"]
        for k, (w, e) in enumerate(zip(self.w1, self.excess)):
            lines.append(f"{k},{w:.17g},{self.floor:.17g},{e:.17g}")
        return "\n".join(lines) + "\n"


def wasserstein_floor(d, n_samples, seed, reps=FLOOR_REPS, noise_reps=NOISE_REPS):
    """Empirical W1 between independent pairs of uniform clouds of size `n_samples`.

    Returns the mean over the first `reps` pairs and the standard deviation
    of a single pair's value, estimated from ``max(reps, noise_reps)`` pairs.
    """
    vals = []
    for r in range(max(reps, noise_reps)):
        rng = make_rng(derive_seed(seed, 2, r))
        vals.append(empirical_wasserstein1(sample_uniform_sphere(d, rng, n_samples),
                                           sample_uniform_sphere(d, rng, n_samples)))
    return math.fsum(vals[:reps]) / reps, float(np.std(vals, ddof=1))


def wasserstein_decay_experiment(d, n_samples, n_steps, seed=DEFAULT_SEED):
    """Empirical W1 distance to the uniform distribution along a GSSS run.

    `n_samples` chains start at ``e_1`` and move with the constant-target
    kernel.  After each step the cloud is compared with a fresh uniform
    reference cloud of the same size.  The finite-sample floor is the W1
    between two independent uniform clouds, averaged over 8 repetitions; its
    single-pair spread (``floor_sd``) is estimated from 32 pairs.

    Returns
    -------
    DecayResult
        ``w1[k]`` for steps ``k = 0..n_steps`` and the floor.
    """
    if int(d) != d or d < 2:
        raise InvalidDimension(f"d must be an integer >= 2, got {d!r}")
    if n_samples > MAX_OT_POINTS:
        raise TooLarge(f"n_samples = {n_samples} exceeds {MAX_OT_POINTS}")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    chain_rng = make_rng(derive_seed(seed, 0))
    ref_rng = make_rng(derive_seed(seed, 1))
    cloud = np.tile(basis_vector(d), (n_samples, 1))
    w1 = []
    for k in range(n_steps + 1):
        if k > 0:
            cloud = step_constant_batch(cloud, chain_rng)
        w1.append(empirical_wasserstein1(cloud, sample_uniform_sphere(d, ref_rng, n_samples)))
    floor, floor_sd = wasserstein_floor(d, n_samples, seed)
    return DecayResult(d=int(d), n_samples=int(n_samples), seed=int(seed),
                       w1=np.array(w1), floor=floor, floor_sd=floor_sd)


def decay_step_checks(result, rho, first=1, last=5, slack=0.05, sigmas=6.0):
    """Check per-step decay of the excess W1 against the rate `rho`.

    For each step ``k`` in ``first..last-1``: while ``excess[k]`` is clearly
    above the floor (more than `sigmas` noise units), the ratio
    ``excess[k+1] / excess[k]`` must not exceed ``rho + slack``.  Once the
    excess is inside the noise band the cloud has reached the floor, and the
    check is that ``excess[k+1]`` stays inside the band.  One noise unit is
    the spread of a single cloud-vs-cloud W1 value combined with the
    uncertainty of the averaged floor.  The band is wide because the
    cloud-vs-cloud W1 is right-skewed: at d = 3, n = 1024 its skewness is
    about 1.2 and its 99th percentile sits 3.4 standard deviations above the
    mean.

    Returns
    -------
    list of (k, ratio or None, passed)
    """
    band = sigmas * result.floor_sd * math.sqrt(1.0 + 1.0 / FLOOR_REPS)
    e = result.excess
    out = []
    for k in range(first, last):
        if e[k] > band:
            ratio = float(e[k + 1] / e[k])
            out.append((k, ratio, ratio <= rho + slack))
        else:
            out.append((k, None, bool(e[k + 1] <= band)))
    return out
