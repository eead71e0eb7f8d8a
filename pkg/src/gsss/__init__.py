"""Geodesic slice sampling on the unit sphere.

Sampler kernels, contraction-rate analysis for the constant target, and
autocorrelation diagnostics.
"""

from .contraction import (
    CouplingReport,
    DecayResult,
    RateTable,
    coupled_chord_factor,
    coupled_ratios,
    decay_step_checks,
    empirical_wasserstein1,
    estimate_dobrushin_coupled,
    rate_bound,
    rate_bound_asymptote,
    rate_table,
    sample_kernel_from,
    spectral_gap_lower_bound,
    wasserstein_decay_experiment,
)
from .diagnostics import IatReport, autocorrelation, iat, mean_iat
from .errors import *  # noqa: F401,F403
from .experiments import iat_sweep
from .rng import derive_seed, make_rng
from .sampler import (
    ChainTrace,
    TargetDensity,
    constant_density,
    exp_linear_density,
    gsss_step_constant,
    gsss_step_ideal,
    hemisphere_density,
    read_trace,
    run_chain,
    step_constant_batch,
    write_trace,
)
from .sphere import (
    Geodesic,
    basis_vector,
    chord_distance,
    geodesic_point,
    normalize,
    rotate_alpha,
    sample_tangent_uniform,
    sample_uniform_sphere,
)

__version__ = "0.1.0"
