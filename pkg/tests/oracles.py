"""Independent reference computations used to check the package.

None of these import from :mod:`gsss` beyond plain geometry helpers where
noted, so they can catch errors in the paths they check.
"""

import itertools
import math

import numpy as np
from scipy.integrate import trapezoid
from scipy.signal import lfilter


def ellipe_agm(m, tol=1e-16):
    """Complete elliptic integral of the second kind E(m), parameter m = k^2.

    Arithmetic-geometric mean iteration:
    K = pi / (2 a_inf),  E = K (1 - sum_n 2^(n-1) c_n^2),  c_0^2 = m.
    """
    a, b = 1.0, math.sqrt(1.0 - m)
    c2_sum = 0.5 * m
    power = 0.5
    while True:
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        power *= 2.0
        c2_sum += power * c * c
        if abs(c) < tol:
            break
    k = math.pi / (2.0 * a)
    return k * (1.0 - c2_sum)


def rate_elliptic(d):
    """(2/pi) E((d-2)/(d-1)), the closed form of the averaged sqrt(cos^2 + sin^2/(d-1))."""
    return 2.0 / math.pi * ellipe_agm((d - 2) / (d - 1))


def pre_jensen_d3(n=2048):
    """(1/2pi) int E[sqrt(cos^2 w + sin^2 w U^2)] dw with U = cos(theta), theta ~ U[0, 2pi).

    Tensor-product periodic trapezoid on n x n nodes.
    """
    t = 2 * np.pi * np.arange(n) / n
    c2 = np.cos(t) ** 2
    s2 = np.sin(t) ** 2
    u2 = np.cos(t) ** 2
    return float(np.mean(np.sqrt(c2[:, None] + s2[:, None] * u2[None, :])))


def brute_force_w1(a, b):
    """Minimum mean chord cost over all n! matchings."""
    n = len(a)
    cost = np.linalg.norm(np.asarray(a)[:, None, :] - np.asarray(b)[None, :, :], axis=-1)
    best = min(sum(cost[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n)))
    return best / n


def mean_chord_from_pole(d, n=200001):
    """E||e_1 - V|| for V uniform on S^{d-1}, by quadrature over the V_1 marginal.

    V_1 has density proportional to (1 - t^2)^((d-3)/2) on [-1, 1] and
    ||e_1 - V|| = sqrt(2 - 2 V_1).  Substituting t = cos(phi) removes the
    endpoint singularities.
    """
    phi = np.linspace(0.0, np.pi, n)
    w = np.sin(phi) ** (d - 2)
    f = np.sqrt(2.0 - 2.0 * np.cos(phi))
    return float(trapezoid(f * w, phi) / trapezoid(w, phi))


def rejection_vmf_mean(kappa, d, n, rng):
    """Mean of v_1 under density exp(kappa v_1), by naive rejection from the uniform sphere."""
    out = []
    total = 0
    while total < n:
        w = rng.standard_normal((2 * n, d))
        v = w / np.linalg.norm(w, axis=1)[:, None]
        keep = rng.random(2 * n) < np.exp(kappa * (v[:, 0] - 1.0))
        out.append(v[keep, 0])
        total += int(keep.sum())
    x = np.concatenate(out)[:n]
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(n))


def ar1_series(phi, n, rng):
    """Stationary AR(1): x_t = phi x_{t-1} + e_t, started from its stationary law."""
    e = rng.standard_normal(n)
    e[0] /= math.sqrt(1.0 - phi**2)
    return lfilter([1.0], [1.0, -phi], e)
