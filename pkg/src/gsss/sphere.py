"""Geometry and sampling primitives on the unit sphere S^{d-1}.

Points on the sphere are plain 1-D float64 arrays of unit Euclidean norm;
:func:`normalize` is the canonical way to obtain one from an arbitrary
nonzero vector.  Every sampling function takes an explicit
:class:`numpy.random.Generator`.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidDimension, ZeroVector

TWO_PI = 2.0 * np.pi

UNIT_TOL = 1e-12
ORTHO_TOL = 1e-10

# below this the projected Gaussian is resampled (probability zero event)
_PROJECTION_FLOOR = 1e-12


def _check_dim(d):
    if int(d) != d or d < 2:
        raise InvalidDimension(f"sphere dimension d must be an integer >= 2, got {d!r}")
    return int(d)


def normalize(v):
    """Return ``v / ||v||`` as a float64 unit vector.

    Raises
    ------
    ZeroVector
        If the norm of `v` is zero (or below 1e-300).
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if not n > 1e-300:
        raise ZeroVector("cannot normalize a zero vector")
    return v / n


def basis_vector(d, i=0):
    """The ``i``-th standard basis vector of R^d (``e_1`` is ``i=0``)."""
    d = _check_dim(d)
    e = np.zeros(d)
    e[i] = 1.0
    return e


def sample_uniform_sphere(d, rng, size=None):
    """Draw from the uniform distribution on S^{d-1}.

    Normalizes a vector of ``d`` independent standard normal draws.  With
    ``size`` given, returns an array of shape ``(size, d)`` of i.i.d. draws.
    """
    d = _check_dim(d)
    if size is None:
        while True:
            w = rng.standard_normal(d)
            n = np.linalg.norm(w)
            if n > _PROJECTION_FLOOR:
                return w / n
    w = rng.standard_normal((size, d))
    n = np.linalg.norm(w, axis=1)
    bad = n <= _PROJECTION_FLOOR
    while np.any(bad):
        w[bad] = rng.standard_normal((int(bad.sum()), d))
        n[bad] = np.linalg.norm(w[bad], axis=1)
        bad = n <= _PROJECTION_FLOOR
    return w / n[:, None]


def sample_tangent_uniform(x, rng, size=None):
    """Draw ``z`` uniformly from the great subsphere ``{z : x.z = 0}``.

    A standard normal vector is projected onto the orthogonal complement of
    `x` and normalized; rotational invariance of the Gaussian makes the
    result exactly uniform.  One projection-and-renormalize pass is repeated
    to push ``x.z`` down to rounding level.  For ``d = 2`` the result is one
    of the two unit vectors orthogonal to `x`, each with probability 1/2.
    With ``size`` given, returns ``(size, d)`` i.i.d. draws.
    """
    x = np.asarray(x, dtype=float)
    d = _check_dim(x.shape[0])
    if size is None:
        while True:
            w = rng.standard_normal(d)
            w -= (x @ w) * x
            n = np.linalg.norm(w)
            if n > _PROJECTION_FLOOR:
                break
        z = w / n
        z -= (x @ z) * x
        return z / np.linalg.norm(z)
    w = rng.standard_normal((size, d))
    w -= np.outer(w @ x, x)
    n = np.linalg.norm(w, axis=1)
    bad = n <= _PROJECTION_FLOOR
    while np.any(bad):
        fresh = rng.standard_normal((int(bad.sum()), d))
        w[bad] = fresh - np.outer(fresh @ x, x)
        n[bad] = np.linalg.norm(w[bad], axis=1)
        bad = n <= _PROJECTION_FLOOR
    z = w / n[:, None]
    z -= np.outer(z @ x, x)
    return z / np.linalg.norm(z, axis=1)[:, None]


@dataclass(frozen=True)
class Geodesic:
    """Great circle ``omega -> cos(omega) base + sin(omega) tangent``.

    `base` and `tangent` must be unit vectors of the same dimension with
    ``base . tangent = 0`` (to 1e-10).
    """

    base: np.ndarray
    tangent: np.ndarray

    def __post_init__(self):
        base = np.array(self.base, dtype=float)
        tangent = np.array(self.tangent, dtype=float)
        if base.shape != tangent.shape or base.ndim != 1:
            raise DimensionMismatch(
                f"base and tangent shapes differ: {base.shape} vs {tangent.shape}")
        _check_dim(base.shape[0])
        for name, v in (("base", base), ("tangent", tangent)):
            if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
                raise ValueError(f"{name} is not a unit vector")
        if abs(base @ tangent) > ORTHO_TOL:
            raise ValueError(f"base and tangent are not orthogonal (dot = {base @ tangent:.3e})")
        base.flags.writeable = False
        tangent.flags.writeable = False
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "tangent", tangent)

    @property
    def d(self):
        return self.base.shape[0]

    def __call__(self, omega):
        return geodesic_point(self, omega)


def geodesic_point(g, omega):
    """Point of the geodesic `g` at angle `omega` (radians, any real)."""
    omega = float(omega) % TWO_PI
    p = np.cos(omega) * g.base + np.sin(omega) * g.tangent
    return p / np.linalg.norm(p)


def rotate_alpha(alpha, v):
    """Rotate `v` by `alpha` in the plane of the first two coordinates.

    Equivalent to multiplying by the block rotation matrix ``R_alpha`` that
    acts as a 2x2 rotation on ``(v_1, v_2)`` and as the identity on the
    rest, without forming the d x d matrix.  Works row-wise on ``(n, d)``
    arrays too.
    """
    v = np.asarray(v, dtype=float)
    _check_dim(v.shape[-1])
    c, s = np.cos(alpha), np.sin(alpha)
    out = v.copy()
    out[..., 0] = c * v[..., 0] - s * v[..., 1]
    out[..., 1] = s * v[..., 0] + c * v[..., 1]
    return out


def chord_distance(u, v):
    """Euclidean (chord) distance ``||u - v||`` between two sphere points."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != v.shape[-1]:
        raise DimensionMismatch(f"dimensions differ: {u.shape[-1]} vs {v.shape[-1]}")
    return np.linalg.norm(u - v, axis=-1)
