"""Autocorrelation and integrated autocorrelation time (IAT) of chain output."""

from dataclasses import dataclass

import numpy as np

from .errors import ConstantSeries, TooShort

IAT_FLOOR = 0.1

_COLUMN_CHUNK = 64


def _autocov_fft(x):
    # biased (1/n) autocovariance of each column, all lags 0..n-1
    n = x.shape[0]
    x = x - x.mean(axis=0)
    nfft = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(x, n=nfft, axis=0)
    acov = np.fft.irfft(f * np.conjugate(f), n=nfft, axis=0)[:n]
    return acov / n


def _is_constant(x):
    return np.ptp(x, axis=0) == 0


def autocorrelation(series, max_lag):
    """Normalized sample autocorrelation for lags ``0..max_lag``.

    Uses the biased autocovariance ``c(k) = (1/n) sum_t (s_t - m)(s_{t+k} - m)``
    and returns ``c(k) / c(0)``.
    """
    s = np.asarray(series, dtype=float)
    n = s.shape[0]
    if s.ndim != 1 or n < 4:
        raise TooShort(f"need a 1-D series with at least 4 points, got shape {s.shape}")
    max_lag = int(max_lag)
    if not 1 <= max_lag < n:
        raise ValueError(f"max_lag must satisfy 1 <= max_lag < n={n}, got {max_lag}")
    acov = _autocov_fft(s[:, None])[:, 0]
    if _is_constant(s) or acov[0] < 1e-300:
        raise ConstantSeries("series is constant; autocorrelation undefined")
    rho = acov[: max_lag + 1] / acov[0]
    rho[0] = 1.0
    return rho


def _geyer_truncate(rho):
    """IAT and truncation lag for autocorrelation columns ``rho`` (lags x series).

    Pairs ``rho(2m-1) + rho(2m)`` for m = 1, 2, ... are summed while they
    stay positive.
    """
    n = rho.shape[0]
    n_pairs = (n - 1) // 2
    pairs = rho[1 : 2 * n_pairs + 1].reshape(n_pairs, 2, -1).sum(axis=1)
    nonpos = pairs <= 0
    # number of leading positive pairs in each column
    n_pos = np.where(nonpos.any(axis=0), nonpos.argmax(axis=0), n_pairs)
    csum = np.vstack([np.zeros((1, pairs.shape[1])), np.cumsum(pairs, axis=0)])
    total = csum[n_pos, np.arange(pairs.shape[1])]
    tau = np.maximum(1.0 + 2.0 * total, IAT_FLOOR)
    return tau, 2 * n_pos


def iat(series):
    """Integrated autocorrelation time ``1 + 2 sum_{k=1}^K rho(k)``.

    The cutoff ``K`` is set by the initial positive sequence rule: lag pairs
    ``(1, 2), (3, 4), ...`` are added while their sum is positive.  Results
    are clamped below at 0.1.

    Returns
    -------
    (float, int)
        The IAT estimate and the truncation lag ``K``.
    """
    s = np.asarray(series, dtype=float)
    if s.ndim != 1 or s.shape[0] < 8:
        raise TooShort(f"need a 1-D series with at least 8 points, got shape {s.shape}")
    acov = _autocov_fft(s[:, None])
    if _is_constant(s) or acov[0, 0] < 1e-300:
        raise ConstantSeries("series is constant; IAT undefined")
    tau, lag = _geyer_truncate(acov / acov[0])
    return float(tau[0]), int(lag[0])


@dataclass(frozen=True)
class IatReport:
    per_coordinate_iat: np.ndarray
    mean_iat: float
    truncation_lags: np.ndarray
    n_its: int
    excluded: tuple = ()


def mean_iat(trace):
    """Mean over coordinates of the per-coordinate IAT of a chain trace.

    `trace` is a :class:`~gsss.sampler.ChainTrace` or an ``(n_its, d)``
    array.  A coordinate whose series is constant is excluded from the mean;
    its entry is NaN and its index is listed in ``excluded``.
    """
    states = np.asarray(getattr(trace, "states", trace), dtype=float)
    n, d = states.shape
    if n < 8:
        raise TooShort(f"need at least 8 states, got {n}")
    tau = np.empty(d)
    lags = np.empty(d, dtype=np.int64)
    bad = np.empty(d, dtype=bool)
    for lo in range(0, d, _COLUMN_CHUNK):
        cols = slice(lo, lo + _COLUMN_CHUNK)
        acov = _autocov_fft(states[:, cols])
        bad[cols] = _is_constant(states[:, cols]) | (acov[0] < 1e-300)
        c0 = np.where(bad[cols], 1.0, acov[0])
        tau[cols], lags[cols] = _geyer_truncate(acov / c0)
    if bad.all():
        raise ConstantSeries("every coordinate series is constant")
    tau = np.where(bad, np.nan, tau)
    lags = np.where(bad, 0, lags)
    return IatReport(
        per_coordinate_iat=tau,
        mean_iat=float(np.nanmean(tau)),
        truncation_lags=lags.astype(np.int64),
        n_its=n,
        excluded=tuple(int(i) for i in np.flatnonzero(bad)),
    )
