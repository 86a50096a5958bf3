"""Shared oracle helpers for the test suite."""

import numpy as np


def ks_stat(samples, cdf) -> float:
    """Kolmogorov-Smirnov statistic of `samples` against a callable CDF."""
    z = np.sort(np.asarray(samples, dtype=float))
    n = z.size
    f = cdf(z)
    i = np.arange(1, n + 1)
    return float(max((i / n - f).max(), (f - (i - 1) / n).max()))


def trunc_exp_cdf(rate: float, high: float):
    """Closed-form CDF of Exp(rate) conditioned on [0, high]."""
    denom = 1.0 - np.exp(-rate * high)

    def cdf(x):
        return (1.0 - np.exp(-rate * np.asarray(x))) / denom

    return cdf


def pairwise_distances(a, b=None) -> np.ndarray:
    b = a if b is None else b
    return np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
