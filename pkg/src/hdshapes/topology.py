"""Hyperspherical hole punching and its two wrapper shapes."""

from __future__ import annotations

import warnings

import numpy as np

from .core import Dataset, ParameterError, as_dataset, as_stream
from .shapes import gen_scurve, gen_unifcube

__all__ = [
    "DegenerateHoleError",
    "HoleRetentionWarning",
    "gen_hole",
    "gen_scurvehole",
    "gen_unifcubehole",
]


class DegenerateHoleError(ParameterError):
    """The hole removed every point."""


class HoleRetentionWarning(UserWarning):
    """The hole removed more than 90% of the points."""


def gen_hole(ds, r: float, anchor=None) -> Dataset:
    """Remove every row within Euclidean distance r of the anchor.

    Only rows strictly farther than r survive; coordinates and row order
    are untouched and labels travel with their rows. The anchor defaults
    to the per-column means. Raises DegenerateHoleError when nothing
    survives and warns when fewer than 10% of rows do.
    """
    ds = as_dataset(ds)
    if ds.n == 0:
        raise ParameterError("cannot punch a hole in an empty dataset")
    if r <= 0:
        raise ParameterError("hole radius must be positive")
    if anchor is None:
        anchor = ds.points.mean(axis=0)
    anchor = np.asarray(anchor, dtype=np.float64).ravel()
    if anchor.shape[0] != ds.p:
        raise ParameterError(f"anchor has length {anchor.shape[0]}, dataset has {ds.p} columns")
    dist = np.linalg.norm(ds.points - anchor, axis=1)
    keep = dist > r
    kept = int(keep.sum())
    if kept == 0:
        raise DegenerateHoleError(f"hole of radius {r} removed all {ds.n} points")
    if kept < 0.1 * ds.n:
        warnings.warn(
            f"hole retained only {kept}/{ds.n} points ({kept / ds.n:.1%})",
            HoleRetentionWarning,
            stacklevel=2,
        )
    return ds.take(keep)


def _holed_sample(make, n: int, r_hole: float, stream) -> Dataset:
    """Oversample `make`, hole at the pre-filter means, trim to exactly n.

    The removed fraction is estimated from a pilot of size n, then the
    sample is oversampled by 1 / (1 - fraction) plus 10%, doubling up to
    four more times if too few points survive.
    """
    pilot = make(n, stream.derive(0))
    removed = n - gen_hole(pilot, r_hole).n
    frac = min(removed / n, 0.95)
    m = int(np.ceil(n / (1.0 - frac) * 1.1))
    for attempt in range(5):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HoleRetentionWarning)
            full = make(m, stream.derive(1 + attempt))
            survivors = gen_hole(full, r_hole)
        if survivors.n >= n:
            break
        m *= 2
    else:
        raise DegenerateHoleError(
            f"could not retain {n} points outside a hole of radius {r_hole}"
        )
    pick = np.sort(stream.derive(100).rng.choice(survivors.n, size=n, replace=False))
    return survivors.take(pick)


def gen_scurvehole(n: int, r_hole: float = 0.3, seed=None) -> Dataset:
    """S-curve with a spherical hole at its mean; exactly n points."""
    return _holed_sample(
        lambda m, s: gen_scurve(m, seed=s), int(n), float(r_hole), as_stream(seed)
    )


def gen_unifcubehole(n: int, p: int = 3, r_hole: float = 0.3, seed=None) -> Dataset:
    """Uniform cube with a central hyperspherical void; exactly n points."""
    return _holed_sample(
        lambda m, s: gen_unifcube(m, p=p, seed=s), int(n), float(r_hole), as_stream(seed)
    )
