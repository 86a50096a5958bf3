"""Core utilities shared by every generator.

Seedable random streams with deterministic substream derivation, the
Dataset container (an n x p float matrix with canonical ``x1..xp`` column
names and optional row labels), plane-rotation composition, integer
partition helpers, and small dataset transforms (normalization, row
shuffling, cluster relocation, background noise).
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ParameterError",
    "DimensionError",
    "RandomStream",
    "make_stream",
    "derive",
    "as_stream",
    "Dataset",
    "as_dataset",
    "RotationPlan",
    "gen_rotation",
    "gen_nproduct",
    "gen_nsum",
    "normalize_data",
    "randomize_rows",
    "relocate_clusters",
    "gen_bkgnoise",
]

_MASK64 = 0xFFFFFFFFFFFFFFFF


class ParameterError(ValueError):
    """An argument value is outside its accepted domain."""


class DimensionError(ParameterError):
    """A dimension argument is incompatible with a shape or dataset."""


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class RandomStream:
    """Seeded random source with deterministic substream derivation.

    A stream is identified by a 64-bit root seed plus a path of derivation
    indices; equal (seed, path) pairs always produce bit-identical draws,
    and distinct paths give statistically independent sequences. Typical
    paths encode a cluster index, then a stage or column index.
    """

    __slots__ = ("seed", "path", "_rng")

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        seed = int(seed)
        if seed < 0:
            raise ParameterError("seed must be a non-negative integer")
        self.seed = seed & _MASK64
        self.path = tuple(int(ix) for ix in path)
        self._rng = None

    def derive(self, index: int) -> "RandomStream":
        """Child stream for `index`, independent of this stream's draws."""
        return RandomStream(self.seed, self.path + (int(index),))

    def _mixed_seed(self) -> int:
        state = _splitmix64(self.seed)
        for ix in self.path:
            state = _splitmix64(state ^ _splitmix64(ix & _MASK64))
        return state

    @property
    def rng(self) -> np.random.Generator:
        """The numpy Generator backing this stream (created lazily, once)."""
        if self._rng is None:
            self._rng = np.random.default_rng(self._mixed_seed())
        return self._rng

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, path={self.path})"


def make_stream(seed: int) -> RandomStream:
    """Root stream for a 64-bit unsigned seed."""
    return RandomStream(seed)


def derive(stream: RandomStream, index: int) -> RandomStream:
    """Independent child stream of `stream` for derivation index `index`."""
    return stream.derive(index)


def as_stream(seed=None) -> RandomStream:
    """Normalize `seed` into a RandomStream.

    Accepts an existing stream (returned as is), a non-negative int, or
    None for a fresh entropy-derived stream. Analogous to scikit-learn's
    ``check_random_state``.
    """
    if isinstance(seed, RandomStream):
        return seed
    if seed is None:
        return RandomStream(secrets.randbits(64))
    if isinstance(seed, (int, np.integer)):
        return RandomStream(int(seed))
    raise ParameterError(f"seed must be an int, RandomStream, or None, got {type(seed).__name__}")


class Dataset:
    """Immutable n x p coordinate matrix with optional per-row labels.

    Columns are always named ``x1..xp``. Every entry must be finite; label
    count, when labels are present, must equal the row count.
    """

    __slots__ = ("points", "labels")

    def __init__(self, points, labels=None):
        pts = np.array(points, dtype=np.float64)
        if pts.ndim != 2:
            raise ParameterError(f"points must be a 2-D matrix, got ndim={pts.ndim}")
        if not np.isfinite(pts).all():
            raise ParameterError("points must be finite (no NaN or Inf entries)")
        pts.setflags(write=False)
        self.points = pts
        if labels is None:
            self.labels = None
        else:
            lab = np.array([str(v) for v in np.asarray(labels).ravel()])
            if lab.shape[0] != pts.shape[0]:
                raise ParameterError(
                    f"label count {lab.shape[0]} does not match row count {pts.shape[0]}"
                )
            lab.setflags(write=False)
            self.labels = lab

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def p(self) -> int:
        return self.points.shape[1]

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(f"x{j}" for j in range(1, self.p + 1))

    def take(self, indices) -> "Dataset":
        """Row subset/permutation; labels travel with their rows."""
        labels = None if self.labels is None else self.labels[indices]
        return Dataset(self.points[indices], labels)

    def __repr__(self) -> str:
        tag = "labeled" if self.labels is not None else "unlabeled"
        return f"Dataset(n={self.n}, p={self.p}, {tag})"


def as_dataset(data, labels=None) -> Dataset:
    """Normalize `data` (Dataset or array-like) into a Dataset."""
    if isinstance(data, Dataset):
        return data
    return Dataset(data, labels)


@dataclass(frozen=True)
class RotationPlan:
    """Ordered plane rotations defining a p-dimensional orthogonal matrix.

    Each step is (i, j, angle) with 1-indexed axes, 1 <= i < j <= dim, and
    an angle in radians. Steps are applied left to right under the
    column-vector convention, so the realized matrix is R = R_m ... R_1
    and points transform as x -> R x.
    """

    dim: int
    steps: tuple[tuple[int, int, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if int(self.dim) < 1:
            raise ParameterError("rotation dimension must be a positive integer")
        object.__setattr__(self, "dim", int(self.dim))
        norm = []
        for step in self.steps:
            if len(step) != 3:
                raise ParameterError(f"rotation step must be (i, j, angle), got {step!r}")
            i, j, angle = int(step[0]), int(step[1]), float(step[2])
            if i == j:
                raise ParameterError(f"rotation plane axes must differ, got i=j={i}")
            if not (1 <= i < j <= self.dim):
                raise ParameterError(
                    f"rotation plane ({i}, {j}) out of range for dimension {self.dim}"
                )
            if not np.isfinite(angle):
                raise ParameterError("rotation angle must be finite")
            norm.append((i, j, angle))
        object.__setattr__(self, "steps", tuple(norm))


def gen_rotation(plan: RotationPlan) -> np.ndarray:
    """Realize a RotationPlan as an orthogonal matrix with determinant +1."""
    if not isinstance(plan, RotationPlan):
        raise ParameterError("gen_rotation expects a RotationPlan")
    rot = np.eye(plan.dim)
    for i, j, angle in plan.steps:
        a, b = i - 1, j - 1
        c, s = np.cos(angle), np.sin(angle)
        row_a = c * rot[a] - s * rot[b]
        row_b = s * rot[a] + c * rot[b]
        rot[a], rot[b] = row_a, row_b
    return rot


def _iroot_ceil(target: int, k: int) -> int:
    """Smallest integer c with c**k >= target."""
    c = max(1, round(target ** (1.0 / k)))
    while c**k < target:
        c += 1
    while c > 1 and (c - 1) ** k >= target:
        c -= 1
    return c


def gen_nproduct(target: int, k: int) -> tuple[int, ...]:
    """k near-equal positive integers whose product is the closest value at
    or above `target`.

    Starts from the ceiling k-th root and greedily decrements trailing
    factors while the product stays at or above the target, so factors
    differ pairwise by at most 1 and no factor can shrink further.
    """
    target, k = int(target), int(k)
    if target < 1:
        raise ParameterError("target must be a positive integer")
    if k < 1:
        raise ParameterError("k must be a positive integer")
    c = _iroot_ceil(target, k)
    factors = [c] * k
    product = c**k
    for i in range(k - 1, -1, -1):
        if factors[i] == 1:
            continue
        trial = product // factors[i] * (factors[i] - 1)
        if trial >= target:
            factors[i] -= 1
            product = trial
    return tuple(factors)


def gen_nsum(target: int, k: int) -> tuple[int, ...]:
    """k positive integers summing exactly to `target`, pairwise within 1."""
    target, k = int(target), int(k)
    if k < 1:
        raise ParameterError("k must be a positive integer")
    if target < k:
        raise ParameterError(f"cannot split {target} into {k} positive parts")
    q, r = divmod(target, k)
    return (q + 1,) * r + (q,) * (k - r)


def normalize_data(ds) -> Dataset:
    """Rescale each column to [0, 1] via (x - min) / (max - min).

    Constant columns map to 0. Idempotent: normalizing twice equals
    normalizing once, exactly.
    """
    ds = as_dataset(ds)
    if ds.n == 0:
        raise ParameterError("cannot normalize an empty dataset")
    pts = ds.points
    lo = pts.min(axis=0)
    span = pts.max(axis=0) - lo
    out = np.zeros_like(pts)
    keep = span > 0
    out[:, keep] = (pts[:, keep] - lo[keep]) / span[keep]
    return Dataset(out, ds.labels)


def randomize_rows(ds, seed=None) -> Dataset:
    """Deterministic (under `seed`) random permutation of the rows."""
    ds = as_dataset(ds)
    perm = as_stream(seed).rng.permutation(ds.n)
    return ds.take(perm)


def relocate_clusters(ds, loc) -> Dataset:
    """Translate each labeled cluster so its centroid lands on a row of `loc`.

    Rows of `loc` correspond to the distinct labels in sorted
    (lexicographic) order.
    """
    ds = as_dataset(ds)
    if ds.labels is None:
        raise ParameterError("relocate_clusters requires a labeled dataset")
    loc = np.asarray(loc, dtype=np.float64)
    if loc.ndim != 2:
        raise ParameterError("loc must be a k x p matrix")
    names = sorted(set(ds.labels.tolist()))
    if loc.shape[0] != len(names):
        raise ParameterError(
            f"loc has {loc.shape[0]} rows but dataset has {len(names)} distinct labels"
        )
    if loc.shape[1] != ds.p:
        raise ParameterError(f"loc has {loc.shape[1]} columns but dataset has {ds.p}")
    pts = ds.points.copy()
    for row, name in zip(loc, names):
        mask = ds.labels == name
        pts[mask] += row - pts[mask].mean(axis=0)
    return Dataset(pts, ds.labels)


def gen_bkgnoise(n: int, p: int, m=0.0, s=1.0, seed=None) -> Dataset:
    """n x p background noise, column j drawn from Normal(m_j, s_j^2)."""
    n, p = int(n), int(p)
    if n < 1 or p < 1:
        raise ParameterError("n and p must be positive integers")
    mean = np.broadcast_to(np.asarray(m, dtype=np.float64), (p,))
    sd = np.broadcast_to(np.asarray(s, dtype=np.float64), (p,))
    if not (sd > 0).all():
        raise ParameterError("standard deviations must be strictly positive")
    rng = as_stream(seed).rng
    return Dataset(rng.normal(mean, sd, size=(n, p)))
