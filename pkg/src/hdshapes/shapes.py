"""Single-shape generators and the registry that dispatches them by name.

Each generator returns a Dataset whose coordinates follow a fixed
parameterization; randomness comes only from the supplied seed/stream, so
equal (params, seed) pairs reproduce bit-identical output. Shapes with a
fixed intrinsic dimension (mobius, scurve, the spirals, ...) emit exactly
that many columns; callers lift them into higher dimensions by appending
noise dims (see hdshapes.noise) or through the multicluster composer.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    Dataset,
    DimensionError,
    ParameterError,
    as_stream,
    gen_nproduct,
    gen_nsum,
)

__all__ = [
    "UnknownShapeError",
    "RejectedParameterError",
    "ShapeInfo",
    "SHAPES",
    "list_shapes",
    "shape_info",
    "generate",
    "gen_expbranches",
    "gen_linearbranches",
    "gen_curvybranches",
    "gen_orglinearbranches",
    "gen_orgcurvybranches",
    "gen_cone",
    "gen_gridcube",
    "gen_unifcube",
    "gen_gaussian",
    "gen_longlinear",
    "gen_mobius",
    "gen_quadratic",
    "gen_cubic",
    "gen_pyrrect",
    "gen_pyrtri",
    "gen_pyrstar",
    "gen_pyrfrac",
    "gen_scurve",
    "gen_circle",
    "gen_curvycycle",
    "gen_unifsphere",
    "gen_hollowsphere",
    "gen_gridedsphere",
    "gen_clusteredspheres",
    "gen_hemisphere",
    "gen_swissroll",
    "gen_trefoil4d",
    "gen_trefoil3d",
    "gen_crescent",
    "gen_curvycylinder",
    "gen_sphericalspiral",
    "gen_helicalspiral",
    "gen_conicspiral",
    "gen_nonlinear",
]


class UnknownShapeError(ParameterError):
    """Requested shape kind is not registered."""

    def __init__(self, kind: str):
        self.kind = kind
        super().__init__(
            f"unknown shape kind '{kind}'; available kinds: {', '.join(SHAPES)}"
        )


class RejectedParameterError(ParameterError):
    """A parameter was supplied that the target shape does not accept."""


def _check_n(n) -> int:
    n = int(n)
    if n < 1:
        raise ParameterError("n must be a positive integer")
    return n


def _unit_directions(rng, n: int, d: int) -> np.ndarray:
    """n directions uniform on the unit (d-1)-sphere (normalized Gaussians)."""
    v = rng.standard_normal((n, d))
    norms = np.linalg.norm(v, axis=1)
    norms[norms == 0] = 1.0
    return v / norms[:, None]


def _trunc_exp(rng, n: int, rate: float, high: float) -> np.ndarray:
    """Exponential(rate) conditioned on [0, high], via inverse CDF."""
    u = rng.random(n)
    return -np.log1p(-u * (1.0 - math.exp(-rate * high))) / rate


# ---------------------------------------------------------------------------
# Branching


_BRANCH_JITTER = 0.1  # local jitter amplitude delta
_LINEAR_SLOPE_RANGE = (-2.0, 2.0)  # extra-branch slopes, excluding (-0.1, 0.1)
_CURVY_SCALE_SET = (-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5)


def _box(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float, float]:
    return float(x.min()), float(x.max()), float(y.min()), float(y.max())


def _box_overlap_frac(cand, boxes) -> float:
    """Largest fraction of the candidate box covered by any existing box."""
    cx0, cx1, cy0, cy1 = cand
    area = max(cx1 - cx0, 1e-12) * max(cy1 - cy0, 1e-12)
    worst = 0.0
    for bx0, bx1, by0, by1 in boxes:
        w = min(cx1, bx1) - max(cx0, bx0)
        h = min(cy1, by1) - max(cy0, by0)
        if w > 0 and h > 0:
            worst = max(worst, (w * h) / area)
    return worst


def _pick_start(rng, xs: list[np.ndarray], ys: list[np.ndarray]) -> tuple[float, float]:
    all_x = np.concatenate(xs)
    all_y = np.concatenate(ys)
    ix = int(rng.integers(0, all_x.size))
    return float(all_x[ix]), float(all_y[ix])


def _branch_dataset(xs, ys) -> Dataset:
    pts = np.column_stack([np.concatenate(xs), np.concatenate(ys)])
    labels = np.concatenate(
        [np.full(len(x), f"branch_{i + 1}") for i, x in enumerate(xs)]
    )
    return Dataset(pts, labels)


def gen_linearbranches(n: int, k: int = 4, seed=None) -> Dataset:
    """k noisy line segments in 2-D, later branches attached to earlier ones.

    Branch i follows X2 = s_i (X1 - x_start) + y_start + eps with
    eps ~ U(0, delta); s_1 = 0.5 and s_2 = -0.5 start at the origin, later
    branches start at a previously generated point with a random slope and
    are re-placed (up to 100 tries) until their bounding box overlaps the
    existing structure by less than half.
    """
    n, k = _check_n(n), int(k)
    if k < 1:
        raise ParameterError("k must be a positive integer")
    sizes = gen_nsum(n, k)
    rng = as_stream(seed).rng
    delta = _BRANCH_JITTER
    xs, ys, boxes = [], [], []
    for i, m in enumerate(sizes, start=1):
        if i == 1:
            slope, x0, y0, dom = 0.5, 0.0, 0.0, (0.0, 1.0)
        elif i == 2:
            slope, x0, y0, dom = -0.5, 0.0, 0.0, (-1.0, 0.0)
        else:
            while True:
                slope = float(rng.uniform(*_LINEAR_SLOPE_RANGE))
                if abs(slope) >= 0.1:
                    break
            for _ in range(100):
                x0, y0 = _pick_start(rng, xs, ys)
                dom = (x0, x0 + 1.0)
                y_ends = (y0, y0 + slope)
                cand = (dom[0], dom[1], min(y_ends), max(y_ends) + delta)
                if _box_overlap_frac(cand, boxes) < 0.5:
                    break
        x = rng.uniform(dom[0], dom[1], m)
        y = slope * (x - x0) + y0 + rng.uniform(0.0, delta, m)
        xs.append(x)
        ys.append(y)
        boxes.append(_box(x, y))
    return _branch_dataset(xs, ys)


def gen_curvybranches(n: int, k: int = 4, seed=None) -> Dataset:
    """k quadratic branches in 2-D.

    The first two use fixed (domain, curvature) of ((0,1), 1) and
    ((-1,0), -2) with X2 = 0.1 X1 + s X1^2 + eps, eps ~ U(-delta, delta);
    branches beyond that attach at an existing point and extend over one
    unit via X2 = 0.1 X1 - s (X1^2 - x_start) + y_start with curvature
    drawn from a fixed set.
    """
    n, k = _check_n(n), int(k)
    if k < 1:
        raise ParameterError("k must be a positive integer")
    sizes = gen_nsum(n, k)
    rng = as_stream(seed).rng
    delta = _BRANCH_JITTER
    xs, ys, boxes = [], [], []
    for i, m in enumerate(sizes, start=1):
        if i <= 2:
            a, b, s = (0.0, 1.0, 1.0) if i == 1 else (-1.0, 0.0, -2.0)
            x = rng.uniform(a, b, m)
            y = 0.1 * x + s * x * x + rng.uniform(-delta, delta, m)
        else:
            s = float(rng.choice(_CURVY_SCALE_SET))
            for _ in range(100):
                x0, y0 = _pick_start(rng, xs, ys)
                gx = np.linspace(x0, x0 + 1.0, 8)
                gy = 0.1 * gx - s * (gx * gx - x0) + y0
                cand = _box(gx, gy)
                if _box_overlap_frac(cand, boxes) < 0.5:
                    break
            x = rng.uniform(x0, x0 + 1.0, m)
            y = 0.1 * x - s * (x * x - x0) + y0
        xs.append(x)
        ys.append(y)
        boxes.append(_box(x, y))
    return _branch_dataset(xs, ys)


def gen_expbranches(n: int, k: int = 4, seed=None) -> Dataset:
    """k exponential branches in 2-D radiating from a central region.

    Branch i: X1 ~ U(-2, 2), X2 = exp(sigma_i s_i X1) + eps with
    sigma_i = (-1)^(i+1) alternating the exponent sign, s_i ~ U(0.5, 2),
    eps ~ U(0, delta).
    """
    n, k = _check_n(n), int(k)
    if k < 1:
        raise ParameterError("k must be a positive integer")
    sizes = gen_nsum(n, k)
    rng = as_stream(seed).rng
    xs, ys = [], []
    for i, m in enumerate(sizes, start=1):
        sigma = 1.0 if i % 2 == 1 else -1.0
        s = float(rng.uniform(0.5, 2.0))
        x = rng.uniform(-2.0, 2.0, m)
        y = np.exp(sigma * s * x) + rng.uniform(0.0, _BRANCH_JITTER, m)
        xs.append(x)
        ys.append(y)
    return _branch_dataset(xs, ys)


def _org_branches(n, p, k, allow_share, seed, curvy: bool) -> Dataset:
    n, p, k = _check_n(n), int(p), int(k)
    if p < 2:
        raise DimensionError("origin branches need p >= 2")
    if k < 1:
        raise ParameterError("k must be a positive integer")
    sizes = gen_nsum(n, k)
    rng = as_stream(seed).rng
    all_pairs = list(itertools.combinations(range(p), 2))
    if allow_share:
        pair_seq = [all_pairs[int(rng.integers(0, len(all_pairs)))] for _ in range(k)]
    else:
        pair_seq = []
        while len(pair_seq) < k:  # fresh shuffled pass once all pairs are used
            order = rng.permutation(len(all_pairs))
            pair_seq.extend(all_pairs[ix] for ix in order)
        pair_seq = pair_seq[:k]
    scale_set = np.arange(1.0, 8.5, 0.5)
    pts_parts, labels = [], []
    for i, (m, (i1, i2)) in enumerate(zip(sizes, pair_seq), start=1):
        s = 1.0 if i <= len(all_pairs) else float(rng.choice(scale_set))
        x = rng.uniform(0.0, 1.0, m)
        f = -s * x * x if curvy else s * x
        block = np.zeros((m, p))
        block[:, i1] = x
        block[:, i2] = f + rng.normal(0.0, _BRANCH_JITTER, m)
        pts_parts.append(block)
        labels.append(np.full(m, f"branch_{i}"))
    return Dataset(np.vstack(pts_parts), np.concatenate(labels))


def gen_orglinearbranches(n: int, p: int = 4, k: int = 4, allow_share: bool = False, seed=None) -> Dataset:
    """k linear branches leaving the origin, each in its own 2-D subspace.

    Branch i activates a coordinate pair (i1, i2) with X_i2 = s_i X_i1 +
    eps, eps ~ N(0, 0.1^2); pairs are drawn without replacement until all
    C(p, 2) are used unless allow_share is set. The first C(p, 2) branches
    use s_i = 1, later ones draw s_i from {1, 1.5, ..., 8}.
    """
    return _org_branches(n, p, k, allow_share, seed, curvy=False)


def gen_orgcurvybranches(n: int, p: int = 4, k: int = 4, allow_share: bool = False, seed=None) -> Dataset:
    """Curvilinear variant of gen_orglinearbranches: X_i2 = -s_i X_i1^2 + eps."""
    return _org_branches(n, p, k, allow_share, seed, curvy=True)


# ---------------------------------------------------------------------------
# Cone


def gen_cone(n: int, p: int = 4, h: float = 1.0, ratio: float = 0.5, seed=None) -> Dataset:
    """Cone surface in p dims: heights denser toward X_p = 0.

    X_p follows Exp(2/h) truncated to [0, h]; the first p-1 coordinates
    are a uniform direction on the (p-1)-sphere scaled by the
    height-dependent radius r = ratio + (1 - ratio) X_p / h, so every
    cross-section is a sphere of that radius. ratio in [0, 1] blunts the
    narrow end (1 gives a cylinder).
    """
    n, p = _check_n(n), int(p)
    if p < 3:
        raise DimensionError("gen_cone needs p >= 3")
    if h <= 0:
        raise ParameterError("h must be positive")
    if not 0.0 <= ratio <= 1.0:
        raise ParameterError("ratio must lie in [0, 1]")
    rng = as_stream(seed).rng
    z = _trunc_exp(rng, n, 2.0 / h, h)
    r = ratio + (1.0 - ratio) * z / h
    pts = np.empty((n, p))
    pts[:, : p - 1] = _unit_directions(rng, n, p - 1) * r[:, None]
    pts[:, p - 1] = z
    return Dataset(pts)


# ---------------------------------------------------------------------------
# Cube


def gen_gridcube(n: int, p: int = 4, seed=None) -> Dataset:
    """Regular lattice filling [0, 1]^p with approximately n points.

    Per-axis resolutions come from gen_nproduct(n, p); the realized point
    count is their product.
    """
    n, p = _check_n(n), int(p)
    if p < 1:
        raise DimensionError("p must be a positive integer")
    factors = gen_nproduct(n, p)
    axes = [np.linspace(0.0, 1.0, m) for m in factors]
    mesh = np.meshgrid(*axes, indexing="ij")
    return Dataset(np.column_stack([g.ravel() for g in mesh]))


def gen_unifcube(n: int, p: int = 4, seed=None) -> Dataset:
    """n points uniform in [0, 1]^p, with exact 0/1 vertices filtered out."""
    n, p = _check_n(n), int(p)
    if p < 1:
        raise DimensionError("p must be a positive integer")
    pts = as_stream(seed).rng.random((n, p))
    at_vertex = ((pts == 0.0) | (pts == 1.0)).all(axis=1)
    return Dataset(pts[~at_vertex])


# ---------------------------------------------------------------------------
# Gaussian


def gen_gaussian(n: int, p: int = 4, s=None, seed=None) -> Dataset:
    """n iid draws from N_p(0, s); s defaults to the identity."""
    n, p = _check_n(n), int(p)
    if p < 1:
        raise DimensionError("p must be a positive integer")
    if s is None:
        cov = np.eye(p)
    else:
        cov = np.asarray(s, dtype=np.float64)
        if cov.shape != (p, p):
            raise ParameterError(f"covariance must be {p} x {p}, got {cov.shape}")
        if not np.allclose(cov, cov.T, atol=1e-10):
            raise ParameterError("covariance must be symmetric")
    try:
        chol = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        raise ParameterError("covariance must be positive-definite") from None
    z = as_stream(seed).rng.standard_normal((n, p))
    return Dataset(z @ chol.T)


# ---------------------------------------------------------------------------
# Linear


def gen_longlinear(n: int, p: int = 4, seed=None) -> Dataset:
    """Single noisy linear trajectory along a shared index t_i = i - 1.

    X_ij = a_j (t_i + b_j + eps_ij) with a_j ~ U(-10, 10),
    b_j ~ U(-300, 300), eps ~ N(0, (0.03 n)^2), giving every dimension its
    own orientation, scale, and offset.
    """
    n, p = _check_n(n), int(p)
    if p < 1:
        raise DimensionError("p must be a positive integer")
    rng = as_stream(seed).rng
    t = np.arange(n, dtype=np.float64)
    a = rng.uniform(-10.0, 10.0, p)
    b = rng.uniform(-300.0, 300.0, p)
    eps = rng.normal(0.0, 0.03 * n, (n, p))
    return Dataset(a * (t[:, None] + b + eps))


# ---------------------------------------------------------------------------
# Mobius


def gen_mobius(n: int, seed=None) -> Dataset:
    """Mobius band surface in 3-D (ring radius 1, width 1, half twist).

    x = (1 + (w/2) cos(t/2)) cos t, y = (1 + (w/2) cos(t/2)) sin t,
    z = (w/2) sin(t/2) with t ~ U(0, 2 pi), w ~ U(-1, 1).
    """
    n = _check_n(n)
    rng = as_stream(seed).rng
    t = rng.uniform(0.0, 2.0 * np.pi, n)
    w = rng.uniform(-1.0, 1.0, n)
    radial = 1.0 + (w / 2.0) * np.cos(t / 2.0)
    return Dataset(
        np.column_stack(
            [radial * np.cos(t), radial * np.sin(t), (w / 2.0) * np.sin(t / 2.0)]
        )
    )


# ---------------------------------------------------------------------------
# Polynomial


def gen_quadratic(n: int, range=(0.0, 1.0), seed=None) -> Dataset:
    """Downward parabolic arc: X2 = X1 - X1^2 + eps, eps ~ U(0, 0.5)."""
    n = _check_n(n)
    a, b = float(range[0]), float(range[1])
    if a >= b:
        raise ParameterError("range must satisfy a < b")
    rng = as_stream(seed).rng
    x1 = rng.uniform(a, b, n)
    x2 = x1 - x1 * x1 + rng.uniform(0.0, 0.5, n)
    return Dataset(np.column_stack([x1, x2]))


def gen_cubic(n: int, range=(-1.0, 1.0), seed=None) -> Dataset:
    """Cubic curve: X2 = X1 + X1^2 - X1^3 + eps, eps ~ U(0, 0.5)."""
    n = _check_n(n)
    a, b = float(range[0]), float(range[1])
    if a >= b:
        raise ParameterError("range must satisfy a < b")
    rng = as_stream(seed).rng
    x1 = rng.uniform(a, b, n)
    x2 = x1 + x1 * x1 - x1**3 + rng.uniform(0.0, 0.5, n)
    return Dataset(np.column_stack([x1, x2]))


# ---------------------------------------------------------------------------
# Pyramid


def _clamped_exp_heights(rng, n: int, h: float) -> np.ndarray:
    # min(Exp(2/h), h): skewed toward 0 with an atom of mass e^-2 at h
    return np.minimum(rng.exponential(scale=h / 2.0, size=n), h)


def _noise_cols(rng, n: int, count: int) -> np.ndarray:
    return rng.normal(0.0, 0.2, (n, count)) if count > 0 else np.empty((n, 0))


def gen_pyrrect(n: int, p: int = 4, h: float = 1.0, l_vec=(1.0, 1.0), rt: float = 0.0, seed=None) -> Dataset:
    """Rectangular-base pyramid; cross-section shrinks linearly toward X_p = 0.

    Heights are min(Exp(2/h), h). At height z the half-widths are
    r_x(z) = rt + (l_x - rt) z / h and r_y(z) likewise; X1 and X3 are
    uniform within +/- r_x(z), X2 within +/- r_y(z). Dims 4..p-1 are
    N(0, 0.2^2) noise, dim p is the height.
    """
    n, p = _check_n(n), int(p)
    if p < 4:
        raise DimensionError("gen_pyrrect needs p >= 4 (three base coords plus height)")
    lx, ly = float(l_vec[0]), float(l_vec[1])
    if h <= 0 or lx <= 0 or ly <= 0:
        raise ParameterError("h and base half-widths must be positive")
    if rt < 0 or rt > lx or rt > ly:
        raise ParameterError("tip radius rt must lie in [0, min(l_vec)]")
    rng = as_stream(seed).rng
    z = _clamped_exp_heights(rng, n, h)
    rx = rt + (lx - rt) * z / h
    ry = rt + (ly - rt) * z / h
    cols = [
        rng.uniform(-rx, rx),
        rng.uniform(-ry, ry),
        rng.uniform(-rx, rx),
        _noise_cols(rng, n, p - 4),
        z[:, None],
    ]
    return Dataset(np.column_stack(cols))


def gen_pyrtri(n: int, p: int = 4, h: float = 1.0, l: float = 1.0, rt: float = 0.0, seed=None) -> Dataset:
    """Triangular-base pyramid sampled with barycentric coordinates.

    Heights are min(Exp(2/h), h); at height z the triangle scale is
    r(z) = rt + (l - rt) z / h and (u, v) ~ U(0, 1)^2 folded across
    u + v = 1 give X1 = r (1 - u - v), X2 = r u, X3 = r v. Dims 4..p-1
    are noise, dim p is the height.
    """
    n, p = _check_n(n), int(p)
    if p < 4:
        raise DimensionError("gen_pyrtri needs p >= 4 (three base coords plus height)")
    if h <= 0 or l <= 0:
        raise ParameterError("h and l must be positive")
    if rt < 0 or rt > l:
        raise ParameterError("tip radius rt must lie in [0, l]")
    rng = as_stream(seed).rng
    z = _clamped_exp_heights(rng, n, h)
    r = rt + (l - rt) * z / h
    u = rng.random(n)
    v = rng.random(n)
    fold = u + v > 1.0
    u[fold], v[fold] = 1.0 - u[fold], 1.0 - v[fold]
    cols = [
        (r * (1.0 - u - v))[:, None],
        (r * u)[:, None],
        (r * v)[:, None],
        _noise_cols(rng, n, p - 4),
        z[:, None],
    ]
    return Dataset(np.column_stack(cols))


def gen_pyrstar(n: int, p: int = 4, h: float = 1.0, rb: float = 1.0, seed=None) -> Dataset:
    """Six-pointed star pyramid: spokes at hexagon sector angles.

    Heights are U(0, h) and the radius scales as r(z) = rb (1 - z / h),
    so the tip sits at z = h. Each point picks one of the six angles
    {0, pi/3, ..., 5 pi/3} and a radial factor sqrt(U(0, 1)). Dims
    3..p-1 are noise, dim p is the height.
    """
    n, p = _check_n(n), int(p)
    if p < 3:
        raise DimensionError("gen_pyrstar needs p >= 3 (two base coords plus height)")
    if h <= 0 or rb <= 0:
        raise ParameterError("h and rb must be positive")
    rng = as_stream(seed).rng
    z = rng.uniform(0.0, h, n)
    r = rb * (1.0 - z / h)
    theta = rng.integers(0, 6, n) * (np.pi / 3.0)
    rp = np.sqrt(rng.random(n))
    cols = [
        (r * rp * np.cos(theta))[:, None],
        (r * rp * np.sin(theta))[:, None],
        _noise_cols(rng, n, p - 3),
        z[:, None],
    ]
    return Dataset(np.column_stack(cols))


def gen_pyrfrac(n: int, p: int = 3, seed=None) -> Dataset:
    """Sierpinski-style chaos game over the corner simplex of [0, 1]^p.

    Starting from T_0 ~ U(0, 1)^p, each iterate moves halfway toward a
    random vertex of the simplex {0, e_1, ..., e_p}; the n iterates
    T_1..T_n are returned (early ones may sit slightly off the attractor).
    """
    n, p = _check_n(n), int(p)
    if p < 2:
        raise DimensionError("gen_pyrfrac needs p >= 2")
    rng = as_stream(seed).rng
    vertices = np.vstack([np.zeros(p), np.eye(p)])
    picks = rng.integers(0, p + 1, n)
    out = np.empty((n, p))
    t = rng.random(p)
    for i in range(n):
        t = 0.5 * (t + vertices[picks[i]])
        out[i] = t
    return Dataset(out)


# ---------------------------------------------------------------------------
# S-curve


def gen_scurve(n: int, seed=None) -> Dataset:
    """S-shaped 3-D manifold, noise-free.

    X1 = sin(theta), X2 ~ U(0, 2), X3 = sign(theta)(cos(theta) - 1) with
    theta ~ U(-3 pi / 2, 3 pi / 2).
    """
    n = _check_n(n)
    rng = as_stream(seed).rng
    theta = rng.uniform(-1.5 * np.pi, 1.5 * np.pi, n)
    return Dataset(
        np.column_stack(
            [
                np.sin(theta),
                rng.uniform(0.0, 2.0, n),
                np.sign(theta) * (np.cos(theta) - 1.0),
            ]
        )
    )


# ---------------------------------------------------------------------------
# Sphere family


def gen_circle(n: int, p: int = 4, seed=None) -> Dataset:
    """Unit circle in the first two dims with damped sinusoid extensions.

    X1 = cos(theta), X2 = sin(theta); dimension j >= 3 adds
    sqrt(0.5^(j-2)) sin(theta + (j - 2) pi / (2 p)).
    """
    n, p = _check_n(n), int(p)
    if p < 2:
        raise DimensionError("gen_circle needs p >= 2")
    theta = as_stream(seed).rng.uniform(0.0, 2.0 * np.pi, n)
    cols = [np.cos(theta), np.sin(theta)]
    for j in range(3, p + 1):
        cols.append(math.sqrt(0.5 ** (j - 2)) * np.sin(theta + (j - 2) * np.pi / (2 * p)))
    return Dataset(np.column_stack(cols))


def gen_curvycycle(n: int, p: int = 4, seed=None) -> Dataset:
    """Closed curve with a third-harmonic fold, plus sinusoid extensions.

    X1 = cos(theta), X2 = sqrt(3)/3 + sin(theta), X3 = cos(3 theta) / 3;
    dimension j >= 4 adds sqrt(0.5^(j-3)) sin(theta + (j - 2) pi / (2 p)).
    """
    n, p = _check_n(n), int(p)
    if p < 3:
        raise DimensionError("gen_curvycycle needs p >= 3")
    theta = as_stream(seed).rng.uniform(0.0, 2.0 * np.pi, n)
    cols = [
        np.cos(theta),
        math.sqrt(3.0) / 3.0 + np.sin(theta),
        np.cos(3.0 * theta) / 3.0,
    ]
    for j in range(4, p + 1):
        cols.append(math.sqrt(0.5 ** (j - 3)) * np.sin(theta + (j - 2) * np.pi / (2 * p)))
    return Dataset(np.column_stack(cols))


def _sphere_surface(rng, n: int, r: float) -> np.ndarray:
    u = rng.uniform(-1.0, 1.0, n)
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    rad = np.sqrt(1.0 - u * u)
    return np.column_stack([r * rad * np.cos(theta), r * rad * np.sin(theta), r * u])


def gen_unifsphere(n: int, r: float = 1.0, seed=None) -> Dataset:
    """n points uniform on the surface (not interior) of a 3-D sphere of radius r."""
    n = _check_n(n)
    if r <= 0:
        raise ParameterError("r must be positive")
    return Dataset(_sphere_surface(as_stream(seed).rng, n, float(r)))


def gen_hollowsphere(n: int, p: int = 4, seed=None) -> Dataset:
    """n points uniform on the unit (p-1)-sphere surface in R^p."""
    n, p = _check_n(n), int(p)
    if p < 2:
        raise DimensionError("gen_hollowsphere needs p >= 2")
    return Dataset(_unit_directions(as_stream(seed).rng, n, p))


def gen_gridedsphere(n: int, p: int = 3, seed=None) -> Dataset:
    """Deterministic spherical-coordinate grid on the unit (p-1)-sphere.

    Uses p-1 angular axes, the first p-2 over [0, pi] and the last over
    [0, 2 pi], with per-axis resolutions from gen_nproduct(n, p - 1); the
    realized point count is their product.
    """
    n, p = _check_n(n), int(p)
    if p < 2:
        raise DimensionError("gen_gridedsphere needs p >= 2")
    factors = gen_nproduct(n, p - 1)
    axes = [np.linspace(0.0, np.pi, m) for m in factors[:-1]]
    axes.append(np.linspace(0.0, 2.0 * np.pi, factors[-1]))
    mesh = np.meshgrid(*axes, indexing="ij")
    angles = np.column_stack([g.ravel() for g in mesh])
    count = angles.shape[0]
    pts = np.empty((count, p))
    sin_prod = np.ones(count)
    for j in range(p - 1):
        pts[:, j] = sin_prod * np.cos(angles[:, j])
        sin_prod = sin_prod * np.sin(angles[:, j])
    pts[:, p - 1] = sin_prod
    return Dataset(pts)


def gen_clusteredspheres(
    n: int | None = None,
    k_small: int = 3,
    r_vec=(10.0, 1.0),
    spe: float = 3.0,
    n_vec=None,
    seed=None,
) -> Dataset:
    """One big sphere surface plus k_small small ones at random centers.

    The big sphere (radius r_vec[0]) is centered at the origin; each small
    sphere (radius r_vec[1]) is centered at a draw from N(0, spe^2 I_3).
    Sizes come from n_vec = (n_big, n_each_small); when only a total n is
    given, each small sphere gets n // (2 k_small) points and the big one
    the remainder. Rows are labeled "big" and "small_1".."small_k".
    """
    k_small = int(k_small)
    if k_small < 1:
        raise ParameterError("k_small must be a positive integer")
    r1, r2 = float(r_vec[0]), float(r_vec[1])
    if r1 <= 0 or r2 <= 0:
        raise ParameterError("radii must be positive")
    if spe <= 0:
        raise ParameterError("spe must be positive")
    if n_vec is not None:
        n1, n2 = int(n_vec[0]), int(n_vec[1])
    elif n is not None:
        n = _check_n(n)
        n2 = max(1, n // (2 * k_small))
        n1 = n - k_small * n2
    else:
        n1, n2 = 500, 100
    if n1 < 1 or n2 < 1:
        raise ParameterError("sphere sizes must be positive (n too small for k_small)")
    stream = as_stream(seed)
    parts = [_sphere_surface(stream.derive(0).rng, n1, r1)]
    labels = [np.full(n1, "big")]
    for i in range(1, k_small + 1):
        sub = stream.derive(i).rng
        center = sub.normal(0.0, spe, 3)
        parts.append(_sphere_surface(sub, n2, r2) + center)
        labels.append(np.full(n2, f"small_{i}"))
    return Dataset(np.vstack(parts), np.concatenate(labels))


def gen_hemisphere(n: int, p: int = 4, seed=None) -> Dataset:
    """Half of the unit 3-sphere in 4-D.

    theta1, theta2 ~ U(0, pi) and theta3 ~ U(0, pi/2) map to
    X1 = sin(t1) cos(t2), X2 = sin(t1) sin(t2), X3 = cos(t1) cos(t3),
    X4 = cos(t1) sin(t3); the restricted third angle keeps X3 and X4 on
    the same side.
    """
    n = _check_n(n)
    if int(p) != 4:
        raise DimensionError("gen_hemisphere is defined for p = 4")
    rng = as_stream(seed).rng
    t1 = rng.uniform(0.0, np.pi, n)
    t2 = rng.uniform(0.0, np.pi, n)
    t3 = rng.uniform(0.0, np.pi / 2.0, n)
    return Dataset(
        np.column_stack(
            [
                np.sin(t1) * np.cos(t2),
                np.sin(t1) * np.sin(t2),
                np.cos(t1) * np.cos(t3),
                np.cos(t1) * np.sin(t3),
            ]
        )
    )


# ---------------------------------------------------------------------------
# Swiss roll


def gen_swissroll(n: int, w=(0.0, 10.0), seed=None) -> Dataset:
    """Rolled plane: X1 = t cos t, X2 = t sin t, X3 ~ U(w1, w2), t ~ U(0, 3 pi)."""
    n = _check_n(n)
    w1, w2 = float(w[0]), float(w[1])
    if w1 >= w2:
        raise ParameterError("w must satisfy w1 < w2")
    rng = as_stream(seed).rng
    t = rng.uniform(0.0, 3.0 * np.pi, n)
    return Dataset(np.column_stack([t * np.cos(t), t * np.sin(t), rng.uniform(w1, w2, n)]))


# ---------------------------------------------------------------------------
# Trefoil knots


_TREFOIL_BAND = 0.1  # half-width of the theta band around pi/4


def gen_trefoil4d(n: int, steps: int = 8, seed=None) -> Dataset:
    """Trefoil-knot band on the unit 3-sphere in 4-D.

    A grid of `steps` band angles theta around pi/4 and ~n/steps knot
    angles phi over [0, 4 pi) maps through X1 = cos(t) cos(phi),
    X2 = cos(t) sin(phi), X3 = sin(t) cos(1.5 phi), X4 = sin(t) sin(1.5 phi);
    the 1.5-frequency pair closes only after phi advances 4 pi. The grid
    tail is trimmed so exactly n rows come back.
    """
    n, steps = _check_n(n), int(steps)
    if steps < 1:
        raise ParameterError("steps must be a positive integer")
    if steps == 1:
        thetas = np.array([np.pi / 4.0])
    else:
        thetas = np.linspace(np.pi / 4.0 - _TREFOIL_BAND, np.pi / 4.0 + _TREFOIL_BAND, steps)
    m = -(-n // steps)
    phis = np.linspace(0.0, 4.0 * np.pi, m, endpoint=False)
    tt = np.repeat(thetas, m)[:n]
    pp = np.tile(phis, steps)[:n]
    return Dataset(
        np.column_stack(
            [
                np.cos(tt) * np.cos(pp),
                np.cos(tt) * np.sin(pp),
                np.sin(tt) * np.cos(1.5 * pp),
                np.sin(tt) * np.sin(1.5 * pp),
            ]
        )
    )


def gen_trefoil3d(n: int, steps: int = 8, seed=None) -> Dataset:
    """Stereographic image of the 4-D trefoil band: X_i -> X_i / (1 - X4).

    Rows with X4 = 1 (the projection pole) are dropped; the default band
    never reaches the pole, so all n rows survive.
    """
    d4 = gen_trefoil4d(n, steps=steps, seed=seed).points
    keep = d4[:, 3] != 1.0
    d4 = d4[keep]
    return Dataset(d4[:, :3] / (1.0 - d4[:, 3])[:, None])


# ---------------------------------------------------------------------------
# Trigonometric


def gen_crescent(n: int, p: int = 2, seed=None) -> Dataset:
    """Crescent arc: n evenly spaced angles on [pi/6, 2 pi] mapped to the
    unit circle.

    Always returns the two arc coordinates; lift to higher dims by
    appending noise dims.
    """
    n = _check_n(n)
    theta = np.linspace(np.pi / 6.0, 2.0 * np.pi, n)
    return Dataset(np.column_stack([np.cos(theta), np.sin(theta)]))


def gen_curvycylinder(n: int, h: float = 10.0, p: int = 4, seed=None) -> Dataset:
    """Cylinder with a sinusoidal fourth dimension tied to height.

    theta ~ U(0, 3 pi), z ~ U(0, h); X1 = cos(theta), X2 = sin(theta),
    X3 = z, X4 = sin(z).
    """
    n = _check_n(n)
    if h <= 0:
        raise ParameterError("h must be positive")
    rng = as_stream(seed).rng
    theta = rng.uniform(0.0, 3.0 * np.pi, n)
    z = rng.uniform(0.0, h, n)
    return Dataset(np.column_stack([np.cos(theta), np.sin(theta), z, np.sin(z)]))


def gen_sphericalspiral(n: int, spins: int = 3, p: int = 4, seed=None) -> Dataset:
    """Spiral sweeping pole to pole over a unit sphere, plus path progress.

    theta runs over [0, 2 pi spins] and phi over [0, pi]; X1 =
    sin(phi) cos(theta), X2 = sin(phi) sin(theta), X3 = cos(phi) + eps
    with eps ~ U(-0.5, 0.5), X4 = theta / max(theta).
    """
    n, spins = _check_n(n), int(spins)
    if spins < 1:
        raise ParameterError("spins must be a positive integer")
    top = 2.0 * np.pi * spins
    theta = np.linspace(0.0, top, n)
    phi = np.linspace(0.0, np.pi, n)
    eps = as_stream(seed).rng.uniform(-0.5, 0.5, n)
    return Dataset(
        np.column_stack(
            [
                np.sin(phi) * np.cos(theta),
                np.sin(phi) * np.sin(theta),
                np.cos(phi) + eps,
                theta / top,
            ]
        )
    )


def gen_helicalspiral(n: int, p: int = 4, seed=None) -> Dataset:
    """Partial helix with a jittered height and a periodic wobble.

    theta runs over [0, 5 pi / 4]; X1 = cos(theta), X2 = sin(theta),
    X3 = 0.05 theta + eps with eps ~ U(-0.5, 0.5), X4 = 0.1 sin(theta).
    """
    n = _check_n(n)
    theta = np.linspace(0.0, 5.0 * np.pi / 4.0, n)
    eps = as_stream(seed).rng.uniform(-0.5, 0.5, n)
    return Dataset(
        np.column_stack([np.cos(theta), np.sin(theta), 0.05 * theta + eps, 0.1 * np.sin(theta)])
    )


def gen_conicspiral(n: int, spins: int = 3, p: int = 4, seed=None) -> Dataset:
    """Archimedean spiral fanning out like a conic helix.

    theta runs over [0, 2 pi spins]; X1 = theta cos(theta),
    X2 = theta sin(theta), X3 = 2 theta / max(theta) + eps3,
    X4 = theta sin(2 theta) + eps4 with eps3, eps4 ~ U(-0.1, 0.6).
    """
    n, spins = _check_n(n), int(spins)
    if spins < 1:
        raise ParameterError("spins must be a positive integer")
    top = 2.0 * np.pi * spins
    theta = np.linspace(0.0, top, n)
    rng = as_stream(seed).rng
    eps3 = rng.uniform(-0.1, 0.6, n)
    eps4 = rng.uniform(-0.1, 0.6, n)
    return Dataset(
        np.column_stack(
            [
                theta * np.cos(theta),
                theta * np.sin(theta),
                2.0 * theta / top + eps3,
                theta * np.sin(2.0 * theta) + eps4,
            ]
        )
    )


def gen_nonlinear(n: int, hc: float = 1.0, non_fac: float = 1.0, p: int = 4, seed=None) -> Dataset:
    """Hyperbola-plus-sinusoid surface with a cosine fourth dimension.

    X1 ~ U(0.1, 2), X2 = hc / X1 + non_fac sin(X1), X3 ~ U(0.1, 0.8),
    X4 = cos(pi X1) + eps with eps ~ U(-0.1, 0.1).
    """
    n = _check_n(n)
    if hc <= 0:
        raise ParameterError("hc must be positive")
    if non_fac < 0:
        raise ParameterError("non_fac must be non-negative")
    rng = as_stream(seed).rng
    x1 = rng.uniform(0.1, 2.0, n)
    x3 = rng.uniform(0.1, 0.8, n)
    x2 = hc / x1 + non_fac * np.sin(x1)
    x4 = np.cos(np.pi * x1) + rng.uniform(-0.1, 0.1, n)
    return Dataset(np.column_stack([x1, x2, x3, x4]))


# ---------------------------------------------------------------------------
# Registry


@dataclass(frozen=True)
class ShapeInfo:
    """Dispatch record for one shape kind."""

    func: Callable[..., Dataset]
    params: tuple[str, ...]  # accepted keyword params beyond (n, seed)
    dim: int | None  # intrinsic output dim; None means "equals p"
    description: str
    ambient_p: bool = False  # composer may forward the scene dimension as p
    labeled: bool = False
    approx_n: bool = False  # lattice kinds return ~n points


SHAPES: dict[str, ShapeInfo] = {
    "expbranches": ShapeInfo(gen_expbranches, ("k",), 2, "Exponential branches in 2-D.", labeled=True),
    "linearbranches": ShapeInfo(gen_linearbranches, ("k",), 2, "Linear branches in 2-D.", labeled=True),
    "curvybranches": ShapeInfo(gen_curvybranches, ("k",), 2, "Quadratic branches in 2-D.", labeled=True),
    "orglinearbranches": ShapeInfo(
        gen_orglinearbranches, ("p", "k", "allow_share"), None,
        "Linear branches leaving one origin point.", ambient_p=True, labeled=True,
    ),
    "orgcurvybranches": ShapeInfo(
        gen_orgcurvybranches, ("p", "k", "allow_share"), None,
        "Curvy branches leaving one origin point.", ambient_p=True, labeled=True,
    ),
    "cone": ShapeInfo(gen_cone, ("p", "h", "ratio"), None, "Cone-shaped structure.", ambient_p=True),
    "gridcube": ShapeInfo(
        gen_gridcube, ("p",), None, "Cube lattice with grid points along each axis.",
        ambient_p=True, approx_n=True,
    ),
    "unifcube": ShapeInfo(gen_unifcube, ("p",), None, "Cube filled with uniform points.", ambient_p=True),
    "gaussian": ShapeInfo(gen_gaussian, ("p", "s"), None, "Multivariate Gaussian cloud.", ambient_p=True),
    "longlinear": ShapeInfo(gen_longlinear, ("p",), None, "Long linear structure.", ambient_p=True),
    "mobius": ShapeInfo(gen_mobius, (), 3, "Mobius band in 3-D."),
    "quadratic": ShapeInfo(gen_quadratic, ("range",), 2, "Quadratic curve in 2-D."),
    "cubic": ShapeInfo(gen_cubic, ("range",), 2, "Cubic curve in 2-D."),
    "pyrrect": ShapeInfo(gen_pyrrect, ("p", "h", "l_vec", "rt"), None, "Rectangular-base pyramid.", ambient_p=True),
    "pyrtri": ShapeInfo(gen_pyrtri, ("p", "h", "l", "rt"), None, "Triangular-base pyramid.", ambient_p=True),
    "pyrstar": ShapeInfo(gen_pyrstar, ("p", "h", "rb"), None, "Star-base pyramid.", ambient_p=True),
    "pyrfrac": ShapeInfo(gen_pyrfrac, ("p",), None, "Pyramid with self-similar holes.", ambient_p=True),
    "scurve": ShapeInfo(gen_scurve, (), 3, "S-curve in 3-D."),
    "circle": ShapeInfo(gen_circle, ("p",), None, "Circle with sinusoid extensions.", ambient_p=True),
    "curvycycle": ShapeInfo(gen_curvycycle, ("p",), None, "Curvy closed cycle.", ambient_p=True),
    "unifsphere": ShapeInfo(gen_unifsphere, ("r",), 3, "Uniform sphere surface in 3-D."),
    "hollowsphere": ShapeInfo(gen_hollowsphere, ("p",), None, "Hollow sphere surface.", ambient_p=True),
    "gridedsphere": ShapeInfo(
        gen_gridedsphere, ("p",), None, "Deterministic grid on a sphere surface.",
        ambient_p=True, approx_n=True,
    ),
    "clusteredspheres": ShapeInfo(
        gen_clusteredspheres, ("k_small", "r_vec", "spe", "n_vec"), 3,
        "Small spheres inside a big sphere.", labeled=True,
    ),
    "hemisphere": ShapeInfo(gen_hemisphere, ("p",), 4, "Hemisphere of a 4-D sphere."),
    "swissroll": ShapeInfo(gen_swissroll, ("w",), 3, "Swiss roll in 3-D."),
    "trefoil4d": ShapeInfo(gen_trefoil4d, ("steps",), 4, "Trefoil knot band in 4-D."),
    "trefoil3d": ShapeInfo(gen_trefoil3d, ("steps",), 3, "Stereographic trefoil in 3-D."),
    "crescent": ShapeInfo(gen_crescent, ("p",), 2, "Crescent arc in 2-D."),
    "curvycylinder": ShapeInfo(gen_curvycylinder, ("h", "p"), 4, "Cylinder with a curvy height dimension."),
    "sphericalspiral": ShapeInfo(gen_sphericalspiral, ("spins", "p"), 4, "Spiral on a sphere surface."),
    "helicalspiral": ShapeInfo(gen_helicalspiral, ("p",), 4, "Helical spiral."),
    "conicspiral": ShapeInfo(gen_conicspiral, ("spins", "p"), 4, "Conic spiral."),
    "nonlinear": ShapeInfo(gen_nonlinear, ("hc", "non_fac", "p"), 4, "Nonlinear hyperbola surface."),
}


def list_shapes() -> tuple[str, ...]:
    return tuple(SHAPES)


def shape_info(kind: str) -> ShapeInfo:
    try:
        return SHAPES[kind]
    except KeyError:
        raise UnknownShapeError(kind) from None


def generate(kind: str, n: int, seed=None, **params) -> Dataset:
    """Generate `n` points of the named shape kind.

    Only parameters the kind accepts are allowed; anything else raises
    RejectedParameterError rather than being silently ignored.
    """
    info = shape_info(kind)
    bad = sorted(set(params) - set(info.params))
    if bad:
        raise RejectedParameterError(
            f"parameter(s) {', '.join(bad)} not accepted by shape '{kind}' "
            f"(accepts: {', '.join(info.params) or 'none beyond n'})"
        )
    return info.func(n=n, seed=seed, **params)
