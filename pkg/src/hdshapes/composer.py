"""Multi-cluster scene composition.

The pipeline generates each cluster from its shape kind, applies scale and
optional rotation, pads with Gaussian noise columns up to the scene
dimension, translates the cluster centroid onto its target location,
labels rows by shape name, concatenates, optionally appends background
noise, and shuffles rows. Per-cluster substreams keep cluster generation
independent of evaluation order, so the pipeline could run clusters
concurrently without changing its output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Dataset,
    DimensionError,
    ParameterError,
    RotationPlan,
    as_dataset,
    as_stream,
    gen_bkgnoise,
    gen_nproduct,
    gen_nsum,
    gen_rotation,
)
from .shapes import RejectedParameterError, generate, shape_info

__all__ = [
    "MultiClusterSpec",
    "gen_multicluster",
    "pad_to_dim",
    "apply_transform",
    "simplex_vertices",
    "make_preset",
    "list_presets",
    "PRESETS",
]

PAD_SD = 0.2  # noise-column standard deviation used when padding dimensions


def simplex_vertices(p: int, scale: float = 1.0) -> np.ndarray:
    """Vertices of a regular p-simplex in R^p, centered, unit edge length."""
    p = int(p)
    if p < 1:
        raise ParameterError("p must be a positive integer")
    alpha = (1.0 + np.sqrt(p + 1.0)) / p
    verts = np.vstack([np.eye(p), np.full(p, alpha)])
    verts -= verts.mean(axis=0)
    verts /= np.sqrt(2.0)  # pairwise distance of the raw construction
    return verts * scale


def _rotation_matrix(rotation) -> np.ndarray:
    if isinstance(rotation, RotationPlan):
        return gen_rotation(rotation)
    mat = np.asarray(rotation, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ParameterError("rotation must be a square matrix or a RotationPlan")
    err = np.abs(mat.T @ mat - np.eye(mat.shape[0])).max()
    if err > 1e-8:
        raise ParameterError(f"rotation matrix is not orthogonal (max |R'R - I| = {err:.2e})")
    return mat


def pad_to_dim(ds, p_target: int, seed=None) -> Dataset:
    """Append Gaussian noise columns up to p_target dimensions.

    New columns are N(mu, 0.2^2) with mu the mean over all existing
    coordinate entries of the dataset.
    """
    ds = as_dataset(ds)
    p_target = int(p_target)
    if p_target < ds.p:
        raise DimensionError(f"cannot pad {ds.p} columns down to {p_target}")
    if p_target == ds.p:
        return ds
    mu = float(ds.points.mean())
    extra = as_stream(seed).rng.normal(mu, PAD_SD, (ds.n, p_target - ds.p))
    return Dataset(np.hstack([ds.points, extra]), ds.labels)


def apply_transform(ds, scale: float, rotation=None, center=None) -> Dataset:
    """Scale, optionally rotate, then translate the centroid onto `center`."""
    ds = as_dataset(ds)
    if scale <= 0:
        raise ParameterError("scale must be positive")
    pts = ds.points * float(scale)
    if rotation is not None:
        rot = _rotation_matrix(rotation)
        if rot.shape[0] != ds.p:
            raise ParameterError(f"rotation is {rot.shape[0]}-dimensional, dataset has {ds.p}")
        pts = pts @ rot.T
    if center is not None:
        center = np.asarray(center, dtype=np.float64).ravel()
        if center.shape[0] != ds.p:
            raise ParameterError(f"center has length {center.shape[0]}, dataset has {ds.p}")
        pts = pts + (center - pts.mean(axis=0))
    return Dataset(pts, ds.labels)


@dataclass
class MultiClusterSpec:
    """Declarative description of a multi-cluster scene.

    `loc` is a k x p matrix of target centroids; a row of all NaN leaves
    that cluster where its formulas put it. `rotation` entries may be
    None, an orthogonal matrix, or a RotationPlan, sized either to the
    cluster's generated dimension (applied before padding) or to the
    scene dimension (applied after). `extras` is a dict of shape
    parameters applied to every cluster whose kind accepts them, or a
    per-cluster list of dicts.
    """

    n: tuple[int, ...]
    k: int
    loc: np.ndarray
    scale: tuple[float, ...]
    shape: tuple[str, ...]
    rotation: tuple | None = None
    is_bkg: bool = False
    extras: dict | tuple[dict, ...] | None = None

    def __post_init__(self):
        self.k = int(self.k)
        if self.k < 1:
            raise ParameterError("k must be a positive integer")
        self.n = tuple(int(v) for v in np.atleast_1d(self.n))
        self.scale = tuple(float(v) for v in np.atleast_1d(self.scale))
        self.shape = tuple(str(v) for v in np.atleast_1d(self.shape))
        for name, seq in (("n", self.n), ("scale", self.scale), ("shape", self.shape)):
            if len(seq) != self.k:
                raise ParameterError(f"{name} has {len(seq)} entries, expected k = {self.k}")
        if any(v < 1 for v in self.n):
            raise ParameterError("every cluster size must be at least 1")
        if any(v <= 0 for v in self.scale):
            raise ParameterError("every scale must be positive")
        for kind in self.shape:
            shape_info(kind)  # raises UnknownShapeError for unregistered kinds
        self.loc = np.asarray(self.loc, dtype=np.float64)
        if self.loc.ndim != 2 or self.loc.shape[0] != self.k:
            raise ParameterError(f"loc must be a {self.k} x p matrix, got shape {self.loc.shape}")
        nan_rows = np.isnan(self.loc)
        if (nan_rows.any(axis=1) & ~nan_rows.all(axis=1)).any():
            raise ParameterError("loc rows must be fully specified or entirely NaN")
        if self.rotation is not None:
            rot = tuple(self.rotation)
            if len(rot) != self.k:
                raise ParameterError(f"rotation has {len(rot)} entries, expected k = {self.k}")
            self.rotation = rot
        self.extras = self._normalized_extras()

    @property
    def p(self) -> int:
        return self.loc.shape[1]

    def _normalized_extras(self) -> tuple[dict, ...]:
        if self.extras is None:
            return tuple({} for _ in range(self.k))
        if isinstance(self.extras, dict):
            accepted_anywhere = set()
            per_cluster = []
            for kind in self.shape:
                ok = set(shape_info(kind).params)
                per_cluster.append({k: v for k, v in self.extras.items() if k in ok})
                accepted_anywhere |= ok & set(self.extras)
            rejected = sorted(set(self.extras) - accepted_anywhere)
            if rejected:
                raise RejectedParameterError(
                    f"extras parameter(s) {', '.join(rejected)} not accepted by any "
                    f"cluster shape in {sorted(set(self.shape))}"
                )
            return tuple(per_cluster)
        extras = tuple(dict(e or {}) for e in self.extras)
        if len(extras) != self.k:
            raise ParameterError(f"extras has {len(extras)} entries, expected k = {self.k}")
        for kind, ex in zip(self.shape, extras):
            bad = sorted(set(ex) - set(shape_info(kind).params))
            if bad:
                raise RejectedParameterError(
                    f"extras parameter(s) {', '.join(bad)} not accepted by shape '{kind}'"
                )
        return extras

    @classmethod
    def from_dict(cls, cfg: dict) -> "MultiClusterSpec":
        """Build a spec from a parsed JSON config, with field diagnostics."""
        if not isinstance(cfg, dict):
            raise ParameterError("config must be a JSON object")
        missing = [key for key in ("n", "k", "loc", "scale", "shape") if key not in cfg]
        if missing:
            raise ParameterError(f"config is missing required field(s): {', '.join(missing)}")
        known = {"n", "k", "loc", "scale", "shape", "rotation", "is_bkg", "extras"}
        unknown = sorted(set(cfg) - known)
        if unknown:
            raise ParameterError(f"config has unknown field(s): {', '.join(unknown)}")
        rotation = cfg.get("rotation")
        if rotation is not None:
            parsed = []
            for i, entry in enumerate(rotation):
                if entry is None:
                    parsed.append(None)
                elif isinstance(entry, dict):
                    try:
                        parsed.append(
                            RotationPlan(entry["dim"], tuple(tuple(s) for s in entry["steps"]))
                        )
                    except KeyError as exc:
                        raise ParameterError(
                            f"rotation[{i}] must have 'dim' and 'steps' fields"
                        ) from exc
                else:
                    parsed.append(np.asarray(entry, dtype=np.float64))
            rotation = tuple(parsed)
        extras = cfg.get("extras")
        if isinstance(extras, list):
            extras = tuple(extras)
        return cls(
            n=cfg["n"],
            k=cfg["k"],
            loc=cfg["loc"],
            scale=cfg["scale"],
            shape=cfg["shape"],
            rotation=rotation,
            is_bkg=bool(cfg.get("is_bkg", False)),
            extras=extras,
        )


def _cluster_labels(shapes: tuple[str, ...]) -> list[str]:
    counts = {}
    for kind in shapes:
        counts[kind] = counts.get(kind, 0) + 1
    seen = {}
    out = []
    for kind in shapes:
        if counts[kind] == 1:
            out.append(kind)
        else:
            seen[kind] = seen.get(kind, 0) + 1
            out.append(f"{kind}_{seen[kind]}")
    return out


def gen_multicluster(spec: MultiClusterSpec, seed=None, shuffle: bool = True) -> Dataset:
    """Compose a labeled multi-cluster dataset from `spec`.

    Per cluster: generate -> scale -> rotate -> pad -> translate. Shapes
    that take a dimension argument receive the scene dimension unless the
    cluster's extras override it; lower-dimensional shapes are padded with
    N(mu, 0.2^2) columns (mu = mean of that cluster's coordinates). With
    is_bkg, round(0.1 * sum(n)) rows of N(scene mean, scene sd^2) noise
    are appended under the label "background". Rows come back shuffled
    unless `shuffle` is False.
    """
    if not isinstance(spec, MultiClusterSpec):
        raise ParameterError("gen_multicluster expects a MultiClusterSpec")
    stream = as_stream(seed)
    p = spec.p
    names = _cluster_labels(spec.shape)
    parts, labels = [], []
    for c in range(spec.k):
        sub = stream.derive(c)
        kind = spec.shape[c]
        info = shape_info(kind)
        kwargs = dict(spec.extras[c])
        if info.ambient_p and "p" not in kwargs:
            kwargs["p"] = p
        ds = generate(kind, n=spec.n[c], seed=sub.derive(0), **kwargs)
        if ds.p > p:
            raise DimensionError(
                f"cluster {c} shape '{kind}' produced {ds.p} dims but the scene has {p}"
            )
        pts = ds.points * spec.scale[c]
        ambient_rot = None
        if spec.rotation is not None and spec.rotation[c] is not None:
            rot = _rotation_matrix(spec.rotation[c])
            if rot.shape[0] == ds.p:
                pts = pts @ rot.T
            elif rot.shape[0] == p:
                ambient_rot = rot
            else:
                raise ParameterError(
                    f"cluster {c} rotation is {rot.shape[0]}-dimensional; expected "
                    f"{ds.p} (shape) or {p} (scene)"
                )
        if pts.shape[1] < p:
            mu = float(pts.mean())
            extra = sub.derive(1).rng.normal(mu, PAD_SD, (pts.shape[0], p - pts.shape[1]))
            pts = np.hstack([pts, extra])
        if ambient_rot is not None:
            pts = pts @ ambient_rot.T
        target = spec.loc[c]
        if not np.isnan(target).all():
            pts = pts + (target - pts.mean(axis=0))
        parts.append(pts)
        labels.append(np.full(pts.shape[0], names[c]))
    all_pts = np.vstack(parts)
    all_labels = np.concatenate(labels)
    if spec.is_bkg:
        n_bkg = max(1, round(0.1 * sum(spec.n)))
        sd = all_pts.std(axis=0, ddof=1)
        sd[sd == 0] = 1e-9
        bkg = gen_bkgnoise(n_bkg, p, all_pts.mean(axis=0), sd, seed=stream.derive(spec.k))
        all_pts = np.vstack([all_pts, bkg.points])
        all_labels = np.concatenate([all_labels, np.full(n_bkg, "background")])
    out = Dataset(all_pts, all_labels)
    if shuffle:
        perm = stream.derive(spec.k + 1).rng.permutation(out.n)
        out = out.take(perm)
    return out


# ---------------------------------------------------------------------------
# Preset scenes


def _zeros_loc(k: int, p: int) -> np.ndarray:
    return np.zeros((k, p))


def _preset_mobiusgau(n=1000, seed=None):
    sizes = gen_nsum(n, 2)
    spec = MultiClusterSpec(
        n=sizes,
        k=2,
        # NaN row: keep the band exactly where its parameterization puts it
        loc=np.array([[np.nan] * 3, [4.0, 4.0, 0.0]]),
        scale=(1.0, 0.5),
        shape=("mobius", "gaussian"),
    )
    return gen_multicluster(spec, seed=seed)


def _preset_multigau(n=1500, k=3, p=4, seed=None):
    if k > p + 1:
        raise ParameterError("multigau places clusters on simplex vertices; needs k <= p + 1")
    spec = MultiClusterSpec(
        n=gen_nsum(n, k),
        k=k,
        loc=simplex_vertices(p, scale=5.0)[:k],
        scale=(1.0,) * k,
        shape=("gaussian",) * k,
    )
    return gen_multicluster(spec, seed=seed)


def _preset_curvygau(n=1000, p=4, seed=None):
    loc = _zeros_loc(2, p)
    loc[1, 0], loc[1, 1] = 3.0, 1.0
    spec = MultiClusterSpec(
        n=gen_nsum(n, 2),
        k=2,
        loc=loc,
        scale=(2.0, 0.5),
        shape=("quadratic", "gaussian"),
    )
    return gen_multicluster(spec, seed=seed)


def _ring_chain(n, k, shape, spacing, interlock, seed):
    """Row of ring-like clusters along x1, optionally in alternating planes."""
    loc = _zeros_loc(k, 3)
    loc[:, 0] = spacing * np.arange(k)
    extras = ({"p": 2},) * k if shape == "circle" else None
    rotation = None
    if interlock:
        flip = RotationPlan(3, ((1, 3, np.pi / 2.0),))
        rotation = tuple(flip if i % 2 else None for i in range(k))
    spec = MultiClusterSpec(
        n=gen_nsum(n, k),
        k=k,
        loc=loc,
        scale=(1.0,) * k,
        shape=(shape,) * k,
        rotation=rotation,
        extras=extras,
    )
    return gen_multicluster(spec, seed=seed)


def _preset_klink_circles(n=900, k=3, seed=None):
    return _ring_chain(n, k, "circle", spacing=1.0, interlock=True, seed=seed)


def _preset_chain_circles(n=900, k=3, seed=None):
    return _ring_chain(n, k, "circle", spacing=1.8, interlock=False, seed=seed)


def _preset_klink_curvycycle(n=900, k=3, seed=None):
    return _ring_chain(n, k, "curvycycle", spacing=1.0, interlock=True, seed=seed)


def _preset_chain_curvycycle(n=900, k=3, seed=None):
    return _ring_chain(n, k, "curvycycle", spacing=1.8, interlock=False, seed=seed)


def _concentric_gau(n, k, p, ring_shape, seed):
    """k concentric rings of growing radius with a small Gaussian at center."""
    sizes = gen_nsum(n, k + 1)
    ring_extras = {"p": 2} if ring_shape == "circle" else {"p": 3}
    spec = MultiClusterSpec(
        n=sizes,
        k=k + 1,
        loc=_zeros_loc(k + 1, p),
        scale=tuple(2.0 * (i + 1) for i in range(k)) + (0.5,),
        shape=(ring_shape,) * k + ("gaussian",),
        extras=tuple([dict(ring_extras)] * k + [{}]),
    )
    return gen_multicluster(spec, seed=seed)


def _preset_gaucircles(n=2000, k=3, p=4, seed=None):
    return _concentric_gau(n, k, p, "circle", seed)


def _preset_gaucurvycycle(n=2000, k=3, p=4, seed=None):
    return _concentric_gau(n, k, p, "curvycycle", seed)


def _preset_onegrid(n=400, seed=None):
    spec = MultiClusterSpec(
        n=(n,), k=1, loc=np.array([[0.5, 0.5]]), scale=(1.0,), shape=("gridcube",)
    )
    return gen_multicluster(spec, seed=seed)


def _preset_twogrid_overlap(n=800, seed=None):
    spec = MultiClusterSpec(
        n=gen_nsum(n, 2),
        k=2,
        loc=np.array([[0.5, 0.5], [1.0, 0.75]]),
        scale=(1.0, 1.0),
        shape=("gridcube", "gridcube"),
    )
    return gen_multicluster(spec, seed=seed)


def _preset_twogrid_shift(n=800, seed=None):
    m = gen_nproduct(gen_nsum(n, 2)[0], 2)[0]
    delta = 0.5 / (m - 1) if m > 1 else 0.25  # half a lattice cell
    spec = MultiClusterSpec(
        n=gen_nsum(n, 2),
        k=2,
        loc=np.array([[0.5, 0.5], [0.5 + delta, 0.5 + delta]]),
        scale=(1.0, 1.0),
        shape=("gridcube", "gridcube"),
    )
    return gen_multicluster(spec, seed=seed)


def _preset_shape_para(n=1200, k=3, p=4, seed=None):
    loc = _zeros_loc(k, p)
    loc[:, 1] = 2.0 * np.arange(k)
    spec = MultiClusterSpec(
        n=gen_nsum(n, k),
        k=k,
        loc=loc,
        scale=(1.0,) * k,
        shape=("quadratic",) * k,
    )
    return gen_multicluster(spec, seed=seed)


PRESETS: dict[str, tuple] = {
    # name: (builder, accepted params, description)
    "mobiusgau": (_preset_mobiusgau, ("n",), "Mobius band beside a Gaussian blob."),
    "multigau": (_preset_multigau, ("n", "k", "p"), "Well-separated Gaussian clusters."),
    "curvygau": (_preset_curvygau, ("n", "p"), "Curved band with a Gaussian cluster."),
    "klink_circles": (_preset_klink_circles, ("n", "k"), "Interlocked rings in alternating planes."),
    "chain_circles": (_preset_chain_circles, ("n", "k"), "Coplanar rings connected in a row."),
    "klink_curvycycle": (_preset_klink_curvycycle, ("n", "k"), "Interlocked curvy cycles."),
    "chain_curvycycle": (_preset_chain_curvycycle, ("n", "k"), "Curvy cycles connected in a row."),
    "gaucircles": (_preset_gaucircles, ("n", "k", "p"), "Concentric rings with a central Gaussian."),
    "gaucurvycycle": (_preset_gaucurvycycle, ("n", "k", "p"), "Concentric curvy cycles with a central Gaussian."),
    "onegrid": (_preset_onegrid, ("n",), "Single 2-D lattice."),
    "twogrid_overlap": (_preset_twogrid_overlap, ("n",), "Two partially overlapping lattices."),
    "twogrid_shift": (_preset_twogrid_shift, ("n",), "Two lattices offset by half a cell."),
    "shape_para": (_preset_shape_para, ("n", "k", "p"), "Parallel copies of one curved shape."),
}


def list_presets() -> tuple[str, ...]:
    return tuple(PRESETS)


def make_preset(name: str, seed=None, **params) -> Dataset:
    """Build a named preset scene; accepts only that preset's parameters."""
    try:
        builder, accepted, _ = PRESETS[name]
    except KeyError:
        raise ParameterError(
            f"unknown preset '{name}'; available presets: {', '.join(PRESETS)}"
        ) from None
    provided = {k: v for k, v in params.items() if v is not None}
    bad = sorted(set(provided) - set(accepted))
    if bad:
        raise RejectedParameterError(
            f"parameter(s) {', '.join(bad)} not accepted by preset '{name}' "
            f"(accepts: {', '.join(accepted)})"
        )
    return builder(seed=seed, **provided)
