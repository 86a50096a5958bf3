import numpy as np
import pytest

from hdshapes.core import Dataset, ParameterError
from hdshapes.shapes import gen_scurve, gen_unifcube
from hdshapes.topology import (
    DegenerateHoleError,
    HoleRetentionWarning,
    gen_hole,
    gen_scurvehole,
    gen_unifcubehole,
)


def test_hole_exhaustive_filter():
    ds = gen_unifcube(10000, p=2, seed=1)
    anchor = np.array([0.5, 0.5])
    out = gen_hole(ds, 0.25, anchor=anchor)
    dist = np.linalg.norm(ds.points - anchor, axis=1)
    assert out.n == int((dist > 0.25).sum())
    assert (np.linalg.norm(out.points - anchor, axis=1) > 0.25).all()
    # retained rows are exactly the surviving input rows, order preserved
    assert np.array_equal(out.points, ds.points[dist > 0.25])


def test_hole_area_fraction_2d():
    ds = gen_unifcube(10000, p=2, seed=2)
    out = gen_hole(ds, 0.25, anchor=(0.5, 0.5))
    assert abs(out.n / ds.n - (1 - np.pi * 0.25**2)) < 0.02  # 0.8037


def test_hole_volume_fraction_3d():
    ds = gen_unifcube(5000, p=3, seed=3)
    out = gen_hole(ds, 0.2, anchor=(0.5, 0.5, 0.5))
    assert abs(out.n / ds.n - (1 - 4.0 / 3.0 * np.pi * 0.2**3)) < 0.02  # 0.9665


def test_hole_tiny_radius_keeps_all():
    ds = gen_scurve(500, seed=4)
    assert gen_hole(ds, 1e-12).n == 500


def test_hole_labels_travel():
    ds = Dataset([[0.0, 0.0], [5.0, 5.0], [0.1, 0.0]], labels=["a", "b", "c"])
    out = gen_hole(ds, 1.0, anchor=(0.0, 0.0))
    assert out.labels.tolist() == ["b"]


def test_hole_idempotent_with_fixed_anchor():
    ds = gen_unifcube(2000, p=3, seed=5)
    anchor = (0.5, 0.5, 0.5)
    once = gen_hole(ds, 0.3, anchor=anchor)
    twice = gen_hole(once, 0.3, anchor=anchor)
    assert np.array_equal(once.points, twice.points)


def test_hole_radius_monotonicity():
    ds = gen_unifcube(3000, p=2, seed=6)
    anchor = (0.5, 0.5)
    small = gen_hole(ds, 0.1, anchor=anchor)
    large = gen_hole(ds, 0.3, anchor=anchor)
    kept_small = {tuple(row) for row in small.points}
    assert all(tuple(row) in kept_small for row in large.points)


def test_hole_degenerate():
    ds = gen_unifcube(100, p=2, seed=7)
    with pytest.raises(DegenerateHoleError):
        gen_hole(ds, 50.0)


def test_hole_low_retention_warns():
    ds = gen_unifcube(2000, p=2, seed=8)
    with pytest.warns(HoleRetentionWarning):
        gen_hole(ds, 0.66, anchor=(0.5, 0.5))


def test_hole_validation():
    ds = gen_unifcube(10, p=2, seed=9)
    with pytest.raises(ParameterError):
        gen_hole(ds, 0.0)
    with pytest.raises(ParameterError):
        gen_hole(ds, 0.1, anchor=(0.5, 0.5, 0.5))
    with pytest.raises(ParameterError):
        gen_hole(Dataset(np.empty((0, 2))), 0.1)


def test_scurvehole_exact_n_and_manifold():
    ds = gen_scurvehole(500, 0.5, seed=10)
    assert ds.n == 500
    pts = ds.points
    assert np.abs(pts[:, 0] ** 2 + (np.abs(pts[:, 2]) - 1.0) ** 2 - 1.0).max() < 1e-9
    # the hole sits near the analytic s-curve mean (0, 1, 0)
    dist = np.linalg.norm(pts - np.array([0.0, 1.0, 0.0]), axis=1)
    assert dist.min() > 0.5 - 0.1


def test_scurvehole_tiny_radius():
    assert gen_scurvehole(400, 1e-12, seed=11).n == 400


def test_scurvehole_deterministic():
    a = gen_scurvehole(300, 0.4, seed=12)
    b = gen_scurvehole(300, 0.4, seed=12)
    assert a.points.tobytes() == b.points.tobytes()


def test_unifcubehole_void():
    ds = gen_unifcubehole(800, p=2, r_hole=0.3, seed=13)
    assert ds.n == 800
    center = np.full(2, 0.5)
    dist = np.linalg.norm(ds.points - center, axis=1)
    # anchor is the oversample's mean, within ~0.01 of the cube center
    assert dist.min() > 0.3 - 0.02


def test_unifcubehole_tiny_radius_uniform():
    ds = gen_unifcubehole(600, p=3, r_hole=1e-12, seed=14)
    assert ds.n == 600
    assert (ds.points >= 0).all() and (ds.points <= 1).all()


def test_unifcubehole_degenerate():
    # a radius beyond the half-diagonal swallows the whole cube
    with pytest.raises(DegenerateHoleError):
        gen_unifcubehole(200, p=2, r_hole=1.5, seed=15)
