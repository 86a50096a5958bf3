import numpy as np
import pytest

from hdshapes.core import (
    Dataset,
    ParameterError,
    RandomStream,
    RotationPlan,
    as_stream,
    derive,
    gen_bkgnoise,
    gen_nproduct,
    gen_nsum,
    gen_rotation,
    make_stream,
    normalize_data,
    randomize_rows,
    relocate_clusters,
)


# ---------------------------------------------------------------------------
# Random streams


def test_same_seed_same_sequence():
    a = make_stream(0).rng.random(1000)
    b = make_stream(0).rng.random(1000)
    assert a.tobytes() == b.tobytes()


def test_same_path_same_sequence():
    a = make_stream(9).derive(3).derive(7).rng.random(100)
    b = make_stream(9).derive(3).derive(7).rng.random(100)
    assert a.tobytes() == b.tobytes()


def test_distinct_paths_differ():
    # sibling substreams should be effectively independent
    a = make_stream(0).derive(1).rng.random(1000)
    b = make_stream(0).derive(2).rng.random(1000)
    assert (a == b).sum() <= 10


def test_uniforms_in_unit_interval():
    u = make_stream(42).rng.random(10000)
    assert (u >= 0).all() and (u < 1).all()


def test_derive_function_matches_method():
    s = make_stream(5)
    assert derive(s, 2).rng.random(10).tobytes() == s.derive(2).rng.random(10).tobytes()


def test_as_stream_validation():
    s = make_stream(1)
    assert as_stream(s) is s
    assert isinstance(as_stream(7), RandomStream)
    assert isinstance(as_stream(None), RandomStream)
    with pytest.raises(ParameterError):
        as_stream(-1)
    with pytest.raises(ParameterError):
        as_stream("not a seed")


# ---------------------------------------------------------------------------
# Dataset


def test_dataset_basics():
    ds = Dataset([[1.0, 2.0], [3.0, 4.0]], labels=["a", "b"])
    assert ds.n == 2 and ds.p == 2
    assert ds.column_names == ("x1", "x2")
    assert not ds.points.flags.writeable


def test_dataset_rejects_nonfinite():
    with pytest.raises(ParameterError):
        Dataset([[1.0, np.nan]])
    with pytest.raises(ParameterError):
        Dataset([[np.inf, 0.0]])


def test_dataset_label_count_must_match():
    with pytest.raises(ParameterError):
        Dataset([[1.0], [2.0]], labels=["only-one"])


# ---------------------------------------------------------------------------
# Rotations


def test_empty_plan_is_identity():
    rot = gen_rotation(RotationPlan(4))
    assert np.array_equal(rot, np.eye(4))


def test_quarter_turn_2d():
    rot = gen_rotation(RotationPlan(2, ((1, 2, np.pi / 2),)))
    assert np.abs(rot @ np.array([1.0, 0.0]) - np.array([0.0, 1.0])).max() < 1e-12


def test_plan_validation():
    with pytest.raises(ParameterError):
        RotationPlan(3, ((2, 2, 0.5),))  # i == j
    with pytest.raises(ParameterError):
        RotationPlan(3, ((1, 4, 0.5),))  # axis out of range
    with pytest.raises(ParameterError):
        RotationPlan(3, ((3, 1, 0.5),))  # i > j violates i < j
    with pytest.raises(ParameterError):
        gen_rotation(np.eye(3))  # not a plan


def _random_plan(rng, p, n_steps=10):
    steps = []
    for _ in range(n_steps):
        i, j = sorted(rng.choice(p, size=2, replace=False) + 1)
        steps.append((int(i), int(j), float(rng.uniform(0, 2 * np.pi))))
    return RotationPlan(p, tuple(steps))


def test_random_plans_orthogonal_and_distance_preserving():
    rng = np.random.default_rng(2024)
    for trial in range(100):
        p = int(rng.integers(2, 11))
        rot = gen_rotation(_random_plan(rng, p))
        assert np.abs(rot.T @ rot - np.eye(p)).max() < 1e-10
        assert abs(np.linalg.det(rot) - 1.0) < 1e-10
    # distance preservation on random point pairs
    p = 5
    rot = gen_rotation(_random_plan(rng, p))
    x = rng.standard_normal((100, p))
    y = rng.standard_normal((100, p))
    before = np.linalg.norm(x - y, axis=1)
    after = np.linalg.norm(x @ rot.T - y @ rot.T, axis=1)
    assert np.abs(before - after).max() < 1e-9


# ---------------------------------------------------------------------------
# Integer partitions


def _nproduct_oracle(target, k):
    """Brute force: smallest product >= target over near-equal factor tuples."""
    best = None
    for base in range(1, target + 2):
        for j in range(k + 1):
            prod = base ** (k - j) * (base + 1) ** j
            if prod >= target and (best is None or prod < best):
                best = prod
        if base**k >= target:
            break
    return best


def test_nproduct_examples():
    assert gen_nproduct(17, 1) == (17,)
    assert gen_nproduct(1000, 3) == (10, 10, 10)
    out = gen_nproduct(1000, 2)
    assert out == (32, 32) and 32 * 32 == 1024


def test_nproduct_matches_bruteforce_oracle():
    rng = np.random.default_rng(7)
    cases = [(int(rng.integers(1, 5000)), int(rng.integers(1, 6))) for _ in range(60)]
    cases += [(1, 1), (1, 4), (2, 3), (1000, 2), (1000, 3), (17, 1)]
    for target, k in cases:
        factors = gen_nproduct(target, k)
        assert len(factors) == k
        assert all(f >= 1 for f in factors)
        prod = int(np.prod(factors))
        assert prod == _nproduct_oracle(target, k)
        assert max(factors) - min(factors) <= 1
        # no factor can shrink: replacing any f by f-1 drops below target
        for i, f in enumerate(factors):
            assert prod // f * (f - 1) < target


def test_nproduct_validation():
    with pytest.raises(ParameterError):
        gen_nproduct(0, 2)
    with pytest.raises(ParameterError):
        gen_nproduct(10, 0)


def test_nsum_examples():
    assert gen_nsum(9, 3) == (3, 3, 3)
    assert gen_nsum(10, 3) == (4, 3, 3)
    assert gen_nsum(3, 3) == (1, 1, 1)


def test_nsum_properties():
    rng = np.random.default_rng(11)
    for _ in range(50):
        k = int(rng.integers(1, 12))
        target = int(rng.integers(k, 5000))
        out = gen_nsum(target, k)
        assert sum(out) == target
        assert max(out) - min(out) <= 1


def test_nsum_infeasible():
    with pytest.raises(ParameterError):
        gen_nsum(2, 3)


# ---------------------------------------------------------------------------
# Dataset transforms


def test_normalize_affine_rescale():
    ds = normalize_data(Dataset([[0.0], [5.0], [10.0]]))
    assert np.array_equal(ds.points.ravel(), [0.0, 0.5, 1.0])


def test_normalize_constant_column():
    ds = normalize_data(Dataset([[7.0], [7.0], [7.0]]))
    assert np.array_equal(ds.points.ravel(), [0.0, 0.0, 0.0])


def test_normalize_column_ranges_and_idempotence():
    pts = np.random.default_rng(3).normal(5, 2, (200, 4))
    once = normalize_data(Dataset(pts))
    assert np.allclose(once.points.min(axis=0), 0.0)
    assert np.allclose(once.points.max(axis=0), 1.0)
    twice = normalize_data(once)
    assert np.array_equal(once.points, twice.points)


def test_normalize_empty_errors():
    with pytest.raises(ParameterError):
        normalize_data(Dataset(np.empty((0, 3))))


def test_randomize_rows_single_row_identity():
    ds = Dataset([[1.0, 2.0]], labels=["a"])
    out = randomize_rows(ds, seed=5)
    assert np.array_equal(out.points, ds.points)
    assert out.labels.tolist() == ["a"]


def test_randomize_rows_is_permutation():
    pts = np.random.default_rng(1).normal(size=(100, 3))
    out = randomize_rows(Dataset(pts), seed=9)
    assert np.array_equal(np.sort(out.points, axis=0), np.sort(pts, axis=0))
    again = randomize_rows(Dataset(pts), seed=9)
    assert np.array_equal(out.points, again.points)


def test_randomize_rows_labels_travel():
    pts = np.arange(20, dtype=float).reshape(10, 2)
    labels = [f"r{i}" for i in range(10)]
    out = randomize_rows(Dataset(pts, labels), seed=2)
    for row, lab in zip(out.points, out.labels):
        assert lab == f"r{int(row[0]) // 2}"


def test_relocate_identity():
    rng = np.random.default_rng(4)
    pts = rng.normal(size=(60, 3))
    labels = ["a"] * 30 + ["b"] * 30
    cents = np.vstack([pts[:30].mean(axis=0), pts[30:].mean(axis=0)])
    out = relocate_clusters(Dataset(pts, labels), cents)
    assert np.abs(out.points - pts).max() < 1e-12


def test_relocate_single_cluster_to_origin():
    pts = np.random.default_rng(5).normal(3.0, 1.0, (40, 2))
    out = relocate_clusters(Dataset(pts, ["c"] * 40), np.zeros((1, 2)))
    assert np.abs(out.points.mean(axis=0)).max() < 1e-12


def test_relocate_separates_clusters():
    rng = np.random.default_rng(6)
    pts = rng.normal(size=(80, 2))
    labels = ["a"] * 40 + ["b"] * 40
    out = relocate_clusters(Dataset(pts, labels), np.array([[0.0, 0.0], [100.0, 0.0]]))
    a = out.points[np.asarray(out.labels) == "a"]
    b = out.points[np.asarray(out.labels) == "b"]
    dists = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    assert dists.min() > 50


def test_relocate_shape_mismatch():
    ds = Dataset(np.zeros((4, 2)), labels=["a", "a", "b", "b"])
    with pytest.raises(ParameterError):
        relocate_clusters(ds, np.zeros((3, 2)))
    with pytest.raises(ParameterError):
        relocate_clusters(Dataset(np.zeros((4, 2))), np.zeros((1, 2)))


def test_bkgnoise_moments():
    ds = gen_bkgnoise(10000, 3, 0.0, 1.0, seed=8)
    assert np.abs(ds.points.mean(axis=0)).max() < 0.05
    assert np.abs(ds.points.std(axis=0, ddof=1) - 1.0).max() < 0.05


def test_bkgnoise_single_row_and_sd_ratio():
    one = gen_bkgnoise(1, 3, 0.0, 1.0, seed=1)
    assert one.points.shape == (1, 3)
    ds = gen_bkgnoise(10000, 2, 0.0, (1.0, 2.0), seed=2)
    sd = ds.points.std(axis=0, ddof=1)
    assert abs(sd[1] / sd[0] - 2.0) < 0.2


def test_bkgnoise_validation():
    with pytest.raises(ParameterError):
        gen_bkgnoise(10, 2, 0.0, (1.0, 0.0), seed=1)
    with pytest.raises(ParameterError):
        gen_bkgnoise(0, 2, seed=1)
