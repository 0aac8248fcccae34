import numpy as np
import pytest

from nas_landscape.bbob import bbob_feature_table, lhs_box, make_instance, t_asy, t_osz
from nas_landscape.ela_features import IcSettings
from nas_landscape.errors import DimensionMismatch, UnknownFunction


def test_unknown_fid():
    with pytest.raises(UnknownFunction):
        make_instance(0, 1, 5)
    with pytest.raises(UnknownFunction):
        make_instance(25, 1, 5)


def test_dimension_mismatch():
    inst = make_instance(1, 1, 5)
    with pytest.raises(DimensionMismatch):
        inst.evaluate(np.zeros(4))
    with pytest.raises(DimensionMismatch):
        inst.evaluate_batch(np.zeros((3, 4)))


def test_sphere_unit_offset():
    for instance in (1, 2, 3):
        inst = make_instance(1, instance, 6)
        e1 = np.zeros(6)
        e1[0] = 1.0
        assert inst.evaluate(inst.x_opt + e1) - inst.f_opt == pytest.approx(1.0, abs=1e-9)


def test_sphere_isotropy():
    inst = make_instance(1, 4, 7)
    rng = np.random.default_rng(0)
    for t in (0.5, 1.5, 3.0):
        u = rng.standard_normal(7)
        u /= np.linalg.norm(u)
        got = inst.evaluate(inst.x_opt + t * u)
        assert got == pytest.approx(inst.f_opt + t * t, abs=1e-9)


def test_determinism():
    a = make_instance(12, 3, 23)
    b = make_instance(12, 3, 23)
    assert np.array_equal(a.x_opt, b.x_opt) and a.f_opt == b.f_opt
    x = np.linspace(-5, 5, 23)
    assert a.evaluate(x) == b.evaluate(x)


def test_bent_cigar_ridge_ratio():
    # the leading inner coordinate is penalized ~1e6 times less than the rest;
    # the asymmetry map leaks a little across coordinates, hence the margin
    inst = make_instance(12, 1, 23)
    R = inst.rotations[0]
    t = 1e-6
    along = inst.evaluate(inst.x_opt + t * (R.T @ R[0])) - inst.f_opt
    across = inst.evaluate(inst.x_opt + t * (R.T @ R[1])) - inst.f_opt
    assert across / along > 1e4


def test_separable_sphere_coordinate_permutation():
    inst = make_instance(1, 2, 5)
    rng = np.random.default_rng(1)
    x = rng.uniform(-5, 5, 5)
    perm = rng.permutation(5)
    shifted = inst.x_opt + (x - inst.x_opt)[perm]
    assert inst.evaluate(shifted) == pytest.approx(inst.evaluate(x), rel=1e-12)


def test_t_osz_fixes_zero_and_sign():
    x = np.array([-2.0, 0.0, 3.0])
    out = t_osz(x)
    assert out[1] == 0.0
    assert np.sign(out[0]) == -1 and np.sign(out[2]) == 1


def test_t_asy_fixes_nonpositive():
    X = np.array([[-1.5, 0.0, 2.0]])
    out = t_asy(X, 0.5)
    assert out[0, 0] == -1.5 and out[0, 1] == 0.0 and out[0, 2] != 2.0


def test_rotation_orthogonality_all_fids():
    for fid in range(1, 25):
        inst = make_instance(fid, 1, 8)
        for R in inst.rotations:
            assert np.abs(R.T @ R - np.eye(8)).max() <= 1e-10


@pytest.mark.parametrize("fid", range(1, 25))
def test_optimum_and_statistical_optimality(fid):
    rng = np.random.default_rng(fid)
    for dim in (2, 23):
        inst = make_instance(fid, 1, dim)
        rel = abs(inst.evaluate(inst.x_opt) - inst.f_opt) / max(1.0, abs(inst.f_opt))
        assert rel <= 1e-9
        X = rng.uniform(-5, 5, (2000, dim))
        vals = inst.evaluate_batch(X)
        assert np.isfinite(vals).all()
        assert vals.min() >= inst.f_opt - 1e-8 * max(1.0, abs(inst.f_opt))


def test_feature_table_small():
    ic = IcSettings(n_eps=100)
    rows = list(
        bbob_feature_table(dim=2, instances=[1], n=120, seed=0, fids=[1, 12], ic_settings=ic)
    )
    assert [(fid, inst) for fid, inst, _ in rows] == [(1, 1), (12, 1)]
    by_fid = {fid: feats for fid, _, feats in rows}
    assert by_fid[1]["quad_simple.adj_r2"] >= 0.999


def test_feature_table_sphere_quadratic_dim23():
    rows = list(bbob_feature_table(dim=23, instances=[1], n=400, seed=1, fids=[1]))
    feats = rows[0][2]
    assert feats["quad_simple.adj_r2"] >= 0.999


def test_lhs_box_bounds():
    X = lhs_box(50, 4, seed=3)
    assert X.min() >= -5 and X.max() <= 5
