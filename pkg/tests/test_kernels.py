import numpy as np
import pytest

from logk3 import _accel
from logk3.grouparith import FiniteGroupModel, find_marked_point
from logk3.kernels import marked_point_cases, marked_point_sweep, nd_pair, nd_sweep
from logk3.lattice import is_negative_definite_matrix
from oracles import negative_definite_oracle, symmetric_matrices

BACKENDS = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])


def test_backend_flag(monkeypatch):
    monkeypatch.delenv("LOGK3_DISABLE_NUMBA", raising=False)
    assert _accel.backend() == ("numba" if _accel.HAVE_NUMBA else "numpy")
    monkeypatch.setenv("LOGK3_DISABLE_NUMBA", "1")
    assert _accel.backend() == "numpy"
    assert nd_sweep(2, -1, 1).backend == "numpy"
    monkeypatch.setenv("LOGK3_DISABLE_NUMBA", "0")
    assert not _accel.numba_disabled()


@pytest.mark.parametrize("use", BACKENDS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_sweep_counts_match_python(use, n):
    res = nd_sweep(n, -2, 2, use=use)
    mats = list(symmetric_matrices(n, -2, 2))
    assert res.total == len(mats)
    assert res.mismatches == 0 and res.first_mismatch is None
    assert res.negative_definite == sum(is_negative_definite_matrix(m) for m in mats)


def test_backends_agree_on_4x4_box():
    counts = {use: nd_sweep(4, -1, 1, use=use) for use in BACKENDS}
    assert len({(r.total, r.negative_definite, r.mismatches) for r in counts.values()}) == 1
    assert counts["numpy"].total == 3**10 and counts["numpy"].mismatches == 0


@pytest.mark.parametrize("use", BACKENDS)
def test_nd_pair_against_oracle(use):
    rng = np.random.default_rng(0)
    mats = rng.integers(-3, 4, size=(400, 4, 4))
    mats = np.triu(mats) + np.triu(mats, 1).transpose(0, 2, 1)
    mats[:, range(4), range(4)] = rng.integers(-3, 0, size=(400, 4))
    syl, cp = nd_pair(mats, use=use)
    want = np.array([negative_definite_oracle(m.tolist()) for m in mats])
    assert (syl == want).all() and (cp == want).all()


def test_sweep_rejects_large_sizes():
    with pytest.raises(ValueError):
        nd_sweep(5)


def test_marked_point_cases_shape():
    cases = marked_point_cases(12, all_targets_up_to=4)
    assert cases.shape[1] == 4
    assert ((cases[:, 0] % cases[:, 1]) == 0).all() and ((cases[:, 0] % cases[:, 2]) == 0).all()
    assert len(cases[cases[:, 0] == 4]) == 3 * 3 * 4


@pytest.mark.parametrize("use", BACKENDS)
def test_marked_point_sweep_matches_find(use):
    cases = marked_point_cases(80, all_targets_up_to=12)
    got = marked_point_sweep(cases, use=use)
    for (N, a, h, t), p in zip(cases.tolist(), got.tolist()):
        found = find_marked_point(FiniteGroupModel(N, (h,)), a, t)
        assert (found.p if found else -1) == p
