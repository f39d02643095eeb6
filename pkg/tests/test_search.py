import numpy as np
import pytest

from rfaudit.poly import is_inf
from rfaudit.region import Region
from rfaudit.search import SearchOptions, default_density, extremum_on, search


def test_default_density_env(monkeypatch):
    monkeypatch.delenv("RFA_DENSITY", raising=False)
    assert default_density() == 48
    monkeypatch.setenv("RFA_DENSITY", "7")
    assert default_density() == 7 and SearchOptions().density == 7
    monkeypatch.setenv("RFA_DENSITY", "0")
    with pytest.raises(ValueError):
        default_density()


def test_minimum_off_grid_is_polished(fast_opts):
    target = 0.123 + 0.321j
    res = search(lambda z: np.abs(z - target), Region.unit_disk(), fast_opts)
    assert res.value < 1e-8 and abs(res.point - target) < 1e-8
    assert res.polished > 0 and res.method == "grid+refine"


def test_maximum_on_segment(fast_opts):
    res = search(lambda z: -np.abs(z - 0.37) ** 2, Region.segment(0, 1), fast_opts, maximize=True)
    assert res.point == pytest.approx(0.37, abs=1e-8)


def test_polished_point_stays_in_region(fast_opts):
    # unconstrained minimiser at 2 lies outside the disk
    reg = Region.unit_disk()
    res = search(lambda z: np.abs(z - 2), reg, fast_opts)
    assert reg.contains(res.point)
    assert res.value == pytest.approx(1, abs=1e-8)


def test_plane_search_reaches_infinity(fast_opts):
    def f(z):
        out = np.ones(z.shape)
        fin = ~np.isinf(z.real)
        out[fin] = 1 / (1 + np.abs(z[fin]))
        out[~fin] = 0
        return out
    res = search(f, Region.full_plane(), fast_opts)
    assert res.value == 0 and is_inf(res.point)


def test_point_set_is_exact():
    reg = Region.point_set([0, 1, 2j])
    res = search(lambda z: np.abs(z - 0.9), reg)
    assert res.point == 1 and res.method == "finite-exact" and res.polished == 0


def test_extra_points_are_candidates(fast_opts):
    res = search(lambda z: np.abs(z - 0.5j), Region.segment(-1, 1), fast_opts, extra=[0.5j])
    assert res.value == 0


def test_deterministic(fast_opts):
    f = lambda z: np.abs(np.sin(3 * z) + 0.2)
    a = search(f, Region.unit_disk(), fast_opts)
    b = search(f, Region.unit_disk(), fast_opts)
    assert a.value == b.value and a.point == b.point
    np.testing.assert_array_equal(a.candidates, b.candidates)


def test_extremum_on():
    pts = np.array([3, 1, 2], dtype=complex)
    assert extremum_on(np.abs, pts) == (1.0, 1)
    assert extremum_on(np.abs, pts, maximize=True) == (3.0, 3)
