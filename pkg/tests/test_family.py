import numpy as np
import pytest

from rfaudit.errors import PolynomialError
from rfaudit.family import asymptotic_u_norm, example_family, growth_row, growth_study
from rfaudit.poly import Polynomial

from oracles import poly_mul


@pytest.mark.parametrize("m", [1, 2, 3, 5, 8])
def test_family_identities(m, fast_opts):
    fam = example_family(m, fast_opts)
    checks = fam.checks()
    assert all(c["ok"] for c in checks.values()), checks
    assert fam.eps == pytest.approx(3.0 ** -m, rel=1e-6)
    assert fam.eta > 0 and 2 * fam.eta * fam.u_norm1 == pytest.approx(fam.eps)


def test_bezout_m2_against_expansion(fast_opts):
    fam = example_family(2, fast_opts)
    qu = poly_mul(fam.q.coeffs, fam.u.coeffs)
    pv = poly_mul(fam.p.coeffs, fam.v.coeffs)
    diff = np.array(qu) - np.array(pv)
    np.testing.assert_allclose(diff, [1, 0, 0, 0, 0], atol=1e-12)


def test_perturbed_pair_has_constant_cross_product(fast_opts):
    fam = example_family(3, fast_opts)
    cross = np.array(poly_mul(fam.p.coeffs, fam.qt.coeffs)) - np.array(
        poly_mul(fam.pt.coeffs, fam.q.coeffs))
    np.testing.assert_allclose(cross, [fam.eta] + [0] * 6, atol=1e-15)


def test_asymptotics_recorded(fast_opts):
    fam = example_family(3, fast_opts)
    assert fam.u_asymptotic_ratio == pytest.approx(fam.u_norm1 / asymptotic_u_norm(3))
    js = fam.to_json()
    assert js["m"] == 3 and "u_asymptotic_ratio" in js and "checks" in js


@pytest.mark.parametrize("m", range(2, 6))
def test_s0_inverse_ratio(m, fast_opts):
    assert 1 <= example_family(m, fast_opts).s0_inverse_ratio <= 2


def test_family_bounds():
    with pytest.raises(PolynomialError):
        example_family(0)
    with pytest.raises(PolynomialError):
        example_family(13)
    with pytest.raises(PolynomialError):
        growth_study(11)


@pytest.mark.parametrize("m", [2, 3])
def test_growth_row_window(m, fast_opts):
    row = growth_row(m, fast_opts)
    assert row.in_window and row.ratio_ok
    js = row.to_json()
    lo, hi = js["window"]
    assert lo <= js["chi_over_delta"] <= hi


def test_growth_increases(fast_opts):
    rows = growth_study(4, opts=fast_opts)
    g = [r.growth for r in rows]
    assert all(b > a for a, b in zip(g, g[1:]))
