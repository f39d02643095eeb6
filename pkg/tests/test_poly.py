import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rfaudit.errors import DegenerateError, IndeterminateError, PolynomialError
from rfaudit.poly import (INF, Polynomial, RationalFunction, coeff_norm, derivative,
                          diophantine_solve, evaluate, pair_norm, power, residue_at_simple_pole,
                          reverse, roots)

from oracles import poly_mul, power_sum

cplx = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
coeff_lists = st.lists(cplx, min_size=1, max_size=8)


# evaluation ----------------------------------------------------------------

def test_eval_identity_polynomial():
    assert evaluate(Polynomial([0, 1]), 0.5) == 0.5


def test_eval_half_shifted():
    assert evaluate(Polynomial([-0.5, 0.5]), 1 / 3) == pytest.approx(-1 / 3, abs=1e-16)


def test_eval_matches_power_sum():
    assert evaluate(Polynomial([1, 2, 3]), 2) == pytest.approx(power_sum([1, 2, 3], 2))
    assert evaluate(Polynomial([1, 2, 3]), 2) == 17


@given(coeff_lists, cplx)
def test_eval_against_power_sum(c, z):
    got = evaluate(Polynomial(c), z)
    ref = power_sum(c, z)
    scale = sum(abs(x) * abs(z) ** j for j, x in enumerate(c)) + 1e-300
    assert abs(got - ref) <= 1e-12 * scale


def test_eval_vectorised_and_outside_disk():
    p = Polynomial([1, -2, 0.5, 3j])
    z = np.array([0.3, 2.0 + 1j, -5.0, 40j])
    ref = np.array([power_sum(p.coeffs, w) for w in z])
    np.testing.assert_allclose(evaluate(p, z), ref, rtol=1e-13)


# derivative / reverse --------------------------------------------------------

@pytest.mark.parametrize("c, expected", [([0, 0, 1], [0, 2]), ([-0.5, 0.5], [0.5]),
                                         ([1, 1, 1, 1], [1, 2, 3]), ([7], [0])])
def test_derivative_examples(c, expected):
    d = derivative(Polynomial(c))
    np.testing.assert_array_equal(d.coeffs, np.array(expected, dtype=complex))
    assert d.degree == max(len(c) - 2, 0)


@given(coeff_lists, st.complex_numbers(max_magnitude=2, allow_nan=False))
@settings(max_examples=60)
def test_derivative_matches_central_difference(c, z):
    p = Polynomial(c)
    h = 1e-6 * (1 + abs(z))
    fd = (evaluate(p, z + h) - evaluate(p, z - h)) / (2 * h)
    d = evaluate(derivative(p), z)
    scale = sum(abs(x) * j * (abs(z) + h) ** max(j - 1, 0) for j, x in enumerate(c))
    # rounding in p(z +- h) is amplified by 1/h in the difference quotient
    rounding = 1e-15 * sum(abs(x) * (abs(z) + h) ** j for j, x in enumerate(c)) / h
    assert abs(fd - d) <= 1e-6 * scale + rounding


@pytest.mark.parametrize("c, bound, expected", [([0, 1], 1, [1, 0]),
                                                ([-0.5, 0.5], 1, [0.5, -0.5]),
                                                ([1, 2, 3], 4, [0, 0, 3, 2, 1])])
def test_reverse_examples(c, bound, expected):
    np.testing.assert_array_equal(reverse(Polynomial(c), bound).coeffs,
                                  np.array(expected, dtype=complex))


def test_reverse_bound_too_small():
    with pytest.raises(PolynomialError):
        reverse(Polynomial([1, 2, 3]), 1)


@given(coeff_lists, st.integers(0, 3),
       st.complex_numbers(min_magnitude=0.1, max_magnitude=10, allow_nan=False,
                          allow_infinity=False))
def test_reverse_identity(c, extra, z):
    p = Polynomial(c)
    d = p.degree + extra
    lhs = evaluate(reverse(p, d), z)
    rhs = z ** d * power_sum(c, 1 / z)
    scale = sum(abs(x) * abs(z) ** (d - j) for j, x in enumerate(c)) + 1e-300
    assert abs(lhs - rhs) <= 1e-12 * scale


# norms ------------------------------------------------------------------------

def test_norms_examples():
    assert coeff_norm(Polynomial([0, 1]), 1) == 1
    assert coeff_norm(Polynomial([-0.5, 0.5]), 1) == 1
    assert coeff_norm(Polynomial([3, 4j]), 2) == 5


@given(coeff_lists)
def test_norm_consistency(c):
    p = Polynomial(c)
    n1, n2 = coeff_norm(p, 1), coeff_norm(p, 2)
    assert n2 <= n1 * (1 + 1e-12) + 1e-300
    assert n1 <= np.sqrt(p.degree + 1) * n2 * (1 + 1e-12) + 1e-300


@given(coeff_lists, coeff_lists)
def test_pair_norm_relation(a, b):
    p, q = Polynomial(a), Polynomial(b)
    n1, n2 = pair_norm(p, q, 1), pair_norm(p, q, 2)
    assert n2 * (1 + 1e-12) >= n1 / np.sqrt(max(p.degree, q.degree) + 1)


# roots -------------------------------------------------------------------------

def test_roots_examples():
    r, k = roots(Polynomial([0, 1]))
    assert k == 0 and abs(r[0]) < 1e-15
    r, k = roots(Polynomial([-0.5, 0.5]))
    assert k == 0 and r[0] == pytest.approx(1)
    r, k = roots(Polynomial([6, -5, 1]))
    assert sorted(r.real) == pytest.approx([2, 3])


def test_roots_at_infinity_from_trailing_zeros():
    r, k = roots(Polynomial([1, 1, 0, 0]))
    assert k == 2 and r[0] == pytest.approx(-1)


def test_roots_zero_polynomial():
    with pytest.raises(PolynomialError):
        roots(Polynomial([0, 0]))


@pytest.mark.parametrize("seed", range(5))
def test_roots_vieta(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 11))
    # well separated roots on distinct radii
    true = (1 + np.arange(d) / 2) * np.exp(2j * np.pi * rng.random(d))
    c = np.poly(true)[::-1] * (0.5 + rng.random())
    r, _ = roots(Polynomial(c))
    assert r.sum() == pytest.approx(-c[d - 1] / c[d], rel=1e-8)
    assert np.prod(r) == pytest.approx((-1) ** d * c[0] / c[d], rel=1e-8)


# ring ops ----------------------------------------------------------------------

def test_ring_ops():
    np.testing.assert_array_equal(power(Polynomial([0, 1]), 3).coeffs, [0, 0, 0, 1])
    np.testing.assert_array_equal(power(Polynomial([-0.5, 0.5]), 2).coeffs, [0.25, -0.5, 0.25])
    np.testing.assert_array_equal((Polynomial([1, 1]) * Polynomial([1, -1])).coeffs, [1, 0, -1])
    np.testing.assert_array_equal((Polynomial([1, 2]) - Polynomial([1, 2, 3])).coeffs, [0, 0, -3])
    assert Polynomial([1, 2]).scale(2j) == Polynomial([2j, 4j])


@given(coeff_lists, coeff_lists)
def test_mul_against_convolution(a, b):
    np.testing.assert_allclose((Polynomial(a) * Polynomial(b)).coeffs, poly_mul(a, b),
                               rtol=1e-12, atol=1e-12)


def test_nominal_degree_padding_and_immutability():
    p = Polynomial([1, 2], degree=4)
    assert p.degree == 4 and p.effective_degree() == 1
    with pytest.raises(PolynomialError):
        Polynomial([1, 2, 3], degree=1)
    with pytest.raises(AttributeError):
        p.coeffs = None
    with pytest.raises(ValueError):
        p.coeffs[0] = 5


def test_non_finite_coefficients_rejected():
    with pytest.raises(PolynomialError):
        Polynomial([1, np.nan])


def test_json_roundtrip():
    p = Polynomial([1 + 2j, -3], degree=3)
    assert Polynomial.from_json(p.to_json()) == p
    r = RationalFunction.from_coeffs([0, 2], [-1, 1])
    assert RationalFunction.from_json(r.to_json()) == r
    assert Polynomial.from_json({"coeffs": [[1, 0], [0, 1]]}) == Polynomial([1, 1j])


# rational functions --------------------------------------------------------------

def test_zero_denominator_rejected():
    with pytest.raises(PolynomialError):
        RationalFunction.from_coeffs([1], [0, 0])


def test_rational_value_at_pole_is_inf():
    r = RationalFunction.from_coeffs([0, 2], [-1, 1])
    assert r(1.0) == INF
    assert r(1 / 3) == pytest.approx(-1)


def test_reversed_function_values():
    r = RationalFunction.from_coeffs([1, 2, 0.5], [3, -1])
    rr = r.reversed()
    for w in (0.3, 0.5 + 0.2j, -2.0):
        assert rr(w) == pytest.approx(r(1 / w), rel=1e-12)


@pytest.mark.parametrize("p, q, z0, beta", [([0, 2], [-1, 1], 1, 2), ([1], [0, 1], 0, 1),
                                            ([0, 1], [-0.5, 0.5], 1, 2)])
def test_residues(p, q, z0, beta):
    r = RationalFunction.from_coeffs(p, q)
    assert residue_at_simple_pole(r, z0) == pytest.approx(p_over_dq(p, q, z0))
    assert residue_at_simple_pole(r, z0) == pytest.approx(beta)


def p_over_dq(p, q, z0):
    dq = [j * c for j, c in enumerate(q)][1:]
    return power_sum(p, z0) / power_sum(dq, z0)


def test_residue_errors():
    r = RationalFunction.from_coeffs([1], [0, 0, 1])
    with pytest.raises(IndeterminateError, match="not simple"):
        residue_at_simple_pole(r, 0)
    with pytest.raises(IndeterminateError, match="not a pole"):
        residue_at_simple_pole(r, 0.5)


# diophantine -----------------------------------------------------------------------

def test_diophantine_two_by_two():
    # hand solve of [[0, -0.5], [1, 0.5]] w = (0, 1): w = (1, 0)
    p, q = Polynomial([0, 1]), Polynomial([-0.5, 0.5])
    sol = diophantine_solve(p, q, 1, 1, Polynomial([0, 1]))
    np.testing.assert_allclose(sol.u.coeffs, [1], atol=1e-15)
    np.testing.assert_allclose(sol.v.coeffs, [0], atol=1e-15)
    assert sol.residual <= 1e-15


def test_diophantine_empty_u():
    sol = diophantine_solve(Polynomial([0, 1]), Polynomial([1]), 1, 0, Polynomial([1]))
    assert sol.u.is_zero()
    np.testing.assert_allclose(sol.v.coeffs, [1])


def test_diophantine_example_family_m2():
    p, q = Polynomial([0, 0, 1]), Polynomial([-0.5, 0.5]) ** 2
    sol = diophantine_solve(q, -p, 2, 2, Polynomial([1]))
    qu = poly_mul(q.coeffs, sol.u.coeffs)
    pv = poly_mul(p.coeffs, sol.v.coeffs)
    size = max(len(qu), len(pv))
    diff = np.pad(qu, (0, size - len(qu))) - np.pad(pv, (0, size - len(pv)))
    diff[0] -= 1
    assert np.abs(diff).max() <= 1e-12


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10_000))
@settings(max_examples=40)
def test_diophantine_residual(m, n, seed):
    rng = np.random.default_rng(seed)
    p = Polynomial(rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1))
    q = Polynomial(rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1))
    t = Polynomial(rng.standard_normal(m + n))
    try:
        sol = diophantine_solve(p, q, m, n, t)
    except DegenerateError:
        return
    res = p * sol.u + q * sol.v - t
    from rfaudit.sylvester import build
    cond = build(p, q, m, n, 0).sigma_max / build(p, q, m, n, 0).sigma_min
    assert coeff_norm(res, 2) <= 1e-10 * pair_norm(p, q, 2) * coeff_norm(t, 2) * cond


def test_diophantine_degenerate():
    with pytest.raises(DegenerateError) as exc:
        diophantine_solve(Polynomial([1, 1]), Polynomial([1, 1]), 1, 1, Polynomial([1]))
    assert exc.value.sigma_min < 1e-12
