"""The ill-conditioned family ``p_m = z^m``, ``q_m = ((z - 1)/2)^m`` and its perturbations.

``u_m, v_m`` solve ``q_m u_m - p_m v_m = 1`` and the perturbed pair is
``pt = p_m - eta u_m``, ``qt = q_m - eta v_m`` so that ``p_m qt - pt q_m = eta``
identically.  ``eta`` is real positive with ``2 eta ||u_m||_1 = eps_1^D``.
The family shows that the value distance ``chi_D`` can exceed the
coefficient distance ``d`` by a factor growing geometrically in ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coprimeness import epsilon_region
from .errors import PolynomialError
from .metrics import chi_region, coeff_distance
from .poly import Polynomial, RationalFunction, coeff_norm, diophantine_solve, pair_norm
from .region import Region
from .search import SearchOptions
from .sylvester import build

M_MAX = 12
GROWTH_M_MAX = 10


def asymptotic_u_norm(m: int) -> float:
    """Leading-order growth ``2^{3m-1} / sqrt(pi m)`` of ``||u_m||_1``."""
    return 2.0 ** (3 * m - 1) / math.sqrt(math.pi * m)


@dataclass
class ExampleFamily:
    m: int
    p: Polynomial
    q: Polynomial
    u: Polynomial
    v: Polynomial
    eps: float
    eta: float
    pt: Polynomial
    qt: Polynomial
    bezout_residual: float
    identity_residual: float
    identity_relative: float

    @property
    def r(self) -> RationalFunction:
        return RationalFunction(self.p, self.q)

    @property
    def rt(self) -> RationalFunction:
        return RationalFunction(self.pt, self.qt)

    @property
    def u_norm1(self) -> float:
        return coeff_norm(self.u, 1)

    @property
    def v_norm1(self) -> float:
        return coeff_norm(self.v, 1)

    @property
    def delta_norm1(self) -> float:
        return pair_norm(self.p - self.pt, self.q - self.qt, 1)

    @property
    def perturbed_norm1(self) -> float:
        return pair_norm(self.pt, self.qt, 1)

    @property
    def u_asymptotic_ratio(self) -> float:
        return self.u_norm1 / asymptotic_u_norm(self.m)

    @property
    def s0_inverse_ratio(self) -> float:
        return build(self.p, self.q, self.m, self.m, 0).inv_norm1() / self.u_norm1

    def checks(self, tol: float = 1e-10) -> dict:
        pn = self.perturbed_norm1
        return {
            "identity": {"relation": "p qt - pt q == eta", "residual": self.identity_residual,
                         "relative": self.identity_relative, "tol": tol,
                         "ok": self.identity_relative <= tol},
            "bezout": {"relation": "q u - p v == 1", "residual": self.bezout_residual,
                       "ok": self.bezout_residual <= tol},
            "perturbed_norm": {"relation": "1/2 <= ||(pt, qt)||_1 <= 3/2", "value": pn,
                               "ok": 0.5 <= pn <= 1.5},
            "v_le_u": {"relation": "||v||_1 <= ||u||_1", "lhs": self.v_norm1,
                       "rhs": self.u_norm1, "ok": self.v_norm1 <= self.u_norm1},
        }

    def to_json(self) -> dict:
        return {
            "m": self.m, "eps1_D": self.eps, "eta": self.eta,
            "u": self.u.to_json(), "v": self.v.to_json(),
            "u_norm1": self.u_norm1, "v_norm1": self.v_norm1,
            "u_asymptotic": asymptotic_u_norm(self.m),
            "u_asymptotic_ratio": self.u_asymptotic_ratio,
            "s0_inverse_ratio": self.s0_inverse_ratio,
            "delta_norm1": self.delta_norm1,
            "perturbed": self.rt.to_json(),
            "checks": self.checks(),
        }


def example_family(m: int, opts: SearchOptions | None = None) -> ExampleFamily:
    if not 1 <= m <= M_MAX:
        raise PolynomialError(f"m must lie in [1, {M_MAX}], got {m}")
    p = Polynomial.monomial(m)
    q = Polynomial([-0.5, 0.5]) ** m
    sol = diophantine_solve(q, -p, m, m, Polynomial([1.0]))
    u, v = sol.u.padded(m), sol.v.padded(m)
    eps = epsilon_region(p, q, m, m, 1, Region.unit_disk(), opts).value
    eta = eps / (2 * coeff_norm(u, 1))
    pt, qt = p - u.scale(eta), q - v.scale(eta)
    ident = (p * qt - pt * q) - Polynomial([eta])
    res = float(abs(ident.coeffs).max())
    # the two products are O(1) and cancel down to eta, so rounding is
    # measured against the size of the products, not against eta
    scale = coeff_norm(p, 1) * coeff_norm(qt, 1) + coeff_norm(pt, 1) * coeff_norm(q, 1)
    return ExampleFamily(m, p, q, u, v, eps, eta, pt, qt, sol.residual, res, res / scale)


@dataclass
class GrowthRow:
    m: int
    eps: float
    eta: float
    delta_norm1: float
    chi_D: float
    window_lo: float
    window_hi: float
    d: float
    ratio_lower: float
    growth: float

    @property
    def chi_over_delta(self) -> float:
        return self.chi_D / self.delta_norm1

    @property
    def in_window(self) -> bool:
        return self.window_lo <= self.chi_D <= self.window_hi

    @property
    def ratio_ok(self) -> bool:
        return self.chi_D / self.d >= self.ratio_lower

    def to_json(self) -> dict:
        return {"m": self.m, "eps1_D": self.eps, "eta": self.eta,
                "delta_norm1": self.delta_norm1, "chi_D": self.chi_D,
                "chi_over_delta": self.chi_over_delta,
                "window": [self.window_lo / self.delta_norm1, self.window_hi / self.delta_norm1],
                "in_window": self.in_window, "d": self.d,
                "chi_over_d": self.chi_D / self.d, "chi_over_d_lower": self.ratio_lower,
                "ratio_ok": self.ratio_ok, "growth": self.growth}


def growth_row(m: int, opts: SearchOptions | None = None) -> GrowthRow:
    fam = example_family(m, opts)
    chi = chi_region(fam.r, fam.rt, Region.unit_disk(), opts).value
    eps, eta = fam.eps, fam.eta
    d = coeff_distance(fam.r, fam.rt)
    return GrowthRow(m, eps, eta, fam.delta_norm1, chi,
                     eta / (3 * eps ** 2), 2 * eta / eps ** 2, d,
                     1.0 / (12 * fam.u_norm1 * eps ** 2), chi / d / eps)


def growth_study(m_max: int, m_min: int = 1, opts: SearchOptions | None = None) -> list[GrowthRow]:
    if not 1 <= m_min <= m_max <= GROWTH_M_MAX:
        raise PolynomialError(f"m range must lie in [1, {GROWTH_M_MAX}]")
    return [growth_row(m, opts) for m in range(m_min, m_max + 1)]
