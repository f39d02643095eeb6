"""Chordal geometry on the Riemann sphere and spherical-derivative indicators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisError, IndeterminateError, RegionError
from .poly import RationalFunction, derivative, evaluate, residue_at_simple_pole, roots
from .region import Region
from .search import SearchOptions, SearchResult, search


def _finite_mask(z):
    return ~(np.isinf(z.real) | np.isinf(z.imag))


def chordal(x, y):
    """Chordal distance ``|x-y| / (sqrt(1+|x|^2) sqrt(1+|y|^2))`` with infinity."""
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    x, y = np.broadcast_arrays(np.atleast_1d(np.asarray(x, dtype=complex)),
                               np.atleast_1d(np.asarray(y, dtype=complex)))
    fx, fy = _finite_mask(x), _finite_mask(y)
    out = np.zeros(x.shape, dtype=float)
    both = fx & fy
    xb, yb = x[both], y[both]
    # hypot avoids squaring; the product is symmetric and only overflows for huge pairs
    hx, hy = np.hypot(1, np.abs(xb)), np.hypot(1, np.abs(yb))
    num = np.abs(xb - yb)
    with np.errstate(over="ignore"):
        den = hx * hy
    out[both] = np.where(np.isfinite(den), num / den, num / hx / hy)
    only_x = fx & ~fy
    out[only_x] = 1.0 / np.hypot(1, np.abs(x[only_x]))
    only_y = ~fx & fy
    out[only_y] = 1.0 / np.hypot(1, np.abs(y[only_y]))
    return float(out[0]) if scalar else out


def sigma(x, y):
    """Geodesic distance on the sphere of radius 1/2: ``arcsin(chordal)``."""
    return np.arcsin(np.minimum(chordal(x, y), 1.0))


def _pair_values(r: RationalFunction, z: np.ndarray):
    return evaluate(r.p, z), evaluate(r.q, z)


def chordal_values(r1: RationalFunction, r2: RationalFunction, z1, z2=None):
    """``chordal(r1(z1), r2(z2))`` by the cross formula, finite at poles.

    ``|p1 q2 - p2 q1| / (sqrt(|p1|^2+|q1|^2) sqrt(|p2|^2+|q2|^2))``.  Infinite
    or large arguments are handled through the common-degree reversal
    ``r(z) = rbar(1/z)``.
    """
    scalar = np.ndim(z1) == 0 and (z2 is None or np.ndim(z2) == 0)
    z1 = np.atleast_1d(np.asarray(z1, dtype=complex))
    z2 = z1 if z2 is None else np.atleast_1d(np.asarray(z2, dtype=complex))
    z1, z2 = np.broadcast_arrays(z1, z2)
    p1, q1 = _sphere_pq(r1, z1)
    p2, q2 = _sphere_pq(r2, z2)
    num = np.abs(p1 * q2 - p2 * q1)
    n1 = np.sqrt(np.abs(p1) ** 2 + np.abs(q1) ** 2)
    n2 = np.sqrt(np.abs(p2) ** 2 + np.abs(q2) ** 2)
    bad = (n1 == 0) | (n2 == 0)
    if bad.any():
        where = z1[n1 == 0] if (n1 == 0).any() else z2[n2 == 0]
        raise IndeterminateError(f"numerator and denominator vanish together at {complex(where[0])!r}")
    out = num / (n1 * n2)
    return float(out[0]) if scalar else out


def _sphere_pq(r: RationalFunction, z: np.ndarray):
    """Homogeneous values ``(p, q)`` representing ``r(z)`` for any sphere point."""
    pv = np.empty(z.shape, dtype=complex)
    qv = np.empty(z.shape, dtype=complex)
    fin = _finite_mask(z)
    inner = fin & (np.abs(np.where(fin, z, 0)) <= 1)
    if inner.any():
        pv[inner], qv[inner] = _pair_values(r, z[inner])
    outer = ~inner
    if outer.any():
        rb = r.reversed()
        w = np.zeros(int(outer.sum()), dtype=complex)
        zo = z[outer]
        fo = _finite_mask(zo)
        w[fo] = 1.0 / zo[fo]
        pv[outer], qv[outer] = _pair_values(rb, w)
    return pv, qv


def _rho_direct(r: RationalFunction, z: np.ndarray) -> np.ndarray:
    p, q = r.p, r.q
    pv, qv = evaluate(p, z), evaluate(q, z)
    dp, dq = evaluate(derivative(p), z), evaluate(derivative(q), z)
    den = np.abs(pv) ** 2 + np.abs(qv) ** 2
    if np.any(den == 0):
        bad = z[den == 0][0]
        raise IndeterminateError(f"p and q have a common root at {complex(bad)!r}")
    return np.abs(dp * qv - pv * dq) / den


def rho_at(r: RationalFunction, z):
    """Spherical derivative ``|r'| / (1 + |r|^2)`` in the pole-safe form

    ``|p' q - p q'| / (|p|^2 + |q|^2)``.  For ``|z| > 1`` the common-degree
    reversal gives ``rho(r)(z) = |w|^2 rho(rbar)(w)`` with ``w = 1/z``; the
    value at infinity is 0.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.zeros(z.shape, dtype=float)
    fin = _finite_mask(z)
    inner = fin & (np.abs(np.where(fin, z, 0)) <= 1)
    if inner.any():
        out[inner] = _rho_direct(r, z[inner])
    outer = fin & ~inner
    if outer.any():
        w = 1.0 / z[outer]
        out[outer] = np.abs(w) ** 2 * _rho_direct(r.reversed(), w)
    return float(out[0]) if scalar else out


def nu_at(r: RationalFunction, z):
    """``(1 + |z|^2) rho(r)(z)``; at ``|z| > 1`` and infinity via ``rho(rbar)(1/z)``."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.zeros(z.shape, dtype=float)
    fin = _finite_mask(z)
    inner = fin & (np.abs(np.where(fin, z, 0)) <= 1)
    if inner.any():
        zi = z[inner]
        out[inner] = (1 + np.abs(zi) ** 2) * _rho_direct(r, zi)
    outer = ~inner
    if outer.any():
        zo = z[outer]
        w = np.zeros(zo.shape, dtype=complex)
        fo = _finite_mask(zo)
        w[fo] = 1.0 / zo[fo]
        out[outer] = (1 + np.abs(w) ** 2) * _rho_direct(r.reversed(), w)
    return float(out[0]) if scalar else out


@dataclass
class SupResult:
    """Sampled supremum of an indicator: a lower bound on the true supremum."""
    value: float
    argmax: complex
    search: SearchResult

    def to_json(self) -> dict:
        return {"value": self.value, "argmax": self.argmax, **self.search.metadata()}


@dataclass
class SphericalIndicators:
    rho_K: float | None
    nu_K: float
    argmax_rho: complex | None
    argmax_nu: complex
    metadata: dict

    def to_json(self) -> dict:
        return {"rho_K": self.rho_K, "nu_K": self.nu_K, "argmax_rho": self.argmax_rho,
                "argmax_nu": self.argmax_nu, **self.metadata}


def _spherical_seeds(r: RationalFunction, region: Region) -> np.ndarray:
    """Zeros and poles in the region plus midpoints of zero-pole pairs.

    The spherical derivative peaks between a close zero and pole, so the
    midpoints are the natural starting points for the local polish.
    """
    zs, ps = [], []
    if not r.p.is_zero():
        zs = roots(r.p)[0].tolist()
    ps = roots(r.q)[0].tolist()
    pts = zs + ps + [(a + b) / 2 for a in zs for b in ps]
    if not pts:
        return np.zeros(0, dtype=complex)
    pts = np.array(pts, dtype=complex)
    return pts[region.contains(pts)]


def rho_sup(r: RationalFunction, region: Region, opts: SearchOptions | None = None,
            extra=()) -> SupResult:
    if region.kind == "plane":
        raise RegionError("rho_K over the whole plane is not supported; use nu_K")
    seeds = np.concatenate([_spherical_seeds(r, region), np.asarray(list(extra), dtype=complex)])
    res = search(lambda z: rho_at(r, z), region, opts, maximize=True, extra=seeds)
    return SupResult(res.value, res.point, res)


def nu_sup(r: RationalFunction, region: Region, opts: SearchOptions | None = None,
           extra=()) -> SupResult:
    seeds = np.concatenate([_spherical_seeds(r, region), np.asarray(list(extra), dtype=complex)])
    res = search(lambda z: nu_at(r, z), region, opts, maximize=True, extra=seeds)
    return SupResult(res.value, res.point, res)


def indicators(r: RationalFunction, region: Region, opts: SearchOptions | None = None) -> SphericalIndicators:
    nu = nu_sup(r, region, opts)
    meta = {"nu_search": nu.search.metadata()}
    if region.kind == "plane":
        return SphericalIndicators(None, nu.value, None, nu.argmax, meta)
    rho = rho_sup(r, region, opts)
    meta["rho_search"] = rho.search.metadata()
    return SphericalIndicators(rho.value, nu.value, rho.argmax, nu.argmax, meta)


def lipschitz_ratio_sup(r: RationalFunction, region: Region, metric: str = "euclid",
                        pair_samples: int = 10_000, seed: int = 0,
                        step: float = 1e-4) -> float:
    """Largest sampled ratio ``chordal(r(z1), r(z2)) / d(z1, z2)``.

    ``d`` is ``|z1 - z2|`` (metric "euclid", convex K) or the chordal
    distance (metric "chordal", spherically convex K).  Half of the pairs are
    near-diagonal (each grid point with a neighbour at relative distance
    ``step``), the rest are drawn with ``numpy.random.default_rng(seed)``.
    """
    if metric == "euclid":
        if not region.is_convex:
            raise HypothesisError("euclidean Lipschitz ratio needs a convex region")
    elif metric == "chordal":
        if not region.is_spherically_convex:
            raise HypothesisError("chordal Lipschitz ratio needs a spherically convex region")
    else:
        raise ValueError(f"unknown metric {metric!r}")
    if region.kind in ("plane", "points") or region.inverted:
        raise RegionError("pair sampling needs a bounded disk or segment")
    rng = np.random.default_rng(seed)
    n_near = pair_samples // 2
    n_rand = pair_samples - n_near
    h = step * region.scale
    if region.kind == "segment":
        d = region.b - region.a
        t = np.linspace(0.0, 1.0 - step, n_near)
        z1 = region.a + t * d
        z2 = z1 + step * d
    else:
        density = max(1, int(math.sqrt(n_near / 6)))
        base = region.sample(density)
        reps = -(-n_near // base.size)
        z1 = np.tile(base, reps)[:n_near]
        ang = np.exp(2j * np.pi * rng.random(n_near))
        z2 = np.array([region.project(a + h * e) for a, e in zip(z1, ang)])
    r1 = region.random_points(rng, n_rand)
    r2 = region.random_points(rng, n_rand)
    z1 = np.concatenate([z1, r1])
    z2 = np.concatenate([z2, r2])
    keep = z1 != z2
    z1, z2 = z1[keep], z2[keep]
    num = chordal_values(r, r, z1, z2)
    den = np.abs(z1 - z2) if metric == "euclid" else chordal(z1, z2)
    return float(np.max(num / den))


@dataclass
class ResidueCheck:
    pole: complex
    residue: complex
    bound: float
    ok: bool

    def to_json(self) -> dict:
        return {"pole": self.pole, "residue": self.residue, "abs_residue": abs(self.residue),
                "bound": self.bound, "ok": self.ok}


def residue_bound_check(r: RationalFunction, region: Region, opts: SearchOptions | None = None,
                        rho: SupResult | None = None, slack: float = 1e-9) -> tuple[list, list]:
    """``|residue| >= 1 / rho_K`` at every simple pole in the region.

    Returns ``(checks, skipped)`` where ``skipped`` lists poles that are not
    numerically simple.
    """
    poles = roots(r.q)[0]
    poles = poles[region.contains(poles)] if poles.size else poles
    if rho is None:
        rho = rho_sup(r, region, opts)
    checks, skipped = [], []
    for z0 in poles:
        try:
            beta = residue_at_simple_pole(r, complex(z0))
        except IndeterminateError:
            skipped.append(complex(z0))
            continue
        bound = 1.0 / rho.value if rho.value > 0 else math.inf
        checks.append(ResidueCheck(complex(z0), beta, bound, abs(beta) >= bound * (1 - slack)))
    return checks, skipped


@dataclass
class PowerRuleCheck:
    lhs: float
    rhs: float
    ok: bool


def power_rule_check(r: RationalFunction, m: int, z, slack: float = 1e-9) -> PowerRuleCheck:
    """``rho(r^m)(z) <= 2 m rho(r)(z)``."""
    if m < 1:
        raise ValueError("power must be >= 1")
    lhs = rho_at(r.power(m), z)
    rhs = 2 * m * rho_at(r, z)
    return PowerRuleCheck(lhs, rhs, lhs <= rhs * (1 + slack))


__all__ = ["chordal", "sigma", "chordal_values", "rho_at", "nu_at", "rho_sup", "nu_sup",
           "indicators", "lipschitz_ratio_sup", "residue_bound_check", "power_rule_check",
           "SupResult", "SphericalIndicators", "ResidueCheck", "PowerRuleCheck"]
