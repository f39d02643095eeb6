"""Zero-pole pairing on the Riemann sphere and separation certificates.

Every certificate compares an observed zero-pole distance with lower bounds
derived from three indicators:

* ``cond_bound``: ``1 / (3 sqrt(2) (m+n+1)^{3/2} cond(S^(1)))`` on the
  euclidean distance, for pairs in the closed unit disk;
* ``coprime_bound_s``: ``eps_s / (2 max(m ||p||_s, n ||q||_s))`` on the
  chordal distance (``min`` instead of ``max`` when the evaluation set lies
  in the closed unit disk or outside the open one);
* ``spherical_rho_bound`` / ``spherical_nu_bound``: ``1 / rho_K`` on the
  euclidean distance (convex K) and ``2 / (pi nu_K)`` on the chordal distance
  (spherically convex K), for pairs lying in K.

The coprimeness measure is evaluated on ``Khat = samples of K + all finite
zeros and poles + local refinements``.  Since the bound is proved by
evaluating the objective at the pair itself, it holds on any set containing
the pair, and Khat contains every pair by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coprimeness import epsilon_at, epsilon_region
from .errors import HypothesisError
from .poly import INF, TRIM_TOL, RationalFunction, coeff_norm, is_inf, pair_norm, roots
from .region import Region, in_closed_unit_disk
from .search import SearchOptions
from .spherical import chordal, nu_at, nu_sup, rho_at, rho_sup
from .sylvester import build

DEFAULT_THRESHOLD = 1e-3
BOUND_SLACK = 1e-9
DEGENERATE_CHI = 1e-12


@dataclass(frozen=True)
class ZeroPolePair:
    zero: complex
    pole: complex
    chi: float
    euclid: float | None
    degenerate: bool


def sphere_zeros_poles(r: RationalFunction, tol: float = TRIM_TOL):
    """Zeros and poles of ``r`` on the sphere, with multiplicity.

    Finite zeros and poles are the roots of ``p`` and ``q``; the point at
    infinity is a zero (pole) of order ``deg q - deg p`` (``deg p - deg q``)
    computed from effective degrees.
    """
    dq = r.q.effective_degree(tol)
    if r.p.is_zero(0.0):
        return [], roots(r.q, tol)[0].tolist()
    dp = r.p.effective_degree(tol)
    zeros = roots(r.p, tol)[0].tolist() + [INF] * max(0, dq - dp)
    poles = roots(r.q, tol)[0].tolist() + [INF] * max(0, dp - dq)
    return zeros, poles


def _sort_key(pair: ZeroPolePair):
    def k(z):
        return (math.inf, 0.0) if is_inf(z) else (z.real, z.imag)
    return (pair.chi, *k(pair.zero), *k(pair.pole))


def zero_pole_pairs(r: RationalFunction, tol: float = TRIM_TOL) -> list[ZeroPolePair]:
    """All (zero, pole) combinations sorted by chordal distance."""
    zeros, poles = sphere_zeros_poles(r, tol)
    out = []
    for a in zeros:
        for b in poles:
            chi = chordal(a, b)
            eu = None if (is_inf(a) or is_inf(b)) else abs(a - b)
            out.append(ZeroPolePair(complex(a), complex(b), chi, eu, chi < DEGENERATE_CHI))
    out.sort(key=_sort_key)
    return out


@dataclass
class DoubletCertificate:
    zero: complex
    pole: complex
    chi_dist: float
    euclid_dist: float | None
    bounds: dict
    checks: dict
    flagged: bool = False
    degenerate: bool = False

    @property
    def violations(self) -> list[str]:
        return [k for k, ok in self.checks.items() if ok is False]

    def to_json(self) -> dict:
        return {"zero": self.zero, "pole": self.pole, "chi_dist": self.chi_dist,
                "euclid_dist": self.euclid_dist, "bounds": self.bounds,
                "checks": self.checks, "violations": self.violations,
                "flagged": self.flagged, "degenerate": self.degenerate}


@dataclass
class FroissartIndicators:
    """Indicators shared by all certificates of one rational function."""
    cond2: float
    eps: dict
    coprime_bounds: dict
    use_min: bool
    rho_K: float | None
    nu_K: float | None
    region: Region
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"cond2_S1": self.cond2, "eps_Khat": {str(k): v for k, v in self.eps.items()},
                "coprime_bounds": {f"s{k}": v for k, v in self.coprime_bounds.items()},
                "coprime_denominator": "min" if self.use_min else "max",
                "rho_K": self.rho_K, "nu_K": self.nu_K, "notes": self.notes}


def _finite_roots(r: RationalFunction) -> np.ndarray:
    pts = []
    if not r.p.is_zero(0.0):
        pts += roots(r.p)[0].tolist()
    pts += roots(r.q)[0].tolist()
    return np.array(pts, dtype=complex)


def froissart_indicators(r: RationalFunction, region: Region,
                         opts: SearchOptions | None = None) -> FroissartIndicators:
    m, n = r.m, r.n
    p, q = r.p, r.q
    cond = build(p, q, m, n, 1).cond2()
    finite = _finite_roots(r)
    slack = 1e-12
    inside = region.within_unit_disk() and all(abs(z) <= 1 + slack for z in finite)
    outside = region.outside_unit_disk() and all(abs(z) >= 1 - slack for z in finite)
    use_min = inside or outside
    agg = min if use_min else max
    eps, bounds = {}, {}
    for s in (1, 2):
        res = epsilon_region(p, q, m, n, s, region, opts, extra=finite)
        eps[s] = res.value
        denom = agg(m * coeff_norm(p, s), n * coeff_norm(q, s))
        bounds[s] = res.value / (2 * denom) if denom > 0 else math.inf
    notes = []
    rho = nu = None
    if region.kind != "plane":
        rho = rho_sup(r, region, opts).value
    else:
        notes.append("rho_K is not computed over the whole plane")
    nu = nu_sup(r, region, opts).value
    return FroissartIndicators(cond, eps, bounds, use_min, rho, nu, region, notes)


def _check(observed, bound):
    if bound is None or observed is None:
        return None
    return bool(observed >= bound * (1 - BOUND_SLACK))


def certificates(r: RationalFunction, region: Region, opts: SearchOptions | None = None,
                 threshold_chi: float = DEFAULT_THRESHOLD,
                 indicators: FroissartIndicators | None = None) -> list[DoubletCertificate]:
    """One certificate per zero-pole pair, each bound checked against the pair."""
    ind = indicators or froissart_indicators(r, region, opts)
    N = r.m + r.n + 1
    cond_bound = 1.0 / (3 * math.sqrt(2) * N ** 1.5 * ind.cond2)
    out = []
    for pr in zero_pole_pairs(r):
        finite = not (is_inf(pr.zero) or is_inf(pr.pole))
        in_disk = finite and in_closed_unit_disk(pr.zero) and in_closed_unit_disk(pr.pole)
        in_K = finite and region.contains(pr.zero) and region.contains(pr.pole)
        bounds = {
            "cond_bound": cond_bound if in_disk else None,
            "coprime_bound_s1": ind.coprime_bounds[1] if finite else None,
            "coprime_bound_s2": ind.coprime_bounds[2] if finite else None,
            "spherical_rho_bound": (1.0 / ind.rho_K if ind.rho_K else None)
            if in_K and region.is_convex and ind.rho_K is not None else None,
            "spherical_nu_bound": (2.0 / (math.pi * ind.nu_K) if ind.nu_K else None)
            if in_K and region.is_spherically_convex else None,
        }
        checks = {
            "cond_bound": _check(pr.euclid, bounds["cond_bound"]),
            "coprime_bound_s1": _check(pr.chi, bounds["coprime_bound_s1"]),
            "coprime_bound_s2": _check(pr.chi, bounds["coprime_bound_s2"]),
            "spherical_rho_bound": _check(pr.euclid, bounds["spherical_rho_bound"]),
            "spherical_nu_bound": _check(pr.chi, bounds["spherical_nu_bound"]),
        }
        out.append(DoubletCertificate(pr.zero, pr.pole, pr.chi, pr.euclid, bounds, checks,
                                      flagged=pr.chi < threshold_chi, degenerate=pr.degenerate))
    return out


def detect(r: RationalFunction, threshold_chi: float = DEFAULT_THRESHOLD,
           region: Region | None = None, opts: SearchOptions | None = None) -> list[DoubletCertificate]:
    """Zero-pole pairs closer than ``threshold_chi`` in the chordal metric."""
    pairs = zero_pole_pairs(r)
    if not any(p.chi < threshold_chi for p in pairs):
        return []
    certs = certificates(r, region or Region.unit_disk(), opts, threshold_chi)
    return [c for c in certs if c.flagged]


def robust_certificates(r: RationalFunction, rt: RationalFunction, region: Region,
                        opts: SearchOptions | None = None) -> list[DoubletCertificate]:
    """Separation bounds for the zeros and poles of a perturbation ``rt`` of ``r``.

    The bounds use indicators of ``r`` with weakened constants and apply only
    when the perturbation lies inside the corresponding stability radius:
    ``1 / (6 sqrt(2) (m+n+1)^{3/2} cond(S^(1)(p, q)))`` on euclidean distances
    of pairs in the unit disk, and ``eps_s / (6 (m+n) ||(p, q)||_s)`` on
    chordal distances.
    """
    m, n = r.m, r.n
    p, q, pt, qt = r.p, r.q, rt.p.padded(m), rt.q.padded(n)
    N = m + n + 1
    S = build(p, q, m, n, 1)
    d2 = pair_norm(p - pt, q - qt, 2)
    hyp_a = d2 <= 1.0 / (3 * math.sqrt(N) * S.pinv_norm2())
    cond_bound = 1.0 / (6 * math.sqrt(2) * N ** 1.5 * S.cond2()) if hyp_a else None
    extra = np.concatenate([_finite_roots(r), _finite_roots(rt)])
    cop = {}
    for s in (1, 2):
        eps = epsilon_region(p, q, m, n, s, region, opts, extra=extra).value
        hyp_b = pair_norm(p - pt, q - qt, s) <= eps / 2
        cop[s] = eps / (6 * (m + n) * pair_norm(p, q, s)) if hyp_b and m + n > 0 else None
    out = []
    for pr in zero_pole_pairs(rt):
        finite = not (is_inf(pr.zero) or is_inf(pr.pole))
        in_disk = finite and in_closed_unit_disk(pr.zero) and in_closed_unit_disk(pr.pole)
        bounds = {"robust_cond_bound": cond_bound if in_disk else None,
                  "robust_coprime_bound_s1": cop[1] if finite else None,
                  "robust_coprime_bound_s2": cop[2] if finite else None}
        checks = {"robust_cond_bound": _check(pr.euclid, bounds["robust_cond_bound"]),
                  "robust_coprime_bound_s1": _check(pr.chi, bounds["robust_coprime_bound_s1"]),
                  "robust_coprime_bound_s2": _check(pr.chi, bounds["robust_coprime_bound_s2"])}
        out.append(DoubletCertificate(pr.zero, pr.pole, pr.chi, pr.euclid, bounds, checks,
                                      degenerate=pr.degenerate))
    return out


@dataclass
class IndicatorComparison:
    coprime_side: float
    inv_nu: float
    inv_rho: float | None
    ok: bool


def indicator_comparison(r: RationalFunction, region: Region,
                         opts: SearchOptions | None = None,
                         slack: float = BOUND_SLACK) -> IndicatorComparison:
    """``eps1_K / (2 max(m ||p||_1, n ||q||_1)) <= 1/nu_K <= 1/rho_K``.

    Requires K inside the closed unit disk or ``m == n``.  All three
    indicators are evaluated on one common finite subset of K.
    """
    m, n = r.m, r.n
    if not (region.within_unit_disk() or m == n):
        raise HypothesisError("needs a region inside the closed unit disk, or m == n")
    p, q = r.p, r.q
    eps = epsilon_region(p, q, m, n, 1, region, opts)
    nu = nu_sup(r, region, opts)
    parts = [eps.search.candidates, nu.search.candidates]
    rho = None
    if region.kind != "plane":
        rho = rho_sup(r, region, opts)
        parts.append(rho.search.candidates)
    common = np.concatenate(parts)
    e = float(np.min(epsilon_at(p, q, m, n, 1, common)))
    nu_v = float(np.max(nu_at(r, common)))
    denom = max(m * coeff_norm(p, 1), n * coeff_norm(q, 1))
    lhs = e / (2 * denom) if denom > 0 else math.inf
    inv_nu = 1.0 / nu_v if nu_v > 0 else math.inf
    inv_rho = None
    ok = lhs <= inv_nu * (1 + slack)
    if rho is not None:
        rho_v = float(np.max(rho_at(r, common)))
        inv_rho = 1.0 / rho_v if rho_v > 0 else math.inf
        ok = ok and inv_nu <= inv_rho * (1 + slack)
    return IndicatorComparison(lhs, inv_nu, inv_rho, ok)
