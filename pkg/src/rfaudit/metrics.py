"""Distances between rational functions: by values (chordal sup) and by coefficients."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coprimeness import epsilon_at, epsilon_region
from .errors import HypothesisError, PolynomialError
from .poly import RationalFunction, pair_norm, roots
from .region import Region
from .search import SearchOptions, SearchResult, search
from .spherical import chordal_values
from .sylvester import build


@dataclass
class ChiResult:
    value: float
    argmax: complex
    search: SearchResult


def _chi_seeds(r: RationalFunction, rt: RationalFunction, region: Region) -> np.ndarray:
    pts = []
    for f in (r, rt):
        for poly in (f.p, f.q):
            if not poly.is_zero():
                pts.extend(roots(poly)[0].tolist())
    if not pts:
        return np.zeros(0, dtype=complex)
    pts = np.array(pts, dtype=complex)
    return pts[region.contains(pts)]


def chi_region(r: RationalFunction, rt: RationalFunction, region: Region,
               opts: SearchOptions | None = None, extra=()) -> ChiResult:
    """Sampled ``sup_{z in K} chordal(r(z), rt(z))`` (a lower bound on the sup)."""
    seeds = np.concatenate([_chi_seeds(r, rt, region), np.asarray(list(extra), dtype=complex)])
    res = search(lambda z: chordal_values(r, rt, z), region, opts, maximize=True, extra=seeds)
    return ChiResult(res.value, res.point, res)


def _stacked(r: RationalFunction, m: int, n: int) -> np.ndarray:
    v = np.concatenate([r.p.padded(m).coeffs, r.q.padded(n).coeffs])
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise PolynomialError("coefficient distance of a zero pair is undefined")
    return v / nrm


def coeff_distance(r: RationalFunction, rt: RationalFunction) -> float:
    """``min_{|a|=1} || u - a v ||_2`` for normalised stacked coefficient vectors.

    The minimiser is the phase of ``<v, u>``; the distance is then computed
    directly rather than as ``sqrt(2 - 2|<u, v>|)``, which loses all accuracy
    for nearby functions.
    """
    m, n = max(r.m, rt.m), max(r.n, rt.n)
    u, v = _stacked(r, m, n), _stacked(rt, m, n)
    ip = np.vdot(v, u)
    a = ip / abs(ip) if ip != 0 else 1.0
    return float(np.linalg.norm(u - a * v))


@dataclass
class DistanceReport:
    chi_K: float
    d: float
    region: Region
    eps1_K: float
    delta_norm1: float
    thm_lhs: float
    thm_rhs: float
    thm_ok: bool
    cond2: float | None = None
    chi_D: float | None = None
    bm_lower: float | None = None
    bm_upper: float | None = None
    bm_ratio: float | None = None
    bm_ok: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.thm_ok and self.bm_ok is not False

    def to_json(self) -> dict:
        return {
            "region": self.region.describe(),
            "chi_K": self.chi_K,
            "d": self.d,
            "eps1_K": self.eps1_K,
            "delta_norm1": self.delta_norm1,
            "bounds": {"coprime_rhs": self.thm_rhs, "bm_lower": self.bm_lower,
                       "bm_upper": self.bm_upper},
            "verdicts": [
                {"check": "coprime_distance_bound",
                 "relation": "eps1_K * chi_K <= sqrt(2) * ||(p - pt, q - qt)||_1",
                 "lhs": self.thm_lhs, "rhs": self.thm_rhs, "ok": self.thm_ok},
                {"check": "value_vs_coefficient_distance",
                 "relation": "lower <= chi_D / d <= upper (cond2 of S^(1))",
                 "cond2": self.cond2, "chi_D": self.chi_D, "ratio": self.bm_ratio,
                 "lower": self.bm_lower, "upper": self.bm_upper, "ok": self.bm_ok},
            ],
            "notes": self.notes,
        }


def distances_inequality_check(r: RationalFunction, rt: RationalFunction, region: Region,
                               opts: SearchOptions | None = None,
                               slack: float = 1e-9) -> DistanceReport:
    """Check ``eps1_K(p, q) chi_K(r, rt) <= sqrt(2) ||(p - pt, q - qt)||_1``.

    Valid when K lies in the closed unit disk or ``m == n``.  Both factors on
    the left are evaluated exactly on one common finite set (the union of the
    two searches' candidates) so the comparison carries no sampling bias.
    Also reports the two-sided comparison of ``chi_D / d`` with the condition
    number of ``S^(1)(p, q)`` over the unit disk.
    """
    m, n = r.m, r.n
    if (rt.m, rt.n) != (m, n):
        raise HypothesisError("both functions must share the degree bounds (m, n)")
    if not (region.within_unit_disk() or m == n):
        raise HypothesisError("needs a region inside the closed unit disk, or m == n")
    p, q, pt, qt = r.p, r.q, rt.p, rt.q
    delta1 = pair_norm(p - pt, q - qt, 1)

    eps = epsilon_region(p, q, m, n, 1, region, opts)
    chi = chi_region(r, rt, region, opts)
    common = np.concatenate([eps.search.candidates, chi.search.candidates])
    eps_hat = float(np.min(epsilon_at(p, q, m, n, 1, common)))
    chi_hat = float(np.max(chordal_values(r, rt, common)))
    lhs = eps_hat * chi_hat
    rhs = math.sqrt(2) * delta1
    report = DistanceReport(chi_hat, coeff_distance(r, rt), region, eps_hat, delta1,
                            lhs, rhs, lhs <= rhs * (1 + slack))

    S = build(p, q, m, n, 1)
    if not S.full_row_rank:
        report.notes.append("S^(1)(p, q) is rank deficient; condition-number comparison skipped")
        return report
    cond = S.cond2()
    chi_d = chi_hat if region.kind == "unit-disk" else \
        chi_region(r, rt, Region.unit_disk(), opts).value
    N = m + n + 1
    report.cond2 = cond
    report.chi_D = chi_d
    report.bm_lower = N ** -1.5 / (math.sqrt(2) * cond)
    report.bm_upper = math.sqrt(2 * N) * cond
    if report.d > 0:
        ratio = chi_d / report.d
        report.bm_ratio = ratio
        report.bm_ok = report.bm_lower * (1 - slack) <= ratio <= report.bm_upper * (1 + slack)
    else:
        report.notes.append("d = 0: the functions coincide, ratio undefined")
    return report
