"""Numerical coprimeness of a polynomial pair over a region.

The pointwise objective at ``z`` measures how small ``p(z)`` and ``q(z)`` are
simultaneously, each normalised by the size of the monomial vector:

* ``s = 2``: ``sqrt(|p|^2 / sum_{j<=m} |z|^{2j} + |q|^2 / sum_{j<=n} |z|^{2j})``
* ``s = 1``: ``max(|p| / max(1, |z|^m), |q| / max(1, |z|^n))``

Its infimum over K is the coprimeness measure ``eps_s^K``.  Outside the unit
disk the objective is evaluated through the reversed polynomials at ``1/z``,
which is an exact identity and avoids overflow; at infinity it reduces to the
moduli of the leading coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poly import INF, Polynomial, evaluate, pair_norm, reverse, roots
from .region import Region
from .search import SearchOptions, SearchResult, extremum_on, search
from .sylvester import build


def _inner(pc: Polynomial, qc: Polynomial, w: np.ndarray, s: int) -> np.ndarray:
    # |w| <= 1 branch: max(1, |w|^k) == 1
    pv = np.abs(evaluate(pc, w))
    qv = np.abs(evaluate(qc, w))
    if s == 1:
        return np.maximum(pv, qv)
    a2 = np.abs(w) ** 2
    sp = np.polyval(np.ones(pc.degree + 1), a2)
    sq = np.polyval(np.ones(qc.degree + 1), a2)
    return np.sqrt(pv ** 2 / sp + qv ** 2 / sq)


def epsilon_at(p: Polynomial, q: Polynomial, m: int, n: int, s: int, z):
    """Pointwise coprimeness objective at sphere point(s) ``z``."""
    if s not in (1, 2):
        raise ValueError(f"s must be 1 or 2, got {s}")
    p, q = p.padded(m), q.padded(n)
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(z.shape, dtype=float)
    infinite = np.isinf(z.real) | np.isinf(z.imag)
    inner = ~infinite & (np.abs(z) <= 1.0)
    outer = ~infinite & ~inner
    if inner.any():
        out[inner] = _inner(p, q, z[inner], s)
    if outer.any() or infinite.any():
        pr, qr = reverse(p, m), reverse(q, n)
        if outer.any():
            out[outer] = _inner(pr, qr, 1.0 / z[outer], s)
        if infinite.any():
            out[infinite] = _inner(pr, qr, np.zeros(int(infinite.sum()), dtype=complex), s)
    return float(out[0]) if scalar else out


@dataclass
class EpsilonResult:
    value: float
    argmin: complex
    s: int
    region: Region
    method: str
    search: SearchResult | None = None

    def to_json(self) -> dict:
        out = {"s": self.s, "region": self.region.describe(), "epsilon": self.value,
               "argmin": self.argmin, "method": self.method}
        if self.search is not None:
            out.update(self.search.metadata())
        return out


def _root_seeds(p: Polynomial, q: Polynomial, region: Region) -> np.ndarray:
    pts = []
    for poly in (p, q):
        if poly.is_zero():
            continue
        finite, n_inf = roots(poly)
        pts.extend(finite.tolist())
        if n_inf:
            pts.append(INF)
    if not pts:
        return np.zeros(0, dtype=complex)
    pts = np.array(pts, dtype=complex)
    return pts[region.contains(pts)]


def epsilon_region(p: Polynomial, q: Polynomial, m: int, n: int, s: int, region: Region,
                   opts: SearchOptions | None = None, extra=()) -> EpsilonResult:
    """Upper bound on ``inf_{z in K}`` of the pointwise objective.

    Candidates are the region samples, the roots of ``p`` and ``q`` lying in
    the region, any ``extra`` points, and local refinements of the best ones.
    """
    p, q = p.padded(m), q.padded(n)
    seeds = _root_seeds(p, q, region)
    extra = np.concatenate([seeds, np.asarray(list(extra), dtype=complex).ravel()])
    res = search(lambda z: epsilon_at(p, q, m, n, s, z), region, opts, extra=extra)
    return EpsilonResult(res.value, res.point, s, region, res.method, res)


def epsilon_on_points(p: Polynomial, q: Polynomial, m: int, n: int, s: int, points) -> tuple[float, complex]:
    """Exact minimum over a finite set of sphere points."""
    pts = np.asarray(points, dtype=complex)
    return extremum_on(lambda z: epsilon_at(p, q, m, n, s, z), pts)


def epsilon_of_power(p: Polynomial, q: Polynomial, m: int, n: int, k: int, s: int,
                     region: Region, opts: SearchOptions | None = None) -> EpsilonResult:
    """``eps(p^k, q^k)`` over nominal degrees ``(k m, k n)`` via ``eps(p, q)^k``.

    The pointwise objective of the powers is the k-th power of the objective
    for s = 1, so this is exact for s = 1 (for s = 2 use epsilon_region on
    the expanded powers).
    """
    if s != 1:
        raise ValueError("the power identity is pointwise exact only for s = 1")
    base = epsilon_region(p, q, m, n, s, region, opts)
    return EpsilonResult(base.value ** k, base.argmin, s, region, base.method, base.search)


def epsilon_lower_bound(p: Polynomial, q: Polynomial, m: int, n: int, ell: int = 1, s: int = 2) -> float:
    """Lower bound on the coprimeness measure from Sylvester-type matrices.

    s = 2: ``1 / (sqrt(m+n+1) ||S_ell^+||_2)``; s = 1: ``1 / ||S_0^-1||_1``.
    Raises DegenerateError for degenerate pairs.
    """
    if s == 2:
        return 1.0 / (math.sqrt(m + n + 1) * build(p, q, m, n, ell).pinv_norm2())
    if s == 1:
        return 1.0 / build(p, q, m, n, 0).inv_norm1()
    raise ValueError(f"s must be 1 or 2, got {s}")


@dataclass
class SensitivityVerdict:
    s: int
    delta_norm_s: float
    eps_radius: float
    eps_hypothesis: bool
    eps_ratio: float | None
    eps_ok: bool | None
    delta_norm_2: float
    cond_radius: float | None
    cond_hypothesis: bool
    cond_ratio: float | None
    cond_ok: bool | None

    @property
    def ok(self) -> bool:
        return self.eps_ok is not False and self.cond_ok is not False

    def to_json(self) -> dict:
        return dict(self.__dict__)


def sensitivity_certificate(p: Polynomial, q: Polynomial, pt: Polynomial, qt: Polynomial,
                            m: int, n: int, s: int, region: Region,
                            opts: SearchOptions | None = None,
                            slack: float = 1e-9) -> SensitivityVerdict:
    """Stability of the coprimeness measure and of ``cond(S^(1))`` under perturbation.

    Both coprimeness measures are evaluated exactly on one common finite set
    (the union of both searches' candidates), for which the ratio bounds hold
    without sampling error.  The condition-number part uses the 2-norm ball of
    radius ``1 / (3 sqrt(m+n+1) ||S_1^+||_2)``.
    """
    p, q, pt, qt = p.padded(m), q.padded(n), pt.padded(m), qt.padded(n)
    dp, dq = p - pt, q - qt
    dnorm = pair_norm(dp, dq, s)
    r1 = epsilon_region(p, q, m, n, s, region, opts, extra=_root_seeds(pt, qt, region))
    r2 = epsilon_region(pt, qt, m, n, s, region, opts, extra=_root_seeds(p, q, region))
    common = np.concatenate([r1.search.candidates, r2.search.candidates])
    e1, _ = epsilon_on_points(p, q, m, n, s, common)
    e2, _ = epsilon_on_points(pt, qt, m, n, s, common)
    hyp_b = dnorm <= e1 / 2
    ratio_b = e2 / e1 if e1 > 0 else None
    ok_b = None
    if hyp_b and ratio_b is not None:
        ok_b = 0.5 * (1 - slack) <= ratio_b <= 1.5 * (1 + slack)

    d2 = pair_norm(dp, dq, 2)
    S = build(p, q, m, n, 1)
    radius_a = None
    hyp_a = False
    ratio_a = ok_a = None
    if S.full_row_rank:
        radius_a = 1.0 / (3 * math.sqrt(m + n + 1) * S.pinv_norm2())
        hyp_a = d2 <= radius_a
        if hyp_a:
            ratio_a = build(pt, qt, m, n, 1).cond2() / S.cond2()
            ok_a = 0.5 * (1 - slack) <= ratio_a <= 2.0 * (1 + slack)
    return SensitivityVerdict(s, dnorm, e1 / 2, hyp_b, ratio_b, ok_b,
                              d2, radius_a, hyp_a, ratio_a, ok_a)

