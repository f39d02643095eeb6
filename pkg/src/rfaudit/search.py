"""Grid search with derivative-free local polish over a region of the sphere.

Objectives are vectorised functions of sphere points (``INF`` included).  The
search evaluates them on the deterministic region samples plus caller-supplied
extra points, then polishes the best few candidates in the chart of the piece
they belong to: ``w = z`` on a plain piece, ``w = 1/z`` on an inverted one.
The polished point is always projected back into the piece, so every point
returned lies in the region.

The result is only a bracket of the true extremum: a minimum found this way is
an upper bound on the infimum and a maximum a lower bound on the supremum.
``SearchResult.candidates`` lists every point that was evaluated, so callers
can evaluate several objectives on one common finite set.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .poly import is_inf
from .region import Region, chart_to_sphere, sphere_to_chart

DEFAULT_DENSITY = 48
DEFAULT_POLISH = 10


def default_density() -> int:
    """Grid density, overridable through ``RFA_DENSITY``."""
    raw = os.environ.get("RFA_DENSITY")
    if raw:
        val = int(raw)
        if val < 1:
            raise ValueError("RFA_DENSITY must be a positive integer")
        return val
    return DEFAULT_DENSITY


@dataclass(frozen=True)
class SearchOptions:
    density: int = field(default_factory=default_density)
    n_polish: int = DEFAULT_POLISH
    xatol: float = 1e-12
    maxiter: int = 600

    def to_json(self) -> dict:
        return {"density": self.density, "n_polish": self.n_polish,
                "xatol": self.xatol, "maxiter": self.maxiter}


@dataclass
class SearchResult:
    value: float
    point: complex
    candidates: np.ndarray
    values: np.ndarray
    n_grid: int
    density: int
    polished: int
    method: str

    def metadata(self) -> dict:
        return {"grid_density": self.density, "grid_points": self.n_grid,
                "candidates": int(self.candidates.size), "polished": self.polished,
                "method": self.method}


def _piece_of(region: Region, z: complex):
    """Return ``(base, inverted)`` of the piece holding ``z`` or None."""
    if region.kind == "points":
        return None
    for base, inv in region.pieces():
        w = sphere_to_chart(z, inv)
        if is_inf(w):
            continue
        if region.kind == "plane":
            if abs(w) <= 1.0:
                return base, inv
        elif base.contains(w):
            return base, inv
    return None


def _polish(f, base: Region, inverted: bool, z0: complex, density: int,
            sign: float, opts: SearchOptions):
    def at(w):
        z = chart_to_sphere(complex(w), inverted)
        return sign * float(f(np.array([z]))[0])

    w0 = sphere_to_chart(z0, inverted)
    h = base.scale / max(density, 1)
    if base.kind == "segment":
        d = base.b - base.a
        t0 = ((w0 - base.a) * np.conj(d)).real / abs(d) ** 2 if d != 0 else 0.0
        lo, hi = max(0.0, t0 - h / (abs(d) or 1)), min(1.0, t0 + h / (abs(d) or 1))
        if hi <= lo:
            return None
        res = minimize_scalar(lambda t: at(base.a + t * d), bounds=(lo, hi),
                              method="bounded",
                              options={"xatol": opts.xatol, "maxiter": opts.maxiter})
        w = base.a + res.x * d
        return chart_to_sphere(w, inverted)

    def obj(x):
        return at(base.project(complex(x[0], x[1])))

    x0 = np.array([w0.real, w0.imag])
    fatol = 1e-15 * max(abs(obj(x0)), 1e-300)
    simplex = np.array([x0, x0 + [h / 2, 0.0], x0 + [0.0, h / 2]])
    res = minimize(obj, x0, method="Nelder-Mead",
                   options={"initial_simplex": simplex, "xatol": opts.xatol * max(1.0, base.scale),
                            "fatol": fatol, "maxiter": opts.maxiter, "maxfev": 2 * opts.maxiter})
    w = base.project(complex(res.x[0], res.x[1]))
    return chart_to_sphere(w, inverted)


def search(f, region: Region, opts: SearchOptions | None = None, *,
           maximize: bool = False, extra=()) -> SearchResult:
    """Extremise ``f`` over ``region`` (samples + ``extra`` + local polish).

    ``extra`` points are evaluated unconditionally; the caller decides whether
    they belong to the region.  Point-set regions are evaluated exactly with no
    polish.
    """
    opts = opts or SearchOptions()
    sign = -1.0 if maximize else 1.0
    if region.kind == "plane":
        ud = Region.unit_disk()
        grid = np.concatenate([ud.sample(opts.density), ud.invert().sample(opts.density)])
    else:
        grid = region.sample(opts.density)
    extra = np.asarray(list(extra), dtype=complex).ravel()
    cand = np.concatenate([grid, extra]) if extra.size else grid
    vals = np.asarray(f(cand), dtype=float)
    order = np.argsort(sign * vals, kind="stable")

    polished_pts = []
    if region.kind != "points" and opts.n_polish > 0:
        seen = 0
        for idx in order:
            if seen >= opts.n_polish:
                break
            z0 = complex(cand[idx])
            piece = _piece_of(region, z0)
            if piece is None:
                continue
            seen += 1
            z1 = _polish(f, piece[0], piece[1], z0, opts.density, sign, opts)
            if z1 is not None:
                polished_pts.append(z1)
    if polished_pts:
        pts = np.array(polished_pts, dtype=complex)
        pvals = np.asarray(f(pts), dtype=float)
        cand = np.concatenate([cand, pts])
        vals = np.concatenate([vals, pvals])

    best = int(np.argmin(sign * vals))
    method = "finite-exact" if region.kind == "points" else "grid+refine"
    return SearchResult(float(vals[best]), complex(cand[best]), cand, vals,
                        int(grid.size), opts.density, len(polished_pts), method)


def extremum_on(f, points: np.ndarray, maximize: bool = False):
    """Exact extremum of ``f`` on a finite point set: ``(value, point)``."""
    vals = np.asarray(f(points), dtype=float)
    i = int(np.argmax(vals) if maximize else np.argmin(vals))
    return float(vals[i]), complex(points[i])
