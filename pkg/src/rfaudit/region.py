"""Sets K in the extended complex plane over which indicators are taken.

Points of the Riemann sphere are plain Python/numpy complex numbers; the
point at infinity is ``complex(inf, 0)`` (see :data:`rfaudit.poly.INF`).

A region is either a bounded *base* shape (disk, unit disk, segment, finite
point set), the image of a base shape under ``z -> 1/z`` (``inverted=True``),
or the whole plane.  The whole plane is never sampled directly: it is split
into the closed unit disk and its inversion, and every objective in this
package is evaluated at ``|z| > 1`` through reversed polynomials at ``1/z``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import RegionError
from .poly import INF, is_inf

_KINDS = ("disk", "unit-disk", "segment", "points", "plane")
MEMBER_TOL = 1e-12


def _invert_points(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    zero = z == 0
    infinite = np.isinf(z.real) | np.isinf(z.imag)
    regular = ~(zero | infinite)
    out[regular] = 1.0 / z[regular]
    out[zero] = INF
    out[infinite] = 0.0
    return out


@dataclass(frozen=True)
class Region:
    kind: str
    center: complex = 0j
    radius: float = 1.0
    a: complex = 0j
    b: complex = 1 + 0j
    points: tuple = ()
    inverted: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise RegionError(f"unknown region kind {self.kind!r}")
        if self.kind == "disk" and not self.radius > 0:
            raise RegionError("disk radius must be positive")
        if self.kind == "points" and len(self.points) == 0:
            raise RegionError("point set must be non-empty")

    # constructors -------------------------------------------------------

    @classmethod
    def disk(cls, center, radius: float) -> Region:
        return cls("disk", center=complex(center), radius=float(radius))

    @classmethod
    def unit_disk(cls) -> Region:
        return cls("unit-disk")

    @classmethod
    def segment(cls, a, b) -> Region:
        return cls("segment", a=complex(a), b=complex(b))

    @classmethod
    def point_set(cls, pts) -> Region:
        return cls("points", points=tuple(complex(z) for z in pts))

    @classmethod
    def full_plane(cls) -> Region:
        return cls("plane")

    # geometry -------------------------------------------------------------

    @property
    def bounded(self) -> bool:
        return self.kind != "plane"

    @property
    def is_convex(self) -> bool:
        if self.kind == "points":
            return len(self.points) == 1
        return not self.inverted

    @property
    def is_spherically_convex(self) -> bool:
        # z -> 1/z is a chordal isometry, so inversion preserves this flag
        return self.kind in ("disk", "unit-disk", "plane") \
            or (self.kind == "points" and len(self.points) == 1)

    def base(self) -> Region:
        """The region with the inversion flag cleared."""
        return Region(self.kind, self.center, self.radius, self.a, self.b, self.points)

    def _disk_params(self):
        if self.kind == "unit-disk":
            return 0j, 1.0
        return self.center, self.radius

    def _contains_base(self, z: np.ndarray, tol: float) -> np.ndarray:
        finite = ~(np.isinf(z.real) | np.isinf(z.imag))
        zf = np.where(finite, z, 0)
        if self.kind in ("disk", "unit-disk"):
            c, r = self._disk_params()
            return finite & (np.abs(zf - c) <= r * (1 + tol) + tol * abs(c))
        if self.kind == "segment":
            d = self.b - self.a
            length = abs(d)
            if length == 0:
                return finite & (np.abs(zf - self.a) <= tol)
            t = ((zf - self.a) * np.conj(d)).real / length ** 2
            dist = np.abs(zf - (self.a + np.clip(t, 0, 1) * d))
            scale = max(length, abs(self.a), abs(self.b))
            return finite & (dist <= tol * scale)
        if self.kind == "points":
            pts = np.array(self.points, dtype=complex)
            out = np.zeros(z.shape, dtype=bool)
            for w in pts:
                if is_inf(w):
                    out |= ~finite
                else:
                    out |= finite & (np.abs(zf - w) <= tol * max(1.0, abs(w)))
            return out
        return np.ones(z.shape, dtype=bool)

    def contains(self, z, tol: float = MEMBER_TOL):
        """Membership predicate; vectorised over arrays of sphere points."""
        scalar = np.ndim(z) == 0
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if self.inverted and self.kind != "points":
            z = _invert_points(z)
        out = self._contains_base(z, tol)
        return bool(out[0]) if scalar else out

    def within_unit_disk(self, slack: float = MEMBER_TOL) -> bool:
        """True when the region lies in the closed unit disk."""
        if self.kind == "plane":
            return False
        if self.inverted:
            # 1/B lies in the closed disk iff B avoids the open disk
            return self.base().outside_unit_disk(slack)
        if self.kind == "unit-disk":
            return True
        if self.kind == "disk":
            return bool(abs(self.center) + self.radius <= 1 + slack)
        if self.kind == "segment":
            return bool(max(abs(self.a), abs(self.b)) <= 1 + slack)
        return all(not is_inf(w) and bool(abs(w) <= 1 + slack) for w in self.points)

    def outside_unit_disk(self, slack: float = MEMBER_TOL) -> bool:
        """True when ``1/K`` lies in the closed unit disk, i.e. K avoids ``|z| < 1``."""
        if self.kind in ("plane", "unit-disk"):
            return False
        if self.inverted:
            return self.base().within_unit_disk(slack)
        if self.kind == "disk":
            return bool(abs(self.center) - self.radius >= 1 - slack)
        if self.kind == "segment":
            d = self.b - self.a
            if d == 0:
                return bool(abs(self.a) >= 1 - slack)
            t = min(max((-self.a * np.conj(d)).real / abs(d) ** 2, 0.0), 1.0)
            return bool(abs(self.a + t * d) >= 1 - slack)
        return all(is_inf(w) or bool(abs(w) >= 1 - slack) for w in self.points)

    # sampling -------------------------------------------------------------

    def _sample_base(self, density: int) -> np.ndarray:
        if self.kind in ("disk", "unit-disk"):
            c, r = self._disk_params()
            radii = r * np.arange(1, density + 1) / density
            angles = np.exp(2j * np.pi * np.arange(6 * density) / (6 * density))
            ring = (radii[:, None] * angles[None, :]).ravel()
            return np.concatenate([[c], c + ring])
        if self.kind == "segment":
            t = np.arange(density + 1) / density
            return self.a + t * (self.b - self.a)
        if self.kind == "points":
            return np.array(self.points, dtype=complex)
        raise RegionError("the full plane cannot be sampled; split it with pieces()")

    def sample(self, density: int) -> np.ndarray:
        """Deterministic quasi-uniform samples.

        Disk: ``density`` rings of ``6*density`` points plus the centre.
        Segment: ``density + 1`` equispaced points.  Point set: the points.
        """
        if density < 1:
            raise RegionError("density must be >= 1")
        if self.kind == "plane":
            raise RegionError(
                "the full plane cannot be sampled directly; "
                "use the unit disk and its inversion (Region.pieces)")
        pts = self._sample_base(density)
        if self.inverted and self.kind != "points":
            return _invert_points(pts)
        return pts

    def pieces(self) -> list[tuple[Region, bool]]:
        """Bounded base shapes covering the region, with their inversion flag.

        A point ``w`` of a base shape stands for ``1/w`` when the flag is set.
        """
        if self.kind == "plane":
            ud = Region.unit_disk()
            return [(ud, False), (ud, True)]
        return [(self.base(), self.inverted)]

    def random_points(self, rng: np.random.Generator, k: int) -> np.ndarray:
        """``k`` pseudo-random points of a bounded base region."""
        if self.inverted or self.kind == "plane":
            raise RegionError("random sampling needs a bounded, non-inverted region")
        if self.kind in ("disk", "unit-disk"):
            c, r = self._disk_params()
            rad = r * np.sqrt(rng.random(k))
            return c + rad * np.exp(2j * np.pi * rng.random(k))
        if self.kind == "segment":
            return self.a + rng.random(k) * (self.b - self.a)
        pts = np.array(self.points, dtype=complex)
        return pts[rng.integers(0, pts.size, k)]

    def project(self, z: complex) -> complex:
        """Nearest point of a bounded base shape (identity for point sets)."""
        if self.kind in ("disk", "unit-disk"):
            c, r = self._disk_params()
            d = z - c
            if abs(d) <= r:
                return z
            return c + r * d / abs(d)
        if self.kind == "segment":
            d = self.b - self.a
            if d == 0:
                return self.a
            t = min(max(((z - self.a) * np.conj(d)).real / abs(d) ** 2, 0.0), 1.0)
            return self.a + t * d
        return z

    @property
    def scale(self) -> float:
        """A characteristic length of a bounded base shape."""
        if self.kind in ("disk", "unit-disk"):
            return self._disk_params()[1]
        if self.kind == "segment":
            return abs(self.b - self.a) or 1.0
        return 1.0

    # inversion --------------------------------------------------------

    def invert(self) -> Region:
        """The image of the region under ``z -> 1/z``."""
        if self.kind == "plane":
            return self
        if self.kind == "points":
            return Region.point_set(_invert_points(np.array(self.points, dtype=complex)))
        return Region(self.kind, self.center, self.radius, self.a, self.b, self.points,
                      not self.inverted)

    # text form ----------------------------------------------------------

    def describe(self) -> str:
        if self.kind == "unit-disk":
            s = "unit-disk"
        elif self.kind == "disk":
            s = f"disk:{self.center.real:g},{self.center.imag:g},{self.radius:g}"
        elif self.kind == "segment":
            s = f"segment:{self.a.real:g},{self.a.imag:g},{self.b.real:g},{self.b.imag:g}"
        elif self.kind == "points":
            s = f"points[{len(self.points)}]"
        else:
            s = "plane"
        return f"invert({s})" if self.inverted else s


def parse_region(spec: str) -> Region:
    """Parse ``disk:cx,cy,r``, ``unit-disk``, ``segment:ax,ay,bx,by``,
    ``points:file.json`` or ``plane``."""
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    head = head.lower()
    try:
        if head in ("unit-disk", "unitdisk", "d"):
            return Region.unit_disk()
        if head in ("plane", "c"):
            return Region.full_plane()
        if head == "disk":
            cx, cy, r = (float(x) for x in rest.split(","))
            return Region.disk(complex(cx, cy), r)
        if head == "segment":
            ax, ay, bx, by = (float(x) for x in rest.split(","))
            return Region.segment(complex(ax, ay), complex(bx, by))
        if head == "points":
            data = json.loads(Path(rest).read_text())
            if isinstance(data, dict):
                data = data["points"]
            return Region.point_set(_parse_point(v) for v in data)
    except (ValueError, OSError, KeyError) as exc:
        raise RegionError(f"cannot parse region {spec!r}: {exc}") from exc
    raise RegionError(f"unknown region syntax {spec!r}")


def _parse_point(v) -> complex:
    if isinstance(v, str) and v.lower() in ("inf", "infinity"):
        return INF
    if isinstance(v, (list, tuple)):
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def in_closed_unit_disk(z, slack: float = MEMBER_TOL) -> bool:
    return not is_inf(z) and abs(z) <= 1 + slack


def chart_to_sphere(w: complex, inverted: bool) -> complex:
    if not inverted:
        return w
    return INF if w == 0 else 1.0 / w


def sphere_to_chart(z: complex, inverted: bool) -> complex:
    if not inverted:
        return z
    if is_inf(z):
        return 0j
    return INF if z == 0 else 1.0 / z


__all__ = ["Region", "parse_region", "in_closed_unit_disk", "chart_to_sphere",
           "sphere_to_chart"]
