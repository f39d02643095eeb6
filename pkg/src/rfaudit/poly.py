"""Complex polynomials in the monomial basis and rational functions built from them.

Coefficients are stored in ascending order (``c[0] + c[1] z + ...``).  The
*nominal* degree is ``len(coeffs) - 1`` and is never changed by trimming; the
*effective* degree ignores trailing coefficients that are negligible relative
to the largest one.  Every quantity that depends on the degree bounds (Sylvester
matrices, coprimeness measures, reversals) uses the nominal degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, IndeterminateError, PolynomialError

TRIM_TOL = 1e-12
INF = complex(math.inf, 0.0)


def is_inf(z) -> bool:
    """True for the point at infinity marker."""
    return math.isinf(z.real) or math.isinf(z.imag)


def _as_coeffs(coeffs) -> np.ndarray:
    c = np.array(coeffs, dtype=complex).ravel()
    if c.size == 0:
        raise PolynomialError("a polynomial needs at least one coefficient")
    if not np.all(np.isfinite(c)):
        raise PolynomialError("polynomial coefficients must be finite")
    c.flags.writeable = False
    return c


class Polynomial:
    """Immutable complex polynomial with an explicit nominal degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, degree: int | None = None):
        c = _as_coeffs(coeffs)
        if degree is not None:
            if degree < 0:
                raise PolynomialError("nominal degree must be >= 0")
            if degree + 1 < c.size:
                if np.any(c[degree + 1:] != 0):
                    raise PolynomialError(
                        f"coefficients beyond nominal degree {degree} are non-zero")
                c = _as_coeffs(c[:degree + 1])
            elif degree + 1 > c.size:
                c = _as_coeffs(np.concatenate([c, np.zeros(degree + 1 - c.size)]))
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def monomial(cls, k: int) -> Polynomial:
        c = np.zeros(k + 1, dtype=complex)
        c[k] = 1.0
        return cls(c)

    @classmethod
    def zero(cls, degree: int = 0) -> Polynomial:
        return cls(np.zeros(degree + 1, dtype=complex))

    @property
    def degree(self) -> int:
        """Nominal degree."""
        return self.coeffs.size - 1

    def effective_degree(self, tol: float = TRIM_TOL) -> int:
        """Degree after dropping trailing coefficients below ``tol * max|c|``.

        Returns -1 for the zero polynomial.
        """
        a = np.abs(self.coeffs)
        top = a.max()
        if top == 0.0:
            return -1
        idx = np.nonzero(a > tol * top)[0]
        return int(idx[-1])

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.effective_degree(tol) < 0

    def padded(self, degree: int) -> Polynomial:
        return Polynomial(self.coeffs, degree)

    # ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        d = max(self.degree, other.degree)
        return Polynomial(self.padded(d).coeffs + other.padded(d).coeffs)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(np.convolve(self.coeffs, other.coeffs))
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return power(self, k)

    def scale(self, c) -> Polynomial:
        return Polynomial(complex(c) * self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs.tobytes()))

    def __repr__(self):
        body = ", ".join(_fmt_c(c) for c in self.coeffs)
        return f"Polynomial([{body}])"

    # convenience wrappers ------------------------------------------

    def derivative(self) -> Polynomial:
        return derivative(self)

    def reverse(self, degree_bound: int | None = None) -> Polynomial:
        return reverse(self, self.degree if degree_bound is None else degree_bound)

    def norm(self, s: int = 2) -> float:
        return coeff_norm(self, s)

    def roots(self, tol: float = TRIM_TOL):
        return roots(self, tol)

    # JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        return {"coeffs": [[c.real, c.imag] for c in self.coeffs.tolist()],
                "degree": self.degree}

    @classmethod
    def from_json(cls, obj) -> Polynomial:
        if isinstance(obj, dict):
            raw = obj["coeffs"]
            degree = obj.get("degree")
        else:
            raw, degree = obj, None
        coeffs = [_parse_complex(c) for c in raw]
        return cls(coeffs, degree)


def _fmt_c(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    return f"{c.real:g}{c.imag:+g}j"


def _parse_complex(c) -> complex:
    if isinstance(c, (list, tuple)):
        if len(c) != 2:
            raise PolynomialError(f"complex number must be [re, im], got {c!r}")
        return complex(float(c[0]), float(c[1]))
    if isinstance(c, str):
        return complex(c.replace(" ", ""))
    return complex(c)


def _coerce(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


# ---------------------------------------------------------------------------
# evaluation


def _horner(c: np.ndarray, z):
    acc = np.zeros_like(z, dtype=complex) if isinstance(z, np.ndarray) else 0j
    for coef in c[::-1]:
        acc = acc * z + coef
    return acc


def evaluate(poly: Polynomial, z):
    """Horner evaluation, highest power first.

    For ``|z| > 1`` the value is computed as ``z**d * reverse(p)(1/z)`` which
    keeps the intermediate Horner sums bounded.  Accepts scalars or arrays.
    """
    c = poly.coeffs
    d = c.size - 1
    if np.ndim(z) == 0:
        z = complex(z)
        if abs(z) <= 1.0 or d == 0:
            return _horner(c, z)
        w = 1.0 / z
        return _horner(c[::-1], w) * z ** d
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    inner = np.abs(z) <= 1.0
    out[inner] = _horner(c, z[inner])
    zo = z[~inner]
    if zo.size:
        out[~inner] = _horner(c[::-1], 1.0 / zo) * zo ** d
    return out


def derivative(poly: Polynomial) -> Polynomial:
    c = poly.coeffs
    if c.size == 1:
        return Polynomial([0.0])
    return Polynomial(c[1:] * np.arange(1, c.size))


def reverse(poly: Polynomial, degree_bound: int) -> Polynomial:
    """Return ``z**degree_bound * p(1/z)``."""
    if degree_bound < poly.degree:
        raise PolynomialError(
            f"degree bound {degree_bound} is below nominal degree {poly.degree}")
    return Polynomial(poly.padded(degree_bound).coeffs[::-1])


def coeff_norm(poly: Polynomial, s: int = 2) -> float:
    if s == 1:
        return float(np.abs(poly.coeffs).sum())
    if s == 2:
        a = np.abs(poly.coeffs)
        top = a.max()
        # rescale so that squaring cannot underflow or overflow
        return float(top * np.linalg.norm(a / top)) if top > 0 else 0.0
    raise ValueError(f"norm index must be 1 or 2, got {s}")


def power(poly: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise PolynomialError("power must be non-negative")
    out = Polynomial([1.0])
    base = poly
    while k:
        if k & 1:
            out = out * base
        k >>= 1
        if k:
            base = base * base
    return out


def roots(poly: Polynomial, tol: float = TRIM_TOL):
    """Finite roots and the number of roots at infinity.

    Finite roots are eigenvalues of the companion matrix of the trimmed
    polynomial (LAPACK balances before the QR iteration).  The roots at
    infinity account for the gap between nominal and effective degree.
    """
    d = poly.effective_degree(tol)
    if d < 0:
        raise PolynomialError("the zero polynomial has no well-defined roots")
    n_inf = poly.degree - d
    if d == 0:
        return np.zeros(0, dtype=complex), n_inf
    c = poly.coeffs[:d + 1]
    comp = np.zeros((d, d), dtype=complex)
    comp[1:, :-1] = np.eye(d - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    return np.linalg.eigvals(comp), n_inf


# ---------------------------------------------------------------------------
# pairs and rational functions


def pair_norm(p: Polynomial, q: Polynomial, s: int = 2) -> float:
    """Norm of a numerator/denominator pair: max of 1-norms, or joint 2-norm."""
    if s == 1:
        return max(coeff_norm(p, 1), coeff_norm(q, 1))
    if s == 2:
        return math.hypot(coeff_norm(p, 2), coeff_norm(q, 2))
    raise ValueError(f"norm index must be 1 or 2, got {s}")


@dataclass(frozen=True)
class RationalFunction:
    """``p/q`` with nominal degree bounds ``m = deg p`` and ``n = deg q``."""

    p: Polynomial
    q: Polynomial

    def __post_init__(self):
        if self.q.is_zero():
            raise PolynomialError("denominator is identically zero")

    @classmethod
    def from_coeffs(cls, p, q, m: int | None = None, n: int | None = None):
        return cls(Polynomial(p, m), Polynomial(q, n))

    @property
    def m(self) -> int:
        return self.p.degree

    @property
    def n(self) -> int:
        return self.q.degree

    def __call__(self, z):
        """Value on the Riemann sphere; poles map to ``inf``."""
        pv, qv = self.p(z), self.q(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(qv == 0, INF, pv / np.where(qv == 0, 1.0, qv))
        return complex(out) if np.ndim(out) == 0 else out

    def power(self, k: int) -> RationalFunction:
        return RationalFunction(power(self.p, k), power(self.q, k))

    def reciprocal(self) -> RationalFunction:
        return RationalFunction(self.q, self.p)

    def reversed(self) -> RationalFunction:
        """``w -> r(1/w)`` written with both polynomials reversed at a common degree."""
        d = max(self.m, self.n)
        return RationalFunction(reverse(self.p, d), reverse(self.q, d))

    def pair_norm(self, s: int = 2) -> float:
        return pair_norm(self.p, self.q, s)

    def to_json(self) -> dict:
        return {"p": self.p.to_json(), "q": self.q.to_json(), "m": self.m, "n": self.n}

    @classmethod
    def from_json(cls, obj) -> RationalFunction:
        p = Polynomial.from_json(obj["p"])
        q = Polynomial.from_json(obj["q"])
        m = int(obj.get("m", p.degree))
        n = int(obj.get("n", q.degree))
        return cls(p.padded(m), q.padded(n))


def residue_at_simple_pole(r: RationalFunction, z0: complex, tol: float = 1e-8) -> complex:
    """Residue ``p(z0) / q'(z0)`` at a simple pole."""
    scale = coeff_norm(r.q, 1) * max(1.0, abs(z0)) ** r.n
    if abs(r.q(z0)) > tol * scale:
        raise IndeterminateError(f"{z0!r} is not a pole: |q(z0)| = {abs(r.q(z0)):.3g}")
    dq = derivative(r.q)(z0)
    if abs(dq) <= tol * scale:
        raise IndeterminateError(f"pole at {z0!r} is not simple")
    return complex(r.p(z0) / dq)


@dataclass(frozen=True)
class DiophantineSolution:
    u: Polynomial
    v: Polynomial
    residual: float
    sigma_min: float


def diophantine_solve(p: Polynomial, q: Polynomial, m: int, n: int,
                      target: Polynomial, rank_tol: float = 1e-10) -> DiophantineSolution:
    """Solve ``p u + q v = target`` with ``deg u <= n-1`` and ``deg v <= m-1``.

    The unknown coefficient vector ``(u, v)`` solves the square system
    ``S0 w = target`` where ``S0`` is the Sylvester-type matrix with no extra
    shifts.  Raises :class:`DegenerateError` when ``S0`` is numerically
    singular.
    """
    from .sylvester import build  # local import: sylvester depends on this module

    N = m + n
    if target.effective_degree(0.0) > N - 1:
        raise PolynomialError(f"target degree must be <= {N - 1}")
    if N == 0:
        raise PolynomialError("m + n must be positive")
    S = build(p, q, m, n, 0)
    sv = S.singular_values()
    if sv[-1] <= rank_tol * sv[0]:
        raise DegenerateError("Sylvester matrix is singular to working precision",
                              sigma_min=float(sv[-1]))
    t = target.padded(max(target.degree, N - 1)).coeffs[:N]
    w = np.linalg.solve(S.entries, t)
    u = Polynomial(w[:n]) if n else Polynomial([0.0])
    v = Polynomial(w[n:]) if m else Polynomial([0.0])
    res = (p * u + q * v) - target
    return DiophantineSolution(u, v, coeff_norm(res, 2), float(sv[-1]))
