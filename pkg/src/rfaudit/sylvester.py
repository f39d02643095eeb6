"""Sylvester-type matrices of a polynomial pair and their norms.

``build(p, q, m, n, ell)`` returns the ``(m+n+ell) x (m+n+2*ell)`` matrix whose
first ``n+ell`` columns are down-shifted copies of the coefficients of ``p``
and whose last ``m+ell`` columns are down-shifted copies of ``q``.  For
``ell = 0`` it is the transpose of the classical Sylvester matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError
from .poly import Polynomial, evaluate, pair_norm

RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SylvesterMatrix:
    entries: np.ndarray
    m: int
    n: int
    ell: int
    rank_tol: float = RANK_TOL
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def shape(self):
        return self.entries.shape

    def singular_values(self) -> np.ndarray:
        """All ``m+n+ell`` singular values, descending."""
        sv = self._cache.get("sv")
        if sv is None:
            if self.entries.size == 0:
                sv = np.zeros(0)
            else:
                sv = np.linalg.svd(self.entries, compute_uv=False)
            sv.flags.writeable = False
            self._cache["sv"] = sv
        return sv

    @property
    def sigma_max(self) -> float:
        sv = self.singular_values()
        return float(sv[0]) if sv.size else 0.0

    @property
    def sigma_min(self) -> float:
        sv = self.singular_values()
        return float(sv[-1]) if sv.size else 0.0

    @property
    def full_row_rank(self) -> bool:
        return self.sigma_min > self.rank_tol * self.sigma_max

    def _require_full_rank(self):
        if not self.full_row_rank:
            raise DegenerateError(
                f"S^({self.ell}) is rank deficient (rank_tol {self.rank_tol:g})",
                sigma_min=self.sigma_min)

    def op_norm2(self) -> float:
        return self.sigma_max

    def op_norm1(self) -> float:
        """Maximum absolute column sum."""
        return float(np.abs(self.entries).sum(axis=0).max())

    def pinv_norm2(self) -> float:
        self._require_full_rank()
        return 1.0 / self.sigma_min

    def cond2(self) -> float:
        self._require_full_rank()
        return self.sigma_max / self.sigma_min

    def inverse(self) -> np.ndarray:
        if self.ell != 0:
            raise ValueError("only the square matrix (ell = 0) has an inverse")
        self._require_full_rank()
        return np.linalg.inv(self.entries)

    def inv_norm1(self) -> float:
        """1-norm of the inverse of the square (ell = 0) matrix."""
        return float(np.abs(self.inverse()).sum(axis=0).max())

    def report(self) -> dict:
        full = self.full_row_rank
        return {
            "ell": self.ell,
            "sigma_max": self.sigma_max,
            "sigma_min": self.sigma_min,
            "cond2": self.sigma_max / self.sigma_min if full else math.inf,
            "norm1": self.op_norm1(),
            "pinv_norm2": 1.0 / self.sigma_min if full else math.inf,
            "full_row_rank": full,
            "rank_tol": self.rank_tol,
        }


def build(p: Polynomial, q: Polynomial, m: int, n: int, ell: int = 1,
          rank_tol: float = RANK_TOL) -> SylvesterMatrix:
    if ell < 0:
        raise ValueError("ell must be >= 0")
    pc = p.padded(m).coeffs
    qc = q.padded(n).coeffs
    rows = m + n + ell
    S = np.zeros((rows, m + n + 2 * ell), dtype=complex)
    for j in range(n + ell):
        S[j:j + m + 1, j] = pc
    for j in range(m + ell):
        S[j:j + n + 1, n + ell + j] = qc
    S.flags.writeable = False
    return SylvesterMatrix(S, m, n, ell, rank_tol)


def row_identity_residual(S: SylvesterMatrix, p: Polynomial, q: Polynomial, z: complex,
                          relative: bool = False) -> float:
    """Max-norm of ``(1, z, ..., z^{N-1}) S`` minus the shifted values of p and q.

    With ``relative=True`` the residual is divided by the largest
    ``sum_i |z^i| |S_ij|`` over columns, the natural scale of the products.
    """
    m, n, ell = S.m, S.n, S.ell
    z = complex(z)
    powers = z ** np.arange(m + n + ell)
    lhs = powers @ S.entries
    pz, qz = evaluate(p.padded(m), z), evaluate(q.padded(n), z)
    rhs = np.concatenate([pz * z ** np.arange(n + ell), qz * z ** np.arange(m + ell)])
    res = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
    if not relative:
        return res
    scale = float((np.abs(powers) @ np.abs(S.entries)).max()) if lhs.size else 1.0
    return res / scale if scale > 0 else res


@dataclass(frozen=True)
class NormSandwich:
    lhs: float
    mid: float
    rhs: float
    lower_ok: bool
    upper_ok: bool
    ell: int

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


def norms_theorem_check(p: Polynomial, q: Polynomial, m: int, n: int, ell: int,
                        slack: float = 1e-9) -> NormSandwich:
    """Compare the pseudo-inverse norm of ``S^(ell)`` with that of ``S^(0)``.

    ``lhs = ||S0^-1||_2``, ``mid = ||S_ell^+||_2`` and ``rhs = (1 + sqrt(ell)) lhs``;
    ``ok`` when ``lhs <= mid <= rhs`` up to a relative slack.  The two sides
    are reported separately: the upper one always holds, while the lower one
    fails on many nondegenerate pairs (for instance ``p = z``,
    ``q = (z - 1)/2``, ``ell = 1``), so it is a reported verdict, not an
    invariant.
    """
    lhs = build(p, q, m, n, 0).pinv_norm2()
    mid = build(p, q, m, n, ell).pinv_norm2()
    rhs = (1.0 + math.sqrt(ell)) * lhs
    return NormSandwich(lhs, mid, rhs, lhs <= mid * (1 + slack), mid <= rhs * (1 + slack), ell)


def column_norm1_identity(p: Polynomial, q: Polynomial, m: int, n: int, ell: int) -> tuple[float, float]:
    """Return ``(||S^(ell)||_1, ||(p, q)||_1)``.

    The two agree whenever both column blocks are present (``n + ell >= 1``
    and ``m + ell >= 1``); otherwise only one polynomial has columns.
    """
    return build(p, q, m, n, ell).op_norm1(), pair_norm(p.padded(m), q.padded(n), 1)
