"""Randomized verification of the inequalities the audit relies on.

Each trial draws random instances from ``numpy.random.default_rng(seed)``
and records, per check, whether it passed and its relative slack
``(rhs - lhs) / |rhs|`` (negative means violated).  The summary keeps pass
counts and the worst slack, so two runs with the same seed and options give
identical summaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coprimeness import epsilon_lower_bound, epsilon_region, sensitivity_certificate
from .doublets import certificates, indicator_comparison
from .metrics import distances_inequality_check
from .poly import Polynomial, RationalFunction, pair_norm
from .region import Region
from .search import SearchOptions
from .spherical import power_rule_check, residue_bound_check, rho_sup
from .sylvester import build, norms_theorem_check, row_identity_residual

SLACK = 1e-9
VERIFY_OPTIONS = SearchOptions(density=12, n_polish=2, xatol=1e-8, maxiter=200)


def random_complex(rng: np.random.Generator, k: int) -> np.ndarray:
    return rng.standard_normal(k) + 1j * rng.standard_normal(k)


def random_disk_points(rng: np.random.Generator, k: int) -> np.ndarray:
    return np.sqrt(rng.random(k)) * np.exp(2j * np.pi * rng.random(k))


def poly_from_roots(rts, lead: complex = 1.0) -> Polynomial:
    return Polynomial(lead * np.poly(rts)[::-1]) if len(rts) else Polynomial([lead])


def random_pair(rng: np.random.Generator, max_deg: int = 4) -> RationalFunction:
    """Random function with all zeros and poles in the unit disk."""
    m, n = (int(x) for x in rng.integers(1, max_deg + 1, size=2))
    lp, lq = random_complex(rng, 2)
    return RationalFunction(poly_from_roots(random_disk_points(rng, m), lp),
                            poly_from_roots(random_disk_points(rng, n), lq))


def random_coeff_pair(rng: np.random.Generator, max_deg: int = 8):
    m, n = (int(x) for x in rng.integers(0, max_deg + 1, size=2))
    if m + n == 0:
        m = 1
    return Polynomial(random_complex(rng, m + 1)), Polynomial(random_complex(rng, n + 1)), m, n


def random_perturbation(rng: np.random.Generator, m: int, n: int, size: float, s: int):
    """Pair ``(dp, dq)`` with ``||(dp, dq)||_s == size``."""
    dp, dq = Polynomial(random_complex(rng, m + 1)), Polynomial(random_complex(rng, n + 1))
    c = size / pair_norm(dp, dq, s)
    return dp.scale(c), dq.scale(c)


def _slack(lhs: float, rhs: float) -> float:
    if rhs == 0:
        return 0.0 if lhs <= 0 else -math.inf
    return (rhs - lhs) / abs(rhs)


@dataclass
class CheckTally:
    trials: int = 0
    passed: int = 0
    skipped: int = 0
    worst_slack: float = math.inf

    def add(self, ok: bool, slack: float | None = None):
        self.trials += 1
        self.passed += bool(ok)
        if slack is not None:
            self.worst_slack = min(self.worst_slack, slack)

    def to_json(self) -> dict:
        return {"trials": self.trials, "passed": self.passed, "skipped": self.skipped,
                "worst_slack": self.worst_slack if math.isfinite(self.worst_slack) else None}


@dataclass
class VerifySummary:
    seed: int
    trials: int
    checks: dict = field(default_factory=dict)

    def tally(self, name: str) -> CheckTally:
        return self.checks.setdefault(name, CheckTally())

    @property
    def all_passed(self) -> bool:
        return all(t.passed == t.trials for t in self.checks.values())

    def to_json(self) -> dict:
        return {"seed": self.seed, "trials": self.trials, "all_passed": self.all_passed,
                "checks": {k: self.checks[k].to_json() for k in sorted(self.checks)}}


def check_sylvester(rng, out: VerifySummary):
    p, q, m, n = random_coeff_pair(rng)
    ell = int(rng.integers(0, 5))
    S0 = build(p, q, m, n, 0)
    if not S0.full_row_rank:
        out.tally("norms_sandwich_lower").skipped += 1
        out.tally("norms_sandwich_upper").skipped += 1
        return
    chk = norms_theorem_check(p, q, m, n, ell)
    out.tally("norms_sandwich_lower").add(chk.lower_ok, _slack(chk.lhs, chk.mid))
    out.tally("norms_sandwich_upper").add(chk.upper_ok, _slack(chk.mid, chk.rhs))
    S = build(p, q, m, n, ell)
    worst = max(row_identity_residual(S, p, q, z, relative=True)
                for z in random_disk_points(rng, 10))
    out.tally("row_identity").add(worst <= 1e-12, _slack(worst, 1e-12))
    if n + ell and m + ell:
        n1, pn = S.op_norm1(), pair_norm(p, q, 1)
        out.tally("column_norm1").add(abs(n1 - pn) <= 1e-12 * pn, None)


def check_epsilon_bounds(rng, r: RationalFunction, out: VerifySummary, opts):
    p, q, m, n = r.p, r.q, r.m, r.n
    for s in (1, 2):
        eps = epsilon_region(p, q, m, n, s, Region.unit_disk(), opts).value
        bound = epsilon_lower_bound(p, q, m, n, 1, s)
        out.tally(f"epsilon_lower_bound_s{s}").add(eps >= bound * (1 - SLACK), _slack(bound, eps))


def check_certificates(r: RationalFunction, out: VerifySummary, opts):
    for cert in certificates(r, Region.unit_disk(), opts):
        for name, ok in cert.checks.items():
            if ok is None:
                continue
            obs = cert.euclid_dist if name in ("cond_bound", "spherical_rho_bound") else cert.chi_dist
            out.tally(f"froissart_{name}").add(ok, _slack(cert.bounds[name], obs))


def check_spherical(rng, r: RationalFunction, out: VerifySummary, opts):
    disk = Region.unit_disk()
    rho = rho_sup(r, disk, opts)
    checks, _ = residue_bound_check(r, disk, opts, rho=rho)
    for c in checks:
        out.tally("residue_bound").add(c.ok, _slack(c.bound, abs(c.residue)))
    k = int(rng.integers(1, 7))
    for z in random_disk_points(rng, 5):
        chk = power_rule_check(r, k, z)
        out.tally("power_rule").add(chk.ok, _slack(chk.lhs, chk.rhs))
    cmp = indicator_comparison(r, disk, opts)
    out.tally("indicator_comparison").add(cmp.ok, _slack(cmp.coprime_side, cmp.inv_nu))


def check_sensitivity(rng, r: RationalFunction, out: VerifySummary, opts):
    p, q, m, n = r.p, r.q, r.m, r.n
    s = int(rng.integers(1, 3))
    disk = Region.unit_disk()
    eps = epsilon_region(p, q, m, n, s, disk, opts).value
    S = build(p, q, m, n, 1)
    radius_a = 1.0 / (3 * math.sqrt(m + n + 1) * S.pinv_norm2())
    dp, dq = random_perturbation(rng, m, n, 1.0, 2)
    # scale into both admissible balls: s-norm eps/2 and 2-norm radius_a
    c = float(rng.random()) * min(eps / 2 / pair_norm(dp, dq, s), radius_a)
    dp, dq = dp.scale(c), dq.scale(c)
    v = sensitivity_certificate(p, q, p - dp, q - dq, m, n, s, disk, opts)
    if v.eps_ok is None:
        out.tally("sensitivity_eps").skipped += 1
    else:
        out.tally("sensitivity_eps").add(v.eps_ok, min(_slack(0.5, v.eps_ratio), _slack(v.eps_ratio, 1.5)))
    if v.cond_ok is None:
        out.tally("sensitivity_cond").skipped += 1
    else:
        out.tally("sensitivity_cond").add(v.cond_ok, min(_slack(0.5, v.cond_ratio), _slack(v.cond_ratio, 2.0)))


def check_distances(rng, r: RationalFunction, out: VerifySummary, opts):
    m, n = r.m, r.n
    size = 10.0 ** rng.uniform(-6, 0) * pair_norm(r.p, r.q, 1)
    dp, dq = random_perturbation(rng, m, n, size, 1)
    rt = RationalFunction(r.p - dp, r.q - dq)
    rep = distances_inequality_check(r, rt, Region.unit_disk(), opts)
    out.tally("distance_bound").add(rep.thm_ok, _slack(rep.thm_lhs, rep.thm_rhs))
    if rep.bm_ok is not None:
        out.tally("distance_sandwich").add(rep.bm_ok, min(_slack(rep.bm_lower, rep.bm_ratio),
                                                          _slack(rep.bm_ratio, rep.bm_upper)))


def run(seed: int, trials: int, opts: SearchOptions | None = None) -> VerifySummary:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    opts = opts or VERIFY_OPTIONS
    rng = np.random.default_rng(seed)
    out = VerifySummary(seed, trials)
    for _ in range(trials):
        check_sylvester(rng, out)
        r = random_pair(rng)
        check_epsilon_bounds(rng, r, out, opts)
        check_certificates(r, out, opts)
        check_spherical(rng, r, out, opts)
        check_sensitivity(rng, r, out, opts)
        check_distances(rng, r, out, opts)
    return out
