"""Audit pipeline and JSON encoding.

Reals are written as decimal strings with 17 significant digits, complex
numbers as ``[re, im]`` pairs of such strings and the point at infinity as
``"inf"``, so reports round-trip exactly and are byte-stable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .coprimeness import epsilon_lower_bound, epsilon_region
from .doublets import (DEFAULT_THRESHOLD, certificates, froissart_indicators,
                       indicator_comparison)
from .errors import DegenerateError
from .poly import RationalFunction, is_inf
from .region import Region
from .search import SearchOptions
from .spherical import nu_at, nu_sup, residue_bound_check, rho_sup
from .sylvester import RANK_TOL, build, column_norm1_identity, norms_theorem_check, row_identity_residual

SLACK = 1e-9


def fmt_real(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def to_jsonable(obj):
    """Recursively convert report values to JSON-ready objects."""
    if obj is None or isinstance(obj, (bool, np.bool_, str)):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt_real(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return "inf" if is_inf(obj) else [fmt_real(obj.real), fmt_real(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False)


def verdict(check: str, relation: str, lhs, rhs, ok, **extra) -> dict:
    return {"check": check, "relation": relation, "lhs": lhs, "rhs": rhs, "ok": ok, **extra}


# fixed probe points for the structural self-test: deterministic, inside the disk
_PROBES = 0.9 * np.exp(2j * np.pi * np.arange(8) / 8)


@dataclass
class AuditReport:
    sections: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    flagged: list = field(default_factory=list)

    @property
    def failed_verdicts(self) -> list:
        return [v for v in self.verdicts if v["ok"] is False]

    @property
    def exit_code(self) -> int:
        return 2 if self.flagged else 0

    def to_json(self) -> dict:
        out = dict(self.sections)
        out["verdicts"] = self.verdicts
        out["flagged"] = self.flagged
        out["summary"] = {"flagged_pairs": len(self.flagged),
                          "failed_verdicts": [v["check"] for v in self.failed_verdicts],
                          "exit_code": self.exit_code}
        return out


def _sylvester_section(r: RationalFunction, ells, rep: AuditReport) -> list:
    p, q, m, n = r.p, r.q, r.m, r.n
    S0 = build(p, q, m, n, 0)
    if not S0.full_row_rank:
        raise DegenerateError("input is degenerate: S^(0) is rank deficient", S0.sigma_min)
    out = []
    for ell in ells:
        S = build(p, q, m, n, ell)
        entry = S.report()
        entry["row_identity_residual"] = max(
            row_identity_residual(S, p, q, z, relative=True) for z in _PROBES)
        chk = norms_theorem_check(p, q, m, n, ell, SLACK)
        entry["norms_sandwich"] = {"lhs": chk.lhs, "mid": chk.mid, "rhs": chk.rhs,
                                   "lower_ok": chk.lower_ok, "upper_ok": chk.upper_ok}
        rep.verdicts.append(verdict(
            f"norms_sandwich_lower[ell={ell}]", "||S0^-1||_2 <= ||S_ell^+||_2",
            chk.lhs, chk.mid, chk.lower_ok))
        rep.verdicts.append(verdict(
            f"norms_sandwich_upper[ell={ell}]", "||S_ell^+||_2 <= (1 + sqrt(ell)) ||S0^-1||_2",
            chk.mid, chk.rhs, chk.upper_ok))
        if n + ell and m + ell:
            n1, pn = column_norm1_identity(p, q, m, n, ell)
            rep.verdicts.append(verdict(
                f"column_norm1[ell={ell}]", "||S_ell||_1 == ||(p, q)||_1", n1, pn,
                abs(n1 - pn) <= 1e-12 * pn))
        out.append(entry)
    return out


def _coprimeness_section(r: RationalFunction, region: Region, ell: int, opts, rep) -> list:
    out = []
    for s in (1, 2):
        res = epsilon_region(r.p, r.q, r.m, r.n, s, region, opts)
        bound = epsilon_lower_bound(r.p, r.q, r.m, r.n, ell, s)
        entry = res.to_json()
        entry["lower_bound_sylvester"] = bound
        entry["lower_bound_ell"] = ell if s == 2 else 0
        out.append(entry)
        rep.verdicts.append(verdict(
            f"epsilon_lower_bound[s={s}]", "sylvester bound <= eps_K (sampled)",
            bound, res.value, res.value >= bound * (1 - SLACK)))
    return out


def _spherical_section(r: RationalFunction, region: Region, opts, rep) -> dict:
    nu = nu_sup(r, region, opts)
    out = {"nu_K": nu.value, "argmax_nu": nu.argmax, "nu_search": nu.search.metadata()}
    if region.kind != "plane":
        rho = rho_sup(r, region, opts)
        out.update(rho_K=rho.value, argmax_rho=rho.argmax, rho_search=rho.search.metadata())
        # both sides on the union of the two candidate sets
        nu_hat = max(nu.value, float(nu_at(r, rho.argmax)))
        rep.verdicts.append(verdict("rho_le_nu", "rho_K <= nu_K", rho.value, nu_hat,
                                    rho.value <= nu_hat * (1 + SLACK)))
        checks, skipped = residue_bound_check(r, region, opts, rho=rho)
        out["residue_checks"] = checks
        out["residue_skipped"] = skipped
        for c in checks:
            rep.verdicts.append(verdict(
                "residue_bound", "1 / rho_K <= |residue|", c.bound, abs(c.residue), c.ok,
                pole=c.pole))
    else:
        out.update(rho_K=None, residue_checks=[],
                   notes=["rho_K and the residue bound are not computed over the whole plane"])
    if region.within_unit_disk() or r.m == r.n:
        cmp = indicator_comparison(r, region, opts)
        out["indicator_comparison"] = cmp.__dict__
        rep.verdicts.append(verdict(
            "indicator_comparison", "eps1_K / (2 max(m||p||_1, n||q||_1)) <= 1/nu_K <= 1/rho_K",
            cmp.coprime_side, cmp.inv_nu, cmp.ok, inv_rho=cmp.inv_rho))
    return out


_OBSERVED = {"cond_bound": "euclid_dist", "spherical_rho_bound": "euclid_dist"}


def audit(r: RationalFunction, region: Region | None = None, ells=(1,),
          threshold: float = DEFAULT_THRESHOLD, opts: SearchOptions | None = None) -> AuditReport:
    region = region or Region.unit_disk()
    opts = opts or SearchOptions()
    ells = [int(e) for e in ells] or [1]
    rep = AuditReport()
    rep.sections["tool"] = {"name": "rfaudit", "version": __version__}
    rep.sections["config"] = {"region": region.describe(), "ells": ells,
                              "doublet_threshold_chi": threshold, "rank_tol": RANK_TOL,
                              "slack": SLACK, "search": opts.to_json()}
    rep.sections["input"] = r.to_json()
    rep.sections["sylvester"] = _sylvester_section(r, ells, rep)
    rep.sections["coprimeness"] = _coprimeness_section(r, region, ells[0], opts, rep)
    rep.sections["spherical"] = _spherical_section(r, region, opts, rep)

    ind = froissart_indicators(r, region, opts)
    certs = certificates(r, region, opts, threshold, indicators=ind)
    rep.sections["doublets"] = {"indicators": ind, "certificates": certs}
    for i, c in enumerate(certs):
        for name, ok in c.checks.items():
            if ok is None:
                continue
            obs = getattr(c, _OBSERVED.get(name, "chi_dist"))
            rep.verdicts.append(verdict(f"froissart_{name}[pair={i}]",
                                        "bound <= observed zero-pole distance",
                                        c.bounds[name], obs, ok))
    rep.flagged = [c for c in certs if c.flagged]
    return rep


def _is_complex_pair(v) -> bool:
    return isinstance(v, list) and len(v) == 2 and all(isinstance(x, str) for x in v)


def _flatten(v, key: str, out: list):
    if isinstance(v, dict):
        for k, x in v.items():
            _flatten(x, f"{key}.{k}" if key else str(k), out)
    elif isinstance(v, list) and not _is_complex_pair(v):
        if not v:
            out.append((key, "[]"))
        for i, x in enumerate(v):
            _flatten(x, f"{key}[{i}]", out)
    elif _is_complex_pair(v):
        sign = "" if v[1].startswith("-") else "+"
        out.append((key, f"{v[0]}{sign}{v[1]}j"))
    else:
        out.append((key, "null" if v is None else str(v)))


def render_table(obj) -> str:
    """Two-column ``key  value`` listing of an encoded report."""
    rows: list = []
    _flatten(to_jsonable(obj), "", rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
