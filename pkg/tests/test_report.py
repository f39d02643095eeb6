import json
import math

import numpy as np
import pytest

from rfaudit.errors import DegenerateError
from rfaudit.poly import INF, Polynomial, RationalFunction
from rfaudit.region import Region
from rfaudit.report import audit, dumps, fmt_real, render_table, to_jsonable

R = RationalFunction.from_coeffs([0, 2], [-1, 1])


def test_fmt_real_round_trips():
    for x in (0.1, 1 / 3, 1e-300, -2.5e17, math.pi):
        assert float(fmt_real(x)) == x
    assert fmt_real(math.inf) == "inf" and fmt_real(-math.inf) == "-inf"
    assert fmt_real(math.nan) == "nan"


def test_to_jsonable_types():
    obj = {"a": np.float64(0.5), "b": 1 + 2j, "c": INF, "d": np.bool_(True), "e": (1, None),
           "f": np.array([1.0])}
    assert to_jsonable(obj) == {"a": "0.5", "b": ["1", "2"], "c": "inf", "d": True,
                                "e": [1, None], "f": ["1"]}
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_audit_example(fast_opts):
    rep = audit(R, Region.unit_disk(), opts=fast_opts)
    assert rep.exit_code == 0 and not rep.flagged
    failed = {v["check"] for v in rep.failed_verdicts}
    # only the lower half of the Sylvester norm sandwich can fail on valid input
    assert failed <= {"norms_sandwich_lower[ell=1]"}
    assert any(v["check"] == "indicator_comparison" for v in rep.verdicts)
    json.loads(dumps(rep))


def test_audit_flags(fast_opts):
    r = RationalFunction(Polynomial([-0.5, 1]), Polynomial([-0.5 - 1e-8, 1]))
    rep = audit(r, threshold=1e-6, opts=fast_opts)
    assert rep.exit_code == 2 and len(rep.flagged) == 1


def test_audit_degenerate(fast_opts):
    p = Polynomial([1, 1])
    with pytest.raises(DegenerateError):
        audit(RationalFunction(p, p), opts=fast_opts)


def test_render_table():
    text = render_table({"a": {"b": 1.5, "c": [1j, []]}, "d": None})
    assert text.splitlines() == ["a.b     1.5", "a.c[0]  0+1j", "a.c[1]  []", "d       null"]
