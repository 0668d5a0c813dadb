import math

import numpy as np
import pytest

from ellipx.data.Parameter import Parameter
from ellipx.data.results import CheckReport, QuadratureRule
from ellipx.exceptions import EllipticDomainError


@pytest.mark.parametrize("m,regime", [
    (0.3 + 0.2j, Parameter.INTERIOR),
    (0, Parameter.INTERIOR),
    (1j, Parameter.UNIT_CIRCLE),
    (-1, Parameter.UNIT_CIRCLE),
    (1.2 + 0.3j, Parameter.LENS),
    (1.5, Parameter.CUT),
    (1, Parameter.ONE),
    (-3 + 1j, Parameter.EXTERIOR),
    (2.5 + 0.1j, Parameter.EXTERIOR),
])
def test_classify(m, regime):
    assert Parameter.create(m).regime == regime


def test_cut_side_defaults_to_above():
    p = Parameter.create(3.0)
    assert p.side == Parameter.ABOVE
    assert Parameter.create(3.0, Parameter.BELOW).side == Parameter.BELOW


def test_side_rejected_off_the_cut():
    with pytest.raises(EllipticDomainError):
        Parameter.create(0.5, Parameter.ABOVE)
    with pytest.raises(EllipticDomainError):
        Parameter.create(2.0, "left")


def test_non_finite_rejected():
    with pytest.raises(EllipticDomainError):
        Parameter.create(complex(math.inf, 0))
    with pytest.raises(EllipticDomainError):
        Parameter.create(math.nan)


def test_conjugate_swaps_side():
    assert Parameter.create(2.0, Parameter.ABOVE).conjugate().side == Parameter.BELOW
    p = Parameter.create(0.2 + 0.7j)
    assert p.conjugate().m == 0.2 - 0.7j
    assert p.conjugate().side == Parameter.NONE


def test_derived_parameters():
    p = Parameter.create(4.0)
    assert p.m1 == -3
    assert p.mu == 0.25
    assert p.mu1 == 0.75
    assert p.is_real
    assert not p.in_closed_unit_disk()
    assert Parameter.create(-1).in_closed_unit_disk()


def test_quadrature_rule_weights_sum_to_segment_length():
    K = 1.8540746773013719
    rule = QuadratureRule.create(8, 4, K)
    assert len(rule.t) == 32
    np.testing.assert_allclose(np.sum(rule.weights), 2 * K, rtol=1e-14)
    np.testing.assert_allclose(rule.t, K * rule.u, rtol=1e-14)
    assert np.all((rule.s > 0) & (rule.s < 1))


def test_check_report_json_uses_pass_key():
    r = CheckReport(suite="identities", check_name="x", samples=3, max_error=1e-12, tolerance=1e-10, passed=True)
    assert r.to_json() == {"suite": "identities", "check_name": "x", "samples": 3, "max_error": 1e-12,
                           "tolerance": 1e-10, "pass": True}
