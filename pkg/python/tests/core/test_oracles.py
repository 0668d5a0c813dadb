import math

import numpy as np
import pytest

from ellipx.core import asymptotics
from ellipx.core.elliptic_core import build_context, complete_k
from ellipx.core.jacobi_fn import jacobi_triple, sigma_value
from ellipx.core.oracles import (ORACLE_IDS, complete_k_quadrature, descending_landen_triple, fourier_ratio,
                                 oracle_eval, real_triple)
from ellipx.data.Parameter import Parameter
from ellipx.exceptions import EllipticDomainError


@pytest.mark.parametrize("m", [0.0, 0.2, 0.8, 0.95])
def test_landen_recursion_matches_scipy(m):
    for u in (0.1, 0.5, 0.9):
        np.testing.assert_allclose(descending_landen_triple(u, m), real_triple(u, m), atol=1e-13)
    # end for


@pytest.mark.parametrize("m", [0.3 + 0.4j, -4 + 1j, 1.5 + 0.5j, -0.9])
def test_quadrature_of_k(m):
    np.testing.assert_allclose(complete_k_quadrature(m), complete_k(m), rtol=1e-11)


def test_real_oracles_reject_complex_range():
    with pytest.raises(EllipticDomainError):
        real_triple(0.5, 1.2)
    with pytest.raises(EllipticDomainError):
        descending_landen_triple(0.5, -0.1)


@pytest.mark.parametrize("oracle_id,p", [
    ("unit_circle_sn2", math.pi / 8),
    ("unit_circle_sn2", math.pi / 4),
    ("d1_boundary_sn4", -math.pi / 8),
    ("d1_boundary_sn4", -math.pi / 4),
    ("landen_recursion", 0.6),
    ("fourier_ratio_sc", 0.3 + 0.2j),
    ("fourier_ratio_nc", 0.3 + 0.2j),
    ("fourier_ratio_dc", -0.4 + 0.3j),
    ("cut_continuation", Parameter.create(2.0, Parameter.ABOVE)),
    ("cut_continuation", Parameter.create(5.0, Parameter.BELOW)),
])
@pytest.mark.parametrize("u", [0.3, 0.7])
def test_oracle_identities(oracle_id, p, u):
    lhs, rhs = oracle_eval(oracle_id, u, p)
    assert abs(lhs - rhs) <= 1e-10


def test_every_oracle_is_covered():
    assert len(ORACLE_IDS) == 7
    for oracle_id in ORACLE_IDS:
        p = {"unit_circle_sn2": 0.5, "d1_boundary_sn4": -0.5, "cut_continuation": 3.0}.get(oracle_id, 0.25)
        lhs, rhs = oracle_eval(oracle_id, 0.5, p)
        assert abs(lhs - rhs) <= 1e-10
    # end for


def test_oracle_argument_checks():
    with pytest.raises(EllipticDomainError):
        oracle_eval("unit_circle_sn2", 0.5, 1.0)
    with pytest.raises(EllipticDomainError):
        oracle_eval("d1_boundary_sn4", 0.5, 0.2)
    with pytest.raises(EllipticDomainError):
        oracle_eval("cut_continuation", 0.5, 0.5)
    with pytest.raises(EllipticDomainError):
        oracle_eval("no_such_identity", 0.5, 0.5)


def test_fourier_ratio_limits():
    with pytest.raises(EllipticDomainError):
        fourier_ratio("sc", 0.5, build_context(Parameter.create(0)))
    with pytest.raises(EllipticDomainError):
        fourier_ratio("cd", 0.5, build_context(Parameter.create(0.3)))


def test_q_expansion():
    m = 1e-4
    q = build_context(Parameter.create(m)).q
    assert abs(q / asymptotics.q_expansion(m) - 1) < 1e-6


@pytest.mark.parametrize("u", [0.2, 0.5, 0.8])
def test_small_parameter_references(u):
    m = 1e-9
    t = jacobi_triple(u, build_context(Parameter.create(m)))
    np.testing.assert_allclose(t.s, asymptotics.asym_ref("sn0", u, m), atol=1e-8)
    np.testing.assert_allclose(t.c, asymptotics.asym_ref("cn0", u, m), atol=1e-8)
    np.testing.assert_allclose(t.d, asymptotics.asym_ref("dn0", u, m), atol=1e-8)


@pytest.mark.parametrize("u", [0.2, 0.5, 0.8])
def test_near_one_references(u):
    m1 = 1e-8
    t = jacobi_triple(u, build_context(Parameter.create(1 - m1)))
    for which, value in (("cn1", t.c), ("dn1", t.d)):
        assert abs(value / asymptotics.asym_ref(which, u, 1 - m1) - 1) < 5e-2
    # end for


def test_large_parameter_prediction():
    m = 1e4 * complex(math.cos(math.pi / 3), math.sin(math.pi / 3))
    ratio = sigma_value(0.6, m) / abs(asymptotics.large_m_prediction(0.6, m))
    assert 0.25 <= ratio <= 4


def test_phi_limit():
    assert asymptotics.phi_limit(0.5) == pytest.approx(1.0)
    with pytest.raises(EllipticDomainError):
        asymptotics.asym_ref("xx0", 0.5, 0.1)
