import cmath
import math

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ellipx.core.elliptic_core import build_context
from ellipx.core.jacobi_fn import (continued_triple, jacobi_ratio, jacobi_triple, jacobi_zeta, sigma, sigma_squared_cut,
                                   sigma_squared_cut_alternative, sigma_squared_cut_simplified, sigma_value, triple_at)
from ellipx.core.oracles import zeta_quadrature
from ellipx.data.Parameter import Parameter
from ellipx.data.results import SigmaValue
from ellipx.exceptions import EllipticDomainError, PoleError

mpmath.mp.dps = 30


def ctx_of(m, side=None):
    return build_context(Parameter.create(m, side))


def mp_triple(z, m):
    return tuple(complex(mpmath.ellipfun(kind, z, m=m)) for kind in ("sn", "cn", "dn"))


@pytest.mark.parametrize("m", [0.0, 0.1, 0.5, 0.9, 0.99, 0.999])
def test_real_parameter_matches_scipy(m):
    u = np.linspace(0, 2, 21)
    t = jacobi_triple(u, ctx_of(m))
    sn, cn, dn, _ = scipy.special.ellipj(scipy.special.ellipk(m) * u, m)
    np.testing.assert_allclose(t.s, sn, atol=1e-12)
    np.testing.assert_allclose(t.c, cn, atol=1e-12)
    np.testing.assert_allclose(t.d, dn, atol=1e-12)


@pytest.mark.parametrize("m", [-3.0, -0.7, 0.3 + 0.4j, 2j, -5 + 1j, 0.9 + 0.05j, 20 + 3j, 1.3 - 0.4j])
@pytest.mark.parametrize("u", [0.3, 0.7, 1.4])
def test_complex_parameter_matches_mpmath(m, u):
    ctx = ctx_of(m)
    t = jacobi_triple(u, ctx)
    expected = mp_triple(ctx.K * u, m)
    np.testing.assert_allclose([t.s, t.c, t.d], expected, rtol=1e-10, atol=1e-12)


def test_scalar_and_array_agree():
    ctx = ctx_of(0.4 + 0.8j)
    u = np.array([0.25, 0.5, 0.75])
    t = jacobi_triple(u, ctx)
    for i, x in enumerate(u):
        np.testing.assert_allclose(jacobi_triple(float(x), ctx).s, t.s[i], rtol=1e-14)
    # end for


def test_special_values():
    ctx = ctx_of(0.3 + 0.2j)
    t0 = jacobi_triple(0.0, ctx)
    assert t0.s == 0
    np.testing.assert_allclose([t0.c, t0.d], [1, 1], atol=1e-15)
    t1 = jacobi_triple(1.0, ctx)
    np.testing.assert_allclose(t1.s, 1, atol=1e-12)
    np.testing.assert_allclose(t1.c, 0, atol=1e-12)
    np.testing.assert_allclose(t1.d, cmath.sqrt(1 - (0.3 + 0.2j)), rtol=1e-12)


def test_zero_parameter_is_trigonometric():
    u = np.linspace(0, 2, 9)
    t = jacobi_triple(u, ctx_of(0))
    np.testing.assert_allclose(t.s, np.sin(np.pi * u / 2), atol=1e-15)
    np.testing.assert_allclose(t.c, np.cos(np.pi * u / 2), atol=1e-15)
    np.testing.assert_allclose(t.d, 1, atol=1e-15)


finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(finite, finite, st.floats(min_value=0, max_value=1))
def test_fundamental_identities(re, im, u):
    m = complex(re, im)
    assume(abs(m - 1) > 0.1)
    assume(not (m.imag == 0 and m.real >= 1))
    t = jacobi_triple(u, ctx_of(m))
    scale = 1 + abs(t.s) ** 2 + abs(t.c) ** 2 + abs(m) * abs(t.s) ** 2
    e1, e2 = t.identity_errors()
    assert e1 <= 1e-10 * scale
    assert e2 <= 1e-10 * scale


@settings(max_examples=100, deadline=None)
@given(finite, st.floats(min_value=1e-3, max_value=10), st.floats(min_value=0, max_value=1))
def test_conjugation_symmetry(re, im, u):
    m = complex(re, im)
    assume(abs(m - 1) > 0.1)
    t = jacobi_triple(u, ctx_of(m))
    t_bar = jacobi_triple(u, ctx_of(m.conjugate()))
    scale = 1 + abs(t.s)
    assert abs(t_bar.s - t.s.conjugate()) <= 1e-11 * scale
    assert abs(t_bar.d - t.d.conjugate()) <= 1e-11 * (1 + abs(t.d))


def test_triple_at_general_argument():
    m = 0.6 + 0.3j
    ctx = ctx_of(m)
    z = 0.4 + 0.9j
    np.testing.assert_allclose(triple_at(z, ctx), mp_triple(z, m), rtol=1e-11)


def test_triple_at_rejects_limit():
    with pytest.raises(EllipticDomainError):
        triple_at(0.5, ctx_of(1))


def test_domain_checks():
    with pytest.raises(EllipticDomainError):
        jacobi_triple(0.5, ctx_of(2.0))
    with pytest.raises(EllipticDomainError):
        jacobi_triple(0.5, ctx_of(1))
    with pytest.raises(EllipticDomainError):
        jacobi_triple(2.5, ctx_of(0.3))
    with pytest.raises(EllipticDomainError):
        continued_triple(0.5, ctx_of(0.3))


def test_continued_triple_sides():
    above = continued_triple(0.6, ctx_of(1.5, Parameter.ABOVE))
    below = continued_triple(0.6, ctx_of(1.5, Parameter.BELOW))
    np.testing.assert_allclose(above.s, below.s.conjugate(), atol=1e-13)
    np.testing.assert_allclose(abs(above.s) ** 2, sigma_squared_cut(0.6, 1.5), rtol=1e-11)


def test_continued_triple_is_a_limit():
    u = 0.45
    boundary = continued_triple(u, ctx_of(3.0, Parameter.ABOVE)).s
    near = jacobi_triple(u, ctx_of(3.0 + 1e-9j)).s
    np.testing.assert_allclose(boundary, near, rtol=1e-6)


@pytest.mark.parametrize("kind,expected", [
    ("sc", lambda s, c, d: s / c),
    ("nc", lambda s, c, d: 1 / c),
    ("dc", lambda s, c, d: d / c),
    ("sd", lambda s, c, d: s / d),
    ("cd", lambda s, c, d: c / d),
    ("ns", lambda s, c, d: 1 / s),
])
def test_ratios(kind, expected):
    ctx = ctx_of(0.2 + 0.6j)
    t = jacobi_triple(0.4, ctx)
    np.testing.assert_allclose(jacobi_ratio(kind, 0.4, ctx), expected(t.s, t.c, t.d), rtol=1e-14)


def test_ratio_at_tau_point():
    m = 0.3
    ctx = ctx_of(m)
    z = ctx.tau * ctx.K * 0.5
    s, c, d = mp_triple(z, m)
    np.testing.assert_allclose(jacobi_ratio("dc", 0.5, ctx, at_tau=True), d / c, rtol=1e-11)


def test_ratio_errors():
    ctx = ctx_of(0.5)
    with pytest.raises(PoleError):
        jacobi_ratio("sc", 1.0, ctx)
    with pytest.raises(PoleError):
        jacobi_ratio("ns", 0.0, ctx)
    with pytest.raises(EllipticDomainError):
        jacobi_ratio("xy", 0.5, ctx)
    with pytest.raises(EllipticDomainError):
        jacobi_ratio("sc", 0.5, ctx_of(0), at_tau=True)


@pytest.mark.parametrize("m", [0.2, 0.5, 0.8])
def test_jacobi_zeta(m):
    ctx = ctx_of(m)
    for u in (0.2, 0.5, 0.9):
        np.testing.assert_allclose(jacobi_zeta(u, ctx), zeta_quadrature(u, m), atol=1e-12)
    # end for
    assert abs(jacobi_zeta(0.0, ctx)) < 1e-15
    assert abs(jacobi_zeta(1.0, ctx)) < 1e-13
    assert np.all(jacobi_zeta(np.linspace(0.05, 0.95, 19), ctx) > 0)


def test_jacobi_zeta_needs_real_parameter():
    with pytest.raises(EllipticDomainError):
        jacobi_zeta(0.5, ctx_of(0.2 + 0.1j))


@pytest.mark.parametrize("m", [1.05, 1.3, 1.8, 4.0])
@pytest.mark.parametrize("u", [0.2, 0.6, 0.9])
def test_cut_formulas_agree(m, u):
    ref = sigma_squared_cut(u, m)
    np.testing.assert_allclose(sigma_squared_cut_simplified(u, m), ref, atol=1e-12)
    np.testing.assert_allclose(sigma_squared_cut_alternative(u, m), ref, atol=1e-12)


def test_sigma_routes():
    assert sigma(0.3, Parameter.create(1)) == SigmaValue(0.3, 1 + 0j, 1.0, SigmaValue.LIMIT)
    assert sigma(0.3, Parameter.create(1.5)).route == SigmaValue.CUT
    assert sigma(0.3, Parameter.create(0.5j)).route == SigmaValue.THETA
    np.testing.assert_allclose(sigma_value(0.5, 0), math.sin(math.pi / 4), rtol=1e-15)
    with pytest.raises(EllipticDomainError):
        sigma(2.5, Parameter.create(0.5))


def test_sigma_is_continuous_across_the_cut():
    u = 0.7
    np.testing.assert_allclose(sigma_value(u, 1.3), sigma_value(u, 1.3 + 1e-9j), rtol=1e-6)
    np.testing.assert_allclose(sigma_value(u, 1.3), sigma_value(u, 1.3 - 1e-9j), rtol=1e-6)


def test_sigma_below_one_for_small_u_in_the_lens():
    for m in [1.2 + 0.3j, 1.5, 1.9 - 0.2j, 1.01]:
        assert sigma_value(0.4, m) < 1
    # end for


def test_sigma_limit_at_one_vanishes_at_the_ends():
    p = Parameter.create(1)
    assert sigma(0, p).sigma == 0.0
    assert sigma(2, p).sigma == 0.0
    assert sigma(1e-9, p).sigma == 1.0
    assert sigma(1.999, p).sigma == 1.0


@pytest.mark.parametrize("m", [1e-17, -1e-17, 1e-300, -1e-300, 1e-300j, 9.687703326308008e-183])
def test_sigma_near_zero_parameter(m):
    for u in (0.0, 0.3, 0.69, 1.0, 1.7):
        assert sigma_value(u, m) == pytest.approx(abs(math.sin(math.pi * u / 2)), abs=1e-14)
    # end for
    t = jacobi_triple(0.69, ctx_of(m))
    e1, e2 = t.identity_errors()
    assert max(e1, e2) < 1e-14
