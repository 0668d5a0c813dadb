"""Independent evaluation routes used to cross-check the theta pipeline.

Each oracle pairs a value from the main pipeline (lhs) with the right-hand side of a
closed-form identity assembled from real-parameter evaluations (rhs).
"""
from typing import *

import cmath
import math

import numpy as np
import scipy.integrate
import scipy.special
from seutil import LoggingUtils

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.core.elliptic_core import build_context
from ellipx.core.jacobi_fn import continued_triple, jacobi_ratio, jacobi_triple, sigma
from ellipx.data.EllipticContext import EllipticContext
from ellipx.data.Parameter import Parameter
from ellipx.exceptions import ConvergenceError, EllipticDomainError

logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

ORACLE_IDS = (
    "unit_circle_sn2",
    "d1_boundary_sn4",
    "landen_recursion",
    "fourier_ratio_sc",
    "fourier_ratio_nc",
    "fourier_ratio_dc",
    "cut_continuation",
)


def real_triple(u: float, m: float) -> Tuple[float, float, float]:
    """(sn, cn, dn)(K(m)u | m) for real m in [0, 1) from scipy."""
    if not 0 <= m < 1:
        LoggingUtils.log_and_raise(logger, f"real_triple needs m in [0, 1), got {m}", EllipticDomainError)
    # end if
    sn, cn, dn, _ = scipy.special.ellipj(scipy.special.ellipk(m) * u, m)
    return float(sn), float(cn), float(dn)


def descending_landen_triple(u: float, m: float) -> Tuple[float, float, float]:
    """(sn, cn, dn)(K(m)u | m) by the descending Landen (Gauss) phase recursion."""
    if not 0 <= m < 1:
        LoggingUtils.log_and_raise(logger, f"Landen recursion needs m in [0, 1), got {m}", EllipticDomainError)
    # end if
    a = [1.0]
    c = [math.sqrt(m)]
    b = math.sqrt(1 - m)
    while abs(c[-1]) > 2 * np.finfo(float).eps:
        if len(a) > Macros.agm_max_steps:
            LoggingUtils.log_and_raise(logger, f"Landen recursion did not converge at m={m}", ConvergenceError)
        # end if
        a_n, b_n = a[-1], b
        a.append((a_n + b_n) / 2)
        c.append((a_n - b_n) / 2)
        b = math.sqrt(a_n * b_n)
    # end while
    n = len(a) - 1
    # K = pi / (2 a_n), so 2^n a_n K u = 2^(n-1) pi u
    phi = [0.0] * (n + 1)
    phi[n] = 2 ** n * a[n] * (math.pi / (2 * a[n])) * u
    for j in range(n, 0, -1):
        phi[j - 1] = (phi[j] + math.asin(c[j] * math.sin(phi[j]) / a[j])) / 2
    # end for
    sn, cn = math.sin(phi[0]), math.cos(phi[0])
    dn = cn / math.cos(phi[1] - phi[0]) if n >= 1 else 1.0
    return sn, cn, dn


def complete_k_quadrature(m: complex) -> complex:
    """K(m) by adaptive quadrature of the defining integral over [0, pi/2]."""
    m = complex(m)

    def integrand(theta: float) -> complex:
        return 1 / cmath.sqrt(1 - m * math.sin(theta) ** 2)

    opts = dict(epsabs=1e-14, epsrel=1e-13, limit=200)
    re, _ = scipy.integrate.quad(lambda t: integrand(t).real, 0, math.pi / 2, **opts)
    im, _ = scipy.integrate.quad(lambda t: integrand(t).imag, 0, math.pi / 2, **opts)
    return complex(re, im)


def zeta_quadrature(u: float, m: float) -> float:
    """Jacobi zeta at K(m)u as E(am | m) - (E/K) K u."""
    K, E = scipy.special.ellipk(m), scipy.special.ellipe(m)
    am = scipy.special.ellipj(K * u, m)[3]
    e_am, _ = scipy.integrate.quad(lambda t: math.sqrt(1 - m * math.sin(t) ** 2), 0, am, epsabs=1e-14, epsrel=1e-13)
    return e_am - E * u


def _qpow(ctx: EllipticContext, a: float) -> complex:
    # q^a as exp(i pi tau a) keeps the branch of fractional powers fixed
    return cmath.exp(1j * math.pi * ctx.tau * a)


def fourier_ratio(kind: str, u: float, ctx: EllipticContext, terms: int = Macros.fourier_terms) -> complex:
    """sc, nc or dc at tau K(m)u from the exponential forms of their Fourier series."""
    if ctx.is_limit or ctx.param.m == 0:
        LoggingUtils.log_and_raise(logger, f"Fourier forms need 0 < |q| < 1, got {ctx.param}", EllipticDomainError)
    # end if
    if abs(ctx.q) >= Macros.fourier_q_limit:
        LoggingUtils.log_and_raise(logger, f"|q|={abs(ctx.q):.3g} too large for the Fourier forms", EllipticDomainError)
    # end if
    m = ctx.param.m
    K = ctx.K
    if kind == "sc":
        pref = math.pi / (cmath.sqrt(1 - m) * K)
        value = 0.5j * pref * (1 - _qpow(ctx, u)) / (1 + _qpow(ctx, u))
        for n in range(1, terms + 1):
            value += 1j * pref * (-1) ** n * _qpow(ctx, (2 - u) * n) * (1 - _qpow(ctx, 2 * n * u)) / (1 + _qpow(ctx, 2 * n))
        # end for
    elif kind in ("nc", "dc"):
        # nc: prefactor pi / (m1^(1/2) K), series subtracted, denominators 1 + q^(2n+1)
        # dc: prefactor pi / K, series added, denominators 1 - q^(2n+1)
        pref = math.pi / (cmath.sqrt(1 - m) * K) if kind == "nc" else math.pi / K
        sign = -1 if kind == "nc" else 1
        value = pref * _qpow(ctx, u / 2) / (1 + _qpow(ctx, u))
        for n in range(terms):
            term = (-1) ** n * _qpow(ctx, (n + 0.5) * (2 - u)) * (1 + _qpow(ctx, (2 * n + 1) * u))
            value += sign * pref * term / (1 - sign * _qpow(ctx, 2 * n + 1))
        # end for
    else:
        LoggingUtils.log_and_raise(logger, f"No Fourier form for {kind!r}", EllipticDomainError)
    # end if
    return value


def oracle_eval(oracle_id: str, u: float, p: Union[float, complex, Parameter]) -> Tuple[complex, complex]:
    """Both sides of a named identity.

    p is the angle theta for the circle identities, a real m (or a side-tagged cut Parameter)
    otherwise.
    """
    if oracle_id == "unit_circle_sn2":
        theta = float(p)
        if not 0 < theta <= math.pi / 4:
            LoggingUtils.log_and_raise(logger, f"unit_circle_sn2 needs theta in (0, pi/4], got {theta}", EllipticDomainError)
        # end if
        lhs = jacobi_triple(u, build_context(Parameter.create(cmath.exp(4j * theta)))).s ** 2
        cos2, sin2 = math.cos(theta) ** 2, math.sin(theta) ** 2
        s, c, d = real_triple(u, cos2)
        s1, c1, d1 = real_triple(u, sin2)
        # cn(x + iy | cos^2) by the addition formula, y = K(sin^2) u
        cn_sum = (c * c1 - 1j * s * s1 * d * d1) / (c1 * c1 + cos2 * s * s * s1 * s1)
        rhs = cmath.exp(-2j * theta) * (1 - cn_sum) / (1 + cn_sum)
        return complex(lhs), complex(rhs)
    elif oracle_id == "d1_boundary_sn4":
        theta = float(p)
        if not -math.pi / 4 <= theta < 0:
            LoggingUtils.log_and_raise(logger, f"d1_boundary_sn4 needs theta in [-pi/4, 0), got {theta}", EllipticDomainError)
        # end if
        lhs = sigma(u, Parameter.create(1 - cmath.exp(4j * theta))).sigma ** 4
        S, C, D = real_triple(2 * u, math.sin(theta) ** 2)
        rhs = S * S / (4 * D * D) * (1 - C) / (1 + C)
        return complex(lhs), complex(rhs)
    elif oracle_id == "landen_recursion":
        m = float(p)
        lhs = jacobi_triple(u, build_context(Parameter.create(m))).s
        rhs = descending_landen_triple(u, m)[0]
        return complex(lhs), complex(rhs)
    elif oracle_id in ("fourier_ratio_sc", "fourier_ratio_nc", "fourier_ratio_dc"):
        kind = oracle_id[-2:]
        ctx = build_context(p if isinstance(p, Parameter) else Parameter.create(p))
        return jacobi_ratio(kind, u, ctx, at_tau=True), fourier_ratio(kind, u, ctx)
    elif oracle_id == "cut_continuation":
        param = p if isinstance(p, Parameter) else Parameter.create(p)
        if param.regime != Parameter.CUT:
            LoggingUtils.log_and_raise(logger, f"cut_continuation needs real m > 1, got {param}", EllipticDomainError)
        # end if
        lhs = continued_triple(u, build_context(param)).s
        mu = 1 / param.m.real
        s, c, d = real_triple(u, mu)
        s1, c1, d1 = real_triple(u, 1 - mu)
        sign = 1 if param.side == Parameter.ABOVE else -1
        rhs = math.sqrt(mu) * (s * d1 + sign * 1j * c * d * s1 * c1) / (1 - d * d * s1 * s1)
        return complex(lhs), complex(rhs)
    # end if
    LoggingUtils.log_and_raise(logger, f"Unknown oracle {oracle_id!r}", EllipticDomainError)
