"""Jacobian elliptic functions at K(m)u, their ratios, Jacobi zeta and sigma(u, m)."""
from typing import *

import cmath
import math

import numpy as np
from seutil import LoggingUtils

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.core.elliptic_core import COMPLEMENT, build_context, theta4_log_derivative, theta_sums, theta_zero_sums
from ellipx.data.EllipticContext import EllipticContext
from ellipx.data.JacobiTriple import JacobiTriple
from ellipx.data.Parameter import Parameter
from ellipx.data.results import SigmaValue
from ellipx.exceptions import ConsistencyError, EllipticDomainError, PoleError

logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

Value = Union[complex, np.ndarray]

RATIO_KINDS = ("sc", "nc", "dc", "sd", "cd", "ns")


def _theta_quotients(v: Value, q: complex, tau: complex) -> Tuple[Value, Value, Value]:
    """(sn, cn, dn) at v = pi z / (2K) from theta quotients with nome q."""
    is_array = isinstance(v, np.ndarray)
    if q != 0:
        # shift v into the strip |Im v| <= pi Im(tau) / 2; cn and dn change sign with odd shifts
        period = math.pi * tau.imag
        if is_array:
            n = np.rint(np.imag(v) / period)
            v = v - n * math.pi * tau
            parity = np.where(n % 2 == 0, 1.0, -1.0)
        else:
            n = round(v.imag / period)
            v = v - n * math.pi * tau
            parity = -1.0 if n % 2 else 1.0
        # end if
    else:
        parity = 1.0
    # end if

    s1, s2, s3, s4 = theta_sums(v, q)
    _, z2, z3, z4 = theta_zero_sums(q)
    if np.min(np.abs(s4)) < Macros.denominator_floor:
        LoggingUtils.log_and_raise(logger, f"theta4 vanished at v={v} (q={q})", ConsistencyError)
    # end if
    sn = (z3 / z2) * s1 / s4
    cn = parity * (z4 / z2) * s2 / s4
    dn = parity * (z4 / z3) * s3 / s4
    return sn, cn, dn


def _route_eval(z: Value, m: complex, route: Tuple[str, ...], ctx: EllipticContext) -> Tuple[Value, Value, Value]:
    if not route:
        return _theta_quotients(math.pi * z / (2 * ctx.route_K), ctx.route_q, ctx.route_tau)
    elif route[0] == COMPLEMENT:
        # imaginary transformation
        s, c, d = _route_eval(1j * z, 1 - m, route[1:], ctx)
        return -1j * s / c, 1 / c, d / c
    else:
        # reciprocal transformation
        r = cmath.sqrt(m)
        s, c, d = _route_eval(r * z, 1 / m, route[1:], ctx)
        return s / r, d, c
    # end if


def triple_at(z: Value, ctx: EllipticContext) -> Tuple[Value, Value, Value]:
    """(sn, cn, dn) at a general argument z through the route chosen for ctx."""
    if ctx.is_limit:
        LoggingUtils.log_and_raise(logger, "m=1 has no finite quarter period; use the limit formulas", EllipticDomainError)
    # end if
    if isinstance(z, np.ndarray):
        z = z.astype(complex)
    else:
        z = complex(z)
    # end if
    return _route_eval(z, ctx.param.m, ctx.route, ctx)


def _check_u(u: Union[float, np.ndarray]):
    if np.any(np.asarray(u) < 0) or np.any(np.asarray(u) > 2):
        LoggingUtils.log_and_raise(logger, f"u must lie in [0, 2], got {u}", EllipticDomainError)
    # end if


def _evaluate(u: Union[float, np.ndarray], ctx: EllipticContext) -> JacobiTriple:
    _check_u(u)
    if isinstance(u, np.ndarray):
        u = u.astype(float)
    else:
        u = float(u)
    # end if
    if ctx.route:
        s, c, d = triple_at(ctx.K * u, ctx)
    else:
        # K cancels in pi K u / (2K)
        s, c, d = _theta_quotients(math.pi * u / 2 + 0j, ctx.q, ctx.tau)
    # end if
    if not isinstance(u, np.ndarray):
        s, c, d = complex(s), complex(c), complex(d)
    # end if
    return JacobiTriple(s, c, d, u, ctx)


def jacobi_triple(u: Union[float, np.ndarray], ctx: EllipticContext) -> JacobiTriple:
    if ctx.param.regime in (Parameter.ONE, Parameter.CUT):
        LoggingUtils.log_and_raise(logger, f"jacobi_triple needs m off [1, inf), got {ctx.param}; use continued_triple on the cut", EllipticDomainError)
    # end if
    return _evaluate(u, ctx)


def continued_triple(u: Union[float, np.ndarray], ctx: EllipticContext) -> JacobiTriple:
    """Boundary values of (sn, cn, dn)(K(m)u | m) on the cut, from the side stored in ctx."""
    if ctx.param.regime != Parameter.CUT:
        LoggingUtils.log_and_raise(logger, f"continued_triple expects a cut parameter, got {ctx.param}", EllipticDomainError)
    # end if
    return _evaluate(u, ctx)


def jacobi_ratio(kind: str, u: float, ctx: EllipticContext, at_tau: bool = False) -> complex:
    """sc, nc, dc, sd, cd or ns at K(m)u, or at tau K(m)u with at_tau."""
    if kind not in RATIO_KINDS:
        LoggingUtils.log_and_raise(logger, f"Unknown ratio kind {kind!r}", EllipticDomainError)
    # end if
    if at_tau:
        _check_u(u)
        if ctx.is_limit or ctx.param.m == 0:
            LoggingUtils.log_and_raise(logger, f"tau K(m) u is undefined at {ctx.param}", EllipticDomainError)
        # end if
        s, c, d = (complex(x) for x in triple_at(ctx.tau * ctx.K * u, ctx))
    else:
        t = jacobi_triple(u, ctx) if ctx.param.regime != Parameter.CUT else continued_triple(u, ctx)
        s, c, d = t.s, t.c, t.d
    # end if
    num, den = {
        "sc": (s, c), "nc": (1, c), "dc": (d, c),
        "sd": (s, d), "cd": (c, d), "ns": (1, s),
    }[kind]
    if abs(den) < Macros.pole_tol:
        LoggingUtils.log_and_raise(logger, f"{kind} has a pole at u={u} ({ctx.param}, at_tau={at_tau})", PoleError)
    # end if
    return num / den


def jacobi_zeta(u: Union[float, np.ndarray], ctx: EllipticContext) -> Union[float, np.ndarray]:
    """Z(K(m)u | m) = (pi / 2K) theta4'(v) / theta4(v), v = pi u / 2, for real m in (0, 1)."""
    m = ctx.param.m
    if not (m.imag == 0 and 0 < m.real < 1):
        LoggingUtils.log_and_raise(logger, f"jacobi_zeta needs real m in (0, 1), got {m}", EllipticDomainError)
    # end if
    _check_u(u)
    v = np.pi * np.asarray(u, dtype=float) / 2 if isinstance(u, np.ndarray) else math.pi * u / 2
    z = math.pi / (2 * ctx.K.real) * theta4_log_derivative(v, ctx.q.real)
    return np.real(z) if isinstance(z, np.ndarray) else float(np.real(z))


def sigma_squared_cut(u: float, m: float) -> float:
    """|sn(K(m)u | m)|^2 for real m > 1 from real triples at mu = 1/m and mu1 = 1 - 1/m."""
    s, c, d, s1, c1, d1, mu = _cut_triples(u, m)
    return mu * (s * s * d1 * d1 + c * c * d * d * s1 * s1 * c1 * c1) / (1 - d * d * s1 * s1) ** 2


def _cut_triples(u: float, m: float) -> Tuple[float, ...]:
    if not m > 1:
        LoggingUtils.log_and_raise(logger, f"cut formulas need real m > 1, got {m}", EllipticDomainError)
    # end if
    mu = 1 / m
    t = jacobi_triple(u, build_context(Parameter.create(mu)))
    t1 = jacobi_triple(u, build_context(Parameter.create(1 - mu)))
    return t.s.real, t.c.real, t.d.real, t1.s.real, t1.c.real, t1.d.real, mu


def sigma_squared_cut_simplified(u: float, m: float) -> float:
    """1 - c^2 c1^2 (1 - phi) / (1 - d^2 s1^2); the correction vanishes where phi(u, 1/m) = 1."""
    s, c, d, s1, c1, d1, mu = _cut_triples(u, m)
    phi_value = (d1 / c1) ** 2 - (d / c) ** 2
    return 1 - c * c * c1 * c1 * (1 - phi_value) / (1 - d * d * s1 * s1)


def sigma_squared_cut_alternative(u: float, m: float) -> float:
    """1 + (mu sc^2(mu1) - dc^2(mu)) / (1 + sc^2(mu) dc^2(mu1))."""
    s, c, d, s1, c1, d1, mu = _cut_triples(u, m)
    sc, dc = s / c, d / c
    sc1, dc1 = s1 / c1, d1 / c1
    return 1 + (mu * sc1 ** 2 - dc ** 2) / (1 + sc ** 2 * dc1 ** 2)


def sigma(u: float, p: Parameter) -> SigmaValue:
    """Continuous extension of |sn(K(m)u | m)| to the whole m-plane."""
    if not 0 <= u <= 2:
        LoggingUtils.log_and_raise(logger, f"u must lie in [0, 2], got {u}", EllipticDomainError)
    # end if
    if p.regime == Parameter.ONE:
        # sn(K u | m) -> tanh(K u) with K = infinity, folded about u = 1
        return SigmaValue(u, p.m, 1.0 if 0 < u < 2 else 0.0, SigmaValue.LIMIT)
    elif p.regime == Parameter.CUT:
        value = math.sqrt(max(sigma_squared_cut(u, p.m.real), 0.0))
        return SigmaValue(u, p.m, value, SigmaValue.CUT)
    # end if
    t = jacobi_triple(u, build_context(p))
    return SigmaValue(u, p.m, abs(t.s), SigmaValue.THETA)


def sigma_value(u: float, m: Union[complex, float]) -> float:
    return sigma(u, Parameter.create(m)).sigma
