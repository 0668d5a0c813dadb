"""Complete elliptic integrals, nomes and theta functions for complex parameter m."""
from typing import *

import cmath
import functools
import math

import numpy as np
from seutil import LoggingUtils

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.data.EllipticContext import EllipticContext
from ellipx.data.Parameter import Parameter
from ellipx.exceptions import ConvergenceError, EllipticDomainError

logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

EPS = float(np.finfo(float).eps)
TINY = float(np.finfo(float).tiny)

COMPLEMENT = "complement"
RECIPROCAL = "reciprocal"

# Anharmonic images of m reachable through the complement and reciprocal transformations
CANDIDATE_ROUTES: List[Tuple[Tuple[str, ...], Callable[[complex], complex]]] = [
    ((COMPLEMENT,), lambda m: 1 - m),
    ((RECIPROCAL,), lambda m: 1 / m),
    ((COMPLEMENT, RECIPROCAL), lambda m: 1 / (1 - m)),
    ((RECIPROCAL, COMPLEMENT), lambda m: 1 - 1 / m),
    ((COMPLEMENT, RECIPROCAL, COMPLEMENT), lambda m: m / (m - 1)),
]


def agm(a: complex, b: complex) -> complex:
    """Arithmetic-geometric mean with the optimal choice of square root at every step."""
    a, b = complex(a), complex(b)
    if a == 0 and b == 0:
        LoggingUtils.log_and_raise(logger, "agm(0, 0) is undefined", EllipticDomainError)
    elif a == 0 or b == 0:
        return 0j
    # end if
    for _ in range(Macros.agm_max_steps):
        if abs(a - b) <= 2 * EPS * abs(a):
            return a
        # end if
        a_next = (a + b) / 2
        b_next = cmath.sqrt(a * b)
        # |a' - b'| <= |a' + b'|  <=>  Re(b' conj(a')) >= 0
        if (b_next * a_next.conjugate()).real < 0:
            b_next = -b_next
        # end if
        if a_next == 0:
            LoggingUtils.log_and_raise(logger, f"agm({a}, {b}) collapsed to 0 (b/a real negative)", ConvergenceError)
        # end if
        a, b = a_next, b_next
    # end for
    LoggingUtils.log_and_raise(logger, f"agm did not converge in {Macros.agm_max_steps} steps (a={a}, b={b})", ConvergenceError)


@functools.lru_cache(maxsize=65536)
def complete_k(m: complex) -> complex:
    m = complex(m)
    if m.imag == 0 and m.real >= 1:
        LoggingUtils.log_and_raise(logger, f"K(m) is not defined on the cut [1, inf), got m={m}", EllipticDomainError)
    # end if
    return math.pi / (2 * agm(1, cmath.sqrt(1 - m)))


def complete_kprime(m: complex) -> complex:
    m = complex(m)
    if m.imag == 0 and m.real <= 0:
        LoggingUtils.log_and_raise(logger, f"K'(m) is not defined on (-inf, 0], got m={m}", EllipticDomainError)
    # end if
    return _kprime(m)


@functools.lru_cache(maxsize=65536)
def _kprime(m: complex) -> complex:
    """K(1 - m) as pi / (2 agm(1, m^(1/2))), free of the cancellation in 1 - (1 - m) for tiny m.

    On (-inf, 0) this is the limit from the upper half-plane.
    """
    if m.imag == 0:
        m = complex(m.real, 0.0)
    # end if
    if m == 0:
        LoggingUtils.log_and_raise(logger, "K'(0) is infinite", EllipticDomainError)
    # end if
    return math.pi / (2 * agm(1, cmath.sqrt(m)))


def k_on_cut(x: float, side: str) -> complex:
    """One-sided limit K(x +/- i0) for real x > 1, from the connection formula."""
    if x <= 1:
        LoggingUtils.log_and_raise(logger, f"k_on_cut expects x > 1, got {x}", EllipticDomainError)
    # end if
    mu = 1 / x
    sign = 1 if side == Parameter.ABOVE else -1
    return math.sqrt(mu) * (complete_k(mu) + sign * 1j * complete_k(1 - mu))


def _k_pair(m: complex, side: str = Parameter.NONE) -> Tuple[complex, complex]:
    """(K, K') for any m other than 0 and 1, using one-sided limits on the cuts.

    On (-inf, 0) K' is the limit from the upper half-plane.
    """
    if m.imag == 0 and m.real > 1:
        return k_on_cut(m.real, side if side != Parameter.NONE else Parameter.ABOVE), _kprime(m)
    # end if
    return complete_k(m), _kprime(m)


def _nome(K: complex, Kprime: complex) -> complex:
    return cmath.exp(-math.pi * Kprime / K)


def _choose_route(m: complex, q: complex) -> Tuple[Tuple[str, ...], complex]:
    if abs(q) <= Macros.complementary_switch:
        return (), m
    # end if
    best_route, best_m, best_abs_q = (), m, abs(q)
    for route, image in CANDIDATE_ROUTES:
        p = image(m)
        if p.imag == 0 and (p.real <= 0 or p.real >= 1):
            continue
        # end if
        abs_q = abs(_nome(complete_k(p), complete_kprime(p)))
        if abs_q < best_abs_q:
            best_route, best_m, best_abs_q = route, p, abs_q
        # end if
    # end for
    logger.debug(f"route for m={m}: {best_route} -> {best_m} (|q|={best_abs_q:.3g})")
    return best_route, best_m


@functools.lru_cache(maxsize=8192)
def build_context(p: Parameter) -> EllipticContext:
    m = p.m
    if p.regime == Parameter.ONE:
        inf = complex(math.inf, 0)
        return EllipticContext(p, inf, complex(math.pi / 2), 0j, 1 + 0j, 0j, True,
                               (), m, inf, 0j, 1 + 0j)
    elif m == 0:
        tau = complex(0, math.inf)
        K = complex(math.pi / 2)
        return EllipticContext(p, K, complex(math.inf, 0), tau, 0j, 1 + 0j, False,
                               (), m, K, tau, 0j)
    # end if

    K, Kprime = _k_pair(m, p.side)
    tau = 1j * Kprime / K
    q = cmath.exp(1j * math.pi * tau)
    q1 = cmath.exp(1j * math.pi * (-1 / tau))

    route, route_m = _choose_route(m, q)
    if route:
        route_K, route_Kprime = complete_k(route_m), complete_kprime(route_m)
        route_tau = 1j * route_Kprime / route_K
        route_q = cmath.exp(1j * math.pi * route_tau)
    else:
        route_K, route_tau, route_q = K, tau, q
    # end if
    return EllipticContext(p, K, Kprime, tau, q, q1, route == (COMPLEMENT,),
                           route, route_m, route_K, route_tau, route_q)


def _envelope(n: int, log_abs_q: float, max_abs_im: float) -> float:
    exponent = n * n * log_abs_q + 2 * n * max_abs_im
    return math.exp(exponent) if exponent > -745 else 0.0


def theta_sums(x: Union[complex, np.ndarray], q: complex) -> Tuple:
    """Reduced theta sums (S1, S2, S3, S4).

    theta1 = 2 q^(1/4) S1, theta2 = 2 q^(1/4) S2, theta3 = S3, theta4 = S4. Quotients of the
    sums never involve the branch of q^(1/4).
    """
    is_array = isinstance(x, np.ndarray)
    lib = np if is_array else cmath
    if is_array:
        x = x.astype(complex)
    else:
        x = complex(x)
    # end if
    s1, s2 = lib.sin(x), lib.cos(x)
    s3 = np.ones_like(x) if is_array else 1 + 0j
    s4 = np.ones_like(x) if is_array else 1 + 0j
    if q == 0:
        return s1, s2, s3, s4
    # end if

    log_abs_q = math.log(abs(q))
    max_abs_im = float(np.max(np.abs(np.imag(x)))) if is_array else abs(x.imag)
    q_odd = q          # q^(2n-1)
    q_even = q * q     # q^(2n)
    q_sq = 1 + 0j      # q^(n^2)
    q_nn = 1 + 0j      # q^(n(n+1))
    for n in range(1, Macros.theta_max_terms + 1):
        q_sq = q_sq * q_odd
        q_nn = q_nn * q_even
        q_odd = q_odd * q * q
        q_even = q_even * q * q
        sign = -1 if n % 2 == 1 else 1
        cos_2n = lib.cos(2 * n * x)
        s3 = s3 + 2 * q_sq * cos_2n
        s4 = s4 + 2 * sign * q_sq * cos_2n
        s1 = s1 + sign * q_nn * lib.sin((2 * n + 1) * x)
        s2 = s2 + q_nn * lib.cos((2 * n + 1) * x)

        if is_array:
            scale = float(min(np.min(np.abs(s)) for s in (s1, s2, s3, s4)))
        else:
            scale = min(abs(s1), abs(s2), abs(s3), abs(s4))
        # end if
        if _envelope(n + 1, log_abs_q, max_abs_im) <= EPS * max(scale, TINY):
            break
        # end if
    # end for
    return s1, s2, s3, s4


@functools.lru_cache(maxsize=8192)
def theta_zero_sums(q: complex) -> Tuple[complex, complex, complex, complex]:
    return theta_sums(0j, q)


def theta(j: int, x: Union[complex, np.ndarray], q: complex) -> Union[complex, np.ndarray]:
    q = complex(q)
    if j not in (1, 2, 3, 4):
        LoggingUtils.log_and_raise(logger, f"theta index must be 1..4, got {j}", EllipticDomainError)
    # end if
    if abs(q) >= Macros.theta_q_limit:
        LoggingUtils.log_and_raise(logger, f"|q|={abs(q):.4g} too close to 1 for the theta series; use the complementary nome", EllipticDomainError)
    # end if
    sums = theta_sums(x, q)
    if j <= 2:
        return 2 * q ** 0.25 * sums[j - 1]
    # end if
    return sums[j - 1]


def theta4_log_derivative(x: Union[float, np.ndarray], q: complex) -> Union[complex, np.ndarray]:
    """theta4'(x) / theta4(x) from the q-series of theta4 and its derivative."""
    is_array = isinstance(x, np.ndarray)
    lib = np if is_array else cmath
    num = 0 * x
    den = 1 + 0 * x
    if q == 0:
        return num
    # end if
    log_abs_q = math.log(abs(q))
    q_sq = 1 + 0j
    for n in range(1, Macros.theta_max_terms + 1):
        q_sq = q_sq * q ** (2 * n - 1)
        sign = -1 if n % 2 == 1 else 1
        num = num - 4 * n * sign * q_sq * lib.sin(2 * n * x)
        den = den + 2 * sign * q_sq * lib.cos(2 * n * x)
        # real x only: terms are bounded by n |q|^(n^2)
        if 4 * (n + 1) * _envelope(n + 1, log_abs_q, 0.0) <= EPS * EPS:
            break
        # end if
    # end for
    return num / den
