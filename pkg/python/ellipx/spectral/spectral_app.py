"""Laplace-type integrals along [0, 2K(m)], the v-sequence and the Jacobi matrix J(k)."""
from typing import *

import cmath
import math

import numpy as np
from seutil import LoggingUtils

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.core.elliptic_core import build_context
from ellipx.core.jacobi_fn import jacobi_triple
from ellipx.data.EllipticContext import EllipticContext
from ellipx.data.Parameter import Parameter
from ellipx.data.results import QuadratureRule, VSequence
from ellipx.exceptions import ConvergenceError, EllipticDomainError

logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

# f(t, u) with t = K(m) u on the segment; may return shape (len(t),) or (rows, len(t))
Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

SADDLE_KINDS = ("const_one", "square_about_K")


def _segment_context(m: Parameter) -> EllipticContext:
    if not m.in_closed_unit_disk():
        LoggingUtils.log_and_raise(logger, f"segment integrals need m in the closed unit disk minus 1, got {m}", EllipticDomainError)
    # end if
    return build_context(m)


def integrate_segment(f: Integrand, m: Parameter, rule: Optional[QuadratureRule] = None,
                      adaptive: bool = True) -> Union[complex, np.ndarray]:
    """Composite Gauss-Legendre integral of f over t in [0, 2K(m)], doubling panels until stable.

    With adaptive=False the rule is applied once as given.
    """
    ctx = _segment_context(m)
    order = rule.order if rule is not None else Macros.gauss_order
    panels = rule.panels if rule is not None else 2
    if not adaptive:
        r = QuadratureRule.create(order, panels, ctx.K)
        value = np.asarray(f(r.t, r.u)) @ r.weights
        return complex(value) if np.ndim(value) == 0 else value
    # end if
    previous = None
    while panels <= Macros.quad_max_panels:
        r = QuadratureRule.create(order, panels, ctx.K)
        values = np.asarray(f(r.t, r.u))
        value = values @ r.weights
        scale = np.abs(values) @ np.abs(r.weights)
        if previous is not None:
            if np.all(np.abs(value - previous) <= Macros.quad_rtol * np.maximum(np.abs(value), scale)):
                logger.debug(f"segment quadrature converged with {panels} panels of order {order}")
                return complex(value) if np.ndim(value) == 0 else value
            # end if
        # end if
        previous = value
        panels *= 2
    # end while
    LoggingUtils.log_and_raise(logger, f"segment quadrature did not converge within {Macros.quad_max_panels} panels ({m})", ConvergenceError)


def _cd_integrand(kinds: Sequence[Tuple[str, int]], z: complex, ctx: EllipticContext) -> Integrand:
    def f(t: np.ndarray, u: np.ndarray) -> np.ndarray:
        tr = jacobi_triple(u, ctx)
        weight = np.exp(-z * t)
        rows = [weight * (tr.c if kind == "C" else tr.d) * tr.s ** l for kind, l in kinds]
        return np.array(rows)
    return f


def cd_batch(kinds: Sequence[Tuple[str, int]], z: complex, m: Parameter, rule: Optional[QuadratureRule] = None,
             adaptive: bool = True) -> np.ndarray:
    """C_l or D_l for several (kind, l) pairs from one quadrature."""
    for kind, l in kinds:
        if kind not in ("C", "D") or l < 0:
            LoggingUtils.log_and_raise(logger, f"bad integral request ({kind}, {l})", EllipticDomainError)
        # end if
    # end for
    ctx = _segment_context(m)
    return integrate_segment(_cd_integrand(kinds, complex(z), ctx), m, rule, adaptive)


def cd_integral(kind: str, l: int, z: complex, m: Parameter, rule: Optional[QuadratureRule] = None) -> complex:
    """C_l = int e^(-zt) cn sn^l dt, D_l = int e^(-zt) dn sn^l dt over [0, 2K(m)]."""
    return complex(cd_batch([(kind, l)], z, m, rule)[0])


def v_sequence(z: complex, k: complex, n_max: int, order: int = Macros.gauss_order,
               panels: Optional[int] = None) -> VSequence:
    """Entries v_1..v_n_max; a fixed panel count turns off the adaptive panel doubling."""
    k, z = complex(k), complex(z)
    if abs(k) > 1 + Parameter.CIRCLE_TOL or k in (1, -1):
        LoggingUtils.log_and_raise(logger, f"v_sequence needs k in the closed unit disk minus +-1, got {k}", EllipticDomainError)
    # end if
    if n_max < 1:
        LoggingUtils.log_and_raise(logger, f"n_max must be positive, got {n_max}", EllipticDomainError)
    # end if
    m = Parameter.create(k * k)
    K = build_context(m).K
    # odd entries use C_(2l), even entries D_(2l+1)
    kinds = [("C", n - 1) if n % 2 == 1 else ("D", n - 1) for n in range(1, n_max + 1)]
    rule = QuadratureRule.create(order, panels if panels is not None else 2, K)
    integrals = cd_batch(kinds, 1j * z, m, rule, adaptive=panels is None)
    e = cmath.exp(1j * K * z)
    entries = np.zeros(n_max, dtype=complex)
    for n in range(1, n_max + 1):
        if n % 2 == 1:
            l = (n - 1) // 2
            # k^l is the branch of m^(l/2) that keeps the recurrence exact
            entries[n - 1] = 1j * (-1) ** l * k ** l * e * integrals[n - 1]
        else:
            l = (n - 2) // 2
            entries[n - 1] = (-1) ** (l + 1) * k ** l * e * integrals[n - 1]
        # end if
    # end for
    return VSequence(z, m.m, entries)


def jacobi_matrix(k: complex, n: int) -> np.ndarray:
    """n x n truncation of J(k): zero diagonal, off-diagonal 1, 2k, 3, 4k, ..."""
    a = np.array([j if j % 2 == 1 else j * k for j in range(1, n)], dtype=complex)
    return np.diag(a, 1) + np.diag(a, -1)


def jacobi_residual(k: complex, z: complex, n_max: int, order: int = Macros.gauss_order,
                    panels: Optional[int] = None) -> Tuple[np.ndarray, complex]:
    """Rows 1..n_max-1 of (J(k) - z) v; row 1 should equal -2 cos(K z), the others 0."""
    if n_max < 3:
        LoggingUtils.log_and_raise(logger, f"jacobi_residual needs n_max >= 3, got {n_max}", EllipticDomainError)
    # end if
    v = v_sequence(z, k, n_max, order, panels)
    J = jacobi_matrix(k, n_max)
    rows = (J - z * np.eye(n_max)) @ v.entries
    K = build_context(Parameter.create(complex(k) ** 2)).K
    return rows[:-1], -2 * cmath.cos(K * z)


def truncated_eigenvalues(k: complex, n_max: int) -> np.ndarray:
    ev = np.linalg.eigvals(jacobi_matrix(k, n_max))
    return ev[np.lexsort((ev.imag, ev.real))]


def saddle_prediction(f_id: str, m: Parameter, l: int) -> complex:
    m1 = 1 - m.m
    if f_id == "const_one":
        return math.sqrt(2 * math.pi) / cmath.sqrt(m1) * l ** -0.5
    elif f_id == "square_about_K":
        return math.sqrt(2 * math.pi) / m1 ** 1.5 * l ** -1.5
    # end if
    LoggingUtils.log_and_raise(logger, f"Unknown saddle test function {f_id!r}", EllipticDomainError)


def saddle_check(f_id: str, m: Parameter, l_list: Sequence[int]) -> List[Tuple[int, complex]]:
    """I_l(f) = int f(t) sn^l(t) dt against its leading saddle-point term at t = K(m)."""
    if f_id not in SADDLE_KINDS:
        LoggingUtils.log_and_raise(logger, f"Unknown saddle test function {f_id!r}", EllipticDomainError)
    # end if
    ctx = _segment_context(m)

    def f(t: np.ndarray, u: np.ndarray) -> np.ndarray:
        s = jacobi_triple(u, ctx).s
        weight = np.ones_like(t) if f_id == "const_one" else (t - ctx.K) ** 2
        return np.array([weight * s ** l for l in l_list])

    values = integrate_segment(f, m)
    return [(l, complex(values[i] / saddle_prediction(f_id, m, l))) for i, l in enumerate(l_list)]


def asymptotic_cd_ratio(kind: str, l: int, z: complex, m: Parameter) -> complex:
    """C_l or D_l divided by its leading large-l term."""
    K = build_context(m).K
    value = cd_integral(kind, l, z, m)
    if kind == "D":
        prediction = math.sqrt(2 * math.pi) * cmath.exp(-K * z) * l ** -0.5
    else:
        prediction = math.sqrt(2 * math.pi) * z * cmath.exp(-K * z) / (1 - m.m) * l ** -1.5
    # end if
    return value / prediction


def segment_sup(m: Parameter, samples: int = 2001) -> Tuple[float, float]:
    """(u, max |sn(K(m)u | m)|) over a grid of u in (0, 2)."""
    ctx = _segment_context(m)
    u = np.linspace(0.0, 2.0, samples)[1:-1]
    s = np.abs(jacobi_triple(u, ctx).s)
    i = int(np.argmax(s))
    return float(u[i]), float(s[i])
