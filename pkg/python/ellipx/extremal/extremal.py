"""Extremal analysis of sigma(u, m) on the branch cut m > 1."""
from typing import *

from concurrent.futures import ProcessPoolExecutor, as_completed
import math

import numpy as np
import scipy.optimize
from seutil import LoggingUtils
from tqdm import tqdm

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.core.elliptic_core import build_context
from ellipx.core.jacobi_fn import jacobi_ratio, sigma, sigma_squared_cut
from ellipx.data.Parameter import Parameter
from ellipx.data.results import ExtremalResult, GlobalMaximum
from ellipx.exceptions import BracketError, ConvergenceError, EllipticDomainError

logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def phi(u: float, mu: float) -> float:
    """dc^2(K(mu1)u | mu1) - dc^2(K(mu)u | mu) for real mu in (0, 1)."""
    if not 0 < u < 1:
        LoggingUtils.log_and_raise(logger, f"phi needs u in (0, 1), got {u}", EllipticDomainError)
    # end if
    if not 0 < mu < 1:
        LoggingUtils.log_and_raise(logger, f"phi needs mu in (0, 1), got {mu}", EllipticDomainError)
    # end if
    dc1 = jacobi_ratio("dc", u, build_context(Parameter.create(1 - mu)))
    dc = jacobi_ratio("dc", u, build_context(Parameter.create(mu)))
    return (dc1 ** 2 - dc ** 2).real


def m_tilde(u: float) -> ExtremalResult:
    """Root m~ = 1/mu~ of phi(u, mu) = 1, by bisection in mu on (1/2, 1)."""
    if not 0 < u < 1:
        LoggingUtils.log_and_raise(logger, f"m_tilde needs u in (0, 1), got {u}", EllipticDomainError)
    # end if
    lo, hi = 0.5, Macros.mu_upper
    f_hi = phi(u, hi) - 1
    # phi(u, 1/2) = 0, so the bracket only fails at the upper end
    if f_hi <= 0:
        LoggingUtils.log_and_raise(logger, f"phi(u={u}, mu) - 1 has no sign change on (1/2, 1); no root for u <= 1/2", BracketError)
    # end if
    iterations = 0
    while hi - lo > Macros.bisection_tol:
        if iterations >= Macros.bisection_max_steps:
            LoggingUtils.log_and_raise(logger, f"bisection for m_tilde(u={u}) exceeded {Macros.bisection_max_steps} steps", ConvergenceError)
        # end if
        mid = (lo + hi) / 2
        if phi(u, mid) > 1:
            hi = mid
        else:
            lo = mid
        # end if
        iterations += 1
    # end while
    mu = (lo + hi) / 2
    return ExtremalResult(u=u, location=1 / mu, value=phi(u, mu) - 1, iterations=iterations, converged=True)


def sigma_on_cut(u: float, m: float) -> float:
    return math.sqrt(max(sigma_squared_cut(u, m), 0.0))


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = Macros.golden_tol) -> Tuple[float, float, int]:
    """
    Golden-section search for a maximum.

    Given a function f with a single local maximum in [a, b], returns a sub-interval
    [c, d] containing the maximum with d - c <= tol, and the number of evaluations.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a, b, 0
    # end if

    # Required steps to achieve tolerance
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
        # end if
    # end for
    if yc > yd:
        return a, d, n + 1
    else:
        return c, b, n + 1
    # end if


def maximize_1d(f: Callable[[float], float], a: float, b: float) -> Tuple[float, float, int, bool]:
    """Golden-section bracketing, then bounded parabolic refinement. Returns (x, f(x), evaluations, success)."""
    lo, hi, evaluations = golden_section_max(f, a, b)
    res = scipy.optimize.minimize_scalar(lambda x: -f(x), bounds=(lo, hi), method="bounded",
                                         options={"xatol": Macros.parabolic_tol})
    return float(res.x), float(-res.fun), evaluations + int(res.nfev), bool(res.success)


def count_local_maxima(values: np.ndarray) -> int:
    interior = (values[1:-1] > values[:-2]) & (values[1:-1] > values[2:])
    count = int(np.sum(interior))
    if values[0] > values[1]:
        count += 1
    # end if
    if values[-1] > values[-2]:
        count += 1
    # end if
    return count


def max_on_cut(u: float, check_unimodal: bool = True) -> ExtremalResult:
    """m*(u) = argmax of sigma(u, .) on (1, m~(u)); (1, 1) for u <= 1/2."""
    if not 0 < u < 1:
        LoggingUtils.log_and_raise(logger, f"max_on_cut needs u in (0, 1), got {u}", EllipticDomainError)
    # end if
    if u <= 0.5:
        # supremum at the limit point m = 1
        return ExtremalResult(u=u, location=1.0, value=1.0, iterations=0, converged=True, unimodal=True)
    # end if
    mt = m_tilde(u)
    a, b = 1 + Macros.endpoint_offset, mt.location - Macros.endpoint_offset
    f = lambda m: sigma_on_cut(u, m)
    location, value, evaluations, success = maximize_1d(f, a, b)

    unimodal = None
    if check_unimodal:
        samples = np.array([f(m) for m in np.linspace(a, b, Macros.unimodality_samples)])
        unimodal = count_local_maxima(samples) <= 1
        if not unimodal:
            logger.warning(f"sigma(u={u}, .) has several local maxima on (1, {mt.location:.6f})")
        # end if
    # end if
    return ExtremalResult(u=u, location=location, value=value, iterations=evaluations, converged=success, unimodal=unimodal)


def u_grid(u_min: float, u_max: float, u_step: float) -> List[float]:
    if u_step <= 0:
        LoggingUtils.log_and_raise(logger, f"u step must be positive, got {u_step}", EllipticDomainError)
    # end if
    count = int(math.floor((u_max - u_min) / u_step + 1e-9)) + 1
    return [round(u_min + i * u_step, 12) for i in range(count)]


def global_max(u_range: Tuple[float, float, float] = Macros.global_u_grid, refine: float = Macros.global_refine) -> GlobalMaximum:
    """Global maximum of sigma over u and m; it lies on the cut segment (1, 2)."""
    us = [u for u in u_grid(*u_range) if 0 < u < 1]
    if len(us) == 0:
        LoggingUtils.log_and_raise(logger, f"u grid {u_range} has no point in (0, 1)", EllipticDomainError)
    # end if
    coarse = [max_on_cut(u, check_unimodal=False) for u in us]
    best = max(coarse, key=lambda r: r.value)
    if best.value <= 1:
        return GlobalMaximum(best.u, 1.0, 1.0)
    # end if

    u, m = best.u, best.location
    step_u = u_range[2]
    for round_ in range(Macros.global_max_rounds):
        lo = max(0.5 + Macros.endpoint_offset, u - step_u)
        hi = min(1 - Macros.endpoint_offset, u + step_u)
        u_new, _, _, _ = maximize_1d(lambda x: sigma_on_cut(x, m), lo, hi)
        m_new = max_on_cut(u_new, check_unimodal=False).location
        du, dm = abs(u_new - u), abs(m_new - m)
        u, m = u_new, m_new
        logger.debug(f"global_max round {round_}: u={u:.10f} m={m:.10f} du={du:.2e} dm={dm:.2e}")
        if du < refine and dm < refine:
            break
        # end if
        step_u = max(4 * du, refine)
    else:
        logger.warning(f"global_max stopped after {Macros.global_max_rounds} rounds without reaching {refine}")
    # end for
    return GlobalMaximum(u, m, sigma(u, Parameter.create(m)).sigma)


def cut_profile(u: float, m_min: float, m_max: float, step: float) -> Tuple[np.ndarray, np.ndarray, str]:
    """sigma(u, m) along real m with a curvature report from second differences."""
    if step <= 0 or m_max <= m_min:
        LoggingUtils.log_and_raise(logger, f"profile needs m_min < m_max and step > 0, got {m_min}, {m_max}, {step}", EllipticDomainError)
    # end if
    count = int(math.floor((m_max - m_min) / step + 1e-9)) + 1
    ms = np.round(m_min + step * np.arange(count), 12)
    sigmas = np.array([sigma(u, Parameter.create(m)).sigma for m in ms])
    shape = "mixed"
    if len(ms) >= 3:
        # endpoints excluded: m = 1 is a limit point
        second = np.diff(sigmas[1:-1], 2) if len(ms) >= 5 else np.diff(sigmas, 2)
        tol = 1e-12
        if np.all(second >= -tol):
            shape = "convex"
        elif np.all(second <= tol):
            shape = "concave"
        # end if
    # end if
    return ms, sigmas, shape


def _maxima_row(u: float) -> Dict[str, float]:
    if u <= 0.5:
        return {"u": u, "m_tilde": math.nan, "m_star": 1.0, "sigma_star": 1.0}
    # end if
    res = max_on_cut(u, check_unimodal=False)
    return {"u": u, "m_tilde": m_tilde(u).location, "m_star": res.location, "sigma_star": res.value}


def maxima_curve(u_min: float, u_max: float, u_step: float, workers: int = 1) -> List[Dict[str, float]]:
    """Rows (u, m_tilde, m_star, sigma_star) over a u grid in (0, 1)."""
    us = u_grid(u_min, u_max, u_step)
    if any(not 0 < u < 1 for u in us):
        LoggingUtils.log_and_raise(logger, f"maxima grid must lie in (0, 1), got [{u_min}, {u_max}]", EllipticDomainError)
    # end if
    rows: List[Optional[Dict[str, float]]] = [None] * len(us)
    if workers > 1:
        with ProcessPoolExecutor(workers) as executor:
            futures = {executor.submit(_maxima_row, u): i for i, u in enumerate(us)}
            for f in tqdm(as_completed(futures), total=len(futures)):
                rows[futures[f]] = f.result()
            # end for
        # end with
    else:
        for i, u in enumerate(tqdm(us)):
            rows[i] = _maxima_row(u)
        # end for
    # end if
    return rows
