"""Leading-order predictions for the elliptic functions near m = 0, m = 1 and m = infinity."""
from typing import *

import cmath
import math

from seutil import LoggingUtils

from ellipx.Environment import Environment
from ellipx.exceptions import EllipticDomainError

logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

# sn0, cn0, dn0: sn/cn/dn(K(m)u | m) as m -> 0
# sn1, cn1, dn1: the same functions as m -> 1, in powers of m1 = 1 - m
# sc0, nc0, dc0: sc/nc/dc(tau K(m) u | m) as m -> 0
ASYM_KINDS = ("sn0", "cn0", "dn0", "sn1", "cn1", "dn1", "sc0", "nc0", "dc0")


def asym_ref(which: str, u: float, m: complex) -> complex:
    if which not in ASYM_KINDS:
        LoggingUtils.log_and_raise(logger, f"Unknown asymptotic reference {which!r}", EllipticDomainError)
    # end if
    m = complex(m)
    m1 = 1 - m
    if which == "sn0":
        return complex(math.sin(math.pi * u / 2))
    elif which == "cn0":
        return complex(math.cos(math.pi * u / 2))
    elif which == "dn0":
        return 1 + 0j
    elif which == "sn1":
        return 1 - 2 ** (1 - 4 * u) * m1 ** u
    elif which == "cn1":
        return 2 ** (1 - 2 * u) * m1 ** (u / 2)
    elif which == "dn1":
        return 2 ** (1 - 2 * u) * m1 ** (u / 2)
    elif which == "sc0":
        return 1j - 1j * 2 ** (1 - 4 * u) * m ** u
    else:
        # nc0 and dc0 share the leading term
        return 2 ** (1 - 2 * u) * m ** (u / 2)
    # end if


def asym_correction(which: str, u: float, m: complex) -> complex:
    """The first m-dependent term of asym_ref, for ratio tests of the deficit."""
    m = complex(m)
    if which == "sn1":
        return 2 ** (1 - 4 * u) * (1 - m) ** u
    elif which == "sc0":
        return 2 ** (1 - 4 * u) * m ** u
    # end if
    return asym_ref(which, u, m)


def q_expansion(m: complex) -> complex:
    """Nome to second order in m."""
    return m / 16 + m * m / 32


def large_m_prediction(u: float, m: complex) -> complex:
    """Leading term of sn(K(m)u | m) as |m| -> infinity in the upper half-plane."""
    m = complex(m)
    return 1j * cmath.exp(-0.5j * math.pi * u) * 2 ** (2 * u - 1) * m ** ((u - 1) / 2)


def phi_limit(u: float) -> float:
    """Limit of phi(u, mu) as mu -> 1."""
    return math.tan(math.pi * u / 2) ** 2
