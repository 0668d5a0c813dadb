from typing import *

import cmath
import math

from seutil import LoggingUtils

from ellipx.Environment import Environment
from ellipx.exceptions import EllipticDomainError


class Parameter(NamedTuple):
    """A complex parameter m together with its region of the plane.

    Real m > 1 lies on the branch cut of K; such parameters carry the side
    (above/below) from which the cut is approached.
    """

    m: complex
    side: str = "none"
    regime: str = "unit_disk_interior"

    logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

    NONE = "none"
    ABOVE = "above"
    BELOW = "below"

    INTERIOR = "unit_disk_interior"
    UNIT_CIRCLE = "unit_circle"
    LENS = "lens"
    CUT = "cut"
    EXTERIOR = "exterior"
    ONE = "one"

    # |m| within this distance of 1 counts as the unit circle
    CIRCLE_TOL = 4 * 2.0 ** -52

    @classmethod
    def classify(cls, m: complex) -> str:
        if m == 1:
            return cls.ONE
        elif m.imag == 0 and m.real > 1:
            return cls.CUT
        # end if
        r = abs(m)
        if abs(r - 1) <= cls.CIRCLE_TOL:
            return cls.UNIT_CIRCLE
        elif r < 1:
            return cls.INTERIOR
        elif abs(m - 1) < 1:
            return cls.LENS
        else:
            return cls.EXTERIOR
        # end if

    @classmethod
    def create(cls, m: Union[complex, float], side: Optional[str] = None) -> "Parameter":
        m = complex(m)
        if not cmath.isfinite(m):
            LoggingUtils.log_and_raise(cls.logger, f"Parameter must be finite, got {m}", EllipticDomainError)
        # end if
        regime = cls.classify(m)
        if regime == cls.CUT:
            side = cls.ABOVE if side in (None, cls.NONE) else side
            if side not in (cls.ABOVE, cls.BELOW):
                LoggingUtils.log_and_raise(cls.logger, f"Unknown cut side {side!r}", EllipticDomainError)
            # end if
        else:
            if side not in (None, cls.NONE):
                LoggingUtils.log_and_raise(cls.logger, f"A cut side only applies to real m > 1, got m={m}", EllipticDomainError)
            # end if
            side = cls.NONE
        # end if
        return Parameter(m, side, regime)

    @property
    def m1(self) -> complex:
        return 1 - self.m

    @property
    def mu(self) -> complex:
        return 1 / self.m

    @property
    def mu1(self) -> complex:
        return 1 - 1 / self.m

    @property
    def is_real(self) -> bool:
        return self.m.imag == 0

    def conjugate(self) -> "Parameter":
        side = {self.ABOVE: self.BELOW, self.BELOW: self.ABOVE}.get(self.side, self.NONE)
        return Parameter.create(self.m.conjugate(), side)

    def in_closed_unit_disk(self) -> bool:
        return self.regime in (self.INTERIOR, self.UNIT_CIRCLE)

    def __str__(self):
        s = f"m={self.m.real:.6g}{self.m.imag:+.6g}j"
        return s if self.side == self.NONE else f"{s} ({self.side})"
