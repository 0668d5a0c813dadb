from typing import *

import numpy as np

from ellipx.data.EllipticContext import EllipticContext


class JacobiTriple(NamedTuple):
    """sn, cn, dn at argument K(m)u; s, c, d may be numpy arrays when u is."""

    s: Union[complex, np.ndarray]
    c: Union[complex, np.ndarray]
    d: Union[complex, np.ndarray]
    u: Union[float, np.ndarray]
    ctx: EllipticContext

    def identity_errors(self) -> Tuple[float, float]:
        """Max deviation from s^2 + c^2 = 1 and d^2 + m s^2 = 1."""
        m = self.ctx.param.m
        e1 = np.max(np.abs(self.s ** 2 + self.c ** 2 - 1))
        e2 = np.max(np.abs(self.d ** 2 + m * self.s ** 2 - 1))
        return float(e1), float(e2)
