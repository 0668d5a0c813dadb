from typing import *

import numpy as np
from recordclass import RecordClass


class SigmaValue(NamedTuple):
    u: float
    m: complex
    sigma: float
    route: str

    THETA = "theta_quotient"
    CUT = "cut_formula"
    LIMIT = "limit_at_one"


class ExtremalResult(RecordClass):
    """A root m~(u) or a maximum m*(u) on the real axis."""

    u: float = None
    location: float = None
    value: float = None
    iterations: int = 0
    converged: bool = False
    unimodal: Optional[bool] = None


class GlobalMaximum(NamedTuple):
    u_star: float
    m_star: float
    sigma_star: float


class ContourPolyline(NamedTuple):
    vertices: np.ndarray  # complex m values
    closed: bool


class RegionGrid(RecordClass):
    u: float = None
    x_range: Tuple[float, float, float] = None
    y_range: Tuple[float, float, float] = None
    xs: np.ndarray = None
    ys: np.ndarray = None
    values: np.ndarray = None  # values[j, i] = sigma(u, xs[i] + 1j*ys[j])
    contour: List[ContourPolyline] = None


class QuadratureRule(NamedTuple):
    """Composite Gauss-Legendre rule on the segment t = 2K(m)s, s in [0, 1]."""

    order: int
    panels: int
    s: np.ndarray  # nodes in [0, 1]
    t: np.ndarray
    weights: np.ndarray

    @classmethod
    def create(cls, order: int, panels: int, K: complex) -> "QuadratureRule":
        x, w = np.polynomial.legendre.leggauss(order)
        edges = np.linspace(0.0, 1.0, panels + 1)
        half = (edges[1:] - edges[:-1]) / 2
        mid = (edges[1:] + edges[:-1]) / 2
        s = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        ws = (half[:, None] * w[None, :]).ravel()
        return QuadratureRule(order, panels, s, 2 * K * s, 2 * K * ws)

    @property
    def u(self) -> np.ndarray:
        """Argument in units of K(m)."""
        return 2 * self.s


class VSequence(NamedTuple):
    z: complex
    m: complex
    entries: np.ndarray  # v_1 .. v_{n_max}

    def v(self, n: int) -> complex:
        return complex(self.entries[n - 1])


class CheckReport(RecordClass):
    suite: str = None
    check_name: str = None
    samples: int = 0
    max_error: float = None
    tolerance: float = None
    passed: bool = False

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "check_name": self.check_name,
            "samples": self.samples,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
