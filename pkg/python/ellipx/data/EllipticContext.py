from typing import *

from ellipx.data.Parameter import Parameter


class EllipticContext(NamedTuple):
    """K, K', tau and the nomes of one parameter, plus the evaluation route.

    `route` lists the transformations ("complement" for m -> 1-m, "reciprocal" for m -> 1/m)
    leading from `param.m` to `route_m`, the parameter whose theta series are summed.
    """

    param: Parameter
    K: complex
    Kprime: complex
    tau: complex
    q: complex
    q1: complex
    use_complementary: bool
    route: Tuple[str, ...] = ()
    route_m: complex = 0j
    route_K: complex = 0j
    route_tau: complex = 0j
    route_q: complex = 0j

    @property
    def m(self) -> complex:
        return self.param.m

    @property
    def is_limit(self) -> bool:
        return self.param.regime == Parameter.ONE
