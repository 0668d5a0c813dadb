from typing import *

from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor, as_completed
import math

import numpy as np
from seutil import LoggingUtils
from tqdm import tqdm

from ellipx.Environment import Environment
from ellipx.core.jacobi_fn import sigma
from ellipx.data.Parameter import Parameter
from ellipx.data.results import ContourPolyline, RegionGrid
from ellipx.exceptions import EllipticDomainError

EdgeId = Tuple[str, int, int]

# Edges of a cell as pairs of corners; corners are numbered
# 0 = (i, j), 1 = (i+1, j), 2 = (i+1, j+1), 3 = (i, j+1)
CELL_EDGES = [(0, 1), (1, 2), (3, 2), (0, 3)]
# The two edges adjacent to each corner
CORNER_EDGES = {0: (3, 0), 1: (0, 1), 2: (1, 2), 3: (2, 3)}


def sigma_row(u: float, xs: np.ndarray, y: float) -> np.ndarray:
    return np.array([sigma(u, Parameter.create(complex(x, y))).sigma for x in xs])


class RegionScanner:
    """Samples sigma(u, .) on a rectangle of the m-plane and traces the level set sigma = 1."""

    logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

    LEVEL = 1.0

    def __init__(self, workers: int = 1):
        self.workers = workers
        return

    @classmethod
    def axis(cls, lo: float, hi: float, step: float) -> np.ndarray:
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        # rounding keeps grid points such as 0 and 1 exact
        return np.round(lo + step * np.arange(count), 12)

    def scan(self, u: float, window: Sequence[float], step: float) -> RegionGrid:
        if not 0 < u < 1:
            LoggingUtils.log_and_raise(self.logger, f"region scan needs u in (0, 1), got {u}", EllipticDomainError)
        # end if
        if len(window) != 4:
            LoggingUtils.log_and_raise(self.logger, f"window must be x0,x1,y0,y1, got {window}", EllipticDomainError)
        # end if
        x0, x1, y0, y1 = (float(w) for w in window)
        if not step > 0 or not x1 > x0 or not y1 > y0 or not all(map(math.isfinite, (x0, x1, y0, y1))):
            LoggingUtils.log_and_raise(self.logger, f"degenerate window {window} or step {step}", EllipticDomainError)
        # end if
        xs, ys = self.axis(x0, x1, step), self.axis(y0, y1, step)
        if len(xs) < 2 or len(ys) < 2:
            LoggingUtils.log_and_raise(self.logger, f"window {window} is smaller than one cell of size {step}", EllipticDomainError)
        # end if

        values = np.zeros((len(ys), len(xs)))
        if self.workers > 1:
            with ProcessPoolExecutor(self.workers) as executor:
                futures = {executor.submit(sigma_row, u, xs, y): j for j, y in enumerate(ys)}
                for f in tqdm(as_completed(futures), total=len(futures)):
                    values[futures[f]] = f.result()
                # end for
            # end with
        else:
            for j, y in enumerate(tqdm(ys)):
                values[j] = sigma_row(u, xs, y)
            # end for
        # end if

        contour = self.trace(values, xs, ys, self.LEVEL)
        self.logger.info(f"u={u}: {len(xs)}x{len(ys)} grid, {len(contour)} polylines at sigma={self.LEVEL}")
        return RegionGrid(u=u, x_range=(x0, x1, step), y_range=(y0, y1, step), xs=xs, ys=ys, values=values, contour=contour)

    @classmethod
    def trace(cls, values: np.ndarray, xs: np.ndarray, ys: np.ndarray, level: float) -> List[ContourPolyline]:
        """Marching squares on values[j, i] with linear interpolation along cell edges."""
        inside = values > level
        points: Dict[EdgeId, complex] = {}
        neighbors: Dict[EdgeId, List[EdgeId]] = defaultdict(list)

        def edge_id(i: int, j: int, k: int) -> EdgeId:
            return [("h", i, j), ("v", i + 1, j), ("h", i, j + 1), ("v", i, j)][k]

        for j in range(len(ys) - 1):
            for i in range(len(xs) - 1):
                corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
                flags = [inside[cj, ci] for ci, cj in corners]
                if all(flags) or not any(flags):
                    continue
                # end if
                crossed = [k for k, (a, b) in enumerate(CELL_EDGES) if flags[a] != flags[b]]
                for k in crossed:
                    eid = edge_id(i, j, k)
                    if eid not in points:
                        (ai, aj), (bi, bj) = corners[CELL_EDGES[k][0]], corners[CELL_EDGES[k][1]]
                        va, vb = values[aj, ai], values[bj, bi]
                        t = min(max((level - va) / (vb - va), 0.0), 1.0)
                        pa, pb = complex(xs[ai], ys[aj]), complex(xs[bi], ys[bj])
                        points[eid] = pa + t * (pb - pa)
                    # end if
                # end for
                if len(crossed) == 2:
                    segments = [tuple(crossed)]
                else:
                    # saddle: the center value decides which diagonal pair is connected
                    center_inside = np.mean([values[cj, ci] for ci, cj in corners]) > level
                    isolated = (1, 3) if center_inside == flags[0] else (0, 2)
                    segments = [CORNER_EDGES[c] for c in isolated]
                # end if
                for ka, kb in segments:
                    ea, eb = edge_id(i, j, ka), edge_id(i, j, kb)
                    neighbors[ea].append(eb)
                    neighbors[eb].append(ea)
                # end for
            # end for
        # end for
        return cls.link(points, neighbors)

    @classmethod
    def link(cls, points: Dict[EdgeId, complex], neighbors: Dict[EdgeId, List[EdgeId]]) -> List[ContourPolyline]:
        """Chains segments sharing an edge point into polylines; open chains first, then loops."""
        visited: Set[EdgeId] = set()
        polylines: List[ContourPolyline] = []

        def walk(start: EdgeId) -> List[EdgeId]:
            chain = [start]
            visited.add(start)
            prev, cur = None, start
            while True:
                nxt = [n for n in neighbors[cur] if n != prev and n not in visited]
                if len(nxt) == 0:
                    return chain
                # end if
                prev, cur = cur, nxt[0]
                visited.add(cur)
                chain.append(cur)
            # end while

        for start in sorted(e for e in neighbors if len(neighbors[e]) == 1):
            if start not in visited:
                chain = walk(start)
                polylines.append(ContourPolyline(np.array([points[e] for e in chain]), False))
            # end if
        # end for
        for start in sorted(neighbors):
            if start not in visited:
                chain = walk(start)
                polylines.append(ContourPolyline(np.array([points[e] for e in chain]), True))
            # end if
        # end for
        return polylines


def region_scan(u: float, window: Sequence[float], step: float, workers: int = 1) -> RegionGrid:
    return RegionScanner(workers).scan(u, window, step)
