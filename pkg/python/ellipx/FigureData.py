from typing import *

from pathlib import Path

import pandas as pd
from seutil import IOUtils, LoggingUtils

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.data.results import RegionGrid
from ellipx.extremal.RegionScanner import RegionScanner
from ellipx.extremal.extremal import cut_profile, maxima_curve


class FigureData:
    """Writes the data behind the region, maxima and profile plots as CSV."""

    logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

    def __init__(self, out_dir: Optional[Path] = None):
        self.out_dir: Path = out_dir if out_dir is not None else Macros.figure_data_dir
        return

    def _path(self, out: Optional[Union[str, Path]], default_name: str) -> Path:
        path = Path(out) if out is not None else self.out_dir / default_name
        IOUtils.mk_dir(path.parent)
        return path

    @classmethod
    def write_csv(cls, df: pd.DataFrame, path: Path):
        df.to_csv(path, index=False, float_format=Macros.float_format)
        cls.logger.info(f"Wrote {len(df)} rows to {path}")
        return

    @classmethod
    def contour_path(cls, grid_path: Path) -> Path:
        return grid_path.with_name(f"{grid_path.stem}-contour{grid_path.suffix}")

    @classmethod
    def region_frames(cls, grid: RegionGrid) -> Tuple[pd.DataFrame, pd.DataFrame]:
        rows = [(x, y, grid.values[j, i]) for j, y in enumerate(grid.ys) for i, x in enumerate(grid.xs)]
        grid_df = pd.DataFrame(rows, columns=["re_m", "im_m", "sigma"])
        contour_rows = [(pid, k, v.real, v.imag) for pid, line in enumerate(grid.contour) for k, v in enumerate(line.vertices)]
        contour_df = pd.DataFrame(contour_rows, columns=["polyline_id", "vertex_index", "re_m", "im_m"])
        return grid_df, contour_df

    def region(self, u: float, window: Sequence[float], step: float, out: Optional[Union[str, Path]] = None,
               workers: int = 1) -> Tuple[Path, Path]:
        grid = RegionScanner(workers).scan(u, window, step)
        grid_df, contour_df = self.region_frames(grid)
        path = self._path(out, f"region-u{u}.csv")
        self.write_csv(grid_df, path)
        contour = self.contour_path(path)
        self.write_csv(contour_df, contour)
        return path, contour

    def maxima(self, u_min: float, u_max: float, u_step: float, out: Optional[Union[str, Path]] = None,
               workers: int = 1) -> Path:
        rows = maxima_curve(u_min, u_max, u_step, workers)
        path = self._path(out, "maxima.csv")
        self.write_csv(pd.DataFrame(rows, columns=["u", "m_tilde", "m_star", "sigma_star"]), path)
        return path

    def profile(self, u: float, m_min: float, m_max: float, step: float, out: Optional[Union[str, Path]] = None) -> Tuple[Path, str]:
        ms, sigmas, shape = cut_profile(u, m_min, m_max, step)
        self.logger.info(f"sigma(u={u}, m) on [{m_min}, {m_max}] is {shape}")
        path = self._path(out, f"profile-u{u}.csv")
        self.write_csv(pd.DataFrame({"m": ms, "sigma": sigmas}), path)
        return path, shape
