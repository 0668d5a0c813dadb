from typing import *

import os
from pathlib import Path


class Macros:
    this_dir: Path = Path(os.path.dirname(os.path.realpath(__file__)))
    python_dir: Path = this_dir.parent
    project_dir: Path = python_dir.parent

    config_dir: Path = python_dir / "configs"
    results_dir: Path = project_dir / "results"
    figure_data_dir: Path = results_dir / "figure-data"
    verify_dir: Path = results_dir / "verify"

    multi_processing = 8

    # Series and iteration caps
    agm_max_steps = 64
    theta_max_terms = 64
    fourier_terms = 20

    # Nome above which the evaluation route switches away from the direct series
    complementary_switch = 0.5
    theta_q_limit = 0.99
    fourier_q_limit = 0.9

    # Guards
    pole_tol = 1e-13
    denominator_floor = 1e-300

    # Root finding and maximization
    bisection_tol = 1e-12
    bisection_max_steps = 200
    mu_upper = 1.0 - 1e-14
    endpoint_offset = 1e-9
    golden_tol = 1e-7
    parabolic_tol = 1e-10
    unimodality_samples = 1000
    global_u_grid = (0.5, 1.0, 0.01)
    global_refine = 1e-6
    global_max_rounds = 50

    # Segment quadrature
    gauss_order = 16
    quad_rtol = 1e-12
    quad_max_panels = 2 ** 10

    # 17 significant digits, lowercase scientific, for CSV and JSON output
    float_format = "%.16e"

    cut_sides = ("above", "below")
    suites = ["identities", "theorem1", "inequalities", "asymptotics", "spectral"]
