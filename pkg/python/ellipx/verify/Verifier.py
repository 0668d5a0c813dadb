from typing import *

from concurrent.futures import ProcessPoolExecutor, as_completed
import cmath
import math
from pathlib import Path

import mpmath
import numpy as np
import scipy.special
from scipy.stats import qmc
from seutil import IOUtils, LoggingUtils
from tqdm import tqdm

from ellipx.Environment import Environment
from ellipx.Macros import Macros
from ellipx.Utils import Utils
from ellipx.core import asymptotics
from ellipx.core.elliptic_core import build_context, complete_k, complete_kprime, k_on_cut, theta
from ellipx.core.jacobi_fn import (jacobi_ratio, jacobi_triple, jacobi_zeta, sigma, sigma_squared_cut,
                                   sigma_squared_cut_alternative, sigma_squared_cut_simplified, sigma_value)
from ellipx.core.oracles import complete_k_quadrature, oracle_eval, zeta_quadrature
from ellipx.data.Parameter import Parameter
from ellipx.data.results import CheckReport
from ellipx.exceptions import UsageError
from ellipx.extremal.extremal import global_max, m_tilde, max_on_cut, phi
from ellipx.spectral import spectral_app


def max_sigma(u: float, ms: Sequence[complex]) -> float:
    return max(sigma_value(u, m) for m in ms)


def _complex(value) -> complex:
    if isinstance(value, dict):
        return complex(value["re"], value["im"])
    # end if
    return complex(value)


class Verifier:
    """Runs the numerical checks of the library, grouped into suites.

    For identity checks max_error is the largest deviation and tolerance its bound. For bound
    checks (sigma < 1) max_error is the worst observed value. For counting checks it is the
    number of violations and tolerance is 0.
    """

    logger = LoggingUtils.get_logger(__name__, LoggingUtils.DEBUG if Environment.is_debug else LoggingUtils.INFO)

    def __init__(self, config: Optional[dict] = None, workers: int = 1):
        self.config = IOUtils.load(Macros.config_dir / "verify.json")
        if config is not None:
            self.config.update(config)
        # end if
        self.workers = workers
        self.rng = np.random.default_rng(Environment.random_seed)
        return

    def run(self, suites: Sequence[str]) -> List[CheckReport]:
        if "all" in suites:
            suites = Macros.suites
        # end if
        reports: List[CheckReport] = []
        for suite in suites:
            if suite not in Macros.suites:
                LoggingUtils.log_and_raise(self.logger, f"Unknown suite {suite!r}; expected one of {Macros.suites} or all", UsageError)
            # end if
            self.logger.info(f"Running suite {suite}")
            suite_reports = getattr(self, f"suite_{suite}")()
            for r in suite_reports:
                self.logger.info(f"[{'PASS' if r.passed else 'FAIL'}] {r.suite}.{r.check_name}: max_error={r.max_error} (tolerance {r.tolerance}, {r.samples} samples)")
            # end for
            reports.extend(suite_reports)
        # end for
        return reports

    @classmethod
    def dump(cls, reports: List[CheckReport], path: Path):
        Utils.dump_json(Path(path), [r.to_json() for r in reports])
        return

    # Report builders
    @classmethod
    def settles(cls, deviations: Sequence[float], floor: float = 0.0) -> bool:
        """True when the deviations never grow; values below floor count as converged."""
        clipped = [max(float(d), floor) for d in deviations]
        return all(b <= a for a, b in zip(clipped, clipped[1:]))

    @classmethod
    def error_report(cls, suite: str, name: str, errors: Sequence[float], tolerance: float) -> CheckReport:
        errors = np.asarray(errors, dtype=float)
        worst = float(np.max(errors)) if len(errors) > 0 else 0.0
        passed = bool(np.all(np.isfinite(errors)) and worst <= tolerance)
        return CheckReport(suite=suite, check_name=name, samples=len(errors), max_error=worst, tolerance=tolerance, passed=passed)

    @classmethod
    def bound_report(cls, suite: str, name: str, values: Sequence[float], bound: float) -> CheckReport:
        values = np.asarray(values, dtype=float)
        worst = float(np.max(values))
        passed = bool(np.all(np.isfinite(values)) and worst < bound)
        return CheckReport(suite=suite, check_name=name, samples=len(values), max_error=worst, tolerance=bound, passed=passed)

    @classmethod
    def count_report(cls, suite: str, name: str, violations: int, samples: int) -> CheckReport:
        return CheckReport(suite=suite, check_name=name, samples=samples, max_error=float(violations), tolerance=0.0, passed=violations == 0)

    def halton_disk(self, count: int, radius: float, keep: Callable[[complex], bool]) -> List[complex]:
        """Quasi-random points in |m| <= radius accepted by keep."""
        sampler = qmc.Halton(d=2, scramble=False)
        points: List[complex] = []
        while len(points) < count:
            batch = sampler.random(max(count, 64))
            for a, b in batch:
                m = radius * math.sqrt(a) * cmath.exp(2j * math.pi * b)
                if keep(m):
                    points.append(m)
                    if len(points) == count:
                        break
                    # end if
                # end if
            # end for
        # end while
        return points

    @classmethod
    def k_reference(cls, m: complex, strip: float) -> complex:
        """Independent K(m): adaptive quadrature, or mpmath inside the strip around [1 - strip, inf)."""
        if abs(m.imag) < strip and m.real > 1 - strip:
            with mpmath.workdps(30):
                return complex(mpmath.ellipk(mpmath.mpc(m.real, m.imag)))
            # end with
        # end if
        return complete_k_quadrature(m)

    def _unit_circle_angles(self, include_end: bool = True) -> np.ndarray:
        n = self.config["unit_circle_grid"]
        angles = np.pi / 4 * np.arange(1, n + 1) / n
        return angles if include_end else angles[:-1]

    # Suites
    def suite_identities(self) -> List[CheckReport]:
        suite = "identities"
        cfg = self.config
        tol = cfg["tolerance"]
        reports = []

        # AGM against the defining integral
        ms = self.halton_disk(cfg["agm_samples"], cfg["agm_radius"],
                              lambda m: m != 0 and not (m.imag == 0 and m.real >= 1))
        k_errors, q_values = [], []
        for m in tqdm(ms):
            k = complete_k(m)
            k_errors.append(abs(k - self.k_reference(m, cfg["agm_cut_strip"])) / abs(k))
            q_values.append(abs(build_context(Parameter.create(m)).q))
        # end for
        reports.append(self.error_report(suite, "agm_vs_quadrature", k_errors, cfg["agm_tolerance"]))
        reports.append(self.bound_report(suite, "nome_inside_unit_disk", q_values, 1.0))

        # K(x +/- i delta) approaches the one-sided limits on the cut
        errors = []
        for x in np.linspace(1.05, 9.95, cfg["connection_grid"]):
            for side, sign in ((Parameter.ABOVE, 1), (Parameter.BELOW, -1)):
                limit = k_on_cut(float(x), side)
                errors.append(abs(complete_k(complex(x, sign * cfg["cut_limit_offset"])) - limit) / abs(limit))
            # end for
        # end for
        reports.append(self.error_report(suite, "cut_limit_continuity", errors, tol))

        # connection formula K(1/m) = m^(1/2) [K(m) -/+ i K'(m)] on both sides of the cut
        errors = []
        for m in np.linspace(1.05, 9.95, cfg["connection_grid"]):
            for side, sign in ((Parameter.ABOVE, -1), (Parameter.BELOW, 1)):
                ctx = build_context(Parameter.create(m, side))
                lhs = complete_k(1 / m)
                errors.append(abs(lhs - math.sqrt(m) * (ctx.K + sign * 1j * ctx.Kprime)) / abs(lhs))
            # end for
        # end for
        reports.append(self.error_report(suite, "connection_formula", errors, tol))

        # K and K' on the unit circle
        errors_k, errors_kp = [], []
        for theta_ in self._unit_circle_angles():
            m = cmath.exp(4j * theta_)
            c2, s2 = math.cos(theta_) ** 2, math.sin(theta_) ** 2
            rhs = 0.5 * cmath.exp(-1j * theta_) * (scipy.special.ellipk(c2) + 1j * scipy.special.ellipk(s2))
            errors_k.append(abs(complete_k(m) - rhs))
            if theta_ < math.pi / 4:
                errors_kp.append(abs(complete_kprime(m) - cmath.exp(-1j * theta_) * scipy.special.ellipk(s2)))
            # end if
        # end for
        reports.append(self.error_report(suite, "unit_circle_K", errors_k, tol))
        reports.append(self.error_report(suite, "unit_circle_Kprime", errors_kp, tol))

        # modular identity m = (theta2(0) / theta3(0))^4
        errors = []
        for m in self.halton_disk(cfg["conjugate_samples"], 0.95, lambda m: m != 0):
            q = build_context(Parameter.create(m)).q
            errors.append(abs((theta(2, 0, q) / theta(3, 0, q)) ** 4 - m))
        # end for
        reports.append(self.error_report(suite, "modular_identity", errors, tol))

        # conjugation symmetry
        errors = []
        for m in self.halton_disk(cfg["conjugate_samples"], cfg["agm_radius"], lambda m: abs(m.imag) > 1e-3):
            ctx, ctx_bar = build_context(Parameter.create(m)), build_context(Parameter.create(m.conjugate()))
            s = jacobi_triple(0.37, ctx).s
            s_bar = jacobi_triple(0.37, ctx_bar).s
            errors.append(max(abs(ctx_bar.q - ctx.q.conjugate()),
                              abs(ctx_bar.K - ctx.K.conjugate()) / abs(ctx.K),
                              abs(s_bar - s.conjugate())))
        # end for
        reports.append(self.error_report(suite, "conjugation_symmetry", errors, 1e-12))

        # fundamental identities on random points off the cut
        errors = []
        for _ in range(cfg["identity_samples"]):
            u = float(self.rng.uniform(0, 1))
            m = complex(*self.rng.uniform(-10, 10, 2))
            e1, e2 = jacobi_triple(u, build_context(Parameter.create(m))).identity_errors()
            errors.append(max(e1, e2))
        # end for
        reports.append(self.error_report(suite, "fundamental_identities", errors, tol))

        # oracle identities
        us = cfg["oracle_u"]
        n_angles = cfg["oracle_angles"]
        circle = [oracle_eval("unit_circle_sn2", u, math.pi / 4 * k / n_angles) for k in range(1, n_angles + 1) for u in us]
        reports.append(self.error_report(suite, "oracle.unit_circle_sn2", [abs(l - r) for l, r in circle], tol))
        boundary = [oracle_eval("d1_boundary_sn4", u, -math.pi / 4 * k / n_angles) for k in range(1, n_angles + 1) for u in us]
        reports.append(self.error_report(suite, "oracle.d1_boundary_sn4", [abs(l - r) for l, r in boundary], tol))
        landen = [oracle_eval("landen_recursion", u, m) for m in cfg["landen_m"] for u in us]
        reports.append(self.error_report(suite, "oracle.landen_recursion", [abs(l - r) for l, r in landen], tol))
        for kind in ("sc", "nc", "dc"):
            pairs = [oracle_eval(f"fourier_ratio_{kind}", u, _complex(m)) for m in cfg["fourier_m"] for u in us]
            reports.append(self.error_report(suite, f"oracle.fourier_ratio_{kind}", [abs(l - r) for l, r in pairs], tol))
        # end for
        errors = []
        for m in cfg["cut_m"]:
            for u in us:
                above_l, above_r = oracle_eval("cut_continuation", u, Parameter.create(m, Parameter.ABOVE))
                below_l, below_r = oracle_eval("cut_continuation", u, Parameter.create(m, Parameter.BELOW))
                errors.append(max(abs(above_l - above_r), abs(below_l - below_r), abs(above_l - below_l.conjugate()),
                                  abs(abs(above_l) ** 2 - sigma_squared_cut(u, m))))
            # end for
        # end for
        reports.append(self.error_report(suite, "oracle.cut_continuation", errors, tol))

        # equivalent forms of |sn|^2 on the cut
        errors_simple, errors_alt = [], []
        for m in np.linspace(1.05, 1.95, 19):
            for u in us:
                ref = sigma_squared_cut(u, m)
                errors_simple.append(abs(sigma_squared_cut_simplified(u, m) - ref))
                errors_alt.append(abs(sigma_squared_cut_alternative(u, m) - ref))
            # end for
        # end for
        reports.append(self.error_report(suite, "cut_formula_simplified", errors_simple, tol))
        reports.append(self.error_report(suite, "cut_formula_alternative", errors_alt, tol))

        # sigma(u, m~(u)) = 1
        errors = [abs(sigma_value(u, m_tilde(u).location) - 1) for u in cfg["mtilde_u"]]
        reports.append(self.error_report(suite, "m_tilde_level_one", errors, 1e-8))

        # Jacobi zeta against E(am) - (E/K) K u
        errors = []
        for m in (0.2, 0.5, 0.8):
            ctx = build_context(Parameter.create(m))
            for u in list(us) + [1.0]:
                errors.append(abs(jacobi_zeta(u, ctx) - zeta_quadrature(u, m)))
            # end for
        # end for
        reports.append(self.error_report(suite, "zeta_vs_quadrature", errors, tol))
        return reports

    def suite_theorem1(self) -> List[CheckReport]:
        suite = "theorem1"
        cfg = self.config
        us = cfg["theorem1_u"]
        reports = []

        exterior = self.halton_disk(cfg["theorem1_samples"], cfg["theorem1_radius"],
                                    lambda m: abs(m) > 1 and abs(m - 1) > 1)
        lo, hi, step = cfg["theorem1_real_m"]
        real_cut = list(np.arange(lo, hi + step / 2, step))
        maxima = self._max_sigma_per_u(us, exterior)
        reports.append(self.bound_report(suite, "exterior_sigma_below_one", maxima, 1.0))
        reports[-1].samples = len(exterior) * len(us)
        maxima = self._max_sigma_per_u(us, real_cut)
        reports.append(self.bound_report(suite, "real_cut_sigma_below_one", maxima, 1.0))
        reports[-1].samples = len(real_cut) * len(us)

        # lens D1 \ D for u <= 1/2, including the cut segment (1, 2)
        n = cfg["lens_grid"]
        lens = [complex(x, y) for x in np.linspace(0, 2, n) for y in np.linspace(-1, 1, n)
                if abs(complex(x, y) - 1) < 1 and abs(complex(x, y)) > 1]
        small_u = [u for u in us if u <= 0.5]
        maxima = self._max_sigma_per_u(small_u, lens)
        reports.append(self.bound_report(suite, "lens_sigma_below_one", maxima, 1.0))
        reports[-1].samples = len(lens) * len(small_u)

        errors = [abs(sigma(u, Parameter.create(1)).sigma - 1) for u in us]
        reports.append(self.error_report(suite, "sigma_at_one", errors, 0.0))

        violations = 0
        for u in cfg["cut_max_u"]:
            res = max_on_cut(u)
            if u <= 0.5:
                ok = res.location == 1 and res.value == 1
            else:
                ok = 1 < res.location < m_tilde(u).location < 2 and res.value > 1 and res.unimodal
            # end if
            if not ok:
                self.logger.warning(f"cut maximum at u={u} violates the expected shape: {res}")
                violations += 1
            # end if
        # end for
        reports.append(self.count_report(suite, "cut_maxima", violations, len(cfg["cut_max_u"])))

        gm = global_max()
        expected, tols = cfg["global_max_expected"], cfg["global_max_tolerance"]
        for name, value, e, t in zip(("global_max_u", "global_max_m", "global_max_sigma"), gm, expected, tols):
            reports.append(self.error_report(suite, name, [abs(value - e)], t))
        # end for
        return reports

    def _max_sigma_per_u(self, us: Sequence[float], ms: Sequence[complex]) -> List[float]:
        results: List[Optional[float]] = [None] * len(us)
        if self.workers > 1:
            with ProcessPoolExecutor(self.workers) as executor:
                futures = {executor.submit(max_sigma, u, ms): i for i, u in enumerate(us)}
                for f in tqdm(as_completed(futures), total=len(futures)):
                    results[futures[f]] = f.result()
                # end for
            # end with
        else:
            for i, u in enumerate(tqdm(us)):
                results[i] = max_sigma(u, ms)
            # end for
        # end if
        return results

    def suite_inequalities(self) -> List[CheckReport]:
        suite = "inequalities"
        cfg = self.config
        reports = []

        # 4 d^2 (1 + c) - s^2 (1 - c) > 0 on (0, 2K) x [0, 1/2]
        nx, nm = cfg["lemma33_grid"]
        u = 2 * np.arange(1, nx + 1) / (nx + 1)
        violations = 0
        for m in np.linspace(0, 0.5, nm):
            t = jacobi_triple(u, build_context(Parameter.create(m)))
            s, c, d = t.s.real, t.c.real, t.d.real
            violations += int(np.sum(4 * d * d * (1 + c) - s * s * (1 - c) <= 0))
        # end for
        reports.append(self.count_report(suite, "half_angle_positivity", violations, nx * nm))

        # phi(u, .) strictly increasing
        violations = 0
        us = np.linspace(0.1, 0.9, cfg["phi_u_grid"])
        mus = np.linspace(0.02, 0.98, cfg["phi_mu_grid"])
        for u in us:
            values = np.array([phi(u, mu) for mu in mus])
            violations += int(np.sum(np.diff(values) <= 0))
        # end for
        reports.append(self.count_report(suite, "phi_increasing", violations, len(us) * len(mus)))

        # d/dmu dc(K(mu)u | mu) = -s z / (2 mu c^2)
        h = cfg["derivative_step"]
        errors, zeta_values = [], []
        for u in cfg["derivative_grid"]:
            for mu in cfg["derivative_grid"]:
                ctx = build_context(Parameter.create(mu))
                t = jacobi_triple(u, ctx)
                z = jacobi_zeta(u, ctx)
                zeta_values.append(z)
                analytic = -(t.s * z / (2 * mu * t.c ** 2)).real
                fd = (jacobi_ratio("dc", u, build_context(Parameter.create(mu + h))) -
                      jacobi_ratio("dc", u, build_context(Parameter.create(mu - h)))).real / (2 * h)
                errors.append(abs(fd - analytic))
            # end for
        # end for
        reports.append(self.error_report(suite, "dc_parameter_derivative", errors, cfg["derivative_tolerance"]))
        reports.append(self.count_report(suite, "zeta_positive", sum(1 for z in zeta_values if z <= 0), len(zeta_values)))
        return reports

    def suite_asymptotics(self) -> List[CheckReport]:
        suite = "asymptotics"
        cfg = self.config
        offsets = cfg["ratio_offsets"]
        reports = []

        def sequences(which: str, u: float) -> List[float]:
            ratios = []
            for t in offsets:
                if which.endswith("1"):
                    triple = jacobi_triple(u, build_context(Parameter.create(1 - t)))
                    value = {"sn1": 1 - triple.s, "cn1": triple.c, "dn1": triple.d}[which]
                else:
                    ctx = build_context(Parameter.create(t))
                    kind = which[:2]
                    value = jacobi_ratio(kind, u, ctx, at_tau=True)
                    value = 1j - value if kind == "sc" else value
                # end if
                reference = asymptotics.asym_correction(which, u, 1 - t if which.endswith("1") else t)
                if which == "sc0":
                    reference = 1j * reference
                # end if
                ratios.append(abs(value / reference - 1))
            # end for
            return ratios

        for which in ("sn1", "cn1", "dn1", "sc0", "nc0", "dc0"):
            finals, monotone = [], True
            for u in cfg["ratio_u"]:
                deviations = sequences(which, u)
                monotone = monotone and self.settles(deviations, cfg["ratio_floor"])
                finals.append(deviations[-1])
            # end for
            report = self.error_report(suite, f"ratio_{which}", finals, cfg["ratio_tolerance"])
            report.passed = report.passed and monotone
            reports.append(report)
        # end for

        m = cfg["q_expansion_m"]
        q = build_context(Parameter.create(m)).q
        reports.append(self.error_report(suite, "q_expansion", [abs(q / asymptotics.q_expansion(m) - 1)], cfg["q_expansion_tolerance"]))

        lo, hi = cfg["large_m_bounds"]
        ratios = []
        for radius in cfg["large_m_radii"]:
            m = radius * cmath.exp(1j * math.pi / 3)
            for u in cfg["ratio_u"]:
                s = sigma_value(u, m)
                ratios.append(s * abs(m) ** ((1 - u) / 2) / 2 ** (2 * u - 1))
            # end for
        # end for
        report = CheckReport(suite=suite, check_name="large_m_decay", samples=len(ratios), max_error=float(max(ratios)),
                             tolerance=hi, passed=bool(lo <= min(ratios) and max(ratios) <= hi))
        reports.append(report)

        mu = 1 - cfg["phi_limit_offset"]
        errors = [abs(phi(u, mu) - asymptotics.phi_limit(u)) for u in cfg["phi_limit_u"]]
        reports.append(self.error_report(suite, "phi_limit", errors, cfg["phi_limit_tolerance"]))
        return reports

    def suite_spectral(self) -> List[CheckReport]:
        suite = "spectral"
        cfg = self.config
        reports = []

        k, z = _complex(cfg["residual_k"]), _complex(cfg["residual_z"])
        rows, rhs = spectral_app.jacobi_residual(k, z, cfg["residual_n_max"])
        reports.append(self.error_report(suite, "residual_first_row", [abs(rows[0] - rhs)], cfg["residual_tolerance"]))
        reports.append(self.error_report(suite, "residual_interior_rows", np.abs(rows[1:]), cfg["residual_tolerance"]))

        k = cfg["eigen_k"]
        K = build_context(Parameter.create(k * k)).K.real
        ev = spectral_app.truncated_eigenvalues(k, cfg["eigen_n_max"])
        targets = [sign * j * math.pi / (2 * K) for j in (1, 3) for sign in (1, -1)]
        errors = [float(np.min(np.abs(ev - t))) for t in targets]
        reports.append(self.error_report(suite, "eigenvalue_lattice", errors, cfg["eigen_tolerance"]))

        m = Parameter.create(cfg["asymptotic_m"])
        z = cfg["asymptotic_z"]
        ls = cfg["asymptotic_l"]
        for kind in ("D", "C"):
            deviations = [abs(spectral_app.asymptotic_cd_ratio(kind, l, z, m) - 1) for l in ls]
            monotone = self.settles(deviations)
            if kind == "D":
                report = self.error_report(suite, "d_integral_asymptotics", [deviations[-1]], cfg["asymptotic_tolerance"])
                report.passed = report.passed and monotone
            else:
                report = CheckReport(suite=suite, check_name="c_integral_trend", samples=len(ls), max_error=deviations[-1],
                                     tolerance=deviations[0], passed=monotone)
            # end if
            reports.append(report)
        # end for

        for f_id in spectral_app.SADDLE_KINDS:
            deviations = [abs(r - 1) for _, r in spectral_app.saddle_check(f_id, m, ls)]
            monotone = self.settles(deviations)
            reports.append(CheckReport(suite=suite, check_name=f"saddle_{f_id}", samples=len(ls), max_error=deviations[-1],
                                       tolerance=cfg["asymptotic_tolerance"],
                                       passed=monotone and deviations[-1] <= cfg["asymptotic_tolerance"]))
        # end for
        quarter = spectral_app.saddle_check("const_one", Parameter.create(0.25), ls)
        half = spectral_app.saddle_check("const_one", m, ls)
        reports.append(self.error_report(suite, "saddle_parameter_scaling", [abs(quarter[-1][1] / half[-1][1] - 1)], cfg["asymptotic_tolerance"]))

        errors = []
        step = 2 / (cfg["segment_samples"] - 1)
        for value in cfg["segment_m"]:
            u_max, s_max = spectral_app.segment_sup(Parameter.create(_complex(value)), cfg["segment_samples"])
            errors.append(max(abs(s_max - 1), 0.0 if abs(u_max - 1) <= step else math.inf))
        # end for
        reports.append(self.error_report(suite, "segment_supremum", errors, 1e-10))
        return reports
