import math

import numpy as np
import pytest
from seutil import IOUtils

from ellipx.core.elliptic_core import complete_k
from ellipx.data.results import CheckReport
from ellipx.verify.Verifier import Verifier

SMALL = {
    "agm_samples": 40,
    "conjugate_samples": 20,
    "identity_samples": 40,
    "unit_circle_grid": 10,
    "connection_grid": 9,
    "oracle_angles": 3,
    "theorem1_samples": 200,
    "theorem1_real_m": [2.0, 50.0, 8.0],
    "lens_grid": 11,
    "lemma33_grid": [40, 11],
    "phi_u_grid": 5,
    "phi_mu_grid": 12,
}


@pytest.fixture
def verifier():
    return Verifier(dict(SMALL))


def test_config_overrides(verifier):
    assert verifier.config["agm_samples"] == 40
    assert verifier.config["tolerance"] == 1e-10


def test_report_builders():
    r = Verifier.error_report("s", "errors", [1e-12, 3e-11], 1e-10)
    assert r.passed and r.samples == 2 and r.max_error == 3e-11
    assert not Verifier.error_report("s", "nan", [math.nan], 1.0).passed
    assert not Verifier.bound_report("s", "bound", [0.5, 1.0], 1.0).passed
    assert Verifier.bound_report("s", "bound", [0.5, 0.99], 1.0).passed
    c = Verifier.count_report("s", "count", 2, 100)
    assert (c.max_error, c.tolerance, c.passed) == (2.0, 0.0, False)


def test_settles_treats_round_off_as_converged():
    assert Verifier.settles([1e-3, 1e-5, 1e-7])
    assert not Verifier.settles([1e-3, 1e-2])
    exact = [0.0, 8.9e-16, 6.7e-16, 4.4e-16]
    assert not Verifier.settles(exact)
    assert Verifier.settles(exact, 1e-12)
    assert Verifier.settles([1e-3, 1e-6, 3e-13, 9e-13], 1e-12)


def test_k_reference_near_the_cut():
    for m in [1.5 + 0.01j, 0.99 - 0.02j, 4 - 1e-6j]:
        np.testing.assert_allclose(Verifier.k_reference(m, 0.05), complete_k(m), rtol=1e-12)
    # end for
    np.testing.assert_allclose(Verifier.k_reference(-2 + 3j, 0.05), complete_k(-2 + 3j), rtol=1e-11)


def test_halton_points_respect_the_filter(verifier):
    points = verifier.halton_disk(50, 5.0, lambda m: abs(m) > 1)
    assert len(points) == 50
    assert all(1 < abs(m) <= 5.0 for m in points)
    assert points == verifier.halton_disk(50, 5.0, lambda m: abs(m) > 1)


def test_unknown_suite(verifier):
    with pytest.raises(ValueError):
        verifier.run(["nonsense"])


def test_dump(tmp_path):
    reports = [CheckReport(suite="a", check_name="b", samples=1, max_error=0.0, tolerance=0.0, passed=True)]
    Verifier.dump(reports, tmp_path / "report.json")
    assert IOUtils.load(tmp_path / "report.json") == [
        {"suite": "a", "check_name": "b", "samples": 1, "max_error": 0.0, "tolerance": 0.0, "pass": True}]
    assert '"max_error": 0.0000000000000000e+00' in (tmp_path / "report.json").read_text()


def test_identities_suite(verifier):
    reports = verifier.run(["identities"])
    names = {r.check_name for r in reports}
    assert {"agm_vs_quadrature", "cut_limit_continuity", "connection_formula", "modular_identity", "oracle.cut_continuation",
            "m_tilde_level_one"} <= names
    failed = [r.check_name for r in reports if not r.passed]
    assert failed == []


def test_inequalities_suite(verifier):
    reports = verifier.run(["inequalities"])
    assert all(r.passed for r in reports), [r.check_name for r in reports if not r.passed]


def test_asymptotics_suite(verifier):
    reports = verifier.run(["asymptotics"])
    assert all(r.passed for r in reports), [r.check_name for r in reports if not r.passed]


def test_theorem1_bounds(verifier):
    reports = {r.check_name: r for r in verifier.suite_theorem1()}
    for name in ("exterior_sigma_below_one", "real_cut_sigma_below_one", "lens_sigma_below_one", "sigma_at_one",
                 "cut_maxima", "global_max_sigma"):
        assert reports[name].passed, name
    # end for
    assert reports["exterior_sigma_below_one"].samples == 200 * 9


def test_ratio_checks_where_the_reference_is_exact():
    # dn(K/2 | m) = m1^(1/4) holds exactly, so deviations at u = 1/2 are round-off
    reports = Verifier(dict(SMALL, ratio_u=[0.5])).suite_asymptotics()
    ratios = [r for r in reports if r.check_name.startswith("ratio_")]
    assert len(ratios) == 6
    assert all(r.passed for r in ratios), [r.check_name for r in ratios if not r.passed]


def test_spectral_suite(verifier):
    reports = verifier.run(["spectral"])
    names = {r.check_name for r in reports}
    assert {"residual_first_row", "residual_interior_rows", "eigenvalue_lattice", "saddle_square_about_K",
            "segment_supremum"} <= names
    assert all(r.passed for r in reports), [r.check_name for r in reports if not r.passed]
