import numpy as np
import pytest

from ellipx.exceptions import EllipticDomainError
from ellipx.extremal.RegionScanner import RegionScanner, region_scan


def test_axis_is_exact_on_grid_points():
    np.testing.assert_array_equal(RegionScanner.axis(0, 1, 0.25), [0, 0.25, 0.5, 0.75, 1])
    assert 1.0 in RegionScanner.axis(0.9, 1.5, 0.05)


def test_trace_circle_gives_one_closed_loop():
    xs = np.linspace(-2, 2, 41)
    ys = np.linspace(-2, 2, 41)
    values = 2 - np.abs(xs[None, :] + 1j * ys[:, None])
    polylines = RegionScanner.trace(values, xs, ys, 1.0)
    assert len(polylines) == 1
    assert polylines[0].closed
    np.testing.assert_allclose(np.abs(polylines[0].vertices), 1, atol=0.01)


def test_trace_line_gives_one_open_chain():
    xs = np.linspace(-1, 1, 21)
    ys = np.linspace(0, 1, 11)
    values = np.tile(xs, (len(ys), 1))
    polylines = RegionScanner.trace(values, xs, ys, 0.05)
    assert len(polylines) == 1
    assert not polylines[0].closed
    assert len(polylines[0].vertices) == len(ys)
    np.testing.assert_allclose(polylines[0].vertices.real, 0.05, atol=1e-12)


def test_trace_without_crossing():
    xs = np.linspace(0, 1, 5)
    values = np.zeros((5, 5))
    assert RegionScanner.trace(values, xs, xs, 1.0) == []


def test_scan_validation():
    scanner = RegionScanner()
    with pytest.raises(EllipticDomainError):
        scanner.scan(1.2, [0, 1, 0, 1], 0.1)
    with pytest.raises(EllipticDomainError):
        scanner.scan(0.5, [0, 1, 0], 0.1)
    with pytest.raises(EllipticDomainError):
        scanner.scan(0.5, [1, 0, 0, 1], 0.1)
    with pytest.raises(EllipticDomainError):
        scanner.scan(0.5, [0, 1, 0, 1], 0)
    with pytest.raises(EllipticDomainError):
        scanner.scan(0.5, [0, 0.05, 0, 1], 0.1)


def test_no_contour_for_small_u():
    grid = region_scan(0.4, [0.5, 1.5, -0.5, 0.5], 0.1)
    assert grid.values.shape == (11, 11)
    assert grid.contour == []
    assert np.all(grid.values <= 1)


def test_contour_inside_the_lens():
    step = 0.05
    grid = region_scan(0.8, [0.9, 2.1, -0.6, 0.6], step)
    assert len(grid.contour) > 0
    for line in grid.contour:
        assert np.all(np.abs(line.vertices - 1) <= 1 + step)
        assert np.all(np.abs(line.vertices) >= 1 - step)
    # end for
    assert np.max(grid.values) > 1
