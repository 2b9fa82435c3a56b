"""Tests for positivity-domain scans, fixed lines, and CSV export."""

import math

import numpy as np
import pytest

from ncpmaps.channels import superop_from_choi
from ncpmaps.domain import (
    FixedLine,
    GridSpec,
    MonteCarloSpec,
    _symmetric_axis,
    detect_fixed_lines,
    export_domain,
    read_domain_csv,
    scan_domain,
)
from ncpmaps.families import (
    DephasingModel,
    bncp_example,
    cnot_intermediate_map,
    dephasing_intermediate,
    dephasing_map,
)

IDENTITY = np.eye(4, dtype=complex)


def bncp_superop():
    return superop_from_choi(bncp_example())


class TestScanDomain:
    def test_identity_grid_full(self):
        report = scan_domain(IDENTITY, GridSpec(resolution=9))
        assert report.summary.fraction == 1.0

    def test_identity_montecarlo_full(self):
        report = scan_domain(IDENTITY, MonteCarloSpec(n=500, seed=0))
        assert report.summary.fraction == 1.0

    def test_reference_ncp_fraction_strictly_between(self):
        report = scan_domain(bncp_superop(), MonteCarloSpec(n=5000, seed=0))
        assert 0.0 < report.summary.fraction < 1.0

    def test_reference_points_verdicts(self):
        # axis endpoints are lattice points, so a grid scan pins the verdicts
        report = scan_domain(bncp_superop(), GridSpec(resolution=9))
        by_point = {pt.bloch: pt for pt in report.points}
        assert by_point[(1.0, 0.0, 0.0)].in_domain is False
        assert by_point[(0.0, 0.0, 0.0)].in_domain is True

    def test_singular_map_fraction_zero_with_line_witnesses(self):
        report = scan_domain(cnot_intermediate_map(math.pi / 4), MonteCarloSpec(n=2000, seed=1))
        assert report.summary.fraction == 0.0
        assert all(pt.divergent for pt in report.points)
        assert report.fixed_lines == (FixedLine(kind="axis", direction=(1.0, 0.0, 0.0)),)
        assert report.line_points and all(pt.in_domain for pt in report.line_points)

    def test_unital_origin_always_in_domain(self):
        for superop in (bncp_superop(), cnot_intermediate_map(0.6)):
            report = scan_domain(superop, GridSpec(resolution=9))
            by_point = {pt.bloch: pt for pt in report.points}
            assert by_point[(0.0, 0.0, 0.0)].in_domain

    def test_grid_verdicts_symmetric_under_negation(self):
        report = scan_domain(bncp_superop(), GridSpec(resolution=10))
        verdicts = {pt.bloch: pt.in_domain for pt in report.points}
        for (a1, a2, a3), flag in verdicts.items():
            assert verdicts[(-a1, -a2, -a3)] == flag

    def test_monotone_refinement(self):
        small = scan_domain(bncp_superop(), MonteCarloSpec(n=400, seed=3))
        large = scan_domain(bncp_superop(), MonteCarloSpec(n=800, seed=3))
        assert small.points == large.points[:400]

    def test_grid_resolution_floor(self):
        with pytest.raises(ValueError):
            scan_domain(IDENTITY, GridSpec(resolution=4))

    def test_bad_spec_type(self):
        with pytest.raises(TypeError):
            scan_domain(IDENTITY, "grid")


class TestSymmetricAxis:
    @pytest.mark.parametrize("res", [8, 9, 32, 33])
    def test_closed_under_negation(self, res):
        axis = _symmetric_axis(res)
        assert len(axis) == res
        assert axis[0] == -1.0 and axis[-1] == 1.0
        assert sorted(-v for v in axis) == axis


class TestDetectFixedLines:
    def test_cnot_intermediate_axis(self):
        lines = detect_fixed_lines(cnot_intermediate_map(0.7))
        assert FixedLine(kind="axis", direction=(1.0, 0.0, 0.0)) in lines

    def test_dephasing_singular_axis(self):
        m = DephasingModel(1.0)
        sing = dephasing_intermediate(m, m.alpha_minus, 0.4)
        lines = detect_fixed_lines(sing)
        assert lines == [FixedLine(kind="axis", direction=(0.0, 0.0, 1.0))]

    def test_regular_dephasing_axis(self):
        lines = detect_fixed_lines(dephasing_map(DephasingModel(0.5), 0.2))
        assert FixedLine(kind="axis", direction=(0.0, 0.0, 1.0)) in lines

    def test_identity_reports_whole_ball(self):
        assert detect_fixed_lines(IDENTITY) == [FixedLine(kind="ball", direction=None)]

    def test_detected_lines_verified_invariant(self):
        from ncpmaps.channels import apply
        from ncpmaps.states import bloch_to_state
        superop = cnot_intermediate_map(1.0)
        for line in detect_fixed_lines(superop):
            if line.direction is None:
                continue
            d = np.array(line.direction)
            for t in np.linspace(-1, 1, 16):
                out = apply(superop, t * d)
                assert np.max(np.abs(out - bloch_to_state(t * d))) <= 1e-10


class TestExport:
    def test_roundtrip(self, tmp_path):
        report = scan_domain(bncp_superop(), MonteCarloSpec(n=200, seed=5))
        path = tmp_path / "domain.csv"
        export_domain(report, path)
        points = read_domain_csv(path)
        assert tuple(points) == report.points + report.line_points

    def test_row_count(self, tmp_path):
        report = scan_domain(IDENTITY, MonteCarloSpec(n=100, seed=0))
        path = tmp_path / "out.csv"
        export_domain(report, path)
        n_lines = len(path.read_text().strip().split("\n"))
        assert n_lines == 1 + len(report.points) + len(report.line_points)

    def test_grid_export_nonempty_both_sides(self, tmp_path):
        report = scan_domain(bncp_superop(), GridSpec(resolution=16))
        path = tmp_path / "grid.csv"
        export_domain(report, path)
        points = read_domain_csv(path)
        flags = {pt.in_domain for pt in points}
        assert flags == {True, False}

    def test_divergent_points_roundtrip(self, tmp_path):
        report = scan_domain(cnot_intermediate_map(math.pi / 4), MonteCarloSpec(n=50, seed=2))
        path = tmp_path / "sing.csv"
        export_domain(report, path)
        parsed = read_domain_csv(path)
        sampled = parsed[:50]
        assert all(pt.divergent and pt.lambda_min == float("-inf") for pt in sampled)

    def test_write_failure_carries_path(self):
        report = scan_domain(IDENTITY, MonteCarloSpec(n=10, seed=0))
        with pytest.raises(OSError, match="no/such/dir"):
            export_domain(report, "/no/such/dir/out.csv")

    def test_header_validation(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("x,y\n1,2\n")
        with pytest.raises(ValueError):
            read_domain_csv(bad)
