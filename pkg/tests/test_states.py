"""Tests for Bloch-vector/density-matrix conversions and ball sampling."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ncpmaps.states import (
    bloch_csv_rows,
    bloch_to_state,
    in_ball,
    is_physical,
    sample_ball,
    state_to_bloch,
)

coord = st.floats(min_value=-2, max_value=2, allow_nan=False, allow_infinity=False)
bloch = st.tuples(coord, coord, coord)


class TestBlochToState:
    def test_maximally_mixed(self):
        assert np.array_equal(bloch_to_state((0, 0, 0)), 0.5 * np.eye(2))

    def test_pure_pole(self):
        assert np.array_equal(bloch_to_state((0, 0, 1)), np.diag([1.0, 0.0]).astype(complex))

    def test_reference_domain_point(self):
        rho = bloch_to_state((0.05, 0.1, 0.5))
        expected = 0.5 * np.array([[1.5, 0.05 - 0.1j], [0.05 + 0.1j, 0.5]])
        assert np.max(np.abs(rho - expected)) == 0

    @given(bloch)
    def test_trace_one_and_hermitian_by_construction(self, a):
        rho = bloch_to_state(a)
        assert rho[0, 0].real + rho[1, 1].real == 1.0
        assert rho[0, 1] == rho[1, 0].conjugate()

    @given(bloch)
    def test_roundtrip(self, a):
        back = state_to_bloch(bloch_to_state(a))
        assert np.max(np.abs(back - np.array(a))) <= 1e-12

    def test_state_to_bloch_basics(self):
        assert np.array_equal(state_to_bloch(0.5 * np.eye(2, dtype=complex)), [0, 0, 0])
        assert np.array_equal(state_to_bloch(np.diag([1.0, 0.0]).astype(complex)), [0, 0, 1])


class TestIsPhysical:
    def test_maximally_mixed(self):
        ok, lam = is_physical(0.5 * np.eye(2, dtype=complex))
        assert ok and lam == pytest.approx(0.5)

    def test_outside_ball(self):
        ok, lam = is_physical(bloch_to_state((0, 0, 1.2)))
        assert not ok and lam == pytest.approx(-0.1)

    def test_reference_map_output_is_physical(self):
        from ncpmaps.channels import apply, superop_from_choi
        from ncpmaps.families import bncp_example
        ok, _ = is_physical(apply(superop_from_choi(bncp_example()), (0.05, 0.1, 0.5)))
        assert ok

    def test_rejects_non_normalized(self):
        with pytest.raises(ValueError):
            is_physical(np.eye(2, dtype=complex))

    @given(bloch)
    @settings(max_examples=200)
    def test_matches_in_ball(self, a):
        # keep clear of the razor edge where the two tolerances differ
        assume(abs(a[0] ** 2 + a[1] ** 2 + a[2] ** 2 - 1.0) > 1e-9)
        ok, _ = is_physical(bloch_to_state(a))
        assert ok == in_ball(a)


class TestSampleBall:
    def test_all_points_inside(self):
        pts = sample_ball(123, 1000)
        assert pts.shape == (1000, 3)
        assert all(in_ball(p) for p in pts)

    def test_mean_radius(self):
        pts = sample_ball(0, 4000)
        r = np.linalg.norm(pts, axis=1)
        # E[r] = 3/4, Var[r] = 3/80 for the uniform ball
        sigma = np.sqrt(3.0 / 80.0 / len(r))
        assert abs(r.mean() - 0.75) < 3 * sigma

    def test_deterministic(self):
        assert np.array_equal(sample_ball(7, 500), sample_ball(7, 500))

    def test_prefix_stable(self):
        assert np.array_equal(sample_ball(7, 1000)[:500], sample_ball(7, 500))

    def test_seeds_differ(self):
        assert not np.array_equal(sample_ball(1, 100), sample_ball(2, 100))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            sample_ball(0, 0)


def test_csv_rows_roundtrip():
    pts = sample_ball(3, 10)
    rows = bloch_csv_rows(pts)
    parsed = np.array([[float(x) for x in row.split(",")] for row in rows])
    assert np.array_equal(parsed, pts)
