"""Qubit states as Bloch vectors and density matrices.

A Bloch vector is any real 3-vector; points outside the unit ball are
deliberately representable so that the (possibly unphysical) output of a
not-completely-positive map can be described before being tested.  The
``in_ball`` / ``is_physical`` predicates draw the actual physicality line.
"""

from __future__ import annotations

import math

import numpy as np

from .matops import SIGMA_X, SIGMA_Y, SIGMA_Z

IN_BALL_TOL = 1e-12
PHYSICALITY_TOL = -1e-10  # floor on the smaller eigenvalue
# Guard tolerance for "is this a state at all": looser than the construction
# tolerance because outputs of badly conditioned (near-singular) maps carry
# cancellation noise up to ~1e-10 while remaining legitimate inputs here.
_STATE_TOL = 1e-9


def in_ball(a) -> bool:
    """True when a1^2 + a2^2 + a3^2 <= 1 + 1e-12."""
    a1, a2, a3 = float(a[0]), float(a[1]), float(a[2])
    return a1 * a1 + a2 * a2 + a3 * a3 <= 1.0 + IN_BALL_TOL


def bloch_to_state(a) -> np.ndarray:
    """Density matrix (1/2)(I + a . sigma) for a real 3-vector a."""
    a1, a2, a3 = float(a[0]), float(a[1]), float(a[2])
    return 0.5 * np.array(
        [[1.0 + a3, a1 - 1j * a2],
         [a1 + 1j * a2, 1.0 - a3]], dtype=complex)


def state_to_bloch(rho: np.ndarray) -> np.ndarray:
    """Bloch vector of a 2x2 density matrix: a_i = Re tr(rho sigma_i)."""
    return np.array([
        float(np.trace(rho @ SIGMA_X).real),
        float(np.trace(rho @ SIGMA_Y).real),
        float(np.trace(rho @ SIGMA_Z).real),
    ])


def min_eigenvalue_2x2(rho: np.ndarray) -> float:
    """Smaller eigenvalue of a 2x2 Hermitian matrix, closed form."""
    d = float(rho[0, 0].real) - float(rho[1, 1].real)
    t = float(rho[0, 0].real) + float(rho[1, 1].real)
    od = rho[0, 1]
    disc = math.sqrt(d * d + 4.0 * (float(od.real) ** 2 + float(od.imag) ** 2))
    return 0.5 * (t - disc)


def is_physical(rho: np.ndarray) -> tuple[bool, float]:
    """(verdict, smaller eigenvalue) for a Hermitian trace-1 matrix.

    The verdict is True iff both eigenvalues are >= -1e-10; the tolerance
    keeps boundary states (pure states, dephased diagonal lines) from being
    rejected by rounding.  Raises ValueError when the input is not a
    trace-1 Hermitian matrix.
    """
    if abs(rho[0, 0].real + rho[1, 1].real - 1.0) > _STATE_TOL:
        raise ValueError("state must have unit trace")
    if (abs(rho[0, 0].imag) > _STATE_TOL or abs(rho[1, 1].imag) > _STATE_TOL
            or abs(rho[0, 1] - rho[1, 0].conjugate()) > _STATE_TOL):
        raise ValueError("state must be Hermitian")
    lam = min_eigenvalue_2x2(rho)
    return lam >= PHYSICALITY_TOL, lam


def _ball_rng(seed: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_ball(rng_seed: int, n: int) -> np.ndarray:
    """n points uniform in the unit ball, shape (n, 3).

    Direction is uniform on the sphere (cos-theta and azimuth from
    uniforms), radius is the cube root of a uniform variate.  Each point
    consumes exactly three uniforms from a counter-based stream keyed on the
    seed, so the j-th point is independent of n: extending a scan never
    changes earlier points.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u = _ball_rng(rng_seed).random((n, 3))
    cos_t = 1.0 - 2.0 * u[:, 0]
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - cos_t ** 2))
    phi = 2.0 * math.pi * u[:, 1]
    r = np.cbrt(u[:, 2])
    return np.column_stack((r * sin_t * np.cos(phi),
                            r * sin_t * np.sin(phi),
                            r * cos_t))


def bloch_csv_rows(points) -> list[str]:
    """Serialize Bloch points as CSV rows "a1,a2,a3" (full precision)."""
    return [f"{repr(float(p[0]))},{repr(float(p[1]))},{repr(float(p[2]))}" for p in points]
