"""Constructors for the parametrized map families under study.

* a fixed numeric NCP example map with one Choi eigenvalue above 2;
* the double-CNOT construction: a bit-flip first map whose inverse is the
  NCP intermediate map, singular when the control angle hits pi/4;
* its generalization to an arbitrary controlled unitary Q(theta, phi, xi);
* a non-Markovian dephasing model whose decoherence rate has a pole, making
  the intermediate map singular with a measure-zero positivity domain;
* the simplex of unital Pauli maps parametrized by transfer eigenvalues,
  plus its unitarily rotated version.

Singular parameter points return a :class:`~ncpmaps.channels.SingularMap`
carrying the invariant line instead of raising: a diverging intermediate map
is a modeled outcome, still valid on its (measure-zero) domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import NotUnitary, SingularMap, _canonical_direction, _eig2
from .matops import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, det4, inverse4, kron, vec

CNOT_SINGULARITY_TOL = 1e-8  # on |cos 2 theta|
DEPHASING_SINGULARITY_TOL = 1e-12  # on |q - alpha_minus|
CONTROLLED_Q_DET_TOL = 1e-8  # on |det| of the first map


class OutOfRange(ValueError):
    """Parameter outside its documented range."""


class OutOfCube(ValueError):
    """Pauli transfer eigenvalues outside the positive-map cube [-1, 1]^3."""


class RateSingularity(ArithmeticError):
    """Dephasing rate evaluated at its pole q = alpha_minus."""


# ---------------------------------------------------------------------------
# fixed numeric NCP example


def bncp_example() -> np.ndarray:
    """The reference NCP Choi matrix: unital, trace preserving, eigenvalues
    {2.324094, 0.669258, 0.130742, -1.124094}."""
    return np.array([
        [0.20, 0.95, 0.70, 0.10],
        [0.95, 0.80, 0.30, -0.70],
        [0.70, 0.30, 0.80, -0.95],
        [0.10, -0.70, -0.95, 0.20],
    ], dtype=complex)


# ---------------------------------------------------------------------------
# double-CNOT intermediate map


@dataclass(frozen=True)
class CnotIntermediate:
    """Control-qubit superposition angle for the double-CNOT construction."""

    theta: float

    @property
    def singular(self) -> bool:
        return abs(math.cos(2.0 * self.theta)) < CNOT_SINGULARITY_TOL


def cnot_first_map(theta: float) -> np.ndarray:
    """Superoperator of the first CNOT reduced to the target qubit: the
    bit-flip channel cos^2(theta) rho + sin^2(theta) X rho X."""
    c = math.cos(theta) ** 2
    s = math.sin(theta) ** 2
    return np.array([
        [c, 0, 0, s],
        [0, c, s, 0],
        [0, s, c, 0],
        [s, 0, 0, c],
    ], dtype=complex)


def cnot_intermediate_map(theta: float):
    """Inverse of the first-CNOT map, or a :class:`SingularMap` at the singularity.

    For |cos 2 theta| >= 1e-8 the closed form sec(2 theta) * {cos^2, -sin^2}
    is returned; it equals inverse4(cnot_first_map(theta)) wherever that
    inverse is well conditioned, and stays evaluable arbitrarily close to
    the singularity where a generic elimination would (correctly) refuse.
    At the singularity the X-axis segment of sigma_x-invariant states is the
    entire positivity domain, carried symbolically.
    """
    cos2t = math.cos(2.0 * theta)
    if abs(cos2t) < CNOT_SINGULARITY_TOL:
        return SingularMap(family="cnot-intermediate", axis=(1.0, 0.0, 0.0),
                           params=(("theta", float(theta)),))
    sec = 1.0 / cos2t
    c = sec * math.cos(theta) ** 2
    s = sec * math.sin(theta) ** 2
    return np.array([
        [c, 0, 0, -s],
        [0, c, -s, 0],
        [0, -s, c, 0],
        [-s, 0, 0, c],
    ], dtype=complex)


def fixed_point_line(p: float) -> np.ndarray:
    """Trace-1 mixture of the sigma_x eigenstates: p |+><+| + (1-p) |-><-|."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    off = 2.0 * p - 1.0
    return 0.5 * np.array([[1.0, off], [off, 1.0]], dtype=complex)


# ---------------------------------------------------------------------------
# non-Markovian dephasing


@dataclass(frozen=True)
class DephasingModel:
    """Dephasing model with non-Markovianity parameter nu in (0, 1].

    The decoherence rate has a pole at q = alpha_minus; alpha_minus and
    alpha_plus are the roots of 2 nu q^2 - 2 (nu + 1) q + 1, which places
    alpha_minus inside the physical range [0, 1/2] for every nu in (0, 1].
    """

    nu: float

    def __post_init__(self):
        if not 0.0 < self.nu <= 1.0:
            raise OutOfRange(f"nu must lie in (0, 1], got {self.nu}")

    @property
    def alpha_minus(self) -> float:
        return (self.nu + 1.0 - math.sqrt(self.nu ** 2 + 1.0)) / (2.0 * self.nu)

    @property
    def alpha_plus(self) -> float:
        return (self.nu + 1.0 + math.sqrt(self.nu ** 2 + 1.0)) / (2.0 * self.nu)


def dephasing_rate(model: DephasingModel, q: float) -> float:
    """Decoherence rate lambda(q) = ( (alpha_- + alpha_+)/2 - q ) / ((q - alpha_+)(q - alpha_-)).

    q runs over [0, 1/2]; the pole at q = alpha_minus raises
    :class:`RateSingularity`.
    """
    if not 0.0 <= q <= 0.5:
        raise OutOfRange(f"q must lie in [0, 0.5], got {q}")
    am, ap = model.alpha_minus, model.alpha_plus
    if abs(q - am) < DEPHASING_SINGULARITY_TOL:
        raise RateSingularity(f"rate diverges at q = alpha_minus = {am!r}")
    return (0.5 * (am + ap) - q) / ((q - ap) * (q - am))


def dephasing_beta(model: DephasingModel, q: float) -> float:
    """Kraus weight beta(q) = [1 + nu (1 - q)] q; beta(alpha_minus) = 1/2."""
    if not 0.0 <= q <= 1.0:
        raise OutOfRange(f"q must lie in [0, 1], got {q}")
    return (1.0 + model.nu * (1.0 - q)) * q


def dephasing_map(model: DephasingModel, q: float) -> np.ndarray:
    """Superoperator of the dephasing channel at parameter q.

    Kraus form sqrt(1 - beta) I and sqrt(beta) sigma_z; the off-diagonal
    multiplier is 1 - 2 beta(q).
    """
    m = 1.0 - 2.0 * dephasing_beta(model, q)
    return np.diag([1.0, m, m, 1.0]).astype(complex)


def dephasing_intermediate(model: DephasingModel, q1: float, q2: float):
    """Intermediate map between parameters q1 <= q2: Lambda(q2) o Lambda(q1)^-1.

    A pure dephasing map with off-diagonal multiplier
    (1 - 2 beta(q2)) / (1 - 2 beta(q1)); NCP exactly when the coherence
    grows, i.e. |1 - 2 beta(q2)| > |1 - 2 beta(q1)|.  At q1 = alpha_minus
    the first map is non-invertible and a :class:`SingularMap` is returned
    whose invariant line is the diagonal-state (Z-axis) segment.
    """
    if not 0.0 <= q1 <= q2 <= 0.5:
        raise OutOfRange(f"need 0 <= q1 <= q2 <= 0.5, got q1={q1}, q2={q2}")
    if abs(q1 - model.alpha_minus) < DEPHASING_SINGULARITY_TOL:
        return SingularMap(family="dephasing-intermediate", axis=(0.0, 0.0, 1.0),
                           params=(("nu", model.nu), ("q1", float(q1)), ("q2", float(q2))))
    m = (1.0 - 2.0 * dephasing_beta(model, q2)) / (1.0 - 2.0 * dephasing_beta(model, q1))
    return np.diag([1.0, m, m, 1.0]).astype(complex)


# ---------------------------------------------------------------------------
# controlled-Q generalization


@dataclass(frozen=True)
class ControlledUnitaryFamily:
    """Controlled-Q construction: Q = Rz(phi) Ry(theta) Rz(xi) applied to the
    target when the control (prepared at ``control_angle``) is |1>."""

    theta: float
    phi: float
    xi: float
    control_angle: float


def q_unitary(theta: float, phi: float, xi: float) -> np.ndarray:
    """Generic single-qubit unitary Rz(phi) Ry(theta) Rz(xi) (up to global phase)."""
    ct, st = math.cos(theta / 2.0), math.sin(theta / 2.0)
    ry = np.array([[ct, -st], [st, ct]], dtype=complex)
    rz1 = np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])
    rz2 = np.diag([np.exp(-0.5j * xi), np.exp(0.5j * xi)])
    return rz1 @ ry @ rz2


def controlled_q_first_map(fam: ControlledUnitaryFamily) -> np.ndarray:
    """Reduced map on the target of control-Q with control state
    cos(alpha)|0> + sin(alpha)|1>: cos^2(alpha) rho + sin^2(alpha) Q rho Q^dag."""
    q = q_unitary(fam.theta, fam.phi, fam.xi)
    c = math.cos(fam.control_angle) ** 2
    s = math.sin(fam.control_angle) ** 2
    return c * np.eye(4, dtype=complex) + s * kron(q, q.conj())


def controlled_q_intermediate_map(fam: ControlledUnitaryFamily):
    """Inverse of the controlled-Q first map, or a :class:`SingularMap`.

    Singular when |det| of the first map drops below 1e-8; the invariant
    line is then the eigenstate axis of Q.
    """
    first = controlled_q_first_map(fam)
    if abs(det4(first)) < CONTROLLED_Q_DET_TOL:
        q = q_unitary(fam.theta, fam.phi, fam.xi)
        (_, v1), _ = _eig2(q)
        rho = np.outer(v1, v1.conj())
        axis = _canonical_direction(np.array([
            2.0 * rho[1, 0].real, 2.0 * rho[1, 0].imag,
            rho[0, 0].real - rho[1, 1].real]))
        return SingularMap(
            family="controlled-q-intermediate",
            axis=axis if axis is not None else (0.0, 0.0, 1.0),
            params=(("theta", fam.theta), ("phi", fam.phi), ("xi", fam.xi),
                    ("control_angle", fam.control_angle)))
    return inverse4(first)


def controlled_q_singular_locus(thetas, phis, xis, control_angles) -> list[tuple]:
    """Grid points (theta, phi, xi, control_angle) where the first map is singular.

    Membership test: |det(first map)| < 1e-8.  The singular set is the
    continuous family {Q with eigenphase separation pi} x {control angle
    pi/4 mod pi/2}; the grid restriction of it is returned sorted.
    """
    locus = []
    for th in thetas:
        for ph in phis:
            for xi in xis:
                for ca in control_angles:
                    fam = ControlledUnitaryFamily(th, ph, xi, ca)
                    if abs(det4(controlled_q_first_map(fam))) < CONTROLLED_Q_DET_TOL:
                        locus.append((float(th), float(ph), float(xi), float(ca)))
    return sorted(locus)


# ---------------------------------------------------------------------------
# Pauli simplex


_PAULI_CHOI_BASIS = tuple(np.outer(vec(s), vec(s).conj()) for s in (ID2, SIGMA_X, SIGMA_Y, SIGMA_Z))


def pauli_weights(point) -> np.ndarray:
    """Mixing weights (p_0 .. p_3) of the Pauli map with transfer eigenvalues
    (eta_1, eta_2, eta_3); negative weights signal NCP."""
    e1, e2, e3 = float(point[0]), float(point[1]), float(point[2])
    return 0.25 * np.array([
        1.0 + e1 + e2 + e3,
        1.0 + e1 - e2 - e3,
        1.0 - e1 + e2 - e3,
        1.0 - e1 - e2 + e3,
    ])


def pauli_choi(point) -> np.ndarray:
    """Choi matrix of the unital map with Bloch action diag(eta_1, eta_2, eta_3).

    The Choi eigenvalues are exactly twice the Pauli mixing weights, so the
    map is CP iff the point lies in the tetrahedron with vertices
    (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1).
    """
    if max(abs(float(c)) for c in point) > 1.0 + 1e-12:
        raise OutOfCube(f"transfer eigenvalues must lie in [-1, 1]^3, got {tuple(point)}")
    p = pauli_weights(point)
    return (p[0] * _PAULI_CHOI_BASIS[0] + p[1] * _PAULI_CHOI_BASIS[1]
            + p[2] * _PAULI_CHOI_BASIS[2] + p[3] * _PAULI_CHOI_BASIS[3])


def rotated_pauli_choi(point, u: np.ndarray) -> np.ndarray:
    """Choi matrix of the Pauli map conjugated by a fixed unitary U.

    Kraus operators become U sigma_i U^dag with the same weights; the Choi
    spectrum (hence the CP/NCP verdict) is invariant under the rotation.
    """
    u = np.asarray(u, dtype=complex)
    if float(np.max(np.abs(u.conj().T @ u - ID2))) > 1e-12:
        raise NotUnitary("rotation matrix must be unitary to 1e-12")
    w = kron(u, u.conj())
    return w @ pauli_choi(point) @ w.conj().T
