"""Self-contained complex linear algebra for 2x2 and 4x4 matrices.

Everything downstream (state physicality, channel conversions, spectral
classification) reduces to the handful of primitives in this module:
Hermitian eigendecomposition via cyclic Jacobi rotations, Gauss-Jordan
inversion with a determinant-based singularity guard, the row-major
superoperator/Choi reshuffle, partial traces and Kronecker products.

Matrices are plain complex ndarrays of shape (2, 2) or (4, 4).  Bipartite
indices use row-major pairing throughout: the 4-dimensional index (i, k)
maps to 2*i + k, and vectorization of a 2x2 matrix is row-major
(``vec(rho)[2*i + j] = rho[i, j]``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-12
JACOBI_OFFDIAG_TOL = 1e-13  # relative to the largest entry magnitude
SINGULARITY_REL_TOL = 1e-12  # |det| <= tol * max|entry|**4 counts as singular
_MAX_SWEEPS = 60

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (ID2, SIGMA_X, SIGMA_Y, SIGMA_Z)


class NotHermitian(ValueError):
    """Raised when an operation requires a Hermitian matrix and the input is not."""


class SingularMatrix(ArithmeticError):
    """Raised by :func:`inverse4` when |det| falls below the singularity threshold.

    Carries the offending ``det_abs`` so callers can report how singular the
    matrix was.
    """

    def __init__(self, det_abs: float):
        super().__init__(f"matrix is singular to working precision (|det| = {det_abs:.3e})")
        self.det_abs = det_abs


@dataclass(frozen=True)
class EigenDecomp:
    """Hermitian eigendecomposition: eigenvalues sorted descending,
    orthonormal eigenvectors as the columns of ``eigenvectors``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    """True when max entrywise |m - m^dagger| <= tol."""
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def _require_hermitian(m: np.ndarray) -> None:
    if not hermitian(m):
        dev = float(np.max(np.abs(m - m.conj().T)))
        raise NotHermitian(f"matrix deviates from Hermiticity by {dev:.3e} (> {HERMITICITY_TOL})")


def _jacobi4(m: np.ndarray, want_vectors: bool):
    """Cyclic Jacobi on a 4x4 complex Hermitian matrix.

    Sweeps the upper-triangle pairs in the fixed order (0,1), (0,2), (0,3),
    (1,2), (1,3), (2,3) and repeats until the largest off-diagonal magnitude
    drops below ``JACOBI_OFFDIAG_TOL`` times the matrix scale.  The sweep
    order and the sign convention of the rotations are fixed, so results are
    bit-reproducible.  Returns (diag list, eigenvector nested list or None).
    """
    a = m.tolist()
    v = [[1.0 + 0j, 0j, 0j, 0j], [0j, 1.0 + 0j, 0j, 0j],
         [0j, 0j, 1.0 + 0j, 0j], [0j, 0j, 0j, 1.0 + 0j]] if want_vectors else None
    scale = max(max(abs(x) for x in row) for row in a)
    tol = JACOBI_OFFDIAG_TOL * max(1.0, scale)
    skip = tol * 1e-2
    for _ in range(_MAX_SWEEPS):
        off = max(abs(a[0][1]), abs(a[0][2]), abs(a[0][3]),
                  abs(a[1][2]), abs(a[1][3]), abs(a[2][3]))
        if off < tol:
            break
        for p in range(3):
            for q in range(p + 1, 4):
                apq = a[p][q]
                r = abs(apq)
                if r <= skip:
                    continue
                ph = apq / r
                tau = (a[q][q].real - a[p][p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sph = s * ph
                sphc = s * ph.conjugate()
                for i in range(4):
                    aip, aiq = a[i][p], a[i][q]
                    a[i][p] = c * aip - sphc * aiq
                    a[i][q] = sph * aip + c * aiq
                for j in range(4):
                    apj, aqj = a[p][j], a[q][j]
                    a[p][j] = c * apj - sph * aqj
                    a[q][j] = sphc * apj + c * aqj
                a[p][q] = 0j
                a[q][p] = 0j
                a[p][p] = complex(a[p][p].real, 0.0)
                a[q][q] = complex(a[q][q].real, 0.0)
                if v is not None:
                    for i in range(4):
                        vip, viq = v[i][p], v[i][q]
                        v[i][p] = c * vip - sphc * viq
                        v[i][q] = sph * vip + c * viq
    else:
        raise ArithmeticError("Jacobi eigensolver failed to converge in 60 sweeps")
    return [a[i][i].real for i in range(4)], v


def eigvals_hermitian(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a 4x4 Hermitian matrix, sorted descending.

    Same rotation sequence as :func:`eig_hermitian`, skipping the
    eigenvector bookkeeping; the returned values are bit-identical to the
    full decomposition's.
    """
    _require_hermitian(m)
    evals, _ = _jacobi4(m, want_vectors=False)
    return np.array(sorted(evals, reverse=True))


def eig_hermitian(m: np.ndarray) -> EigenDecomp:
    """Full eigendecomposition of a 4x4 Hermitian matrix.

    Eigenvalues are sorted descending with ties broken by the lexicographic
    order of the (phase-normalized) eigenvectors, so the output is
    reproducible.  Raises :class:`NotHermitian` if the input fails the
    Hermiticity predicate.
    """
    _require_hermitian(m)
    evals, vcols = _jacobi4(m, want_vectors=True)
    vmat = np.array(vcols, dtype=complex)
    # Fix each eigenvector's global phase: largest-magnitude component real positive.
    for j in range(4):
        col = vmat[:, j]
        k = int(np.argmax(np.abs(col)))
        z = col[k]
        if abs(z) > 0.0:
            vmat[:, j] = col * (z.conjugate() / abs(z))
    def lexkey(j: int):
        return tuple((vmat[i, j].real, vmat[i, j].imag) for i in range(4))
    order = sorted(range(4), key=lambda j: (-evals[j], lexkey(j)))
    return EigenDecomp(
        eigenvalues=np.array([evals[j] for j in order]),
        eigenvectors=vmat[:, order],
    )


def det4(m: np.ndarray) -> complex:
    """Determinant of a 4x4 complex matrix by partially pivoted elimination."""
    a = [list(row) for row in m.tolist()]
    det = 1.0 + 0j
    for col in range(4):
        piv_row = max(range(col, 4), key=lambda r: abs(a[r][col]))
        piv = a[piv_row][col]
        if piv == 0:
            return 0j
        if piv_row != col:
            a[col], a[piv_row] = a[piv_row], a[col]
            det = -det
        det *= piv
        inv = 1.0 / piv
        for r in range(col + 1, 4):
            f = a[r][col] * inv
            if f != 0:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def inverse4(m: np.ndarray) -> np.ndarray:
    """Inverse of a 4x4 complex matrix via Gauss-Jordan with partial pivoting.

    Raises :class:`SingularMatrix` when |det| <= SINGULARITY_REL_TOL times
    the fourth power of the largest entry magnitude; the relative threshold
    separates structural singularities (exact zeros of det) from
    conditioning noise while keeping ``m @ inverse4(m)`` within 1e-10 of the
    identity whenever an inverse is returned.
    """
    norm = float(np.max(np.abs(m)))
    aug = [list(row) + [1.0 + 0j if i == j else 0j for j in range(4)]
           for i, row in enumerate(m.tolist())]
    det = 1.0 + 0j
    for col in range(4):
        piv_row = max(range(col, 4), key=lambda r: abs(aug[r][col]))
        piv = aug[piv_row][col]
        if piv == 0:
            raise SingularMatrix(0.0)
        if piv_row != col:
            aug[col], aug[piv_row] = aug[piv_row], aug[col]
            det = -det
        det *= piv
        inv = 1.0 / piv
        aug[col] = [x * inv for x in aug[col]]
        for r in range(4):
            if r == col:
                continue
            f = aug[r][col]
            if f != 0:
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    det_abs = abs(det)
    if det_abs <= SINGULARITY_REL_TOL * norm ** 4:
        raise SingularMatrix(det_abs)
    return np.array([row[4:] for row in aug], dtype=complex)


def reshuffle(m: np.ndarray) -> np.ndarray:
    """Superoperator <-> Choi reshuffle: B[(i,k),(j,l)] = A[(i,j),(k,l)].

    With row-major pair indexing this is the axis swap (i,j,k,l) -> (i,k,j,l);
    the operation is an involution (it permutes entries, so applying it twice
    is the bitwise identity).
    """
    return np.ascontiguousarray(m.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4))


def partial_trace(m: np.ndarray, subsystem: int) -> np.ndarray:
    """Partial trace of a 4x4 matrix over subsystem 1 (first pair index) or 2."""
    m4 = m.reshape(2, 2, 2, 2)
    if subsystem == 1:
        return m4[0, :, 0, :] + m4[1, :, 1, :]
    if subsystem == 2:
        return m4[:, 0, :, 0] + m4[:, 1, :, 1]
    raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")


def kron(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices (4x4 result, row-major pairing)."""
    return np.kron(p, q)


def vec(rho: np.ndarray) -> np.ndarray:
    """Row-major vectorization of a 2x2 matrix."""
    return rho.reshape(4).copy()


def unvec(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return v.reshape(2, 2).copy()
