"""Qubit map representations and the conversions among them.

Three interchangeable representations are supported:

* superoperator ``A`` — 4x4 complex matrix acting on the row-major
  vectorized density matrix, ``rho'_{ij} = sum_{kl} A[(i,j),(k,l)] rho_{kl}``;
* Choi (dynamical) matrix ``B`` — the reshuffle of ``A``; Hermitian with
  trace 2 for trace-preserving qubit maps;
* signed Kraus set — operator-sum form ``rho' = sum_i s_i K_i rho K_i^dag``
  with signs from the Choi eigenvalue signs, which covers maps whose Choi
  matrix has negative eigenvalues (NCP maps).

A map is completely positive exactly when its Choi matrix is positive
semidefinite; :func:`classify` draws that line at -1e-9 on the smallest
eigenvalue.  :func:`check_validity` searches the Bloch ball for a nonempty
positivity domain, combining canonical probes (the maximally mixed state,
eigenstate axes of unitary-proportional Kraus operators) with a seeded
uniform ball sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matops import (
    ID2,
    eig_hermitian,
    eigvals_hermitian,
    hermitian,
    kron,
    partial_trace,
    reshuffle,
    unvec,
    vec,
)
from .states import bloch_to_state, is_physical, sample_ball

CP_EIGENVALUE_TOL = -1e-9
KRAUS_EIGENVALUE_CUT = 1e-12
TP_TOL = 1e-10
SINGULAR_AXIS_TOL = 1e-9


class DivergentMap(RuntimeError):
    """Raised when a singular map is applied outside its invariant set."""


class NotUnitary(ValueError):
    """Raised when an operation requires a unitary 2x2 matrix."""


# ---------------------------------------------------------------------------
# construction and conversions


def unital_choi(a, x, y, z, w) -> np.ndarray:
    """Choi matrix of a general unital trace-preserving qubit map.

    ``a`` is real; ``x, y, z, w`` may be complex.  Both partial traces of
    the result equal the identity by construction.
    """
    x, y, z, w = complex(x), complex(y), complex(z), complex(w)
    a = float(a)
    return np.array([
        [a, x, y, z],
        [x.conjugate(), 1.0 - a, w, -y],
        [y.conjugate(), w.conjugate(), 1.0 - a, -x],
        [z.conjugate(), -y.conjugate(), -x.conjugate(), a],
    ], dtype=complex)


def choi_from_superop(a_mat: np.ndarray) -> np.ndarray:
    """Reshuffle a superoperator into its Choi matrix; verifies Hermiticity."""
    b = reshuffle(a_mat)
    if not hermitian(b):
        from .matops import NotHermitian
        raise NotHermitian("superoperator does not represent a Hermiticity-preserving map")
    return b


def superop_from_choi(b: np.ndarray) -> np.ndarray:
    """Inverse of :func:`choi_from_superop` (the reshuffle is an involution)."""
    return reshuffle(b)


@dataclass(frozen=True)
class SignedKrausSet:
    """Operator-sum form: pairs (K_i, s_i) with s_i = +-1.

    The action is ``rho' = sum_i s_i K_i rho K_i^dag``; the K_i absorb the
    magnitude of the Choi eigenvalues, the signs carry the NCP content.
    """

    pairs: tuple[tuple[np.ndarray, int], ...]

    def apply(self, rho: np.ndarray) -> np.ndarray:
        out = np.zeros((2, 2), dtype=complex)
        for k, s in self.pairs:
            out += s * (k @ rho @ k.conj().T)
        return out

    def to_superop(self) -> np.ndarray:
        out = np.zeros((4, 4), dtype=complex)
        for k, s in self.pairs:
            out += s * kron(k, k.conj())
        return out


def kraus_from_choi(b: np.ndarray) -> SignedKrausSet:
    """Signed Kraus set from the Choi eigendecomposition.

    Each eigenpair (mu, v) with |mu| > 1e-12 contributes
    K = sqrt(|mu|) * unvec(v) and s = sign(mu); the normalization is fixed
    by requiring the reconstructed action to match the source map.
    """
    dec = eig_hermitian(b)
    pairs = []
    for mu, col in zip(dec.eigenvalues, dec.eigenvectors.T):
        if abs(mu) > KRAUS_EIGENVALUE_CUT:
            pairs.append((math.sqrt(abs(mu)) * unvec(col), 1 if mu > 0 else -1))
    return SignedKrausSet(pairs=tuple(pairs))


# ---------------------------------------------------------------------------
# singular maps


@dataclass(frozen=True)
class SingularMap:
    """A map whose Choi spectrum diverges, valid only on an invariant line.

    ``axis`` is the unit Bloch direction of the invariant segment: states
    t * axis with |t| <= 1 are fixed points and every other input diverges.
    The object stands in for a superoperator wherever a map can be applied
    or scanned; :func:`apply` raises :class:`DivergentMap` off the axis.
    """

    family: str
    axis: tuple[float, float, float]
    params: tuple[tuple[str, float], ...] = ()

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        axis = np.asarray(self.axis)
        t = float(p @ axis)
        perp = p - t * axis
        return float(np.max(np.abs(perp))) <= SINGULAR_AXIS_TOL and abs(t) <= 1.0 + SINGULAR_AXIS_TOL

    def apply(self, p) -> np.ndarray:
        if not self.contains(p):
            raise DivergentMap(f"{self.family}: input lies outside the invariant line")
        return bloch_to_state(p)

    def descriptor(self) -> dict:
        return {
            "singular": True,
            "family": self.family,
            "invariant_set": {"kind": "axis", "direction": list(self.axis)},
            "params": dict(self.params),
        }


# ---------------------------------------------------------------------------
# application and classification


def apply(map_, p) -> np.ndarray:
    """Apply a map (superoperator or :class:`SingularMap`) to a Bloch point.

    Returns the output 2x2 matrix, which may be an unphysical (negative)
    state; trace is preserved for trace-preserving maps.  Raises
    :class:`DivergentMap` for singular maps applied off their invariant set.
    """
    if isinstance(map_, SingularMap):
        return map_.apply(p)
    return unvec(map_ @ vec(bloch_to_state(p)))


@dataclass(frozen=True)
class CPVerdict:
    classification: str  # "CP" | "NCP"
    choi_eigenvalues: np.ndarray  # sorted descending
    min_eigenvalue: float

    def to_dict(self) -> dict:
        return {
            "classification": self.classification,
            "choi_eigenvalues": [float(v) for v in self.choi_eigenvalues],
            "min_eigenvalue": float(self.min_eigenvalue),
        }


def classify(b: np.ndarray, tol: float = CP_EIGENVALUE_TOL) -> CPVerdict:
    """CP/NCP verdict from the Choi eigenvalues.

    The default threshold (min eigenvalue >= -1e-9) separates genuine NCP
    maps (negative eigenvalues of order 1 in every family here) from
    floating-point noise on CP boundary maps; ``tol`` overrides it.
    """
    evals = eigvals_hermitian(b)
    lam_min = float(evals[-1])
    return CPVerdict(
        classification="CP" if lam_min >= tol else "NCP",
        choi_eigenvalues=evals,
        min_eigenvalue=lam_min,
    )


def output_spectrum_unital(a, x, y, z, w, p) -> tuple[float, float]:
    """Closed-form output eigenvalues (lam_plus, lam_minus) of the general
    unital map with real parameters acting on Bloch point p.

    The radicand is the squared length of the output Bloch vector, so the
    pair always matches a numeric eigensolve of the applied output.
    """
    a, x, y, z, w = float(a), float(x), float(y), float(z), float(w)
    a1, a2, a3 = float(p[0]), float(p[1]), float(p[2])
    rad = (a1 * a1 * ((w + z) ** 2 + 4.0 * x * x)
           + 4.0 * a1 * a3 * ((2.0 * a - 1.0) * x + y * (w + z))
           + a2 * a2 * (w - z) ** 2
           + a3 * a3 * ((1.0 - 2.0 * a) ** 2 + 4.0 * y * y))
    root = math.sqrt(rad)
    return 0.5 * (1.0 + root), 0.5 * (1.0 - root)


def is_trace_preserving(a_mat: np.ndarray, tol: float = TP_TOL) -> bool:
    """Check sum_i A[(i,i),(k,l)] = delta_kl."""
    row = a_mat[0] + a_mat[3]
    return float(np.max(np.abs(row - np.array([1, 0, 0, 1])))) <= tol


def is_unital_choi(b: np.ndarray, tol: float = TP_TOL) -> bool:
    """Check both partial traces of the Choi matrix equal the identity."""
    return (float(np.max(np.abs(partial_trace(b, 1) - ID2))) <= tol
            and float(np.max(np.abs(partial_trace(b, 2) - ID2))) <= tol)


# ---------------------------------------------------------------------------
# validity search


@dataclass(frozen=True)
class ProbeConfig:
    """Probe budget for :func:`check_validity`."""

    n_samples: int = 10_000
    line_points: int = 64
    seed: int = 0
    extra_probes: tuple[tuple[float, float, float], ...] = ()


@dataclass(frozen=True)
class ValidityVerdict:
    status: str  # FullDomain | PartialDomain | MeasureZeroDomain | NoWitnessFound
    witnesses: tuple[tuple[float, float, float], ...]
    sampled_fraction: float
    n_samples: int

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witnesses": [list(w) for w in self.witnesses],
            "sampled_fraction": float(self.sampled_fraction),
            "n_samples": int(self.n_samples),
        }


def _unitary_part(k: np.ndarray):
    """If K = sqrt(w) U with U unitary, return U; else None."""
    g = k.conj().T @ k
    w = 0.5 * (g[0, 0].real + g[1, 1].real)
    if w <= 1e-14:
        return None
    if float(np.max(np.abs(g - w * ID2))) > 1e-10 * max(1.0, w):
        return None
    return k / math.sqrt(w)


def _eig2(u: np.ndarray):
    """Eigenpairs of a 2x2 matrix via the characteristic polynomial."""
    t = u[0, 0] + u[1, 1]
    d = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    disc = np.sqrt(complex(t * t - 4.0 * d))
    out = []
    for lam in ((t + disc) / 2.0, (t - disc) / 2.0):
        v1 = np.array([u[0, 1], lam - u[0, 0]], dtype=complex)
        v2 = np.array([lam - u[1, 1], u[1, 0]], dtype=complex)
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        n = np.linalg.norm(v)
        if n < 1e-14:
            v = np.array([1.0, 0.0], dtype=complex)
            n = 1.0
        out.append((lam, v / n))
    return out


def _canonical_direction(d: np.ndarray):
    """Unit vector with a sign convention: first component above tolerance positive."""
    n = float(np.linalg.norm(d))
    if n < 1e-12:
        return None
    d = d / n
    for c in d:
        if abs(c) > 1e-9:
            if c < 0:
                d = -d
            break
    return tuple(round(float(c), 12) + 0.0 for c in d)


def kraus_unitary_axes(map_) -> list:
    """Bloch axes of eigenstate mixtures of unitary-proportional Kraus operators.

    For each Kraus operator of the map proportional to a unitary U, the
    mixtures of U's eigenstates form a candidate invariant segment of the
    Bloch ball.  Returns canonical unit directions; ``None`` entries mark a
    Kraus operator proportional to the identity (whole-ball candidate).
    Singular maps report their stored invariant axis.
    """
    if isinstance(map_, SingularMap):
        return [_canonical_direction(np.asarray(map_.axis, dtype=float))]
    b = choi_from_superop(map_)
    axes = []
    for k, _ in kraus_from_choi(b).pairs:
        u = _unitary_part(k)
        if u is None:
            continue
        (l1, v1), (l2, _) = _eig2(u)
        if abs(l1 - l2) <= 1e-9:
            # degenerate spectrum: U is a phase times the identity, every state
            # is an eigenstate -> whole-ball candidate
            if None not in axes:
                axes.append(None)
            continue
        rho = np.outer(v1, v1.conj())
        d = _canonical_direction(np.array([
            2.0 * rho[1, 0].real, 2.0 * rho[1, 0].imag, rho[0, 0].real - rho[1, 1].real]))
        if d is not None and d not in axes:
            axes.append(d)
    return axes


def _passes(map_, p) -> bool:
    try:
        ok, _ = is_physical(apply(map_, p))
    except DivergentMap:
        return False
    return ok


def check_validity(map_, probes: ProbeConfig = ProbeConfig()) -> ValidityVerdict:
    """Search for a nonempty positivity domain.

    Canonical probes run first: the maximally mixed state, any caller-supplied
    extra probes, and points along each detected Kraus-unitary fixed-point
    axis.  A seeded uniform ball sample follows.  Status:

    * ``FullDomain`` — every ball sample passes;
    * ``PartialDomain`` — some ball sample passes, or the map is regular
      (finite) and a canonical probe passes (a regular map fixing an interior
      segment maps a neighborhood of it inside the ball, so the domain has
      positive measure even when too thin to hit by sampling);
    * ``MeasureZeroDomain`` — the map is singular and only canonical probes
      pass;
    * ``NoWitnessFound`` — nothing passed; validity is not disproved, the
      probe budget is simply exhausted.

    Witnesses are sorted lexicographically and capped at 64 entries; every
    witness re-verifies under ``is_physical(apply(map, w))``.
    """
    core: list[tuple[float, float, float]] = [(0.0, 0.0, 0.0)]
    core.extend(tuple(float(c) for c in p) for p in probes.extra_probes)
    lines: list[tuple[float, float, float]] = []
    for axis in kraus_unitary_axes(map_):
        if axis is None:
            continue
        for t in np.linspace(-1.0, 1.0, probes.line_points):
            lines.append((float(t * axis[0]), float(t * axis[1]), float(t * axis[2])))
    core_pass = [p for p in core if _passes(map_, p)]
    line_pass = [p for p in lines if _passes(map_, p)]
    canonical_pass = core_pass + line_pass

    ball = sample_ball(probes.seed, probes.n_samples)
    n_pass = 0
    ball_witnesses: list[tuple[float, float, float]] = []
    for row in ball:
        p = (float(row[0]), float(row[1]), float(row[2]))
        if _passes(map_, p):
            n_pass += 1
            if len(ball_witnesses) < 64:
                ball_witnesses.append(p)

    singular = isinstance(map_, SingularMap)
    if n_pass == probes.n_samples:
        status = "FullDomain"
    elif n_pass > 0:
        status = "PartialDomain"
    elif canonical_pass:
        status = "MeasureZeroDomain" if singular else "PartialDomain"
    else:
        status = "NoWitnessFound"

    # cap at 64 witnesses, keeping the maximally mixed state and caller probes
    # first, then fixed-line probes, then ball samples; final order lexicographic
    selected: list[tuple[float, float, float]] = []
    for group in (core_pass, line_pass, ball_witnesses):
        for w in sorted(set(group)):
            if len(selected) >= 64:
                break
            if w not in selected:
                selected.append(w)
    witnesses = tuple(sorted(selected))
    return ValidityVerdict(
        status=status,
        witnesses=witnesses,
        sampled_fraction=n_pass / probes.n_samples,
        n_samples=probes.n_samples,
    )


# ---------------------------------------------------------------------------
# JSON map documents


def map_to_document(matrix: np.ndarray, rep: str) -> dict:
    """Serialize a 4x4 map matrix as the JSON map document."""
    if rep not in ("choi", "superop"):
        raise ValueError(f"rep must be 'choi' or 'superop', got {rep!r}")
    return {
        "rep": rep,
        "matrix": [[{"re": float(z.real), "im": float(z.imag)} for z in row]
                   for row in np.asarray(matrix, dtype=complex)],
    }


def document_to_superop(doc: dict) -> np.ndarray:
    """Parse the JSON map document, returning the superoperator matrix."""
    rep = doc.get("rep")
    if rep not in ("choi", "superop"):
        raise ValueError(f"map document 'rep' must be 'choi' or 'superop', got {rep!r}")
    rows = doc.get("matrix")
    if not isinstance(rows, list) or len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise ValueError("map document 'matrix' must be a 4x4 array of {re, im} cells")
    m = np.array([[complex(c["re"], c["im"]) for c in row] for row in rows])
    if rep == "choi":
        return superop_from_choi(m)
    return m
