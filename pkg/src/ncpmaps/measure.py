"""Monte Carlo volume measures over map families and divergence scans.

The reference set for the measure question is the cube [-1, 1]^3 of unital
Pauli maps with full positivity domain; within it the CP maps fill the
inscribed tetrahedron (one third of the volume), so the NCP/CP volume ratio
converges to 2.  No estimator is offered for the unrestricted map set: its
Choi spectra are unbounded, so no normalizable volume measure exists there,
and :func:`divergence_scan` provides the numeric evidence (intermediate-map
eigenvalues exceeding any bound near a singularity) while
:func:`boundedness_check_cp` confirms that CP spectra stay inside [0, 2].

Sampling is counter-based and shard-mergeable: sample streams are keyed on
(seed, shard index) with a fixed shard size, so serial and multi-worker
runs produce identical per-point verdicts and therefore identical
estimates.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import NotUnitary, SingularMap, choi_from_superop, classify
from .families import (
    ControlledUnitaryFamily,
    OutOfRange,
    cnot_intermediate_map,
    controlled_q_intermediate_map,
    pauli_choi,
    rotated_pauli_choi,
)
from .matops import ID2, eigvals_hermitian, vec

SHARD_SIZE = 4096
CP_BOUND_TOL = 1e-9


@dataclass(frozen=True)
class MeasureEstimate:
    family: str
    n_samples: int
    seed: int
    cp_fraction: float
    ncp_fraction: float
    ratio: float
    stderr: float  # binomial standard error of cp_fraction
    ratio_stderr: float  # first-order propagation onto the ratio
    workers: int

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n_samples,
            "seed": self.seed,
            "cp_fraction": self.cp_fraction,
            "ncp_fraction": self.ncp_fraction,
            "ratio": self.ratio,
            "stderr": self.stderr,
            "ratio_stderr": self.ratio_stderr,
            "workers": self.workers,
        }


@dataclass(frozen=True)
class DivergenceScan:
    family: str
    grid: tuple[float, ...]
    values: tuple[float, ...]  # per-point max |Choi eigenvalue|
    eigenvalue_sums: tuple[float, ...]
    bound: float
    flags: tuple[bool, ...]
    sup: float
    exceeded: bool

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "grid": list(self.grid),
            "values": list(self.values),
            "eigenvalue_sums": list(self.eigenvalue_sums),
            "bound": self.bound,
            "flags": [bool(f) for f in self.flags],
            "sup": self.sup,
            "exceeded": self.exceeded,
        }


@dataclass(frozen=True)
class CPBoundednessReport:
    n: int
    seed: int
    violations: int
    min_eigenvalue: float
    max_eigenvalue: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "violations": self.violations,
            "min_eigenvalue": self.min_eigenvalue,
            "max_eigenvalue": self.max_eigenvalue,
        }


@dataclass(frozen=True)
class LatticeCount:
    resolution: int
    cp_count: int
    total: int
    cp_fraction: float


# ---------------------------------------------------------------------------
# sharded sampling


def _shard_rng(seed: int, shard: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, shard], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _shards(n: int) -> list[tuple[int, int]]:
    """(shard index, sample count) pairs covering n samples."""
    out = []
    full, rem = divmod(n, SHARD_SIZE)
    for i in range(full):
        out.append((i, SHARD_SIZE))
    if rem:
        out.append((full, rem))
    return out


def _shard_points(seed: int, shard: int, count: int) -> np.ndarray:
    return 2.0 * _shard_rng(seed, shard).random((count, 3)) - 1.0


def _run_pauli_shard(args) -> int:
    seed, shard, count = args
    cp = 0
    for eta in _shard_points(seed, shard, count):
        if classify(pauli_choi(eta)).classification == "CP":
            cp += 1
    return cp


def _run_rotated_shard(args) -> int:
    seed, shard, count, u = args
    u = np.asarray(u, dtype=complex)
    cp = 0
    for eta in _shard_points(seed, shard, count):
        if classify(rotated_pauli_choi(eta, u)).classification == "CP":
            cp += 1
    return cp


def _merge(task_fn, tasks, workers: int) -> int:
    if workers <= 1:
        return sum(task_fn(t) for t in tasks)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(task_fn, tasks, chunksize=1))


def _estimate(family: str, n: int, seed: int, workers: int, cp_count: int) -> MeasureEstimate:
    p = cp_count / n
    q = 1.0 - p
    stderr = math.sqrt(p * q / n)
    ratio = q / p if p > 0 else float("inf")
    ratio_stderr = stderr / (p * p) if p > 0 else float("inf")
    return MeasureEstimate(family=family, n_samples=n, seed=seed, cp_fraction=p,
                           ncp_fraction=q, ratio=ratio, stderr=stderr,
                           ratio_stderr=ratio_stderr, workers=workers)


def estimate_pauli_measure(n: int, seed: int, workers: int = 1) -> MeasureEstimate:
    """NCP/CP volume-fraction estimate over the Pauli cube.

    Samples transfer-eigenvalue triples uniformly in [-1, 1]^3 and
    classifies each through the Choi construction.  Deterministic per seed
    and independent of the worker count (integer counts merge exactly).
    """
    if n < 1000:
        raise OutOfRange("n must be >= 1000 for a meaningful estimate")
    tasks = [(seed, shard, count) for shard, count in _shards(n)]
    return _estimate("pauli", n, seed, workers, _merge(_run_pauli_shard, tasks, workers))


def estimate_rotated_measure(u: np.ndarray, n: int, seed: int, workers: int = 1) -> MeasureEstimate:
    """Same estimate over the Pauli simplex rotated by a fixed unitary U.

    The rotation leaves every Choi spectrum (hence every verdict) invariant,
    so with the same seed this reproduces the unrotated estimate.
    """
    u = np.asarray(u, dtype=complex)
    if float(np.max(np.abs(u.conj().T @ u - ID2))) > 1e-12:
        raise NotUnitary("rotation matrix must be unitary to 1e-12")
    if n < 1000:
        raise OutOfRange("n must be >= 1000 for a meaningful estimate")
    tasks = [(seed, shard, count, u) for shard, count in _shards(n)]
    return _estimate("rotated", n, seed, workers, _merge(_run_rotated_shard, tasks, workers))


def lattice_cp_fraction(resolution: int = 101) -> LatticeCount:
    """Brute-force CP fraction on a regular lattice of the Pauli cube.

    Independent of the sampling/classification path: uses the closed-form
    Choi eigenvalues (twice the Pauli mixing weights) evaluated on every
    lattice point, with the same -1e-9 CP threshold.
    """
    vals = np.linspace(-1.0, 1.0, resolution)
    e1 = vals[:, None, None]
    e2 = vals[None, :, None]
    e3 = vals[None, None, :]
    lim = -0.5 * CP_BOUND_TOL  # weights >= lim  <=>  eigenvalues 2 p_i >= -1e-9
    cp = ((1.0 + e1 + e2 + e3 >= 4.0 * lim)
          & (1.0 + e1 - e2 - e3 >= 4.0 * lim)
          & (1.0 - e1 + e2 - e3 >= 4.0 * lim)
          & (1.0 - e1 - e2 + e3 >= 4.0 * lim))
    count = int(cp.sum())
    total = resolution ** 3
    return LatticeCount(resolution=resolution, cp_count=count, total=total,
                        cp_fraction=count / total)


# ---------------------------------------------------------------------------
# divergence evidence


def divergence_scan(family: str, grid, bound: float,
                    q_angles: tuple[float, float, float] | None = None) -> DivergenceScan:
    """Max |Choi eigenvalue| of the intermediate map across a parameter grid.

    ``family`` is "cnot" (grid of control angles theta), "controlled-q"
    (grid of control angles for a fixed Q given by ``q_angles``), or
    "identity" (constant reference).  The grid must exclude exact singular
    points; hitting one raises ValueError.
    """
    grid = [float(g) for g in grid]
    values, sums = [], []
    for g in grid:
        if family == "cnot":
            m = cnot_intermediate_map(g)
        elif family == "controlled-q":
            if q_angles is None:
                raise ValueError("controlled-q scan requires q_angles=(theta, phi, xi)")
            m = controlled_q_intermediate_map(ControlledUnitaryFamily(*q_angles, control_angle=g))
        elif family == "identity":
            m = np.eye(4, dtype=complex)
        else:
            raise ValueError(f"unknown scan family {family!r}")
        if isinstance(m, SingularMap):
            raise ValueError(f"grid point {g!r} is an exact singularity; exclude it")
        evals = eigvals_hermitian(choi_from_superop(m))
        values.append(float(np.max(np.abs(evals))))
        sums.append(float(np.sum(evals)))
    flags = tuple(v > bound for v in values)
    sup = max(values)
    return DivergenceScan(family=family, grid=tuple(grid), values=tuple(values),
                          eigenvalue_sums=tuple(sums), bound=float(bound),
                          flags=flags, sup=sup, exceeded=sup > bound)


def _inv_sqrt_psd2(s: np.ndarray) -> np.ndarray:
    """Inverse square root of a 2x2 Hermitian positive definite matrix."""
    t = s[0, 0].real + s[1, 1].real
    d = (s[0, 0] * s[1, 1] - s[0, 1] * s[1, 0]).real
    root = (s + math.sqrt(max(d, 0.0)) * ID2) / math.sqrt(t + 2.0 * math.sqrt(max(d, 0.0)))
    det = root[0, 0] * root[1, 1] - root[0, 1] * root[1, 0]
    return np.array([[root[1, 1], -root[0, 1]], [-root[1, 0], root[0, 0]]], dtype=complex) / det


def random_cp_choi(rng: np.random.Generator) -> np.ndarray:
    """Choi matrix of a random CP trace-preserving map (normalized Kraus set)."""
    k = int(rng.integers(1, 5))
    g = rng.normal(size=(k, 2, 2)) + 1j * rng.normal(size=(k, 2, 2))
    s = np.zeros((2, 2), dtype=complex)
    for gi in g:
        s += gi.conj().T @ gi
    t = _inv_sqrt_psd2(s)
    b = np.zeros((4, 4), dtype=complex)
    for gi in g:
        v = vec(gi @ t)
        b += np.outer(v, v.conj())
    return b


def boundedness_check_cp(n: int, seed: int) -> CPBoundednessReport:
    """Sample n random CP trace-preserving maps and check the Choi spectra
    stay inside [0, 2] (to 1e-9 numerical slack on both edges)."""
    rng = _shard_rng(seed, 0)
    violations = 0
    lo, hi = float("inf"), float("-inf")
    for _ in range(n):
        evals = eigvals_hermitian(random_cp_choi(rng))
        lo = min(lo, float(evals[-1]))
        hi = max(hi, float(evals[0]))
        if evals[-1] < -CP_BOUND_TOL or evals[0] > 2.0 + CP_BOUND_TOL:
            violations += 1
    return CPBoundednessReport(n=n, seed=seed, violations=violations,
                               min_eigenvalue=lo, max_eigenvalue=hi)
