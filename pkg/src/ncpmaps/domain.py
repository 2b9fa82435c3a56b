"""Positivity-domain scans, fixed-line detection, and CSV export.

The positivity domain of a map is the subset of the Bloch ball whose image
stays inside the ball.  :func:`scan_domain` estimates it pointwise on a
regular lattice (reproducible, render-friendly) or a seeded Monte Carlo
sample; points where a singular map diverges are recorded as out-of-domain
data rather than raised.  :func:`detect_fixed_lines` recovers the invariant
segments (eigenstate mixtures of unitary-proportional Kraus operators) that
carry the domain of singular maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import DivergentMap, apply, kraus_unitary_axes
from .states import bloch_to_state, in_ball, is_physical, sample_ball

LINE_INVARIANCE_TOL = 1e-10
_LINE_SAMPLES = 16


@dataclass(frozen=True)
class GridSpec:
    """Regular lattice over the bounding cube, ``resolution`` points per axis."""

    resolution: int


@dataclass(frozen=True)
class MonteCarloSpec:
    """Uniform ball sample of size n from the seeded counter-based stream."""

    n: int
    seed: int = 0


@dataclass(frozen=True)
class DomainPoint:
    bloch: tuple[float, float, float]
    lambda_min: float
    in_domain: bool
    divergent: bool = False


@dataclass(frozen=True)
class FixedLine:
    kind: str  # "axis" | "ball"
    direction: tuple[float, float, float] | None

    def to_dict(self) -> dict:
        return {"kind": self.kind,
                "direction": None if self.direction is None else list(self.direction)}


@dataclass(frozen=True)
class DomainSummary:
    n_points: int
    n_in_domain: int
    fraction: float
    lambda_min_low: float
    lambda_min_high: float
    mode: str

    def to_dict(self) -> dict:
        return {
            "n_points": self.n_points,
            "n_in_domain": self.n_in_domain,
            "fraction": self.fraction,
            "lambda_min_low": self.lambda_min_low,
            "lambda_min_high": self.lambda_min_high,
            "mode": self.mode,
        }


@dataclass(frozen=True)
class DomainReport:
    map_label: str
    points: tuple[DomainPoint, ...]
    summary: DomainSummary
    fixed_lines: tuple[FixedLine, ...]
    line_points: tuple[DomainPoint, ...]


def _symmetric_axis(resolution: int) -> list[float]:
    """Lattice values spanning [-1, 1], exactly closed under negation."""
    half = resolution // 2
    left = [-1.0 + 2.0 * i / (resolution - 1) for i in range(half)]
    mid = [0.0] if resolution % 2 else []
    return left + mid + [-v for v in reversed(left)]


def _evaluate(map_, p) -> DomainPoint:
    try:
        ok, lam = is_physical(apply(map_, p))
    except DivergentMap:
        return DomainPoint(bloch=p, lambda_min=float("-inf"), in_domain=False, divergent=True)
    return DomainPoint(bloch=p, lambda_min=lam, in_domain=ok)


def scan_domain(map_, spec, label: str = "map") -> DomainReport:
    """Evaluate the positivity domain of a map over a grid or Monte Carlo sample.

    Every ball point goes through ``apply`` + ``is_physical``; the report is
    deterministic for fixed spec parameters and assembled in generation
    order.  Detected fixed lines are probed separately (``line_points``) and
    do not enter the sampled fraction.
    """
    if isinstance(spec, GridSpec):
        if spec.resolution < 8:
            raise ValueError("grid resolution must be >= 8")
        axis = _symmetric_axis(spec.resolution)
        pts = [(x, y, z) for x in axis for y in axis for z in axis if in_ball((x, y, z))]
        mode = f"grid({spec.resolution})"
    elif isinstance(spec, MonteCarloSpec):
        if spec.n < 1:
            raise ValueError("sample size must be >= 1")
        pts = [(float(r[0]), float(r[1]), float(r[2])) for r in sample_ball(spec.seed, spec.n)]
        mode = f"montecarlo(n={spec.n}, seed={spec.seed})"
    else:
        raise TypeError(f"spec must be GridSpec or MonteCarloSpec, got {type(spec).__name__}")

    points = tuple(_evaluate(map_, p) for p in pts)
    n_in = sum(1 for pt in points if pt.in_domain)
    finite = [pt.lambda_min for pt in points if not pt.divergent]
    summary = DomainSummary(
        n_points=len(points),
        n_in_domain=n_in,
        fraction=n_in / len(points),
        lambda_min_low=min(finite) if finite else float("-inf"),
        lambda_min_high=max(finite) if finite else float("-inf"),
        mode=mode,
    )

    lines = detect_fixed_lines(map_)
    line_points = []
    for line in lines:
        if line.direction is None:
            continue
        d = line.direction
        for t in np.linspace(-1.0, 1.0, _LINE_SAMPLES):
            line_points.append(_evaluate(map_, (float(t * d[0]), float(t * d[1]), float(t * d[2]))))

    return DomainReport(map_label=label, points=points, summary=summary,
                        fixed_lines=tuple(lines), line_points=tuple(line_points))


def detect_fixed_lines(map_) -> list[FixedLine]:
    """Invariant Bloch-ball segments of a map, verified pointwise.

    Candidates come from the eigenstate axes of unitary-proportional Kraus
    operators; each is kept only if the map fixes 16 sample points along it
    to 1e-10.  A Kraus operator proportional to the identity nominates the
    whole ball, reported as the sentinel ``FixedLine(kind="ball")`` when the
    map is verified to act as the identity on sample points.
    """
    verified = []
    for axis in kraus_unitary_axes(map_):
        if axis is None:
            probe = sample_ball(7, _LINE_SAMPLES)
            if all(_is_fixed(map_, tuple(p)) for p in probe):
                verified.append(FixedLine(kind="ball", direction=None))
            continue
        ts = np.linspace(-1.0, 1.0, _LINE_SAMPLES)
        if all(_is_fixed(map_, (t * axis[0], t * axis[1], t * axis[2])) for t in ts):
            verified.append(FixedLine(kind="axis", direction=axis))
    return sorted(verified, key=lambda l: (l.kind, l.direction or ()))


def _is_fixed(map_, p) -> bool:
    try:
        out = apply(map_, p)
    except DivergentMap:
        return False
    return float(np.max(np.abs(out - bloch_to_state(p)))) <= LINE_INVARIANCE_TOL


def export_domain(report: DomainReport, path) -> None:
    """Write the scan as CSV rows ``a1,a2,a3,lambda_min,in_domain``.

    Floats use shortest round-trip representation (well past 6 significant
    digits); divergent points carry ``lambda_min = -inf``.  Rows appear in
    scan order, ball points first, then fixed-line probe points.
    """
    lines = ["a1,a2,a3,lambda_min,in_domain"]
    for pt in list(report.points) + list(report.line_points):
        a1, a2, a3 = (float(c) for c in pt.bloch)
        lines.append(f"{a1!r},{a2!r},{a3!r},{float(pt.lambda_min)!r},{int(pt.in_domain)}")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write domain CSV to {path}: {exc}") from exc


def read_domain_csv(path) -> list[DomainPoint]:
    """Parse a file written by :func:`export_domain`."""
    points = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "a1,a2,a3,lambda_min,in_domain":
            raise ValueError(f"unexpected domain CSV header in {path}: {header!r}")
        for line in fh:
            a1, a2, a3, lam, flag = line.strip().split(",")
            lam = float(lam)
            points.append(DomainPoint(
                bloch=(float(a1), float(a2), float(a3)),
                lambda_min=lam,
                in_domain=bool(int(flag)),
                divergent=lam == float("-inf"),
            ))
    return points
