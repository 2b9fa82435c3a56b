"""Command-line surface: classify, domain, measure, scan, validate.

All commands are deterministic given their flags (seed included) and emit
JSON with floats rounded to 12 significant digits; ``--no-timestamp``
suppresses the only non-reproducible field.  Exit codes: 0 success, 2 input
error, 3 request rejected on theoretical grounds, 4 numerical failure.

Angles accept radians with pi literals, e.g. ``pi/4``, ``-pi/6``,
``2pi/3``, ``pi/4-1e-7``, so exact singular points are expressible.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from datetime import datetime, timezone

import numpy as np

from . import channels, domain, families, measure
from .matops import NotHermitian, SingularMatrix

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_REJECTED = 3
EXIT_NUMERICAL = 4

_ANGLE_RE = re.compile(
    r"^(?P<coef>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*pi\s*"
    r"(?:/\s*(?P<div>\d+(?:\.\d*)?))?\s*(?P<off>[+-].+)?$"
)


def parse_angle(text: str) -> float:
    """Radians from a decimal literal or a pi expression like "pi/4-1e-7"."""
    s = text.strip().lower().replace(" ", "")
    if "pi" not in s:
        return float(s)
    m = _ANGLE_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse angle {text!r}")
    coef = m.group("coef")
    coef = -1.0 if coef == "-" else 1.0 if coef in ("", "+") else float(coef)
    value = coef * math.pi
    if m.group("div"):
        value /= float(m.group("div"))
    if m.group("off"):
        value += float(m.group("off"))
    return value


def _parse_angle_list(text: str) -> list[float]:
    return [parse_angle(part) for part in text.split(",") if part.strip()]


def _round12(obj):
    """Round every float to 12 significant digits for stable output."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}") if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _emit(payload: dict, args, extra_config: dict) -> None:
    doc = {"command": payload.pop("_command"), "config": _round12(extra_config)}
    if not args.no_timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    doc.update(_round12(payload))
    text = json.dumps(doc, indent=2, sort_keys=False)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load_map_file(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return channels.document_to_superop(doc)


def _family_map(args):
    """Build the map selected by --family flags; returns (map, descriptor)."""
    if args.family == "cnot":
        theta = parse_angle(args.theta)
        m = families.cnot_intermediate_map(theta)
        desc = {"family": "cnot", "theta": theta}
    elif args.family == "dephasing":
        model = families.DephasingModel(nu=args.nu)
        m = families.dephasing_intermediate(model, args.q1, args.q2)
        desc = {"family": "dephasing", "nu": args.nu, "q1": args.q1, "q2": args.q2,
                "alpha_minus": model.alpha_minus, "alpha_plus": model.alpha_plus}
    else:
        raise ValueError(f"unknown family {args.family!r}")
    if isinstance(m, channels.SingularMap):
        desc.update(m.descriptor())
    else:
        desc["singular"] = False
    return m, desc


def cmd_classify(args) -> int:
    superop = _load_map_file(args.map_file)
    choi = channels.choi_from_superop(superop)
    verdict = channels.classify(choi, tol=args.cp_tol)
    _emit({"_command": "classify", **verdict.to_dict()},
          args, {"map_file": args.map_file, "cp_tol": args.cp_tol})
    return EXIT_OK


def cmd_domain(args) -> int:
    if args.map_file:
        map_ = _load_map_file(args.map_file)
        desc = {"map_file": args.map_file, "singular": False}
        label = args.map_file
    else:
        map_, desc = _family_map(args)
        label = desc["family"]
    if args.mode == "grid":
        spec = domain.GridSpec(resolution=args.resolution)
    else:
        spec = domain.MonteCarloSpec(n=args.n, seed=args.seed)
    report = domain.scan_domain(map_, spec, label=label)
    domain.export_domain(report, args.csv_out)
    line_witnesses = [list(pt.bloch) for pt in report.line_points if pt.in_domain]
    _emit({
        "_command": "domain",
        "map": desc,
        "summary": report.summary.to_dict(),
        "fixed_lines": [l.to_dict() for l in report.fixed_lines],
        "line_witnesses": line_witnesses[:64],
        "csv": args.csv_out,
    }, args, {"mode": args.mode, "resolution": args.resolution,
              "n": args.n, "seed": args.seed})
    return EXIT_OK


def cmd_measure(args) -> int:
    if args.family == "unrestricted":
        sys.stderr.write(
            "measure rejected: the unrestricted qubit-map set has unbounded Choi\n"
            "spectra (intermediate maps diverge along a continuous family of\n"
            "singular parameters), so it carries no normalizable volume measure.\n"
            "Restrict to --family pauli or --family rotated.\n")
        return EXIT_REJECTED
    if args.family == "pauli":
        est = measure.estimate_pauli_measure(args.n, args.seed, workers=args.workers)
    else:
        u = np.eye(2, dtype=complex) if args.unitary is None else _load_unitary(args.unitary)
        est = measure.estimate_rotated_measure(u, args.n, args.seed, workers=args.workers)
    _emit({"_command": "measure", **est.to_dict()},
          args, {"family": args.family, "n": args.n, "seed": args.seed,
                 "workers": args.workers, "unitary": args.unitary})
    return EXIT_OK


def _load_unitary(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        rows = json.load(fh)
    if not isinstance(rows, list) or len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError("unitary file must hold a 2x2 array of {re, im} cells")
    return np.array([[complex(c["re"], c["im"]) for c in row] for row in rows])


def cmd_scan(args) -> int:
    grid = _parse_angle_list(args.grid)
    q_angles = None
    if args.q_theta is not None or args.family == "controlled-q":
        q_angles = (parse_angle(args.q_theta or "0"),
                    parse_angle(args.q_phi or "0"),
                    parse_angle(args.q_xi or "0"))
    scan = measure.divergence_scan(args.family, grid, args.bound, q_angles=q_angles)
    _emit({"_command": "scan", **scan.to_dict()},
          args, {"family": args.family, "grid": args.grid, "bound": args.bound,
                 "q_theta": args.q_theta, "q_phi": args.q_phi, "q_xi": args.q_xi})
    return EXIT_OK


def cmd_validate(args) -> int:
    if args.map_file:
        map_ = _load_map_file(args.map_file)
        desc = {"map_file": args.map_file, "singular": False}
    else:
        map_, desc = _family_map(args)
    probes = channels.ProbeConfig(n_samples=args.probes, seed=args.seed)
    verdict = channels.check_validity(map_, probes)
    _emit({"_command": "validate", "map": desc, **verdict.to_dict()},
          args, {"probes": args.probes, "seed": args.seed})
    return EXIT_OK


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=["cnot", "dephasing"])
    p.add_argument("--theta", default="0", help="control angle (cnot family)")
    p.add_argument("--nu", type=float, default=1.0, help="non-Markovianity parameter")
    p.add_argument("--q1", type=float, default=0.0)
    p.add_argument("--q2", type=float, default=0.0)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ncpmaps", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--no-timestamp", action="store_true")

    p = sub.add_parser("classify", help="CP/NCP verdict for a JSON map document")
    p.add_argument("map_file")
    p.add_argument("--cp-tol", type=float, default=channels.CP_EIGENVALUE_TOL,
                   help="override the CP threshold on the minimum Choi eigenvalue")
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("domain", help="positivity-domain scan to CSV + JSON summary")
    p.add_argument("map_file", nargs="?", help="JSON map document")
    _add_family_flags(p)
    p.add_argument("--mode", choices=["grid", "montecarlo"], default="montecarlo")
    p.add_argument("--resolution", type=int, default=32)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--csv-out", required=True)
    common(p)
    p.set_defaults(fn=cmd_domain)

    p = sub.add_parser("measure", help="Monte Carlo NCP/CP volume-fraction estimate")
    p.add_argument("--family", choices=["pauli", "rotated", "unrestricted"], required=True)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--unitary", help="JSON file with a 2x2 unitary (rotated family)")
    common(p)
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("scan", help="divergence scan of intermediate-map Choi spectra")
    p.add_argument("--family", choices=["cnot", "controlled-q", "identity"], required=True)
    p.add_argument("--grid", required=True,
                   help="comma-separated angles, e.g. 'pi/4-1e-1,pi/4-1e-2'")
    p.add_argument("--bound", type=float, default=1e6)
    p.add_argument("--q-theta")
    p.add_argument("--q-phi")
    p.add_argument("--q-xi")
    common(p)
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("validate", help="positivity-domain search (validity verdict)")
    p.add_argument("map_file", nargs="?", help="JSON map document")
    _add_family_flags(p)
    p.add_argument("--probes", type=int, default=10_000)
    common(p)
    p.set_defaults(fn=cmd_validate)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError,
            NotHermitian, channels.NotUnitary, families.OutOfRange,
            families.OutOfCube) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (ArithmeticError, SingularMatrix, channels.DivergentMap) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
