#!/usr/bin/env python3
"""Track the intermediate-map Choi spectrum as the control angle approaches
the double-CNOT singularity at pi/4.

The largest |eigenvalue| grows like 1/(2 epsilon) while the eigenvalue sum
stays pinned at 2: the spectrum is unbounded but trace-preserving.
"""

import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ncpmaps.measure import boundedness_check_cp, divergence_scan


def main() -> None:
    grid = [math.pi / 4 - 10.0 ** (-k) for k in range(1, 8)]
    scan = divergence_scan("cnot", grid, bound=1e6)
    print("eps        max|eig|        sum(eigs)")
    for k, (v, s) in enumerate(zip(scan.values, scan.eigenvalue_sums), start=1):
        print(f"1e-{k}      {v:14.4f}  {s:+.12f}")
    print(f"bound 1e6 exceeded: {scan.exceeded}")

    report = boundedness_check_cp(10_000, seed=0)
    print(f"\n10^4 random CP maps: eigenvalues in "
          f"[{report.min_eigenvalue:.3e}, {report.max_eigenvalue:.6f}], "
          f"violations = {report.violations}")


if __name__ == "__main__":
    main()
