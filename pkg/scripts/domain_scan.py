#!/usr/bin/env python3
"""Scan the positivity domain of the reference NCP map and export the cloud.

Writes out/domain_reference.csv (grid) and out/domain_reference_mc.csv
(Monte Carlo), ready for any 3-D plotter; prints the in-domain fractions.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ncpmaps.channels import superop_from_choi
from ncpmaps.domain import GridSpec, MonteCarloSpec, export_domain, scan_domain
from ncpmaps.families import bncp_example


def main() -> None:
    out = pathlib.Path(__file__).resolve().parents[1] / "out"
    out.mkdir(exist_ok=True)
    superop = superop_from_choi(bncp_example())

    grid = scan_domain(superop, GridSpec(resolution=48), label="reference-ncp")
    export_domain(grid, out / "domain_reference.csv")
    print(f"grid 48^3: fraction in domain = {grid.summary.fraction:.4f} "
          f"({grid.summary.n_in_domain}/{grid.summary.n_points})")

    mc = scan_domain(superop, MonteCarloSpec(n=100_000, seed=0), label="reference-ncp")
    export_domain(mc, out / "domain_reference_mc.csv")
    print(f"montecarlo 1e5: fraction in domain = {mc.summary.fraction:.4f}")


if __name__ == "__main__":
    main()
