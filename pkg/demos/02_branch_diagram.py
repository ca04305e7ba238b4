"""Eigenvalue branches of J_s for S^2 x S^2_+ and where they vanish.

Each branch is the hyperbola sigma_{i,j}(s) = a + b/s with exact rational
coefficients; it is monotone, so it crosses zero at most once, at s = -b/a.
This script prints the first few branches with their zeros, then writes a CSV
suitable for plotting (one column per branch).
"""

import csv
import sys

from yamabe_bifurcation import (
    branch_from_indices,
    branch_zero,
    hemisphere_neumann,
    make_family,
    round_sphere,
)

fam = make_family(round_sphere(2, 1), hemisphere_neumann(2, 1))
print(f"family: {fam.label}, thresholds T1 = {fam.threshold1}, T2 = {fam.threshold2}")

branches = []
for i in range(4):
    for j in range(4):
        if i + j == 0:
            continue
        br = branch_from_indices(fam, i, j)
        branches.append(br)
        zero = branch_zero(br)
        where = f"vanishes at s = {zero}" if zero is not None else "never vanishes"
        print(
            f"sigma_{i}{j}(s) = {br.a} + ({br.b})/s  "
            f"[mult {br.multiplicity}, {br.monotonicity.value}]  {where}"
        )

writer = csv.writer(sys.stdout)
print("\nsampled values on [0.1, 3]:")
writer.writerow(["s"] + [f"sigma_{br.i}_{br.j}" for br in branches])
for k in range(30):
    s = 0.1 + k * 0.1
    writer.writerow([f"{s:.1f}"] + [f"{float(br.a) + float(br.b) / s:+.4f}" for br in branches])
