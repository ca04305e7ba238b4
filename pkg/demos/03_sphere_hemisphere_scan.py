"""Full scan of S^2 x S^2_+: instants, index jumps, certification.

Both curvatures are positive, so zeros accumulate at 0 (increasing branches)
and at infinity (decreasing branches). Every instant found in the window is
certified by comparing the Morse index on its two sides.
"""

from fractions import Fraction

from yamabe_bifurcation import (
    classify_family,
    hemisphere_neumann,
    make_family,
    morse_index,
    round_sphere,
)

fam = make_family(round_sphere(2, 1), hemisphere_neumann(2, 1))
result = classify_family(fam, (Fraction(1, 100), 20))

print(f"family: {fam.label}")
print(f"classification: {result.case.value}")
print(f"{result.accumulation}\n")

for ci in result.instants:
    inst = ci.instant
    pairs = " ".join(f"({br.i},{br.j})" for br in inst.branches)
    print(
        f"s = {str(inst.s):>5}  branches {pairs}  mult {inst.total_multiplicity}  "
        f"index {ci.n_minus} -> {ci.n_plus}  "
        f"{'certified bifurcation' if ci.certified else 'not certified'}"
    )

print("\nMorse index between instants (constant there):")
for s in (Fraction(1, 4), 1, 3, 12):
    print(f"  n_s at s = {s}: {morse_index(fam, s)}")
