"""Tour of the factor spectrum catalog.

Every factor is represented the same way: exact rational eigenvalues with
multiplicities, a scalar curvature, and boundary flags. Enumeration is always
complete up to the requested cutoff, which is what makes the downstream
degeneracy search provably exhaustive.
"""

from fractions import Fraction

from yamabe_bifurcation import (
    flat_torus,
    hemisphere_neumann,
    interval_neumann,
    round_sphere,
)


def show(spec, cutoff):
    boundary = "minimal boundary" if spec.boundary_minimal else (
        "boundary" if spec.has_boundary else "closed"
    )
    print(f"\n{spec.label}: dim {spec.dim}, R = {spec.scalar_curvature}, {boundary}")
    for eig, mult in spec.eigenvalues_leq(cutoff):
        print(f"  {str(eig):>8}  x{mult}")


show(interval_neumann(1), 16)          # segment [0, pi], eigenvalues k^2
show(interval_neumann(2), 4)           # segment [0, 2 pi], eigenvalues k^2/4
show(round_sphere(2, 1), 20)           # unit two-sphere, k(k+1), mult 2k+1
show(hemisphere_neumann(2, 1), 20)     # Neumann hemisphere, same eigenvalues, mult k+1
show(round_sphere(3, 4), 5)            # three-sphere of radius 2
show(flat_torus([1, 1]), 10)           # square torus with L = 2 pi on both sides
show(flat_torus([1, Fraction(1, 4)]), 10)  # rectangular torus, exact rationals
