import math
from fractions import Fraction

import pytest

from yamabe_bifurcation import degeneracy_instants, interval_neumann, morse_index
from yamabe_bifurcation.oracle import (
    brute_force_index,
    dense_scan_degeneracy,
    even_harmonic_dimension,
    fd_interval_spectrum,
    harmonic_dimension,
)


class TestFiniteDifference:
    def test_unit_interval_against_catalog(self):
        grid = fd_interval_spectrum(1, 2000, 5)
        exact = [float(e) for e, _ in interval_neumann(1).eigenvalues_leq(16)]
        assert len(exact) == 5
        for got, want in zip(grid.eigenvalues, exact):
            assert abs(got - want) <= max(grid.error_estimate * max(want, 1.0), 1e-8)

    def test_scaled_interval(self):
        grid = fd_interval_spectrum(2, 2000, 4)
        exact = [0.0, 0.25, 1.0, 2.25]
        for got, want in zip(grid.eigenvalues, exact):
            assert abs(got - want) < 1e-5

    def test_second_order_convergence(self):
        """Halving h should cut the error of lambda_2 = 4 by about 4x."""
        coarse = fd_interval_spectrum(1, 500, 3).eigenvalues[2]
        fine = fd_interval_spectrum(1, 1000, 3).eigenvalues[2]
        ratio = abs(coarse - 4.0) / abs(fine - 4.0)
        assert 3.5 < ratio < 4.5

    def test_argument_validation(self):
        with pytest.raises(ValueError):
            fd_interval_spectrum(1, 8, 2)
        with pytest.raises(ValueError):
            fd_interval_spectrum(1, 100, 80)
        with pytest.raises(ValueError):
            fd_interval_spectrum(0, 100, 2)


class TestHarmonicDimensions:
    def test_known_values(self):
        assert [harmonic_dimension(2, k) for k in range(5)] == [1, 3, 5, 7, 9]
        assert harmonic_dimension(3, 1) == 4
        assert harmonic_dimension(3, 2) == 9

    def test_even_known_values(self):
        assert [even_harmonic_dimension(2, k) for k in range(5)] == [1, 2, 3, 4, 5]
        assert even_harmonic_dimension(3, 1) == 3
        assert even_harmonic_dimension(3, 2) == 6

    def test_even_plus_odd_is_full(self):
        """Parity splits the harmonic space, so the even part plus the odd
        part (degree-k evens of the reflected count) recovers the full count."""
        for n in (2, 3):
            for k in range(1, 8):
                even = even_harmonic_dimension(n, k)
                odd = harmonic_dimension(n, k) - even
                assert odd >= 0
                # odd harmonics in x_{n+1} are x_{n+1} times even series data;
                # sanity floor: strictly fewer odds than the full space
                assert 0 < even <= harmonic_dimension(n, k)

    def test_limits_enforced(self):
        with pytest.raises(ValueError):
            harmonic_dimension(5, 2)
        with pytest.raises(ValueError):
            even_harmonic_dimension(2, 13)


class TestDenseScan:
    def test_bijection_with_exact_zeros(self, sphere_hemisphere):
        window = (0.01, 20)
        brackets = dense_scan_degeneracy(sphere_hemisphere, window, 100000, lam=60)
        exact = [
            float(inst.s)
            for inst in degeneracy_instants(sphere_hemisphere, (Fraction(1, 100), 20))
        ]
        assert len(brackets) == len(exact)
        for (lo, hi), s in zip(brackets, exact):
            assert lo - 1e-9 <= s <= hi + 1e-9

    def test_rigid_family_finds_nothing(self, torus_interval):
        assert dense_scan_degeneracy(torus_interval, (0.01, 100), 5000, lam=50) == []

    def test_bracket_width(self, sphere_interval):
        for lo, hi in dense_scan_degeneracy(sphere_interval, (0.5, 10), 5000, lam=30):
            assert hi - lo <= 2e-10 * lo + 1e-12

    def test_coarse_grid_rejected(self, sphere_hemisphere):
        with pytest.raises(ValueError):
            dense_scan_degeneracy(sphere_hemisphere, (0.1, 10), 100, lam=30)


class TestBruteForceIndex:
    def test_matches_engine_between_instants(self, sphere_hemisphere):
        instants = [
            inst.s for inst in degeneracy_instants(sphere_hemisphere, (Fraction(1, 100), 20))
        ]
        probes = [Fraction(1, 200)] + [
            (a + b) / 2 for a, b in zip(instants, instants[1:])
        ] + [25]
        for s in probes:
            assert brute_force_index(sphere_hemisphere, s, lam=300) == morse_index(
                sphere_hemisphere, s
            )

    def test_matches_engine_other_families(self, sphere_interval, torus_hemisphere):
        for fam, probes in (
            (sphere_interval, [Fraction(1, 2), 2, Fraction(13, 2)]),
            (torus_hemisphere, [Fraction(1, 5), Fraction(1, 2), 5]),
        ):
            for s in probes:
                assert brute_force_index(fam, s, lam=200) == morse_index(fam, s)

    def test_insufficient_lambda_rejected(self, sphere_hemisphere):
        with pytest.raises(ValueError):
            brute_force_index(sphere_hemisphere, Fraction(1, 100), lam=10)
