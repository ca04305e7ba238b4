"""Spectral models of the factor manifolds.

A ``FactorSpectrum`` is the data the product construction actually consumes:
dimension, constant scalar curvature, boundary flags, and the ordered distinct
Laplace eigenvalues with multiplicities (Neumann eigenvalues when the factor
has a boundary).  Catalog constructors cover the interval, the round sphere,
the closed hemisphere and the flat torus; any other factor can be supplied as
a text file via :func:`custom_from_file`.

Every catalog spectrum satisfies a completeness contract: asked for all
eigenvalues up to a cutoff, it returns a provably complete finite list, for
any cutoff.  Custom spectra are complete only up to their declared
``lambda_max``; asking beyond it raises ``IncompleteSpectrumError`` instead of
silently truncating.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from . import scalars
from .errors import IncompleteSpectrumError, SpectrumFormatError
from .scalars import Scalar, as_exact

Level = Tuple[Scalar, int]


@dataclass(frozen=True)
class FactorSpectrum:
    """One factor manifold, reduced to its spectral data.

    ``enum_leq(bound)`` must return the complete ascending list of distinct
    (eigenvalue, multiplicity) pairs with eigenvalue <= bound; it is the only
    enumeration primitive, everything else derives from it.
    """

    dim: int
    scalar_curvature: Scalar
    has_boundary: bool
    boundary_minimal: bool
    label: str
    enum_leq: Callable[[Scalar], List[Level]]
    lambda_max: Optional[Scalar] = None   # None: complete for every cutoff
    tolerance: Optional[float] = None     # None: exact rational mode

    def _check_bound(self, bound) -> None:
        if bound < 0:
            raise ValueError(f"{self.label}: negative eigenvalue bound {bound}")
        if self.lambda_max is not None and scalars.gt(bound, self.lambda_max, self.tolerance):
            raise IncompleteSpectrumError(
                f"{self.label}: spectrum is only complete up to {scalars.fmt(self.lambda_max, self.tolerance)}, "
                f"but eigenvalues up to {scalars.fmt(bound, self.tolerance)} are required"
            )

    def eigenvalues_leq(self, bound) -> List[Level]:
        """All (eigenvalue, multiplicity) with eigenvalue <= bound, ascending."""
        self._check_bound(bound)
        return self.enum_leq(bound)

    def eigenvalues_below(self, bound) -> List[Level]:
        """All (eigenvalue, multiplicity) with eigenvalue strictly < bound."""
        if bound < 0:
            raise ValueError(f"{self.label}: negative eigenvalue bound {bound}")
        if bound == 0:
            return []
        levels = self.eigenvalues_leq(bound)
        while levels and scalars.close(levels[-1][0], bound, self.tolerance):
            levels = levels[:-1]
        return levels

    def level(self, index: int) -> Level:
        """The ``index``-th distinct eigenvalue with its multiplicity."""
        if index < 0:
            raise ValueError("negative level index")
        if self.lambda_max is not None:
            levels = self.enum_leq(self.lambda_max)
            if index >= len(levels):
                raise IncompleteSpectrumError(
                    f"{self.label}: level {index} lies beyond the declared "
                    f"completeness bound {scalars.fmt(self.lambda_max, self.tolerance)}"
                )
            return levels[index]
        bound = self.scalar_curvature if self.scalar_curvature > 0 else 1
        while True:
            levels = self.enum_leq(bound)
            if index < len(levels):
                return levels[index]
            bound *= 4

    def rescaled_metric(self, factor) -> "FactorSpectrum":
        """Spectrum of the homothetic metric factor*g: eigenvalues and scalar
        curvature are divided by the factor."""
        c = scalars.as_scalar(factor, self.tolerance)
        if c <= 0:
            raise ValueError("metric scaling factor must be positive")
        inner = self.enum_leq
        scaled = lambda bound: [(e / c, m) for e, m in inner(bound * c)]
        return replace(
            self,
            scalar_curvature=self.scalar_curvature / c,
            enum_leq=scaled,
            lambda_max=None if self.lambda_max is None else self.lambda_max / c,
            label=f"{self.label} rescaled by {scalars.fmt(c, self.tolerance)}",
        )


def eigenvalues_below(spectrum: FactorSpectrum, bound) -> List[Level]:
    """Module-level alias for :meth:`FactorSpectrum.eigenvalues_below`."""
    return spectrum.eigenvalues_below(bound)


def _enum_from_level_fn(level_fn: Callable[[int], Level]) -> Callable[[Scalar], List[Level]]:
    # level_fn(k) must be strictly increasing in its eigenvalue, which is what
    # guarantees completeness of the cutoff enumeration.
    def enum(bound):
        out = []
        k = 0
        while True:
            eig, mult = level_fn(k)
            if eig > bound:
                return out
            out.append((eig, mult))
            k += 1

    return enum


def harmonic_multiplicity(n: int, k: int) -> int:
    """Multiplicity of the k-th distinct eigenvalue of the round n-sphere:
    C(n+k, n) - C(n+k-2, n)."""
    if k == 0:
        return 1
    return math.comb(n + k, n) - math.comb(n + k - 2, n)


def even_harmonic_multiplicity(n: int, k: int) -> int:
    """Neumann multiplicity on the closed hemisphere of S^n: degree-k
    harmonics even under the equatorial reflection, counted by summing the
    S^(n-1) multiplicities over the matching-parity lower degrees."""
    return sum(harmonic_multiplicity(n - 1, j) for j in range(k % 2, k + 1, 2))


def interval_neumann(length_over_pi) -> FactorSpectrum:
    """Neumann spectrum of the segment [0, pi*lambda]: k^2/lambda^2, simple."""
    lam = as_exact(length_over_pi)
    if lam <= 0:
        raise ValueError("interval length must be positive")
    lam_sq = lam * lam

    def level(k):
        return (Fraction(k * k) / lam_sq, 1)

    return FactorSpectrum(
        dim=1,
        scalar_curvature=Fraction(0),
        has_boundary=True,
        boundary_minimal=True,  # the boundary points are vacuously minimal
        label=f"I(lambda={scalars.fmt(lam)})",
        enum_leq=_enum_from_level_fn(level),
    )


def round_sphere(n: int, radius_sq=1) -> FactorSpectrum:
    """Round n-sphere of radius^2 = r2: eigenvalues k(k+n-1)/r2 with the
    harmonic-polynomial multiplicities; R = n(n-1)/r2."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    r2 = as_exact(radius_sq)
    if r2 <= 0:
        raise ValueError("radius squared must be positive")

    def level(k):
        return (Fraction(k * (k + n - 1)) / r2, harmonic_multiplicity(n, k))

    return FactorSpectrum(
        dim=n,
        scalar_curvature=Fraction(n * (n - 1)) / r2,
        has_boundary=False,
        boundary_minimal=False,
        label=f"S^{n}(r2={scalars.fmt(r2)})",
        enum_leq=_enum_from_level_fn(level),
    )


def hemisphere_neumann(n: int, radius_sq=1) -> FactorSpectrum:
    """Closed hemisphere of S^n with Neumann condition on the (totally
    geodesic, hence minimal) equator.  Same eigenvalues as the sphere, with
    the even-harmonic multiplicities."""
    if n < 2:
        raise ValueError("hemisphere dimension must be >= 2 (the equator must be a manifold)")
    r2 = as_exact(radius_sq)
    if r2 <= 0:
        raise ValueError("radius squared must be positive")

    def level(k):
        return (Fraction(k * (k + n - 1)) / r2, even_harmonic_multiplicity(n, k))

    return FactorSpectrum(
        dim=n,
        scalar_curvature=Fraction(n * (n - 1)) / r2,
        has_boundary=True,
        boundary_minimal=True,
        label=f"S^{n}+(r2={scalars.fmt(r2)})",
        enum_leq=_enum_from_level_fn(level),
    )


def flat_torus(squared_lengths: Sequence) -> FactorSpectrum:
    """Flat torus with side lengths L_i, specified as ell_i = L_i^2/(4 pi^2).

    Demanding rational ell_i makes the eigenvalues sum_i k_i^2/ell_i exact
    rationals in absolute units (the 4 pi^2 factor cancels); a torus with
    L = 2 pi in every direction has ell = 1 and the integer-lattice spectrum.
    """
    ells = [as_exact(v) for v in squared_lengths]
    if not ells:
        raise ValueError("torus needs at least one side length")
    if any(v <= 0 for v in ells):
        raise ValueError("torus squared lengths must be positive")

    def enum(bound):
        if bound < 0:
            return []
        counts = Counter()
        ranges = []
        for ell in ells:
            cap = bound * ell
            kmax = math.isqrt(cap.numerator // cap.denominator)
            while Fraction((kmax + 1) ** 2) / ell <= bound:
                kmax += 1
            ranges.append(range(-kmax, kmax + 1))
        for kvec in itertools.product(*ranges):
            val = sum((Fraction(k * k) / ell for k, ell in zip(kvec, ells)), Fraction(0))
            if val <= bound:
                counts[val] += 1
        return sorted(counts.items())

    label_ells = ",".join(scalars.fmt(v) for v in ells)
    return FactorSpectrum(
        dim=len(ells),
        scalar_curvature=Fraction(0),
        has_boundary=False,
        boundary_minimal=False,
        label=f"T^{len(ells)}(l2/4pi2=[{label_ells}])",
        enum_leq=enum,
    )


def custom_spectrum(
    dim: int,
    scalar_curvature,
    levels: Sequence[Tuple],
    lambda_max,
    has_boundary: bool = False,
    boundary_minimal: bool = False,
    tolerance: Optional[float] = None,
    label: str = "custom",
) -> FactorSpectrum:
    """A user-supplied finite spectrum, complete up to ``lambda_max``."""
    tol = tolerance
    if tol is not None and tol <= 0:
        raise ValueError("tolerance must be positive")
    coerced: List[Level] = []
    for eig, mult in levels:
        eig = scalars.as_scalar(eig, tol)
        mult = int(mult)
        if mult < 1:
            raise ValueError(f"{label}: multiplicity must be >= 1, got {mult}")
        coerced.append((eig, mult))
    if not coerced or not scalars.close(coerced[0][0], 0, tol) or coerced[0][1] != 1:
        raise ValueError(f"{label}: spectrum must start with eigenvalue 0 of multiplicity 1")
    for (a, _), (b, _) in zip(coerced, coerced[1:]):
        if not scalars.lt(a, b, tol):
            raise ValueError(f"{label}: eigenvalues must be strictly increasing")
    if has_boundary and not boundary_minimal:
        raise ValueError(f"{label}: a boundary factor must have minimal boundary (H = 0)")
    lam_max = scalars.as_scalar(lambda_max, tol)
    if scalars.lt(lam_max, coerced[-1][0], tol):
        raise ValueError(f"{label}: lambda_max below the largest listed eigenvalue")

    def enum(bound):
        return [lv for lv in coerced if scalars.le(lv[0], bound, tol)]

    return FactorSpectrum(
        dim=int(dim),
        scalar_curvature=scalars.as_scalar(scalar_curvature, tol),
        has_boundary=has_boundary,
        boundary_minimal=boundary_minimal,
        label=label,
        enum_leq=enum,
        lambda_max=lam_max,
        tolerance=tol,
    )


_BOOL = {"true": True, "false": False}


def custom_from_file(path) -> FactorSpectrum:
    """Parse the line-oriented custom spectrum format.

    Header keys: dim, scalar_curvature, has_boundary, boundary_minimal,
    lambda_max, and optionally tolerance (presence selects floating mode);
    then one ``eig <value> <multiplicity>`` line per distinct eigenvalue.
    """
    header = {}
    rows = []
    with open(path) as fh:
        for num, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("eig"):
                parts = line.split()
                if len(parts) != 3:
                    raise SpectrumFormatError("expected 'eig <value> <multiplicity>'", num)
                try:
                    rows.append((parts[1], int(parts[2]), num))
                except ValueError:
                    raise SpectrumFormatError(f"bad multiplicity {parts[2]!r}", num)
            elif "=" in line:
                key, _, value = line.partition("=")
                header[key.strip()] = (value.strip(), num)
            else:
                raise SpectrumFormatError(f"unrecognized line {line!r}", num)

    def need(key):
        if key not in header:
            raise SpectrumFormatError(f"missing header key {key!r}")
        return header[key]

    def boolean(key):
        value, num = need(key)
        if value not in _BOOL:
            raise SpectrumFormatError(f"{key} must be true or false", num)
        return _BOOL[value]

    tol = None
    if "tolerance" in header:
        value, num = header["tolerance"]
        try:
            tol = float(value)
        except ValueError:
            raise SpectrumFormatError(f"bad tolerance {value!r}", num)
        if tol <= 0:
            raise SpectrumFormatError("tolerance must be positive", num)

    value, num = need("dim")
    try:
        dim = int(value)
    except ValueError:
        raise SpectrumFormatError(f"bad dim {value!r}", num)

    def scalar_of(key):
        value, num = need(key)
        try:
            return scalars.as_scalar(value, tol)
        except (ValueError, ZeroDivisionError, TypeError):
            raise SpectrumFormatError(f"bad {key} {value!r}", num)

    curvature = scalar_of("scalar_curvature")
    lam_max = scalar_of("lambda_max")

    levels = []
    for value, mult, num in rows:
        try:
            levels.append((scalars.as_scalar(value, tol), mult))
        except (ValueError, ZeroDivisionError):
            raise SpectrumFormatError(f"bad eigenvalue {value!r}", num)

    try:
        return custom_spectrum(
            dim,
            curvature,
            levels,
            lam_max,
            has_boundary=boolean("has_boundary"),
            boundary_minimal=boolean("boundary_minimal"),
            tolerance=tol,
            label=str(path),
        )
    except ValueError as exc:
        raise SpectrumFormatError(str(exc))
