"""Independent ground-truth computations used to validate the engine.

Everything here is intentionally naive -- dense linear algebra, double loops,
dense scans -- and shares no computation with the exact engine it checks:

* finite-difference Neumann spectrum of the interval,
* harmonic-polynomial dimension counts by explicit kernel rank,
* dense sign-change scan for degeneracy instants,
* brute-force Morse index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .product import ProductFamily


@dataclass(frozen=True)
class GridSpectrum:
    grid_points: int
    eigenvalues: Tuple[float, ...]
    error_estimate: float  # worst-case relative discretization error, O(h^2)


def fd_interval_spectrum(length_over_pi, grid_points: int, count: int) -> GridSpectrum:
    """First ``count`` Neumann eigenvalues of -d^2/dx^2 on [0, pi*lambda].

    Cell-centered second-order stencil: nodes x_i = (i - 1/2) h, ghost values
    reflected across the boundary (u_0 = u_1, u_{N+1} = u_N), which encodes
    the zero-derivative condition and keeps the tridiagonal matrix symmetric.
    """
    if grid_points < 16:
        raise ValueError("need at least 16 grid points")
    if count > grid_points // 4:
        raise ValueError("too many eigenvalues requested for this grid")
    length = math.pi * float(length_over_pi)
    if length <= 0:
        raise ValueError("interval length must be positive")
    h = length / grid_points
    diag = np.full(grid_points, 2.0 / h**2)
    diag[0] = diag[-1] = 1.0 / h**2
    off = np.full(grid_points - 1, -1.0 / h**2)
    values = eigh_tridiagonal(
        diag, off, eigvals_only=True, select="i", select_range=(0, count - 1)
    )
    # lambda_k^FD = (4/h^2) sin^2(k pi h / (2 L)); relative error ~ (k pi h / L)^2 / 12
    worst = (count * math.pi * h / length) ** 2 / 12.0
    return GridSpectrum(grid_points, tuple(float(v) for v in values), worst)


def _monomials(total: int, nvars: int) -> List[Tuple[int, ...]]:
    if nvars == 1:
        return [(total,)]
    out = []
    for head in range(total + 1):
        out.extend((head,) + rest for rest in _monomials(total - head, nvars - 1))
    return out


def _laplacian_kernel_dimension(monomials: List[Tuple[int, ...]], nvars: int) -> int:
    degree = sum(monomials[0]) if monomials else 0
    if degree < 2:
        return len(monomials)
    columns = len(monomials)
    rows = []
    index = {}
    for col, mono in enumerate(monomials):
        for var in range(nvars):
            e = mono[var]
            if e < 2:
                continue
            image = list(mono)
            image[var] = e - 2
            image = tuple(image)
            if image not in index:
                index[image] = len(rows)
                rows.append(np.zeros(columns))
            rows[index[image]][col] += e * (e - 1)
    if not rows:
        return columns
    matrix = np.vstack(rows)
    return columns - int(np.linalg.matrix_rank(matrix))


def harmonic_dimension(n: int, k: int) -> int:
    """Dimension of degree-k harmonic polynomials in n+1 variables, by rank
    of the Laplacian acting on the monomial basis."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1, k >= 0")
    if n > 4 or k > 12:
        raise ValueError("dense rank computation limited to n <= 4, k <= 12")
    return _laplacian_kernel_dimension(_monomials(k, n + 1), n + 1)


def even_harmonic_dimension(n: int, k: int) -> int:
    """Dimension of degree-k harmonic polynomials in n+1 variables that are
    even in the last variable.  The Laplacian preserves that parity, so the
    kernel is computed on the even-monomial subspace alone."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2, k >= 0")
    if n > 4 or k > 12:
        raise ValueError("dense rank computation limited to n <= 4, k <= 12")
    monos = [m for m in _monomials(k, n + 1) if m[-1] % 2 == 0]
    return _laplacian_kernel_dimension(monos, n + 1)


def _float_branches(fam: ProductFamily, lam: float) -> List[Tuple[int, int, float, float, int]]:
    t1 = float(fam.threshold1)
    t2 = float(fam.threshold2)
    levels1 = fam.factor1.eigenvalues_leq(fam.coerce(lam))
    levels2 = fam.factor2.eigenvalues_leq(fam.coerce(lam))
    out = []
    for i, (r1, m1) in enumerate(levels1):
        for j, (r2, m2) in enumerate(levels2):
            if i == 0 and j == 0:
                continue
            out.append((i, j, float(r1) - t1, float(r2) - t2, m1 * m2))
    return out


def dense_scan_degeneracy(
    fam: ProductFamily, window, samples: int, lam
) -> List[Tuple[float, float]]:
    """Bracket every branch zero in the window by sampling sigma on a dense
    log-spaced grid and bisecting each sign change down to relative width
    1e-10; overlapping brackets (coincident zeros) are merged."""
    if samples < 1000:
        raise ValueError("sample grid too coarse; use at least 1000 samples")
    s_lo, s_hi = float(window[0]), float(window[1])
    if not (0 < s_lo < s_hi):
        raise ValueError("window must satisfy 0 < s_min < s_max")
    grid = np.geomspace(s_lo, s_hi, samples)
    inv = 1.0 / grid
    brackets = []
    for _i, _j, a, b, _mult in _float_branches(fam, float(lam)):
        values = a + b * inv
        signs = np.sign(values)
        exact_hits = np.nonzero(signs == 0.0)[0]
        for idx in exact_hits:
            s = grid[idx]
            brackets.append((s * (1 - 1e-12), s * (1 + 1e-12)))
        flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        for idx in flips:
            lo, hi = grid[idx], grid[idx + 1]
            flo = a + b / lo
            while hi - lo > 1e-10 * lo:
                mid = 0.5 * (lo + hi)
                fmid = a + b / mid
                if fmid == 0.0:
                    lo = hi = mid
                    break
                if flo * fmid < 0:
                    hi = mid
                else:
                    lo, flo = mid, fmid
            brackets.append((lo, hi))
    brackets.sort()
    merged: List[Tuple[float, float]] = []
    for lo, hi in brackets:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return merged


def brute_force_index(fam: ProductFamily, s, lam) -> int:
    """Double loop over all (i, j) with rho_i <= lam and rho_j <= lam*s,
    summing multiplicities where sigma_{i,j}(s) < 0.  No cleverness."""
    s = float(s)
    lam = float(lam)
    if s <= 0:
        raise ValueError("family parameter s must be positive")
    t1 = float(fam.threshold1)
    t2 = float(fam.threshold2)
    theta = t1 + t2 / s
    if lam < theta or lam * s < s * theta:
        raise ValueError("lambda bound below R(s)/(m-1); enumeration would be incomplete")
    count = 0
    levels1 = fam.factor1.eigenvalues_leq(fam.coerce(lam))
    levels2 = fam.factor2.eigenvalues_leq(fam.coerce(lam * s))
    for i, (r1, m1) in enumerate(levels1):
        for j, (r2, m2) in enumerate(levels2):
            if i == 0 and j == 0:
                continue
            if float(r1) - t1 + (float(r2) - t2) / s < 0:
                count += m1 * m2
    return count
