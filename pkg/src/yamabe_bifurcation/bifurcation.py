"""Eigenvalue branches of J_s, degeneracy instants and Morse-index jumps.

The operator J_s = Laplacian(g_s) - R(s)/(m-1) on zero-mean functions has the
explicit eigenvalue branches

    sigma_{i,j}(s) = a_{i,j} + b_{i,j}/s,   a = rho_i^(1) - T1,  b = rho_j^(2) - T2,

over i, j >= 0 with i + j > 0, with multiplicity mu_i^(1) * mu_j^(2).  Each
branch is strictly monotone or constant, so it has at most one zero, at
s = -b/a, and it has one exactly when a and b have strictly opposite signs.
Degeneracy instants are the zeros; an instant is a certified bifurcation
instant when the Morse index differs on its two sides.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import scalars
from .errors import (
    DegeneracyInstantError,
    DegeneratePairError,
    IncompleteSpectrumError,
)
from .product import ProductFamily
from .scalars import Scalar


class Monotonicity(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"


@dataclass(frozen=True)
class EigenBranch:
    i: int
    j: int
    a: Scalar  # rho_i^(1) - T1
    b: Scalar  # rho_j^(2) - T2
    multiplicity: int
    tolerance: Optional[float] = None

    def __post_init__(self):
        if self.i < 0 or self.j < 0 or self.i + self.j == 0:
            raise ValueError("branch indices must satisfy i, j >= 0 and i + j > 0")
        if self.multiplicity < 1:
            raise ValueError("branch multiplicity must be positive")

    @property
    def monotonicity(self) -> Monotonicity:
        # sigma'(s) = -b/s^2
        s = scalars.sign(self.b, self.tolerance)
        if s > 0:
            return Monotonicity.DECREASING
        if s < 0:
            return Monotonicity.INCREASING
        return Monotonicity.CONSTANT


@dataclass(frozen=True)
class CriticalIndices:
    i_star: int
    j_star: int
    equality1: bool  # rho_{i*}^(1) == T1 exactly
    equality2: bool  # rho_{j*}^(2) == T2 exactly


@dataclass(frozen=True)
class DegeneracyInstant:
    s: Scalar
    branches: Tuple[EigenBranch, ...]
    total_multiplicity: int
    jump: int  # n_{s+} - n_{s-}


class FamilyCase(enum.Enum):
    BOTH_POSITIVE = "BothPositive"
    RIGID_NON_POSITIVE = "RigidNonPositive"
    DECREASING_TO_ZERO = "DecreasingToZero"
    INCREASING_UNBOUNDED = "IncreasingUnbounded"
    DEGENERATE_PAIR = "DegeneratePair"


@dataclass(frozen=True)
class CertifiedInstant:
    instant: DegeneracyInstant
    n_minus: int
    n_plus: int
    certified: bool
    side: str  # "tending-to-zero" | "unbounded" | "mixed"
    lemma_cases: Tuple[str, ...]


@dataclass(frozen=True)
class FamilyClassification:
    case: FamilyCase
    instants: Tuple[CertifiedInstant, ...]
    accumulation: str
    window: Tuple[Scalar, Scalar]


def branch_from_indices(fam: ProductFamily, i: int, j: int) -> EigenBranch:
    r1, m1 = fam.factor1.level(i)
    r2, m2 = fam.factor2.level(j)
    return EigenBranch(
        i=i,
        j=j,
        a=r1 - fam.threshold1,
        b=r2 - fam.threshold2,
        multiplicity=m1 * m2,
        tolerance=fam.tolerance,
    )


def sigma_value(branch: EigenBranch, s) -> Scalar:
    if s <= 0:
        raise ValueError("family parameter s must be positive")
    return branch.a + branch.b / s


def branch_zero(branch: EigenBranch) -> Optional[Scalar]:
    """The unique zero -b/a in (0, inf), present exactly when a and b have
    strictly opposite signs; None otherwise (absence is a value)."""
    sa = scalars.sign(branch.a, branch.tolerance)
    sb = scalars.sign(branch.b, branch.tolerance)
    if sa * sb >= 0:
        return None
    return -branch.b / branch.a


def _least_index_geq(spectrum, threshold, tol) -> Tuple[int, bool]:
    """Least level index with eigenvalue >= threshold, plus the exact-equality
    flag.  For threshold <= 0 this is level 0 (eigenvalue 0)."""
    if scalars.le(threshold, 0, tol):
        return 0, scalars.close(threshold, 0, tol)
    levels = spectrum.eigenvalues_leq(threshold)
    equality = bool(levels) and scalars.close(levels[-1][0], threshold, tol)
    below = len(levels) - 1 if equality else len(levels)
    return below, equality


def critical_indices(fam: ProductFamily) -> CriticalIndices:
    tol = fam.tolerance
    i_star, eq1 = _least_index_geq(fam.factor1, fam.threshold1, tol)
    j_star, eq2 = _least_index_geq(fam.factor2, fam.threshold2, tol)
    return CriticalIndices(i_star, j_star, eq1, eq2)


def is_degenerate_pair(fam: ProductFamily) -> bool:
    """Both thresholds attained exactly, so sigma_{i*,j*} vanishes
    identically -- except at (0, 0), which is outside the domain of J_s
    (constants are excluded) and is treated as nondegenerate."""
    ci = critical_indices(fam)
    return ci.equality1 and ci.equality2 and (ci.i_star, ci.j_star) != (0, 0)


def _require_budget(lam, needed, what):
    if lam is not None and lam < needed:
        raise IncompleteSpectrumError(
            f"enumeration bound {what} requires eigenvalues up to {needed} "
            f"but only {lam} was allowed; raise lambda-max"
        )


def enumeration_bounds(fam: ProductFamily, window) -> Tuple[Scalar, Scalar]:
    """Factor eigenvalue bounds sufficient to enumerate every branch with a
    zero inside the window, derived from -b/a in [s_min, s_max]:
    rho_i <= T1 + T2/s_min and rho_j <= T2 + s_max*T1."""
    s_min, s_max = window
    t1 = max(fam.threshold1, 0)
    t2 = max(fam.threshold2, 0)
    return (fam.threshold1 + t2 / s_min, fam.threshold2 + s_max * t1)


def degeneracy_instants(fam: ProductFamily, window, lam=None) -> List[DegeneracyInstant]:
    """All degeneracy instants with s_min <= s <= s_max, ascending, coincident
    branch zeros merged into one instant with summed multiplicity and the
    signed index jump attached.  The enumeration bounds are computed from the
    window, so the list is provably complete; ``lam``, when given, caps the
    budget and raises if it is insufficient."""
    if is_degenerate_pair(fam):
        raise DegeneratePairError(
            f"{fam.label}: degenerate pair -- 0 is an eigenvalue of J_s for every s"
        )
    tol = fam.tolerance
    s_min = fam.coerce(window[0])
    s_max = fam.coerce(window[1])
    if not (0 < s_min < s_max):
        raise ValueError("window must satisfy 0 < s_min < s_max")

    need1, need2 = enumeration_bounds(fam, (s_min, s_max))
    _require_budget(lam, need1, "for the closed factor")
    _require_budget(lam, need2, "for the boundary factor")

    t1 = fam.threshold1
    t2 = fam.threshold2
    zeros: Dict[Scalar, List[EigenBranch]] = {}

    def record(s, branch):
        for key in zeros:
            if scalars.close(key, s, tol):
                zeros[key].append(branch)
                return
        zeros[s] = [branch]

    # decreasing branches: a < 0 (rho_i < T1) and b > 0, zero at s = (rho_j - T2)/(T1 - rho_i)
    if scalars.gt(t1, 0, tol):
        for i, (r1, m1) in enumerate(fam.factor1.eigenvalues_below(t1)):
            bound2 = t2 + s_max * (t1 - r1)
            for j, (r2, m2) in enumerate(fam.factor2.eigenvalues_leq(bound2)):
                if not scalars.gt(r2, t2, tol):
                    continue
                s = (r2 - t2) / (t1 - r1)
                if scalars.ge(s, s_min, tol) and scalars.le(s, s_max, tol):
                    record(s, EigenBranch(i, j, r1 - t1, r2 - t2, m1 * m2, tol))

    # increasing branches: b < 0 (rho_j < T2) and a > 0, zero at s = (T2 - rho_j)/(rho_i - T1)
    if scalars.gt(t2, 0, tol):
        for j, (r2, m2) in enumerate(fam.factor2.eigenvalues_below(t2)):
            bound1 = t1 + (t2 - r2) / s_min
            for i, (r1, m1) in enumerate(fam.factor1.eigenvalues_leq(bound1)):
                if not scalars.gt(r1, t1, tol):
                    continue
                s = (t2 - r2) / (r1 - t1)
                if scalars.ge(s, s_min, tol) and scalars.le(s, s_max, tol):
                    record(s, EigenBranch(i, j, r1 - t1, r2 - t2, m1 * m2, tol))

    instants = []
    for s in sorted(zeros):
        branches = tuple(sorted(zeros[s], key=lambda br: (br.i, br.j)))
        jump = sum(
            br.multiplicity if br.monotonicity is Monotonicity.DECREASING else -br.multiplicity
            for br in branches
        )
        instants.append(
            DegeneracyInstant(
                s=s,
                branches=branches,
                total_multiplicity=sum(br.multiplicity for br in branches),
                jump=jump,
            )
        )
    return instants


def morse_index(fam: ProductFamily, s) -> int:
    """n_s: total multiplicity of branches (i + j > 0) with sigma_{i,j}(s) < 0,
    i.e. product eigenvalues other than the constants' zero strictly below
    R(s)/(m-1).  Exact check that s is not a degeneracy instant."""
    tol = fam.tolerance
    s = fam.coerce(s)
    if s <= 0:
        raise ValueError("family parameter s must be positive")
    theta = fam.threshold1 + fam.threshold2 / s
    if scalars.le(theta, 0, tol):
        return 0
    count = 0
    for i, (r1, m1) in enumerate(fam.factor1.eigenvalues_leq(theta)):
        for j, (r2, m2) in enumerate(fam.factor2.eigenvalues_leq(s * (theta - r1))):
            if i == 0 and j == 0:
                continue
            value = r1 + r2 / s
            if scalars.close(value, theta, tol):
                raise DegeneracyInstantError(
                    f"s = {scalars.fmt(s, tol)} is a degeneracy instant "
                    f"(branch ({i},{j})); use index_jump instead"
                )
            if value < theta:
                count += m1 * m2
    return count


def index_jump(
    fam: ProductFamily, instant: DegeneracyInstant, lam=None
) -> Tuple[int, int, bool]:
    """Morse indices just below and just above the instant, with epsilon set
    to half the exact gap to the nearest other degeneracy instant (clamped by
    s/2 away from 0).  certified means n_minus != n_plus, in which case the
    instant is a bifurcation instant."""
    s0 = instant.s
    eps = s0 / 2
    for _ in range(64):
        nearby = degeneracy_instants(fam, (s0 - eps, s0 + eps), lam)
        others = [inst.s for inst in nearby if not scalars.close(inst.s, s0, fam.tolerance)]
        if not others:
            break
        eps = min(abs(t - s0) for t in others) / 2
    else:
        raise DegeneracyInstantError(
            f"could not isolate the instant s = {scalars.fmt(s0, fam.tolerance)}"
        )
    for _ in range(64):
        try:
            n_minus = morse_index(fam, s0 - eps)
            n_plus = morse_index(fam, s0 + eps)
            break
        except DegeneracyInstantError:
            # an endpoint landed exactly on a neighboring instant; shrink
            eps = eps * 2 / 3
    else:
        raise DegeneracyInstantError(
            f"could not evaluate the index on both sides of s = {scalars.fmt(s0, fam.tolerance)}"
        )
    return n_minus, n_plus, n_minus != n_plus


def _lemma_case(branch: EigenBranch, ci: CriticalIndices) -> str:
    i_rel = "<" if branch.i < ci.i_star else (">" if branch.i > ci.i_star else "=")
    j_rel = "<" if branch.j < ci.j_star else (">" if branch.j > ci.j_star else "=")
    return f"i{i_rel}i*, j{j_rel}j* ({branch.monotonicity.value})"


def _side(branches: Sequence[EigenBranch]) -> str:
    kinds = {br.monotonicity for br in branches}
    if kinds == {Monotonicity.INCREASING}:
        return "tending-to-zero"
    if kinds == {Monotonicity.DECREASING}:
        return "unbounded"
    return "mixed"


_ACCUMULATION = {
    FamilyCase.BOTH_POSITIVE: "instants accumulate at 0 and at +inf",
    FamilyCase.RIGID_NON_POSITIVE: "no degeneracy instants; locally rigid on (0, +inf)",
    FamilyCase.DECREASING_TO_ZERO: "instants form a decreasing sequence accumulating at 0",
    FamilyCase.INCREASING_UNBOUNDED: "instants form an increasing unbounded sequence",
    FamilyCase.DEGENERATE_PAIR: "0 is an eigenvalue of J_s for every s; index-jump certification inapplicable",
}


def classify_family(fam: ProductFamily, window, lam=None) -> FamilyClassification:
    """Case tag from the curvature signs and the degenerate-pair test, plus
    the certified degeneracy instants found in the window."""
    tol = fam.tolerance
    window = (fam.coerce(window[0]), fam.coerce(window[1]))
    if is_degenerate_pair(fam):
        return FamilyClassification(
            case=FamilyCase.DEGENERATE_PAIR,
            instants=(),
            accumulation=_ACCUMULATION[FamilyCase.DEGENERATE_PAIR],
            window=window,
        )
    r1 = fam.factor1.scalar_curvature
    r2 = fam.factor2.scalar_curvature
    pos1 = scalars.gt(r1, 0, tol)
    pos2 = scalars.gt(r2, 0, tol)
    if pos1 and pos2:
        case = FamilyCase.BOTH_POSITIVE
    elif not pos1 and not pos2:
        case = FamilyCase.RIGID_NON_POSITIVE
    elif pos2:
        case = FamilyCase.DECREASING_TO_ZERO
    else:
        case = FamilyCase.INCREASING_UNBOUNDED

    ci = critical_indices(fam)
    certified = []
    for inst in degeneracy_instants(fam, window, lam):
        n_minus, n_plus, ok = index_jump(fam, inst, lam)
        certified.append(
            CertifiedInstant(
                instant=inst,
                n_minus=n_minus,
                n_plus=n_plus,
                certified=ok,
                side=_side(inst.branches),
                lemma_cases=tuple(_lemma_case(br, ci) for br in inst.branches),
            )
        )
    return FamilyClassification(
        case=case,
        instants=tuple(certified),
        accumulation=_ACCUMULATION[case],
        window=window,
    )
