"""Closed-form spectral data of J(n, k) and the search schedule.

The adjacency operator has k+1 distinct integer eigenvalues

    lambda_l = (k - l)(n - k - l) - l,       l = 0..k,

with multiplicity C(n, l) - C(n, l-1).  The squared overlap of any vertex
state with the eigenspace projector ("projector weight") has two closed
forms, both exact rationals; they are computed with Fraction arithmetic
and must agree identically.  The coin walk restricted to the search's
invariant subspace has eigenphases omega_l = arccos(lambda_l / degree).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

import mpmath

from .errors import DegenerateInstanceError
from .johnson import GraphParams, intersection_numbers, shell_size

__all__ = [
    "SpectralRow",
    "Schedule",
    "PhaseAsymptotics",
    "eigenvalue",
    "multiplicity",
    "projector_weight",
    "projector_weight_exact",
    "eigenphase",
    "spectral_table",
    "run_time",
    "verify_eigenphase_asymptotics",
]

# phases smaller than this are treated as numerically zero when locating
# the slowest rotation of the marked walk
PHASE_CUTOFF = 1e-9

_MP_DPS = 40


@dataclass(frozen=True)
class SpectralRow:
    """Per-level spectral record of one instance."""

    level: int
    eigenvalue: int
    multiplicity: int
    weight_sq: float          # squared projection of a vertex state
    phase: Optional[float]    # arccos(eigenvalue/degree); None at level 0
    shell: int                # vertices at this distance
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class Schedule:
    """Measurement schedule of the search walk."""

    t_run: int
    epsilon: float        # n ** -0.5
    target_phase: float   # sqrt(2 k!) * epsilon**k, the leading eigenphase


@dataclass(frozen=True)
class PhaseAsymptotics:
    """Slowest observed rotation versus its large-n prediction."""

    theta_min: float
    target_phase: float
    relative_error: float


def _check_level(params: GraphParams, level: int) -> None:
    if not 0 <= level <= params.k:
        raise ValueError(f"level {level} out of range [0, {params.k}]")


def eigenvalue(params: GraphParams, level: int) -> int:
    """Adjacency eigenvalue (k-l)(n-k-l) - l; strictly decreasing in l."""
    _check_level(params, level)
    n, k, l = params.n, params.k, level
    return (k - l) * (n - k - l) - l


def multiplicity(params: GraphParams, level: int) -> int:
    """Eigenspace dimension C(n, l) - C(n, l-1), with C(n, -1) = 0."""
    _check_level(params, level)
    n, l = params.n, level
    return comb(n, l) - (comb(n, l - 1) if l >= 1 else 0)


def projector_weight_exact(params: GraphParams, level: int) -> Fraction:
    """Squared norm of the eigenspace projection of a vertex state, exact.

    Evaluates both closed forms, multiplicity/N and the factorial ratio
    k!(n-k)!(n-2l+1) / (l!(n-l+1)!), and insists they agree.
    """
    _check_level(params, level)
    n, k, l = params.n, params.k, level
    by_multiplicity = Fraction(multiplicity(params, level), params.num_vertices)
    # (n-k)!/(n-l+1)! telescoped to keep operands small at large n
    denominator = factorial(l)
    for j in range(n - k + 1, n - l + 2):
        denominator *= j
    by_factorials = Fraction(factorial(k) * (n - 2 * l + 1), denominator)
    if by_multiplicity != by_factorials:
        raise AssertionError(
            f"projector weight closed forms disagree at level {l}: "
            f"{by_multiplicity} vs {by_factorials}")
    return by_multiplicity


def projector_weight(params: GraphParams, level: int) -> float:
    return float(projector_weight_exact(params, level))


def eigenphase(params: GraphParams, level: int) -> float:
    """arccos(lambda_l / degree) in (0, pi) for levels 1..k."""
    _check_level(params, level)
    if level == 0:
        raise ValueError("level 0 has walk eigenvalue 1 and no phase")
    lam = eigenvalue(params, level)
    if lam <= -params.degree:
        raise DegenerateInstanceError(
            f"eigenvalue {lam} at level {level} is not above -degree")
    return math.acos(lam / params.degree)


def spectral_table(params: GraphParams) -> list:
    """All per-level records, level 0 first."""
    rows = []
    for l in range(params.k + 1):
        inter = intersection_numbers(params, l)
        rows.append(SpectralRow(
            level=l,
            eigenvalue=eigenvalue(params, l),
            multiplicity=multiplicity(params, l),
            weight_sq=projector_weight(params, l),
            phase=None if l == 0 else eigenphase(params, l),
            shell=shell_size(params, l),
            a=inter.a,
            b=inter.b,
            c=inter.c,
        ))
    return rows


def run_time(params: GraphParams) -> Schedule:
    """Measurement step floor(pi * n**(k/2) / (2 sqrt(2 k!))).

    The floor argument is evaluated with 40 significant digits so that
    double rounding near an integer boundary cannot flip the result.
    """
    n, k = params.n, params.k
    with mpmath.workdps(_MP_DPS):
        x = mpmath.pi * mpmath.sqrt(mpmath.mpf(n) ** k)
        x /= 2 * mpmath.sqrt(2 * mpmath.factorial(k))
        t_run = int(mpmath.floor(x))
    eps = n ** -0.5
    return Schedule(
        t_run=t_run,
        epsilon=eps,
        target_phase=math.sqrt(2 * factorial(k)) * eps ** k,
    )


def verify_eigenphase_asymptotics(params: GraphParams, reduced_phases) -> PhaseAsymptotics:
    """Compare the slowest positive rotation of the marked walk to theory.

    ``reduced_phases`` are principal arguments of the reduced step
    operator's eigenvalues.  The smallest phase above PHASE_CUTOFF is
    matched against sqrt(2 k!) * n**(-k/2); the relative error decays
    like n**(-1/2).
    """
    positive = [p for p in reduced_phases if p > PHASE_CUTOFF]
    if not positive:
        raise ValueError("no positive eigenphase found; reduced operator inconsistent")
    theta_min = min(positive)
    target = run_time(params).target_phase
    return PhaseAsymptotics(
        theta_min=theta_min,
        target_phase=target,
        relative_error=abs(theta_min - target) / target,
    )
