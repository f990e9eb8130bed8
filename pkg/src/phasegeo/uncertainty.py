"""Uncertainty bounds on observable pairs at a mixed state.

The central result is the geometric lower bound

    dA * dB >= (hbar/2) * sqrt({A,B}_g^2 + {A,B}_omega^2),

obtained from the variance inequality together with the Cauchy-Schwarz
estimate on the horizontal lifts.  The standard Robertson-Schrodinger bound
(commutator plus symmetrized covariance) is computed alongside as the
comparison baseline; it is implemented from the usual mixed-state trace
formulas and makes no geometric claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .bundle import DensityOperator, Lift
from .observables import Observable, brackets, expected_value

__all__ = [
    "RelationViolationError",
    "UncertaintyReport",
    "VarianceBound",
    "CauchySchwarz",
    "analyze_pair",
    "cauchy_schwarz_check",
    "geometric_bound",
    "rs_bound",
    "variance",
    "variance_bound_check",
]

# Negative variance beyond this is a fault, within it is floating noise.
_VARIANCE_CLAMP = 1e-12

# Slack this negative on either bound signals a numerical or
# implementation fault, never a physical violation.
_SLACK_TOL = 1e-9

# Bounds within this absolute distance count as a tie; near-pure states
# make the two bounds analytically equal.
_TIE_TOL = 1e-10


class RelationViolationError(RuntimeError):
    """An uncertainty relation failed beyond numerical tolerance."""


@dataclass(frozen=True)
class UncertaintyReport:
    """Per-pair summary: spreads, brackets, both bounds, and their slacks."""

    delta_a: float
    delta_b: float
    product: float
    riemann: float
    poisson: float
    geometric_bound: float
    rs_bound: float
    slack_geometric: float
    slack_rs: float
    bound_winner: Literal["geometric", "robertson_schrodinger", "tie"]


class VarianceBound(NamedTuple):
    lhs: float
    rhs: float
    gap: float


class CauchySchwarz(NamedTuple):
    lhs: float
    rhs: float


def variance(obs: Observable, rho: DensityOperator) -> float:
    """Variance Tr(A^2 rho) - Tr(A rho)^2, clamped at zero against noise."""
    a = obs.matrix
    second = float(np.trace(a @ a @ rho.matrix).real)
    v = second - expected_value(obs, rho) ** 2
    if v < 0.0:
        if v < -_VARIANCE_CLAMP * max(1.0, second):
            raise RelationViolationError(f"variance came out negative: {v!r}")
        v = 0.0
    return v


def variance_bound_check(
    obs: Observable,
    rho: DensityOperator,
    hbar: float = 1.0,
    *,
    lift: Lift | None = None,
) -> VarianceBound:
    """Variance against its bracket lower bound (hbar/2) {A,A}_g.

    The gap equals (hbar/2) times the squared inertia norm of the
    chi-orthogonal xi-field, which is how the inequality's slack shows up
    geometrically.
    """
    lhs = variance(obs, rho)
    pair = brackets(obs, obs, rho, hbar, lift=lift)
    rhs = 0.5 * hbar * pair.riemann
    gap = lhs - rhs
    if gap < 0.0:
        if gap < -_SLACK_TOL * max(1.0, abs(lhs)):
            raise RelationViolationError(f"variance bound violated by {gap!r}")
        gap = 0.0
    return VarianceBound(lhs, rhs, gap)


def cauchy_schwarz_check(
    obs_a: Observable,
    obs_b: Observable,
    rho: DensityOperator,
    hbar: float = 1.0,
    *,
    lift: Lift | None = None,
) -> CauchySchwarz:
    """Both sides of {A,A}_g {B,B}_g >= {A,B}_g^2 + {A,B}_omega^2."""
    aa = brackets(obs_a, obs_a, rho, hbar, lift=lift)
    bb = brackets(obs_b, obs_b, rho, hbar, lift=lift)
    ab = brackets(obs_a, obs_b, rho, hbar, lift=lift)
    return CauchySchwarz(aa.riemann * bb.riemann, ab.riemann**2 + ab.poisson**2)


def geometric_bound(
    obs_a: Observable,
    obs_b: Observable,
    rho: DensityOperator,
    hbar: float = 1.0,
    *,
    lift: Lift | None = None,
) -> float:
    """Geometric lower bound (hbar/2) sqrt(riemann^2 + poisson^2)."""
    pair = brackets(obs_a, obs_b, rho, hbar, lift=lift)
    return 0.5 * hbar * math.hypot(pair.riemann, pair.poisson)


def rs_bound(obs_a: Observable, obs_b: Observable, rho: DensityOperator) -> float:
    """Robertson-Schrodinger baseline from commutator and covariance traces."""
    a = obs_a.matrix
    b = obs_b.matrix
    comm = complex(np.trace((a @ b - b @ a) @ rho.matrix))
    half_comm = 0.5 * abs(comm.imag)
    cov = 0.5 * float(np.trace((a @ b + b @ a) @ rho.matrix).real) - expected_value(
        obs_a, rho
    ) * expected_value(obs_b, rho)
    return math.hypot(half_comm, cov)


def analyze_pair(
    obs_a: Observable,
    obs_b: Observable,
    rho: DensityOperator,
    hbar: float = 1.0,
    *,
    lift: Lift | None = None,
) -> UncertaintyReport:
    """Full uncertainty report for one observable pair at one state.

    Raises RelationViolationError if either bound exceeds the spread
    product beyond tolerance; that can only mean a numerical or
    implementation fault.
    """
    da = math.sqrt(variance(obs_a, rho))
    db = math.sqrt(variance(obs_b, rho))
    product = da * db
    pair = brackets(obs_a, obs_b, rho, hbar, lift=lift)
    geo = 0.5 * hbar * math.hypot(pair.riemann, pair.poisson)
    rs = rs_bound(obs_a, obs_b, rho)
    slack_geo = product - geo
    slack_rs = product - rs

    scale = max(1.0, product, geo, rs)
    if slack_geo < -_SLACK_TOL * scale:
        raise RelationViolationError(
            f"geometric bound {geo!r} exceeds spread product {product!r}"
        )
    if slack_rs < -_SLACK_TOL * scale:
        raise RelationViolationError(
            f"Robertson-Schrodinger bound {rs!r} exceeds spread product {product!r}"
        )

    if abs(geo - rs) <= _TIE_TOL:
        winner = "tie"
    elif geo > rs:
        winner = "geometric"
    else:
        winner = "robertson_schrodinger"

    return UncertaintyReport(
        delta_a=da,
        delta_b=db,
        product=product,
        riemann=pair.riemann,
        poisson=pair.poisson,
        geometric_bound=geo,
        rs_bound=rs,
        slack_geometric=slack_geo,
        slack_rs=slack_rs,
        bound_winner=winner,
    )
