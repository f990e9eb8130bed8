"""Expectation functions, Hamiltonian fields, and brackets on the orbit.

An observable A on the Hilbert space induces the expected-value function
A(rho) = Tr(A rho) on the orbit and the gauge-invariant vector field
X_A(Psi) = A Psi / (i hbar) on the bundle.  Pushing the horizontal parts of
two such fields through the metric and the symplectic form yields the
Riemannian and Poisson brackets of the expectation functions; the vertical
parts live in the gauge algebra as the xi-fields extracted by the
connection form.

Observables carry the units of the physical quantity; the brackets then
carry units of [A]*[B]/hbar (the report layer reinstates the hbar/2 where
the covariance identity needs it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bundle import (
    DEG_TOL_DEFAULT,
    RANK_TOL_DEFAULT,
    DensityOperator,
    GaugeAlgebraElement,
    Lift,
    Spectrum,
    connection_form,
    inertia_inner,
    split,
    standard_lift,
)
from .linalg import as_complex_matrix, form_omega, metric_g

__all__ = [
    "BracketPair",
    "Observable",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "brackets",
    "brackets_at_lift",
    "chi_element",
    "expected_value",
    "ham_field",
    "spin_half",
    "sym_covariance",
    "xi_field",
    "xi_perp",
]

_HERM_TOL = 1e-12
_IMAG_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class Observable:
    """Hermitian matrix representing a physical quantity."""

    matrix: np.ndarray

    def __post_init__(self):
        a = as_complex_matrix(self.matrix, "observable")
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"observable must be square, got shape {a.shape}")
        norm = np.linalg.norm(a)
        if np.linalg.norm(a - a.conj().T) > _HERM_TOL * max(norm, 1.0):
            raise ValueError("observable is not Hermitian within tolerance")
        out = a.copy()
        out.setflags(write=False)
        object.__setattr__(self, "matrix", out)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def spin_half(hbar: float = 1.0) -> tuple[Observable, Observable, Observable]:
    """The spin-1/2 components (hbar/2 times the Pauli matrices)."""
    h = 0.5 * hbar
    return (
        Observable(h * PAULI_X),
        Observable(h * PAULI_Y),
        Observable(h * PAULI_Z),
    )


@dataclass(frozen=True)
class BracketPair:
    """Riemannian and Poisson brackets of two expectation functions at one state."""

    riemann: float
    poisson: float


def _require_dim(obs: Observable, dim: int) -> None:
    if obs.dim != dim:
        raise ValueError(f"observable dimension {obs.dim} does not match state dimension {dim}")


def expected_value(obs: Observable, rho: DensityOperator) -> float:
    """Expectation Tr(A rho); the imaginary residue must be negligible."""
    _require_dim(obs, rho.dim)
    t = complex(np.trace(obs.matrix @ rho.matrix))
    if abs(t.imag) > _IMAG_TOL * max(1.0, abs(t)):
        raise ArithmeticError(f"expectation has non-real residue {t.imag!r}")
    return t.real


def ham_field(obs: Observable, psi: Lift) -> np.ndarray:
    """Gauge-invariant Hamiltonian field A Psi / (i hbar) at the given lift."""
    _require_dim(obs, psi.dim)
    return obs.matrix @ psi.psi / (1j * psi.hbar)


def brackets_at_lift(obs_a: Observable, obs_b: Observable, psi: Lift) -> BracketPair:
    """Brackets evaluated through an explicit lift.

    The value is independent of which lift of the state is supplied (gauge
    invariance); the plain ``brackets`` entry point always uses the
    standard lift.
    """
    _, ha = split(psi, ham_field(obs_a, psi))
    _, hb = split(psi, ham_field(obs_b, psi))
    return BracketPair(
        riemann=metric_g(ha, hb, psi.hbar),
        poisson=form_omega(ha, hb, psi.hbar),
    )


def _resolve_lift(
    rho: DensityOperator,
    hbar: float,
    lift: Lift | None,
    rank_tol: float,
    deg_tol: float,
) -> Lift:
    if lift is None:
        return standard_lift(rho, hbar, rank_tol, deg_tol)
    if lift.hbar != hbar:
        raise ValueError(f"provided lift carries hbar={lift.hbar}, expected {hbar}")
    if lift.dim != rho.dim:
        raise ValueError(f"lift dimension {lift.dim} does not match state dimension {rho.dim}")
    m = lift.psi @ lift.psi.conj().T
    if np.abs(m - rho.matrix).max() > 1e-8:
        raise ValueError("provided lift does not project onto the given state")
    return lift


def brackets(
    obs_a: Observable,
    obs_b: Observable,
    rho: DensityOperator,
    hbar: float = 1.0,
    *,
    lift: Lift | None = None,
    rank_tol: float = RANK_TOL_DEFAULT,
    deg_tol: float = DEG_TOL_DEFAULT,
) -> BracketPair:
    """Riemannian and Poisson brackets of two observables at a state.

    Both are computed from the horizontal parts of the Hamiltonian fields
    at a lift of ``rho`` (the standard lift unless one is passed in).
    """
    _require_dim(obs_a, rho.dim)
    _require_dim(obs_b, rho.dim)
    psi = _resolve_lift(rho, hbar, lift, rank_tol, deg_tol)
    return brackets_at_lift(obs_a, obs_b, psi)


def xi_field(obs: Observable, psi: Lift) -> GaugeAlgebraElement:
    """Gauge-algebra component of the Hamiltonian field, A_Psi(X_A)."""
    return connection_form(psi, ham_field(obs, psi))


def chi_element(k: int, hbar: float = 1.0) -> GaugeAlgebraElement:
    """The distinguished unit element chi = 1_k / (i sqrt(2 hbar)).

    chi has unit norm under the inertia inner product for every unit-trace
    spectrum, and pairing against it recovers expectation values.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    return GaugeAlgebraElement(-1j / math.sqrt(2.0 * hbar) * np.eye(k, dtype=np.complex128))


def xi_perp(
    xi: GaugeAlgebraElement, spectrum: Spectrum, hbar: float = 1.0
) -> GaugeAlgebraElement:
    """Component of a gauge-algebra element orthogonal to chi.

    Since chi has unit norm, this is xi minus its chi-coefficient times
    chi; the result pairs to zero against chi.
    """
    chi = chi_element(spectrum.rank, hbar)
    coeff = inertia_inner(chi, xi, spectrum, hbar)
    return GaugeAlgebraElement(xi.xi - coeff * chi.xi, spectrum)


def sym_covariance(
    obs_a: Observable,
    obs_b: Observable,
    rho: DensityOperator,
    hbar: float = 1.0,
    *,
    lift: Lift | None = None,
) -> float:
    """Symmetrized covariance assembled from the bundle geometry.

    Evaluates (hbar/2) * ({A,B}_g + xi_A_perp . xi_B_perp), which equals
    the trace expression Tr((AB+BA) rho)/2 - Tr(A rho) Tr(B rho); the
    agreement of the two routes is a tested identity, not an assumption.
    """
    _require_dim(obs_a, rho.dim)
    _require_dim(obs_b, rho.dim)
    psi = _resolve_lift(rho, hbar, lift, RANK_TOL_DEFAULT, DEG_TOL_DEFAULT)
    spectrum = psi.spectrum
    pair = brackets_at_lift(obs_a, obs_b, psi)
    pa = xi_perp(xi_field(obs_a, psi), spectrum, hbar)
    pb = xi_perp(xi_field(obs_b, psi), spectrum, hbar)
    return 0.5 * hbar * (pair.riemann + inertia_inner(pa, pb, spectrum, hbar))
