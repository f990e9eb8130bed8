"""Dense complex linear algebra underpinning the bundle geometry.

All matrices are plain numpy arrays with complex128 entries, treated as
immutable values.  The module provides the Hilbert-Schmidt pairing, the
metric and symplectic forms built from its real and imaginary parts, and
a cyclic-Jacobi Hermitian eigensolver.  Jacobi is preferred over
tridiagonalization at desk scale (n below ~100): it is simple,
unconditionally stable on Hermitian input, and its fixed rotation order
plus an explicit eigenvector phase convention make the computed frames
reproducible across runs and platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "EigenDecomposition",
    "anticommutator",
    "as_complex_matrix",
    "commutator",
    "form_omega",
    "hermitian_eig",
    "hs_inner",
    "metric_g",
]

# Relative Hermiticity tolerance accepted by hermitian_eig.
HERMITICITY_TOL = 1e-12

# Off-diagonal Frobenius mass left after a completed Jacobi run,
# relative to the Frobenius norm of the input.
JACOBI_OFF_TOL = 1e-14

# Hard sweep limit; hitting it means the input was pathological.
JACOBI_MAX_SWEEPS = 100

# Smallest column modulus considered significant by the phase fix.
PHASE_FIX_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """Jacobi iteration failed to reach the off-diagonal target."""


def as_complex_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a 2-D complex128 array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be 2-D with positive dimensions, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} contains NaN or Inf entries")
    return a


def _require_same_shape(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")


def _require_square_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise ValueError(f"operands must be square and of equal dimension, got {a.shape} and {b.shape}")


def hs_inner(x, y) -> complex:
    """Hilbert-Schmidt Hermitian product Tr(X†Y) of two same-shape matrices."""
    xm = as_complex_matrix(x, "X")
    ym = as_complex_matrix(y, "Y")
    _require_same_shape(xm, ym)
    return complex(np.vdot(xm, ym))


def metric_g(x, y, hbar: float) -> float:
    """Riemannian pairing G(X,Y) = hbar*Tr(X†Y + Y†X) = 2*hbar*Re Tr(X†Y)."""
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    return 2.0 * hbar * hs_inner(x, y).real


def form_omega(x, y, hbar: float) -> float:
    """Symplectic pairing Omega(X,Y) = -i*hbar*Tr(X†Y - Y†X) = 2*hbar*Im Tr(X†Y)."""
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    return 2.0 * hbar * hs_inner(x, y).imag


def commutator(a, b) -> np.ndarray:
    """AB - BA for square matrices of equal dimension."""
    am = as_complex_matrix(a, "A")
    bm = as_complex_matrix(b, "B")
    _require_square_pair(am, bm)
    return am @ bm - bm @ am


def anticommutator(a, b) -> np.ndarray:
    """AB + BA for square matrices of equal dimension."""
    am = as_complex_matrix(a, "A")
    bm = as_complex_matrix(b, "B")
    _require_square_pair(am, bm)
    return am @ bm + bm @ am


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order with matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def _fix_column_phases(vectors: np.ndarray) -> np.ndarray:
    """Rephase each column so its first component of modulus > PHASE_FIX_TOL is real positive."""
    v = vectors.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        sig = np.nonzero(np.abs(col) > PHASE_FIX_TOL)[0]
        if sig.size:
            pivot = col[sig[0]]
            v[:, j] = col * (pivot.conjugate() / abs(pivot))
    return v


def hermitian_eig(h) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix by row-cyclic Jacobi rotations.

    The input is symmetrized before iterating, so Hermiticity violations up
    to ``HERMITICITY_TOL`` (relative Frobenius) are tolerated; anything
    larger is rejected.  On return the values are sorted in descending
    order (stable, so exactly equal values keep the order in which the
    rotations produced them) and every eigenvector column carries the
    deterministic phase fix from ``_fix_column_phases``.

    Raises ConvergenceError if the off-diagonal mass has not dropped below
    ``JACOBI_OFF_TOL * ||H||_F`` after ``JACOBI_MAX_SWEEPS`` sweeps.
    """
    hm = as_complex_matrix(h, "H")
    n = hm.shape[0]
    if hm.shape[1] != n:
        raise ValueError(f"eigendecomposition needs a square matrix, got shape {hm.shape}")

    norm = np.linalg.norm(hm)
    if np.linalg.norm(hm - hm.conj().T) > HERMITICITY_TOL * max(norm, 1.0):
        raise ValueError("matrix is not Hermitian within tolerance")

    a = 0.5 * (hm + hm.conj().T)
    v = np.eye(n, dtype=np.complex128)

    if n == 1 or norm == 0.0:
        values = a.real.diagonal().copy()
        order = np.argsort(-values, kind="stable")
        return EigenDecomposition(values[order], _fix_column_phases(v[:, order]))

    off_target = JACOBI_OFF_TOL * norm
    # Rotating on elements this small cannot lift the off-diagonal mass
    # back above the target, so they are skipped.
    skip = off_target / (2.0 * n)

    for _ in range(JACOBI_MAX_SWEEPS):
        od = a.copy()
        np.fill_diagonal(od, 0.0)
        if np.linalg.norm(od) <= off_target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                absb = abs(b)
                if absb <= skip:
                    continue
                w = b / absb
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * absb)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sw = s * w
                swc = s * w.conjugate()

                hp = a[:, p].copy()
                hq = a[:, q].copy()
                new_p = c * hp - swc * hq
                new_q = sw * hp + c * hq
                a[:, p] = new_p
                a[:, q] = new_q
                # Hermiticity is restored exactly by mirroring the columns.
                a[p, :] = new_p.conj()
                a[q, :] = new_q.conj()
                a[p, p] = app - t * absb
                a[q, q] = aqq + t * absb
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - swc * vq
                v[:, q] = sw * vp + c * vq
    else:
        raise ConvergenceError(
            f"Jacobi did not converge within {JACOBI_MAX_SWEEPS} sweeps (n={n})"
        )

    values = a.real.diagonal().copy()
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], _fix_column_phases(v[:, order]))
