"""Purification bundle over an orbit of isospectral density operators.

A density operator rho of rank k with spectrum sigma = (p1 >= ... >= pk > 0)
lives on the unitary orbit D(sigma).  Its lifts are the n-by-k matrices Psi
with Psi† Psi = P(sigma), where P(sigma) is the diagonal matrix of the
spectrum; the bundle map sends Psi to Psi Psi†.  The gauge group is the
subgroup of U(k) commuting with P(sigma) and acts on lifts from the right
without moving the projected state.

The tangent space at a lift splits into a vertical part (along the gauge
orbit, spanned by the generators Psi*xi for xi in the gauge algebra) and a
horizontal part (its orthogonal complement under the metric G).  The
splitting is computed through the mechanical connection form, which has the
closed form

    A_Psi(X) = sum_j E_j (Psi† X) E_j P(sigma)^{-1},

with E_j the diagonal 0/1 projector onto the j-th multiplicity block.  The
connection form is the quotient of the moment map by the moment of inertia,
so moment pairings and the gauge-algebra inner product live here too.

Everything is a pure function over immutable values; lifts and spectra may
be shared freely between threads.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_complex_matrix, hermitian_eig, metric_g

__all__ = [
    "BlockProjectors",
    "DEG_TOL_DEFAULT",
    "DensityOperator",
    "GaugeAlgebraElement",
    "Lift",
    "RANK_TOL_DEFAULT",
    "Spectrum",
    "block_projectors",
    "connection_form",
    "gauge_transform",
    "inertia_inner",
    "moment_pairing",
    "project",
    "spectrum_of",
    "split",
    "standard_lift",
]

# Eigenvalues below RANK_TOL_DEFAULT * trace are treated as zero.
RANK_TOL_DEFAULT = 1e-12

# Consecutive eigenvalue gaps below DEG_TOL_DEFAULT * p1 are merged into
# one multiplicity block.  Chosen so eigensolver noise (~1e-15) never
# splits a true degeneracy while gaps above 1e-7 never merge.
DEG_TOL_DEFAULT = 1e-8

# Tangency residual thresholds for the connection form: silently accepted
# below TANGENCY_SILENT, advisory warning up to TANGENCY_ERROR, rejected
# above.  Vector fields produced by this package are tangent analytically,
# so only gross caller errors ever trip the hard limit.
TANGENCY_SILENT = 1e-9
TANGENCY_ERROR = 1e-6

_HERM_TOL = 1e-12
_TRACE_TOL = 1e-10
_PSD_TOL = 1e-10
_LIFT_TOL = 1e-10
_GAUGE_TOL = 1e-10


def _readonly(a: np.ndarray) -> np.ndarray:
    out = a.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Spectrum:
    """Grouped spectrum of a density operator: the point fixing its orbit.

    ``eigenvalues`` holds all k positive values in non-increasing order,
    with the members of a multiplicity block repeated (each block carries
    its grouped representative).  ``multiplicities`` lists the block sizes
    of the distinct values, largest value first.  Distinct values must
    differ by more than ``degeneracy_tolerance`` relative to the largest
    eigenvalue, so the block structure is unambiguous.
    """

    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    degeneracy_tolerance: float = DEG_TOL_DEFAULT

    def __post_init__(self):
        p = self.eigenvalues
        m = self.multiplicities
        if not p:
            raise ValueError("spectrum must contain at least one eigenvalue")
        if any(v <= 0 or not np.isfinite(v) for v in p):
            raise ValueError("spectrum eigenvalues must be finite and strictly positive")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError("spectrum eigenvalues must be non-increasing")
        if abs(sum(p) - 1.0) > _TRACE_TOL:
            raise ValueError(f"spectrum eigenvalues must sum to 1, got {sum(p)!r}")
        if self.degeneracy_tolerance <= 0:
            raise ValueError("degeneracy_tolerance must be positive")
        if any(mi < 1 or mi != int(mi) for mi in m):
            raise ValueError("multiplicities must be positive integers")
        if sum(m) != len(p):
            raise ValueError("multiplicities must sum to the number of eigenvalues")
        start = 0
        gap_floor = self.degeneracy_tolerance * p[0]
        prev = None
        for mi in m:
            block = p[start : start + mi]
            if any(v != block[0] for v in block):
                raise ValueError("eigenvalues within a multiplicity block must be identical")
            if prev is not None and prev - block[0] <= gap_floor:
                raise ValueError("distinct eigenvalues lie within the degeneracy tolerance")
            prev = block[0]
            start += mi

    @property
    def rank(self) -> int:
        """Number of retained eigenvalues k (counted with multiplicity)."""
        return len(self.eigenvalues)

    @property
    def distinct_values(self) -> tuple[float, ...]:
        """The l grouped eigenvalues, one per multiplicity block."""
        out = []
        start = 0
        for m in self.multiplicities:
            out.append(self.eigenvalues[start])
            start += m
        return tuple(out)

    @property
    def block_slices(self) -> tuple[slice, ...]:
        """Index ranges of the multiplicity blocks inside 0..k."""
        out = []
        start = 0
        for m in self.multiplicities:
            out.append(slice(start, start + m))
            start += m
        return tuple(out)

    def p_matrix(self) -> np.ndarray:
        """The diagonal k-by-k matrix P(sigma) carrying the spectrum."""
        return np.diag(np.asarray(self.eigenvalues, dtype=np.complex128))


# A BlockProjectors value is the tuple (E_1, ..., E_l) of diagonal 0/1
# matrices selecting the multiplicity blocks; see block_projectors().
BlockProjectors = tuple


def block_projectors(spectrum: Spectrum) -> BlockProjectors:
    """Diagonal projectors E_j onto the multiplicity blocks, E_1 + ... + E_l = 1."""
    k = spectrum.rank
    out = []
    for slc in spectrum.block_slices:
        e = np.zeros((k, k), dtype=np.complex128)
        e[slc, slc] = np.eye(slc.stop - slc.start)
        out.append(_readonly(e))
    return tuple(out)


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive-semidefinite, unit-trace matrix: a mixed state."""

    matrix: np.ndarray

    def __post_init__(self):
        a = as_complex_matrix(self.matrix, "density matrix")
        n = a.shape[0]
        if a.shape[1] != n:
            raise ValueError(f"density matrix must be square, got shape {a.shape}")
        norm = np.linalg.norm(a)
        if np.linalg.norm(a - a.conj().T) > _HERM_TOL * max(norm, 1.0):
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = np.trace(a)
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValueError(f"density matrix trace must be 1, got {tr!r}")
        # Fast positivity screen; the geometric code never needs this frame.
        low = np.linalg.eigvalsh(0.5 * (a + a.conj().T))[0]
        if low < -_PSD_TOL:
            raise ValueError(f"density matrix has negative eigenvalue {low!r}")
        object.__setattr__(self, "matrix", _readonly(a))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Lift:
    """A point Psi of the bundle total space, with Psi† Psi = P(sigma)."""

    psi: np.ndarray
    spectrum: Spectrum
    hbar: float = 1.0

    def __post_init__(self):
        a = as_complex_matrix(self.psi, "lift")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        k = self.spectrum.rank
        if a.shape[1] != k:
            raise ValueError(f"lift has {a.shape[1]} columns but the spectrum has rank {k}")
        gram = a.conj().T @ a
        if np.abs(gram - self.spectrum.p_matrix()).max() > _LIFT_TOL:
            raise ValueError("lift does not satisfy psi† psi = P(sigma) within tolerance")
        object.__setattr__(self, "psi", _readonly(a))

    @property
    def dim(self) -> int:
        return self.psi.shape[0]

    @property
    def rank(self) -> int:
        return self.psi.shape[1]


@dataclass(frozen=True)
class GaugeAlgebraElement:
    """Anti-Hermitian k-by-k matrix commuting with P(sigma).

    When ``spectrum`` is attached the block structure is validated; a bare
    element (spectrum None) is only checked for anti-Hermiticity, which
    covers scalar elements that commute with every P.
    """

    xi: np.ndarray
    spectrum: Spectrum | None = field(default=None, compare=False)

    def __post_init__(self):
        a = as_complex_matrix(self.xi, "gauge algebra element")
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"gauge algebra element must be square, got shape {a.shape}")
        norm = np.linalg.norm(a)
        if np.linalg.norm(a + a.conj().T) > _HERM_TOL * max(norm, 1.0):
            raise ValueError("gauge algebra element is not anti-Hermitian within tolerance")
        if self.spectrum is not None:
            _check_block_structure(a, self.spectrum)
        object.__setattr__(self, "xi", _readonly(a))

    @property
    def rank(self) -> int:
        return self.xi.shape[0]


def _check_block_structure(xi: np.ndarray, spectrum: Spectrum) -> None:
    k = spectrum.rank
    if xi.shape != (k, k):
        raise ValueError(f"element is {xi.shape} but the spectrum has rank {k}")
    p = spectrum.p_matrix()
    if np.linalg.norm(xi @ p - p @ xi) > _GAUGE_TOL * max(np.linalg.norm(xi), 1.0):
        raise ValueError("element does not commute with P(sigma): not in the gauge algebra")


def _group_eigenvalues(
    values: np.ndarray, rank_tol: float, deg_tol: float
) -> tuple[tuple[float, ...], tuple[int, ...]]:
    """Rank-cut and degeneracy-group a descending eigenvalue sequence."""
    if rank_tol <= 0 or deg_tol <= 0:
        raise ValueError("rank_tol and deg_tol must be positive")
    cut = rank_tol * float(values.sum())
    kept = [float(v) for v in values if v >= cut and v > 0.0]
    if not kept:
        raise ValueError("all eigenvalues fall below the rank cut (zero operator)")
    gap_floor = deg_tol * kept[0]
    clusters: list[list[float]] = [[kept[0]]]
    for v in kept[1:]:
        if clusters[-1][-1] - v <= gap_floor:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    eigenvalues: list[float] = []
    multiplicities: list[int] = []
    for cluster in clusters:
        mean = sum(cluster) / len(cluster)
        eigenvalues.extend([mean] * len(cluster))
        multiplicities.append(len(cluster))
    return tuple(eigenvalues), tuple(multiplicities)


def spectrum_of(
    rho: DensityOperator,
    rank_tol: float = RANK_TOL_DEFAULT,
    deg_tol: float = DEG_TOL_DEFAULT,
) -> Spectrum:
    """Extract the grouped positive spectrum of a density operator.

    Eigenvalues below ``rank_tol`` times the trace are dropped; survivors
    whose consecutive gaps stay within ``deg_tol`` times the largest
    eigenvalue are merged into one multiplicity block represented by the
    cluster mean.
    """
    eig = hermitian_eig(rho.matrix)
    values, mults = _group_eigenvalues(eig.values, rank_tol, deg_tol)
    return Spectrum(values, mults, deg_tol)


def standard_lift(
    rho: DensityOperator,
    hbar: float = 1.0,
    rank_tol: float = RANK_TOL_DEFAULT,
    deg_tol: float = DEG_TOL_DEFAULT,
) -> Lift:
    """Canonical lift Psi = V sqrt(P) from the phase-fixed eigenvector frame.

    V holds the eigenvectors of the retained eigenvalues, so the result is
    reproducible across runs and projects back onto ``rho``.
    """
    eig = hermitian_eig(rho.matrix)
    values, mults = _group_eigenvalues(eig.values, rank_tol, deg_tol)
    spectrum = Spectrum(values, mults, deg_tol)
    k = spectrum.rank
    psi = eig.vectors[:, :k] * np.sqrt(np.asarray(values))
    return Lift(psi, spectrum, hbar)


def project(psi: Lift) -> DensityOperator:
    """Bundle map: send a lift Psi to the density operator Psi Psi†."""
    m = psi.psi @ psi.psi.conj().T
    return DensityOperator(0.5 * (m + m.conj().T))


def gauge_transform(psi: Lift, u) -> Lift:
    """Right gauge action Psi -> Psi U for U unitary and commuting with P(sigma)."""
    um = as_complex_matrix(u, "gauge unitary")
    k = psi.rank
    if um.shape != (k, k):
        raise ValueError(f"gauge unitary must be {k}x{k}, got {um.shape}")
    if np.linalg.norm(um.conj().T @ um - np.eye(k)) > _GAUGE_TOL * np.sqrt(k):
        raise ValueError("gauge transform requires a unitary matrix")
    p = psi.spectrum.p_matrix()
    if np.linalg.norm(um @ p - p @ um) > _GAUGE_TOL * max(np.linalg.norm(p), 1.0):
        raise ValueError("unitary does not commute with P(sigma): not in the gauge group")
    return Lift(psi.psi @ um, psi.spectrum, psi.hbar)


def _tangency_residual(psi: Lift, x: np.ndarray, m: np.ndarray) -> float:
    """Scale-free size of Psi†X + X†Psi, which vanishes for tangent X."""
    scale = np.linalg.norm(psi.psi) * np.linalg.norm(x)
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(m + m.conj().T) / scale)


def connection_form(psi: Lift, x) -> GaugeAlgebraElement:
    """Mechanical connection form A_Psi(X) evaluated via the block formula.

    X must be an n-by-k tangent vector at the lift.  Tangency is measured
    by the relative size of Psi†X + X†Psi: residuals up to 1e-9 are
    accepted silently, residuals up to 1e-6 raise an advisory warning, and
    anything larger is rejected.  The surviving skew defect of the same
    magnitude is projected out so the result lies exactly in the gauge
    algebra.
    """
    xm = as_complex_matrix(x, "tangent vector")
    if xm.shape != psi.psi.shape:
        raise ValueError(f"tangent vector must be {psi.psi.shape}, got {xm.shape}")
    m = psi.psi.conj().T @ xm
    res = _tangency_residual(psi, xm, m)
    if res > TANGENCY_ERROR:
        raise ValueError(f"vector is not tangent to the bundle at this lift (residual {res:.3e})")
    if res > TANGENCY_SILENT:
        warnings.warn(
            f"tangency residual {res:.3e} exceeds {TANGENCY_SILENT:.0e}; "
            "connection form may be inaccurate",
            stacklevel=2,
        )
    k = psi.rank
    xi = np.zeros((k, k), dtype=np.complex128)
    for slc, p in zip(psi.spectrum.block_slices, psi.spectrum.distinct_values):
        xi[slc, slc] = m[slc, slc] / p
    xi = 0.5 * (xi - xi.conj().T)
    return GaugeAlgebraElement(xi, psi.spectrum)


def split(psi: Lift, x) -> tuple[np.ndarray, np.ndarray]:
    """Vertical and horizontal projections of a tangent vector.

    The vertical part is Psi A_Psi(X); the horizontal part is the exact
    remainder, so the two always add back to X.  They are orthogonal under
    the metric G (and under Omega, by the block structure).
    """
    xm = as_complex_matrix(x, "tangent vector")
    vertical = psi.psi @ connection_form(psi, xm).xi
    return vertical, xm - vertical


def inertia_inner(
    xi: GaugeAlgebraElement,
    eta: GaugeAlgebraElement,
    spectrum: Spectrum,
    hbar: float = 1.0,
) -> float:
    """Moment-of-inertia inner product hbar * Tr((xi†eta + eta†xi) P(sigma)).

    Matches G(Psi xi, Psi eta) for every lift with this spectrum.  The hbar
    factor keeps that identity exact; see the package notes on conventions.
    """
    if hbar <= 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    _check_block_structure(xi.xi, spectrum)
    _check_block_structure(eta.xi, spectrum)
    p = np.asarray(spectrum.eigenvalues)
    cols = np.sum(xi.xi.conj() * eta.xi, axis=0)
    return float(2.0 * hbar * np.sum(p * cols).real)


def moment_pairing(psi: Lift, x, xi: GaugeAlgebraElement) -> float:
    """Moment map pairing J_Psi(X) . xi = G(X, Psi xi).

    For tangent X this equals inertia_inner(connection_form(psi, X), xi),
    which is exactly the statement that the connection form is the inertia
    inverse applied to the moment map.
    """
    xm = as_complex_matrix(x, "tangent vector")
    if xm.shape != psi.psi.shape:
        raise ValueError(f"tangent vector must be {psi.psi.shape}, got {xm.shape}")
    if xi.rank != psi.rank:
        raise ValueError(f"gauge element rank {xi.rank} does not match lift rank {psi.rank}")
    return metric_g(xm, psi.psi @ xi.xi, psi.hbar)
