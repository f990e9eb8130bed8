#!/usr/bin/env python3
"""Tour of the purification bundle machinery.

Covers spectra with degeneracy grouping, lifts and the bundle map, the
right gauge action, the mechanical connection form, and the orthogonal
vertical/horizontal splitting of tangent vectors.
"""

import numpy as np

from phasegeo import (
    DensityOperator,
    block_projectors,
    connection_form,
    form_omega,
    gauge_transform,
    ham_field,
    make_rng,
    metric_g,
    project,
    sample_density,
    sample_gauge_unitary,
    sample_hermitian,
    sample_spectrum,
    spectrum_of,
    split,
    standard_lift,
)

rng = make_rng(2024)


def banner(text):
    print(f"\n--- {text} " + "-" * max(0, 58 - len(text)))


banner("spectra and degeneracy grouping")
rho = DensityOperator(np.diag([0.4, 0.4 - 5e-10, 0.2 + 5e-10]).astype(complex))
spectrum = spectrum_of(rho)
print("eigenvalues  :", spectrum.eigenvalues)
print("multiplicities:", spectrum.multiplicities)
print("Two levels 5e-10 apart were merged into one block (tolerance 1e-8);")
print("the block projectors select the multiplicity blocks:")
for j, e in enumerate(block_projectors(spectrum), start=1):
    print(f"E_{j} diagonal:", np.diag(e).real)

banner("lifts and the bundle map")
orbit_spectrum, _ = sample_spectrum(3, rng)
rho = sample_density(orbit_spectrum, 4, rng)
lift = standard_lift(rho)
print(f"state dimension {lift.dim}, orbit rank {lift.rank}")
gram = lift.psi.conj().T @ lift.psi
print("psi† psi - P(sigma) max deviation:", np.abs(gram - orbit_spectrum.p_matrix()).max())
print("projection recovers rho:", np.abs(project(lift).matrix - rho.matrix).max())

banner("gauge action")
u = sample_gauge_unitary(lift.spectrum, rng)
moved = gauge_transform(lift, u)
print("lift moved by a random gauge unitary; projected state unchanged:")
print("  max |pi(psi u) - pi(psi)| =", np.abs(project(moved).matrix - rho.matrix).max())

banner("mechanical connection and splitting")
obs = sample_hermitian(4, rng)
x = ham_field(obs, lift)
a = connection_form(lift, x)
vertical, horizontal = split(lift, x)
print("connection form A_psi(X), an anti-Hermitian block matrix:")
print(np.round(a.xi, 4))
print("G(vertical, horizontal)     =", metric_g(vertical, horizontal, 1.0))
print("Omega(vertical, horizontal) =", form_omega(vertical, horizontal, 1.0))
print("reassembly max error        =", np.abs(vertical + horizontal - x).max())

banner("equivariance under the gauge group")
worst = 0.0
for _ in range(200):
    u = sample_gauge_unitary(lift.spectrum, rng)
    lhs = connection_form(gauge_transform(lift, u), x @ u).xi
    rhs = u.conj().T @ a.xi @ u
    worst = max(worst, np.abs(lhs - rhs).max())
print("A_(psi u)(X u) = u† A_psi(X) u, worst deviation over 200 draws:", worst)

banner("pure vertical versus pure horizontal")
xi = connection_form(lift, x).xi
orbit_vector = lift.psi @ xi
v, h = split(lift, orbit_vector)
print("gauge-orbit vector splits to (itself, 0):", np.abs(h).max())
v, h = split(lift, horizontal)
print("horizontal vector splits to (0, itself):", np.abs(v).max())
