#!/usr/bin/env python3
"""Empirical comparison of the geometric and Robertson-Schrodinger bounds.

Random observable pairs at random states, orbit by orbit: the geometric
relation always holds, it coincides with RS on pure states, and on mixed
states either bound may win depending on the pair.
"""

import math

from phasegeo import (
    analyze_pair,
    make_rng,
    sample_density,
    sample_hermitian,
    sample_spectrum,
)

SAMPLES = 400


def orbit_row(dim, rank, seed):
    rng = make_rng(seed)
    spectrum, _ = sample_spectrum(rank, rng)
    wins = {"geometric": 0, "robertson_schrodinger": 0, "tie": 0}
    min_slack = math.inf
    gap_sum = 0.0
    for _ in range(SAMPLES):
        rho = sample_density(spectrum, dim, rng)
        rep = analyze_pair(sample_hermitian(dim, rng), sample_hermitian(dim, rng), rho)
        wins[rep.bound_winner] += 1
        min_slack = min(min_slack, rep.slack_geometric)
        gap_sum += rep.geometric_bound - rep.rs_bound
    return wins, min_slack, gap_sum / SAMPLES


print(f"{SAMPLES} random (A, B, rho) triples per orbit, hbar = 1")
print()
print(f"{'dim':>4} {'rank':>5} {'geo wins':>9} {'rs wins':>8} {'ties':>6} "
      f"{'min slack':>12} {'mean(geo-rs)':>13}")
for dim, rank, seed in [
    (2, 1, 11),
    (2, 2, 12),
    (3, 2, 13),
    (3, 3, 14),
    (4, 2, 15),
    (4, 4, 16),
    (6, 3, 17),
]:
    wins, min_slack, mean_gap = orbit_row(dim, rank, seed)
    print(
        f"{dim:>4} {rank:>5} {wins['geometric']:>9} {wins['robertson_schrodinger']:>8} "
        f"{wins['tie']:>6} {min_slack:>12.3e} {mean_gap:>13.3e}"
    )

print()
print("Rank-1 rows tie on every sample: for pure states the two bounds are")
print("analytically equal.  On mixed orbits the geometric bound wins for a")
print("sizeable fraction of observable pairs, and the minimum slack never")
print("drops below floating-point roundoff, as the uncertainty relation")
print("requires.")
