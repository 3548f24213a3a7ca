"""Joint phase-profile and transmit-covariance optimization on one placement.

The optimizer draws several random phase profiles, keeps the one whose
water-filled capacity is best, then alternates two steps: a full pass of
per-element closed-form phase updates (covariance fixed), and a
water-filling covariance solve (phases fixed). Both steps can only raise
the objective, so the trace climbs monotonically until the relative gain
drops below the threshold.
"""

import numpy as np

from ris_placement import (
    AltOptConfig,
    CartesianPoint,
    PhysicalParams,
    PlanarArray,
    RisPanel,
    alternating_optimize,
    array_element_positions,
    build_channel_set,
    build_direct_los,
    waterfill,
)

params = PhysicalParams.from_frequency(300e9, absorption=0.0033,
                                       tx_gain=100.0, rx_gain=100.0)
lam = params.wavelength
panel = RisPanel(8, 8, 1.4375 * lam, 1.4375 * lam, 0.125 * lam, 0.125 * lam, z=0.0)
tx = PlanarArray(2, 2, 2.0 * lam, CartesianPoint(0.0, 0.0, -0.05))
rx = PlanarArray(2, 2, 2.0 * lam, CartesianPoint(0.0, 0.0, 0.05))
tx_pos = array_element_positions(tx)
rx_pos = array_element_positions(rx)

power = 0.01        # 10 dBm
noise = 1e-12       # -90 dBm

channels = build_channel_set(params, tx_pos, rx_pos, panel)
print(f"{panel.size} panel elements between 2x2 arrays, link 0.10 m")

# Reference points: unoptimized panel and no panel at all.
flat_cap = waterfill(channels.effective, power, noise).capacity
los_cap = waterfill(build_direct_los(params, tx_pos, rx_pos), power, noise).capacity
print(f"\nall-ones profile: {flat_cap:8.3f} bps/Hz")
print(f"direct link only: {los_cap:8.3f} bps/Hz")

config = AltOptConfig(starts=8, threshold=1e-5, max_iterations=200, seed=3)
result = alternating_optimize(channels.tx_to_ris, channels.ris_to_rx,
                              power, noise, config)

print(f"\noptimized:        {result.waterfill.capacity:8.3f} bps/Hz "
      f"({result.converged} after {result.iterations} iterations, "
      f"start {result.best_start} won)")
print(f"streams used: {result.waterfill.dof} of {min(tx.size, rx.size)}")

print("\nobjective trace (bps/Hz):")
trace = result.trace
for i in range(0, len(trace), 2):
    chunk = "  ".join(f"{c:.4f}" for c in trace[i:i + 2])
    print(f"  step {i:2d}: {chunk}")

gains = np.diff(trace)
print(f"smallest step gain: {gains.min():.3e} "
      f"(monotone up to double-precision rounding)")
