#!/usr/bin/env python3
# Contact force analytics for the spring / spring-damper surface model.
# No robot here: effective mass is taken as given, the point is the
# closed-form structure of the force trace.

import numpy as np

from graspmass import ImpactScenario, simulate_impact

# unit case: 1 kg at 1 m/s into 10 kN/m gives exactly sqrt(k*M) = 100 N
trace = simulate_impact(ImpactScenario(1.0, 1.0, 1e4))
print("unit case (M=1 kg, v=1 m/s, k=10 kN/m):")
print(f"  peak {trace.peak_force:.3f} N at t = {trace.peak_time * 1e3:.3f} ms "
      "(quarter period of the contact oscillator)")
print()

# peak force grows with the square root of effective mass
print("undamped peaks follow v * sqrt(k * M):")
print(f"{'M [kg]':>8} {'peak [N]':>10} {'v*sqrt(kM) [N]':>16}")
for m in (0.25, 1.0, 4.0, 16.0):
    peak = simulate_impact(ImpactScenario(m, 1.0, 1e4)).peak_force
    print(f"{m:>8.2f} {peak:>10.2f} {1.0 * np.sqrt(1e4 * m):>16.2f}")
print()

# damping adds a force jump at first touch and stretches the contact
undamped = simulate_impact(ImpactScenario(1.0, 1.0, 1e4, 0.0))
damped = simulate_impact(ImpactScenario(1.0, 1.0, 1e4, 20.0))
print("adding damping (c = 20 Ns/m):")
print(f"  force at first contact: {undamped.forces[0]:.1f} N undamped, "
      f"{damped.forces[0]:.1f} N damped (= c * v)")
print(f"  contact duration: {undamped.times[-1] * 1e3:.2f} ms undamped, "
      f"{damped.times[-1] * 1e3:.2f} ms damped")
print(f"  peak: {undamped.peak_force:.2f} N -> {damped.peak_force:.2f} N")
print()

# halving the impact force needs a quarter of the effective mass, which
# is the practical argument for ranking grasps by this number
base = simulate_impact(ImpactScenario(2.0, 0.4, 1e4)).peak_force
quarter = simulate_impact(ImpactScenario(0.5, 0.4, 1e4)).peak_force
print(f"same move, 2.0 kg vs 0.5 kg effective mass: "
      f"{base:.1f} N vs {quarter:.1f} N")
