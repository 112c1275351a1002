"""1-DOF mass-spring-damper contact model for peak impact force.

A point of the given effective mass hits a stiff surface at the approach
speed; penetration x obeys M x'' = -k x - c x' while x > 0 and the contact
force is k x + c x' clamped at zero. Deliberately simple so the
effective-mass-to-peak-force relationship is testable without a robot
simulator: for c = 0 the peak is exactly v * sqrt(k M).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import IMPACT_STEP_GUARD
from .errors import EmptyInput, UnstableStep

TRACE_POINTS = 2000


@dataclass(frozen=True, eq=False)
class ImpactScenario:
    """Inputs for one contact simulation.

    ``step`` and ``duration`` default to 1e-4 * sqrt(M/k) (the stability
    guard) and 1.25 * pi * sqrt(M/k) (a bit over the undamped contact
    half-period), so the default run always covers the whole contact.
    """

    effective_mass: float
    approach_speed: float
    contact_stiffness: float
    contact_damping: float = 0.0
    duration: float | None = None
    step: float | None = None

    def __post_init__(self):
        for name in ("effective_mass", "approach_speed", "contact_stiffness"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")
        if self.contact_damping < 0.0:
            raise ValueError("contact_damping must be >= 0")
        scale = math.sqrt(self.effective_mass / self.contact_stiffness)
        if self.step is None:
            object.__setattr__(self, "step", IMPACT_STEP_GUARD * scale)
        if self.duration is None:
            object.__setattr__(self, "duration", 1.25 * math.pi * scale)
        if not self.step > 0.0 or not self.duration > 0.0:
            raise ValueError("step and duration must be positive")


@dataclass(frozen=True, eq=False)
class ForceTrace:
    """Decimated (t, F) series; the true peak sample is always retained."""

    times: np.ndarray
    forces: np.ndarray
    peak_force: float
    peak_time: float

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        f = np.asarray(self.forces, dtype=float)
        if t.shape != f.shape or t.ndim != 1 or len(t) == 0:
            raise ValueError("times and forces must be equal-length vectors")
        if abs(f.max() - self.peak_force) > 1e-12 * max(1.0, self.peak_force):
            raise ValueError("peak_force must be the series maximum")
        t.setflags(write=False)
        f.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "forces", f)


def simulate_impact(s: ImpactScenario) -> ForceTrace:
    """Fixed-step (semi-implicit Euler) contact integration.

    Starts at x = 0 with the approach speed, stops when the surface is
    left (x back to zero, no sticking) or the duration runs out. The raw
    series is decimated to about TRACE_POINTS points.
    """
    m, k, c = s.effective_mass, s.contact_stiffness, s.contact_damping
    guard = IMPACT_STEP_GUARD * math.sqrt(m / k)
    if s.step > guard * (1.0 + 1e-9):
        raise UnstableStep(f"step {s.step:.3e} exceeds guard {guard:.3e}")
    dt = s.step
    n_max = int(math.ceil(s.duration / dt))
    times = [0.0]
    forces = [max(0.0, c * s.approach_speed)]
    x, v = 0.0, s.approach_speed
    for i in range(1, n_max + 1):
        v += dt * (-k * x - c * v) / m
        x += dt * v
        if x <= 0.0:
            times.append(i * dt)
            forces.append(0.0)
            break
        times.append(i * dt)
        forces.append(max(0.0, k * x + c * v))
    t = np.array(times)
    f = np.array(forces)
    peak_idx = int(f.argmax())
    keep = np.arange(0, len(f), max(1, len(f) // TRACE_POINTS))
    keep = np.union1d(keep, [peak_idx, len(f) - 1])
    return ForceTrace(t[keep], f[keep], float(f[peak_idx]), float(t[peak_idx]))


@dataclass(frozen=True, eq=False)
class ImpactOrdering:
    """Grasps ascending by simulated peak force at the collision sample."""

    grasp_ids: tuple[str, ...]
    peak_forces: tuple[float, ...]
    collision_sample: int
    speed: float


def predict_ordering(profiles, collision_sample: int, speed: float,
                     stiffness: float, damping: float = 0.0) -> ImpactOrdering:
    """Simulate one impact per grasp at its effective mass there.

    ``collision_sample`` is 1-based, matching trajectory sample indices.
    Ties in peak force break on grasp id.
    """
    profiles = list(profiles)
    if not profiles:
        raise EmptyInput("no profiles")
    scored = []
    for p in profiles:
        if not 1 <= collision_sample <= len(p):
            raise ValueError(f"collision sample {collision_sample} out of "
                             f"range (profile has {len(p)})")
        trace = simulate_impact(ImpactScenario(
            effective_mass=float(p.masses[collision_sample - 1]),
            approach_speed=speed, contact_stiffness=stiffness,
            contact_damping=damping))
        scored.append((trace.peak_force, p.grasp_id))
    scored.sort()
    return ImpactOrdering(
        grasp_ids=tuple(gid for _, gid in scored),
        peak_forces=tuple(peak for peak, _ in scored),
        collision_sample=collision_sample, speed=speed)
