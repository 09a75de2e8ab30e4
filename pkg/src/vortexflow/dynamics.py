"""Vortex advection under the image-regularized velocity field.

A vortex moves with the flow of everything except its own singular
term: peers, the vortex at infinity, center vortices, and its own
images all contribute, its own seed source does not.  Positions are
advanced with classical fourth-order Runge-Kutta; the image trees are
rebuilt at every stage because the seeds move, while prescribed
boundary circulations are held fixed in time (the center strengths are
re-solved each stage so the boundary conditions stay steady).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import SeedInsideCylinderError
from .geometry import min_boundary_distance
from .images import DEFAULT_BUDGET
from .stream import FlowSpec, assemble_flow
from .field import _wprime_sum, _uv_from_sum

__all__ = [
    "TrajectorySet",
    "vortex_velocity",
    "advect",
]


@dataclass(frozen=True, eq=False)
class TrajectorySet:
    """Recorded vortex paths: times (T,), positions (T, n) complex.

    halt_reason is None for a completed run; otherwise the integration
    stopped early and the arrays hold the steps completed before the
    halt.
    """

    times: np.ndarray
    positions: np.ndarray
    circulations: tuple[float, ...]
    halt_reason: str | None = None

    @property
    def completed(self) -> bool:
        return self.halt_reason is None


def _advection_velocities(spec: FlowSpec, level: int, budget: int) -> np.ndarray:
    """u + iv for every vortex, each excluding its own seed source."""
    model = assemble_flow(spec, level=level, budget=budget)
    n = len(spec.vortices)
    out = np.zeros(n, dtype=complex)
    for j in range(n):
        record = model.ledger[j]
        z = np.array([complex(spec.vortices[j][0])])
        s, hit = _wprime_sum(model, z, skip_block=record.first_block)
        if hit.any():
            raise SeedInsideCylinderError(
                f"vortex {j} coincides with an image source at {z[0]}"
            )
        u, v = _uv_from_sum(s)
        out[j] = u[0] + 1j * v[0]
    return out


def vortex_velocity(spec: FlowSpec, j: int, level: int,
                    budget: int = DEFAULT_BUDGET):
    """Advection velocity (u, v) of vortex j.

    The full assembled field is evaluated at the vortex position with
    the vortex's own seed term removed; its images and every other
    generator are retained.
    """
    n = len(spec.vortices)
    if not 0 <= j < n:
        raise IndexError(f"vortex index {j} out of range for {n} vortices")
    vel = _advection_velocities(spec, level, budget)
    return float(vel[j].real), float(vel[j].imag)


def advect(spec: FlowSpec, dt: float, steps: int, level: int | None = None,
           tolerance: float | None = None,
           budget: int = DEFAULT_BUDGET) -> TrajectorySet:
    """Integrate all vortex positions with classical RK4.

    The truncation level is fixed for the whole run: given directly, or
    chosen once from the initial configuration when a tolerance is
    given instead.  Integration halts with a partial trajectory if any
    vortex comes within 1e-3 times the smallest cylinder radius of a
    boundary (or crosses one inside a stage).
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if level is None:
        if tolerance is None:
            raise ValueError("give exactly one of level and tolerance")
        level = assemble_flow(spec, tolerance=tolerance,
                              budget=budget).truncation_level

    domain = spec.domain
    circs = tuple(g for _, g in spec.vortices)
    guard = 1e-3 * float(min(domain.radii())) if domain.k else 0.0

    def too_close(state):
        for z in state:
            if min_boundary_distance(domain, complex(z)) < guard:
                return True
        return False

    def rhs(state):
        moved = replace(spec, vortices=tuple(zip(state, circs)))
        return _advection_velocities(moved, level, budget)

    state = np.array([complex(z) for z, _ in spec.vortices])
    times = [0.0]
    path = [state.copy()]
    halt = None
    for step in range(int(steps)):
        try:
            k1 = rhs(state)
            k2 = rhs(state + 0.5 * dt * k1)
            k3 = rhs(state + 0.5 * dt * k2)
            k4 = rhs(state + dt * k3)
        except SeedInsideCylinderError:
            halt = (f"a vortex crossed a cylinder boundary during step "
                    f"{step + 1}")
            break
        new_state = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if too_close(new_state):
            halt = (f"a vortex came within {guard:g} of a boundary at "
                    f"t = {(step + 1) * dt:g}")
            break
        state = new_state
        times.append((step + 1) * dt)
        path.append(state.copy())
    positions = np.array(path).reshape(len(path), len(circs))
    return TrajectorySet(np.array(times), positions, circs, halt)
