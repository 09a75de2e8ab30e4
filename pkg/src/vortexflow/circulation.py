"""Prescribed-circulation linear system and circulation bookkeeping.

Placing a vortex of strength G^c_j at the center of cylinder j changes
the circulation around that cylinder by G^c_j (2K - 1)/K and around
every other cylinder by -G^c_j / K, while each free vortex and the
vortex at infinity contribute -G/K to every cylinder.  Prescribing the
boundary circulations gamma_j therefore leads to a K x K system whose
matrix is A = 2I - (1/K) J, with J the all-ones matrix.  A is a rank-one
update of a scaled identity, so the solve is closed form and O(K).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CirculationSystemError

__all__ = [
    "CirculationLedger",
    "solve_center_strengths",
    "predicted_ledger",
]


@dataclass(frozen=True, eq=False)
class CirculationLedger:
    """Circulation around each cylinder and around the far field.

    at_infinity is the circulation measured on a large contour traversed
    clockwise, which is the positive orientation about the point at
    infinity; it always equals -(sum of per_cylinder) - (sum of the free
    vortex circulations).
    """

    per_cylinder: np.ndarray
    at_infinity: float


def solve_center_strengths(k, circulations, total_vortex_circulation,
                           gamma_infinity=0.0):
    """Center-vortex strengths producing the prescribed circulations.

    Solves A x = b with A = 2I - (1/K)J and
    b_j = gamma_j + (total_vortex_circulation + gamma_infinity)/K.
    Since J has the single nonzero eigenvalue K, A is invertible with
    x_j = (b_j + mean(b))/2; the residual is verified before returning.

    Parameters
    ----------
    k : int
        Number of cylinders, at least 1.
    circulations : array_like of k reals
        Prescribed circulation gamma_j around each cylinder.
    total_vortex_circulation : float
        Sum of the circulations of the free vortices.
    gamma_infinity : float
        Circulation of the vortex at infinity.

    Returns
    -------
    ndarray of k center-vortex strengths.
    """
    k = int(k)
    if k < 1:
        raise ValueError("the system needs at least one cylinder")
    gam = np.asarray(circulations, dtype=float)
    if gam.shape != (k,):
        raise ValueError(f"expected {k} circulations, got shape {gam.shape}")
    rhs = gam + (float(total_vortex_circulation) + float(gamma_infinity)) / k
    x = (rhs + rhs.sum() / k) / 2.0
    residual = np.abs(2.0 * x - x.sum() / k - rhs).max()
    if residual > 1e-12 * (1.0 + np.abs(rhs).max()):
        raise CirculationSystemError(f"closed-form solve residual {residual:g}")
    return x


def _solve_center_strengths_dense(k, circulations, total_vortex_circulation,
                                  gamma_infinity=0.0):
    """Same system by generic elimination; kept as a cross-check path."""
    k = int(k)
    gam = np.asarray(circulations, dtype=float)
    rhs = gam + (float(total_vortex_circulation) + float(gamma_infinity)) / k
    a = 2.0 * np.eye(k) - np.ones((k, k)) / k
    return np.linalg.solve(a, rhs)


def predicted_ledger(center_strengths, vortex_circulations=(),
                     gamma_infinity=0.0):
    """Circulations implied by a resolved set of generators.

    Each cylinder j picks up -G/K from every free vortex and from the
    vortex at infinity, G^c_j (2K-1)/K from its own center vortex, and
    -G^c_l / K from every other center vortex.  The far-field entry is
    the clockwise circulation on a large contour, -sum(per_cylinder)
    minus the total free-vortex circulation.
    """
    gc = np.asarray(center_strengths, dtype=float)
    k = gc.size
    if k == 0:
        raise ValueError("ledger needs at least one cylinder")
    total = float(np.sum(np.asarray(vortex_circulations, dtype=float))) \
        if len(vortex_circulations) else 0.0
    per = 2.0 * gc - (gc.sum() + total + float(gamma_infinity)) / k
    return CirculationLedger(per, float(-per.sum() - total))
