"""Circular domains, circle reflections, and separation estimates.

The flow region is the part of the complex plane lying outside K closed
disks (cylinder cross sections).  Reflection through the circle L_j with
center c_j and radius R_j,

    T_j(z) = c_j + R_j**2 / conj(z - c_j),

swaps the interior and exterior of L_j, fixes L_j pointwise, and maps
c_j to the point at infinity and back.  Repeated reflections drive the
image construction in images.py.  Whether that construction converges is
a purely geometric question, answered here by the contraction factor

    q = (K - 1) * P**2,

where P bounds how much any single reflection shrinks distances between
the relevant points.  q < 1 guarantees geometric convergence of the
image sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    NonpositiveRadiusError,
    OverlapError,
    SeedInsideCylinderError,
)


class _AtInfinity:
    """Tag object for the point at infinity on the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


#: The unique point at infinity.  Identity comparison (``z is INFINITY``)
#: is the supported test; no finite sentinel value is ever used.
INFINITY = _AtInfinity()

#: A point on the Riemann sphere: a finite complex number or INFINITY.
SpherePoint = complex | _AtInfinity


def is_infinite(z: SpherePoint) -> bool:
    return z is INFINITY


@dataclass(frozen=True)
class Cylinder:
    """One circular cylinder cross section."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0.0:
            raise NonpositiveRadiusError(
                f"cylinder radius must be positive, got {self.radius}"
            )


@dataclass(frozen=True)
class CircularDomain:
    """The exterior of K pairwise disjoint disks.

    ``strictness`` is "strict" for flow computations (circles must be
    pairwise disjoint and non-touching) or "lax" (touching allowed, used
    only for limit-set exploration).
    """

    cylinders: tuple[Cylinder, ...]
    strictness: str = "strict"

    @property
    def k(self) -> int:
        return len(self.cylinders)

    def centers(self) -> np.ndarray:
        return np.array([c.center for c in self.cylinders], dtype=complex)

    def radii(self) -> np.ndarray:
        return np.array([c.radius for c in self.cylinders], dtype=float)

    def gap(self, j: int, l: int) -> float:
        """Surface-to-surface gap |c_j - c_l| - R_j - R_l."""
        a, b = self.cylinders[j], self.cylinders[l]
        return abs(a.center - b.center) - a.radius - b.radius


def validate_domain(cylinders, strictness: str = "strict") -> CircularDomain:
    """Check pairwise disjointness and build a CircularDomain.

    ``cylinders`` may contain Cylinder objects or (center, radius) pairs.
    In strict mode every pair must satisfy |c_j - c_l| > R_j + R_l; in
    lax mode equality (touching circles) is allowed.
    """
    if strictness not in ("strict", "lax"):
        raise ValueError(f"strictness must be 'strict' or 'lax', got {strictness!r}")
    cyls = tuple(
        c if isinstance(c, Cylinder) else Cylinder(*c) for c in cylinders
    )
    for j in range(len(cyls)):
        for l in range(j + 1, len(cyls)):
            dist = abs(cyls[j].center - cyls[l].center)
            rsum = cyls[j].radius + cyls[l].radius
            if dist < rsum or (strictness == "strict" and dist == rsum):
                raise OverlapError(
                    f"cylinders {j} and {l} are not disjoint: "
                    f"|c_{j} - c_{l}| = {dist:.6g}, R_{j} + R_{l} = {rsum:.6g}"
                )
    return CircularDomain(cyls, strictness)


def invert(cyl: Cylinder, z: SpherePoint) -> SpherePoint:
    """Reflect z through the circle of ``cyl``.

    Total on the sphere: the center maps to INFINITY and INFINITY maps
    to the center.  The map is an involution and fixes the circle.
    """
    if z is INFINITY:
        return cyl.center
    z = complex(z)
    if z == cyl.center:
        return INFINITY
    return cyl.center + cyl.radius**2 / (z - cyl.center).conjugate()


@dataclass(frozen=True)
class SeparationReport:
    """Well-separatedness summary for one seed in one domain.

    per_cylinder holds P_j, the largest of R_j over the seed distance
    and R_j over the nearest surface gap; P is their maximum, and
    contraction_factor is q = (K - 1) * P**2.  seed_displacement D is
    the largest distance the seed moves under a single reflection; it
    enters the truncation error bound together with q.
    """

    per_cylinder: tuple[float, ...]
    p: float
    contraction_factor: float
    seed_displacement: float
    converges: bool


def _classify_seed(domain: CircularDomain, seed: SpherePoint):
    """Return ("infinity", None), ("center", j) or ("exterior", None).

    Raises SeedInsideCylinderError for a finite non-center seed lying
    inside or on some cylinder.
    """
    if seed is INFINITY:
        return "infinity", None
    z = complex(seed)
    for j, cyl in enumerate(domain.cylinders):
        if z == cyl.center:
            return "center", j
    for j, cyl in enumerate(domain.cylinders):
        if abs(z - cyl.center) <= cyl.radius:
            raise SeedInsideCylinderError(
                f"seed {z} lies inside or on cylinder {j} "
                f"(center {cyl.center}, radius {cyl.radius})"
            )
    return "exterior", None


def separation_report(domain: CircularDomain, seed: SpherePoint) -> SeparationReport:
    """Compute P_j, P, q and the seed displacement D for one seed.

    The seed may be a finite exterior point, INFINITY, or one of the
    centers c_j.  For the infinity seed the seed-distance term of P_j is
    zero and D is taken as the largest center-to-center distance plus
    the largest radius (a bound on the first-level displacements).  For
    a center seed c_j the seed term of cylinder j is omitted, since the
    image through L_j is the point at infinity and never becomes a
    source; D likewise ranges over the finite images only.
    """
    k = domain.k
    if k == 0:
        return SeparationReport((), 0.0, 0.0, 0.0, True)

    kind, center_idx = _classify_seed(domain, seed)
    centers = domain.centers()
    radii = domain.radii()

    per = []
    for j in range(k):
        terms = []
        if kind == "exterior":
            terms.append(radii[j] / abs(complex(seed) - centers[j]))
        elif kind == "center" and j != center_idx:
            terms.append(radii[j] / abs(centers[center_idx] - centers[j]))
        for l in range(k):
            if l != j:
                terms.append(radii[j] / (abs(centers[j] - centers[l]) - radii[l]))
        per.append(max(terms) if terms else 0.0)

    p = max(per)
    q = (k - 1) * p * p

    if kind == "infinity":
        pairwise = 0.0
        for j in range(k):
            for l in range(j + 1, k):
                pairwise = max(pairwise, abs(centers[j] - centers[l]))
        d = pairwise + radii.max()
    else:
        z = complex(seed)
        d = 0.0
        for j in range(k):
            if kind == "center" and j == center_idx:
                continue  # that image is the point at infinity
            d = max(d, abs(complex(invert(domain.cylinders[j], z)) - z))

    return SeparationReport(tuple(float(v) for v in per), float(p), float(q),
                            float(d), bool(q < 1.0))


def min_boundary_distance(domain: CircularDomain, z: complex) -> float:
    """Distance from z to the nearest circle, clamped at 0 inside disks.

    Returns +inf for the empty domain (there are no boundaries).
    """
    if domain.k == 0:
        return math.inf
    z = complex(z)
    d = min(abs(z - c.center) - c.radius for c in domain.cylinders)
    return max(d, 0.0)
