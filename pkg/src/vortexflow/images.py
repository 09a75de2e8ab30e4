"""Levelled trees of image points under repeated circle reflections.

Reflecting a seed through each of the K circles gives the level-1
images; reflecting each of those through every circle except the one
that just produced it gives level 2, and so on.  A level-M point is
labelled by its word (i_1, ..., i_M) of circle indices, applied in that
order, with no letter repeating consecutively (a repeat would undo
itself).  The level-M count is therefore K * (K - 1)**(M - 1).

Levels are stored as flat arrays in breadth-first order: children are
grouped by parent, and within one parent ordered by circle index.  This
makes the word of any point recoverable from its position in the array,
so no per-point objects are kept.  A point that lands at infinity (the
reflection of a center through its own circle) stays in the tree, since
its children through circle k are the centers c_k, but it is flagged so
that source assembly can skip it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, DegenerateCompositionError
from .geometry import (
    INFINITY,
    CircularDomain,
    SpherePoint,
    _classify_seed,
    invert,
)

#: Default cap on the size of any single tree level.
DEFAULT_BUDGET = 10**7


def level_counts(k: int, n: int) -> int:
    """Number of level-n points for k circles: k * (k - 1)**(n - 1)."""
    if n < 1:
        raise ValueError("level must be at least 1")
    if k == 0:
        return 0
    return k * (k - 1) ** (n - 1)


def _check_budget(k: int, max_level: int, budget: int):
    if k >= 2 and level_counts(k, max_level) > budget:
        raise BudgetExceededError(
            f"level {max_level} holds {level_counts(k, max_level)} points, "
            f"budget is {budget}"
        )


def iter_levels(domain: CircularDomain, seed: SpherePoint, max_level: int,
                budget: int = DEFAULT_BUDGET):
    """Yield (positions, at_infinity, last_index) for levels 1..max_level.

    positions is a complex array (entries under the at_infinity flag are
    placeholders), and last_index[i] is the circle index that produced
    point i from its parent.  Children are ordered parent-major, then by
    circle index, so parent of point i at level m >= 2 is point
    i // (K - 1) of level m - 1.
    """
    k = domain.k
    if k == 0 or max_level < 1:
        return
    _check_budget(k, max_level, budget)
    centers = domain.centers()
    radii = domain.radii()

    if seed is INFINITY:
        pos = centers.copy()
        inf = np.zeros(k, dtype=bool)
    else:
        z0 = complex(seed)
        pos = np.empty(k, dtype=complex)
        inf = np.zeros(k, dtype=bool)
        for j in range(k):
            w = invert(domain.cylinders[j], z0)
            if w is INFINITY:
                inf[j] = True
                pos[j] = np.inf
            else:
                pos[j] = w
    last = np.arange(k, dtype=np.intp)
    yield pos, inf, last

    if k == 1:
        empty_c = np.empty(0, dtype=complex)
        empty_b = np.empty(0, dtype=bool)
        empty_i = np.empty(0, dtype=np.intp)
        for _ in range(2, max_level + 1):
            yield empty_c, empty_b, empty_i
        return

    # admissible[i] lists the circle indices other than i, ascending
    admissible = np.array(
        [[j for j in range(k) if j != i] for i in range(k)], dtype=np.intp
    )
    for _ in range(2, max_level + 1):
        js = admissible[last]                      # (n_parents, k-1)
        c = centers[js]
        r2 = (radii**2)[js]
        with np.errstate(divide="ignore", invalid="ignore"):
            child = c + r2 / np.conj(pos[:, None] - c)
        # an infinite parent reflects to the circle centers
        child[inf, :] = c[inf, :]
        # a finite parent sitting exactly on a center reflects to infinity
        child_inf = ~inf[:, None] & (pos[:, None] == c)
        child[child_inf] = np.inf
        pos = child.ravel()
        inf = child_inf.ravel()
        last = js.ravel()
        yield pos, inf, last


@dataclass(frozen=True)
class ImagePoint:
    """One tree point, materialized with its generating word."""

    position: SpherePoint
    level: int
    word: tuple[int, ...]

    @property
    def parity(self) -> int:
        return -1 if self.level % 2 else 1


@dataclass(frozen=True)
class ImageTree:
    """All image points of one seed up to max_level, stored per level.

    positions/at_infinity/last_index are tuples indexed by level; level
    0 holds the seed alone.  Use point(m, i) or points(m) to materialize
    ImagePoint objects with decoded words; the arrays themselves are the
    supported bulk interface.
    """

    domain: CircularDomain
    seed: SpherePoint
    max_level: int
    positions: tuple[np.ndarray, ...]
    at_infinity: tuple[np.ndarray, ...]
    last_index: tuple[np.ndarray, ...]

    def level_size(self, m: int) -> int:
        return len(self.positions[m])

    def position_of(self, m: int, i: int) -> SpherePoint:
        if self.at_infinity[m][i]:
            return INFINITY
        return complex(self.positions[m][i])

    def word_of(self, m: int, i: int) -> tuple[int, ...]:
        """Decode the word of point i at level m from the array layout."""
        k = self.domain.k
        word = []
        while m >= 1:
            word.append(int(self.last_index[m][i]))
            i = i // (k - 1) if m >= 2 else 0
            m -= 1
        return tuple(reversed(word))

    def point(self, m: int, i: int) -> ImagePoint:
        return ImagePoint(self.position_of(m, i), m, self.word_of(m, i))

    def points(self, m: int) -> list[ImagePoint]:
        return [self.point(m, i) for i in range(self.level_size(m))]

    @property
    def levels(self) -> list[list[ImagePoint]]:
        """Materialized per-level ImagePoint lists (small trees only)."""
        return [self.points(m) for m in range(self.max_level + 1)]


def build_image_tree(domain: CircularDomain, seed: SpherePoint, max_level: int,
                     budget: int = DEFAULT_BUDGET) -> ImageTree:
    """Build the full tree for levels 0..max_level.

    The domain must be strict; the seed may be exterior, INFINITY, or a
    center.  Raises BudgetExceededError if the final level alone would
    exceed the point budget.
    """
    if domain.strictness != "strict":
        raise ValueError("image trees for flow computations require a strict domain")
    if max_level < 0:
        raise ValueError("max_level must be nonnegative")
    _classify_seed(domain, seed)

    if seed is INFINITY:
        pos0 = np.array([np.inf], dtype=complex)
        inf0 = np.array([True])
    else:
        pos0 = np.array([complex(seed)], dtype=complex)
        inf0 = np.array([False])
    positions = [pos0]
    at_inf = [inf0]
    last = [np.array([-1], dtype=np.intp)]

    for pos, inf, li in iter_levels(domain, seed, max_level, budget):
        positions.append(pos)
        at_inf.append(inf)
        last.append(li)
    # K = 0: no reflections at all, but the levels must still exist
    while len(positions) < max_level + 1:
        positions.append(np.empty(0, dtype=complex))
        at_inf.append(np.empty(0, dtype=bool))
        last.append(np.empty(0, dtype=np.intp))

    return ImageTree(domain, seed, max_level,
                     tuple(positions), tuple(at_inf), tuple(last))


def fixed_points_doubly_connected(domain: CircularDomain):
    """Fixed points of the composed reflections for K = 2.

    Returns (z1, z2) where z1 is the fixed point of z -> T_1(T_2(z))
    inside L_1 and z2 the fixed point of z -> T_2(T_1(z)) inside L_2.
    The composition of two reflections is a Mobius map, so the fixed
    points solve a quadratic; the root interior to the correct circle is
    selected and verified against the map itself.
    """
    if domain.k != 2:
        raise ValueError("fixed points are defined for exactly two cylinders")
    if domain.strictness != "strict":
        raise ValueError("fixed points require a strict domain")

    def compose_fixed(outer, inner):
        # z -> T_outer(T_inner(z)) = c_o + r_o^2 (z - c_i) / (d (z - c_i) + r_i^2)
        # with d = conj(c_i) - conj(c_o); fixed points solve the quadratic below.
        co, ro = outer.center, outer.radius
        ci, ri = inner.center, inner.radius
        d = ci.conjugate() - co.conjugate()
        if d == 0:
            raise DegenerateCompositionError(
                "concentric circles: the composed map has no isolated fixed points"
            )
        a = d
        b = ri**2 - d * ci - d * co - ro**2
        c = co * ci * d - co * ri**2 + ro**2 * ci
        roots = np.roots([a, b, c])
        good = [z for z in roots if abs(z - co) < ro]
        if len(good) != 1:
            raise DegenerateCompositionError(
                f"expected one fixed point inside the circle, found {len(good)}"
            )
        z = complex(good[0])
        check = invert(outer, invert(inner, z))
        if abs(complex(check) - z) > 1e-9 * (1.0 + abs(z)):
            raise DegenerateCompositionError(
                "algebraic fixed point failed the composed-map residual check"
            )
        return z

    cyl1, cyl2 = domain.cylinders
    return compose_fixed(cyl1, cyl2), compose_fixed(cyl2, cyl1)


def limit_set_points(domain: CircularDomain, seed: SpherePoint, level: int,
                     budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Finite image points of all levels 1..level, flattened for export.

    Lax domains (touching circles) are accepted here; the points then
    accumulate on the tangency structure rather than on isolated fixed
    points.
    """
    out = []
    for pos, inf, _ in iter_levels(domain, seed, level, budget):
        out.append(pos if not inf.any() else pos[~inf])
    if not out:
        return np.empty(0, dtype=complex)
    return np.concatenate(out)
