"""Stream functions built from weighted logarithmic image sources.

A point vortex of circulation G at z0 contributes -(G/2pi) log|z - z0|
to the stream function.  Reflecting the vortex through the cylinders
and attaching circulation (-1)^m G to every level-m image makes each
circle a streamline in the limit of infinitely many reflections.  The
truncation used throughout is the averaged one,

    psi*_N = ((K - 1) psi_N + psi_{N+1}) / K,

which collapses to a single flat source list: the seed at strength G,
levels 1..N at strength (-1)^m G, and level N+1 at strength
(-1)^{N+1} G / K.  Under the separation condition q = (K-1)P^2 < 1 the
truncation error is geometric in N with an explicit constant, which is
what error_bound certifies.

Sources are kept in per-level blocks (a position array plus one shared
strength) so that models with millions of images stay compact and the
evaluation loop can stream over contiguous memory.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .circulation import solve_center_strengths
from .errors import (
    NonconvergentConfigurationError,
    NonconvergentConfigurationWarning,
    SeedInsideCylinderError,
)
from .geometry import (
    INFINITY,
    CircularDomain,
    SeparationReport,
    SpherePoint,
    _classify_seed,
    separation_report,
)
from .images import DEFAULT_BUDGET, iter_levels

__all__ = [
    "LogSource",
    "SourceBlock",
    "GeneratorRecord",
    "FlowModel",
    "FlowSpec",
    "assemble_single_vortex",
    "assemble_infinity_vortex",
    "assemble_center_vortex",
    "assemble_flow",
    "eval_stream",
    "error_bound",
    "levels_for_tolerance",
    "combined_report",
    "flow_reports",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LogSource:
    """A single logarithmic source: -(strength/2pi) log|z - position|."""

    position: complex
    strength: float


@dataclass(frozen=True, eq=False)
class SourceBlock:
    """A batch of sources sharing one strength (one tree level)."""

    positions: np.ndarray
    strength: float

    @property
    def size(self) -> int:
        return self.positions.size


@dataclass(frozen=True)
class GeneratorRecord:
    """Bookkeeping for one generator inside an assembled model.

    kind is "finite", "infinity", or "center"; first_block/n_blocks
    locate the generator's source blocks inside FlowModel.blocks.
    """

    kind: str
    seed: SpherePoint
    circulation: float
    first_block: int
    n_blocks: int


@dataclass(frozen=True, eq=False)
class FlowModel:
    """An assembled, immutable source list realizing psi*_N.

    certified_bound, when present, bounds |psi*_N - psi*_M| for every
    M > truncation_level at any point whose distance to the nearest
    cylinder boundary is at least bound_distance.
    """

    domain: CircularDomain
    truncation_level: int
    blocks: tuple[SourceBlock, ...]
    ledger: tuple[GeneratorRecord, ...]
    certified_bound: float | None = None
    bound_distance: float | None = None

    @property
    def source_count(self) -> int:
        return sum(b.size for b in self.blocks)

    def sources(self) -> list[LogSource]:
        """Materialize individual LogSource records (small models only)."""
        out = []
        for b in self.blocks:
            out.extend(LogSource(complex(p), b.strength) for p in b.positions)
        return out

    def generator_blocks(self, record: GeneratorRecord) -> tuple[SourceBlock, ...]:
        return self.blocks[record.first_block:record.first_block + record.n_blocks]


@dataclass(frozen=True)
class FlowSpec:
    """Full description of one flow problem.

    vortices is a sequence of (position, circulation) pairs, positions
    strictly exterior to every cylinder and pairwise distinct.  At most
    one of circulations (prescribed boundary circulations, solved for
    center strengths) and center_strengths (explicit) may be given;
    with neither, no center vortices are added.
    """

    domain: CircularDomain
    vortices: tuple = ()
    gamma_infinity: float = 0.0
    circulations: tuple | None = None
    center_strengths: tuple | None = None

    def __post_init__(self):
        vx = tuple((complex(z), float(g)) for z, g in self.vortices)
        object.__setattr__(self, "vortices", vx)
        for z, _ in vx:
            kind, _ = _classify_seed(self.domain, z)
            if kind != "exterior":
                raise SeedInsideCylinderError(
                    f"vortex at {z} is not strictly exterior to the cylinders"
                )
        for i in range(len(vx)):
            for l in range(i + 1, len(vx)):
                if vx[i][0] == vx[l][0]:
                    raise ValueError(f"vortices {i} and {l} coincide at {vx[i][0]}")
        object.__setattr__(self, "gamma_infinity", float(self.gamma_infinity))
        if self.circulations is not None and self.center_strengths is not None:
            raise ValueError(
                "circulations and center_strengths are mutually exclusive"
            )
        for name in ("circulations", "center_strengths"):
            val = getattr(self, name)
            if val is not None:
                val = tuple(float(v) for v in val)
                if len(val) != self.domain.k:
                    raise ValueError(
                        f"{name} must list one value per cylinder "
                        f"({self.domain.k}), got {len(val)}"
                    )
                object.__setattr__(self, name, val)

    @property
    def total_circulation(self) -> float:
        return float(sum(g for _, g in self.vortices))

    def resolved_center_strengths(self) -> np.ndarray:
        """Center strengths, solving the prescribed-circulation system if needed."""
        k = self.domain.k
        if self.circulations is not None:
            return solve_center_strengths(
                k, self.circulations, self.total_circulation, self.gamma_infinity
            )
        if self.center_strengths is not None:
            return np.asarray(self.center_strengths, dtype=float)
        return np.zeros(k)


def error_bound(report: SeparationReport, n1: int, rz: float) -> float:
    """Certified bound on |psi*_{n1} - psi*_{n2}| for all n2 > n1.

    Valid for a unit-circulation generator at every point whose distance
    to the nearest cylinder boundary is at least rz; scale by |G| for
    other circulations.
    """
    if not report.converges:
        raise NonconvergentConfigurationError(
            f"no certificate: contraction factor q = {report.contraction_factor:g} >= 1"
        )
    if rz <= 0:
        raise ValueError("the boundary distance rz must be positive")
    if n1 < 0:
        raise ValueError("the truncation level must be nonnegative")
    q = report.contraction_factor
    d = report.seed_displacement
    return q ** (n1 + 1) * d / (_TWO_PI * rz * (1.0 - q))


def levels_for_tolerance(report: SeparationReport, tol: float,
                         rmin: float) -> int:
    """Smallest truncation level whose certified bound at rmin meets tol."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = 1
    while error_bound(report, n, rmin) > tol:
        n += 1
        if n > 10_000:
            raise NonconvergentConfigurationError(
                "tolerance unreachable within 10000 levels"
            )
    return n


def _generator_blocks(domain, seed, circulation, level, budget):
    """Source blocks for one generator under the averaged truncation."""
    blocks = []
    if seed is not INFINITY:
        blocks.append(SourceBlock(np.array([complex(seed)]), float(circulation)))
    k = domain.k
    if k == 0:
        return blocks
    for m, (pos, inf, _) in enumerate(
            iter_levels(domain, seed, level + 1, budget), start=1):
        live = pos[~inf] if inf.any() else pos
        if live.size == 0:
            continue
        w = -float(circulation) if m % 2 else float(circulation)
        if m == level + 1:
            w /= k
        blocks.append(SourceBlock(np.ascontiguousarray(live), w))
    return blocks


def _certificate(reports, weight, level, rmin):
    """Worst-case certified bound over a set of generator reports."""
    if not reports or rmin is None:
        return None, None
    worst = combined_report(reports)
    if not worst.converges:
        return None, None
    return weight * error_bound(worst, level, rmin), rmin


def combined_report(reports) -> SeparationReport:
    """Merge per-generator reports into one conservative worst case."""
    q = max(r.contraction_factor for r in reports)
    d = max(r.seed_displacement for r in reports)
    p = max(r.p for r in reports)
    return SeparationReport((), p, q, d, q < 1.0)


def _flow_generators(spec: FlowSpec):
    """Every generator of a spec as (kind, seed, circulation) triples."""
    gens: list[tuple[str, SpherePoint, float]] = [
        ("finite", z, g) for z, g in spec.vortices
    ]
    k = spec.domain.k
    if spec.gamma_infinity != 0.0 and k >= 1:
        gens.append(("infinity", INFINITY, spec.gamma_infinity))
    center = spec.resolved_center_strengths()
    for j in range(k):
        if center[j] != 0.0:
            gens.append(("center", spec.domain.cylinders[j].center,
                         float(center[j])))
    return gens


def flow_reports(spec: FlowSpec):
    """Separation report of every generator: (kind, seed, circulation,
    report) tuples, in assembly order."""
    return [
        (kind, seed, g, separation_report(spec.domain, seed))
        for kind, seed, g in _flow_generators(spec)
    ]


def assemble_single_vortex(domain: CircularDomain, position, circulation: float,
                           level: int, budget: int = DEFAULT_BUDGET,
                           rmin: float | None = None) -> FlowModel:
    """Model of one vortex with its full image tree truncated at `level`.

    The seed must be strictly exterior to every cylinder.  If the
    separation condition fails the model is still assembled but a
    NonconvergentConfigurationWarning is emitted and no bound is
    certified.
    """
    z0 = complex(position)
    kind, _ = _classify_seed(domain, z0)
    if kind != "exterior":
        raise SeedInsideCylinderError(
            f"seed {z0} is a cylinder center; use assemble_center_vortex"
        )
    report = separation_report(domain, z0)
    if not report.converges:
        warnings.warn(
            f"contraction factor q = {report.contraction_factor:g} >= 1; "
            "the truncation is not certified to converge",
            NonconvergentConfigurationWarning,
        )
    blocks = _generator_blocks(domain, z0, circulation, level, budget)
    ledger = (GeneratorRecord("finite", z0, float(circulation), 0, len(blocks)),)
    bound, dist = _certificate([report], abs(float(circulation)), level, rmin)
    return FlowModel(domain, level, tuple(blocks), ledger, bound, dist)


def assemble_infinity_vortex(domain: CircularDomain, gamma_infinity: float,
                             level: int, budget: int = DEFAULT_BUDGET,
                             rmin: float | None = None) -> FlowModel:
    """Model of a vortex at infinity: its own term is omitted, so the
    level-1 sources are the cylinder centers at strength -gamma."""
    if domain.k < 1:
        raise ValueError("a vortex at infinity needs at least one cylinder")
    report = separation_report(domain, INFINITY)
    blocks = _generator_blocks(domain, INFINITY, gamma_infinity, level, budget)
    ledger = (GeneratorRecord("infinity", INFINITY, float(gamma_infinity),
                              0, len(blocks)),)
    bound, dist = _certificate([report], abs(float(gamma_infinity)), level, rmin)
    return FlowModel(domain, level, tuple(blocks), ledger, bound, dist)


def assemble_center_vortex(domain: CircularDomain, j: int, strength: float,
                           level: int, budget: int = DEFAULT_BUDGET,
                           rmin: float | None = None) -> FlowModel:
    """Model of a vortex at center c_j; its level-1 image through its
    own circle lands at infinity and is omitted."""
    cj = domain.cylinders[j].center
    report = separation_report(domain, cj)
    blocks = _generator_blocks(domain, cj, strength, level, budget)
    ledger = (GeneratorRecord("center", cj, float(strength), 0, len(blocks)),)
    bound, dist = _certificate([report], abs(float(strength)), level, rmin)
    return FlowModel(domain, level, tuple(blocks), ledger, bound, dist)


def assemble_flow(spec: FlowSpec, level: int | None = None,
                  tolerance: float | None = None, rmin: float | None = None,
                  budget: int = DEFAULT_BUDGET) -> FlowModel:
    """Superpose every generator of a FlowSpec at one shared level.

    Exactly one of level and tolerance must be given.  With tolerance,
    the level is the smallest one whose certified bound at rmin (default:
    the smallest cylinder radius) meets the tolerance for the worst
    generator; the recorded certificate is the worst-case bound scaled
    by the total absolute circulation.
    """
    if (level is None) == (tolerance is None):
        raise ValueError("give exactly one of level and tolerance")
    domain = spec.domain
    if rmin is None:
        rmin = float(min(domain.radii())) if domain.k else 1.0

    gens = _flow_generators(spec)
    reports = [separation_report(domain, seed) for _, seed, _ in gens]
    if level is None:
        if not gens:
            level = 1
        else:
            level = levels_for_tolerance(combined_report(reports), tolerance, rmin)

    blocks: list[SourceBlock] = []
    ledger: list[GeneratorRecord] = []
    for (kind, seed, g) in gens:
        start = len(blocks)
        gb = _generator_blocks(domain, seed, g, level, budget)
        blocks.extend(gb)
        ledger.append(GeneratorRecord(kind, seed, g, start, len(gb)))

    bound = dist = None
    if gens:
        weight = sum(abs(g) for _, _, g in gens)
        bound, dist = _certificate(reports, weight, level, rmin)
        if bound is None:
            warnings.warn(
                "separation condition fails for at least one generator; "
                "no convergence certificate attached",
                NonconvergentConfigurationWarning,
            )
    return FlowModel(domain, level, tuple(blocks), tuple(ledger), bound, dist)


def _block_arrays(blocks):
    return [(b.positions, b.strength) for b in blocks
            if b.size and b.strength != 0.0]


def _logsum_by_node(flat, blocks, out):
    """out[i] += sum over sources of strength * log|z_i - p|^2."""
    pulled = _block_arrays(blocks)
    xs = flat.real
    ys = flat.imag
    for i in range(flat.size):
        x = xs[i]
        y = ys[i]
        acc = 0.0
        for pos, w in pulled:
            dx = x - pos.real
            dy = y - pos.imag
            np.multiply(dx, dx, out=dx)
            np.multiply(dy, dy, out=dy)
            dx += dy
            acc += w * float(np.log(dx, out=dx).sum())
        out[i] = acc


def _logsum_by_source(flat, blocks, out):
    """Same accumulation with the vectorized axis over the nodes."""
    xr = np.ascontiguousarray(flat.real)
    xi = np.ascontiguousarray(flat.imag)
    tmp = np.empty(flat.size)
    ty = np.empty(flat.size)
    for pos, w in _block_arrays(blocks):
        for p in pos:
            np.subtract(xr, p.real, out=tmp)
            np.multiply(tmp, tmp, out=tmp)
            np.subtract(xi, p.imag, out=ty)
            np.multiply(ty, ty, out=ty)
            tmp += ty
            np.log(tmp, out=tmp)
            tmp *= w
            out += tmp


def eval_stream(model: FlowModel, z):
    """Stream function of a model at z (scalar or any-shape array).

    Totally defined: at a source position the value is the signed
    infinity the logarithm converges to.  Points inside cylinders are
    evaluated like any others; masking is the caller's concern.
    """
    z_arr = np.asarray(z, dtype=complex)
    flat = np.ascontiguousarray(z_arr.reshape(-1))
    out = np.zeros(flat.size)
    total = model.source_count
    if total and flat.size:
        with np.errstate(divide="ignore", invalid="ignore"):
            if flat.size <= total:
                _logsum_by_node(flat, model.blocks, out)
            else:
                _logsum_by_source(flat, model.blocks, out)
    psi = out / (-2.0 * _TWO_PI)
    if z_arr.ndim == 0:
        return float(psi[0])
    return psi.reshape(z_arr.shape)
