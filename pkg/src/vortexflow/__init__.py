"""Point-vortex flow outside circular cylinders by repeated reflection.

The package computes stream functions, velocity fields, circulations,
and vortex trajectories for ideal two-dimensional flow in the region
exterior to any number of disjoint circular cylinders.  The flow is
represented by the vortex's reflections through the circles: level
after level of image vortices with alternating circulations, truncated
with an averaged final level and certified by an explicit geometric
error bound whenever the cylinders are well separated.

Modules
-------
geometry     domains, inversion maps, separation diagnostics
images       levelled image trees, fixed points, limit sets
stream       source assembly, stream-function evaluation, error bounds
circulation  prescribed-circulation solve and circulation ledgers
field        velocities, contour quadrature, grid sampling
dynamics     vortex advection (RK4)
cli          JSON configs and the `vortexflow` command-line tool
"""

from .errors import (
    BudgetExceededError,
    CirculationSystemError,
    ContourThroughSingularityError,
    DegenerateCompositionError,
    NonconvergentConfigurationError,
    NonconvergentConfigurationWarning,
    NonpositiveRadiusError,
    OverlapError,
    ParseError,
    SchemaError,
    SeedInsideCylinderError,
    SingularPointError,
    VortexFlowError,
)
from .geometry import (
    INFINITY,
    CircularDomain,
    Cylinder,
    SeparationReport,
    invert,
    is_infinite,
    min_boundary_distance,
    separation_report,
    validate_domain,
)
from .images import (
    ImagePoint,
    ImageTree,
    build_image_tree,
    fixed_points_doubly_connected,
    iter_levels,
    level_counts,
    limit_set_points,
)
from .stream import (
    FlowModel,
    FlowSpec,
    GeneratorRecord,
    LogSource,
    SourceBlock,
    assemble_center_vortex,
    assemble_flow,
    assemble_infinity_vortex,
    assemble_single_vortex,
    combined_report,
    error_bound,
    eval_stream,
    flow_reports,
    levels_for_tolerance,
)
from .circulation import (
    CirculationLedger,
    predicted_ledger,
    solve_center_strengths,
)
from .field import (
    FieldGrid,
    circulation_on_contour,
    sample_grid,
    velocity,
)
from .dynamics import (
    TrajectorySet,
    advect,
    vortex_velocity,
)
from .cli import (
    Fixture,
    Numerics,
    RunConfig,
    embedded_fixtures,
    main,
    parse_config,
    run_command,
)

__version__ = "0.1.0"
