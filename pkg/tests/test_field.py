"""Velocity evaluation, contour circulation, and grid sampling."""

import numpy as np
import pytest

import vortexflow as vf

TWO_CYL = ((0j, 1.0), (3.0 + 0j, 0.5))


def two_cylinder_model(level=10):
    dom = vf.validate_domain(TWO_CYL)
    spec = vf.FlowSpec(dom, vortices=((2j, 1.0),), gamma_infinity=-1.0,
                       circulations=(0.0, 0.0))
    return vf.assemble_flow(spec, level=level)


def test_velocity_matches_stream_gradient():
    """(u, v) = (dpsi/dy, -dpsi/dx) against central differences."""
    model = two_cylinder_model()
    dom = model.domain
    rng = np.random.default_rng(21)
    pts = []
    while len(pts) < 100:
        z = complex(rng.uniform(-5, 7), rng.uniform(-6, 6))
        if vf.min_boundary_distance(dom, z) >= 0.1 and abs(z - 2j) > 0.1:
            pts.append(z)
    h = 1e-5
    for z in pts:
        u, v = vf.velocity(model, z)
        dpx = (vf.eval_stream(model, z + h)
               - vf.eval_stream(model, z - h)) / (2 * h)
        dpy = (vf.eval_stream(model, z + 1j * h)
               - vf.eval_stream(model, z - 1j * h)) / (2 * h)
        assert u == pytest.approx(dpy, rel=1e-6, abs=1e-9)
        assert v == pytest.approx(-dpx, rel=1e-6, abs=1e-9)


def test_velocity_vectorized_and_scalar_forms_agree():
    model = two_cylinder_model(level=6)
    z = np.array([1.5 + 2j, -2.0 - 1j, 4.0 + 0.5j])
    u, v = vf.velocity(model, z)
    assert u.shape == v.shape == z.shape
    for i, w in enumerate(z):
        us, vs = vf.velocity(model, complex(w))
        assert isinstance(us, float)
        assert (us, vs) == (u[i], v[i])


def test_velocity_raises_at_sources():
    model = two_cylinder_model(level=6)
    with pytest.raises(vf.SingularPointError):
        vf.velocity(model, 2j)  # the vortex seed
    with pytest.raises(vf.SingularPointError):
        vf.velocity(model, 0.5j)  # its first image in the unit circle


def test_no_penetration_on_cylinder_boundaries():
    """The normal velocity component vanishes on every circle."""
    dom = vf.validate_domain([(-2.0 + 0j, 1.0), (2.0 + 0j, 1.0)])
    spec = vf.FlowSpec(dom, vortices=((2j, 1.0),),
                       circulations=(0.0, 0.0))
    model = vf.assemble_flow(spec, tolerance=1e-8)
    theta = 2.0 * np.pi * np.arange(128) / 128
    for cyl in dom.cylinders:
        normal = np.exp(1j * theta)
        ring = cyl.center + cyl.radius * normal
        u, v = vf.velocity(model, ring)
        vn = np.abs(u * normal.real + v * normal.imag)
        assert vn.max() <= 1e-6


def test_circulation_sign_convention():
    """Counterclockwise contour around a lone positive vortex: +Gamma."""
    free = vf.FlowSpec(vf.validate_domain([]), vortices=((1j, 2.5),))
    model = vf.assemble_flow(free, level=1)
    assert vf.circulation_on_contour(model, (1j, 0.5)) == pytest.approx(
        2.5, abs=1e-12)
    # a contour enclosing nothing reports zero
    assert vf.circulation_on_contour(model, (10.0 + 0j, 0.5)
                                     ) == pytest.approx(0.0, abs=1e-12)


def test_circulation_quadrature_is_spectrally_converged():
    model = two_cylinder_model(level=8)
    for contour in (model.domain.cylinders[0], (0j, 30.0)):
        coarse = vf.circulation_on_contour(model, contour, nq=256)
        fine = vf.circulation_on_contour(model, contour, nq=512)
        assert abs(coarse - fine) <= 1e-10


def test_circulation_accepts_cylinder_or_pair():
    model = two_cylinder_model(level=8)
    cyl = model.domain.cylinders[1]
    as_cyl = vf.circulation_on_contour(model, cyl)
    as_pair = vf.circulation_on_contour(model, (cyl.center, cyl.radius))
    assert as_cyl == as_pair


def test_contour_through_a_source_is_rejected():
    model = two_cylinder_model(level=6)
    with pytest.raises(vf.ContourThroughSingularityError):
        vf.circulation_on_contour(model, (0j, 2.0))  # passes through 2j


def test_sample_grid_stream_values_and_mask():
    model = two_cylinder_model(level=6)
    grid = vf.sample_grid(model, (-2.0, 4.0, -2.0, 2.0), 24, 16)
    assert grid.kind == "stream"
    assert grid.values.shape == (24, 16)
    assert grid.mask.shape == (24, 16)
    # nodes are cell centers
    assert grid.xs[0] == pytest.approx(-2.0 + 0.5 * 6.0 / 24)
    assert grid.ys[-1] == pytest.approx(2.0 - 0.5 * 4.0 / 16)
    zz = grid.xs[:, None] + 1j * grid.ys[None, :]
    inside = np.zeros_like(grid.mask)
    for cyl in model.domain.cylinders:
        inside |= np.abs(zz - cyl.center) < cyl.radius
    assert (grid.mask == inside).all()
    assert grid.mask.any() and not grid.mask.all()
    # grid values are exactly the evaluator's values, mask or not
    assert np.array_equal(grid.values, vf.eval_stream(model, zz))


def test_sample_grid_velocity_kind():
    model = two_cylinder_model(level=6)
    grid = vf.sample_grid(model, (-2.0, 4.0, -2.0, 2.0), 12, 8,
                          kind="velocity")
    assert grid.kind == "velocity"
    assert grid.values.shape == (12, 8, 2)
    zz = grid.xs[:, None] + 1j * grid.ys[None, :]
    u, v = vf.velocity(model, zz[~grid.mask])
    assert np.array_equal(grid.values[~grid.mask, 0], u)
    assert np.array_equal(grid.values[~grid.mask, 1], v)


def test_sample_grid_marks_source_hits_infinite():
    free = vf.FlowSpec(vf.validate_domain([]), vortices=((0j, 1.0),))
    model = vf.assemble_flow(free, level=1)
    # center a 3 x 3 grid so the middle node lands on the vortex
    grid = vf.sample_grid(model, (-1.5, 1.5, -1.5, 1.5), 3, 3,
                          kind="velocity")
    assert not np.isfinite(grid.values[1, 1]).any()
    others = np.ones((3, 3), dtype=bool)
    others[1, 1] = False
    assert np.isfinite(grid.values[others]).all()
    psi_grid = vf.sample_grid(model, (-1.5, 1.5, -1.5, 1.5), 3, 3)
    assert psi_grid.values[1, 1] == np.inf
