"""Image trees: counting, containment, parent recovery, convergence."""

import numpy as np
import pytest

import vortexflow as vf


def ring_domain(k, radius=0.5, scale=2.0):
    """k disjoint circles of a common radius on a circle of centers."""
    if k == 1:
        return vf.validate_domain([(0j, radius)])
    centers = scale * np.exp(2j * np.pi * np.arange(k) / k)
    return vf.validate_domain([(c, radius) for c in centers])


def test_level_counts_formula():
    for k in range(2, 7):
        for n in range(1, 7):
            assert vf.level_counts(k, n) == k * (k - 1) ** (n - 1)
    assert vf.level_counts(1, 1) == 1
    assert vf.level_counts(1, 3) == 0
    assert vf.level_counts(0, 2) == 0


def test_tree_level_sizes_match_count_law():
    for k in range(1, 7):
        dom = ring_domain(k, scale=3.0)
        tree = vf.build_image_tree(dom, 10j, 5, budget=10 ** 7)
        assert len(tree.levels) == 6  # levels 0 through 5
        assert tree.level_size(0) == 1
        for m in range(1, 6):
            assert tree.level_size(m) == vf.level_counts(k, m)


def test_images_land_inside_their_last_circle():
    dom = ring_domain(4, scale=3.0)
    tree = vf.build_image_tree(dom, 10j, 5)
    centers, radii = dom.centers(), dom.radii()
    for m in range(1, 6):
        pos = np.asarray(tree.positions[m])
        last = np.asarray(tree.last_index[m])
        dist = np.abs(pos - centers[last])
        assert (dist < radii[last]).all()


def test_words_never_repeat_a_letter():
    dom = ring_domain(3, scale=3.0)
    tree = vf.build_image_tree(dom, 10j, 5)
    for m in range(1, 6):
        for i in range(tree.level_size(m)):
            word = tree.word_of(m, i)
            assert len(word) == m
            for a, b in zip(word, word[1:]):
                assert a != b


def test_reflection_of_child_recovers_parent():
    """Reflecting a point through its own last circle is its parent."""
    dom = ring_domain(3, scale=3.0)
    tree = vf.build_image_tree(dom, 10j, 6)
    k = dom.k
    for m in range(2, 7):
        for i in range(tree.level_size(m)):
            child = tree.position_of(m, i)
            last = tree.word_of(m, i)[-1]
            parent = tree.position_of(m - 1, i // (k - 1))
            back = vf.invert(dom.cylinders[last], child)
            assert abs(back - parent) <= 1e-12 * (1.0 + abs(parent))


def test_position_recomputed_from_word_matches():
    dom = ring_domain(4, scale=3.0)
    seed = 10j
    tree = vf.build_image_tree(dom, seed, 4)
    for i in range(tree.level_size(4)):
        z = seed
        for letter in tree.word_of(4, i):
            z = vf.invert(dom.cylinders[letter], z)
        stored = tree.position_of(4, i)
        assert abs(z - stored) <= 1e-12 * (1.0 + abs(stored))


def test_infinity_seed_first_level_is_the_centers():
    dom = ring_domain(3, scale=3.0)
    tree = vf.build_image_tree(dom, vf.INFINITY, 2)
    assert vf.is_infinite(tree.position_of(0, 0))
    first = np.asarray(tree.positions[1])
    assert np.allclose(first, dom.centers())


def test_center_seed_images_flag_infinity():
    dom = vf.validate_domain([(0j, 1.0), (3.0 + 0j, 0.5)])
    tree = vf.build_image_tree(dom, 0j, 3)
    # the reflection of c_0 through L_0 is the point at infinity; its
    # own children through the other circles are that circle's center
    assert tree.at_infinity[1][0]
    assert vf.is_infinite(tree.position_of(1, 0))
    assert tree.position_of(1, 1) == pytest.approx(3 - 0.25 / 3)


def test_single_cylinder_tree_stops_after_one_level():
    dom = vf.validate_domain([(0j, 1.0)])
    tree = vf.build_image_tree(dom, 2.0 + 0j, 4)
    assert tree.level_size(1) == 1
    assert tree.position_of(1, 0) == pytest.approx(0.5 + 0j)
    for m in range(2, 5):
        assert tree.level_size(m) == 0


def test_two_cylinder_levels_converge_monotonically_to_fixed_points():
    dom = vf.validate_domain([(-2.0 + 0j, 1.0), (2.0 + 0j, 1.0)])
    zl, zr = vf.fixed_points_doubly_connected(dom)
    tree = vf.build_image_tree(dom, vf.INFINITY, 12)
    prev = None
    for m in range(2, 13):
        pos = np.asarray(tree.positions[m])
        last = np.asarray(tree.last_index[m])
        target = np.where(last == 0, zl, zr)
        worst = np.abs(pos - target).max()
        if prev is not None:
            assert worst < prev
        prev = worst
    assert prev <= 1e-8


def test_budget_enforced():
    dom = ring_domain(5, scale=3.0)
    with pytest.raises(vf.BudgetExceededError):
        vf.build_image_tree(dom, 10j, 12, budget=10 ** 5)
    # the generator form enforces the same cap lazily
    with pytest.raises(vf.BudgetExceededError):
        for _ in vf.iter_levels(dom, 10j, 12, budget=10 ** 5):
            pass


def test_fixed_points_doubly_connected_values():
    dom = vf.validate_domain([(-2.0 + 0j, 1.0), (2.0 + 0j, 1.0)])
    zl, zr = vf.fixed_points_doubly_connected(dom)
    root3 = np.sqrt(3.0)
    assert zl == pytest.approx(-root3, abs=1e-12)
    assert zr == pytest.approx(root3, abs=1e-12)
    # each fixed point is invariant under the two-reflection composition
    for z in (zl, zr):
        w = vf.invert(dom.cylinders[0], vf.invert(dom.cylinders[1], z))
        assert abs(w - z) <= 1e-10


def test_fixed_points_require_exactly_two_cylinders():
    with pytest.raises(ValueError):
        vf.fixed_points_doubly_connected(vf.validate_domain([(0j, 1.0)]))


def test_limit_set_points_accepts_touching_circles():
    lax = vf.validate_domain([(0j, 1.0), (2.0 + 0j, 1.0)],
                             strictness="lax")
    pts = vf.limit_set_points(lax, vf.INFINITY, 8)
    assert len(pts) > 0
    assert np.isfinite(pts).all()
    # touching circles accumulate images at the tangency point, at the
    # slow harmonic rate of a parabolic fixed point (distance 1/m at
    # level m rather than q^m)
    deep = vf.limit_set_points(lax, vf.INFINITY, 150)
    assert np.abs(deep - (1.0 + 0j)).min() <= 1e-2
