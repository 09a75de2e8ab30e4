"""Where repeated reflections send a point: image trees and limit sets.

For two cylinders every infinite reflection word converges to one of
the two fixed points of the composed map, computed here in closed form.
With three or more cylinders the accumulation set becomes a Cantor dust
indexed by the reflection words.  Touching circles (allowed in lax
validation) push images toward the tangency point at a slow harmonic
rate instead of geometrically.
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import vortexflow as vf

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def scatter_levels(ax, domain, seed, max_level, title):
    cmap = plt.get_cmap("viridis")
    for m, (pos, at_inf, _) in enumerate(
            vf.iter_levels(domain, seed, max_level), start=1):
        finite = pos[~at_inf]
        ax.plot(finite.real, finite.imag, ".", ms=max(4 - 0.4 * m, 0.8),
                color=cmap((m - 1) / max_level), alpha=0.8)
    for cyl in domain.cylinders:
        ax.add_patch(plt.Circle((cyl.center.real, cyl.center.imag),
                                cyl.radius, fill=False, ec="0.4", lw=0.8))
    ax.set_aspect("equal")
    ax.set_title(title, fontsize=9)


def main():
    fig, axes = plt.subplots(1, 3, figsize=(14, 5))

    two = vf.validate_domain([(-2.0 + 0j, 1.0), (2.0 + 0j, 1.0)])
    scatter_levels(axes[0], two, vf.INFINITY, 9,
                   "two cylinders: all words converge to two points")
    zl, zr = vf.fixed_points_doubly_connected(two)
    axes[0].plot([zl.real, zr.real], [zl.imag, zr.imag], "r+", ms=12,
                 zorder=5)
    print(f"fixed points of the composed reflection: {zl:.12f}, {zr:.12f}")
    tree = vf.build_image_tree(two, vf.INFINITY, 9)
    deep = np.asarray(tree.positions[9])
    print(f"level-9 spread around them: "
          f"{np.abs(np.abs(deep) - abs(zr)).max():.2e}")

    four = vf.validate_domain(
        [(2.2 * np.exp(2j * np.pi * j / 4), 0.9) for j in range(4)])
    scatter_levels(axes[1], four, vf.INFINITY, 7,
                   "four cylinders: Cantor dust of accumulation points")

    kiss = vf.validate_domain([(0j, 1.0), (2.0 + 0j, 1.0)],
                              strictness="lax")
    scatter_levels(axes[2], kiss, vf.INFINITY, 60,
                   "touching circles: harmonic crawl to the tangency")
    pts = vf.limit_set_points(kiss, vf.INFINITY, 60)
    print(f"touching case: closest approach to the tangency point after "
          f"60 levels is {np.abs(pts - 1.0).min():.3f}")

    fig.tight_layout()
    fig.savefig(OUT / "limit_sets.png", dpi=130)
    plt.close(fig)
    print(f"wrote {OUT / 'limit_sets.png'}")


if __name__ == "__main__":
    main()
