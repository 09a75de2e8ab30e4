"""A short walk through every command of the vortexflow CLI.

Each command is exercised through the same dispatch the console script
uses, with the output (or its head) echoed.  A JSON config document is
written to a temporary directory first, the way a user would keep one.
"""

import json
import pathlib
import tempfile

import vortexflow as vf

CONFIG = {
    "cylinders": [
        {"center": [0, 0], "radius": 1.0},
        {"center": [3, 0], "radius": 0.5},
    ],
    "vortices": [{"position": [0, 2], "circulation": 1.0}],
    "gammaInfinity": -1.0,
    "circulations": [0.0, 0.0],
    "numerics": {"tol": 1e-8},
}


def show(title, code, out, head=None):
    print(f"$ vortexflow {title}  (exit {code})")
    lines = out.rstrip("\n").split("\n")
    if head and len(lines) > head:
        lines = lines[:head] + [f"... ({len(lines) - head} more lines)"]
    for line in lines:
        print(f"  {line}")
    print()


def main():
    with tempfile.TemporaryDirectory() as tmp:
        path = pathlib.Path(tmp) / "two_cylinders.json"
        path.write_text(json.dumps(CONFIG, indent=2), encoding="utf-8")
        print(f"config document: {path.name}\n{path.read_text()}")
        cfg = vf.parse_config(path.read_text(encoding="utf-8"))

        show("check --config two_cylinders.json",
             *vf.run_command("check", cfg))
        show("eval --config two_cylinders.json --points '[[2.5, 3.5]]'",
             *vf.run_command("eval", cfg, points="[[2.5, 3.5]]"))
        show("grid --config two_cylinders.json --bbox=-2,2,-2,2 --res 4,4",
             *vf.run_command("grid", cfg, bbox=(-2, 2, -2, 2), res=(4, 4)),
             head=6)
        show("circulation --config two_cylinders.json",
             *vf.run_command("circulation", cfg))
        show("limitset --config two_cylinders.json --level 4",
             *vf.run_command("limitset", cfg, level=4), head=6)
        show("advect --config two_cylinders.json --dt 0.2 --steps 3",
             *vf.run_command("advect", cfg, dt=0.2, steps=3), head=6)
        show("validate", *vf.run_command("validate"))


if __name__ == "__main__":
    main()
