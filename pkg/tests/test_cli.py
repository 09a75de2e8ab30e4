"""Config parsing, command dispatch, exit codes, output formats."""

import contextlib
import io
import json

import numpy as np
import pytest

import vortexflow as vf
from vortexflow.cli import Numerics, RunConfig

TWO_CYL_DOC = """
{
  "cylinders": [
    {"center": [0, 0], "radius": 1.0},
    {"center": [3, 0], "radius": 0.5}
  ],
  "vortices": [{"position": [0, 2], "circulation": 1.0}],
  "gammaInfinity": -1.0,
  "circulations": [0.0, 0.0]
}
"""


def two_cylinder_config():
    return vf.parse_config(TWO_CYL_DOC)


def quiet(call, *args, **kw):
    """Run a command with stderr captured; returns (code, out, err)."""
    err = io.StringIO()
    with contextlib.redirect_stderr(err):
        code, out = call(*args, **kw)
    return code, out, err.getvalue()


# ------------------------------------------------------------- parsing

def test_parse_config_full_document():
    cfg = two_cylinder_config()
    assert cfg.cylinders == ((0j, 1.0), (3.0 + 0j, 0.5))
    assert cfg.vortices == ((2j, 1.0),)
    assert cfg.gamma_infinity == -1.0
    assert cfg.circulations == (0.0, 0.0)
    assert cfg.center_strengths is None
    assert cfg.numerics == Numerics()


def test_parse_config_empty_document_is_a_free_plane():
    cfg = vf.parse_config("{}")
    assert cfg.cylinders == () and cfg.vortices == ()
    code, out, _ = quiet(vf.run_command, "eval", cfg, points="[1, 1]")
    assert code == 0
    body = json.loads(out)
    assert body["points"][0]["psi"] == 0.0


def test_parse_config_rejects_malformed_json_with_location():
    with pytest.raises(vf.ParseError) as info:
        vf.parse_config('{"cylinders": [}')
    assert "line 1" in str(info.value)


def test_parse_config_rejects_unknown_and_malformed_keys():
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"cylinder": []}')
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"cylinders": 3}')
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"cylinders": [{"center": [0, 0]}]}')
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"vortices": [{"position": [0, 0],'
                        ' "circulation": true}]}')
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"circulations": [0.0]}')  # no cylinders
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"circulations": [0.0], "centerStrengths": [0.0]}')


def test_parse_config_numerics_validation():
    assert vf.parse_config('{"numerics": {"tol": 1e-6}}').numerics.tol == 1e-6
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"numerics": {"level": 3, "tol": 1e-6}}')
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"numerics": {"tol": -1e-6}}')
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"numerics": {"nq": 2}}')
    with pytest.raises(vf.SchemaError):
        vf.parse_config('{"numerics": {"cadence": 3}}')


def test_config_json_round_trip():
    cfg = RunConfig(
        cylinders=((0j, 1.0), (3.0 + 0j, 0.5)),
        vortices=((2j, 1.0), (-1.0 - 1j, -0.5)),
        gamma_infinity=-1.0,
        circulations=(0.25, 0.0),
        numerics=Numerics(tol=1e-8, bbox=(-2.0, 2.0, -2.0, 2.0)),
    )
    assert vf.parse_config(cfg.to_json()) == cfg
    empty = RunConfig()
    assert vf.parse_config(empty.to_json()) == empty


# ------------------------------------------------------------ commands

def test_check_reports_separation_and_recommended_level():
    cfg = two_cylinder_config()
    code, out, _ = quiet(vf.run_command, "check", cfg, tol=1e-8)
    assert code == 0
    body = json.loads(out)
    assert body["cylinders"] == 2
    kinds = [g["kind"] for g in body["generators"]]
    assert kinds == ["finite", "infinity"]
    vortex = body["generators"][0]
    assert vortex["q"] == pytest.approx(0.25)
    assert vortex["d"] == pytest.approx(3.536213750935836)
    # the combined report takes the worst entries over all generators
    assert body["q"] == pytest.approx(0.25)
    assert body["d"] == pytest.approx(4.0)
    assert body["converges"] is True
    assert body["recommendedLevel"] == 13


def test_check_without_tolerance_omits_recommendation():
    cfg = two_cylinder_config()
    code, out, _ = quiet(vf.run_command, "check", cfg, level=5)
    assert code == 0
    assert "recommendedLevel" not in json.loads(out)


def test_eval_values_and_singular_points():
    cfg = two_cylinder_config()
    code, out, _ = quiet(vf.run_command, "eval", cfg,
                         points="[[2.5, 3.5], [0, 2]]", tol=1e-8)
    assert code == 0
    body = json.loads(out)
    assert body["level"] == 13
    regular, singular = body["points"]
    assert np.isfinite(regular["psi"])
    assert np.isfinite(regular["u"]) and np.isfinite(regular["v"])
    # the vortex seed: psi diverges to +inf, velocity is undefined
    assert singular["psi"] == "inf"
    assert singular["u"] is None and singular["v"] is None


def test_eval_rejects_bad_points():
    cfg = two_cylinder_config()
    assert quiet(vf.run_command, "eval", cfg)[0] == 2
    assert quiet(vf.run_command, "eval", cfg, points="[1]")[0] == 2
    assert quiet(vf.run_command, "eval", cfg, points="nonsense")[0] == 2


def test_grid_csv_shape_and_mask():
    cfg = two_cylinder_config()
    code, out, _ = quiet(vf.run_command, "grid", cfg, level=6,
                         bbox=(-2.0, 2.0, -2.0, 2.0), res=(8, 6))
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,y,psi,mask"
    assert len(lines) == 1 + 8 * 6
    rows = [line.split(",") for line in lines[1:]]
    # the row at (-0.25, -0.33...) sits inside the unit cylinder
    masked = [r for r in rows if r[3] == "1"]
    assert masked
    for r in masked:
        assert abs(complex(float(r[0]), float(r[1]))) < 1.0
    # deterministic output, byte for byte
    again = quiet(vf.run_command, "grid", cfg, level=6,
                  bbox=(-2.0, 2.0, -2.0, 2.0), res=(8, 6))[1]
    assert again == out


def test_grid_velocity_kind_and_missing_bbox():
    cfg = two_cylinder_config()
    code, out, _ = quiet(vf.run_command, "grid", cfg, level=6,
                         bbox=(-2.0, 2.0, -2.0, 2.0), res=(4, 4),
                         kind="velocity")
    assert code == 0
    assert out.startswith("x,y,u,v,mask\n")
    assert quiet(vf.run_command, "grid", cfg, level=6)[0] == 2


def test_circulation_command_matches_predictions():
    cfg = two_cylinder_config()
    code, out, _ = quiet(vf.run_command, "circulation", cfg)
    assert code == 0
    body = json.loads(out)
    assert body["nq"] == 512
    for entry in body["perCylinder"]:
        assert entry["quadrature"] == pytest.approx(entry["predicted"],
                                                    abs=1e-9)
    far = body["atInfinity"]
    assert far["quadrature"] == pytest.approx(far["predicted"], abs=1e-9)
    assert far["predicted"] == pytest.approx(-1.0)


def test_limitset_csv():
    cfg = two_cylinder_config()
    code, out, _ = quiet(vf.run_command, "limitset", cfg, level=6)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,y,level"
    # seeded at the first vortex: two cylinders give two points per level
    assert len(lines) == 1 + 2 * 6
    dom = cfg.domain()
    for line in lines[1:]:
        x, y, m = line.split(",")
        z = complex(float(x), float(y))
        assert 1 <= int(m) <= 6
        assert any(abs(z - c.center) < c.radius for c in dom.cylinders)


def test_advect_csv_and_halt_exit_code():
    free = vf.parse_config("""
    {"vortices": [{"position": [1, 0], "circulation": 1.0},
                  {"position": [-1, 0], "circulation": 1.0}]}
    """)
    code, out, _ = quiet(vf.run_command, "advect", free, dt=0.1, steps=4,
                         level=1)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,vortex,x,y"
    assert len(lines) == 1 + 5 * 2
    assert lines[1].startswith("0.0,0,1.0,0.0")

    blocked = vf.parse_config("""
    {"cylinders": [{"center": [0, 0], "radius": 1.0}],
     "vortices": [{"position": [-2, 0.3], "circulation": 1.0},
                  {"position": [-2, -0.3], "circulation": -1.0}],
     "circulations": [0.0]}
    """)
    code, out, err = quiet(vf.run_command, "advect", blocked, dt=16.0,
                           steps=3, level=6)
    assert code == 1
    assert "halted" in err
    assert out.startswith("t,vortex,x,y\n")


def test_advect_requires_dt_and_steps():
    free = vf.parse_config(
        '{"vortices": [{"position": [1, 0], "circulation": 1.0}]}')
    assert quiet(vf.run_command, "advect", free, level=1)[0] == 2


def test_validate_passes_and_reports():
    code, out, _ = quiet(vf.run_command, "validate")
    assert code == 0
    assert "fixture two-cylinder" in out
    assert "fixture five-cylinder" in out
    assert "all gated checks passed" in out
    assert "FAIL" not in out


def test_embedded_fixture_values_are_frozen():
    fixtures = {f.name: f for f in vf.embedded_fixtures()}
    assert set(fixtures) == {"two-cylinder", "five-cylinder"}
    two = fixtures["two-cylinder"]
    assert two.expected["images"][2] == -0.073398504917044
    assert two.gates == {"elliptic": 5e-6, "images": 1e-5}
    five = fixtures["five-cylinder"]
    assert five.expected["level10"][1] == -1.127516103881800
    assert five.gates == {"internal": 1e-5}


# ------------------------------------------------------ dispatch, exits

def test_unknown_command_and_missing_config():
    assert quiet(vf.run_command, "bogus")[0] == 2
    assert quiet(vf.run_command, "eval", None)[0] == 2


def test_input_errors_exit_2_compute_errors_exit_1():
    overlapping = RunConfig(cylinders=((0j, 1.0), (1.0 + 0j, 1.0)))
    assert quiet(vf.run_command, "check", overlapping)[0] == 2

    both = RunConfig(cylinders=((0j, 1.0),), vortices=((2.0, 1.0),),
                     circulations=(0.0,), center_strengths=(0.0,))
    assert quiet(vf.run_command, "eval", both, points="[3, 0]")[0] == 2

    # nonconvergent geometry only fails under --strict, and then with
    # the compute exit code
    crowd = 2.1 / np.sqrt(3.0) * np.exp(2j * np.pi * np.arange(3) / 3)
    crowded = RunConfig(
        cylinders=tuple((complex(c), 1.0) for c in crowd),
        vortices=((4.0 + 4j, 1.0),),
    )
    code, out, err = quiet(vf.run_command, "eval", crowded,
                           points="[5, 5]", level=3)
    assert code == 0 and "warning" in err
    code, _, err = quiet(vf.run_command, "eval", crowded,
                         points="[5, 5]", level=3, strict=True)
    assert code == 1 and "computation error" in err


# ----------------------------------------------------------- main entry

def test_main_end_to_end_with_files(tmp_path):
    cfg_path = tmp_path / "flow.json"
    out_path = tmp_path / "report.json"
    cfg_path.write_text(TWO_CYL_DOC, encoding="utf-8")
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), \
            contextlib.redirect_stderr(stderr):
        code = vf.main(["check", "--config", str(cfg_path),
                        "--tol", "1e-8", "--out", str(out_path)])
    assert code == 0
    assert stdout.getvalue() == ""  # routed to the file instead
    body = json.loads(out_path.read_text(encoding="utf-8"))
    assert body["recommendedLevel"] == 13


def test_main_grid_accepts_negative_bbox_with_equals_form(tmp_path):
    cfg_path = tmp_path / "flow.json"
    cfg_path.write_text(TWO_CYL_DOC, encoding="utf-8")
    out_path = tmp_path / "grid.csv"
    with contextlib.redirect_stderr(io.StringIO()):
        code = vf.main(["grid", "--config", str(cfg_path), "--level", "5",
                        "--bbox=-2,2,-2,2", "--res", "4,4",
                        "--out", str(out_path)])
    assert code == 0
    assert out_path.read_text(encoding="utf-8").startswith("x,y,psi,mask\n")


def test_main_propagates_input_error_exit(tmp_path):
    missing = tmp_path / "nope.json"
    with contextlib.redirect_stderr(io.StringIO()) as err:
        assert vf.main(["eval", "--config", str(missing),
                        "--points", "[1, 1]"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"cylinders": [}', encoding="utf-8")
    with contextlib.redirect_stderr(io.StringIO()):
        assert vf.main(["eval", "--config", str(bad),
                        "--points", "[1, 1]"]) == 2
