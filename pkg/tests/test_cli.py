import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from oblique.cli import CSV_COLUMNS, main
from oblique.elliptic import ellip_e
from oblique.halfcone import ratio_ar_lateral_limit

NUM = {"type": "number"}
MEASURES = {"type": "object", "additionalProperties": False,
            "required": ["volume", "area_lateral", "area_total", "integrated_mean_curvature",
                         "edge_term", "mean_width"],
            "properties": {k: NUM for k in ("volume", "area_lateral", "area_total",
                                            "integrated_mean_curvature", "edge_term", "mean_width")}}
PROVENANCE = {"enum": ["closed_form", "quadrature", "monte_carlo"]}
RECORD = {"type": "object", "required": ["body", "a", "b", "measures", "provenance"],
          "properties": {"body": {"enum": ["cylinder", "cone"]}, "a": NUM, "b": NUM,
                         "measures": MEASURES, "provenance": PROVENANCE}}
SIDE_FIELDS = ("j", "l", "base_angle", "leg_angle", "ar_lateral", "ar_with_base",
               "ar_with_base_and_triangle", "mean_width")
SIDE = {"type": "object", "required": list(SIDE_FIELDS), "properties": {k: NUM for k in SIDE_FIELDS}}
SPLIT = {"type": "object", "required": ["body", "a", "b", "smaller", "larger", "ratios", "provenance"],
         "properties": {"smaller": SIDE, "larger": SIDE, "provenance": PROVENANCE,
                        "ratios": {"type": "object",
                                   "required": ["ar_lateral", "ar_total", "ar_addendum", "mw"],
                                   "properties": {k: NUM for k in ("ar_lateral", "ar_total",
                                                                   "ar_addendum", "mw")}}}}
SOLVE = {"type": "object", "required": ["problem", "a_star", "infimum", "residual", "cross_check"],
         "properties": {"a_star": NUM, "infimum": NUM, "residual": NUM,
                        "cross_check": {"type": ["number", "null"]}}}
CONSTANTS = {"type": "object", "required": ["xi_1", "xi_2_over_pi", "eta_1_over_pi"],
             "additionalProperties": False,
             "properties": {k: NUM for k in ("xi_1", "xi_2_over_pi", "eta_1_over_pi")}}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv, schema):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, schema)
    return data


def test_measures_right_cone_json(capsys):
    data = run_json(capsys, "measures", "cone", "0", "1", schema=RECORD)
    assert data["measures"]["mean_width"] == pytest.approx((1 + math.pi) / 2 - math.pi / 8, rel=1e-15)
    assert data["provenance"] == "closed_form"


def test_measures_cylinder_total_area(capsys):
    data = run_json(capsys, "measures", "cylinder", "3", "4", schema=RECORD)
    assert data["measures"]["area_total"] == pytest.approx(2 * (math.pi + 10 * ellip_e(9 / 25)), rel=1e-15)


@pytest.mark.parametrize("argv", [("measures", "cone", "-1", "1"), ("measures", "cylinder", "1", "0"),
                                  ("measures", "cone", "1", "nan"), ("split", "1", "-2")])
def test_invalid_arguments_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "a must be" in err or "b must be" in err


def test_argparse_errors_exit_2(capsys):
    for argv in (["measures", "sphere", "1", "1"], ["solve", "volume"], ["constants", "--digits", "0"],
                 ["sweep", "cone", "--a-range", "0", "1", "--b-range", "1", "2", "--steps", "1", "2", "3"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_split_symmetric(capsys):
    data = run_json(capsys, "split", "0", "1", schema=SPLIT)
    for k in SIDE_FIELDS:
        if k in ("base_angle", "leg_angle"):
            continue
        assert data["smaller"][k] == pytest.approx(data["larger"][k], rel=1e-12), k
    assert data["ratios"]["mw"] == pytest.approx(1.0, rel=1e-12)


def test_split_mw_infimum(capsys):
    data = run_json(capsys, "split", "1.3638337555895594", "0.0001", schema=SPLIT)
    assert data["ratios"]["mw"] == pytest.approx(0.8431, abs=1e-4)


def test_split_lateral_limit(capsys):
    data = run_json(capsys, "split", "2", "0.000001", schema=SPLIT)
    assert abs(data["ratios"]["ar_lateral"] - ratio_ar_lateral_limit(2)) < 1e-3


@pytest.mark.parametrize("problem,a_star,inf", [("ar-lateral", 1.2437608987462040, 0.1892),
                                                ("mw", 1.3638337555895594, 0.8431),
                                                ("ar-addendum", 1.2437608987462040, 0.5946)])
def test_solve(capsys, problem, a_star, inf):
    data = run_json(capsys, "solve", problem, schema=SOLVE)
    assert data["a_star"] == pytest.approx(a_star, rel=1e-15)
    assert math.floor(data["infimum"] * 1e4) / 1e4 == pytest.approx(inf)


def test_constants(capsys):
    data = run_json(capsys, "constants", schema=CONSTANTS)
    assert data["xi_1"] == pytest.approx(0.7390851332151606416553120, rel=1e-15)
    assert data["xi_2_over_pi"] == pytest.approx(0.9340137863539518545607006, rel=1e-15)
    assert data["eta_1_over_pi"] == pytest.approx(2.3137341320786811322489898, rel=1e-15)


def test_text_and_csv_formats(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0 and out.startswith("xi_1: 0.73908513321516067\n")
    code, out, _ = run(capsys, "measures", "cone", "0", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 2


def test_digits_is_display_only(capsys):
    _, short, _ = run(capsys, "constants", "--digits", "5")
    _, full, _ = run(capsys, "constants")
    assert "xi_1: 0.73909\n" in short
    assert "xi_1: 0.73908513321516067\n" in full


def test_sweep_csv(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "cone", "--a-range", "0", "2", "--b-range", "0.5", "2",
                     "--steps", "5", "--out", str(path))
    assert code == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode("utf-8"))))
    assert len(rows) == 25
    assert [(float(r["a"]), float(r["b"])) for r in rows[:2]] == [(0.0, 0.5), (0.0, 0.875)]
    for r in rows:
        imc, edge, mw = (float(r[k]) for k in ("integrated_mean_curvature", "edge_term", "mean_width"))
        assert mw == pytest.approx(imc / (2 * math.pi) + edge / (4 * math.pi), rel=1e-13)


def test_sweep_right_cone_row(capsys):
    code, out, _ = run(capsys, "sweep", "cone", "--a-range", "0", "2", "--b-range", "1", "1",
                       "--steps", "5", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [float(r["a"]) for r in rows] == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert float(rows[0]["mean_width"]) == pytest.approx((1 + math.pi) / 2 - math.pi / 8, rel=1e-15)


def test_sweep_json_schema(capsys):
    code, out, _ = run(capsys, "sweep", "cylinder", "--a-range", "0", "1", "--b-range", "1", "2",
                       "--steps", "2", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, {"type": "array", "items": RECORD, "minItems": 6, "maxItems": 6})


@pytest.mark.parametrize("argv", [("--a-range", "2", "0", "--b-range", "1", "2"),
                                  ("--a-range", "-1", "1", "--b-range", "1", "2"),
                                  ("--a-range", "0", "1", "--b-range", "0", "2")])
def test_sweep_invalid_ranges(capsys, argv):
    assert run(capsys, "sweep", "cone", *argv)[0] == 2


def test_sweep_io_failure(capsys, tmp_path):
    code, _, err = run(capsys, "sweep", "cone", "--a-range", "0", "1", "--b-range", "1", "2",
                       "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 5 and "cannot write" in err


def test_verify_cylinder_passes(capsys):
    code, out, _ = run(capsys, "verify", "cylinder")
    assert code == 0
    assert "overall: PASS" in out


def test_verify_forced_failure(capsys):
    code, out, _ = run(capsys, "verify", "cone", "--tol", "1e-30")
    assert code == 1
    assert "overall: FAIL" in out and "failed:" in out


def test_verify_rejects_bad_seed(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--seed", "-1"])
    capsys.readouterr()


@pytest.mark.slow
def test_verify_all_is_byte_identical():
    cmd = [sys.executable, "-m", "oblique", "verify", "all", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stdout.decode()
    assert first.stdout == second.stdout and first.stdout
