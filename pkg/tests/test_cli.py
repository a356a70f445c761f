import json
import math

import numpy as np
import pytest

import metric_spread as ms
from metric_spread.cli import main

T_SINGULAR = math.log(math.sqrt(2.0))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_cantor_points_csv(self, tmp_path, capsys):
        out = tmp_path / "cantor.csv"
        code, _, _ = run(
            capsys, "generate",
            "--space", '{"generator": "cantor", "params": {"depth": 10, "length": 1}}',
            "--out", str(out),
        )
        assert code == 0
        assert len(out.read_text().splitlines()) == 2048

    def test_k32_matrix_csv(self, tmp_path, capsys):
        out = tmp_path / "k32.csv"
        code, _, _ = run(capsys, "generate", "--space", '{"generator": "k32"}', "--out", str(out))
        assert code == 0
        back = ms.read_distance_matrix_csv(out)
        assert np.array_equal(back.d, ms.k32().d)

    def test_two_point_grid(self, tmp_path, capsys):
        out = tmp_path / "grid.csv"
        code, _, _ = run(
            capsys, "generate",
            "--space", '{"generator": "grid", "params": {"rows": 1, "cols": 2, "spacing": 1}}',
            "--out", str(out),
        )
        assert code == 0
        assert len(out.read_text().splitlines()) == 2

    def test_unknown_generator_is_usage_error(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "generate", "--space", '{"generator": "mandelbrot"}',
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2
        assert "unknown generator" in err

    def test_bad_json_is_usage_error(self, tmp_path, capsys):
        code, _, _ = run(capsys, "generate", "--space", "{not json",
                         "--out", str(tmp_path / "x.csv"))
        assert code == 2

    def test_unknown_and_missing_params(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "generate",
            "--space", '{"generator": "cantor", "params": {"depth": 3, "size": 2}}',
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2 and "unknown parameters" in err
        code, _, err = run(
            capsys, "generate", "--space", '{"generator": "cantor"}',
            "--out", str(tmp_path / "x.csv"),
        )
        assert code == 2 and "requires parameter" in err


class TestScalars:
    def test_spread_single_point(self, capsys):
        code, out, _ = run(
            capsys, "spread", "--space", '{"generator": "linear_tree", "params": {"n": 1}}',
            "--t", "17.0", "--q", "2",
        )
        assert code == 0
        assert float(out) == 1.0

    def test_spread_two_points(self, capsys):
        code, out, _ = run(
            capsys, "spread",
            "--space", '{"generator": "linear_tree", "params": {"n": 2}}',
        )
        assert code == 0
        assert float(out) == pytest.approx(2 / (1 + math.exp(-1)), rel=1e-15)

    def test_spread_matches_library(self, capsys):
        code, out, _ = run(capsys, "spread", "--space", '{"generator": "k32"}', "--t", "1.0")
        assert code == 0
        assert float(out) == ms.spread0(ms.k32())

    def test_spread_infinite_order(self, capsys):
        code, out, _ = run(capsys, "spread", "--space", '{"generator": "k32"}', "--q", "inf")
        assert code == 0
        assert float(out) == ms.spread_q(ms.k32(), 1.0, math.inf).value

    def test_magnitude(self, capsys):
        code, out, _ = run(
            capsys, "magnitude",
            "--space", '{"generator": "linear_tree", "params": {"n": 10}}',
        )
        assert code == 0
        assert float(out) == pytest.approx(ms.tree_magnitude(10, 1.0), rel=1e-12)

    def test_magnitude_singular_scale_exits_3(self, capsys):
        code, out, err = run(
            capsys, "magnitude", "--space", '{"generator": "k32"}', "--t", repr(T_SINGULAR)
        )
        assert code == 3
        assert out == ""
        assert "singular" in err

    def test_maxdiv(self, capsys):
        code, out, _ = run(
            capsys, "maxdiv",
            "--space", '{"generator": "corona", "params": {"n": 6}}', "--t", "0.5",
        )
        assert code == 0
        assert float(out) == pytest.approx(ms.corona_maxdiv(6, 0.5), rel=1e-12)

    def test_maxdiv_above_cap_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "maxdiv",
            "--space", '{"generator": "grid", "params": {"rows": 5, "cols": 5}}',
        )
        assert code == 2
        assert "cap" in err

    def test_negative_order_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["spread", "--space", '{"generator": "k32"}', "--q", "-1"])
        assert info.value.code == 2


class TestFileDescriptors:
    def test_round_trip_matches_generator(self, tmp_path, capsys):
        out = tmp_path / "k32.csv"
        assert run(capsys, "generate", "--space", '{"generator": "k32"}',
                   "--out", str(out))[0] == 0
        code, from_file, _ = run(
            capsys, "spread",
            "--space", json.dumps({"file": str(out), "format": "matrix"}), "--t", "0.37",
        )
        assert code == 0
        code, from_generator, _ = run(
            capsys, "spread", "--space", '{"generator": "k32"}', "--t", "0.37"
        )
        assert code == 0
        assert from_file == from_generator

    def test_points_file_round_trip(self, tmp_path, capsys):
        out = tmp_path / "pts.csv"
        descriptor = '{"generator": "sierpinski", "params": {"depth": 3, "width": 2.5}}'
        assert run(capsys, "generate", "--space", descriptor, "--out", str(out))[0] == 0
        code, a, _ = run(capsys, "spread",
                         "--space", json.dumps({"file": str(out), "format": "points"}))
        code2, b, _ = run(capsys, "spread", "--space", descriptor)
        assert code == code2 == 0
        assert a == b

    def test_descriptor_file_input(self, tmp_path, capsys):
        desc_path = tmp_path / "space.json"
        desc_path.write_text('{"generator": "k32"}')
        code, out, _ = run(capsys, "spread", "--space-file", str(desc_path))
        assert code == 0
        assert float(out) == ms.spread0(ms.k32())

    def test_invalid_matrix_file_rejected(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("0,1\n2,0\n")
        code, _, err = run(
            capsys, "spread", "--space", json.dumps({"file": str(bad), "format": "matrix"})
        )
        assert code == 2
        assert "asymmetry" in err

    def test_both_generator_and_file_rejected(self, tmp_path, capsys):
        code, _, err = run(
            capsys, "spread",
            "--space", '{"generator": "k32", "file": "x.csv", "format": "matrix"}',
        )
        assert code == 2
        assert "exactly one" in err


class TestProfiles:
    def test_spread_profile_csv(self, tmp_path, capsys):
        out = tmp_path / "profile.csv"
        code, _, _ = run(
            capsys, "profile", "--space", '{"generator": "k32"}', "--quantity", "spread",
            "--t-min", "0.01", "--t-max", "100", "--points-per-decade", "5",
            "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,value"
        assert len(lines) == 22  # 4 decades * 5 + 1 grid points + header
        t0, v0 = lines[1].split(",")
        assert float(t0) == 0.01
        assert float(v0) == ms.spread0(ms.k32(), 0.01)

    def test_magnitude_profile_flags_singular_scale(self, tmp_path, capsys):
        out = tmp_path / "mag.csv"
        # grid endpoints are exact, so start the grid exactly at the singular scale
        code, _, _ = run(
            capsys, "profile", "--space", '{"generator": "k32"}', "--quantity", "magnitude",
            "--t-min", repr(T_SINGULAR), "--t-max", "10", "--points-per-decade", "4",
            "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1].split(",")[1] == "nan"
        sidecar = json.loads((tmp_path / "mag.csv.singular.json").read_text())
        assert sidecar["singular_scales"] == [T_SINGULAR]

    def test_magnitude_profile_clean_grid_has_empty_report(self, tmp_path, capsys):
        out = tmp_path / "mag.csv"
        code, _, _ = run(
            capsys, "profile", "--space", '{"generator": "k32"}', "--quantity", "magnitude",
            "--t-min", "0.01", "--t-max", "100", "--points-per-decade", "10",
            "--out", str(out),
        )
        assert code == 0
        sidecar = json.loads((tmp_path / "mag.csv.singular.json").read_text())
        assert sidecar["singular_scales"] == []
        values = [line.split(",")[1] for line in out.read_text().splitlines()[1:]]
        assert all(v != "nan" for v in values)

    def test_tree_and_corona_magnitude_profiles_identical(self, tmp_path, capsys):
        args = ["profile", "--quantity", "magnitude", "--t-min", "0.01", "--t-max", "10",
                "--points-per-decade", "7"]
        out_a = tmp_path / "lin.csv"
        out_b = tmp_path / "cor.csv"
        run(capsys, *args, "--space", '{"generator": "linear_tree", "params": {"n": 10}}',
            "--out", str(out_a))
        run(capsys, *args, "--space", '{"generator": "corona", "params": {"n": 10}}',
            "--out", str(out_b))
        va = [float(line.split(",")[1]) for line in out_a.read_text().splitlines()[1:]]
        vb = [float(line.split(",")[1]) for line in out_b.read_text().splitlines()[1:]]
        assert np.allclose(va, vb, rtol=1e-10)

    def test_spread_profiles_distinguish_tree_from_corona(self, capsys):
        code, out_lin, _ = run(
            capsys, "spread", "--space", '{"generator": "linear_tree", "params": {"n": 10}}'
        )
        code2, out_cor, _ = run(
            capsys, "spread", "--space", '{"generator": "corona", "params": {"n": 10}}'
        )
        assert code == code2 == 0
        assert float(out_lin) > float(out_cor)

    def test_maxdiv_profile(self, tmp_path, capsys):
        out = tmp_path / "maxdiv.csv"
        code, _, _ = run(
            capsys, "profile", "--space", '{"generator": "corona", "params": {"n": 6}}',
            "--quantity", "maxdiv", "--t-min", "0.2", "--t-max", "5",
            "--points-per-decade", "4", "--out", str(out),
        )
        assert code == 0
        rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
        for t_text, v_text in rows:
            assert float(v_text) == pytest.approx(
                ms.corona_maxdiv(6, float(t_text)), rel=1e-12
            )

    def test_profile_to_stdout(self, capsys):
        code, out, _ = run(
            capsys, "profile", "--space", '{"generator": "k32"}', "--quantity", "spread",
            "--t-min", "0.1", "--t-max", "10", "--points-per-decade", "2",
        )
        assert code == 0
        assert out.startswith("t,value\n")

    def test_invalid_range_is_usage_error(self, capsys):
        code, _, _ = run(
            capsys, "profile", "--space", '{"generator": "k32"}', "--quantity", "spread",
            "--t-min", "10", "--t-max", "1",
        )
        assert code == 2


class TestDimension:
    def test_single_point_all_zero(self, tmp_path, capsys):
        out = tmp_path / "dim.csv"
        code, _, _ = run(
            capsys, "dimension", "--space", '{"generator": "linear_tree", "params": {"n": 1}}',
            "--t-min", "0.1", "--t-max", "10", "--points-per-decade", "3",
            "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,dimension"
        assert all(float(line.split(",")[1]) == 0.0 for line in lines[1:])

    def test_metadata_sidecar(self, tmp_path, capsys):
        out = tmp_path / "dim.csv"
        code, _, _ = run(
            capsys, "dimension", "--space", '{"generator": "cantor", "params": {"depth": 4}}',
            "--t-min", "1", "--t-max", "100", "--points-per-decade", "2",
            "--step", "0.002", "--out", str(out),
        )
        assert code == 0
        meta = json.loads((tmp_path / "dim.csv.meta.json").read_text())
        assert meta["step"] == 0.002
        assert meta["points"] == 32
        assert meta["descriptor"]["generator"] == "cantor"
        assert meta["x_axis"] == "scale"

    def test_extent_axis(self, tmp_path, capsys):
        out = tmp_path / "dim.csv"
        code, _, _ = run(
            capsys, "dimension", "--space", '{"generator": "cantor", "params": {"depth": 3}}',
            "--t-min", "1", "--t-max", "10", "--points-per-decade", "2",
            "--x-axis", "extent", "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "extent,dimension"
        # the base Cantor seed has unit length, so extent equals scale here
        assert float(lines[1].split(",")[0]) == pytest.approx(1.0, rel=1e-12)


class TestContinuum:
    def test_interval_formulas(self, capsys):
        code, out, _ = run(
            capsys, "continuum", "--formula", "interval_e0",
            "--param-min", "50", "--param-max", "50.0001", "--points-per-decade", "1",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "param,value"
        value = float(lines[1].split(",")[1])
        assert value == pytest.approx(25 + math.log(2), abs=1e-6)

    def test_sphere(self, capsys):
        code, out, _ = run(
            capsys, "continuum", "--formula", "sphere", "--n", "2",
            "--param-min", "10", "--param-max", "20", "--points-per-decade", "3",
        )
        assert code == 0
        first = float(out.splitlines()[1].split(",")[1])
        assert first == pytest.approx(202.0, abs=1e-6)

    def test_surface(self, capsys):
        code, out, _ = run(
            capsys, "continuum", "--formula", "surface",
            "--area", repr(4 * math.pi), "--chi", "2",
            "--param-min", "10", "--param-max", "20", "--points-per-decade", "2",
        )
        assert code == 0
        assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(202.0, rel=1e-12)

    def test_asymptotic_requires_inputs(self, capsys):
        code, _, err = run(
            capsys, "continuum", "--formula", "asymptotic", "--n", "2",
            "--param-min", "1", "--param-max", "10",
        )
        assert code == 2
        assert "--volume" in err

    def test_values_written_with_17_digits(self, tmp_path, capsys):
        out = tmp_path / "c.csv"
        code, _, _ = run(
            capsys, "continuum", "--formula", "interval_e0",
            "--param-min", "1", "--param-max", "10", "--points-per-decade", "2",
            "--out", str(out),
        )
        assert code == 0
        value_text = out.read_text().splitlines()[1].split(",")[1]
        assert float(value_text) == ms.interval_spread0(1.0)  # exact round-trip


class TestDeterminism:
    CASES = [
        ("gen", ["generate",
                 "--space", '{"generator": "sierpinski", "params": {"depth": 5}}']),
        ("spr", ["profile", "--space", '{"generator": "k32"}', "--quantity", "spread",
                 "--t-min", "0.01", "--t-max", "100", "--points-per-decade", "8"]),
        ("mag", ["profile", "--space", '{"generator": "k32"}', "--quantity", "magnitude",
                 "--t-min", "0.01", "--t-max", "100", "--points-per-decade", "8"]),
        ("mxd", ["profile", "--space", '{"generator": "corona", "params": {"n": 8}}',
                 "--quantity", "maxdiv", "--t-min", "0.1", "--t-max", "10",
                 "--points-per-decade", "4"]),
        ("dim", ["dimension", "--space",
                 '{"generator": "grid", "params": {"rows": 3, "cols": 40}}',
                 "--t-min", "0.01", "--t-max", "10", "--points-per-decade", "4"]),
        ("con", ["continuum", "--formula", "interval_e2",
                 "--param-min", "0.1", "--param-max", "100", "--points-per-decade", "10"]),
    ]

    @pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
    def test_byte_identical_across_thread_counts(self, name, argv, tmp_path, capsys):
        outputs = {}
        for threads in (1, 8):
            out = tmp_path / f"{name}_{threads}.csv"
            code = main(["--threads", str(threads), *argv, "--out", str(out)])
            capsys.readouterr()
            assert code == 0
            outputs[threads] = out.read_bytes()
            sidecar = out.with_name(out.name + ".singular.json")
            if sidecar.exists():
                outputs[threads] += sidecar.read_bytes()
        assert outputs[1] == outputs[8]
