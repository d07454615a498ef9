"""Rendering layer: significant-digit formatting, CSV tables, JSON envelopes."""

import json
import math

import pytest

import depth_planner
from depth_planner import CurveSeries, DomainError, SurfaceSeries, Trajectory
from depth_planner.output import (
    OutputEnvelope,
    emit,
    emit_curve,
    format_number,
    render_json,
    render_table,
    series_table,
    tool_provenance,
)


class TestFormatNumber:
    @pytest.mark.parametrize(
        "value, expected",
        [
            (0.73692442383617163, "0.736924424"),
            (6.6438561897747247, "6.64385619"),
            (1.0, "1"),
            (0.5, "0.5"),
            (0.0, "0"),
            (-0.0, "0"),
            (0.0001, "0.0001"),
            (9.999e-05, "9.999e-05"),
            (2.5e-07, "2.5e-07"),
            (123456789.0, "123456789"),
            (12345678912.0, "1.23456789e+10"),
            (10, "10"),
            (10**30, "1000000000000000000000000000000"),
        ],
    )
    def test_default_precision(self, value, expected):
        assert format_number(value) == expected

    def test_custom_precision(self):
        assert format_number(0.73692442383617163, 3) == "0.737"
        assert format_number(2.0 / 3.0, 2) == "0.67"

    def test_collapses_noise_beyond_precision(self):
        a = format_number(0.123456789012345)
        b = format_number(0.123456789012999)
        assert a == b == "0.123456789"

    def test_rejects_booleans(self):
        with pytest.raises(DomainError):
            format_number(True)


class TestOutputEnvelope:
    def test_defaults(self):
        envelope = OutputEnvelope()
        assert (envelope.format, envelope.precision, envelope.destination) == (
            "csv", 9, None
        )

    @pytest.mark.parametrize(
        "kwargs",
        [{"format": "yaml"}, {"precision": 0}, {"precision": True}, {"precision": 2.5}],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            OutputEnvelope(**kwargs)


class TestSeriesTable:
    def test_curve(self):
        curve = CurveSeries("p", "n", ((0.3, 3.8), (0.5, 6.6)))
        header, rows = series_table(curve)
        assert header == ("p", "n")
        assert rows == ((0.3, 3.8), (0.5, 6.6))

    def test_trajectory(self):
        header, _ = series_table(Trajectory(((0.0, 0.0),)))
        assert header == ("t", "n_broken")

    def test_surface(self):
        surface = SurfaceSeries("lambda", "tau_a", "n", ((0.5, 1.0, 1.39),))
        header, _ = series_table(surface)
        assert header == ("lambda", "tau_a", "n")

    def test_rejects_other_types(self):
        with pytest.raises(DomainError):
            series_table([(1, 2)])


class TestRenderTable:
    def test_numbers_and_strings(self):
        text = render_table(("a", "b"), [("x", 1.5), (2, 0.25)])
        assert text == "a,b\nx,1.5\n2,0.25\n"

    def test_precision_applies_per_cell(self):
        text = render_table(("v",), [(2.0 / 3.0,)], precision=3)
        assert text == "v\n0.667\n"

    def test_uses_lf_only(self):
        text = render_table(("a",), [(1,), (2,)])
        assert "\r" not in text and text.endswith("\n")


class TestRenderJson:
    def test_exact_bytes(self):
        text = render_json(
            {"p": 0.5},
            {"n": 6.6438561897747247},
            {"tool": "depth-planner", "version": "0.1.0"},
        )
        assert text == (
            '{\n'
            '  "inputs": {\n'
            '    "p": 0.5\n'
            '  },\n'
            '  "outputs": {\n'
            '    "n": 6.64385619\n'
            '  },\n'
            '  "provenance": {\n'
            '    "tool": "depth-planner",\n'
            '    "version": "0.1.0"\n'
            '  }\n'
            '}\n'
        )

    def test_floats_are_reparsed_at_precision(self):
        text = render_json({}, {"x": 1.0 / 3.0}, {}, precision=4)
        assert json.loads(text)["outputs"]["x"] == 0.3333

    def test_nested_structures_and_bools(self):
        text = render_json({}, {"rows": [[0.1 + 0.2, True]], "flag": False}, {})
        doc = json.loads(text)
        assert doc["outputs"]["rows"][0] == [0.3, True]
        assert doc["outputs"]["flag"] is False

    def test_noise_beyond_precision_cannot_change_bytes(self):
        a = render_json({}, {"x": 0.123456789012345}, {})
        b = render_json({}, {"x": 0.123456789012999}, {})
        assert a == b

    def test_integers_survive_untouched(self):
        doc = json.loads(render_json({"n": 7}, {}, {}))
        assert doc["inputs"]["n"] == 7 and isinstance(doc["inputs"]["n"], int)


class TestProvenance:
    def test_without_seed(self):
        assert tool_provenance() == {
            "tool": "depth-planner",
            "version": depth_planner.__version__,
        }

    def test_with_seed(self):
        assert tool_provenance(seed=7)["seed"] == 7


class TestEmit:
    def test_to_stdout(self, capsys):
        emit("hello\n")
        assert capsys.readouterr().out == "hello\n"

    def test_to_file(self, tmp_path):
        path = tmp_path / "out.csv"
        emit("a,b\n1,2\n", str(path))
        assert path.read_bytes() == b"a,b\n1,2\n"

    def test_io_errors_propagate(self):
        with pytest.raises(OSError):
            emit("x", "/nonexistent-dir/deep/out.csv")


class TestEmitCurve:
    CURVE = CurveSeries("x", "n", ((0.5, 2.0 * math.log(2.0)), (1.0, math.log(2.0))))

    def test_csv(self, capsys):
        text = emit_curve(self.CURVE, OutputEnvelope())
        assert text == "x,n\n0.5,1.38629436\n1,0.693147181\n"
        assert capsys.readouterr().out == text

    def test_json(self, capsys):
        text = emit_curve(
            self.CURVE, OutputEnvelope(format="json"), inputs={"target": 0.5}
        )
        doc = json.loads(text)
        assert doc["inputs"] == {"target": 0.5}
        assert doc["outputs"]["labels"] == ["x", "n"]
        assert doc["outputs"]["points"] == [[0.5, 1.38629436], [1.0, 0.693147181]]
        assert doc["provenance"]["tool"] == "depth-planner"
        capsys.readouterr()

    def test_writes_to_destination(self, tmp_path):
        path = tmp_path / "curve.csv"
        text = emit_curve(self.CURVE, OutputEnvelope(destination=str(path)))
        assert path.read_text(encoding="utf-8") == text
