"""
End-to-end tests of the command-line surface.
"""

import csv
import io
import json
import logging

import pytest

from cuspforge.main import main
from cuspforge.utils.config import Config
from cuspforge.utils.errors import InternalConsistencyError
from cuspforge.utils.serialization import dumps_configuration, read_configuration


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            root.removeHandler(handler)
    for handler in handlers:
        if handler not in root.handlers:
            root.addHandler(handler)
    root.setLevel(level)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


NON_PROPORTIONAL = {
    "d": 3,
    "conductors": [1, 1],
    "curves": [
        {"slope": [{"d": 3, "x": 1, "y": 0}, {"d": 3, "x": 0, "y": 0}]},
        {"slope": [{"d": 3, "x": 0, "y": 0}, {"d": 3, "x": 1, "y": 0}]},
        {"slope": [{"d": 3, "x": 1, "y": 0}, {"d": 3, "x": 1, "y": 0}]},
    ],
}


class TestCheck:
    def test_hirzebruch(self, capsys):
        code, out, _ = run(capsys, "check", "hirzebruch")
        report = json.loads(out)
        assert code == 0
        assert report["components"] == 4
        assert report["singular_points"] == 1
        assert report["incidence_sum"] == 4
        assert report["proportional"] is True
        assert report["e"] == 1
        assert report["volume"] == "1 × 8π²/3"

    def test_holzapfel_csv(self, capsys):
        code, out, _ = run(capsys, "check", "holzapfel", "--format", "csv")
        assert code == 0
        assert out.startswith("field,value\n")
        assert "singular_points,3" in out
        assert "point,incidence" in out

    def test_markdown(self, capsys):
        code, out, _ = run(capsys, "check", "d14", "--format", "markdown")
        assert code == 0
        assert "| e | 1 |" in out

    def test_float_volume(self, capsys):
        _, out, _ = run(capsys, "check", "hirzebruch", "--float")
        assert json.loads(out)["volume"] == "26.318945"

    def test_non_proportional_file(self, capsys, tmp_path):
        path = tmp_path / "three_lines.json"
        path.write_text(json.dumps(NON_PROPORTIONAL))
        code, out, _ = run(capsys, "check", str(path))
        report = json.loads(out)
        assert code == 2
        assert report["proportional"] is False
        assert report["incidence_sum"] == 3

    def test_single_curve_is_vacuous(self, capsys, tmp_path):
        path = tmp_path / "one_line.json"
        single = dict(NON_PROPORTIONAL, curves=NON_PROPORTIONAL["curves"][:1])
        path.write_text(json.dumps(single))
        code, out, _ = run(capsys, "check", str(path))
        report = json.loads(out)
        assert code == 2
        assert report["vacuous"] is True
        assert report["singular_points"] == 0

    def test_unknown_source(self, capsys):
        code, _, err = run(capsys, "check", "nowhere")
        assert code == 1
        assert "❌" in err

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, _ = run(capsys, "check", str(path))
        assert code == 1

    def test_schema_violation(self, capsys, tmp_path):
        path = tmp_path / "zero_slope.json"
        bad = dict(NON_PROPORTIONAL)
        bad["curves"] = [{"slope": [{"d": 3, "x": 0, "y": 0}, {"d": 3, "x": 0, "y": 0}]}]
        path.write_text(json.dumps(bad))
        code, _, _ = run(capsys, "check", str(path))
        assert code == 1

    def test_unknown_format(self, capsys):
        code, _, _ = run(capsys, "check", "hirzebruch", "--format", "yaml")
        assert code == 1

    def test_internal_error_exit_code(self, capsys, monkeypatch):
        def broken(self, source, as_float=False):
            raise InternalConsistencyError("oracle disagreement")

        monkeypatch.setattr("cuspforge.commands.check.CheckCommand.build_report", broken)
        code, _, err = run(capsys, "check", "hirzebruch")
        assert code == 3
        assert "oracle disagreement" in err


class TestPullback:
    def test_hirzebruch_example(self, capsys):
        code, out, _ = run(capsys, "pullback", "hirzebruch", "--alpha", "1+1w", "--beta", "1")
        report = json.loads(out)
        assert code == 0
        assert (report["degree"], report["h"], report["e"]) == (3, 6, 3)
        assert report["proportional"] is True
        assert sum(c["components"] for c in report["curves"]) == 6

    def test_identity_echoes_input(self, capsys):
        _, out, _ = run(capsys, "pullback", "hirzebruch")
        report = json.loads(out)
        assert (report["degree"], report["h"], report["e"]) == (1, 4, 1)

    def test_d14_sqrt_minus_three(self, capsys):
        code, out, _ = run(capsys, "pullback", "d14", "--alpha", "-1+2w")
        assert code == 0
        assert json.loads(out)["h"] == 6

    def test_list_components(self, capsys):
        _, out, _ = run(capsys, "pullback", "hirzebruch", "--alpha", "2", "--list")
        report = json.loads(out)
        assert len(report["components"]) == report["h"] == 7

    def test_csv_with_components(self, capsys):
        code, out, _ = run(
            capsys, "pullback", "hirzebruch", "--alpha", "1+1w", "--format", "csv", "--list"
        )
        assert code == 0
        assert "slope,components,closed_form,case,axis_count" in out
        assert "slope,base" in out

    def test_mixed_conductors(self, capsys):
        _, out, _ = run(capsys, "pullback", "hirzebruch", "--m2", "4")
        report = json.loads(out)
        assert report["e"] == 4
        assert report["h"] == 7
        assert all(c["closed_form"] is None for c in report["curves"])

    def test_bad_literal(self, capsys):
        code, _, err = run(capsys, "pullback", "hirzebruch", "--alpha", "1+i")
        assert code == 1
        assert "literal" in err

    def test_zero_alpha(self, capsys):
        code, _, _ = run(capsys, "pullback", "hirzebruch", "--alpha", "0")
        assert code == 1

    def test_non_positive_conductor(self, capsys):
        code, _, _ = run(capsys, "pullback", "hirzebruch", "--m1", "0")
        assert code == 1


class TestSeries:
    def test_birational(self, capsys):
        code, out, _ = run(
            capsys, "series", "--kind", "birational", "--gammas", "1+1w", "--terms", "3"
        )
        rows = csv_rows(out)
        assert code == 0
        assert list(rows[0]) == [
            "n", "degree", "e", "volume_units", "h", "conductor", "formula_h", "mismatch"
        ]
        assert [r["e"] for r in rows] == ["3", "9", "27"]
        assert [r["h"] for r in rows] == ["6", "12", "30"]
        assert {r["mismatch"] for r in rows} == {"false"}

    def test_nonbirational_flags_formula(self, capsys):
        _, out, _ = run(capsys, "series", "--kind", "nonbirational", "--ks", "2,2")
        rows = csv_rows(out)
        assert [r["h"] for r in rows] == ["7", "13"]
        assert [r["formula_h"] for r in rows] == ["3", "5"]
        assert {r["mismatch"] for r in rows} == {"true"}

    def test_four_cusp(self, capsys):
        _, out, _ = run(
            capsys, "series", "--kind", "fourcusp", "--gammas", "2+1w", "--terms", "2"
        )
        rows = csv_rows(out)
        assert [r["h"] for r in rows] == ["4", "4"]
        assert [r["e"] for r in rows] == ["7", "49"]

    def test_include_base(self, capsys):
        _, out, _ = run(
            capsys, "series", "--kind", "birational", "--gammas", "2", "--include-base"
        )
        assert [r["n"] for r in csv_rows(out)] == ["0", "1"]

    def test_json_format(self, capsys):
        _, out, _ = run(
            capsys, "series", "--kind", "birational", "--gammas", "2", "--format", "json"
        )
        rows = json.loads(out)
        assert rows[0]["e"] == 4
        assert rows[0]["mismatch"] is False

    def test_missing_generators(self, capsys):
        code, _, _ = run(capsys, "series", "--kind", "birational")
        assert code == 1

    def test_unknown_kind(self, capsys):
        code, _, _ = run(capsys, "series", "--kind", "sideways", "--gammas", "2")
        assert code == 1

    def test_excluded_four_cusp_generator(self, capsys):
        code, _, _ = run(capsys, "series", "--kind", "fourcusp", "--gammas", "3")
        assert code == 1

    def test_bad_terms(self, capsys):
        code, _, _ = run(
            capsys, "series", "--kind", "birational", "--gammas", "2", "--terms", "0"
        )
        assert code == 1


class TestAllVolumes:
    def test_three_rows(self, capsys):
        code, out, _ = run(capsys, "allvolumes", "--max", "3")
        rows = csv_rows(out)
        assert code == 0
        assert [r["e"] for r in rows] == ["1", "2", "3"]
        assert [r["h"] for r in rows] == ["4", "5", "6"]

    def test_single_row(self, capsys):
        _, out, _ = run(capsys, "allvolumes", "--max", "1")
        assert len(csv_rows(out)) == 1

    def test_rejects_zero(self, capsys):
        code, _, _ = run(capsys, "allvolumes", "--max", "0")
        assert code == 1


class TestExport:
    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "export", "hirzebruch")
        document = json.loads(out)
        assert code == 0
        assert document["d"] == 3
        assert len(document["curves"]) == 4

    def test_round_trip_is_byte_identical(self, capsys, tmp_path):
        path = tmp_path / "hirzebruch.json"
        code, _, err = run(capsys, "export", "holzapfel", "--output", str(path))
        assert code == 0
        assert "Exported" in err
        assert dumps_configuration(read_configuration(path)) == path.read_text()

    def test_export_then_check(self, capsys, tmp_path):
        path = tmp_path / "d14.json"
        run(capsys, "export", "d14", "-o", str(path))
        _, from_file, _ = run(capsys, "check", str(path))
        _, from_catalog, _ = run(capsys, "check", "d14")
        file_report, catalog_report = json.loads(from_file), json.loads(from_catalog)
        file_report.pop("configuration")
        catalog_report.pop("configuration")
        assert file_report == catalog_report

    def test_unknown_key(self, capsys):
        code, _, _ = run(capsys, "export", "fermat")
        assert code == 1

    def test_csv_refused(self, capsys):
        code, _, _ = run(capsys, "export", "hirzebruch", "--format", "csv")
        assert code == 1


class TestEntryPoint:
    def test_no_command(self, capsys):
        code, out, _ = run(capsys)
        assert code == 1
        assert "usage" in out

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, "plot")
        assert code == 1

    def test_invalid_configuration(self, capsys, monkeypatch):
        monkeypatch.setattr(Config, "COSET_CAP", 0)
        code, _, err = run(capsys, "check", "hirzebruch")
        assert code == 1
        assert "CUSPFORGE_COSET_CAP" in err

    def test_coset_cap_is_enforced(self, capsys, monkeypatch):
        monkeypatch.setattr(Config, "COSET_CAP", 2)
        code, _, err = run(capsys, "pullback", "hirzebruch", "--alpha", "2+1w")
        assert code == 1
        assert "coset cap" in err

    def test_log_level_flag(self, capsys):
        code, _, err = run(capsys, "--log-level", "INFO", "check", "hirzebruch")
        assert code == 0
        assert "Singular locus" in err
