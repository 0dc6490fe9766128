from __future__ import annotations

import pytest

from wattbench import report
from wattbench.errors import UnmappedScenarioError
from wattbench.ratiostats import CellResult, Classification, RatioSummary


def make_summary(r, lo, hi, n=10):
    from wattbench.ratiostats import classify
    return RatioSummary(r_geo=r, ci_low=lo, ci_high=hi, n=n, mean_log=0.0,
                        sd_log=0.0, classification=classify(lo, hi))


def cell(scenario, param, metric, summ, n=10):
    return CellResult(scenario, param, metric, n if summ else 1, summ)


class TestRounding:
    def test_paper_style_cell(self):
        s = make_summary(1.3456, 1.3241, 1.3684)
        assert report.format_cell(s) == "1.346 & 1.324--1.368"

    def test_exact_one(self):
        s = make_summary(1.0, 1.0, 1.0)
        assert report.format_cell(s) == "1.000 & 1.000--1.000"

    def test_missing_cell(self):
        assert report.format_cell(None) == "n/a"

    def test_half_even(self):
        assert report.round3(0.2505) == "0.250"
        assert report.round3(0.2515) == "0.252"
        assert report.round3(2.0) == "2.000"


class TestScenarioTable:
    def _cells(self):
        cells = []
        for i, param in enumerate((5000, 25000)):
            for metric in ("time", "cpu", "energy", "vms", "rss"):
                cells.append(cell("bubble", param, metric,
                                  make_summary(1.3 + i / 10, 1.2, 1.4)))
        return cells

    def test_rows_sorted_by_param(self):
        cells = self._cells()
        table = report.build_scenario_table(list(reversed(cells)))
        assert [p for p, _ in table.rows] == [5000, 25000]

    def test_text_render_contains_all_columns(self):
        text = report.render_scenario_table(report.build_scenario_table(self._cells()))
        assert "Scenario: bubble" in text
        for label in ("Time", "CPU", "Energy", "VMS", "RAM"):
            assert f"{label} R" in text
            assert f"{label} CI" in text
        assert "1.300" in text and "1.200--1.400" in text

    def test_missing_metric_renders_na(self):
        cells = [cell("s", 1, "time", make_summary(1.0, 0.9, 1.1)),
                 cell("s", 1, "energy", None)]
        text = report.render_scenario_table(report.build_scenario_table(cells))
        assert "n/a" in text

    def test_pipe_format(self):
        text = report.render_scenario_table(
            report.build_scenario_table(self._cells()), fmt="pipe")
        assert text.splitlines()[1].startswith("| param |")

    def test_mixed_scenarios_rejected(self):
        cells = [cell("a", 1, "time", make_summary(1, 1, 1)),
                 cell("b", 1, "time", make_summary(1, 1, 1))]
        with pytest.raises(ValueError):
            report.build_scenario_table(cells)

    def test_deterministic(self):
        cells = self._cells()
        t1 = report.render_scenario_table(report.build_scenario_table(cells))
        t2 = report.render_scenario_table(report.build_scenario_table(cells))
        assert t1 == t2


class TestSummary:
    def _tables(self):
        cells = []
        for scenario, ratios in (("factorial", {6: 0.250, 12: 0.254}),
                                 ("nbody", {6: 0.232, 12: 0.226})):
            for w, r in ratios.items():
                cells.append(cell(scenario, w, "energy", make_summary(r, r - .01, r + .01)))
        return [report.build_scenario_table([c for c in cells if c.scenario == s])
                for s in ("factorial", "nbody")]

    def test_category_range(self):
        rows = report.render_summary(
            self._tables(),
            {"factorial": "threaded-numerical", "nbody": "threaded-numerical"},
            optimal_params={"factorial": [6, 12], "nbody": [6, 12]},
        )
        (row,) = rows
        assert row.category == "threaded-numerical"
        assert row.energy_ratio_low == pytest.approx(0.226)
        assert row.energy_ratio_high == pytest.approx(0.254)
        assert "less" in row.interpretation

    def test_default_subset_is_top_two_params(self):
        cells = [cell("s", w, "energy", make_summary(r, r, r))
                 for w, r in ((1, 5.0), (2, 3.0), (6, 0.5), (12, 0.6))]
        rows = report.render_summary([report.build_scenario_table(cells)], {"s": "cat"})
        (row,) = rows
        assert (row.energy_ratio_low, row.energy_ratio_high) == (0.5, 0.6)

    def test_single_cell_range(self):
        cells = [cell("s", 1, "energy", make_summary(1.2, 1.1, 1.3))]
        (row,) = report.render_summary([report.build_scenario_table(cells)], {"s": "c"})
        assert row.energy_ratio_low == row.energy_ratio_high == pytest.approx(1.2)

    def test_unmapped_scenario(self):
        cells = [cell("mystery", 1, "energy", make_summary(1, 1, 1))]
        with pytest.raises(UnmappedScenarioError):
            report.render_summary([report.build_scenario_table(cells)], {})


class TestCsv:
    def _cells(self):
        return [
            cell("s", 10, "time", make_summary(1.23456789012345, 1.1, 1.4)),
            cell("s", 10, "energy", None),
        ]

    def test_export_and_parse_roundtrip(self, tmp_path):
        path = report.export_csv(self._cells(), tmp_path / "analysis.csv")
        parsed = report.parse_csv(path)
        assert len(parsed) == 2
        time_cell = parsed[0]
        assert time_cell.summary.r_geo == pytest.approx(1.23456789012345, rel=1e-11)
        assert time_cell.summary.classification is Classification.NOGIL_HIGHER
        assert parsed[1].summary is None

    def test_header_and_row_count(self, tmp_path):
        path = report.export_csv(self._cells(), tmp_path / "a.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "scenario,param,metric,n,r_geo,ci_low,ci_high,classification"
        assert len(lines) == 3

    def test_empty_input_header_only(self, tmp_path):
        path = report.export_csv([], tmp_path / "a.csv")
        assert path.read_text().splitlines() == [
            "scenario,param,metric,n,r_geo,ci_low,ci_high,classification"]

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(OSError):
            report.export_csv([], tmp_path / "missing-dir" / "a.csv")

    def test_insufficient_row_marker(self, tmp_path):
        path = report.export_csv(self._cells(), tmp_path / "a.csv")
        assert "INSUFFICIENT_DATA" in path.read_text()
