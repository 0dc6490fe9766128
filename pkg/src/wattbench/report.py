"""Render analysis cells as per-scenario tables, summaries and CSV.

The text tables mirror the analysis layout: one row per parameter value,
metric columns Time / CPU / Energy / VMS / RAM, each holding the
geometric-mean ratio and its confidence interval. Values are rounded
half-even to three decimals at render time only; the CSV keeps 12
significant digits so rounding stays a presentation concern.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path

from .errors import UnmappedScenarioError
from .ratiostats import CellResult, Classification, RatioSummary

# "RAM" is the rss metric; swap is carried in the CSV but not tabulated.
TABLE_COLUMNS = (("time", "Time"), ("cpu", "CPU"), ("energy", "Energy"),
                 ("vms", "VMS"), ("rss", "RAM"))

CSV_HEADER = ("scenario", "param", "metric", "n", "r_geo", "ci_low", "ci_high", "classification")

INSUFFICIENT = "INSUFFICIENT_DATA"


@dataclass(frozen=True)
class ScenarioTable:
    scenario: str
    # rows ordered by param, each mapping metric -> RatioSummary or None
    rows: tuple[tuple[object, dict[str, RatioSummary | None]], ...]


@dataclass(frozen=True)
class SummaryRow:
    category: str
    energy_ratio_low: float
    energy_ratio_high: float
    interpretation: str


def round3(x: float) -> str:
    """Three decimals, ties to even, as a string."""
    return str(Decimal(repr(x)).quantize(Decimal("0.001"), rounding=ROUND_HALF_EVEN))


def format_cell(summary: RatioSummary | None) -> str:
    """One metric cell: ratio and CI, or an explicit n/a."""
    if summary is None:
        return "n/a"
    return f"{round3(summary.r_geo)} & {round3(summary.ci_low)}--{round3(summary.ci_high)}"


def _param_sort_key(value):
    if isinstance(value, (int, float)):
        return (0, value)
    return (1, str(value))


def build_scenario_table(cells: list[CellResult]) -> ScenarioTable:
    """Group one scenario's cells into a table keyed by parameter value."""
    scenarios = {c.scenario for c in cells}
    if len(scenarios) != 1:
        raise ValueError(f"cells span more than one scenario: {sorted(scenarios)}")
    by_param: dict[object, dict[str, RatioSummary | None]] = {}
    for cell in cells:
        by_param.setdefault(cell.param_value, {})[cell.metric] = cell.summary
    rows = tuple(
        (param, {m: by_param[param].get(m) for m, _ in TABLE_COLUMNS})
        for param in sorted(by_param, key=_param_sort_key)
    )
    return ScenarioTable(scenario=scenarios.pop(), rows=rows)


def render_scenario_table(table: ScenarioTable, fmt: str = "text") -> str:
    """Render one scenario table as aligned text or a pipe table."""
    header = ["param"]
    for _, label in TABLE_COLUMNS:
        header += [f"{label} R", f"{label} CI"]
    body: list[list[str]] = []
    for param, summaries in table.rows:
        row = [format_param_text(param)]
        for metric, _ in TABLE_COLUMNS:
            s = summaries.get(metric)
            if s is None:
                row += ["n/a", "n/a"]
            else:
                row += [round3(s.r_geo), f"{round3(s.ci_low)}--{round3(s.ci_high)}"]
        body.append(row)

    lines = [f"Scenario: {table.scenario}"]
    if fmt == "pipe":
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "|".join("---" for _ in header) + "|")
        lines += ["| " + " | ".join(row) + " |" for row in body]
    elif fmt == "text":
        widths = [max(len(header[i]), *(len(r[i]) for r in body)) if body else len(header[i])
                  for i in range(len(header))]
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)) for row in body]
    else:
        raise ValueError(f"unknown table format: {fmt!r}")
    return "\n".join(lines) + "\n"


def render_summary(
    tables: list[ScenarioTable],
    category_map: dict[str, str],
    optimal_params: dict[str, list] | None = None,
) -> list[SummaryRow]:
    """Min/max energy ratio per scenario category over the "optimal" subset.

    ``optimal_params`` maps scenario to the parameter values to include;
    by default the top two parameter values of each scenario are used
    (the best-scaling end of the axis is machine-specific).
    """
    ranges: dict[str, list[float]] = {}
    for table in tables:
        if table.scenario not in category_map:
            raise UnmappedScenarioError(f"scenario {table.scenario!r} has no category")
        category = category_map[table.scenario]
        params = [p for p, _ in table.rows]
        if optimal_params and table.scenario in optimal_params:
            chosen = [p for p in params if p in optimal_params[table.scenario]]
        else:
            chosen = sorted(params, key=_param_sort_key)[-2:]
        for param, summaries in table.rows:
            if param not in chosen:
                continue
            s = summaries.get("energy")
            if s is not None:
                ranges.setdefault(category, []).append(s.r_geo)

    rows = []
    for category in sorted(ranges):
        low, high = min(ranges[category]), max(ranges[category])
        rows.append(SummaryRow(category, low, high, _interpret(low, high)))
    return rows


def _interpret(low: float, high: float) -> str:
    if high < 1.0:
        return f"{(1 - high) * 100:.0f}--{(1 - low) * 100:.0f}% less"
    if low > 1.0:
        return f"{(low - 1) * 100:.0f}--{(high - 1) * 100:.0f}% more"
    return "no consistent difference"


def format_param_text(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _fmt12(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


def cells_to_csv_rows(cells: list[CellResult]) -> list[tuple[str, ...]]:
    rows = []
    for c in cells:
        if c.summary is None:
            rows.append((c.scenario, format_param_text(c.param_value), c.metric,
                         str(c.n), "", "", "", INSUFFICIENT))
        else:
            s = c.summary
            rows.append((c.scenario, format_param_text(c.param_value), c.metric,
                         str(c.n), _fmt12(s.r_geo), _fmt12(s.ci_low), _fmt12(s.ci_high),
                         s.classification.value))
    return rows


def export_csv(cells: list[CellResult], path: Path | str) -> Path:
    """Write one CSV row per analysis cell, full precision."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        writer.writerows(cells_to_csv_rows(cells))
    return path


def render_csv_text(cells: list[CellResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_HEADER)
    writer.writerows(cells_to_csv_rows(cells))
    return buf.getvalue()


def parse_csv(path: Path | str) -> list[CellResult]:
    """Read an analysis CSV back into cells (inverse of export_csv)."""
    cells: list[CellResult] = []
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected analysis CSV header: {header}")
        for row in reader:
            scenario, param, metric, n, r_geo, ci_low, ci_high, cls = row
            param_value = _parse_param(param)
            if cls == INSUFFICIENT:
                cells.append(CellResult(scenario, param_value, metric, int(n), None))
                continue
            summary = RatioSummary(
                r_geo=float(r_geo), ci_low=float(ci_low), ci_high=float(ci_high),
                n=int(n), mean_log=float("nan"), sd_log=float("nan"),
                classification=Classification(cls),
            )
            cells.append(CellResult(scenario, param_value, metric, int(n), summary))
    return cells


def _parse_param(text: str):
    for caster in (int, float):
        try:
            return caster(text)
        except ValueError:
            continue
    return text
