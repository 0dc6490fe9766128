"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Ordering note: the two sampling criteria share a single profiled 10 s
sleep child (module-scoped fixture) so the suite stays under a couple of
minutes end to end.
"""

from __future__ import annotations

import json
import math
import random
import shutil
import time
from contextlib import contextmanager

import pytest

from conftest import make_powercap_tree, synth_run
from mockbuilds import EnergyTicker, mock_config_dict
from oracles import aggregate_ref, classify_ref, reduce_region_bruteforce
from wattbench import cli, pipeline, powercap, regions, report
from wattbench.ratiostats import Classification, PairedSeries, aggregate, classify, t_quantile
from wattbench.runner import (
    config_from_dict,
    execute_matrix,
    execute_run,
    is_run_complete,
    matrix_cells,
    run_dir,
)


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL")
        raise
    print(f"[acceptance] {name}: PASS")


# -- statistics ---------------------------------------------------------------


def test_statistics_oracle_equivalence():
    with criterion("statistics-oracle-equivalence (1000 series, 1e-9 rel, <10s)"):
        t0 = time.perf_counter()
        rng = random.Random(0xACCE97)
        for _ in range(1000):
            n = rng.randint(2, 50)
            pairs = []
            for _ in range(n):
                ratio = math.exp(rng.uniform(math.log(0.01), math.log(100.0)))
                denom = rng.uniform(0.1, 10.0)
                pairs.append((ratio * denom, denom))
            ours = aggregate(PairedSeries("s", 0, "time", tuple(pairs)))
            ref = aggregate_ref(pairs)
            assert ours.r_geo == pytest.approx(ref["r_geo"], rel=1e-9)
            assert ours.ci_low == pytest.approx(ref["ci_low"], rel=1e-9)
            assert ours.ci_high == pytest.approx(ref["ci_high"], rel=1e-9)
            assert ours.classification.value == classify_ref(ref["ci_low"], ref["ci_high"])
        assert time.perf_counter() - t0 < 10.0


def test_t_quantile_accuracy():
    # frozen from a 40-digit inverse-CDF reference; agrees with standard
    # two-sided 95% tables
    table = {
        1: 12.7062, 2: 4.3027, 3: 3.1824, 4: 2.7764,
        5: 2.5706, 6: 2.4469, 7: 2.3646, 8: 2.306,
        9: 2.2622, 10: 2.2281, 11: 2.201, 12: 2.1788,
        13: 2.1604, 14: 2.1448, 15: 2.1314, 16: 2.1199,
        17: 2.1098, 18: 2.1009, 19: 2.093, 20: 2.086,
        21: 2.0796, 22: 2.0739, 23: 2.0687, 24: 2.0639,
        25: 2.0595, 26: 2.0555, 27: 2.0518, 28: 2.0484,
        29: 2.0452, 30: 2.0423, 100: 1.984, 1000000: 1.96,
    }
    with criterion("t-quantile-accuracy (dof 1..30, 100, 1e6, 1e-3 abs, <1s)"):
        t0 = time.perf_counter()
        for dof, expected in table.items():
            assert t_quantile(0.975, dof) == pytest.approx(expected, abs=1e-3)
        assert time.perf_counter() - t0 < 1.0


def test_classification_fixtures():
    with criterion("classification-fixtures (exact)"):
        assert classify(0.247, 0.253) is Classification.NOGIL_LOWER
        assert classify(0.994, 1.021) is Classification.INDISTINGUISHABLE
        assert classify(1.324, 1.368) is Classification.NOGIL_HIGHER


# -- powercap -----------------------------------------------------------------


def test_wraparound_suite():
    with criterion("wraparound-suite (fixtures + 10000 random pairs, exact)"):
        assert powercap.counter_delta(100, 250, 1000) == 150      # no wrap
        assert powercap.counter_delta(900, 50, 1000) == 150       # single wrap
        assert powercap.counter_delta(42, 42, 1000) == 0          # zero delta
        rng = random.Random(0xDE17A)
        max_range = 262_143_328_850  # realistic hardware wraparound range
        for _ in range(10_000):
            prev = rng.randrange(max_range)
            d = rng.randrange(max_range)
            cur = (prev + d) % max_range
            assert powercap.counter_delta(prev, cur, max_range) == d


# -- regions ------------------------------------------------------------------


def test_region_reduction_oracle():
    with criterion("region-reduction-oracle (200 runs, 1e-9 rel, energy identity)"):
        rng = random.Random(0x5EED)
        for _ in range(200):
            run = synth_run(rng, energy_dropout=rng.choice([0.0, 0.0, 0.2]))
            ours = regions.extract_region(run, "work")
            ref = reduce_region_bruteforce(run.samples, run.tags, "work")
            assert ours.elapsed_s == pytest.approx(ref["elapsed_s"], rel=1e-9)
            assert ours.cpu_mean_pct == pytest.approx(ref["cpu_mean_pct"], rel=1e-9)
            assert ours.peak_rss_bytes == ref["peak_rss_bytes"]
            assert ours.peak_vms_bytes == ref["peak_vms_bytes"]
            assert ours.peak_swap_bytes == ref["peak_swap_bytes"]
            if ref["energy_j"] is None:
                assert ours.energy_j is None and ours.power_mean_w is None
            else:
                assert ours.energy_j == pytest.approx(ref["energy_j"], rel=1e-9)
                assert ours.power_mean_w == pytest.approx(ref["power_mean_w"], rel=1e-9)
                assert ours.power_mean_w * ours.elapsed_s == pytest.approx(
                    ours.energy_j, rel=1e-9)


# -- sampling against a live child ---------------------------------------------


@pytest.fixture(scope="module")
def sleep_run(tmp_path_factory):
    """One 10 s tagged sleep child profiled at the default 50 ms interval."""
    tmp = tmp_path_factory.mktemp("sleep10")
    raw = mock_config_dict(tmp, param_values=(10,), sample_interval_ms=50.0)
    cfg = config_from_dict(raw)
    return execute_run(cfg.builds[0], cfg.scenarios[0], 10, 0, cfg, domains=[])


def test_sleep_validation(sleep_run):
    with criterion("sleep-validation (10 s child: elapsed in [9.9, 10.2], cpu < 1%)"):
        assert sleep_run.exit_code == 0
        metrics = regions.extract_region(sleep_run, "work")
        assert 9.9 <= metrics.elapsed_s <= 10.2
        assert metrics.cpu_mean_pct is not None
        assert metrics.cpu_mean_pct < 1.0


def test_sampling_cadence(sleep_run):
    with criterion("sampling-cadence (mean interval in [50, 60] ms, steps < interval)"):
        assert sleep_run.metadata["n_samples"] >= 100
        mean_ms = sleep_run.metadata["mean_interval_ms"]
        assert 50.0 <= mean_ms <= 60.0
        assert sleep_run.metadata["max_step_ms"] < 50.0


# -- end to end ----------------------------------------------------------------


def _e2e_config(tmp, *, param_values=(0.5, 0.8), repetitions=2):
    pc_root = make_powercap_tree(tmp / "pc", {"intel-rapl:0": (0, 10**12)})
    raw = mock_config_dict(
        tmp, param_values=param_values, repetitions=repetitions,
        cooldown_s=0.0, nogil_mult=1.5, powercap_root=pc_root,
    )
    return config_from_dict(raw), pc_root / "intel-rapl:0" / "energy_uj"


def test_end_to_end_mock_matrix(tmp_path):
    with criterion("end-to-end-mock-matrix (time ratios within 10% of 1.5, <2min)"):
        t0 = time.perf_counter()
        cfg, counter = _e2e_config(tmp_path)
        ticker = EnergyTicker(counter, rate_uj_per_s=2_000_000, max_range=10**12)
        ticker.start()
        try:
            records = execute_matrix(cfg)
        finally:
            ticker.stop()
        assert len(records) == 8

        assert cli.main(["analyze", "--dir", str(cfg.output_dir)]) == 0
        cells = report.parse_csv(cfg.output_dir / pipeline.ANALYSIS_FILENAME)
        assert [(c.param_value, c.metric) for c in cells] == [
            (p, m) for p in (0.5, 0.8)
            for m in ("time", "cpu", "energy", "vms", "rss", "swap")
        ]
        for param in (0.5, 0.8):
            time_cell = next(c for c in cells
                             if c.param_value == param and c.metric == "time")
            assert time_cell.summary is not None and time_cell.summary.n == 2
            assert abs(time_cell.summary.r_geo - 1.5) <= 0.15
            energy_cell = next(c for c in cells
                               if c.param_value == param and c.metric == "energy")
            assert energy_cell.summary is not None
            assert abs(energy_cell.summary.r_geo - 1.5) <= 0.4
        assert time.perf_counter() - t0 < 120.0


def test_matrix_completeness_and_resume(tmp_path):
    with criterion("matrix-completeness-and-resume (exact missing cells, stable bytes)"):
        cfg, counter = _e2e_config(tmp_path, param_values=(0.3, 0.5))
        ticker = EnergyTicker(counter)
        ticker.start()
        try:
            executed = []

            def interrupt_after_three(record):
                executed.append(record)
                if len(executed) == 3:
                    raise KeyboardInterrupt

            with pytest.raises(KeyboardInterrupt):
                execute_matrix(cfg, on_run_complete=interrupt_after_three)

            all_cells = [
                run_dir(cfg.output_dir, s.name, p, b.id, r)
                for s, p, b, r in matrix_cells(cfg)
            ]
            done_before = {c for c in all_cells if is_run_complete(c)}
            assert len(done_before) == 3
            started_before = {
                c: json.loads((c / "meta.json").read_text())["started_at"]
                for c in done_before
            }

            records = execute_matrix(cfg)
        finally:
            ticker.stop()

        # every cell present exactly once; completed cells were not re-run
        assert len(records) == 8
        assert all(is_run_complete(c) for c in all_cells)
        for c, started in started_before.items():
            assert json.loads((c / "meta.json").read_text())["started_at"] == started

        # analysis depends only on the raw cells: a bit-for-bit copy of the
        # resumed matrix analyzes to identical bytes, as does re-analyzing
        assert cli.main(["analyze", "--dir", str(cfg.output_dir)]) == 0
        resumed_csv = (cfg.output_dir / pipeline.ANALYSIS_FILENAME).read_bytes()

        clone = tmp_path / "clone"
        shutil.copytree(cfg.output_dir, clone)
        (clone / pipeline.ANALYSIS_FILENAME).unlink()
        assert cli.main(["analyze", "--dir", str(clone)]) == 0
        assert (clone / pipeline.ANALYSIS_FILENAME).read_bytes() == resumed_csv

        assert cli.main(["analyze", "--dir", str(cfg.output_dir)]) == 0
        assert (cfg.output_dir / pipeline.ANALYSIS_FILENAME).read_bytes() == resumed_csv
