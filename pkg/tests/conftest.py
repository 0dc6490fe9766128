from __future__ import annotations

import random
from pathlib import Path

import pytest

from wattbench.procsample import Sample
from wattbench.runner import RunRecord
from wattbench.tagstream import TagEvent


def make_powercap_tree(root: Path, domains: dict[str, tuple[int, int]],
                       labels: dict[str, str] | None = None) -> Path:
    """Lay out a mock powercap sysfs tree.

    ``domains`` maps directory names (e.g. "intel-rapl:0") to
    (counter_uj, max_energy_range_uj).
    """
    root.mkdir(parents=True, exist_ok=True)
    for name, (counter, max_range) in domains.items():
        d = root / name
        d.mkdir(exist_ok=True)
        (d / "energy_uj").write_text(f"{counter}\n")
        (d / "max_energy_range_uj").write_text(f"{max_range}\n")
        (d / "name").write_text((labels or {}).get(name, f"package-{name}") + "\n")
    return root


@pytest.fixture
def powercap_root(tmp_path):
    def _make(domains, labels=None):
        return make_powercap_tree(tmp_path / "powercap", domains, labels)
    return _make


def synth_run(
    rng: random.Random,
    *,
    region: str = "work",
    n_samples: int = 60,
    interval_ns: int = 50_000_000,
    with_energy: bool = True,
    energy_dropout: float = 0.0,
    exit_code: int = 0,
) -> RunRecord:
    """A randomized but well-formed RunRecord with the region tags inside
    the sampled span, for reduction and pairing tests."""
    t0 = 1_700_000_000_000_000_000 + rng.randrange(10**9)
    samples = []
    cum_uj = 0
    t = t0
    for i in range(n_samples):
        t += interval_ns + rng.randrange(-2_000_000, 2_000_000)
        delta = None
        if with_energy and rng.random() >= energy_dropout:
            delta = rng.randrange(0, 200_000)
            cum_uj += delta
        samples.append(Sample(
            t_ns=t,
            cpu_pct=rng.uniform(0, 100),
            rss_bytes=rng.randrange(10**6, 10**9),
            vms_bytes=rng.randrange(10**6, 10**10),
            swap_bytes=rng.randrange(0, 10**6),
            energy_delta_uj=delta,
            energy_cum_j=cum_uj / 1e6,
        ))
    # place the region so that at least one sample is inside
    lo = rng.randrange(0, n_samples - 2)
    hi = rng.randrange(lo + 1, n_samples)
    start_ns = samples[lo].t_ns - rng.randrange(1, interval_ns // 2)
    finish_ns = samples[hi].t_ns + rng.randrange(1, interval_ns // 2)
    tags = [
        TagEvent(t_ns=start_ns, name=f"start_{region}"),
        TagEvent(t_ns=finish_ns, name=f"finish_{region}"),
    ]
    return RunRecord(
        scenario="synth",
        param_value=1,
        build_id="b",
        rep_index=0,
        samples=samples,
        tags=tags,
        exit_code=exit_code,
        started_at=t0,
        metadata={"region": region},
    )
