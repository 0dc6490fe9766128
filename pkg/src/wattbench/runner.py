"""Execute the experiment matrix: scenarios x parameters x builds x reps.

Exactly one child runs at a time (energy counters are system-wide, so
concurrent children would contaminate each other). Within a repetition
both builds run back-to-back, and the build order alternates across
repetitions to balance slow thermal drift over the pair. Each run is
persisted to its own directory the moment it finishes, so an interrupted
matrix resumes by skipping completed cells.
"""

from __future__ import annotations

import json
import logging
import os
import platform
import shlex
import socket
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import powercap
from .errors import ConfigError, EmptyTreeError, SpawnFailureError, WattbenchError
from .powercap import EnergyDomain
from .procsample import Sample, SamplingSession
from .tagstream import TAG_FILE_ENV, TAG_NAME_RE, TagEvent, read_tag_file

logger = logging.getLogger(__name__)

SAMPLES_FILENAME = "samples.csv"
TAGS_FILENAME = "tags.tsv"
META_FILENAME = "meta.json"
MANIFEST_FILENAME = "matrix.json"
SAMPLES_HEADER = "t_ns,cpu_pct,rss_bytes,vms_bytes,swap_bytes,energy_delta_uj"


@dataclass(frozen=True)
class BuildSpec:
    id: str
    command: tuple[str, ...]
    env_overrides: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    script: str
    region: str
    param_name: str
    param_values: tuple


@dataclass(frozen=True)
class ExperimentConfig:
    """The full experiment matrix.

    ``builds`` holds exactly two entries: the denominator (baseline)
    build first, the numerator build second; ratios are numerator over
    denominator. ``energy_domains`` optionally restricts the counters
    summed per sample to explicit domain ids instead of all packages.
    """

    builds: tuple[BuildSpec, BuildSpec]
    scenarios: tuple[ScenarioSpec, ...]
    output_dir: Path
    repetitions: int = 10
    cooldown_s: float = 60.0
    sample_interval_ms: float = 50.0
    powercap_root: Path = powercap.DEFAULT_POWERCAP_ROOT
    energy_domains: tuple[str, ...] | None = None


@dataclass
class RunRecord:
    """Everything recorded about one execution of one scenario cell."""

    scenario: str
    param_value: object
    build_id: str
    rep_index: int
    samples: list[Sample]
    tags: list[TagEvent]
    exit_code: int
    started_at: int
    metadata: dict

    @property
    def run_id(self) -> str:
        return f"{self.scenario}/{self.param_value}/{self.build_id}/{self.rep_index}"


# -- configuration ------------------------------------------------------------


def _require(mapping: dict, key: str, types, path: str):
    if key not in mapping:
        raise ConfigError(f"{path}.{key}: missing")
    value = mapping[key]
    if not isinstance(value, types):
        raise ConfigError(f"{path}.{key}: expected {types}, got {type(value).__name__}")
    return value


def _reject_unknown(mapping: dict, allowed: set[str], path: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"{path}: unknown keys {sorted(unknown)}")


def _build_from_dict(d: dict, path: str) -> BuildSpec:
    _reject_unknown(d, {"id", "command", "env_overrides"}, path)
    build_id = _require(d, "id", str, path)
    command = _require(d, "command", list, path)
    if not command or not all(isinstance(c, str) for c in command):
        raise ConfigError(f"{path}.command: must be a non-empty list of strings")
    env = d.get("env_overrides", {})
    if not isinstance(env, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in env.items()
    ):
        raise ConfigError(f"{path}.env_overrides: must map strings to strings")
    return BuildSpec(id=build_id, command=tuple(command), env_overrides=dict(env))


def _scenario_from_dict(d: dict, path: str) -> ScenarioSpec:
    _reject_unknown(d, {"name", "script", "region", "param_name", "param_values"}, path)
    name = _require(d, "name", str, path)
    script = _require(d, "script", str, path)
    region = _require(d, "region", str, path)
    if not TAG_NAME_RE.match(region):
        raise ConfigError(f"{path}.region: illegal tag name {region!r}")
    param_name = _require(d, "param_name", str, path)
    values = _require(d, "param_values", list, path)
    if not values:
        raise ConfigError(f"{path}.param_values: must not be empty")
    return ScenarioSpec(name=name, script=script, region=region,
                        param_name=param_name, param_values=tuple(values))


def config_from_dict(d: dict) -> ExperimentConfig:
    """Validate a parsed config document; unknown keys are rejected."""
    _reject_unknown(d, {
        "builds", "scenarios", "output_dir", "repetitions", "cooldown_s",
        "sample_interval_ms", "powercap_root", "energy_domains",
    }, "config")
    builds_raw = _require(d, "builds", list, "config")
    if len(builds_raw) != 2:
        raise ConfigError("config.builds: exactly two builds required "
                          "(denominator first, numerator second)")
    builds = tuple(_build_from_dict(b, f"config.builds[{i}]") for i, b in enumerate(builds_raw))
    if builds[0].id == builds[1].id:
        raise ConfigError("config.builds: ids must be unique")
    scenarios_raw = _require(d, "scenarios", list, "config")
    if not scenarios_raw:
        raise ConfigError("config.scenarios: must not be empty")
    scenarios = tuple(
        _scenario_from_dict(s, f"config.scenarios[{i}]") for i, s in enumerate(scenarios_raw)
    )
    if len({s.name for s in scenarios}) != len(scenarios):
        raise ConfigError("config.scenarios: names must be unique")

    repetitions = d.get("repetitions", 10)
    if not isinstance(repetitions, int) or repetitions < 2:
        raise ConfigError("config.repetitions: must be an integer >= 2 "
                          "(the confidence interval needs n-1 >= 1 degrees of freedom)")
    cooldown_s = d.get("cooldown_s", 60.0)
    if not isinstance(cooldown_s, (int, float)) or cooldown_s < 0:
        raise ConfigError("config.cooldown_s: must be a non-negative number")
    interval_ms = d.get("sample_interval_ms", 50.0)
    if not isinstance(interval_ms, (int, float)) or interval_ms <= 0:
        raise ConfigError("config.sample_interval_ms: must be a positive number")
    output_dir = _require(d, "output_dir", str, "config")
    energy_domains = d.get("energy_domains")
    if energy_domains is not None:
        if not isinstance(energy_domains, list) or not all(
            isinstance(x, str) for x in energy_domains
        ):
            raise ConfigError("config.energy_domains: must be a list of domain ids")
        energy_domains = tuple(energy_domains)

    return ExperimentConfig(
        builds=builds,
        scenarios=scenarios,
        output_dir=Path(output_dir),
        repetitions=repetitions,
        cooldown_s=float(cooldown_s),
        sample_interval_ms=float(interval_ms),
        powercap_root=Path(d.get("powercap_root", str(powercap.DEFAULT_POWERCAP_ROOT))),
        energy_domains=energy_domains,
    )


def load_config(path: Path | str) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return config_from_dict(raw)


# -- run execution ------------------------------------------------------------


def format_param(value) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def run_dir(output_dir: Path, scenario: str, param, build_id: str, rep: int) -> Path:
    return Path(output_dir) / scenario / format_param(param) / build_id / str(rep)


def select_domains(cfg: ExperimentConfig) -> list[EnergyDomain]:
    """Resolve the energy domains for a session; empty list disables energy."""
    try:
        discovered = powercap.discover_domains(cfg.powercap_root)
    except EmptyTreeError:
        logger.warning("no powercap domains under %s; energy disabled", cfg.powercap_root)
        return []
    if cfg.energy_domains is None:
        return powercap.package_domains(discovered)
    by_id = {d.id: d for d in discovered}
    missing = [i for i in cfg.energy_domains if i not in by_id]
    if missing:
        raise ConfigError(f"config.energy_domains: not found in tree: {missing}")
    # explicit selection is honored as-is, subdomains included
    return [
        EnergyDomain(d.id, d.label, d.max_energy_range_uj, d.counter_path, True)
        for d in (by_id[i] for i in cfg.energy_domains)
    ]


def _scenario_argv(scenario: ScenarioSpec, param) -> list[str]:
    text = scenario.script
    if "{param}" in text or "{param_name}" in text:
        text = text.replace("{param}", format_param(param))
        text = text.replace("{param_name}", scenario.param_name)
        return shlex.split(text)
    return shlex.split(text) + [f"--{scenario.param_name}", format_param(param)]


def _host_metadata(cfg: ExperimentConfig, domains: list[EnergyDomain]) -> dict:
    governor = None
    gov_path = Path("/sys/devices/system/cpu/cpu0/cpufreq/scaling_governor")
    try:
        governor = gov_path.read_text().strip()
    except OSError:
        pass
    return {
        "host": socket.gethostname(),
        "platform": platform.platform(),
        "n_cores": os.cpu_count() or 1,
        "sample_interval_ms": cfg.sample_interval_ms,
        "energy_domains": [d.id for d in domains],
        "energy_scope": "system-wide, no idle-baseline subtraction",
        "energy_subdomains_included": cfg.energy_domains is not None,
        "cpufreq_governor": governor,
    }


def execute_run(
    build: BuildSpec,
    scenario: ScenarioSpec,
    param,
    rep: int,
    cfg: ExperimentConfig,
    domains: list[EnergyDomain] | None = None,
) -> RunRecord:
    """Spawn one child under the sampler and persist the raw result.

    The child inherits the environment plus the build's overrides and a
    fresh ``WATTBENCH_TAG_FILE`` path inside the run directory.
    """
    if domains is None:
        domains = select_domains(cfg)
    rdir = run_dir(cfg.output_dir, scenario.name, param, build.id, rep)
    rdir.mkdir(parents=True, exist_ok=True)
    tag_path = rdir / TAGS_FILENAME
    tag_path.unlink(missing_ok=True)

    argv = list(build.command) + _scenario_argv(scenario, param)
    env = dict(os.environ)
    env.update(build.env_overrides)
    env[TAG_FILE_ENV] = str(tag_path)

    started_at = time.time_ns()
    log_path = rdir / "child.log"
    try:
        with log_path.open("wb") as log_fh:
            proc = subprocess.Popen(argv, env=env, stdout=log_fh, stderr=subprocess.STDOUT)
    except OSError as exc:
        raise SpawnFailureError(f"cannot spawn {argv}: {exc}") from exc

    session = SamplingSession(
        proc.pid, interval_s=cfg.sample_interval_ms / 1000.0, domains=domains
    )
    session.start()
    exit_code = proc.wait()
    session.stop()
    duration_s = (time.time_ns() - started_at) / 1e9

    metadata = _host_metadata(cfg, domains)
    metadata.update({
        "region": scenario.region,
        "command": argv,
        "duration_s": duration_s,
        "n_samples": len(session.samples),
        "mean_interval_ms": None if session.mean_interval_s is None
                            else session.mean_interval_s * 1000,
        "max_step_ms": None if session.max_step_s is None else session.max_step_s * 1000,
    })
    record = RunRecord(
        scenario=scenario.name,
        param_value=param,
        build_id=build.id,
        rep_index=rep,
        samples=session.samples,
        tags=read_tag_file(tag_path),
        exit_code=exit_code,
        started_at=started_at,
        metadata=metadata,
    )
    _write_samples(record.samples, rdir / SAMPLES_FILENAME)
    _write_meta(record, rdir)
    if exit_code != 0:
        logger.warning("run %s exited with code %d (kept, marked invalid)",
                       record.run_id, exit_code)
    return record


def matrix_cells(cfg: ExperimentConfig):
    """Deterministic run order: builds alternate across repetitions (ABBA)."""
    for scenario in cfg.scenarios:
        for param in scenario.param_values:
            for rep in range(cfg.repetitions):
                ordered = cfg.builds if rep % 2 == 0 else tuple(reversed(cfg.builds))
                for build in ordered:
                    yield scenario, param, build, rep


def is_run_complete(rdir: Path) -> bool:
    meta = rdir / META_FILENAME
    if not meta.exists():
        return False
    try:
        return bool(json.loads(meta.read_text()).get("completed"))
    except (OSError, json.JSONDecodeError):
        return False


def execute_matrix(cfg: ExperimentConfig, on_run_complete=None) -> list[RunRecord]:
    """Run every outstanding cell of the matrix, cooling down between runs.

    Already-completed cells are loaded from disk and skipped, so a matrix
    interrupted at any point resumes where it left off. ``on_run_complete``
    is an optional progress callback receiving each fresh RunRecord.
    """
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    write_manifest(cfg)
    domains = select_domains(cfg)
    records: list[RunRecord] = []
    executed_before = False
    total = sum(1 for _ in matrix_cells(cfg))
    done = 0
    for scenario, param, build, rep in matrix_cells(cfg):
        done += 1
        rdir = run_dir(cfg.output_dir, scenario.name, param, build.id, rep)
        if is_run_complete(rdir):
            records.append(load_run_record(rdir))
            continue
        if executed_before and cfg.cooldown_s > 0:
            logger.info("cooldown %.0fs", cfg.cooldown_s)
            time.sleep(cfg.cooldown_s)
        logger.info("run %d/%d: %s param=%s build=%s rep=%d",
                    done, total, scenario.name, param, build.id, rep)
        record = execute_run(build, scenario, param, rep, cfg, domains)
        executed_before = True
        records.append(record)
        if on_run_complete is not None:
            on_run_complete(record)
    return records


# -- persistence --------------------------------------------------------------


def write_manifest(cfg: ExperimentConfig) -> Path:
    manifest = {
        "builds": [
            {"id": b.id, "command": list(b.command), "env_overrides": b.env_overrides}
            for b in cfg.builds
        ],
        "scenarios": [
            {"name": s.name, "script": s.script, "region": s.region,
             "param_name": s.param_name, "param_values": list(s.param_values)}
            for s in cfg.scenarios
        ],
        "repetitions": cfg.repetitions,
        "cooldown_s": cfg.cooldown_s,
        "sample_interval_ms": cfg.sample_interval_ms,
        "powercap_root": str(cfg.powercap_root),
        "energy_domains": list(cfg.energy_domains) if cfg.energy_domains else None,
    }
    path = cfg.output_dir / MANIFEST_FILENAME
    path.write_text(json.dumps(manifest, indent=1) + "\n")
    return path


def read_manifest(output_dir: Path | str) -> dict:
    path = Path(output_dir) / MANIFEST_FILENAME
    if not path.exists():
        raise WattbenchError(f"{path} not found; was this directory produced by a run?")
    return json.loads(path.read_text())


def _write_samples(samples: list[Sample], path: Path) -> None:
    lines = [SAMPLES_HEADER]
    for s in samples:
        energy = "" if s.energy_delta_uj is None else str(s.energy_delta_uj)
        lines.append(f"{s.t_ns},{s.cpu_pct!r},{s.rss_bytes},{s.vms_bytes},"
                     f"{s.swap_bytes},{energy}")
    path.write_text("\n".join(lines) + "\n")


def _read_samples(path: Path) -> list[Sample]:
    samples: list[Sample] = []
    if not path.exists():
        return samples
    cum_uj = 0
    lines = path.read_text().splitlines()
    if lines and lines[0] != SAMPLES_HEADER:
        raise WattbenchError(f"{path}: unexpected header {lines[0]!r}")
    for line in lines[1:]:
        if not line.strip():
            continue
        t_ns, cpu_pct, rss, vms, swap, energy = line.split(",")
        delta = int(energy) if energy else None
        if delta is not None:
            cum_uj += delta
        samples.append(Sample(
            t_ns=int(t_ns), cpu_pct=float(cpu_pct), rss_bytes=int(rss),
            vms_bytes=int(vms), swap_bytes=int(swap),
            energy_delta_uj=delta, energy_cum_j=cum_uj / 1e6,
        ))
    return samples


def _write_meta(record: RunRecord, rdir: Path) -> None:
    meta = {
        "scenario": record.scenario,
        "param_value": record.param_value,
        "build_id": record.build_id,
        "rep_index": record.rep_index,
        "exit_code": record.exit_code,
        "started_at": record.started_at,
        "metadata": record.metadata,
        "completed": True,
    }
    tmp = rdir / (META_FILENAME + ".tmp")
    tmp.write_text(json.dumps(meta, indent=1) + "\n")
    os.replace(tmp, rdir / META_FILENAME)  # atomic: a crash never leaves a half-written meta


def load_run_record(rdir: Path | str) -> RunRecord:
    rdir = Path(rdir)
    meta = json.loads((rdir / META_FILENAME).read_text())
    return RunRecord(
        scenario=meta["scenario"],
        param_value=meta["param_value"],
        build_id=meta["build_id"],
        rep_index=meta["rep_index"],
        samples=_read_samples(rdir / SAMPLES_FILENAME),
        tags=read_tag_file(rdir / TAGS_FILENAME),
        exit_code=meta["exit_code"],
        started_at=meta["started_at"],
        metadata=meta["metadata"],
    )


def iter_run_records(output_dir: Path | str):
    """Yield every persisted run under an output directory, manifest order."""
    output_dir = Path(output_dir)
    manifest = read_manifest(output_dir)
    for scenario in manifest["scenarios"]:
        for param in scenario["param_values"]:
            for build in manifest["builds"]:
                for rep in range(manifest["repetitions"]):
                    rdir = run_dir(output_dir, scenario["name"], param, build["id"], rep)
                    if (rdir / META_FILENAME).exists():
                        yield load_run_record(rdir)
