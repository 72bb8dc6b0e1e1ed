"""SNR sweeps comparing closed-form and simulated BER, plus CSV/JSON output."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import analytic
from .errors import ConfigError
from .model import allocate_power, effective_snrs, mean_effective_snrs
from .sim import AwgnFixedGain, NoiseModel, RayleighFlat, SimConfig, simulate_ber

__all__ = [
    "SweepSpec",
    "SweepRow",
    "CSV_HEADER",
    "validate_spec",
    "snr_grid",
    "point_seed",
    "run_sweep",
    "write_output",
    "render_output",
    "read_rows",
]

MIN_TRIALS = 1000


@dataclass(frozen=True)
class SweepSpec:
    alpha: float
    total_power: float = 1.0
    snr_db_start: float = 0.0
    snr_db_stop: float = 30.0
    snr_db_step: float = 5.0
    channel: str = "rayleigh"
    fixed_gain: float = 1.0
    mean_power_nu: float = 1.0
    mean_power_fu: float = 1.0
    trials: int = 1_000_000
    seed: int = 0
    output_path: str | None = None
    format: str = "csv"
    workers: int = 1


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    ber_fu_analytic: float
    ber_fu_sim: float
    ber_fu_sim_stderr: float
    ber_nu_analytic: float
    ber_nu_sim: float
    ber_nu_sim_stderr: float
    ber_nu_class1_sim: float
    ber_nu_class2_sim: float
    agreement_sigma_fu: float
    agreement_sigma_nu: float


CSV_HEADER = ",".join(f.name for f in fields(SweepRow))


def validate_spec(spec: SweepSpec) -> SweepSpec:
    """Check every field and raise one ConfigError listing all violations."""
    problems = []

    def bad(field, bound, value):
        problems.append(f"{field} must be {bound}, got {value!r}")

    if not 0 < spec.alpha < 0.5:
        bad("alpha", "in (0, 0.5)", spec.alpha)
    if not spec.total_power > 0:
        bad("total_power", "> 0", spec.total_power)
    if not spec.snr_db_step > 0:
        bad("snr_db_step", "> 0", spec.snr_db_step)
    if not spec.snr_db_stop >= spec.snr_db_start:
        bad("snr_db_stop", f">= snr_db_start ({spec.snr_db_start})", spec.snr_db_stop)
    if spec.channel not in ("awgn", "rayleigh"):
        bad("channel", "one of {awgn, rayleigh}", spec.channel)
    if not spec.fixed_gain > 0:
        bad("fixed_gain", "> 0", spec.fixed_gain)
    if not spec.mean_power_nu > 0:
        bad("mean_power_nu", "> 0", spec.mean_power_nu)
    if not spec.mean_power_fu > 0:
        bad("mean_power_fu", "> 0", spec.mean_power_fu)
    if not spec.trials >= MIN_TRIALS:
        bad("trials", f">= {MIN_TRIALS}", spec.trials)
    if not 0 <= spec.seed < 2**64:
        bad("seed", "in [0, 2**64)", spec.seed)
    if spec.format not in ("csv", "json"):
        bad("format", "one of {csv, json}", spec.format)
    if not spec.workers >= 1:
        bad("workers", ">= 1", spec.workers)
    if problems:
        raise ConfigError(problems)
    return spec


def snr_grid(spec: SweepSpec) -> list[float]:
    count = int(math.floor((spec.snr_db_stop - spec.snr_db_start) / spec.snr_db_step + 1e-9)) + 1
    return [spec.snr_db_start + k * spec.snr_db_step for k in range(count)]


def point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1, np.uint64)[0])


def _agreement(reference, estimate):
    return estimate.sigma_distance(reference)


def run_point(spec: SweepSpec, snr_db: float, index: int) -> SweepRow:
    alloc = allocate_power(spec.alpha, spec.total_power)
    n0 = spec.total_power / 10 ** (snr_db / 10)
    if spec.channel == "awgn":
        power = spec.fixed_gain**2
        fu_snrs = effective_snrs(alloc, power, n0)
        nu_snrs = fu_snrs
        fu_ref = analytic.fu_ber_awgn(fu_snrs)
        nu_ref = analytic.nu_ber_awgn(nu_snrs).total
        channel = AwgnFixedGain(spec.fixed_gain)
        fu_channel = channel
    else:
        fu_ref = analytic.fu_ber_rayleigh(mean_effective_snrs(alloc, spec.mean_power_fu, n0))
        nu_ref = analytic.nu_ber_rayleigh(mean_effective_snrs(alloc, spec.mean_power_nu, n0))
        channel = RayleighFlat(spec.mean_power_nu)
        fu_channel = RayleighFlat(spec.mean_power_fu)
    config = SimConfig(
        trials=spec.trials, seed=point_seed(spec.seed, index), worker_count=spec.workers
    )
    res = simulate_ber(alloc, channel, NoiseModel(n0), config, fu_channel=fu_channel)
    return SweepRow(
        snr_db=snr_db,
        ber_fu_analytic=fu_ref,
        ber_fu_sim=res.fu.ber,
        ber_fu_sim_stderr=res.fu.std_error,
        ber_nu_analytic=nu_ref,
        ber_nu_sim=res.nu.ber,
        ber_nu_sim_stderr=res.nu.std_error,
        ber_nu_class1_sim=res.nu_class1.ber,
        ber_nu_class2_sim=res.nu_class2.ber,
        agreement_sigma_fu=_agreement(fu_ref, res.fu),
        agreement_sigma_nu=_agreement(nu_ref, res.nu),
    )


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """One row per SNR point (transmit SNR P_s/N0 in dB), ascending."""
    validate_spec(spec)
    return [run_point(spec, snr, k) for k, snr in enumerate(snr_grid(spec))]


def _fmt(v: float) -> str:
    if math.isinf(v):
        return "inf"
    return repr(float(v))


def _spec_dict(spec: SweepSpec) -> dict:
    d = asdict(spec)
    d.pop("workers")  # does not affect results; keep output worker-invariant
    return d


def render_output(rows: list[SweepRow], spec: SweepSpec) -> str:
    if not rows:
        raise ValueError("no rows to write")
    if spec.format == "json":
        payload = {
            "spec": _spec_dict(spec),
            "rows": [
                {k: ("inf" if isinstance(v, float) and math.isinf(v) else v)
                 for k, v in asdict(r).items()}
                for r in rows
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(",".join(_fmt(v) for v in asdict(r).values()) + "\n")
    return buf.getvalue()


def write_output(rows: list[SweepRow], spec: SweepSpec, path=None) -> Path:
    path = Path(path if path is not None else spec.output_path)
    text = render_output(rows, spec)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path


def _parse(v) -> float:
    return math.inf if v == "inf" else float(v)


def read_rows(path) -> list[SweepRow]:
    """Parse a CSV or JSON file written by :func:`write_output`."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        records = json.loads(text)["rows"]
    else:
        records = list(csv.DictReader(io.StringIO(text)))
    return [SweepRow(**{k: _parse(v) for k, v in rec.items()}) for rec in records]
