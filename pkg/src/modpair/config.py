"""Run configuration: an INI file (``key = value`` under sections), normalized on load.

Recognised sections and keys, with defaults::

    [grid]        L = 30.0, N = 4096
    [tolerances]  spectral, membership, inner, appendix_a, gamma, borchers,
                  wiesbrock, contraction, orthogonality, dense, form_gap
    [probes]      count = 100, seed = 0, lambda_max = 18.0
    [phases]      phase1 = blaschke:-1i, phase2 = id
    [output]      report = , sweep =
"""
from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field, replace
from typing import Optional

from .phases import PhaseSyntaxError, parse_phase

DEFAULT_TOLERANCES = {
    "spectral": 1e-3,
    "membership": 1e-6,
    "inner": 1e-3,
    "appendix_a": 1e-3,
    "gamma": 1e-10,
    "borchers": 1e-8,
    "wiesbrock": 1e-7,
    "contraction": 1e-6,
    "orthogonality": 1e-3,
    "dense": 1e-6,
    "form_gap": 1e-9,
}


class ConfigError(ValueError):
    """Bad configuration; the message names the offending field."""


@dataclass(frozen=True)
class RunConfig:
    L: float = 30.0
    N: int = 4096
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    probe_count: int = 100
    seed: int = 0
    lambda_max: float = 18.0
    phase1: str = "blaschke:-1i"
    phase2: str = "id"
    report_path: str = ""
    sweep_path: str = ""

    def normalized(self) -> "RunConfig":
        return normalize(self)

    def as_dict(self) -> dict:
        return {
            "grid": {"L": self.L, "N": self.N},
            "tolerances": dict(sorted(self.tolerances.items())),
            "probes": {"count": self.probe_count, "seed": self.seed, "lambda_max": self.lambda_max},
            "phases": {"phase1": self.phase1, "phase2": self.phase2},
            "output": {"report": self.report_path, "sweep": self.sweep_path},
        }

    def to_ini(self) -> str:
        cp = configparser.ConfigParser()
        for sec, kv in self.as_dict().items():
            cp[sec] = {k: _fmt(v) for k, v in kv.items()}
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue()


def _fmt(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def _float(name: str, raw) -> float:
    try:
        v = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected a number, got {raw!r}") from None
    if v != v or v in (float("inf"), float("-inf")):
        raise ConfigError(f"{name}: must be finite, got {raw!r}")
    return v


def _int(name: str, raw) -> int:
    try:
        f = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: expected an integer, got {raw!r}") from None
    if f != int(f):
        raise ConfigError(f"{name}: expected an integer, got {raw!r}")
    return int(f)


def normalize(cfg: RunConfig) -> RunConfig:
    L = _float("grid.L", cfg.L)
    if L <= 0:
        raise ConfigError(f"grid.L: must be positive, got {cfg.L!r}")
    N = _int("grid.N", cfg.N)
    if N < 16 or N % 2:
        raise ConfigError(f"grid.N: must be an even integer >= 16, got {cfg.N!r}")
    tols = {}
    for k, v in cfg.tolerances.items():
        if k not in DEFAULT_TOLERANCES:
            raise ConfigError(f"tolerances.{k}: unknown tolerance")
        t = _float(f"tolerances.{k}", v)
        if t <= 0:
            raise ConfigError(f"tolerances.{k}: must be positive, got {v!r}")
        tols[k] = t
    tols = {**DEFAULT_TOLERANCES, **tols}
    count = _int("probes.count", cfg.probe_count)
    if count < 1:
        raise ConfigError(f"probes.count: must be positive, got {cfg.probe_count!r}")
    seed = _int("probes.seed", cfg.seed)
    if seed < 0:
        raise ConfigError(f"probes.seed: must be nonnegative, got {cfg.seed!r}")
    lam = _float("probes.lambda_max", cfg.lambda_max)
    if lam <= 0:
        raise ConfigError(f"probes.lambda_max: must be positive, got {cfg.lambda_max!r}")
    phases = []
    for name, spec in (("phases.phase1", cfg.phase1), ("phases.phase2", cfg.phase2)):
        try:
            phases.append(parse_phase(str(spec)).spec())
        except PhaseSyntaxError as exc:
            raise ConfigError(f"{name}: {exc}") from None
    return RunConfig(L, N, dict(sorted(tols.items())), count, seed, lam, phases[0], phases[1],
                     str(cfg.report_path), str(cfg.sweep_path))


_KEYS = {
    ("grid", "l"): "L", ("grid", "n"): "N",
    ("probes", "count"): "probe_count", ("probes", "seed"): "seed",
    ("probes", "lambda_max"): "lambda_max",
    ("phases", "phase1"): "phase1", ("phases", "phase2"): "phase2",
    ("output", "report"): "report_path", ("output", "sweep"): "sweep_path",
}


def parse_config(text: str) -> RunConfig:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config: {exc.message if hasattr(exc, 'message') else exc}") from None
    kw: dict = {}
    tols: dict = {}
    for sec in cp.sections():
        if sec not in ("grid", "tolerances", "probes", "phases", "output"):
            raise ConfigError(f"{sec}: unknown section")
        for key, val in cp[sec].items():
            if sec == "tolerances":
                tols[key] = val
            elif (sec, key) in _KEYS:
                kw[_KEYS[sec, key]] = val
            else:
                raise ConfigError(f"{sec}.{key}: unknown key")
    if tols:
        kw["tolerances"] = tols
    return normalize(RunConfig(**kw))


def load_config(path: Optional[str]) -> RunConfig:
    if not path:
        return normalize(RunConfig())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc.strerror}") from None
    return parse_config(text)


def with_overrides(cfg: RunConfig, **over) -> RunConfig:
    """Apply non-None overrides (CLI flags) and renormalize."""
    return normalize(replace(cfg, **{k: v for k, v in over.items() if v is not None}))
