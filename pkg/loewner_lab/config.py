"""
config.py — SuiteConfig, the validated description of one verification run, and the
merge of its four sources.

Precedence, lowest to highest:
    built-in defaults
    LOEWNER_LAB_* environment (a .env file is honoured via python-dotenv)
    a flat key=value config file (--config PATH)
    command-line flags

List-valued keys accept comma-separated strings everywhere, so a config file line and
a flag spell a value the same way: `bounds=1:4,1.5:4`.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Literal, Mapping, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigError, InvalidParams
from .linalg import MAX_DIM, SpectrumBound
from .registry import RESULT_IDS, get_family, get_map_kind, get_result_id

ENV_PREFIX = "LOEWNER_LAB_"

DEFAULT_BOUNDS = ("1:4", "1.5:4", "1:1.5")
DEFAULT_FUNCTIONS = ("inv", "inv_sq", "inv_sqrt", "exp", "exp_neg", "harmonic_m1", "sqrt", "sq")
DEFAULT_MAPS = ("identity", "compression", "unitary_mixture", "pinching", "trace_state")
DEFAULT_EXPONENTS = (-0.5, -1.0, -2.0)


def _split(v: Any) -> Any:
    if isinstance(v, str):
        return tuple(p.strip() for p in v.split(",") if p.strip())
    return v


class SuiteConfig(BaseModel):
    """One verification run. Frozen so a run can echo exactly what it executed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    results: tuple[str, ...] = RESULT_IDS
    dims: tuple[int, ...] = (1, 2, 4, 8)
    trials: int = Field(default=200, ge=1)
    bounds: tuple[str, ...] = DEFAULT_BOUNDS
    functions: tuple[str, ...] = DEFAULT_FUNCTIONS
    exponents: tuple[float, ...] = DEFAULT_EXPONENTS
    maps: tuple[str, ...] = DEFAULT_MAPS
    seed: int = Field(default=42, ge=0, lt=2 ** 64)
    rtol: float = Field(default=1e-9, gt=0, lt=1e-2)
    format: Literal["json", "csv"] = "json"
    out: Optional[Path] = None
    workers: int = Field(default=1, ge=1, le=64)
    dump_dir: Optional[Path] = None

    @field_validator("results", "dims", "bounds", "functions", "exponents", "maps", mode="before")
    @classmethod
    def _comma_lists(cls, v):
        return _split(v)

    @field_validator("results")
    @classmethod
    def _known_results(cls, v):
        if tuple(v) in ((), ("all",)):
            return RESULT_IDS
        try:
            ids = {get_result_id(r) for r in v}
        except KeyError as exc:
            raise ValueError(exc.args[0]) from exc
        return tuple(r for r in RESULT_IDS if r in ids)

    @field_validator("dims")
    @classmethod
    def _dims_in_range(cls, v):
        if not v:
            raise ValueError("at least one dimension is required")
        for n in v:
            if not 1 <= n <= MAX_DIM:
                raise ValueError(f"dimension {n} is outside 1..{MAX_DIM}")
        return tuple(dict.fromkeys(v))

    @field_validator("bounds")
    @classmethod
    def _bounds_parse(cls, v):
        if not v:
            raise ValueError("at least one m:M interval is required")
        try:
            return tuple(SpectrumBound.parse(b).label() for b in v)
        except InvalidParams as exc:
            raise ValueError(str(exc)) from exc

    @field_validator("functions")
    @classmethod
    def _known_functions(cls, v):
        try:
            return tuple(dict.fromkeys(get_family(f).code for f in v))
        except KeyError as exc:
            raise ValueError(exc.args[0]) from exc

    @field_validator("exponents")
    @classmethod
    def _negative_exponents(cls, v):
        if not v:
            raise ValueError("at least one exponent is required")
        bad = [t for t in v if not t < 0]
        if bad:
            raise ValueError(f"exponents must be negative, got {bad}")
        return tuple(v)

    @field_validator("maps")
    @classmethod
    def _known_maps(cls, v):
        try:
            return tuple(dict.fromkeys(get_map_kind(m).value for m in v))
        except KeyError as exc:
            raise ValueError(exc.args[0]) from exc

    @property
    def spectrum_bounds(self) -> tuple[SpectrumBound, ...]:
        return tuple(SpectrumBound.parse(b) for b in self.bounds)

    def echo(self) -> dict:
        """JSON-ready copy of the config for the report (paths as strings)."""
        d = self.model_dump(mode="json")
        d["results"] = list(self.results)
        return d


FIELDS = tuple(SuiteConfig.model_fields)


def _translate(exc: ValidationError) -> ConfigError:
    err = exc.errors()[0]
    field = ".".join(str(p) for p in err.get("loc", ())[:1]) or "config"
    msg = err.get("msg", str(exc))
    return ConfigError(field, msg.removeprefix("Value error, "))


def read_config_file(path: str | Path) -> dict[str, str]:
    p = Path(path)
    if not p.is_file():
        raise ConfigError("config", f"no config file at {p}")
    values = {k.strip().lower().replace("-", "_"): v for k, v in dotenv_values(p).items()}
    for key in values:
        if key not in FIELDS:
            raise ConfigError(key, f"unknown config key in {p}")
    return {k: v for k, v in values.items() if v not in (None, "")}


def env_overrides(environ: Mapping[str, str]) -> dict[str, str]:
    return {name: environ[ENV_PREFIX + name.upper()] for name in FIELDS
            if environ.get(ENV_PREFIX + name.upper())}


def load_config(flags: Mapping[str, Any] | None = None, config_path: str | Path | None = None,
                environ: Mapping[str, str] | None = None) -> SuiteConfig:
    """Merge defaults < environment < config file < flags into a SuiteConfig.

    `environ=None` reads the process environment after load_dotenv(); tests pass a dict."""
    if environ is None:
        load_dotenv()
        environ = os.environ
    merged: dict[str, Any] = env_overrides(environ)
    if config_path is not None:
        merged.update(read_config_file(config_path))
    merged.update({k: v for k, v in (flags or {}).items() if v is not None})
    try:
        return SuiteConfig(**merged)
    except ValidationError as exc:
        raise _translate(exc) from exc
