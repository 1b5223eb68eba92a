"""JSON run configuration: schema, guards, canonical serialization.

Every guard owned by a downstream module is re-validated here at parse time
with a field-named message, so bad configs fail before any operator is built.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .reporting import render_json
from .scenario import ScenarioConfig

SCENARIOS = (
    "prince-pauper",
    "multiworld",
    "classical-level",
    "certify-lemma1",
    "certify-lemma2",
)
GRID_SCENARIOS = ("prince-pauper", "multiworld", "certify-lemma1")
SCALING_SCENARIOS = ("classical-level", "certify-lemma2")
DIMENSION_CAP = 40_000
LAMBDA_MAX = 1.0  # the qubit scenarios measure outcomes +-1


class ConfigError(ValueError):
    """A config key is unknown, ill-typed, or violates a guard."""


@dataclass(frozen=True)
class RunConfig:
    scenario: str = "prince-pauper"
    M: int = 8
    delta: float = 0.25
    g: float = 1.0
    T: float = 1.0
    hbar: float = 1.0
    k: int = 1
    lambda1: float = 1.0
    lambda2: float = 2.0
    ratio_exponent_range: int = 4
    tol: float = 1e-10
    seed: int = 0
    sample_times: tuple = None
    phase_insensitive: bool = False

    def __post_init__(self):
        if self.sample_times is None:
            times = tuple(i * self.T / 4 for i in range(5))
        else:
            times = tuple(float(t) for t in self.sample_times)
        object.__setattr__(self, "sample_times", times)
        self._validate()

    def _validate(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario: must be one of {SCENARIOS}, got {self.scenario!r}")
        if self.M < 1:
            raise ConfigError("M must be >= 1")
        if self.delta <= 0:
            raise ConfigError(f"delta must be positive, got {self.delta}")
        if self.g < 0:
            raise ConfigError(f"g must be nonnegative, got {self.g}")
        if self.T <= 0:
            raise ConfigError(f"T must be positive, got {self.T}")
        if self.hbar <= 0:
            raise ConfigError(f"hbar must be positive, got {self.hbar}")
        if not 1 <= self.k <= 3:
            raise ConfigError(f"k must be between 1 and 3 at desk scale, got {self.k}")
        if self.ratio_exponent_range < 1:
            raise ConfigError("ratio_exponent_range must be >= 1")
        if self.tol <= 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if self.seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {self.seed}")
        times = self.sample_times
        if len(times) == 0 or any(b < a for a, b in zip(times, times[1:])):
            raise ConfigError("sample_times must be a nonempty sorted list")
        if any(not 0 <= t <= self.T for t in times):
            raise ConfigError(f"sample_times must lie in [0, {self.T}]")
        if self.scenario in GRID_SCENARIOS:
            travel = self.g * self.T * LAMBDA_MAX
            limit = self.M * self.delta / 2
            if travel > limit:
                raise ConfigError(
                    f"wraparound guard violated: g*T*lambda_max = {travel} exceeds "
                    f"M*delta/2 = {limit}"
                )
            total = (2 * (2 * self.M + 1)) ** self.k
            if total > DIMENSION_CAP:
                raise ConfigError(
                    f"total dimension {total} exceeds the dense cap {DIMENSION_CAP}"
                )
        if self.scenario in SCALING_SCENARIOS:
            if self.lambda1 == 0:
                raise ConfigError("lambda1 must be nonzero (null outcomes cannot be rescaled)")
            if self.lambda2 == 0:
                raise ConfigError("lambda2 must be nonzero (null outcomes cannot be rescaled)")
            if self.lambda2 / self.lambda1 <= 0:
                raise ConfigError(
                    "outcome ratio lambda2/lambda1 must be positive; opposite-sign pairs "
                    "are handled by the sign-flip swap"
                )


def _read_int(key, value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    return value


def _read_real(key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    return float(value)


def _read_bool(key, value):
    if not isinstance(value, bool):
        raise ConfigError(f"{key}: expected a boolean, got {value!r}")
    return value


def _read_str(key, value):
    if not isinstance(value, str):
        raise ConfigError(f"{key}: expected a string, got {value!r}")
    return value


def _read_times(key, value):
    if not isinstance(value, list):
        raise ConfigError(f"{key}: expected a list of numbers, got {value!r}")
    return tuple(_read_real(f"{key}[{i}]", item) for i, item in enumerate(value))


_READERS = {
    "scenario": _read_str,
    "M": _read_int,
    "delta": _read_real,
    "g": _read_real,
    "T": _read_real,
    "hbar": _read_real,
    "k": _read_int,
    "lambda1": _read_real,
    "lambda2": _read_real,
    "ratio_exponent_range": _read_int,
    "tol": _read_real,
    "seed": _read_int,
    "sample_times": _read_times,
    "phase_insensitive": _read_bool,
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration, filling defaults."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError("the top level must be a JSON object")
    kwargs = {}
    for key in sorted(raw):
        if key not in _READERS:
            raise ConfigError(f"unknown key {key!r}")
        kwargs[key] = _READERS[key](key, raw[key])
    return RunConfig(**kwargs)


def serialize_config(config: RunConfig) -> str:
    """Canonical JSON for a config; parse_config(serialize_config(c)) == c."""
    doc = asdict(config)
    doc["sample_times"] = list(config.sample_times)
    return render_json(doc) + "\n"


def to_scenario_config(config: RunConfig) -> ScenarioConfig:
    return ScenarioConfig(
        pointer_half_width=config.M,
        pointer_spacing=config.delta,
        coupling=config.g,
        duration=config.T,
        hbar=config.hbar,
        qubit_count=config.k,
        tolerance=config.tol,
        sample_times=config.sample_times,
        phase_insensitive=config.phase_insensitive,
        seed=config.seed,
        eigenvalue_from=config.lambda1,
        eigenvalue_to=config.lambda2,
        exponent_range=config.ratio_exponent_range,
        dimension_cap=DIMENSION_CAP,
    )
