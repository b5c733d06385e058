""" Run defaults and their environment overrides. """

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace
from typing import Any, Mapping, Optional

from .errors import ConfigurationError

ENVIRONMENT = {
    "ANGLEKIT_FIXTURES": ("fixtures", str),
    "ANGLEKIT_REPORTS": ("reports", str),
    "ANGLEKIT_SAMPLES": ("samples", int),
    "ANGLEKIT_SEED": ("seed", int),
    "ANGLEKIT_WORKERS": ("workers", int),
}


@dataclass(frozen=True)
class Settings:
    """The knobs shared by the library and the command line."""

    samples: int = 10**6
    seed: int = 0
    workers: int = 1
    sigmas: float = 4.0
    tolerance_floor: float = 1e-3
    boundary_band: float = 1e-12
    ae_trials: int = 1000
    ae_box: int = 8
    ae_denominator: int = 2**16
    max_exact_dim: int = 5
    max_sampling_dim: int = 4
    fixtures: Optional[str] = None
    reports: str = "reports"

    def __post_init__(self) -> None:
        if self.samples < 0:
            raise ConfigurationError(f"samples must be non-negative, not {self.samples}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be positive, not {self.workers}")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> Settings:
        """Return the default settings updated by any ANGLEKIT_* environment variables."""

        environ = os.environ if environ is None else environ
        changes: dict[str, Any] = {}
        for variable, (name, kind) in ENVIRONMENT.items():
            if variable in environ:
                try:
                    changes[name] = kind(environ[variable])
                except ValueError:
                    raise ConfigurationError(f"{variable}={environ[variable]!r} is not a valid {kind.__name__}") from None

        return cls(**changes)

    def replace(self, **changes: Any) -> Settings:
        """Return a copy with the given (non-None) fields changed."""

        return replace(self, **{key: value for key, value in changes.items() if value is not None})

    def tolerance(self, stderr: float) -> float:
        """Return the allowed deviation of an estimate with the given standard error."""

        return max(self.sigmas * stderr, self.tolerance_floor)

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


DEFAULT = Settings()
