"""Runtime settings.

Settings come from the environment so the CLI and tests can switch arithmetic
mode without touching instance files:

- ``TROPOPT_MODE``: ``exact`` (default) or ``float``.
- ``TROPOPT_TOLERANCE``: comparison tolerance for float arithmetic.
"""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, replace

from tropopt.errors import SchemaError

MODES = ("exact", "float")
DEFAULT_TOLERANCE = 1e-9
# Composition sums of the constrained spectral solvers grow exponentially in n.
MAX_COMPOSITION_DIM = 12


@dataclass(frozen=True)
class Settings:
    """Arithmetic mode and limits shared by the CLI and the library."""

    mode: str = "exact"
    tolerance: float = DEFAULT_TOLERANCE
    max_composition_dim: int = MAX_COMPOSITION_DIM

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise SchemaError("mode", f"unknown arithmetic mode {self.mode!r}")
        if not self.tolerance > 0:
            raise SchemaError("tolerance", "tolerance must be positive")

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @classmethod
    def from_env(
        cls, environ: Mapping[str, str] | None = None, base: Settings | None = None
    ) -> Settings:
        """Overlay ``TROPOPT_*`` environment variables on ``base``."""
        environ = os.environ if environ is None else environ
        settings = base or cls()
        mode = environ.get("TROPOPT_MODE")
        if mode:
            settings = replace(settings, mode=mode.strip().lower())
        tolerance = environ.get("TROPOPT_TOLERANCE")
        if tolerance:
            try:
                settings = replace(settings, tolerance=float(tolerance))
            except ValueError as exc:
                raise SchemaError(
                    "tolerance", f"TROPOPT_TOLERANCE is not a number: {tolerance!r}"
                ) from exc
        return settings
