"""Run-wide configuration knobs."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_BITS = "ANOSOV_FORGE_BITS"


@dataclass(frozen=True)
class ToolkitConfig:
    """Precision and search limits used by every certified routine.

    initial_bits/precision_cap_bits bound the doubling refinement loops;
    max_den bounds the exponent search when certifying multiplicative
    relations between root moduli; witness_cap bounds integer witness
    scaling; size_cap bounds free nilpotent lift dimensions; seed drives
    the reproducible generic-plane draw.
    """

    initial_bits: int = 64
    precision_cap_bits: int = 4096
    max_den: int = 12
    witness_cap: int = 10**6
    size_cap: int = 2000
    seed: int = 0

    def with_env_override(self) -> "ToolkitConfig":
        raw = os.environ.get(ENV_BITS)
        if raw is None:
            return self
        try:
            bits = int(raw)
        except ValueError:
            return self
        if bits < 32:
            return self
        return ToolkitConfig(
            initial_bits=self.initial_bits,
            precision_cap_bits=bits,
            max_den=self.max_den,
            witness_cap=self.witness_cap,
            size_cap=self.size_cap,
            seed=self.seed,
        )


DEFAULT_CONFIG = ToolkitConfig()
