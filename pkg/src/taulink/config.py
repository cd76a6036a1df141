"""Run configuration shared by the CLI and the service."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_WEIGHT_MAX = "TAULINK_WEIGHT_MAX"

DEFAULT_U_MAX = 4
DEFAULT_WEIGHT_MAX = 9
DEFAULT_ORDER = 12
DEFAULT_FORMAT = "text"
DEFAULT_SEED = 0
DEFAULT_MARGIN_EXTRA = 0


def default_weight_max() -> int:
    """The optional environment override of the default truncation."""
    raw = os.environ.get(ENV_WEIGHT_MAX)
    if raw is None:
        return DEFAULT_WEIGHT_MAX
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_WEIGHT_MAX} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class RunConfig:
    u_max: int = DEFAULT_U_MAX
    weight_max: int = DEFAULT_WEIGHT_MAX
    order: int = DEFAULT_ORDER
    format: str = DEFAULT_FORMAT
    seed: int = DEFAULT_SEED
    margin_extra: int = DEFAULT_MARGIN_EXTRA

    def __post_init__(self):
        if self.u_max < 1 or self.weight_max < 1 or self.order < 1:
            raise ValueError("bounds must be positive")
        if self.margin_extra < 0:
            raise ValueError("margin_extra must be >= 0")
        if self.format not in ("text", "json"):
            raise ValueError("format must be text or json")
