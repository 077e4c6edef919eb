"""Result container and small shared enums used by every solver path."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Side(enum.Enum):
    """Which side of the singularity a position belongs to."""

    LEFT = -1
    RIGHT = 1


class Status(str, enum.Enum):
    """How a transmission value was obtained.

    COMPUTED     -- matched solution, T and R are meaningful.
    FORCED_ZERO  -- the singularity extinguishes transmission identically.
    UNDETERMINED -- no self-adjoint scattering problem exists; T and R are None.
    """

    COMPUTED = "Computed"
    FORCED_ZERO = "ForcedZero"
    UNDETERMINED = "Undetermined"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ScatteringResult:
    T: float | None
    R: float | None
    status: Status

    def __post_init__(self):
        if self.status is Status.UNDETERMINED:
            if self.T is not None or self.R is not None:
                raise ValueError("Undetermined results carry no T or R")
        else:
            if self.T is None or self.R is None:
                raise ValueError(f"{self.status} results need numeric T and R")
