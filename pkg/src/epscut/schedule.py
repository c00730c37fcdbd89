"""Shift schedules: strictly decreasing positive sequences tending to zero.

The solver needs shifts eps_i > 0 whose decay is sublinear, meaning the
ratio eps_{i+1}/eps_i tends to 1 (slower than every geometric sequence).
Both non-constant kinds here have that property by construction; the
constant kind exists only to exercise baselines that violate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

KINDS = ("harmonic", "logarithmic", "constant_for_testing")


@dataclass(frozen=True)
class EpsilonSchedule:
    """Closed-form shift sequence eps(i), evaluated statelessly.

    kinds:
      harmonic             eps0 / (i+1)**p,  0 < p <= 1
      logarithmic          eps0 / log(i+e)
      constant_for_testing eps0            (deliberately not decreasing)
    """

    kind: str
    eps0: float
    p: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if not self.eps0 > 0.0:
            raise ValueError("eps0 must be positive")
        if self.kind == "harmonic" and not 0.0 < self.p <= 1.0:
            raise ValueError("harmonic exponent p must lie in (0, 1]")

    @classmethod
    def harmonic(cls, eps0: float = 0.1, p: float = 1.0) -> "EpsilonSchedule":
        return cls("harmonic", eps0, p)

    @classmethod
    def logarithmic(cls, eps0: float = 0.1) -> "EpsilonSchedule":
        return cls("logarithmic", eps0)

    @classmethod
    def constant_for_testing(cls, eps0: float = 0.1) -> "EpsilonSchedule":
        return cls("constant_for_testing", eps0)

    def eps_at(self, i: int) -> float:
        return eps_at(self, i)


def eps_at(schedule: EpsilonSchedule, i: int) -> float:
    """Shift value at iteration i >= 0."""
    if i < 0:
        raise ValueError("iteration index must be nonnegative")
    if schedule.kind == "harmonic":
        return schedule.eps0 / (i + 1) ** schedule.p
    if schedule.kind == "logarithmic":
        return schedule.eps0 / math.log(i + math.e)
    return schedule.eps0


def parse_schedule(descriptor: str, eps0: float) -> EpsilonSchedule:
    """Build a schedule from a CLI descriptor.

    Accepted forms: "harmonic", "harmonic:p=0.5", "log", "const".
    """
    desc = descriptor.strip().lower()
    if desc.startswith("harmonic"):
        p = 1.0
        _, _, rest = desc.partition(":")
        if rest:
            key, _, value = rest.partition("=")
            if key != "p":
                raise ValueError(f"unknown schedule option {key!r}")
            p = float(value)
        return EpsilonSchedule.harmonic(eps0, p)
    if desc in ("log", "logarithmic"):
        return EpsilonSchedule.logarithmic(eps0)
    if desc in ("const", "constant", "constant_for_testing"):
        return EpsilonSchedule.constant_for_testing(eps0)
    raise ValueError(f"unknown schedule descriptor {descriptor!r}")
