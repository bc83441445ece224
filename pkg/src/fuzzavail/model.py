"""Availability model: achieved availability from failure statistics, the
built-in 25-rule security/availability rule base, and sampled evaluation of
the combined coefficient over the unit square.

Coefficients are stored as fractions in [0, 1] everywhere; percent is a
display concern left to the CLI.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dsl import format_number, parse_number
from .fuzzy import (
    REFERENCE_CONFIG,
    InferenceConfig,
    LinguisticVariable,
    MembershipFunction,
    Rule,
    RuleBase,
    infer,
)

TERM_NAMES = ("verysmall", "small", "medium", "big", "verybig")


class UndefinedAvailabilityError(ValueError):
    """MTBF and MTR are both zero, so the uptime share is 0/0."""


class NoFailuresWarning(UserWarning):
    """No failures were observed; achieved availability defaults to 1."""


@dataclass(frozen=True)
class ReliabilityStats:
    """MTBF / mean-repair summary of one observation window, in hours.

    ``mtbf`` is None exactly when no failures were observed.
    """

    mtbf: float | None
    mtr: float
    failure_count: int

    def __post_init__(self) -> None:
        if self.failure_count < 0:
            raise ValueError(f"failure_count must be nonnegative, got {self.failure_count}")
        if (self.mtbf is None) != (self.failure_count == 0):
            raise ValueError("mtbf must be absent exactly when failure_count is 0")
        if self.mtbf is not None and self.mtbf < 0:
            raise ValueError(f"mtbf must be nonnegative, got {self.mtbf}")
        if self.mtr < 0:
            raise ValueError(f"mtr must be nonnegative, got {self.mtr}")


@dataclass(frozen=True)
class AvailabilityInputs:
    """Achieved availability (kd) and security level (ks), both fractions."""

    kd: float
    ks: float

    def __post_init__(self) -> None:
        for name, value in (("kd", self.kd), ("ks", self.ks)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")


def achieved_availability(stats: ReliabilityStats) -> float:
    """Uptime share MTBF / (MTBF + MTR), as a fraction."""
    if stats.failure_count == 0:
        warnings.warn("no failures observed; achieved availability is 1",
                      NoFailuresWarning, stacklevel=2)
        return 1.0
    if stats.mtbf == 0.0 and stats.mtr == 0.0:
        raise UndefinedAvailabilityError("MTBF and MTR are both zero")
    return stats.mtbf / (stats.mtbf + stats.mtr)


def five_term_variable(name: str) -> LinguisticVariable:
    """[0, 1] partitioned into five triangles peaking every 0.25.

    The edge terms peak at the boundary, so they act as half-triangles and
    the family sums to one everywhere on the interval.
    """
    terms = []
    for term_name, peak in zip(TERM_NAMES, (0.0, 0.25, 0.5, 0.75, 1.0)):
        lo = max(0.0, peak - 0.25)
        hi = min(1.0, peak + 0.25)
        terms.append((term_name, MembershipFunction.triangular(lo, peak, hi)))
    return LinguisticVariable(name, (0.0, 1.0), tuple(terms))


@lru_cache(maxsize=1)
def builtin_rulebase() -> RuleBase:
    """The 25-rule base combining achieved availability and security level.

    The combined coefficient tracks the weaker of the two inputs: the
    consequent index is min(kd index, ks index), except that a medium
    system under merely small security drops all the way to verysmall.
    """
    rules = []
    for i, kd_term in enumerate(TERM_NAMES):
        for j, ks_term in enumerate(TERM_NAMES):
            k = 0 if (i, j) == (2, 1) else min(i, j)
            rules.append(Rule((("kd", kd_term), ("ks", ks_term)), ("ka", TERM_NAMES[k])))
    return RuleBase(
        inputs=(five_term_variable("kd"), five_term_variable("ks")),
        outputs=(five_term_variable("ka"),),
        rules=tuple(rules),
    )


def _output_name(rulebase: RuleBase) -> str:
    if len(rulebase.outputs) != 1:
        raise ValueError(f"expected exactly one output variable, got {len(rulebase.outputs)}")
    return rulebase.outputs[0].name


def global_availability(
    inputs: AvailabilityInputs,
    config: InferenceConfig = REFERENCE_CONFIG,
    rulebase: RuleBase | None = None,
) -> float:
    """Combined availability coefficient for (kd, ks)."""
    rb = builtin_rulebase() if rulebase is None else rulebase
    return infer(rb, {"kd": inputs.kd, "ks": inputs.ks}, config)[_output_name(rb)]


def unit_samples(n: int) -> tuple[float, ...]:
    """n ascending, evenly spaced samples covering [0, 1]."""
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    return tuple(i / (n - 1) for i in range(n))


@dataclass(frozen=True, eq=False)
class Grid:
    """Combined coefficient sampled over the unit square, rows indexed by kd."""

    kd_samples: tuple[float, ...]
    ks_samples: tuple[float, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        for label, samples in (("kd", self.kd_samples), ("ks", self.ks_samples)):
            if len(samples) < 2 or any(a >= b for a, b in zip(samples, samples[1:])):
                raise ValueError(f"{label}_samples must be ascending with at least 2 entries")
            if samples[0] < 0.0 or samples[-1] > 1.0:
                raise ValueError(f"{label}_samples must lie in [0, 1]")
        if self.values.shape != (len(self.kd_samples), len(self.ks_samples)):
            raise ValueError(
                f"values shape {self.values.shape} does not match "
                f"{(len(self.kd_samples), len(self.ks_samples))}"
            )
        if self.values.min() < 0.0 or self.values.max() > 1.0:
            raise ValueError("grid values must lie in [0, 1]")


@dataclass(frozen=True, eq=False)
class Slice:
    """Combined coefficient along kd at one fixed security level."""

    ks_fixed: float
    kd_samples: tuple[float, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if not 0.0 <= self.ks_fixed <= 1.0:
            raise ValueError(f"ks_fixed must lie in [0, 1], got {self.ks_fixed}")
        if len(self.kd_samples) < 2 or any(a >= b for a, b in zip(self.kd_samples, self.kd_samples[1:])):
            raise ValueError("kd_samples must be ascending with at least 2 entries")
        if self.values.shape != (len(self.kd_samples),):
            raise ValueError("values length must match kd_samples")
        if self.values.min() < 0.0 or self.values.max() > 1.0:
            raise ValueError("slice values must lie in [0, 1]")


def surface(
    nx: int,
    ny: int,
    config: InferenceConfig = REFERENCE_CONFIG,
    rulebase: RuleBase | None = None,
) -> Grid:
    """Evaluate the combined coefficient on an nx-by-ny unit-square grid."""
    rb = builtin_rulebase() if rulebase is None else rulebase
    out = _output_name(rb)
    kd = unit_samples(nx)
    ks = unit_samples(ny)
    values = np.empty((nx, ny))
    for i, x in enumerate(kd):
        for j, y in enumerate(ks):
            values[i, j] = infer(rb, {"kd": x, "ks": y}, config)[out]
    return Grid(kd, ks, values)


def slice_at(
    ks_fixed: float,
    n: int,
    config: InferenceConfig = REFERENCE_CONFIG,
    rulebase: RuleBase | None = None,
) -> Slice:
    """Sweep kd over [0, 1] at one fixed security level."""
    if not 0.0 <= ks_fixed <= 1.0:
        raise ValueError(f"ks_fixed must lie in [0, 1], got {ks_fixed}")
    rb = builtin_rulebase() if rulebase is None else rulebase
    out = _output_name(rb)
    kd = unit_samples(n)
    values = np.array([infer(rb, {"kd": x, "ks": ks_fixed}, config)[out] for x in kd])
    return Slice(ks_fixed, kd, values)


def write_grid_csv(grid: Grid, path) -> None:
    """``kd,ks,ka`` rows, row-major by kd then ks, exact decimal values."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("kd,ks,ka\n")
        for i, kd in enumerate(grid.kd_samples):
            for j, ks in enumerate(grid.ks_samples):
                fh.write(f"{format_number(kd)},{format_number(ks)},{format_number(grid.values[i, j])}\n")


def read_grid_csv(path) -> Grid:
    """Read a grid written by :func:`write_grid_csv` (or any CSV matching
    its layout); raises ValueError on malformed content."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    rows: list[tuple[float, float, float]] = []
    header_seen = False
    for line_no, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if [c.strip().lower() for c in line.split(",")] != ["kd", "ks", "ka"]:
                raise ValueError(f"line {line_no}: expected header 'kd,ks,ka'")
            header_seen = True
            continue
        parts = [c.strip() for c in line.split(",")]
        if len(parts) != 3:
            raise ValueError(f"line {line_no}: expected 3 columns, got {len(parts)}")
        numbers = [parse_number(p) for p in parts]
        if any(v is None for v in numbers):
            raise ValueError(f"line {line_no}: malformed number")
        rows.append(tuple(numbers))
    if not header_seen:
        raise ValueError("missing 'kd,ks,ka' header")
    if not rows:
        raise ValueError("grid file has no data rows")
    kd_samples: list[float] = []
    for kd, _, _ in rows:
        if not kd_samples or kd_samples[-1] != kd:
            kd_samples.append(kd)
    nks, remainder = divmod(len(rows), len(kd_samples))
    if remainder:
        raise ValueError("row count is not a multiple of the kd sample count")
    ks_samples = [ks for _, ks, _ in rows[:nks]]
    values = np.empty((len(kd_samples), nks))
    for index, (kd, ks, ka) in enumerate(rows):
        i, j = divmod(index, nks)
        if kd != kd_samples[i] or ks != ks_samples[j]:
            raise ValueError(f"data row {index + 1}: not in row-major kd-then-ks order")
        values[i, j] = ka
    return Grid(tuple(kd_samples), tuple(ks_samples), values)


def write_slice_csv(slc: Slice, path) -> None:
    """``kd,ka`` rows preceded by a ``# ks=<value>`` comment."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# ks={format_number(slc.ks_fixed)}\n")
        fh.write("kd,ka\n")
        for kd, ka in zip(slc.kd_samples, slc.values):
            fh.write(f"{format_number(kd)},{format_number(ka)}\n")
