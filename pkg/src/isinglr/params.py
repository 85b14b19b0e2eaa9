"""Shared parameter and result types for the Ising-chain correlation library.

Everything downstream works in dimensionless units: the chain is described by
the qubit count and the coupling ratio J' = J/gamma, and all times are
s = t/tau with tau the single-qubit precession time.  Types are frozen
dataclasses, validated on construction, and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence


class ValidationError(ValueError):
    """Bad input values or inconsistent configuration."""


class GuardError(RuntimeError):
    """A numeric guard refused to run a computation."""


class DimensionGuardError(GuardError):
    """Dense-oracle dimension limit exceeded."""


class PrecisionUnavailableError(GuardError):
    """The arbitrary-precision backend could not be loaded."""


class ThresholdNotReachedError(GuardError):
    """A requested correlation level is never attained inside the safe window."""


class HorizonError(GuardError):
    """A requested time window extends past the reflection-safe horizon."""


#: Dense computations refuse chains longer than this (state space 2^14).
MAX_DENSE_QUBITS = 14

#: Double-precision correlation values below this are reported untrusted.
DOUBLE_TRUST_FLOOR = 1e-13


@dataclass(frozen=True)
class ChainParams:
    """Chain length and dimensionless nearest-neighbour coupling J'."""

    n_qubits: int
    j_coupling: float

    def __post_init__(self):
        if not isinstance(self.n_qubits, int) or isinstance(self.n_qubits, bool):
            raise ValidationError(f"n_qubits must be an integer, got {self.n_qubits!r}")
        if self.n_qubits < 1:
            raise ValidationError(f"n_qubits must be >= 1, got {self.n_qubits}")
        j = float(self.j_coupling)
        if not math.isfinite(j) or j < 0.0:
            raise ValidationError(f"j_coupling must be finite and >= 0, got {self.j_coupling!r}")
        object.__setattr__(self, "j_coupling", j)

    @property
    def n_nodes(self) -> int:
        """Size of the walk-operator space: two Pauli strings per qubit."""
        return 2 * self.n_qubits


def validate_params(p: ChainParams) -> ChainParams:
    """Re-check a ChainParams instance and return it unchanged.

    Construction already validates; this is the explicit entry point for
    callers holding instances of unknown provenance.
    """
    if not isinstance(p, ChainParams):
        raise ValidationError(f"expected ChainParams, got {type(p).__name__}")
    ChainParams(p.n_qubits, p.j_coupling)
    return p


def validate_qubit_index(p: ChainParams, k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or not (1 <= k <= p.n_qubits):
        raise ValidationError(f"qubit index must be in [1, {p.n_qubits}], got {k!r}")
    return k


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing grid of dimensionless times s = t/tau, all >= 0."""

    values: tuple = ()

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if any(not math.isfinite(v) for v in vals):
            raise ValidationError("time grid entries must be finite")
        if any(v < 0.0 for v in vals):
            raise ValidationError("time grid entries must be >= 0")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValidationError("time grid must be strictly increasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def linspace(cls, s_max: float, n: int, s_min: float = 0.0) -> "TimeGrid":
        if n < 1:
            raise ValidationError("time grid needs at least one point")
        if n == 1:
            return cls((s_min,))
        step = (s_max - s_min) / (n - 1)
        return cls(tuple(s_min + i * step for i in range(n)))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


class Method(str, Enum):
    """Which evaluation route produced a correlation series."""

    WALK = "walk"
    DIRECT = "direct"
    CRITICAL = "critical"
    LEADING_EXACT = "leading-exact"
    LEADING_LARGEK = "leading-largek"
    LEADING_EXPONENTIAL = "leading-exponential"


#: Methods whose values are exact correlation functions, bounded by [0, 2].
BOUNDED_METHODS = (Method.WALK, Method.DIRECT, Method.CRITICAL)

# Slack for the [0, 2] bound and the C(0) = 0 identity; the underlying
# computations satisfy both exactly, this only absorbs float round-off.
_BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class CorrelationSeries:
    """C_k(s) sampled on a time grid, tagged with the producing method."""

    qubit_index: int
    times: TimeGrid
    values: tuple = field(default=())
    method: Method = Method.WALK

    def __post_init__(self):
        method = Method(self.method)
        object.__setattr__(self, "method", method)
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(self.times):
            raise ValidationError("values and time grid lengths differ")
        if self.qubit_index < 1:
            raise ValidationError("qubit_index must be >= 1")
        if method in BOUNDED_METHODS:
            for s, c in zip(self.times, vals):
                if not (-_BOUND_SLACK <= c <= 2.0 + _BOUND_SLACK):
                    raise ValidationError(f"C({s}) = {c} outside the [0, 2] bound")
                if s == 0.0 and c != 0.0:
                    raise ValidationError(f"C(0) must vanish, got {c}")


def series_from_arrays(k: int, times: Sequence[float], values: Sequence[float],
                       method: Method) -> CorrelationSeries:
    return CorrelationSeries(k, TimeGrid(tuple(times)), tuple(values), method)
