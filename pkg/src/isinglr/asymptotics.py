"""Leading-edge forms, the two propagation velocities, and saturation.

Ahead of the correlation front the correlation function is a single monomial
in time,

    C_k = 2^{2k} pi^{2k-1} / (2k-1)!  J'^{k-1} s^{2k-1},

whose Stirling form exposes the ballistic combination v_lr t / (k - 1/2) with
v_lr tau = e pi sqrt(J'), and which collapses to an exponential front
e (pi J' k)^{-1/2} exp(-2 (k - v_lr t)) near k ~ v_lr t.  These expressions
span hundreds of orders of magnitude, so they are carried as sign plus
log10 magnitude (LogValue) rather than as doubles.

The other velocity in the problem belongs to the quasiparticle band
E(q) = 2 J' sqrt(g^2 + 1 - 2 g cos q), g = 1/J': its maximum group velocity
2 pi min(J', 1) / tau is the speed of the main correlation front.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import ValidationError

LOG10_E = math.log10(math.e)


@dataclass(frozen=True)
class LogValue:
    """A real number stored as sign and log10 of the magnitude."""

    log10_magnitude: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValidationError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if (self.sign == 0) != (self.log10_magnitude == -math.inf):
            raise ValidationError("sign 0 must pair with log10 magnitude -inf and vice versa")

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(-math.inf, 0)

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0.0:
            return cls.zero()
        return cls(math.log10(abs(x)), 1 if x > 0 else -1)

    def to_float(self) -> float:
        """Best-effort double; underflows to 0 and overflows to inf."""
        if self.sign == 0:
            return 0.0
        try:
            mag = 10.0 ** self.log10_magnitude
        except OverflowError:
            mag = math.inf
        return math.copysign(mag, self.sign)

    def __float__(self):
        return self.to_float()


def v_lieb_robinson(jp: float) -> float:
    """Leading-edge speed limit in units of 1/tau: e pi sqrt(J')."""
    if jp < 0.0:
        raise ValidationError("coupling must be >= 0")
    return math.e * math.pi * math.sqrt(jp)


def lr_leading_exact(k: int, s: float, jp: float) -> LogValue:
    """Leading-edge correlation monomial, exact coefficient, in log domain."""
    if k < 1:
        raise ValidationError("qubit index must be >= 1")
    if s < 0.0 or jp < 0.0:
        raise ValidationError("time and coupling must be >= 0")
    if s == 0.0 or (jp == 0.0 and k >= 2):
        return LogValue.zero()
    log10 = (2 * k * math.log10(2.0)
             + (2 * k - 1) * math.log10(math.pi)
             - math.lgamma(2 * k) * LOG10_E
             + (k - 1) * (math.log10(jp) if k > 1 else 0.0)
             + (2 * k - 1) * math.log10(s))
    return LogValue(log10)


def lr_leading_largek(k: int, s: float, jp: float) -> LogValue:
    """Stirling form of the leading edge; valid for k well above 1."""
    if k < 2:
        raise ValidationError("the large-k form needs k >= 2")
    if s < 0.0 or jp <= 0.0:
        raise ValidationError("needs s >= 0 and coupling > 0")
    if s == 0.0:
        return LogValue.zero()
    vt = v_lieb_robinson(jp) * s
    log10 = (-0.5 * math.log10(math.pi * jp)
             - 0.5 * math.log10(k)
             + (2 * k - 1) * (math.log10(vt) - math.log10(k - 0.5)))
    return LogValue(log10)


def lr_leading_exponential(k: int, s: float, jp: float) -> LogValue:
    """Exponential front e (pi J' k)^{-1/2} exp(-2 (k - v_lr t)).

    Describes the far leading edge where k is large and near v_lr t; no
    regime guard is applied, callers sweep whole (k, t) windows with it.
    """
    if k < 1:
        raise ValidationError("qubit index must be >= 1")
    if s < 0.0 or jp <= 0.0:
        raise ValidationError("needs s >= 0 and coupling > 0")
    vt = v_lieb_robinson(jp) * s
    log10 = (LOG10_E
             - 0.5 * math.log10(math.pi * jp * k)
             - 2.0 * (k - vt) * LOG10_E)
    return LogValue(log10)


def dispersion(q: float, jp: float) -> float:
    """Quasiparticle energy 2 J' sqrt(g^2 + 1 - 2 g cos q), g = 1/J', in units of gamma."""
    if jp <= 0.0:
        raise ValidationError("dispersion needs coupling > 0 (g = 1/J' undefined at 0)")
    # algebraically identical to the g form, stable for small J'
    return 2.0 * math.sqrt(1.0 + jp * jp - 2.0 * jp * math.cos(q))


def v_group(q: float, jp: float) -> float:
    """Group velocity dE/dq in units of 1/tau."""
    if jp <= 0.0:
        raise ValidationError("group velocity needs coupling > 0")
    sin_q = math.sin(q)
    if sin_q == 0.0:
        return 0.0
    denom = math.hypot(1.0 - jp * math.cos(q), jp * sin_q)
    return 2.0 * math.pi * jp * sin_q / denom


def v_group_max(jp: float) -> float:
    """Band maximum of the group velocity: 2 pi J' below the transition, 2 pi above."""
    if jp < 0.0:
        raise ValidationError("coupling must be >= 0")
    return 2.0 * math.pi * min(jp, 1.0)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def v_group_max_numeric(jp: float, iterations: int = 90):
    """(max group velocity, maximizing wavenumber) by direct maximization.

    Golden-section search on [0, pi] for the value, then bisection on the
    stationarity condition to pin the maximizer; ships alongside the
    piecewise closed form so each can audit the other.
    """
    if jp <= 0.0:
        raise ValidationError("needs coupling > 0")
    a, b = 0.0, math.pi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = v_group(x1, jp), v_group(x2, jp)
    for _ in range(iterations):
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = v_group(x1, jp)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = v_group(x2, jp)
    value = max(f1, f2)

    def stationarity(q: float) -> float:
        # derivative numerator of v_group; roots at cos q = J' or 1/J'
        cos_q, sin_q = math.cos(q), math.sin(q)
        d2 = (1.0 - jp * cos_q) ** 2 + (jp * sin_q) ** 2
        return cos_q * d2 - jp * sin_q * sin_q

    lo, hi = 1e-18, math.pi - 1e-18
    if stationarity(lo) <= 0.0:
        q_max = 0.0       # maximum sits at the band edge (critical coupling)
    else:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if stationarity(mid) > 0.0:
                lo = mid
            else:
                hi = mid
        q_max = 0.5 * (lo + hi)
        value = max(value, v_group(q_max, jp))
    return value, q_max


def saturation_value(jp: float) -> float:
    """Long-time plateau of C_k on an effectively infinite chain: 2 min(1, 1/J')."""
    if jp < 0.0:
        raise ValidationError("coupling must be >= 0")
    return 2.0 if jp <= 1.0 else 2.0 / jp
