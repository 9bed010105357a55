"""Closed-form observables of the Gaussian state families.

All expressions follow from the second moments of the exact states,

    <q^2> = hbar |u_{r phi}|^2 (2n + 1),
    <p^2> = hbar m0^2 e^{2 gamma t} |u'_{r phi}|^2 (2n + 1),

which give the uncertainty product

    dq dp = (hbar/2) sec(theta_gamma/2)
            sqrt([cosh 2r + sinh 2r cos(2 omega t + phi)]
                 [cosh 2r - sinh 2r cos(2 omega t + phi + theta_gamma)])
            (2n + 1),

where the damping angle theta_gamma satisfies sec(theta_gamma/2) =
omega0/omega.  At r = 0 the bracket product is identically 1 and the
product is the constant (hbar/2) sigma0 (2n + 1) with
sigma0 = (1 - gamma^2/(4 omega0^2))^{-1/2}: the pseudo-stationary ground
state saturates that value at all times.  For r > 0 with damping the
product oscillates and at isolated phases drops below the sigma0 value,
approaching (but never crossing) the Heisenberg floor (hbar/2)(2n + 1) as
r grows; see :class:`UncertaintyRecord`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .modes import PhysicalParams, SqueezeParams, mode_u_rphi
from .states import MAX_N

__all__ = [
    "AngleGamma",
    "UncertaintyRecord",
    "TimeAverage",
    "theta_gamma",
    "sigma0",
    "uncertainty_product",
    "uncertainty_time_avg",
    "hamiltonian_expectation",
]


@dataclass(frozen=True)
class AngleGamma:
    """Damping angle theta_gamma in [0, pi).

    Defined by sin(theta) = (gamma/omega)/(1 + gamma^2/(4 omega^2)) and
    cos(theta) = (1 - gamma^2/(4 omega^2))/(1 + gamma^2/(4 omega^2))
    simultaneously; equivalently sec(theta/2) = omega0/omega.
    """

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta < math.pi:
            raise ValueError(f"theta_gamma must lie in [0, pi), got {self.theta}")


@dataclass(frozen=True)
class UncertaintyRecord:
    """Uncertainties of one state at one time.

    ``bound`` stores the zero-squeezing value (hbar/2) sigma0 (2n + 1),
    which the r = 0 family attains exactly at all times.  It is not a
    floor for squeezed states: for r > 0 with damping the product dips
    below ``bound`` at isolated phases, bounded below only by the
    Heisenberg floor (hbar/2)(2n + 1).  The record therefore reports, and
    does not enforce, product >= bound.
    """

    dq: float
    dp: float
    product: float
    bound: float
    t: float


@dataclass(frozen=True)
class TimeAverage:
    """Uncertainty product averaged over one period T = pi/omega.

    ``numeric`` is the trapezoid average of the closed-form product and is
    authoritative.  ``closed_form`` is the compact ground-state expression
    (hbar/2) sec(theta_gamma/2) (cosh^2 r - (cos theta_gamma / 2) sinh^2 r);
    it is exact at r = 0 but deviates from the true average of the
    square-root form for r > 0, so the gap is reported rather than
    asserted.  ``closed_form`` is None for n > 0, where no compact form is
    defined.
    """

    numeric: float
    closed_form: float | None


def theta_gamma(params: PhysicalParams) -> AngleGamma:
    """Damping angle from its sine and cosine closed forms via atan2."""
    ratio = params.gamma**2 / (4.0 * params.omega**2)
    denom = 1.0 + ratio
    sin_t = (params.gamma / params.omega) / denom
    cos_t = (1.0 - ratio) / denom
    return AngleGamma(theta=math.atan2(sin_t, cos_t))


def sigma0(params: PhysicalParams) -> float:
    """Uncertainty scale sigma0 = sec(theta_gamma/2) = (1 - gamma^2/4 omega0^2)^{-1/2} >= 1.

    Both closed forms are evaluated and must agree to 1e-12 relative.
    """
    via_angle = 1.0 / math.cos(theta_gamma(params).theta / 2.0)
    direct = 1.0 / math.sqrt(1.0 - params.gamma**2 / (4.0 * params.omega0**2))
    if abs(via_angle - direct) > 1e-12 * direct:
        raise ArithmeticError(
            f"sigma0 closed forms disagree: {via_angle!r} vs {direct!r}"
        )
    return direct


def _bracket_product(
    params: PhysicalParams, squeeze: SqueezeParams, t
) -> np.ndarray | float:
    """Product of the two modulation brackets entering dq dp; 1 at r = 0."""
    angle = theta_gamma(params).theta
    arg = 2.0 * params.omega * np.asarray(t, dtype=float) + squeeze.phi
    c2, s2 = math.cosh(2.0 * squeeze.r), math.sinh(2.0 * squeeze.r)
    return (c2 + s2 * np.cos(arg)) * (c2 - s2 * np.cos(arg + angle))


def uncertainty_product(
    params: PhysicalParams, n: int, squeeze: SqueezeParams, t: float
) -> UncertaintyRecord:
    """Uncertainties dq, dp and their product for the n-th squeezed state.

    dq and dp are taken from the mode moduli; their product equals the
    bracket closed form quoted in the module docstring to rounding.
    """
    if not (0 <= n <= MAX_N):
        raise ValueError(f"number index must be in [0, {MAX_N}], got {n}")
    mode = mode_u_rphi(params, squeeze, t)
    scale = math.sqrt(params.hbar * (2 * n + 1))
    dq = scale * abs(mode.u)
    dp = scale * params.m0 * math.exp(params.gamma * t) * abs(mode.udot)
    bound = 0.5 * params.hbar * sigma0(params) * (2 * n + 1)
    return UncertaintyRecord(dq=dq, dp=dp, product=dq * dp, bound=bound, t=t)


def uncertainty_time_avg(
    params: PhysicalParams, n: int, squeeze: SqueezeParams, *, n_samples: int = 4097
) -> TimeAverage:
    """Average the uncertainty product over one period T = pi/omega.

    The product depends on time only through 2 omega t + phi (the damping
    envelopes of dq and dp cancel in the product), so T = pi/omega is its
    exact period.  The trapezoid rule with at least 2049 samples resolves
    the square-root integrand far below the comparison tolerances.
    """
    if not (0 <= n <= MAX_N):
        raise ValueError(f"number index must be in [0, {MAX_N}], got {n}")
    if n_samples < 2049:
        raise ValueError(f"need at least 2049 samples, got {n_samples}")
    period = math.pi / params.omega
    ts = np.linspace(0.0, period, n_samples)
    prefactor = 0.5 * params.hbar * sigma0(params) * (2 * n + 1)
    values = prefactor * np.sqrt(_bracket_product(params, squeeze, ts))
    numeric = float(np.trapezoid(values, ts) / period)
    closed_form = None
    if n == 0:
        angle = theta_gamma(params).theta
        closed_form = prefactor * (
            math.cosh(squeeze.r) ** 2
            - 0.5 * math.cos(angle) * math.sinh(squeeze.r) ** 2
        )
    return TimeAverage(numeric=numeric, closed_form=closed_form)


def hamiltonian_expectation(
    params: PhysicalParams, n: int, squeeze: SqueezeParams, t: float
) -> float:
    """Energy expectation of the n-th squeezed state.

    <H> = (hbar omega / 2) sec^2(theta_gamma/2)
          [cosh 2r + sinh 2r sin(theta_gamma/2)
                     sin(2 omega t + phi + theta_gamma/2)] (2n + 1).

    Constant in t at r = 0 with value (hbar omega0^2)/(2 omega) (2n + 1).
    """
    if not (0 <= n <= MAX_N):
        raise ValueError(f"number index must be in [0, {MAX_N}], got {n}")
    half_angle = theta_gamma(params).theta / 2.0
    sec2 = 1.0 / math.cos(half_angle) ** 2
    modulation = math.cosh(2.0 * squeeze.r) + math.sinh(2.0 * squeeze.r) * math.sin(
        half_angle
    ) * math.sin(2.0 * params.omega * t + squeeze.phi + half_angle)
    return 0.5 * params.hbar * params.omega * sec2 * modulation * (2 * n + 1)
