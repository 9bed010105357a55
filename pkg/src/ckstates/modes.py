"""Physical parameters and classical mode functions of the damped oscillator.

The Caldirola-Kanai oscillator carries the explicitly time-dependent
Hamiltonian

    H(t) = e^{-gamma t} p^2 / (2 m0) + (m0 omega0^2 / 2) e^{gamma t} q^2,

whose Heisenberg equations reproduce the classical damped motion
``u'' + gamma u' + omega0^2 u = 0``.  A complex solution u(t) of this mode
equation, normalized by the Wronskian condition

    m0 e^{gamma t} (u u'* - u* u') = i,

generates time-invariant canonical ladder operators and through them the
exact Gaussian states evaluated in :mod:`ckstates.states`.  This module
provides the parameter record, the damped-envelope solution ``u0``, its
two-parameter squeezed family ``u_{r phi}``, and the maps between mode
values and squeeze parameters.

Only the underdamped regime (gamma < 2 omega0) is supported.
"""

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "NotUnderdampedError",
    "WronskianError",
    "PhysicalParams",
    "SqueezeParams",
    "ModeValue",
    "make_params",
    "mode_u0",
    "mode_u_rphi",
    "wronskian",
    "squeeze_from_mode",
    "special_squeeze",
]

TWO_PI = 2.0 * math.pi

# Constructions are exact to rounding; externally supplied modes may carry
# integration error, hence the looser acceptance tolerance.
WRONSKIAN_CONSTRUCTION_TOL = 1e-12
WRONSKIAN_ACCEPT_TOL = 1e-8


class NotUnderdampedError(ValueError):
    """Raised when gamma >= 2 omega0, where no oscillatory mode exists."""


class WronskianError(ValueError):
    """Raised when a supplied mode violates the Wronskian normalization."""


@dataclass(frozen=True)
class PhysicalParams:
    """Oscillator constants and the derived frequency.

    Attributes
    ----------
    m0 : float
        Mass scale, > 0 (the instantaneous mass is m0 e^{gamma t}).
    gamma : float
        Damping rate, >= 0, in inverse time units.
    omega0 : float
        Natural frequency, > 0.
    hbar : float
        Action scale, > 0.
    omega : float
        Reduced frequency sqrt(omega0^2 - gamma^2/4); consistency with the
        other fields is checked at construction.
    """

    m0: float
    gamma: float
    omega0: float
    hbar: float
    omega: float

    def __post_init__(self) -> None:
        if self.m0 <= 0.0:
            raise ValueError(f"m0 must be positive, got {self.m0}")
        if self.omega0 <= 0.0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.hbar <= 0.0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")
        if self.gamma >= 2.0 * self.omega0:
            raise NotUnderdampedError(
                f"not underdamped: gamma={self.gamma} >= 2*omega0={2.0 * self.omega0}"
            )
        # omega is derived data; reject inconsistent hand-built records.
        domega = abs(self.omega**2 + self.gamma**2 / 4.0 - self.omega0**2)
        if domega > 64.0 * 2.220446049250313e-16 * self.omega0**2:
            raise ValueError(
                f"omega={self.omega} inconsistent with omega0={self.omega0}, gamma={self.gamma}"
            )


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze magnitude and phase selecting one Gaussian family.

    The pair is equivalent to the Bogoliubov coefficients
    mu = cosh r, nu = e^{i phi} sinh r with |mu|^2 - |nu|^2 = 1.
    The phase is stored wrapped to [0, 2 pi).
    """

    r: float
    phi: float

    def __post_init__(self) -> None:
        if self.r < 0.0:
            raise ValueError(f"squeeze magnitude must be nonnegative, got {self.r}")
        if not math.isfinite(self.phi):
            raise ValueError(f"squeeze phase must be finite, got {self.phi}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)

    @property
    def mu(self) -> complex:
        return complex(math.cosh(self.r))

    @property
    def nu(self) -> complex:
        return cmath.exp(1j * self.phi) * math.sinh(self.r)


@dataclass(frozen=True)
class ModeValue:
    """A mode function and its time derivative at one instant.

    ``u`` has units 1/sqrt(mass * frequency) so that the Wronskian
    m0 e^{gamma t} (u u'* - u* u') is exactly i for admissible modes.
    """

    u: complex
    udot: complex
    t: float


def make_params(m0: float, gamma: float, omega0: float, hbar: float) -> PhysicalParams:
    """Validate constants and derive omega = sqrt(omega0^2 - gamma^2/4).

    Raises
    ------
    NotUnderdampedError
        If gamma >= 2 omega0.
    ValueError
        If any constant is out of range.
    """
    if m0 <= 0.0 or omega0 <= 0.0 or hbar <= 0.0 or gamma < 0.0:
        raise ValueError(
            f"require m0 > 0, omega0 > 0, hbar > 0, gamma >= 0; "
            f"got m0={m0}, gamma={gamma}, omega0={omega0}, hbar={hbar}"
        )
    if gamma >= 2.0 * omega0:
        raise NotUnderdampedError(
            f"not underdamped: gamma={gamma} >= 2*omega0={2.0 * omega0}"
        )
    omega = math.sqrt(omega0**2 - gamma**2 / 4.0)
    return PhysicalParams(m0=m0, gamma=gamma, omega0=omega0, hbar=hbar, omega=omega)


def mode_u0(params: PhysicalParams, t: float) -> ModeValue:
    """Zero-squeezing mode u0(t) = e^{-gamma t/2} e^{-i omega t} / sqrt(2 m0 omega).

    The prefactor enforces the Wronskian normalization exactly.
    """
    u = (
        math.exp(-params.gamma * t / 2.0)
        / math.sqrt(2.0 * params.m0 * params.omega)
        * cmath.exp(-1j * params.omega * t)
    )
    udot = complex(-params.gamma / 2.0, -params.omega) * u
    return ModeValue(u=u, udot=udot, t=t)


def mode_u_rphi(params: PhysicalParams, squeeze: SqueezeParams, t: float) -> ModeValue:
    """General mode u_{r phi} = cosh(r) u0 + e^{i phi} sinh(r) u0*.

    |mu|^2 - |nu|^2 = 1 preserves the Wronskian for every (r, phi).
    """
    base = mode_u0(params, t)
    mu = math.cosh(squeeze.r)
    nu = cmath.exp(1j * squeeze.phi) * math.sinh(squeeze.r)
    u = mu * base.u + nu * base.u.conjugate()
    udot = mu * base.udot + nu * base.udot.conjugate()
    return ModeValue(u=u, udot=udot, t=t)


def wronskian(params: PhysicalParams, mode: ModeValue) -> complex:
    """Wronskian m0 e^{gamma t} (u u'* - u* u'); equals i for admissible modes."""
    weight = params.m0 * math.exp(params.gamma * mode.t)
    return weight * (
        mode.u * mode.udot.conjugate() - mode.u.conjugate() * mode.udot
    )


def squeeze_from_mode(params: PhysicalParams, mode: ModeValue) -> SqueezeParams:
    """Recover the squeeze parameters generating a given mode value.

    The Bogoliubov pair is projected out with the zero-squeezing mode at the
    same instant.  One overall phase of the mode is unobservable; the
    canonical representative with mu real positive is returned, i.e.
    r = asinh|nu| and phi = arg(nu) - arg(mu) wrapped to [0, 2 pi).

    Raises
    ------
    WronskianError
        If the supplied mode violates |W - i| <= 1e-8.
    """
    w = wronskian(params, mode)
    if abs(w - 1j) > WRONSKIAN_ACCEPT_TOL:
        raise WronskianError(
            f"mode violates the Wronskian normalization: |W - i| = {abs(w - 1j):.3e}"
        )
    base = mode_u0(params, mode.t)
    weight = params.m0 * math.exp(params.gamma * mode.t)
    # Projections follow from the Wronskian orthogonality of (u0, u0*).
    mu = -1j * weight * (mode.u * base.udot.conjugate() - mode.udot * base.u.conjugate())
    nu = -1j * weight * (base.u * mode.udot - mode.u * base.udot)
    r = math.asinh(abs(nu))
    phi = (cmath.phase(nu) - cmath.phase(mu)) % TWO_PI if abs(nu) > 0.0 else 0.0
    return SqueezeParams(r=r, phi=phi)


def special_squeeze(params: PhysicalParams) -> SqueezeParams:
    """Squeeze parameters whose state reduces to undamped oscillator
    eigenfunctions at t = 0.

    The magnitude satisfies cosh(2 r0) = 1 + gamma^2/(8 omega^2) and the
    phase satisfies tan(phi0) = 4 omega / gamma.  Of the two phase branches
    the representative in (0, pi/2) produces the wrong Gaussian width at
    t = 0; the pi-shifted branch phi0 = pi + arctan(4 omega / gamma)
    reproduces A(0) = sqrt(m0 omega / hbar) and real B(0) = m0 omega/(2 hbar)
    exactly, so that branch is returned.  The branch validation is also
    recorded by the validation suite.

    Raises
    ------
    ValueError
        If gamma = 0 (the phase is undefined without damping).
    """
    if params.gamma <= 0.0:
        raise ValueError("special squeeze is undefined for gamma = 0")
    r0 = 0.5 * math.acosh(1.0 + params.gamma**2 / (8.0 * params.omega**2))
    phi0 = math.pi + math.atan(4.0 * params.omega / params.gamma)
    return SqueezeParams(r=r0, phi=phi0)
