"""The rotationally symmetric family of sphere self-maps and its energies.

Writing the m-sphere as a warped product over (0, pi) with polar distance
r, the family is phi_t(theta, r) = (theta, alpha_t(r)) with

    alpha_t(r) = 2*arctan(t * tan(r/2)),        phi_1 = Id.

Its pointwise energy densities are

    |dphi_t|^2   = m * (sin(alpha)/sin(r))^2
    |tau(phi_t)|^2 = (m-2)^2 * (sin(alpha)/sin(r))^2 * ((cos(alpha)-cos(r))/sin(r))^2

and the three functionals reduce to one-dimensional integrals against
omega_{S^{m-1}} * sin^{m-1}(r) dr.  With u = tan(r/2) the ratios admit the
cancellation-free closed forms

    sin(alpha)/sin(r)  = t*(1 + u^2) / (1 + t^2 u^2)
    cos(alpha)-cos(r)  = 2*u^2*(1 - t^2) / ((1 + t^2 u^2)*(1 + u^2))

which are what the integrands below evaluate.

For very small or very large t the integrands develop a transition layer
of width ~t near an endpoint of (0, pi).  All integrals are therefore
computed in a reparametrized variable, r = pi * S(y) with S the septic
smoothstep (S' = 140 y^3 (1-y)^3), which keeps the domain proper, keeps
every node strictly interior, and clusters nodes quartically at both
endpoints so panel doubling resolves the layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError
from .quadrature import (
    DEFAULT_CONFIG,
    IntegralResult,
    QuadratureConfig,
    integrate,
    sphere_volume,
)

# tan/arctan compositions stay well-conditioned on this range
T_MIN = 1e-8
T_MAX = 1e8


def _check_t(t: float) -> float:
    t = float(t)
    if not (t > 0.0) or not math.isfinite(t):
        raise DomainError(f"family parameter t must be positive, got {t!r}")
    if t < T_MIN or t > T_MAX:
        raise DomainError(f"family parameter t must lie in [{T_MIN:g}, {T_MAX:g}], got {t!r}")
    return t


def _check_m(m: int) -> int:
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"sphere dimension m must be an integer >= 2, got {m!r}")
    return m


@dataclass(frozen=True)
class FamilyPoint:
    """One map of the family: sphere dimension m and parameter t (t=1 is Id)."""

    dimension: int
    parameter: float

    def __post_init__(self):
        _check_m(self.dimension)
        _check_t(self.parameter)


@dataclass(frozen=True)
class FamilyEvaluation:
    energy: float
    energy_error: float
    bienergy: float
    bienergy_error: float
    c_bienergy: float
    c_bienergy_error: float


def alpha(t: float, r: float) -> float:
    """Profile angle alpha_t(r), exact 0 and pi at the endpoints."""
    t = _check_t(t)
    if not 0.0 <= r <= math.pi:
        raise DomainError(f"r must lie in [0, pi], got {r!r}")
    if r == 0.0:
        return 0.0
    if r == math.pi:
        return math.pi
    return 2.0 * math.atan(t * math.tan(0.5 * r))


def _ratio_cos_diff(t: float, r: float) -> tuple[float, float]:
    # sin(alpha)/sin(r) and cos(alpha) - cos(r) via the half-angle variable
    u = math.tan(0.5 * r)
    tu = t * u
    d = 1.0 + tu * tu
    e = 1.0 + u * u
    return t * e / d, 2.0 * u * u * (1.0 - t * t) / (d * e)


def pointwise_densities(m: int, t: float, r: float) -> tuple[float, float]:
    """(|dphi_t|^2, |tau(phi_t)|^2) at polar distance r in (0, pi)."""
    m = _check_m(m)
    t = _check_t(t)
    if not 0.0 < r < math.pi:
        raise DomainError(f"densities are defined on the open interval (0, pi), got r={r!r}")
    ratio, cos_diff = _ratio_cos_diff(t, r)
    sin_r = math.sin(r)
    dphi_sq = m * ratio * ratio
    tau_sq = (m - 2) ** 2 * ratio * ratio * (cos_diff / sin_r) ** 2
    return dphi_sq, tau_sq


def _smoothstep(y: float) -> float:
    # S(y) = 35 y^4 - 84 y^5 + 70 y^6 - 20 y^7, with S' = 140 y^3 (1-y)^3
    return y * y * y * y * (35.0 + y * (-84.0 + y * (70.0 - 20.0 * y)))


def _smoothstep_deriv(y: float) -> float:
    w = y * (1.0 - y)
    return 140.0 * w * w * w


def _integrate_over_r(f: Callable[[float], float],
                      config: QuadratureConfig) -> IntegralResult:
    def transformed(y: float) -> float:
        r = math.pi * _smoothstep(y)
        return f(r) * math.pi * _smoothstep_deriv(y)

    return integrate(transformed, 0.0, 1.0, config)


def evaluate_family(m: int, t: float,
                    quad: QuadratureConfig = DEFAULT_CONFIG) -> FamilyEvaluation:
    """Energy, bienergy and c-bienergy of phi_t on the unit m-sphere.

    The c-bienergy is integrated from its own density,

        (1/2) * omega_{S^{m-1}} * integral of
            sin^2(alpha) * ((m-2)^2 sin^{m-5} r (cos alpha - cos r)^2
                            + (2/3) m (m-1)(m-3) sin^{m-3} r) dr,

    not assembled from the other two, so the decomposition identity
    E2c = E2 + (2/3)(m-1)(m-3) E remains an independent cross-check.
    """
    m = _check_m(m)
    t = _check_t(t)
    c1 = float((m - 2) ** 2)
    c2 = 2.0 * m * (m - 1) * (m - 3) / 3.0

    def energy_density(r: float) -> float:
        ratio, _ = _ratio_cos_diff(t, r)
        return m * ratio * ratio * math.sin(r) ** (m - 1)

    def bienergy_density(r: float) -> float:
        if c1 == 0.0:
            return 0.0
        ratio, cos_diff = _ratio_cos_diff(t, r)
        return c1 * ratio * ratio * cos_diff * cos_diff * math.sin(r) ** (m - 3)

    def c_bienergy_density(r: float) -> float:
        ratio, cos_diff = _ratio_cos_diff(t, r)
        base = ratio * ratio
        value = c2 * base * math.sin(r) ** (m - 1)
        if c1:
            value += c1 * base * cos_diff * cos_diff * math.sin(r) ** (m - 3)
        return value

    half_omega = 0.5 * sphere_volume(m - 1)
    res_e = _integrate_over_r(energy_density, quad)
    res_e2 = _integrate_over_r(bienergy_density, quad)
    res_e2c = _integrate_over_r(c_bienergy_density, quad)
    return FamilyEvaluation(
        energy=half_omega * res_e.value,
        energy_error=half_omega * res_e.error_estimate,
        bienergy=half_omega * res_e2.value,
        bienergy_error=half_omega * res_e2.error_estimate,
        c_bienergy=half_omega * res_e2c.value,
        c_bienergy_error=half_omega * res_e2c.error_estimate,
    )


def c_bienergy_tangent_form_m4(t: float,
                               quad: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """The m=4 c-bienergy via the tangent half-angle variable x = tan(r/2).

    Independent cross-check of evaluate_family: the same functional as an
    improper integral over x in (0, inf), mapped onto (0, 1) by
    x = y/(1-y).  Constant in t, equal to 4 * omega_{S^4} = 32 pi^2 / 3.
    """
    t = _check_t(t)

    def density(x: float) -> float:
        txsq = (t * x) ** 2
        num = 64.0 * x ** 3 * t * t * (x * x * (1.0 - t * t) ** 2
                                       + 2.0 * (1.0 + txsq) ** 2)
        den = (1.0 + txsq) ** 4 * (1.0 + x * x) ** 2
        return num / den

    def transformed(y: float) -> float:
        x = y / (1.0 - y)
        return density(x) / ((1.0 - y) * (1.0 - y))

    result = integrate(transformed, 0.0, 1.0, quad)
    return 0.5 * sphere_volume(3) * result.value


def c_constant_exact(m: int) -> Fraction:
    """Rational coefficient of omega_{S^{m-1}} in the c-bienergy upper bound."""
    if not isinstance(m, int) or m < 5:
        raise DomainError(f"the upper-bound constant needs integer m >= 5, got {m!r}")
    return 2 * (m - 2) ** 2 + Fraction(m * (m - 1) * (m - 3), 3)


def c_constant(m: int) -> float:
    """The constant C = (2(m-2)^2 + m(m-1)(m-3)/3) * omega_{S^{m-1}}."""
    return float(c_constant_exact(m)) * sphere_volume(m - 1)


@dataclass(frozen=True)
class EpsilonCertificate:
    eta: float
    rho: float
    k: float
    delta: float
    delta_prime: float


def epsilon_schedule(m: int, eps: float) -> tuple[float, EpsilonCertificate]:
    """Parameter t with guaranteed E2c(phi_t) < eps, for m >= 5.

    Follows the constructive chain eta = eps/C, rho = pi - eta/2,
    K = tan(rho/2), delta = arcsin(sqrt(eta/(2 rho))) and
    delta' = tan(delta/2)/K, returning the representative t = delta'/2.
    eta is clamped to pi for very large eps (keeps rho positive and only
    shrinks t, so the guarantee survives); the arcsin argument is clamped
    to 1 and delta capped strictly below pi/2 for the same reason.
    """
    if not isinstance(m, int) or m < 5:
        raise DomainError(f"the construction needs integer m >= 5, got {m!r}")
    eps = float(eps)
    if not (eps > 0.0) or not math.isfinite(eps):
        raise DomainError(f"eps must be positive, got {eps!r}")
    eta = eps / c_constant(m)
    if eta > math.pi:
        eta = math.pi
    rho = math.pi - 0.5 * eta
    k = math.tan(0.5 * rho)
    delta = math.asin(min(1.0, math.sqrt(eta / (2.0 * rho))))
    cap = 0.5 * math.pi * (1.0 - 1e-12)
    if delta > cap:
        delta = cap
    delta_prime = math.tan(0.5 * delta) / k
    t = 0.5 * delta_prime
    return t, EpsilonCertificate(eta=eta, rho=rho, k=k, delta=delta,
                                 delta_prime=delta_prime)


def upper_bound(m: int, t: float,
                quad: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """The bound C * integral of sin^2(alpha_t) over (0, pi), m >= 5.

    Strictly exceeds the c-bienergy of phi_t (up to quadrature error on
    both sides); the gap is what makes the epsilon construction work.
    """
    t = _check_t(t)
    constant = c_constant(m)

    def density(r: float) -> float:
        ratio, _ = _ratio_cos_diff(t, r)
        s = ratio * math.sin(r)
        return s * s

    return constant * _integrate_over_r(density, quad).value
