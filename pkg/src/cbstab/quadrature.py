"""Composite Gauss-Legendre quadrature and exact sphere-volume constants.

The integration rule is open (all nodes strictly interior), so integrands
only defined on the open interval are handled without special casing.
Sphere volumes and Wallis integrals are computed from exact integer
recursions; the float versions are thin wrappers over exact rational
coefficients times a power of pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .errors import DomainError, NonFiniteSample, QuadratureFailure


@dataclass(frozen=True)
class QuadratureConfig:
    base_nodes: int = 16
    initial_panels: int = 8
    max_doublings: int = 12
    rel_tolerance: float = 1e-11
    abs_tolerance: float = 1e-12

    def __post_init__(self):
        if self.base_nodes < 4:
            raise DomainError(f"base_nodes must be >= 4, got {self.base_nodes}")
        if self.initial_panels < 1:
            raise DomainError(f"initial_panels must be >= 1, got {self.initial_panels}")
        if self.max_doublings < 1:
            raise DomainError(f"max_doublings must be >= 1, got {self.max_doublings}")
        if not (self.rel_tolerance > 0.0 and self.abs_tolerance > 0.0):
            raise DomainError("tolerances must be positive")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    panels_used: int


@lru_cache(maxsize=None)
def _legendre_rule(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Nodes and weights of the n-point Gauss-Legendre rule on (-1, 1)."""
    nodes = []
    weights = []
    for i in range(1, n + 1):
        x = math.cos(math.pi * (i - 0.25) / (n + 0.5))
        dp = 0.0
        for _ in range(100):
            p0, p1 = 1.0, x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1.0)
            dx = p1 / dp
            x -= dx
            if abs(dx) < 1e-15:
                break
        nodes.append(x)
        weights.append(2.0 / ((1.0 - x * x) * dp * dp))
    return tuple(nodes), tuple(weights)


def _composite(f: Callable[[float], float], a: float, b: float, npanels: int,
               nodes: tuple[float, ...], weights: tuple[float, ...]) -> float:
    h = (b - a) / npanels
    half = 0.5 * h
    terms = []
    for p in range(npanels):
        center = a + (p + 0.5) * h
        for x, w in zip(nodes, weights):
            fx = f(center + half * x)
            if not math.isfinite(fx):
                raise NonFiniteSample(
                    f"integrand returned {fx!r} at x={center + half * x!r}")
            terms.append(w * fx)
    # fsum keeps the result independent of any panel-level parallel split
    return half * math.fsum(terms)


def integrate(f: Callable[[float], float], a: float, b: float,
              config: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """Integrate f over (a, b), doubling panels until the levels agree.

    The reported error_estimate is the difference between the final two
    refinement levels; it is a standard heuristic, not a rigorous bound.
    Raises QuadratureFailure if max_doublings is exhausted above tolerance
    and NonFiniteSample if the integrand misbehaves at a node.
    """
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    nodes, weights = _legendre_rule(config.base_nodes)
    panels = config.initial_panels
    previous = _composite(f, a, b, panels, nodes, weights)
    for _ in range(config.max_doublings):
        panels *= 2
        current = _composite(f, a, b, panels, nodes, weights)
        err = abs(current - previous)
        if err <= config.abs_tolerance or err <= config.rel_tolerance * abs(current):
            return IntegralResult(value=current, error_estimate=err, panels_used=panels)
        previous = current
    raise QuadratureFailure(
        f"no convergence after {config.max_doublings} doublings "
        f"({panels} panels): last change {err:.3e}")


def _double_factorial(n: int) -> int:
    # (-1)!! = 0!! = 1 by convention
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def sin_power_integral_exact(p: int) -> tuple[Fraction, int]:
    """Integral of sin^p over (0, pi) as (rational coefficient, power of pi)."""
    if p < 0:
        raise DomainError(f"power must be >= 0, got {p}")
    if p % 2 == 0:
        return Fraction(_double_factorial(p - 1), _double_factorial(p)), 1
    return Fraction(2 * _double_factorial(p - 1), _double_factorial(p)), 0


def sin_power_integral(p: int) -> float:
    """Wallis value of the integral of sin^p r over (0, pi)."""
    coeff, k = sin_power_integral_exact(p)
    return float(coeff) * math.pi ** k


def sphere_volume_exact(n: int) -> tuple[Fraction, int]:
    """Volume of the unit n-sphere as (rational coefficient, power of pi).

    Uses the half-integer Gamma recursion, so the coefficient is exact:
    odd n gives 2/k! type values, even n gives 2*4^k*k!/(2k)!.
    """
    if n < 1:
        raise DomainError(f"sphere dimension must be >= 1, got {n}")
    if n % 2 == 1:
        k = (n + 1) // 2
        return Fraction(2, math.factorial(k - 1)), k
    k = n // 2
    return Fraction(2 * 4 ** k * math.factorial(k), math.factorial(2 * k)), k


def sphere_volume(n: int) -> float:
    """Volume of the Euclidean unit n-sphere (2*pi^((n+1)/2)/Gamma((n+1)/2))."""
    coeff, k = sphere_volume_exact(n)
    return float(coeff) * math.pi ** k
