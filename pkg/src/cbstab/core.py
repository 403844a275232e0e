"""Exact stability engine for identity maps of compact Einstein manifolds.

On an Einstein manifold (Ric = lambda*g) the Jacobi operators of the
energy, bienergy and conformal-bienergy functionals at the identity map
act on a Hodge-Laplacian eigenfield with eigenvalue mu as multiplication
by

    energy:      mu - 2*lambda
    bienergy:    (mu - 2*lambda)^2
    c-bienergy:  (mu - 2*lambda) * (mu - (2/3)*(6 - m)*lambda)

so index and nullity are sign counts over the spectrum.  Everything here
is exact rational arithmetic; zero detection never involves floats.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .errors import (
    BoundViolation,
    DomainError,
    IncompleteSpectrum,
    InvalidBand,
    SpectrumCompletenessWarning,
)

Rational = Union[Fraction, int, str]


def as_rational(value: Rational) -> Fraction:
    """Coerce int / "p/q" string / Fraction to an exact Fraction."""
    if isinstance(value, float):
        raise DomainError(
            f"refusing float {value!r}: eigenvalues and Einstein constants are exact rationals")
    return Fraction(value)


class BandKind(Enum):
    GRADIENT = "gradient"
    DIVERGENCE_FREE = "divergence_free"


class Functional(Enum):
    ENERGY = "energy"
    BIENERGY = "bienergy"
    CONFORMAL_BIENERGY = "c_bienergy"


@dataclass(frozen=True)
class EinsteinSpace:
    """Compact Einstein manifold: dimension m and Einstein constant lambda >= 0."""

    dimension: int
    einstein_constant: Fraction
    name: str | None = None

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.dimension!r}")
        object.__setattr__(self, "einstein_constant", as_rational(self.einstein_constant))
        if self.einstein_constant < 0:
            raise DomainError(f"Einstein constant must be >= 0, got {self.einstein_constant}")

    @property
    def scalar_curvature(self) -> Fraction:
        return self.dimension * self.einstein_constant


@dataclass(frozen=True)
class SpectralBand:
    """One Hodge-Laplacian eigenvalue on vector fields, with multiplicity and kind."""

    eigenvalue: Fraction
    multiplicity: int
    kind: BandKind

    def __post_init__(self):
        object.__setattr__(self, "eigenvalue", as_rational(self.eigenvalue))
        _check_band(self)


def _check_band(band) -> None:
    if not isinstance(band.multiplicity, int) or band.multiplicity < 1:
        raise InvalidBand(f"multiplicity must be a positive integer, got {band.multiplicity!r}")
    if band.eigenvalue < 0:
        raise InvalidBand(f"eigenvalue must be >= 0, got {band.eigenvalue}")


@dataclass(frozen=True)
class IndexReport:
    """Index/nullity of one functional plus the bands that realize them."""

    functional: Functional
    index: int
    nullity: int
    contributing_bands: tuple[tuple[SpectralBand, Fraction], ...] = field(default=())


def jacobi_eigenvalue(kind: Functional, space: EinsteinSpace, mu: Rational) -> Fraction:
    """Eigenvalue of the Jacobi operator of `kind` on a band with eigenvalue mu."""
    mu = as_rational(mu)
    if mu < 0:
        raise DomainError(f"Hodge eigenvalue must be >= 0, got {mu}")
    lam = space.einstein_constant
    j = mu - 2 * lam
    if kind is Functional.ENERGY:
        return j
    if kind is Functional.BIENERGY:
        return j * j
    return j * (mu - Fraction(2, 3) * (6 - space.dimension) * lam)


def contribution_cutoff(space: EinsteinSpace, kind: Functional) -> Fraction:
    """Least mu* with Jacobi eigenvalue > 0 for every mu > mu*."""
    two_lam = 2 * space.einstein_constant
    if kind is Functional.CONFORMAL_BIENERGY:
        other_root = Fraction(2, 3) * (6 - space.dimension) * space.einstein_constant
        return max(two_lam, other_root)
    return two_lam


def _merge_bands(bands: Iterable[SpectralBand]) -> list[SpectralBand]:
    # file-sourced spectra may repeat (eigenvalue, kind); merge by summing
    merged: dict[tuple[Fraction, BandKind], int] = {}
    for band in bands:
        _check_band(band)
        key = (band.eigenvalue, band.kind)
        merged[key] = merged.get(key, 0) + band.multiplicity
    return [SpectralBand(eig, mult, kind) for (eig, kind), mult in merged.items()]


_KIND_ORDER = {BandKind.GRADIENT: 0, BandKind.DIVERGENCE_FREE: 1}


def index_nullity(space: EinsteinSpace, bands: Iterable[SpectralBand], kind: Functional,
                  complete_up_to: Rational | None = None) -> IndexReport:
    """Exact index and nullity of `kind` at the identity map of `space`.

    `complete_up_to` declares that `bands` lists every eigenvalue up to that
    bound.  If the declared bound does not reach the contribution cutoff the
    counts could miss negative or zero bands, so IncompleteSpectrum is
    raised.  Without a declaration a SpectrumCompletenessWarning is emitted
    and the computation proceeds on the bands given.
    """
    merged = _merge_bands(bands)
    cutoff = contribution_cutoff(space, kind)
    if complete_up_to is not None:
        if as_rational(complete_up_to) < cutoff:
            raise IncompleteSpectrum(
                f"bands declared complete up to {complete_up_to} but contributions "
                f"extend to {cutoff}")
    else:
        warnings.warn(
            "band list has no declared completeness bound; index/nullity may undercount",
            SpectrumCompletenessWarning, stacklevel=2)

    index = 0
    nullity = 0
    contributing = []
    for band in merged:
        j = jacobi_eigenvalue(kind, space, band.eigenvalue)
        if j < 0:
            index += band.multiplicity
            contributing.append((band, j))
        elif j == 0:
            nullity += band.multiplicity
            contributing.append((band, j))
    contributing.sort(key=lambda pair: (pair[0].eigenvalue, _KIND_ORDER[pair[0].kind]))
    return IndexReport(functional=kind, index=index, nullity=nullity,
                       contributing_bands=tuple(contributing))


@dataclass(frozen=True)
class ValidationIssue:
    band: SpectralBand
    severity: str  # "violation" or "rigidity"
    message: str


@dataclass(frozen=True)
class SpectrumValidation:
    issues: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not any(issue.severity == "violation" for issue in self.issues)

    @property
    def warnings(self) -> tuple[str, ...]:
        return tuple(issue.message for issue in self.issues)


def validate_spectrum(space: EinsteinSpace, bands: Iterable[SpectralBand],
                      strict: bool = False) -> SpectrumValidation:
    """Check bands against the Lichnerowicz-Obata and divergence-free bounds.

    Gradient bands must satisfy mu >= m*lambda/(m-1) (equality only on the
    round sphere, reported as a rigidity note); divergence-free bands must
    satisfy mu >= 2*lambda.  Both checks are vacuous for lambda = 0 and are
    skipped.  In strict mode a violation raises BoundViolation.
    """
    lam = space.einstein_constant
    if lam == 0:
        return SpectrumValidation(issues=())
    m = space.dimension
    obata = Fraction(m, m - 1) * lam if m > 1 else None
    issues = []
    for band in bands:
        _check_band(band)
        if band.kind is BandKind.GRADIENT and obata is not None:
            if band.eigenvalue < obata:
                issues.append(ValidationIssue(
                    band, "violation",
                    f"gradient band mu={band.eigenvalue} below Lichnerowicz-Obata "
                    f"bound {obata}"))
            elif band.eigenvalue == obata:
                issues.append(ValidationIssue(
                    band, "rigidity",
                    f"gradient band mu={band.eigenvalue} saturates the Obata bound: "
                    f"round sphere only"))
        elif band.kind is BandKind.DIVERGENCE_FREE:
            if band.eigenvalue < 2 * lam:
                issues.append(ValidationIssue(
                    band, "violation",
                    f"divergence-free band mu={band.eigenvalue} below 2*lambda={2 * lam}"))
    if strict:
        for issue in issues:
            if issue.severity == "violation":
                raise BoundViolation(issue.message, band=issue.band)
    return SpectrumValidation(issues=tuple(issues))
