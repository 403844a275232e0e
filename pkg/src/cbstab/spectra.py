"""Closed-form Hodge-Laplacian spectra of round spheres and spectrum files.

For the round m-sphere with Einstein constant lambda (unit sphere:
lambda = m - 1) the vector-field spectrum splits into gradient bands

    mu_k = k*(k + m - 1) * lambda/(m - 1),          k >= 1,
    N(m, k) = (2k + m - 1) * (k + m - 2)! / (k! * (m - 1)!)

and divergence-free bands

    mu'_k = (k*(k + m - 1) + m - 2) * lambda/(m - 1),   k >= 1,
    M(m, k) = k*(k + m - 1)*(2k + m - 1)*(k + m - 3)! / ((k + 1)! * (m - 2)!).

The first divergence-free band is exactly 2*lambda with multiplicity
m*(m+1)/2, the Killing fields.  The circle is handled separately since the
factorial formulas degenerate at m = 1.

Other spaces enter through JSON spectrum files; rationals are parsed
exactly from "p/q" strings, never through floats.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import (
    BandKind,
    EinsteinSpace,
    Rational,
    SpectralBand,
    as_rational,
    validate_spectrum,
)
from .errors import DomainError, InvalidBand, MissingField, ParseError


def gradient_multiplicity(m: int, k: int) -> int:
    """Dimension N(m, k) of the k-th gradient band on the m-sphere."""
    if m < 2 or k < 1:
        raise DomainError(f"need m >= 2 and k >= 1, got m={m}, k={k}")
    num = (2 * k + m - 1) * math.factorial(k + m - 2)
    den = math.factorial(k) * math.factorial(m - 1)
    if num % den:
        raise AssertionError(f"N({m},{k}) is not an integer; formula broken")
    return num // den


def divergence_free_multiplicity(m: int, k: int) -> int:
    """Dimension M(m, k) of the k-th divergence-free band on the m-sphere."""
    if m < 2 or k < 1:
        raise DomainError(f"need m >= 2 and k >= 1, got m={m}, k={k}")
    num = k * (k + m - 1) * (2 * k + m - 1) * math.factorial(k + m - 3)
    den = math.factorial(k + 1) * math.factorial(m - 2)
    if num % den:
        raise AssertionError(f"M({m},{k}) is not an integer; formula broken")
    return num // den


def _check_sphere_args(m: int, einstein_constant: Rational, up_to: Rational) -> tuple[Fraction, Fraction]:
    if not isinstance(m, int) or m < 2:
        raise DomainError(f"sphere generators need integer m >= 2, got {m!r}")
    lam = as_rational(einstein_constant)
    if lam <= 0:
        raise DomainError(f"Einstein constant must be positive, got {lam}")
    bound = as_rational(up_to)
    if bound < 0:
        raise DomainError(f"up_to must be >= 0, got {bound}")
    return lam, bound


def gradient_bands(m: int, einstein_constant: Rational, up_to: Rational) -> list[SpectralBand]:
    """Gradient bands of the round m-sphere with eigenvalue <= up_to."""
    lam, bound = _check_sphere_args(m, einstein_constant, up_to)
    scale = lam / (m - 1)
    bands = []
    k = 1
    while True:
        mu = k * (k + m - 1) * scale
        if mu > bound:
            break
        bands.append(SpectralBand(mu, gradient_multiplicity(m, k), BandKind.GRADIENT))
        k += 1
    return bands


def divergence_free_bands(m: int, einstein_constant: Rational, up_to: Rational) -> list[SpectralBand]:
    """Divergence-free bands of the round m-sphere with eigenvalue <= up_to."""
    lam, bound = _check_sphere_args(m, einstein_constant, up_to)
    scale = lam / (m - 1)
    bands = []
    k = 1
    while True:
        mu = (k * (k + m - 1) + m - 2) * scale
        if mu > bound:
            break
        bands.append(SpectralBand(mu, divergence_free_multiplicity(m, k),
                                  BandKind.DIVERGENCE_FREE))
        k += 1
    return bands


_KIND_ORDER = {BandKind.GRADIENT: 0, BandKind.DIVERGENCE_FREE: 1}


def sphere_bands(m: int, einstein_constant: Rational, up_to: Rational) -> list[SpectralBand]:
    """All sphere bands up to the bound, sorted by eigenvalue then kind."""
    bands = gradient_bands(m, einstein_constant, up_to)
    bands += divergence_free_bands(m, einstein_constant, up_to)
    bands.sort(key=lambda b: (b.eigenvalue, _KIND_ORDER[b.kind]))
    return bands


def unit_sphere(m: int) -> EinsteinSpace:
    """The unit m-sphere (Einstein constant m - 1; flat for m = 1)."""
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"need integer m >= 1, got {m!r}")
    return EinsteinSpace(dimension=m, einstein_constant=Fraction(m - 1), name=f"S^{m}")


def circle_bands(up_to: Rational) -> tuple[EinsteinSpace, list[SpectralBand]]:
    """The flat circle and its bands: rotation field at 0 plus k^2 harmonics."""
    bound = as_rational(up_to)
    if bound < 0:
        raise DomainError(f"up_to must be >= 0, got {bound}")
    space = unit_sphere(1)
    bands = [SpectralBand(Fraction(0), 1, BandKind.DIVERGENCE_FREE)]
    k = 1
    while Fraction(k * k) <= bound:
        bands.append(SpectralBand(Fraction(k * k), 2, BandKind.GRADIENT))
        k += 1
    return space, bands


@dataclass(frozen=True)
class ClosedFormSphere:
    dimension: int
    einstein_constant: Fraction


@dataclass(frozen=True)
class FileOrigin:
    path: str


@dataclass(frozen=True)
class SpectrumSource:
    origin: Union[ClosedFormSphere, FileOrigin]
    declared_complete_up_to: Fraction | None


@dataclass(frozen=True)
class LoadedSpectrum:
    space: EinsteinSpace
    bands: tuple[SpectralBand, ...]
    source: SpectrumSource
    warnings: tuple[str, ...]


_TOP_FIELDS = {"name", "dimension", "einstein_constant", "complete_up_to", "bands"}
_BAND_FIELDS = {"eigenvalue", "multiplicity", "kind"}
_KIND_NAMES = {kind.value: kind for kind in BandKind}


def _rational_field(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise ParseError(f"{where} must be an integer or a 'p/q' string, got {raw!r}")
    if not isinstance(raw, (str, int)):
        raise ParseError(f"{where} must be an integer or a 'p/q' string, got {raw!r}")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where} is not a rational: {raw!r} ({exc})") from exc


def _parse_band(raw, position: int, strict: bool) -> SpectralBand:
    where = f"bands[{position}]"
    if not isinstance(raw, dict):
        raise ParseError(f"{where} must be an object, got {type(raw).__name__}")
    for name in _BAND_FIELDS:
        if name not in raw:
            raise MissingField(f"{where} is missing required field {name!r}")
    if strict:
        unknown = set(raw) - _BAND_FIELDS
        if unknown:
            raise ParseError(f"{where} has unknown fields {sorted(unknown)}")
    eigenvalue = _rational_field(raw["eigenvalue"], f"{where}.eigenvalue")
    mult = raw["multiplicity"]
    if isinstance(mult, bool) or not isinstance(mult, int):
        raise InvalidBand(f"{where}.multiplicity must be an integer, got {mult!r}")
    kind_name = raw["kind"]
    if kind_name not in _KIND_NAMES:
        raise ParseError(
            f"{where}.kind must be one of {sorted(_KIND_NAMES)}, got {kind_name!r}")
    if eigenvalue < 0:
        raise InvalidBand(f"{where}.eigenvalue must be >= 0, got {eigenvalue}")
    return SpectralBand(eigenvalue, mult, _KIND_NAMES[kind_name])


def load_spectrum(path: str | os.PathLike, strict: bool = False) -> LoadedSpectrum:
    """Load a JSON spectrum file and validate its bounds non-strictly.

    Bound violations and rigidity notes from validate_spectrum become the
    `warnings` of the result; structural problems raise ParseError,
    MissingField or InvalidBand.
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    for name in ("name", "dimension", "einstein_constant", "bands"):
        if name not in doc:
            raise MissingField(f"{path}: missing required field {name!r}")
    if strict:
        unknown = set(doc) - _TOP_FIELDS
        if unknown:
            raise ParseError(f"{path}: unknown fields {sorted(unknown)}")
    dimension = doc["dimension"]
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise ParseError(f"{path}: dimension must be a positive integer, got {dimension!r}")
    lam = _rational_field(doc["einstein_constant"], "einstein_constant")
    if lam < 0:
        raise ParseError(f"{path}: einstein_constant must be >= 0, got {lam}")
    name = doc["name"]
    if not isinstance(name, str):
        raise ParseError(f"{path}: name must be a string, got {name!r}")
    complete_up_to = None
    if doc.get("complete_up_to") is not None:
        complete_up_to = _rational_field(doc["complete_up_to"], "complete_up_to")
    if not isinstance(doc["bands"], list):
        raise ParseError(f"{path}: bands must be an array")
    bands = tuple(_parse_band(raw, i, strict) for i, raw in enumerate(doc["bands"]))
    space = EinsteinSpace(dimension=dimension, einstein_constant=lam, name=name)
    source = SpectrumSource(origin=FileOrigin(path=str(path)),
                            declared_complete_up_to=complete_up_to)
    report = validate_spectrum(space, bands, strict=False)
    return LoadedSpectrum(space=space, bands=bands, source=source,
                          warnings=report.warnings)


def spectrum_document(space: EinsteinSpace, bands: list[SpectralBand] | tuple[SpectralBand, ...],
                      complete_up_to: Rational | None = None) -> dict:
    """Serialize a spectrum into the file format (round-trips through load_spectrum)."""
    doc = {
        "name": space.name if space.name is not None else f"dim-{space.dimension} space",
        "dimension": space.dimension,
        "einstein_constant": str(space.einstein_constant),
    }
    if complete_up_to is not None:
        doc["complete_up_to"] = str(as_rational(complete_up_to))
    doc["bands"] = [
        {
            "eigenvalue": str(band.eigenvalue),
            "multiplicity": band.multiplicity,
            "kind": band.kind.value,
        }
        for band in bands
    ]
    return doc
