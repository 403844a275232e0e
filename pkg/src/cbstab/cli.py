"""Command-line frontend: index/nullity tables, energy curves, spectrum dumps
and the verification suites.  Documents go to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 failed verification checks, 2 strict-validation
failure, 3 numerical failure, 64 usage error, 66 file error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import replace
from fractions import Fraction

from .core import (
    EinsteinSpace,
    Functional,
    contribution_cutoff,
    index_nullity,
    validate_spectrum,
)
from .errors import (
    BoundViolation,
    CbstabError,
    DomainError,
    IncompleteSpectrum,
    InvalidBand,
    NonFiniteSample,
    ParseError,
    QuadratureFailure,
)
from .family import T_MAX, T_MIN, evaluate_family
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .spectra import (
    ClosedFormSphere,
    SpectrumSource,
    circle_bands,
    load_spectrum,
    sphere_bands,
    spectrum_document,
)
from .verify import SUITES, run_suites

QUAD_RTOL_ENV = "CBSTAB_QUAD_RTOL"

_FUNCTIONALS = {
    "e": Functional.ENERGY,
    "e2": Functional.BIENERGY,
    "e2c": Functional.CONFORMAL_BIENERGY,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational 'p/q': {text!r}") from exc


def _t_values(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("need at least one t value")
    for t in values:
        if not (T_MIN <= t <= T_MAX):
            raise argparse.ArgumentTypeError(
                f"t={t:g} outside the supported range [{T_MIN:g}, {T_MAX:g}]")
    return values


def _suite_list(text: str) -> list[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    for name in names:
        if name not in SUITES:
            raise argparse.ArgumentTypeError(
                f"unknown suite {name!r}; available: {', '.join(SUITES)}")
    return names


def _quad_config() -> QuadratureConfig:
    raw = os.environ.get(QUAD_RTOL_ENV)
    if raw is None:
        return DEFAULT_CONFIG
    try:
        rtol = float(raw)
    except ValueError as exc:
        raise _UsageError(f"{QUAD_RTOL_ENV}={raw!r} is not a float") from exc
    if not rtol > 0.0:
        raise _UsageError(f"{QUAD_RTOL_ENV} must be positive, got {raw!r}")
    return replace(DEFAULT_CONFIG, rel_tolerance=rtol)


def _f17(value: float) -> float:
    # quantize through 17 significant digits so documents are reproducible
    return float(format(value, ".17g"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cbstab", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="index/nullity of the identity map")
    p_index.add_argument("--dim", type=int, help="sphere dimension (built-in spectrum)")
    p_index.add_argument("--lambda", dest="einstein_constant", type=_rational,
                         help="Einstein constant as 'p/q' (default: unit sphere m-1)")
    p_index.add_argument("--spectrum-file", help="JSON spectrum file instead of a built-in sphere")
    p_index.add_argument("--functional", choices=["e", "e2", "e2c", "all"], default="all")
    p_index.add_argument("--strict", action="store_true",
                         help="treat validation warnings as errors (exit 2)")
    p_index.set_defaults(func=_cmd_index)

    p_energy = sub.add_parser("energy", help="evaluate E, E2, E2c along the family")
    p_energy.add_argument("--dim", type=int, required=True)
    p_energy.add_argument("--t", type=_t_values, required=True,
                          help="comma-separated parameter values, e.g. 0.5,1,2")
    p_energy.add_argument("--format", choices=["csv", "json"], default="csv")
    p_energy.set_defaults(func=_cmd_energy)

    p_spectrum = sub.add_parser("spectrum", help="dump closed-form bands as a spectrum file")
    p_spectrum.add_argument("--dim", type=int, required=True)
    p_spectrum.add_argument("--lambda", dest="einstein_constant", type=_rational,
                            help="Einstein constant as 'p/q' (default: unit sphere m-1)")
    p_spectrum.add_argument("--up-to", type=_rational,
                            help="largest eigenvalue to emit (default: contribution cutoff)")
    p_spectrum.add_argument("--format", choices=["json"], default="json")
    p_spectrum.set_defaults(func=_cmd_spectrum)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument("--suites", type=_suite_list, default=list(SUITES),
                          help=f"comma-separated subset of: {', '.join(SUITES)}")
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def _space_and_bands(dim: int, einstein_constant: Fraction | None, up_to: Fraction):
    """Built-in space plus bands covering [0, up_to]."""
    if dim == 1:
        if einstein_constant not in (None, 0):
            raise _UsageError("the circle is flat; --lambda must be 0 or omitted for --dim 1")
        return circle_bands(up_to)
    lam = einstein_constant if einstein_constant is not None else Fraction(dim - 1)
    if lam <= 0:
        raise _UsageError(f"--lambda must be positive for dim >= 2, got {lam}")
    space = EinsteinSpace(dimension=dim, einstein_constant=lam,
                          name=f"S^{dim}" if lam == dim - 1 else f"S^{dim} (lambda={lam})")
    return space, sphere_bands(dim, lam, up_to)


def _selected_functionals(selector: str) -> list[Functional]:
    if selector == "all":
        return [Functional.ENERGY, Functional.BIENERGY, Functional.CONFORMAL_BIENERGY]
    return [_FUNCTIONALS[selector]]


def _report_doc(report) -> dict:
    return {
        "functional": report.functional.value,
        "index": report.index,
        "nullity": report.nullity,
        "contributing_bands": [
            {
                "eigenvalue": str(band.eigenvalue),
                "multiplicity": band.multiplicity,
                "kind": band.kind.value,
                "jacobi_eigenvalue": str(jacobi),
            }
            for band, jacobi in report.contributing_bands
        ],
    }


def _source_doc(source: SpectrumSource) -> dict:
    if isinstance(source.origin, ClosedFormSphere):
        return {
            "origin": "closed_form_sphere",
            "dimension": source.origin.dimension,
            "einstein_constant": str(source.origin.einstein_constant),
        }
    return {"origin": "file", "path": source.origin.path}


def _cmd_index(args) -> int:
    kinds = _selected_functionals(args.functional)
    doc_warnings: list[str] = []
    if args.spectrum_file is not None:
        if args.dim is not None or args.einstein_constant is not None:
            raise _UsageError("--spectrum-file excludes --dim/--lambda")
        loaded = load_spectrum(args.spectrum_file, strict=args.strict)
        space, bands, source = loaded.space, loaded.bands, loaded.source
        declared = source.declared_complete_up_to
        if args.strict and declared is None:
            raise IncompleteSpectrum(
                "strict mode requires the spectrum file to declare complete_up_to")
        doc_warnings.extend(loaded.warnings)
    else:
        if args.dim is None:
            raise _UsageError("need either --dim (built-in sphere) or --spectrum-file")
        if args.dim < 1:
            raise _UsageError(f"--dim must be >= 1, got {args.dim}")
        probe_space = (EinsteinSpace(args.dim, args.einstein_constant
                                     if args.einstein_constant is not None
                                     else Fraction(max(args.dim - 1, 0))))
        up_to = max(contribution_cutoff(probe_space, kind) for kind in kinds)
        space, bands = _space_and_bands(args.dim, args.einstein_constant, up_to)
        declared = up_to
        source = SpectrumSource(
            origin=ClosedFormSphere(space.dimension, space.einstein_constant),
            declared_complete_up_to=declared)

    if args.strict:
        validate_spectrum(space, bands, strict=True)
    else:
        report = validate_spectrum(space, bands, strict=False)
        doc_warnings.extend(w for w in report.warnings if w not in doc_warnings)

    reports = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for kind in kinds:
            reports.append(index_nullity(space, bands, kind, complete_up_to=declared))
    doc_warnings.extend(str(w.message) for w in caught)

    doc = {
        "space": {
            "name": space.name,
            "dimension": space.dimension,
            "einstein_constant": str(space.einstein_constant),
            "scalar_curvature": str(space.scalar_curvature),
        },
        "source": _source_doc(source),
        "strict": bool(args.strict),
        "complete_up_to": None if declared is None else str(declared),
        "warnings": doc_warnings,
        "reports": [_report_doc(r) for r in reports],
    }
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_energy(args) -> int:
    if args.dim < 2:
        raise _UsageError(f"--dim must be >= 2 for the family, got {args.dim}")
    config = _quad_config()
    rows = []
    for t in args.t:  # compute everything first so failures suppress all output
        ev = evaluate_family(args.dim, t, config)
        rows.append((t, ev))
    if args.format == "json":
        doc = {
            "dimension": args.dim,
            "rows": [
                {
                    "t": _f17(t),
                    "energy": _f17(ev.energy),
                    "energy_error": _f17(ev.energy_error),
                    "bienergy": _f17(ev.bienergy),
                    "bienergy_error": _f17(ev.bienergy_error),
                    "c_bienergy": _f17(ev.c_bienergy),
                    "c_bienergy_error": _f17(ev.c_bienergy_error),
                }
                for t, ev in rows
            ],
        }
        print(json.dumps(doc, indent=2))
    else:
        lines = ["t,energy,energy_error,bienergy,bienergy_error,c_bienergy,c_bienergy_error"]
        for t, ev in rows:
            lines.append(",".join(format(v, ".17g") for v in (
                t, ev.energy, ev.energy_error, ev.bienergy, ev.bienergy_error,
                ev.c_bienergy, ev.c_bienergy_error)))
        print("\n".join(lines))
    return 0


def _cmd_spectrum(args) -> int:
    if args.dim < 1:
        raise _UsageError(f"--dim must be >= 1, got {args.dim}")
    lam = args.einstein_constant
    probe = EinsteinSpace(args.dim, lam if lam is not None else Fraction(max(args.dim - 1, 0)))
    up_to = args.up_to
    if up_to is None:
        up_to = max(contribution_cutoff(probe, kind) for kind in Functional)
    elif up_to < 0:
        raise _UsageError(f"--up-to must be >= 0, got {up_to}")
    space, bands = _space_and_bands(args.dim, lam, up_to)
    print(json.dumps(spectrum_document(space, bands, complete_up_to=up_to), indent=2))
    return 0


def _cmd_verify(args) -> int:
    results = run_suites(args.suites, quad=_quad_config())
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        doc = {
            "checks": [
                {
                    "suite": r.suite,
                    "name": r.name,
                    "expected": r.expected,
                    "got": r.got,
                    "tolerance": r.tolerance,
                    "passed": r.passed,
                }
                for r in results
            ],
            "total": len(results),
            "failed": len(failed),
            "ok": not failed,
        }
        print(json.dumps(doc, indent=2))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}/{r.name}: expected {r.expected}, "
                  f"got {r.got} (tolerance: {r.tolerance})")
        print(f"{len(results)} checks: {len(results) - len(failed)} passed, "
              f"{len(failed)} failed")
    return 0 if not failed else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"cbstab: usage error: {exc}", file=sys.stderr)
        return 64
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"cbstab: usage error: {exc}", file=sys.stderr)
        return 64
    except (ParseError, InvalidBand) as exc:
        print(f"cbstab: spectrum file error: {exc}", file=sys.stderr)
        return 66
    except OSError as exc:
        print(f"cbstab: file error: {exc}", file=sys.stderr)
        return 66
    except (BoundViolation, IncompleteSpectrum) as exc:
        print(f"cbstab: validation failure: {exc}", file=sys.stderr)
        return 2
    except (QuadratureFailure, NonFiniteSample) as exc:
        print(f"cbstab: numerical failure: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"cbstab: usage error: {exc}", file=sys.stderr)
        return 64
    except CbstabError as exc:
        print(f"cbstab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
