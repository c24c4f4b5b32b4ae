"""Command-line front end.

Usage examples::

    mlbaz radius --lambda 1 --gamma 1 --theta 1
    mlbaz apply --m 0 --lambda 1 --alpha 0 --beta 1 -i f.json
    mlbaz membership --measure mu.json --k 4 --rho 0 --order 2048
    mlbaz verify --theorem 2.1 --trials 200 --seed 42

Results go to standard output (or ``-o``) as JSON; ``radius --scan``
accepts ``--csv``.  Exit status: 0 success, 1 domain error (error JSON on
stderr), 2 usage error, 3 when ``verify`` reports failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import classes, ml_operator, theorems
from .classes import ClassParams, DiskProbe, HerglotzMeasure
from .errors import DomainError, MLBazError
from .ml_operator import OperatorParams
from .series import TruncatedSeries, default_order
from .special import QuadratureSpec

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_FAILURES = 0, 1, 2, 3


def parse_complex(text: str) -> complex:
    """Parse ``"re"`` or ``"re+imi"`` (``j`` is accepted as well)."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from None


def dumps(data) -> str:
    """Canonical JSON: sorted keys, two-space indent, shortest round-trip floats."""
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from None


def _read_series(path: str) -> TruncatedSeries:
    return TruncatedSeries.from_json(_read_json(path))


def _emit(args, text: str) -> None:
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# -- shared flag groups ------------------------------------------------------


def _add_operator_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("operator parameters")
    g.add_argument("--m", type=int, default=0, help="operator power m >= 0")
    g.add_argument("--lambda", dest="lam", type=float, default=1.0, help="lambda >= 0")
    g.add_argument("--alpha", type=parse_complex, default=0j, help="alpha, e.g. 1.3+0.2i")
    g.add_argument("--beta", type=parse_complex, default=1 + 0j, help="beta, e.g. 0.9")


def _add_class_flags(p: argparse.ArgumentParser, gamma_default: float = 1.0) -> None:
    g = p.add_argument_group("class parameters")
    g.add_argument("--k", type=float, default=2.0)
    g.add_argument("--rho", type=float, default=0.0)
    g.add_argument("--theta", type=float, default=1.0)
    g.add_argument("--gamma", type=parse_complex, default=complex(gamma_default))


def _add_probe_flags(p: argparse.ArgumentParser, radii=(0.5, 0.9, 0.99), angles=1024) -> None:
    g = p.add_argument_group("disk probe")
    g.add_argument("--radii", type=_float_list, default=list(radii))
    g.add_argument("--angles", type=int, default=angles)
    g.add_argument("--margin-tol", type=float, default=1e-6)


def _add_io(p: argparse.ArgumentParser, needs_input: bool = True) -> None:
    if needs_input:
        p.add_argument("-i", "--input", required=True, help="series JSON file ('-' for stdin)")
    p.add_argument("-o", "--output", help="write here instead of standard output")


def _add_order(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", type=int, default=None, help="series order (default: $ML_BAZ_ORDER or 64)")


def _op(args) -> OperatorParams:
    return OperatorParams(args.m, args.lam, args.alpha, args.beta)


def _cp(args) -> ClassParams:
    return ClassParams(args.k, args.rho, args.theta, args.gamma)


def _probe(args) -> DiskProbe:
    return DiskProbe(tuple(args.radii), args.angles, args.margin_tol)


def _order(args) -> int:
    order = args.order if args.order is not None else default_order()
    if order < 1:
        raise DomainError("order must be positive")
    return order


def _target(args) -> TruncatedSeries:
    if args.measure:
        mu = HerglotzMeasure.from_json(_read_json(args.measure))
        return classes.herglotz_to_series(mu, args.rho, _order(args))
    if args.input:
        return _read_series(args.input)
    raise DomainError("give a series with -i or a measure with --measure")


# -- subcommands ------------------------------------------------------------


def cmd_apply(args) -> int:
    _emit(args, dumps(ml_operator.apply_operator(_read_series(args.input), _op(args)).to_json()))
    return EXIT_OK


def cmd_bernardi(args) -> int:
    _emit(args, dumps(ml_operator.bernardi(_read_series(args.input), args.sigma).to_json()))
    return EXIT_OK


def cmd_functional(args) -> int:
    g = classes.class_functional(_read_series(args.input), _cp(args), _op(args))
    _emit(args, dumps(g.to_json()))
    return EXIT_OK


def cmd_membership(args) -> int:
    p = _target(args)
    if args.test == "P":
        verdict = classes.in_P_rho(p, args.rho, _probe(args))
    else:
        verdict = classes.in_Pk_rho(p, args.k, args.rho, _probe(args))
    _emit(args, dumps(verdict.to_json()))
    return EXIT_OK


def cmd_inverse(args) -> int:
    f = classes.solve_functional_inverse(_target(args), _cp(args), _op(args))
    _emit(args, dumps(f.to_json()))
    return EXIT_OK


def cmd_radius(args) -> int:
    gamma = args.gamma.real if args.gamma.imag == 0 else None
    if gamma is None:
        raise DomainError("radius needs real gamma")
    if args.scan:
        rows = theorems.radius_scan(args.scan, args.theta, args.rho, _order(args), _probe(args))
        if args.csv:
            buf = io.StringIO()
            writer = csv.DictWriter(
                buf, ["lamgamma", "theta", "r_formula", "r_empirical", "gap"], lineterminator="\n"
            )
            writer.writeheader()
            for row in rows:
                writer.writerow({k: repr(float(v)) for k, v in row.items()})
            _emit(args, buf.getvalue())
        else:
            _emit(args, dumps(rows))
        return EXIT_OK
    out = {"r_formula": theorems.radius_r1(args.lam, gamma, args.theta)}
    if args.input:
        res = theorems.empirical_radius(_read_series(args.input), _cp(args), _op(args), _probe(args))
        out = res.to_json()
    _emit(args, dumps(out))
    return EXIT_OK


def cmd_sharp(args) -> int:
    cp, op, order = _cp(args), _op(args), _order(args)
    if args.target:
        series = theorems.sharp_target(cp, op, order)
    else:
        series = theorems.sharp_function(cp, op, order)
    _emit(args, dumps(series.to_json()))
    return EXIT_OK


def cmd_iota(args) -> int:
    value, inner = theorems.iota(args.rho, args.gamma, args.sigma, QuadratureSpec(abs_tol=args.abs_tol))
    _emit(args, dumps({"iota": value, "iota1": inner}))
    return EXIT_OK


def cmd_verify(args) -> int:
    name = args.theorem if args.theorem.startswith("T") else "T" + args.theorem
    report = theorems.verify(
        name,
        trials=args.trials,
        seed=args.seed,
        probe=_probe(args),
        order=_order(args),
        workers=args.workers,
    )
    _emit(args, dumps(report.to_json()))
    return EXIT_FAILURES if report.failures > 0 else EXIT_OK


def cmd_bazilevic(args) -> int:
    g = _read_series(args.g)
    p = _read_series(args.p)
    f = classes.bazilevic_construct(classes.BazilevicParams(args.theta, args.tau, g, p), args.order)
    _emit(args, dumps(f.to_json()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlbaz", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="apply the Mittag-Leffler operator to a series")
    _add_io(p)
    _add_operator_flags(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("bernardi", help="apply the Bernardi-Libera-Livingston operator")
    _add_io(p)
    p.add_argument("--sigma", type=float, required=True)
    p.set_defaults(func=cmd_bernardi)

    p = sub.add_parser("functional", help="class functional of f")
    _add_io(p)
    _add_operator_flags(p)
    _add_class_flags(p)
    p.set_defaults(func=cmd_functional)

    p = sub.add_parser("membership", help="P(rho) / P_k(rho) membership verdict")
    p.add_argument("-i", "--input", help="series JSON")
    p.add_argument("--measure", help="measure JSON instead of a series")
    p.add_argument("-o", "--output")
    p.add_argument("--test", choices=("P", "Pk"), default="Pk")
    p.add_argument("--k", type=float, default=2.0)
    p.add_argument("--rho", type=float, default=0.0)
    _add_order(p)
    _add_probe_flags(p)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("inverse", help="f whose class functional is a given target")
    p.add_argument("-i", "--input", help="target series JSON")
    p.add_argument("--measure", help="measure JSON generating the target")
    p.add_argument("-o", "--output")
    _add_order(p)
    _add_operator_flags(p)
    _add_class_flags(p)
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("radius", help="radius r_1, optionally empirical or scanned")
    p.add_argument("-i", "--input", help="f series JSON for an empirical radius")
    p.add_argument("-o", "--output")
    p.add_argument("--scan", type=_float_list, help="comma-separated lambda*gamma values")
    p.add_argument("--csv", action="store_true", help="CSV rows for --scan")
    _add_order(p)
    _add_operator_flags(p)
    _add_class_flags(p)
    _add_probe_flags(p)
    p.set_defaults(func=cmd_radius)

    p = sub.add_parser("sharp", help="sharp function of the radius problem")
    p.add_argument("-o", "--output")
    p.add_argument("--target", action="store_true", help="emit (E^m f/z)^theta instead of f")
    _add_order(p)
    _add_operator_flags(p)
    _add_class_flags(p)
    p.set_defaults(func=cmd_sharp)

    p = sub.add_parser("iota", help="Bernardi bound iota and iota_1")
    p.add_argument("-o", "--output")
    p.add_argument("--rho", type=float, default=0.0)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--abs-tol", type=float, default=1e-13)
    p.set_defaults(func=cmd_iota)

    p = sub.add_parser("verify", help="run a randomized theorem verifier")
    p.add_argument("-o", "--output")
    p.add_argument("--theorem", required=True, choices=("2.1", "2.2", "3.1", "4.1", "T2.1", "T2.2", "T3.1", "T4.1"))
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    _add_order(p)
    _add_probe_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bazilevic", help="Bazilevic function for tau = 0")
    p.add_argument("-g", required=True, help="starlike g, series JSON")
    p.add_argument("-p", required=True, help="Caratheodory p, series JSON")
    p.add_argument("-o", "--output")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_bazilevic)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MLBazError as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
