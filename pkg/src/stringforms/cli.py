"""Command-line front end.

    stringforms ricci --alpha1 A --alpha2 B [--chirality left|right] [--exact]
    stringforms cs --class STR --alpha1 A --alpha2 B [--chirality left|right] [--exact]
    stringforms einv --class STR
    stringforms sweep --spec FILE.json --out FILE.csv [--workers N]
    stringforms figures --outdir DIR [--steps N]
    stringforms torsion-check --trials N --seed S [--dim 3]

Exit status: 0 on success, 2 on invalid input, 1 on an internal error.
Numbers accept decimals or ``p/q``; with ``--exact`` they are read as
exact rationals (``0.2`` means ``1/5``) and results print as fractions.
"""
import argparse
import json
import sys
import time

from ._exact import parse_rational
from .chern_simons import e_invariant, integral_H
from .geometry import family_ricci_eigenvalues, ricci_positivity
from .lie import direct_sum, abelian, su2
from .metric import DegenerateMetricError, g_alpha
from .string_class import StringClass
from .sweep import SweepSpec, SweepSpecError, emit_figures, sweep, write_records
from .torsion import levi_civita_maximality_check

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _number(text):
    try:
        value = parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _alpha(args, name):
    v = getattr(args, name)
    return v if args.exact else float(v)


def _show(x):
    return str(x) if isinstance(x, (int,)) or hasattr(x, "denominator") else repr(float(x))


def cmd_ricci(args, out):
    a1, a2 = _alpha(args, "alpha1"), _alpha(args, "alpha2")
    eig = family_ricci_eigenvalues(a1, a2, args.chirality, exact=args.exact)
    region = ricci_positivity(a1, a2)
    out.write(f"alpha1={_show(a1)} alpha2={_show(a2)} chirality={args.chirality}\n")
    for label, v in zip(("alpha1 e1", "alpha2 e2", "e3"), eig):
        out.write(f"Ric({label}) = {_show(v)}\n")
    out.write(f"region: {region.value}\n")


def cmd_cs(args, out):
    cls = StringClass.parse(args.string_class)
    a1, a2 = _alpha(args, "alpha1"), _alpha(args, "alpha2")
    g = g_alpha(a1, a2, args.chirality, exact=args.exact)
    out.write(f"int H[{cls}] = {_show(integral_H(cls, g))}\n")


def cmd_einv(args, out):
    cls = StringClass.parse(args.string_class)
    out.write(f"e({cls}) = {e_invariant(cls).format(24)}\n")


def cmd_sweep(args, out):
    spec = SweepSpec.load(args.spec)
    if args.workers is not None:
        spec = SweepSpec(spec.alpha1, spec.alpha2, spec.classes, spec.chirality,
                         spec.format, spec.mode, args.workers)
    t0 = time.perf_counter()
    records = sweep(spec)
    write_records(records, spec, args.out)
    out.write(f"wrote {len(records)} records to {args.out} "
              f"({time.perf_counter() - t0:.2f} s)\n")


def cmd_figures(args, out):
    for path in emit_figures(args.outdir, steps=args.steps):
        out.write(path + "\n")


def cmd_torsion_check(args, out):
    if args.trials <= 0:
        raise _UsageError("--trials must be positive")
    frame = su2(False) if args.dim == 3 else direct_sum(su2(False), abelian(args.dim - 3, False))
    report = levi_civita_maximality_check(frame, args.trials, seed=args.seed)
    out.write(str(report) + "\n")
    return EXIT_OK if report.passed and report.max_formula_error < 1e-10 else EXIT_INTERNAL


def build_parser():
    p = _Parser(prog="stringforms", description="Invariant geometry and string classes on S^3.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def family_args(sp):
        sp.add_argument("--alpha1", type=_number, required=True)
        sp.add_argument("--alpha2", type=_number, default=parse_rational(1))
        sp.add_argument("--chirality", choices=("left", "right"), default="left")
        sp.add_argument("--exact", action="store_true", help="exact rational arithmetic")

    sp = sub.add_parser("ricci", help="Ricci eigenvalues of g_{alpha1,alpha2}")
    family_args(sp)
    sp.set_defaults(func=cmd_ricci)

    sp = sub.add_parser("cs", help="integral of the canonical 3-form")
    sp.add_argument("--class", dest="string_class", required=True)
    family_args(sp)
    sp.set_defaults(func=cmd_cs)

    sp = sub.add_parser("einv", help="e-invariant of a string class")
    sp.add_argument("--class", dest="string_class", required=True)
    sp.set_defaults(func=cmd_einv)

    sp = sub.add_parser("sweep", help="parameter sweep from a JSON spec")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--workers", type=int, default=None)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("figures", help="write the figure data tables")
    sp.add_argument("--outdir", required=True)
    sp.add_argument("--steps", type=int, default=281)
    sp.set_defaults(func=cmd_figures)

    sp = sub.add_parser("torsion-check", help="randomised Levi-Civita maximality check")
    sp.add_argument("--trials", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dim", type=int, default=3, choices=range(3, 9), metavar="{3..8}")
    sp.set_defaults(func=cmd_torsion_check)
    return p


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args, out)
        return EXIT_OK if code is None else code
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (SweepSpecError, DegenerateMetricError, ValueError, FileNotFoundError,
            json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except Exception as exc:  # noqa: BLE001
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
