#
#     This file is part of edgekit.
#
#     edgekit -- Edgeworth corrections for weighted sums of random vectors
#
#     edgekit is free software; you can redistribute it and/or
#     modify it under the terms of the GNU Lesser General Public
#     License as published by the Free Software Foundation; either
#     version 3 of the License, or (at your option) any later version.
#
#     edgekit is distributed in the hope that it will be useful,
#     but WITHOUT ANY WARRANTY; without even the implied warranty of
#     MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
#     Lesser General Public License for more details.
#
#     You should have received a copy of the GNU Lesser General Public
#     License along with edgekit; if not, write to the Free Software
#     Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301  USA
#
#
"""
Command-line interface: ``edgekit <command> [options]``.

Exit codes: 0 on success, 2 on configuration errors (including usage
errors), 3 on numerical failures.
"""

import argparse
from fractions import Fraction
import logging
import sys

import numpy as np

from . import __version__
from .moments import get_spec, analytic_moments, MomentSet, SPEC_CATALOG
from .cumulants import CumulantSet, moments_to_cumulants, cumulants_to_moments, cumulants_of_spec
from .edgeworth import EdgeworthExpansion, closed_form_g_density, SIGN_CONVENTIONS, SCALE_CONVENTIONS, \
    SUBSTITUTION_PLUS
from .measures import parse_set, gaussian_measure, expansion_measure_box, expansion_measure_mc, Box
from .weighted_sums import read_theta, equal_weights, exact_box_probability
from .harness import ExperimentConfig, rate_experiment, bobkov_check
from .casadi_helpers import evaluate_batch
from .errors import ConfigError, NumericError, check_dimension

logger = logging.getLogger('edgekit')

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _param(text):
    if "=" not in text:
        raise argparse.ArgumentTypeError("Expected key=value, got '%s'." % text)
    key, value = text.split("=", 1)
    try:
        value = Fraction(value)
    except ValueError:
        value = float(value)
    return key, value


def _vector(text):
    try:
        return [float(e) for e in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("Expected comma-separated numbers, got '%s'." % text)


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as f:
            f.write(text)


def _spec(args):
    if args.spec is None:
        raise ConfigError("--spec is required.")
    try:
        return get_spec(args.spec, args.k, **dict(args.param))
    except TypeError as e:
        raise ConfigError("Bad parameters for '%s': %s" % (args.spec, e))


def _add_spec_options(p):
    p.add_argument("--spec", choices=sorted(SPEC_CATALOG), help="Law of every coordinate of X_1.")
    p.add_argument("--param", type=_param, action="append", default=[],
                   help="Law parameter key=value, e.g. a2=3 or p=1/5 (repeatable).")
    p.add_argument("--k", type=int, default=1, help="Dimension (default: 1).")


def _add_expansion_options(p):
    _add_spec_options(p)
    p.add_argument("--cumulants", help="Cumulant file of X_1 instead of --spec.")
    p.add_argument("--n", type=int, help="Number of summands, equal weights.")
    p.add_argument("--theta", help="Weight file (one line, comma-separated).")
    p.add_argument("--s", type=int, help="Expansion order (default: 2, or less when the cumulants are short).")
    p.add_argument("--sign", choices=SIGN_CONVENTIONS, default=SUBSTITUTION_PLUS)
    p.add_argument("--scale", choices=SCALE_CONVENTIONS,
                   help="Default: per-theta with --theta, averaged with --n.")


def _base_cumulants(args, m):
    if args.cumulants is not None:
        return CumulantSet.read(args.cumulants)
    return cumulants_of_spec(_spec(args), m)


def _expansion(args):
    s = 2 if args.s is None else args.s
    base = _base_cumulants(args, s + 2)
    if args.s is None:
        s = min(2, max(0, base.m - 2))
    theta = read_theta(args.theta) if args.theta is not None else None
    if theta is None and args.n is None:
        return EdgeworthExpansion(base, s=s, sign=args.sign)
    return EdgeworthExpansion.for_weighted_sum(base, s=s, theta=theta, n=args.n, scale=args.scale,
                                               sign=args.sign)


def cmd_moments(args):
    ms = analytic_moments(_spec(args), args.order)
    _emit(ms.to_text(), args.out)


def cmd_cumulants(args):
    if args.moments is not None:
        cs = moments_to_cumulants(MomentSet.read(args.moments))
    else:
        cs = cumulants_of_spec(_spec(args), args.order)
    _emit(cs.to_text(), args.out)


def cmd_density(args):
    points = np.array(args.x, dtype=float).T
    if args.closed_form:
        if args.n is None and args.theta is None:
            raise ConfigError("--closed-form needs --n or --theta.")
        if args.cumulants is not None:
            ms = cumulants_to_moments(CumulantSet.read(args.cumulants))
            k, fourth = ms.k, ms.of_degree(4)
        else:
            k = args.k
            fourth = analytic_moments(_spec(args), 4).of_degree(4)
        theta = read_theta(args.theta) if args.theta is not None else None
        n = args.n if args.n is not None else len(theta)
        values = [closed_form_g_density(k, fourth, n, x, theta=theta, scale=args.scale, sign=args.sign)
                  for x in points.T]
    else:
        e = _expansion(args)
        check_dimension(points, e.k, "x")
        values = evaluate_batch(e.density_function(), points, output=0).reshape(-1)
    _emit("".join("%.15g\n" % v for v in values), args.out)


def cmd_measure(args):
    s = parse_set(args.set)
    if args.plain:
        _emit("%.15g\n" % gaussian_measure(s), args.out)
        return
    e = _expansion(args)
    if isinstance(s, Box):
        _emit("%.15g\n" % expansion_measure_box(e, s), args.out)
    else:
        value, err = expansion_measure_mc(e, s, args.samples, args.seed)
        _emit("%.15g %.3g\n" % (value, err), args.out)


def cmd_exact(args):
    theta = read_theta(args.theta) if args.theta is not None else None
    if theta is None:
        if args.n is None:
            raise ConfigError("exact needs --n or --theta.")
        theta = equal_weights(args.n)
    s = parse_set(args.set)
    if not isinstance(s, Box):
        raise ConfigError("exact handles boxes only, got '%s'." % args.set)
    _emit("%.15g\n" % exact_box_probability(_spec(args), theta, s), args.out)


def cmd_rate(args):
    cfg = ExperimentConfig.read(args.config).override(seed=args.seed, threads=args.threads)
    report = rate_experiment(cfg)
    json_path, csv_path = report.write(args.out or "report")
    for mode in report.modes:
        fit = report.fits[mode]
        print("%-36s slope %s" % (mode, "n/a" if fit["slope"] is None else "%.4f" % fit["slope"]))
    print("wrote %s and %s" % (json_path, csv_path))


def cmd_bobkov(args):
    if args.beta4 is not None:
        beta4 = args.beta4
    else:
        beta4 = float(_spec(args).moment((4,) + (0,) * (args.k - 1)))
    check = bobkov_check(beta4, args.n, np.linspace(-4, 4, args.points))
    lines = ["%12s %22s %22s %22s" % ("x", "G", SIGN_CONVENTIONS[0], SIGN_CONVENTIONS[1])]
    for row in zip(check.xs, check.bobkov, check.substitution_plus, check.paper_minus):
        lines.append("%12.6g %22.15g %22.15g %22.15g" % row)
    lines.append("correction magnitude error: %.3g" % check.magnitude_error)
    lines.append("agreeing convention: %s" % (", ".join(check.agreeing) or "none"))
    _emit("\n".join(lines) + "\n", args.out)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Master seed (overrides the config).")
    common.add_argument("--threads", type=int, help="Worker threads (overrides the config).")
    common.add_argument("--out", help="Output file, or output directory for 'rate'.")

    parser = argparse.ArgumentParser(prog="edgekit",
                                     description="Edgeworth corrections for weighted sums of random vectors.")
    parser.add_argument("--version", action="version", version="edgekit %s" % __version__)
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v for progress, -vv for per-cell values.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("moments", parents=[common], help="Analytic moments of a catalog law.")
    _add_spec_options(p)
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("cumulants", parents=[common], help="Moment file (or catalog law) to cumulant file.")
    _add_spec_options(p)
    p.add_argument("--moments", help="Moment file.")
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_cumulants)

    p = sub.add_parser("density", parents=[common], help="Evaluate an expansion density at points.")
    _add_expansion_options(p)
    p.add_argument("--x", type=_vector, action="append", required=True,
                   help="Point x1,...,xk (repeatable).")
    p.add_argument("--closed-form", action="store_true",
                   help="Use the fourth-moment closed form g instead of the generic expansion.")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("measure", parents=[common], help="Measure of a set under an expansion.")
    _add_expansion_options(p)
    p.add_argument("--set", required=True, help="'box lo hi', 'ball c r' or 'halfspace u c'.")
    p.add_argument("--plain", action="store_true", help="Standard Gaussian measure.")
    p.add_argument("--samples", type=int, default=100000, help="Monte Carlo samples for non-box sets.")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("exact", parents=[common], help="Exact box probability of a weighted sum.")
    _add_spec_options(p)
    p.add_argument("--n", type=int, help="Number of summands, equal weights.")
    p.add_argument("--theta", help="Weight file.")
    p.add_argument("--set", required=True, help="'box lo hi'.")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("rate", parents=[common], help="Run a rate experiment from a JSON config.")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("bobkov", parents=[common], help="Compare the 1-D expansion with the printed G.")
    _add_spec_options(p)
    p.add_argument("--beta4", type=float, help="Fourth moment (instead of --spec).")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--points", type=int, default=50)
    p.set_defaults(func=cmd_bobkov)
    return parser


def cli_main(argv=None):
    """Run the command line; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_CONFIG
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ConfigError, ValueError, OSError) as e:
        logger.error("%s", e)
        sys.stderr.write("edgekit: error: %s\n" % e)
        return EXIT_CONFIG
    except (NumericError, ArithmeticError) as e:
        sys.stderr.write("edgekit: numeric failure: %s\n" % e)
        return EXIT_NUMERIC
    return EXIT_OK


def main():
    sys.exit(cli_main())
