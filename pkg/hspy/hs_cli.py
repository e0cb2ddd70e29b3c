"""
Command-line interface for hspy.

Usage:
    hspy info han05_a1                          # d, support, interpolatory and symmetry flags
    hspy analyze han05_a1 --max-order 8         # spectral, reproduction and sum rule report
    hspy simulate han05_a1 --levels 3 --initial poly:1 --csv out.csv
    hspy derham han05_a1 -o a1_derham.json      # de Rham transform
    hspy catalog list                           # built-in masks

Mask sources are JSON files, ``catalog:<name>`` or a bare catalog name. Reports go
to stdout as JSON, summaries and diagnostics to stderr.
"""
from __future__ import absolute_import, print_function
import logging
import os
import sys

import click

from hspy import (hs_config, hs_derham, hs_exact, hs_mask, hs_operator, hs_spectral,
                  hs_sumrule, hspy_utils)
from hspy._version import __version__
from hspy.hs_errors import EXIT_OK, EXIT_PARSE, EXIT_USAGE, HspyError, RationalError

_LOG = logging.getLogger(__name__)

__all__ = ["cli", "main", "analyze_mask", "load_mask_source"]


class RationalParamType(click.ParamType):
    """Click parameter accepting ``p/q`` or ``p``."""

    name = "rational"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return hs_exact.to_rational(value)
        try:
            return hs_exact.parse_rational(value)
        except RationalError as exc:
            self.fail(str(exc), param, ctx)


RATIONAL = RationalParamType()


def load_mask_source(source):

    """Load a mask from a file path, ``catalog:<name>`` or a bare catalog name.

    Parameters
    ----------
    source: string
      the mask source
    """

    if source.startswith("catalog:"):
        return hs_mask.catalog(source[len("catalog:"):])
    if os.path.exists(source) or os.sep in source or source.endswith(".json"):
        return hs_mask.read_mask(source)
    return hs_mask.catalog(source)


def analyze_mask(mask, max_order, tau=None, derham=False, source=None):

    """Assemble the analysis report of a mask.

    Parameters
    ----------
    mask: Mask
      the subdivision mask
    max_order: integer
      the largest degree or order scanned, >= d
    tau: rational
      the parametrization for the reproduction check, the inferred one when None (0 if none)
    derham: boolean
      also analyze the de Rham transform
    source: string
      how the mask was named, copied into the report
    """

    spectral = hs_spectral.spectral_order(mask, max_order)
    inferred = hs_spectral.infer_tau(mask)
    rep_tau = tau if tau is not None else (inferred if inferred is not None else hs_exact.to_rational(0))
    rep_order = hs_spectral.reproduction_order(mask, rep_tau, max_order)
    sum_tau = inferred if inferred is not None else 0
    sumrule = hs_sumrule.sumrule_order(mask, max_order, tau=sum_tau)
    lemma4 = hs_sumrule.lemma4_crosscheck(mask)

    theorem1_consistent = rep_order is None or spectral.order >= rep_order
    if not theorem1_consistent:
        _LOG.error("reproduction order %d exceeds spectral order %d", rep_order, spectral.order)

    report = {"mask": source}
    report.update(mask.info())
    report["spectral"] = spectral.to_dict()
    report["inferred_tau"] = None if inferred is None else hs_exact.format_rational(inferred)
    report["reproduction"] = {"tau": hs_exact.format_rational(rep_tau), "order": rep_order}
    report["sumrule"] = sumrule.to_dict()
    report["lemma4"] = lemma4
    report["figure3"] = sumrule.order > spectral.order
    report["theorem1_consistent"] = theorem1_consistent
    if derham:
        transformed = hs_derham.derham(mask)
        sub_tau = hs_derham.derham_tau(tau) if tau is not None else None
        report["derham"] = analyze_mask(transformed, max(max_order, transformed.d), sub_tau, False,
                                        "derham(%s)" % source if source else None)
    return report


@click.group()
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="INI file with a [hspy] section, overrides $HSPY_CONFIG")
@click.option("--digits", type=click.IntRange(min=1), default=None,
              help="significant digits of decimal output (default 17)")
@click.option("-v", "--verbose", is_flag=True, help="debug logging on stderr")
@click.version_option(version=__version__, prog_name="hspy")
@click.pass_context
def cli(ctx, config_file, digits, verbose):
    """
    Exact analysis of Hermite subdivision schemes.

    Examples:

        hspy analyze han05_a1 --max-order 8

        hspy simulate catalog:han05_a2 --levels 4 --initial delta:0 --compact
    """
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("hspy").setLevel(level)

    hs_config.reset()
    hs_config.load_default_config()
    if config_file is not None:
        hs_config.load_config(config_file)
    ctx.obj = {"digits": digits if digits is not None else hs_config.get_digits()}


@cli.command()
@click.argument("source")
def info(source):
    """
    Print d, support, interpolatory and symmetry flags of a mask.
    """
    mask = load_mask_source(source)
    report = {"mask": source}
    report.update(mask.info())
    click.echo("%s: d=%d support=%s interpolatory=%s symmetric=%s"
               % (source, mask.d, report["support"], report["interpolatory"], report["symmetric"]), err=True)
    click.echo(hspy_utils.dump_json(report))


@cli.command()
@click.argument("source")
@click.option("--max-order", type=click.IntRange(min=0), default=None,
              help="largest degree/order scanned (default 8)")
@click.option("--tau", type=RATIONAL, default=None,
              help="parametrization for the reproduction check (default: inferred)")
@click.option("--derham", "with_derham", is_flag=True, help="also analyze the de Rham transform")
def analyze(source, max_order, tau, with_derham):
    """
    Spectral order, reproduction order, sum rule order and cross checks, as JSON.
    """
    mask = load_mask_source(source)
    if max_order is None:
        max_order = hs_config.get_max_order()
    if max_order < mask.d:
        raise click.BadParameter("must be >= d=%d" % mask.d, param_hint="--max-order")
    report = analyze_mask(mask, max_order, tau, with_derham, source)
    click.echo("%s: spectral order %d, reproduction order %s (tau=%s), sum rule order %d"
               % (source, report["spectral"]["order"], report["reproduction"]["order"],
                  report["reproduction"]["tau"], report["sumrule"]["order"]), err=True)
    click.echo(hspy_utils.dump_json(report))


def _initial_data(spec, mask, tau, radius):
    kind, _, arg = spec.partition(":")
    try:
        if kind == "poly":
            k = int(arg)
            if k < 0:
                raise ValueError(k)
            q = hs_exact.shifted_monomial(k, 0)
            return hs_operator.sample_hermite(q, mask.d, tau, (-radius, radius))
        if kind == "delta":
            parts = arg.split(":") if arg else ["0"]
            index = int(parts[0])
            component = int(parts[1]) if len(parts) > 1 else 0
            if not 0 <= component <= mask.d:
                raise ValueError(component)
            return hs_operator.HermiteSequence.delta(mask.d, index, component, (index - radius, index + radius))
    except ValueError:
        pass
    raise click.BadParameter("expected poly:k, delta:s or delta:s:m, got %r" % spec, param_hint="--initial")


@cli.command()
@click.argument("source")
@click.option("--levels", type=click.IntRange(min=1), default=None, help="number of levels (default 3)")
@click.option("--initial", default="poly:1", show_default=True,
              help="poly:k samples x^k/k! at j+tau; delta:s[:m] is e_m at index s")
@click.option("--tau", type=RATIONAL, default="0", show_default=True, help="parametrization")
@click.option("--radius", type=click.IntRange(min=0), default=None,
              help="half width of the initial window (default 8)")
@click.option("--csv", "csv_path", default="-", show_default=True, help="output CSV, - for stdout")
@click.option("--probe", "probe_path", default=None, help="also write the convergence probe CSV here")
@click.option("--compact", is_flag=True, help="initial data is zero outside its window")
@click.pass_context
def simulate(ctx, source, levels, initial, tau, radius, csv_path, probe_path, compact):
    """
    Run the Hermite scheme exactly and write the level samples as CSV.

    The operator is (S c)_j = sum_k A_{j-2k} c_k. The formula is sometimes printed with c_j
    in the summand; the summation index is k. Level n data are D^-n S^n c and entry j sits
    at 2^-n (j + tau). Only indices exactly computable from the initial window are written
    unless --compact is given.
    """
    mask = load_mask_source(source)
    levels = levels if levels is not None else hs_config.get_levels()
    radius = radius if radius is not None else hs_config.get_radius()
    digits = ctx.obj["digits"]
    c0 = _initial_data(initial, mask, tau, radius)

    rows = hs_operator.limit_samples(mask, c0, levels, tau, compact)
    hspy_utils.write_samples(csv_path, rows, mask.d, digits)
    click.echo("%s: %d samples at level %d" % (source, len(rows), levels), err=True)

    if probe_path is not None:
        if levels < 2:
            raise click.BadParameter("the convergence probe needs --levels >= 2", param_hint="--probe")
        deviations = hs_operator.convergence_probe(mask, c0, levels, compact)
        hspy_utils.write_probe(probe_path, deviations, digits)


@cli.command("derham")
@click.argument("source")
@click.option("-o", "--output", default="-", show_default=True, help="output mask file, - for stdout")
def derham_command(source, output):
    """
    Write the de Rham transform D^-1 (A *2 A)_{2j+1} of a mask.
    """
    mask = hs_derham.derham(load_mask_source(source))
    _write_mask(mask, output)
    click.echo("%s: de Rham transform %r" % (source, mask), err=True)


def _write_mask(mask, output):
    if output == "-":
        click.echo(hs_mask.serialize_mask(mask).decode("utf-8"))
        return
    directory = os.path.dirname(output)
    if directory:
        hspy_utils.create_directory(directory)
    hs_mask.write_mask(mask, output)


@cli.group()
def catalog():
    """
    Built-in masks.
    """


@catalog.command("list")
def catalog_list():
    """
    List the built-in masks.
    """
    for name in hs_mask.catalog_names():
        click.echo("%-14s %s" % (name, hs_mask.catalog_description(name)))


@catalog.command("show")
@click.argument("name")
@click.option("-o", "--output", default="-", show_default=True, help="output mask file, - for stdout")
def catalog_show(name, output):
    """
    Print or write a built-in mask as JSON.
    """
    _write_mask(hs_mask.catalog(name), output)


def main(args=None):

    """Entry point, returns the exit code.

    0 success, 1 usage error, 2 parse or validation error, 3 infeasibility misuse.
    """

    try:
        rv = cli.main(args=args, prog_name="hspy", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except HspyError as exc:
        click.echo("error: %s" % exc, err=True)
        return exc.exit_code
    except OSError as exc:
        click.echo("error: %s" % exc, err=True)
        return EXIT_PARSE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
