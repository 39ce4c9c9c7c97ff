"""
Command line
============
``qsn`` groups the library behind six subcommands::

    qsn check FILE [-p PROPERTY ...]
    qsn construct max|gmap|lift|reduce|derive|neutral|contour [options]
    qsn enumerate orderings|uninorms|gmaps --k K [--n N]
    qsn verify SUITE|--all --k K --n N [--samples S] [--csv PATH]
    qsn render FILE [--format ascii|svg] [--output PATH]
    qsn gallery NAME [--k K] [--n N]

Exit codes: 0 success, 1 a suite verdict contradicts its claim, 2 usage,
parse or precondition error, 3 resource guard.
"""

import logging

import click
from dotenv import find_dotenv, load_dotenv

from src.config import load_config, settings_scope
from src.data.chain_core import FiniteChain
from src.data.nop_format import (
    dumps_op,
    format_gmap,
    format_ordering,
    parse_gmap,
    parse_ordering,
    read_op,
)
from src.exceptions import ChainAlgebraError, ResourceGuardError
from src.features.properties import (
    DEFAULT_CHECKS,
    PROPERTY_CHECKS,
    check_lemma_cons65,
    isolated_points,
    neutral_elements,
)
from src.models.constructors import (
    contour_construct,
    enumerate_gmaps,
    enumerate_single_peaked,
    from_gmap,
    iterate_binary,
    lift_binary,
    max_wrt,
    neutral_reduction,
    reduce_binary,
)
from src.models.enumeration import Constraint, uninorms
from src.models.gallery import PROFILE_NAMES, gallery_get, gallery_names
from src.models.verifier import run_all, run_suite, save_reports_csv, suite_names
from src.visualization.render import render_ascii, render_svg

LOG_FMT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

logger = logging.getLogger(__name__)


def _format_set(values):
    if not values:
        return "{}"
    parts = []
    for v in sorted(values):
        parts.append("(" + ",".join(str(x) for x in v) + ")" if isinstance(v, tuple) else str(v))
    return "{" + " ".join(parts) + "}"


def _emit(text, output=None):
    if output:
        with open(output, "w") as f:
            f.write(text)
        logger.info("wrote %s", output)
    else:
        click.echo(text, nl=False)


class _Group(click.Group):
    """Maps library errors onto exit codes."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ResourceGuardError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_GUARD)
        except (ChainAlgebraError, OSError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_USAGE)


@click.group(cls=_Group)
@click.option("--guard", type=click.IntRange(min=1), default=None,
              help="Bound on enumerated candidates and bisymmetry matrices.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes.")
@click.option("--format", "output_format", type=click.Choice(["text", "lines"]),
              default="text", show_default=True, help="Report layout for verify.")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="Alternative YAML settings file.")
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG.")
@click.pass_context
def cli(ctx, guard, jobs, output_format, config_path, verbose):
    """Quasitrivial n-ary operations on finite chains."""
    load_dotenv(find_dotenv(usecwd=True))
    try:
        settings = load_config(config_path)
    except ChainAlgebraError as e:
        raise click.UsageError(str(e)) from None
    settings = settings.with_overrides(bisymmetry_guard=guard, enumeration_guard=guard,
                                       jobs=jobs)
    ctx.with_resource(settings_scope(settings))
    level = {0: settings.log_level.upper(), 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(level=level, format=LOG_FMT, force=True)
    ctx.obj = {"settings": settings, "format": output_format}


# ==============================================================================
# check
# ==============================================================================

@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("-p", "--property", "properties", multiple=True,
              type=click.Choice(sorted(PROPERTY_CHECKS) + ["neutral", "isolated",
                                                            "threshold_lemma"]),
              help="Property to check; repeatable. Defaults to the six basic "
                   "properties plus neutral and isolated.")
@click.pass_obj
def check(obj, file, properties):
    """Check the properties of the table in FILE."""
    op = read_op(file)
    names = properties or DEFAULT_CHECKS + ("neutral", "isolated")
    settings = obj["settings"]
    for name in names:
        if name == "neutral":
            click.echo(f"NEUTRAL {_format_set(neutral_elements(op))}")
        elif name == "isolated":
            click.echo(f"ISOLATED {_format_set(isolated_points(op))}")
        elif name == "threshold_lemma":
            click.echo(check_lemma_cons65(op).to_line())
        elif name in ("bisymmetric", "ultrabisymmetric"):
            report = PROPERTY_CHECKS[name](op, guard=settings.bisymmetry_guard,
                                           chunk_size=settings.chunk_size)
            click.echo(report.to_line())
        else:
            report = PROPERTY_CHECKS[name](op)
            click.echo(report.to_line())


# ==============================================================================
# construct
# ==============================================================================

CONSTRUCT_KINDS = ("max", "gmap", "lift", "reduce", "derive", "neutral", "contour")


def _need(value, option, kind):
    if value is None:
        raise click.UsageError(f"construct {kind} requires {option}")
    return value


@cli.command()
@click.argument("kind", type=click.Choice(CONSTRUCT_KINDS))
@click.option("--order", help="Ordering as a permutation, e.g. 3,2,4,1 (max).")
@click.option("--n", "n", type=int, help="Arity of the result.")
@click.option("--k", "k", type=click.IntRange(min=1), help="Chain size (gmap, contour).")
@click.option("--e", "e", type=int, help="Neutral element (gmap).")
@click.option("--g", "g", help="Values g(1),...,g(e) (gmap).")
@click.option("--in", "in_file", type=click.Path(exists=True, dir_okay=False),
              help="Input NOP file (lift, reduce, derive, neutral).")
@click.option("--choices", help="k-1 bits, 0 below and 1 above (contour).")
@click.option("--out", "out_file", type=click.Path(dir_okay=False),
              help="Write the NOP table here instead of stdout.")
def construct(kind, order, n, k, e, g, in_file, choices, out_file):
    """Build a table with one of the constructors."""
    if kind == "max":
        ordering = parse_ordering(_need(order, "--order", kind))
        op = max_wrt(ordering, _need(n, "--n", kind))
        comments = [f"max w.r.t. {format_ordering(ordering)}"]
    elif kind == "gmap":
        chain = FiniteChain(_need(k, "--k", kind))
        gm = parse_gmap(f"e={_need(e, '--e', kind)}; g={_need(g, '--g', kind)}", chain)
        op = from_gmap(gm, _need(n, "--n", kind))
        comments = [f"uninorm of g-map {format_gmap(gm)}"]
    elif kind == "contour":
        chain = FiniteChain(_need(k, "--k", kind))
        bits = _need(choices, "--choices", kind)
        if bits and not set(bits) <= {"0", "1"}:
            raise click.UsageError(f"--choices must be a string of 0s and 1s, got {bits!r}")
        op, classes = contour_construct(chain, _need(n, "--n", kind), bits)
        comments = [f"contour construction, choices {bits or '(none)'}"]
        comments += [f"class {c.value}: {len(c.points)} points" for c in classes]
    else:
        source = read_op(_need(in_file, "--in", kind))
        if kind == "lift":
            op = lift_binary(source, _need(n, "--n", kind))
        elif kind == "reduce":
            op = reduce_binary(source)
        elif kind == "derive":
            op = iterate_binary(source, _need(n, "--n", kind))
        else:
            op = neutral_reduction(source)
        comments = [f"{kind} of {in_file}"]
    _emit(dumps_op(op, comments), out_file)


# ==============================================================================
# enumerate
# ==============================================================================

@cli.command(name="enumerate")
@click.argument("kind", type=click.Choice(["orderings", "uninorms", "gmaps"]))
@click.option("--k", "k", type=click.IntRange(min=1), required=True)
@click.option("--n", "n", type=click.IntRange(min=2), default=2, show_default=True,
              help="Arity (uninorms).")
@click.pass_obj
def enumerate_cmd(obj, kind, k, n):
    """List single-peaked orderings, idempotent uninorms or g-maps."""
    chain = FiniteChain(k)
    count = 0
    if kind == "orderings":
        for ordering in enumerate_single_peaked(chain):
            click.echo(format_ordering(ordering))
            count += 1
    elif kind == "gmaps":
        for gm in enumerate_gmaps(chain):
            click.echo(format_gmap(gm))
            count += 1
    else:
        for op in uninorms(chain, n, guard=obj["settings"].enumeration_guard):
            click.echo(dumps_op(op))
            count += 1
    click.echo(f"count={count}")


# ==============================================================================
# verify
# ==============================================================================

@cli.command()
@click.argument("suite", required=False, type=click.Choice(suite_names()))
@click.option("--all", "run_every", is_flag=True, help="Run every suite.")
@click.option("--k", "k", type=click.IntRange(min=1), required=True)
@click.option("--n", "n", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--exhaustive", is_flag=True, help="Enumerate the whole population (default).")
@click.option("--samples", type=click.IntRange(min=1), default=None,
              help="Check this many random tables instead.")
@click.option("--seed", type=int, default=None)
@click.option("--constraint", default=None,
              help="Population override, e.g. q,s or quasitrivial,nondecreasing.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also write a summary table.")
@click.option("--guard", type=click.IntRange(min=1), default=None,
              help="Population and matrix guard for this run; overrides the global --guard.")
@click.pass_obj
def verify(obj, suite, run_every, k, n, exhaustive, samples, seed, constraint, csv_path,
           guard):
    """Run a verification suite exhaustively on L_k."""
    if run_every == (suite is not None):
        raise click.UsageError("give exactly one of SUITE or --all")
    if exhaustive and samples:
        raise click.UsageError("--exhaustive and --samples are mutually exclusive")
    settings = obj["settings"].with_overrides(bisymmetry_guard=guard, enumeration_guard=guard)
    kwargs = dict(
        constraint=Constraint.parse(constraint) if constraint is not None else None,
        guard=settings.enumeration_guard,
        matrix_guard=settings.bisymmetry_guard,
        samples=samples,
        seed=settings.seed if seed is None else seed,
        jobs=settings.jobs,
    )
    chain = FiniteChain(k)
    with settings_scope(settings):
        if run_every:
            reports = run_all(chain, n, **kwargs)
        else:
            reports = [run_suite(suite, chain, n, **kwargs)]

    if obj["format"] == "lines":
        for report in reports:
            click.echo(report.to_line())
    else:
        click.echo("\n\n".join(report.to_text() for report in reports))
    if csv_path:
        save_reports_csv(reports, csv_path)
    if not all(report.matches_claim for report in reports):
        raise click.exceptions.Exit(EXIT_MISMATCH)


# ==============================================================================
# render and gallery
# ==============================================================================

@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["ascii", "svg"]), default="ascii",
              show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def render(file, fmt, output):
    """Draw the contour plot of a binary or ternary table."""
    op = read_op(file)
    _emit(render_ascii(op) if fmt == "ascii" else render_svg(op), output)


@cli.command()
@click.argument("name", required=False)
@click.option("--k", "k", type=int, default=None)
@click.option("--n", "n", type=int, default=None)
@click.option("--list", "list_names", is_flag=True, help="List the entry names.")
def gallery(name, k, n, list_names):
    """Print a gallery table with its expected profile."""
    if list_names or name is None:
        for entry_name in gallery_names():
            click.echo(entry_name)
        return
    entry = gallery_get(name, k=k, n=n)
    click.echo(dumps_op(entry.op, [f"{entry.name}: {entry.description}"]), nl=False)
    click.echo("")
    for prop in PROFILE_NAMES:
        verdict = "HOLDS" if entry.expected[prop] else "FAILS"
        click.echo(f"EXPECT {prop} {verdict}")
    click.echo(f"NEUTRAL {_format_set(entry.neutral)}")
    click.echo(f"ISOLATED {_format_set(entry.isolated)}")
