import functools
import logging
import re
import sys

import click
import pandas as pd

from normal_cover.__version__ import __version__
from normal_cover.errors import DataLoadError, DomainError, InfeasibleCoverError, InputError, SearchTimeout

log = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_BAD_INPUT = 2


def handle_errors(command):
    """ Maps domain errors to exit codes: 2 for bad input or data, 1 for an infeasible search. """

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (InputError, DomainError, DataLoadError) as ex:
            log.error(str(ex))
            sys.exit(EXIT_BAD_INPUT)
        except (InfeasibleCoverError, SearchTimeout) as ex:
            log.error(str(ex))
            sys.exit(EXIT_FAILURE)

    return wrapper


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, default=False, help="Log debug output.")
@click.option("--no-progress", is_flag=True, default=False, help="Hide progress bars.")
@click.pass_context
def cli(ctx, verbose, no_progress):
    # log to sys err, stdout carries the reports
    logging.basicConfig(
        format='%(asctime)s [%(levelname)s] %(message)s',
        level=logging.DEBUG if verbose else logging.INFO,
        stream=sys.stderr,
        force=True)
    ctx.ensure_object(dict)
    ctx.obj["show_progress"] = not no_progress


@click.command("counts")
@click.option("--n", "n", required=True, type=click.INT, help="Degree n.")
@click.option("--gcd", "d", type=click.INT, help="List {x < n/2 : gcd(x, n) = D}.")
@click.option("--I", "index_i", default="", type=click.STRING, help="Indices of primes that must divide x, e.g. 1,2.")
@click.option("--J", "index_j", default="", type=click.STRING, help="Indices of primes that must not divide x.")
@click.option("--half-open/--full", default=True, help="Count over [1, n/2) (default) or [1, n].")
@handle_errors
def counts(n, d, index_i, index_j, half_open):
    """ Counts integers by the primes of n dividing them. """
    from normal_cover import arith, utils

    f = arith.factorize(n)
    if d is not None:
        members = sorted(arith.gcd_class_indices(f, d))
        click.echo("|{x < n/2 : gcd(x, " + str(n) + ") = " + str(d) + "}| = " + str(len(members)))
        click.echo(utils.format_parts(members))
        return

    spec = arith.IndexSpec.of(utils.parse_int_list(index_i), utils.parse_int_list(index_j))
    if half_open:
        count = arith.count_half_open(f, spec)
    else:
        count = arith.count_full(f, spec)
    click.echo("n = " + str(f) + ", " + str(spec) + ": " + str(count) +
               (" (x < n/2)" if half_open else " (x <= n)"))


@click.command("gfun")
@click.option("--range", "range_text", required=True, type=click.STRING, help="Inclusive range A..B.")
@handle_errors
def gfun(range_text):
    """ Prints g(n) as CSV for the n in a range with at least two prime divisors. """
    from normal_cover import arith, utils

    start, end = utils.parse_range(range_text)
    rows = arith.g_table(start, end)
    click.echo(pd.DataFrame(rows, columns=["n", "g"]).to_csv(index=False), nl=False)


def parse_class(text: str, n: int):
    """ Parses P:x, W:b, W:bxm or A into a subgroup class of S_n. """
    from normal_cover import membership
    from normal_cover.universe import SubgroupClass

    text = (text or "").strip().upper()
    if text in ("A", "A_N"):
        return SubgroupClass.alternating()
    match = re.fullmatch(r"P:(\d+)", text)
    if match:
        x = int(match.group(1))
        if x < 1 or 2 * x >= n:
            raise InputError("P:x needs 1 <= x < n/2, got " + text)
        return SubgroupClass.intransitive(x)
    match = re.fullmatch(r"W:(\d+)(?:X(\d+))?", text)
    if match:
        b = int(match.group(1))
        if match.group(2) and b * int(match.group(2)) != n:
            raise InputError(text + " does not describe blocks of " + str(n) + " points")
        if b not in membership.imprimitive_blocks(n):
            raise InputError("Block size b = " + str(b) + " must divide n = " + str(n) + " with 2 <= b <= n/2")
        return SubgroupClass.imprimitive(b, n)
    raise InputError("Class must be written as P:x, W:b, W:bxm or A, got " + str(text))


@click.command("member")
@click.option("--n", "n", required=True, type=click.INT, help="Degree n.")
@click.option("--type", "type_text", required=True, type=click.STRING, help="Cycle type, e.g. 8,2,1,1.")
@click.option("--class", "class_text", type=click.STRING, help="P:x, W:b, W:bxm or A. Lists all classes if omitted.")
@handle_errors
def member(n, type_text, class_text):
    """ Decides whether a cycle type lies in a subgroup class of S_n. """
    from normal_cover import membership
    from normal_cover.typesys import CycleType
    from normal_cover.universe import ALTERNATING, IMPRIMITIVE, build_universe

    t = CycleType.parse(type_text, n)
    classes = [parse_class(class_text, n)] if class_text else build_universe(n, "S")
    for subgroup_class in classes:
        if subgroup_class.kind == IMPRIMITIVE:
            grouping = membership.find_block_grouping(t, subgroup_class.value)
            verdict = grouping is not None
            detail = str(grouping) if grouping else ""
            pattern = membership.pattern_verdict(t, subgroup_class.value)
            if pattern is not None:
                detail += (" | " if detail else "") + "pattern: " + str(pattern).lower()
        elif subgroup_class.kind == ALTERNATING:
            verdict = membership.in_alternating(t)
            detail = ""
        else:
            verdict = membership.in_intransitive(t, subgroup_class.value)
            detail = ""
        if class_text or verdict:
            click.echo("[" + str(t) + "] in " + subgroup_class.label + ": " + str(verdict).lower() +
                       ("   " + detail if detail else ""))


@click.command("gamma")
@click.option("--n", "n", required=True, type=click.INT, help="Degree n.")
@click.option("--group", required=True, type=click.Choice(["S", "A"], case_sensitive=False), help="S or A.")
@click.option("--primitive-data", "primitive_data", multiple=True, type=click.Path(exists=True),
              help="Primitive data file or directory (repeatable).")
@click.option("--bundled-data", is_flag=True, default=False, help="Add the primitive data shipped with the package.")
@click.option("--enumerate-all-min", is_flag=True, default=False, help="Enumerate every minimum cover.")
@click.option("--enumerate-cap", type=click.INT, help="Stop enumerating after this many covers.")
@click.option("--threads", type=click.INT, help="Worker processes for the membership matrix.")
@click.option("--time-limit", type=click.FLOAT, help="Search time limit in seconds.")
@click.option("--partition-cap", type=click.INT, help="Largest n whose types may be enumerated.")
@click.option("--format", "output_format", type=click.Choice(["text", "json", "csv", "md"]), help="Output format.")
@click.option("--config", "config_path", type=click.Path(), help="YAML file with a configuration section.")
@click.pass_context
@handle_errors
def gamma(ctx, n, group, primitive_data, bundled_data, enumerate_all_min, enumerate_cap, threads, time_limit,
          partition_cap, output_format, config_path):
    """ Computes the modeled normal covering number of S_n or A_n. """
    from normal_cover import generator
    from normal_cover.primitive_data import bundled_data_dir

    group = group.upper()
    paths = list(primitive_data)
    if bundled_data:
        paths.append(bundled_data_dir())
    config = generator.merge_options(
        generator.parse_config_yaml(config_path),
        primitive_data=paths or None, enumerate_all_min=enumerate_all_min or None, enumerate_cap=enumerate_cap,
        threads=threads, time_limit=time_limit, partition_cap=partition_cap, output_format=output_format)

    if not ctx.obj["show_progress"]:
        config.show_progress = False
    result, structure = generator.compute_gamma(n, group, config)
    click.echo(generator.render_gamma(result, structure, config.output_format), nl=False)
    if result.timed_out:
        sys.exit(EXIT_FAILURE)


@click.command("verify-conjectures")
@click.option("--range", "range_text", required=True, type=click.STRING, help="Inclusive range A..B.")
@click.option("--group", "groups_text", default="S,A", type=click.STRING, help="S, A or S,A.")
@click.option("--primitive-data", "primitive_data", multiple=True, type=click.Path(exists=True),
              help="Primitive data file or directory (repeatable).")
@click.option("--out", "output_json", type=click.Path(), help="Write the JSON report here.")
@click.option("--csv", "output_csv", type=click.Path(), help="Write the table as CSV here.")
@click.option("--markdown", "output_markdown", type=click.Path(), help="Write a markdown report here.")
@click.option("--enumerate-all-min", is_flag=True, default=False, help="Analyze the shape of every minimum cover.")
@click.option("--threads", type=click.INT, help="Worker processes for the membership matrix.")
@click.option("--time-limit", type=click.FLOAT, help="Search time limit per instance in seconds.")
@click.option("--partition-cap", type=click.INT, help="Largest n whose types may be enumerated.")
@click.option("--config", "config_path", type=click.Path(), help="YAML file with a configuration section.")
@click.pass_context
@handle_errors
def verify_conjectures(ctx, range_text, groups_text, primitive_data, output_json, output_csv, output_markdown,
                       enumerate_all_min, threads, time_limit, partition_cap, config_path):
    """ Compares modeled gamma with g(n) and the known values over a range of n. """
    from normal_cover import generator, report_generation, utils

    start, end = utils.parse_range(range_text)
    groups = utils.parse_groups(groups_text)
    config = generator.merge_options(
        generator.parse_config_yaml(config_path),
        primitive_data=list(primitive_data) or None, enumerate_all_min=enumerate_all_min or None,
        threads=threads, time_limit=time_limit, partition_cap=partition_cap)
    if not ctx.obj["show_progress"]:
        config.show_progress = False

    report = generator.run_verification(start, end, groups, config, output_json, output_csv, output_markdown)
    click.echo(report_generation.verification_table(report).to_string(index=False))
    # infeasible items are listed in the report only
    if any(item.status in ("error", "timeout") for item in report.items):
        sys.exit(EXIT_FAILURE)


@click.command("fixtures")
@click.option("--family", required=True, type=click.Choice(["15q", "6q", "examples"]),
              help="15q: lower bound claims for S_15q; 6q: for A_6q; examples: block exclusions only.")
@click.option("--q", "q", required=True, type=click.INT, help="The prime q.")
@click.option("--format", "output_format", default="text", type=click.Choice(["text", "json"]), help="Output format.")
@handle_errors
def fixtures(family, q, output_format):
    """ Runs the machine-checkable claims for the n = 15q and n = 6q families. """
    from normal_cover import harness, report_generation

    if family == "examples":
        report = harness.examples_report(q)
    else:
        report = harness.family_fixtures(q, family)

    if output_format == "json":
        click.echo(report_generation.generate_fixture_json(report))
    else:
        click.echo(report_generation.generate_fixture_text(report), nl=False)
    if not report.passed:
        sys.exit(EXIT_FAILURE)


@click.command("primitive-data")
@click.option("--name", required=True, type=click.STRING, help="Name of the primitive class, e.g. M12.")
@click.option("--n", "n", required=True, type=click.INT, help="Degree n.")
@click.option("--group", required=True, type=click.Choice(["S", "A"], case_sensitive=False), help="S or A.")
@click.option("--generator", "generators", required=True, multiple=True, type=click.STRING,
              help="Generator in cycle notation on 1..n, e.g. (1,2,3)(4,5) (repeatable).")
@click.option("--order", type=click.INT, help="Expected group order, checked before writing.")
@click.option("--out", "output_path", required=True, type=click.Path(), help="Output .json or .yaml file.")
@click.pass_context
@handle_errors
def primitive_data(ctx, name, n, group, generators, order, output_path):
    """ Writes a primitive data file by enumerating the group generated by permutations. """
    from normal_cover import primitive_data as data

    document = data.generate_primitive_data(name, n, group.upper(), list(generators), order,
                                            show_progress=ctx.obj["show_progress"])
    data.write_primitive_data(document, output_path)
    log.info("Wrote " + str(len(document.classes[0]["types"])) + " cycle types of " + name + " to " + output_path)


cli.add_command(counts)
cli.add_command(gfun)
cli.add_command(member)
cli.add_command(gamma)
cli.add_command(verify_conjectures)
cli.add_command(fixtures)
cli.add_command(primitive_data)


if __name__ == '__main__':
    cli()
