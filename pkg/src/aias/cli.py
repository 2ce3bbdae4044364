"""Command-line front end.

Exit codes: 0 success, 1 input or parse error, 2 validation or lint failure,
3 usage error. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Mapping, Sequence

import click

from . import __version__
from .corpus import artifact_files
from .errors import AiasError, ParseError
from .graph import Graph
from .query import evaluate_query, format_table, format_tsv, parse_query
from .reasoner import apply_rules, parse_rules, schema_closure
from .shapes import ValidationReport, parse_shapes, report_graph, validate
from .terms import compact
from .turtle import parse_turtle, serialize_turtle
from .vocab import SCHEMA_NAMES, builtin_prefixes, lint_aias, load_builtin_schema, merged_schema, schema_text

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVALID = 2
EXIT_USAGE = 3


class InputError(Exception):
    """A file could not be read or parsed; reported with exit code 1."""


def print_report(report: ValidationReport, prefixes: Mapping[str, str] | None = None) -> str:
    lines = [f"conforms: {'true' if report.conforms else 'false'}"]
    for r in report.results:
        lines.append(
            f"{r.severity.upper()} focus={compact(r.focus, prefixes)} path={compact(r.path, prefixes)} "
            f"check={r.check}: {r.message}"
        )
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _parse(path: str, parser, *args):
    text = _read(path)
    try:
        return parser(text, *args)
    except ParseError as exc:
        raise InputError(f"{path}:{exc}") from None
    except AiasError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_graph(path: str) -> Graph:
    return _parse(path, parse_turtle)


class _State:
    def __init__(self, overrides: dict[str, str]):
        self.overrides = overrides

    def schema(self) -> Graph:
        return merged_schema(self.overrides)

    def prefixes(self, *graphs: Graph) -> dict[str, str]:
        out = builtin_prefixes(self.overrides)
        for g in graphs:
            out.update(g.prefixes)
        out.update(self.overrides)
        return out


def _parse_prefix(ctx, param, values: Sequence[str]) -> dict[str, str]:
    out = {}
    for v in values:
        label, sep, iri = v.partition("=")
        if not sep or not label or ":" not in iri:
            raise click.BadParameter(f"expected label=iri, got {v!r}", ctx=ctx, param=param)
        out[label] = iri
    return out


@click.group(name="aias")
@click.version_option(version=__version__, prog_name="aias")
@click.option(
    "--prefix",
    "overrides",
    multiple=True,
    callback=_parse_prefix,
    metavar="LABEL=IRI",
    help="Bind a prefix; overrides the namespace of AIAS, VDI3682, ISO7489 or ISO22989.",
)
@click.pass_context
def cli(ctx: click.Context, overrides: dict[str, str]) -> None:
    """Toolkit for AIAS knowledge graphs: reasoning, validation and querying."""
    ctx.obj = _State(overrides)


@cli.command("validate")
@click.argument("file")
def validate_cmd(file: str) -> int:
    """Check that FILE parses as Turtle."""
    graph = _load_graph(file)
    click.echo(f"{file}: ok ({len(graph)} triples)")
    return EXIT_OK


@cli.command("infer")
@click.argument("file")
@click.option("--rules", "rules_path", help="Rule document to apply after the schema closure.")
@click.option("-o", "--output", help="Write the closure here instead of stdout.")
@click.pass_obj
def infer_cmd(state: _State, file: str, rules_path: str | None, output: str | None) -> int:
    """Materialize the schema closure (and rule consequences) of FILE."""
    data = _load_graph(file)
    schema = state.schema()
    if rules_path:
        rules = _parse(rules_path, parse_rules, state.prefixes(data))
        result = apply_rules(data, rules, schema)
    else:
        result = schema_closure(data, schema)
    closure = result.closure
    closure.prefixes = {**data.prefixes, **{k: v for k, v in state.prefixes().items() if k not in data.prefixes}}
    text = serialize_turtle(closure)
    summary = f"inferred {len(result.inferred)} triples in {result.iterations} iterations"
    if output:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(summary)
    else:
        click.echo(text, nl=False)
        click.echo(summary, err=True)
    return EXIT_OK


@cli.command("query")
@click.argument("file")
@click.option("--query", "-q", "query_path", required=True, help="Query document (.rq).")
@click.option("--no-inference", is_flag=True, help="Evaluate on the graph as given, without schema closure.")
@click.option("--format", "fmt", type=click.Choice(["table", "tsv"]), default="table", show_default=True)
@click.pass_obj
def query_cmd(state: _State, file: str, query_path: str, no_inference: bool, fmt: str) -> int:
    """Evaluate a SELECT query against FILE."""
    data = _load_graph(file)
    prefixes = state.prefixes(data)
    q = _parse(query_path, parse_query, prefixes)
    graph = data if no_inference else schema_closure(data, state.schema()).closure
    solutions = evaluate_query(graph, q)
    render = format_table if fmt == "table" else format_tsv
    click.echo(render(solutions, {**prefixes, **q.prefixes}), nl=False)
    return EXIT_OK


@cli.command("check")
@click.argument("file")
@click.option("--shapes", "shapes_path", required=True, help="Shapes document (.ttl).")
@click.option("--report-ttl", help="Also write the report as a Turtle graph.")
@click.pass_obj
def check_cmd(state: _State, file: str, shapes_path: str, report_ttl: str | None) -> int:
    """Validate FILE against the shapes in SHAPES."""
    data = _load_graph(file)
    shape_graph = _load_graph(shapes_path)
    try:
        shapes = parse_shapes(shape_graph)
    except AiasError as exc:
        raise InputError(f"{shapes_path}: {exc}") from None
    report = validate(data, shapes, state.schema())
    prefixes = state.prefixes(data, shape_graph)
    click.echo(print_report(report, prefixes), nl=False)
    if report_ttl:
        Path(report_ttl).write_text(serialize_turtle(report_graph(report, prefixes)), encoding="utf-8")
    return EXIT_OK if report.conforms else EXIT_INVALID


@cli.command("lint")
@click.argument("file")
@click.pass_obj
def lint_cmd(state: _State, file: str) -> int:
    """Run the built-in AIAS checks (L1 error, L2/L3 warnings) on FILE."""
    data = _load_graph(file)
    report = lint_aias(data, state.overrides)
    click.echo(print_report(report, state.prefixes(data)), nl=False)
    return EXIT_OK if report.conforms else EXIT_INVALID


@cli.command("example")
@click.argument("name", type=click.Choice(["stamping"]))
@click.option("-o", "--output", "out_dir", required=True, help="Directory to write the files into.")
def example_cmd(name: str, out_dir: str) -> int:
    """Write the stamping use case: graph, rules, shapes and queries."""
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    for filename, content in artifact_files().items():
        (target / filename).write_text(content, encoding="utf-8")
        click.echo(str(target / filename))
    return EXIT_OK


@cli.command("export-schema")
@click.argument("name", required=False, type=click.Choice(SCHEMA_NAMES))
@click.option("-o", "--output", "out_dir", required=True, help="Directory to write the .ttl files into.")
@click.pass_obj
def export_schema_cmd(state: _State, name: str | None, out_dir: str) -> int:
    """Write built-in schema graphs as Turtle (all four unless NAME is given)."""
    target = Path(out_dir)
    target.mkdir(parents=True, exist_ok=True)
    for schema_name in [name] if name else SCHEMA_NAMES:
        if any(k in state.overrides for k in ("AIAS", "VDI3682", "ISO7489", "ISO22989")):
            content = serialize_turtle(load_builtin_schema(schema_name, state.overrides).graph)
        else:
            content = schema_text(schema_name)
        path = target / f"{schema_name}.ttl"
        path.write_text(content, encoding="utf-8")
        click.echo(str(path))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the exit code instead of raising SystemExit."""
    try:
        code = cli.main(args=list(argv) if argv is not None else None, prog_name="aias", standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT
    except InputError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    # --help / --version return None
    return code if isinstance(code, int) else EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
