"""
Command line for the layout toolkit

    python -m app.cli gen hexdual 3 --out h3.graph
    python -m app.cli layout h3.graph hex-strict-queue --out h3.layout
    python -m app.cli verify h3.graph h3.layout

Exit codes: 0 ok / valid, 1 invalid layout, 2 input error, 3 inapplicable algorithm,
4 size limit, 5 internal contract error.
"""

import functools
import logging
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

from app.config import get_settings
from app.engine.counterexample import CounterexampleGraphs, Pipeline
from app.engine.dispatch import EXACT_KINDS, LayoutDispatcher
from app.engine.exact_bounds import BoundFormulas
from app.engine.graph_core import GraphFamilies, GraphOperations
from app.engine.layout_core import FixedOrderOptimizer, LayoutValidator
from app.engine.render import ArcDiagram
from app.errors import InvalidParameterError, LayoutToolkitError
from app.logging_config import configure_logging
from app.models.graph_models import Graph, GraphFamily
from app.models.layout_models import LayoutAlgorithm, LayoutKind, LinearOrder, SolveMode, WitnessKind
from app.models.pipeline_models import ProductOrderKind
from app.storage.graph_file import GraphFileCodec
from app.storage.layout_file import LayoutFileCodec

logger = logging.getLogger(__name__)

GEN_FAMILIES = [family.value for family in GraphFamily] + ["product", "subdivide"]


# ==================== HELPER FUNCTIONS ====================
def toolkit_command(func):
    """Map toolkit errors to the exit-code contract"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except LayoutToolkitError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(exc.exit_code)
        except ValidationError as exc:
            click.echo(f"error: {exc.errors()[0]['msg']}", err=True)
            ctx.exit(InvalidParameterError.exit_code)

    return wrapper


def parse_ints(text: Optional[str], what: str) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(token) for token in text.replace(" ", "").split(",") if token]
    except ValueError:
        raise InvalidParameterError(f"{what} must be a comma-separated list of integers")


def parse_family_spec(spec: str, seed: Optional[int]) -> Graph:
    """name:p1,p2 -> generated graph"""
    name, _, raw = spec.partition(":")
    try:
        family = GraphFamily(name)
    except ValueError:
        raise InvalidParameterError(f"unknown family {name!r}")
    return GraphFamilies.generate(family, parse_ints(raw, "family parameters") or [], seed)


def emit(text: str, out: Optional[str]) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w") as handle:
            handle.write(text)


# ==================== CLI GROUP ====================
@click.group()
@click.option("--log-level", default=None, help="Log level (default from settings)")
@click.option("--threads", type=int, default=None, help="Worker processes for exact searches")
@click.option("--seed", type=int, default=None, help="Seed for randomized generators")
@click.pass_context
def cli(ctx, log_level, threads, seed):
    """Stack and queue layouts of graphs"""
    configure_logging(log_level or get_settings().log_level)
    ctx.ensure_object(dict)
    ctx.obj["threads"] = threads
    ctx.obj["seed"] = seed


# GENERATE
@cli.command()
@click.argument("family", type=click.Choice(GEN_FAMILIES))
@click.argument("params", nargs=-1, type=int)
@click.option("--left", help="Left factor of a product, as name:p1,p2")
@click.option("--right", help="Right factor of a product, as name:p1,p2")
@click.option("--source", type=click.Path(exists=True, dir_okay=False), help="Graph file to subdivide")
@click.option("--attachments", type=int, default=0, help="Random attachments for ktree")
@click.option("--out", type=click.Path(dir_okay=False), help="Output graph file (default stdout)")
@click.pass_context
@toolkit_command
def gen(ctx, family, params, left, right, source, attachments, out):
    """Generate a graph of a named family"""
    seed = ctx.obj["seed"]
    if family == "product":
        if not left or not right:
            raise InvalidParameterError("product needs --left and --right")
        graph = GraphOperations.cartesian_product(parse_family_spec(left, seed), parse_family_spec(right, seed))
    elif family == "subdivide":
        if not source or len(params) != 1:
            raise InvalidParameterError("subdivide needs --source and the division count k")
        graph = GraphOperations.subdivide(GraphFileCodec.read(source), params[0])
    else:
        graph = GraphFamilies.generate(GraphFamily(family), params, seed, attachments)
    emit(GraphFileCodec.dumps(graph), out)


# LAYOUT
@cli.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("algorithm", type=click.Choice([a.value for a in LayoutAlgorithm]))
@click.option("--root", type=int, default=None)
@click.option("--boundary", help="Outer boundary as comma-separated vertex ids")
@click.option("--order", "order_text", help="Vertex order as comma-separated ids")
@click.option("--mode", type=click.Choice([m.value for m in SolveMode]), default=SolveMode.EXACT.value)
@click.option("--k", type=int, default=None, help="Tree width for k-tree-stack")
@click.option("--graph-out", type=click.Path(dir_okay=False), help="Where to write a subdivided graph")
@click.option("--out", type=click.Path(dir_okay=False), help="Output layout file (default stdout)")
@toolkit_command
def layout(graph_file, algorithm, root, boundary, order_text, mode, k, graph_out, out):
    """Construct a layout with a named algorithm"""
    graph = GraphFileCodec.read(graph_file)
    result = LayoutDispatcher.construct(
        graph,
        LayoutAlgorithm(algorithm),
        root=root,
        boundary=parse_ints(boundary, "boundary"),
        order=parse_ints(order_text, "order"),
        mode=SolveMode(mode),
        k=k,
    )
    if result.graph is not None:
        if graph_out:
            GraphFileCodec.write(result.graph, graph_out)
        else:
            click.echo("warning: layout refers to a subdivided graph; pass --graph-out to keep it", err=True)
    emit(LayoutFileCodec.dumps(result.layout), out)
    logger.debug("%s layout written with k=%d", algorithm, result.layout.k)
    if out:
        click.echo(f"k={result.layout.k}")


# VERIFY
@cli.command()
@click.argument("graph_file", type=click.Path(dir_okay=False))
@click.argument("layout_file", type=click.Path(dir_okay=False))
@click.option("--strict", is_flag=True, help="Also check the strict queue condition")
@toolkit_command
def verify(graph_file, layout_file, strict):
    """Validate a layout against a graph"""
    graph = GraphFileCodec.read(graph_file)
    layout_ = LayoutFileCodec.read(layout_file)
    if strict:
        if layout_.kind != LayoutKind.QUEUE:
            raise InvalidParameterError("--strict applies to queue layouts only")
        layout_ = layout_.model_copy(update={"strict": True})
    report = LayoutValidator.validate(graph, layout_)
    if report.valid:
        click.echo(f"valid {report.kind.value} layout, k={report.k}")
        return
    click.echo(f"invalid {report.kind.value} layout: {report.violation_count} violation(s)")
    for violation in report.violations:
        click.echo(f"  page {violation.page}: {violation.first} {violation.second} {violation.reason.value}")
    if report.truncated:
        click.echo(f"  ... {report.violation_count - len(report.violations)} more")
    sys.exit(1)


# EXACT
@cli.command()
@click.argument("graph_file", type=click.Path(dir_okay=False))
@click.option("--kind", type=click.Choice(EXACT_KINDS), default="queue")
@click.option("--layout-out", type=click.Path(dir_okay=False), help="Write the optimal layout here")
@click.pass_context
@toolkit_command
def exact(ctx, graph_file, kind, layout_out):
    """Exact queue / stack number of a small graph"""
    graph = GraphFileCodec.read(graph_file)
    k, layout_ = LayoutDispatcher.exact(graph, kind, threads=ctx.obj["threads"])
    if layout_out and layout_ is not None:
        LayoutFileCodec.write(layout_, layout_out)
    click.echo(str(k))


# WITNESS
@cli.command()
@click.argument("graph_file", type=click.Path(dir_okay=False))
@click.option("--kind", type=click.Choice([w.value for w in WitnessKind]), default=WitnessKind.TWIST.value)
@click.option("--order", "order_text", help="Vertex order (default identity)")
@click.option("--mode", type=click.Choice([m.value for m in SolveMode]), default=SolveMode.EXACT.value)
@toolkit_command
def witness(graph_file, kind, order_text, mode):
    """Largest twist or rainbow under a fixed order"""
    graph = GraphFileCodec.read(graph_file)
    sequence = parse_ints(order_text, "order")
    order = LinearOrder.identity(graph.n) if sequence is None else LinearOrder(vertices=tuple(sequence))
    if WitnessKind(kind) == WitnessKind.RAINBOW:
        _, found, _ = FixedOrderOptimizer.max_rainbow(graph, order)
    else:
        found = FixedOrderOptimizer.max_twist(graph, order, SolveMode(mode))
    click.echo(found.model_dump_json(indent=2))


# BOUNDS
@cli.command()
@click.argument("name")
@click.argument("params", nargs=-1, type=int)
@toolkit_command
def bounds(name, params):
    """Evaluate a closed-form bound or Ramsey value"""
    click.echo(str(BoundFormulas.evaluate(name, params)))


# PIPELINE
@cli.command()
@click.option("--a", "a", type=int, default=6)
@click.option("--n", "n", type=int, default=2)
@click.option("--c", "c", type=int, default=3)
@click.option("--d", "d", type=int, default=3)
@click.option("--order", "order_kind", type=click.Choice([o.value for o in ProductOrderKind]), default="identity")
@click.option("--order-file", type=click.Path(exists=True, dir_okay=False), help="Custom order as comma-separated ids")
@click.option("--for-s", "for_s", type=int, default=None, help="Only report the parameter chain for s")
@click.option("--graph-out", type=click.Path(dir_okay=False), help="Write S_a □ H_n here")
@click.option("--layout-out", type=click.Path(dir_okay=False), help="Write its 4-queue layout here")
@toolkit_command
def pipeline(a, n, c, d, order_kind, order_file, for_s, graph_out, layout_out):
    """Run the twist-extraction pipeline on S_a □ H_n"""
    if for_s is not None:
        click.echo(Pipeline.parameters_for(for_s).model_dump_json(indent=2))
        return
    if graph_out or layout_out:
        graph, queue_layout = CounterexampleGraphs.counterexample_graph(a, n)
        if graph_out:
            GraphFileCodec.write(graph, graph_out)
        if layout_out:
            LayoutFileCodec.write(queue_layout, layout_out)
    if order_file:
        with open(order_file) as handle:
            order = LinearOrder(vertices=tuple(parse_ints(handle.read().strip(), "order") or []))
    else:
        order = CounterexampleGraphs.order_for(ProductOrderKind(order_kind), a, n)
    trace = Pipeline.run_pipeline(a, n, order, c, d)
    click.echo(trace.model_dump_json(indent=2))


# RENDER
@cli.command()
@click.argument("graph_file", type=click.Path(dir_okay=False))
@click.argument("layout_file", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="SVG file (default stdout)")
@toolkit_command
def render(graph_file, layout_file, out):
    """Draw a valid layout as an SVG arc diagram"""
    graph = GraphFileCodec.read(graph_file)
    emit(ArcDiagram.render_svg(graph, LayoutFileCodec.read(layout_file)), out)


def main() -> None:
    cli(obj={})


if __name__ == "__main__":
    main()
