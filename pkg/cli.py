"""
Command Line Interface
Transforms events, simulates scenarios and renders narratives and diagrams.

    python cli.py narrative --builtin fig2 --v 10/3
    python cli.py render scenarios/fig3.scn --v 0 --out fig3.svg

Exit status: 0 on success, 1 on a domain error, 2 on a usage error.
"""

import logging
import sys

import click
from dotenv import load_dotenv

from models import DiagramSpec, SpacetimeEvent
from services.errors import KinematicsError
from services.kinematics import (
    apply,
    classify_value,
    format_fixed,
    frame_interval,
    interval_rest,
    make_transform,
    parse_velocity,
)
from services.narrative import describe, narrative_report, photon_count_at, render_narrative_tsv
from services.pdf_service import generate_narrative_pdf
from services.scenario import (
    BUILTIN_SCENARIOS,
    builtin_scenario,
    canonical_json,
    render_event_graph_tsv,
    simulate,
)
from services.scenario_parser import load_scenario
from services.svg_service import render_axes, render_scenario

load_dotenv()

logger = logging.getLogger(__name__)


class VelocityType(click.ParamType):
    """Decimal or fraction ("10/3"); velocities too close to +-1 fail later as a domain error."""

    name = "velocity"

    def convert(self, value, param, ctx):
        try:
            return parse_velocity(value)
        except ValueError:
            self.fail(f"{value!r} is not a number or fraction", param, ctx)


class EventType(click.ParamType):
    name = "t,x"

    def convert(self, value, param, ctx):
        if isinstance(value, SpacetimeEvent):
            return value
        try:
            t, x = (float(part) for part in value.split(","))
        except ValueError:
            self.fail(f"{value!r} is not of the form t,x", param, ctx)
        return SpacetimeEvent(t=t, x=x)


VELOCITY = VelocityType()
EVENT = EventType()


def scenario_source(func):
    """Positional scenario file, or --builtin for a canonical scenario."""
    func = click.option(
        "--builtin",
        type=click.Choice(sorted(BUILTIN_SCENARIOS)),
        help="Use a canonical scenario instead of a file.",
    )(func)
    func = click.argument(
        "scenario", required=False, type=click.Path(exists=True, dir_okay=False)
    )(func)
    return func


def load_graph(scenario, builtin):
    if (scenario is None) == (builtin is None):
        raise click.UsageError("give either a scenario file or --builtin")
    source = builtin_scenario(builtin) if builtin else load_scenario(scenario)
    return simulate(source)


def write_output(text, out):
    if out is None:
        click.echo(text, nl=False)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.info(f"Wrote {out}")


@click.group()
@click.option(
    "--log-level",
    default="WARNING",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    envvar="LOG_LEVEL",
    show_default=True,
)
def cli(log_level):
    """Generalized-frame photon kinematics."""
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.option("--v", "velocity", type=VELOCITY, required=True, help="Frame velocity.")
@click.option("--event", "events", type=EVENT, multiple=True, required=True, help="Rest-frame event t,x.")
def transform(velocity, events):
    """Print the frame coordinates t_V x_V of each event."""
    matrix = make_transform(velocity)
    for event in events:
        framed = apply(matrix, event)
        click.echo(f"{format_fixed(framed.t)} {format_fixed(framed.x)}")


@cli.command()
@click.option("--e1", type=EVENT, required=True)
@click.option("--e2", type=EVENT, required=True)
@click.option("--v", "velocity", type=VELOCITY, default=None, help="Also evaluate the interval in this frame.")
def interval(e1, e2, velocity):
    """Print ds^2 and its class; with --v also the frame value and regime."""
    ds2 = interval_rest(e1, e2)
    interval_class = classify_value(ds2).value
    if velocity is None:
        click.echo(f"{format_fixed(ds2)} {interval_class}")
        return
    ds2_frame = frame_interval(e1, e2, velocity)
    click.echo(
        f"{format_fixed(ds2)} {format_fixed(ds2_frame)} {velocity.regime.value} {interval_class}"
    )


@cli.command("simulate")
@scenario_source
@click.option("--json", "as_json", is_flag=True, help="Canonical JSON instead of TSV.")
def simulate_command(scenario, builtin, as_json):
    """Simulate a scenario in the rest frame and print its event graph."""
    graph = load_graph(scenario, builtin)
    if as_json:
        click.echo(canonical_json(graph))
    else:
        click.echo(render_event_graph_tsv(graph), nl=False)


@cli.command()
@scenario_source
@click.option("--v", "velocity", type=VELOCITY, required=True)
@click.option("--text", "as_text", is_flag=True, help="One-line reading instead of TSV.")
def narrative(scenario, builtin, velocity, as_text):
    """Print the events of a scenario in the frame's time order."""
    graph = load_graph(scenario, builtin)
    report = narrative_report(graph, velocity)
    if as_text:
        click.echo(describe(report, graph))
    else:
        click.echo(render_narrative_tsv(report), nl=False)


@cli.command("slice")
@scenario_source
@click.option("--v", "velocity", type=VELOCITY, required=True)
@click.option("--time", "tau", type=float, required=True, help="Frame time t_V of the slice.")
def slice_command(scenario, builtin, velocity, tau):
    """Print the number of photons in flight at t_V = --time."""
    graph = load_graph(scenario, builtin)
    click.echo(str(photon_count_at(graph, velocity, tau)))


@cli.command()
@scenario_source
@click.option("--v", "velocity", type=VELOCITY, required=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--scale", type=click.FloatRange(min=1), default=60.0, envvar="DIAGRAM_SCALE", show_default=True)
@click.option("--margin", type=click.FloatRange(min=0), default=0.15, envvar="DIAGRAM_MARGIN", show_default=True)
def render(scenario, builtin, velocity, out, scale, margin):
    """Render the spacetime diagram of a scenario as SVG."""
    graph = load_graph(scenario, builtin)
    spec = DiagramSpec(velocity=velocity, scale=scale, margin=margin)
    write_output(render_scenario(graph, spec), out)


@cli.command()
@click.option("--v", "velocity", type=VELOCITY, required=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--scale", type=click.FloatRange(min=1), default=100.0, show_default=True)
def axes(velocity, out, scale):
    """Render the rest and frame axes with the light ray as SVG."""
    write_output(render_axes(velocity, scale=scale), out)


@cli.command("export-pdf")
@scenario_source
@click.option("--v", "velocity", type=VELOCITY, required=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
def export_pdf(scenario, builtin, velocity, out):
    """Write the frame narrative and diagram as a PDF report."""
    graph = load_graph(scenario, builtin)
    title = f"Frame narrative: {builtin}" if builtin else "Frame narrative"
    buffer = generate_narrative_pdf(graph, velocity, title=title)
    with open(out, "wb") as handle:
        handle.write(buffer.getvalue())
    logger.info(f"Wrote {out}")


def cli_main(args=None) -> int:
    """Run the command line and return its exit status."""
    try:
        result = cli.main(args=args, prog_name="kinematics", standalone_mode=False)
    except KinematicsError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Exit as e:
        return e.exit_code
    except OSError as e:
        click.echo(f"error: {e}", err=True)
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    # --help and similar early exits come back as the exit code
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(cli_main(sys.argv[1:]))
