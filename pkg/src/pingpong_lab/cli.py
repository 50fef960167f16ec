"""Command line entry point."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .errors import InconsistentGapData, ParseError, PreconditionViolated, ValidationError
from .report import EXIT_INAPPLICABLE, EXIT_USAGE, CommandFailed, run
from .scenario import parse_scenario
from .serialize import dumps
from .svg import chord_diagram


def _emit(report, out, svg):
    payload = report.as_dict()
    payload["diagram"] = report.diagram
    text = dumps(payload)
    if out is None:
        click.echo(text, nl=False)
    else:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{report.scenario}.json").write_text(text, encoding="utf-8")
        if svg:
            (out / f"{report.scenario}.svg").write_text(chord_diagram(report.diagram), encoding="utf-8")
    for c in report.counterexamples:
        reason = c["reason"]
        click.echo(reason if reason.startswith("COUNTEREXAMPLE") else f"COUNTEREXAMPLE: {reason}", err=True)
    return report.exit_code


def _run_text(text: str, out=None, svg=False) -> int:
    try:
        report = run(parse_scenario(text))
    except (ParseError, ValidationError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except CommandFailed as exc:
        click.echo(f"error: {exc}", err=True)
        inapplicable = isinstance(exc.cause, (InconsistentGapData, PreconditionViolated))
        return EXIT_INAPPLICABLE if inapplicable else EXIT_USAGE
    return _emit(report, out, svg)


def _inline(name: str, generators: dict, commands: list, extra: str = "") -> str:
    lines = ["[scenario]", f"name = {name}", "[generators]"]
    lines += [f"{k} = {v}" for k, v in generators.items()]
    lines += [extra, "[commands]"] + commands
    return "\n".join(lines) + "\n"


@click.group()
def main():
    """Exact ping-pong checks for pairs of Möbius maps and realization models."""


@main.command("run")
@click.argument("scenario", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(file_okay=False), help="Directory for the JSON report.")
@click.option("--svg", is_flag=True, help="Also write a chord diagram (needs --out).")
def run_cmd(scenario, out, svg):
    """Run every command of a scenario file."""
    text = Path(scenario).read_text(encoding="utf-8")
    sys.exit(_run_text(text, out, svg))


@main.command("classify-pair")
@click.argument("f")
@click.argument("g")
def classify_pair_cmd(f, g):
    """Eight-point configuration of f, g and their compositions; matrices as [[a,b],[c,d]]."""
    sys.exit(_run_text(_inline("classify-pair", {"f": f, "g": g}, ["classify-pair f g"])))


@main.command("classify-commutator")
@click.argument("h")
@click.argument("f")
def classify_commutator_cmd(h, f):
    """Commutator configuration of a linked pair h, f."""
    sys.exit(_run_text(_inline("classify-commutator", {"h": h, "f": f}, ["classify-commutator h f"])))


@main.command("census")
@click.option("--samples", default=10000, show_default=True)
@click.option("--seed", default=42, show_default=True)
def census_cmd(samples, seed):
    """Census of composition configurations over random pairs."""
    sys.exit(_run_text(_inline("census", {}, [f"census samples={samples} seed={seed}"])))


@main.command("certify")
@click.argument("h")
@click.argument("f")
@click.option("--radius", default=6, show_default=True)
def certify_cmd(h, f, radius):
    """Check that every word of the ball in <h> * <f> is hyperbolic."""
    sys.exit(_run_text(_inline("certify", {"h": h, "f": f}, [f"certify radius={radius}"])))


@main.command("verify")
@click.argument("h")
@click.argument("f")
@click.option("--u-h", "u_h", required=True, help='Arcs of U_H, e.g. "(-1/2, 1/2), (2, -2)".')
@click.option("--u-k", "u_k", required=True, help="Arcs of U_K.")
@click.option("--mode", type=click.Choice(["finite", "axis", "both"]), default="finite", show_default=True)
@click.option("--radius", default=6, show_default=True)
def verify_cmd(h, f, u_h, u_k, mode, radius):
    """Ping-pong check of a partition for <h> * <f>."""
    extra = f"[partition]\nU_H = {u_h}\nU_K = {u_k}"
    sys.exit(_run_text(_inline("verify", {"h": h, "f": f}, [f"verify mode={mode} radius={radius}"], extra)))


if __name__ == "__main__":
    main()
