"""Command-line front end: census, classify, verify, rewriting, export."""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import core, moves
from .census import CensusBudgetError, census
from .classify import (
    classify,
    generate_random_melonic,
    generate_random_nlo,
    reduce_greedy,
)
from .verify import CHECK_NAMES, run_suite

DOT_COLORS = {1: "red", 2: "green", 3: "blue"}


def _load_graph(path: str) -> core.FeynmanGraph:
    text = Path(path).read_text().strip()
    if text.startswith("{"):
        return core.from_obj(json.loads(text))
    return core.from_text(text)


def _parse_edge(G: core.FeynmanGraph, spec: str):
    try:
        left, right = spec.split("-")
        bu, lu = map(int, left.split("."))
        bv, lv = map(int, right.split("."))
    except ValueError:
        raise click.BadParameter(f"edge must look like '0.0-1.0', got {spec!r}")
    return (core.vertex_index(G.b, (bu, lu)), core.vertex_index(G.b, (bv, lv)))


@click.group()
def main():
    """Combinatorics of the rank-3 tensor model with tetrahedral
    interaction: exhaustive censuses, degree classification, flips and
    melonic dipole moves."""


@main.command("census")
@click.option("--b", "b", type=int, required=True, help="Bubble count.")
@click.option("--dedup/--no-dedup", "dedup", default=None,
              help="Group labeled graphs into isomorphism classes "
                   "(default: on for b <= 4, off for b = 5).")
@click.option("--parallel", "width", type=int, default=1, show_default=True,
              help="Worker count for the subtree-split scan.")
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
              help="Write the structured report here (JSON).")
@click.option("--table-out", "table_out", type=click.Path(dir_okay=False),
              default=None, help="Write the flat table here (TSV).")
@click.option("--timing/--no-timing", default=False,
              help="Include elapsed time in the structured report.")
def cmd_census(b, dedup, width, out, table_out, timing):
    """Exhaustively enumerate all graphs with b bubbles."""
    try:
        report = census(b, dedup_iso=dedup, parallel_width=width)
    except CensusBudgetError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"# census b={b} dedup={report.dedup_iso} "
               f"parallel={report.parallel_width}")
    click.echo(f"# matchings={report.total_matchings} "
               f"connected={report.connected_labeled} "
               f"max_faces={report.max_faces} "
               f"min_two_omega={report.min_two_omega}")
    click.echo(report.to_table(), nl=False)
    if out:
        Path(out).write_text(report.to_json(include_timing=timing))
    if table_out:
        Path(table_out).write_text(report.to_table())


@main.command("classify")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
def cmd_classify(graph_file):
    """Classify a graph: leading melonic, NLO double tadpole or
    subleading, with its degree and reduction trace."""
    G = _load_graph(graph_file)
    result = classify(G)
    deg = core.degree2(G)
    click.echo(f"class: {result.kind.value}")
    click.echo(f"two_omega: {deg.two_omega} (omega = {deg.omega})")
    click.echo(f"faces: {core.total_faces(G)}")
    click.echo("trace: " + json.dumps([s.to_obj() for s in result.trace]))


@main.command("verify")
@click.option("--all", "run_all", is_flag=True, help="Run every check.")
@click.option("--check", "checks", multiple=True,
              type=click.Choice(CHECK_NAMES),
              help="Run one named check (repeatable).")
@click.option("--bmax", type=int, default=3, show_default=True,
              help="Exhaustive range for the lemma checks.")
@click.option("--b", "gmax_b", type=int, default=None,
              help="Single census size for the gmax check.")
@click.option("--samples", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out_dir", type=click.Path(file_okay=False),
              default=None, help="Write one JSON report per check here.")
@click.option("--timing/--no-timing", default=False)
def cmd_verify(run_all, checks, bmax, gmax_b, samples, seed, out_dir, timing):
    """Run the lemma/theorem checkers; exit 0 iff no violations."""
    names = CHECK_NAMES if (run_all or not checks) else checks
    click.echo(f"# verify checks={','.join(names)} bmax={bmax} "
               f"samples={samples} seed={seed}")
    reports = run_suite(names, b_max=bmax, samples=samples, seed=seed,
                        gmax_bs=[gmax_b] if gmax_b else None)
    failed = 0
    for rep in reports:
        status = "pass" if rep.passed else f"FAIL ({len(rep.violations)})"
        click.echo(f"{rep.name}: {status} [checked {rep.checked}]")
        if not rep.passed:
            failed += 1
        if out_dir:
            d = Path(out_dir)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{rep.name}.json").write_text(
                rep.to_json(include_timing=timing))
    sys.exit(1 if failed else 0)


@main.command("reduce")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--greedy", is_flag=True,
              help="Use the greedy single-path reducer instead of the "
                   "backtracking search.")
def cmd_reduce(graph_file, greedy):
    """Reduce melonic dipoles as far as possible and report the trace."""
    G = _load_graph(graph_file)
    if greedy:
        H = reduce_greedy(G)
        click.echo(f"final: {core.to_text(H)}")
        return
    result = classify(G)
    for i, site in enumerate(result.trace):
        click.echo(f"step {i}: reduce {json.dumps(site.to_obj())}")
        G = moves.reduce_dipole(G, site)
    click.echo(f"class: {result.kind.value}")
    click.echo(f"final: {core.to_text(G)}")


@main.command("flip")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--left", "-l", required=True, help="First edge, e.g. 0.0-1.0.")
@click.option("--right", "-r", required=True, help="Second edge.")
@click.option("--variant", type=click.Choice(moves.VARIANTS), required=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None,
              help="Write the flipped graph record here.")
def cmd_flip(graph_file, left, right, variant, out):
    """Cut two color-0 edges and reglue them."""
    G = _load_graph(graph_file)
    outcome = moves.flip(G, _parse_edge(G, left), _parse_edge(G, right),
                         variant)
    click.echo(f"result: {core.to_text(outcome.result)}")
    click.echo(f"delta_faces: {list(outcome.delta_faces)}")
    click.echo(f"connected_after: {outcome.connected_after}")
    if out:
        Path(out).write_text(core.to_text(outcome.result) + "\n")


@main.command("generate")
@click.option("--kind", type=click.Choice(("melonic", "nlo")), required=True)
@click.option("--b", "b", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def cmd_generate(kind, b, seed, out):
    """Generate a random leading-order or NLO graph."""
    if kind == "melonic":
        G = generate_random_melonic(b, seed)
    else:
        G = generate_random_nlo(b, seed)
    click.echo(f"# kind={kind} b={b} seed={seed}")
    click.echo(core.to_text(G))
    if out:
        Path(out).write_text(core.to_text(G) + "\n")


@main.command("export-dot")
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None)
def cmd_export_dot(graph_file, out):
    """Render a graph as DOT: color-0 dashed, colors 1-3 labeled."""
    G = _load_graph(graph_file)
    text = export_dot(G)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def export_dot(G: core.FeynmanGraph) -> str:
    lines = [f"// graph: {core.to_text(G)}", "graph tensor_k4 {",
             "  node [shape=point];"]
    for v in range(4 * G.b):
        lines.append(f'  "{v // 4}.{v % 4}";')
    for c in core.COLORS:
        pairing = core.COLOR_PAIRING[c]
        for bub in range(G.b):
            for loc in range(4):
                if loc < pairing[loc]:
                    lines.append(
                        f'  "{bub}.{loc}" -- "{bub}.{pairing[loc]}" '
                        f'[color={DOT_COLORS[c]}, label={c}];')
    for u, v in G.zero_edges():
        lines.append(f'  "{u // 4}.{u % 4}" -- "{v // 4}.{v % 4}" '
                     f'[style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    main()
