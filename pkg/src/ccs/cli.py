"""``ccs`` command line tool.

Term arguments are CCS text; an argument of the form ``@path`` reads the
term (optionally preceded by ``NAME = expr;`` definitions) from a file.
Exit status is 0 on success (or "related"), 1 for a negative answer and
2 for errors.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from .equiv import EQUIVALENCES, weak_traces
from .errors import CCSError, NotPrefixedSum
from .laws import check_law, expand, law_catalog, simplify_nil_summands
from .lts import LtsLimits, build_lts, export_dot, export_json
from .parser import parse, render
from .semantics import SemanticsConfig, transitions
from .syntax import Par, Process

FORMATS = ("text", "json", "dot")


@dataclass(frozen=True)
class CliConfig:
    max_states: int = 10000
    max_edges: int = 100000
    max_unfold_depth: int = 64
    output_format: str = "text"

    def __post_init__(self):
        if min(self.max_states, self.max_edges, self.max_unfold_depth) < 1:
            raise ValueError("limits must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")

    @property
    def limits(self) -> LtsLimits:
        return LtsLimits(self.max_states, self.max_edges)

    @property
    def semantics(self) -> SemanticsConfig:
        return SemanticsConfig(self.max_unfold_depth)


def load_term(text: str) -> Process:
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as e:
            raise click.ClickException(str(e)) from e
    return parse(text)


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _guarded(fn):
    """Turn toolkit errors into a diagnostic and exit status 2."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CCSError as e:
            _fail(f"{type(e).__name__}: {e}")
        except click.ClickException as e:
            _fail(e.format_message())

    return wrapper


def _emit_json(obj) -> None:
    click.echo(json.dumps(obj, separators=(",", ":")))


pass_config = click.make_pass_decorator(CliConfig)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option(
    "--max-states",
    type=click.IntRange(min=1),
    default=10000,
    show_default=True,
    envvar="CCS_MAX_STATES",
    help="State bound for LTS construction (env CCS_MAX_STATES).",
)
@click.option("--max-edges", type=click.IntRange(min=1), default=100000, show_default=True)
@click.option(
    "--max-depth", type=click.IntRange(min=1), default=64, show_default=True, help="Nested recursion unfolding bound."
)
@click.option("--format", "output_format", type=click.Choice(FORMATS), default="text", show_default=True)
@click.pass_context
def main(ctx, max_states, max_edges, max_depth, output_format):
    """Explore, compare and check CCS processes."""
    ctx.obj = CliConfig(max_states, max_edges, max_depth, output_format)


@main.command()
@click.argument("term")
@pass_config
@_guarded
def trans(cfg: CliConfig, term: str):
    """List every transition of TERM."""
    ts = transitions(load_term(term), cfg.semantics)
    if cfg.output_format == "json":
        _emit_json([[str(u), render(t)] for u, t in ts])
        return
    if cfg.output_format == "dot":
        _fail("trans has no dot output; use `ccs lts`")
    for u, t in ts:
        click.echo(f"{u} -> {render(t)}")
    click.echo("and no other transitions" if ts else "no transitions")


@main.command()
@click.argument("term")
@pass_config
@_guarded
def lts(cfg: CliConfig, term: str):
    """Build the reachable LTS of TERM."""
    graph = build_lts(load_term(term), cfg.limits, cfg.semantics)
    if cfg.output_format == "json":
        click.echo(export_json(graph))
    elif cfg.output_format == "dot":
        click.echo(export_dot(graph), nl=False)
    else:
        click.echo(f"{graph.num_states} states, {len(graph.edges)} edges, root s{graph.root}")
        for s in graph.states:
            click.echo(f"s{s.id} = {s.term}")
        for s, u, t in graph.edges:
            click.echo(f"s{s} --{u}--> s{t}")


@main.command()
@click.argument("left")
@click.argument("right")
@click.option("--strong", "kind", flag_value="strong", default=True, help="Strong bisimilarity (default).")
@click.option("--weak", "kind", flag_value="weak", help="Weak bisimilarity.")
@click.option("--rooted", "kind", flag_value="rooted_weak", help="Rooted weak bisimilarity.")
@pass_config
@_guarded
def eq(cfg: CliConfig, left: str, right: str, kind: str):
    """Decide whether LEFT and RIGHT are equivalent (exit 0 yes, 1 no)."""
    report = EQUIVALENCES[kind](load_term(left), load_term(right), cfg.limits, cfg.semantics)
    if cfg.output_format == "json":
        click.echo(report.to_json())
    elif report.related:
        click.echo(f"related ({kind})")
    else:
        msg = f"not related ({kind})"
        if report.distinguishing_info is not None:
            state, action = report.distinguishing_info
            msg += f": state s{state} has an unmatched {action} move"
        click.echo(msg)
    sys.exit(0 if report.related else 1)


@main.command("expand")
@click.argument("term")
@click.option("--simplify-nil", is_flag=True, help="Drop nil summands from the result.")
@click.option("--check", is_flag=True, help="Also verify the result is strongly bisimilar to TERM.")
@pass_config
@_guarded
def expand_cmd(cfg: CliConfig, term: str, simplify_nil: bool, check: bool):
    """Apply the expansion law to a parallel pair of prefixed sums."""
    p = load_term(term)
    if not isinstance(p, Par):
        raise NotPrefixedSum("expected `P | Q` with P and Q sums of prefixes")
    result = expand(p.left, p.right)
    if simplify_nil:
        result = simplify_nil_summands(result)
    related = None
    if check:
        related = EQUIVALENCES["strong"](p, result, cfg.limits, cfg.semantics).related
    if cfg.output_format == "json":
        _emit_json({"expansion": render(result), "checked": related})
    else:
        click.echo(render(result))
        if check:
            click.echo("check: strongly bisimilar" if related else "check: NOT strongly bisimilar")
    if related is False:
        sys.exit(1)


@main.command()
@click.option("--all", "run_all", is_flag=True, help="Check every law.")
@click.option("--law", "names", multiple=True, help="Law to check (repeatable).")
@click.option("--samples", type=click.IntRange(min=1), default=50, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--depth", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--list", "list_only", is_flag=True, help="List the laws and exit.")
@pass_config
@_guarded
def laws(cfg: CliConfig, run_all, names, samples, seed, depth, list_only):
    """Verify algebraic laws on random instances."""
    catalog = law_catalog()
    if list_only:
        for law in catalog:
            click.echo(f"{law.name:28} {law.statement}")
        return
    if run_all:
        names = [law.name for law in catalog]
    if not names:
        _fail("give --all or --law NAME")
    results = [check_law(n, samples, seed, depth, limits=cfg.limits, cfg=cfg.semantics) for n in names]
    if cfg.output_format == "json":
        _emit_json([{"law": r.name, "samples": r.samples, "passed": r.passed, "ok": r.ok} for r in results])
    else:
        for r in results:
            click.echo(f"{r.name:28} {r.passed:>4}/{r.samples:<4} {'PASS' if r.ok else 'FAIL'}")
            for inst in r.failures[:3]:
                click.echo(f"    counterexample: {render(inst.lhs)}  vs  {render(inst.rhs)}")
    sys.exit(0 if all(r.ok for r in results) else 1)


@main.command()
@click.argument("term")
@click.option("--len", "length", type=click.IntRange(min=0), default=3, show_default=True)
@pass_config
@_guarded
def traces(cfg: CliConfig, term: str, length: int):
    """List the weak traces of TERM up to a given length."""
    found = weak_traces(build_lts(load_term(term), cfg.limits, cfg.semantics), length)
    if cfg.output_format == "json":
        _emit_json([[str(l) for l in t] for t in found])
        return
    for t in found:
        click.echo(" ".join(str(l) for l in t) if t else "(empty)")


@main.command()
@click.argument("term")
@pass_config
@_guarded
def repl(cfg: CliConfig, term: str):
    """Step through TERM interactively."""
    Repl(load_term(term), cfg.semantics).run(click.get_text_stream("stdin"), click.echo)


class Repl:
    """Line-oriented stepper: a number takes that transition, ``u`` undoes, ``q`` quits."""

    def __init__(self, root: Process, cfg: SemanticsConfig = SemanticsConfig()):
        self.cfg = cfg
        self.history: list[Process] = [root]
        transitions(root, cfg)  # reject bad roots up front

    @property
    def current(self) -> Process:
        return self.history[-1]

    def options(self):
        return transitions(self.current, self.cfg)

    def choose(self, index: int) -> bool:
        opts = self.options()
        if not 1 <= index <= len(opts):
            return False
        self.history.append(opts[index - 1].target)
        return True

    def undo(self) -> bool:
        if len(self.history) == 1:
            return False
        self.history.pop()
        return True

    def show(self, out) -> None:
        out(f"current: {render(self.current)}")
        opts = self.options()
        if not opts:
            out("  no transitions")
        for i, (u, t) in enumerate(opts, 1):
            out(f"  [{i}] {u} -> {render(t)}")

    def run(self, stream, out) -> None:
        self.show(out)
        while True:
            out("> ", nl=False)
            line = stream.readline()
            if not line:
                out("")
                return
            cmd = line.strip()
            if cmd in ("q", "quit"):
                return
            if cmd in ("u", "undo"):
                if not self.undo():
                    out("nothing to undo")
                    continue
            elif cmd.isdigit():
                if not self.choose(int(cmd)):
                    n = len(self.options())
                    out(f"no transition {cmd}; " + (f"pick 1..{n}" if n else "this process is stuck"))
                    continue
            elif cmd in ("", "?", "h", "help"):
                out("enter a transition number, u to undo, q to quit")
                continue
            else:
                out(f"unknown command {cmd!r}")
                continue
            self.show(out)


if __name__ == "__main__":
    main()
