"""Command line: ``check``, ``build``, ``verify`` and ``gen``.

Exit status is 0 when everything passes, 1 when a check fails (the report
carries a witness) and 2 for unreadable input or a missing ingredient.
"""

from __future__ import annotations

import json
import shlex
import sys
import time

import click

from ..algebra.functors import SSET
from ..algebra.validate import validate
from ..constructions import bar_ft, coend, colim, grothendieck, hocolim, nerve, product_diagram, terminal, under_categories
from ..errors import EquivarianceError, FormatError
from ..homology import parse_coeffs
from .checks import CHECK_NAMES, CheckResult, InputError, Inputs, run_check
from .document import DEFAULT_TOP, Document, category_blocks, parse, serialize, sset_block
from .generate import SHAPES, Caps, generate

CONSTRUCTIONS = ("nerve", "colim", "hocolim", "bar", "coend", "grothendieck")
NEEDS_FUNCTOR = ("iso:eq7", "iso:eq22", "witness:thm4", "witness:thm5")


class Report:
    """One command's outcome; the text and JSON renderings carry the same verdicts."""

    def __init__(self, command: str, digest: str | None, top: int | None, coeffs):
        self.command = command
        self.digest = digest
        self.top = top
        self.coeffs = [str(c) for c in coeffs]
        self.results: list[CheckResult] = []
        self.started = time.perf_counter()

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "digest": self.digest,
            "truncation": self.top,
            "coefficients": self.coeffs,
            "ok": self.ok,
            "seconds": round(time.perf_counter() - self.started, 4),
            "checks": [r.to_dict() for r in self.results],
        }

    def text(self) -> str:
        d = self.to_dict()
        lines = [f"$ {d['command']}", f"instance {d['digest']}  truncation {d['truncation']}  "
                                      f"coefficients {','.join(d['coefficients'])}"]
        for r in d["checks"]:
            lines.append(f"{'PASS' if r['ok'] else 'FAIL'} {r['name']}: {r['summary']} ({r['seconds']:.2f} s)")
            for k, v in r["details"].items():
                lines.append(f"    {k}: {v}")
            if r["witness"] is not None:
                lines.append(f"    witness: {json.dumps(r['witness'], sort_keys=True)}")
            for c in r["caveats"]:
                lines.append(f"    caveat: {c}")
        lines.append(f"result: {'pass' if d['ok'] else 'fail'} ({d['seconds']:.2f} s)")
        return "\n".join(lines)

    def emit(self, fmt: str, out) -> None:
        body = json.dumps(self.to_dict(), indent=2, sort_keys=True) if fmt == "json" else self.text()
        _write(body + "\n", out)


def _write(text: str, out) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _echo() -> str:
    return "eqhocolim " + " ".join(shlex.quote(a) for a in sys.argv[1:])


def _load(path: str, top: int | None) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), DEFAULT_TOP if top is None else top)


def _fail_input(err: Exception) -> None:
    click.echo(f"error: {err}", err=True)
    sys.exit(2)


def _coeffs_option(f):
    return click.option("--coeffs", default="q,2,3,5", show_default=True,
                        help="Comma-separated coefficient systems: q, z or primes.")(f)


def _format_options(f):
    f = click.option("--out", type=click.Path(dir_okay=False), help="Write the report here.")(f)
    return click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
                        show_default=True)(f)


@click.group()
def main():
    """Equivariant homotopy colimits of finite G-categories."""


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--truncate", type=int, default=None, help="Truncation for shorthand blocks [default: 4].")
@_format_options
def check(path, truncate, fmt, out):
    """Parse PATH and validate every block."""
    try:
        doc = _load(path, truncate)
    except (FormatError, ValueError) as err:
        _fail_input(err)
    report = Report(_echo(), doc.digest(), doc.top, ())
    for b in doc.blocks:
        if b.kind == "eta":
            continue
        t0 = time.perf_counter()
        v = validate(b.value)
        res = CheckResult(f"{b.kind} {b.name}", v.ok, "valid" if v.ok else f"{len(v.violations)} violation(s)")
        if not v.ok:
            first = v.violations[0]
            res.witness = {"rule": first.rule, "where": repr(first.where), "detail": first.detail}
        res.seconds = time.perf_counter() - t0
        report.results.append(res)
    report.emit(fmt, out)
    sys.exit(0 if report.ok else 1)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.argument("construction", type=click.Choice(CONSTRUCTIONS))
@click.option("--diagram", help="Simplicial or category-valued diagram to use.")
@click.option("--action", help="G-category to use (nerve, grothendieck of under-categories).")
@click.option("--name", help="Name of the new block.")
@click.option("--truncate", type=int, default=None, help="Truncation of the output [default: 4].")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the extended document here.")
def build(path, construction, diagram, action, name, truncate, out):
    """Append the output of CONSTRUCTION to the document in PATH."""
    try:
        doc = _load(path, truncate)
        blocks = _build(doc, construction, diagram, action, name, truncate)
        for b in blocks:
            doc.add(b)
        text = serialize(doc)
    except (FormatError, ValueError) as err:
        _fail_input(err)
    _write(text, out)


def _build(doc: Document, construction, diagram, action, name, truncate):
    inp = Inputs(doc, truncate, diagram=diagram, action=action)
    top = inp.level()
    if construction == "nerve":
        act = inp.a()
        src = doc.name_of(act)
        new = name or doc.fresh_name(f"N{doc.block(src).refs['on']}")
        return [sset_block(doc, new, nerve(act.category, act, top), f"nerve {src}")]
    if construction == "grothendieck":
        if diagram is not None and doc.block(diagram, ("functor",)).refs.get("kind") != SSET:
            rf, what = doc.get(diagram), f"grothendieck {diagram}"
        else:
            act = inp.a()
            rf, what = under_categories(act), f"grothendieck under-categories of {doc.name_of(act)}"
        gc = grothendieck(rf)
        new = name or doc.fresh_name("Groth")
        return category_blocks(doc, new, gc.category, gc.action, what)
    f = inp.f()
    src = inp.diagram_block().name
    star = terminal(f.action.on_opposite(), top)
    if construction == "colim":
        value = colim(f).gsset
    elif construction == "hocolim":
        value = hocolim(f, top).gsset
    elif construction == "bar":
        value = bar_ft(f, star, top).gsset
    else:
        value = coend(product_diagram(f, star)).gsset
    new = name or doc.fresh_name(f"{construction}_{src}")
    return [sset_block(doc, new, value, f"{construction} {src}")]


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.argument("checks", nargs=-1, required=True)
@click.option("--diagram", help="Simplicial diagram F to check.")
@click.option("--action", help="G-category to check.")
@click.option("--functor", help="Equivariant functor S: D -> C.")
@click.option("--map", "map_", help="Map to witness (diagram map, or map between G-simplicial sets).")
@click.option("--truncate", type=int, default=None, help="Truncation [default: the document's, else 4].")
@_coeffs_option
@_format_options
def verify(path, checks, diagram, action, functor, map_, truncate, coeffs, fmt, out):
    """Run CHECKS (or 'all') against the document in PATH."""
    names = list(CHECK_NAMES) if checks == ("all",) else list(checks)
    try:
        unknown = [n for n in names if n not in CHECK_NAMES]
        if unknown:
            raise InputError(f"unknown check {unknown[0]!r}; choose from {', '.join(CHECK_NAMES)}")
        doc = _load(path, truncate)
        if checks == ("all",) and not doc.of_kind("functor", "cat"):
            names = [n for n in names if n not in NEEDS_FUNCTOR]
            click.echo(f"note: no functor S: D -> C, skipping {', '.join(NEEDS_FUNCTOR)}", err=True)
        inp = Inputs(doc, truncate, parse_coeffs(coeffs), diagram, action, functor, map_)
        report = Report(_echo(), doc.digest(), inp.level(), inp.coeffs)
        for n in names:
            try:
                report.results.append(run_check(n, inp))
            except EquivarianceError as err:
                report.results.append(CheckResult(n, False, f"not equivariant: {err}", {},
                                                  {"where": repr(err.where)}))
    except (FormatError, ValueError) as err:
        _fail_input(err)
    report.emit(fmt, out)
    sys.exit(0 if report.ok else 1)


@main.command()
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--max-group", type=int, default=6, show_default=True)
@click.option("--max-objects", type=int, default=5, show_default=True)
@click.option("--max-morphisms", type=int, default=20, show_default=True)
@click.option("--truncate", type=int, default=DEFAULT_TOP, show_default=True)
@click.option("--with-functor", is_flag=True, help="Also emit an equivariant S: D -> C.")
@click.option("--shape", type=click.Choice(SHAPES), help="Force the shape of S.")
@click.option("--out", type=click.Path(dir_okay=False))
def gen(seed, max_group, max_objects, max_morphisms, truncate, with_functor, shape, out):
    """Write a random valid instance, a pure function of seed and caps."""
    caps = Caps(max_group, max_objects, max_morphisms, truncate, with_functor or shape is not None, shape)
    try:
        text = generate(seed, caps)
    except ValueError as err:
        _fail_input(err)
    _write(text, out)


if __name__ == "__main__":
    main()
