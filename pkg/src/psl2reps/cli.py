"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 invalid
representation or request, 4 elliptic peripheral, 5 empty component,
6 enumeration guard.
"""

from __future__ import annotations

import json
import sys

import click

from . import atlas, components, verify
from .mobius import EPS, PSL2Element, commutator, distance_to_identity, is_identity, near_parabolic, trace_gap
from .surface import (
    BoundaryType,
    Representation,
    RepresentationError,
    SurfaceSig,
    boundary_type,
    check_relator,
    component_of,
    decomposition,
    format_signs,
    is_totally_non_hyperbolic,
    parse_signs,
    piece_euler_classes,
    piece_is_abelian,
    rep_from_json,
    rep_to_json,
)

EXIT_VERIFY, EXIT_PARSE, EXIT_INVALID, EXIT_ELLIPTIC, EXIT_EMPTY, EXIT_GUARD = 1, 2, 3, 4, 5, 6


def _die(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def _sig(g: int, p: int) -> SurfaceSig:
    try:
        return SurfaceSig(g, p)
    except ValueError as exc:
        _die(EXIT_INVALID, str(exc))


def _load(path: str, scalar: str) -> Representation:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _die(EXIT_PARSE, f"cannot read {path}: {exc}")
    if not isinstance(doc, dict):
        _die(EXIT_PARSE, "representation document must be a JSON object")
    if scalar != "auto":
        doc = dict(doc, scalar=scalar)
    try:
        return rep_from_json(doc)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, RepresentationError):
            _die(EXIT_INVALID, str(exc))
        _die(EXIT_PARSE, f"malformed representation document: {exc}")


def _ambiguous(g: PSL2Element) -> bool:
    # float traces between eps and the warning band cannot be adjudicated
    return near_parabolic(g) and abs(trace_gap(g)) > EPS


def image_is_abelian(rep: Representation, tol: float = 1e-9) -> bool:
    gens = (*rep.a, *rep.b, *rep.c)
    for i, x in enumerate(gens):
        for y in gens[i + 1:]:
            k = commutator(x, y)
            scale = max(1.0, *(abs(float(v)) for v in (*x.m, *y.m)))
            if not (is_identity(k) if k.exact() else distance_to_identity(k) <= tol * scale):
                return False
    return True


def classify_report(rep: Representation) -> dict:
    """Component report for a valid representation with non-elliptic peripherals."""
    comp = component_of(rep)
    dec = decomposition(rep.sig)
    pieces = []
    for piece, e in zip(dec.pieces, piece_euler_classes(rep)):
        pieces.append({"piece": piece.label, "kind": piece.kind.value, "euler": e,
                       "abelian": piece_is_abelian(rep, piece)})
    tnh = is_totally_non_hyperbolic(rep) if comp.boundary is BoundaryType.TYPE_PRESERVING else False
    return {
        "genus": rep.sig.g,
        "punctures": rep.sig.p,
        "boundary_type": comp.boundary.value,
        "n": comp.n,
        "s": list(comp.s),
        "signs": format_signs(comp.s),
        "totally_non_hyperbolic": tnh,
        "abelian": image_is_abelian(rep),
        "pieces": pieces,
    }


@click.group()
@click.version_option(package_name="psl2reps")
def main():
    """Relative Euler classes and components of punctured-surface representations."""


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--scalar", type=click.Choice(["auto", "rational", "float"]), default="auto",
              help="Override the scalar mode declared in the document.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def classify(path, scalar, out):
    """Classify the representation stored in PATH."""
    rep = _load(path, scalar)
    try:
        check_relator(rep)
    except RepresentationError as exc:
        _die(EXIT_INVALID, str(exc))
    if not rep.exact and any(_ambiguous(c) for c in rep.c):
        _die(EXIT_INVALID, "a peripheral trace is inside the float warning band; use --scalar rational")
    if boundary_type(rep) is BoundaryType.INVALID:
        _die(EXIT_ELLIPTIC, "a peripheral image is elliptic or trivial")
    try:
        report = classify_report(rep)
    except RepresentationError as exc:
        _die(EXIT_INVALID, str(exc))
    _emit(report, out)


def _signs_option(text: str, p: int) -> tuple:
    try:
        s = parse_signs(text)
    except ValueError as exc:
        _die(EXIT_PARSE, str(exc))
    if len(s) != p:
        _die(EXIT_PARSE, f"sign string {text!r} has length {len(s)}, expected {p}")
    return s


@main.command()
@click.option("-g", "genus", type=int, required=True)
@click.option("-p", "punctures", type=int, required=True)
@click.option("-n", "euler", type=int, required=True)
@click.option("-s", "signs", type=str, required=True, help="String over + - 0 of length p.")
@click.option("--scalar", type=click.Choice(["auto", "rational", "float"]), default="auto",
              help="rational demands an exact witness; float converts to floats.")
@click.option("--seed", type=int, default=None, help="Deform the representative randomly.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def construct(genus, punctures, euler, signs, scalar, seed, out):
    """Emit a witness representation in component (n, s)."""
    sig = _sig(genus, punctures)
    s = _signs_option(signs, punctures)
    if not components.is_nonempty(sig, euler, s):
        _die(EXIT_EMPTY, f"component is empty: {components.violated_bound(sig, euler, s)}")
    spec = atlas.spec_for(genus, punctures, euler, s)
    try:
        rep = atlas.representative(spec, prefer_exact=scalar == "rational") if seed is None else atlas.random_rep_in_component(spec, seed)
    except atlas.InfeasibleComponentError as exc:
        _die(EXIT_EMPTY, str(exc))
    except atlas.ConstructionError as exc:
        _die(EXIT_INVALID, str(exc))
    if scalar == "rational" and not rep.exact:
        _die(EXIT_INVALID, "no exact witness for this component; use --scalar float or auto")
    if scalar == "float" and rep.exact:
        rep = rep.map(lambda g: PSL2Element(g.m.to_float()))
    _emit(rep_to_json(rep), out)


def _census_text(doc: dict) -> str:
    sig = doc["sig"]
    lines = [f"g={sig['g']} p={sig['p']} chi={sig['chi']} boundary={doc['boundary']}"]
    lines += [f"  n={row['n']:>3}: {row['count']}" for row in doc["per_n"]]
    lines.append(f"  total: {doc['total']}")
    return "\n".join(lines)


def _census(genus, punctures, boundary, as_json, out, with_indices):
    sig = _sig(genus, punctures)
    try:
        doc = components.census(sig, boundary)
    except components.RangeGuardError as exc:
        _die(EXIT_GUARD, str(exc))
    if not with_indices:
        for row in doc["per_n"]:
            row.pop("indices")
    if as_json or out:
        _emit(doc, out)
    elif with_indices:
        click.echo(_census_text(doc))
        for row in doc["per_n"]:
            for s in row["indices"]:
                click.echo(f"  n={row['n']} s={format_signs(s)}")
    else:
        click.echo(_census_text(doc))


_BOUNDARY = click.option("--boundary", type=click.Choice(sorted(components.BOUNDARY_FILTERS)), default="tp")


@main.command()
@click.option("-g", "genus", type=int, required=True)
@click.option("-p", "punctures", type=int, required=True)
@_BOUNDARY
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def count(genus, punctures, boundary, as_json, out):
    """Number of non-empty components per Euler class."""
    _census(genus, punctures, boundary, as_json, out, with_indices=False)


@main.command(name="enumerate")
@click.option("-g", "genus", type=int, required=True)
@click.option("-p", "punctures", type=int, required=True)
@_BOUNDARY
@click.option("--json", "as_json", is_flag=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def enumerate_cmd(genus, punctures, boundary, as_json, out):
    """List every non-empty component index."""
    _census(genus, punctures, boundary, as_json, out, with_indices=True)


@main.command(name="verify")
@click.option("--seed", type=int, default=0)
@click.option("--samples", type=int, default=None, help="Override every per-check sample count.")
@click.option("--only", multiple=True, type=click.Choice(verify.SUITE_NAMES))
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def verify_cmd(seed, samples, only, out):
    """Run the verification suites; exit 0 iff every check passes."""
    report = verify.run_suite(verify.SuiteConfig(seed=seed, samples=samples, only=tuple(only)))
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        click.echo(f"{status} {c.name}: samples={c.samples} failures={c.failures} "
                   f"worst={c.worst:.3g} elapsed={c.elapsed:.2f}s")
    if out:
        _emit(report.to_json(), out)
    sys.exit(0 if report.passed else EXIT_VERIFY)


if __name__ == "__main__":  # pragma: no cover
    main()
