"""Command line front end.

Exit codes: 0 on success, 1 on bad input or a domain error, 2 when a
verification suite reports a failure.
"""
from __future__ import annotations

import sys

import click

from .affperm import AffPerm, PermError
from .coxelem import PlacementError, coxeter_perm, placement_from_word

DOMAIN_ERRORS = (PermError, PlacementError, ValueError)


class Context:
    def __init__(self, kind, n, word):
        self.kind = kind
        self.n = n
        self.word = word

    @property
    def placement(self):
        return placement_from_word(self.word, self.kind)

    def interval(self, alphabet="TL"):
        if self.kind == "B":
            from .folding import BInterval

            return BInterval(self.placement, alphabet)
        from .interval import Interval

        return Interval(self.placement, alphabet)


def _parse_word(text, n):
    if text is None:
        return tuple(range(n))
    try:
        word = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise click.BadParameter(f"not a list of integers: {text!r}", param_hint="--c") from None
    if sorted(word) != list(range(n)):
        raise click.BadParameter(f"must list 0..{n - 1} once each", param_hint="--c")
    return word


def _perm(ctx: Context, text: str) -> AffPerm:
    f = AffPerm.parse(text)
    if f.n != ctx.n:
        raise PermError(f"permutation has n={f.n}, expected {ctx.n}")
    return f


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def _verdict(ok: bool):
    click.echo("RESULT: " + ("PASS" if ok else "FAIL"))
    if not ok:
        sys.exit(2)


def placement_options(fn):
    """Add ``--type``, ``--n`` and ``--c`` and pass a :class:`Context` as ``ctx``."""
    import functools

    @click.option("--type", "kind", type=click.Choice(["D", "B"]), default="D", show_default=True)
    @click.option("--n", "n", type=int, required=True, help="Rank parameter.")
    @click.option("--c", "word", default=None, help='Coxeter word such as "3 6 2 0 1 5 7 4"; standard by default.')
    @functools.wraps(fn)
    def wrapper(kind, n, word, **kw):
        low = 5 if kind == "D" else 4
        if n < low:
            raise click.BadParameter(f"type {kind} needs n >= {low}", param_hint="--n")
        return fn(Context(kind, n, _parse_word(word, n)), **kw)

    return wrapper


@click.group()
def cli():
    """Affine noncrossing partitions of types D and B."""


@cli.command()
@click.option("--perm", "text", required=True)
@placement_options
def classify(ctx, text):
    """Cycle classes, signature and rank."""
    from .cycleclass import decompose, list_status, rho, signature

    p = ctx.placement
    f = _perm(ctx, text)
    classes = decompose(f, p)
    for c in classes:
        click.echo(f"class: {c}")
    s = signature(f, p, classes)
    click.echo(f"signature: {s}")
    click.echo(f"list: {list_status(s)}")
    click.echo(f"rank: {rho(f, p, classes)}")
    m = f.membership()
    click.echo("groups: " + " ".join(f"{k}={str(v).lower()}" for k, v in sorted(m.items())))


@cli.command()
@click.option("--perm", "text", required=True)
@click.option("--alphabet", type=click.Choice(["T", "TL"]), default="TL", show_default=True)
@placement_options
def member(ctx, text, alphabet):
    """Membership in [1, c]."""
    I = ctx.interval(alphabet)
    f = _perm(ctx, text)
    click.echo(f"member: {str(I.member(f)).lower()}")
    click.echo(f"rank: {I.rank(f)}")


@cli.command()
@click.option("--perm", "text", default=None, help="Defaults to c.")
@click.option("--bound", type=int, default=1, show_default=True)
@click.option("--alphabet", type=click.Choice(["T", "TL"]), default="TL", show_default=True)
@placement_options
def covers(ctx, text, bound, alphabet):
    """Elements covered by a member, within the winding bound."""
    I = ctx.interval(alphabet)
    f = _perm(ctx, text) if text else I.c
    rows = sorted((str(g), str(tok), move or "-") for move, tok, g in I.downward_covers(f, bound))
    for g, tok, move in rows:
        click.echo(f"{g} via {tok} [{move}]")


def _hasse_lines(I, edges):
    rows = sorted(
        {(I.rank(x), str(x), str(y), str(tok)) for x, tok, _, y in edges},
        key=lambda r: (-r[0], r[1], r[2], r[3]),
    )
    return [f"{r} {x} -> {y} via {tok}" for r, x, y, tok in rows]


@cli.command()
@click.option("--bound", type=int, default=1, show_default=True)
@click.option("--alphabet", type=click.Choice(["T", "TL"]), default="TL", show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@placement_options
def enumerate(ctx, bound, alphabet, output):
    """Bounded fragment of [1, c] as a Hasse edge list."""
    I = ctx.interval(alphabet)
    if ctx.kind == "B":
        els = I.enumerate_down(bound)
        edges = [(x, tok, None, y) for x in els for _, tok, y in I.downward_covers(x, bound)]
    else:
        els, edges = I.enumerate_down(bound)
    lines = [f"# elements {len(els)}"] + _hasse_lines(I, edges)
    _emit("\n".join(lines), output)


@cli.command()
@click.option("--lower", "low", required=True)
@click.option("--upper", "up", required=True)
@click.option("--alphabet", type=click.Choice(["T", "TL"]), default="TL", show_default=True)
@placement_options
def leq(ctx, low, up, alphabet):
    """Compare two members; prints a chain when they are related."""
    I = ctx.interval(alphabet)
    f, g = _perm(ctx, low), _perm(ctx, up)
    if ctx.kind == "D":
        chain = I.chain(f, g)
        click.echo(f"leq: {str(chain is not None).lower()}")
        if chain is not None:
            click.echo("chain: " + " ".join(str(t) for t in chain))
    else:
        click.echo(f"leq: {str(I.leq(f, g)).lower()}")


@cli.command()
@click.option("--perm", "text", default=None, help="Defaults to c.")
@click.option("--alphabet", type=click.Choice(["T", "TL"]), default="TL", show_default=True)
@placement_options
def word(ctx, text, alphabet):
    """A reduced word of a member of the type D interval."""
    if ctx.kind != "D":
        raise PlacementError("reduced words are computed in type D; fold type B first")
    I = ctx.interval(alphabet)
    f = _perm(ctx, text) if text else I.c
    click.echo(" ".join(str(t) for t in I.reduced_word(f)))


@cli.command()
@click.option("--periods", type=int, default=1, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@placement_options
def project(ctx, periods, output):
    """Coxeter-plane coordinates of the orbit points as CSV."""
    from .coxplane import projection_csv

    if ctx.kind != "D":
        raise PlacementError("the projection is computed for type D")
    _emit(projection_csv(ctx.word, periods), output)


@cli.command()
@click.argument("suite", type=click.Choice(["projection", "transition-tables", "isomorphism", "mcsul", "folding"]))
@click.option("--periods", type=int, default=3, show_default=True)
@click.option("--bound", type=int, default=1, show_default=True)
@click.option("--count", type=int, default=500, show_default=True, help="Random diagrams for folding.")
@click.option("--seed", type=int, default=0, show_default=True)
@placement_options
def verify(ctx, suite, periods, bound, count, seed):
    """Run a verification suite and print a line per check."""
    p = ctx.placement
    if suite == "projection":
        from .coxplane import verify_orbit_projection

        rep = verify_orbit_projection(ctx.word, periods, p)
        for line in rep.lines():
            click.echo(line)
        _verdict(rep.ok)
    elif suite == "transition-tables":
        from .interval import Interval, transition_check

        ok = True
        for alphabet in ("TL", "T"):
            I = Interval(p, alphabet)
            els, edges = I.enumerate_down(bound)
            problems = transition_check(I, edges)
            click.echo(f"{alphabet}: elements={len(els)} edges={len(edges)} problems={len(problems)}")
            for line in sorted(problems)[:20]:
                click.echo(f"  {line}")
            ok = ok and not problems
        _verdict(ok)
    elif suite == "isomorphism":
        from .ncdiagram import order_agreement

        r = order_agreement(p, bound)
        click.echo(f"elements={r.elements} pairs={r.pairs} related={r.related}")
        click.echo(f"diagram vs chain mismatches={len(r.chain_mismatches)}")
        click.echo(f"diagram vs rank mismatches={len(r.rank_mismatches)}")
        click.echo(f"diagram rank errors={len(r.rank_errors)}")
        _verdict(r.ok)
    elif suite == "mcsul":
        _verdict(_mcsul_report(p, bound))
    else:
        from .folding import eta_isomorphism, fold_diagrams
        from .mcsul import b_no_completion_needed

        if ctx.kind != "B":
            raise PlacementError("the folding suite takes a type B placement")
        r = eta_isomorphism(p, bound, "T")
        click.echo(f"eta: b_elements={r.b_size} fixed_d_elements={r.fixed_size} "
                   f"image={str(r.image_ok).lower()} order_mismatches={len(r.order_mismatches)}")
        bad = fold_diagrams(p, count, seed)
        click.echo(f"diagrams: checked={count} perm_mismatches={len(bad)}")
        checks = b_no_completion_needed(p, bound)
        for c in checks:
            click.echo(f"{'PASS' if c.ok else 'FAIL'} {c.name}" + (f" ({c.detail})" if c.detail else ""))
        _verdict(r.ok and not bad and all(c.ok for c in checks))


def _mcsul_report(p, bound) -> bool:
    from .mcsul import assemble_finite_lattice, lattice_report, nonlattice_witnesses

    if p.kind == "B":
        from .mcsul import b_no_completion_needed

        checks = b_no_completion_needed(p, bound)
    else:
        L = assemble_finite_lattice(p, bound)
        click.echo(f"|[1,c2]|={len(L.I2)} |[1,c3]|={len(L.I3)} |C23|={len(L.C23)} "
                   f"|New|={len(L.new)} |perm23|={len(L.perm23)} |perm1|={len(L.perm1)}")
        checks = lattice_report(p, bound)
        w = nonlattice_witnesses(L)
        if w:
            x, y, mins, join = w[0]
            click.echo(f"non-lattice pair: {x} | {y}")
            click.echo("  minimal upper bounds in perm23: " + " | ".join(str(m) for m in mins))
            click.echo(f"  join in C23: {join}")
    for c in checks:
        click.echo(f"{'PASS' if c.ok else 'FAIL'} {c.name}" + (f" ({c.detail})" if c.detail else ""))
    return all(c.ok for c in checks)


@cli.command()
@click.option("--check", is_flag=True, help="Run the finite lattice verification.")
@click.option("--bound", type=int, default=1, show_default=True)
@placement_options
def mcsul(ctx, check, bound):
    """Horizontal reflections, translations and the finite lattice."""
    from .mcsul import c123, f_doub, horizontal_reflections, translations_in_interval

    p = ctx.placement
    if check:
        _verdict(_mcsul_report(p, bound))
        return
    if p.kind == "D":
        for h in horizontal_reflections(p):
            click.echo(f"horizontal {h.group}: {h.token}")
        for name, f in sorted(f_doub(p).named().items()):
            click.echo(f"f_{name}: {f}")
        parts = c123(p)
        click.echo(f"c1: {parts.c1}")
        click.echo(f"c2: {parts.c2}")
        click.echo(f"c3: {parts.c3}")
    for r in translations_in_interval(p, check_membership=False):
        loops = " ".join(str(t) for t in r.loops)
        click.echo(f"translation a={r.a} b={r.b}: {r.perm} = {loops}; lambda={[str(x) for x in r.vector]}")


@cli.command()
@click.option("--perm", "text", required=True)
@click.option("--inverse", is_flag=True, help="Fold a permutation over n + 1 back to type B.")
@placement_options
def fold(ctx, text, inverse):
    """Unfold a type B permutation into type D over n + 1, or fold back."""
    from .folding import chi_fixed, eta, eta_inv

    if ctx.kind != "B":
        raise PlacementError("folding starts from a type B placement")
    f = AffPerm.parse(text)
    if inverse:
        if f.n != ctx.n + 1:
            raise PermError(f"expected n={ctx.n + 1}")
        click.echo(str(eta_inv(f)))
    else:
        if f.n != ctx.n:
            raise PermError(f"expected n={ctx.n}")
        g = eta(f)
        click.echo(str(g))
        click.echo(f"fixed: {str(chi_fixed(g)).lower()}")


@cli.command()
@click.option("--perm", "text", default=None, help="Draw the diagram of this member.")
@click.option("--annulus", is_flag=True, help="Draw the projected annulus instead.")
@click.option("--size", type=int, default=400, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@placement_options
def render(ctx, text, annulus, size, output):
    """SVG of a diagram or of the Coxeter-plane annulus."""
    if annulus:
        from .coxplane import annulus_svg

        _emit(annulus_svg(ctx.word, size), output)
        return
    from . import ncdiagram as nd

    p = ctx.placement
    f = _perm(ctx, text) if text else coxeter_perm(p)
    _emit(nd.render_svg(nd.reconstruct(f, p), size), output)


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="affnc", standalone_mode=False)
    except click.exceptions.Exit as e:
        sys.exit(e.exit_code)
    except click.UsageError as e:
        e.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except DOMAIN_ERRORS as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(1)
    sys.exit(0)


if __name__ == "__main__":
    main()
