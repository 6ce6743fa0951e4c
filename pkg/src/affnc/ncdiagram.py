"""Symmetric noncrossing partitions of the annulus, encoded by boundary walks.

A block is stored as its boundary walks. A walk is a cyclic list of
``(label, offset)`` pairs: ``label`` is a signed point label in
``-(n-1)..n-1`` and ``offset`` counts the dateline crossings (positive
minus negative) on the way to the next point. Offsets add up to 0 along a
disk boundary and to +1 or -1 along an annular one. Reading a walk and adding
``2n`` times the running crossing count to each label gives one cycle of
the permutation, so the walks carry exactly the data that ``perm`` needs.

Pairs of blocks ``E, phi(E)`` store only ``E``; the mirror is implied.
Double points enclosed by a symmetric block are recorded in ``interior``.

Diagrams are kept in the canonical form produced by :func:`reconstruct`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .affperm import AffPerm, PermError
from .coxelem import Placement, coxeter_perm
from .cycleclass import (
    INFINITE,
    NONSYM,
    ON_LIST1,
    SYM_UPPER,
    decompose,
    list_status,
    rho,
    signature,
)

TRIVIAL_PAIR = "TrivialPair"
CURVE_PAIR = "CurvePair"
DISK_PAIR = "DiskPair"
DANGLING_PAIR = "DanglingAnnularPair"
NONDANGLING_PAIR = "NonDanglingAnnularPair"
SYM_DISK = "SymDisk"
SYM_STITCHED = "SymStitchedDisk"
SYM_DANGLING = "SymDanglingAnnular"
SYM_NONDANGLING = "SymNonDanglingAnnular"
SYM_CURVE = "SymCurve"

KIND_ORDER = (
    SYM_NONDANGLING,
    SYM_DANGLING,
    NONDANGLING_PAIR,
    DANGLING_PAIR,
    SYM_STITCHED,
    SYM_DISK,
    SYM_CURVE,
    DISK_PAIR,
    CURVE_PAIR,
    TRIVIAL_PAIR,
)
PAIR_KINDS = (TRIVIAL_PAIR, CURVE_PAIR, DISK_PAIR, DANGLING_PAIR, NONDANGLING_PAIR)
ANNULAR_KINDS = (DANGLING_PAIR, NONDANGLING_PAIR, SYM_DANGLING, SYM_NONDANGLING)
DANGLING_KINDS = (DANGLING_PAIR, SYM_DANGLING)


class DiagramError(ValueError):
    pass


class NotInImage(DiagramError):
    """The permutation is not ``perm`` of any noncrossing partition."""


# walks


def split_label(v: int, n: int) -> tuple[int, int]:
    """Write ``v = label + 2n*w`` with ``label`` in ``(-n, n)``."""
    m = 2 * n
    r = v % m
    a = r if r < n else r - m
    return a, (v - a) // m


def walk_from_cycle(values, n: int, shift: int = 0) -> tuple:
    """Labels and dateline offsets of one period of a cycle whose successor
    of the last entry is ``values[0] + 2n*shift``."""
    parts = [split_label(v, n) for v in values]
    out = []
    for j, (a, w) in enumerate(parts):
        nxt = parts[j + 1][1] if j + 1 < len(parts) else parts[0][1] + shift
        out.append((a, nxt - w))
    return tuple(out)


def cycle_from_walk(walk, n: int) -> tuple[list[int], int]:
    """Inverse of :func:`walk_from_cycle`, starting with no crossings."""
    values = []
    w = 0
    for a, off in walk:
        values.append(a + 2 * n * w)
        w += off
    return values, w


def double_location(v: int, placement: Placement) -> int | None:
    """Position of a double point on the universal cover: upper copies sit at
    multiples of ``2n`` and lower copies at odd multiples of ``n``."""
    n = placement.n
    a, _ = split_label(v, n)
    if placement.upper and abs(a) == placement.upper:
        return v - a
    if abs(a) == placement.lower:
        return v - a + n if a > 0 else v - a - n
    return None


@dataclass(frozen=True, order=True)
class Block:
    kind: str
    walks: tuple = ()
    interior: frozenset = field(default=frozenset(), compare=False)

    @property
    def is_pair(self) -> bool:
        return self.kind in PAIR_KINDS

    @property
    def is_annular(self) -> bool:
        return self.kind in ANNULAR_KINDS

    @property
    def is_dangling(self) -> bool:
        return self.kind in DANGLING_KINDS

    def labels(self) -> list[int]:
        return [a for w in self.walks for a, _ in w]

    def stitch_signs(self, placement: Placement) -> tuple:
        """Walk positions holding a double point, with the signed copy there."""
        if self.kind != SYM_STITCHED:
            return ()
        doubles = set(placement.doubles)
        return tuple((i, a) for i, (a, _) in enumerate(self.walks[0]) if abs(a) in doubles)

    def key(self):
        return (KIND_ORDER.index(self.kind), self.walks, tuple(sorted(self.interior)))

    def __str__(self) -> str:
        body = "; ".join("walk=" + "".join(f"({a},{off:+d})" if off else f"({a},0)" for a, off in w) for w in self.walks)
        if self.interior:
            body += ("; " if body else "") + "interior=" + ",".join(sorted(self.interior))
        return f"{self.kind}[{body}]"


@dataclass(frozen=True)
class NCDiagram:
    placement: Placement
    blocks: tuple

    @property
    def n(self) -> int:
        return self.placement.n

    def perm(self) -> AffPerm:
        return perm(self)

    def rank(self) -> int:
        return diagram_rank(self)

    def has_dangling(self) -> bool:
        return any(b.is_dangling for b in self.blocks)

    def __str__(self) -> str:
        return "\n".join(str(b) for b in self.blocks)

    @classmethod
    def build(cls, placement: Placement, blocks) -> "NCDiagram":
        """Normalize hand-built block data through ``perm`` and ``reconstruct``."""
        raw = cls(placement, tuple(blocks))
        return reconstruct(perm(raw), placement)


# perm


def perm(d: NCDiagram) -> AffPerm:
    """Read one cycle per boundary walk and a tiny cycle per enclosed double pair."""
    p = d.placement
    n = p.n
    mapping = []
    for b in d.blocks:
        for walk in b.walks:
            values, w = cycle_from_walk(walk, n)
            for j, v in enumerate(values):
                nxt = values[j + 1] if j + 1 < len(values) else values[0] + 2 * n * w
                mapping.append((v, nxt))
        if "upper" in b.interior and p.upper:
            mapping.append((p.upper, -p.upper))
        if "lower" in b.interior:
            mapping.append((p.lower, -p.lower + 2 * n))
    try:
        return AffPerm.from_map(n, mapping)
    except PermError as e:
        raise DiagramError(f"inconsistent block data: {e}") from None


# reconstruction


def complement_ok(f: AffPerm, placement: Placement) -> bool:
    """Both ``f`` and ``f^-1 c`` have first-list cycle types and their rank
    statistics add up to that of ``c``."""
    c = coxeter_perm(placement)
    rest = f.inverse() * c
    if list_status(signature(f, placement)) != ON_LIST1:
        return False
    if list_status(signature(rest, placement)) != ON_LIST1:
        return False
    return rho(f, placement) + rho(rest, placement) == rho(c, placement)


def reconstruct(f: AffPerm, placement: Placement) -> NCDiagram:
    """The diagram whose ``perm`` is ``f``.

    Raises :class:`NotInImage` when the cycle data fits no diagram.
    """
    n = placement.n
    if f.n != n:
        raise DiagramError("rank of the permutation and the placement differ")
    if placement.kind == "D" and not f.in_jes():
        raise NotInImage("not jointly even-signed")
    classes = decompose(f, placement)
    sig = signature(f, placement, classes)
    if list_status(sig) != ON_LIST1:
        raise NotInImage(f"cycle type {sig} is not on the first list")
    if not complement_ok(f, placement):
        raise NotInImage("the complement in c does not fit")
    spare = set()
    if sig.tiny_upper:
        spare.add("upper")
    if sig.tiny_lower:
        spare.add("lower")
    blocks = []
    infinite = []
    for cl in classes:
        if cl.kind == NONSYM:
            kind = (TRIVIAL_PAIR, CURVE_PAIR)[len(cl.rep) - 1] if len(cl.rep) < 3 else DISK_PAIR
            blocks.append(Block(kind, (walk_from_cycle(cl.rep, n),)))
        elif cl.is_sym:
            where = "upper" if cl.kind == SYM_UPPER else "lower"
            spare.discard(where)
            blocks.append(_sym_block(cl, where, placement))
        elif cl.kind == INFINITE:
            infinite.append(cl)
    blocks.extend(_annular_blocks(infinite, spare, placement))
    for b in blocks:
        # an arc ending at a double point may spiral, so single offsets are
        # unbounded; only the total per walk is constrained
        total = {0} if not b.is_annular else {1, -1}
        for w in b.walks:
            if sum(off for _, off in w) not in total:
                raise NotInImage(f"walk {w} has the wrong total dateline crossing")
    d = NCDiagram(placement, tuple(sorted(blocks, key=Block.key)))
    if perm(d) != f:
        raise NotInImage("the blocks do not read back to the permutation")
    return d


def _sym_block(cl, where: str, placement: Placement) -> Block:
    walk = walk_from_cycle(cl.rep, placement.n)
    return Block(sym_kind(walk, placement), (walk,), frozenset([where]))


def sym_kind(walk, placement: Placement) -> str:
    """Symmetric disk, stitched disk or (type B) symmetric curve."""
    if placement.kind == "B" and len(walk) == 2:
        return SYM_CURVE
    doubles = set(placement.doubles)
    if any(abs(a) in doubles for a, _ in walk):
        return SYM_STITCHED
    return SYM_DISK


def _is_double_only(cl, placement: Placement) -> bool:
    n = placement.n
    doubles = set(placement.doubles)
    return all(abs(split_label(v, n)[0]) in doubles for v in cl.rep)


def _annular_blocks(infinite, spare: set, placement: Placement) -> list[Block]:
    n = placement.n
    both = {"upper", "lower"}
    if len(infinite) > 2:
        raise NotInImage("more than two classes of infinite cycles")
    if len(infinite) == 2:
        if spare:
            raise NotInImage("enclosed double points next to two infinite classes")
        doub = [cl for cl in infinite if _is_double_only(cl, placement)]
        if len(doub) != 1:
            raise NotInImage("two infinite classes need exactly one on double points")
        other = infinite[0] if infinite[1] is doub[0] else infinite[1]
        outer = walk_from_cycle(other.rep, n, 1)
        inner = walk_from_cycle([-v for v in doub[0].rep], n, -1)
        return [Block(NONDANGLING_PAIR, (outer, inner))]
    if len(infinite) == 1:
        cl = infinite[0]
        up = walk_from_cycle(cl.rep, n, 1)
        if spare == both:
            down = walk_from_cycle([-v for v in cl.rep], n, -1)
            return [Block(SYM_NONDANGLING, (up, down), frozenset(both))]
        if spare:
            raise NotInImage("a single enclosed double pair outside any symmetric disk")
        return [Block(DANGLING_PAIR, (up,))]
    if spare == both:
        return [Block(SYM_DANGLING, (), frozenset(both))]
    if spare:
        raise NotInImage("a single enclosed double pair outside any symmetric disk")
    return []


def member_by_diagram(f: AffPerm, placement: Placement, alphabet: str = "TL") -> bool:
    """Membership read off the diagram side: ``f`` is ``perm`` of a diagram,
    and for reflections only, that diagram has no dangling annular block."""
    try:
        d = reconstruct(f, placement)
    except NotInImage:
        return False
    if alphabet == "T":
        if d.has_dangling():
            return False
        if placement.kind == "D" and not f.in_des():
            return False
        if placement.kind == "B" and not f.in_ses():
            return False
    return True


# rank


def diagram_rank(d: NCDiagram) -> int:
    """``n - 1`` minus the symmetric pairs of non-annular blocks plus the
    symmetric annular blocks."""
    pairs = sum(1 for b in d.blocks if b.is_pair and not b.is_annular)
    sym_annular = sum(1 for b in d.blocks if not b.is_pair and b.is_annular)
    return d.n - 1 - pairs + sym_annular


# order


@dataclass(frozen=True)
class _Piece:
    """One lift of a block to the universal cover: boundary values and
    enclosed double locations, either finite or ``2n``-periodic."""

    values: frozenset
    inside: frozenset
    periodic: bool


def _pieces(b: Block, placement: Placement) -> list[_Piece]:
    n = placement.n
    m = 2 * n
    cycles = [cycle_from_walk(w, n) for w in b.walks]
    values = [v for c, _ in cycles for v in c]
    if b.is_annular:
        # periodic values remember which way their boundary winds
        inside = frozenset({0, n} if b.interior else ())
        tagged = frozenset((v % m, w) for c, w in cycles for v in c)
        piece = _Piece(tagged, inside, True)
        if b.is_pair:
            mirror = _Piece(frozenset((-v % m, -w) for v, w in tagged), inside, True)
            return [piece, mirror]
        return [piece]
    if b.is_pair:
        return [_Piece(frozenset(values), frozenset(), False), _Piece(frozenset(-v for v in values), frozenset(), False)]
    seq = cycles[0][0]
    centre = (seq[0] + seq[len(seq) // 2]) // 2
    return [_Piece(frozenset(values), frozenset([centre]), False)]


def _fits(e: _Piece, f: _Piece, placement: Placement, j: int = 0) -> bool:
    m = 2 * placement.n
    if f.periodic:
        residues = {v for v, _ in f.values}

        def has_value(v, w):
            return (v % m, w) in f.values if w else v % m in residues

        def has_inside(x):
            return x % m in f.inside

    else:
        vals = {v + m * j for v in f.values}
        ins = {x + m * j for x in f.inside}

        def has_value(v, w):
            return v in vals

        def has_inside(x):
            return x in ins

    points = e.values if e.periodic else ((v, 0) for v in e.values)
    for v, w in points:
        if has_value(v, w):
            continue
        loc = double_location(v, placement)
        if loc is None or not has_inside(loc):
            return False
    return all(has_inside(x) for x in e.inside)


def _contained(e: _Piece, f: _Piece, placement: Placement) -> bool:
    m = 2 * placement.n
    if f.periodic:
        return _fits(e, f, placement)
    if e.periodic:
        return False
    if e.values:
        v0 = min(e.values)
        loc = double_location(v0, placement)
        targets = {v0 - u for u in f.values} | ({loc - x for x in f.inside} if loc is not None else set())
    else:
        x0 = min(e.inside)
        targets = {x0 - x for x in f.inside}
    for t in targets:
        if t % m == 0 and _fits(e, f, placement, t // m):
            return True
    return False


def diagram_leq(p: NCDiagram, q: NCDiagram) -> bool:
    """Every lift of a block of ``p`` fits inside a lift of a block of ``q``:
    boundary points of ``p`` become boundary points of ``q`` or double points
    enclosed by it, and enclosed double points stay enclosed."""
    if p.placement != q.placement:
        raise DiagramError("diagrams on different placements")
    pl = p.placement
    big = [x for b in q.blocks for x in _pieces(b, pl)]
    for b in p.blocks:
        for e in _pieces(b, pl):
            if not any(_contained(e, f, pl) for f in big):
                return False
    return True


# random diagrams


def random_diagram(placement: Placement, rng: random.Random, bound: int = 1, interval=None) -> NCDiagram:
    """Walk down from ``c`` by random covers for a random number of steps and
    read off the diagram of the element reached."""
    if placement.kind == "B":
        from .folding import BInterval

        interval = interval or BInterval(placement)
    else:
        from .interval import Interval

        interval = interval or Interval(placement)
    x = interval.c
    for _ in range(rng.randint(0, placement.n)):
        covers = interval.downward_covers(x, bound)
        if not covers:
            break
        x = rng.choice(sorted(covers, key=lambda t: str(t[1])))[2]
    return reconstruct(x, placement)


# rendering


def render_svg(d: NCDiagram, size: int = 400) -> str:
    """Schematic picture: points evenly spaced on two circles, double points
    on the horizontal axis, each block drawn as a polygon through its points."""
    import math

    p = d.placement
    cx = cy = size / 2
    r_out, r_in, r_mid = size * 0.45, size * 0.2, size * 0.325
    outer = sorted(p.outer)
    inner = sorted(p.inner, reverse=True)
    pos = {}
    for k, a in enumerate(outer):
        t = -2 * math.pi * (k + 0.5) / len(outer) + math.pi / 2
        pos[a] = (cx + r_out * math.cos(t), cy - r_out * math.sin(t))
    for k, a in enumerate(inner):
        t = -2 * math.pi * (k + 0.5) / len(inner) + math.pi / 2
        pos[a] = (cx + r_in * math.cos(t), cy - r_in * math.sin(t))
    if p.upper:
        pos[p.upper] = (cx + 6, cy - r_mid)
        pos[-p.upper] = (cx - 6, cy - r_mid)
    pos[p.lower] = (cx + 6, cy + r_mid)
    pos[-p.lower] = (cx - 6, cy + r_mid)
    colours = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<circle cx="{cx}" cy="{cy}" r="{r_out}" fill="none" stroke="black"/>',
        f'<circle cx="{cx}" cy="{cy}" r="{r_in}" fill="none" stroke="black"/>',
        f'<line x1="{cx}" y1="{cy + r_in}" x2="{cx}" y2="{cy + r_out}" stroke="#999" stroke-dasharray="4 3"/>',
    ]
    for i, b in enumerate(d.blocks):
        col = colours[i % len(colours)]
        groups = [b.labels()]
        if b.is_pair:
            groups.append([-a for a in b.labels()])
        for g in groups:
            pts = [pos[a] for a in g if a in pos]
            if len(pts) >= 2:
                path = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
                parts.append(f'<polygon points="{path}" fill="{col}" fill-opacity="0.25" stroke="{col}"/>')
    for a, (x, y) in sorted(pos.items()):
        parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3"/>')
        parts.append(f'<text x="{x + 4:.1f}" y="{y - 4:.1f}" font-size="11">{a}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def rank_check(d: NCDiagram) -> bool:
    return Fraction(diagram_rank(d)) == rho(perm(d), d.placement)


@dataclass
class OrderAgreement:
    elements: int
    pairs: int
    related: int
    chain_mismatches: list
    rank_mismatches: list
    rank_errors: list

    @property
    def ok(self) -> bool:
        return not (self.chain_mismatches or self.rank_mismatches or self.rank_errors)


def order_agreement(placement: Placement, bound: int = 1, alphabet: str = "TL") -> OrderAgreement:
    """Compare the diagram order with chain search and with the rank
    identity on every pair of the bounded fragment, and the diagram rank
    with the rank statistic on every element."""
    from .interval import Interval

    I = Interval(placement, alphabet)
    els, _ = I.enumerate_down(bound)
    els = sorted(els)
    ds = {f: reconstruct(f, placement) for f in els}
    rank_errors = [f for f in els if diagram_rank(ds[f]) != I.rank(f)]
    chain_bad, rank_bad = [], []
    related = 0
    for f in els:
        for g in els:
            a = diagram_leq(ds[f], ds[g])
            related += a
            if a != I.leq(f, g):
                chain_bad.append((f, g))
            if a != I.leq_by_rank(f, g):
                rank_bad.append((f, g))
    return OrderAgreement(len(els), len(els) ** 2, related, chain_bad, rank_bad, rank_errors)
