"""Folding type B into type D over the primed index set.

The primed set adds symbols ``(2qn+1)'`` and ``(2qn-1)'`` next to every
multiple ``2qn``. It is order isomorphic to the integers, and under that
isomorphism a permutation of the primed set that commutes with negation
and the ``2n`` shift is an affine signed permutation with period
``2(n+1)``. The maps below work with tagged pairs at the boundary and use
the relabeling internally.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .affperm import AffPerm, PermError, Token, bar_extend, loop, reflection
from .coxelem import Placement, PlacementError, coxeter_perm
from .cycleclass import ON_LIST1, in_t_shapes, list_status, rho_int, signature, upper_parity
from .interval import token_grid, winding


@total_ordering
@dataclass(frozen=True)
class PrimedIndex:
    """An element of the primed index set: a plain integer, or a primed
    symbol ``v'`` with ``v = 2qn + 1`` or ``v = 2qn - 1``."""

    value: int
    primed: bool
    n: int

    def __post_init__(self):
        if self.primed and (self.value % (2 * self.n)) not in (1, 2 * self.n - 1):
            raise PermError(f"{self.value}' is not a primed symbol for n={self.n}")

    def to_int(self) -> int:
        n = self.n
        q, r = divmod(self.value, 2 * n)
        if r > n:
            q, r = q + 1, r - 2 * n
        base = 2 * q * (n + 1)
        if self.primed:
            return base + r
        if r == 0:
            return base
        return base + r + (1 if r > 0 else -1)

    @classmethod
    def from_int(cls, j: int, n: int) -> "PrimedIndex":
        m = 2 * (n + 1)
        q, s = divmod(j, m)
        if s > n + 1:
            q, s = q + 1, s - m
        base = 2 * q * n
        if s in (1, -1):
            return cls(base + s, True, n)
        if s == 0:
            return cls(base, False, n)
        return cls(base + s - (1 if s > 0 else -1), False, n)

    def __neg__(self) -> "PrimedIndex":
        return PrimedIndex(-self.value, self.primed, self.n)

    def shift(self, times: int = 1) -> "PrimedIndex":
        return PrimedIndex(self.value + 2 * self.n * times, self.primed, self.n)

    def __lt__(self, other: "PrimedIndex") -> bool:
        return self.to_int() < other.to_int()

    def __str__(self) -> str:
        return f"{self.value}'" if self.primed else str(self.value)


def lift(i: int, n: int) -> int:
    """Relabel a plain integer into the unfolded rank ``n + 1``."""
    return PrimedIndex(i, False, n).to_int()


def lower(j: int, n: int) -> PrimedIndex:
    return PrimedIndex.from_int(j, n)


def eta(f: AffPerm) -> AffPerm:
    """Adjoin the fixed points ``1'``, ``(-1)'`` or the 2-cycle swapping them,
    whichever keeps the result jointly even-signed; returned over ``n + 1``."""
    n = f.n
    first = -1 if upper_parity(f) else 1
    window = [first] + [lift(f(i), n) for i in range(1, n)]
    return AffPerm(n + 1, window)


def eta_inv(g: AffPerm) -> AffPerm:
    if not chi_fixed(g):
        raise PermError("only permutations fixed by the prime swap come from type B")
    n = g.n - 1
    window = []
    for i in range(1, n):
        p = lower(g(lift(i, n)), n)
        if p.primed:
            raise PermError("a plain point is sent to a primed symbol")
        window.append(p.value)
    return AffPerm(n, window)


def prime_swap(n_unfolded: int) -> AffPerm:
    """The permutation swapping ``1'`` and ``(-1)'`` (and their translates)."""
    return AffPerm.from_map(n_unfolded, {1: -1})


def chi(g: AffPerm) -> AffPerm:
    s = prime_swap(g.n)
    return s * g * s


def chi_fixed(g: AffPerm) -> bool:
    return g(1) in (1, -1) and chi(g) == g


def eta_token(tok: Token, n: int) -> list[Token]:
    """Image of a type B generator as one or two unfolded generators."""
    N = n + 1
    if tok.kind == Token.LOOP:
        return [loop(lift(tok.a, n), N)]
    a, b = lift(tok.a, n), lift(tok.b, n)
    if tok.kind == Token.SIGNED:
        # (a -a+2kn) becomes ((1' a)) ((-1)' a)
        return [reflection(1, a, N), reflection(-1, a, N)]
    return [reflection(a, b, N)]


def unfold_placement(p: Placement) -> Placement:
    """Placement over ``n + 1`` whose Coxeter element is ``eta`` of ``p``'s."""
    if p.kind != "B":
        raise PlacementError("only type B placements unfold")
    outer = frozenset(lift(a, p.n) for a in p.outer)
    return Placement("D", p.n + 1, 1, p.lower + 1, outer)


def unfold_word(word) -> list[int]:
    """Type B word mapped to the unfolded simple generators (s0 becomes s0 s1)."""
    out = []
    for s in word:
        out.extend([0, 1] if s == 0 else [s + 1])
    return out


def chi_barred(g):
    """Prime swap on barred permutations over the unfolded rank."""
    s = bar_extend(prime_swap(g.n))
    return s * g * s


def chi_fixed_barred(g) -> bool:
    return chi_barred(g) == g


# the type B interval, computed with type B generators


def b_token_grid(n: int, bound: int, alphabet: str = "TL") -> tuple[Token, ...]:
    """Reflections ``((a b))``, signed reflections ``(a -a+4kn)`` and loops,
    with the same reach as the type D grid."""
    m = 2 * n
    reach = 2 * m * bound + m
    toks = [t for t in token_grid(n, bound, "T")]
    for a in range(1, n):
        for k in range(-(reach // (2 * m)) - 1, reach // (2 * m) + 2):
            toks.append(reflection(a, -a + 2 * m * k, n))
    toks = sorted(set(toks))
    if "L" in alphabet:
        toks += [loop(a, n) for a in range(-(n - 1), n) if a]
    return tuple(toks)


class BInterval:
    """``[1, c]`` in type B using type B generators and the type B rank
    statistic directly; nothing here goes through the unfolding."""

    def __init__(self, placement: Placement, alphabet: str = "TL"):
        if placement.kind != "B":
            raise PlacementError("BInterval needs a type B placement")
        self.placement = placement
        self.alphabet = alphabet
        self.n = placement.n
        self.c = coxeter_perm(placement)
        self.top = self.rank(self.c)
        self._grounded: dict[AffPerm, bool] = {}

    def rank(self, f: AffPerm) -> int:
        return rho_int(f, self.placement)

    def shape_ok(self, f: AffPerm) -> bool:
        s = signature(f, self.placement)
        if self.alphabet == "T":
            return in_t_shapes(s)
        return list_status(s) == ON_LIST1

    def _steps(self, f: AffPerm, bound: int, delta: int):
        limit = 2 * self.n * bound
        r = self.rank(f)
        for tok in b_token_grid(self.n, bound, self.alphabet):
            g = tok.perm(self.n) * f
            if g.max_displacement() > limit or not self.shape_ok(g):
                continue
            if self.rank(g) == r + delta:
                yield tok, g

    def grounded(self, f: AffPerm, bound: int | None = None) -> bool:
        if f in self._grounded:
            return self._grounded[f]
        if bound is None:
            bound = max(winding(f), 1)
        if not self.shape_ok(f):
            ok = False
        elif self.rank(f) == 0:
            ok = f.is_identity()
        else:
            ok = any(self.grounded(g, bound) for _, g in self._steps(f, bound, -1))
        self._grounded[f] = ok
        return ok

    def member(self, f: AffPerm) -> bool:
        if self.alphabet == "T" and not f.in_ses():
            return False
        if not self.shape_ok(f):
            return False
        rest = f.inverse() * self.c
        if not self.shape_ok(rest) or self.rank(f) + self.rank(rest) != self.top:
            return False
        return self.grounded(f) and self.grounded(rest)

    def leq_by_rank(self, f: AffPerm, g: AffPerm) -> bool:
        d = f.inverse() * g
        if self.rank(f) + self.rank(d) != self.rank(g):
            return False
        return self.grounded(d)

    def leq(self, f: AffPerm, g: AffPerm, bound: int | None = None) -> bool:
        """Saturated chain search from ``f`` up to ``g``."""
        if bound is None:
            bound = max(winding(g), 1) + 1
        rg = self.rank(g)
        if self.rank(f) + self.rank(f.inverse() * g) != rg:
            return False
        seen = {f}
        stack = [f]
        while stack:
            x = stack.pop()
            if x == g:
                return True
            for _, y in self._steps(x, bound, 1):
                if y in seen or self.rank(y) + self.rank(y.inverse() * g) != rg:
                    continue
                seen.add(y)
                stack.append(y)
        return False

    def downward_covers(self, f: AffPerm, bound: int = 1):
        out = []
        seen = set()
        for tok, g in self._steps(f, bound, -1):
            if g not in seen and self.grounded(g):
                seen.add(g)
                out.append((None, tok, g))
        return out

    def enumerate_down(self, bound: int = 1):
        seen = {self.c}
        queue = [self.c]
        while queue:
            x = queue.pop()
            for _, _, y in self.downward_covers(x, bound):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen


# diagrams


def zeta(d):
    """Type B diagram to the unfolded type D diagram fixed by the prime swap."""
    from . import ncdiagram as nd

    p = d.placement
    if p.kind != "B":
        raise PlacementError("zeta takes a type B diagram")
    n = p.n
    unfolded = unfold_placement(p)
    blocks = []
    for b in d.blocks:
        walks = []
        for w in b.walks:
            values, total = nd.cycle_from_walk(w, n)
            walks.append(nd.walk_from_cycle([lift(v, n) for v in values], n + 1, total))
        kind = nd.sym_kind(walks[0], unfolded) if b.kind == nd.SYM_CURVE else b.kind
        blocks.append(nd.Block(kind, tuple(walks), b.interior))
    if not any("upper" in b.interior for b in d.blocks):
        blocks.append(nd.Block(nd.TRIVIAL_PAIR, (((1, 0),),)))
    return nd.NCDiagram(unfolded, tuple(sorted(blocks, key=nd.Block.key)))


def zeta_inv(d, placement: Placement):
    """Inverse of :func:`zeta` for a type D diagram fixed by the prime swap."""
    from . import ncdiagram as nd

    n = placement.n
    if unfold_placement(placement) != d.placement:
        raise PlacementError("diagram is not on the unfolded placement")
    blocks = []
    for b in d.blocks:
        if b.kind == nd.TRIVIAL_PAIR and abs(b.walks[0][0][0]) == 1:
            continue
        walks = []
        for w in b.walks:
            values, total = nd.cycle_from_walk(w, n + 1)
            pts = [lower(v, n) for v in values]
            if any(q.primed for q in pts):
                raise PermError("diagram is not fixed by the prime swap")
            walks.append(nd.walk_from_cycle([q.value for q in pts], n, total))
        kind = b.kind
        if not b.is_pair and not b.is_annular:
            kind = nd.sym_kind(walks[0], placement)
        blocks.append(nd.Block(kind, tuple(walks), b.interior))
    return nd.NCDiagram(placement, tuple(sorted(blocks, key=nd.Block.key)))


# checks on bounded fragments


@dataclass
class FoldReport:
    b_size: int
    fixed_size: int
    image_ok: bool
    order_mismatches: list

    @property
    def ok(self) -> bool:
        return self.image_ok and not self.order_mismatches and self.b_size == self.fixed_size


def eta_isomorphism(p: Placement, bound: int = 1, alphabet: str = "TL") -> FoldReport:
    """Compare the bounded fragment of ``[1, c]`` in type B with the
    elements fixed by the prime swap in the unfolded type D fragment, as
    sets under ``eta`` and as orders (type B chain search against the
    type D rank criterion)."""
    from .interval import Interval

    B = BInterval(p, alphabet)
    D = Interval(unfold_placement(p), alphabet)
    bel = sorted(B.enumerate_down(bound))
    dels, _ = D.enumerate_down(bound)
    fixed = {g for g in dels if chi_fixed(g)}
    image = {f: eta(f) for f in bel}
    bad = []
    for f in bel:
        for g in bel:
            if B.leq(f, g) != D.leq_by_rank(image[f], image[g]):
                bad.append((f, g))
    return FoldReport(len(bel), len(fixed), set(image.values()) == fixed, bad)


def fold_diagrams(p: Placement, count: int = 500, seed: int = 0, bound: int = 1) -> list:
    """Random type B diagrams ``d`` with ``perm(d) != eta_inv(perm(zeta(d)))``."""
    import random

    from . import ncdiagram as nd

    rng = random.Random(seed)
    interval = BInterval(p)
    bad = []
    for _ in range(count):
        d = nd.random_diagram(p, rng, bound, interval)
        if nd.perm(d) != eta_inv(nd.perm(zeta(d))):
            bad.append(d)
    return bad
