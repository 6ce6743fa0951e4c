"""The McCammond-Sulway completion in type D and its finite pieces.

Everything is first written down for the standard Coxeter element
``c = s_0 ... s_{n-1}`` (upper double 1, lower double ``n-1``) and then
carried to other placements by conjugating with the element that the
source-sink moves produce. The factored translations are taken with
``q_1 = 1`` and ``q_2 = q_3 = 0``, so they are the loops on outer points
(length 1) and the four barred maps ``f`` (length 1/2).

Lengths are stored doubled so that they stay integers.
"""
from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field

import sympy as sp

from . import coxplane as cp
from . import ncdiagram as nd
from .affperm import (
    AffPerm,
    BarredPerm,
    Token,
    bar_extend,
    loop,
    loop_perm,
    reflection,
    simple_reflections,
    underbar_point,
    unbar_project,
)
from .coxelem import Placement, PlacementError, coxeter_perm, orientation, placement_from_word
from .interval import Interval

UP, DOWN = 1, -1
F_NAMES = ("uu", "ud", "du", "dd")


class McSulError(ValueError):
    pass


# carrying the standard Coxeter element to other placements


@dataclass(frozen=True)
class Transport:
    """``c_p = g c_std g^-1`` with ``word`` a reduced word for ``c_p``."""

    placement: Placement
    word: tuple
    g: AffPerm

    def conj(self, x):
        if isinstance(x, BarredPerm):
            g = bar_extend(self.g)
            return g * x * bar_extend(self.g.inverse())
        return self.g * x * self.g.inverse()


def _moves(word, kind):
    arrows = orientation(word, kind)
    for s in range(len(word)):
        touching = [(i, j) for i, j in arrows if s in (i, j)]
        if all(i == s for i, _ in touching):
            rest = [x for x in word if x != s]
            yield s, tuple(rest + [s])
        elif all(j == s for _, j in touching):
            rest = [x for x in word if x != s]
            yield s, tuple([s] + rest)


def transport(p: Placement) -> Transport:
    """Breadth-first search over source-sink moves from the standard word."""
    n = p.n
    gens = simple_reflections(p.kind, n)
    start = tuple(range(n))
    queue = deque([(start, AffPerm.identity(n))])
    seen = {placement_from_word(start, p.kind)}
    while queue:
        w, g = queue.popleft()
        q = placement_from_word(w, p.kind)
        if q == p:
            return Transport(p, w, g)
        for s, w2 in _moves(w, p.kind):
            q2 = placement_from_word(w2, p.kind)
            if q2 not in seen:
                seen.add(q2)
                queue.append((w2, gens[s] * g))
    raise PlacementError(f"{p} is not reachable by source-sink moves")


def _std(p: Placement) -> Placement:
    return Placement.standard(p.kind, p.n)


# horizontal reflections


@dataclass(frozen=True)
class Horizontal:
    token: Token
    group: int  # 1: outer/inner pairs, 2 and 3: the double-point components


def _as_reflection(f: AffPerm) -> Token:
    for a in range(1, f.n):
        if f(a) != a:
            return reflection(a, f(a), f.n)
    raise McSulError("identity is not a reflection")


def _root(tok: Token, n: int) -> sp.Matrix:
    """The root ``e_b - e_a`` of ``((a b))``."""
    return cp.e_vec(tok.b, n) - cp.e_vec(tok.a, n)


def standard_horizontals(n: int) -> list[Horizontal]:
    out = []
    for i in range(2, n - 1):
        for j in range(i + 1, n - 1):
            out.append(Horizontal(reflection(i, j, n), 1))
            out.append(Horizontal(reflection(i, j - 2 * n, n), 1))
    out.append(Horizontal(reflection(1, n - 1, n), 2))
    out.append(Horizontal(reflection(1, -n - 1, n), 2))
    out.append(Horizontal(reflection(1, n + 1, n), 3))
    out.append(Horizontal(reflection(1, -n + 1, n), 3))
    return out


def horizontal_reflections(p: Placement) -> list[Horizontal]:
    """The horizontal reflections of ``[1, c]_T``, each checked to satisfy
    ``omega_c(delta, beta) = 0``."""
    if p.kind != "D":
        raise PlacementError("horizontal reflections are listed for type D")
    tr = transport(p)
    form = cp.omega_form(tr.word, "D")
    dx = form.linear(form.R.delta)
    out = []
    for h in standard_horizontals(p.n):
        tok = _as_reflection(tr.conj(h.token.perm(p.n)))
        if (dx * _root(tok, p.n))[0, 0] != 0:
            raise McSulError(f"{tok} is not horizontal")
        out.append(Horizontal(tok, h.group))
    return sorted(out, key=lambda h: (h.group, h.token))


def horizontal_by_search(p: Placement, bound: int = 1) -> set[Token]:
    """Reflections of ``[1, c]_T`` within the bound whose root is killed by
    ``omega_c(delta, .)``; an independent route to the same list."""
    from .interval import token_grid

    tr = transport(p)
    form = cp.omega_form(tr.word, "D")
    dx = form.linear(form.R.delta)
    I = Interval(p, "T")
    out = set()
    for tok in token_grid(p.n, bound, "T"):
        if (dx * _root(tok, p.n))[0, 0] == 0 and I.member(tok.perm(p.n)):
            out.add(tok)
    return out


def is_two_point_pair(f: AffPerm, p: Placement) -> bool:
    """``f`` is the image of a diagram whose only non-trivial blocks are a
    pair of two-point nonsymmetric disks with both points on one side."""
    d = nd.reconstruct(f, p)
    big = [b for b in d.blocks if b.kind != nd.TRIVIAL_PAIR]
    if len(big) != 1 or big[0].kind != nd.CURVE_PAIR:
        return False
    labels = [a for a, _ in big[0].walks[0]]
    sides = {"double" if p.side(a) in ("upper", "lower") else p.side(a) for a in labels}
    return len(labels) == 2 and len(sides) == 1


# translations


def _rho(n: int, **coef) -> list:
    v = [sp.Integer(0)] * n
    for k, x in coef.items():
        v[int(k[1:])] += x
    return v


def _vadd(*vs):
    return [sum(x) for x in zip(*vs)]


def _vscale(c, v):
    return [c * x for x in v]


def expected_out_vector(a: int, n: int, kind: str = "D") -> list:
    v = _rho(n, **{f"r{a}": 1, f"r{a - 1}": -1})
    if kind == "D" and a == 2:
        v[0] -= 1
    if a == n - 2:
        v[n - 1] += 1
    return v


def expected_doub_vector(b: int, n: int) -> list:
    s = 1 if b > 0 else -1
    if abs(b) == 1:
        return _rho(n, r0=s, r1=-s)
    return _rho(n, **{f"r{n - 2}": s, f"r{n - 1}": -s})


@dataclass
class Decomposition:
    """Bases of ``U_0, ..., U_k`` in fundamental-weight coordinates."""

    bases: list
    K_dual: list = field(repr=False, default_factory=list)

    def split(self, v) -> list:
        cols = [sp.Matrix(b) for U in self.bases for b in U]
        M = sp.Matrix.hstack(*cols)
        coef = M.solve(sp.Matrix(v)) if M.shape[0] == M.shape[1] else M.gauss_jordan_solve(sp.Matrix(v))[0]
        out, k = [], 0
        for U in self.bases:
            part = [sp.Integer(0)] * len(v)
            for b in U:
                part = _vadd(part, _vscale(coef[k], b))
                k += 1
            out.append(part)
        return out


def _span_basis(rows):
    M = sp.Matrix(rows)
    return [list(M.row(i)) for i in range(M.rank())] if False else [list(r) for r in M.T.columnspace()]


def orthogonal_decomposition(p: Placement) -> Decomposition:
    """``U_0`` spanned by ``omega_c(delta, .)`` and ``U_1..U_3`` spanned by
    ``K(., beta)`` over the horizontal roots of each component."""
    tr = transport(p)
    form = cp.omega_form(tr.word, "D")
    R = form.R
    hs = horizontal_reflections(p)
    bases = [[cp.omega_functional(form)]]
    for grp in (1, 2, 3):
        rows = [cp.k_functional(_root(h.token, p.n), R) for h in hs if h.group == grp]
        bases.append(_span_basis(rows))
    return Decomposition(bases)


def decomposition_report(p: Placement) -> list[str]:
    """Failures of orthogonality and, for the standard placement, of the
    listed spanning vectors."""
    dec = orthogonal_decomposition(p)
    tr = transport(p)
    form = cp.omega_form(tr.word, "D")
    R = form.R
    n = p.n
    out = []
    vecs = [[cp.k_dual_vector(b, R) for b in U] for U in dec.bases]
    for i, j in itertools.combinations(range(4), 2):
        for x in vecs[i]:
            for y in vecs[j]:
                if R.K(x, y) != 0:
                    out.append(f"U_{i} and U_{j} are not orthogonal")
    if sum(len(U) for U in dec.bases) != n - 1:
        out.append("dimensions do not add up to n - 1")
    if p == _std(p):
        def parallel(U, v):
            return len(U) == 1 and sp.Matrix([U[0], v]).rank() == 1
        if not parallel(dec.bases[0], _rho(n, r0=-1, r1=-1, **{f"r{n - 2}": 1, f"r{n - 1}": 1})):
            out.append("U_0 differs")
        if not parallel(dec.bases[2], _rho(n, r0=-1, r1=1, **{f"r{n - 2}": 1, f"r{n - 1}": -1})):
            out.append("U_2 differs")
        if not parallel(dec.bases[3], _rho(n, r0=1, r1=-1, **{f"r{n - 2}": 1, f"r{n - 1}": -1})):
            out.append("U_3 differs")
        U01 = sp.Matrix(dec.bases[0] + dec.bases[1])
        if U01.rank() != n - 3 or any(r[0] != r[1] or r[n - 2] != r[n - 1] for r in U01.tolist()):
            out.append("U_0 + U_1 is not the level-zero part of c_0 = c_1, c_{n-2} = c_{n-1}")
    return out


@dataclass
class TranslationRecord:
    perm: AffPerm
    a: int
    b: int
    vector: list
    components: list
    out_vector: list
    doub_vector: list
    loops: tuple
    bar_factors: tuple = ()


def translations_in_interval(p: Placement, check_membership: bool = True) -> list[TranslationRecord]:
    """Products ``l_a l_{-b}`` with ``a`` outer and ``b`` a signed double
    point: ``((.. a a+2n ..)) ((.. b b-2n ..))``.

    In type D the standard records are compared with the displayed
    vectors and split along ``U_0..U_3``; in type B the split has two
    parts and only the loop factorization is recorded.
    """
    n = p.n
    std = _std(p)
    tr = transport(p)
    R = cp.build_root_data(p.kind, n)
    dec = orthogonal_decomposition(p) if p.kind == "D" else None
    member = _member_oracle(p) if check_membership else None
    out = []
    doubles = [s * d for d in std.doubles for s in (1, -1)]
    for a in sorted(std.outer):
        for b in doubles:
            t_std = loop_perm(a, n) * loop_perm(-b, n)
            t = tr.conj(t_std)
            la, lb = tr.conj(loop_perm(a, n)), tr.conj(loop_perm(-b, n))
            vec = cp.translation_vector(t, R)
            vo, vd = cp.translation_vector(la, R), cp.translation_vector(lb, R)
            if vec != _vadd(vo, vd):
                raise McSulError(f"loop vectors do not add up for a={a}, b={b}")
            if p == std and p.kind == "D":
                if vo != expected_out_vector(a, n) or vd != expected_doub_vector(b, n):
                    raise McSulError(f"translation vector differs from the formula for a={a}, b={b}")
            comps = dec.split(vec) if dec else []
            if dec and (_vadd(comps[0], comps[1]) != vo or _vadd(comps[2], comps[3]) != vd):
                raise McSulError("components do not regroup into the loop vectors")
            if member is not None and not member(t):
                raise McSulError(f"{t} is not in [1, c]_T")
            toks = (_as_loop(la), _as_loop(lb))
            bars = _bar_pair(-b, std) if p.kind == "D" else ()
            out.append(TranslationRecord(t, a, b, vec, comps, vo, vd, toks, bars))
    return out


def _as_loop(f: AffPerm) -> Token:
    n = f.n
    for a in range(1, n):
        if f(a) == a + 2 * n:
            return loop(a, n)
        if f(a) == a - 2 * n:
            return loop(-a, n)
    raise McSulError(f"{f} is not a loop")


def _member_oracle(p: Placement):
    if p.kind == "D":
        return Interval(p, "T").member
    from .folding import BInterval

    return BInterval(p, "T").member


def mcsul3_report(p: Placement) -> list[str]:
    """On the standard placement the doubled-point parts are
    ``+-1/2`` times the listed ``U_2`` and ``U_3`` vectors."""
    if p != _std(p):
        raise PlacementError("the explicit vectors are stated for the standard placement")
    n = p.n
    u2 = _rho(n, r0=-1, r1=1, **{f"r{n - 2}": 1, f"r{n - 1}": -1})
    u3 = _rho(n, r0=1, r1=-1, **{f"r{n - 2}": 1, f"r{n - 1}": -1})
    half = sp.Rational(1, 2)
    out = []
    for rec in translations_in_interval(p, check_membership=False):
        l2, l3 = rec.components[2], rec.components[3]
        if l2 not in (_vscale(half, u2), _vscale(-half, u2)):
            out.append(f"lambda_2 for a={rec.a}, b={rec.b}: {l2}")
        if l3 not in (_vscale(half, u3), _vscale(-half, u3)):
            out.append(f"lambda_3 for a={rec.a}, b={rec.b}: {l3}")
    return out


# the four barred maps


@dataclass(frozen=True)
class FDoub:
    """``maps[(x, y)]`` bars the upper double up (x = 1) or down (x = -1)
    and likewise the lower double with ``y``."""

    placement: Placement
    maps: dict

    def __getitem__(self, key) -> BarredPerm:
        return self.maps[key]

    def named(self) -> dict:
        arrows = {UP: "u", DOWN: "d"}
        return {arrows[x] + arrows[y]: f for (x, y), f in self.maps.items()}

    def elements(self) -> list:
        return [self.maps[k] for k in sorted(self.maps, reverse=True)]


def _bar_map(n: int, images: dict) -> BarredPerm:
    window = [images.get(i, (i, 0)) for i in range(1, n)]
    return BarredPerm(n, window)


def _barred(i: int, direction: int, n: int):
    return (i, 1) if direction == UP else underbar_point((i, 0), n)


def f_doub(p: Placement) -> FDoub:
    if p.kind != "D":
        raise PlacementError("the barred maps belong to type D")
    n, u, l = p.n, p.upper, p.lower
    maps = {}
    for x in (UP, DOWN):
        for y in (UP, DOWN):
            maps[(x, y)] = _bar_map(n, {u: _barred(u, x, n), l: _barred(l, y, n)})
    return FDoub(p, maps)


def loop_identities(F: FDoub) -> dict:
    """``l_u = f_uu f_ud``, ``l_-u = f_du f_dd``, ``l_l = f_uu f_du`` and
    ``l_-l = f_ud f_dd``, each compared exactly."""
    p = F.placement
    n, u, l = p.n, p.upper, p.lower
    return {
        f"l_{u}": F[UP, UP] * F[UP, DOWN] == bar_extend(loop_perm(u, n)),
        f"l_{-u}": F[DOWN, UP] * F[DOWN, DOWN] == bar_extend(loop_perm(-u, n)),
        f"l_{l}": F[UP, UP] * F[DOWN, UP] == bar_extend(loop_perm(l, n)),
        f"l_{-l}": F[UP, DOWN] * F[DOWN, DOWN] == bar_extend(loop_perm(-l, n)),
    }


def _bar_pair(v: int, p: Placement) -> tuple:
    """Names of the two barred maps whose product is ``l_v``."""
    u = p.upper
    table = {u: ("uu", "ud"), -u: ("du", "dd"), p.lower: ("uu", "du"), -p.lower: ("ud", "dd")}
    return table[v]


# c = c1 c2 c3


@dataclass
class C123:
    c1: AffPerm
    c2: BarredPerm
    c3: BarredPerm
    c2_factors: tuple
    c3_factors: tuple


def standard_c123(n: int) -> C123:
    m = 2 * n
    outer = list(range(2, n - 1))
    mp = {outer[k]: outer[k + 1] for k in range(len(outer) - 1)}
    mp[outer[-1]] = outer[0] + m
    c1 = AffPerm.from_map(n, mp)
    c2 = _bar_map(n, {1: (-n - 1, 1), n - 1: (1, 1)})
    c3 = _bar_map(n, {1: (-n + 1, 1), n - 1: (-1, 1)})
    return C123(c1, c2, c3, (("ud",), reflection(1, n - 1, n)), (("uu",), reflection(1, n + 1, n)))


def c123(p: Placement) -> C123:
    """The factorization ``c = c1 c2 c3``, carried to ``p``, with the
    factorizations ``c2 = f_ud ((1 n-1))`` and ``c3 = f_uu ((1 n+1))``
    checked on the standard placement first."""
    if p.kind != "D":
        raise PlacementError("c1 c2 c3 is a type D factorization")
    n = p.n
    std = standard_c123(n)
    Fs = f_doub(_std(p)).named()
    if std.c2 != Fs["ud"] * reflection(1, n - 1, n).perm(n):
        raise McSulError("c2 != f_ud ((1 n-1))")
    if std.c3 != Fs["uu"] * reflection(1, n + 1, n).perm(n):
        raise McSulError("c3 != f_uu ((1 n+1))")
    c_std = coxeter_perm(_std(p))
    if bar_extend(std.c1) * std.c2 * std.c3 != c_std:
        raise McSulError("c1 c2 c3 != c")
    tr = transport(p)
    out = C123(tr.conj(std.c1), tr.conj(std.c2), tr.conj(std.c3), std.c2_factors, std.c3_factors)
    if bar_extend(out.c1) * out.c2 * out.c3 != coxeter_perm(p):
        raise McSulError("transported c1 c2 c3 != c")
    return out


def c1_diagram(p: Placement) -> nd.NCDiagram:
    """A dangling annular pair through the outer cycle of ``c``, with every
    double point trivial."""
    n = p.n
    c = coxeter_perm(p)
    a = min(p.outer, key=abs)
    values = [a]
    while True:
        x = c(values[-1])
        if (x - a) % (2 * n) == 0:
            break
        values.append(x)
    walk = nd.walk_from_cycle(values, n, (x - a) // (2 * n))
    blocks = [nd.Block(nd.DANGLING_PAIR, (walk,))]
    for d in p.doubles:
        blocks.append(nd.Block(nd.TRIVIAL_PAIR, (((d, 0),),)))
    return nd.NCDiagram(p, tuple(sorted(blocks, key=nd.Block.key)))


def letter_bookkeeping(p: Placement) -> tuple[int, int]:
    """Letters and doubled length of the word for ``c`` obtained by
    concatenating a reduced word of ``c1`` with ``f_ud ((1 n-1))`` and
    ``f_uu ((1 n+1))``."""
    I = Interval(p)
    parts = c123(p)
    w1 = I.reduced_word(parts.c1)
    letters = len(w1) + 4
    doubled = 2 * len(w1) + 2 * (1 + 2)
    return letters, doubled


# finite posets


@dataclass
class FinitePoset:
    """Elements with a strict-order oracle given by a ``leq`` table."""

    elements: list
    leq: dict

    def __len__(self):
        return len(self.elements)

    def le(self, x, y) -> bool:
        return self.leq[(x, y)]

    def upper_bounds(self, x, y):
        return [z for z in self.elements if self.le(x, z) and self.le(y, z)]

    def lower_bounds(self, x, y):
        return [z for z in self.elements if self.le(z, x) and self.le(z, y)]

    def minimal(self, zs):
        return [z for z in zs if not any(w != z and self.le(w, z) for w in zs)]

    def maximal(self, zs):
        return [z for z in zs if not any(w != z and self.le(z, w) for w in zs)]

    def join(self, x, y):
        m = self.minimal(self.upper_bounds(x, y))
        return m[0] if len(m) == 1 else None

    def meet(self, x, y):
        m = self.maximal(self.lower_bounds(x, y))
        return m[0] if len(m) == 1 else None

    def is_lattice(self) -> bool:
        return all(self.join(x, y) is not None and self.meet(x, y) is not None
                   for x, y in itertools.combinations(self.elements, 2))

    def covers(self):
        out = []
        for x in self.elements:
            for y in self.elements:
                if x != y and self.le(x, y) and not any(
                        z not in (x, y) and self.le(x, z) and self.le(z, y) for z in self.elements):
                    out.append((x, y))
        return out

    def maximal_chains(self, bottom, top):
        up = {}
        for x, y in self.covers():
            up.setdefault(x, []).append(y)

        def walk(x):
            if x == top:
                yield [x]
                return
            for y in up.get(x, []):
                if self.le(y, top):
                    for rest in walk(y):
                        yield [x] + rest

        return list(walk(bottom))


def weighted_ball(alphabet: dict, radius: int) -> dict:
    """Doubled lengths of every product of letters of total weight at most
    ``radius``, with the set of counts of half-length letters over all
    minimal words."""
    n = next(iter(alphabet)).n
    one = bar_extend(AffPerm.identity(n))
    best = {one: (0, frozenset({0}))}
    heap = [(0, 0, one)]
    tick = itertools.count(1)
    order = {one: 0}
    while heap:
        d, _, x = heapq.heappop(heap)
        if d > best[x][0]:
            continue
        for a, w in alphabet.items():
            nd_ = d + w
            if nd_ > radius:
                continue
            y = x * a
            counts = frozenset(c + (1 if w == 1 else 0) for c in best[x][1])
            if y not in best or nd_ < best[y][0]:
                best[y] = (nd_, counts)
                order[y] = next(tick)
                heapq.heappush(heap, (nd_, order[y], y))
            elif nd_ == best[y][0]:
                best[y] = (nd_, best[y][1] | counts)
    return best


def prefix_interval(top, ball: dict) -> FinitePoset:
    """``[1, top]`` in the prefix order of the weighted length."""
    L = {x: v[0] for x, v in ball.items()}
    lt = L[top]
    els = [x for x in L if x.inverse() * top in L and L[x] + L[x.inverse() * top] == lt]
    leq = {}
    for x in els:
        for y in els:
            d = x.inverse() * y
            leq[(x, y)] = d in L and L[x] + L[d] == L[y]
    return FinitePoset(sorted(els, key=lambda x: (L[x], str(x))), leq)


@dataclass
class FiniteLattice:
    placement: Placement
    parts: C123
    F: FDoub
    I2: FinitePoset
    I3: FinitePoset
    C23: FinitePoset
    new: list
    perm23: list
    perm23_poset: FinitePoset
    perm1: FinitePoset
    ball: dict = field(repr=False)

    def half_counts(self, x):
        return self.ball[x][1]


def double_alphabet(p: Placement) -> dict:
    """The four horizontal reflections on doubles (weight 2) and the four
    barred maps (weight 1)."""
    hs = [h.token for h in horizontal_reflections(p) if h.group in (2, 3)]
    alpha = {bar_extend(t.perm(p.n)): 2 for t in hs}
    for f in f_doub(p).elements():
        alpha[f] = 1
    return alpha


def assemble_finite_lattice(p: Placement, bound: int = 1) -> FiniteLattice:
    parts = c123(p)
    F = f_doub(p)
    ball = weighted_ball(double_alphabet(p), 6)
    I2 = prefix_interval(parts.c2, ball)
    I3 = prefix_interval(parts.c3, ball)
    c23 = parts.c2 * parts.c3
    C23 = prefix_interval(c23, ball)
    new = [x for x in C23.elements if ball[x][1] == frozenset({1})]
    perm23 = [x for x in C23.elements if x.is_unbarred()]
    I = Interval(p)
    plain = [unbar_project(x) for x in perm23]
    leq23 = {(x, y): I.leq_by_rank(unbar_project(x), unbar_project(y)) for x in perm23 for y in perm23}
    down1, _ = I.enumerate_down(bound, start=parts.c1)
    els1 = sorted(down1, key=lambda x: (I.rank(x), str(x)))
    leq1 = {(x, y): I.leq_by_rank(x, y) for x in els1 for y in els1}
    del plain
    return FiniteLattice(p, parts, F, I2, I3, C23, new, perm23, FinitePoset(perm23, leq23),
                         FinitePoset(els1, leq1), ball)


def nonlattice_witnesses(L: FiniteLattice) -> list:
    """Pairs of ``perm23`` with several minimal upper bounds there but a
    unique join in ``C23``."""
    P = L.perm23_poset
    out = []
    for x, y in itertools.combinations(P.elements, 2):
        mins = P.minimal(P.upper_bounds(x, y))
        if len(mins) > 1 and L.C23.join(x, y) is not None:
            out.append((x, y, mins, L.C23.join(x, y)))
    return out


def split_support(x: BarredPerm, p: Placement) -> tuple[BarredPerm, BarredPerm]:
    """Factor ``x`` into its action on the double points and the rest."""
    n = p.n
    dbl = set(p.doubles)
    on = BarredPerm(n, [x.window[i - 1] if i in dbl else (i, 0) for i in range(1, n)])
    off = BarredPerm(n, [x.window[i - 1] if i not in dbl else (i, 0) for i in range(1, n)])
    return on, off


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def lattice_report(p: Placement, bound: int = 1, chains: bool = True) -> list[Check]:
    """Sizes, lattice property, the union and intersection statements, the
    splitting map and the word properties on maximal chains."""
    L = assemble_finite_lattice(p, bound)
    n = p.n
    F = f_doub(_std(p)).named()
    out = []
    mid2 = {F["ud"], F["du"], bar_extend(reflection(1, n - 1, n).perm(n)), bar_extend(reflection(1, -n - 1, n).perm(n))}
    mid3 = {F["uu"], F["dd"], bar_extend(reflection(1, n + 1, n).perm(n)), bar_extend(reflection(1, -n + 1, n).perm(n))}
    tr = transport(p)
    mid2 = {tr.conj(x) for x in mid2}
    mid3 = {tr.conj(x) for x in mid3}
    got2 = set(L.I2.elements) - {L.parts.c2, L.I2.elements[0]}
    got3 = set(L.I3.elements) - {L.parts.c3, L.I3.elements[0]}
    out.append(Check("|[1,c2]| = 6", len(L.I2) == 6, str(len(L.I2))))
    out.append(Check("middle of [1,c2]", got2 == mid2 and _antichain(L.I2, got2)))
    out.append(Check("|[1,c3]| = 6", len(L.I3) == 6, str(len(L.I3))))
    out.append(Check("middle of [1,c3]", got3 == mid3 and _antichain(L.I3, got3)))
    prod = {(a, b): a * b for a in L.I2.elements for b in L.I3.elements}
    out.append(Check("|C23| = 36", len(L.C23) == 36 and set(prod.values()) == set(L.C23.elements), str(len(L.C23))))
    order_ok = all(L.C23.le(prod[x], prod[y]) == (L.I2.le(x[0], y[0]) and L.I3.le(x[1], y[1]))
                   for x in prod for y in prod)
    out.append(Check("C23 is the product order", order_ok))
    out.append(Check("|New| = 18", len(L.new) == 18, str(len(L.new))))
    out.append(Check("|perm23| = 18", len(L.perm23) == 18, str(len(L.perm23))))
    out.append(Check("New and perm23 partition C23", set(L.new) | set(L.perm23) == set(L.C23.elements)
                     and not set(L.new) & set(L.perm23)))
    I = Interval(p)
    c23 = unbar_project(L.parts.c2 * L.parts.c3)
    down, _ = I.enumerate_down(bound + 1, start=c23)
    out.append(Check("perm23 = [1, c2 c3] in T+L", {unbar_project(x) for x in L.perm23} == down))
    same = all(L.perm23_poset.le(x, y) == L.C23.le(x, y) for x in L.perm23 for y in L.perm23)
    out.append(Check("perm23 order agrees with C23", same))
    out.append(Check("C23 is a lattice", L.C23.is_lattice()))
    out.append(Check("perm23 is not a lattice", not L.perm23_poset.is_lattice()))
    d1 = nd.perm(c1_diagram(p))
    out.append(Check("c1 from its diagram", d1 == L.parts.c1 and I.rank(d1) == n - 3))
    # union and intersection with [1, c] in T+L
    inter_ok = True
    nu_ok = True
    for v1 in L.perm1.elements:
        for v in L.C23.elements:
            x = bar_extend(v1) * v
            inside = x.is_unbarred() and I.member(unbar_project(x))
            if inside != (v in L.perm23):
                inter_ok = False
            if v in L.new:
                on, off = split_support(x, p)
                if on != v or off != bar_extend(v1):
                    nu_ok = False
    out.append(Check("intersection is perm1 x perm23", inter_ok, f"|perm1| = {len(L.perm1)}"))
    out.append(Check("splitting map recovers New x perm1", nu_ok))
    if chains:
        out.append(_chain_check(L, I))
    return out


def _antichain(P: FinitePoset, xs) -> bool:
    return all(not P.le(x, y) for x in xs for y in xs if x != y)


def _chain_letters(P: FinitePoset, bottom, top, conv):
    for ch in P.maximal_chains(bottom, top):
        yield [conv(x).inverse() * conv(y) for x, y in zip(ch, ch[1:])]


def _chain_check(L: FiniteLattice, I: Interval) -> Check:
    """Each maximal chain of ``perm1 x C23`` projects to a pair of maximal
    chains with the same letters, so the letters of every such pair are
    checked: horizontal reflections of ``[1, c]_T``, ``n - 2`` of them,
    three factored translations whose product is an interval translation."""
    p = L.placement
    n = p.n
    horiz = {bar_extend(h.token.perm(n)) for h in horizontal_reflections(p)}
    fset = set(L.F.elements())
    outer_loops = {bar_extend(loop_perm(a, n)) for a in p.outer}
    trans = {bar_extend(r.perm) for r in translations_in_interval(p, check_membership=False)}
    It = Interval(p, "T")
    one1 = AffPerm.identity(n)
    one = bar_extend(one1)
    chains1 = list(_chain_letters(L.perm1, one1, L.parts.c1, bar_extend))
    chains23 = list(_chain_letters(L.C23, one, L.parts.c2 * L.parts.c3, lambda x: x))
    good_refl = {}

    def ok_refl(x):
        if x not in good_refl:
            good_refl[x] = x in horiz and It.member(unbar_project(x))
        return good_refl[x]

    bad = []
    for w1 in chains1:
        for w2 in chains23:
            word = w1 + w2
            refl = [x for x in word if x not in fset and x not in outer_loops]
            facts = [x for x in word if x in fset or x in outer_loops]
            if not facts:
                continue
            if not all(ok_refl(x) for x in refl):
                bad.append("non-horizontal reflection")
            if len(refl) != n - 2:
                bad.append(f"{len(refl)} reflections")
            if len(facts) != 3:
                bad.append(f"{len(facts)} factored translations")
            prod = one
            for x in facts:
                prod = prod * x
            if prod not in trans:
                bad.append("factors do not multiply to an interval translation")
    total = len(chains1) * len(chains23)
    return Check("chain words (items 1-5)", not bad, f"{total} chain pairs" + (f"; {bad[0]}" if bad else ""))


# type B


def b_no_completion_needed(p: Placement, bound: int = 1) -> list[Check]:
    """Type B needs nothing beyond loops: interval translations split into
    two loops, the unfolded barred maps are not fixed by the prime swap,
    and neither is any new element of the unfolded completion."""
    from .folding import chi_barred, unfold_placement

    if p.kind != "B":
        raise PlacementError("this check is for type B placements")
    out = []
    recs = translations_in_interval(p)
    loops_ok = all(t.kind == Token.LOOP for r in recs for t in r.loops)
    prod_ok = all(r.loops[0].perm(p.n) * r.loops[1].perm(p.n) == r.perm for r in recs)
    out.append(Check("translations factor into loops", loops_ok and prod_ok, f"{len(recs)} translations"))
    q = unfold_placement(p)
    F = f_doub(q)
    out.append(Check("no barred map is fixed by the prime swap", all(chi_barred(f) != f for f in F.elements())))
    L = assemble_finite_lattice(q, bound)
    full = {bar_extend(v1) * v for v1 in L.perm1.elements for v in L.C23.elements}
    loops = {bar_extend(v1) * v for v1 in L.perm1.elements for v in L.perm23}
    fixed_full = {x for x in full if chi_barred(x) == x}
    fixed_loops = {x for x in loops if chi_barred(x) == x}
    out.append(Check("fixed elements of the completion fragment use no barred map",
                     fixed_full == fixed_loops, f"{len(full)} elements, {len(fixed_full)} fixed"))
    return out


def b_formula_differences(p: Placement) -> list[tuple]:
    """``(a, b, computed, displayed)`` wherever a type B loop vector differs
    from the displayed formula. The ``rho_0`` coefficient at ``a = 1`` comes
    out doubled because the coroot of ``alpha_0`` is ``2 e_1``."""
    if p.kind != "B" or p != _std(p):
        raise PlacementError("the displayed vectors are for the standard type B placement")
    out = []
    for r in translations_in_interval(p, check_membership=False):
        shown = _vadd(expected_out_vector(r.a, p.n, "B"), expected_doub_vector(r.b, p.n))
        if r.vector != shown:
            out.append((r.a, r.b, r.vector, shown))
    return out
