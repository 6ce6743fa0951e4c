"""The interval ``[1, c]`` in the absolute order on reflections and loops.

Three pieces live here:

* ``classify_action`` locates ``a`` and ``b`` of a generator in the cycle
  classes of ``f`` and predicts the change in the rank statistic from the
  shape of the cycles that get cut or glued, without multiplying.
* a chain-witness membership oracle. ``f`` lies in ``[1, c]`` exactly when
  both ``f`` and ``f^-1 c`` admit rank-decreasing chains to the identity
  and their ranks add up to ``rank(c)``.
* bounded enumeration, order tests and reduced words built on the above.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .affperm import AffPerm, PermError, Token, loop, reflection
from .coxelem import Placement, coxeter_perm
from .cycleclass import (
    ON_LIST1,
    Signature,
    in_t_shapes,
    list_status,
    rho_int,
    signature,
)

NS, SYM, TINY, INF = 0, 1, 2, 3

MOVE_NAMES = {
    "1a": "SplitNonSym",
    "2a": "SplitSym",
    "2d": "CombineSymTiny",
    "2e": "CombineSymTiny",
    "3a": "CombineTiny",
    "3b": "CombineTinyInf",
    "4a": "SplitInf",
    "4c": "CombineInfAndNeg",
    "4d": "CombineInfInf",
    "5c": "EnlargeTiny",
    "5d": "InfToNonSym",
}

LOOP_MOVES = ("EnlargeTiny", "InfToNonSym")


class IntervalError(ValueError):
    pass


@dataclass(frozen=True)
class Action:
    case: str
    delta: int
    move: str | None = None

    def __str__(self) -> str:
        tail = f" {self.move}" if self.move else ""
        return f"Case {self.case} d={self.delta:+d}{tail}"


# cycle lookups


class CycleIndex:
    """For every residue ``r`` mod 2n: the kind of cycle through ``r``, the
    cycle read from ``r`` and its shift (return point is ``r + 2*shift*n``)."""

    def __init__(self, f: AffPerm, placement: Placement):
        self.f = f
        self.n = n = f.n
        self.placement = placement
        m = 2 * n
        self.data: dict[int, tuple[int, tuple, int]] = {}
        for r in range(1, m):
            if r == n or r in self.data:
                continue
            seq = [r]
            x = f(r)
            while (x - r) % m:
                seq.append(x)
                x = f(x)
            shift = (x - r) // m
            res = {y % m for y in seq}
            if shift:
                kind = INF
            elif res & {-y % m for y in seq}:
                kind = TINY if self._is_tiny_seq(seq) else SYM
            else:
                kind = NS
            for idx, y in enumerate(seq):
                ry = y % m
                off = y - ry
                rot = tuple(z - off for z in seq[idx:]) + tuple(z - off + shift * m for z in seq[:idx])
                self.data[ry] = (kind, rot, shift)

    def _is_tiny_seq(self, seq) -> bool:
        if len(seq) != 2:
            return False
        k = (seq[0] + seq[1]) // (2 * self.n)
        return is_tiny_half((seq[0],), k, self.placement)

    def cycle(self, x: int) -> tuple[int, list[int], int]:
        """Kind, the cycle read from ``x`` (one period), and its shift."""
        m = 2 * self.n
        kind, rot, shift = self.data[x % m]
        off = x - x % m
        return kind, [z + off for z in rot], shift

    def kind(self, x: int) -> int:
        return self.data[x % (2 * self.n)][0]


@lru_cache(maxsize=50000)
def cycle_index(f: AffPerm, placement: Placement) -> CycleIndex:
    return CycleIndex(f, placement)


def is_tiny_half(half, k: int, placement: Placement) -> bool:
    """Whether the symmetric cycle ``(half, -half + 2kn)`` is tiny."""
    if len(half) != 1:
        return False
    n = placement.n
    r = half[0] % (2 * n)
    a = r if r < n else 2 * n - r
    if placement.upper is not None and a == placement.upper and k % 2 == 0:
        return True
    return a == placement.lower and k % 2 == 1


def _sym_shift(seq, n) -> int:
    return (seq[0] + seq[len(seq) // 2]) // (2 * n)


def _find_residue(seq, x, m):
    for i, y in enumerate(seq):
        if (y - x) % m == 0:
            return i
    return None


def classify_action(tok: Token, f: AffPerm, placement: Placement) -> Action:
    """Transition case for ``tok * f`` and the predicted rank change."""
    n = f.n
    m = 2 * n
    idx = cycle_index(f, placement)
    if tok.kind == Token.LOOP:
        a = tok.a
        kind, seq, k = idx.cycle(a)
        if kind == NS:
            return Action("5a", 1)
        if kind == SYM:
            # the symmetric cycle keeps its entries but its shift drops by one,
            # which turns a one-point half on a double point into a tiny cycle
            half = seq[: len(seq) // 2]
            return Action("5b", int(is_tiny_half(half, _sym_shift(seq, n) - 1, placement)))
        if kind == TINY:
            return Action("5c", -1, "EnlargeTiny")
        if k == -1:
            return Action("5d", -1, "InfToNonSym")
        return Action("5d", 0)
    if tok.kind == Token.SIGNED:
        raise IntervalError("signed reflections are not in the type D alphabet")
    a, b = tok.a, tok.b
    if (a - b) % m == 0 or (a + b) % m == 0:
        raise IntervalError(f"degenerate reflection {tok}")
    if idx.kind(a) > idx.kind(b):
        a, b = b, a
    return _classify_reflection(a, b, idx, placement)


def _classify_reflection(a, b, idx: CycleIndex, placement) -> Action:
    n = idx.n
    m = 2 * n
    ka, A, k = idx.cycle(a)
    kb = idx.kind(b)
    if ka == NS:
        i = _find_residue(A, b, m)
        if i is not None:
            if A[i] == b:
                return Action("1a", -1, "SplitNonSym")
            return Action("1b", 1)
        i = _find_residue(A, -b, m)
        if i is not None:
            q = (b + A[i]) // m
            tiny = sum(is_tiny_half(h, q, placement) for h in (A[:i], A[i:]))
            return Action("1c", tiny)
        return Action({NS: "1d", SYM: "1e", TINY: "1f", INF: "1g"}[kb], 0 if kb == TINY else 1)
    if ka == SYM:
        half = len(A) // 2
        i = _find_residue(A, b, m)
        if i is not None:
            if i > half:
                # read the cycle from b instead, which puts a in its first half
                return _classify_reflection(b, a, idx, placement)
            q = (b - A[i]) // m
            tiny = is_tiny_half(A[i:half], _sym_shift(A, n) - q, placement)
            if q == 0:
                return Action("2a", 0, None) if tiny else Action("2a", -1, "SplitSym")
            return Action("2b", 1 if tiny else 0)
        ks = _sym_shift(A, n)
        _, B, _ = idx.cycle(b)
        if kb == SYM:
            return Action("2c", 0 if ks == _sym_shift(B, n) else 1)
        if kb == TINY:
            kt = (B[0] + B[1]) // m
            upper = kt % 2 == 0
            case = "2d" if upper else "2e"
            if ks == kt:
                return Action(case, -1, "CombineSymTiny")
            return Action(case, 0)
        return Action("2f", 0)
    if ka == TINY:
        if kb == TINY:
            return Action("3a", -1, "CombineTiny")
        return Action("3b", -1, "CombineTinyInf")
    # infinite
    i = _find_residue(A, b, m)
    if i is not None:
        t = (b - A[i]) // m
        if t % k == 0:
            q = t // k
            if q in (0, -1):
                return Action("4a", -1, "SplitInf")
            return Action("4a", 0)
        return Action("4b", 0)
    i = _find_residue(A, -b, m)
    if i is not None:
        q = (b + A[i]) // m
        tiny = is_tiny_half(A[:i], q, placement) + is_tiny_half(A[i:], q + k, placement)
        if tiny == 0:
            return Action("4c", -1, "CombineInfAndNeg")
        return Action("4c", tiny - 1)
    _, B, kq = idx.cycle(b)
    if kq == -k:
        return Action("4d", -1, "CombineInfInf")
    return Action("4d", 0)


# ranks and caches


@lru_cache(maxsize=200000)
def rank(f: AffPerm, placement: Placement) -> int:
    return rho_int(f, placement)


@lru_cache(maxsize=200000)
def sig(f: AffPerm, placement: Placement) -> Signature:
    return signature(f, placement)


def on_list1(f: AffPerm, placement: Placement) -> bool:
    return list_status(sig(f, placement)) == ON_LIST1


def winding(f: AffPerm) -> int:
    """Least ``B`` with every displacement ``|f(i) - i|`` at most ``2nB``."""
    m = 2 * f.n
    return -(-f.max_displacement() // m)


# token scans


@lru_cache(maxsize=64)
def token_grid(n: int, bound: int, alphabet: str = "TL") -> tuple[Token, ...]:
    """Every reflection ``((a b))`` with ``|b - a| <= 4n*bound + 2n`` in canonical
    form, followed by the loops when the alphabet includes them."""
    m = 2 * n
    reach = 2 * m * bound + m
    seen = set()
    for a in range(1, n):
        for b in range(a - reach, a + reach + 1):
            if b % n == 0 or (a - b) % m == 0 or (a + b) % m == 0:
                continue
            seen.add(reflection(a, b, n))
    toks = sorted(seen)
    if "L" in alphabet:
        toks += [loop(a, n) for a in range(-(n - 1), n) if a]
    return tuple(toks)


def _apply(tok: Token, f: AffPerm) -> AffPerm:
    return tok.perm(f.n) * f


def descents(f: AffPerm, placement: Placement, bound: int, alphabet: str = "TL"):
    """Generators ``tok`` with rank(tok f) = rank(f) - 1 and the result within
    the winding bound, predicted by the case machine."""
    limit = 2 * f.n * bound
    for tok in token_grid(f.n, bound, alphabet):
        act = classify_action(tok, f, placement)
        if act.delta != -1:
            continue
        g = _apply(tok, f)
        if g.max_displacement() > limit:
            continue
        yield tok, act, g


def ascents(f: AffPerm, placement: Placement, bound: int, alphabet: str = "TL"):
    limit = 2 * f.n * bound
    for tok in token_grid(f.n, bound, alphabet):
        act = classify_action(tok, f, placement)
        if act.delta != 1:
            continue
        g = _apply(tok, f)
        if g.max_displacement() > limit:
            continue
        yield tok, act, g


class Interval:
    """The interval ``[1, c]`` for one placement, with memoized oracles.

    ``alphabet`` is ``"TL"`` for reflections and loops or ``"T"`` for
    reflections only.
    """

    def __init__(self, placement: Placement, alphabet: str = "TL"):
        if placement.kind != "D":
            raise IntervalError("the interval engine works in type D; fold type B first")
        if alphabet not in ("T", "TL"):
            raise IntervalError(f"unknown alphabet {alphabet!r}")
        self.placement = placement
        self.alphabet = alphabet
        self.n = placement.n
        self.c = coxeter_perm(placement)
        self.top = rank(self.c, placement)
        self._grounded: dict[AffPerm, bool] = {}

    # basic data

    def rank(self, f: AffPerm) -> int:
        return rank(f, self.placement)

    def signature(self, f: AffPerm) -> Signature:
        return sig(f, self.placement)

    def shape_ok(self, f: AffPerm) -> bool:
        s = self.signature(f)
        if self.alphabet == "T":
            return in_t_shapes(s)
        return list_status(s) == ON_LIST1

    def classify(self, tok: Token, f: AffPerm) -> Action:
        return classify_action(tok, f, self.placement)

    # chain oracle

    def grounded(self, f: AffPerm) -> bool:
        """There is a chain of rank-one descents from ``f`` to the identity
        through elements of allowed shape, using generators within
        ``max(winding(f), 1)``."""
        if f in self._grounded:
            return self._grounded[f]
        ok = self._grounded_search(f, max(winding(f), 1))
        self._grounded[f] = ok
        return ok

    def _grounded_search(self, f: AffPerm, bound: int) -> bool:
        if not f.in_jes() or not self.shape_ok(f):
            return False
        r = self.rank(f)
        if r == 0:
            return f.is_identity()
        for tok, act, g in descents(f, self.placement, bound, self.alphabet):
            if g in self._grounded:
                if self._grounded[g]:
                    return True
                continue
            ok = self._grounded_search(g, bound)
            self._grounded[g] = ok
            if ok:
                return True
        return False

    def member(self, f: AffPerm) -> bool:
        if f.n != self.n:
            raise PermError("rank mismatch")
        if not f.in_jes() or not self.shape_ok(f):
            return False
        rest = f.inverse() * self.c
        if not self.shape_ok(rest):
            return False
        if self.rank(f) + self.rank(rest) != self.top:
            return False
        return self.grounded(f) and self.grounded(rest)

    # order

    def leq_by_rank(self, f: AffPerm, g: AffPerm) -> bool:
        """``f <= g`` via the rank identity and a chain witness for ``f^-1 g``."""
        d = f.inverse() * g
        if self.rank(f) + self.rank(d) != self.rank(g):
            return False
        return self.grounded(d)

    def leq(self, f: AffPerm, g: AffPerm, bound: int | None = None) -> bool:
        """Search a saturated chain from ``f`` up to ``g`` whose steps keep the
        rank identity toward ``g``."""
        return self.chain(f, g, bound) is not None

    def chain(self, f: AffPerm, g: AffPerm, bound: int | None = None):
        if bound is None:
            bound = max(winding(g), 1) + 1
        rg = self.rank(g)
        if self.rank(f) + self.rank(f.inverse() * g) != rg:
            return None
        seen = {f}
        stack = [(f, [])]
        while stack:
            x, path = stack.pop()
            if x == g:
                return path
            for tok, act, y in ascents(x, self.placement, bound, self.alphabet):
                if y in seen or not self.shape_ok(y):
                    continue
                if self.rank(y) + self.rank(y.inverse() * g) != rg:
                    continue
                seen.add(y)
                stack.append((y, path + [tok]))
        return None

    # descent structure

    def downward_covers(self, f: AffPerm, bound: int = 1):
        """Members covered by ``f``: ``tok f`` one rank lower, within the bound."""
        if bound < 1:
            raise IntervalError("winding bound must be at least 1")
        out = []
        seen = set()
        for tok, act, g in descents(f, self.placement, bound, self.alphabet):
            if g in seen or not self.shape_ok(g):
                continue
            if self.grounded(g):
                seen.add(g)
                out.append((act.move, tok, g))
        return out

    def reduced_word(self, f: AffPerm) -> list[Token]:
        """Letters ``t1 .. tk`` with ``t1 ... tk = f`` and ``k = rank(f)``;
        each step peels the least generator on the left."""
        if not self.member(f):
            raise IntervalError(f"{f} is not in the interval")
        word = []
        x = f
        bound = max(winding(f), 1)
        while not x.is_identity():
            for tok, act, g in descents(x, self.placement, bound, self.alphabet):
                if self.shape_ok(g) and self.grounded(g):
                    # x = tok^-1 g, so the leftmost letter is tok^-1
                    word.append(_inverse_token(tok, self.n))
                    x = g
                    break
            else:
                raise IntervalError(f"no descent found from {x}")
        return word

    def enumerate_down(self, bound: int = 1, start: AffPerm | None = None):
        """Elements reachable from ``start`` (default ``c``) by downward covers
        staying within the winding bound, with the cover edges."""
        start = self.c if start is None else start
        seen = {start}
        edges = []
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for move, tok, y in self.downward_covers(x, bound):
                edges.append((x, tok, move, y))
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen, edges


def _inverse_token(tok: Token, n: int) -> Token:
    if tok.kind == Token.LOOP:
        return loop(-tok.a, n)
    return tok


def transition_check(interval: Interval, edges: Iterable) -> list[str]:
    """Violations of the transition tables among cover edges ``(x, tok, move, y)``."""
    from .cycleclass import list_status as status

    problems = []
    for x, tok, move, y in edges:
        sx = interval.signature(x)
        sy = interval.signature(y)
        if status(sy) != ON_LIST1:
            problems.append(f"{y} has signature {sy} off the first list")
        if interval.alphabet == "T" and not in_t_shapes(sy):
            problems.append(f"{y} has signature {sy} outside the reflection shapes")
        key = (_table_key(sx), move, _table_key(sy))
        if key not in TRANSITIONS:
            problems.append(f"transition {sx} --{move}--> {sy} not in the tables")
    return problems


def _table_key(s: Signature) -> str:
    return s.shape()


# (source shape, move, target shape); NonSym counts are free
TRANSITIONS = {
    ("Inf^1 Tiny^2", "SplitNonSym", "Inf^1 Tiny^2"),
    ("Inf^1 Tiny^2", "CombineTiny", "Inf^2"),
    ("Inf^1 Tiny^2", "CombineTiny", "Inf^1 NonflatInf^1"),
    ("Inf^1 Tiny^2", "CombineTinyInf", "Tiny^1 Sym^1"),
    ("Inf^1 Tiny^2", "SplitInf", "Inf^1 Tiny^2"),
    ("Inf^1 Tiny^2", "CombineInfAndNeg", "Tiny^2 Sym^2"),
    ("Inf^1 Tiny^2", "EnlargeTiny", "Inf^1 Tiny^1 Sym^1"),
    ("Inf^1 Tiny^2", "InfToNonSym", "Tiny^2"),
    ("Inf^2", "SplitNonSym", "Inf^2"),
    ("Inf^2", "SplitInf", "Inf^2"),
    ("Inf^2", "CombineInfAndNeg", "Inf^1 Sym^2"),
    ("Inf^2", "CombineInfInf", ""),
    ("Inf^2", "InfToNonSym", "Inf^1"),
    ("Inf^1", "SplitNonSym", "Inf^1"),
    ("Inf^1", "SplitInf", "Inf^1"),
    ("Inf^1", "CombineInfAndNeg", "Sym^2"),
    ("Inf^1", "InfToNonSym", ""),
    ("Tiny^1 Sym^1", "SplitNonSym", "Tiny^1 Sym^1"),
    ("Tiny^1 Sym^1", "SplitSym", "Tiny^1 Sym^1"),
    ("Tiny^1 Sym^1", "CombineSymTiny", ""),
    ("Tiny^1 Sym^1", "EnlargeTiny", "Sym^2"),
    ("Tiny^2 Sym^2", "SplitNonSym", "Tiny^2 Sym^2"),
    ("Tiny^2 Sym^2", "SplitSym", "Tiny^2 Sym^2"),
    ("Tiny^2 Sym^2", "CombineSymTiny", "Tiny^1 Sym^1"),
    ("Tiny^2 Sym^2", "CombineTiny", "Inf^1 Sym^2"),
    ("Tiny^2 Sym^2", "CombineTiny", "NonflatInf^1 Sym^2"),
    ("Tiny^2 Sym^2", "EnlargeTiny", "Tiny^1 Sym^3"),
    ("Inf^1 Tiny^1 Sym^1", "SplitNonSym", "Inf^1 Tiny^1 Sym^1"),
    ("Inf^1 Tiny^1 Sym^1", "SplitSym", "Inf^1 Tiny^1 Sym^1"),
    ("Inf^1 Tiny^1 Sym^1", "CombineSymTiny", "Inf^1"),
    ("Inf^1 Tiny^1 Sym^1", "CombineTinyInf", "Sym^2"),
    ("Inf^1 Tiny^1 Sym^1", "SplitInf", "Inf^1 Tiny^1 Sym^1"),
    ("Inf^1 Tiny^1 Sym^1", "CombineInfAndNeg", "Tiny^1 Sym^3"),
    ("Inf^1 Tiny^1 Sym^1", "EnlargeTiny", "Inf^1 Sym^3"),
    ("Inf^1 Tiny^1 Sym^1", "InfToNonSym", "Tiny^1 Sym^1"),
    ("Tiny^2", "SplitNonSym", "Tiny^2"),
    ("Tiny^2", "CombineTiny", "Inf^1"),
    ("Tiny^2", "CombineTiny", "NonflatInf^1"),
    ("Tiny^2", "EnlargeTiny", "Tiny^1 Sym^1"),
    ("", "SplitNonSym", ""),
}


# sampling the one-step rank bound


def _random_token(n: int, rng, reach: int) -> Token:
    if rng.random() < 0.3:
        return loop(rng.choice([x for x in range(-n + 1, n) if x]), n)
    a = rng.randint(1, n - 1)
    while True:
        b = rng.randint(-reach * n, reach * n)
        if b % n and (a - b) % (2 * n) and (a + b) % (2 * n):
            return reflection(a, b, n)


def random_element(n: int, rng, steps: int) -> AffPerm:
    """A product of ``steps`` random reflections and loops."""
    f = AffPerm.identity(n)
    for _ in range(steps):
        f = _random_token(n, rng, 4).perm(n) * f
    return f


@dataclass
class BoundSample:
    pairs: int
    too_big: list
    mispredicted: list

    @property
    def ok(self) -> bool:
        return not self.too_big and not self.mispredicted


def universal_bound_sample(placements, count: int, seed: int = 0) -> BoundSample:
    """Draw ``(tok, f)`` pairs and compare the predicted rank change of
    ``tok f`` with the recomputed one; every change must be at most 1."""
    import random

    from .cycleclass import rho

    rng = random.Random(seed)
    placements = list(placements)
    too_big, wrong = [], []
    for k in range(count):
        p = placements[k % len(placements)]
        n = p.n
        f = random_element(n, rng, rng.randint(0, 6))
        tok = _random_token(n, rng, 5)
        d = rho(tok.perm(n) * f, p) - rho(f, p)
        if abs(d) > 1:
            too_big.append((tok, f, p))
        if d != classify_action(tok, f, p).delta:
            wrong.append((tok, f, p))
    return BoundSample(count, too_big, wrong)
