"""Affine signed permutations of the integers in window notation.

A permutation ``pi`` of ZZ with ``pi(i + 2n) = pi(i) + 2n`` and
``pi(-i) = -pi(i)`` is stored by its window ``(pi(1), ..., pi(n-1))``.
Multiples of ``n`` are always fixed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class PermError(ValueError):
    """Raised when data does not describe a valid affine signed permutation."""


class AffPerm:
    """An affine signed permutation with period ``2n``.

    >>> f = AffPerm(5, [-1, 3, 12, 6])
    >>> f(1), f(9), f(-3)
    (-1, 11, -12)
    >>> str(f)
    'n=5; w=[-1,3,12,6]'
    """

    __slots__ = ("n", "window", "_hash")

    def __init__(self, n: int, window: Sequence[int], check: bool = True):
        self.n = int(n)
        self.window = tuple(int(x) for x in window)
        self._hash = None
        if check:
            self._validate()

    def _validate(self) -> None:
        n, w = self.n, self.window
        if n < 2:
            raise PermError(f"rank parameter n={n} is too small")
        if len(w) != n - 1:
            raise PermError(f"window has length {len(w)}, expected {n - 1}")
        seen = {0: None, n: None}
        m = 2 * n
        for idx, x in enumerate(w, start=1):
            if x % n == 0:
                raise PermError(f"window[{idx}]={x} is a multiple of n")
            for y in (x, -x):
                r = y % m
                if r in seen:
                    raise PermError(f"window[{idx}]={x} repeats residue {r} mod {m}")
                seen[r] = idx

    # basic protocol

    def __call__(self, i: int) -> int:
        n = self.n
        m = 2 * n
        q, r = divmod(i, m)
        if r == 0 or r == n:
            return i
        if r < n:
            return self.window[r - 1] + m * q
        return m * (q + 1) - self.window[m - r - 1]

    apply = __call__

    def __mul__(self, other: "AffPerm") -> "AffPerm":
        if self.n != other.n:
            raise PermError(f"rank mismatch: {self.n} vs {other.n}")
        return AffPerm(self.n, [self(x) for x in other.window], check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, AffPerm) and self.n == other.n and self.window == other.window

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.window))
        return self._hash

    def __lt__(self, other: "AffPerm") -> bool:
        return (self.n, self.window) < (other.n, other.window)

    def __repr__(self) -> str:
        return f"AffPerm({self.n}, {list(self.window)})"

    def __str__(self) -> str:
        return f"n={self.n}; w=[{','.join(str(x) for x in self.window)}]"

    def inverse(self) -> "AffPerm":
        n = self.n
        m = 2 * n
        inv = [0] * (n - 1)
        for j, y in enumerate(self.window, start=1):
            q, r = divmod(y, m)
            if r < n:
                inv[r - 1] = j - m * q
            else:
                inv[m - r - 1] = -j + m * (q + 1)
        return AffPerm(n, inv, check=False)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.window, start=1))

    def conjugate(self, g: "AffPerm") -> "AffPerm":
        """Return ``g * self * g^-1``."""
        return g * self * g.inverse()

    def max_displacement(self) -> int:
        return max((abs(x - i) for i, x in enumerate(self.window, start=1)), default=0)

    # constructors

    @classmethod
    def identity(cls, n: int) -> "AffPerm":
        return cls(n, range(1, n), check=False)

    @classmethod
    def from_map(cls, n: int, mapping: Mapping[int, int] | Iterable[tuple[int, int]]) -> "AffPerm":
        """Build the permutation determined by some values, closing under shift and negation.

        Points whose orbit under shift/negation is not mentioned are fixed.
        """
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        m = 2 * n
        win: dict[int, int] = {}
        for x, y in items:
            q, r = divmod(x, m)
            if r == 0 or r == n:
                if x != y:
                    raise PermError(f"multiple of n {x} must be fixed")
                continue
            if r < n:
                pos, val = r, y - m * q
            else:
                pos, val = m - r, -y + m * (q + 1)
            if win.get(pos, val) != val:
                raise PermError(f"conflicting images for residue of {x}")
            win[pos] = val
        return cls(n, [win.get(i, i) for i in range(1, n)])

    @classmethod
    def parse(cls, text: str) -> "AffPerm":
        """Parse the canonical form ``n=<n>; w=[a,b,...]``."""
        mt = re.fullmatch(r"\s*n\s*=\s*(-?\d+)\s*;\s*w\s*=\s*\[([^\]]*)\]\s*", text)
        if not mt:
            raise PermError(f"cannot parse permutation text {text!r}")
        n = int(mt.group(1))
        body = mt.group(2).strip()
        window = [int(t) for t in re.split(r"[,\s]+", body) if t] if body else []
        return cls(n, window)

    # counts and subgroup tests

    def neg_big_counts(self) -> tuple[int, int]:
        """Return ``(#neg, #big)``.

        ``#neg`` counts positive ``i`` with ``pi(i) < 0`` and ``#big`` counts
        ``i < n`` with ``pi(i) > n``. Both are finite because displacements
        are bounded; each residue class contributes an arithmetic run.
        """
        n = self.n
        m = 2 * n
        neg = big = 0
        for r in range(1, m):
            if r == n:
                continue
            y = self(r)
            if y < 0:
                neg += (-y - 1) // m + 1
            qmax = 0 if r < n else -1
            qmin = (n - y) // m + 1
            if qmax >= qmin:
                big += qmax - qmin + 1
        return neg, big

    def membership(self) -> dict[str, bool]:
        neg, big = self.neg_big_counts()
        return {
            "inStilde": True,
            "inSES": big % 2 == 0,
            "inDES": neg % 2 == 0 and big % 2 == 0,
            "inJES": (neg + big) % 2 == 0,
        }

    def in_des(self) -> bool:
        neg, big = self.neg_big_counts()
        return neg % 2 == 0 and big % 2 == 0

    def in_jes(self) -> bool:
        neg, big = self.neg_big_counts()
        return (neg + big) % 2 == 0

    def in_ses(self) -> bool:
        return self.neg_big_counts()[1] % 2 == 0


def neg_big_counts_sweep(f: AffPerm) -> tuple[int, int]:
    """Count ``#neg`` and ``#big`` by direct enumeration over a bounded range."""
    n = f.n
    bound = f.max_displacement() + 2 * n
    neg = sum(1 for i in range(1, bound + 1) if f(i) < 0)
    big = sum(1 for i in range(n - bound, n) if f(i) > n)
    return neg, big


def membership(f: AffPerm) -> dict[str, bool]:
    return f.membership()


def compose(f: AffPerm, g: AffPerm) -> AffPerm:
    return f * g


def apply(f: AffPerm, i: int) -> int:
    return f(i)


# generator tokens


@dataclass(frozen=True, order=True)
class Token:
    """A generator: a reflection ``((a b))``, a signed reflection ``(a b)`` with
    ``b = -a`` modulo ``2n``, or a loop ``l_a``.

    ``kind`` sorts reflections before signed reflections before loops.
    """

    kind: int
    a: int
    b: int = 0

    REFLECTION = 0
    SIGNED = 1
    LOOP = 2

    @property
    def name(self) -> str:
        return ("Reflection", "SignedReflection", "Loop")[self.kind]

    def is_loop(self) -> bool:
        return self.kind == Token.LOOP

    def perm(self, n: int) -> AffPerm:
        return _token_perm(self, n)

    def __str__(self) -> str:
        if self.kind == Token.LOOP:
            return f"loop({self.a})"
        if self.kind == Token.SIGNED:
            return f"({self.a} {self.b})"
        return f"(({self.a} {self.b}))"


@lru_cache(maxsize=200000)
def _token_perm(tok: Token, n: int) -> AffPerm:
    if tok.kind == Token.LOOP:
        return AffPerm.from_map(n, {tok.a: tok.a + 2 * n})
    return AffPerm.from_map(n, {tok.a: tok.b, tok.b: tok.a})


def _shift_into_first_half(x: int, n: int) -> int:
    """Shift ``x`` by a multiple of 2n, returning the shift amount making
    ``x`` land in ``1..n-1`` (``x`` must have residue in that range)."""
    m = 2 * n
    return -(x - x % m)


def reflection(a: int, b: int, n: int) -> Token:
    """Canonical token for ``((a b))`` (or ``(a b)`` when ``b = -a`` mod 2n)."""
    m = 2 * n
    if a % n == 0 or b % n == 0:
        raise PermError("reflection endpoints must not be multiples of n")
    if (a - b) % m == 0:
        raise PermError(f"degenerate reflection (({a} {b}))")
    signed = (a + b) % m == 0
    best = None
    for x, y in ((a, b), (b, a), (-a, -b), (-b, -a)):
        if x % m < n:
            s = _shift_into_first_half(x, n)
            cand = (x + s, y + s)
            if best is None or cand < best:
                best = cand
    kind = Token.SIGNED if signed else Token.REFLECTION
    return Token(kind, best[0], best[1])


def loop(a: int, n: int) -> Token:
    if a % n == 0:
        raise PermError("loop index must not be a multiple of n")
    if not -n < a < n:
        raise PermError(f"loop index {a} outside 1..{n - 1} up to sign")
    return Token(Token.LOOP, a)


def reflection_perm(a: int, b: int, n: int) -> AffPerm:
    return reflection(a, b, n).perm(n)


def loop_perm(a: int, n: int) -> AffPerm:
    return loop(a, n).perm(n)


def product(tokens: Iterable[Token], n: int) -> AffPerm:
    """Product ``t1 t2 ... tk`` as a composition (rightmost acts first)."""
    out = AffPerm.identity(n)
    for t in tokens:
        out = out * t.perm(n)
    return out


# simple reflections


def simple_reflections(kind: str, n: int) -> list[AffPerm]:
    """The simple reflections ``s_0, ..., s_{n-1}`` of type C, D or B."""
    kind = kind.upper()
    mid = [AffPerm.from_map(n, {i: i + 1, i + 1: i}) for i in range(1, n - 1)]
    if kind == "C":
        first = AffPerm.from_map(n, {1: -1})
        last = AffPerm.from_map(n, {n - 1: n + 1})
        return [first] + mid + [last]
    tail = AffPerm.from_map(n, {n - 2: n + 1, n + 1: n - 2})
    if kind == "D":
        first = AffPerm.from_map(n, {1: -2, -2: 1})
        return [first] + mid + [tail]
    if kind == "B":
        first = AffPerm.from_map(n, {1: -1})
        return [first] + mid + [tail]
    raise PermError(f"unknown type {kind!r}")


def word_product(kind: str, n: int, word: Sequence[int]) -> AffPerm:
    gens = simple_reflections(kind, n)
    out = AffPerm.identity(n)
    for i in word:
        out = out * gens[i]
    return out


def loop_parity_shift(f: AffPerm, a: int) -> tuple[int, int]:
    """Signed changes ``(d#big, d#neg)`` when passing from ``f`` to ``f * l_a``."""
    neg0, big0 = f.neg_big_counts()
    neg1, big1 = (f * loop_perm(a, f.n)).neg_big_counts()
    dbig, dneg = big1 - big0, neg1 - neg0
    assert abs(dbig) == 1 and abs(dneg) == 1, (dbig, dneg)
    return dbig, dneg


# barred points and barred permutations

Point = tuple[int, int]


def shift_point(p: Point, n: int, times: int = 1) -> Point:
    return (p[0] + 2 * n * times, p[1])


def bar_point(p: Point, n: int) -> Point:
    i, b = p
    return (i, 1) if b == 0 else (i + 2 * n, 0)


def underbar_point(p: Point, n: int) -> Point:
    i, b = p
    return (i - 2 * n, 1) if b == 0 else (i, 0)


def negate_point(p: Point, n: int) -> Point:
    i, b = p
    return (-i, 0) if b == 0 else (-i - 2 * n, 1)


def format_point(p: Point) -> str:
    return f"{p[0]}" if p[1] == 0 else f"{p[0]}~"


class BarredPerm:
    """A permutation of the integers and their barred copies commuting with barring.

    The point ``(i, 0)`` stands for ``e_i`` and ``(i, 1)`` for ``e_i + delta/2``.
    The window lists the images of ``1, ..., n-1``.
    """

    __slots__ = ("n", "window")

    def __init__(self, n: int, window: Sequence[Point], check: bool = True):
        self.n = n
        self.window = tuple((int(i), int(b)) for i, b in window)
        if check:
            self._validate()

    def _validate(self) -> None:
        n = self.n
        if len(self.window) != n - 1:
            raise PermError("barred window has wrong length")
        seen = {0, n}
        for idx, (i, b) in enumerate(self.window, start=1):
            if b not in (0, 1):
                raise PermError(f"bar flag at {idx} must be 0 or 1")
            if i % n == 0:
                raise PermError(f"window[{idx}] lands on a multiple of n")
            for y in (i, -i):
                r = y % (2 * n)
                if r in seen:
                    raise PermError(f"window[{idx}] repeats residue {r}")
                seen.add(r)

    def __call__(self, p: Point | int) -> Point:
        if isinstance(p, int):
            p = (p, 0)
        n = self.n
        m = 2 * n
        i, b = p
        q, r = divmod(i, m)
        if r == 0 or r == n:
            img = (i, 0)
        elif r < n:
            img = shift_point(self.window[r - 1], n, q)
        else:
            img = shift_point(negate_point(self.window[m - r - 1], n), n, q + 1)
        return bar_point(img, n) if b else img

    def __mul__(self, other: "BarredPerm") -> "BarredPerm":
        if isinstance(other, AffPerm):
            other = bar_extend(other)
        return BarredPerm(self.n, [self(p) for p in other.window], check=False)

    def __rmul__(self, other):
        if isinstance(other, AffPerm):
            return bar_extend(other) * self
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, AffPerm):
            other = bar_extend(other)
        return isinstance(other, BarredPerm) and self.n == other.n and self.window == other.window

    def __hash__(self) -> int:
        if all(b == 0 for _, b in self.window):
            return hash((self.n, tuple(i for i, _ in self.window)))
        return hash((self.n, self.window))

    def inverse(self) -> "BarredPerm":
        n = self.n
        m = 2 * n
        inv: list[Point | None] = [None] * (n - 1)
        for j in range(1, n):
            i, b = self.window[j - 1]
            # pi(src) is the unbarred point (i, 0)
            src: Point = (j, 0)
            if b:
                src = underbar_point(src, n)
            q, r = divmod(i, m)
            if r < n:
                inv[r - 1] = shift_point(src, n, -q)
            else:
                inv[m - r - 1] = shift_point(negate_point(src, n), n, q + 1)
        return BarredPerm(n, inv, check=False)

    def barred_count(self) -> int:
        return sum(b for _, b in self.window)

    def is_unbarred(self) -> bool:
        return self.barred_count() == 0

    def in_bes(self) -> bool:
        return self.barred_count() % 2 == 0 and unbar_project(self).in_jes()

    def __repr__(self) -> str:
        return f"BarredPerm({self.n}, {list(self.window)})"

    def __str__(self) -> str:
        return f"n={self.n}; w=[{','.join(format_point(p) for p in self.window)}]"


def bar_extend(f: AffPerm) -> BarredPerm:
    return BarredPerm(f.n, [(x, 0) for x in f.window], check=False)


def unbar_project(g: BarredPerm) -> AffPerm:
    """Strip bars: a barred image keeps its index if it sits over a residue in
    ``1..n-1`` and moves up by ``2n`` if it sits over a negative residue."""
    n = g.n
    out = []
    for i, b in g.window:
        if b and i % (2 * n) > n:
            i += 2 * n
        out.append(i)
    return AffPerm(n, out)


def as_affperm(g: BarredPerm | AffPerm) -> AffPerm | None:
    if isinstance(g, AffPerm):
        return g
    if g.is_unbarred():
        return AffPerm(g.n, [i for i, _ in g.window], check=False)
    return None
