"""Coxeter elements as placements of the labels on the annulus."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .affperm import AffPerm, PermError, simple_reflections, word_product


class PlacementError(ValueError):
    pass


@dataclass(frozen=True)
class Placement:
    """Which labels ``+-1..+-(n-1)`` sit on the outer boundary, the inner
    boundary and the double points.

    ``upper`` and ``lower`` are positive labels; ``upper`` is ``None`` in
    type B, where the second fixed point of the symmetry carries no label.
    """

    kind: str
    n: int
    upper: int | None
    lower: int
    outer: frozenset

    def __post_init__(self):
        n = self.n
        if self.kind not in ("D", "B"):
            raise PlacementError(f"unknown type {self.kind!r}")
        if self.kind == "D":
            if self.upper not in (1, 2):
                raise PlacementError("upper double must be 1 or 2")
        elif self.upper is not None:
            raise PlacementError("type B has no upper double")
        if self.lower not in (n - 1, n - 2):
            raise PlacementError("lower double must be n-1 or n-2")
        doubles = {self.lower} | ({self.upper} if self.upper else set())
        if len(doubles) != (2 if self.kind == "D" else 1):
            raise PlacementError("double points coincide")
        seen = set(doubles)
        for a in self.outer:
            if a == 0 or abs(a) >= n or abs(a) in seen:
                raise PlacementError(f"bad outer point {a}")
            seen.add(abs(a))
        if len(seen) != n - 1:
            raise PlacementError("outer and double points do not cover 1..n-1")

    @property
    def inner(self) -> frozenset:
        return frozenset(-a for a in self.outer)

    @property
    def doubles(self) -> tuple[int, ...]:
        return tuple(x for x in (self.upper, self.lower) if x)

    def outer_sorted(self) -> list[int]:
        return sorted(self.outer)

    def side(self, i: int) -> str:
        """Classify an integer not divisible by ``n`` by its residue:
        ``outer``, ``inner``, ``upper`` or ``lower``."""
        n = self.n
        r = i % (2 * n)
        if r % n == 0:
            raise PlacementError(f"{i} is a multiple of n")
        a = r if r < n else r - 2 * n
        if abs(a) == self.upper:
            return "upper"
        if abs(a) == self.lower:
            return "lower"
        return "outer" if a in self.outer else "inner"

    def __str__(self) -> str:
        up = "none" if self.upper is None else f"+{self.upper}"
        outer = ",".join(str(a) for a in sorted(self.outer))
        return f"type={self.kind}; n={self.n}; upper={up}; lower=+{self.lower}; outer={{{outer}}}"

    @classmethod
    def parse(cls, text: str) -> "Placement":
        fields = dict(
            (k.strip(), v.strip())
            for k, v in (part.split("=", 1) for part in text.split(";") if part.strip())
        )
        try:
            up = fields["upper"]
            outer = fields["outer"].strip("{} ")
            return cls(
                fields["type"],
                int(fields["n"]),
                None if up == "none" else int(up),
                int(fields["lower"]),
                frozenset(int(t) for t in re.split(r"[,\s]+", outer) if t),
            )
        except KeyError as e:
            raise PlacementError(f"missing field {e}") from None

    @classmethod
    def standard(cls, kind: str, n: int) -> "Placement":
        return placement_from_word(list(range(n)), kind)


def _check_word(word: Sequence[int], n: int | None = None) -> int:
    n = len(word) if n is None else n
    if sorted(word) != list(range(n)):
        raise PlacementError(f"word {list(word)} is not a permutation of 0..{n - 1}")
    return n


def placement_from_word(word: Sequence[int], kind: str) -> Placement:
    kind = kind.upper()
    n = _check_word(word)
    pos = {s: k for k, s in enumerate(word)}

    def before(i, j):
        return pos[i] < pos[j]

    lower = n - 1 if before(n - 1, n - 3) == before(n - 2, n - 3) else n - 2
    outer = set()
    if kind == "D":
        if n < 5:
            raise PlacementError("type D needs n >= 5")
        upper = 1 if before(0, 2) == before(1, 2) else 2
        if upper != 1:
            outer.add(1 if before(0, 2) else -1)
        first = 2
    elif kind == "B":
        if n < 4:
            raise PlacementError("type B needs n >= 4")
        upper = None
        first = 1
    else:
        raise PlacementError(f"unknown type {kind!r}")
    for i in range(first, n - 1):
        if i in (upper, lower):
            continue
        outer.add(i if before(i - 1, i) else -i)
    if lower != n - 1:
        outer.add(n - 1 if before(n - 3, n - 1) else -(n - 1))
    return Placement(kind, n, upper, lower, frozenset(outer))


def coxeter_perm(p: Placement) -> AffPerm:
    """The Coxeter element encoded by a placement: one flat infinite cycle
    through the outer points and one 2-cycle per double point."""
    n = p.n
    a = p.outer_sorted()
    mapping = {a[k]: a[k + 1] for k in range(len(a) - 1)}
    mapping[a[-1]] = a[0] + 2 * n
    if p.upper:
        mapping[p.upper] = -p.upper
    mapping[p.lower] = -p.lower + 2 * n
    return AffPerm.from_map(n, mapping)


def placement_from_perm(c: AffPerm, kind: str) -> Placement:
    """Read a placement back from a permutation shaped like a Coxeter element."""
    n = c.n
    upper = None
    lower = None
    for i in range(1, n):
        y = c(i)
        if y == -i:
            upper = i
        elif y == 2 * n - i:
            lower = i
    outer = set()
    for i in range(1, n):
        if i in (upper, lower):
            continue
        # outer points move up to the next outer point, inner points move down
        outer.add(i if c(i) > i else -i)
    try:
        p = Placement(kind, n, upper, lower, frozenset(outer))
    except PlacementError as e:
        raise PlacementError(f"not a Coxeter permutation: {e}") from None
    if coxeter_perm(p) != c:
        raise PlacementError("permutation is not the Coxeter element of any placement")
    return p


def source_sink(word: Sequence[int], s: int) -> list[int]:
    word = list(word)
    if word and word[0] == s:
        return word[1:] + [s]
    if word and word[-1] == s:
        return [s] + word[:-1]
    raise PlacementError(f"s{s} is neither initial nor final in {word}")


def conjugate_placement(p: Placement, s: int) -> Placement:
    """Placement of ``s c s`` where ``c`` is the Coxeter element of ``p``."""
    gen = simple_reflections(p.kind, p.n)[s]
    return placement_from_perm(gen * coxeter_perm(p) * gen, p.kind)


def diagram_edges(kind: str, n: int) -> set[frozenset]:
    """Edges of the Coxeter diagram on ``0..n-1``."""
    kind = kind.upper()
    if kind == "C":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D":
        edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    elif kind == "B":
        edges = [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    else:
        raise PlacementError(f"unknown type {kind!r}")
    return {frozenset(e) for e in edges}


def orientation(word: Sequence[int], kind: str) -> frozenset:
    """Oriented edges ``(i, j)`` meaning ``s_i`` precedes ``s_j``."""
    pos = {s: k for k, s in enumerate(word)}
    out = set()
    for e in diagram_edges(kind, len(word)):
        i, j = sorted(e)
        out.add((i, j) if pos[i] < pos[j] else (j, i))
    return frozenset(out)


def commutation_normal_form(word: Sequence[int], kind: str) -> tuple[int, ...]:
    """Lexicographically least word equal to ``word`` up to commutations."""
    n = _check_word(word)
    arrows = orientation(word, kind)
    preds = {s: {i for i, j in arrows if j == s} for s in range(n)}
    done: list[int] = []
    left = set(range(n))
    while left:
        s = min(x for x in left if preds[x] <= set(done))
        done.append(s)
        left.remove(s)
    return tuple(done)


def source_sink_orbit(word: Sequence[int], kind: str) -> list[tuple[int, ...]]:
    """All commutation classes reachable by source-sink moves, as normal forms."""
    start = commutation_normal_form(word, kind)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        arrows = orientation(w, kind)
        n = len(w)
        for s in range(n):
            is_source = all(i == s for i, j in arrows if s in (i, j))
            is_sink = all(j == s for i, j in arrows if s in (i, j))
            if not (is_source or is_sink):
                continue
            # move s to the front of its commutation class, then rotate
            arranged = [s] + [x for x in w if x != s] if is_source else [x for x in w if x != s] + [s]
            nxt = commutation_normal_form(source_sink(arranged, s), kind)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return sorted(seen)


def same_coxeter_element(w1: Iterable[int], w2: Iterable[int], kind: str) -> bool:
    w1, w2 = list(w1), list(w2)
    return commutation_normal_form(w1, kind) == commutation_normal_form(w2, kind)


def coxeter_word_perm(word: Sequence[int], kind: str) -> AffPerm:
    n = _check_word(word)
    return word_product(kind, n, word)


__all__ = [
    "Placement",
    "PlacementError",
    "PermError",
    "placement_from_word",
    "placement_from_perm",
    "coxeter_perm",
    "source_sink",
    "conjugate_placement",
    "commutation_normal_form",
    "source_sink_orbit",
    "same_coxeter_element",
    "coxeter_word_perm",
]
