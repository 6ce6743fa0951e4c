"""Cycle classes of an affine signed permutation and the rank statistic.

A cycle class is a cycle together with all its translates by multiples of
``2n`` and their negatives. Classes come in four flavours: nonsymmetric
finite, symmetric, tiny (2-cycles swapping the two copies of a double
point) and infinite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .affperm import AffPerm
from .coxelem import Placement, PlacementError

NONSYM = "NonSymFinite"
SYM_UPPER = "SymUpper"
SYM_LOWER = "SymLower"
TINY_UPPER = "TinyUpper"
TINY_LOWER = "TinyLower"
INFINITE = "Infinite"

SYM_KINDS = (SYM_UPPER, SYM_LOWER)
TINY_KINDS = (TINY_UPPER, TINY_LOWER)


@dataclass(frozen=True)
class CycleClass:
    """One class of cycles.

    ``rep`` is one period of a representative cycle. For symmetric classes
    ``k`` is the shift in ``(a1 .. am, -a1 + 2kn, .., -am + 2kn)`` for the
    principal representative (0 or 1). For tiny classes ``k`` is the same
    quantity for the principal tiny cycle. For infinite classes ``k > 0`` is
    the shift after one period, and the class holds ``2k`` cycles.
    """

    kind: str
    rep: tuple
    k: int
    n: int = field(compare=False)

    @property
    def is_sym(self) -> bool:
        return self.kind in SYM_KINDS

    @property
    def is_tiny(self) -> bool:
        return self.kind in TINY_KINDS

    @property
    def upper(self) -> bool:
        """Upper or lower flavour of a symmetric or tiny class."""
        return self.kind in (SYM_UPPER, TINY_UPPER)

    @property
    def principal(self) -> bool:
        """Representatives are always stored in principal form."""
        return True

    @property
    def flat(self) -> bool:
        return self.kind == INFINITE and self.k == 1

    def residues(self) -> frozenset:
        m = 2 * self.n
        return frozenset(x % m for x in self.rep) | frozenset(-x % m for x in self.rep)

    def __str__(self) -> str:
        body = " ".join(str(x) for x in self.rep)
        m = 2 * self.n
        if self.kind == INFINITE:
            return f"inf[({body})+{self.k * m}]"
        if self.kind == NONSYM:
            return f"(({body}))_{m}"
        return f"({body})_{m}"


def _cycle_from(f: AffPerm, start: int) -> tuple[list[int], int]:
    """Follow ``start`` until the orbit returns to its residue mod 2n.

    Returns the visited entries and the shift ``k`` with the return point
    equal to ``start + 2kn``.
    """
    m = 2 * f.n
    seq = [start]
    x = f(start)
    while (x - start) % m:
        seq.append(x)
        x = f(x)
    return seq, (x - start) // m


def decompose(f: AffPerm, placement: Placement | None = None) -> list[CycleClass]:
    """All non-fixed cycle classes of ``f`` plus singleton nonsymmetric classes.

    Fixed points count as nonsymmetric finite classes (singletons), matching
    the convention that the identity has ``n - 1`` such classes.
    """
    n = f.n
    m = 2 * n
    if placement is not None and placement.n != n:
        raise PlacementError("placement rank does not match the permutation")
    up = placement.upper if placement is not None else None
    low = placement.lower if placement is not None else None
    seen: set[int] = set()
    out: list[CycleClass] = []
    for r in range(1, m):
        if r == n or r in seen:
            continue
        seq, k = _cycle_from(f, r)
        res = {x % m for x in seq}
        neg = {-x % m for x in seq}
        seen |= res | neg
        if k != 0:
            if k < 0:
                seq, k = [-x for x in seq], -k
            out.append(CycleClass(INFINITE, _infinite_rep(seq, k, n), k, n))
            continue
        if not (res & neg):
            out.append(CycleClass(NONSYM, _nonsym_rep(seq, n), 0, n))
            continue
        out.append(_symmetric_class(seq, n, up, low))
    return out


def _nonsym_rep(seq: list[int], n: int) -> tuple:
    # choose the translate/negation whose least-absolute entry lies in 1..n-1
    m = 2 * n
    best = None
    for s in (seq, [-x for x in seq]):
        for x in s:
            if 0 < x % m < n:
                shift = x % m - x
                cand = _rotate_to(s, x, shift)
                if best is None or cand < best:
                    best = cand
    return best


def _rotate_to(seq: list[int], start: int, shift: int) -> tuple:
    i = seq.index(start)
    rot = seq[i:] + seq[:i]
    return tuple(x + shift for x in rot)


def _infinite_rep(seq: list[int], k: int, n: int) -> tuple:
    """Period of the cycle read from its least positive entry over all translates."""
    m = 2 * n
    best = None
    for i, x in enumerate(seq):
        if x % m == 0:
            continue
        # entries before x come back one period later
        rot = seq[i:] + [y + k * m for y in seq[:i]]
        shift = x % m - x
        cand = tuple(y + shift for y in rot)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def _symmetric_class(seq: list[int], n: int, up, low) -> CycleClass:
    m = 2 * n
    L = len(seq)
    half = L // 2
    k = (seq[0] + seq[half]) // m
    # principal representative: shift so that k is 0 or 1
    j = k // 2
    seq = [x - j * m for x in seq]
    k -= 2 * j
    if L == 2:
        a = seq[0] % m
        a = a if a < n else a - m
        if up is not None and abs(a) == up and k == 0:
            return CycleClass(TINY_UPPER, (up, -up), 0, n)
        if low is not None and abs(a) == low and k == 1:
            return CycleClass(TINY_LOWER, (low, -low + m), 1, n)
    # start at the smallest positive entry
    pos = [x for x in seq if x > 0]
    start = min(pos) if pos else max(seq)
    i = seq.index(start)
    rep = tuple(seq[i:] + seq[:i])
    return CycleClass(SYM_UPPER if k == 0 else SYM_LOWER, rep, k, n)


# rank statistic


def _counts(classes):
    ns = sum(1 for c in classes if c.kind == NONSYM)
    sym = sum(1 for c in classes if c.is_sym)
    tiny = sum(1 for c in classes if c.is_tiny)
    return ns, sym, tiny


def upper_parity(f: AffPerm) -> int:
    """Type B correction: 1 when the folded permutation needs the 2-cycle on the
    extra upper double point, i.e. when ``#neg + #big`` is odd."""
    neg, big = f.neg_big_counts()
    return (neg + big) % 2


def rho(f: AffPerm, placement: Placement, classes=None) -> Fraction:
    """The rank statistic ``(n-1) - #NonSym - #Sym/2 + #Tiny/2``.

    In type B the folded extra double point contributes half a tiny class
    exactly when ``#neg + #big`` is odd.
    """
    if classes is None:
        classes = decompose(f, placement)
    ns, sym, tiny = _counts(classes)
    value = Fraction(f.n - 1 - ns) - Fraction(sym, 2) + Fraction(tiny, 2)
    if placement.kind == "B":
        value += Fraction(upper_parity(f), 2)
    return value


def rho_int(f: AffPerm, placement: Placement, classes=None) -> int:
    value = rho(f, placement, classes)
    if value.denominator != 1:
        raise ValueError(f"rank statistic {value} is not an integer for {f}")
    return int(value)


# signatures


@dataclass(frozen=True)
class Signature:
    inf_flat: int
    inf_nonflat: int
    tiny: int
    sym: int
    nonsym: int
    tiny_upper: bool = False
    tiny_lower: bool = False
    sym_upper: int = 0
    sym_lower: int = 0

    def shape(self) -> str:
        parts = []
        if self.inf_flat:
            parts.append(f"Inf^{self.inf_flat}")
        if self.inf_nonflat:
            parts.append(f"NonflatInf^{self.inf_nonflat}")
        if self.tiny:
            parts.append(f"Tiny^{self.tiny}")
        if self.sym:
            parts.append(f"Sym^{self.sym}")
        return " ".join(parts) if parts else ""

    def __str__(self) -> str:
        head = self.shape()
        return (head + " " if head else "") + f"NonSym^{self.nonsym}"

    def matched(self) -> bool:
        """Every symmetric class has the flavour of a present tiny class and
        no two symmetric classes share a flavour."""
        if self.sym_upper > 1 or self.sym_lower > 1:
            return False
        if self.sym_upper and not self.tiny_upper:
            return False
        if self.sym_lower and not self.tiny_lower:
            return False
        return True


def signature(f: AffPerm, placement: Placement, classes=None) -> Signature:
    if classes is None:
        classes = decompose(f, placement)
    tiny_up = any(c.kind == TINY_UPPER for c in classes)
    tiny_low = any(c.kind == TINY_LOWER for c in classes)
    if placement.kind == "B" and upper_parity(f):
        tiny_up = True
    return Signature(
        inf_flat=sum(1 for c in classes if c.kind == INFINITE and c.k == 1),
        inf_nonflat=sum(1 for c in classes if c.kind == INFINITE and c.k != 1),
        tiny=int(tiny_up) + int(tiny_low),
        sym=sum(1 for c in classes if c.is_sym),
        nonsym=sum(1 for c in classes if c.kind == NONSYM),
        tiny_upper=tiny_up,
        tiny_lower=tiny_low,
        sym_upper=sum(1 for c in classes if c.kind == SYM_UPPER),
        sym_lower=sum(1 for c in classes if c.kind == SYM_LOWER),
    )


LIST1 = (
    "Inf^1 Tiny^2",
    "Inf^2",
    "Inf^1",
    "Tiny^1 Sym^1",
    "Tiny^2 Sym^2",
    "Inf^1 Tiny^1 Sym^1",
    "Tiny^2",
    "",
)

LIST2 = (
    "Inf^1 NonflatInf^1",
    "Sym^2",
    "Inf^1 Sym^2",
    "NonflatInf^1 Sym^2",
    "Tiny^1 Sym^3",
    "Inf^1 Sym^3",
    "NonflatInf^1",
)

T_SHAPES = ("Inf^1 Tiny^2", "Inf^2", "Tiny^1 Sym^1", "Tiny^2 Sym^2", "")

ON_LIST1 = "OnList1"
ON_LIST2 = "OnList2"
NEITHER = "Neither"


def list_status(sig: Signature) -> str:
    shape = sig.shape()
    if shape in LIST1 and sig.matched():
        return ON_LIST1
    if shape in LIST2:
        if shape in ("Sym^2", "Inf^1 Sym^2", "NonflatInf^1 Sym^2"):
            # these are the unmatched two-symmetric shapes
            return ON_LIST2 if sig.sym_upper == 1 and sig.sym_lower == 1 else NEITHER
        return ON_LIST2
    return NEITHER


def in_t_shapes(sig: Signature) -> bool:
    return sig.shape() in T_SHAPES and sig.matched()
