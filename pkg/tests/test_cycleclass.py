from fractions import Fraction

from hypothesis import given

from affnc.affperm import AffPerm, loop_perm
from affnc.coxelem import Placement, coxeter_perm, placement_from_word, source_sink_orbit
from affnc.cycleclass import (
    INFINITE,
    NONSYM,
    ON_LIST1,
    ON_LIST2,
    SYM_LOWER,
    TINY_LOWER,
    TINY_UPPER,
    decompose,
    list_status,
    rho,
    signature,
)

from .conftest import D_WORD, elements

P2 = AffPerm(8, [1, 4, 5, 2, 3, 10, 9])


def test_identity_classes(d5):
    cls = decompose(AffPerm.identity(5), d5)
    assert len(cls) == 4 and all(c.kind == NONSYM and len(c.rep) == 1 for c in cls)
    assert rho(AffPerm.identity(5), d5) == 0


def test_coxeter_classes(d5):
    cls = {(c.kind, c.rep, c.k) for c in decompose(coxeter_perm(d5), d5)}
    assert cls == {(INFINITE, (2, 3), 1), (TINY_UPPER, (1, -1), 0), (TINY_LOWER, (4, 6), 1)}


def test_example_p2(d8):
    kinds = sorted(c.kind for c in decompose(P2, d8))
    assert kinds == sorted([NONSYM] * 3 + [TINY_LOWER, SYM_LOWER])
    sym = [c for c in decompose(P2, d8) if c.kind == SYM_LOWER][0]
    assert sym.k == 1
    assert rho(P2, d8) == 4


def test_rank_of_c_small():
    for kind, ns in (("D", range(5, 9)), ("B", range(4, 8))):
        for n in ns:
            p = Placement.standard(kind, n)
            assert rho(coxeter_perm(p), p) == n


def test_signatures(d5):
    s = signature(coxeter_perm(d5), d5)
    assert str(s) == "Inf^1 Tiny^2 NonSym^0" and list_status(s) == ON_LIST1
    s = signature(AffPerm.identity(5), d5)
    assert str(s) == "NonSym^4" and list_status(s) == ON_LIST1
    l2 = loop_perm(1, 5) * loop_perm(1, 5)
    s = signature(l2, d5)
    assert s.shape() == "NonflatInf^1" and list_status(s) == ON_LIST2


def test_rank_is_a_half_integer_formula(d8):
    r = rho(P2, d8)
    assert isinstance(r, Fraction) and r == Fraction(7 - 3) - Fraction(1, 2) + Fraction(1, 2)


@given(elements(6))
def test_rank_of_inverse(f):
    p = Placement.standard("D", 6)
    assert rho(f, p) == rho(f.inverse(), p)


@given(elements(6))
def test_classes_cover_all_residues(f):
    p = Placement.standard("D", 6)
    seen = set()
    for c in decompose(f, p):
        r = c.residues()
        assert not (r & seen)
        seen |= r
    assert seen == {x for x in range(12) if x % 6}


def test_rank_of_c_on_orbit():
    for w in source_sink_orbit(D_WORD, "D")[:20]:
        p = placement_from_word(w, "D")
        assert rho(coxeter_perm(p), p) == 8
