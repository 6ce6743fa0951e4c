import random

import pytest
from hypothesis import given, settings, strategies as st

from affnc import ncdiagram as nd
from affnc.affperm import AffPerm, PermError, loop_perm, simple_reflections
from affnc.coxelem import Placement, coxeter_perm, placement_from_word
from affnc.folding import (
    BInterval,
    PrimedIndex,
    chi,
    chi_fixed,
    eta,
    eta_inv,
    fold_diagrams,
    lift,
    lower,
    prime_swap,
    unfold_placement,
    unfold_word,
    zeta,
    zeta_inv,
)
from affnc.interval import Interval

from .conftest import B_EXAMPLES, signed_windows


def test_primed_order():
    n = 5
    pts = [PrimedIndex.from_int(j, n) for j in range(-14, 15)]
    assert [p.to_int() for p in pts] == list(range(-14, 15))
    assert str(PrimedIndex(11, True, n)) == "11'"
    with pytest.raises(PermError):
        PrimedIndex(2, True, n)
    assert -PrimedIndex(1, True, n) == PrimedIndex(-1, True, n)
    assert PrimedIndex(-1, True, n).shift() == PrimedIndex(9, True, n)


def test_lift_lower_round_trip():
    for i in range(-30, 31):
        assert lower(lift(i, 6), 6) == PrimedIndex(i, False, 6)


def test_eta_examples():
    assert eta(AffPerm.identity(5)).is_identity()
    s0 = simple_reflections("B", 5)[0]
    # ((1 -1)) together with the swap of 1' and (-1)'
    assert eta(s0) == AffPerm(6, [-1, -2, 3, 4, 5])
    l1 = loop_perm(1, 5)
    assert eta_inv(eta(l1)) == l1


def test_eta_of_coxeter_element():
    for w in ((0, 1, 2, 3, 4), (2, 0, 4, 1, 3)):
        p = placement_from_word(w, "B")
        assert eta(coxeter_perm(p)) == coxeter_perm(unfold_placement(p))
        assert coxeter_perm(unfold_placement(p)) == coxeter_perm(placement_from_word(unfold_word(w), "D"))


def test_chi():
    s = prime_swap(6)
    assert (s * s).is_identity()
    f = AffPerm(6, [1, 3, 2, 4, 5])
    assert chi(chi(f)) == f


def test_eta_inv_rejects_unfixed():
    g = AffPerm(6, [2, 1, 3, 4, 5])
    assert not chi_fixed(g)
    with pytest.raises(PermError):
        eta_inv(g)


@given(signed_windows(5))
def test_eta_image_fixed(f):
    g = eta(f)
    assert chi_fixed(g)
    assert eta_inv(g) == f


@given(signed_windows(5), signed_windows(5))
def test_eta_homomorphism(f, g):
    assert eta(f * g) == eta(f) * eta(g)


def test_zeta_trivial():
    p = Placement.standard("B", 5)
    d = nd.reconstruct(AffPerm.identity(5), p)
    z = zeta(d)
    assert all(b.kind == nd.TRIVIAL_PAIR for b in z.blocks)
    assert len(z.blocks) == 5
    assert zeta_inv(z, p) == d


def test_zeta_full_annulus(b7):
    d = nd.reconstruct(coxeter_perm(b7), b7)
    z = zeta(d)
    assert [b.kind for b in z.blocks] == [nd.SYM_NONDANGLING]
    assert z.blocks[0].interior == frozenset({"upper", "lower"})
    assert nd.perm(z) == eta(coxeter_perm(b7))


@pytest.mark.parametrize("which", range(10))
def test_zeta_examples(b7, which):
    f = AffPerm(7, B_EXAMPLES[which])
    d = nd.reconstruct(f, b7)
    z = zeta(d)
    assert nd.perm(z) == eta(f)
    assert zeta_inv(z, b7) == d
    assert nd.reconstruct(nd.perm(z), z.placement) == z


def test_fold_random_small():
    assert fold_diagrams(Placement.standard("B", 5), count=60, seed=4) == []


def test_b_interval_members(b7):
    I = BInterval(b7)
    for w in B_EXAMPLES:
        assert I.member(AffPerm(7, w))
    assert I.rank(I.c) == 7


def test_b_members_unfold_to_members():
    p = Placement.standard("B", 5)
    B = BInterval(p)
    D = Interval(unfold_placement(p))
    rng = random.Random(2)
    els = sorted(B.enumerate_down(1))
    for f in rng.sample(els, 30):
        assert D.member(eta(f))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_zeta_random(seed):
    p = Placement.standard("B", 6)
    d = nd.random_diagram(p, random.Random(seed))
    assert nd.perm(d) == eta_inv(nd.perm(zeta(d)))
    assert zeta_inv(zeta(d), p) == d
