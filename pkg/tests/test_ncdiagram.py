import random

import pytest
from hypothesis import given, settings, strategies as st

from affnc import ncdiagram as nd
from affnc.affperm import AffPerm, loop_perm, reflection_perm
from affnc.coxelem import Placement, coxeter_perm
from affnc.interval import Interval

from .conftest import B_EXAMPLES, D_EXAMPLES


def trivial(p):
    return nd.NCDiagram(p, tuple(nd.Block(nd.TRIVIAL_PAIR, (((a, 0),),)) for a in range(1, p.n)))


def test_all_trivial(d8, b7):
    assert nd.perm(trivial(d8)).is_identity()
    assert nd.perm(trivial(b7)).is_identity()
    assert nd.diagram_rank(trivial(d8)) == 0


def test_p2_by_hand(d8):
    blocks = (
        nd.Block(nd.CURVE_PAIR, (((2, 0), (4, 0)),)),
        nd.Block(nd.CURVE_PAIR, (((3, 0), (5, 0)),)),
        nd.Block(nd.SYM_DISK, (((7, 1), (-7, -1)),), frozenset({"lower"})),
        nd.Block(nd.TRIVIAL_PAIR, (((1, 0),),)),
    )
    d = nd.NCDiagram(d8, blocks)
    assert nd.perm(d) == AffPerm(8, D_EXAMPLES[1])
    assert nd.diagram_rank(d) == 4
    assert nd.reconstruct(nd.perm(d), d8).blocks == tuple(sorted(blocks, key=nd.Block.key))


def test_coxeter_element_is_one_block(d5):
    d = nd.reconstruct(coxeter_perm(d5), d5)
    assert [b.kind for b in d.blocks] == [nd.SYM_NONDANGLING]
    assert d.blocks[0].interior == frozenset({"upper", "lower"})
    assert set(d.blocks[0].labels()) == {2, 3, -2, -3}
    assert nd.diagram_rank(d) == 5


def test_p12(d8):
    d = nd.reconstruct(AffPerm(8, D_EXAMPLES[11]), d8)
    kinds = {b.kind: b for b in d.blocks}
    assert set(kinds) == {nd.CURVE_PAIR, nd.DANGLING_PAIR}
    assert set(kinds[nd.CURVE_PAIR].labels()) == {1, -6}
    outer = set(kinds[nd.DANGLING_PAIR].labels())
    assert outer == {4, 7, -5, -3, -2}


def test_not_in_image(d5):
    l1 = loop_perm(1, 5)
    with pytest.raises(nd.NotInImage):
        nd.reconstruct(l1 * l1, d5)


@pytest.mark.parametrize("which", range(12))
def test_d_examples_round_trip(d8, which):
    f = AffPerm(8, D_EXAMPLES[which])
    d = nd.reconstruct(f, d8)
    assert nd.perm(d) == f
    assert nd.rank_check(d)


@pytest.mark.parametrize("which", range(10))
def test_b_examples_round_trip(b7, which):
    f = AffPerm(7, B_EXAMPLES[which])
    d = nd.reconstruct(f, b7)
    assert nd.perm(d) == f
    assert nd.rank_check(d)


def test_order_examples(d8):
    full = nd.reconstruct(coxeter_perm(d8), d8)
    p2 = nd.reconstruct(AffPerm(8, D_EXAMPLES[1]), d8)
    assert nd.diagram_leq(trivial(d8), p2)
    assert nd.diagram_leq(p2, full)
    assert nd.diagram_rank(full) == 8
    p = Placement.standard("D", 8)
    a = nd.reconstruct(reflection_perm(2, 4, 8), p)
    b = nd.reconstruct(reflection_perm(3, 5, 8), p)
    assert not nd.diagram_leq(a, b) and not nd.diagram_leq(b, a)


def test_text_form(d8):
    d = nd.reconstruct(AffPerm(8, D_EXAMPLES[1]), d8)
    assert "SymDisk[walk=(7,+1)(-7,-1); interior=lower]" in str(d)


def test_svg_deterministic(d8):
    d = nd.reconstruct(AffPerm(8, D_EXAMPLES[4]), d8)
    a = nd.render_svg(d)
    assert a == nd.render_svg(d) and a.startswith("<svg")


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_random_diagrams(seed):
    p = Placement.standard("D", 6)
    d = nd.random_diagram(p, random.Random(seed))
    f = nd.perm(d)
    assert nd.reconstruct(f, p) == d
    assert nd.diagram_rank(d) == Interval(p).rank(f)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_random_pairs_order(seed):
    p = Placement.standard("D", 5)
    I = Interval(p)
    rng = random.Random(seed)
    a, b = nd.random_diagram(p, rng, 1, I), nd.random_diagram(p, rng, 1, I)
    assert nd.diagram_leq(a, b) == I.leq_by_rank(nd.perm(a), nd.perm(b))


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_random_b_diagrams(seed):
    p = Placement.standard("B", 5)
    d = nd.random_diagram(p, random.Random(seed))
    assert nd.reconstruct(nd.perm(d), p) == d
    assert nd.rank_check(d)
