import pytest
from hypothesis import given, strategies as st

from affnc.affperm import (
    AffPerm,
    BarredPerm,
    PermError,
    Token,
    apply,
    bar_extend,
    compose,
    loop,
    loop_parity_shift,
    loop_perm,
    membership,
    neg_big_counts_sweep,
    reflection,
    reflection_perm,
    simple_reflections,
    unbar_project,
    word_product,
)
from affnc.cycleclass import decompose

from .conftest import elements, signed_windows


def test_identity_compose():
    e = AffPerm.identity(5)
    assert compose(e, e) == e


def test_reflection_is_involution():
    r = reflection_perm(1, 2, 5)
    assert compose(r, r).is_identity()


def test_coxeter_product_cycles():
    # the product of the simple reflections in the order 3 6 2 0 1 5 7 4
    c = word_product("D", 8, (3, 6, 2, 0, 1, 5, 7, 4))
    orbit = [4]
    for _ in range(5):
        orbit.append(c(orbit[-1]))
    assert orbit == [4, 7, 11, 13, 14, 20]  # -5, -3, -2 shifted by 16, then 4 + 16
    assert sorted(str(cl) for cl in decompose(c)) == ["(1 -1)_16", "(6 10)_16", "inf[(4 7 11 13 14)+16]"]


def test_apply_examples():
    assert apply(AffPerm.identity(5), 7) == 7
    l1 = loop_perm(1, 5)
    assert l1(1) == 11
    assert l1(9) == -1


def test_membership_examples():
    assert all(membership(AffPerm.identity(5)).values())
    m = membership(loop_perm(1, 5))
    assert m["inJES"] and not m["inDES"]
    assert loop_perm(1, 5).neg_big_counts() == (1, 1)
    s = AffPerm.from_map(5, {1: -1})
    assert s.neg_big_counts() == (1, 0)
    m = membership(s)
    assert m["inSES"] and not m["inDES"] and not m["inJES"]


def test_loop_parity_shift_examples():
    e = AffPerm.identity(5)
    assert loop_parity_shift(e, 1) == (1, 1)
    assert loop_parity_shift(loop_perm(1, 5), -1) == (-1, -1)
    s0 = simple_reflections("D", 5)[0]
    db, dn = loop_parity_shift(s0, 2)
    assert abs(db) == 1 and abs(dn) == 1


def test_bad_windows_rejected():
    with pytest.raises(PermError):
        AffPerm(5, [1, 2, 3])
    with pytest.raises(PermError):
        AffPerm(5, [1, 1, 3, 4])
    with pytest.raises(PermError):
        AffPerm(5, [5, 2, 3, 4])
    with pytest.raises(PermError):
        AffPerm.parse("n=5 w=[1,2,3,4]")


def test_parse_round_trip():
    f = AffPerm(8, [1, 4, 5, 2, 3, 10, 9])
    assert str(f) == "n=8; w=[1,4,5,2,3,10,9]"
    assert AffPerm.parse(str(f)) == f


def test_tokens():
    assert reflection(2, 3, 5) == reflection(3, 2, 5)
    assert loop(1, 5).perm(5) == loop_perm(1, 5)
    assert loop(1, 5).kind == Token.LOOP
    with pytest.raises(PermError):
        loop(5, 5)


def test_barred_examples():
    e = AffPerm.identity(5)
    assert bar_extend(e) == e
    assert unbar_project(bar_extend(loop_perm(1, 5))) == loop_perm(1, 5)
    f = BarredPerm(5, [(1, 1), (2, 0), (3, 0), (4, 1)])
    assert unbar_project(f).in_jes()
    assert f.in_bes()
    assert f * f.inverse() == e


@given(elements(5), elements(5), elements(5))
def test_group_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert (f * f.inverse()).is_identity()
    assert (f.inverse() * f).is_identity()


@given(signed_windows(6), st.integers(-30, 30))
def test_commutes_with_shift_and_negation(f, i):
    n = f.n
    assert f(i + 2 * n) == f(i) + 2 * n
    assert f(-i) == -f(i)


@given(signed_windows(5))
def test_counts_match_sweep(f):
    assert f.neg_big_counts() == neg_big_counts_sweep(f)


@given(elements(5))
def test_products_of_generators_are_jointly_even(f):
    assert f.in_jes()


@given(elements(5), elements(5))
def test_bar_extend_is_a_homomorphism(f, g):
    assert bar_extend(f * g) == bar_extend(f) * bar_extend(g)
    assert unbar_project(bar_extend(f)) == f


@given(signed_windows(6))
def test_text_round_trip(f):
    assert AffPerm.parse(str(f)) == f
