import pytest
import sympy as sp
from hypothesis import given, settings

from affnc import coxplane as cp
from affnc import ncdiagram as nd
from affnc.affperm import BarredPerm, bar_extend, loop, loop_perm, reflection, unbar_project
from affnc.coxelem import Placement, PlacementError, coxeter_perm, placement_from_word
from affnc.folding import chi_barred, unfold_placement
from affnc.mcsul import (
    DOWN,
    UP,
    assemble_finite_lattice,
    b_formula_differences,
    b_no_completion_needed,
    c1_diagram,
    c123,
    decomposition_report,
    f_doub,
    horizontal_by_search,
    horizontal_reflections,
    is_two_point_pair,
    lattice_report,
    letter_bookkeeping,
    loop_identities,
    mcsul3_report,
    nonlattice_witnesses,
    orthogonal_decomposition,
    transport,
    translations_in_interval,
)

from .conftest import D_WORD, coxeter_words


@pytest.fixture(scope="module")
def L5():
    return assemble_finite_lattice(Placement.standard("D", 5))


def std(n):
    return Placement.standard("D", n)


def test_horizontal_list_n5():
    got = {h.token for h in horizontal_reflections(std(5))}
    want = {reflection(2, 3, 5), reflection(2, 3 - 10, 5)}
    want |= {reflection(1, b, 5) for b in (4, 6, -6, -4)}
    assert got == want


@pytest.mark.parametrize("word", [tuple(range(6)), (2, 0, 1, 4, 3), D_WORD])
def test_horizontal_two_routes(word):
    p = placement_from_word(word, "D")
    hs = horizontal_reflections(p)
    assert {h.token for h in hs} == horizontal_by_search(p)
    form = cp.omega_form(transport(p).word)
    dx = form.linear(form.R.delta)
    for h in hs:
        root = cp.e_vec(h.token.b, p.n) - cp.e_vec(h.token.a, p.n)
        assert (dx * root)[0, 0] == 0
        assert is_two_point_pair(h.token.perm(p.n), p)


def test_non_horizontal_reflection_is_not_a_same_side_pair():
    p = std(6)
    assert not is_two_point_pair(reflection(1, 2, 6).perm(6), p)


def test_translation_vector_example():
    recs = {(r.a, r.b): r for r in translations_in_interval(std(5))}
    rho = lambda *c: [sp.Integer(x) for x in c]
    # (rho_2 - rho_1 - rho_0) + (rho_0 - rho_1)
    assert recs[(2, 1)].vector == rho(0, -2, 1, 0, 0)
    assert recs[(2, 1)].out_vector == rho(-1, -1, 1, 0, 0)
    assert recs[(2, 1)].doub_vector == rho(1, -1, 0, 0, 0)


def test_translations_act_by_translation():
    p = std(6)
    R = cp.build_root_data("D", 6)
    for r in translations_in_interval(p, check_membership=False):
        D = cp.linear_matrix(r.perm) - sp.eye(7)
        for j in range(7):
            col = D.col(j)
            assert col == col[6] * R.delta


def test_translation_b_example():
    p = Placement.standard("B", 7)
    recs = {(r.a, r.b): r for r in translations_in_interval(p)}
    r = recs[(1, 6)]
    assert r.perm == loop_perm(1, 7) * loop_perm(-6, 7)
    assert r.loops == (loop(1, 7), loop(-6, 7))


def test_b_formula_differences():
    for n in (5, 7):
        diffs = b_formula_differences(Placement.standard("B", n))
        assert {(a, b) for a, b, _, _ in diffs} == {(1, n - 1), (1, -(n - 1))}
        for _, _, got, shown in diffs:
            assert got[0] == 2 * shown[0] and got[1:] == shown[1:]


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_decomposition_and_components(n):
    assert decomposition_report(std(n)) == []
    assert mcsul3_report(std(n)) == []


def test_decomposition_general():
    assert decomposition_report(placement_from_word(D_WORD, "D")) == []
    dec = orthogonal_decomposition(std(5))
    assert [len(U) for U in dec.bases] == [1, 1, 1, 1]


def test_fdoub_examples():
    F = f_doub(std(5))
    assert F[UP, UP] == BarredPerm(5, [(1, 1), (2, 0), (3, 0), (4, 1)])
    assert F[UP, UP] * F[UP, DOWN] == bar_extend(loop_perm(1, 5))
    assert all(loop_identities(F).values())
    for f in F.elements():
        assert f.in_bes() and unbar_project(f).in_jes()
    assert F[UP, UP].inverse() == F[DOWN, DOWN]


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_c123(n):
    parts = c123(std(n))
    assert bar_extend(parts.c1) * parts.c2 * parts.c3 == coxeter_perm(std(n))
    assert nd.perm(c1_diagram(std(n))) == parts.c1
    assert nd.diagram_rank(c1_diagram(std(n))) == n - 3
    assert letter_bookkeeping(std(n)) == (n + 1, 2 * n)


def test_c123_type_b_rejected():
    with pytest.raises(PlacementError):
        c123(Placement.standard("B", 5))


def test_finite_sizes(L5):
    assert len(L5.I2) == len(L5.I3) == 6
    assert len(L5.C23) == 36 and len(L5.new) == 18 and len(L5.perm23) == 18


def test_named_new_elements(L5):
    n = 5
    x = L5.parts.c2 * bar_extend(reflection(1, -n + 1, n).perm(n))
    y = L5.parts.c3 * bar_extend(reflection(1, n - 1, n).perm(n))
    new = set(L5.new)
    for z in (x, y):
        assert z in new
        below = [w for w in new if w != z and L5.C23.le(w, z)]
        # height two inside New
        assert any(L5.C23.le(u, v) and u != v for u in below for v in below)
        assert not any(
            L5.C23.le(u, v) and L5.C23.le(v, w) and len({u, v, w}) == 3 for u in below for v in below for w in below
        )


def test_nonlattice_witness(L5):
    w = nonlattice_witnesses(L5)
    assert w
    x, y, mins, join = w[0]
    P = L5.perm23_poset
    assert len(mins) == 2 and not P.le(mins[0], mins[1]) and not P.le(mins[1], mins[0])
    assert L5.C23.join(x, y) == join


def test_lattice_report_n5():
    bad = [c.name for c in lattice_report(std(5)) if not c.ok]
    assert bad == []


def test_lattice_report_other_word():
    bad = [c.name for c in lattice_report(placement_from_word((2, 0, 1, 4, 3), "D")) if not c.ok]
    assert bad == []


def test_type_b_report():
    checks = b_no_completion_needed(Placement.standard("B", 5))
    assert all(c.ok for c in checks), [c.name for c in checks if not c.ok]


def test_unfolded_barred_maps_not_fixed():
    q = unfold_placement(Placement.standard("B", 7))
    assert all(chi_barred(f) != f for f in f_doub(q).elements())


@settings(max_examples=8)
@given(coxeter_words("D", 6))
def test_transport_conjugates_c(w):
    p = placement_from_word(w, "D")
    tr = transport(p)
    assert tr.conj(coxeter_perm(std(6))) == coxeter_perm(p)
    assert set(tr.conj(f) for f in f_doub(std(6)).elements()) == set(f_doub(p).elements())
    parts = c123(p)
    assert bar_extend(parts.c1) * parts.c2 * parts.c3 == coxeter_perm(p)
