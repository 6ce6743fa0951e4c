"""Acceptance criteria 1-10, one test each.

Every test prints a ``CRITERION k: PASS`` or ``CRITERION k: FAIL`` line
with its runtime; run with ``pytest tests/test_acceptance.py -v -s`` to
see them inline (they are also echoed in the terminal summary).
"""
import itertools
import time

import pytest

from affnc import ncdiagram as nd
from affnc.affperm import AffPerm, bar_extend
from affnc.coxelem import Placement, coxeter_perm, placement_from_word, source_sink_orbit
from affnc.coxplane import verify_orbit_projection
from affnc.cycleclass import ON_LIST1, list_status, rho, signature
from affnc.folding import BInterval, chi_barred, eta_isomorphism, fold_diagrams, unfold_placement
from affnc.interval import Interval, transition_check, universal_bound_sample
from affnc.mcsul import (
    assemble_finite_lattice,
    b_no_completion_needed,
    c123,
    f_doub,
    lattice_report,
    loop_identities,
    nonlattice_witnesses,
)

from .conftest import B_EXAMPLES, B_WORD, D_EXAMPLES, D_WORD

LINES = []


def report(k, ok, elapsed, limit, detail=""):
    within = elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    line = f"CRITERION {k}: {verdict} ({elapsed:.2f}s, limit {limit}s)" + (f" {detail}" if detail else "")
    LINES.append(line)
    print(line)
    return ok and within


def test_criterion_1_rank_of_c():
    t = time.perf_counter()
    bad = []
    count = 0
    for kind, ns in (("D", range(5, 9)), ("B", range(4, 8))):
        for n in ns:
            for w in source_sink_orbit(tuple(range(n)), kind):
                p = placement_from_word(w, kind)
                count += 1
                if rho(coxeter_perm(p), p) != n or rho(AffPerm.identity(n), p) != 0:
                    bad.append((kind, w))
    assert report(1, not bad, time.perf_counter() - t, 1, f"{count} Coxeter words"), bad[:3]


def test_criterion_2_examples():
    t = time.perf_counter()
    bad = []
    for kind, word, n, rows, make in (
        ("D", D_WORD, 8, D_EXAMPLES, Interval),
        ("B", B_WORD, 7, B_EXAMPLES, BInterval),
    ):
        p = placement_from_word(word, kind)
        I = make(p)
        for k, w in enumerate(rows, 1):
            f = AffPerm.parse(f"n={n}; w=[{','.join(map(str, w))}]")
            d = nd.reconstruct(f, p)
            ok = (
                I.member(f)
                and nd.perm(d) == f
                and nd.reconstruct(nd.perm(d), p) == d
                and list_status(signature(f, p)) == ON_LIST1
            )
            if not ok:
                bad.append((kind, k))
    assert report(2, not bad, time.perf_counter() - t, 1, "12 type D and 10 type B permutations"), bad


def test_criterion_3_one_step_bound():
    t = time.perf_counter()
    ps = [Placement.standard("D", n) for n in (5, 6, 7, 8)] + [placement_from_word(D_WORD, "D")]
    r = universal_bound_sample(ps, 100_000, seed=2024)
    detail = f"{r.pairs} pairs, {len(r.too_big)} jumps, {len(r.mispredicted)} mispredictions"
    assert report(3, r.ok, time.perf_counter() - t, 30, detail)


def test_criterion_4_transition_tables():
    t = time.perf_counter()
    problems = []
    shapes = {"Inf^1 Tiny^2", "Inf^2", "Tiny^1 Sym^1", "Tiny^2 Sym^2", ""}
    for n, bound in ((5, 1), (6, 1), (5, 2)):
        p = Placement.standard("D", n)
        I = Interval(p)
        els, edges = I.enumerate_down(bound)
        problems += transition_check(I, edges)
        problems += [f"{x} off the first list" for x in els if list_status(I.signature(x)) != ON_LIST1]
        It = Interval(p, "T")
        els, edges = It.enumerate_down(bound)
        problems += transition_check(It, edges)
        problems += [f"{x} has a non-reflection shape" for x in els if It.signature(x).shape() not in shapes]
    assert report(4, not problems, time.perf_counter() - t, 120, f"{len(problems)} problems"), problems[:5]


def test_criterion_5_isomorphism():
    t = time.perf_counter()
    r = nd.order_agreement(Placement.standard("D", 5), 1)
    detail = (
        f"{r.elements} elements, {r.pairs} pairs, {r.related} related; mismatches "
        f"chain={len(r.chain_mismatches)} rank={len(r.rank_mismatches)} rank-values={len(r.rank_errors)}"
    )
    assert report(5, r.ok, time.perf_counter() - t, 300, detail)


@pytest.mark.xfail(
    strict=True,
    reason="with the literal definitions omega_c(delta, e_j) is -2 on outer points and +2 on inner "
    "points for every Coxeter word tried, so the stated sign-by-side assertion cannot hold; the "
    "other five assertions and the sign-free separation check pass",
)
def test_criterion_6_coxeter_plane():
    t = time.perf_counter()
    words = [tuple(range(n)) for n in (5, 6, 7, 8)] + [D_WORD]
    failed = []
    for w in words:
        rep = verify_orbit_projection(w, 3)
        failed += [(len(w), a.name, a.witness) for a in rep.assertions if not a.ok]
        failed += [(len(w), a.name, a.witness) for a in rep.extras if not a.ok]
    names = sorted({name for _, name, _ in failed})
    detail = "all assertions hold" if not failed else "failing: " + ", ".join(names) + f"; e.g. {failed[0][2]}"
    assert report(6, not failed, time.perf_counter() - t, 1, detail)


def test_criterion_7_finite_lattice():
    t = time.perf_counter()
    bad = []
    p = Placement.standard("D", 5)
    for c in lattice_report(p):
        if not c.ok:
            bad.append(c.name)
    L = assemble_finite_lattice(p)
    if not all(L.C23.join(x, y) is not None and L.C23.meet(x, y) is not None
               for x, y in itertools.combinations(L.C23.elements, 2)):
        bad.append("meets and joins")
    for n in (5, 6, 7, 8):
        q = Placement.standard("D", n)
        parts = c123(q)
        if bar_extend(parts.c1) * parts.c2 * parts.c3 != coxeter_perm(q):
            bad.append(f"c1 c2 c3 != c at n={n}")
    assert report(7, not bad, time.perf_counter() - t, 60, f"|C23|={len(L.C23)} |New|={len(L.new)}"), bad


def test_criterion_8_barred_maps():
    t = time.perf_counter()
    bad = []
    for n in (5, 6, 7, 8):
        F = f_doub(Placement.standard("D", n))
        bad += [f"{k} at n={n}" for k, v in loop_identities(F).items() if not v]
        bad += [f"{f} not in the barred group" for f in F.elements() if not f.in_bes()]
    for n in (4, 5, 6, 7):
        q = unfold_placement(Placement.standard("B", n))
        bad += [f"{f} fixed" for f in f_doub(q).elements() if chi_barred(f) == f]
    assert report(8, not bad, time.perf_counter() - t, 1), bad


def test_criterion_9_folding():
    t = time.perf_counter()
    p = Placement.standard("B", 5)
    r = eta_isomorphism(p, 1, "T")
    bad_d = fold_diagrams(p, 500, seed=11)
    checks = b_no_completion_needed(p)
    ok = r.ok and not bad_d and all(c.ok for c in checks)
    detail = (
        f"{r.b_size} B elements vs {r.fixed_size} fixed D elements, {len(r.order_mismatches)} order "
        f"mismatches, {len(bad_d)}/500 diagram mismatches, completion checks "
        f"{sum(c.ok for c in checks)}/{len(checks)}"
    )
    assert report(9, ok, time.perf_counter() - t, 120, detail)


def test_criterion_10_non_lattice_witness():
    t = time.perf_counter()
    L = assemble_finite_lattice(Placement.standard("D", 5))
    P = L.perm23_poset
    found = []
    for x, y in itertools.combinations(P.elements, 2):
        mins = P.minimal(P.upper_bounds(x, y))
        incomparable = all(not P.le(a, b) for a in mins for b in mins if a != b)
        if len(mins) >= 2 and incomparable and L.C23.join(x, y) is not None:
            found.append((x, y))
    ok = len(P) == 18 and bool(found) and found == [(a, b) for a, b, _, _ in nonlattice_witnesses(L)]
    detail = f"{len(found)} witness pairs, first {found[0][0]} | {found[0][1]}" if found else "no witness"
    assert report(10, ok, time.perf_counter() - t, 1, detail)
