import pytest
from hypothesis import settings, strategies as st

from affnc.affperm import AffPerm, loop, reflection
from affnc.coxelem import Placement, placement_from_word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# perm^D(P_1..P_12) for c = s3 s6 s2 s0 s1 s5 s7 s4, n = 8
D_EXAMPLES = [
    [1, 2, 3, 4, 5, 6, 7],
    [1, 4, 5, 2, 3, 10, 9],
    [9, 5, 3, 6, 2, 4, 15],
    [-1, -3, 2, 6, 5, 9, 12],
    [-1, -4, 2, 10, 5, 13, 7],
    [1, -4, 5, 7, 3, 6, 14],
    [-1, -4, 2, 13, 9, 10, 11],
    [17, 3, 2, 7, 5, 6, 4],
    [6, 3, 2, 4, 9, 17, 11],
    [-1, -4, 2, 7, 19, 10, 11],
    [-17, -4, 2, 7, 3, 10, 11],
    [-6, -4, 2, 7, 3, -1, 11],
]
D_WORD = (3, 6, 2, 0, 1, 5, 7, 4)

# perm^B(P_1..P_10) for c = s2 s5 s1 s0 s4 s6 s3, n = 7
B_EXAMPLES = [
    [1, 2, 3, 4, 5, 6],
    [3, 4, 1, 2, 9, 8],
    [4, 2, 5, 1, 3, 22],
    [-2, 1, 5, 4, 8, 11],
    [-3, 1, 9, 4, 12, 6],
    [-3, 4, 6, 2, 5, 13],
    [-3, 1, 12, 8, 9, 10],
    [2, 1, 6, 4, -9, 3],
    [-3, 1, 6, 16, 9, 10],
    [-3, 1, 6, 2, 23, 10],
]
B_WORD = (2, 5, 1, 0, 4, 6, 3)


@pytest.fixture(scope="session")
def d8():
    return placement_from_word(D_WORD, "D")


@pytest.fixture(scope="session")
def b7():
    return placement_from_word(B_WORD, "B")


@pytest.fixture(scope="session")
def d5():
    return Placement.standard("D", 5)


def tokens(n, loops=True):
    refl = st.builds(
        lambda a, b: (a, b),
        st.integers(1, n - 1),
        st.integers(-4 * n, 4 * n),
    ).filter(lambda ab: ab[1] % n and (ab[0] - ab[1]) % (2 * n) and (ab[0] + ab[1]) % (2 * n))
    out = refl.map(lambda ab: reflection(ab[0], ab[1], n))
    if loops:
        lp = st.sampled_from([a for a in range(-n + 1, n) if a]).map(lambda a: loop(a, n))
        out = st.one_of(out, lp)
    return out


def elements(n, loops=True, max_len=6):
    """Products of random reflections and loops."""

    def product(toks):
        f = AffPerm.identity(n)
        for t in toks:
            f = t.perm(n) * f
        return f

    return st.lists(tokens(n, loops), max_size=max_len).map(product)


def signed_windows(n, reach=2):
    """Arbitrary affine signed permutations."""
    return st.tuples(
        st.permutations(list(range(1, n))),
        st.lists(st.sampled_from([1, -1]), min_size=n - 1, max_size=n - 1),
        st.lists(st.integers(-reach, reach), min_size=n - 1, max_size=n - 1),
    ).map(lambda t: AffPerm(n, [s * v + 2 * n * k for v, s, k in zip(*t)]))


def coxeter_words(kind, n):
    return st.permutations(list(range(n))).map(tuple)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
