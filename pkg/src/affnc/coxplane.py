"""Exact root data, the form omega_c and the projection to the Coxeter plane.

Vectors live in coordinates ``e_1, ..., e_{n+1}`` with the ``e_n`` slot
always zero. ``e_i`` for other integers is reduced with ``e_{-i} = -e_i``
and ``e_{i+2n} = e_i + delta`` where ``delta = e_{n+1} + e_{n-1}``.
Everything is a sympy matrix over the rationals; nothing here is floating
point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import sympy as sp

from .coxelem import Placement, PlacementError, diagram_edges, orientation, placement_from_word

Rational = sp.Rational


class ProjectionError(ValueError):
    pass


def _zero(n: int) -> sp.Matrix:
    return sp.zeros(n + 1, 1)


def unit(k: int, n: int) -> sp.Matrix:
    """Coordinate vector of ``e_k`` for ``k`` in ``1..n+1``."""
    v = _zero(n)
    v[k - 1] = 1
    return v


def delta_vector(n: int) -> sp.Matrix:
    return unit(n + 1, n) + unit(n - 1, n)


def e_vec(i: int, n: int) -> sp.Matrix:
    """``e_i`` for any ``i`` not divisible by ``n``.

    >>> list(e_vec(12, 5)) == list(e_vec(2, 5) + delta_vector(5))
    True
    """
    m = 2 * n
    if i % n == 0:
        raise ProjectionError(f"e_{i} is not defined for n={n}")
    q, r = divmod(i, m)
    if r > n:
        q, r = q + 1, r - m
    base = unit(r, n) if r > 0 else -unit(-r, n)
    return base + q * delta_vector(n)


def gram(n: int) -> sp.Matrix:
    """Matrix of K: the usual form on ``e_1..e_{n-1}`` with
    ``K(e_{n+1}, x) = -K(e_{n-1}, x)``."""
    G = sp.zeros(n + 1, n + 1)
    for i in range(n - 1):
        G[i, i] = 1
    G[n, n] = 1
    G[n - 2, n] = G[n, n - 2] = -1
    return G


@dataclass
class RootData:
    kind: str
    n: int
    roots: list
    coroots: list
    delta: sp.Matrix
    G: sp.Matrix = field(repr=False)

    def K(self, x, y):
        return (x.T * self.G * y)[0, 0]

    def cartan(self) -> sp.Matrix:
        n = self.n
        return sp.Matrix(n, n, lambda i, j: self.K(self.coroots[i], self.roots[j]))

    @property
    def root_matrix(self) -> sp.Matrix:
        return sp.Matrix.hstack(*self.roots)

    def root_coords(self, x) -> sp.Matrix:
        """Coordinates of ``x`` in the simple-root basis."""
        keep = [k for k in range(self.n + 1) if k != self.n - 1]
        A = self.root_matrix.extract(keep, list(range(self.n)))
        if x[self.n - 1] != 0:
            raise ProjectionError("vector has a nonzero e_n coordinate")
        return A.LUsolve(x.extract(keep, [0]))

    def reflection_matrix(self, i: int) -> sp.Matrix:
        """``s_i(x) = x - K(alpha_i^v, x) alpha_i`` as a matrix."""
        a, av = self.roots[i], self.coroots[i]
        return sp.eye(self.n + 1) - a * (av.T * self.G)

    def word_matrix(self, word: Sequence[int]) -> sp.Matrix:
        M = sp.eye(self.n + 1)
        for s in word:
            M = M * self.reflection_matrix(s)
        return M


def build_root_data(kind: str, n: int) -> RootData:
    """Simple roots, coroots and delta of type C, D or B in rank ``n``.

    >>> R = build_root_data("C", 5)
    >>> R.K(R.roots[0], R.roots[0])
    4
    """
    kind = kind.upper()
    if kind == "D" and n < 5 or kind in ("B", "C") and n < 4:
        raise ProjectionError(f"rank {n} too small for type {kind}")
    e = lambda k: unit(k, n)  # noqa: E731
    mid = [e(i + 1) - e(i) for i in range(1, n - 1)]
    if kind == "C":
        roots = [2 * e(1)] + mid + [e(n + 1) - e(n - 1)]
    elif kind == "D":
        roots = [e(2) + e(1)] + mid + [e(n + 1) - e(n - 2)]
    elif kind == "B":
        roots = [e(1)] + mid + [e(n + 1) - e(n - 2)]
    else:
        raise ProjectionError(f"unknown type {kind!r}")
    G = gram(n)
    coroots = [2 * a / (a.T * G * a)[0, 0] for a in roots]
    return RootData(kind, n, roots, coroots, delta_vector(n), G)


def expected_cartan(kind: str, n: int) -> sp.Matrix:
    """Cartan matrix read off the Coxeter diagram, with the double bonds of
    types C and B placed by hand."""
    kind = kind.upper()
    A = 2 * sp.eye(n)
    for e in diagram_edges(kind, n):
        i, j = sorted(e)
        A[i, j] = A[j, i] = -1
    if kind == "C":
        A[1, 0] = -2
        A[n - 2, n - 1] = -2
    elif kind == "B":
        A[0, 1] = -2
    return A


def delta_expansion(kind: str, n: int) -> list:
    """Coefficients of delta on the simple roots, as stated for each type."""
    kind = kind.upper()
    if kind == "D":
        return [1, 1] + [2] * (n - 4) + [1, 1]
    if kind == "B":
        return [2, 2] + [2] * (n - 4) + [1, 1]
    if kind == "C":
        return [1] + [2] * (n - 2) + [1]
    raise ProjectionError(f"unknown type {kind!r}")


def check_root_data(R: RootData) -> list[str]:
    """Failures of the Cartan, delta and K-symmetry checks (empty when fine)."""
    out = []
    if R.cartan() != expected_cartan(R.kind, R.n):
        out.append("Cartan matrix differs from the diagram")
    if list(R.root_coords(R.delta)) != delta_expansion(R.kind, R.n):
        out.append("delta expansion differs")
    n = R.n
    for k in range(1, n + 2):
        if k == n:
            continue
        x = unit(k, n)
        if R.K(unit(n + 1, n), x) != -R.K(unit(n - 1, n), x):
            out.append(f"K(e_{n + 1}, e_{k}) != -K(e_{n - 1}, e_{k})")
    for i in range(n):
        if R.K(R.delta, R.roots[i]) != 0:
            out.append(f"delta not isotropic against alpha_{i}")
    return out


# the form omega_c


@dataclass
class OmegaForm:
    """``omega_c`` as the matrix ``W[i, j] = omega_c(alpha_i, alpha_j)``."""

    R: RootData
    word: tuple
    W: sp.Matrix

    def __call__(self, x, y):
        return (self.R.root_coords(x).T * self.W * self.R.root_coords(y))[0, 0]

    def linear(self, x) -> sp.Matrix:
        """Row vector of ``omega_c(x, .)`` acting on e-coordinates."""
        R = self.R
        keep = [k for k in range(R.n + 1) if k != R.n - 1]
        A = R.root_matrix.extract(keep, list(range(R.n)))
        row_roots = R.root_coords(x).T * self.W * A.inv()
        row = sp.zeros(1, R.n + 1)
        for col, k in enumerate(keep):
            row[0, k] = row_roots[0, col]
        return row

    def coxeter_matrix(self) -> sp.Matrix:
        return self.R.word_matrix(self.word)


def omega_form(word: Sequence[int], kind: str = "D") -> OmegaForm:
    word = tuple(word)
    n = len(word)
    R = build_root_data(kind, n)
    A = R.cartan()
    W = sp.zeros(n, n)
    for i, j in orientation(word, kind):
        # s_i -> s_j: omega(alpha_i^v, alpha_j) = -a_ij
        li = R.K(R.roots[i], R.roots[i]) / 2
        lj = R.K(R.roots[j], R.roots[j]) / 2
        W[i, j] = -li * A[i, j]
        W[j, i] = lj * A[j, i]
    return OmegaForm(R, word, W)


def check_omega(form: OmegaForm) -> list[str]:
    out = []
    if form.W.T != -form.W:
        out.append("omega_c is not skew-symmetric")
    M = form.coxeter_matrix()
    R = form.R
    keep = [k for k in range(R.n + 1) if k != R.n - 1]
    A = R.root_matrix
    # c acts on simple-root coordinates by A^+ M A, restricted to the kept rows
    Ck = A.extract(keep, list(range(R.n))).inv() * M.extract(keep, keep) * A.extract(keep, list(range(R.n)))
    if Ck.T * form.W * Ck != form.W:
        out.append("omega_c is not c-invariant")
    return out


def _leaves(kind: str, n: int) -> set:
    deg: dict[int, int] = {}
    for e in diagram_edges(kind, n):
        for v in e:
            deg[v] = deg.get(v, 0) + 1
    return {v for v in range(n) if deg.get(v, 0) == 1}


def omega_delta_weights(word: Sequence[int], kind: str = "D") -> dict:
    """The weights ``k_j = omega_c(delta, alpha_j)`` by counting arrows into
    and out of ``s_j`` (leaves count once, other nodes twice), next to the
    same numbers from the matrix of omega_c, and ``omega_c(delta, e_j)`` for
    ``j`` in one period.
    """
    word = tuple(word)
    n = len(word)
    arrows = orientation(word, kind)
    leaves = _leaves(kind, n)
    counted = []
    for j in range(n):
        k = 0
        for a, b in arrows:
            if b == j:
                k += 1 if a in leaves else 2
            elif a == j:
                k -= 1 if b in leaves else 2
        counted.append(k)
    form = omega_form(word, kind)
    R = form.R
    from_form = [form(R.delta, R.roots[j]) for j in range(n)]
    on_e = {j: form(R.delta, e_vec(j, n)) for j in range(-(n - 1), 2 * n) if j % n}
    return {"counted": counted, "form": from_form, "e": on_e}


# gamma_c and the projection


def gamma_c(word: Sequence[int], kind: str = "D", form: OmegaForm | None = None) -> sp.Matrix:
    """The vector in the span of ``e_1..e_{n-1}`` with ``c gamma = gamma + delta``."""
    form = form or omega_form(word, kind)
    R = form.R
    n = R.n
    M = form.coxeter_matrix()
    B = sp.Matrix.hstack(*[unit(k, n) for k in range(1, n)])
    lhs = (M - sp.eye(n + 1)) * B
    if lhs.rank() != n - 1:
        raise ProjectionError("the restricted system is singular")
    sol, params = lhs.gauss_jordan_solve(R.delta)
    if params.shape[0]:
        raise ProjectionError("gamma_c is not unique")
    g = B * sol
    if M * g != g + R.delta:
        raise ProjectionError("c gamma != gamma + delta")
    return g


@dataclass
class Projection:
    """Coordinates ``(omega_c(delta, e_i), omega_c(gamma_c, e_i))``."""

    word: tuple
    form: OmegaForm
    gamma: sp.Matrix
    dx: sp.Matrix
    dy: sp.Matrix

    def __call__(self, i: int) -> tuple:
        v = e_vec(i, self.form.R.n)
        return ((self.dx * v)[0, 0], (self.dy * v)[0, 0])

    @property
    def period_shift(self):
        return (self.dy * self.form.R.delta)[0, 0]


def projection(word: Sequence[int], kind: str = "D") -> Projection:
    form = omega_form(word, kind)
    g = gamma_c(word, kind, form)
    return Projection(tuple(word), form, g, form.linear(form.R.delta), form.linear(g))


@dataclass
class Assertion:
    name: str
    ok: bool
    witness: str = ""


@dataclass
class ProjectionReport:
    """The six statements in order, then extra diagnostics that do not
    count towards ``ok``."""

    word: tuple
    periods: int
    assertions: list
    extras: list = field(default_factory=list)
    side_values: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.assertions)

    def lines(self) -> list[str]:
        out = []
        for a in self.assertions + self.extras:
            tail = f"  ({a.witness})" if a.witness else ""
            out.append(f"{a.name}: {'PASS' if a.ok else 'FAIL'}{tail}")
        return out


def _side(i: int, p: Placement) -> str:
    s = p.side(i)
    return "double" if s in ("upper", "lower") else s


def verify_orbit_projection(word: Sequence[int], periods: int = 3, placement: Placement | None = None) -> ProjectionReport:
    """Check the six statements about the projection of ``{e_i}`` over
    ``i`` ranging through ``periods`` periods on each side of zero.

    ``placement`` overrides the outer/inner/double labels read from the
    word; passing a wrong one is how the negative control works.
    ``side_values`` records which ``omega_c(delta, .)`` values each side
    actually takes.
    """
    if periods < 2:
        raise ProjectionError("need at least two periods")
    word = tuple(word)
    n = len(word)
    p = placement or placement_from_word(word, "D")
    if p.kind != "D":
        raise PlacementError("the projection is checked in type D only")
    P = projection(word, "D")
    m = 2 * n
    idx = [i for i in range(-periods * m, periods * m + 1) if i % n]
    pts = {i: P(i) for i in idx}
    side = {i: _side(i, p) for i in idx}
    values: dict[str, set] = {}
    for i in idx:
        values.setdefault(side[i], set()).add(pts[i][0])
    res = []

    xs = sorted({pts[i][0] for i in idx})
    res.append(Assertion("three lines", len(xs) == 3, f"omega(delta, e_i) values {xs}"))

    want = {"outer": 2, "inner": -2, "double": 0}
    bad = [i for i in idx if pts[i][0] != want[side[i]]]
    res.append(Assertion("sign by side", not bad,
                         f"e_{bad[0]} ({side[bad[0]]}) at {pts[bad[0]][0]}" if bad else "outer 2, inner -2, double 0"))

    bad = []
    for s in ("outer", "inner"):
        seq = [i for i in idx if side[i] == s]
        for i, j in zip(seq, seq[1:]):
            if pts[j][1] - pts[i][1] != 2:
                bad.append((i, j))
    res.append(Assertion("spacing 2", not bad, f"gap at {bad[0]}" if bad else ""))

    # e_u and e_{-u} for the upper double u, and their translates
    up, low = p.upper, p.lower
    pairs = [(up + m * k, -up + m * k) for k in range(-periods, periods + 1)]
    bad = [i for i, j in pairs if P(i) != P(j)]
    res.append(Assertion("upper doubles coincide", not bad, f"e_{bad[0]}" if bad else ""))
    pairs = [(low + m * k, -low + m + m * k) for k in range(-periods, periods + 1)]
    bad = [i for i, j in pairs if P(i) != P(j)]
    res.append(Assertion("lower doubles coincide", not bad, f"e_{bad[0]}" if bad else ""))

    shift = P.period_shift
    bad = [i for i in idx if (i + m) in pts and pts[i + m][1] - pts[i][1] != shift]
    res.append(Assertion("constant period shift", not bad, f"shift {shift}" if not bad else f"at e_{bad[0]}"))

    # the side is constant along each line, whatever the sign
    split = (all(len(v) == 1 for v in values.values()) and values.get("double") == {0}
             and values.get("outer", {1}) == {-x for x in values.get("inner", {1})} != {0})
    extras = [Assertion("lines separate sides", split, _fmt_values(values))]
    return ProjectionReport(word, periods, res, extras, {k: sorted(v) for k, v in values.items()})


def _fmt_values(values) -> str:
    return ", ".join(f"{k} {sorted(v)}" for k, v in sorted(values.items()))


def perturbed_placement(p: Placement) -> Placement:
    """Move the smallest outer point to the inner side."""
    a = min(p.outer, key=abs)
    return Placement(p.kind, p.n, p.upper, p.lower, (p.outer - {a}) | {-a})


def strip_counts(word: Sequence[int]) -> dict:
    """Points per line once the strip is taken modulo its period, counting
    coinciding double points once."""
    n = len(word)
    P = projection(word, "D")
    shift = P.period_shift
    pts = {(x, y % shift) for x, y in (P(i) for i in range(1, 2 * n) if i != n)}
    return {
        "outer": sum(1 for x, _ in pts if x > 0),
        "inner": sum(1 for x, _ in pts if x < 0),
        "double": sum(1 for x, _ in pts if x == 0),
    }


def _fmt(q) -> str:
    q = Rational(q)
    return f"{q.p}/{q.q}"


def projection_csv(word: Sequence[int], periods: int = 1) -> str:
    """Rows ``i,x,y`` with exact rationals written ``p/q``."""
    n = len(word)
    P = projection(word, "D")
    rows = ["i,omega_delta,omega_gamma"]
    for i in range(-periods * 2 * n, periods * 2 * n + 1):
        if i % n:
            x, y = P(i)
            rows.append(f"{i},{_fmt(x)},{_fmt(y)}")
    return "\n".join(rows) + "\n"


def annulus_svg(word: Sequence[int], size: int = 400) -> str:
    """The strip modulo its period drawn as an annulus: the
    ``omega_c(delta, .)`` coordinate picks the circle, the other coordinate
    the angle."""
    import math

    n = len(word)
    P = projection(word, "D")
    shift = P.period_shift
    cx = cy = size / 2
    radius = {2: size * 0.42, 0: size * 0.30, -2: size * 0.18}
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    for r in (radius[2], radius[-2]):
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="{r:.2f}" fill="none" stroke="black"/>')
    seen = {}
    for i in range(1, 2 * n):
        if i == n:
            continue
        x, y = P(i)
        key = (x, y % shift)
        seen.setdefault(key, []).append(i)
    for (x, y), labels in sorted(seen.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        theta = 2 * math.pi * float(y / shift)
        r = radius[int(x)]
        px, py = cx + r * math.sin(theta), cy - r * math.cos(theta)
        text = ",".join(str(v if v < n else v - 2 * n) for v in labels)
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="black"/>')
        parts.append(f'<text x="{px + 5:.2f}" y="{py - 5:.2f}" font-size="11">{text}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# permutations as linear maps


def point_vec(p, n: int) -> sp.Matrix:
    """``e_i`` for an integer, ``e_i + delta/2`` for a barred point ``(i, 1)``."""
    if isinstance(p, int):
        return e_vec(p, n)
    i, b = p
    return e_vec(i, n) + Rational(b, 2) * delta_vector(n)


def linear_matrix(f) -> sp.Matrix:
    """Matrix of ``e_i -> e_{f(i)}`` on e-coordinates (the ``e_n`` slot is
    left fixed). Works for plain and barred permutations."""
    n = f.n
    cols = []
    for k in range(1, n + 2):
        cols.append(unit(n, n) if k == n else point_vec(f(k), n))
    return sp.Matrix.hstack(*cols)


def translation_vector(f, R: RootData) -> list:
    """Coordinates ``lambda(alpha_j^v)`` of the vector ``lambda`` such that
    ``x -> x o f`` moves the level-one hyperplane of the dual by
    ``x -> x - lambda``.

    Raises :class:`ProjectionError` when ``f`` is not a translation.
    """
    n = R.n
    D = linear_matrix(f) - sp.eye(n + 1)
    phi = []
    for k in range(n + 1):
        col = D[:, k]
        t = col[n]  # e_{n+1} coefficient of delta
        if col != t * R.delta:
            raise ProjectionError(f"{f} is not a translation")
        phi.append(t)
    return [-sum(av[k] * phi[k] for k in range(n + 1)) for av in R.coroots]


def omega_functional(form: OmegaForm) -> list:
    """``omega_c(delta, .)`` in fundamental-weight coordinates."""
    R = form.R
    return [form(R.delta, av) for av in R.coroots]


def k_functional(beta, R: RootData) -> list:
    """``K(., beta)`` in fundamental-weight coordinates."""
    return [R.K(av, beta) for av in R.coroots]


def k_dual_vector(row: list, R: RootData) -> sp.Matrix:
    """A vector ``v`` with ``K(alpha_j^v, v) = row[j]``; defined up to delta."""
    C = sp.Matrix.hstack(*R.coroots).T * R.G
    sol, params = C.gauss_jordan_solve(sp.Matrix(row))
    return sol.subs({p: 0 for p in params})
