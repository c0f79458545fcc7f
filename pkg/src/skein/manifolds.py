"""Plumbing-forest presentations of closed oriented 3-manifolds.

A forest vertex is an unknot with an integer framing, an edge is a clasp with
linking number +1.  The empty forest presents S^3.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    BadLensParameters,
    InvalidForest,
    ModulusParity,
    NotBlowdownable,
    WouldCreateCycle,
)

SPIN_D = "spin_d"
COHOMOLOGY = "cohomology"


@dataclass(frozen=True)
class PlumbingForest:
    vertices: tuple  # ((id, framing), ...) in insertion order
    edges: tuple  # ((u, v), ...) with u, v ids

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise InvalidForest(f"duplicate vertex ids in {ids}")
        for _, fr in self.vertices:
            if not isinstance(fr, int) or isinstance(fr, bool):
                raise InvalidForest(f"framing {fr!r} is not an integer")
        known = set(ids)
        seen = set()
        for u, v in self.edges:
            if u not in known or v not in known:
                raise InvalidForest(f"edge ({u}, {v}) references an unknown vertex")
            if u == v:
                raise InvalidForest(f"self-loop at {u}")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidForest(f"repeated edge ({u}, {v})")
            seen.add(key)
        # union-find cycle check
        parent = {v: v for v in ids}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InvalidForest("the plumbing graph contains a cycle")
            parent[ru] = rv

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable = ()) -> PlumbingForest:
        return cls(tuple((str(v), fr) for v, fr in vertices), tuple((str(u), str(v)) for u, v in edges))

    @property
    def ids(self) -> list[str]:
        return [v for v, _ in self.vertices]

    @property
    def framings(self) -> dict[str, int]:
        return dict(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def neighbors(self, v: str) -> list[str]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return out

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "framing": fr} for v, fr in self.vertices],
            "edges": [[u, v] for u, v in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> PlumbingForest:
        try:
            vertices = [(str(item["id"]), item["framing"]) for item in data.get("vertices", [])]
            edges = [(str(u), str(v)) for u, v in data.get("edges", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidForest(f"malformed manifold description: {exc}") from exc
        return cls(tuple(vertices), tuple(edges))


def load_forest(path) -> PlumbingForest:
    return PlumbingForest.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


# --------------------------------------------------------------------------
# constructors


def chain(*framings: int, prefix: str = "v") -> PlumbingForest:
    ids = [f"{prefix}{k + 1}" for k in range(len(framings))]
    return PlumbingForest.build(zip(ids, framings), zip(ids, ids[1:]))


def star(center: int, *arms: Sequence[int]) -> PlumbingForest:
    """Central vertex with chains attached (Seifert fibered plumbings)."""
    vertices = [("c", center)]
    edges = []
    for k, arm in enumerate(arms, start=1):
        prev = "c"
        for j, fr in enumerate(arm, start=1):
            vid = f"a{k}_{j}"
            vertices.append((vid, fr))
            edges.append((prev, vid))
            prev = vid
    return PlumbingForest.build(vertices, edges)


def negative_continued_fraction(p: int, q: int) -> list[int]:
    """p/q = a1 - 1/(a2 - 1/(...)) with every a_i >= 2."""
    out = []
    while q:
        a = -(-p // q)  # ceiling
        out.append(a)
        p, q = q, a * q - p
    return out


def lens_space(p: int, q: int) -> PlumbingForest:
    """Chain with framings -a_i from the negative continued fraction of p/q."""
    if not (0 < q < p) or gcd(p, q) != 1:
        raise BadLensParameters(f"need coprime 0 < q < p, got p={p}, q={q}")
    return chain(*[-a for a in negative_continued_fraction(p, q)])


def e8_sphere() -> PlumbingForest:
    """The E8 plumbing with all framings -2 (Poincare homology sphere)."""
    ids = [f"e{k}" for k in range(1, 9)]
    edges = list(zip(ids[:7], ids[1:7])) + [("e5", "e8")]
    return PlumbingForest.build([(v, -2) for v in ids], edges)


def s1_x_s2() -> PlumbingForest:
    return chain(0)


def sphere() -> PlumbingForest:
    return PlumbingForest((), ())


def disjoint_union(f1: PlumbingForest, f2: PlumbingForest) -> PlumbingForest:
    """Presents the connected sum; ids of the second forest get a suffix if they clash."""
    taken = set(f1.ids)
    rename = {}
    for v in f2.ids:
        new = v
        while new in taken:
            new = new + "'"
        rename[v] = new
        taken.add(new)
    vertices = f1.vertices + tuple((rename[v], fr) for v, fr in f2.vertices)
    edges = f1.edges + tuple((rename[u], rename[v]) for u, v in f2.edges)
    return PlumbingForest(vertices, edges)


def mirror(f: PlumbingForest) -> PlumbingForest:
    return PlumbingForest(tuple((v, -fr) for v, fr in f.vertices), f.edges)


def orientation_signs(f: PlumbingForest) -> dict[str, int]:
    """+1/-1 by depth parity in each tree.

    The true mirror of a plumbing has clasps of linking number -1; reversing
    the components with sign -1 turns every clasp back into a +1 clasp.
    """
    signs: dict[str, int] = {}
    for root in f.ids:
        if root in signs:
            continue
        signs[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for w in f.neighbors(u):
                if w not in signs:
                    signs[w] = -signs[u]
                    stack.append(w)
    return signs


def blow_down(f: PlumbingForest, v: str) -> PlumbingForest:
    """Remove a (+-1)-framed vertex of degree <= 2 (plumbing calculus)."""
    framings = f.framings
    if v not in framings:
        raise NotBlowdownable(f"no vertex {v!r}")
    e = framings[v]
    nbrs = f.neighbors(v)
    if e not in (1, -1) or len(nbrs) > 2:
        raise NotBlowdownable(f"vertex {v!r} has framing {e} and degree {len(nbrs)}")
    vertices = tuple((u, fr - e if u in nbrs else fr) for u, fr in f.vertices if u != v)
    edges = [(a, b) for a, b in f.edges if v not in (a, b)]
    if len(nbrs) == 2:
        edges.append((nbrs[0], nbrs[1]))
    try:
        return PlumbingForest(vertices, tuple(edges))
    except InvalidForest as exc:
        raise WouldCreateCycle(str(exc)) from exc


def blowdownable(f: PlumbingForest) -> list[str]:
    return [v for v, fr in f.vertices if fr in (1, -1) and f.degree(v) <= 2]


# --------------------------------------------------------------------------
# linear algebra


def linking_matrix(f: PlumbingForest) -> list[list[int]]:
    idx = {v: k for k, v in enumerate(f.ids)}
    n = len(idx)
    A = [[0] * n for _ in range(n)]
    for v, fr in f.vertices:
        A[idx[v]][idx[v]] = fr
    for u, v in f.edges:
        A[idx[u]][idx[v]] = A[idx[v]][idx[u]] = 1
    return A


def characteristic_polynomial(A: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients c_0..c_n of det(x I - A) by Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        Mk = prod
        trace = sum(sum(A[i][t] * Mk[t][i] for t in range(n)) for i in range(n))
        coeffs[n - k] = -trace / k
    assert all(c.denominator == 1 for c in coeffs)
    return [int(c) for c in coeffs]


def _sign_changes(seq: Sequence[int]) -> int:
    signs = [1 if c > 0 else -1 for c in seq if c]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(A: Sequence[Sequence[int]]) -> int:
    """Signature of a symmetric integer matrix.

    All roots of the characteristic polynomial are real, so Descartes' rule
    of signs counts positive and negative eigenvalues exactly.
    """
    n = len(A)
    if any(A[i][j] != A[j][i] for i in range(n) for j in range(n)):
        raise ValueError("matrix is not symmetric")
    if n == 0:
        return 0
    c = characteristic_polynomial(A)
    while c and c[0] == 0:
        c = c[1:]
    positive = _sign_changes(c)
    negative = _sign_changes([x if k % 2 == 0 else -x for k, x in enumerate(c)])
    return positive - negative


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return (U, D, V) with U A V = D diagonal and U, V unimodular."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the remaining block
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]]
            if bad:
                add_row(bad[0][0], t, 1)
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


@dataclass(frozen=True)
class CongruenceSolution:
    """All x in (Z_d)^n with A x = b (mod d), as base + span(kernel)."""

    base: tuple | None
    kernel: tuple  # generators of the solution group of A x = 0
    modulus: int
    solutions: tuple


def solve_congruences(A: Sequence[Sequence[int]], b: Sequence[int], d: int) -> CongruenceSolution:
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return CongruenceSolution((), (), d, ((),))
    U, D, V = smith_normal_form(A)
    Ub = [sum(U[i][k] * b[k] for k in range(m)) % d for i in range(m)]
    choices = []
    kernel_y = []
    base_y = [0] * n
    for i in range(n):
        diag = D[i][i] if i < m else 0
        g = gcd(diag, d)  # gcd(0, d) == d
        rhs = Ub[i] if i < m else 0
        if rhs % g:
            return CongruenceSolution(None, (), d, ())
        step = d // g
        if diag % d:
            unit = (diag // g) % step
            y0 = (rhs // g) * pow(unit, -1, step) % step if step > 1 else 0
        else:
            y0 = 0
        base_y[i] = y0
        choices.append([(y0 + t * step) % d for t in range(g)])
        if g > 1:
            gen = [0] * n
            gen[i] = step
            kernel_y.append(gen)
    for i in range(n, m):
        if Ub[i] % d:
            return CongruenceSolution(None, (), d, ())

    def to_x(y):
        return tuple(sum(V[r][c] * y[c] for c in range(n)) % d for r in range(n))

    sols = sorted({to_x(y) for y in itertools.product(*choices)})
    return CongruenceSolution(to_x(base_y), tuple(to_x(g) for g in kernel_y), d, tuple(sols))


# --------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class Structure:
    kind: str
    ids: tuple
    values: tuple  # residues mod d, aligned with ids

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.ids, self.values))

    def __add__(self, other: Structure) -> Structure:
        raise TypeError("use shift() with an explicit modulus")

    def shift(self, h: Structure, d: int, kind: str | None = None) -> Structure:
        if h.ids != self.ids:
            raise ValueError("structures live on different presentations")
        return Structure(kind or self.kind, self.ids, tuple((a + b) % d for a, b in zip(self.values, h.values)))


def characteristic_rhs(f: PlumbingForest, d: int) -> list[int]:
    return [(d // 2) * fr % d for _, fr in f.vertices]


def structure_system(f: PlumbingForest, d: int, kind: str):
    A = linking_matrix(f)
    if kind == SPIN_D:
        if d % 2:
            raise ModulusParity(f"spin^d structures need an even modulus, got d={d}")
        return A, characteristic_rhs(f, d)
    if kind == COHOMOLOGY:
        return A, [0] * len(f)
    raise ValueError(f"unknown structure kind {kind!r}")


def structure_solution(f: PlumbingForest, d: int, kind: str) -> CongruenceSolution:
    A, b = structure_system(f, d, kind)
    return solve_congruences(A, b, d)


def structures(f: PlumbingForest, d: int, kind: str = SPIN_D) -> list[Structure]:
    """All spin^d structures (solutions of L c = (d/2) diag L) or kernel classes mod d."""
    if d < 1:
        raise ValueError("modulus must be positive")
    sol = structure_solution(f, d, kind)
    ids = tuple(f.ids)
    return [Structure(kind, ids, x) for x in sol.solutions]


def is_valid_structure(f: PlumbingForest, s: Structure, d: int) -> bool:
    A, b = structure_system(f, d, s.kind)
    if s.ids != tuple(f.ids):
        return False
    n = len(A)
    return all((sum(A[i][j] * s.values[j] for j in range(n)) - b[i]) % d == 0 for i in range(n))


# --------------------------------------------------------------------------
# blow-ups (inverse moves, used to generate presentations of one manifold)


def _fresh_id(f: PlumbingForest, stem: str = "b") -> str:
    taken = set(f.ids)
    k = 1
    while f"{stem}{k}" in taken:
        k += 1
    return f"{stem}{k}"


def blow_up_isolated(f: PlumbingForest, e: int) -> PlumbingForest:
    """Add an isolated (+-1)-framed unknot (connected sum with S^3)."""
    _check_unit(e)
    return PlumbingForest(f.vertices + ((_fresh_id(f), e),), f.edges)


def blow_up_leaf(f: PlumbingForest, v: str, e: int) -> PlumbingForest:
    """Clasp a new (+-1)-framed unknot onto v; v's framing shifts by e."""
    _check_unit(e)
    new = _fresh_id(f)
    vertices = tuple((u, fr + e if u == v else fr) for u, fr in f.vertices) + ((new, e),)
    return PlumbingForest(vertices, f.edges + ((v, new),))


def blow_up_edge(f: PlumbingForest, u: str, v: str, e: int) -> PlumbingForest:
    """Insert a (+-1)-framed unknot into the edge u-v; both ends shift by e."""
    _check_unit(e)
    edges = [(a, b) for a, b in f.edges if {a, b} != {u, v}]
    if len(edges) == len(f.edges):
        raise InvalidForest(f"no edge between {u} and {v}")
    new = _fresh_id(f)
    vertices = tuple((w, fr + e if w in (u, v) else fr) for w, fr in f.vertices) + ((new, e),)
    return PlumbingForest(vertices, tuple(edges) + ((u, new), (new, v)))


def _check_unit(e: int) -> None:
    if e not in (1, -1):
        raise ValueError(f"blow-ups use framing +-1, got {e}")
