"""Independent oracles used by the test-suite.

``tl_data`` gives the classical Kauffman-bracket (Temperley-Lieb) closed
forms for SU(2); ``brute_solve`` enumerates congruence solutions directly.
Neither is used on any production path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .category import CategoryData
from .errors import TooLarge
from .exact import ExactValue, FieldContext, quantum_integer

MAX_BRUTE_COLUMNS = 8
MAX_BRUTE_MODULUS = 4


def tl_qdim(ctx: FieldContext, n: int, a_exp: int) -> ExactValue:
    sign = -1 if n % 2 else 1
    return quantum_integer(ctx, n + 1, 2 * a_exp) * sign


def tl_twist(ctx: FieldContext, n: int, a_exp: int) -> ExactValue:
    sign = -1 if n % 2 else 1
    return ctx.zeta(a_exp * (n * n + 2 * n)) * sign


def tl_hopf(ctx: FieldContext, n: int, m: int, a_exp: int) -> ExactValue:
    sign = -1 if (n + m) % 2 else 1
    return quantum_integer(ctx, (n + 1) * (m + 1), 2 * a_exp) * sign


def tl_data(ctx: FieldContext, n: int, m: int, a_exp: int):
    """(qdim_n, twist_n, hopf_{n,m}) with A = zeta_M**a_exp."""
    return tl_qdim(ctx, n, a_exp), tl_twist(ctx, n, a_exp), tl_hopf(ctx, n, m, a_exp)


def brute_solve(A: Sequence[Sequence[int]], b: Sequence[int], d: int) -> list[tuple]:
    """Every x in (Z_d)^n with A x = b (mod d), by exhaustion."""
    n = len(A[0]) if A else 0
    if n > MAX_BRUTE_COLUMNS or d > MAX_BRUTE_MODULUS:
        raise TooLarge(f"{d}^{n} assignments is beyond the exhaustive oracle")
    out = []
    for x in itertools.product(range(d), repeat=n):
        if all((sum(a * v for a, v in zip(row, x)) - r) % d == 0 for row, r in zip(A, b)):
            out.append(x)
    return out


# --------------------------------------------------------------------------
# convention map between the N=2 category and the TL closed forms


@dataclass(frozen=True)
class ConventionMap:
    """A = zeta_M**a_exponent; qdim and Hopf values pick up box_sign per box."""

    a_exponent: int
    box_sign: int
    exact: bool  # twists agree exactly, not just up to absolute value

    def to_json(self) -> dict:
        return {"a_exponent": self.a_exponent, "box_sign": self.box_sign, "exact": self.exact}


def tl_label(cat: CategoryData, x: int) -> int:
    """SU(2) highest weight of a color: boxes in the first row beyond full columns."""
    rows = cat.colors[x].rows
    return rows[0] if rows else 0


def _structural_match(cat: CategoryData, a_exp: int, sign: int) -> tuple[bool, bool]:
    ctx = cat.ctx
    labels = [tl_label(cat, x) for x in range(cat.size)]
    exact_twist = True
    for x, n in enumerate(labels):
        if cat.qdim[x] != tl_qdim(ctx, n, a_exp) * sign**n:
            return False, False
        t = tl_twist(ctx, n, a_exp)
        if t != cat.twist[x]:
            exact_twist = False
            # absolute structure: both are roots of unity, compare orders
            if _order(ctx, t) != _order(ctx, cat.twist[x]):
                return False, False
    for x, n in enumerate(labels):
        for y, m in enumerate(labels):
            h = tl_hopf(ctx, n, m, a_exp) * sign ** (n + m)
            if h.is_zero() != cat.hopf[x][y].is_zero():
                return False, False
            if h != cat.hopf[x][y] and h != -cat.hopf[x][y]:
                return False, False
    return True, exact_twist


def _order(ctx: FieldContext, v: ExactValue) -> int:
    for k in range(1, ctx.M + 1):
        if v**k == 1:
            return k
    return 0


def search_convention_maps(cat: CategoryData) -> list[ConventionMap]:
    """All (A exponent, box sign) pairs under which the N=2 data matches TL."""
    if cat.params.N != 2:
        raise ValueError("the Temperley-Lieb oracle only covers N = 2")
    out = []
    for a_exp in range(cat.params.M):
        for sign in (1, -1):
            ok, exact = _structural_match(cat, a_exp, sign)
            if ok:
                out.append(ConventionMap(a_exp, sign, exact))
    return out


def check_convention_map(cat: CategoryData, cmap: ConventionMap) -> bool:
    ok, exact = _structural_match(cat, cmap.a_exponent, cmap.box_sign)
    return ok and (exact or not cmap.exact)


# --------------------------------------------------------------------------
# brute-force state sums


MAX_BRUTE_STATES = 200_000


def brute_evaluate(ctx: FieldContext, forest, weights, framing_factor, qdim, hopf) -> ExactValue:
    """Plain enumeration of every coloring of a plumbing forest.

    ``weights[v]`` maps colors to coefficients; the remaining arguments are
    callables giving f(x)**k, <x> and H(x, y).
    """
    ids = forest.ids
    if not ids:
        return ctx.one()
    states = 1
    for v in ids:
        states *= max(1, len(weights[v]))
    if states > MAX_BRUTE_STATES:
        raise TooLarge(f"{states} colorings is beyond the exhaustive oracle")
    fr = forest.framings
    deg = {v: forest.degree(v) for v in ids}
    pos = {v: k for k, v in enumerate(ids)}
    total = ctx.zero()
    for choice in itertools.product(*[sorted(weights[v]) for v in ids]):
        term = ctx.one()
        for v, x in zip(ids, choice):
            term = term * weights[v][x] * framing_factor(x, fr[v]) * qdim(x) ** (1 - deg[v])
        for u, v in forest.edges:
            term = term * hopf(choice[pos[u]], choice[pos[v]])
            if term.is_zero():
                break
        total = total + term
    return total


def brute_tau(cat: CategoryData, forest, residues: dict | None = None) -> ExactValue:
    """tau by exhaustive enumeration over the category tables."""
    from .manifolds import linking_matrix, signature

    d = cat.d
    weights = {}
    for v in forest.ids:
        if residues is None:
            xs = range(cat.size)
        else:
            xs = [x for x in range(cat.size) if cat.grading[x] == residues[v] % d]
        weights[v] = {x: cat.eta * cat.qdim[x] for x in xs}
    value = brute_evaluate(
        cat.ctx, forest, weights,
        lambda x, k: cat.twist_power(x, k),
        lambda x: cat.qdim[x],
        lambda x, y: cat.hopf[x][y],
    )
    return cat.delta ** (-signature(linking_matrix(forest))) * value


def tl_tau(ctx: FieldContext, K: int, a_exp: int, forest, residues: dict | None = None,
           refinement_grading: int = 1) -> ExactValue:
    """SU(2) level-K invariant built only from Temperley-Lieb closed forms.

    Colors are 0..K with grading n mod 2.  ``ctx`` must already carry the
    normalization eta**-2 = sum of squared quantum dimensions.
    """
    from .manifolds import linking_matrix, signature

    colors = range(K + 1)
    global_dim = ctx.zero()
    for n in colors:
        global_dim = global_dim + tl_qdim(ctx, n, a_exp) ** 2
    if global_dim != ctx.eta_squared_inverse:
        raise ValueError("field context carries a different eta normalization")
    eta = ctx.eta()
    delta = ctx.zero()
    for n in colors:
        if n % 2 == refinement_grading % 2:
            delta = delta + eta * tl_qdim(ctx, n, a_exp) ** 2 * tl_twist(ctx, n, a_exp)
    weights = {}
    for v in forest.ids:
        xs = colors if residues is None else [n for n in colors if n % 2 == residues[v] % 2]
        weights[v] = {n: eta * tl_qdim(ctx, n, a_exp) for n in xs}
    value = brute_evaluate(
        ctx, forest, weights,
        lambda n, k: tl_twist(ctx, n, a_exp) ** k,
        lambda n: tl_qdim(ctx, n, a_exp),
        lambda n, m: tl_hopf(ctx, n, m, a_exp),
    )
    return delta ** (-signature(linking_matrix(forest))) * value
