"""The reduced SU(N,K) modular category built from Homfly skein data.

Colors are pairs ``(cols, rows)``: ``rows`` is a diagram with fewer than N
rows and at most K columns, ``cols < alpha`` counts prepended full height-N
columns.  Everything downstream (twists, Hopf values, omega) is computed from
these exact tables.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import NamedTuple

from . import partitions as P
from .errors import (
    AmbiguousFactorization,
    CalibrationFailure,
    EtaMismatch,
    InvalidParameters,
    NoFramingParameter,
)
from .exact import ExactValue, FieldContext, make_field, quantum_integer

log = logging.getLogger(__name__)

SPIN = "spin"
COH = "coh"
TWIST_FAMILIES = ("quadratic", "linear")


# --------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class Params:
    N: int
    K: int
    mode: str
    d: int
    alpha: int
    beta: int
    M: int
    s_exp: int
    a_exp: int

    @property
    def N_prime(self) -> int:
        return self.N // self.d

    @property
    def K_prime(self) -> int:
        return self.K // self.d

    @property
    def s_order(self) -> int:
        return self.M // gcd(self.M, self.s_exp)

    @property
    def refinement_grading(self) -> int:
        """Grading class that carries the anomaly Delta."""
        return self.d // 2 if self.mode == SPIN else 0

    def key(self) -> tuple:
        return (self.N, self.K, self.mode, self.alpha, self.a_exp, self.M)


def valid_factorizations(N: int, K: int) -> list[tuple[int, int]]:
    d = gcd(N, K)
    Np, Kp = N // d, K // d
    return [
        (alpha, d // alpha)
        for alpha in range(1, d + 1)
        if d % alpha == 0 and gcd(alpha, 2 * Kp) == 1 and gcd(d // alpha, Np) == 1
    ]


def _s_order(N: int, K: int, mode: str) -> int:
    if mode == COH and (N + K) % 2:
        return N + K
    return 2 * (N + K)


def _check_mode(N: int, K: int, mode: str) -> None:
    if N < 2 or K < 1:
        raise InvalidParameters(f"need N >= 2 and K >= 1, got N={N}, K={K}")
    d = gcd(N, K)
    Np, Kp = N // d, K // d
    spin_ok = d % 2 == 0 and Np % 2 == 1 and Kp % 2 == 1
    if mode == SPIN:
        if not spin_ok:
            raise InvalidParameters(
                f"spin mode needs gcd(N,K) even with N/d, K/d odd; got d={d}, N'={Np}, K'={Kp}"
            )
    elif mode == COH:
        if spin_ok:
            raise InvalidParameters("(N,K) satisfies the spin conditions; use mode 'spin'")
        if (N + K) % 2 == 0 and Np % 2 == 0:
            raise InvalidParameters("cohomological mode with N+K even needs N/d odd")
    else:
        raise InvalidParameters(f"unknown mode {mode!r}")


def _framing_solutions(N, K, alpha, beta, M, s_exp, minus_one: bool) -> list[int]:
    target = M // 2 if minus_one else 0
    if minus_one and M % 2:
        return []
    return [
        a
        for a in range(M)
        if (alpha * (N * a + s_exp)) % M == 0 and (beta * (K * a - s_exp) - target) % M == 0
    ]


def build_params(N: int, K: int, mode: str = SPIN, alpha: int | None = None,
                 a_exp: int | None = None, max_multiplier: int = 256) -> Params:
    """Fix rank, level, (alpha, beta), the ambient root order and s, a."""
    _check_mode(N, K, mode)
    d = gcd(N, K)
    facts = valid_factorizations(N, K)
    if alpha is None:
        if len(facts) > 1:
            raise AmbiguousFactorization(
                f"several (alpha, beta) are valid for N={N}, K={K}: {facts}; pass alpha explicitly"
            )
        alpha, beta = facts[0]
    else:
        if (alpha, d // alpha if d % alpha == 0 else None) not in facts:
            raise InvalidParameters(f"alpha={alpha} is not valid; choose from {[f[0] for f in facts]}")
        beta = d // alpha
    order = _s_order(N, K, mode)
    minus_one = mode == SPIN or (N + K + 1) % 2 == 1
    for t in range(1, max_multiplier + 1):
        M = order * t
        sols = _framing_solutions(N, K, alpha, beta, M, t, minus_one)
        if not sols:
            continue
        if a_exp is None:
            chosen = sols[0]
        else:
            if a_exp % M not in sols:
                raise InvalidParameters(f"a_exp={a_exp} does not solve the framing equations; options {sols}")
            chosen = a_exp % M
        p = Params(N, K, mode, d, alpha, beta, M, t, chosen)
        _verify_params(p)
        return p
    raise NoFramingParameter(f"no framing parameter a found for N={N}, K={K}, mode={mode}")


def _verify_params(p: Params) -> None:
    ctx = make_field(p.M)
    s = ctx.zeta(p.s_exp)
    a = ctx.zeta(p.a_exp)
    assert p.s_order == _s_order(p.N, p.K, p.mode)
    assert (a**p.N * s) ** p.alpha == 1
    sign = -1 if (p.mode == SPIN or (p.N + p.K + 1) % 2) else 1
    assert (a**p.K * s.inverse()) ** p.beta == sign
    assert gcd(p.alpha, 2 * p.K_prime) == 1 and gcd(p.beta, p.N_prime) == 1


# --------------------------------------------------------------------------
# colors


class Color(NamedTuple):
    cols: int
    rows: tuple

    def __str__(self):
        body = ",".join(map(str, self.rows))
        return f"({body})" if not self.cols else f"1^N^{self.cols}*({body})"


def weight(cols: int, rows: tuple, N: int) -> tuple:
    """gl_N weight: rows padded to length N, shifted by the column count."""
    return tuple(r + cols for r in list(rows) + [0] * (N - len(rows)))


def full_diagram(cols: int, rows: tuple, N: int) -> tuple:
    return P.normalize(weight(cols, rows, N))


def weight_content(w) -> int:
    """Content sum, extended polynomially to weights with negative entries."""
    return sum(r * (r + 1) // 2 - i * r for i, r in enumerate(w, start=1))


def sigma(cols: int, rows: tuple, N: int, K: int) -> tuple[int, tuple]:
    """Tensor with the one-row diagram K; columns are not reduced mod alpha."""
    new = [K] + list(rows)
    extra = 0
    if len(new) == N:
        extra = new[-1]
        new = [r - extra for r in new]
    return cols + extra, P.normalize(new)


def _orbit(c: Color, p: Params) -> list[Color]:
    seen = [c]
    cur = c
    while True:
        cols, rows = cur
        for _ in range(p.beta):
            cols, rows = sigma(cols, rows, p.N, p.K)
        cur = Color(cols % p.alpha, rows)
        if cur in seen:
            return seen
        seen.append(cur)


def canonical(cols: int, rows: tuple, p: Params) -> Color:
    return min(_orbit(Color(cols % p.alpha, P.normalize(rows)), p))


def raw_colors(p: Params) -> list[Color]:
    return [Color(i, lam) for i in range(p.alpha) for lam in P.partitions_in_box(p.N - 1, p.K)]


def enumerate_colors(p: Params) -> list[Color]:
    return sorted({canonical(c.cols, c.rows, p) for c in raw_colors(p)})


def flow_colors(p: Params) -> set[Color]:
    """Canonical forms of (1^N)^k (x) K^l, 0 <= k < alpha, 0 <= l < beta."""
    out = set()
    for k in range(p.alpha):
        cols, rows = k, ()
        for _ in range(p.beta):
            out.add(canonical(cols, rows, p))
            cols, rows = sigma(cols, rows, p.N, p.K)
    return out


# --------------------------------------------------------------------------
# twist candidates


@dataclass(frozen=True)
class TwistConvention:
    """f(x) = a^g(|x|) s^(2 content(x)) zeta^(mu_exp |x|), g quadratic or linear."""

    family: str
    mu_exp: int

    def exponent(self, p: Params, w: tuple) -> int:
        n = sum(w)
        a_power = n * n if self.family == "quadratic" else n
        return (p.a_exp * a_power + 2 * p.s_exp * weight_content(w) + self.mu_exp * n) % p.M

    def describe(self, p: Params) -> str:
        return f"{self.family}, mu=zeta_{p.M}^{self.mu_exp}"


def _well_defined(conv: TwistConvention, p: Params) -> bool:
    for c in raw_colors(p):
        base = conv.exponent(p, weight(c.cols, c.rows, p.N))
        if conv.exponent(p, weight(c.cols + p.alpha, c.rows, p.N)) != base:
            return False
        cols, rows = c
        for _ in range(p.beta):
            cols, rows = sigma(cols, rows, p.N, p.K)
        if conv.exponent(p, weight(cols, rows, p.N)) != base:
            return False
    return True


# --------------------------------------------------------------------------
# category data


@dataclass
class CategoryData:
    params: Params
    ctx: FieldContext
    colors: list
    index: dict
    grading: list
    qdim: list
    dual: list
    fusion: list  # fusion[x][y] = {z: multiplicity}, indices
    twist_exp: list
    twist: list
    hopf: list
    eta: ExactValue
    delta: ExactValue
    convention: TwistConvention
    calibration: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.colors)

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def vacuum(self) -> int:
        return self.index[Color(0, ())]

    def color_index(self, c) -> int:
        if isinstance(c, int):
            return c
        if isinstance(c, Color):
            return self.index[canonical(c.cols, c.rows, self.params)]
        return self.index[canonical(0, tuple(c), self.params)]

    def of_grading(self, i: int) -> list[int]:
        i %= self.d
        return [x for x in range(self.size) if self.grading[x] == i]

    def omega_component(self, i: int | None = None) -> dict[int, ExactValue]:
        """Coefficients eta*<x> of omega (i=None) or of its grading-i part."""
        xs = range(self.size) if i is None else self.of_grading(i)
        return {x: self.eta * self.qdim[x] for x in xs}

    def unknot(self, framing: int, i: int | None = None) -> ExactValue:
        """<U_framing(omega)> or <U_framing(omega_i)>."""
        total = self.ctx.zero()
        for x, w in self.omega_component(i).items():
            total = total + w * self.qdim[x] * self.twist_power(x, framing)
        return total

    def twist_power(self, x: int, k: int) -> ExactValue:
        return self.ctx.zeta(self.twist_exp[x] * k)

    def fusion_of(self, x, y) -> dict:
        x, y = self.color_index(x), self.color_index(y)
        return dict(self.fusion[x][y])


def _qdim(ctx: FieldContext, p: Params, diagram: tuple) -> ExactValue:
    num = ctx.one()
    den = ctx.one()
    for hook, content in P.hooks_and_contents(diagram):
        num = num * quantum_integer(ctx, p.N + content, p.s_exp)
        den = den * quantum_integer(ctx, hook, p.s_exp)
    return num / den


def eta_inverse_squared_closed_form(ctx: FieldContext, p: Params) -> ExactValue:
    N = p.N
    den = ctx.one()
    for j in range(1, N):
        base = ctx.zeta(p.s_exp * j) - ctx.zeta(-p.s_exp * j)
        den = den * base ** (2 * (N - j))
    sign = -1 if (N * (N - 1) // 2) % 2 else 1
    return ctx.rational(sign * p.d * (p.N + p.K) ** (N - 1)) / den


@dataclass
class _Skeleton:
    """Convention-independent tables shared by all twist candidates."""

    params: Params
    ctx: FieldContext
    colors: list
    index: dict
    grading: list
    qdim: list
    dual: list
    fusion: list
    raw_fusion: list  # raw_fusion[x][y] = [(gl_N weight of z, z index, mult)]
    eta_inv_sq: ExactValue


def _build_skeleton(p: Params) -> _Skeleton:
    ctx = make_field(p.M)
    colors = enumerate_colors(p)
    index = {c: k for k, c in enumerate(colors)}
    n = len(colors)
    grading = [P.size(full_diagram(c.cols, c.rows, p.N)) % p.d for c in colors]
    qdim = [_qdim(ctx, p, full_diagram(c.cols, c.rows, p.N)) for c in colors]
    for c in raw_colors(p):
        k = index[canonical(c.cols, c.rows, p)]
        if _qdim(ctx, p, full_diagram(c.cols, c.rows, p.N)) != qdim[k]:
            raise InvalidParameters(f"quantum dimension is not constant on the class of {colors[k]}")
    fusion = [[None] * n for _ in range(n)]
    raw = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            cx, cy = colors[x], colors[y]
            merged: dict[int, int] = {}
            terms = []
            for (nu, cols), m in P.su_fusion(cx.rows, cy.rows, p.N, p.K).items():
                total = cx.cols + cy.cols + cols
                z = index[canonical(total, nu, p)]
                merged[z] = merged.get(z, 0) + m
                terms.append((weight(total, nu, p.N), z, m))
            fusion[x][y] = fusion[y][x] = merged
            raw[x][y] = raw[y][x] = terms
    vac = index[Color(0, ())]
    dual = []
    for x in range(n):
        ys = [y for y in range(n) if fusion[x][y].get(vac, 0)]
        if len(ys) != 1 or fusion[x][ys[0]][vac] != 1:
            raise InvalidParameters(f"color {colors[x]} has no unique dual: {ys}")
        dual.append(ys[0])
    total = ctx.zero()
    for q in qdim:
        total = total + q * q
    closed = eta_inverse_squared_closed_form(ctx, p)
    if closed != total:
        raise EtaMismatch(f"closed form {closed} differs from sum of squared dimensions {total}")
    ctx.set_eta_squared_inverse(total)
    return _Skeleton(p, ctx, colors, index, grading, qdim, dual, fusion, raw, total)


def _hopf_table(sk: _Skeleton, conv: TwistConvention) -> list:
    """H(x,y) = f(x)^-1 f(y)^-1 sum_z N^z_xy f(z) <z>, z taken before reduction."""
    p, ctx, n = sk.params, sk.ctx, len(sk.colors)
    own = [conv.exponent(p, weight(c.cols, c.rows, p.N)) for c in sk.colors]
    H = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            acc = ctx.zero()
            for diagram, z, m in sk.raw_fusion[x][y]:
                e = conv.exponent(p, diagram) - own[x] - own[y]
                acc = acc + ctx.zeta(e) * sk.qdim[z] * m
            H[x][y] = H[y][x] = acc
    return H


def _assemble(sk: _Skeleton, conv: TwistConvention, hopf: list) -> CategoryData:
    p, ctx = sk.params, sk.ctx
    twist_exp = [conv.exponent(p, weight(c.cols, c.rows, p.N)) for c in sk.colors]
    twist = [ctx.zeta(e) for e in twist_exp]
    eta = ctx.eta()
    cat = CategoryData(
        params=p, ctx=ctx, colors=sk.colors, index=sk.index, grading=sk.grading, qdim=sk.qdim,
        dual=sk.dual, fusion=sk.fusion, twist_exp=twist_exp, twist=twist, hopf=hopf, eta=eta,
        delta=ctx.zero(), convention=conv,
    )
    cat.delta = cat.unknot(1, p.refinement_grading)
    return cat


# --------------------------------------------------------------------------
# identity suite


def hopf_chain_value(cat: CategoryData, eps: int, i: int, j: int) -> ExactValue:
    """<H_{eps,0}(omega_i, omega_j)>."""
    total = cat.ctx.zero()
    for x in cat.of_grading(i):
        wx = cat.qdim[x] * cat.twist_power(x, eps)
        for y in cat.of_grading(j):
            h = cat.hopf[x][y]
            if h.is_zero():
                continue
            total = total + wx * cat.qdim[y] * h
    return total * cat.eta * cat.eta


def hopf_chain_expected(cat: CategoryData, eps: int, i: int, j: int) -> int:
    d = cat.d
    if eps == 0:
        return int(i % d == 0 and j % d == 0)
    return int(i % d == 0 and j % d == cat.params.refinement_grading)


def identity_suite(cat: CategoryData) -> dict[str, list[str]]:
    """Exact identity checks; maps each check name to its list of failures."""
    ctx, d, n = cat.ctx, cat.d, cat.size
    p = cat.params
    report: dict[str, list[str]] = {}

    fails = []
    target = ctx.eta_squared_inverse / d
    for i in range(d):
        tot = ctx.zero()
        for x in cat.of_grading(i):
            tot = tot + cat.qdim[x] * cat.qdim[x]
        if tot != target:
            fails.append(f"grading {i}: sum <x>^2 = {tot}")
    if eta_inverse_squared_closed_form(ctx, p) != ctx.eta_squared_inverse:
        fails.append("closed form for eta^-2 disagrees")
    report["normalization"] = fails

    fails = []
    flows = {cat.index[c] for c in flow_colors(p)}
    graded_fails = []
    for lam in range(n):
        per_grading = [ctx.zero() for _ in range(d)]
        for x in range(n):
            h = cat.hopf[x][lam]
            if not h.is_zero():
                per_grading[cat.grading[x]] = per_grading[cat.grading[x]] + cat.qdim[x] * h
        whole = sum(per_grading[1:], per_grading[0])
        if lam != cat.vacuum and not whole.is_zero():
            fails.append(f"killing fails at {cat.colors[lam]}")
        if lam not in flows:
            for i, v in enumerate(per_grading):
                if not v.is_zero():
                    graded_fails.append(f"graded killing fails at {cat.colors[lam]}, grading {i}")
    report["killing"] = fails
    report["graded_killing"] = graded_fails

    fails = []
    for eps in (0, 1, -1):
        for i in range(d):
            for j in range(d):
                v = hopf_chain_value(cat, eps, i, j)
                if v != hopf_chain_expected(cat, eps, i, j):
                    fails.append(f"(eps,i,j)=({eps},{i},{j}): {v}")
    report["hopf_chain"] = fails

    fails = []
    up, down = cat.unknot(1), cat.unknot(-1)
    if up * down != 1:
        fails.append("<U_1(omega)><U_-1(omega)> != 1")
    if up != cat.delta:
        fails.append(f"<U_1(omega)> != <U_1(omega_{p.refinement_grading})>")
    if cat.delta.is_zero():
        fails.append("Delta vanishes")
    report["gauss_sums"] = fails
    return report


def twist_relation_failures(cat: CategoryData) -> list[str]:
    """sum_y eta<y> f(y) H(y,x) == <U_1(omega)> f(x)^-1 <x> for every color x.

    This is the encircling identity behind invariance under (+1)-blow-downs.
    """
    up = cat.unknot(1)
    fails = []
    for x in range(cat.size):
        acc = cat.ctx.zero()
        for y in range(cat.size):
            h = cat.hopf[y][x]
            if not h.is_zero():
                acc = acc + cat.qdim[y] * cat.twist[y] * h
        if acc * cat.eta != up * cat.twist_power(x, -1) * cat.qdim[x]:
            fails.append(f"encircling identity fails at {cat.colors[x]}")
    return fails


def curl_relation_failures(cat: CategoryData) -> list[str]:
    """Framed Homfly relation on a kink: a^-1 f(box) - a f(box)^-1 = s^N - s^-N.

    Follows from the skein relation a^-1 L+ - a L- = (s - s^-1) L0 together
    with the unknot value [N]; it pins the twist of the one-box color.
    """
    p, ctx = cat.params, cat.ctx
    box = cat.index.get(canonical(0, (1,), p))
    f = cat.twist[box]
    lhs = ctx.zeta(-p.a_exp) * f - ctx.zeta(p.a_exp) * f.inverse()
    rhs = ctx.zeta(p.N * p.s_exp) - ctx.zeta(-p.N * p.s_exp)
    return [] if lhs == rhs else [f"curl relation fails: f(box) = {f}"]


def verlinde_failures(cat: CategoryData) -> list[str]:
    """Recover N^z_xy from S = eta*H via the Verlinde formula and compare."""
    n, vac = cat.size, cat.vacuum
    S = [[cat.eta * cat.hopf[x][y] for y in range(n)] for x in range(n)]
    inv0 = [S[vac][w].inverse() for w in range(n)]
    fails = []
    for x in range(n):
        for y in range(x, n):
            xy = [S[x][w] * S[y][w] * inv0[w] for w in range(n)]
            for z in range(n):
                zd = cat.dual[z]
                acc = cat.ctx.zero()
                for w in range(n):
                    acc = acc + xy[w] * S[zd][w]
                expected = cat.fusion[x][y].get(z, 0)
                if acc != expected:
                    fails.append(f"N^{cat.colors[z]}_({cat.colors[x]},{cat.colors[y]}): {acc} != {expected}")
    return fails


def dimension_homomorphism_failures(cat: CategoryData) -> list[str]:
    fails = []
    for x in range(cat.size):
        for y in range(x, cat.size):
            acc = cat.ctx.zero()
            for z, m in cat.fusion[x][y].items():
                acc = acc + cat.qdim[z] * m
            if acc != cat.qdim[x] * cat.qdim[y]:
                fails.append(f"<x><y> != sum N<z> at ({cat.colors[x]},{cat.colors[y]})")
    return fails


# --------------------------------------------------------------------------
# calibration


def _regression_signature(cat: CategoryData) -> tuple:
    from .invariants import regression_values

    return regression_values(cat)


def _regression_failures(cat: CategoryData) -> list[str]:
    from .invariants import presentation_failures

    return presentation_failures(cat)


def calibrate(sk: _Skeleton, families=TWIST_FAMILIES, regression: bool = True,
              curl: bool = True):
    """Enumerate twist conventions and keep those passing every check.

    A candidate must be well defined on reduced colors, pass the identity
    suite, the encircling identity, the kink relation (``curl``) and, with
    ``regression``, blow-down invariance on a fixed set of forests.
    Returns (survivors, report); each survivor is an assembled CategoryData.
    """
    p = sk.params
    report = {"candidates": 0, "well_defined": 0, "rejected": {}, "survivors": []}
    survivors = []
    for family in families:
        hopf = None
        for mu in range(p.M):
            conv = TwistConvention(family, mu)
            report["candidates"] += 1
            if not _well_defined(conv, p):
                continue
            report["well_defined"] += 1
            if hopf is None:
                hopf = _hopf_table(sk, conv)
            cat = _assemble(sk, conv, hopf)
            failed = [k for k, v in identity_suite(cat).items() if v]
            if not failed and twist_relation_failures(cat):
                failed = ["encircling"]
            if not failed and curl and curl_relation_failures(cat):
                failed = ["curl"]
            if not failed and regression and _regression_failures(cat):
                failed = ["presentation invariance"]
            if failed:
                report["rejected"][conv.describe(p)] = failed
                continue
            survivors.append(cat)
    report["survivors"] = [c.convention.describe(p) for c in survivors]
    return survivors, report


def build_category(p: Params, families=TWIST_FAMILIES, regression: bool = True,
                   curl: bool = True) -> CategoryData:
    """Construct all tables for one parameter set, calibrating the twist.

    Raises CalibrationFailure when no convention survives, or when the
    survivors give different values on the regression manifolds.
    """
    sk = _build_skeleton(p)
    survivors, report = calibrate(sk, families, regression, curl)
    if not survivors:
        raise CalibrationFailure(
            f"no twist convention survives calibration: {report['candidates']} candidates, "
            f"{report['well_defined']} well defined on reduced colors, rejected {report['rejected']}"
        )
    classes: dict[tuple, list] = {}
    for cat in survivors:
        sig = _regression_signature(cat)
        classes.setdefault(sig, []).append(cat)
    if len(classes) > 1:
        raise CalibrationFailure(
            "twist calibration admits several inequivalent conventions: "
            + "; ".join(c.convention.describe(p) for c in survivors),
            survivors=[c.convention.describe(p) for c in survivors],
        )
    chosen = survivors[0]
    report["chosen"] = chosen.convention.describe(p)
    report["equivalent_survivors"] = len(survivors)
    chosen.calibration = report
    log.info("calibrated %s: %s", p, report["chosen"])
    return chosen


def build(N: int, K: int, mode: str = SPIN, alpha: int | None = None, a_exp: int | None = None,
          **kwargs) -> CategoryData:
    return build_category(build_params(N, K, mode, alpha, a_exp), **kwargs)
