"""Quantum invariants of plumbed 3-manifolds and their refinements.

Forests are contracted leaf-to-root: every vertex sends its parent a vector
indexed by the parent's color, obtained by summing its own colors against the
Hopf values of the connecting clasp.  This computes exactly the state sum
over all colorings, in time linear in the number of vertices.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .category import COH, CategoryData
from .errors import InvalidStructure
from .exact import ExactValue
from .manifolds import (
    COHOMOLOGY,
    SPIN_D,
    PlumbingForest,
    Structure,
    blow_down,
    blowdownable,
    chain,
    is_valid_structure,
    linking_matrix,
    mirror,
    orientation_signs,
    s1_x_s2,
    signature,
    structures,
)

log = logging.getLogger(__name__)

# A color assignment maps a vertex id to {color index: coefficient}.
ColorAssignment = dict


def structure_kind(cat: CategoryData) -> str:
    return COHOMOLOGY if cat.params.mode == COH else SPIN_D


# --------------------------------------------------------------------------
# forest contraction


def _components(f: PlumbingForest) -> list[list[str]]:
    seen: set[str] = set()
    out = []
    for root in f.ids:
        if root in seen:
            continue
        order = [root]
        seen.add(root)
        k = 0
        while k < len(order):
            for w in f.neighbors(order[k]):
                if w not in seen:
                    seen.add(w)
                    order.append(w)
            k += 1
        out.append(order)
    return out


def _vertex_weights(cat: CategoryData, f: PlumbingForest, v: str, combo: dict) -> dict:
    fr = f.framings[v]
    power = 1 - f.degree(v)
    return {
        x: c * cat.twist_power(x, fr) * cat.qdim[x] ** power
        for x, c in combo.items()
        if not c.is_zero()
    }


def _contract_tree(cat: CategoryData, f: PlumbingForest, order: list[str], colors: ColorAssignment,
                   threads: int = 1) -> ExactValue:
    ctx = cat.ctx
    parent = {order[0]: None}
    for u in order:
        for w in f.neighbors(u):
            if w not in parent:
                parent[w] = u
    # product of incoming messages, per vertex and color
    incoming: dict[str, dict[int, ExactValue]] = {}
    weights = {v: _vertex_weights(cat, f, v, colors[v]) for v in order}

    def local(v):
        w = dict(weights[v])
        msgs = incoming.get(v)
        if msgs is not None:
            w = {x: val * msgs[x] for x, val in w.items() if x in msgs}
        return {x: val for x, val in w.items() if not val.is_zero()}

    for v in reversed(order[1:]):
        u = parent[v]
        mine = local(v)
        msg = {}
        for y in weights[u]:
            acc = ctx.zero()
            for x, val in mine.items():
                h = cat.hopf[x][y]
                if not h.is_zero():
                    acc = acc + val * h
            msg[y] = acc
        prev = incoming.get(u)
        incoming[u] = msg if prev is None else {y: prev[y] * msg[y] for y in msg}

    root = local(order[0])
    if threads > 1 and len(root) > 1:
        items = list(root.values())
        chunks = [items[k::threads] for k in range(threads)]

        def add(vals):
            acc = ctx.zero()
            for val in vals:
                acc = acc + val
            return acc

        with ThreadPoolExecutor(max_workers=threads) as pool:
            partial = list(pool.map(add, chunks))
        items = partial
    else:
        items = list(root.values())
    total = ctx.zero()
    for val in items:
        total = total + val
    return total


def evaluate_forest(cat: CategoryData, f: PlumbingForest, colors: ColorAssignment,
                    threads: int = 1) -> ExactValue:
    """Colored plumbing evaluation; the empty forest evaluates to 1."""
    missing = [v for v in f.ids if v not in colors]
    if missing:
        raise ValueError(f"no color assigned to vertices {missing}")
    value = cat.ctx.one()
    for order in _components(f):
        value = value * _contract_tree(cat, f, order, colors, threads)
        if value.is_zero():
            break
    return value


def omega_everywhere(cat: CategoryData, f: PlumbingForest) -> ColorAssignment:
    om = cat.omega_component()
    return {v: om for v in f.ids}


def omega_graded(cat: CategoryData, f: PlumbingForest, residues: dict[str, int]) -> ColorAssignment:
    cache: dict[int, dict] = {}
    out = {}
    for v in f.ids:
        i = residues[v] % cat.d
        if i not in cache:
            cache[i] = cat.omega_component(i)
        out[v] = cache[i]
    return out


# --------------------------------------------------------------------------
# RT invariants


def anomaly(cat: CategoryData, f: PlumbingForest) -> ExactValue:
    return cat.delta ** (-signature(linking_matrix(f)))


def tau(cat: CategoryData, f: PlumbingForest, threads: int = 1) -> ExactValue:
    return anomaly(cat, f) * evaluate_forest(cat, f, omega_everywhere(cat, f), threads)


def _check_structure(cat: CategoryData, f: PlumbingForest, s: Structure) -> None:
    if s.kind != structure_kind(cat):
        raise InvalidStructure(f"{s.kind} structure given in {cat.params.mode} mode")
    if not is_valid_structure(f, s, cat.d):
        raise InvalidStructure(f"{s.as_dict()} is not a {s.kind} structure mod {cat.d}")


def tau_refined(cat: CategoryData, f: PlumbingForest, s: Structure, threads: int = 1) -> ExactValue:
    _check_structure(cat, f, s)
    colors = omega_graded(cat, f, s.as_dict())
    return anomaly(cat, f) * evaluate_forest(cat, f, colors, threads)


def mirror_structure(f: PlumbingForest, s: Structure, d: int) -> Structure:
    """The structure on mirror(f) presenting the same structure on -M.

    Mirroring makes every clasp negative; reversing the components of odd
    depth restores positive clasps and negates their residues.
    """
    signs = orientation_signs(f)
    return Structure(s.kind, s.ids, tuple((signs[v] * c) % d for v, c in zip(s.ids, s.values)))


def tau_mirror_refined(cat: CategoryData, f: PlumbingForest, s: Structure, threads: int = 1) -> ExactValue:
    """tau(-M, s) computed on the mirrored presentation."""
    _check_structure(cat, f, s)
    return tau_refined(cat, mirror(f), mirror_structure(f, s, cat.d), threads)


def kernel_classes(cat: CategoryData, f: PlumbingForest) -> list[Structure]:
    return structures(f, cat.d, COHOMOLOGY)


def refined_structures(cat: CategoryData, f: PlumbingForest) -> list[Structure]:
    return structures(f, cat.d, structure_kind(cat))


# --------------------------------------------------------------------------
# Turaev-Viro type invariants


def tv(cat: CategoryData, f: PlumbingForest, threads: int = 1) -> ExactValue:
    return tau(cat, f, threads) * tau(cat, mirror(f), threads)


def _shift(cat: CategoryData, s: Structure, h: Structure) -> Structure:
    if h.kind != COHOMOLOGY:
        raise InvalidStructure("the shift must be a kernel class")
    return s.shift(h, cat.d)


def tv_refined(cat: CategoryData, f: PlumbingForest, s: Structure, h: Structure,
               threads: int = 1) -> ExactValue:
    """Z(M,s,h) = tau(M,s) tau(-M,s+h)."""
    _check_structure(cat, f, s)
    if not is_valid_structure(f, h, cat.d):
        raise InvalidStructure(f"{h.as_dict()} is not in the kernel mod {cat.d}")
    return tau_refined(cat, f, s, threads) * tau_mirror_refined(cat, f, _shift(cat, s, h), threads)


@dataclass
class RefinedTable:
    tau: ExactValue
    tau_mirror: ExactValue
    tau_refined: dict  # structure values -> tau(M,s)
    entries: dict  # (s values, h values) -> Z(M,s,h)
    total: ExactValue
    checks: dict = field(default_factory=dict)

    @property
    def tv(self) -> ExactValue:
        return self.tau * self.tau_mirror


def refined_table(cat: CategoryData, f: PlumbingForest, threads: int = 1) -> RefinedTable:
    """All refined values, with the decomposition identities checked exactly."""
    ss = refined_structures(cat, f)
    hs = kernel_classes(cat, f)
    t = tau(cat, f, threads)
    t_mirror = tau(cat, mirror(f), threads)
    plus = {s.values: tau_refined(cat, f, s, threads) for s in ss}
    minus = {s.values: tau_mirror_refined(cat, f, s, threads) for s in ss}
    entries = {}
    orderings_agree = True
    for s in ss:
        for h in hs:
            sh = _shift(cat, s, h)
            z = plus[s.values] * minus[sh.values]
            entries[(s.values, h.values)] = z
            if z != plus[sh.values] * minus[s.values]:
                orderings_agree = False
    total = cat.ctx.zero()
    for z in entries.values():
        total = total + z
    refined_sum = cat.ctx.zero()
    for v in plus.values():
        refined_sum = refined_sum + v
    checks = {
        "refined_sum": "pass" if refined_sum == t else "fail",
        "decomposition": "pass" if total == t * t_mirror else "fail",
        "orderings": "pass" if orderings_agree else "fail",
    }
    return RefinedTable(t, t_mirror, plus, entries, total, checks)


# --------------------------------------------------------------------------
# regression set used by calibration


def same_multiset(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    rest = list(b)
    for x in a:
        for k, y in enumerate(rest):
            if x == y:
                del rest[k]
                break
        else:
            return False
    return True


REGRESSION_FORESTS = (
    chain(-2),
    chain(-3),
    chain(-3, -2),
    chain(2),
    chain(-2, -2, -2),
    s1_x_s2(),
)

BLOWDOWN_FORESTS = (
    chain(1),
    chain(-1),
    chain(3, 1),
    chain(-2, -1, -2),
    chain(1, 1),
    chain(-2, 1, -3, -1),
)


def regression_values(cat: CategoryData) -> tuple:
    """tau and refined tau on fixed lens spaces; used to compare conventions."""
    out = []
    for f in REGRESSION_FORESTS:
        out.append(tau(cat, f))
        out.extend(tau_refined(cat, f, s) for s in refined_structures(cat, f))
    return tuple(v.normalized() for v in out)


def blowdown_failures(cat: CategoryData, f: PlumbingForest) -> list[str]:
    """Compare f against every single blow-down of it."""
    fails = []
    t = tau(cat, f)
    refined = [tau_refined(cat, f, s) for s in refined_structures(cat, f)]
    for v in blowdownable(f):
        g = blow_down(f, v)
        if tau(cat, g) != t:
            fails.append(f"tau changes when blowing down {v} in {f.to_json()}")
        other = [tau_refined(cat, g, s) for s in refined_structures(cat, g)]
        if not same_multiset(refined, other):
            fails.append(f"refined values change when blowing down {v} in {f.to_json()}")
    return fails


def presentation_failures(cat: CategoryData) -> list[str]:
    fails = []
    for f in BLOWDOWN_FORESTS:
        fails.extend(blowdown_failures(cat, f))
    return fails
