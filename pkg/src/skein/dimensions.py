"""Dimensions of TQFT state spaces of closed connected surfaces."""

from __future__ import annotations

from typing import Sequence

from .category import CategoryData
from .errors import NonIntegerDimension


def verlinde_dim(cat: CategoryData, genus: int) -> int:
    """sum over colors of (eta <x>)^(2 - 2g), required to be a nonnegative integer."""
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    total = cat.ctx.zero()
    for x in range(cat.size):
        total = total + (cat.eta * cat.qdim[x]) ** (2 - 2 * genus)
    value = total.normalized()
    if not value.is_rational():
        raise NonIntegerDimension(f"genus {genus}: {value} is not rational")
    q = value.to_fraction()
    if q.denominator != 1 or q < 0:
        raise NonIntegerDimension(f"genus {genus}: dimension {q} is not a nonnegative integer")
    return int(q)


def count_colorings(cat: CategoryData, genus: int, grading: Sequence[int] | None = None) -> int:
    """Admissible colorings of the standard spine: a baseline carrying g loops.

    The baseline starts and ends at the vacuum; at loop j the baseline color
    t passes through an intermediate x with N^x_{t,a} N^{t'}_{x,a*}, summed
    over loop colors a (of grading z_j when a grading vector is given).
    """
    if grading is not None and len(grading) != genus:
        raise ValueError(f"grading vector has length {len(grading)}, expected {genus}")
    n = cat.size
    state = [0] * n
    state[cat.vacuum] = 1
    for j in range(genus):
        loops = range(n) if grading is None else cat.of_grading(grading[j])
        nxt = [0] * n
        for t, count in enumerate(state):
            if not count:
                continue
            for a in loops:
                ad = cat.dual[a]
                for x, m1 in cat.fusion[t][a].items():
                    for t2, m2 in cat.fusion[x][ad].items():
                        nxt[t2] += count * m1 * m2
        state = nxt
    return state[cat.vacuum]
