"""Young diagram combinatorics and truncated (level K) tensor products.

Diagrams are plain tuples of weakly decreasing positive integers; ``()`` is
the empty diagram.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterator, Sequence

__all__ = [
    "normalize",
    "size",
    "conjugate",
    "cells",
    "hooks_and_contents",
    "content_sum",
    "partitions_in_box",
    "lr_coefficient",
    "lr_product",
    "su_fusion",
]


def normalize(rows: Sequence[int]) -> tuple[int, ...]:
    """Validate a row sequence and drop trailing zeros."""
    rows = tuple(int(r) for r in rows)
    while rows and rows[-1] == 0:
        rows = rows[:-1]
    for a, b in zip(rows, rows[1:]):
        if a < b:
            raise ValueError(f"rows must be weakly decreasing: {rows}")
    if rows and rows[-1] < 0:
        raise ValueError(f"rows must be positive: {rows}")
    return rows


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def conjugate(lam: Sequence[int]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for r in lam if r > j) for j in range(lam[0]))


def cells(lam: Sequence[int]) -> Iterator[tuple[int, int]]:
    """1-based (row, column) coordinates in row-major order."""
    for i, r in enumerate(lam, start=1):
        for j in range(1, r + 1):
            yield i, j


def hooks_and_contents(lam: Sequence[int]) -> list[tuple[int, int]]:
    """(hook length, content) for each cell, row-major."""
    cols = conjugate(lam)
    return [(lam[i - 1] + cols[j - 1] - i - j + 1, j - i) for i, j in cells(lam)]


def content_sum(lam: Sequence[int]) -> int:
    return sum(j - i for i, j in cells(lam))


def partitions_in_box(rows: int, cols: int) -> list[tuple[int, ...]]:
    """All diagrams with at most ``rows`` rows and at most ``cols`` columns."""
    out = []

    def rec(prefix, remaining, cap):
        out.append(tuple(prefix))
        if remaining == 0:
            return
        for r in range(cap, 0, -1):
            prefix.append(r)
            rec(prefix, remaining - 1, r)
            prefix.pop()

    rec([], rows, cols)
    return sorted(out, key=lambda p: (sum(p), p))


def _contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    if len(inner) > len(outer):
        return False
    return all(o >= i for o, i in zip(outer, inner))


@lru_cache(maxsize=None)
def lr_coefficient(lam: tuple[int, ...], mu: tuple[int, ...], nu: tuple[int, ...]) -> int:
    """Littlewood-Richardson coefficient c^nu_{lam, mu} by tableau enumeration.

    Counts semistandard fillings of the skew shape nu/lam with content mu
    whose reverse reading word is a lattice word.
    """
    lam, mu, nu = normalize(lam), normalize(mu), normalize(nu)
    if size(nu) != size(lam) + size(mu) or not _contains(nu, lam):
        return 0
    if not mu:
        return 1
    # skew rows, read top to bottom, each row right to left
    lam_pad = list(lam) + [0] * (len(nu) - len(lam))
    skew = [(lam_pad[i], nu[i]) for i in range(len(nu))]
    filling: list[list[int]] = [[0] * nu[i] for i in range(len(nu))]
    counts = [0] * (len(mu) + 1)
    positions = [(i, j) for i in range(len(nu)) for j in range(skew[i][1] - 1, skew[i][0] - 1, -1)]

    def rec(k: int) -> int:
        if k == len(positions):
            return 1
        i, j = positions[k]
        total = 0
        for v in range(1, len(mu) + 1):
            if counts[v] >= mu[v - 1]:
                continue
            # lattice condition on the reverse reading word
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            # rows weakly increase left to right; we fill right to left
            if j + 1 < skew[i][1] and filling[i][j + 1] < v:
                continue
            # columns strictly increase downward
            if i > 0 and j < nu[i - 1] and j >= lam_pad[i - 1] and filling[i - 1][j] >= v:
                continue
            filling[i][j] = v
            counts[v] += 1
            total += rec(k + 1)
            counts[v] -= 1
            filling[i][j] = 0
        return total

    return rec(0)


def _candidate_outer(lam: tuple[int, ...], mu: tuple[int, ...], max_rows: int | None):
    n = size(lam) + size(mu)
    rows_cap = len(lam) + len(mu)
    if max_rows is not None:
        rows_cap = min(rows_cap, max_rows)
    width = (lam[0] if lam else 0) + (mu[0] if mu else 0)

    def rec(prefix, remaining, cap, idx):
        if remaining == 0:
            yield tuple(prefix)
            return
        if idx >= rows_cap:
            return
        lower = lam[idx] if idx < len(lam) else 0
        for r in range(min(cap, remaining), max(lower, 1) - 1, -1):
            prefix.append(r)
            yield from rec(prefix, remaining - r, r, idx + 1)
            prefix.pop()

    yield from rec([], n, width, 0)


@lru_cache(maxsize=None)
def lr_product(lam: tuple[int, ...], mu: tuple[int, ...], max_rows: int | None = None) -> dict:
    """Classical expansion s_lam * s_mu, optionally truncated to ``max_rows`` rows."""
    out = {}
    for nu in _candidate_outer(lam, mu, max_rows):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[nu] = c
    return out


def _reflect_into_alcove(weight: list[int], N: int, K: int):
    """Dot action of the level-K affine Weyl group on a gl_N weight.

    Returns (sign, weight in the alcove) or None when the shifted weight lies
    on a wall.  The total number of boxes is preserved.
    """
    h = N + K
    e = [weight[i] + N - 1 - i for i in range(N)]
    sign = 1
    while True:
        # finite Weyl group: sort descending, tracking the permutation sign
        for i in range(1, N):
            j = i
            while j > 0 and e[j - 1] < e[j]:
                e[j - 1], e[j] = e[j], e[j - 1]
                sign = -sign
                j -= 1
        if any(e[i] == e[i + 1] for i in range(N - 1)):
            return None
        spread = e[0] - e[-1]
        if spread < h:
            break
        if spread == h:
            return None
        e[0], e[-1] = e[-1] + h, e[0] - h
        sign = -sign
    return sign, [e[i] - (N - 1 - i) for i in range(N)]


@lru_cache(maxsize=None)
def su_fusion(lam: tuple[int, ...], mu: tuple[int, ...], N: int, K: int) -> dict:
    """Truncated tensor product of two alcove diagrams.

    Returns ``{(nu, columns): multiplicity}`` where ``nu`` has fewer than N
    rows and at most K columns, and ``columns`` is the number of full height-N
    columns split off the term (box count is conserved:
    ``|lam| + |mu| == |nu| + N * columns``).
    """
    lam, mu = normalize(lam), normalize(mu)
    for p in (lam, mu):
        if len(p) >= N or (p and p[0] > K):
            raise ValueError(f"{p} is outside the ({N - 1})x{K} alcove")
    acc: Counter = Counter()
    for nu, c in lr_product(lam, mu, N).items():
        weight = list(nu) + [0] * (N - len(nu))
        reflected = _reflect_into_alcove(weight, N, K)
        if reflected is None:
            continue
        sign, w = reflected
        columns = w[-1]
        stripped = normalize([x - columns for x in w])
        acc[(stripped, columns)] += sign * c
    out = {}
    for key, m in acc.items():
        if m < 0:
            raise ArithmeticError(f"negative fusion multiplicity for {lam} x {mu} -> {key}")
        if m:
            out[key] = m
    return out
