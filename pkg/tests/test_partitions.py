from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skein import partitions as P


def test_hooks_and_contents():
    assert P.hooks_and_contents((2, 1)) == [(3, 0), (1, 1), (1, -1)]
    assert P.content_sum((3, 1)) == 0 + 1 + 2 - 1
    assert P.conjugate((3, 1)) == (2, 1, 1)
    assert P.conjugate(()) == ()


def test_normalize():
    assert P.normalize([2, 1, 0, 0]) == (2, 1)
    with pytest.raises(ValueError):
        P.normalize([1, 2])


def test_hook_length_formula_counts_tableaux():
    # number of standard tableaux equals the coefficient of s_lam in s_(1)^n
    from math import factorial, prod

    for lam in [(3, 2), (2, 2, 1), (4, 1, 1)]:
        n = sum(lam)
        f = factorial(n) // prod(h for h, _ in P.hooks_and_contents(lam))
        power = {(): 1}
        for _ in range(n):
            nxt = {}
            for mu, c in power.items():
                for nu, m in P.lr_product(mu, (1,)).items():
                    nxt[nu] = nxt.get(nu, 0) + c * m
            power = nxt
        assert power[lam] == f


@pytest.mark.parametrize("rows,cols", [(1, 4), (2, 2), (3, 4), (2, 6)])
def test_partitions_in_box_count(rows, cols):
    assert len(P.partitions_in_box(rows, cols)) == comb(rows + cols, rows)


def test_lr_known_values():
    assert P.lr_coefficient((1,), (1, 1), (2, 1)) == 1
    assert P.lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert P.lr_coefficient((1,), (1,), (3,)) == 0
    assert P.lr_product((1,), (1,)) == {(2,): 1, (1, 1): 1}


diagrams = st.lists(st.integers(1, 3), max_size=3).map(lambda r: tuple(sorted(r, reverse=True)))


@settings(max_examples=40, deadline=None)
@given(diagrams, diagrams)
def test_lr_commutative_and_size(lam, mu):
    a, b = P.lr_product(lam, mu), P.lr_product(mu, lam)
    assert a == b
    assert all(sum(nu) == sum(lam) + sum(mu) for nu in a)


def test_su_fusion_examples():
    assert P.su_fusion((1,), (1,), 2, 2) == {((2,), 0): 1, ((), 1): 1}
    assert P.su_fusion((2,), (1,), 2, 2) == {((1,), 1): 1}
    assert P.su_fusion((2,), (2,), 2, 2) == {((), 2): 1}
    assert P.su_fusion((), (1, 1), 3, 2) == {((1, 1), 0): 1}


def test_su_fusion_conserves_boxes():
    for lam in P.partitions_in_box(2, 3):
        for mu in P.partitions_in_box(2, 3):
            for (nu, cols), m in P.su_fusion(lam, mu, 3, 3).items():
                assert m > 0
                assert sum(nu) + 3 * cols == sum(lam) + sum(mu)


def test_su_fusion_rejects_outside_alcove():
    with pytest.raises(ValueError):
        P.su_fusion((3,), (1,), 2, 2)
