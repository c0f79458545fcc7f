import pytest

from skein.errors import TooLarge
from skein.exact import quantum_integer
from skein.manifolds import e8_sphere, linking_matrix
from skein.oracles import (
    ConventionMap,
    brute_solve,
    check_convention_map,
    search_convention_maps,
    tl_data,
)

from conftest import category, load_fixture


def test_tl_closed_forms(cat22):
    ctx = cat22.ctx
    q0, t0, h = tl_data(ctx, 0, 2, 1)
    assert q0 == 1 and t0 == 1 and h == tl_data(ctx, 2, 0, 1)[0]
    q1, _, h11 = tl_data(ctx, 1, 1, 1)
    # A = zeta_16 has [4]_A = 0
    assert h11 == -quantum_integer(ctx, 4, 2) == 0
    assert q1 == -quantum_integer(ctx, 2, 2)
    assert q1 == -cat22.qdim[1]


def test_brute_solve_examples():
    assert brute_solve([[0]], [0], 2) == [(0,), (1,)]
    assert brute_solve([[1]], [1], 2) == [(1,)]
    L = linking_matrix(e8_sphere())
    assert brute_solve(L, [0] * 8, 2) == [(0,) * 8]
    with pytest.raises(TooLarge):
        brute_solve([[1] * 9], [0], 2)
    with pytest.raises(TooLarge):
        brute_solve([[1]], [0], 6)


@pytest.mark.parametrize("key", ["2,2,spin", "2,6,spin", "2,4,coh"])
def test_frozen_convention_map(key):
    N, K, mode = key.split(",")
    cat = category(int(N), int(K), mode)
    frozen = load_fixture("tl_convention_map.json")[key]
    cmap = ConventionMap(frozen["a_exponent"], frozen["box_sign"], frozen["exact"])
    assert check_convention_map(cat, cmap)
    exact = [m for m in search_convention_maps(cat) if m.exact]
    assert exact == [cmap]


def test_oracle_refuses_other_ranks(cat44):
    with pytest.raises(ValueError):
        search_convention_maps(cat44)
