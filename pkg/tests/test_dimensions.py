import itertools

import pytest

from skein.dimensions import count_colorings, verlinde_dim

from conftest import ALL_POINTS, SPIN_POINTS, category


def test_examples(cat22):
    assert verlinde_dim(cat22, 0) == 1
    assert verlinde_dim(cat22, 1) == cat22.size
    assert verlinde_dim(cat22, 2) == 10
    assert count_colorings(cat22, 2) == 10
    assert count_colorings(cat22, 0) == 1


@pytest.mark.parametrize("point", ALL_POINTS)
def test_verlinde_integral(point):
    cat = category(*point)
    dims = [verlinde_dim(cat, g) for g in range(5)]
    assert dims[0] == 1 and dims[1] == cat.size
    assert all(isinstance(x, int) and x >= 0 for x in dims)


@pytest.mark.parametrize("point", SPIN_POINTS)
@pytest.mark.parametrize("genus", [0, 1, 2, 3])
def test_spine_count_matches_verlinde(point, genus):
    cat = category(*point)
    assert count_colorings(cat, genus) == verlinde_dim(cat, genus)


@pytest.mark.parametrize("point", SPIN_POINTS)
def test_graded_counts_partition(point):
    cat = category(*point)
    for genus in (1, 2):
        total = sum(count_colorings(cat, genus, z) for z in itertools.product(range(cat.d), repeat=genus))
        assert total == count_colorings(cat, genus)


def test_grading_length_checked(cat22):
    with pytest.raises(ValueError):
        count_colorings(cat22, 2, [0])
    with pytest.raises(ValueError):
        verlinde_dim(cat22, -1)
