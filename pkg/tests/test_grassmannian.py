import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadcycles.grassmannian import ZProduct, degree_z_product
from quadcycles.ring import DomainError, QuadricContext

C5 = QuadricContext(5)


@pytest.mark.parametrize("idx, want", [((0, 1, 2), 1), ((0, 0, 1), 0), ((0, 1), 0), ((2, 1, 0), 1)])
def test_examples(idx, want):
    assert degree_z_product(idx, C5) == want


def test_validation():
    with pytest.raises(DomainError):
        ZProduct.of([0, 3], 2)
    assert degree_z_product([0, 1, 2, 2], C5) == 0


@given(st.integers(0, 6), st.data())
def test_permutation_invariant(d, data):
    ctx = QuadricContext(2 * d + 1)
    idx = data.draw(st.lists(st.integers(0, d), max_size=d + 2))
    perm = data.draw(st.permutations(idx))
    assert degree_z_product(idx, ctx) == degree_z_product(perm, ctx)


def test_even_and_odd_agree():
    for d in range(1, 5):
        for idx in itertools.combinations_with_replacement(range(d + 1), d + 1):
            assert degree_z_product(idx, QuadricContext(2 * d)) == degree_z_product(idx, QuadricContext(2 * d + 1))
