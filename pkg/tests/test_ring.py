import itertools

import pytest

from quadcycles import oracle
from quadcycles.ring import (
    H,
    L,
    DomainError,
    LPrime,
    QuadricContext,
    codim,
    mul_basis,
    point_pushforward,
)


def ctx(n):
    return QuadricContext(n)


@pytest.mark.parametrize("n, a, b, want", [
    (5, H(1), L(2), {L(1)}),
    (5, H(1), H(2), set()),
    (4, L(2), L(2), {L(0)}),
    (6, L(3), L(3), set()),
    (6, L(3), LPrime(3), {L(0)}),
    (5, L(1), L(2), set()),
    (4, H(1), H(1), {L(2), LPrime(2)}),
    (4, LPrime(2), LPrime(2), {L(0)}),
    (8, L(4), LPrime(4), set()),
    (6, H(1), LPrime(3), {L(2)}),
])
def test_products(n, a, b, want):
    assert mul_basis(a, b, ctx(n)) == frozenset(want)


def test_basis_shape():
    assert list(ctx(5).basis()) == [H(0), H(1), H(2), L(0), L(1), L(2)]
    assert list(ctx(4).basis()) == [H(0), H(1), L(0), L(1), L(2), LPrime(2)]
    assert [str(b) for b in ctx(2).basis()] == ["1", "l_0", "l_1", "l'_1"]


def test_invalid_classes():
    with pytest.raises(DomainError):
        mul_basis(LPrime(2), H(0), ctx(5))
    with pytest.raises(DomainError):
        mul_basis(H(2), H(0), ctx(4))  # h^d is not a basis element for even n
    with pytest.raises(DomainError):
        mul_basis(L(4), H(0), ctx(5))
    with pytest.raises(DomainError):
        QuadricContext(0)


def test_middle_power_normalizes():
    c = ctx(4)
    assert set(c.h_power(2)) == {L(2), LPrime(2)}
    assert not c.h_power(3)


@pytest.mark.parametrize("b, want", [(L(0), 1), (H(0), 0), (L(1), 0)])
def test_point_pushforward(b, want):
    assert point_pushforward(b) == want


@pytest.mark.parametrize("n, b, want", [(5, H(2), 2), (5, L(1), 4), (6, LPrime(3), 3)])
def test_codim(n, b, want):
    assert codim(b, ctx(n)) == want


@pytest.mark.parametrize("n", range(1, 13))
def test_oracle_and_ring_laws(n):
    c = ctx(n)
    basis = c.basis()
    for a, b in itertools.product(basis, repeat=2):
        assert mul_basis(a, b, c) == oracle.product_mod2(a, b, n)
        assert mul_basis(a, b, c) == mul_basis(b, a, c)
        assert mul_basis(H(0), b, c) == frozenset({b})


def test_oracle_is_integral():
    # h^(d+1) = 2 l_(n-d-1) on an odd quadric: vanishes mod 2 but not integrally
    assert oracle.h_power(3, 5) == {L(2): 2}
    assert oracle.h_power(2, 4) == {L(2): 1, LPrime(2): 1}
