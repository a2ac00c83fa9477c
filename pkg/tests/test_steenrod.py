from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadcycles.cycles import Cycle, cross, hpow, lcls, rho
from quadcycles.ring import H, L, DomainError, LPrime, QuadricContext
from quadcycles.steenrod import (
    binom_parity,
    rho_ijl,
    rho_ijl_closed_form,
    steenrod,
    steenrod_basis,
)

C5 = QuadricContext(5)
one, h, h2 = hpow(C5, 0), hpow(C5, 1), hpow(C5, 2)
l0, l1, l2 = lcls(C5, 0), lcls(C5, 1), lcls(C5, 2)


@given(st.integers(0, 200), st.integers(0, 200))
def test_binom_parity_matches_factorials(a, b):
    assert binom_parity(a, b) == comb(a, b) % 2


def test_binom_examples():
    assert binom_parity(6, 4) == 1
    assert binom_parity(5, 2) == 0
    assert binom_parity(7, 0) == 1


def test_basis_examples():
    assert steenrod_basis(H(1), 1, C5) == h2
    assert steenrod_basis(L(1), 1, C5) == l0
    assert not steenrod_basis(H(1), 2, C5)
    for b in C5.basis():
        assert steenrod_basis(b, 0, C5) == Cycle(C5, 1, frozenset({(b,)}))


def test_middle_classes():
    c4 = QuadricContext(4)
    # S^2 on a codimension-2 class is its square
    assert steenrod_basis(LPrime(2), 2, c4) == steenrod_basis(L(2), 2, c4) == lcls(c4, 0)
    with pytest.raises(DomainError):
        steenrod_basis(LPrime(2), 1, C5)


def test_factor_steenrod():
    got = steenrod(rho(2, 1, C5), 1, slot=0)
    assert got == cross(h2, one, l1) + cross(h2, l1, one) + cross(l0, one, h) + cross(l0, h, one)
    c7 = QuadricContext(7)
    o7, h7 = hpow(c7, 0), hpow(c7, 1)
    assert steenrod(rho(2, 2, c7), 2, slot=0) == cross(lcls(c7, 0), o7, h7) + cross(lcls(c7, 0), h7, o7)
    x = rho(2, 0, C5)
    assert steenrod(x, 0, slot=1) == x and steenrod(x, 0) == x


def test_lowered_rho():
    assert rho_ijl(2, 1, 1, C5) == cross(h2, l1) + cross(l0, h)
    assert rho_ijl_closed_form(2, 1, 1, C5) == cross(h2, l1) + cross(l0, h)
    # the direct composite and the closed form agree; the l_1 x h term cancels
    want = cross(h2, l2) + cross(l0, one)
    assert rho_ijl(2, 2, 1, C5) == rho_ijl_closed_form(2, 2, 1, C5) == want


@pytest.mark.parametrize("args", [(1, 1, 1), (3, 1, 1), (2, 0, 1), (2, 1, 2)])
def test_lowered_rho_ranges(args):
    with pytest.raises(DomainError):
        rho_ijl(*args, C5)


@given(st.sampled_from([3, 4, 5, 6, 7]), st.data())
def test_total_cartan_on_powers(n, data):
    c = QuadricContext(n)
    basis = c.basis()
    a, b = data.draw(st.sampled_from(basis)), data.draw(st.sampled_from(basis))
    l = data.draw(st.integers(0, 2 * n))
    x = cross(Cycle(c, 1, frozenset({(a,)})), Cycle(c, 1, frozenset({(b,)})))
    want = Cycle.zero(c, 2)
    for k in range(l + 1):
        want = want + cross(steenrod_basis(a, k, c), steenrod_basis(b, l - k, c))
    assert steenrod(x, l) == want
