import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadcycles.cycles import (
    ArityError,
    Cycle,
    PrimordialSpec,
    corr_action,
    corr_compose,
    cross,
    cyclic_shift,
    degree,
    delta_cycle,
    diagonal_class,
    diagonal_pullback,
    doubling_map,
    equal_mod_nonessential,
    external,
    hpow,
    lcls,
    permute_pushforward,
    primordial,
    projection_pushforward,
    rho,
    subgroup_sum,
    sym,
    sym_orbit,
)
from quadcycles.ring import DomainError, QuadricContext

C5 = QuadricContext(5)
one, h, h2 = hpow(C5, 0), hpow(C5, 1), hpow(C5, 2)
l0, l1, l2 = lcls(C5, 0), lcls(C5, 1), lcls(C5, 2)


def test_addition():
    x = cross(h, l1) + cross(l0, one)
    assert x + x == Cycle.zero(C5, 2)
    assert x + cross(l0, one) == cross(h, l1)
    assert len(cross(one, l0) + cross(l0, one)) == 2


def test_multiplication():
    assert cross(one, h) * (cross(one, l1) + cross(l1, one)) == cross(one, l0) + cross(l1, h)
    assert cross(h2, one) * cross(h, one) == Cycle.zero(C5, 2)
    y = cross(l1, h) + cross(l0, l2)
    assert Cycle.unit(C5, 2) * y == y


def test_arity_mismatch():
    with pytest.raises(ArityError):
        _ = cross(h, h) + h


def test_external():
    assert external(cross(one, l1), h) == cross(one, l1, h)
    assert external(Cycle.zero(C5, 1), h) == Cycle.zero(C5, 2)
    assert external(h + l1, l0) == cross(h, l0) + cross(l1, l0)


def test_permutations():
    assert permute_pushforward((1, 0), cross(one, l0)) == cross(l0, one)
    assert permute_pushforward((0, 1), cross(h, l0)) == cross(h, l0)
    assert permute_pushforward(cyclic_shift(3), cross(h, l1, one)) == cross(one, h, l1)
    with pytest.raises(DomainError):
        permute_pushforward((0, 0), cross(h, h))


def test_symmetrization():
    assert sym(cross(one, l1)) == cross(one, l1) + cross(l1, one)
    assert not sym(cross(h, h))
    assert len(sym(cross(one, h, l0))) == 6


def test_subgroup_sum():
    assert subgroup_sum((0, 1, 2), cross(h, l0, one)) == cross(h, l0, one)
    assert subgroup_sum(cyclic_shift(3), cross(one, l0, one)) == (
        cross(one, l0, one) + cross(one, one, l0) + cross(l0, one, one))
    # repetitions: h^a next to a symmetrization already containing h^a cancel in pairs
    inner = sym(cross(one, h))
    assert not subgroup_sum(cyclic_shift(3), external(h, inner))


def test_diagonal_pullback():
    assert diagonal_pullback(doubling_map(2), cross(h2, one, l1)) == cross(h2, l1)
    assert not diagonal_pullback(doubling_map(2), cross(l0, h, one))
    assert diagonal_pullback((0, 0), cross(h, l1)) == l0
    with pytest.raises(DomainError):
        diagonal_pullback((0, 2), cross(h, h))


def test_projection_and_degree():
    assert projection_pushforward({1}, cross(one, l0)) == one
    assert not projection_pushforward({1}, cross(one, h))
    assert projection_pushforward({1}, cross(l1, l0) + cross(l1, h)) == l1
    assert degree(cross(l0, l0)) == 1
    assert degree(cross(h, l1)) == 0
    assert degree(cross(l0, l0) + cross(l0, l0)) == 0


def test_correspondence_action():
    assert corr_action(diagonal_class(C5), l1) == l1
    assert corr_action(rho(2, 1, C5), h) == cross(one, h) + cross(h, one)
    assert not corr_action(rho(2, 1, C5), h2)


def test_composition():
    gamma = cross(one, h) * primordial(PrimordialSpec(2, {}), C5)
    assert gamma == cross(one, l0) + cross(l1, h)
    assert corr_compose(gamma, rho(1, 0, C5), 1) == cross(one, l0)
    diag = diagonal_class(C5)
    assert corr_compose(diag, diag, 1) == diag
    assert not corr_compose(Cycle.zero(C5, 2), diag, 1)


def test_named_cycles():
    assert rho(0, 2, C5) == l2
    assert rho(1, 1, C5) == cross(one, l1) + cross(l1, one)
    assert rho(2, 0, C5) == sym(cross(one, h, l0)) and len(rho(2, 0, C5)) == 6
    assert delta_cycle(1, 0, C5) == sum(
        (cross(hpow(C5, m), lcls(C5, m)) + cross(lcls(C5, m), hpow(C5, m)) for m in range(3)),
        Cycle.zero(C5, 2))
    assert delta_cycle(2, 0, C5) == sym(cross(one, h, l0)) + sym(cross(h, h2, l2))
    assert diagonal_class(C5) == delta_cycle(1, 0, C5)
    c4 = QuadricContext(4)
    hd = hpow(c4, 2)
    assert diagonal_class(c4) == delta_cycle(1, 0, c4) + cross(hd, hd)


def test_primordial():
    assert primordial(PrimordialSpec(2, {}), C5) == cross(one, l1) + cross(l1, one)
    assert primordial(PrimordialSpec(1, {1: 1, 2: 0}), C5) == (
        cross(one, l0) + cross(l0, one) + cross(h, l1) + cross(l1, h))
    with pytest.raises(DomainError):
        primordial(PrimordialSpec(1, {1: 1}), C5)


def test_equal_mod_nonessential():
    x = rho(1, 0, C5)
    assert equal_mod_nonessential(x, x + cross(h2, one))
    assert not equal_mod_nonessential(x, x + cross(one, l0))
    assert equal_mod_nonessential(x, x)
    # on even n the middle h-power is l_d + l'_d, still nonessential
    c4 = QuadricContext(4)
    y = rho(1, 1, c4)
    assert equal_mod_nonessential(y, y + cross(hpow(c4, 2), hpow(c4, 1)))


def test_orientation_changes_only_middle_rho():
    c6 = QuadricContext(6)
    flipped = c6.with_conventions(orientation="ldprime")
    assert rho(1, 2, c6) == rho(1, 2, flipped)
    assert rho(1, 3, c6) != rho(1, 3, flipped)


# property tests on random cycles

def cycles(ctx, arity):
    monomial = st.tuples(*[st.sampled_from(ctx.basis()) for _ in range(arity)])
    return st.frozensets(monomial, max_size=5).map(lambda ms: Cycle.from_terms(ctx, arity, ms))


ctx_st = st.sampled_from([QuadricContext(n) for n in (3, 4, 5, 6)])


@given(st.data())
def test_ring_axioms(data):
    c = data.draw(ctx_st)
    x, y, z = (data.draw(cycles(c, 2)) for _ in range(3))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + x == Cycle.zero(c, 2)


@given(st.data())
def test_sym_properties(data):
    c = data.draw(ctx_st)
    x = data.draw(cycles(c, 3))
    s = sym(x)
    assert s == sym_orbit(x)
    assert all(permute_pushforward(p, s) == s for p in [(1, 0, 2), (2, 0, 1)])


@given(st.data())
def test_pushforward_is_ring_map(data):
    c = data.draw(ctx_st)
    x, y = data.draw(cycles(c, 3)), data.draw(cycles(c, 3))
    p = data.draw(st.permutations(range(3)))
    assert permute_pushforward(p, x * y) == permute_pushforward(p, x) * permute_pushforward(p, y)


@given(st.data())
def test_diagonal_is_identity_on_random_cycles(data):
    c = data.draw(ctx_st)
    x = data.draw(cycles(c, 1))
    for cc in [c.with_conventions(o, m) for o in ("ld", "ldprime") for m in ("ld", "ldprime")] if c.even else [c]:
        assert corr_action(diagonal_class(cc), x) == x
