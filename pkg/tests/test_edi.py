import itertools
import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadcycles.edi import (
    ADDITIVE_RULES,
    EDIError,
    EDITable,
    WittContext,
    enumerate_admissible,
    propagate,
    rule_classical,
    rule_first_witt_bound,
    rule_higher_steenrod_fill,
    rule_level_two_parity,
    rule_lower_steenrod_shift,
    rule_primordial_descent,
    rule_primordial_jump,
    rule_witt_index_bound,
    shuffled_orders,
)
from quadcycles.identities import witt_contexts

ANISO = WittContext(anisotropic=True)


def fire(rule, n, atoms, w=None):
    return rule(EDITable.from_atoms(n, atoms), w)


def added(firings):
    return sorted(a for f in firings for a in f.added)


def test_table_validation():
    with pytest.raises(EDIError):
        EDITable.from_atoms(5, [(1, 9)])
    with pytest.raises(EDIError):
        EDITable.from_atoms(5, [(3, 1)])
    with pytest.raises(EDIError):
        WittContext(i1=2)
    with pytest.raises(EDIError):
        propagate(EDITable.empty(5), WittContext(True, 5))
    assert EDITable.empty(5).legal_range(1) == (2, 4)


def test_classical():
    assert added(fire(rule_classical, 5, [(1, 2)])) == [(2, 1), (2, 2)]
    assert added(fire(rule_classical, 5, [(1, 3)])) == [(2, 2), (2, 3)]
    assert fire(rule_classical, 5, []) == []
    (f,) = fire(rule_classical, 5, [(0, 5)])
    assert f.added == ((1, 4),) and f.clipped == ((1, 5),)


def test_level_two_parity():
    assert added(fire(rule_level_two_parity, 7, [(2, 3)])) == [(2, 4)]
    assert fire(rule_level_two_parity, 7, [(2, 2)]) == []
    assert added(fire(rule_level_two_parity, 5, [(2, 1)])) == [(2, 2)]


def test_steenrod_rules():
    (f,) = fire(rule_higher_steenrod_fill, 9, [(4, 1)])
    assert f.params == {"i": 4, "m": 1, "l": 4} and f.added == ((4, 5),)
    assert fire(rule_higher_steenrod_fill, 7, [(2, 2)]) == []
    assert added(fire(rule_lower_steenrod_shift, 9, [(4, 1)])) == [(4, 4), (4, 5)]
    for f in fire(rule_lower_steenrod_shift, 10, [(i, m) for i in range(2, 6)
                                                 for m in range(10 - i - 5, 10 - i + 1)]):
        p = f.params
        from quadcycles.steenrod import binom_parity
        assert binom_parity(p["m"] + p["i"] + 1, p["l"]) == 1


def test_witt_rules():
    assert fire(rule_witt_index_bound, 5, [(1, 3)], WittContext()) == []
    (f,) = fire(rule_witt_index_bound, 5, [(1, 3)], ANISO)
    assert f.contradiction and f.rule == "witt-index-bound"
    assert added(fire(rule_primordial_descent, 7, [(1, 4)], WittContext(True, 2))) == [(0, 5)]
    assert fire(rule_primordial_descent, 7, [(1, 5)], WittContext(True, 2)) == []  # n - m = i1
    assert fire(rule_primordial_descent, 7, [(2, 3)], WittContext(True, 2)) == []  # i1 <= i
    assert added(fire(rule_primordial_jump, 9, [(2, 5)], WittContext(True, 3))) == [(1, 6)]
    assert fire(rule_primordial_jump, 9, [(1, 5)], WittContext(True, 3)) == []  # no l < i
    (f,) = fire(rule_first_witt_bound, 9, [(2, 7)], WittContext(True, 3))
    assert f.contradiction


def test_propagate_examples():
    assert propagate(EDITable.empty(9), ANISO).table == EDITable.empty(9)
    res = propagate(EDITable.from_atoms(9, [(4, 1)]), ANISO)
    assert res.ok and sorted(res.table.sets[4]) == [1, 4, 5]
    assert res.trail and all(f.added for f in res.trail)
    res = propagate(EDITable.from_atoms(5, [(1, 3)]), ANISO)
    assert not res.ok and res.contradiction.params == {"i": 1, "m": 3, "l": 1}


def test_trail_replays_to_closure():
    seed = EDITable.from_atoms(10, [(2, 3), (4, 2)])
    res = propagate(seed, WittContext(True, 5))
    replay = seed
    for f in res.trail:
        assert all(a in replay or a in f.added for a in f.added)
        replay = replay.with_atoms(f.added)
    assert replay == res.table


tables_st = st.integers(3, 10).flatmap(
    lambda n: st.lists(st.sampled_from(EDITable.empty(n).all_atoms()), max_size=4)
    .map(lambda atoms: EDITable.from_atoms(n, atoms)))


@given(tables_st, st.data())
def test_closure_properties(t, data):
    w = data.draw(st.sampled_from(witt_contexts(t.n)))
    base = propagate(t, w)
    assert all(a in base.table for a in t.atoms())  # extensive
    again = propagate(base.table, w)
    assert again.table == base.table and (again.ok == base.ok)  # idempotent
    for order in shuffled_orders(3, seed=t.n):
        other = propagate(t, w, order)
        assert other.ok == base.ok
        if base.ok:
            assert other.table == base.table


def brute_force(n, w):
    atoms = EDITable.empty(n).all_atoms()
    out = []
    for bits in itertools.product((0, 1), repeat=len(atoms)):
        t = EDITable.from_atoms(n, [a for a, b in zip(atoms, bits) if b])
        res = propagate(t, w)
        if res.ok and res.table == t:
            out.append(t)
    return sorted(out, key=EDITable.key)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_equals_brute_force(n):
    for w in witt_contexts(n):
        assert list(enumerate_admissible(n, w)) == brute_force(n, w)


def test_enumeration_is_sorted_and_closed():
    tables = list(enumerate_admissible(8, ANISO))
    assert [t.key() for t in tables] == sorted(t.key() for t in tables)
    assert len(set(t.key() for t in tables)) == len(tables)
    for t in tables[::25]:
        res = propagate(t, ANISO)
        assert res.ok and res.table == t


def test_level_filter_projects():
    full = list(enumerate_admissible(6, ANISO))
    proj = list(enumerate_admissible(6, ANISO, level_filter=[2]))
    want = {tuple(sorted(t.sets[2])) for t in full}
    assert sorted(tuple(sorted(t.sets[2])) for t in proj) == sorted(want)
    assert all(not t.sets[i] for t in proj for i in (0, 1, 3))


def test_enumeration_bound():
    with pytest.raises(EDIError):
        list(enumerate_admissible(15, WittContext()))


def test_snapshot_file_covers_n_up_to_10():
    snap = json.loads((Path(__file__).parent / "snapshots" / "edi_counts.json").read_text())
    assert sorted(map(int, snap)) == list(range(1, 11))


def test_rule_names_unique():
    names = [name for name, _ in ADDITIVE_RULES]
    assert len(names) == len(set(names))


@pytest.mark.parametrize("w", [WittContext(), WittContext(True, 2), WittContext(True, 4)])
def test_enumeration_equals_brute_force_n6(w):
    assert list(enumerate_admissible(6, w)) == brute_force(6, w)
