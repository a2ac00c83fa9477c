"""Inference over candidate Elementary Discrete Invariant tables.

A table holds, for each level ``i`` in ``0..d``, a set of integers m from the
legal range ``[n-i-d, n-i]`` (m = n-i-j with ``0 <= j <= d``). The rules below
are necessary conditions: every one of them turns a single membership into
further memberships or into a contradiction with the Witt-index data.
Closing a table under them is therefore a least fixed point, and admissible
tables are exactly the up-sets of the induced implication graph that avoid
forbidden atoms. "Admissible" never means "realized by a quadratic form".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from .steenrod import binom_parity

Atom = Tuple[int, int]  # (level, m)

DEFAULT_MAX_N = 14


class EDIError(ValueError):
    pass


@dataclass(frozen=True)
class EDITable:
    n: int
    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise EDIError(f"quadric dimension must be positive, got {self.n}")
        if len(self.sets) != self.d + 1:
            raise EDIError(f"expected {self.d + 1} levels, got {len(self.sets)}")
        for i, members in enumerate(self.sets):
            lo, hi = self.legal_range(i)
            bad = [m for m in members if not lo <= m <= hi]
            if bad:
                raise EDIError(f"level {i}: {sorted(bad)} outside legal range [{lo}, {hi}]")

    @property
    def d(self) -> int:
        return self.n // 2

    @classmethod
    def empty(cls, n: int) -> "EDITable":
        return cls(n, tuple(frozenset() for _ in range(n // 2 + 1)))

    @classmethod
    def from_atoms(cls, n: int, atoms: Iterable[Atom]) -> "EDITable":
        sets: List[set] = [set() for _ in range(n // 2 + 1)]
        for i, m in atoms:
            if not 0 <= i <= n // 2:
                raise EDIError(f"level {i} out of range 0..{n // 2}")
            sets[i].add(m)
        return cls(n, tuple(frozenset(s) for s in sets))

    def legal_range(self, i: int) -> Tuple[int, int]:
        return self.n - i - self.d, self.n - i

    def in_range(self, i: int, m: int) -> bool:
        if not 0 <= i <= self.d:
            return False
        lo, hi = self.legal_range(i)
        return lo <= m <= hi

    def atoms(self) -> List[Atom]:
        return [(i, m) for i, members in enumerate(self.sets) for m in sorted(members)]

    def all_atoms(self) -> List[Atom]:
        return [(i, m) for i in range(self.d + 1)
                for m in range(self.legal_range(i)[0], self.legal_range(i)[1] + 1)]

    def __contains__(self, atom: Atom) -> bool:
        i, m = atom
        return 0 <= i <= self.d and m in self.sets[i]

    def with_atoms(self, atoms: Iterable[Atom]) -> "EDITable":
        sets = [set(s) for s in self.sets]
        for i, m in atoms:
            sets[i].add(m)
        return EDITable(self.n, tuple(frozenset(s) for s in sets))

    def restrict(self, levels: Iterable[int]) -> Dict[int, Tuple[int, ...]]:
        return {i: tuple(sorted(self.sets[i])) for i in sorted(set(levels))}

    def key(self) -> Tuple[int, ...]:
        """Characteristic vector over :meth:`all_atoms`; sorts tables lexicographically."""
        return tuple(1 if a in self else 0 for a in self.all_atoms())

    def __str__(self) -> str:
        parts = [f"{i}:{{{','.join(map(str, sorted(s)))}}}" for i, s in enumerate(self.sets)]
        return f"EDI(n={self.n}) " + " ".join(parts)


@dataclass(frozen=True)
class WittContext:
    anisotropic: bool = False
    i1: Optional[int] = None

    def __post_init__(self) -> None:
        if self.i1 is not None:
            if not self.anisotropic:
                raise EDIError("a first Witt index is only meaningful for an anisotropic quadric")
            if self.i1 < 1:
                raise EDIError(f"first Witt index must be >= 1, got {self.i1}")

    def validate(self, n: int) -> None:
        if self.i1 is not None and self.i1 > n // 2 + 1:
            raise EDIError(f"first Witt index {self.i1} exceeds d+1={n // 2 + 1}")


@dataclass(frozen=True)
class RuleFiring:
    rule: str
    hypothesis: Tuple[Tuple[str, int], ...]
    added: Tuple[Atom, ...] = ()
    clipped: Tuple[Atom, ...] = ()
    contradiction: bool = False

    @property
    def params(self) -> Dict[str, int]:
        return dict(self.hypothesis)

    def describe(self) -> str:
        hyp = ", ".join(f"{k}={v}" for k, v in self.hypothesis)
        if self.contradiction:
            return f"{self.rule}({hyp}): contradiction"
        added = ", ".join(f"{m}@{i}" for i, m in self.added)
        return f"{self.rule}({hyp}): +{{{added}}}"


def _firing(t: EDITable, rule: str, targets: Iterable[Atom], **hyp: int) -> RuleFiring:
    added, clipped = [], []
    for i, m in targets:
        (added if t.in_range(i, m) else clipped).append((i, m))
    return RuleFiring(rule, tuple(hyp.items()), tuple(added), tuple(clipped))


def _contradiction(rule: str, **hyp: int) -> RuleFiring:
    return RuleFiring(rule, tuple(hyp.items()), contradiction=True)


# ---------------------------------------------------------------------------
# rules


def rule_classical(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """m at level i gives m and m-1 at level i+1."""
    out = []
    for i in range(t.d):
        for m in sorted(t.sets[i]):
            out.append(_firing(t, "classical-shift", [(i + 1, m), (i + 1, m - 1)], i=i, m=m))
    return out


def rule_level_two_parity(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """Odd m in ``[n-2-d, n-4]`` at level 2 gives m+1 at level 2."""
    if t.d < 2:
        return []
    out = []
    for m in sorted(t.sets[2]):
        if m % 2 == 1 and t.n - 2 - t.d <= m <= t.n - 4:
            out.append(_firing(t, "level-two-parity", [(2, m + 1)], i=2, m=m))
    return out


def lower_steenrod_shift_applies(n: int, i: int, m: int, l: int, a: int) -> bool:
    d = n // 2
    if not (2 <= i <= d and 1 <= l <= i - 1 and n - i - d <= m <= n - i - l):
        return False
    if not binom_parity(m + i + 1, l) or not 0 <= a <= n - i - m - l:
        return False
    return all(not binom_parity(k, l) for k in range(l, i) if i <= k + l + a <= d)


def rule_lower_steenrod_shift(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """m at level i gives m+l+a when ``C(m+i+1, l)`` is odd and every
    ``C(k, l)`` with ``k+l+a`` in ``{i..d}`` is even."""
    n, d = t.n, t.d
    out = []
    for i in range(2, d + 1):
        for m in sorted(t.sets[i]):
            for l in range(1, i):
                for a in range(0, n - i - m - l + 1):
                    if lower_steenrod_shift_applies(n, i, m, l, a):
                        out.append(_firing(t, "lower-steenrod-shift", [(i, m + l + a)],
                                           i=i, m=m, l=l, a=a))
    return out


def higher_steenrod_fill_applies(n: int, i: int, m: int, l: int) -> bool:
    d = n // 2
    return (2 <= i <= d and i <= l <= d and n - i - d <= m <= n - i - l
            and binom_parity(m + i + 1, l) == 1)


def rule_higher_steenrod_fill(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """m at level i gives every m' in ``[m+l, n-i]`` for ``i <= l`` with ``C(m+i+1, l)`` odd."""
    n, d = t.n, t.d
    out = []
    for i in range(2, d + 1):
        for m in sorted(t.sets[i]):
            for l in range(i, d + 1):
                if higher_steenrod_fill_applies(n, i, m, l):
                    targets = [(i, mm) for mm in range(m + l, n - i + 1)]
                    out.append(_firing(t, "higher-steenrod-fill", targets, i=i, m=m, l=l))
    return out


def witt_index_bound_applies(n: int, m: int, l: int) -> bool:
    d = n // 2
    return 1 <= l <= d and n - 1 - d <= m <= n - 1 - l and binom_parity(m + 2, l) == 1


def rule_witt_index_bound(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """Under anisotropy, m at level 1 is impossible when ``C(m+2, l)`` is odd
    for some admissible l (it would force Witt index ``>= n-m-l >= 1``)."""
    if w is None or not w.anisotropic or t.d < 1:
        return []
    out = []
    for m in sorted(t.sets[1]):
        for l in range(1, t.d + 1):
            if witt_index_bound_applies(t.n, m, l):
                out.append(_contradiction("witt-index-bound", i=1, m=m, l=l))
                break
    return out


def _primordial_excluded(n: int, i1: int, m: int) -> bool:
    d = n // 2
    return n - m == i1 or 2 * i1 <= n - m <= d + 1


def rule_primordial_descent(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """With first Witt index ``i1 > i``, m at level i gives m+1 at level i-1
    unless ``n-m`` is i1 or lies in ``{2 i1, .., d+1}``."""
    if w is None or not w.anisotropic or w.i1 is None:
        return []
    out = []
    for i in range(1, t.d + 1):
        if w.i1 <= i:
            continue
        for m in sorted(t.sets[i]):
            if not _primordial_excluded(t.n, w.i1, m):
                out.append(_firing(t, "primordial-descent", [(i - 1, m + 1)], i=i, m=m, i1=w.i1))
    return out


def rule_first_witt_bound(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """With ``i1 > i``, m at level i needs ``n - m >= i1``."""
    if w is None or not w.anisotropic or w.i1 is None:
        return []
    out = []
    for i in range(1, t.d + 1):
        if w.i1 <= i:
            continue
        for m in sorted(t.sets[i]):
            if t.n - m < w.i1:
                out.append(_contradiction("first-witt-bound", i=i, m=m, i1=w.i1))
    return out


def rule_primordial_jump(t: EDITable, w: WittContext | None = None) -> List[RuleFiring]:
    """With ``i1 > i``, m at level i and ``n-m`` equal to ``i1+l`` or ``d+1+l``
    (``1 <= l < i``) gives m+l at level i-l."""
    if w is None or not w.anisotropic or w.i1 is None:
        return []
    out = []
    for i in range(1, t.d + 1):
        if w.i1 <= i:
            continue
        for m in sorted(t.sets[i]):
            for l in range(1, i):
                if t.n - m in (w.i1 + l, t.d + 1 + l):
                    out.append(_firing(t, "primordial-jump", [(i - l, m + l)],
                                       i=i, m=m, l=l, i1=w.i1))
    return out


Rule = Callable[[EDITable, Optional[WittContext]], List[RuleFiring]]

ADDITIVE_RULES: Tuple[Tuple[str, Rule], ...] = (
    ("classical-shift", rule_classical),
    ("level-two-parity", rule_level_two_parity),
    ("lower-steenrod-shift", rule_lower_steenrod_shift),
    ("higher-steenrod-fill", rule_higher_steenrod_fill),
    ("primordial-descent", rule_primordial_descent),
    ("primordial-jump", rule_primordial_jump),
)

CONTRADICTION_RULES: Tuple[Tuple[str, Rule], ...] = (
    ("witt-index-bound", rule_witt_index_bound),
    ("first-witt-bound", rule_first_witt_bound),
)

RULE_NAMES = tuple(name for name, _ in ADDITIVE_RULES + CONTRADICTION_RULES)


# ---------------------------------------------------------------------------
# closure


@dataclass
class Propagation:
    table: EDITable
    trail: List[RuleFiring] = field(default_factory=list)
    contradiction: Optional[RuleFiring] = None
    rounds: int = 0

    @property
    def ok(self) -> bool:
        return self.contradiction is None


def _first_contradiction(t: EDITable, w: WittContext) -> Optional[RuleFiring]:
    for _, rule in CONTRADICTION_RULES:
        hits = rule(t, w)
        if hits:
            return hits[0]
    return None


def propagate(t: EDITable, w: WittContext | None = None,
              order: Optional[Sequence[str]] = None) -> Propagation:
    """Close ``t`` under the additive rules; stop at the first contradiction.

    ``order`` permutes the additive rules (by name); the fixed point does not
    depend on it.
    """
    w = w or WittContext()
    w.validate(t.n)
    rules = dict(ADDITIVE_RULES)
    names = list(order) if order is not None else [name for name, _ in ADDITIVE_RULES]
    if sorted(names) != sorted(rules):
        raise EDIError(f"rule order must be a permutation of {sorted(rules)}")
    result = Propagation(t)
    budget = sum(len(range(*t.legal_range(i))) + 1 for i in range(t.d + 1)) + 1
    while True:
        bad = _first_contradiction(result.table, w)
        if bad is not None:
            result.contradiction = bad
            return result
        if result.rounds > budget:
            raise EDIError("propagation did not converge")  # pragma: no cover
        changed = False
        for name in names:
            for firing in rules[name](result.table, w):
                new = [a for a in firing.added if a not in result.table]
                if new:
                    result.table = result.table.with_atoms(new)
                    result.trail.append(firing)
                    changed = True
        result.rounds += 1
        if not changed:
            return result


def shuffled_orders(count: int, seed: int = 0) -> Iterator[List[str]]:
    rng = random.Random(seed)
    names = [name for name, _ in ADDITIVE_RULES]
    for _ in range(count):
        order = names[:]
        rng.shuffle(order)
        yield order


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class ImplicationGraph:
    """Single-premise structure of the rule set for one quadric dimension."""

    n: int
    atoms: Tuple[Atom, ...]
    successors: Dict[Atom, FrozenSet[Atom]]
    forbidden: FrozenSet[Atom]

    @classmethod
    def build(cls, n: int, w: WittContext) -> "ImplicationGraph":
        empty = EDITable.empty(n)
        atoms = tuple(empty.all_atoms())
        succ: Dict[Atom, FrozenSet[Atom]] = {}
        forbidden = set()
        for atom in atoms:
            single = EDITable.from_atoms(n, [atom])
            if _first_contradiction(single, w) is not None:
                forbidden.add(atom)
            targets = set()
            for _, rule in ADDITIVE_RULES:
                for firing in rule(single, w):
                    targets.update(firing.added)
            targets.discard(atom)
            succ[atom] = frozenset(targets)
        return cls(n, atoms, succ, frozenset(forbidden))

    def closure(self, atom: Atom) -> FrozenSet[Atom]:
        seen = {atom}
        stack = [atom]
        while stack:
            for nxt in self.successors[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return frozenset(seen)


def enumerate_admissible(n: int, w: WittContext | None = None,
                         level_filter: Optional[Iterable[int]] = None,
                         max_n: int = DEFAULT_MAX_N) -> Iterator[EDITable]:
    """All rule-closed, contradiction-free tables, in lexicographic order of
    their characteristic vectors (levels ascending, m ascending, absent first).

    With ``level_filter`` the tables are restricted to those levels (others
    emptied) and deduplicated.
    """
    if n > max_n:
        raise EDIError(f"n={n} exceeds the enumeration bound {max_n}")
    w = w or WittContext()
    w.validate(n)
    graph = ImplicationGraph.build(n, w)
    closures = {a: graph.closure(a) for a in graph.atoms}
    poisoned = {a for a in graph.atoms if closures[a] & graph.forbidden}
    atoms = graph.atoms

    def search(pos: int, included: FrozenSet[Atom], excluded: FrozenSet[Atom]) -> Iterator[FrozenSet[Atom]]:
        if pos == len(atoms):
            yield included
            return
        atom = atoms[pos]
        if atom not in included:
            yield from search(pos + 1, included, excluded | {atom})
        if atom in included:
            yield from search(pos + 1, included, excluded)
        elif atom not in poisoned and not closures[atom] & excluded:
            yield from search(pos + 1, included | closures[atom], excluded)

    stream = (EDITable.from_atoms(n, chosen) for chosen in search(0, frozenset(), frozenset()))
    if level_filter is None:
        yield from stream
        return
    keep = set(level_filter)
    projected = {}
    for table in stream:
        proj = EDITable.from_atoms(n, [a for a in table.atoms() if a[0] in keep])
        projected.setdefault(proj.key(), proj)
    for key in sorted(projected):
        yield projected[key]
