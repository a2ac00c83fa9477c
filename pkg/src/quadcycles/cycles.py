"""Mod-2 cycles on powers X^r of a split quadric.

A cycle is a finite set of monomials ``b_1 x ... x b_r`` of basis classes;
coefficients live in GF(2), so addition is symmetric difference. Slots are
0-based throughout this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, Mapping, Sequence, Tuple

from .ring import (
    ONE,
    POINT,
    BasisClass,
    DomainError,
    QuadricContext,
    h_power_classes,
    mul_classes,
    mul_sums,
    toggle,
)

Monomial = Tuple[BasisClass, ...]
Permutation = Tuple[int, ...]


class ArityError(DomainError):
    pass


@dataclass(frozen=True, eq=False)
class Cycle:
    ctx: QuadricContext
    arity: int
    terms: FrozenSet[Monomial] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ArityError(f"cycles need arity >= 1, got {self.arity}")

    @classmethod
    def from_terms(cls, ctx: QuadricContext, arity: int, monomials: Iterable[Monomial]) -> "Cycle":
        """Build a cycle from monomials counted with multiplicity (mod 2)."""
        acc: set = set()
        for m in monomials:
            if len(m) != arity:
                raise ArityError(f"monomial {m} does not have arity {arity}")
            for b in m:
                ctx.validate(b)
            toggle(acc, tuple(m))
        return cls(ctx, arity, frozenset(acc))

    @classmethod
    def zero(cls, ctx: QuadricContext, arity: int) -> "Cycle":
        return cls(ctx, arity, frozenset())

    @classmethod
    def unit(cls, ctx: QuadricContext, arity: int) -> "Cycle":
        return cls(ctx, arity, frozenset({(ONE,) * arity}))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return (self.ctx.n, self.arity, self.terms) == (other.ctx.n, other.arity, other.terms)

    def __hash__(self) -> int:
        return hash((self.ctx.n, self.arity, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __add__(self, other: "Cycle") -> "Cycle":
        return add(self, other)

    def __mul__(self, other: "Cycle") -> "Cycle":
        return mul(self, other)

    def sorted_terms(self) -> list:
        return sorted(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_monomial(m) for m in self.sorted_terms())

    __repr__ = __str__

    def is_homogeneous(self) -> bool:
        return len({monomial_codim(m, self.ctx.n) for m in self.terms}) <= 1


def format_monomial(m: Monomial) -> str:
    return " x ".join(str(b) for b in m)


def monomial_codim(m: Monomial, n: int) -> int:
    return sum(b.index if b.kind == "h" else n - b.index for b in m)


def _same_ring(x: Cycle, y: Cycle) -> None:
    if x.ctx.n != y.ctx.n:
        raise DomainError(f"cycles live on different quadrics (n={x.ctx.n} vs n={y.ctx.n})")


def _check_arity(x: Cycle, y: Cycle) -> None:
    _same_ring(x, y)
    if x.arity != y.arity:
        raise ArityError(f"arity mismatch: {x.arity} vs {y.arity}")


# ---------------------------------------------------------------------------
# basic constructors


def basis_cycle(ctx: QuadricContext, b: BasisClass) -> Cycle:
    ctx.validate(b)
    return Cycle(ctx, 1, frozenset({(b,)}))


def sum_cycle(ctx: QuadricContext, classes: Iterable[BasisClass]) -> Cycle:
    return Cycle.from_terms(ctx, 1, ((b,) for b in classes))


def hpow(ctx: QuadricContext, k: int) -> Cycle:
    """``h^k`` on X, normalized (``h^d = l_d + l'_d`` for even n)."""
    return sum_cycle(ctx, ctx.h_power(k))


def lcls(ctx: QuadricContext, j: int) -> Cycle:
    return basis_cycle(ctx, ctx.l_class(j))


def cross(*cycles: Cycle) -> Cycle:
    """Iterated external product."""
    if not cycles:
        raise ArityError("cross() needs at least one factor")
    out = cycles[0]
    for c in cycles[1:]:
        out = external(out, c)
    return out


# ---------------------------------------------------------------------------
# ring operations


def add(x: Cycle, y: Cycle) -> Cycle:
    _check_arity(x, y)
    return Cycle(x.ctx, x.arity, x.terms ^ y.terms)


def _mul_monomials(a: Monomial, b: Monomial, n: int) -> Iterator[Monomial]:
    slots = []
    for u, v in zip(a, b):
        prod = mul_classes(u, v, n)
        if not prod:
            return
        slots.append(sorted(prod))
    yield from itertools.product(*slots)


def mul(x: Cycle, y: Cycle) -> Cycle:
    """Intersection product, factor by factor."""
    _check_arity(x, y)
    n = x.ctx.n
    acc: set = set()
    for a in x.terms:
        for b in y.terms:
            for m in _mul_monomials(a, b, n):
                toggle(acc, m)
    return Cycle(x.ctx, x.arity, frozenset(acc))


def external(x: Cycle, y: Cycle) -> Cycle:
    _same_ring(x, y)
    terms = frozenset(a + b for a in x.terms for b in y.terms)
    return Cycle(x.ctx, x.arity + y.arity, terms)


def _check_permutation(perm: Sequence[int], r: int) -> Permutation:
    perm = tuple(perm)
    if sorted(perm) != list(range(r)):
        raise ArityError(f"{perm} is not a permutation of {r} slots")
    return perm


def _push_monomial(perm: Permutation, m: Monomial) -> Monomial:
    out = [None] * len(m)
    for k, b in enumerate(m):
        out[perm[k]] = b
    return tuple(out)


def permute_pushforward(perm: Sequence[int], x: Cycle) -> Cycle:
    """``s_*``: the factor in slot k moves to slot ``perm[k]``."""
    perm = _check_permutation(perm, x.arity)
    return Cycle(x.ctx, x.arity, frozenset(_push_monomial(perm, m) for m in x.terms))


def compose_perms(p: Permutation, q: Permutation) -> Permutation:
    """``p o q`` (apply q first)."""
    return tuple(p[q[k]] for k in range(len(q)))


def cyclic_shift(r: int) -> Permutation:
    """The r-cycle sending slot k to slot k+1 (mod r)."""
    return tuple((k + 1) % r for k in range(r))


def sym(x: Cycle) -> Cycle:
    """Sum of ``s_*`` over the full symmetric group, computed literally."""
    acc: set = set()
    perms = list(itertools.permutations(range(x.arity)))
    for m in x.terms:
        for p in perms:
            toggle(acc, _push_monomial(p, m))
    return Cycle(x.ctx, x.arity, frozenset(acc))


def sym_orbit(x: Cycle) -> Cycle:
    """Same as :func:`sym` via orbit counting.

    Each arrangement of a monomial occurs ``prod(mult!)`` times, which is odd
    only when all factors are distinct.
    """
    acc: set = set()
    for m in x.terms:
        if len(set(m)) < len(m):
            continue
        for arrangement in itertools.permutations(m):
            toggle(acc, arrangement)
    return Cycle(x.ctx, x.arity, frozenset(acc))


def subgroup_sum(generator: Sequence[int], x: Cycle) -> Cycle:
    """Sum of ``g^r_*`` over the cyclic group generated by ``generator``."""
    gen = _check_permutation(generator, x.arity)
    identity = tuple(range(x.arity))
    acc: set = set()
    power = identity
    while True:
        for m in x.terms:
            toggle(acc, _push_monomial(power, m))
        power = compose_perms(gen, power)
        if power == identity:
            break
    return Cycle(x.ctx, x.arity, frozenset(acc))


def group_sum(perms: Iterable[Sequence[int]], x: Cycle) -> Cycle:
    acc: set = set()
    for p in perms:
        p = _check_permutation(p, x.arity)
        for m in x.terms:
            toggle(acc, _push_monomial(p, m))
    return Cycle(x.ctx, x.arity, frozenset(acc))


def alternating_group(r: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(r)):
        inversions = sum(1 for a, b in itertools.combinations(p, 2) if a > b)
        if inversions % 2 == 0:
            yield p


def diagonal_pullback(fmap: Sequence[int], x: Cycle) -> Cycle:
    """Pullback along ``X^s -> X^r, (y_1..y_s) -> (y_f(1), .., y_f(r))``.

    ``fmap[k]`` is the target slot of source slot k; it must hit every target.
    """
    fmap = tuple(fmap)
    if len(fmap) != x.arity:
        raise ArityError(f"map has {len(fmap)} entries, cycle has arity {x.arity}")
    s = max(fmap) + 1 if fmap else 0
    if min(fmap) < 0 or set(fmap) != set(range(s)):
        raise ArityError(f"diagonal map {fmap} is not surjective onto 0..{s - 1}")
    n = x.ctx.n
    acc: set = set()
    for m in x.terms:
        fibers = [frozenset({ONE})] * s
        for k, b in enumerate(m):
            fibers[fmap[k]] = mul_sums(fibers[fmap[k]], frozenset({b}), n)
        if not all(fibers):
            continue
        for out in itertools.product(*(sorted(f) for f in fibers)):
            toggle(acc, out)
    return Cycle(x.ctx, s, frozenset(acc))


def doubling_map(i: int) -> Tuple[int, ...]:
    """Map of the diagonal ``X^i -> X^(i+1)`` doubling the first coordinate."""
    return (0,) + tuple(range(i))


def insert_units(x: Cycle, slots: Iterable[int], arity: int) -> Cycle:
    """Pullback along the projection forgetting ``slots`` of X^arity."""
    slots = set(slots)
    keep = [k for k in range(arity) if k not in slots]
    if len(keep) != x.arity:
        raise ArityError("inserted slots do not match the cycle arity")
    terms = set()
    for m in x.terms:
        out = [ONE] * arity
        for k, b in zip(keep, m):
            out[k] = b
        terms.add(tuple(out))
    return Cycle(x.ctx, arity, frozenset(terms))


def projection_pushforward(drop: Iterable[int], x: Cycle) -> Cycle:
    drop = set(drop)
    if not drop <= set(range(x.arity)):
        raise ArityError(f"slots {sorted(drop)} out of range for arity {x.arity}")
    if len(drop) == x.arity:
        raise ArityError("cannot drop every factor; use degree()")
    keep = [k for k in range(x.arity) if k not in drop]
    acc: set = set()
    for m in x.terms:
        if all(m[k] == POINT for k in drop):
            toggle(acc, tuple(m[k] for k in keep))
    return Cycle(x.ctx, len(keep), frozenset(acc))


def degree(x: Cycle) -> int:
    return sum(1 for m in x.terms if all(b == POINT for b in m)) % 2


def corr_action(alpha: Cycle, x: Cycle) -> Cycle:
    """``alpha_*(x)`` for a correspondence ``X ~> X^(r-1)``."""
    _same_ring(alpha, x)
    if x.arity != 1:
        raise ArityError("correspondence action takes a cycle on X")
    if alpha.arity < 2:
        raise ArityError("a correspondence X ~> X^i needs arity >= 2")
    lifted = external(x, Cycle.unit(x.ctx, alpha.arity - 1))
    return projection_pushforward({0}, mul(alpha, lifted))


def corr_compose(alpha: Cycle, beta: Cycle, middle: int) -> Cycle:
    """``beta o alpha`` for ``alpha: X^a ~> X^b`` and ``beta: X^b ~> X^c``."""
    _same_ring(alpha, beta)
    a = alpha.arity - middle
    c = beta.arity - middle
    if middle < 1 or a < 0 or c < 0 or a + c < 1:
        raise ArityError(
            f"cannot split arities {alpha.arity} and {beta.arity} along a middle of size {middle}")
    total = a + middle + c
    left = insert_units(alpha, range(a + middle, total), total)
    right = insert_units(beta, range(a), total)
    return projection_pushforward(range(a, a + middle), mul(left, right))


# ---------------------------------------------------------------------------
# the named cycles


def _check_index(name: str, value: int, lo: int, hi: int) -> None:
    if not isinstance(value, int) or not lo <= value <= hi:
        raise DomainError(f"{name}={value} out of range [{lo}, {hi}]")


def h_string(ctx: QuadricContext, exponents: Iterable[int]) -> list:
    return [hpow(ctx, k) for k in exponents]


def rho(i: int, j: int, ctx: QuadricContext) -> Cycle:
    """``sym(1 x h x ... x h^(i-1) x l_j)`` on X^(i+1)."""
    _check_index("i", i, 0, ctx.d)
    _check_index("j", j, 0, ctx.d)
    return sym(cross(*h_string(ctx, range(i)), lcls(ctx, j)))


def _delta_l(ctx: QuadricContext, m: int) -> Cycle:
    if ctx.even and m == ctx.d:
        return basis_cycle(ctx, ctx.middle(alternate=ctx.delta_middle == "ldprime"))
    return lcls(ctx, m)


def delta_cycle(i: int, j: int, ctx: QuadricContext) -> Cycle:
    _check_index("i", i, 1, ctx.d)
    _check_index("j", j, 0, i - 1)
    out = rho(i, j, ctx)
    others = [k for k in range(i) if k != j]
    for m in range(i, ctx.d + 1):
        out = out + sym(cross(*h_string(ctx, others), hpow(ctx, m), _delta_l(ctx, m)))
    return out


def diagonal_class(ctx: QuadricContext) -> Cycle:
    if ctx.d < 1:
        # n = 1: the "quadric" is two points over K
        return cross(hpow(ctx, 0), lcls(ctx, 0)) + cross(lcls(ctx, 0), hpow(ctx, 0))
    out = delta_cycle(1, 0, ctx)
    if ctx.middle_square_nonzero:
        out = out + cross(hpow(ctx, ctx.d), hpow(ctx, ctx.d))
    return out


@dataclass(frozen=True)
class PrimordialSpec:
    i1: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", dict(self.coeffs))

    def __hash__(self) -> int:
        return hash((self.i1, tuple(sorted(self.coeffs.items()))))

    @staticmethod
    def coefficient_range(i1: int, d: int) -> range:
        return range(i1, d - i1 + 2)

    @classmethod
    def all_for(cls, i1: int, d: int) -> Iterator["PrimordialSpec"]:
        keys = list(cls.coefficient_range(i1, d))
        for bits in itertools.product((0, 1), repeat=len(keys)):
            yield cls(i1, dict(zip(keys, bits)))


def primordial(spec: PrimordialSpec, ctx: QuadricContext) -> Cycle:
    i1 = spec.i1
    _check_index("i1", i1, 1, ctx.d)
    keys = set(PrimordialSpec.coefficient_range(i1, ctx.d))
    if set(spec.coeffs) != keys:
        raise DomainError(f"coefficients must be given exactly for k in {sorted(keys)}")
    one = hpow(ctx, 0)
    base = lcls(ctx, i1 - 1)
    out = cross(one, base) + cross(base, one)
    for k in sorted(keys):
        if spec.coeffs[k] % 2:
            hk, lk = hpow(ctx, k), lcls(ctx, k + i1 - 1)
            out = out + cross(hk, lk) + cross(lk, hk)
    return out


def equal_mod_nonessential(x: Cycle, y: Cycle) -> bool:
    """Whether ``x + y`` is a sum of external products of h-powers.

    The nonessential subspace has exactly one generator ``h^c1 x ... x h^cr``
    per multidegree, so membership is decided multidegree by multidegree.
    """
    diff = add(x, y)
    n, d = x.ctx.n, x.ctx.d
    pieces: Dict[tuple, set] = {}
    for m in diff.terms:
        key = tuple(b.index if b.kind == "h" else n - b.index for b in m)
        pieces.setdefault(key, set()).add(m)
    for key, piece in pieces.items():
        if any(c > d for c in key):
            return False
        expected = set(itertools.product(*(sorted(h_power_classes(c, n)) for c in key)))
        if piece != expected:
            return False
    return True
