"""Steenrod operations of cohomological type on Ch(X_K^r).

On one factor: ``S^l(h^k) = C(k, l) h^(k+l)`` and
``S^l(l_j) = C(n+1-j, l) l_(j-l)``; the primed middle class follows the
``l_d`` formula. Operations on products act factor-wise (external Cartan
formula). Formulas are applied for every n; the geometric meaning needs a
base field of characteristic other than 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterator, Optional, Tuple

from .cycles import (
    ArityError,
    Cycle,
    _check_index,
    cross,
    diagonal_pullback,
    doubling_map,
    hpow,
    lcls,
    rho,
    sym,
)
from .ring import EMPTY, BasisClass, QuadricContext, L, h_power_classes, toggle


def binom_parity(a: int, b: int) -> int:
    """``C(a, b) mod 2`` by Lucas: odd iff the bits of b are a subset of a's."""
    if a < 0 or b < 0 or b > a:
        return 0
    return 1 if a & b == b else 0


@lru_cache(maxsize=None)
def sq_classes(b: BasisClass, l: int, n: int) -> FrozenSet[BasisClass]:
    if l < 0:
        return EMPTY
    if l == 0:
        return frozenset({b})
    if b.kind == "h":
        if not binom_parity(b.index, l):
            return EMPTY
        return h_power_classes(b.index + l, n)
    j = b.index
    if j < l or not binom_parity(n + 1 - j, l):
        return EMPTY
    return frozenset({L(j - l)})


def steenrod_basis(b: BasisClass, l: int, ctx: QuadricContext) -> Cycle:
    ctx.validate(b)
    return Cycle(ctx, 1, frozenset((c,) for c in sq_classes(b, l, ctx.n)))


@dataclass(frozen=True)
class SteenrodQuery:
    """Degree ``l`` on slot ``target`` (0-based), or on all slots if None."""

    l: int
    target: Optional[int] = None

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ArityError(f"Steenrod degree must be >= 0, got {self.l}")


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cut + (total + parts - 1,)
        yield tuple(bounds[k + 1] - bounds[k] - 1 for k in range(parts))


def steenrod_factor(x: Cycle, q: SteenrodQuery) -> Cycle:
    n = x.ctx.n
    acc: set = set()
    if q.target is not None:
        if not 0 <= q.target < x.arity:
            raise ArityError(f"slot {q.target} out of range for arity {x.arity}")
        t = q.target
        for m in x.terms:
            for c in sq_classes(m[t], q.l, n):
                toggle(acc, m[:t] + (c,) + m[t + 1:])
        return Cycle(x.ctx, x.arity, frozenset(acc))
    splits = list(_compositions(q.l, x.arity))
    for m in x.terms:
        for split in splits:
            images = [sq_classes(b, lk, n) for b, lk in zip(m, split)]
            if not all(images):
                continue
            for out in itertools.product(*(sorted(im) for im in images)):
                toggle(acc, out)
    return Cycle(x.ctx, x.arity, frozenset(acc))


def steenrod(x: Cycle, l: int, slot: Optional[int] = None) -> Cycle:
    return steenrod_factor(x, SteenrodQuery(l, slot))


def total_steenrod(x: Cycle) -> Cycle:
    out = Cycle.zero(x.ctx, x.arity)
    for l in range(x.ctx.n * x.arity + 1):
        out = out + steenrod(x, l)
    return out


def _check_lowered(i: int, j: int, l: int, ctx: QuadricContext) -> None:
    _check_index("i", i, 2, ctx.d)
    _check_index("l", l, 1, i - 1)
    _check_index("j", j, l, ctx.d)


def rho_ijl(i: int, j: int, l: int, ctx: QuadricContext) -> Cycle:
    """Pull back ``(S^l x Id^i)(rho_{i,j})`` along the diagonal doubling slot 1."""
    _check_lowered(i, j, l, ctx)
    raised = steenrod(rho(i, j, ctx), l, slot=0)
    return diagonal_pullback(doubling_map(i), raised)


def rho_ijl_closed_form(i: int, j: int, l: int, ctx: QuadricContext) -> Cycle:
    """The same cycle assembled from its three explicit sums."""
    _check_lowered(i, j, l, ctx)
    n = ctx.n
    out = Cycle.zero(ctx, i)

    def hs(skip) -> list:
        return [hpow(ctx, t) for t in range(i) if t not in skip]

    def l_or_zero(idx: int) -> Optional[Cycle]:
        return lcls(ctx, idx) if idx >= 0 else None

    for k in range(l, i):
        if not binom_parity(k, l):
            continue
        for s in range(i):
            if s == k:
                continue
            out = out + cross(hpow(ctx, k + l + s), sym(cross(*hs({s, k}), lcls(ctx, j))))
        lk = l_or_zero(j - k - l)
        if lk is not None:
            out = out + cross(lk, sym(cross(*hs({k}))))
    if binom_parity(n + 1 - j, l):
        for s in range(i):
            ls = l_or_zero(j - l - s)
            if ls is not None:
                out = out + cross(ls, sym(cross(*hs({s}))))
    return out
