"""Integral Chow ring of a split quadric, used only to cross-check the mod-2 table.

Built from generating facts rather than a product table: multiplication by h
is iterated (``h * h^k`` climbs until it meets ``2 l_(n-k-1)`` or, in the middle
of an even quadric, ``l_d + l'_d``; ``h * l_j = l_(j-1)``), and the products of
two maximal subspaces come from the parity of the dimension of a generic
intersection (same family iff ``d - dim`` is even).
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict

from .ring import BasisClass, H, L, LPrime

Vector = Dict[BasisClass, int]


def _clean(v: Vector) -> Vector:
    return {k: c for k, c in v.items() if c}


def times_h(v: Vector, n: int) -> Vector:
    d = n // 2
    out: Vector = defaultdict(int)
    for b, c in v.items():
        if b.kind == "h":
            k = b.index + 1
            if 2 * k < n:
                out[H(k)] += c
            elif 2 * k == n:
                out[L(d)] += c
                out[LPrime(d)] += c
            elif k <= n:
                out[L(n - k)] += 2 * c
        elif b.index > 0:
            out[L(b.index - 1)] += c
    return _clean(out)


def h_power(k: int, n: int) -> Vector:
    v: Vector = {H(0): 1}
    for _ in range(k):
        v = times_h(v, n)
    return v


def _maximal_pair(a: BasisClass, b: BasisClass, n: int) -> Vector:
    d = n // 2
    # generic members of the families meet in projective dimension 0 or -1
    same_family = a.kind == b.kind
    generic_dim = 0 if (d % 2 == 0) == same_family else -1
    return {L(0): 1} if generic_dim == 0 else {}


def product(a: BasisClass, b: BasisClass, n: int) -> Vector:
    if b.kind == "h":
        a, b = b, a
    if a.kind == "h":
        v: Vector = {b: 1}
        for _ in range(a.index):
            v = times_h(v, n)
        return v
    codim_sum = 2 * n - a.index - b.index
    if codim_sum > n:
        return {}
    return _maximal_pair(a, b, n)


def product_mod2(a: BasisClass, b: BasisClass, n: int) -> frozenset:
    return frozenset(k for k, c in product(a, b, n).items() if c % 2)
