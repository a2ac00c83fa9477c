"""Degree pairing on the maximal orthogonal grassmannian G_d.

Only the degrees of products of the elementary classes ``z^d_(n-d-a)`` are
modelled; index ``a`` stands for ``z^d_(n-d-a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

from .ring import DomainError, QuadricContext


@dataclass(frozen=True)
class ZProduct:
    indices: Tuple[int, ...]

    @classmethod
    def of(cls, indices: Iterable[int], d: int) -> "ZProduct":
        idx = tuple(sorted(indices))
        if any(not isinstance(a, int) or not 0 <= a <= d for a in idx):
            raise DomainError(f"indices must lie in [0, {d}]: {idx}")
        return cls(idx)


def degree_z_product(p: ZProduct | Iterable[int], ctx: QuadricContext) -> int:
    """1 iff the factors are exactly ``z^d_(n-d), ..., z^d_(n-2d)``, each once.

    Longer products exceed the dimension of G_d and have degree 0.
    """
    if not isinstance(p, ZProduct):
        p = ZProduct.of(p, ctx.d)
    else:
        ZProduct.of(p.indices, ctx.d)
    return 1 if p.indices == tuple(range(ctx.d + 1)) else 0
