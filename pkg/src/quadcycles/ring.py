"""Mod-2 Chow ring of a split quadric of dimension n.

Basis: powers ``h^k`` of the hyperplane class below the middle codimension and
the classes ``l_j`` of j-dimensional projective subspaces, ``0 <= j <= d``.
For even n the middle codimension d carries two classes, ``l_d`` and ``l'_d``,
and ``h^d = l_d + l'_d`` is not a basis element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, NamedTuple, Tuple

ORIENTATIONS = ("ld", "ldprime")


class DomainError(ValueError):
    """Raised for classes or indices that do not exist on the given quadric."""


class BasisClass(NamedTuple):
    kind: str  # "h", "l" or "l'"
    index: int

    def __str__(self) -> str:
        if self.kind == "h":
            return "1" if self.index == 0 else f"h^{self.index}"
        if self.kind == "l":
            return f"l_{self.index}"
        return f"l'_{self.index}"


def H(k: int) -> BasisClass:
    return BasisClass("h", k)


def L(j: int) -> BasisClass:
    return BasisClass("l", j)


def LPrime(d: int) -> BasisClass:
    return BasisClass("l'", d)


ONE = H(0)
POINT = L(0)
EMPTY: FrozenSet[BasisClass] = frozenset()


@dataclass(frozen=True)
class QuadricContext:
    """The ambient split quadric.

    ``orientation`` picks which middle class the constructors call ``l_d`` on
    an even-dimensional quadric; ``delta_middle`` picks the class used in the
    ``h^d x l_d`` term of the symmetric Delta cycles, relative to that
    orientation. Both are ignored for odd n.
    """

    n: int
    orientation: str = "ld"
    delta_middle: str = "ld"

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"quadric dimension must be a positive integer, got {self.n!r}")
        if self.orientation not in ORIENTATIONS:
            raise DomainError(f"orientation must be one of {ORIENTATIONS}")
        if self.delta_middle not in ORIENTATIONS:
            raise DomainError(f"delta_middle must be one of {ORIENTATIONS}")

    @property
    def d(self) -> int:
        return self.n // 2

    @property
    def parity(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def even(self) -> bool:
        return self.n % 2 == 0

    @property
    def middle_square_nonzero(self) -> bool:
        return self.n % 4 == 0

    def conventions(self) -> dict:
        return {"orientation": self.orientation, "delta_middle": self.delta_middle}

    def with_conventions(self, orientation: str | None = None,
                         delta_middle: str | None = None) -> "QuadricContext":
        return QuadricContext(self.n, orientation or self.orientation,
                              delta_middle or self.delta_middle)

    def basis(self) -> Tuple[BasisClass, ...]:
        top_h = self.d - 1 if self.even else self.d
        out = [H(k) for k in range(top_h + 1)] + [L(j) for j in range(self.d + 1)]
        if self.even:
            out.append(LPrime(self.d))
        return tuple(out)

    def is_valid(self, b: BasisClass) -> bool:
        if not isinstance(b, tuple) or len(b) != 2 or not isinstance(b[1], int):
            return False
        kind, idx = b
        if kind == "h":
            return 0 <= idx <= (self.d - 1 if self.even else self.d)
        if kind == "l":
            return 0 <= idx <= self.d
        if kind == "l'":
            return self.even and idx == self.d
        return False

    def validate(self, b: BasisClass) -> BasisClass:
        if not self.is_valid(b):
            raise DomainError(f"{b!r} is not a basis class of the split quadric of dimension {self.n}")
        return b

    def middle(self, alternate: bool = False) -> BasisClass:
        """The middle class named ``l_d`` (or the other one if ``alternate``)."""
        if not self.even:
            return L(self.d)
        primed = (self.orientation == "ldprime") != alternate
        return LPrime(self.d) if primed else L(self.d)

    def l_class(self, j: int) -> BasisClass:
        """``l_j`` under the context orientation."""
        if not 0 <= j <= self.d:
            raise DomainError(f"l_{j} does not exist for n={self.n} (need 0 <= j <= {self.d})")
        return self.middle() if j == self.d else L(j)

    def h_power(self, k: int) -> FrozenSet[BasisClass]:
        """``h^k`` expanded in the basis (empty set means zero)."""
        if k < 0:
            raise DomainError(f"negative hyperplane power {k}")
        return h_power_classes(k, self.n)


@lru_cache(maxsize=None)
def h_power_classes(k: int, n: int) -> FrozenSet[BasisClass]:
    d = n // 2
    if k > d:
        return EMPTY
    if k == d and n % 2 == 0:
        return frozenset({L(d), LPrime(d)})
    return frozenset({H(k)})


@lru_cache(maxsize=None)
def mul_classes(a: BasisClass, b: BasisClass, n: int) -> FrozenSet[BasisClass]:
    """Product of two valid basis classes, unchecked. Cached."""
    if a.kind != "h" and b.kind == "h":
        a, b = b, a
    if a.kind == "h":
        if b.kind == "h":
            return h_power_classes(a.index + b.index, n)
        if a.index == 0:
            return frozenset({b})
        j = b.index - a.index
        return frozenset({L(j)}) if j >= 0 else EMPTY
    d = n // 2
    if n % 2 or a.index < d or b.index < d:
        return EMPTY
    # two maximal subspaces: l_d^2 = l_0 iff d even, l_d.l'_d = l_0 iff d odd
    same_family = a.kind == b.kind
    return frozenset({POINT}) if same_family == (d % 2 == 0) else EMPTY


def mul_basis(a: BasisClass, b: BasisClass, ctx: QuadricContext) -> FrozenSet[BasisClass]:
    ctx.validate(a)
    ctx.validate(b)
    return mul_classes(a, b, ctx.n)


def point_pushforward(b: BasisClass) -> int:
    return 1 if b == POINT else 0


def codim(b: BasisClass, ctx: QuadricContext) -> int:
    ctx.validate(b)
    return b.index if b.kind == "h" else ctx.n - b.index


def toggle(acc: set, item) -> None:
    """Add ``item`` to a mod-2 accumulator."""
    if item in acc:
        acc.remove(item)
    else:
        acc.add(item)


def mul_sums(a: FrozenSet[BasisClass], b: FrozenSet[BasisClass], n: int) -> FrozenSet[BasisClass]:
    acc: set = set()
    for x in a:
        for y in b:
            for z in mul_classes(x, y, n):
                toggle(acc, z)
    return frozenset(acc)
