"""Registered identity families checked by ``quadcycles verify``.

Every family takes a quadric context and yields :class:`Check` records; a
failed check carries the difference of the two sides as its witness.
"""

from __future__ import annotations

import fnmatch
import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence

from . import oracle
from .cycles import (
    Cycle,
    PrimordialSpec,
    add,
    alternating_group,
    basis_cycle,
    corr_action,
    corr_compose,
    cross,
    cyclic_shift,
    delta_cycle,
    diagonal_class,
    equal_mod_nonessential,
    external,
    group_sum,
    hpow,
    insert_units,
    lcls,
    monomial_codim,
    mul,
    permute_pushforward,
    primordial,
    projection_pushforward,
    rho,
    subgroup_sum,
    sym,
    sym_orbit,
)
from .edi import (
    EDITable,
    WittContext,
    lower_steenrod_shift_applies,
    propagate,
    rule_level_two_parity,
    shuffled_orders,
)
from .grassmannian import degree_z_product
from .report import Check, Report
from .ring import ORIENTATIONS, QuadricContext, codim, mul_basis
from .steenrod import (
    binom_parity,
    rho_ijl,
    rho_ijl_closed_form,
    steenrod,
    steenrod_basis,
    total_steenrod,
)

DEFAULT_MAX_N = 14

SuiteFn = Callable[[QuadricContext], Iterator[Check]]


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    run: SuiteFn


SUITES: Dict[str, Suite] = {}


def suite(name: str, description: str):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = Suite(name, description, fn)
        return fn
    return register


def compare(name: str, params: dict, lhs: Cycle, rhs: Cycle) -> Check:
    if lhs == rhs:
        return Check(name, params, True)
    return Check(name, params, False, f"lhs + rhs = {add(lhs, rhs)}")


def flag(name: str, params: dict, failures: Sequence[str]) -> Check:
    if not failures:
        return Check(name, params, True)
    shown = "; ".join(failures[:5])
    more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
    return Check(name, params, False, shown + more)


def all_conventions(ctx: QuadricContext) -> List[QuadricContext]:
    if not ctx.even:
        return [ctx]
    return [ctx.with_conventions(o, dm) for o in ORIENTATIONS for dm in ORIENTATIONS]


def orientations(ctx: QuadricContext) -> List[QuadricContext]:
    if not ctx.even:
        return [ctx]
    return [ctx.with_conventions(orientation=o) for o in ORIENTATIONS]


def hsym(ctx: QuadricContext, exponents: Iterable[int]) -> Cycle:
    return sym(cross(*(hpow(ctx, k) for k in exponents)))


# ---------------------------------------------------------------------------
# single quadric


@suite("ring-laws", "commutativity, associativity and grading of the basis products")
def ring_laws(ctx: QuadricContext) -> Iterator[Check]:
    basis = ctx.basis()
    n = ctx.n
    comm, grading = [], []
    for a, b in itertools.product(basis, repeat=2):
        ab = mul_basis(a, b, ctx)
        if ab != mul_basis(b, a, ctx):
            comm.append(f"{a}.{b}")
        for c in ab:
            if codim(c, ctx) != codim(a, ctx) + codim(b, ctx):
                grading.append(f"{a}.{b} -> {c}")
    assoc = []
    for a, b, c in itertools.product(basis, repeat=3):
        left = basis_cycle(ctx, a) * basis_cycle(ctx, b) * basis_cycle(ctx, c)
        right = basis_cycle(ctx, a) * (basis_cycle(ctx, b) * basis_cycle(ctx, c))
        if left != right:
            assoc.append(f"({a}.{b}).{c}")
    yield flag("commutative", {"n": n}, comm)
    yield flag("associative", {"n": n}, assoc)
    yield flag("graded", {"n": n}, grading)


@suite("ring-oracle", "basis products agree with the integral model reduced mod 2")
def ring_oracle(ctx: QuadricContext) -> Iterator[Check]:
    bad = []
    for a, b in itertools.product(ctx.basis(), repeat=2):
        mine = mul_basis(a, b, ctx)
        theirs = oracle.product_mod2(a, b, ctx.n)
        if mine != theirs:
            bad.append(f"{a}.{b}: {sorted(map(str, mine))} vs {sorted(map(str, theirs))}")
    yield flag("oracle-agreement", {"n": ctx.n}, bad)


@suite("steenrod-basics", "S^0 = id, vanishing above codimension, top square, Cartan formula")
def steenrod_basics(ctx: QuadricContext) -> Iterator[Check]:
    n = ctx.n
    basis = ctx.basis()
    ident, vanish, top = [], [], []
    for b in basis:
        x = basis_cycle(ctx, b)
        if steenrod_basis(b, 0, ctx) != x:
            ident.append(str(b))
        c = codim(b, ctx)
        for l in range(c + 1, n + 2):
            if steenrod_basis(b, l, ctx):
                vanish.append(f"S^{l}({b})")
        if steenrod_basis(b, c, ctx) != x * x:
            top.append(f"S^{c}({b}) = {steenrod_basis(b, c, ctx)} vs {x * x}")
    cartan = []
    total = {b: total_steenrod(basis_cycle(ctx, b)) for b in basis}
    for a, b in itertools.product(basis, repeat=2):
        prod = basis_cycle(ctx, a) * basis_cycle(ctx, b)
        if total_steenrod(prod) != total[a] * total[b]:
            cartan.append(f"S({a}.{b})")
    yield flag("zeroth-is-identity", {"n": n}, ident)
    yield flag("vanishes-above-codim", {"n": n}, vanish)
    yield flag("top-is-square", {"n": n}, top)
    yield flag("cartan", {"n": n}, cartan)


# ---------------------------------------------------------------------------
# powers


@suite("sym-orbit-agreement", "literal symmetrization equals the orbit-counting shortcut")
def sym_orbit_agreement(ctx: QuadricContext) -> Iterator[Check]:
    basis = ctx.basis()
    for r in (1, 2, 3):
        if r == 3 and len(basis) > 8:
            continue
        bad = []
        for m in itertools.product(basis, repeat=r):
            x = Cycle(ctx, r, frozenset({m}))
            if sym(x) != sym_orbit(x):
                bad.append(" x ".join(map(str, m)))
        yield flag("sym-orbit", {"n": ctx.n, "r": r}, bad)


@suite("permutation-ring-iso", "s_* respects intersection products (n <= 8)")
def permutation_ring_iso(ctx: QuadricContext) -> Iterator[Check]:
    if ctx.n > 8:
        return
    basis = ctx.basis()
    for r in (2, 3):
        if r == 3 and len(basis) > 4:
            continue
        monos = [Cycle(ctx, r, frozenset({m})) for m in itertools.product(basis, repeat=r)]
        bad = []
        for perm in itertools.permutations(range(r)):
            pushed = [permute_pushforward(perm, x) for x in monos]
            for (x, px), (y, py) in itertools.product(zip(monos, pushed), repeat=2):
                if permute_pushforward(perm, x * y) != px * py:
                    bad.append(f"{perm}: {x} . {y}")
        yield flag("ring-isomorphism", {"n": ctx.n, "r": r}, bad)


@suite("projection-formula", "p_*(p^*(y) . x) = y . p_*(x) on basis monomials of X^2")
def projection_formula(ctx: QuadricContext) -> Iterator[Check]:
    basis = ctx.basis()
    for drop in (0, 1):
        bad = []
        for m in itertools.product(basis, repeat=2):
            x = Cycle(ctx, 2, frozenset({m}))
            for b in basis:
                y = basis_cycle(ctx, b)
                lhs = projection_pushforward({drop}, insert_units(y, {drop}, 2) * x)
                rhs = y * projection_pushforward({drop}, x)
                if lhs != rhs:
                    bad.append(f"x={x}, y={y}")
        yield flag("projection-formula", {"n": ctx.n, "drop": drop + 1}, bad)


@suite("diagonal-identity", "the diagonal class acts as the identity correspondence")
def diagonal_identity(ctx: QuadricContext) -> Iterator[Check]:
    for c in all_conventions(ctx):
        diag = diagonal_class(c)
        bad = []
        for b in c.basis():
            x = basis_cycle(c, b)
            image = corr_action(diag, x)
            if image != x:
                bad.append(f"{b} -> {image}")
        yield flag("diagonal-acts-as-identity", {"n": c.n, **c.conventions()}, bad)


@suite("delta-cyclic-recursion", "Delta_{i,j} = sum_l sigma^l_*(Delta_{i-1,j} x h^(i-1)), j <= i-2")
def delta_cyclic_recursion(ctx: QuadricContext) -> Iterator[Check]:
    for c in all_conventions(ctx):
        for i in range(2, c.d + 1):
            sigma = cyclic_shift(i + 1)
            for j in range(0, i - 1):
                lhs = delta_cycle(i, j, c)
                rhs = subgroup_sum(sigma, external(delta_cycle(i - 1, j, c), hpow(c, i - 1)))
                yield compare("delta-cyclic-recursion", {"n": c.n, "i": i, "j": j, **c.conventions()},
                              lhs, rhs)


@suite("delta-alternating", "Delta_{i,i-1} = sum over A_(i+1) of s_*(1 x h x .. x h^(i-2) x Delta_{1,0})")
def delta_alternating(ctx: QuadricContext) -> Iterator[Check]:
    for c in all_conventions(ctx):
        for i in range(2, c.d + 1):
            lhs = delta_cycle(i, i - 1, c)
            core = cross(*(hpow(c, k) for k in range(i - 1)), delta_cycle(1, 0, c))
            rhs = group_sum(alternating_group(i + 1), core)
            yield compare("delta-alternating", {"n": c.n, "i": i, **c.conventions()}, lhs, rhs)


@suite("rho-action", "rho_{i,j} sends h^m to sym(1 x .. x h^(i-1)) if m = j, else to 0")
def rho_action(ctx: QuadricContext) -> Iterator[Check]:
    for c in orientations(ctx):
        for i in range(1, c.d + 1):
            target = hsym(c, range(i))
            for j in range(0, c.d + 1):
                r = rho(i, j, c)
                bad = []
                for m in range(0, c.d + 1):
                    got = corr_action(r, hpow(c, m))
                    want = target if m == j else Cycle.zero(c, i)
                    if got != want:
                        bad.append(f"h^{m} -> {got}")
                yield flag("rho-action", {"n": c.n, "i": i, "j": j, **c.conventions()}, bad)


# ---------------------------------------------------------------------------
# Steenrod identities on powers


@suite("lowered-steenrod-closed-form", "pullback of (S^l x Id^i)(rho_{i,j}) equals its three-sum form")
def lowered_closed_form(ctx: QuadricContext) -> Iterator[Check]:
    for c in orientations(ctx):
        for i in range(2, c.d + 1):
            for l in range(1, i):
                for j in range(l, c.d + 1):
                    direct = rho_ijl(i, j, l, c)
                    closed = rho_ijl_closed_form(i, j, l, c)
                    params = {"n": c.n, "i": i, "j": j, "l": l, **c.conventions()}
                    yield compare("lowered-steenrod-closed-form", params, direct, closed)
                    degrees = {monomial_codim(m, c.n) for m in direct.terms}
                    want = c.n - j + l + i * (i - 1) // 2
                    yield flag("lowered-steenrod-degree", params,
                               [f"codims {sorted(degrees)} != {want}"] if degrees - {want} else [])


@suite("higher-steenrod-collapse", "for l >= i, (S^l x Id^i)(rho_{i,j}) = C(n+1-j, l) l_(j-l) x sym(h-string)")
def higher_collapse(ctx: QuadricContext) -> Iterator[Check]:
    for c in orientations(ctx):
        for i in range(1, c.d + 1):
            hs = hsym(c, range(i))
            for l in range(i, c.d + 1):
                for j in range(0, c.d + 1):
                    lhs = steenrod(rho(i, j, c), l, slot=0)
                    m = c.n - i - j
                    if binom_parity(m + i + 1, l) and j >= l:
                        rhs = external(lcls(c, j - l), hs)
                    else:
                        rhs = Cycle.zero(c, i + 1)
                    yield compare("higher-steenrod-collapse",
                                  {"n": c.n, "i": i, "j": j, "l": l, **c.conventions()}, lhs, rhs)


@suite("cyclic-rebuild", "the cyclic sum of l_j x sym(1 x .. x h^(i-1)) is rho_{i,j}")
def cyclic_rebuild(ctx: QuadricContext) -> Iterator[Check]:
    for c in orientations(ctx):
        for i in range(1, c.d + 1):
            hs = hsym(c, range(i))
            sigma = cyclic_shift(i + 1)
            for j in range(0, c.d + 1):
                lhs = subgroup_sum(sigma, external(lcls(c, j), hs))
                yield compare("cyclic-rebuild", {"n": c.n, "i": i, "j": j, **c.conventions()},
                              lhs, rho(i, j, c))


def lower_shift_cases(n: int) -> Iterator[tuple]:
    """All (i, l, m, a) satisfying the lower Steenrod shift hypotheses."""
    d = n // 2
    for i in range(2, d + 1):
        for l in range(1, i):
            for m in range(n - i - d, n - i - l + 1):
                for a in range(0, n - i - m - l + 1):
                    if lower_steenrod_shift_applies(n, i, m, l, a):
                        yield i, l, m, a


@suite("partial-symmetrization", "partial cyclic symmetrization of rho_{i,j,l} x 1 and its collapse to rho_{i,j-l-a}")
def partial_symmetrization(ctx: QuadricContext) -> Iterator[Check]:
    for c in orientations(ctx):
        n = c.n
        for i, l, m, a in lower_shift_cases(n):
            j = n - i - m
            params = {"n": n, "i": i, "l": l, "m": m, "a": a, **c.conventions()}
            lowered = external(rho_ijl(i, j, l, c), hpow(c, 0))
            # Id x (cyclic sum over the last i slots)
            sigma = (0,) + tuple(1 + (k + 1) % i for k in range(i))
            lhs = subgroup_sum(sigma, lowered)

            def two_sum(shift: int) -> Cycle:
                out = Cycle.zero(c, i + 1)
                for k in range(l, i):
                    if binom_parity(k, l):
                        rest = [hpow(c, s) for s in range(i) if s != k]
                        out = out + external(hpow(c, k + l + shift), sym(cross(*rest, lcls(c, j))))
                if j - l - shift >= 0:
                    out = out + external(lcls(c, j - l - shift), hsym(c, range(i)))
                return out

            yield compare("partial-symmetrization", params, lhs, two_sum(0))
            shifted = mul(external(hpow(c, a), Cycle.unit(c, i)), lhs)
            yield compare("hyperplane-shift", params, shifted, two_sum(a))
            collapsed = subgroup_sum(cyclic_shift(i + 1), shifted)
            yield compare("collapse-to-rho", params, collapsed, rho(i, j - l - a, c))


@suite("level-two-parity", "rho_{2,j-1,1} = (1 x h) . rho_{2,j,1} when n-2-j is odd")
def level_two_parity(ctx: QuadricContext) -> Iterator[Check]:
    if ctx.d < 2:
        return
    for c in orientations(ctx):
        h1 = external(hpow(c, 0), hpow(c, 1))
        for j in range(2, c.d + 1):
            if (c.n - 2 - j) % 2 == 1:
                yield compare("level-two-parity", {"n": c.n, "j": j, **c.conventions()},
                              rho_ijl(2, j - 1, 1, c), h1 * rho_ijl(2, j, 1, c))


# ---------------------------------------------------------------------------
# Witt index


def primordial_cases(d: int) -> Iterator[tuple]:
    for i1 in range(2, d + 1):
        for spec in PrimordialSpec.all_for(i1, d):
            for i in range(1, i1):
                excluded = {i1} | set(range(2 * i1, d + 2))
                for j in range(0, d + 1):
                    if j + i not in excluded:
                        yield spec, i, j


@suite("primordial-composition", "rho_{i,j} o ((1 x h^(i1-i)) . pi) = 1 x rho_{i-1,j} off the excluded set")
def primordial_composition(ctx: QuadricContext) -> Iterator[Check]:
    for c in orientations(ctx):
        for spec, i, j in primordial_cases(c.d):
            pi = primordial(spec, c)
            twisted = external(hpow(c, 0), hpow(c, spec.i1 - i)) * pi
            lhs = corr_compose(twisted, rho(i, j, c), middle=1)
            rhs = external(hpow(c, 0), rho(i - 1, j, c))
            coeffs = "".join(str(spec.coeffs[k]) for k in sorted(spec.coeffs))
            params = {"n": c.n, "i1": spec.i1, "coeffs": coeffs, "i": i, "j": j, **c.conventions()}
            check = compare("primordial-composition", params, lhs, rhs)
            if not check.passed:
                check.params["mod_nonessential"] = equal_mod_nonessential(lhs, rhs)
            yield check


@suite("primordial-symmetric", "the primordial cycle is swap-invariant")
def primordial_symmetric(ctx: QuadricContext) -> Iterator[Check]:
    for c in orientations(ctx):
        for i1 in range(1, c.d + 1):
            for spec in PrimordialSpec.all_for(i1, c.d):
                pi = primordial(spec, c)
                yield compare("primordial-symmetric", {"n": c.n, "i1": i1, **c.conventions()},
                              permute_pushforward((1, 0), pi), pi)


# ---------------------------------------------------------------------------
# grassmannian and EDI engine


@suite("grassmannian-degree", "deg of z-products is 1 exactly on the index set {0..d}")
def grassmannian_degree(ctx: QuadricContext) -> Iterator[Check]:
    d = ctx.d
    positives, bad = 0, []
    for length in range(0, d + 2):
        for idx in itertools.combinations_with_replacement(range(d + 1), length):
            got = degree_z_product(idx, ctx)
            want = 1 if len(idx) == d + 1 and set(idx) == set(range(d + 1)) else 0
            positives += got
            if got != want:
                bad.append(f"{idx} -> {got}")
    if positives != 1:
        bad.append(f"{positives} positive evaluations")
    yield flag("grassmannian-degree", {"n": ctx.n, "d": d}, bad)


def random_tables(n: int, count: int, seed: int) -> Iterator[EDITable]:
    rng = random.Random(seed * 1000 + n)
    atoms = EDITable.empty(n).all_atoms()
    yield EDITable.empty(n)
    for _ in range(count):
        k = rng.randint(1, min(3, len(atoms)))
        yield EDITable.from_atoms(n, rng.sample(atoms, k))


def witt_contexts(n: int) -> List[WittContext]:
    return ([WittContext(), WittContext(anisotropic=True)]
            + [WittContext(True, i1) for i1 in range(1, n // 2 + 2)])


@suite("edi-closure", "closure is idempotent and independent of the rule order")
def edi_closure(ctx: QuadricContext) -> Iterator[Check]:
    n = ctx.n
    for w in witt_contexts(n):
        idem, order_dep = [], []
        for t in random_tables(n, 10, seed=1):
            base = propagate(t, w)
            again = propagate(base.table, w)
            if again.table != base.table or again.ok != base.ok or again.trail:
                idem.append(str(t))
            for order in shuffled_orders(20, seed=n):
                other = propagate(t, w, order)
                if other.table != base.table and base.ok and other.ok:
                    order_dep.append(f"{t} order={order}")
                if other.ok != base.ok:
                    order_dep.append(f"{t} contradiction differs under {order}")
        params = {"n": n, "anisotropic": w.anisotropic, "i1": w.i1}
        yield flag("edi-closure-idempotent", params, idem)
        yield flag("edi-closure-order-independent", params, order_dep)


@suite("edi-calculus-cross-check", "each level-two parity firing matches the cycle identity behind it")
def edi_calculus_cross_check(ctx: QuadricContext) -> Iterator[Check]:
    n = ctx.n
    if ctx.d < 2:
        return
    full = EDITable(n, tuple(frozenset(range(lo, hi + 1)) for lo, hi in
                             (EDITable.empty(n).legal_range(i) for i in range(ctx.d + 1))))
    h1 = external(hpow(ctx, 0), hpow(ctx, 1))
    for firing in rule_level_two_parity(full):
        m = firing.params["m"]
        j = n - 2 - m
        yield compare("edi-calculus-cross-check", {"n": n, "m": m, "j": j},
                      rho_ijl(2, j - 1, 1, ctx), h1 * rho_ijl(2, j, 1, ctx))


# ---------------------------------------------------------------------------
# driver


def select_suites(pattern: Optional[str]) -> List[Suite]:
    if not pattern:
        return list(SUITES.values())
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    return [s for s in SUITES.values() if any(fnmatch.fnmatch(s.name, p) for p in pats)]


def run_verify(n_min: int, n_max: int, suite_filter: Optional[str] = None,
               max_n: int = DEFAULT_MAX_N, orientation: str = "ld",
               delta_middle: str = "ld") -> Report:
    if n_max > max_n:
        raise ValueError(f"n={n_max} exceeds the configured bound {max_n}")
    if n_min < 1 or n_min > n_max:
        raise ValueError(f"invalid range {n_min}..{n_max}")
    start = time.perf_counter()
    chosen = select_suites(suite_filter)
    report = Report(n=n_max, conventions={
        "orientation": orientation, "delta_middle": delta_middle,
        "n_min": n_min, "n_max": n_max, "suites": [s.name for s in chosen],
    })
    for s in chosen:
        for n in range(n_min, n_max + 1):
            ctx = QuadricContext(n, orientation, delta_middle)
            for check in s.run(ctx):
                check.params.setdefault("suite", s.name)
                report.checks.append(check)
    report.elapsed = time.perf_counter() - start
    return report
