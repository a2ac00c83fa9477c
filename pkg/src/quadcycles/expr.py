"""A small expression language for cycles on powers of a split quadric.

Grammar (whitespace is insignificant)::

    expr    := prod { "+" prod }
    prod    := ext { "." ext }               intersection product
    ext     := primary { "x" primary }       external product, binds tightest
    primary := "(" expr ")" | atom | call
    atom    := "1" | "h" [ "^" INT ] | "l" "_" INT | "l'" "_" INT
    call    := rho(i,j) | rho(i,j,l) | delta(i,j) | diag() | prim(i1, a_i1, ..)
             | sym(e) | cyc([..], e) | perm([..], e) | S^l(e) | S^l@k(e)
             | pull([..], e) | push([..], e) | compose(b, e, e) | act(e, e)
             | deg(e) | eqmodnoness(e, e)

Slot numbers and permutation lists are 1-based. ``perm([2,3,1], e)`` moves
slot k to slot ``list[k]``; ``pull([1,1,2], e)`` pulls back along the
diagonal sending slot k of the source to slot ``list[k]``; ``push([2], e)``
forgets slot 2; ``compose(b, alpha, beta)`` is ``beta o alpha`` across a
middle block of b factors. ``deg`` and ``eqmodnoness`` return a bit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from . import cycles as cyc
from .cycles import Cycle, PrimordialSpec
from .ring import BasisClass, DomainError, QuadricContext
from .steenrod import SteenrodQuery, rho_ijl, steenrod_factor

# ---------------------------------------------------------------------------
# AST


class Node:
    pass


@dataclass(frozen=True)
class Atom(Node):
    kind: str  # "h", "l" or "l'"
    index: int


@dataclass(frozen=True)
class Rho(Node):
    i: int
    j: int


@dataclass(frozen=True)
class RhoIJL(Node):
    i: int
    j: int
    l: int


@dataclass(frozen=True)
class Delta(Node):
    i: int
    j: int


@dataclass(frozen=True)
class Diag(Node):
    pass


@dataclass(frozen=True)
class Primordial(Node):
    i1: int
    coeffs: Tuple[int, ...]


@dataclass(frozen=True)
class Sym(Node):
    arg: Node


@dataclass(frozen=True)
class SubgroupSum(Node):
    generator: Tuple[int, ...]  # 1-based one-line notation
    arg: Node


@dataclass(frozen=True)
class Permute(Node):
    perm: Tuple[int, ...]
    arg: Node


@dataclass(frozen=True)
class External(Node):
    args: Tuple[Node, ...]


@dataclass(frozen=True)
class Mul(Node):
    args: Tuple[Node, ...]


@dataclass(frozen=True)
class Add(Node):
    args: Tuple[Node, ...]


@dataclass(frozen=True)
class Steenrod(Node):
    l: int
    slot: Optional[int]  # 1-based, None for all slots
    arg: Node


@dataclass(frozen=True)
class PullDiag(Node):
    fmap: Tuple[int, ...]
    arg: Node


@dataclass(frozen=True)
class PushForget(Node):
    slots: Tuple[int, ...]
    arg: Node


@dataclass(frozen=True)
class Compose(Node):
    middle: int
    left: Node
    right: Node


@dataclass(frozen=True)
class Act(Node):
    corr: Node
    arg: Node


@dataclass(frozen=True)
class Deg(Node):
    arg: Node


@dataclass(frozen=True)
class EqModNoness(Node):
    left: Node
    right: Node


# ---------------------------------------------------------------------------
# lexing and parsing


class ExprError(ValueError):
    """Base class for expression errors; the CLI maps these to exit code 2."""


class ParseError(ExprError):
    def __init__(self, message: str, line: int, column: int, expected: Tuple[str, ...] = ()):
        self.line, self.column, self.expected = line, column, expected
        where = f"line {line}, column {column}"
        hint = f"; expected {' or '.join(expected)}" if expected else ""
        super().__init__(f"{where}: {message}{hint}")


class EvalError(ExprError):
    def __init__(self, message: str, path: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


KEYWORDS = ("eqmodnoness", "compose", "delta", "prim", "diag", "pull", "push",
            "perm", "sym", "cyc", "rho", "deg", "act", "S", "h", "l", "x")

TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<kw>" + "|".join(KEYWORDS) + r")|(?P<punct>[()\[\],+.^_@'])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "kw", "punct", "eof"
    value: str
    pos: int


def _line_col(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            line, col = _line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


PRIMARY_START = ("'('", "'1'", "'h'", "'l'", "a cycle constructor")


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, expected: Tuple[str, ...] = ()) -> ParseError:
        line, col = _line_col(self.text, self.tok.pos)
        return ParseError(message, line, col, expected)

    def describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.value)

    def accept(self, value: str) -> bool:
        if self.tok.kind in ("kw", "punct") and self.tok.value == value:
            self.pos += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            raise self.error(f"unexpected {self.describe(self.tok)}", (repr(value),))

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise self.error(f"unexpected {self.describe(self.tok)}", ("an integer",))
        value = int(self.tok.value)
        self.pos += 1
        return value

    def int_list(self) -> Tuple[int, ...]:
        self.expect("[")
        out = []
        if not self.accept("]"):
            out.append(self.integer())
            while self.accept(","):
                out.append(self.integer())
            self.expect("]")
        return tuple(out)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.describe(self.tok)}", ("'+'", "'.'", "'x'", "end of input"))
        return node

    def expr(self) -> Node:
        args = [self.prod()]
        while self.accept("+"):
            args.append(self.prod())
        return args[0] if len(args) == 1 else Add(tuple(args))

    def prod(self) -> Node:
        args = [self.ext()]
        while self.accept("."):
            args.append(self.ext())
        return args[0] if len(args) == 1 else Mul(tuple(args))

    def ext(self) -> Node:
        args = [self.primary()]
        while self.accept("x"):
            args.append(self.primary())
        return args[0] if len(args) == 1 else External(tuple(args))

    def primary(self) -> Node:
        tok = self.tok
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "int":
            if tok.value != "1":
                raise self.error(f"unexpected {self.describe(tok)}", ("'1' (the unit class)",))
            self.pos += 1
            return Atom("h", 0)
        if tok.kind == "kw":
            method = getattr(self, "p_" + tok.value, None)
            if method is not None:
                self.pos += 1
                return method()
        raise self.error(f"unexpected {self.describe(tok)}", PRIMARY_START)

    def p_h(self) -> Node:
        return Atom("h", self.integer() if self.accept("^") else 1)

    def p_l(self) -> Node:
        kind = "l'" if self.accept("'") else "l"
        self.expect("_")
        return Atom(kind, self.integer())

    def p_rho(self) -> Node:
        self.expect("(")
        i = self.integer()
        self.expect(",")
        j = self.integer()
        if self.accept(","):
            l = self.integer()
            self.expect(")")
            return RhoIJL(i, j, l)
        self.expect(")")
        return Rho(i, j)

    def p_delta(self) -> Node:
        self.expect("(")
        i = self.integer()
        self.expect(",")
        j = self.integer()
        self.expect(")")
        return Delta(i, j)

    def p_diag(self) -> Node:
        self.expect("(")
        self.expect(")")
        return Diag()

    def p_prim(self) -> Node:
        self.expect("(")
        i1 = self.integer()
        coeffs = []
        while self.accept(","):
            coeffs.append(self.integer())
        self.expect(")")
        return Primordial(i1, tuple(coeffs))

    def _unary(self) -> Node:
        self.expect("(")
        arg = self.expr()
        self.expect(")")
        return arg

    def _binary(self) -> Tuple[Node, Node]:
        self.expect("(")
        left = self.expr()
        self.expect(",")
        right = self.expr()
        self.expect(")")
        return left, right

    def _list_then_expr(self) -> Tuple[Tuple[int, ...], Node]:
        self.expect("(")
        lst = self.int_list()
        self.expect(",")
        arg = self.expr()
        self.expect(")")
        return lst, arg

    def p_sym(self) -> Node:
        return Sym(self._unary())

    def p_deg(self) -> Node:
        return Deg(self._unary())

    def p_cyc(self) -> Node:
        return SubgroupSum(*self._list_then_expr())

    def p_perm(self) -> Node:
        return Permute(*self._list_then_expr())

    def p_pull(self) -> Node:
        return PullDiag(*self._list_then_expr())

    def p_push(self) -> Node:
        return PushForget(*self._list_then_expr())

    def p_act(self) -> Node:
        return Act(*self._binary())

    def p_eqmodnoness(self) -> Node:
        return EqModNoness(*self._binary())

    def p_compose(self) -> Node:
        self.expect("(")
        middle = self.integer()
        self.expect(",")
        left = self.expr()
        self.expect(",")
        right = self.expr()
        self.expect(")")
        return Compose(middle, left, right)

    def p_S(self) -> Node:
        self.expect("^")
        l = self.integer()
        slot = self.integer() if self.accept("@") else None
        return Steenrod(l, slot, self._unary())


def parse_expr(text: str) -> Node:
    return Parser(text).parse()


# ---------------------------------------------------------------------------
# printing


def _ints(values) -> str:
    return ",".join(str(v) for v in values)


def _wrap(node: Node, parent: type) -> str:
    text = to_text(node)
    tighter = {Add: (Add,), Mul: (Add, Mul), External: (Add, Mul, External)}[parent]
    return f"({text})" if isinstance(node, tighter) else text


def to_text(node: Node) -> str:
    """Canonical text; ``parse_expr(to_text(a)) == a``."""
    if isinstance(node, Atom):
        if node.kind == "h":
            return "1" if node.index == 0 else f"h^{node.index}"
        return f"{node.kind}_{node.index}"
    if isinstance(node, Rho):
        return f"rho({node.i},{node.j})"
    if isinstance(node, RhoIJL):
        return f"rho({node.i},{node.j},{node.l})"
    if isinstance(node, Delta):
        return f"delta({node.i},{node.j})"
    if isinstance(node, Diag):
        return "diag()"
    if isinstance(node, Primordial):
        return f"prim({_ints((node.i1,) + node.coeffs)})"
    if isinstance(node, Sym):
        return f"sym({to_text(node.arg)})"
    if isinstance(node, SubgroupSum):
        return f"cyc([{_ints(node.generator)}], {to_text(node.arg)})"
    if isinstance(node, Permute):
        return f"perm([{_ints(node.perm)}], {to_text(node.arg)})"
    if isinstance(node, PullDiag):
        return f"pull([{_ints(node.fmap)}], {to_text(node.arg)})"
    if isinstance(node, PushForget):
        return f"push([{_ints(node.slots)}], {to_text(node.arg)})"
    if isinstance(node, Steenrod):
        at = "" if node.slot is None else f"@{node.slot}"
        return f"S^{node.l}{at}({to_text(node.arg)})"
    if isinstance(node, Compose):
        return f"compose({node.middle}, {to_text(node.left)}, {to_text(node.right)})"
    if isinstance(node, Act):
        return f"act({to_text(node.corr)}, {to_text(node.arg)})"
    if isinstance(node, Deg):
        return f"deg({to_text(node.arg)})"
    if isinstance(node, EqModNoness):
        return f"eqmodnoness({to_text(node.left)}, {to_text(node.right)})"
    if isinstance(node, Add):
        return " + ".join(_wrap(a, Add) for a in node.args)
    if isinstance(node, Mul):
        return " . ".join(_wrap(a, Mul) for a in node.args)
    if isinstance(node, External):
        return " x ".join(_wrap(a, External) for a in node.args)
    raise TypeError(f"not an expression node: {node!r}")


# ---------------------------------------------------------------------------
# arity checking and evaluation

BIT = "bit"
Value = Union[Cycle, int, bool]


def _label(node: Node) -> str:
    return type(node).__name__


def _children(node: Node) -> List[Node]:
    if isinstance(node, (Add, Mul, External)):
        return list(node.args)
    if isinstance(node, (Compose, EqModNoness)):
        return [node.left, node.right]
    if isinstance(node, Act):
        return [node.corr, node.arg]
    arg = getattr(node, "arg", None)
    return [arg] if arg is not None else []


def _cycle_arities(node: Node, ctx: QuadricContext, path: str) -> List[int]:
    out = []
    for k, child in enumerate(_children(node)):
        a = check_arity(child, ctx, f"{path}/{_label(child)}[{k}]" if path else f"{_label(child)}[{k}]")
        if a == BIT:
            raise EvalError(f"{_label(node)} needs cycles, got a bit-valued argument", path)
        out.append(a)
    return out


def _check_slots(values, hi: int, what: str, path: str) -> None:
    if any(not 1 <= v <= hi for v in values):
        raise EvalError(f"{what} {list(values)} out of range 1..{hi}", path)


def check_arity(node: Node, ctx: QuadricContext, path: str = "") -> Union[int, str]:
    """Arity of the value ``node`` denotes (``"bit"`` for degree/comparison)."""
    d = ctx.d
    path = path or _label(node)

    def need(cond: bool, message: str) -> None:
        if not cond:
            raise EvalError(message, path)

    if isinstance(node, Atom):
        if node.kind == "h":
            need(node.index >= 0, "negative hyperplane power")
        elif node.kind == "l":
            need(0 <= node.index <= d, f"l_{node.index} needs 0 <= j <= {d} for n={ctx.n}")
        else:
            need(ctx.even and node.index == d, f"l'_{node.index} exists only as l'_d for even n")
        return 1
    if isinstance(node, Rho):
        need(0 <= node.i <= d and 0 <= node.j <= d, f"rho indices must lie in 0..{d}")
        return node.i + 1
    if isinstance(node, RhoIJL):
        need(2 <= node.i <= d and 1 <= node.l <= node.i - 1 and node.l <= node.j <= d,
             f"rho(i,j,l) needs 2 <= i <= {d}, 1 <= l < i, l <= j <= {d}")
        return node.i
    if isinstance(node, Delta):
        need(1 <= node.i <= d and 0 <= node.j < node.i, f"delta(i,j) needs 1 <= i <= {d}, 0 <= j < i")
        return node.i + 1
    if isinstance(node, Diag):
        return 2
    if isinstance(node, Primordial):
        need(1 <= node.i1 <= d, f"prim needs 1 <= i1 <= {d}")
        count = len(PrimordialSpec.coefficient_range(node.i1, d))
        need(len(node.coeffs) == count, f"prim({node.i1}, ..) takes {count} coefficients")
        need(all(c in (0, 1) for c in node.coeffs), "primordial coefficients are bits")
        return 2
    arities = _cycle_arities(node, ctx, path)
    if isinstance(node, (Add, Mul)):
        need(len(set(arities)) == 1, f"{_label(node)} of arities {arities}")
        return arities[0]
    if isinstance(node, External):
        return sum(arities)
    if isinstance(node, Sym):
        return arities[0]
    if isinstance(node, (SubgroupSum, Permute)):
        perm = node.generator if isinstance(node, SubgroupSum) else node.perm
        need(sorted(perm) == list(range(1, arities[0] + 1)),
             f"{list(perm)} is not a permutation of 1..{arities[0]}")
        return arities[0]
    if isinstance(node, Steenrod):
        if node.slot is not None:
            _check_slots([node.slot], arities[0], "slot", path)
        return arities[0]
    if isinstance(node, PullDiag):
        need(len(node.fmap) == arities[0], f"map has {len(node.fmap)} entries for arity {arities[0]}")
        s = max(node.fmap, default=0)
        need(s >= 1 and set(node.fmap) == set(range(1, s + 1)), f"map {list(node.fmap)} is not surjective")
        return s
    if isinstance(node, PushForget):
        _check_slots(node.slots, arities[0], "slots", path)
        need(len(set(node.slots)) < arities[0], "cannot forget every slot; use deg()")
        return arities[0] - len(set(node.slots))
    if isinstance(node, Compose):
        a, c = arities[0] - node.middle, arities[1] - node.middle
        need(node.middle >= 1 and a >= 0 and c >= 0 and a + c >= 1,
             f"cannot split arities {arities} along a middle block of {node.middle}")
        return a + c
    if isinstance(node, Act):
        need(arities[0] >= 2 and arities[1] == 1, f"act needs a correspondence and a cycle on X, got {arities}")
        return arities[0] - 1
    if isinstance(node, Deg):
        return BIT
    if isinstance(node, EqModNoness):
        need(arities[0] == arities[1], f"eqmodnoness of arities {arities}")
        return BIT
    raise EvalError(f"unknown node {node!r}", path)


def _atom_cycle(node: Atom, ctx: QuadricContext) -> Cycle:
    if node.kind == "h":
        return cyc.hpow(ctx, node.index)
    return cyc.basis_cycle(ctx, BasisClass(node.kind, node.index))


def _eval(node: Node, ctx: QuadricContext, path: str) -> Value:
    def sub(child: Node, k: int = 0) -> Value:
        return _eval(child, ctx, f"{path}/{_label(child)}[{k}]")

    try:
        if isinstance(node, Atom):
            return _atom_cycle(node, ctx)
        if isinstance(node, Rho):
            return cyc.rho(node.i, node.j, ctx)
        if isinstance(node, RhoIJL):
            return rho_ijl(node.i, node.j, node.l, ctx)
        if isinstance(node, Delta):
            return cyc.delta_cycle(node.i, node.j, ctx)
        if isinstance(node, Diag):
            return cyc.diagonal_class(ctx)
        if isinstance(node, Primordial):
            keys = PrimordialSpec.coefficient_range(node.i1, ctx.d)
            return cyc.primordial(PrimordialSpec(node.i1, dict(zip(keys, node.coeffs))), ctx)
        if isinstance(node, (Add, Mul, External)):
            values = [sub(a, k) for k, a in enumerate(node.args)]
            op = {Add: cyc.add, Mul: cyc.mul, External: cyc.external}[type(node)]
            out = values[0]
            for v in values[1:]:
                out = op(out, v)
            return out
        if isinstance(node, Sym):
            return cyc.sym(sub(node.arg))
        if isinstance(node, SubgroupSum):
            return cyc.subgroup_sum([p - 1 for p in node.generator], sub(node.arg))
        if isinstance(node, Permute):
            return cyc.permute_pushforward([p - 1 for p in node.perm], sub(node.arg))
        if isinstance(node, Steenrod):
            slot = None if node.slot is None else node.slot - 1
            return steenrod_factor(sub(node.arg), SteenrodQuery(node.l, slot))
        if isinstance(node, PullDiag):
            return cyc.diagonal_pullback([f - 1 for f in node.fmap], sub(node.arg))
        if isinstance(node, PushForget):
            return cyc.projection_pushforward({s - 1 for s in node.slots}, sub(node.arg))
        if isinstance(node, Compose):
            return cyc.corr_compose(sub(node.left, 0), sub(node.right, 1), node.middle)
        if isinstance(node, Act):
            return cyc.corr_action(sub(node.corr, 0), sub(node.arg, 1))
        if isinstance(node, Deg):
            return cyc.degree(sub(node.arg))
        if isinstance(node, EqModNoness):
            return cyc.equal_mod_nonessential(sub(node.left, 0), sub(node.right, 1))
    except DomainError as exc:
        raise EvalError(str(exc), path) from exc
    raise EvalError(f"unknown node {node!r}", path)


def eval_expr(node: Node, ctx: QuadricContext) -> Value:
    check_arity(node, ctx)
    return _eval(node, ctx, _label(node))


def evaluate(text: str, ctx: QuadricContext) -> Value:
    return eval_expr(parse_expr(text), ctx)


def format_value(value: Value) -> str:
    """Cycles print canonically, degrees as 0/1 and comparisons as true/false."""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)
