"""Certificates of membership in the cone generated by a family.

A ``ConeExpr`` is a tree of generator leaves, binary sums, and compositions
with non-decreasing operating functions. Evaluating it on a family replays
the construction exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import BadGeneratorIndex, EmptyList, NegativeScale, ParseError
from .funcspace import Family, GroundFunction, check_carrier
from .pl import OperatingFn, PLFunction, affine, check_nondecreasing, compose_pl, op_from_json
from .poset import Poset
from .rational import Q


@dataclass(frozen=True, eq=True)
class Gen:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or isinstance(self.index, bool) or self.index < 0:
            raise BadGeneratorIndex(self.index)


@dataclass(frozen=True, eq=True)
class Sum:
    left: "ConeExpr"
    right: "ConeExpr"


@dataclass(frozen=True, eq=True)
class Comp:
    op: OperatingFn
    arg: "ConeExpr"

    def __post_init__(self):
        check_nondecreasing(self.op)


ConeExpr = Union[Gen, Sum, Comp]


def _eval(S: Family, e: ConeExpr, memo: dict) -> tuple[Q, ...]:
    key = id(e)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(e, Gen):
        if e.index >= len(S.members):
            raise BadGeneratorIndex(e.index, len(S.members))
        out = S.members[e.index].values
    elif isinstance(e, Sum):
        a = _eval(S, e.left, memo)
        b = _eval(S, e.right, memo)
        out = tuple(x + y for x, y in zip(a, b))
    elif isinstance(e, Comp):
        a = _eval(S, e.arg, memo)
        H = e.op
        out = tuple(H(x) for x in a)
    else:
        raise TypeError(f"not a cone expression: {e!r}")
    # keep e alive so its id is not reused during this evaluation
    memo[key] = (e, out)
    return out


def eval_expr(P: Poset, S: Family, e: ConeExpr) -> GroundFunction:
    """Pointwise evaluation; shared subtrees are evaluated once."""
    return GroundFunction(_eval(S, e, {}))


def scale_shift(e: ConeExpr, lam, c) -> ConeExpr:
    """Expression for ``lam * e + c``; merges into a directly nested PL composition."""
    lam, c = Q(lam), Q(c)
    if lam < 0:
        raise NegativeScale(f"scale must be >= 0, got {lam}")
    A = affine(lam, c)
    if isinstance(e, Comp) and isinstance(e.op, PLFunction):
        return Comp(compose_pl(A, e.op), e.arg)
    return Comp(A, e)


def sum_all(exprs) -> ConeExpr:
    """Balanced binary sum tree (left-to-right order preserved)."""
    exprs = list(exprs)
    if not exprs:
        raise EmptyList("cannot sum an empty list")
    while len(exprs) > 1:
        nxt = [Sum(a, b) for a, b in zip(exprs[::2], exprs[1::2])]
        if len(exprs) % 2:
            nxt.append(exprs[-1])
        exprs = nxt
    return exprs[0]


def average(exprs) -> ConeExpr:
    exprs = list(exprs)
    if not exprs:
        raise EmptyList("cannot average an empty list")
    if len(exprs) == 1:
        return exprs[0]
    return Comp(affine(Q(1, len(exprs)), 0), sum_all(exprs))


def constant(c, gen: int = 0) -> ConeExpr:
    """The constant ``c``, realized as a zero-slope affine map of a generator."""
    return Comp(affine(0, c), Gen(gen))


@dataclass(frozen=True)
class Certification:
    ok: bool
    index: int | None = None
    expected: Q | None = None
    got: Q | None = None

    def __bool__(self):
        return self.ok


def certify(P: Poset, S: Family, e: ConeExpr, claimed: GroundFunction) -> Certification:
    """Replay ``e`` and compare with ``claimed`` exactly, reporting the first mismatch."""
    check_carrier(P, claimed)
    got = eval_expr(P, S, e)
    for i, (a, b) in enumerate(zip(claimed, got)):
        if a != b:
            return Certification(False, i, a, b)
    return Certification(True)


def walk(e: ConeExpr):
    """Pre-order traversal (iterative)."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Sum):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Comp):
            stack.append(node.arg)


def node_count(e: ConeExpr) -> int:
    return sum(1 for _ in walk(e))


def expr_to_json(e: ConeExpr):
    if isinstance(e, Gen):
        return {"gen": e.index}
    if isinstance(e, Sum):
        return {"sum": [expr_to_json(e.left), expr_to_json(e.right)]}
    if isinstance(e, Comp):
        return {"comp": {"op": e.op.to_json(), "arg": expr_to_json(e.arg)}}
    raise TypeError(f"not a cone expression: {e!r}")


def expr_from_json(d) -> ConeExpr:
    """Parse an expression; every composition is checked to be non-decreasing."""
    if not isinstance(d, dict) or len(d) != 1:
        raise ParseError(f"bad expression node: {d!r}")
    (tag, body), = d.items()
    if tag == "gen":
        if not isinstance(body, int) or isinstance(body, bool):
            raise ParseError(f"bad generator index: {body!r}")
        return Gen(body)
    if tag == "sum":
        if not isinstance(body, list) or len(body) != 2:
            raise ParseError("sum node needs exactly two operands")
        return Sum(expr_from_json(body[0]), expr_from_json(body[1]))
    if tag == "comp":
        try:
            return Comp(op_from_json(body["op"]), expr_from_json(body["arg"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad comp node: {exc}") from exc
    raise ParseError(f"unknown expression tag {tag!r}")
