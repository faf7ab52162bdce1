"""Ground functions on a finite poset and the order-theoretic predicates on families."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import CarrierMismatch, EmptyFamily, NotIsotone, ParseError
from .poset import Poset, upset
from .rational import Q, fmt, to_rational


@dataclass(frozen=True)
class GroundFunction:
    """A real function on ``range(n)`` given by its exact value vector."""

    values: tuple[Q, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Q(v) for v in self.values))

    @classmethod
    def of(cls, values) -> "GroundFunction":
        return cls(tuple(to_rational(v) for v in values))

    @classmethod
    def constant(cls, n: int, c) -> "GroundFunction":
        return cls((Q(c),) * n)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def min(self) -> Q:
        return min(self.values)

    def max(self) -> Q:
        return max(self.values)

    def is_constant(self) -> bool:
        return len(set(self.values)) <= 1

    def to_json(self) -> list[str]:
        return [fmt(v) for v in self.values]


def check_carrier(P: Poset, f: GroundFunction) -> None:
    if len(f) != P.n:
        raise CarrierMismatch(f"function has {len(f)} values but the poset has {P.n} elements")


def isotone_violation(P: Poset, f: GroundFunction) -> tuple[int, int] | None:
    for a in P.elements:
        row = P.leq[a]
        fa = f[a]
        for b in P.elements:
            if row[b] and fa > f[b]:
                return (a, b)
    return None


def is_isotone(P: Poset, f: GroundFunction) -> bool:
    check_carrier(P, f)
    return isotone_violation(P, f) is None


@dataclass(frozen=True)
class Family:
    """A family ``S`` of isotone functions on ``poset``; members are validated on construction."""

    poset: Poset
    members: tuple[GroundFunction, ...]
    names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        members = tuple(
            m if isinstance(m, GroundFunction) else GroundFunction.of(m) for m in self.members
        )
        object.__setattr__(self, "members", members)
        for i, m in enumerate(members):
            check_carrier(self.poset, m)
            bad = isotone_violation(self.poset, m)
            if bad is not None:
                raise NotIsotone(i, bad)
        if self.names is not None:
            if len(self.names) != len(members):
                raise ValueError("names must match members")
            object.__setattr__(self, "names", tuple(self.names))

    def __len__(self):
        return len(self.members)

    def __getitem__(self, i) -> GroundFunction:
        return self.members[i]

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"s{i}"

    def to_json(self, poset_ref: str = "") -> dict:
        d: dict = {"poset": poset_ref, "members": [m.to_json() for m in self.members]}
        if self.names is not None:
            d["names"] = list(self.names)
        return d

    @classmethod
    def from_json(cls, P: Poset, d: dict) -> "Family":
        try:
            members = [GroundFunction.of(m) for m in d["members"]]
            names = d.get("names")
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad family document: {exc}") from exc
        return cls(P, tuple(members), tuple(names) if names is not None else None)


def _check_family(P: Poset, S: Family) -> None:
    if S.poset is not P and S.poset != P:
        raise CarrierMismatch("family is carried by a different poset")
    if not S.members:
        raise EmptyFamily()


def generated_preorder(P: Poset, S: Family) -> tuple[tuple[bool, ...], ...]:
    """``R[x][y]`` iff every member ``f`` has ``f(x) <= f(y)``."""
    _check_family(P, S)
    n = P.n
    rel = [[True] * n for _ in range(n)]
    for f in S.members:
        v = f.values
        for x in range(n):
            row = rel[x]
            fx = v[x]
            for y in range(n):
                if row[y] and fx > v[y]:
                    row[y] = False
    return tuple(tuple(r) for r in rel)


@dataclass(frozen=True)
class GenerationResult:
    """Outcome of :func:`generates`; falsy with a witness pair when generation fails."""

    ok: bool
    witness: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def generates(P: Poset, S: Family) -> GenerationResult:
    _check_family(P, S)
    for i, m in enumerate(S.members):
        bad = isotone_violation(P, m)
        if bad is not None:
            raise NotIsotone(i, bad)
    rel = generated_preorder(P, S)
    for a in P.elements:
        for b in P.elements:
            if rel[a][b] != P.leq[a][b]:
                # isotone members never refute a true relation
                assert rel[a][b] and not P.leq[a][b]
                return GenerationResult(
                    False, (a, b), f"{a} is not below {b}, yet no member has f({a}) > f({b})"
                )
    return GenerationResult(True)


def separates_points(P: Poset, S: Family) -> bool:
    _check_family(P, S)
    for x in P.elements:
        for y in range(x + 1, P.n):
            if all(f[x] == f[y] for f in S.members):
                return False
    return True


def sup_dist(f: GroundFunction, g: GroundFunction) -> Q:
    if len(f) != len(g):
        raise CarrierMismatch(f"vectors of length {len(f)} and {len(g)}")
    return max((abs(a - b) for a, b in zip(f, g)), default=Q(0))


def upset_indicator(P: Poset, a: int) -> GroundFunction:
    up = upset(P, a)
    return GroundFunction(tuple(Q(int(x in up)) for x in P.elements))


def upset_generators(P: Poset) -> Family:
    """Indicators of all principal upsets; always generates the order of ``P``."""
    members = tuple(upset_indicator(P, a) for a in P.elements)
    return Family(P, members, tuple(f"up({P.label(a)})" for a in P.elements))


def family_of(P: Poset, members: Sequence, names=None) -> Family:
    return Family(P, tuple(GroundFunction.of(m) for m in members), names)
