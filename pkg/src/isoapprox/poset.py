"""Finite posets stored as a full reflexive-transitive closure matrix."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CycleError, ParseError


@dataclass(frozen=True)
class Poset:
    """Partial order on ``range(n)``; ``leq[i][j]`` means ``i <= j``."""

    n: int
    leq: tuple[tuple[bool, ...], ...]
    labels: tuple[str, ...] | None = None

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @property
    def elements(self) -> range:
        return range(self.n)

    def relation_size(self) -> int:
        return sum(sum(row) for row in self.leq)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram: pairs ``i < j`` with nothing strictly between."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if i == j or not self.leq[i][j]:
                    continue
                if not any(
                    k != i and k != j and self.leq[i][k] and self.leq[k][j]
                    for k in range(self.n)
                ):
                    out.append((i, j))
        return out

    def to_json(self) -> dict:
        d: dict = {"n": self.n}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        d["covers"] = [list(c) for c in self.covers()]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Poset":
        try:
            n = d["n"]
            covers = [tuple(c) for c in d.get("covers", [])]
            labels = d.get("labels")
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad poset document: {exc}") from exc
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ParseError(f"bad element count: {n!r}")
        for c in covers:
            if len(c) != 2 or not all(isinstance(v, int) and not isinstance(v, bool) for v in c):
                raise ParseError(f"bad cover pair: {list(c)!r}")
            if not all(0 <= v < n for v in c):
                raise ParseError(f"cover pair {list(c)!r} out of range for n={n}")
        if labels is not None and (len(labels) != n or not all(isinstance(s, str) for s in labels)):
            raise ParseError("labels must be a list of n strings")
        return poset_from_covers(n, covers, labels)


def _find_cycle(n: int, covers: Sequence[tuple[int, int]]) -> list[int] | None:
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in covers:
        if a != b:
            succ[a].append(b)
    color = [0] * n  # 0 new, 1 on stack, 2 done
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
            elif color[nxt] == 1:
                return path[path.index(nxt):]
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return None


def poset_from_covers(
    n: int, covers: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
) -> Poset:
    """Reflexive-transitive closure of ``covers``; raises CycleError on a cycle."""
    covers = [(int(a), int(b)) for a, b in covers]
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"cover pair ({a}, {b}) out of range for n={n}")
    cycle = _find_cycle(n, covers)
    if cycle is not None:
        raise CycleError(cycle)
    m = [[i == j for j in range(n)] for i in range(n)]
    for a, b in covers:
        m[a][b] = True
    # Warshall
    for k in range(n):
        mk = m[k]
        for i in range(n):
            if m[i][k]:
                mi = m[i]
                for j in range(n):
                    if mk[j]:
                        mi[j] = True
    return Poset(n, tuple(tuple(r) for r in m), tuple(labels) if labels is not None else None)


def not_leq_pairs(P: Poset) -> list[tuple[int, int]]:
    return [(a, b) for a in P.elements for b in P.elements if not P.leq[a][b]]


def upset(P: Poset, a: int) -> frozenset[int]:
    return frozenset(x for x in P.elements if P.leq[a][x])


def random_poset(n: int, edge_density=Fraction(1, 2), seed: int = 0) -> Poset:
    """Random poset: keep each pair ``i < j`` of a shuffled order with probability ``edge_density``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    covers = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_density:
                covers.append((perm[i], perm[j]))
    return poset_from_covers(n, covers)
