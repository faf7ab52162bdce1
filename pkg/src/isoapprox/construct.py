"""Constructive approximation of isotone functions by cone certificates.

The pipeline has three layers:

* ``separate_points``: a certificate equal to 0 at ``x`` and 1 at ``y``
  whenever ``y`` is not below ``x``;
* ``separate_sets``: 0 on a set ``K`` and 1 on a set ``L`` whenever no element
  of ``L`` lies below an element of ``K``, obtained by averaging point
  separators over finite covers and sharpening with ramps;
* ``approximate_normalized`` / ``approximate``: the average of level-set
  separators, within ``1/n`` of the target in the sup norm.

On a finite poset every subset is compact and open, so the covering steps
reduce to choosing finitely many candidates; a greedy set cover is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cone import Comp, ConeExpr, Gen, average, constant, expr_to_json, scale_shift
from .errors import (
    DoesNotGenerate,
    NoSeparator,
    NotIsotone,
    NotNormalized,
    PreconditionViolated,
    UncoverableSet,
    ValidationError,
)
from .funcspace import Family, GroundFunction, check_carrier, generates, isotone_violation, sup_dist
from .pl import ramp
from .poset import Poset
from .rational import Q, fmt

Values = tuple[Q, ...]

QUARTER = Q(1, 4)
THREE_QUARTERS = Q(3, 4)


def select_cover(P: Poset, K: Iterable[int], regions: Mapping[int, Iterable[int]] | Sequence) -> list[int]:
    """Greedy cover of ``K`` by candidate regions.

    Repeatedly takes the candidate covering the most still-uncovered elements
    of ``K``, lowest candidate index on ties. Returns the chosen indices sorted.
    """
    if not isinstance(regions, Mapping):
        regions = dict(enumerate(regions))
    regions = {i: frozenset(r) for i, r in regions.items()}
    uncovered = set(K)
    chosen: list[int] = []
    order = sorted(regions)
    while uncovered:
        best, gain = None, 0
        for i in order:
            g = len(regions[i] & uncovered)
            if g > gain:
                best, gain = i, g
        if best is None:
            raise UncoverableSet(uncovered)
        chosen.append(best)
        uncovered -= regions[best]
    return sorted(chosen)


@dataclass
class YStep:
    """Intermediate data of the first averaging stage for one ``y`` in ``L``."""

    y: int
    cover: list[int]  # chosen elements of K
    k: int
    g_values: Values
    threshold: Q  # 1 - 3/(4k)
    f_values: Values  # after the sharpening ramp


@dataclass
class SeparationTrace:
    K: tuple[int, ...]
    L: tuple[int, ...]
    steps: list[YStep] = field(default_factory=list)
    cover: list[int] = field(default_factory=list)  # chosen elements of L
    l: int = 0
    g_values: Values = ()
    degenerate: str | None = None  # "empty_K" or "empty_L"


@dataclass
class Separation:
    expr: ConeExpr
    values: Values
    trace: SeparationTrace


@dataclass
class Level:
    i: int
    K: tuple[int, ...]
    L: tuple[int, ...]
    expr: ConeExpr
    values: Values
    trace: SeparationTrace


@dataclass
class ApproxReport:
    target: GroundFunction
    n: int
    F_expr: ConeExpr
    F_values: GroundFunction
    error: Q
    bound: Q
    levels: list[Level]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "bound": fmt(self.bound),
            "error": fmt(self.error),
            "target": self.target.to_json(),
            "F": expr_to_json(self.F_expr),
            "F_values": self.F_values.to_json(),
            "levels": [
                {"i": lv.i, "K": list(lv.K), "L": list(lv.L), "f_i": expr_to_json(lv.expr)}
                for lv in self.levels
            ],
        }


def _mean(vectors: list[Values]) -> Values:
    k = len(vectors)
    return tuple(sum(col, Q(0)) / k for col in zip(*vectors))


class Construction:
    """Builds certificates over a fixed ``(P, S, provider)``.

    Point separators are cached per pair, so repeated level-set separations
    on the same instance share work and produce shared subtrees.
    """

    def __init__(self, P: Poset, S: Family, provider: str = "pl", check: bool = False):
        if S.poset is not P and S.poset != P:
            raise ValidationError("family is carried by a different poset")
        self.P, self.S, self.provider = P, S, provider
        if check:
            res = generates(P, S)
            if not res:
                raise DoesNotGenerate(res.witness)
        self._points: dict[tuple[int, int], tuple[ConeExpr, Values]] = {}
        self._regions: dict[tuple[int, int], frozenset[int]] = {}
        self._gens = [Gen(i) for i in range(len(S.members))]

    def _comp(self, H, e: ConeExpr, vals: Values) -> tuple[ConeExpr, Values]:
        return Comp(H, e), tuple(H(v) for v in vals)

    def _constant(self, c) -> tuple[ConeExpr, Values]:
        return constant(c), (Q(c),) * self.P.n

    def point_separator(self, x: int, y: int) -> tuple[ConeExpr, Values]:
        key = (x, y)
        hit = self._points.get(key)
        if hit is not None:
            return hit
        if self.P.le(y, x):
            raise PreconditionViolated(x, y)
        for idx, f in enumerate(self.S.members):
            if f[x] < f[y]:
                H = ramp(f[x], f[y], self.provider)
                out = self._comp(H, self._gens[idx], f.values)
                break
        else:
            raise NoSeparator(x, y)
        self._points[key] = out
        return out

    def _low_region(self, x: int, y: int) -> frozenset[int]:
        """``{z : f_xy(z) < 1/4}``, an open neighbourhood of ``x`` in the discrete topology."""
        key = (x, y)
        hit = self._regions.get(key)
        if hit is None:
            vals = self.point_separator(x, y)[1]
            hit = self._regions[key] = frozenset(z for z, v in enumerate(vals) if v < QUARTER)
        return hit

    def separate_points(self, x: int, y: int) -> ConeExpr:
        return self.point_separator(x, y)[0]

    def separate_sets(self, K: Iterable[int], L: Iterable[int]) -> Separation:
        P = self.P
        Ks, Ls = tuple(sorted(set(K))), tuple(sorted(set(L)))
        for z in Ks + Ls:
            if not 0 <= z < P.n:
                raise IndexError(f"element {z} out of range")
        for x in Ks:
            for y in Ls:
                if P.le(y, x):
                    raise PreconditionViolated(x, y)
        trace = SeparationTrace(Ks, Ls)
        if not Ks:
            trace.degenerate = "empty_K"
            return Separation(*self._constant(1), trace)
        if not Ls:
            trace.degenerate = "empty_L"
            return Separation(*self._constant(0), trace)

        sharpened: list[tuple[ConeExpr, Values]] = []
        for y in Ls:
            cands = [self.point_separator(x, y) for x in Ks]
            regions = [self._low_region(x, y) for x in Ks]
            chosen = select_cover(P, Ks, regions)
            k = len(chosen)
            g_y = average([cands[i][0] for i in chosen])
            g_vals = _mean([cands[i][1] for i in chosen])
            threshold = 1 - Q(3, 4 * k)
            f_Ky = self._comp(ramp(threshold, 1, self.provider), g_y, g_vals)
            sharpened.append(f_Ky)
            trace.steps.append(YStep(y, [Ks[i] for i in chosen], k, g_vals, threshold, f_Ky[1]))

        w_regions = [{z for z in Ls if vals[z] >= THREE_QUARTERS} for _, vals in sharpened]
        chosen = select_cover(P, Ls, w_regions)
        l = len(chosen)
        g = average([sharpened[j][0] for j in chosen])
        g_vals = _mean([sharpened[j][1] for j in chosen])
        trace.cover = [Ls[j] for j in chosen]
        trace.l = l
        trace.g_values = g_vals
        expr, vals = self._comp(ramp(0, Q(3, 4 * l), self.provider), g, g_vals)
        return Separation(expr, vals, trace)

    def approximate_normalized(self, f: GroundFunction, n: int) -> ApproxReport:
        P = self.P
        check_carrier(P, f)
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"n must be a positive integer, got {n!r}")
        bad = isotone_violation(P, f)
        if bad is not None:
            raise NotIsotone(None, bad)
        bound = Q(1, n)
        if f.is_constant():
            c = f[0] if len(f) else Q(0)
            expr, vals = self._constant(c)
            F = GroundFunction(vals)
            return ApproxReport(f, n, expr, F, sup_dist(f, F), bound, [])
        if f.min() != 0 or f.max() != 1:
            raise NotNormalized(f"target must have min 0 and max 1, got [{f.min()}, {f.max()}]")
        levels = []
        for i in range(n):
            lo, hi = Q(i, n), Q(i + 1, n)
            K = tuple(m for m in P.elements if f[m] <= lo)
            L = tuple(m for m in P.elements if f[m] >= hi)
            sep = self.separate_sets(K, L)
            levels.append(Level(i, K, L, sep.expr, sep.values, sep.trace))
        expr = average([lv.expr for lv in levels])
        F = GroundFunction(_mean([lv.values for lv in levels]))
        return ApproxReport(f, n, expr, F, sup_dist(f, F), bound, levels)

    def approximate(self, f: GroundFunction, eps=None, n: int | None = None) -> ApproxReport:
        """Approximate an arbitrary isotone ``f`` to within ``eps`` (or with ``n`` levels).

        Normalizes to ``[0, 1]``, runs the level construction with
        ``n = ceil((max - min) / eps)``, then rescales the certificate.
        """
        if (eps is None) == (n is None):
            raise ValueError("give exactly one of eps and n")
        P = self.P
        check_carrier(P, f)
        bad = isotone_violation(P, f)
        if bad is not None:
            raise NotIsotone(None, bad)
        if eps is not None:
            eps = Q(eps)
            if eps <= 0:
                raise ValidationError(f"eps must be positive, got {eps}")
        if f.is_constant():
            c = f[0] if len(f) else Q(0)
            expr, vals = self._constant(c)
            F = GroundFunction(vals)
            return ApproxReport(f, 1 if n is None else n, expr, F, Q(0), Q(0), [])
        lo, hi = f.min(), f.max()
        span = hi - lo
        if n is None:
            n = int(math.ceil(span / eps))
        normalized = GroundFunction(tuple((v - lo) / span for v in f))
        rep = self.approximate_normalized(normalized, n)
        expr = scale_shift(rep.F_expr, span, lo)
        F = GroundFunction(tuple(lo + span * v for v in rep.F_values))
        return ApproxReport(f, n, expr, F, sup_dist(f, F), span / n, rep.levels)


def separate_points(P: Poset, S: Family, x: int, y: int, provider: str = "pl", check: bool = False) -> ConeExpr:
    return Construction(P, S, provider, check).separate_points(x, y)


def separate_sets(P: Poset, S: Family, K, L, provider: str = "pl", check: bool = False) -> ConeExpr:
    return Construction(P, S, provider, check).separate_sets(K, L).expr


def approximate_normalized(
    P: Poset, S: Family, f: GroundFunction, n: int, provider: str = "pl", check: bool = True
) -> ApproxReport:
    return Construction(P, S, provider, check).approximate_normalized(f, n)


def approximate(
    P: Poset, S: Family, f: GroundFunction, eps=None, provider: str = "pl", check: bool = True, *, n=None
) -> ApproxReport:
    return Construction(P, S, provider, check).approximate(f, eps, n=n)
