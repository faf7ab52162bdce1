"""Exact non-decreasing operating functions on the real line.

Two families are provided: continuous piecewise-linear maps (``PLFunction``)
and the cubic ``Smoothstep`` ramp. Both evaluate rationals to rationals.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Union

from .errors import DegenerateRamp, NotNondecreasing, ParseError
from .rational import Q, fmt, to_rational

ZERO = Q(0)
ONE = Q(1)


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear map.

    Between consecutive breakpoints the map interpolates linearly; outside
    them it extends with ``left_slope`` and ``right_slope``. An affine map is
    stored with a single breakpoint at ``x = 0`` and equal tail slopes.
    """

    breakpoints: tuple[tuple[Q, Q], ...]
    left_slope: Q = ZERO
    right_slope: Q = ZERO

    def __post_init__(self):
        bps = tuple((Q(x), Q(y)) for x, y in self.breakpoints)
        if not bps:
            raise ValueError("PLFunction needs at least one breakpoint; use affine()")
        for (x0, _), (x1, _) in zip(bps, bps[1:]):
            if not x0 < x1:
                raise ValueError("breakpoint x-coordinates must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "left_slope", Q(self.left_slope))
        object.__setattr__(self, "right_slope", Q(self.right_slope))
        # evaluation caches; not dataclass fields, so equality ignores them
        object.__setattr__(self, "_xs", [x for x, _ in bps])
        object.__setattr__(
            self, "_slopes", [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(bps, bps[1:])]
        )

    @property
    def xs(self) -> list[Q]:
        return list(self._xs)

    def segment_slopes(self) -> list[Q]:
        return list(self._slopes)

    def __call__(self, t) -> Q:
        xs = self._xs
        x0 = xs[0]
        if t <= x0:
            y0 = self.breakpoints[0][1]
            return y0 + self.left_slope * (t - x0) if self.left_slope else y0
        xn = xs[-1]
        if t >= xn:
            yn = self.breakpoints[-1][1]
            return yn + self.right_slope * (t - xn) if self.right_slope else yn
        i = bisect_right(xs, t) - 1
        xa, ya = self.breakpoints[i]
        return ya + self._slopes[i] * (t - xa)

    def slope_left_of(self, t) -> Q:
        """Slope of the piece immediately to the left of ``t``."""
        xs = self.xs
        if t <= xs[0]:
            return self.left_slope
        if t > xs[-1]:
            return self.right_slope
        i = bisect_right(xs, t) - 1
        if xs[i] == t:
            i -= 1
        return self.segment_slopes()[i]

    def slope_right_of(self, t) -> Q:
        xs = self.xs
        if t < xs[0]:
            return self.left_slope
        if t >= xs[-1]:
            return self.right_slope
        i = bisect_right(xs, t) - 1
        return self.segment_slopes()[i]

    def to_json(self) -> dict:
        return {
            "kind": "pl",
            "breakpoints": [[fmt(x), fmt(y)] for x, y in self.breakpoints],
            "left_slope": fmt(self.left_slope),
            "right_slope": fmt(self.right_slope),
        }


@dataclass(frozen=True)
class Smoothstep:
    """``0`` below ``a``, ``1`` above ``b``, ``3u^2 - 2u^3`` in between, ``u = (t-a)/(b-a)``."""

    a: Q
    b: Q

    def __post_init__(self):
        a, b = Q(self.a), Q(self.b)
        if not a < b:
            raise DegenerateRamp(a, b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __call__(self, t) -> Q:
        if t <= self.a:
            return ZERO
        if t >= self.b:
            return ONE
        u = (t - self.a) / (self.b - self.a)
        return u * u * (3 - 2 * u)

    def to_json(self) -> dict:
        return {"kind": "smoothstep", "a": fmt(self.a), "b": fmt(self.b)}


OperatingFn = Union[PLFunction, Smoothstep]

PROVIDERS = ("pl", "smoothstep")


def affine(slope, intercept) -> PLFunction:
    """``t -> slope * t + intercept``."""
    slope = Q(slope)
    return PLFunction(((ZERO, Q(intercept)),), slope, slope)


IDENTITY = affine(1, 0)


def ramp(a, b, provider: str = "pl") -> OperatingFn:
    """Non-decreasing map equal to 0 on ``t <= a`` and 1 on ``t >= b``."""
    a, b = Q(a), Q(b)
    if not a < b:
        raise DegenerateRamp(a, b)
    if provider == "pl":
        return PLFunction(((a, ZERO), (b, ONE)), ZERO, ZERO)
    if provider == "smoothstep":
        return Smoothstep(a, b)
    raise ValueError(f"unknown provider {provider!r}")


def eval_op(H: OperatingFn, t) -> Q:
    return H(Q(t))


def is_nondecreasing(H: OperatingFn) -> bool:
    if isinstance(H, Smoothstep):
        return True
    if H.left_slope < 0 or H.right_slope < 0:
        return False
    return all(s >= 0 for s in H.segment_slopes())


def check_nondecreasing(H: OperatingFn) -> OperatingFn:
    if not is_nondecreasing(H):
        raise NotNondecreasing(f"operating function is not non-decreasing: {H.to_json()}")
    return H


def canonicalize(H: PLFunction) -> PLFunction:
    """Drop breakpoints where the slope does not change.

    If every breakpoint is dropped the function is affine and is returned in
    the single-breakpoint form used by :func:`affine`.
    """
    bps = list(H.breakpoints)
    slopes = [H.left_slope, *H.segment_slopes(), H.right_slope]
    kept = [bp for i, bp in enumerate(bps) if slopes[i] != slopes[i + 1]]
    if not kept:
        return affine(H.left_slope, H(ZERO))
    return PLFunction(tuple(kept), H.left_slope, H.right_slope)


def _preimages(H1: PLFunction, v: Q) -> list[Q]:
    """Points where ``H1`` crosses level ``v`` on a piece of positive slope."""
    out = []
    bps = H1.breakpoints
    x0, y0 = bps[0]
    if H1.left_slope > 0 and v < y0:
        out.append(x0 + (v - y0) / H1.left_slope)
    for (xa, ya), (xb, yb) in zip(bps, bps[1:]):
        if ya < v < yb:
            out.append(xa + (v - ya) * (xb - xa) / (yb - ya))
    xn, yn = bps[-1]
    if H1.right_slope > 0 and v > yn:
        out.append(xn + (v - yn) / H1.right_slope)
    return out


def compose_pl(H2: PLFunction, H1: PLFunction) -> PLFunction:
    """Exact ``H2 o H1`` for non-decreasing PL maps, canonicalized."""
    xs = set(H1.xs)
    for v, _ in H2.breakpoints:
        xs.update(_preimages(H1, v))
    xs = sorted(xs)
    bps = tuple((x, H2(H1(x))) for x in xs)
    left = H1.left_slope * H2.slope_left_of(H1(xs[0])) if H1.left_slope else ZERO
    right = H1.right_slope * H2.slope_right_of(H1(xs[-1])) if H1.right_slope else ZERO
    return canonicalize(PLFunction(bps, left, right))


def op_from_json(d: dict) -> OperatingFn:
    """Parse and validate an operating function; rejects decreasing maps."""
    try:
        kind = d["kind"]
        if kind == "smoothstep":
            return Smoothstep(to_rational(d["a"]), to_rational(d["b"]))
        if kind != "pl":
            raise ParseError(f"unknown operating function kind {kind!r}")
        raw = d["breakpoints"]
        if not raw:
            # affine form without breakpoints
            H = affine(to_rational(d["slope"]), to_rational(d["intercept"]))
        else:
            bps = tuple((to_rational(x), to_rational(y)) for x, y in raw)
            H = PLFunction(bps, to_rational(d["left_slope"]), to_rational(d["right_slope"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad operating function: {exc}") from exc
    return check_nondecreasing(H)
