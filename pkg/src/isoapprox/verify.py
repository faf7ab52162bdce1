"""Randomized, oracle-backed checks of the whole construction."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .cone import Comp, certify, eval_expr, walk
from .construct import ApproxReport, Construction, Separation, SeparationTrace
from .funcspace import (
    Family,
    GroundFunction,
    generated_preorder,
    generates,
    is_isotone,
    separates_points,
    sup_dist,
    upset_generators,
)
from .pl import is_nondecreasing
from .poset import Poset, not_leq_pairs, random_poset
from .rational import Q, fmt


@dataclass
class SuiteConfig:
    seed: int = 0
    trials: int = 200
    max_poset_size: int = 30
    n_values: tuple[int, ...] = tuple(range(1, 11))
    density_range: tuple[Q, Q] = (Q(0), Q(1, 2))
    provider: str = "pl"

    def __post_init__(self):
        if self.trials < 1 or self.max_poset_size < 1:
            raise ValueError("trials and max_poset_size must be >= 1")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ValueError("n_values must be positive integers")
        self.n_values = tuple(self.n_values)
        self.density_range = tuple(Q(d) for d in self.density_range)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "max_poset_size": self.max_poset_size,
            "n_values": list(self.n_values),
            "density_range": [fmt(d) for d in self.density_range],
            "provider": self.provider,
        }


@dataclass
class SuiteOutcome:
    trials_run: int = 0
    failures: list[dict] = field(default_factory=list)
    max_observed_error_ratio: Q = Q(0)
    checks: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, cfg: SuiteConfig | None = None) -> dict:
        d: dict = {}
        if cfg is not None:
            d["config"] = cfg.to_json()
        d.update(
            passed=self.passed,
            trials_run=self.trials_run,
            max_observed_error_ratio=fmt(self.max_observed_error_ratio),
            checks=dict(sorted(self.checks.items())),
            failures=sorted(self.failures, key=lambda f: (f["trial"], f["property"])),
        )
        return d


def monotone_repair(P: Poset, raw: Sequence) -> GroundFunction:
    """Smallest isotone function above ``raw``: each value raised to the max over its down-set."""
    raw = [Q(v) for v in raw]
    return GroundFunction(tuple(max(raw[a] for a in P.elements if P.leq[a][b]) for b in P.elements))


def random_isotone(P: Poset, levels: int, seed: int) -> GroundFunction:
    """Random isotone function with values in ``{0, 1/levels, ..., 1}``."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    rng = random.Random(seed)
    raw = [Q(rng.randint(0, levels), levels) for _ in P.elements]
    return monotone_repair(P, raw)


def naive_preorder(P: Poset, members: Sequence[GroundFunction]) -> list[list[bool]]:
    """Direct transcription of the definition, kept independent of ``generated_preorder``."""
    return [[all(f[x] <= f[y] for f in members) for y in P.elements] for x in P.elements]


def normalize(f: GroundFunction) -> GroundFunction:
    if f.is_constant():
        return f
    lo, hi = f.min(), f.max()
    return GroundFunction(tuple((v - lo) / (hi - lo) for v in f))


# -- invariant checks; each returns a list of (property, detail) problems --


def check_lemma1(P: Poset, S: Family, x: int, y: int, expr) -> list[tuple[str, dict]]:
    v = eval_expr(P, S, expr)
    out = []
    if v[x] != 0 or v[y] != 1:
        out.append(("lemma1_endpoints", {"x": x, "y": y, "fx": fmt(v[x]), "fy": fmt(v[y])}))
    if any(not 0 <= t <= 1 for t in v):
        out.append(("lemma1_range", {"x": x, "y": y, "values": v.to_json()}))
    if not is_isotone(P, v):
        out.append(("lemma1_isotone", {"x": x, "y": y, "values": v.to_json()}))
    return out


def check_separation(P: Poset, S: Family, sep: Separation) -> list[tuple[str, dict]]:
    """Contract and intermediate margins of a set separation."""
    tr: SeparationTrace = sep.trace
    vals = sep.values
    ctx = {"K": list(tr.K), "L": list(tr.L)}
    out = []
    if any(vals[x] != 0 for x in tr.K):
        out.append(("lemma2_zero_on_K", ctx))
    if any(vals[y] != 1 for y in tr.L):
        out.append(("lemma2_one_on_L", ctx))
    if any(not 0 <= t <= 1 for t in vals):
        out.append(("lemma2_range", ctx))
    replay = eval_expr(P, S, sep.expr)
    if replay.values != vals:
        out.append(("lemma2_replay", ctx))
    if not is_isotone(P, replay):
        out.append(("lemma2_isotone", ctx))
    if tr.degenerate:
        return out
    for st in tr.steps:
        if st.k != len(st.cover) or st.threshold != 1 - Q(3, 4 * st.k):
            out.append(("lemma2_cover_size", {**ctx, "y": st.y}))
        if any(st.g_values[x] > st.threshold for x in tr.K):
            out.append(("lemma2_margin_K", {**ctx, "y": st.y, "k": st.k}))
        if st.g_values[st.y] != 1:
            out.append(("lemma2_gy_at_y", {**ctx, "y": st.y}))
    if tr.l != len(tr.cover):
        out.append(("lemma2_cover_size", ctx))
    if any(tr.g_values[z] < Q(3, 4 * tr.l) for z in tr.L):
        out.append(("lemma2_margin_L", {**ctx, "l": tr.l}))
    if any(tr.g_values[x] != 0 for x in tr.K):
        out.append(("lemma2_g_zero_on_K", ctx))
    return out


def check_structure(expr) -> list[tuple[str, dict]]:
    for node in walk(expr):
        if isinstance(node, Comp) and not is_nondecreasing(node.op):
            return [("certificate_structure", {"op": node.op.to_json()})]
    return []


def check_report(P: Poset, S: Family, rep: ApproxReport) -> list[tuple[str, dict]]:
    """Every invariant of a normalized approximation report."""
    f, F, n = rep.target, rep.F_values, rep.n
    out = []
    if rep.error != sup_dist(f, F):
        out.append(("error_recomputed", {"n": n}))
    if rep.error > Q(1, n) or rep.bound != Q(1, n):
        out.append(("error_bound", {"n": n, "error": fmt(rep.error), "target": f.to_json()}))
    for m in P.elements:
        scaled = f[m] * n
        if scaled.denominator == 1:
            if F[m] != f[m]:
                out.append(("boundary_exact", {"n": n, "m": m, "f": fmt(f[m]), "F": fmt(F[m])}))
        elif rep.levels:
            j = scaled.numerator // scaled.denominator
            ins = all(m in lv.K for lv in rep.levels[j + 1:]) and all(m in lv.L for lv in rep.levels[:j])
            if not ins or not Q(j, n) <= F[m] <= Q(j + 1, n):
                out.append(("interior_case", {"n": n, "m": m, "f": fmt(f[m]), "F": fmt(F[m])}))
    for lv in rep.levels:
        K = tuple(m for m in P.elements if f[m] <= Q(lv.i, n))
        L = tuple(m for m in P.elements if f[m] >= Q(lv.i + 1, n))
        if (K, L) != (lv.K, lv.L):
            out.append(("level_sets", {"n": n, "i": lv.i}))
        out.extend(check_separation(P, S, Separation(lv.expr, lv.values, lv.trace)))
    cert = certify(P, S, rep.F_expr, F)
    if not cert:
        out.append(("certify", {"n": n, "index": cert.index}))
    if not is_isotone(P, F):
        out.append(("F_isotone", {"n": n}))
    out.extend(check_structure(rep.F_expr))
    return out


def random_family(P: Poset, rng: random.Random) -> Family:
    """Upset indicators, optionally augmented by random isotone members, in shuffled order."""
    base = upset_generators(P)
    members = list(zip(base.names, base.members))
    if rng.random() < 0.5:
        for j in range(rng.randint(1, 3)):
            g = random_isotone(P, rng.randint(1, 6), rng.getrandbits(32))
            scale = rng.randint(1, 5)
            members.append((f"aug{j}", GroundFunction(tuple(scale * v for v in g))))
        rng.shuffle(members)
    return Family(P, tuple(m for _, m in members), tuple(nm for nm, _ in members))


def random_separation_instance(P: Poset, rng: random.Random) -> tuple[list[int], list[int]]:
    """Random ``(K, L)`` with no element of ``L`` below an element of ``K``."""
    for _ in range(8):
        K = [x for x in P.elements if rng.random() < 0.4] or [rng.randrange(P.n)]
        cands = [y for y in P.elements if not any(P.leq[y][x] for x in K)]
        if cands:
            L = [y for y in cands if rng.random() < 0.6] or [rng.choice(cands)]
            return K, L
    return [], list(P.elements)


def _trial_rng(seed: int, t: int) -> random.Random:
    return random.Random(seed * 1_000_003 + t)


def run_trial(cfg: SuiteConfig, t: int, out: SuiteOutcome) -> None:
    rng = _trial_rng(cfg.seed, t)
    size = rng.randint(1, cfg.max_poset_size)
    lo, hi = cfg.density_range
    density = lo + (hi - lo) * Q(rng.randint(0, 100), 100)
    P = random_poset(size, density, rng.getrandbits(32))
    S = random_family(P, rng)

    def fail(problems):
        for prop, detail in problems:
            out.failures.append({"trial": t, "property": prop, "detail": detail})

    # generation predicates against the naive oracle, on S and on a random subfamily
    sub = Family(P, tuple(m for m in S.members if rng.random() < 0.5) or S.members[:1])
    for fam in (S, sub):
        out.checks["preorder_oracle"] += 1
        if [list(r) for r in generated_preorder(P, fam)] != naive_preorder(P, fam.members):
            fail([("preorder_oracle", {"n": P.n})])
        gen = generates(P, fam)
        out.checks["generates_implies_separates"] += 1
        if gen and not separates_points(P, fam):
            fail([("generates_implies_separates", {"n": P.n})])
    out.checks["upsets_generate"] += 1
    if not generates(P, S):
        fail([("upsets_generate", {"n": P.n})])

    build = Construction(P, S, cfg.provider, check=True)
    for x, y in ((b, a) for a, b in not_leq_pairs(P)):
        # pairs with y not below x
        out.checks["lemma1"] += 1
        fail(check_lemma1(P, S, x, y, build.separate_points(x, y)))

    K, L = random_separation_instance(P, rng)
    sep = build.separate_sets(K, L)
    out.checks["lemma2_random"] += 1
    if not sep.trace.degenerate:
        out.checks["lemma2_random_nondegenerate"] += 1
    fail(check_separation(P, S, sep))

    f = normalize(random_isotone(P, rng.randint(1, 12), rng.getrandbits(32)))
    for idx, n in enumerate(cfg.n_values):
        rep = build.approximate_normalized(f, n)
        out.checks["theorem"] += 1
        out.checks["boundary_elements"] += sum((v * n).denominator == 1 for v in f)
        out.checks["lemma2_levels"] += len(rep.levels)
        fail(check_report(P, S, rep))
        out.max_observed_error_ratio = max(out.max_observed_error_ratio, rep.error * n)
        if idx == 0:
            again = Construction(P, S, cfg.provider).approximate_normalized(f, n)
            out.checks["determinism"] += 1
            if again.to_json() != rep.to_json():
                fail([("determinism", {"n": n})])


def run_suite(cfg: SuiteConfig) -> SuiteOutcome:
    out = SuiteOutcome()
    for t in range(cfg.trials):
        run_trial(cfg, t, out)
        out.trials_run += 1
    return out
