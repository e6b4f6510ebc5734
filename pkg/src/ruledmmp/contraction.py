"""Contraction of vertical (-1)-curves on the incidence model.

All classes stay in the ambient lattice of S0; contracting ``c`` replaces every
live class ``x`` by ``x + (x.c) c``.

Points keep one branch per curve germ.  A branch is named by its curve and by
the S0 point it started at, since germs never split or fuse under blow-downs.
Each point stores the multiplicity of every branch and the local intersection
number of every pair of branches.  Blowing down E merges all points of E into a
single point p and updates

    mult_p(b)     = I(b, E)
    I_p(b, b')    = I_q(b, b') [same q] + I(b, E) * I(b', E)

which is the local form of A'.B' = A.B + (A.E)(B.E).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional

from .lattice import (
    DivisorClass,
    LatticeContext,
    canonical_class,
    fiber_class,
    intersect,
    project_contract,
)
from .surface import SurfacePair

Branch = tuple[str, str]

RATIONALES = ("disjoint-from-Dh", "in-Dv-preferred", "any-minus-one", "cleanup")


class ContractionError(ValueError):
    """Illegal contraction request; ``code`` tells the cases apart."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class LiveComponent:
    id: str
    cls: DivisorClass
    mult: int
    in_dv: bool


@dataclass(frozen=True)
class LivePoint:
    id: str
    mults: tuple[tuple[Branch, int], ...]
    pairs: tuple[tuple[Branch, Branch, int], ...]

    def branches(self) -> list[Branch]:
        return [b for b, _ in self.mults]

    def curves(self) -> set[str]:
        return {b[0] for b, _ in self.mults}

    def curve_branches(self, curve: str) -> list[tuple[Branch, int]]:
        return [(b, m) for b, m in self.mults if b[0] == curve]

    def pair(self, a: Branch, b: Branch) -> int:
        key = (a, b) if a < b else (b, a)
        for x, y, v in self.pairs:
            if (x, y) == key:
                return v
        return 0

    def is_singular_on(self, curve: str) -> bool:
        bs = self.curve_branches(curve)
        return len(bs) >= 2 or any(m >= 2 for _, m in bs)


@dataclass(frozen=True)
class LiveFiber:
    label: str
    components: tuple[LiveComponent, ...]
    points: tuple[LivePoint, ...]

    def component(self, cid: str) -> Optional[LiveComponent]:
        for c in self.components:
            if c.id == cid:
                return c
        return None


@dataclass(frozen=True)
class LiveHorizontal:
    id: str
    cls: DivisorClass


@dataclass(frozen=True)
class ContractedCurve:
    cls: DivisorClass
    component_id: str
    fiber: str


@dataclass(frozen=True)
class ContractionStep:
    index: int
    stage: int
    fiber: str
    contracted_class: DivisorClass
    component_id: str
    rationale: str


@dataclass(frozen=True)
class ContractionState:
    base: SurfacePair
    fibers: dict[str, LiveFiber]
    horizontals: tuple[LiveHorizontal, ...]
    canonical: DivisorClass
    contracted: tuple[ContractedCurve, ...] = ()

    @property
    def ctx(self) -> LatticeContext:
        return self.base.ctx

    @property
    def step_count(self) -> int:
        return len(self.contracted)

    @property
    def degenerate_labels(self) -> list[str]:
        return self.base.degenerate_labels

    def dh_class(self) -> DivisorClass:
        total = DivisorClass.zero(self.ctx)
        for h in self.horizontals:
            total = total + h.cls
        return total

    def horizontal_ids(self) -> set[str]:
        return {h.id for h in self.horizontals}

    def live_component(self, cid: str) -> Optional[tuple[str, LiveComponent]]:
        for t, lf in self.fibers.items():
            c = lf.component(cid)
            if c is not None:
                return t, c
        return None

    def reducible_labels(self) -> list[str]:
        return sorted(t for t, lf in self.fibers.items() if len(lf.components) >= 2)

    def curve_classes(self) -> dict[str, DivisorClass]:
        out = {h.id: h.cls for h in self.horizontals}
        for lf in self.fibers.values():
            for c in lf.components:
                out[c.id] = c.cls
        return out

    def all_points(self) -> list[tuple[str, LivePoint]]:
        return [(t, p) for t in sorted(self.fibers) for p in self.fibers[t].points]

    def marks(self, curve: str) -> list[str]:
        return sorted(p.id for _, p in self.all_points() if curve in p.curves())


def _pair_key(a: Branch, b: Branch) -> tuple[Branch, Branch]:
    return (a, b) if a < b else (b, a)


def initial_state(sp: SurfacePair) -> ContractionState:
    fibers = {}
    for t, fc in sp.fibers.items():
        comps = tuple(
            LiveComponent(c.id, c.cls, c.mult, c.in_dv)
            for c in sorted(fc.components, key=lambda c: c.id)
        )
        points = []
        for p in sorted(fc.points, key=lambda p: p.id):
            branches = [((cid, p.id), m) for cid, m in p.branches]
            mults = tuple(sorted(branches))
            pairs = []
            for (a, ma), (b, mb) in itertools.combinations(mults, 2):
                pairs.append((*_pair_key(a, b), ma * mb))
            points.append(LivePoint(p.id, mults, tuple(sorted(pairs))))
        fibers[t] = LiveFiber(t, comps, tuple(points))
    horizontals = tuple(
        LiveHorizontal(h.id, h.cls) for h in sorted(sp.horizontals, key=lambda h: h.id)
    )
    return ContractionState(sp, fibers, horizontals, canonical_class(sp.ctx))


def live_minus_one(state: ContractionState, t: str) -> list[LiveComponent]:
    if t not in state.fibers:
        raise ContractionError("unknown", f"no fiber over {t!r}")
    ctx = state.ctx
    lf = state.fibers[t]
    if len(lf.components) < 2:
        return []
    return [c for c in lf.components if intersect(c.cls, c.cls, ctx) == -1]


def all_live_minus_one(state: ContractionState) -> list[tuple[str, LiveComponent]]:
    out = []
    for t in state.reducible_labels():
        out.extend((t, c) for c in live_minus_one(state, t))
    return out


def _require_live(state: ContractionState, cid: str) -> tuple[str, LiveComponent]:
    found = state.live_component(cid)
    if found is not None:
        return found
    if cid in state.base.horizontal_ids():
        raise ContractionError("horizontal", f"{cid} is a horizontal curve")
    try:
        state.base.component(cid)
    except KeyError:
        raise ContractionError("unknown", f"no component {cid!r}") from None
    raise ContractionError("dead", f"component {cid} was already contracted")


def is_disjoint_from_dh(state: ContractionState, cid: str) -> bool:
    t, _ = _require_live(state, cid)
    hids = state.horizontal_ids()
    for p in state.fibers[t].points:
        curves = p.curves()
        if cid in curves and curves & hids:
            return False
    return True


def dh_dv_meet_in_fiber(state: ContractionState, t: str) -> bool:
    if t not in state.fibers or not state.base.fibers[t].is_degenerate:
        raise ContractionError("unknown", f"no degenerate fiber over {t!r}")
    lf = state.fibers[t]
    hids = state.horizontal_ids()
    dv = {c.id for c in lf.components if c.in_dv}
    return any(p.curves() & hids and p.curves() & dv for p in lf.points)


def singular_points(state: ContractionState, curve: str) -> list[LivePoint]:
    return [p for _, p in state.all_points() if p.is_singular_on(curve)]


def contract(
    state: ContractionState,
    cid: str,
    stage: int = 3,
    rationale: str = "cleanup",
) -> tuple[ContractionState, ContractionStep]:
    t, comp = _require_live(state, cid)
    ctx = state.ctx
    c = comp.cls
    if intersect(c, c, ctx) != -1:
        raise ContractionError("not-minus-one", f"{cid} has self-intersection {intersect(c, c, ctx)}, not a (-1)-curve")
    if intersect(c, fiber_class(ctx), ctx) != 0:
        raise ContractionError("horizontal", f"{cid} is not vertical")
    kc = intersect(state.canonical, c, ctx)
    if kc != -1:
        raise AssertionError(f"K.{cid} = {kc}; canonical bookkeeping broken")

    lf = state.fibers[t]
    merged, kept = [], []
    for p in lf.points:
        (merged if cid in p.curves() else kept).append(p)

    point_of: dict[Branch, LivePoint] = {}
    to_e: dict[Branch, int] = {}
    for q in merged:
        eps = q.curve_branches(cid)
        if len(eps) != 1 or eps[0][1] != 1:
            raise AssertionError(f"contracted curve {cid} is not smooth at {q.id}")
        e_branch = eps[0][0]
        for b, _ in q.mults:
            if b[0] == cid:
                continue
            point_of[b] = q
            to_e[b] = q.pair(b, e_branch)

    new_branches = sorted(to_e)
    new_points = list(kept)
    if new_branches:
        pairs = []
        for a, b in itertools.combinations(new_branches, 2):
            old = point_of[a].pair(a, b) if point_of[a] is point_of[b] else 0
            pairs.append((*_pair_key(a, b), old + to_e[a] * to_e[b]))
        new_points.append(
            LivePoint(
                f"m{state.step_count}",
                tuple((b, to_e[b]) for b in new_branches),
                tuple(sorted(pairs)),
            )
        )

    comps = tuple(
        replace(x, cls=project_contract(x.cls, c, ctx)) for x in lf.components if x.id != cid
    )
    fibers = dict(state.fibers)
    fibers[t] = LiveFiber(t, comps, tuple(sorted(new_points, key=lambda p: p.id)))
    for u, other in state.fibers.items():
        if u != t:
            # vertical curves over other points are orthogonal to c; projection is a no-op
            fibers[u] = other
    horizontals = tuple(
        LiveHorizontal(h.id, project_contract(h.cls, c, ctx)) for h in state.horizontals
    )
    new_state = ContractionState(
        state.base,
        fibers,
        horizontals,
        project_contract(state.canonical, c, ctx),
        state.contracted + (ContractedCurve(c, cid, t),),
    )
    step = ContractionStep(state.step_count, stage, t, c, cid, rationale)
    return new_state, step


def point_intersections(state: ContractionState) -> dict[tuple[str, str], int]:
    """Pairwise intersection numbers of distinct live curves, from point data only."""
    out: dict[tuple[str, str], int] = {}
    for _, p in state.all_points():
        for x, y, v in p.pairs:
            a, b = x[0], y[0]
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            out[key] = out.get(key, 0) + v
    return out


def incidence_discrepancies(state: ContractionState) -> list[tuple[str, str, int, int]]:
    """Curve pairs whose point-derived product differs from the lattice product."""
    ctx = state.ctx
    classes = state.curve_classes()
    pts = point_intersections(state)
    bad = []
    for a, b in itertools.combinations(sorted(classes), 2):
        lat = intersect(classes[a], classes[b], ctx)
        got = pts.get((a, b), 0)
        if lat != got:
            bad.append((a, b, lat, got))
    return bad
