"""Forward construction of valid instances by blowing up a ruled surface.

The starting model carries either an irreducible bisection 2C0 + bF or two
sections C0 and C0 + (e+n)F meeting in n points.  Blow-up centers are a
general point of a fiber component, a point where D^h meets a fiber
component, or the node of two fiber components.  Centers on D^h never sit on
another fiber component, so no triple points appear.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .lattice import DivisorClass, LatticeContext
from .surface import FiberComponent, FiberConfig, HorizontalCurve, IncidencePoint, SurfacePair

MAX_GENUS = 3
MAX_E = 4
MAX_BLOWUPS = 12
MAX_WHOLE_DV = 4
MAX_FIBERS = 3


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorParams:
    g: int = 0
    e: int = 0
    max_blowups: int = 0
    dv_density: float = 0.5
    whole_fiber_dv_count: int = 0

    def check(self):
        if not 0 <= self.g <= MAX_GENUS:
            raise ParameterError(f"g must be in 0..{MAX_GENUS}, got {self.g}")
        if not 0 <= self.e <= MAX_E:
            raise ParameterError(f"e must be in 0..{MAX_E}, got {self.e}")
        if not 0 <= self.max_blowups <= MAX_BLOWUPS:
            raise ParameterError(f"blow-ups must be in 0..{MAX_BLOWUPS}, got {self.max_blowups}")
        if not 0.0 <= self.dv_density <= 1.0:
            raise ParameterError(f"dv density must be in [0, 1], got {self.dv_density}")
        if not 0 <= self.whole_fiber_dv_count <= MAX_WHOLE_DV:
            raise ParameterError(
                f"whole D^v fiber count must be in 0..{MAX_WHOLE_DV}, got {self.whole_fiber_dv_count}"
            )


@dataclass
class _Curve:
    fiber: Optional[str]  # None for horizontals
    cls: list[int]
    mult: int = 1


@dataclass
class Builder:
    """Mutable blow-up state; ``freeze`` turns it into a SurfacePair."""

    genus: int
    e: int
    k: int = 0
    curves: dict[str, _Curve] = field(default_factory=dict)
    points: dict[str, tuple[str, tuple[str, str]]] = field(default_factory=dict)
    fibers: list[str] = field(default_factory=list)
    next_point: int = 1

    def copy(self) -> "Builder":
        return Builder(
            self.genus,
            self.e,
            self.k,
            {i: _Curve(c.fiber, list(c.cls), c.mult) for i, c in self.curves.items()},
            dict(self.points),
            list(self.fibers),
            self.next_point,
        )

    @property
    def horizontal_ids(self) -> list[str]:
        return sorted(i for i, c in self.curves.items() if c.fiber is None)

    def _add_point(self, fiber: str, a: str, b: str) -> str:
        pid = f"p{self.next_point:03d}"
        self.next_point += 1
        self.points[pid] = (fiber, tuple(sorted((a, b))))
        return pid

    def _new_exceptional(self) -> str:
        self.k += 1
        for c in self.curves.values():
            c.cls.append(0)
        return f"E{self.k:02d}"

    def _fresh_fiber(self) -> str:
        label = f"t{len(self.fibers):02d}"
        cid = f"F{len(self.fibers):02d}"
        self.fibers.append(label)
        self.curves[cid] = _Curve(label, [0, 1] + [0] * self.k, 1)
        for h in self.horizontal_ids:
            degree = self.curves[h].cls[0]
            for _ in range(degree):
                self._add_point(label, h, cid)
        return cid

    def centers(self, max_fibers: int = MAX_FIBERS) -> list[tuple]:
        out: list[tuple] = []
        if len(self.fibers) < max_fibers:
            out.append(("fresh", None))
            out.extend(("fresh", h) for h in self.horizontal_ids)
        for cid in sorted(i for i, c in self.curves.items() if c.fiber is not None):
            out.append(("curve", cid))
        for pid in sorted(self.points):
            fiber, _ = self.points[pid]
            if fiber in self.fibers:
                out.append(("point", pid))
        return out

    def blow_up(self, center: tuple):
        kind, ref = center
        if kind == "fresh":
            cid = self._fresh_fiber()
            if ref is None:
                self._blow_up_curve(cid)
            else:
                pid = min(p for p, (_, cs) in self.points.items() if cs == tuple(sorted((ref, cid))))
                self._blow_up_point(pid)
        elif kind == "curve":
            self._blow_up_curve(ref)
        elif kind == "point":
            self._blow_up_point(ref)
        else:
            raise ValueError(f"unknown center {center}")

    def _blow_up_curve(self, cid: str):
        fiber = self.curves[cid].fiber
        eid = self._new_exceptional()
        self.curves[cid].cls[-1] -= 1
        self.curves[eid] = _Curve(fiber, [0, 0] + [0] * (self.k - 1) + [1], self.curves[cid].mult)
        self._add_point(fiber, cid, eid)

    def _blow_up_point(self, pid: str):
        fiber, through = self.points.pop(pid)
        eid = self._new_exceptional()
        mult = sum(self.curves[c].mult for c in through if self.curves[c].fiber is not None)
        for c in through:
            self.curves[c].cls[-1] -= 1
        self.curves[eid] = _Curve(fiber, [0, 0] + [0] * (self.k - 1) + [1], mult)
        for c in through:
            self._add_point(fiber, c, eid)

    def freeze(self, dv: set[str] = frozenset(), whole_dv: tuple[str, ...] = ()) -> SurfacePair:
        ctx = LatticeContext(self.genus, self.e, self.k)
        by_fiber: dict[str, list] = {}
        pts_by_fiber: dict[str, list] = {}
        for pid in sorted(self.points):
            fiber, cs = self.points[pid]
            pts_by_fiber.setdefault(fiber, []).append(IncidencePoint(pid, tuple((c, 1) for c in cs)))
        for cid in sorted(self.curves):
            c = self.curves[cid]
            if c.fiber is not None:
                by_fiber.setdefault(c.fiber, []).append(
                    FiberComponent(cid, DivisorClass.from_list(c.cls), c.mult, cid in dv)
                )
        labels = sorted(set(by_fiber) | set(pts_by_fiber))
        fibers = {
            t: FiberConfig(t, tuple(by_fiber.get(t, ())), tuple(pts_by_fiber.get(t, ())))
            for t in labels
        }
        hs = tuple(
            HorizontalCurve(
                h,
                DivisorClass.from_list(self.curves[h].cls),
                tuple(p for p in sorted(self.points) if h in self.points[p][1]),
            )
            for h in self.horizontal_ids
        )
        return SurfacePair(ctx, fibers, hs, tuple(whole_dv))

    def component_ids(self) -> list[str]:
        return sorted(i for i, c in self.curves.items() if c.fiber is not None)


def bisection_base(g: int, e: int, b: int) -> Builder:
    bld = Builder(g, e)
    bld.curves["H1"] = _Curve(None, [2, b])
    return bld


def sections_base(g: int, e: int, crossings: int = 0) -> Builder:
    """Sections C0 and C0 + (e+n)F, which meet in n = ``crossings`` points."""
    bld = Builder(g, e)
    bld.curves["H1"] = _Curve(None, [1, 0])
    bld.curves["H2"] = _Curve(None, [1, e + crossings])
    for i in range(crossings):
        bld._add_point(f"x{i:02d}", "H1", "H2")
    return bld


def bisection_offsets(g: int, e: int) -> list[int]:
    """Admissible s in b = 2e + s, preferring arithmetic genus 0 or 1."""
    cands = [s for s in (0, 1, 2) if e + s + 2 * g - 1 >= 0]
    low = [s for s in cands if e + s + 2 * g - 1 <= 1]
    return low or cands


def random_instance(seed: int, params: GeneratorParams) -> SurfacePair:
    """Deterministic instance with exactly ``params.max_blowups`` blow-ups."""
    params.check()
    rng = random.Random(seed)
    g, e = params.g, params.e
    if rng.random() >= 0.5:
        bld = bisection_base(g, e, 2 * e + rng.choice(bisection_offsets(g, e)))
    else:
        bld = sections_base(g, e, rng.choice((0, 1)))
    for _ in range(params.max_blowups):
        bld.blow_up(rng.choice(bld.centers()))
    dv = {cid for cid in bld.component_ids() if rng.random() < params.dv_density}
    whole = tuple(f"w{i:02d}" for i in range(params.whole_fiber_dv_count))
    return bld.freeze(dv, whole)


def blowup_trees(base: Builder, depth: int, max_fibers: int = MAX_FIBERS) -> Iterator[Builder]:
    """Every builder reachable from ``base`` by at most ``depth`` blow-ups."""
    yield base
    if depth == 0:
        return
    for center in base.centers(max_fibers):
        nxt = base.copy()
        nxt.blow_up(center)
        yield from blowup_trees(nxt, depth - 1, max_fibers)


def dv_choices(bld: Builder) -> list[set[str]]:
    """A small fixed menu of D^v markings used by the exhaustive enumerations."""
    comps = bld.component_ids()
    menu = [set(), set(comps), {c for c in comps if c.startswith("F")}, {c for c in comps if c.startswith("E")}]
    out = []
    for m in menu:
        if m not in out:
            out.append(m)
    return out
