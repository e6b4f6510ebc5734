"""Combinatorial model of a boundary pair (S, D) fibered over a curve.

Each degenerate fiber is stored as its components (class, multiplicity, whether
it belongs to the vertical boundary) together with the incidence points of the
configuration.  Points answer set-theoretic questions, lattice classes answer
numerical ones, and ``validate`` cross-checks the two.

A fiber entry with no components is a smooth fiber that only records where the
two horizontal curves cross; it is never degenerate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .lattice import (
    DivisorClass,
    LatticeContext,
    LatticeError,
    adjunction_genus,
    fiber_class,
    intersect,
)
from .report import PASS, VerificationReport


@dataclass(frozen=True)
class FiberComponent:
    id: str
    cls: DivisorClass
    mult: int
    in_dv: bool = False


@dataclass(frozen=True)
class IncidencePoint:
    id: str
    branches: tuple[tuple[str, int], ...]

    def curves(self) -> list[str]:
        return [c for c, _ in self.branches]


@dataclass(frozen=True)
class FiberConfig:
    label: str
    components: tuple[FiberComponent, ...] = ()
    points: tuple[IncidencePoint, ...] = ()

    @property
    def is_degenerate(self) -> bool:
        return len(self.components) > 0

    def component(self, cid: str) -> FiberComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)


@dataclass(frozen=True)
class HorizontalCurve:
    id: str
    cls: DivisorClass
    marks: tuple[str, ...] = ()


@dataclass(frozen=True)
class SurfacePair:
    ctx: LatticeContext
    fibers: dict[str, FiberConfig] = field(default_factory=dict)
    horizontals: tuple[HorizontalCurve, ...] = ()
    dv_whole_smooth_fibers: tuple[str, ...] = ()

    @property
    def degenerate_labels(self) -> list[str]:
        return sorted(t for t, fc in self.fibers.items() if fc.is_degenerate)

    @property
    def dh_class(self) -> DivisorClass:
        total = DivisorClass.zero(self.ctx)
        for h in self.horizontals:
            total = total + h.cls
        return total

    @property
    def dv_class(self) -> DivisorClass:
        total = DivisorClass.zero(self.ctx)
        for fc in self.fibers.values():
            for c in fc.components:
                if c.in_dv:
                    total = total + c.cls
        return total + len(self.dv_whole_smooth_fibers) * fiber_class(self.ctx)

    def curve_classes(self) -> dict[str, DivisorClass]:
        out = {h.id: h.cls for h in self.horizontals}
        for fc in self.fibers.values():
            for c in fc.components:
                out[c.id] = c.cls
        return out

    def component(self, cid: str) -> tuple[str, FiberComponent]:
        for t, fc in self.fibers.items():
            for c in fc.components:
                if c.id == cid:
                    return t, c
        raise KeyError(cid)

    def all_points(self) -> list[tuple[str, IncidencePoint]]:
        return [(t, p) for t in sorted(self.fibers) for p in self.fibers[t].points]

    def horizontal_ids(self) -> set[str]:
        return {h.id for h in self.horizontals}


def point_products(sp: SurfacePair) -> dict[tuple[str, str], int]:
    """Pairwise intersection numbers read off the incidence points."""
    out: dict[tuple[str, str], int] = {}
    for _, p in sp.all_points():
        for (a, ma), (b, mb) in itertools.combinations(p.branches, 2):
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            out[key] = out.get(key, 0) + ma * mb
    return out


def minus_one_curves(sp: SurfacePair, t: str) -> list[str]:
    """Ids of the components over ``t`` with self-intersection -1."""
    if t not in sp.fibers or not sp.fibers[t].is_degenerate:
        raise KeyError(f"no degenerate fiber over {t!r}")
    ctx = sp.ctx
    out = []
    for c in sp.fibers[t].components:
        if intersect(c.cls, c.cls, ctx) == -1:
            # (-1)-classes of fiber components are rational by construction
            assert adjunction_genus(c.cls, ctx) == 0, c.id
            out.append(c.id)
    return sorted(out)


def validate(sp: SurfacePair) -> VerificationReport:
    report = VerificationReport()
    ctx = sp.ctx
    F = fiber_class(ctx)

    def family(name, violations):
        if violations:
            for msg, witness in violations:
                report.fail(name, msg, **witness)
        else:
            report.add(name, PASS)

    bad_dim = []
    for cid, cls in sp.curve_classes().items():
        if len(cls.e) != ctx.num_exceptionals:
            bad_dim.append((f"class of {cid} has wrong length", {"curve": cid, "cls": cls.to_list()}))
    family("class_dimension", bad_dim)
    if bad_dim:
        return report

    ids = [h.id for h in sp.horizontals] + [
        c.id for fc in sp.fibers.values() for c in fc.components
    ]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    point_ids = [p.id for _, p in sp.all_points()]
    dup_pts = sorted({i for i in point_ids if point_ids.count(i) > 1})
    family(
        "unique_ids",
        [(f"curve id {i} listed twice", {"curve": i}) for i in dup]
        + [(f"point id {i} listed twice", {"point": i}) for i in dup_pts],
    )

    vert, rational, sums, mults = [], [], [], []
    for t in sorted(sp.fibers):
        fc = sp.fibers[t]
        if fc.label != t:
            sums.append((f"fiber stored under {t} carries label {fc.label}", {"fiber": t}))
        if not fc.is_degenerate:
            continue
        total = DivisorClass.zero(ctx)
        for c in fc.components:
            if c.mult < 1:
                mults.append((f"{c.id} has multiplicity {c.mult}", {"fiber": t, "curve": c.id}))
            if intersect(c.cls, F, ctx) != 0:
                vert.append((f"{c.id} is not vertical", {"fiber": t, "curve": c.id}))
            try:
                if adjunction_genus(c.cls, ctx) != 0:
                    rational.append((f"{c.id} is not rational", {"fiber": t, "curve": c.id}))
            except LatticeError:
                rational.append((f"{c.id} is not a curve class", {"fiber": t, "curve": c.id}))
            total = total + c.mult * c.cls
        if total != F:
            sums.append(
                ("fiber class sum", {"fiber": t, "sum": total.to_list(), "expected": F.to_list()})
            )
    family("vertical_components", vert)
    family("rational_components", rational)
    family("fiber_multiplicity", mults)
    family("fiber_class_sum", sums)

    hids = sp.horizontal_ids()
    snc = []
    for t in sorted(sp.fibers):
        fc = sp.fibers[t]
        comp_ids = {c.id for c in fc.components}
        for p in fc.points:
            curves = p.curves()
            if len(p.branches) != 2 or len(set(curves)) != 2:
                snc.append((f"point {p.id} does not have two distinct branches", {"fiber": t, "point": p.id}))
            if any(m != 1 for _, m in p.branches):
                snc.append((f"point {p.id} has a non-transversal branch", {"fiber": t, "point": p.id}))
            for c in curves:
                if c not in comp_ids and c not in hids:
                    snc.append((f"point {p.id} references {c} outside its fiber", {"fiber": t, "point": p.id}))
            if not fc.is_degenerate and not all(c in hids for c in curves):
                snc.append((f"point {p.id} on a smooth fiber must join horizontals", {"fiber": t, "point": p.id}))
    family("snc_points", snc)

    hcount = []
    if len(sp.horizontals) not in (1, 2):
        hcount.append((f"{len(sp.horizontals)} horizontal curves", {}))
    family("horizontal_count", hcount)

    hdeg, hgen = [], []
    for h in sp.horizontals:
        d = intersect(h.cls, F, ctx)
        if d not in (1, 2) or (len(sp.horizontals) == 2 and d != 1):
            hdeg.append((f"{h.id}·F = {d}", {"curve": h.id}))
        try:
            pa = adjunction_genus(h.cls, ctx)
        except LatticeError:
            hgen.append((f"{h.id} is not a curve class", {"curve": h.id}))
            continue
        if pa < 0:
            hgen.append((f"{h.id} has arithmetic genus {pa}", {"curve": h.id}))
        if d == 1 and pa != ctx.genus:
            hgen.append((f"section {h.id} has genus {pa} != {ctx.genus}", {"curve": h.id}))
    family("horizontal_degree", hdeg)
    family("horizontal_genus", hgen)

    dh_deg = intersect(sp.dh_class, F, ctx)
    family(
        "dh_fiber_degree",
        [] if dh_deg == 2 else [("D^h·F ≠ 2", {"value": dh_deg})],
    )

    marks = []
    for h in sp.horizontals:
        on = sorted(p.id for _, p in sp.all_points() if h.id in p.curves())
        if on != sorted(h.marks):
            marks.append((f"marks of {h.id} disagree with points", {"curve": h.id, "marks": list(h.marks), "points": on}))
    family("marks_consistent", marks)

    incid = []
    classes = sp.curve_classes()
    prods = point_products(sp)
    for a, b in itertools.combinations(sorted(classes), 2):
        lat = intersect(classes[a], classes[b], ctx)
        pts = prods.get((a, b), 0)
        if lat != pts:
            incid.append((f"{a}·{b}: lattice {lat}, points {pts}", {"curves": [a, b], "lattice": lat, "points": pts}))
    family("incidence_lattice", incid)

    whole = []
    seen = set()
    for t in sp.dv_whole_smooth_fibers:
        if t in seen:
            whole.append((f"whole D^v fiber {t} listed twice", {"fiber": t}))
        seen.add(t)
        if t in sp.fibers:
            whole.append((f"whole D^v fiber {t} also has a fiber record", {"fiber": t}))
    family("dv_whole_fibers", whole)
    return report


def is_valid(sp: SurfacePair) -> bool:
    try:
        return validate(sp).overall
    except LatticeError:
        return False
