"""The four canonical instances.

FIX-A  g=0, e=0, bisection 2C0+F, no blow-ups.
FIX-B  FIX-A blown up at a point of D^h on the fiber over t0; the strict fiber
       F = F-E1 is in D^v.
FIX-C  FIX-B blown up at the node of F and E1.
FIX-D  g=1, e=0, two disjoint sections of class C0.
"""

from __future__ import annotations

from .lattice import DivisorClass, LatticeContext
from .surface import FiberComponent, FiberConfig, HorizontalCurve, IncidencePoint, SurfacePair


def _c(*coeffs: int) -> DivisorClass:
    return DivisorClass.from_list(coeffs)


def fix_a() -> SurfacePair:
    ctx = LatticeContext(0, 0, 0)
    return SurfacePair(ctx, {}, (HorizontalCurve("H1", _c(2, 1)),), ())


def fix_b() -> SurfacePair:
    ctx = LatticeContext(0, 0, 1)
    fiber = FiberConfig(
        "t0",
        (
            FiberComponent("E1", _c(0, 0, 1), 1, False),
            FiberComponent("F", _c(0, 1, -1), 1, True),
        ),
        (
            IncidencePoint("p1", (("E1", 1), ("F", 1))),
            IncidencePoint("p2", (("F", 1), ("H1", 1))),
            IncidencePoint("p3", (("E1", 1), ("H1", 1))),
        ),
    )
    return SurfacePair(ctx, {"t0": fiber}, (HorizontalCurve("H1", _c(2, 1, -1), ("p2", "p3")),), ())


def fix_c() -> SurfacePair:
    ctx = LatticeContext(0, 0, 2)
    fiber = FiberConfig(
        "t0",
        (
            FiberComponent("E1", _c(0, 0, 1, -1), 1, False),
            FiberComponent("E2", _c(0, 0, 0, 1), 2, False),
            FiberComponent("F", _c(0, 1, -1, -1), 1, True),
        ),
        (
            IncidencePoint("p2", (("F", 1), ("H1", 1))),
            IncidencePoint("p3", (("E1", 1), ("H1", 1))),
            IncidencePoint("p4", (("E2", 1), ("F", 1))),
            IncidencePoint("p5", (("E1", 1), ("E2", 1))),
        ),
    )
    return SurfacePair(
        ctx, {"t0": fiber}, (HorizontalCurve("H1", _c(2, 1, -1, 0), ("p2", "p3")),), ()
    )


def fix_d() -> SurfacePair:
    ctx = LatticeContext(1, 0, 0)
    return SurfacePair(
        ctx, {}, (HorizontalCurve("H1", _c(1, 0)), HorizontalCurve("H2", _c(1, 0))), ()
    )


FIXTURES = {"A": fix_a, "B": fix_b, "C": fix_c, "D": fix_d}
