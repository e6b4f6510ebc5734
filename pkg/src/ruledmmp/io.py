"""JSON instance and trace files in canonical form (sorted keys, id-ordered arrays)."""

from __future__ import annotations

import json
from typing import Any

from .contraction import ContractionState, contract, initial_state
from .goodmodel import GoodModelPlan
from .lattice import DivisorClass, LatticeContext
from .surface import FiberComponent, FiberConfig, HorizontalCurve, IncidencePoint, SurfacePair


class InstanceFormatError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def instance_to_dict(sp: SurfacePair) -> dict:
    fibers = []
    for t in sorted(sp.fibers):
        fc = sp.fibers[t]
        fibers.append(
            {
                "label": t,
                "components": [
                    {"id": c.id, "class": c.cls.to_list(), "mult": c.mult, "in_dv": c.in_dv}
                    for c in sorted(fc.components, key=lambda c: c.id)
                ],
                "points": [
                    {"id": p.id, "branches": [[cid, m] for cid, m in sorted(p.branches)]}
                    for p in sorted(fc.points, key=lambda p: p.id)
                ],
            }
        )
    return {
        "genus": sp.ctx.genus,
        "e": sp.ctx.e_invariant,
        "horizontals": [
            {"id": h.id, "class": h.cls.to_list(), "marks": sorted(h.marks)}
            for h in sorted(sp.horizontals, key=lambda h: h.id)
        ],
        "fibers": fibers,
        "dv_whole_smooth_fibers": sorted(sp.dv_whole_smooth_fibers),
    }


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise InstanceFormatError(f"{what} must be an integer, got {v!r}")
    return v


def _cls(v, what) -> DivisorClass:
    if not isinstance(v, list) or len(v) < 2:
        raise InstanceFormatError(f"{what} must be an integer array [c0, f, e1, ...]")
    return DivisorClass.from_list([_int(x, what) for x in v])


def instance_from_dict(d: dict) -> SurfacePair:
    try:
        genus = _int(d["genus"], "genus")
        e = _int(d["e"], "e")
        horizontals = tuple(
            HorizontalCurve(str(h["id"]), _cls(h["class"], f"class of {h['id']}"), tuple(h.get("marks", ())))
            for h in d["horizontals"]
        )
        fibers = {}
        for f in d.get("fibers", []):
            label = str(f["label"])
            if label in fibers:
                raise InstanceFormatError(f"fiber {label} listed twice")
            comps = tuple(
                FiberComponent(
                    str(c["id"]),
                    _cls(c["class"], f"class of {c['id']}"),
                    _int(c["mult"], f"multiplicity of {c['id']}"),
                    bool(c["in_dv"]),
                )
                for c in f.get("components", [])
            )
            points = tuple(
                IncidencePoint(
                    str(p["id"]),
                    tuple((str(b[0]), _int(b[1], f"branch multiplicity at {p['id']}")) for b in p["branches"]),
                )
                for p in f.get("points", [])
            )
            fibers[label] = FiberConfig(label, comps, points)
        whole = tuple(str(t) for t in d.get("dv_whole_smooth_fibers", []))
    except (KeyError, TypeError, IndexError) as exc:
        raise InstanceFormatError(f"malformed instance: {exc!r}") from None
    classes = [h.cls for h in horizontals] + [c.cls for fc in fibers.values() for c in fc.components]
    k = len(classes[0].e) if classes else 0
    try:
        ctx = LatticeContext(genus, e, k)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None
    return SurfacePair(ctx, fibers, horizontals, whole)


def loads_instance(text: str) -> SurfacePair:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise InstanceFormatError("instance must be a JSON object")
    if "steps" in d:
        if "instance" not in d:
            raise InstanceFormatError("trace file carries no instance")
        d = d["instance"]
    return instance_from_dict(d)


def dumps_instance(sp: SurfacePair) -> str:
    return dumps(instance_to_dict(sp))


def trace_to_dict(plan: GoodModelPlan, include_instance: bool = True) -> dict:
    out = {
        "steps": [
            {
                "index": s.index,
                "stage": s.stage,
                "fiber": s.fiber,
                "contracted_class": s.contracted_class.to_list(),
                "component_id": s.component_id,
                "rationale": s.rationale,
            }
            for s in plan.steps
        ],
        "k1": plan.k1,
        "k2": plan.k2,
        "m": plan.m,
        "gamma": plan.gamma,
        "e_prime": plan.e_prime.to_list(),
    }
    if include_instance:
        out["instance"] = instance_to_dict(plan.base)
    return out


def dumps_trace(plan: GoodModelPlan) -> str:
    return dumps(trace_to_dict(plan))


def state_to_dict(state: ContractionState) -> dict:
    def branch(b):
        return f"{b[0]}@{b[1]}"

    return {
        "step_count": state.step_count,
        "contracted": [
            {"class": c.cls.to_list(), "component_id": c.component_id, "fiber": c.fiber}
            for c in state.contracted
        ],
        "canonical": state.canonical.to_list(),
        "horizontals": [{"id": h.id, "class": h.cls.to_list()} for h in state.horizontals],
        "fibers": [
            {
                "label": t,
                "components": [
                    {"id": c.id, "class": c.cls.to_list(), "mult": c.mult, "in_dv": c.in_dv}
                    for c in state.fibers[t].components
                ],
                "points": [
                    {
                        "id": p.id,
                        "branches": [[branch(b), m] for b, m in p.mults],
                        "pairs": [[branch(a), branch(b), v] for a, b, v in p.pairs],
                    }
                    for p in state.fibers[t].points
                ],
            }
            for t in sorted(state.fibers)
        ],
    }


def replay(sp: SurfacePair, trace: dict) -> list[ContractionState]:
    """Re-run the recorded contractions; returns every intermediate state."""
    state = initial_state(sp)
    states = [state]
    for s in trace["steps"]:
        state, step = contract(state, s["component_id"], s["stage"], s["rationale"])
        if step.contracted_class.to_list() != s["contracted_class"]:
            raise InstanceFormatError(
                f"step {s['index']}: recorded class {s['contracted_class']} "
                f"but replay contracted {step.contracted_class.to_list()}"
            )
        states.append(state)
    return states
