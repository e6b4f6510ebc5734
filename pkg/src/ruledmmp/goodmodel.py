"""Staged contraction to a relatively minimal model.

Stage 1 contracts vertical (-1)-curves disjoint from D^h.  Stage 2 walks the
reducible fibers in label order and, while D^h and D^v still meet in the
fiber, contracts a (-1)-curve of that fiber, taking one from D^v when it can.
Stage 3 contracts whatever vertical (-1)-curves remain.  Every choice among
several candidates goes to the smallest S0 component id.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .contraction import (
    ContractionState,
    ContractionStep,
    all_live_minus_one,
    contract,
    dh_dv_meet_in_fiber,
    initial_state,
    is_disjoint_from_dh,
    live_minus_one,
)
from .lattice import DivisorClass, canonical_class, fiber_class, intersect, project_contract
from .surface import FiberConfig, HorizontalCurve, IncidencePoint, SurfacePair, validate


class InvalidInstance(ValueError):
    def __init__(self, report):
        super().__init__("instance failed validation:\n" + report.summary())
        self.report = report


@dataclass(frozen=True)
class GoodModelPlan:
    steps: tuple[ContractionStep, ...]
    k1: int
    k2: int
    m: int
    gamma: int
    e_prime: DivisorClass
    states: tuple[ContractionState, ...]

    @property
    def final_state(self) -> ContractionState:
        return self.states[-1]

    @property
    def base(self) -> SurfacePair:
        return self.states[0].base

    def stage_one_components(self) -> list[str]:
        return [s.component_id for s in self.steps[: self.k1]]


# A chooser picks one candidate id; the canonical one takes the minimum.
Chooser = Callable[[list[str]], str]


def _smallest(ids: list[str]) -> str:
    return min(ids)


def _stage_one_candidates(state: ContractionState) -> list[str]:
    ctx = state.ctx
    dh = state.dh_class()
    out = []
    for _, c in all_live_minus_one(state):
        if is_disjoint_from_dh(state, c.id):
            if intersect(dh, c.cls, ctx) != 0:
                raise AssertionError(f"{c.id} is disjoint from D^h but D^h.{c.id} != 0")
            out.append(c.id)
    return out


def _stage_two_candidates(state: ContractionState, t: str) -> tuple[list[str], str]:
    if not dh_dv_meet_in_fiber(state, t):
        return [], ""
    minus = live_minus_one(state, t)
    dv = [c.id for c in minus if c.in_dv]
    if dv:
        return dv, "in-Dv-preferred"
    return [c.id for c in minus], "any-minus-one"


def _drive(sp: SurfacePair, choose: Chooser):
    state = initial_state(sp)
    states = [state]
    steps = []

    def do(cid, stage, rationale):
        nonlocal state
        state, step = contract(state, cid, stage, rationale)
        states.append(state)
        steps.append(step)

    while True:
        cands = _stage_one_candidates(state)
        if not cands:
            break
        do(choose(cands), 1, "disjoint-from-Dh")
    k1 = len(steps)

    for t in state.reducible_labels():
        while True:
            cands, why = _stage_two_candidates(state, t)
            if not cands:
                break
            do(choose(cands), 2, why)
    k2 = len(steps)

    while True:
        cands = [c.id for _, c in all_live_minus_one(state)]
        if not cands:
            break
        do(choose(cands), 3, "cleanup")
    return steps, states, k1, k2


def gamma_from_states(sp: SurfacePair, contracted: list[DivisorClass]) -> int:
    """e + delta of the final model, read off the fully projected K + D^h."""
    ctx = sp.ctx
    x = canonical_class(ctx) + sp.dh_class
    for c in contracted:
        x = project_contract(x, c, ctx)
    F = fiber_class(ctx)
    lam = x.f
    if x != lam * F:
        raise AssertionError(f"projected K+D^h = {x.to_list()} is not a multiple of F")
    return lam - (2 * ctx.genus - 2)


def _plan(sp, steps, states, k1, k2) -> GoodModelPlan:
    classes = [s.contracted_class for s in steps]
    gamma = gamma_from_states(sp, classes)
    e_prime = DivisorClass.zero(sp.ctx)
    for c in classes[:k1]:
        e_prime = e_prime + c
    return GoodModelPlan(tuple(steps), k1, k2, len(steps), gamma, e_prime, tuple(states))


def run(sp: SurfacePair) -> GoodModelPlan:
    report = validate(sp)
    if not report.overall:
        raise InvalidInstance(report)
    steps, states, k1, k2 = _drive(sp, _smallest)
    plan = _plan(sp, steps, states, k1, k2)
    if plan.m != sp.ctx.num_exceptionals:
        raise AssertionError(f"stopped after {plan.m} contractions, expected {sp.ctx.num_exceptionals}")
    if plan.final_state.reducible_labels():
        raise AssertionError("final model still has reducible fibers")
    return plan


def gamma(plan: GoodModelPlan) -> int:
    return gamma_from_states(plan.base, [s.contracted_class for s in plan.steps])


def compute_e_prime(plan: GoodModelPlan) -> DivisorClass:
    total = DivisorClass.zero(plan.base.ctx)
    for s in plan.steps[: plan.k1]:
        total = total + s.contracted_class
    return total


@dataclass(frozen=True)
class ChoiceOutcome:
    choices: tuple[str, ...]
    k1: int
    k2: int
    m: int
    gamma: int
    e_prime_support: tuple[str, ...]


def explore_choices(sp: SurfacePair, limit: int = 2000) -> list[ChoiceOutcome]:
    """Run the staged contraction under every legal tie-break sequence.

    Meant for tiny instances: the number of sequences grows fast, and at most
    ``limit`` outcomes are collected.  Nothing is asserted about the results.
    """
    report = validate(sp)
    if not report.overall:
        raise InvalidInstance(report)
    outcomes: list[ChoiceOutcome] = []

    def replay_with(prefix: list[str]):
        # Follow ``prefix``, then take minima and record every real choice point.
        taken: list[str] = []
        branch: list[tuple[int, list[str]]] = []

        def choose(ids: list[str]) -> str:
            i = len(taken)
            if i < len(prefix):
                pick = prefix[i]
            else:
                if len(ids) > 1:
                    branch.append((i, sorted(ids)))
                pick = min(ids)
            taken.append(pick)
            return pick

        steps, states, k1, k2 = _drive(sp, choose)
        return steps, states, k1, k2, taken, branch

    stack: list[list[str]] = [[]]
    while stack and len(outcomes) < limit:
        prefix = stack.pop()
        steps, states, k1, k2, taken, branch = replay_with(prefix)
        plan = _plan(sp, steps, states, k1, k2)
        outcomes.append(
            ChoiceOutcome(
                tuple(taken), k1, k2, plan.m, plan.gamma, tuple(sorted(plan.stage_one_components()))
            )
        )
        for at, options in reversed(branch):
            for alt in reversed(options[1:]):
                stack.append(taken[:at] + [alt])
    return outcomes


def relabel(sp: SurfacePair, mapping: dict[str, str]) -> SurfacePair:
    """Rename component ids; ids not in ``mapping`` are kept."""
    def rn(x):
        return mapping.get(x, x)

    fibers = {}
    for t, fc in sp.fibers.items():
        comps = tuple(sorted((replace(c, id=rn(c.id)) for c in fc.components), key=lambda c: c.id))
        points = tuple(
            IncidencePoint(p.id, tuple(sorted((rn(c), m) for c, m in p.branches)))
            for p in fc.points
        )
        fibers[t] = FiberConfig(t, comps, points)
    hs = tuple(HorizontalCurve(rn(h.id), h.cls, h.marks) for h in sp.horizontals)
    return SurfacePair(sp.ctx, fibers, hs, sp.dv_whole_smooth_fibers)
