"""Graphviz export of fiber dual graphs.

Nodes are components labelled ``id [self^2,mult]``; D^v members get a double
outline and components meeting D^h are drawn as diamonds.  Edge weights are
local intersection numbers summed over shared points.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .contraction import ContractionState
from .lattice import intersect


def _q(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def fiber_graph(state: ContractionState, t: str, name: str) -> list[str]:
    ctx = state.ctx
    lf = state.fibers[t]
    hids = state.horizontal_ids()
    comp_ids = {c.id for c in lf.components}
    meets_dh = {c for p in lf.points if p.curves() & hids for c in p.curves() & comp_ids}

    lines = [f"graph {_q(name)} {{", f"  // fiber {t}, after {state.step_count} contractions"]
    for c in lf.components:
        attrs = [f"label={_q(f'{c.id} [{intersect(c.cls, c.cls, ctx)},{c.mult}]')}"]
        if c.id in meets_dh:
            attrs.append("shape=diamond")
        if c.in_dv:
            attrs.append("peripheries=2")
        lines.append(f"  {_q(c.id)} [{', '.join(attrs)}];")
    weights: dict[tuple[str, str], int] = {}
    for p in lf.points:
        for a, b, v in p.pairs:
            x, y = a[0], b[0]
            if x == y or x not in comp_ids or y not in comp_ids:
                continue
            key = (x, y) if x < y else (y, x)
            weights[key] = weights.get(key, 0) + v
    for (x, y), w in sorted(weights.items()):
        lines.append(f"  {_q(x)} -- {_q(y)} [weight={w}, label={_q(str(w))}];")
    lines.append("}")
    return lines


def export_states(states: Sequence[ContractionState]) -> str:
    """One graph per degenerate fiber per state, in state then label order."""
    if not states or not states[0].degenerate_labels:
        return "// no degenerate fibers\n"
    lines: list[str] = []
    for state, t in itertools.product(states, states[0].degenerate_labels):
        lines.extend(fiber_graph(state, t, f"{t}_state{state.step_count}"))
    return "\n".join(lines) + "\n"
