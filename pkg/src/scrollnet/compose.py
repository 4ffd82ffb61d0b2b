"""Horizontal and vertical composition of nets.

Horizontal composition is the disjoint union. Vertical composition
superposes the right net's derivation on the left net through an
isomorphism between the left conclusion and the right premiss; the
boundaries of the composite are the left premiss and the right
conclusion. Boundary node identity is what makes the lifting well
defined: conclusion nodes of the left net are live nodes, so the
renamed steps apply directly.
"""

from __future__ import annotations

from typing import Optional

from .net import ScrollNet, lift
from .rules import (
    DerivationStep,
    ITERATE_DEEP,
    ITERATE_ROOT,
    RuleError,
    Trace,
    apply_step,
    replay,
)
from .structure import ScrollStructure, isomorphic
from .correctness import check_certificate, sequentialize


class CompositionError(ValueError):
    pass


def _retag_structure(s: ScrollStructure, tag: str) -> ScrollStructure:
    return ScrollStructure(
        nodes=[tag + v for v in s.nodes],
        edges=[(tag + p, tag + c) for p, c in s.edges],
        labels={tag + v: a for v, a in s.labels.items()},
        attachments=[(tag + o, tag + i) for o, i in s.attachments],
    )


def _retag_step(step: DerivationStep, tag: str) -> DerivationStep:
    r = lambda x: tag + x if x is not None else None
    return DerivationStep(
        rule=step.rule,
        targets=tuple(tag + t for t in step.targets),
        parent=r(step.parent),
        payload=step.payload,
        source=r(step.source),
        target=r(step.target),
        fresh=tag.replace(".", "_") + (step.fresh or "n"),
    )


def retag_net(n: ScrollNet, tag: str) -> ScrollNet:
    cert = None
    if n.certificate is not None:
        cert = Trace(
            _retag_structure(n.certificate.origin, tag),
            tuple(_retag_step(s, tag) for s in n.certificate.steps),
        )
    return ScrollNet(
        structure=_retag_structure(n.structure, tag),
        justifications=[(tag + a, tag + b) for a, b in n.justifications],
        self_justifications=[tag + v for v in n.self_justifications],
        expansions=[(tag + a, tag + b) for a, b in n.expansions],
        collapses=[(tag + a, tag + b) for a, b in n.collapses],
        certificate=cert,
    )


def horizontal(a: ScrollNet, b: ScrollNet) -> ScrollNet:
    """Component-wise disjoint union with deterministic left/right tags."""
    left = retag_net(a, "l.")
    right = retag_net(b, "r.")
    cert = None
    if left.certificate is not None and right.certificate is not None:
        origin = ScrollStructure(
            nodes=left.certificate.origin.nodes | right.certificate.origin.nodes,
            edges=set(left.certificate.origin.edges) | set(right.certificate.origin.edges),
            labels={**left.certificate.origin.labels, **right.certificate.origin.labels},
            attachments=left.certificate.origin.attachments
            | right.certificate.origin.attachments,
        )
        cert = Trace(origin, left.certificate.steps + right.certificate.steps)
    return ScrollNet(
        structure=ScrollStructure(
            nodes=left.structure.nodes | right.structure.nodes,
            edges=set(left.structure.edges) | set(right.structure.edges),
            labels={**left.structure.labels, **right.structure.labels},
            attachments=left.structure.attachments | right.structure.attachments,
        ),
        justifications=left.justifications | right.justifications,
        self_justifications=left.self_justifications | right.self_justifications,
        expansions=left.expansions | right.expansions,
        collapses=left.collapses | right.collapses,
        certificate=cert,
    )


def compatible(a: ScrollNet, b: ScrollNet) -> Optional[dict[str, str]]:
    """Witness bijection from conclusion-of-a nodes to premiss-of-b nodes."""
    if not (a.is_interpretable() and b.is_interpretable()):
        return None
    return isomorphic(a.conclusion, b.premiss)


def _trace_of(n: ScrollNet, budget: int) -> Trace:
    if n.certificate is not None and check_certificate(n):
        return n.certificate
    t = sequentialize(n, budget)
    if t is None:
        raise CompositionError("net is not sequentializable")
    return t


def _lift_trace(base: ScrollNet, trace: Trace, sigma_inv: dict[str, str], fresh: str):
    """Replay `trace` against `base`, renaming through sigma_inv.

    Runs the trace in parallel against its own origin to learn the
    right-side created ids, so later references resolve on both sides.
    """
    ren = dict(sigma_inv)
    left = base.replace(certificate=None)
    right = lift(trace.origin)
    lifted: list[DerivationStep] = []
    for i, step in enumerate(trace.steps):
        try:
            r_step = DerivationStep(
                rule=step.rule,
                targets=tuple(ren[t] for t in step.targets),
                parent=ren[step.parent] if step.parent is not None else None,
                payload=step.payload,
                source=ren[step.source] if step.source is not None else None,
                target=ren[step.target] if step.target is not None else None,
                fresh=f"{fresh}{i}_",
            )
        except KeyError as e:
            raise CompositionError(f"step {i} references unliftable node {e}") from e
        try:
            left, made_left = apply_step(left, r_step)
        except RuleError as e:
            raise CompositionError(f"lifted step {i} not applicable: {e}") from e
        right, made_right = apply_step(right, step)
        for template, rid in made_right.items():
            if step.rule in (ITERATE_ROOT, ITERATE_DEEP):
                key = ren.get(template)
            else:
                key = template
            if key in made_left:
                ren[rid] = made_left[key]
        lifted.append(r_step)
    return left, lifted


def superpose(a: ScrollNet, b: ScrollNet, budget: int = 10**6) -> ScrollNet:
    """Continue a with b's derivation through the shared boundary."""
    t_b = _trace_of(b, budget)
    sigma = isomorphic(a.conclusion, t_b.origin)
    if sigma is None:
        raise CompositionError("nets are not compatible")
    sigma_inv = {w: v for v, w in sigma.items()}
    left, _ = _lift_trace(a, t_b, sigma_inv, fresh="v")
    return left.replace(certificate=None)


def vertical(a: ScrollNet, b: ScrollNet, budget: int = 10**6) -> ScrollNet:
    """Cut-like composition; certificate concatenates both derivations."""
    t_a = _trace_of(a, budget)
    a_r = replay(t_a.origin, t_a.steps)
    t_b = _trace_of(b, budget)
    sigma = isomorphic(a_r.conclusion, t_b.origin)
    if sigma is None:
        raise CompositionError("nets are not compatible")
    sigma_inv = {w: v for v, w in sigma.items()}
    left, lifted = _lift_trace(a_r, t_b, sigma_inv, fresh="w")
    return left.replace(certificate=Trace(t_a.origin, t_a.steps + tuple(lifted)))
