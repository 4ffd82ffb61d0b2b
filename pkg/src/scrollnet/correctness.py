"""Sequentialization search and the correctness predicate.

A net is correct when it is interpretable and some total ordering of its
arrows replays as a derivation from its premiss. The search peels
events in reverse: an event is a valid last step if undoing it leaves a
net on which the corresponding forward rule re-derives exactly the
original. Undone nets are memoized by their exact component sets (all
peel states share the original ids), and a visit budget turns
pathological searches into an explicit "unknown" outcome.
"""

from __future__ import annotations

from typing import Optional

from .net import ScrollNet, net_isomorphic
from .rules import (
    CLOSE_NEG,
    CLOSE_POS,
    DEITERATE,
    DELETE,
    INSERT,
    ITERATE_DEEP,
    ITERATE_ROOT,
    OPEN_NEG,
    OPEN_POS,
    DerivationStep,
    RuleError,
    Trace,
    apply_step,
    replay,
)
from .structure import ScrollStructure, isomorphic

DEFAULT_BUDGET = 10**6


class SequentializationBudget(Exception):
    """Search budget exhausted: correctness is unknown, not refuted."""


def sequentialize(n: ScrollNet, budget: int = DEFAULT_BUDGET) -> Optional[Trace]:
    """A replayable trace building n from its premiss, or None."""
    n.require_valid()
    state = {"budget": budget}
    failed: set = set()
    peeled = _peel(n, state, failed)
    if peeled is None:
        return None
    return _emit(n, peeled)


def is_correct(n: ScrollNet, budget: int = DEFAULT_BUDGET) -> bool:
    if not n.is_valid():
        return False
    if not n.is_interpretable():
        return False
    if n.certificate is not None and check_certificate(n):
        return True
    return sequentialize(n, budget) is not None


def check_certificate(n: ScrollNet) -> bool:
    """Replay the stored trace and compare with the net up to renaming."""
    if n.certificate is None:
        return False
    try:
        redone = replay(n.certificate.origin, n.certificate.steps)
    except (RuleError, Exception):
        return False
    return net_isomorphic(redone, n) is not None


# -- reverse peeling ------------------------------------------------------------


def _peel(n: ScrollNet, state: dict, failed: set):
    """Returns [(step, undone_created)] in forward replay order, or None."""
    if n.event_count() == 0:
        return []
    key = n.key()
    if key in failed:
        return None
    state["budget"] -= 1
    if state["budget"] < 0:
        raise SequentializationBudget("sequentialization budget exhausted")
    for prev, step, created in _candidates(n):
        rest = _peel(prev, state, failed)
        if rest is not None:
            rest.append((step, created))
            return rest
    failed.add(key)
    return None


def _candidates(n: ScrollNet):
    """Valid last events: (previous net, forward step, original created ids)."""
    s = n.structure

    def verify(prev: ScrollNet, step: DerivationStep, forced: dict[str, str]):
        try:
            redone, _ = apply_step(prev, step, forced=forced or None)
        except RuleError:
            return None
        if redone.key() != n.key():
            return None
        return prev, step, forced

    # Arrow-only events first: they never remove material.
    for v, u in sorted(n.collapses):
        if s.is_positive(v):
            prev = n.replace(collapses=n.collapses - {(v, u)}, certificate=None)
            got = verify(prev, DerivationStep(CLOSE_POS, target=v), {})
            if got:
                yield got
    for v, u in sorted(n.expansions):
        if not s.is_positive(v):
            prev = n.replace(expansions=n.expansions - {(v, u)}, certificate=None)
            got = verify(prev, DerivationStep(CLOSE_NEG, target=v), {})
            if got:
                yield got
    for v in sorted(n.self_justifications):
        if s.is_positive(v):
            prev = n.replace(
                self_justifications=n.self_justifications - {v}, certificate=None
            )
            got = verify(prev, DerivationStep(DELETE, target=v), {})
            if got:
                yield got
    for u, v in sorted(n.justifications):
        if not s.is_positive(v):
            prev = n.replace(justifications=n.justifications - {(u, v)}, certificate=None)
            got = verify(prev, DerivationStep(DEITERATE, source=u, target=v), {})
            if got:
                yield got

    # Material events: insert / iterate copies, then opens.
    for v in sorted(n.self_justifications):
        if s.is_positive(v):
            continue
        got = _undo_copy(n, v, None)
        if got:
            yield got
    for u, v in sorted(n.justifications):
        if s.is_positive(v):
            got = _undo_copy(n, v, u)
            if got:
                yield got
    for v, u in sorted(n.expansions):
        if s.is_positive(v) and (v, u) not in n.collapses:
            got = _undo_open(n, v, u, OPEN_POS)
            if got:
                yield got
    for v, u in sorted(n.collapses):
        if not s.is_positive(v) and (v, u) not in n.expansions:
            got = _undo_open(n, v, u, OPEN_NEG)
            if got:
                yield got


def _arrows_touching(n: ScrollNet, nodes: frozenset[str]) -> list:
    hits = []
    for a, b in n.justifications:
        if a in nodes or b in nodes:
            hits.append(("just", a, b))
    for v in n.self_justifications:
        if v in nodes:
            hits.append(("self", v))
    for a, b in n.expansions:
        if a in nodes or b in nodes:
            hits.append(("exp", a, b))
    for a, b in n.collapses:
        if a in nodes or b in nodes:
            hits.append(("col", a, b))
    return hits


def _undo_copy(n: ScrollNet, v: str, source: Optional[str]):
    """Undo Insert (source None) or Iterate (source given) whose copy is v's subtree."""
    s = n.structure
    subtree = s.reachable_set(v)
    if source is not None and source in subtree:
        return None
    for w in subtree:
        if w != v and not s.parents(w) <= subtree:
            return None
    vparents = s.parents(v)
    if source is None:
        expected = [("self", v)]
        if len(vparents) != 1:
            return None
    else:
        expected = [("just", source, v)]
        if len(vparents) > 1:
            return None
    if sorted(_arrows_touching(n, subtree)) != sorted(expected):
        return None

    keep = s.nodes - subtree
    structure = s.restrict(keep)
    copy = s.restrict(subtree)
    if source is None:
        prev = n.replace(
            structure=structure,
            self_justifications=n.self_justifications - {v},
            certificate=None,
        )
        parent = next(iter(vparents))
        step = DerivationStep(INSERT, parent=parent, payload=copy)
        forced = {w: w for w in subtree}
    else:
        prev = n.replace(
            structure=structure,
            justifications=n.justifications - {(source, v)},
            certificate=None,
        )
        try:
            payload = prev.payload_below(source)
        except Exception:
            return None
        witness = isomorphic(payload, copy)
        if witness is None:
            return None
        if vparents:
            step = DerivationStep(ITERATE_DEEP, source=source, parent=next(iter(vparents)))
        else:
            step = DerivationStep(ITERATE_ROOT, source=source)
        forced = witness

    try:
        redone, _ = apply_step(prev, step, forced=forced)
    except RuleError:
        return None
    if redone.key() != n.key():
        return None
    return prev, step, forced


def _undo_open(n: ScrollNet, v: str, u: str, rule: str):
    s = n.structure
    if s.children(v) != frozenset({u}):
        return None
    mark = ("exp", v, u) if rule == OPEN_POS else ("col", v, u)
    if _arrows_touching(n, frozenset({v, u})) != [mark]:
        return None
    targets = tuple(sorted(s.children(u)))
    parents = s.parents(v)
    keep = s.nodes - {v, u}
    edges = {(p, c) for p, c in s.edges if p in keep and c in keep}
    edges |= {(p, c) for p in parents for c in targets}
    structure = ScrollStructure(
        nodes=keep,
        edges=edges,
        labels={w: a for w, a in s.labels.items() if w in keep},
        attachments=[(o, i) for o, i in s.attachments if o in keep and i in keep],
    )
    if rule == OPEN_POS:
        prev = n.replace(
            structure=structure, expansions=n.expansions - {(v, u)}, certificate=None
        )
    else:
        prev = n.replace(
            structure=structure, collapses=n.collapses - {(v, u)}, certificate=None
        )
    if targets:
        step = DerivationStep(rule, targets=targets)
    elif len(parents) <= 1:
        step = DerivationStep(rule, parent=next(iter(parents), None))
    else:
        return None
    forced = {"outloop": v, "inloop": u}
    try:
        redone, _ = apply_step(prev, step, forced=forced)
    except RuleError:
        return None
    if redone.key() != n.key():
        return None
    return prev, step, forced


# -- emission --------------------------------------------------------------------


def _rewrite_step(step: DerivationStep, ren: dict[str, str]) -> DerivationStep:
    def r(x):
        return ren[x] if x is not None else None

    return DerivationStep(
        rule=step.rule,
        targets=tuple(ren[t] for t in step.targets),
        parent=r(step.parent),
        payload=step.payload,
        source=r(step.source),
        target=r(step.target),
        fresh=step.fresh,
    )


def _emit(n: ScrollNet, peeled: list) -> Trace:
    """Replay the found order with fresh ids, rewriting node references."""
    from .net import lift

    origin = n.premiss
    ren: dict[str, str] = {v: v for v in origin.nodes}
    net = lift(origin)
    steps: list[DerivationStep] = []
    for i, (step, created) in enumerate(peeled):
        step2 = _rewrite_step(step, ren)
        step2 = DerivationStep(
            rule=step2.rule,
            targets=step2.targets,
            parent=step2.parent,
            payload=step2.payload,
            source=step2.source,
            target=step2.target,
            fresh=f"q{i}_",
        )
        net, made = apply_step(net, step2)
        # `created` maps the forward rule's template keys to the ids the
        # original derivation produced; `made` maps the replay's template
        # keys. Open uses symbolic keys and Insert the verbatim payload
        # ids; iterate payloads are recomputed on the replay side, so
        # their node ids go through the renaming first.
        for template, original in created.items():
            if step.rule in (ITERATE_ROOT, ITERATE_DEEP):
                key = ren.get(template)
            else:
                key = template
            if key in made:
                ren[original] = made[key]
        steps.append(step2)
    return Trace(origin, tuple(steps))
