"""The nine derivation rules, traces, replay and rule enumeration.

Each rule is a partial map on nets: it checks its premisses against the
current net and returns a new net that only ever gains nodes and arrows
(OPEN may rewire the parent edges of its targets; the collapse of the
new scroll restores them in the premiss, which is what keeps every rule
premiss-preserving).

Location conditions are checked against the current DAG and, where the
two can differ, against the conclusion boundary: OPEN accepts targets
that are either siblings with equal parent sets or roots of the
conclusion; iteration scope accepts a sibling of the source dominating
the target in either graph. The boundary readings are what make shared
inloops derivable and superposition lifting well defined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .net import NetError, ScrollNet, lift
from .structure import (
    NEGATIVE,
    POSITIVE,
    SchemaError,
    ScrollStructure,
    isomorphic,
    structure_from_obj,
    structure_to_obj,
)

OPEN_POS = "OpenPos"
OPEN_NEG = "OpenNeg"
CLOSE_POS = "ClosePos"
CLOSE_NEG = "CloseNeg"
INSERT = "Insert"
DELETE = "Delete"
ITERATE_ROOT = "IterateRoot"
ITERATE_DEEP = "IterateDeep"
DEITERATE = "Deiterate"

RULES = (
    OPEN_POS,
    OPEN_NEG,
    CLOSE_POS,
    CLOSE_NEG,
    INSERT,
    DELETE,
    ITERATE_ROOT,
    ITERATE_DEEP,
    DEITERATE,
)


class RuleError(ValueError):
    """A failed rule premiss; `premiss` names the violated condition."""

    def __init__(self, rule: str, premiss: str, message: str):
        super().__init__(f"{rule}: {premiss}: {message}")
        self.rule = rule
        self.premiss = premiss


class ReplayError(ValueError):
    def __init__(self, index: int, cause: RuleError):
        super().__init__(f"step {index}: {cause}")
        self.index = index
        self.cause = cause


@dataclass(frozen=True)
class DerivationStep:
    rule: str
    targets: tuple[str, ...] = ()
    parent: Optional[str] = None
    payload: Optional[ScrollStructure] = None
    source: Optional[str] = None
    target: Optional[str] = None
    fresh: Optional[str] = None


@dataclass(frozen=True)
class Trace:
    origin: ScrollStructure
    steps: tuple[DerivationStep, ...] = ()


# -- fresh ids ----------------------------------------------------------------


def _fresh_ids(existing: frozenset[str], prefix: str, count: int) -> list[str]:
    out: list[str] = []
    i = 0
    while len(out) < count:
        nid = f"{prefix}{i}"
        if nid not in existing and nid not in out:
            out.append(nid)
        i += 1
    return out


def _copy_structure(
    payload: ScrollStructure,
    existing: frozenset[str],
    prefix: str,
    forced: Optional[dict[str, str]],
) -> tuple[ScrollStructure, dict[str, str]]:
    order = sorted(payload.nodes)
    if forced is not None:
        mapping = {v: forced[v] for v in order}
    else:
        fresh = _fresh_ids(existing, prefix, len(order))
        mapping = dict(zip(order, fresh))
    copied = ScrollStructure(
        nodes=[mapping[v] for v in order],
        edges=[(mapping[p], mapping[c]) for p, c in payload.edges],
        labels={mapping[v]: a for v, a in payload.labels.items()},
        attachments=[(mapping[o], mapping[i]) for o, i in payload.attachments],
    )
    return copied, mapping


def _merge(s: ScrollStructure, extra: ScrollStructure, new_edges=()) -> ScrollStructure:
    return ScrollStructure(
        nodes=s.nodes | extra.nodes,
        edges=set(s.edges) | set(extra.edges) | set(new_edges),
        labels={**s.labels, **extra.labels},
        attachments=s.attachments | extra.attachments,
    )


# -- shared checks -------------------------------------------------------------


def _require_node(n: ScrollNet, rule: str, v: Optional[str], role: str) -> str:
    if v is None:
        raise RuleError(rule, "missing-parameter", f"{role} is required")
    if v not in n.structure.nodes:
        raise RuleError(rule, "unknown-node", f"{role} {v!r} is not a node")
    return v


def _is_inloop(n: ScrollNet, v: str) -> bool:
    return v in n.structure.inloops


def _alive(n: ScrollNet, v: str) -> bool:
    return v in n.conclusion.nodes


def _sibling_scope(s: ScrollStructure, u: str, v: str) -> bool:
    """∃ v0 with the same parents as u and v0 ->*= v (reflexive descent)."""
    if u not in s.nodes or v not in s.nodes:
        return False
    pu = s.parents(u)
    if pu:
        candidates = set()
        for p in pu:
            candidates |= s.children(p)
        candidates = {w for w in candidates if s.parents(w) == pu}
    else:
        candidates = set(s.roots)
    for v0 in candidates:
        if v0 == v or s.descends(v0, v):
            return True
    return False


def _scope_ok(n: ScrollNet, u: str, v: str, boundary_only: bool = False) -> bool:
    if not boundary_only and _sibling_scope(n.structure, u, v):
        return True
    return _sibling_scope(n.conclusion, u, v)


def _payload(n: ScrollNet, u: str) -> ScrollStructure:
    cache = getattr(n, "_payload_cache", None)
    if cache is None:
        cache = {}
        n._payload_cache = cache
    if u not in cache:
        cache[u] = n.payload_below(u)
    return cache[u]


def _check_iteration_source(n: ScrollNet, rule: str, u: str) -> ScrollStructure:
    if _is_inloop(n, u):
        raise RuleError(rule, "source-inloop", f"source {u!r} is an inloop")
    if not _alive(n, u):
        raise RuleError(rule, "source-not-visible", f"source {u!r} is not in the conclusion")
    payload = _payload(n, u)
    if u not in payload.nodes or payload.roots != (u,):
        raise RuleError(
            rule, "source-not-visible", f"source {u!r} does not survive its own contents"
        )
    return payload


# -- the rules -----------------------------------------------------------------


def _apply_open(n: ScrollNet, step: DerivationStep, forced) -> tuple[ScrollNet, dict]:
    rule = step.rule
    sign = POSITIVE if rule == OPEN_POS else NEGATIVE
    s = n.structure
    targets = tuple(dict.fromkeys(step.targets))
    if len(targets) != len(step.targets):
        raise RuleError(rule, "targets-distinct", "duplicate targets")
    for t in targets:
        _require_node(n, rule, t, "target")

    rewire_parents: frozenset[str] = frozenset()
    if targets:
        if step.parent is not None:
            raise RuleError(rule, "parent-with-targets", "parent only allowed when k = 0")
        alive = n.conclusion.nodes
        for t in targets:
            if t in s.inloops:
                raise RuleError(rule, "target-inloop", "an inloop alone is not a graph")
            if t not in alive:
                raise RuleError(
                    rule, "target-not-visible", f"target {t!r} is not in the conclusion"
                )
        pols = {s.polarity(t) for t in targets}
        if pols != {sign}:
            raise RuleError(rule, "polarity", f"targets must all be {sign}")
        parent_sets = {s.parents(t) for t in targets}
        if len(parent_sets) == 1:
            rewire_parents = next(iter(parent_sets))
        else:
            concl = n.conclusion
            bad = [t for t in targets if t not in concl.roots]
            if bad:
                raise RuleError(
                    rule,
                    "siblings",
                    f"targets are neither siblings nor conclusion roots: {bad}",
                )
            for t in targets:
                if not s.parents(t) <= s.inloops:
                    raise RuleError(
                        rule, "sharing", f"target {t!r} has a non-inloop parent"
                    )
    else:
        parent = step.parent
        if parent is not None:
            _require_node(n, rule, parent, "parent")
            if parent in s.labels:
                raise RuleError(rule, "parent-atom", "atoms have no area")
            new_pol = NEGATIVE if s.is_positive(parent) else POSITIVE
        else:
            new_pol = POSITIVE
        if new_pol != sign:
            raise RuleError(rule, "polarity", f"location is {new_pol}, rule needs {sign}")

    if forced is not None:
        u, ui = forced["outloop"], forced["inloop"]
    else:
        u, ui = _fresh_ids(s.nodes, step.fresh or "u", 2)
    if u in s.nodes or ui in s.nodes:
        raise RuleError(rule, "fresh-collision", f"ids {u!r}/{ui!r} already in use")

    edges = set(s.edges)
    if targets:
        for p in rewire_parents:
            for t in targets:
                edges.discard((p, t))
            edges.add((p, u))
    elif step.parent is not None:
        edges.add((step.parent, u))
    edges.add((u, ui))
    for t in targets:
        edges.add((ui, t))

    structure = ScrollStructure(
        nodes=s.nodes | {u, ui},
        edges=edges,
        labels=s.labels,
        attachments=s.attachments | {(u, ui)},
    )
    if rule == OPEN_POS:
        out = n.replace(
            structure=structure, expansions=n.expansions | {(u, ui)}, certificate=None
        )
    else:
        out = n.replace(
            structure=structure, collapses=n.collapses | {(u, ui)}, certificate=None
        )
    return out, {"outloop": u, "inloop": ui}


def _apply_close(n: ScrollNet, step: DerivationStep) -> ScrollNet:
    rule = step.rule
    sign = POSITIVE if rule == CLOSE_POS else NEGATIVE
    v = _require_node(n, rule, step.target, "outloop")
    s = n.structure
    u = s.attachment_of(v)
    if u is None:
        raise RuleError(rule, "attachment", f"{v!r} is not an outloop")
    if s.polarity(v) != sign:
        raise RuleError(rule, "polarity", f"outloop is {s.polarity(v)}, rule needs {sign}")
    marks = n.collapses if rule == CLOSE_POS else n.expansions
    if (v, u) in marks:
        raise RuleError(rule, "already-closed", f"scroll {v!r} is already closed")
    if v in n.edit_state.eliminated:
        raise RuleError(rule, "eliminated-outloop", f"{v!r} is eliminated")
    concl = n.conclusion
    if v in concl.nodes:
        residue = sorted(concl.children(v) - {u})
        if residue:
            raise RuleError(
                rule, "outloop-not-discharged", f"outloop still contains {residue}"
            )
    if rule == CLOSE_POS:
        return n.replace(collapses=n.collapses | {(v, u)}, certificate=None)
    return n.replace(expansions=n.expansions | {(v, u)}, certificate=None)


def _apply_insert(n: ScrollNet, step: DerivationStep, forced) -> tuple[ScrollNet, dict]:
    rule = INSERT
    v = _require_node(n, rule, step.parent, "parent")
    s = n.structure
    if v in s.labels:
        raise RuleError(rule, "parent-atom", "atoms have no area")
    if not s.is_positive(v):
        raise RuleError(rule, "polarity", f"parent {v!r} must be positive")
    payload = step.payload
    if payload is None or payload.is_empty():
        raise RuleError(rule, "payload", "a non-empty payload is required")
    if not payload.is_valid():
        raise RuleError(rule, "payload", "payload is not a valid structure")
    if len(payload.roots) != 1:
        raise RuleError(rule, "payload", "payload must have a single root")
    copied, mapping = _copy_structure(payload, s.nodes, step.fresh or "p", forced)
    root = mapping[payload.roots[0]]
    structure = _merge(s, copied, [(v, root)])
    out = n.replace(
        structure=structure,
        self_justifications=n.self_justifications | {root},
        certificate=None,
    )
    return out, mapping


def _apply_delete(n: ScrollNet, step: DerivationStep) -> ScrollNet:
    rule = DELETE
    v = _require_node(n, rule, step.target, "target")
    s = n.structure
    if not s.is_positive(v):
        raise RuleError(rule, "polarity", f"{v!r} must be positive")
    if _is_inloop(n, v):
        raise RuleError(rule, "target-inloop", "an inloop alone is not a graph")
    if v in n.self_justifications:
        raise RuleError(rule, "already-deleted", f"{v!r} is already self-justified")
    if v in n.edit_state.closed:
        raise RuleError(rule, "closed-target", f"{v!r} is already closed")
    return n.replace(self_justifications=n.self_justifications | {v}, certificate=None)


def _apply_iterate_root(n: ScrollNet, step: DerivationStep, forced) -> tuple[ScrollNet, dict]:
    rule = ITERATE_ROOT
    u = _require_node(n, rule, step.source, "source")
    if u not in n.conclusion.roots:
        raise RuleError(rule, "not-a-root", f"source {u!r} is not a conclusion root")
    payload = _check_iteration_source(n, rule, u)
    copied, mapping = _copy_structure(payload, n.structure.nodes, step.fresh or "c", forced)
    structure = _merge(n.structure, copied)
    out = n.replace(
        structure=structure,
        justifications=n.justifications | {(u, mapping[u])},
        certificate=None,
    )
    return out, mapping


def _apply_iterate_deep(n: ScrollNet, step: DerivationStep, forced) -> tuple[ScrollNet, dict]:
    rule = ITERATE_DEEP
    u = _require_node(n, rule, step.source, "source")
    v = _require_node(n, rule, step.parent, "parent")
    s = n.structure
    if v in s.labels:
        raise RuleError(rule, "target-atom", "atoms have no area")
    if s.is_positive(v):
        raise RuleError(rule, "polarity", f"target sep {v!r} must be negative")
    if not _scope_ok(n, u, v):
        raise RuleError(rule, "scope", f"no sibling of {u!r} contains {v!r}")
    payload = _check_iteration_source(n, rule, u)
    copied, mapping = _copy_structure(payload, s.nodes, step.fresh or "c", forced)
    structure = _merge(s, copied, [(v, mapping[u])])
    out = n.replace(
        structure=structure,
        justifications=n.justifications | {(u, mapping[u])},
        certificate=None,
    )
    return out, mapping


def _apply_deiterate(n: ScrollNet, step: DerivationStep) -> ScrollNet:
    rule = DEITERATE
    u = _require_node(n, rule, step.source, "source")
    v = _require_node(n, rule, step.target, "target")
    s = n.structure
    if u == v:
        raise RuleError(rule, "self-target", "source and target coincide")
    if s.is_positive(v):
        raise RuleError(rule, "polarity", f"target {v!r} must be negative")
    if _is_inloop(n, u):
        raise RuleError(rule, "source-inloop", f"source {u!r} is an inloop")
    if _is_inloop(n, v):
        raise RuleError(rule, "target-inloop", f"target {v!r} is an inloop")
    if not _alive(n, u):
        raise RuleError(rule, "source-not-visible", f"source {u!r} is not in the conclusion")
    if v in n.justified:
        raise RuleError(rule, "justification-forest", f"{v!r} is already justified")
    if v in n.edit_state.closed:
        raise RuleError(rule, "closed-target", f"{v!r} is already closed")
    if not _scope_ok(n, u, v):
        raise RuleError(rule, "scope", f"no sibling of {u!r} contains {v!r}")
    if isomorphic(_payload(n, u), _payload(n, v)) is None:
        raise RuleError(rule, "shape-mismatch", "source and target contents differ")
    if _reaches(n.justifications, v, u):
        raise RuleError(rule, "justification-cycle", f"{u!r} is justified through {v!r}")
    return n.replace(justifications=n.justifications | {(u, v)}, certificate=None)


def _reaches(just: frozenset[tuple[str, str]], start: str, goal: str) -> bool:
    adj: dict[str, list[str]] = {}
    for a, b in just:
        adj.setdefault(a, []).append(b)
    seen = {start}
    stack = [start]
    while stack:
        for w in adj.get(stack.pop(), ()):
            if w == goal:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


# -- dispatch --------------------------------------------------------------------


def apply_step(
    n: ScrollNet, step: DerivationStep, forced: Optional[dict[str, str]] = None
) -> tuple[ScrollNet, dict[str, str]]:
    """Apply one rule; returns the new net and the created-id map."""
    if step.rule in (OPEN_POS, OPEN_NEG):
        return _apply_open(n, step, forced)
    if step.rule in (CLOSE_POS, CLOSE_NEG):
        return _apply_close(n, step), {}
    if step.rule == INSERT:
        return _apply_insert(n, step, forced)
    if step.rule == DELETE:
        return _apply_delete(n, step), {}
    if step.rule == ITERATE_ROOT:
        return _apply_iterate_root(n, step, forced)
    if step.rule == ITERATE_DEEP:
        return _apply_iterate_deep(n, step, forced)
    if step.rule == DEITERATE:
        return _apply_deiterate(n, step), {}
    raise RuleError(step.rule, "unknown-rule", f"no such rule {step.rule!r}")


def apply(n: ScrollNet, step: DerivationStep) -> ScrollNet:
    return apply_step(n, step)[0]


def replay(origin: ScrollStructure, steps: Iterable[DerivationStep]) -> ScrollNet:
    """Fold the steps over the lifted origin; records the trace as certificate."""
    if origin.validate():
        raise NetError("replay origin is not a valid structure")
    net = lift(origin)
    steps = tuple(steps)
    for i, step in enumerate(steps):
        try:
            net = apply(net, step)
        except RuleError as e:
            raise ReplayError(i, e) from e
    return net.replace(certificate=Trace(origin, steps))


# -- enumeration --------------------------------------------------------------------


def payload_catalog(payload_bound: int, atoms: tuple[str, ...] = ("a", "b", "c")) -> list[ScrollStructure]:
    """Small insertable statements up to the given node count."""
    from .structure import parse_text

    cat: list[tuple[int, str]] = [(1, a) for a in atoms]
    cat += [(2, "[ ; ]")]
    cat += [(3, f"[ ; {a}]") for a in atoms[:2]]
    cat += [(3, f"[{a} ; ]") for a in atoms[:1]]
    cat += [(4, f"[{atoms[0]} ; {atoms[1]}]")]
    return [parse_text(text) for size, text in cat if size <= payload_bound]


def enumerate_applicable(
    n: ScrollNet,
    at: Optional[str] = None,
    payload_bound: int = 0,
    boundary_only: bool = False,
) -> list[DerivationStep]:
    """Every step whose premisses hold (Insert bounded by payload size).

    With boundary_only, location conditions are required to hold in the
    conclusion boundary itself, which keeps the step liftable through
    superposition.
    """
    s = n.structure
    concl = n.conclusion
    es = n.edit_state
    out: list[DerivationStep] = []

    def keep(step: DerivationStep) -> None:
        if at is not None and at not in (
            step.parent,
            step.source,
            step.target,
            *step.targets,
        ):
            return
        out.append(step)

    seps = sorted(v for v in s.nodes if v not in s.labels)
    alive = concl.nodes

    # OPEN at empty locations
    for parent in [None, *seps]:
        if boundary_only and parent is not None and parent not in alive:
            continue
        pol = POSITIVE if parent is None else (NEGATIVE if s.is_positive(parent) else POSITIVE)
        rule = OPEN_POS if pol == POSITIVE else OPEN_NEG
        keep(DerivationStep(rule, parent=parent))

    # OPEN around targets: sibling classes and conclusion-root groups
    classes: dict[frozenset[str], list[str]] = {}
    for v in sorted(s.nodes):
        classes.setdefault(s.parents(v), []).append(v)
    groups: list[tuple[str, ...]] = []
    for members in classes.values():
        groups.extend((v,) for v in members)
        if len(members) > 1:
            groups.append(tuple(members))
    if len(concl.roots) > 1:
        groups.append(concl.roots)
    seen_groups = set()
    for group in groups:
        if group in seen_groups:
            continue
        seen_groups.add(group)
        if boundary_only and any(t not in alive for t in group):
            continue
        try:
            pols = {s.polarity(t) for t in group}
        except Exception:
            continue
        if len(pols) != 1:
            continue
        rule = OPEN_POS if pols == {POSITIVE} else OPEN_NEG
        step = DerivationStep(rule, targets=group)
        try:
            apply_step(n, step)
        except RuleError:
            continue
        keep(step)

    # CLOSE
    for v, u in sorted(s.attachments):
        rule = CLOSE_POS if s.is_positive(v) else CLOSE_NEG
        step = DerivationStep(rule, target=v)
        try:
            apply_step(n, step)
        except RuleError:
            continue
        if boundary_only and v not in alive:
            continue
        keep(step)

    # INSERT
    for payload in payload_catalog(payload_bound):
        for v in seps:
            if not s.is_positive(v):
                continue
            if boundary_only and v not in alive:
                continue
            keep(DerivationStep(INSERT, parent=v, payload=payload))

    # DELETE
    for v in sorted(s.nodes):
        step = DerivationStep(DELETE, target=v)
        try:
            apply_step(n, step)
        except RuleError:
            continue
        if boundary_only and v not in alive:
            continue
        keep(step)

    # ITERATE root
    for u in concl.roots:
        step = DerivationStep(ITERATE_ROOT, source=u)
        try:
            apply_step(n, step)
        except RuleError:
            continue
        keep(step)

    # ITERATE deep / DEITERATE
    sources = [
        u
        for u in sorted(alive)
        if not _is_inloop(n, u)
    ]
    for u in sources:
        for v in seps:
            if s.is_positive(v):
                continue
            if not _scope_ok(n, u, v, boundary_only=boundary_only):
                continue
            step = DerivationStep(ITERATE_DEEP, source=u, parent=v)
            try:
                apply_step(n, step)
            except RuleError:
                continue
            keep(step)
    for u in sources:
        for v in sorted(s.nodes):
            if u == v or s.is_positive(v) or _is_inloop(n, v):
                continue
            if v in n.justified or v in es.closed:
                continue
            if not _scope_ok(n, u, v, boundary_only=boundary_only):
                continue
            step = DerivationStep(DEITERATE, source=u, target=v)
            try:
                apply_step(n, step)
            except RuleError:
                continue
            keep(step)

    return out


# -- step and trace JSON -----------------------------------------------------------


def step_to_obj(step: DerivationStep) -> dict:
    obj: dict = {"rule": step.rule}
    if step.rule in (OPEN_POS, OPEN_NEG):
        obj["targets"] = list(step.targets)
        obj["parent"] = step.parent
        obj["fresh"] = step.fresh
    elif step.rule in (CLOSE_POS, CLOSE_NEG):
        obj["outloop"] = step.target
    elif step.rule == INSERT:
        obj["parent"] = step.parent
        obj["payload"] = structure_to_obj(step.payload) if step.payload else None
        obj["fresh"] = step.fresh
    elif step.rule == DELETE:
        obj["target"] = step.target
    elif step.rule == ITERATE_ROOT:
        obj["source"] = step.source
        obj["fresh"] = step.fresh
    elif step.rule == ITERATE_DEEP:
        obj["source"] = step.source
        obj["parent"] = step.parent
        obj["fresh"] = step.fresh
    elif step.rule == DEITERATE:
        obj["source"] = step.source
        obj["target"] = step.target
    return obj


STEP_KEYS = {"rule", "targets", "parent", "payload", "fresh", "source", "target", "outloop"}


def step_from_obj(obj, path: str = "$") -> DerivationStep:
    if not isinstance(obj, dict):
        raise SchemaError("expected step object", path)
    unknown = set(obj) - STEP_KEYS
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)}", path)
    rule = obj.get("rule")
    if rule not in RULES:
        raise SchemaError(f"unknown rule {rule!r}", f"{path}.rule")
    payload = None
    if obj.get("payload") is not None:
        payload = structure_from_obj(obj["payload"], f"{path}.payload")
    targets = obj.get("targets") or ()
    if not isinstance(targets, (list, tuple)):
        raise SchemaError("expected array", f"{path}.targets")
    target = obj.get("outloop") if rule in (CLOSE_POS, CLOSE_NEG) else obj.get("target")
    return DerivationStep(
        rule=rule,
        targets=tuple(targets),
        parent=obj.get("parent"),
        payload=payload,
        source=obj.get("source"),
        target=target,
        fresh=obj.get("fresh"),
    )


def trace_to_obj(t: Trace) -> dict:
    return {
        "origin": structure_to_obj(t.origin),
        "steps": [step_to_obj(s) for s in t.steps],
    }


def trace_from_obj(obj, path: str = "$") -> Trace:
    if not isinstance(obj, dict) or set(obj) - {"origin", "steps"}:
        raise SchemaError("expected trace object", path)
    origin = structure_from_obj(obj.get("origin", {}), f"{path}.origin")
    raw = obj.get("steps", [])
    if not isinstance(raw, list):
        raise SchemaError("expected array", f"{path}.steps")
    steps = tuple(step_from_obj(s, f"{path}.steps[{i}]") for i, s in enumerate(raw))
    return Trace(origin, steps)


def decode_trace_json(data: bytes | str) -> Trace:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"bad JSON: {e.msg}", "$") from e
    return trace_from_obj(obj)


def encode_trace_json(t: Trace) -> bytes:
    return json.dumps(trace_to_obj(t), sort_keys=True, separators=(",", ":")).encode()
