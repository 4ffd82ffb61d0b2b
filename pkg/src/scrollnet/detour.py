"""Detour detection, reduction, and the normalization loop.

A detour is material that is both introduced and eliminated: a scroll
opened and closed (ii), opened/inserted and deleted/closed (ia),
iterated/opened and closed/deiterated (ai), or a copy that is both
justified and self-justified (aa). Reductions splice the detour away;
the only correctness contract is that both boundaries are preserved, so
every reduction re-checks its boundaries and raises DetourBlocked
instead of silently corrupting the net.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .net import ScrollNet
from .structure import ScrollStructure, isomorphic

KIND_II = "ii"
KIND_IA = "ia"
KIND_AI = "ai"
KIND_AA_SCROLL = "aa_scroll"
KIND_AA_ATOM = "aa_atom"

_KIND_ORDER = {KIND_II: 0, KIND_IA: 1, KIND_AI: 2, KIND_AA_SCROLL: 3, KIND_AA_ATOM: 3}


class DetourBlocked(ValueError):
    pass


@dataclass(frozen=True)
class DetourReport:
    node: str
    kind: str


def find_detours(n: ScrollNet) -> list[DetourReport]:
    """All detour nodes, deepest first (ii before aa at equal depth)."""
    n.require_valid()
    s = n.structure
    out: list[DetourReport] = []
    for v, u in s.attachments:
        pair = (v, u)
        if pair in n.expansions and pair in n.collapses:
            out.append(DetourReport(v, KIND_II))
        elif pair in n.expansions and v in n.self_justifications:
            out.append(DetourReport(v, KIND_IA))
        elif pair in n.collapses and v in n.justified:
            out.append(DetourReport(v, KIND_AI))
    for v in s.nodes:
        if v in n.justified and v in n.self_justifications:
            kind = KIND_AA_ATOM if v in s.labels else KIND_AA_SCROLL
            out.append(DetourReport(v, kind))
    out.sort(key=lambda d: (-s.depth[d.node], _KIND_ORDER[d.kind], d.node))
    return out


def _justifier(n: ScrollNet, v: str) -> str:
    for a, b in n.justifications:
        if b == v:
            return a
    raise DetourBlocked(f"{v!r} has no incoming justification")


def _restrict_arrows(n: ScrollNet, structure: ScrollStructure, **overrides) -> ScrollNet:
    keep = structure.nodes
    fields = dict(
        justifications={(a, b) for a, b in n.justifications if a in keep and b in keep},
        self_justifications={v for v in n.self_justifications if v in keep},
        expansions={p for p in n.expansions if p[0] in keep and p[1] in keep},
        collapses={p for p in n.collapses if p[0] in keep and p[1] in keep},
    )
    fields.update(overrides)
    return ScrollNet(structure, certificate=None, **fields)


class _LazyIso:
    """Copy-to-source correspondence, computed only when a rewiring
    actually needs it (detours whose removed material carries no arrows
    reduce without any shape recovery)."""

    def __init__(self, n: ScrollNet, v: str, w: str):
        self.n = n
        self.v = v
        self.w = w
        self._map: Optional[dict[str, str]] = None

    def __getitem__(self, x: str) -> str:
        if self._map is None:
            self._map = _payload_iso(self.n, self.v, self.w)
        if x not in self._map:
            raise DetourBlocked(
                f"{x!r} has no corresponding occurrence under {self.w!r}"
            )
        return self._map[x]


def _resource_from_removed(
    n: ScrollNet,
    removed: frozenset[str],
    phi: "_LazyIso",
) -> set[tuple[str, str]]:
    """Re-source surviving targets justified from inside the removed copy."""
    out = set()
    for a, b in n.justifications:
        if a in removed and b not in removed:
            out.add((phi[a], b))
    return out


def _check_preserved(n: ScrollNet, candidate: ScrollNet) -> ScrollNet:
    problems = candidate.validate()
    if problems:
        v = problems[0]
        raise DetourBlocked(f"reduction breaks well-formedness: {v.rule}: {v.message}")
    if isomorphic(n.premiss, candidate.premiss) is None:
        raise DetourBlocked("reduction does not preserve the premiss")
    if isomorphic(n.conclusion, candidate.conclusion) is None:
        raise DetourBlocked("reduction does not preserve the conclusion")
    return candidate


def reduce_detour(n: ScrollNet, d: DetourReport) -> ScrollNet:
    """Remove one detour; boundaries are re-checked before returning."""
    current = find_detours(n)
    if d not in current:
        raise DetourBlocked(f"stale report: {d} is not a detour of this net")
    if d.kind == KIND_II:
        candidate = _reduce_ii(n, d.node)
    elif d.kind == KIND_IA:
        candidate = _reduce_ia(n, d.node)
    elif d.kind == KIND_AI:
        candidate = _reduce_ai(n, d.node)
    else:
        candidate = _reduce_aa(n, d.node)
    return _check_preserved(n, candidate)


def _reduce_ii(n: ScrollNet, v: str) -> ScrollNet:
    structure = n.structure.collapse_scroll(v)
    return _restrict_arrows(n, structure)


def _reduce_ia(n: ScrollNet, v: str) -> ScrollNet:
    s = n.structure
    u = s.attachment_of(v)
    spliced = s.children(u)
    structure = s.collapse_scroll(v)
    net = _restrict_arrows(n, structure)
    extra_selfs = {c for c in spliced if c in structure.nodes and c not in net.self_justifications}
    return net.replace(self_justifications=net.self_justifications | extra_selfs)


def _reduce_ai(n: ScrollNet, v: str) -> ScrollNet:
    s = n.structure
    u = s.attachment_of(v)
    w = _justifier(n, v)
    phi = _LazyIso(n, v, w)
    spliced = s.children(u)
    structure = s.collapse_scroll(v)
    removed = s.nodes - structure.nodes
    resourced = _resource_from_removed(n, removed, phi)
    net = _restrict_arrows(n, structure)
    just = set(net.justifications) | resourced
    targeted = {b for _, b in just}
    for c in sorted(spliced):
        if c not in structure.nodes or c in targeted:
            continue
        just.add((phi[c], c))
    return net.replace(justifications=just)


def _reduce_aa(n: ScrollNet, v: str) -> ScrollNet:
    s = n.structure
    w = _justifier(n, v)
    phi = _LazyIso(n, v, w)
    structure = s.prune(v)
    removed = s.nodes - structure.nodes
    resourced = _resource_from_removed(n, removed, phi)
    net = _restrict_arrows(n, structure)
    return net.replace(justifications=set(net.justifications) | resourced)


def _payload_iso(n: ScrollNet, v: str, w: str) -> dict[str, str]:
    """Correspondence between the contents below the copy v and its
    justifier w, as the (de)iteration that linked them recorded it.

    Marks sitting on v and w themselves are ignored: they postdate the
    link (the detour's own arrows, or a later deletion/closing of the
    source) and would otherwise erase the very contents being matched.
    The boundary re-check after the rewiring remains the arbiter."""
    own = {v, w}
    stripped = n.replace(
        justifications={(a, b) for a, b in n.justifications if b not in own},
        self_justifications=n.self_justifications - own,
        expansions={p for p in n.expansions if p[0] not in own},
        collapses={p for p in n.collapses if p[0] not in own},
        certificate=None,
    )
    pv = stripped.payload_below(v)
    pw = stripped.payload_below(w)
    witness = isomorphic(pv, pw)
    if witness is None:
        raise DetourBlocked(
            f"contents of {v!r} and its justifier {w!r} are no longer isomorphic"
        )
    return witness


class NormalizeResult(NamedTuple):
    net: ScrollNet
    steps_taken: int
    fully_normal: bool
    blocked: tuple[DetourReport, ...]


def normalize(n: ScrollNet, max_steps: Optional[int] = None) -> NormalizeResult:
    """Repeatedly reduce the deepest reducible detour."""
    steps = 0
    net = n
    while max_steps is None or steps < max_steps:
        detours = find_detours(net)
        if not detours:
            return NormalizeResult(net, steps, True, ())
        blocked: list[DetourReport] = []
        progressed = False
        for d in detours:
            try:
                net = reduce_detour(net, d)
            except DetourBlocked:
                blocked.append(d)
                continue
            steps += 1
            progressed = True
            break
        if not progressed:
            return NormalizeResult(net, steps, False, tuple(blocked))
    return NormalizeResult(net, steps, False, tuple(find_detours(net)))
