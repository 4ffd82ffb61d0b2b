"""Scroll nets: a structure plus argumentation and interaction arrows.

The four arrow families record transformations in place: justifications
and self-justifications (argumentation), expansions and collapses on
attachments (interaction). Boundaries disentangle the recorded proof
into its premiss and conclusion statements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .structure import (
    SchemaError,
    ScrollStructure,
    Violation,
    _match,
    structure_from_obj,
    structure_to_obj,
)

RULE_ARROW_ENDPOINTS = "arrow-endpoints"
RULE_JUSTIFICATION_FOREST = "justification-forest"
RULE_INTERACTION_ON_ATTACHMENTS = "interaction-on-attachments"
RULE_OPEN_INTRO_DISJOINT = "open-intro-disjoint"
RULE_CLOSE_ELIM_DISJOINT = "close-elim-disjoint"


class NetError(ValueError):
    """Raised for operations on malformed nets."""


@dataclass(frozen=True)
class EditState:
    opened: frozenset[str]
    closed: frozenset[str]
    introduced: frozenset[str]
    eliminated: frozenset[str]


class ScrollNet:
    """Immutable proof object; all derived data cached per instance."""

    def __init__(
        self,
        structure: ScrollStructure,
        justifications: Iterable[tuple[str, str]] = (),
        self_justifications: Iterable[str] = (),
        expansions: Iterable[tuple[str, str]] = (),
        collapses: Iterable[tuple[str, str]] = (),
        certificate: Optional["Trace"] = None,
    ):
        self.structure = structure
        self.justifications = frozenset((a, b) for a, b in justifications)
        self.self_justifications = frozenset(self_justifications)
        self.expansions = frozenset((a, b) for a, b in expansions)
        self.collapses = frozenset((a, b) for a, b in collapses)
        self.certificate = certificate

    # -- identity ----------------------------------------------------------

    def key(self):
        return (
            self.structure._key(),
            self.justifications,
            self.self_justifications,
            self.expansions,
            self.collapses,
        )

    def __eq__(self, other):
        if not isinstance(other, ScrollNet):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (
            f"ScrollNet(nodes={len(self.structure.nodes)}, "
            f"just={len(self.justifications)}, self={len(self.self_justifications)}, "
            f"exp={len(self.expansions)}, col={len(self.collapses)})"
        )

    def replace(self, **kw) -> "ScrollNet":
        fields = dict(
            structure=self.structure,
            justifications=self.justifications,
            self_justifications=self.self_justifications,
            expansions=self.expansions,
            collapses=self.collapses,
            certificate=self.certificate,
        )
        fields.update(kw)
        return ScrollNet(**fields)

    def event_count(self) -> int:
        return (
            len(self.justifications)
            + len(self.self_justifications)
            + len(self.expansions)
            + len(self.collapses)
        )

    @cached_property
    def justified(self) -> frozenset[str]:
        """Nodes with an incoming justification."""
        return frozenset(t for _, t in self.justifications)

    # -- validation ----------------------------------------------------------

    def validate(self) -> list[Violation]:
        out = list(self.structure.validate())
        nodes = self.structure.nodes
        referenced = (
            {v for pair in self.justifications for v in pair}
            | set(self.self_justifications)
            | {v for pair in self.expansions for v in pair}
            | {v for pair in self.collapses for v in pair}
        )
        for v in sorted(referenced - nodes):
            out.append(Violation(RULE_ARROW_ENDPOINTS, (v,), "arrow endpoint not a node"))
        if referenced - nodes:
            return out
        targets: dict[str, int] = {}
        for _, t in self.justifications:
            targets[t] = targets.get(t, 0) + 1
        for t, n in sorted(targets.items()):
            if n > 1:
                out.append(
                    Violation(
                        RULE_JUSTIFICATION_FOREST,
                        (t,),
                        f"node is the target of {n} justifications",
                    )
                )
        cycle = _justification_cycle(self.justifications)
        if cycle:
            out.append(
                Violation(
                    RULE_JUSTIFICATION_FOREST, tuple(cycle), "justification cycle"
                )
            )
        for o, i in sorted(self.expansions | self.collapses):
            if (o, i) not in self.structure.attachments:
                out.append(
                    Violation(
                        RULE_INTERACTION_ON_ATTACHMENTS,
                        (o, i),
                        "interaction pair is not an attachment",
                    )
                )
        if not out:
            es = self.edit_state
            for v in sorted(es.opened & es.introduced):
                out.append(
                    Violation(RULE_OPEN_INTRO_DISJOINT, (v,), "node opened and introduced")
                )
            for v in sorted(es.closed & es.eliminated):
                out.append(
                    Violation(RULE_CLOSE_ELIM_DISJOINT, (v,), "node closed and eliminated")
                )
        return out

    def is_valid(self) -> bool:
        return not self.validate()

    def require_valid(self):
        problems = self.validate()
        if problems:
            v = problems[0]
            raise NetError(f"invalid net: {v.rule}: {v.message} ({', '.join(v.nodes)})")

    # -- edit state ------------------------------------------------------------

    @cached_property
    def edit_state(self) -> EditState:
        s = self.structure
        opened, closed, intro, elim = set(), set(), set(), set()
        for v, _ in self.expansions:
            (opened if s.is_positive(v) else closed).add(v)
        for v, _ in self.collapses:
            (closed if s.is_positive(v) else opened).add(v)
        for _, t in self.justifications:
            (intro if s.is_positive(t) else elim).add(t)
        for v in self.self_justifications:
            (elim if s.is_positive(v) else intro).add(v)
        return EditState(
            frozenset(opened), frozenset(closed), frozenset(intro), frozenset(elim)
        )

    # -- boundaries --------------------------------------------------------------

    def _boundary(self, pruned: Iterable[str], collapsed: Iterable[str]) -> ScrollStructure:
        depth = self.structure.depth
        order = lambda vs: sorted(vs, key=lambda v: (-depth[v], v))
        return boundary_of(self.structure, order(pruned), order(collapsed))

    @cached_property
    def premiss(self) -> ScrollStructure:
        es = self.edit_state
        return self._boundary(es.introduced, es.opened)

    @cached_property
    def conclusion(self) -> ScrollStructure:
        es = self.edit_state
        return self._boundary(es.eliminated, es.closed)

    def is_complete(self) -> bool:
        return self.premiss.is_empty()

    def is_interpretable(self) -> bool:
        return self.premiss.is_forest and self.conclusion.is_forest

    # -- subnets ------------------------------------------------------------------

    def subnet(self, v: str) -> "ScrollNet":
        keep = self.structure.reachable_set(v)
        return ScrollNet(
            structure=self.structure.restrict(keep),
            justifications=[(a, b) for a, b in self.justifications if a in keep and b in keep],
            self_justifications=[w for w in self.self_justifications if w in keep],
            expansions=[(o, i) for o, i in self.expansions if o in keep and i in keep],
            collapses=[(o, i) for o, i in self.collapses if o in keep and i in keep],
        )

    def payload_below(self, v: str) -> ScrollStructure:
        """Visible contents below v: the subnet conclusion read with the
        ambient polarity of each node (inverted polarity swaps the roles
        of premiss and conclusion, so this is not the subnet's own local
        conclusion when v is negative)."""
        keep = self.structure.reachable_set(v)
        es = self.edit_state
        sub = self.structure.restrict(keep)
        return boundary_of(sub, es.eliminated & keep, es.closed & keep)


def boundary_of(
    structure: ScrollStructure, pruned: Iterable[str], collapsed: Iterable[str]
) -> ScrollStructure:
    """Collapse every scroll of `collapsed`, then prune every surviving
    node of `pruned`, each in the order given (nets apply deepest-first
    by default).

    Collapsing first is essential, not just convenient: a scroll wrapped
    around shared content of an introduced copy would otherwise keep
    that content reachable during the pruning phase and leak it into the
    premiss."""
    s = structure
    for v in collapsed:
        if v in s.nodes and s.attachment_of(v) is not None:
            s = s.collapse_scroll(v)
    for v in pruned:
        if v in s.nodes:
            s = s.prune(v)
    return s


def _justification_cycle(just: frozenset[tuple[str, str]]) -> Optional[list[str]]:
    adj: dict[str, list[str]] = {}
    for a, b in just:
        adj.setdefault(a, []).append(b)
    state: dict[str, int] = {}
    stack: list[str] = []

    def visit(v: str) -> Optional[list[str]]:
        state[v] = 1
        stack.append(v)
        for w in adj.get(v, ()):
            if state.get(w, 0) == 1:
                return stack[stack.index(w):]
            if state.get(w, 0) == 0:
                found = visit(w)
                if found:
                    return found
        state[v] = 2
        stack.pop()
        return None

    for v in sorted(adj):
        if state.get(v, 0) == 0:
            found = visit(v)
            if found:
                return found
    return None


def lift(structure: ScrollStructure) -> ScrollNet:
    """A statement viewed as the arrow-free net proving itself."""
    return ScrollNet(structure)


def net_isomorphic(n1: ScrollNet, n2: ScrollNet) -> Optional[dict[str, str]]:
    """Structure isomorphism that also carries all four arrow families."""
    if (
        len(n1.justifications) != len(n2.justifications)
        or len(n1.self_justifications) != len(n2.self_justifications)
        or len(n1.expansions) != len(n2.expansions)
        or len(n1.collapses) != len(n2.collapses)
    ):
        return None

    def flags(n: ScrollNet, v: str):
        return (
            v in n.self_justifications,
            v in n.justified,
            sum(1 for a, _ in n.justifications if a == v),
            frozenset(
                (pair in n.expansions, pair in n.collapses)
                for pair in n.structure.attachments
                if pair[0] == v
            ),
        )

    def arrows_ok(mapping: dict[str, str]) -> bool:
        just = {(mapping[a], mapping[b]) for a, b in n1.justifications}
        if just != n2.justifications:
            return False
        if {mapping[v] for v in n1.self_justifications} != n2.self_justifications:
            return False
        if {(mapping[a], mapping[b]) for a, b in n1.expansions} != n2.expansions:
            return False
        if {(mapping[a], mapping[b]) for a, b in n1.collapses} != n2.collapses:
            return False
        return True

    just1_out: dict[str, set[str]] = {}
    just1_in: dict[str, set[str]] = {}
    for a, b in n1.justifications:
        just1_out.setdefault(a, set()).add(b)
        just1_in.setdefault(b, set()).add(a)

    def pair_check(v: str, w: str, mapping: dict[str, str]) -> bool:
        # Justification adjacency with already-mapped nodes must carry over;
        # this prunes the symmetric-sibling blowup before the final check.
        for b in just1_out.get(v, ()):
            if b in mapping and (w, mapping[b]) not in n2.justifications:
                return False
        for a in just1_in.get(v, ()):
            if a in mapping and (mapping[a], w) not in n2.justifications:
                return False
        return True

    return _match(
        n1.structure,
        n2.structure,
        lambda v: flags(n1, v),
        lambda v: flags(n2, v),
        arrows_ok,
        pair_check,
        just1=n1.justifications,
        just2=n2.justifications,
    )


# -- JSON format -------------------------------------------------------------------


def net_to_obj(n: ScrollNet) -> dict:
    from .rules import step_to_obj

    obj = structure_to_obj(n.structure)
    obj["justifications"] = [list(p) for p in sorted(n.justifications)]
    obj["selfJustifications"] = sorted(n.self_justifications)
    obj["expansions"] = [list(p) for p in sorted(n.expansions)]
    obj["collapses"] = [list(p) for p in sorted(n.collapses)]
    if n.certificate is not None:
        # the certificate origin is the net's premiss; only steps travel
        obj["certificate"] = [step_to_obj(s) for s in n.certificate.steps]
    return obj


def encode_net_json(n: ScrollNet) -> bytes:
    return json.dumps(net_to_obj(n), sort_keys=True, separators=(",", ":")).encode()


NET_KEYS = {
    "nodes",
    "edges",
    "attachments",
    "justifications",
    "selfJustifications",
    "expansions",
    "collapses",
    "certificate",
}


def net_from_obj(obj, path: str = "$") -> ScrollNet:
    from .rules import Trace, step_from_obj

    if not isinstance(obj, dict):
        raise SchemaError("expected object", path)
    unknown = set(obj) - NET_KEYS
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)}", path)
    structure = structure_from_obj(
        {k: obj.get(k, []) for k in ("nodes", "edges", "attachments")}, path
    )

    def pairs(key: str) -> list[tuple[str, str]]:
        raw = obj.get(key, [])
        if not isinstance(raw, list):
            raise SchemaError("expected array", f"{path}.{key}")
        out = []
        for k, pair in enumerate(raw):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise SchemaError("expected [a, b] pair", f"{path}.{key}[{k}]")
            out.append((pair[0], pair[1]))
        return out

    selfs = obj.get("selfJustifications", [])
    if not isinstance(selfs, list) or not all(isinstance(v, str) for v in selfs):
        raise SchemaError("expected array of ids", f"{path}.selfJustifications")
    n = ScrollNet(
        structure,
        pairs("justifications"),
        selfs,
        pairs("expansions"),
        pairs("collapses"),
    )
    problems = n.validate()
    if problems:
        v = problems[0]
        raise SchemaError(f"invalid net: {v.rule}: {v.message}", path)
    if obj.get("certificate") is not None:
        raw = obj["certificate"]
        if not isinstance(raw, list):
            raise SchemaError("expected array of steps", f"{path}.certificate")
        steps = tuple(
            step_from_obj(s, f"{path}.certificate[{i}]") for i, s in enumerate(raw)
        )
        n = n.replace(certificate=Trace(n.premiss, steps))
    return n


def decode_net_json(data: bytes | str) -> ScrollNet:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"bad JSON: {e.msg}", "$") from e
    return net_from_obj(obj)
