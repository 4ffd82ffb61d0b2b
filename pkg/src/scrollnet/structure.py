"""Scroll structures: rooted DAGs of seps and atoms with inloop attachments.

A structure is the statement language. Nodes are either atoms (labeled
leaves) or seps; every sep belongs to exactly one attachment pair
(outloop, inloop), and the attachment is itself an edge. Sharing is
allowed only through inloops, and every node must have a consistent
nesting parity so polarity is well defined.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

POSITIVE = "positive"
NEGATIVE = "negative"


class StructureError(ValueError):
    """Raised for operations on malformed or unsuitable structures."""


class ParseError(StructureError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Violation:
    rule: str
    nodes: tuple[str, ...]
    message: str


# Well-formedness rule names used in validation reports.
RULE_EDGE_ENDPOINTS = "edge-endpoints"
RULE_ACYCLIC = "acyclic"
RULE_ATTACHMENTS_ARE_EDGES = "attachments-are-edges"
RULE_LABELED_ARE_LEAVES = "labeled-are-leaves"
RULE_ATOMS_NOT_INLOOPS = "atoms-not-inloops"
RULE_EVERY_SEP_ATTACHED = "every-sep-attached"
RULE_SHARING_INLOOPS_ONLY = "sharing-inloops-only"
RULE_PARITY_CONSISTENT = "parity-consistent"


class ScrollStructure:
    """Immutable labeled DAG with attachment edges.

    All derived maps are cached; never mutate a structure after
    construction.
    """

    def __init__(
        self,
        nodes: Iterable[str] = (),
        edges: Iterable[tuple[str, str]] = (),
        labels: Mapping[str, str] | Iterable[tuple[str, str]] = (),
        attachments: Iterable[tuple[str, str]] = (),
    ):
        self.nodes: frozenset[str] = frozenset(nodes)
        self.edges: frozenset[tuple[str, str]] = frozenset((p, c) for p, c in edges)
        self.labels: dict[str, str] = dict(labels)
        self.attachments: frozenset[tuple[str, str]] = frozenset(
            (o, i) for o, i in attachments
        )

    # -- identity ---------------------------------------------------------

    def _key(self):
        return (
            self.nodes,
            self.edges,
            frozenset(self.labels.items()),
            self.attachments,
        )

    def __eq__(self, other):
        if not isinstance(other, ScrollStructure):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        try:
            return f"ScrollStructure({self.to_text()!r})"
        except StructureError:
            return f"ScrollStructure(nodes={sorted(self.nodes)})"

    def is_empty(self) -> bool:
        return not self.nodes

    # -- adjacency --------------------------------------------------------

    @cached_property
    def _children(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.nodes}
        for p, c in self.edges:
            out[p].add(c)
        return {v: frozenset(cs) for v, cs in out.items()}

    @cached_property
    def _parents(self) -> dict[str, frozenset[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.nodes}
        for p, c in self.edges:
            out[c].add(p)
        return {v: frozenset(ps) for v, ps in out.items()}

    def children(self, v: str) -> frozenset[str]:
        self._require(v)
        return self._children[v]

    def parents(self, v: str) -> frozenset[str]:
        self._require(v)
        return self._parents[v]

    def siblings(self, u: str, v: str) -> bool:
        return self.parents(u) == self.parents(v)

    @cached_property
    def roots(self) -> tuple[str, ...]:
        return tuple(sorted(v for v in self.nodes if not self._parents[v]))

    def _require(self, v: str):
        if v not in self.nodes:
            raise StructureError(f"unknown node {v!r}")

    @cached_property
    def inloops(self) -> frozenset[str]:
        return frozenset(i for _, i in self.attachments)

    @cached_property
    def outloops(self) -> frozenset[str]:
        return frozenset(o for o, _ in self.attachments)

    def attachment_of(self, v: str) -> Optional[str]:
        """The inloop attached to outloop v, if any."""
        for o, i in self.attachments:
            if o == v:
                return i
        return None

    def outloop_of(self, v: str) -> Optional[str]:
        for o, i in self.attachments:
            if i == v:
                return o
        return None

    # -- depth and polarity -------------------------------------------------

    @cached_property
    def _parity(self) -> dict[str, int]:
        """Root-path parity per node; -1 marks inconsistency."""
        parity: dict[str, int] = {}
        order = self.topo_order()
        for v in order:
            ps = self._parents[v]
            if not ps:
                parity[v] = 0
                continue
            vals = {parity[p] ^ 1 for p in ps if parity.get(p, -1) >= 0}
            if len(vals) == 1:
                parity[v] = vals.pop()
            else:
                parity[v] = -1
        return parity

    @cached_property
    def depth(self) -> dict[str, int]:
        """Longest root-to-node path length (prune/collapse ordering key)."""
        d: dict[str, int] = {}
        for v in self.topo_order():
            ps = self._parents[v]
            d[v] = max((d[p] + 1 for p in ps), default=0)
        return d

    def topo_order(self) -> list[str]:
        order: list[str] = []
        indeg = {v: len(self._parents[v]) for v in self.nodes}
        queue = sorted(v for v in self.nodes if indeg[v] == 0)
        seen = 0
        while queue:
            v = queue.pop(0)
            order.append(v)
            seen += 1
            for c in sorted(self._children[v]):
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        if seen != len(self.nodes):
            raise StructureError("structure contains a cycle")
        return order

    def polarity(self, v: str) -> str:
        self._require(v)
        p = self._parity[v]
        if p < 0:
            raise StructureError(f"node {v!r} is parity-inconsistent")
        return POSITIVE if p == 0 else NEGATIVE

    def is_positive(self, v: str) -> bool:
        return self.polarity(v) == POSITIVE

    # -- validation ---------------------------------------------------------

    def validate(self) -> list[Violation]:
        out: list[Violation] = []
        for p, c in sorted(self.edges):
            if p not in self.nodes or c not in self.nodes:
                out.append(
                    Violation(RULE_EDGE_ENDPOINTS, (p, c), "edge endpoint not a node")
                )
        try:
            self.topo_order()
        except StructureError:
            out.append(Violation(RULE_ACYCLIC, (), "edge relation has a cycle"))
            return out
        for o, i in sorted(self.attachments):
            if (o, i) not in self.edges:
                out.append(
                    Violation(
                        RULE_ATTACHMENTS_ARE_EDGES, (o, i), "attachment is not an edge"
                    )
                )
        for v in sorted(self.labels):
            if v in self.nodes and self._children[v]:
                out.append(
                    Violation(RULE_LABELED_ARE_LEAVES, (v,), "labeled node has children")
                )
        for o, i in sorted(self.attachments):
            if i in self.labels:
                out.append(
                    Violation(RULE_ATOMS_NOT_INLOOPS, (i,), "atom used as an inloop")
                )
        for v in sorted(self.nodes):
            if v in self.labels:
                continue
            count = sum(1 for o, i in self.attachments if v in (o, i))
            if count != 1:
                out.append(
                    Violation(
                        RULE_EVERY_SEP_ATTACHED,
                        (v,),
                        f"sep participates in {count} attachments, expected 1",
                    )
                )
        for v in sorted(self.nodes):
            ps = self._parents[v]
            if len(ps) > 1 and not ps <= self.inloops:
                out.append(
                    Violation(
                        RULE_SHARING_INLOOPS_ONLY,
                        (v,),
                        "shared node has a non-inloop parent",
                    )
                )
        for v in sorted(self.nodes):
            if self._parity[v] < 0:
                out.append(
                    Violation(
                        RULE_PARITY_CONSISTENT,
                        (v,),
                        "root paths disagree on parity",
                    )
                )
        return out

    def is_valid(self) -> bool:
        return not self.validate()

    @cached_property
    def is_forest(self) -> bool:
        return all(len(self._parents[v]) <= 1 for v in self.nodes)

    # -- restriction and reachability ---------------------------------------

    def restrict(self, keep: Iterable[str]) -> ScrollStructure:
        keep = frozenset(keep)
        return ScrollStructure(
            nodes=keep,
            edges=[(p, c) for p, c in self.edges if p in keep and c in keep],
            labels={v: a for v, a in self.labels.items() if v in keep},
            attachments=[(o, i) for o, i in self.attachments if o in keep and i in keep],
        )

    def reachable_set(self, v: str) -> frozenset[str]:
        self._require(v)
        seen = {v}
        stack = [v]
        while stack:
            for c in self._children[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return frozenset(seen)

    def reachable(self, v: str) -> ScrollStructure:
        return self.restrict(self.reachable_set(v))

    def descends(self, anc: str, v: str) -> bool:
        """Strict descent anc ->* v."""
        return v != anc and v in self.reachable_set(anc)

    # -- surgery ------------------------------------------------------------

    def prune(self, v: str) -> ScrollStructure:
        return self.prune_set([v])

    def prune_set(self, vs: Iterable[str]) -> ScrollStructure:
        """Remove each v's subgraph; shared nodes survive if still reachable."""
        targets = [v for v in vs if v in self.nodes]
        if not targets:
            return self
        dropped = set(targets)
        edges = {(p, c) for p, c in self.edges if c not in dropped}
        children: dict[str, list[str]] = {v: [] for v in self.nodes}
        for p, c in edges:
            children[p].append(c)
        alive: set[str] = set()
        stack = [r for r in self.roots if r not in dropped]
        while stack:
            v = stack.pop()
            if v in alive:
                continue
            alive.add(v)
            stack.extend(children[v])
        return self.restrict(alive)

    def collapse_scroll(self, v: str) -> ScrollStructure:
        """Replace scroll v with the contents of its inloop."""
        self._require(v)
        u = self.attachment_of(v)
        if u is None:
            raise StructureError(f"node {v!r} is not an outloop")
        s = self.prune_set(sorted(self._children[v] - {u}))
        bridges = [(p, c) for p in s.parents(v) for c in s.children(u)]
        keep = s.nodes - {v, u}
        out = ScrollStructure(
            nodes=keep,
            edges=[(p, c) for p, c in s.edges if p in keep and c in keep] + bridges,
            labels={w: a for w, a in s.labels.items() if w in keep},
            attachments=[(o, i) for o, i in s.attachments if o in keep and i in keep],
        )
        return out

    # -- interpretation -------------------------------------------------------

    def interpret(self) -> "Formula":
        if not self.is_forest:
            raise StructureError("shared structures are not interpretable")
        return conj([self._interpret_node(r) for r in self.roots])

    def _interpret_node(self, v: str) -> "Formula":
        if v in self.labels:
            return AtomF(self.labels[v])
        u = self.attachment_of(v)
        if u is None:
            raise StructureError(f"sep {v!r} has no attached inloop")
        lhs = [self._interpret_node(c) for c in self._children[v] if c != u]
        rhs = [self._interpret_node(c) for c in self._children[u]]
        return Impl(conj(lhs), conj(rhs))

    # -- canonical form (forests) ---------------------------------------------

    @cached_property
    def canonical(self) -> Optional[str]:
        """Canonical text up to isomorphism; None when sharing is present."""
        if not self.is_forest:
            return None
        return " ".join(sorted(self._canon_node(r) for r in self.roots))

    def _canon_node(self, v: str) -> str:
        if v in self.labels:
            return self.labels[v]
        inloop = self.attachment_of(v)
        parts = sorted(
            self._canon_node(c) + ("!" if (v, c) in self.attachments else "")
            for c in self._children[v]
        )
        if inloop is None:
            # Half scrolls only appear in intermediate surgery results.
            return "{" + " ".join(parts) + "}"
        return "(" + " ".join(parts) + ")"

    # -- text format ------------------------------------------------------------

    def to_text(self) -> str:
        if not self.is_forest:
            raise StructureError("sharing is only representable in JSON")
        return " ".join(self._text_node(r) for r in self._ordered(self.roots))

    def _ordered(self, vs: Iterable[str]) -> list[str]:
        return sorted(vs, key=lambda v: (self._canon_node(v), v))

    def _text_node(self, v: str) -> str:
        if v in self.labels:
            return self.labels[v]
        u = self.attachment_of(v)
        if u is None:
            raise StructureError(f"sep {v!r} has no attached inloop")
        lhs = " ".join(self._text_node(c) for c in self._ordered(self._children[v] - {u}))
        rhs = " ".join(self._text_node(c) for c in self._ordered(self._children[u]))
        return f"[{lhs} ; {rhs}]"


_TOKEN = re.compile(r"\s*([a-z][a-zA-Z0-9_]*|\[|\]|;)")


def parse_text(src: str) -> ScrollStructure:
    """Parse the bracket grammar; fresh ids n0, n1, ... by preorder position."""
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            if src[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {src[pos:].strip()[0]!r}", pos)
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()

    counter = [0]
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    labels: dict[str, str] = {}
    attachments: list[tuple[str, str]] = []

    def fresh() -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        return nid

    idx = [0]

    def peek() -> Optional[str]:
        return tokens[idx[0]][0] if idx[0] < len(tokens) else None

    def parse_group(parent: Optional[str], stop: set[str]) -> None:
        while True:
            tok = peek()
            if tok is None or tok in stop:
                return
            if tok == "[":
                at = tokens[idx[0]][1]
                idx[0] += 1
                out = fresh()
                nodes.append(out)
                if parent is not None:
                    edges.append((parent, out))
                parse_group(out, {";", "]"})
                if peek() != ";":
                    raise ParseError("expected ';' in scroll", tokens[idx[0] - 1][1] if idx[0] else at)
                idx[0] += 1
                inl = fresh()
                nodes.append(inl)
                edges.append((out, inl))
                attachments.append((out, inl))
                parse_group(inl, {"]", ";"})
                if peek() != "]":
                    raise ParseError("expected ']' closing scroll", at)
                idx[0] += 1
            elif tok in (";", "]"):
                raise ParseError(f"unexpected {tok!r}", tokens[idx[0]][1])
            else:
                idx[0] += 1
                nid = fresh()
                nodes.append(nid)
                labels[nid] = tok
                if parent is not None:
                    edges.append((parent, nid))

    parse_group(None, set())
    if idx[0] != len(tokens):
        raise ParseError(f"unexpected {tokens[idx[0]][0]!r}", tokens[idx[0]][1])
    s = ScrollStructure(nodes, edges, labels, attachments)
    problems = s.validate()
    if problems:
        raise ParseError(problems[0].message, 0)
    return s


def print_text(s: ScrollStructure) -> str:
    return s.to_text()


# -- isomorphism ---------------------------------------------------------------


def isomorphic(s1: ScrollStructure, s2: ScrollStructure) -> Optional[dict[str, str]]:
    """A node bijection preserving edges, labels and attachments, or None."""
    if len(s1.nodes) != len(s2.nodes) or len(s1.edges) != len(s2.edges):
        return None
    if len(s1.attachments) != len(s2.attachments):
        return None
    if sorted(s1.labels.values()) != sorted(s2.labels.values()):
        return None
    if s1.is_forest and s2.is_forest:
        if s1.canonical != s2.canonical:
            return None
        return _forest_witness(s1, s2)
    nosig = lambda v: ()
    return _match(s1, s2, nosig, nosig, None)


def _forest_witness(s1: ScrollStructure, s2: ScrollStructure) -> dict[str, str]:
    mapping: dict[str, str] = {}

    def pair(vs1: Iterable[str], vs2: Iterable[str], owner1, owner2):
        k1 = sorted(vs1, key=lambda v: (s1._canon_node(v), v))
        k2 = sorted(vs2, key=lambda v: (s2._canon_node(v), v))
        for a, b in zip(k1, k2):
            mapping[a] = b
            if a not in s1.labels:
                u1 = s1.attachment_of(a)
                u2 = s2.attachment_of(b)
                pair(s1.children(a) - {u1}, s2.children(b) - {u2}, a, b)
                if u1 is not None:
                    mapping[u1] = u2
                    pair(s1.children(u1), s2.children(u2), u1, u2)

    pair(s1.roots, s2.roots, None, None)
    return mapping


def _node_sig(s: ScrollStructure, v: str, extra) -> tuple:
    return (
        s.labels.get(v),
        len(s.children(v)),
        len(s.parents(v)),
        v in s.inloops,
        v in s.outloops,
        s._parity[v],
        extra(v),
    )


def _refine_colors(s, sig, just, rounds):
    """Weisfeiler-Lehman style refinement over edges, attachment flags and
    any extra directed arrows; collapses symmetric-twin ambiguity."""
    color = {v: hash(sig[v]) for v in s.nodes}
    out_j: dict[str, list[str]] = {}
    in_j: dict[str, list[str]] = {}
    for a, b in just:
        out_j.setdefault(a, []).append(b)
        in_j.setdefault(b, []).append(a)
    for _ in range(rounds):
        nxt = {}
        for v in s.nodes:
            nxt[v] = hash(
                (
                    color[v],
                    tuple(
                        sorted(
                            (color[c], (v, c) in s.attachments) for c in s._children[v]
                        )
                    ),
                    tuple(sorted(color[p] for p in s._parents[v])),
                    tuple(sorted(color[x] for x in out_j.get(v, ()))),
                    tuple(sorted(color[x] for x in in_j.get(v, ()))),
                )
            )
        if len(set(nxt.values())) == len(set(color.values())):
            color = nxt
            break
        color = nxt
    return color


def _match(
    s1, s2, extra1, extra2, arrows_check, pair_check=None, just1=(), just2=()
) -> Optional[dict[str, str]]:
    """Backtracking matcher for small DAGs; extra per-node signature hooks
    and an optional incremental cross-constraint check."""
    from collections import Counter

    if (
        len(s1.nodes) != len(s2.nodes)
        or len(s1.edges) != len(s2.edges)
        or len(s1.attachments) != len(s2.attachments)
    ):
        return None
    sig1 = {v: _node_sig(s1, v, extra1) for v in s1.nodes}
    sig2 = {v: _node_sig(s2, v, extra2) for v in s2.nodes}
    if Counter(sig1.values()) != Counter(sig2.values()):
        return None
    rounds = max(4, len(s1.nodes).bit_length() + 2)
    col1 = _refine_colors(s1, sig1, just1, rounds)
    col2 = _refine_colors(s2, sig2, just2, rounds)
    if Counter(col1.values()) != Counter(col2.values()):
        return None
    order = sorted(s1.nodes, key=lambda v: (-s1.depth[v], col1[v], v))
    cands = {
        v: [w for w in sorted(s2.nodes) if col2[w] == col1[v]] for v in order
    }
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for c in s1.children(v):
            if c in mapping:
                if (w, mapping[c]) not in s2.edges:
                    return False
                if ((v, c) in s1.attachments) != ((w, mapping[c]) in s2.attachments):
                    return False
        for p in s1.parents(v):
            if p in mapping:
                if (mapping[p], w) not in s2.edges:
                    return False
                if ((p, v) in s1.attachments) != ((mapping[p], w) in s2.attachments):
                    return False
        if pair_check is not None and not pair_check(v, w, mapping):
            return False
        return True

    def go(i: int) -> bool:
        if i == len(order):
            return arrows_check is None or arrows_check(mapping)
        v = order[i]
        for w in cands[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if go(i + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    if go(0):
        return dict(mapping)
    return None


# -- formulas --------------------------------------------------------------------


class Formula:
    """Implication-conjunction fragment formulas, canonical modulo AC of ∧."""

    def __str__(self):
        return _fmt(self, 0)

    def __repr__(self):
        return f"Formula({self})"


@dataclass(frozen=True, repr=False)
class TopF(Formula):
    pass


@dataclass(frozen=True, repr=False)
class AtomF(Formula):
    name: str


@dataclass(frozen=True, repr=False)
class Conj(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True, repr=False)
class Impl(Formula):
    lhs: Formula
    rhs: Formula


TOP = TopF()


def conj(parts: Iterable[Formula]) -> Formula:
    """Flattening, ⊤-dropping, sorting conjunction constructor."""
    flat: list[Formula] = []
    for p in parts:
        if isinstance(p, Conj):
            flat.extend(p.parts)
        elif isinstance(p, TopF):
            continue
        else:
            flat.append(p)
    flat.sort(key=_fkey)
    if not flat:
        return TOP
    if len(flat) == 1:
        return flat[0]
    return Conj(tuple(flat))


def _fkey(f: Formula) -> str:
    return _fmt(f, 0)


def _fmt(f: Formula, prec: int) -> str:
    # prec 0 = anywhere, 1 = conjunct position, 2 = atom position
    if isinstance(f, TopF):
        return "T"
    if isinstance(f, AtomF):
        return f.name
    if isinstance(f, Conj):
        body = " & ".join(_fmt(p, 2) for p in f.parts)
        return f"({body})" if prec >= 2 else body
    if isinstance(f, Impl):
        body = f"{_fmt(f.lhs, 1)} => {_fmt(f.rhs, 0)}"
        return f"({body})" if prec >= 1 else body
    raise TypeError(f"not a formula: {f!r}")


# -- JSON format -------------------------------------------------------------------


def structure_to_obj(s: ScrollStructure) -> dict:
    nodes = []
    for v in sorted(s.nodes):
        entry: dict = {"id": v}
        if v in s.labels:
            entry["label"] = s.labels[v]
        nodes.append(entry)
    return {
        "nodes": nodes,
        "edges": [list(e) for e in sorted(s.edges)],
        "attachments": [list(a) for a in sorted(s.attachments)],
    }


def encode_json(s: ScrollStructure) -> bytes:
    return json.dumps(structure_to_obj(s), sort_keys=True, separators=(",", ":")).encode()


class SchemaError(StructureError):
    def __init__(self, message: str, path: str):
        super().__init__(f"{message} at {path}")
        self.path = path


def _expect(cond: bool, message: str, path: str):
    if not cond:
        raise SchemaError(message, path)


def structure_from_obj(obj, path: str = "$") -> ScrollStructure:
    _expect(isinstance(obj, dict), "expected object", path)
    unknown = set(obj) - {"nodes", "edges", "attachments"}
    _expect(not unknown, f"unknown fields {sorted(unknown)}", path)
    nodes: list[str] = []
    labels: dict[str, str] = {}
    _expect(isinstance(obj.get("nodes", []), list), "expected array", f"{path}.nodes")
    for k, entry in enumerate(obj.get("nodes", [])):
        p = f"{path}.nodes[{k}]"
        _expect(isinstance(entry, dict), "expected object", p)
        _expect(not set(entry) - {"id", "label"}, "unknown fields", p)
        nid = entry.get("id")
        _expect(isinstance(nid, str) and nid != "", "missing or empty id", p)
        _expect(nid not in nodes, f"duplicate id {nid!r}", p)
        nodes.append(nid)
        if "label" in entry:
            _expect(
                isinstance(entry["label"], str) and entry["label"] != "",
                "empty label",
                p,
            )
            labels[nid] = entry["label"]

    def pairs(key: str) -> list[tuple[str, str]]:
        raw = obj.get(key, [])
        _expect(isinstance(raw, list), "expected array", f"{path}.{key}")
        out = []
        for k, pair in enumerate(raw):
            p = f"{path}.{key}[{k}]"
            _expect(
                isinstance(pair, list) and len(pair) == 2, "expected [a, b] pair", p
            )
            a, b = pair
            _expect(isinstance(a, str) and isinstance(b, str), "expected strings", p)
            out.append((a, b))
        return out

    s = ScrollStructure(nodes, pairs("edges"), labels, pairs("attachments"))
    problems = s.validate()
    if problems:
        v = problems[0]
        raise SchemaError(f"invalid structure: {v.rule}: {v.message}", path)
    return s


def decode_json(data: bytes | str) -> ScrollStructure:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"bad JSON: {e.msg}", "$") from e
    return structure_from_obj(obj)
