"""STLC front-end: typing, translation to nets, and β-simulation.

Types translate to statements (base type = atom, arrow = scroll) and a
typing derivation translates to a correct net whose premiss is the
context and whose conclusion is the type. β-redexes appear as an
aa-detour on the argument copy plus an ii-detour on the abstraction
scroll; reducing them in that order simulates one β-step without
duplication.

`reference_normalize` is an independent syntactic normalizer used as
ground truth in tests; it never touches nets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .detour import DetourReport, KIND_AA_ATOM, KIND_AA_SCROLL, KIND_II, reduce_detour
from .net import ScrollNet, lift
from .rules import (
    CLOSE_POS,
    DEITERATE,
    DELETE,
    INSERT,
    ITERATE_DEEP,
    OPEN_POS,
    DerivationStep,
    Trace,
    apply_step,
)
from .structure import ScrollStructure


class StlcError(ValueError):
    pass


class TypeError_(StlcError):
    pass


# -- syntax ------------------------------------------------------------------


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow:
    lhs: "SimpleType"
    rhs: "SimpleType"

    def __str__(self):
        left = f"({self.lhs})" if isinstance(self.lhs, Arrow) else str(self.lhs)
        return f"{left} -> {self.rhs}"


SimpleType = Union[Base, Arrow]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Abs:
    binder: str
    annotation: SimpleType
    body: "LambdaTerm"

    def __str__(self):
        return f"\\{self.binder}:{self.annotation}. {self.body}"


@dataclass(frozen=True)
class App:
    fn: "LambdaTerm"
    arg: "LambdaTerm"

    def __str__(self):
        fn = f"({self.fn})" if isinstance(self.fn, Abs) else str(self.fn)
        arg = str(self.arg) if isinstance(self.arg, Var) else f"({self.arg})"
        return f"{fn} {arg}"


LambdaTerm = Union[Var, Abs, App]


_TOKENS = re.compile(r"\s*(->|[\\().:]|[a-zA-Z][a-zA-Z0-9_']*)")


def _tokenize(src: str) -> list[str]:
    out, pos = [], 0
    while pos < len(src):
        m = _TOKENS.match(src, pos)
        if m is None:
            if src[pos:].strip() == "":
                break
            raise StlcError(f"unexpected character {src[pos:].strip()[0]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _P:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def pop(self, want: Optional[str] = None) -> str:
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise StlcError(f"expected {want or 'a token'}, found {tok!r}")
        self.i += 1
        return tok


def _parse_type(p: _P) -> SimpleType:
    lhs = _parse_type_atom(p)
    if p.peek() == "->":
        p.pop()
        return Arrow(lhs, _parse_type(p))
    return lhs


def _parse_type_atom(p: _P) -> SimpleType:
    tok = p.pop()
    if tok == "(":
        t = _parse_type(p)
        p.pop(")")
        return t
    if re.fullmatch(r"[a-zA-Z][a-zA-Z0-9_']*", tok):
        return Base(tok)
    raise StlcError(f"expected a type, found {tok!r}")


def parse_type(src: str) -> SimpleType:
    p = _P(_tokenize(src))
    t = _parse_type(p)
    if p.peek() is not None:
        raise StlcError(f"trailing input: {p.peek()!r}")
    return t


def _parse_term(p: _P) -> LambdaTerm:
    if p.peek() == "\\":
        p.pop()
        binder = p.pop()
        if not re.fullmatch(r"[a-zA-Z][a-zA-Z0-9_']*", binder):
            raise StlcError(f"bad binder {binder!r}")
        p.pop(":")
        ann = _parse_type(p)
        p.pop(".")
        return Abs(binder, ann, _parse_term(p))
    parts = [_parse_term_atom(p)]
    while p.peek() is not None and p.peek() not in (")",):
        if p.peek() == "\\":
            parts.append(_parse_term(p))
            break
        parts.append(_parse_term_atom(p))
    term = parts[0]
    for part in parts[1:]:
        term = App(term, part)
    return term


def _parse_term_atom(p: _P) -> LambdaTerm:
    tok = p.pop()
    if tok == "(":
        t = _parse_term(p)
        p.pop(")")
        return t
    if re.fullmatch(r"[a-zA-Z][a-zA-Z0-9_']*", tok):
        return Var(tok)
    raise StlcError(f"expected a term, found {tok!r}")


def parse_term(src: str) -> LambdaTerm:
    p = _P(_tokenize(src))
    t = _parse_term(p)
    if p.peek() is not None:
        raise StlcError(f"trailing input: {p.peek()!r}")
    return t


# -- typing -------------------------------------------------------------------


def free_vars(t: LambdaTerm) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.binder}
    return free_vars(t.fn) | free_vars(t.arg)


def infer(ctx: list[tuple[str, SimpleType]], t: LambdaTerm) -> SimpleType:
    names = [n for n, _ in ctx]
    if len(set(names)) != len(names):
        raise TypeError_("context names must be distinct")
    return _infer(dict(ctx), t)


def _infer(env: dict[str, SimpleType], t: LambdaTerm) -> SimpleType:
    if isinstance(t, Var):
        if t.name not in env:
            raise TypeError_(f"unbound variable {t.name!r}")
        return env[t.name]
    if isinstance(t, Abs):
        body = _infer({**env, t.binder: t.annotation}, t.body)
        return Arrow(t.annotation, body)
    fn = _infer(env, t.fn)
    arg = _infer(env, t.arg)
    if not isinstance(fn, Arrow):
        raise TypeError_(f"applying a non-function in {t}: {fn}")
    if fn.lhs != arg:
        raise TypeError_(f"argument type mismatch in {t}: expected {fn.lhs}, got {arg}")
    return fn.rhs


# -- type translation ------------------------------------------------------------


def type_structure(ty: SimpleType, prefix: str) -> ScrollStructure:
    """tr(A): base types become atoms, arrows become scrolls."""
    counter = [0]
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    labels: dict[str, str] = {}
    attachments: list[tuple[str, str]] = []

    def build(ty: SimpleType, parent: Optional[str]) -> str:
        nid = f"{prefix}{counter[0]}"
        counter[0] += 1
        nodes.append(nid)
        if parent is not None:
            edges.append((parent, nid))
        if isinstance(ty, Base):
            labels[nid] = ty.name
            return nid
        inl = f"{prefix}{counter[0]}"
        counter[0] += 1
        build(ty.lhs, nid)
        nodes.append(inl)
        edges.append((nid, inl))
        attachments.append((nid, inl))
        build(ty.rhs, inl)
        return nid

    build(ty, None)
    return ScrollStructure(nodes, edges, labels, attachments)


def context_structure(ctx: list[tuple[str, SimpleType]]) -> tuple[ScrollStructure, dict[str, str]]:
    """tr(Γ) as juxtaposed roots; returns the entry root per name."""
    merged = ScrollStructure()
    entries: dict[str, str] = {}
    for i, (name, ty) in enumerate(ctx):
        part = type_structure(ty, f"g{i}_")
        entries[name] = part.roots[0]
        merged = ScrollStructure(
            nodes=merged.nodes | part.nodes,
            edges=set(merged.edges) | set(part.edges),
            labels={**merged.labels, **part.labels},
            attachments=merged.attachments | part.attachments,
        )
    return merged, entries


# -- translation -------------------------------------------------------------------


class _Builder:
    def __init__(self, origin: ScrollStructure):
        self.origin = origin
        self.net = lift(origin)
        self.steps: list[DerivationStep] = []
        self.counter = 0

    def run(self, **kw) -> dict[str, str]:
        self.counter += 1
        step = DerivationStep(fresh=f"t{self.counter}_", **kw)
        self.net, created = apply_step(self.net, step)
        self.steps.append(step)
        return created

    def conclusion_children(self, v: str) -> list[str]:
        return sorted(self.net.conclusion.children(v))

    def done(self) -> ScrollNet:
        return self.net.replace(certificate=Trace(self.origin, tuple(self.steps)))


def translate(ctx: list[tuple[str, SimpleType]], term: LambdaTerm) -> ScrollNet:
    """A correct net with premiss tr(ctx) and conclusion tr(type)."""
    infer(ctx, term)
    origin, entries = context_structure(ctx)
    b = _Builder(origin)
    fv = free_vars(term)
    for name in sorted(set(entries) - fv):
        b.run(rule=DELETE, target=entries[name])
    cmap = {name: node for name, node in entries.items() if name in fv}
    _emit(b, None, cmap, term)
    return b.done()


def _emit(b: _Builder, region: Optional[str], cmap: dict[str, str], term: LambdaTerm) -> str:
    if isinstance(term, Var):
        return cmap[term.name]
    if isinstance(term, Abs):
        return _emit_abs(b, region, cmap, term)
    return _emit_app(b, region, cmap, term)


def _emit_abs(b: _Builder, region, cmap, term: Abs) -> str:
    made = b.run(rule=OPEN_POS, parent=region)
    o, i = made["outloop"], made["inloop"]
    payload = type_structure(term.annotation, "x")
    made = b.run(rule=INSERT, parent=o, payload=payload)
    p = made[payload.roots[0]]
    fv = free_vars(term.body)
    bodymap: dict[str, str] = {}
    if term.binder in fv:
        made = b.run(rule=ITERATE_DEEP, source=p, parent=i)
        bodymap[term.binder] = made[p]
    for name in sorted(fv - {term.binder}):
        entry = cmap[name]
        made = b.run(rule=ITERATE_DEEP, source=entry, parent=i)
        bodymap[name] = made[entry]
    _emit(b, i, bodymap, term.body)
    for name in sorted(fv - {term.binder}):
        b.run(rule=DELETE, target=cmap[name])
    return o


def _emit_app(b: _Builder, region, cmap, term: App) -> str:
    fvt = free_vars(term.fn)
    fvu = free_vars(term.arg)
    tmap: dict[str, str] = {}
    umap: dict[str, str] = {}
    for name in sorted(fvt & fvu):
        entry = cmap[name]
        made = b.run(rule=OPEN_POS, parent=region)
        oc, ic = made["outloop"], made["inloop"]
        made = b.run(rule=ITERATE_DEEP, source=entry, parent=ic)
        tmap[name] = made[entry]
        b.run(rule=CLOSE_POS, target=oc)
        umap[name] = entry
    for name in sorted(fvt - fvu):
        tmap[name] = cmap[name]
    for name in sorted(fvu - fvt):
        umap[name] = cmap[name]

    s_star = _emit(b, region, tmap, term.fn)
    a_u = _emit(b, region, umap, term.arg)

    inloop = b.net.structure.attachment_of(s_star)
    r_a = [c for c in b.conclusion_children(s_star) if c != inloop]
    if len(r_a) != 1:
        raise StlcError(f"malformed function scroll at {s_star!r}: {r_a}")
    b.run(rule=DEITERATE, source=a_u, target=r_a[0])
    r_b = b.conclusion_children(inloop)
    if len(r_b) != 1:
        raise StlcError(f"malformed function scroll inloop at {inloop!r}: {r_b}")
    b.run(rule=CLOSE_POS, target=s_star)
    b.run(rule=DELETE, target=a_u)
    return r_b[0]


# -- β-simulation -------------------------------------------------------------------


class NotARedex(StlcError):
    pass


def simulate_beta(n: ScrollNet, redex_scroll: str) -> ScrollNet:
    """Reduce one translated β-redex: the argument-copy aa-detour, then
    the abstraction scroll's ii-detour."""
    s = n.structure
    if redex_scroll not in s.nodes:
        raise NotARedex(f"unknown node {redex_scroll!r}")
    inloop = s.attachment_of(redex_scroll)
    pair = (redex_scroll, inloop) if inloop else None
    if pair is None or pair not in n.expansions or pair not in n.collapses:
        raise NotARedex(f"{redex_scroll!r} carries no opened-and-closed scroll")
    arg_copies = [
        c
        for c in s.children(redex_scroll)
        if c != inloop and c in n.self_justifications and c in n.justified
    ]
    if len(arg_copies) != 1:
        raise NotARedex(f"{redex_scroll!r} has no unique argument-copy detour")
    arg = arg_copies[0]
    kind = KIND_AA_ATOM if arg in s.labels else KIND_AA_SCROLL
    net = reduce_detour(n, DetourReport(arg, kind))
    return reduce_detour(net, DetourReport(redex_scroll, KIND_II))


# -- reference normalizer --------------------------------------------------------------


def reference_normalize(t: LambdaTerm) -> LambdaTerm:
    """Normal-order β-normal form with capture-avoiding substitution."""
    return _nf(t)


def _nf(t: LambdaTerm) -> LambdaTerm:
    t = _whnf(t)
    if isinstance(t, Abs):
        return Abs(t.binder, t.annotation, _nf(t.body))
    if isinstance(t, App):
        return App(_nf(t.fn), _nf(t.arg))
    return t


def _whnf(t: LambdaTerm) -> LambdaTerm:
    while isinstance(t, App):
        fn = _whnf(t.fn)
        if isinstance(fn, Abs):
            t = _subst(fn.body, fn.binder, t.arg)
        else:
            return App(fn, t.arg)
    return t


def _subst(t: LambdaTerm, name: str, value: LambdaTerm) -> LambdaTerm:
    if isinstance(t, Var):
        return value if t.name == name else t
    if isinstance(t, App):
        return App(_subst(t.fn, name, value), _subst(t.arg, name, value))
    if t.binder == name:
        return t
    if t.binder in free_vars(value) and name in free_vars(t.body):
        fresh = t.binder
        taken = free_vars(value) | free_vars(t.body) | {name}
        while fresh in taken:
            fresh += "'"
        body = _subst(t.body, t.binder, Var(fresh))
        return Abs(fresh, t.annotation, _subst(body, name, value))
    return Abs(t.binder, t.annotation, _subst(t.body, name, value))
