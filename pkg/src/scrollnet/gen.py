"""Seeded random generators for fuzz and acceptance tests.

Everything takes an explicit random.Random so failures reproduce; the
trace generator drives enumerate_applicable, so fuzzed nets are
derivations by construction.
"""

from __future__ import annotations

import random
from typing import Optional

from .net import ScrollNet, lift
from .rules import (
    DerivationStep,
    Trace,
    apply_step,
    enumerate_applicable,
    payload_catalog,
)
from .structure import ScrollStructure, TOP, AtomF, Formula, Impl, conj


def random_structure(
    rng: random.Random,
    max_depth: int = 3,
    max_width: int = 3,
    atoms: str = "ab",
    allow_empty: bool = True,
) -> ScrollStructure:
    counter = [0]
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    labels: dict[str, str] = {}
    attachments: list[tuple[str, str]] = []

    def fresh() -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        return nid

    def grow(parent: Optional[str], depth: int) -> None:
        lo = 0 if (allow_empty or parent is not None) else 1
        for _ in range(rng.randint(lo, max_width)):
            if depth >= max_depth or rng.random() < 0.6:
                nid = fresh()
                nodes.append(nid)
                labels[nid] = rng.choice(atoms)
                if parent is not None:
                    edges.append((parent, nid))
            else:
                out = fresh()
                nodes.append(out)
                if parent is not None:
                    edges.append((parent, out))
                grow(out, depth + 1)
                inl = fresh()
                nodes.append(inl)
                edges.append((out, inl))
                attachments.append((out, inl))
                grow(inl, depth + 1)

    grow(None, 0)
    return ScrollStructure(nodes, edges, labels, attachments)


def random_trace_net(
    rng: random.Random,
    origin: Optional[ScrollStructure] = None,
    max_steps: int = 8,
    payload_bound: int = 1,
    boundary_only: bool = False,
) -> ScrollNet:
    """A replayed derivation from a random (or given) origin."""
    if origin is None:
        origin = random_structure(rng)
    net = lift(origin)
    steps: list[DerivationStep] = []
    for i in range(rng.randint(0, max_steps)):
        options = enumerate_applicable(
            net, payload_bound=payload_bound, boundary_only=boundary_only
        )
        if not options:
            break
        by_rule: dict[str, list[DerivationStep]] = {}
        for step in options:
            by_rule.setdefault(step.rule, []).append(step)
        rule = rng.choice(sorted(by_rule))
        step = rng.choice(by_rule[rule])
        step = DerivationStep(
            rule=step.rule,
            targets=step.targets,
            parent=step.parent,
            payload=step.payload,
            source=step.source,
            target=step.target,
            fresh=f"s{i}_",
        )
        net, _ = apply_step(net, step)
        steps.append(step)
    return net.replace(certificate=Trace(origin, tuple(steps)))


_PROBE_RULES = (
    "OpenPos",
    "OpenNeg",
    "ClosePos",
    "CloseNeg",
    "Insert",
    "Delete",
    "IterateRoot",
    "IterateDeep",
    "Deiterate",
)


def random_step(
    rng: random.Random,
    net: ScrollNet,
    payload_bound: int = 1,
    attempts: int = 24,
    node_cap: int = 40,
) -> Optional[tuple[DerivationStep, ScrollNet]]:
    """Probe random rule instances instead of enumerating all of them;
    much cheaper per step at fuzzing scale."""
    from .rules import RuleError

    s = net.structure
    nodes = sorted(s.nodes)
    seps = [v for v in nodes if v not in s.labels]
    outloops = sorted(s.outloops)
    payloads = payload_catalog(payload_bound)
    big = len(nodes) >= node_cap
    for _ in range(attempts):
        rule = rng.choice(_PROBE_RULES)
        step = None
        if rule in ("OpenPos", "OpenNeg"):
            if nodes and rng.random() < 0.6:
                pool = [v for v in nodes if v not in s.inloops]
                if not pool:
                    continue
                k = rng.choice((1, 1, 2))
                targets = tuple(rng.sample(pool, min(k, len(pool))))
                step = DerivationStep(rule, targets=targets)
            else:
                parent = rng.choice([None] + seps) if seps else None
                step = DerivationStep(rule, parent=parent)
        elif rule in ("ClosePos", "CloseNeg"):
            if not outloops:
                continue
            step = DerivationStep(rule, target=rng.choice(outloops))
        elif rule == "Insert":
            if not seps or not payloads or big:
                continue
            step = DerivationStep(
                rule, parent=rng.choice(seps), payload=rng.choice(payloads)
            )
        elif rule == "Delete":
            if not nodes:
                continue
            step = DerivationStep(rule, target=rng.choice(nodes))
        elif rule == "IterateRoot":
            roots = net.conclusion.roots
            if not roots or big:
                continue
            step = DerivationStep(rule, source=rng.choice(roots))
        elif rule == "IterateDeep":
            if not seps or not nodes or big:
                continue
            step = DerivationStep(
                rule, source=rng.choice(nodes), parent=rng.choice(seps)
            )
        elif rule == "Deiterate":
            if len(nodes) < 2:
                continue
            step = DerivationStep(
                rule, source=rng.choice(nodes), target=rng.choice(nodes)
            )
        if step is None:
            continue
        try:
            after, _ = apply_step(net, step)
        except RuleError:
            continue
        return step, after
    return None


def random_compatible_pair(
    rng: random.Random, max_steps: int = 5
) -> tuple[ScrollNet, ScrollNet]:
    """Two correct nets with conclusion-of-left ≅ premiss-of-right."""
    a = random_trace_net(rng, max_steps=max_steps, boundary_only=True)
    seam = a.conclusion
    origin = ScrollStructure(
        nodes=[f"m.{v}" for v in seam.nodes],
        edges=[(f"m.{p}", f"m.{c}") for p, c in seam.edges],
        labels={f"m.{v}": x for v, x in seam.labels.items()},
        attachments=[(f"m.{o}", f"m.{i}") for o, i in seam.attachments],
    )
    b = random_trace_net(rng, origin=origin, max_steps=max_steps, boundary_only=True)
    return a, b


# -- detour injection ---------------------------------------------------------


def _gadget_ii(rng: random.Random) -> ScrollNet:
    base = random_structure(rng, max_depth=1, max_width=2, allow_empty=False)
    net = lift(base)
    targets = tuple(net.conclusion.roots)
    net, made = apply_step(net, DerivationStep("OpenPos", targets=targets, fresh="d"))
    net, _ = apply_step(net, DerivationStep("ClosePos", target=made["outloop"]))
    return net


def _gadget_ia(rng: random.Random) -> ScrollNet:
    # Opened then deleted.
    base = random_structure(rng, max_depth=1, max_width=1)
    net = lift(base)
    net, made = apply_step(net, DerivationStep("OpenPos", parent=None, fresh="d"))
    net, _ = apply_step(net, DerivationStep("Delete", target=made["outloop"]))
    return net


def _gadget_ia_neg(rng: random.Random) -> ScrollNet:
    # Inserted then closed, inside a host scroll.
    from .structure import parse_text

    host = parse_text("[ ; b]")
    net = lift(host)
    payload = parse_text(rng.choice(["[ ; a]", "[ ; a b]"]))
    net, made = apply_step(
        net, DerivationStep("Insert", parent="n0", payload=payload, fresh="d")
    )
    root = made[payload.roots[0]]
    net, _ = apply_step(net, DerivationStep("CloseNeg", target=root))
    return net


def _gadget_ai(rng: random.Random) -> ScrollNet:
    from .structure import parse_text

    src = parse_text(rng.choice(["[ ; b]", "[ ; a a]"]))
    net = lift(src)
    net, made = apply_step(net, DerivationStep("OpenPos", parent=None, fresh="d"))
    inloop = made["inloop"]
    net, made = apply_step(
        net, DerivationStep("IterateDeep", source="n0", parent=inloop, fresh="e")
    )
    net, _ = apply_step(net, DerivationStep("ClosePos", target=made["n0"]))
    return net


def _gadget_aa(rng: random.Random, atom: bool) -> ScrollNet:
    from .structure import parse_text

    src = parse_text("a" if atom else rng.choice(["[a ; b]", "[ ; b]"]))
    net = lift(src)
    net, made = apply_step(net, DerivationStep("IterateRoot", source="n0", fresh="d"))
    net, _ = apply_step(net, DerivationStep("Delete", target=made["n0"]))
    return net


DETOUR_KINDS = ("ii", "ia", "ia_neg", "ai", "aa_scroll", "aa_atom")


def net_with_detour(rng: random.Random, kind: str) -> ScrollNet:
    """A random host net juxtaposed with a gadget carrying one detour."""
    from .compose import horizontal

    if kind == "ii":
        gadget = _gadget_ii(rng)
    elif kind == "ia":
        gadget = _gadget_ia(rng)
    elif kind == "ia_neg":
        gadget = _gadget_ia_neg(rng)
    elif kind == "ai":
        gadget = _gadget_ai(rng)
    elif kind == "aa_scroll":
        gadget = _gadget_aa(rng, atom=False)
    elif kind == "aa_atom":
        gadget = _gadget_aa(rng, atom=True)
    else:
        raise ValueError(f"unknown detour kind {kind!r}")
    host = random_trace_net(rng, max_steps=3)
    return horizontal(host, gadget)


# -- formula enumeration --------------------------------------------------------


def formulas_upto(connectives: int, atoms: str = "ab") -> list[Formula]:
    """All fragment formulas with at most the given connective count
    (conjunction counted per binary join)."""
    leaves: list[Formula] = [AtomF(a) for a in atoms] + [TOP]
    by_size: dict[int, list[Formula]] = {0: leaves}
    for size in range(1, connectives + 1):
        out: list[Formula] = []
        for left in range(size):
            right = size - 1 - left
            for f in by_size[left]:
                for g in by_size[right]:
                    out.append(Impl(f, g))
                    out.append(_raw_conj(f, g))
        by_size[size] = out
    all_formulas: list[Formula] = []
    for size in range(connectives + 1):
        all_formulas.extend(by_size[size])
    return all_formulas


def random_formula(rng: random.Random, connectives: int, atoms: str = "ab") -> Formula:
    if connectives == 0:
        return rng.choice([AtomF(a) for a in atoms] + [TOP])
    left = rng.randint(0, connectives - 1)
    f = random_formula(rng, left, atoms)
    g = random_formula(rng, connectives - 1 - left, atoms)
    return Impl(f, g) if rng.random() < 0.5 else _raw_conj(f, g)


def _raw_conj(f: Formula, g: Formula) -> Formula:
    joined = conj([f, g])
    return joined
