"""Acceptance suite: one test per criterion, each printing a PASS line
with its measured numbers. Run with `pytest tests/test_acceptance.py -s`
(or plain pytest; the lines also appear in captured output)."""

import random
import time
from itertools import permutations

from scrollnet.compose import horizontal, superpose
from scrollnet.correctness import sequentialize
from scrollnet.detour import DetourBlocked, find_detours, normalize, reduce_detour
from scrollnet.gen import (
    DETOUR_KINDS,
    formulas_upto,
    net_with_detour,
    random_compatible_pair,
    random_formula,
    random_step,
    random_structure,
    random_trace_net,
)
from scrollnet.net import boundary_of, lift, net_isomorphic
from scrollnet.oracle import Sequent, kripke_check, parse_sequent, prove
from scrollnet.rules import DerivationStep, replay
from scrollnet.stlc import (
    App,
    infer,
    parse_term,
    simulate_beta,
    translate,
    type_structure,
)
from scrollnet.structure import ScrollStructure, isomorphic, parse_text


def report(name: str, detail: str):
    print(f"PASS: {name} ({detail})")


def test_fig1_golden_trace():
    t0 = time.time()
    origin = parse_text("a [a ; b]")
    net = replay(
        origin,
        [
            DerivationStep("Deiterate", source="n0", target="n2"),
            DerivationStep("ClosePos", target="n1"),
            DerivationStep("Delete", target="n0"),
        ],
    )
    assert isomorphic(net.premiss, parse_text("a [a ; b]")) is not None
    assert isomorphic(net.conclusion, parse_text("b")) is not None
    assert len(net.justifications) == 1
    assert len(net.self_justifications) == 1
    assert len(net.collapses) == 1
    assert len(net.expansions) == 0
    assert prove(parse_sequent("a, a => b |- b"))
    elapsed = time.time() - t0
    assert elapsed < 1.0
    report("Fig. 1 golden trace", f"{elapsed:.3f}s")


def test_fig5_sharing():
    t0 = time.time()
    origin = parse_text("[ ; a b] c")
    net = replay(
        origin,
        [
            DerivationStep("ClosePos", target="n0"),
            DerivationStep("OpenPos", targets=("n3", "n4"), fresh="u"),
        ],
    )
    b_parents = net.structure.parents("n3")
    assert len(b_parents) == 2
    assert b_parents <= net.structure.inloops
    assert net.premiss.is_forest and net.conclusion.is_forest
    assert isomorphic(net.premiss, origin) is not None
    assert isomorphic(net.conclusion, parse_text("a [ ; b c]")) is not None
    elapsed = time.time() - t0
    assert elapsed < 1.0
    report("Fig. 5 sharing", f"{elapsed:.3f}s, b parents = {sorted(b_parents)}")


def test_lemma_10_12_fuzz():
    t0 = time.time()
    rng = random.Random(2024)
    derivations = 10_000
    steps_total = 0
    for i in range(derivations):
        origin = random_structure(rng, max_depth=2, max_width=3, atoms="abc")
        net = lift(origin)
        premiss_canon = net.premiss.canonical
        for _ in range(rng.randint(0, 12)):
            got = random_step(rng, net, payload_bound=3)
            if got is None:
                break
            step, after = got
            assert not after.validate(), (i, step)
            assert after.premiss.canonical == premiss_canon, (i, step)
            assert after.is_interpretable(), (i, step)
            net = after
            steps_total += 1
    elapsed = time.time() - t0
    assert elapsed < 60.0
    report(
        "Lemma 10/12 fuzz",
        f"{derivations} derivations, {steps_total} steps, {elapsed:.1f}s",
    )


def test_theorem_16_soundness():
    t0 = time.time()
    rng = random.Random(1016)
    count = 1_000
    for i in range(count):
        net = random_trace_net(rng, max_steps=5, payload_bound=1)
        seq = Sequent((net.premiss.interpret(),), net.conclusion.interpret())
        assert prove(seq), (i, seq)
    elapsed = time.time() - t0
    report("Theorem 16 soundness", f"{count} correct nets, {elapsed:.1f}s")


def test_sequentialization_roundtrip():
    rng = random.Random(1018)
    nets = [
        random_trace_net(rng, max_steps=6, payload_bound=1).replace(certificate=None)
        for _ in range(1_000)
    ]
    budget_time = 0.0
    for i, net in enumerate(nets):
        t0 = time.time()
        trace = sequentialize(net)
        assert trace is not None, i
        redone = replay(trace.origin, trace.steps)
        assert net_isomorphic(redone, net) is not None, i
        budget_time += time.time() - t0
    assert budget_time <= 5.0
    report("Sequentialization round-trip", f"1000 traces, {budget_time:.1f}s")


def test_boundary_confluence():
    rng = random.Random(1008)
    checked = 0
    t0 = time.time()
    while checked < 200:
        net = random_trace_net(rng, max_steps=6, payload_bound=1)
        es = net.edit_state
        sides = [
            (sorted(es.introduced), sorted(es.opened), net.premiss),
            (sorted(es.eliminated), sorted(es.closed), net.conclusion),
        ]
        if all(len(p) + len(c) == 0 for p, c, _ in sides):
            continue
        if any(len(p) + len(c) > 6 for p, c, _ in sides):
            continue
        checked += 1
        for pruned, collapsed, reference in sides:
            for p_order in permutations(pruned):
                for c_order in permutations(collapsed):
                    got = boundary_of(net.structure, p_order, c_order)
                    assert isomorphic(got, reference) is not None
    report("Boundary confluence", f"200 nets, all phase permutations, {time.time()-t0:.1f}s")


def test_detour_reduction():
    rng = random.Random(1006)
    total = reduced = blocked = 0
    normalizations = blocked_normalizations = 0
    t0 = time.time()
    while total < 500:
        kind = DETOUR_KINDS[total % len(DETOUR_KINDS)]
        net = net_with_detour(rng, kind)
        reports = find_detours(net)
        assert reports, kind
        total += 1
        for d in reports:
            try:
                after = reduce_detour(net, d)
            except DetourBlocked:
                blocked += 1
                continue
            reduced += 1
            assert isomorphic(after.premiss, net.premiss) is not None, (kind, d)
            assert isomorphic(after.conclusion, net.conclusion) is not None, (kind, d)
        result = normalize(net, max_steps=200)
        normalizations += 1
        if not result.fully_normal:
            blocked_normalizations += 1
        assert isomorphic(result.net.premiss, net.premiss) is not None
        assert isomorphic(result.net.conclusion, net.conclusion) is not None
    report(
        "Detour reduction",
        f"{total} nets, {reduced} reductions, blocked rate "
        f"{blocked}/{reduced + blocked}, "
        f"{blocked_normalizations}/{normalizations} normalizations blocked, "
        f"{time.time()-t0:.1f}s",
    )


def _church(k: int):
    body = "x"
    for _ in range(k):
        body = f"f ({body})"
    return parse_term(f"\\f:a->a.\\x:a. {body}")


def test_stlc_corpus():
    succ = parse_term("\\n:(a->a)->a->a.\\f:a->a.\\x:a. f ((n f) x)")
    add = parse_term(
        "\\m:(a->a)->a->a.\\n:(a->a)->a->a.\\f:a->a.\\x:a. (m f) ((n f) x)"
    )
    corpus = [
        ("I", parse_term("\\x:a. x")),
        ("K", parse_term("\\x:a.\\y:b. x")),
        ("S", parse_term("\\x:a->a->b.\\y:a->a.\\z:a. (x z) (y z)")),
        ("c0", _church(0)),
        ("c1", _church(1)),
        ("c2", _church(2)),
        ("c3", _church(3)),
        ("succ c0", App(succ, _church(0))),
        ("succ c1", App(succ, _church(1))),
        ("succ c2", App(succ, _church(2))),
        ("succ c3", App(succ, _church(3))),
        ("add c1 c1", App(App(add, _church(1)), _church(1))),
    ]
    t0 = time.time()
    beta_steps = 0
    for name, term in corpus:
        ty = infer([], term)
        net = translate([], term)
        assert net.premiss.is_empty(), name
        assert isomorphic(net.conclusion, type_structure(ty, "T")) is not None, name

        # simulate every available β-redex once, checking the contract
        current = net
        while True:
            redexes = [
                d.node
                for d in find_detours(current)
                if d.kind == "ii"
                and any(
                    c in current.self_justifications and c in current.justified
                    for c in current.structure.children(d.node)
                )
            ]
            stepped = False
            for node in redexes:
                before_nodes = len(current.structure.nodes)
                try:
                    after = simulate_beta(current, node)
                except Exception:
                    continue
                assert len(after.structure.nodes) <= before_nodes, name
                assert isomorphic(after.premiss, current.premiss) is not None, name
                assert (
                    isomorphic(after.conclusion, current.conclusion) is not None
                ), name
                current = after
                beta_steps += 1
                stepped = True
                break
            if not stepped:
                break

        nodes = len(net.structure.nodes)
        result = normalize(net, max_steps=10 * nodes * nodes)
        assert result.steps_taken <= 10 * nodes * nodes, name
        assert isomorphic(result.net.conclusion, type_structure(ty, "T")) is not None, name
    report(
        "STLC corpus",
        f"{len(corpus)} terms, {beta_steps} β-simulations, {time.time()-t0:.1f}s",
    )


def test_oracle_cross_check():
    t0 = time.time()
    exhaustive = formulas_upto(4)
    rng = random.Random(1004)
    sampled = [random_formula(rng, rng.randint(5, 7)) for _ in range(5_000)]
    provable = 0
    for f in exhaustive + sampled:
        s = Sequent((), f)
        if prove(s):
            provable += 1
            assert kripke_check(s, 3), f
    assert prove(parse_sequent("a, a => b |- b"))
    assert prove(parse_sequent("|- (a => b => c) => (a & b => c)"))
    assert prove(parse_sequent("|- (a & b => c) => a => b => c"))
    assert not prove(parse_sequent("|- ((a => b) => a) => a"))
    report(
        "Oracle cross-check",
        f"{len(exhaustive)} exhaustive (≤4 connectives) + {len(sampled)} sampled "
        f"(5-7 connectives), {provable} provable, {time.time()-t0:.1f}s",
    )


def test_composition_laws():
    rng = random.Random(1020)
    t0 = time.time()
    for i in range(200):
        a, b = random_compatible_pair(rng)
        u = superpose(a, b)
        assert isomorphic(u.premiss, a.premiss) is not None, i
        assert isomorphic(u.conclusion, b.conclusion) is not None, i
    nets = [random_trace_net(rng, max_steps=3) for _ in range(4)]
    unit = lift(ScrollStructure())
    for n in nets:
        assert net_isomorphic(horizontal(unit, n), n) is not None
        assert net_isomorphic(horizontal(n, unit), n) is not None
    for x, y in zip(nets, nets[1:]):
        assert net_isomorphic(horizontal(x, y), horizontal(y, x)) is not None
    x, y, z = nets[:3]
    assert (
        net_isomorphic(horizontal(horizontal(x, y), z), horizontal(x, horizontal(y, z)))
        is not None
    )
    report("Composition laws", f"200 superpositions + unit/comm/assoc, {time.time()-t0:.1f}s")
