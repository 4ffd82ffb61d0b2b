import pytest

from scrollnet.correctness import check_certificate
from scrollnet.detour import find_detours, normalize
from scrollnet.net import net_isomorphic
from scrollnet.structure import isomorphic, print_text
from scrollnet.stlc import (
    Abs,
    App,
    Arrow,
    Base,
    NotARedex,
    TypeError_,
    Var,
    context_structure,
    infer,
    parse_term,
    parse_type,
    reference_normalize,
    simulate_beta,
    translate,
    type_structure,
)


def church(k: int):
    body = "x"
    for _ in range(k):
        body = f"f ({body})"
    return parse_term(f"\\f:a->a.\\x:a. {body}")


SUCC = parse_term("\\n:(a->a)->a->a.\\f:a->a.\\x:a. f ((n f) x)")
ADD = parse_term("\\m:(a->a)->a->a.\\n:(a->a)->a->a.\\f:a->a.\\x:a. (m f) ((n f) x)")


# -- parsing and typing ------------------------------------------------------


def test_parse_type_right_assoc():
    assert parse_type("a -> b -> c") == Arrow(Base("a"), Arrow(Base("b"), Base("c")))
    assert parse_type("(a -> b) -> c") == Arrow(Arrow(Base("a"), Base("b")), Base("c"))


def test_parse_term_shapes():
    assert parse_term("x") == Var("x")
    t = parse_term("\\x:a. x")
    assert t == Abs("x", Base("a"), Var("x"))
    assert parse_term("(f x)") == App(Var("f"), Var("x"))
    assert parse_term("f x y") == App(App(Var("f"), Var("x")), Var("y"))


def test_infer_identity():
    assert infer([], parse_term("\\x:a. x")) == parse_type("a -> a")


def test_infer_two_binders():
    got = infer([], parse_term("\\x:a.\\f:a->b. f x"))
    assert got == parse_type("a -> (a -> b) -> b")


def test_infer_unbound():
    with pytest.raises(TypeError_):
        infer([], parse_term("x x"))


def test_infer_mismatch():
    with pytest.raises(TypeError_):
        infer([("f", parse_type("a->b")), ("x", Base("b"))], parse_term("f x"))


# -- translation ----------------------------------------------------------------


def boundary_contract(ctx, term):
    net = translate(ctx, term)
    ty = infer(ctx, term)
    want_premiss, _ = context_structure(ctx)
    want_conclusion = type_structure(ty, "T")
    assert isomorphic(net.premiss, want_premiss) is not None
    assert isomorphic(net.conclusion, want_conclusion) is not None
    assert check_certificate(net)
    return net


def test_translate_identity():
    net = boundary_contract([], parse_term("\\x:a. x"))
    assert print_text(net.conclusion) == "[a ; a]"
    assert net.is_complete()


def test_translate_var():
    net = boundary_contract([("x", Base("a"))], parse_term("x"))
    assert print_text(net.premiss) == "a"
    assert print_text(net.conclusion) == "a"


def test_translate_application_is_fig1b(mp, fig1b):
    net = translate([("f", parse_type("a->b")), ("x", Base("a"))], parse_term("f x"))
    assert print_text(net.premiss) == "[a ; b] a"
    assert print_text(net.conclusion) == "b"
    assert net_isomorphic(net, fig1b) is not None


def test_translate_k():
    net = boundary_contract([], parse_term("\\x:a.\\y:b. x"))
    assert print_text(net.conclusion) == "[a ; [b ; a]]"


def test_translate_s():
    term = parse_term("\\x:a->a->b.\\y:a->a.\\z:a. (x z) (y z)")
    boundary_contract([], term)


def test_translate_weakening_context():
    net = boundary_contract(
        [("x", Base("a")), ("z", Base("b"))], parse_term("x")
    )
    assert print_text(net.conclusion) == "a"


# -- beta simulation -------------------------------------------------------------


def redex_of(net):
    for d in find_detours(net):
        if d.kind == "ii":
            return d.node
    raise AssertionError("no redex")


def test_simulate_beta_identity_redex():
    net = translate([("y", Base("a"))], parse_term("(\\x:a. x) y"))
    before = len(net.structure.nodes)
    after = simulate_beta(net, redex_of(net))
    assert print_text(after.conclusion) == "a"
    assert print_text(after.premiss) == "a"
    assert len(after.structure.nodes) <= before
    assert reference_normalize(parse_term("(\\x:a. x) y")) == Var("y")


def test_simulate_beta_preserves_boundaries():
    ctx = [("y", Base("a"))]
    net = translate(ctx, parse_term("(\\x:a.\\w:b. x) y"))
    after = simulate_beta(net, redex_of(net))
    assert isomorphic(after.premiss, net.premiss) is not None
    assert isomorphic(after.conclusion, net.conclusion) is not None


def test_simulate_beta_rejects_non_redex(fig1b):
    with pytest.raises(NotARedex):
        simulate_beta(fig1b, "n1")


# -- reference normalizer ----------------------------------------------------------


def test_reference_normalize_already_normal():
    t = parse_term("\\x:a. x")
    assert reference_normalize(t) == t


def alpha_eq(t, u, env=()):
    if isinstance(t, Var) and isinstance(u, Var):
        for a, b in env:
            if t.name == a or u.name == b:
                return t.name == a and u.name == b
        return t.name == u.name
    if isinstance(t, Abs) and isinstance(u, Abs):
        return t.annotation == u.annotation and alpha_eq(
            t.body, u.body, ((t.binder, u.binder),) + env
        )
    if isinstance(t, App) and isinstance(u, App):
        return alpha_eq(t.fn, u.fn, env) and alpha_eq(t.arg, u.arg, env)
    return False


def test_reference_normalize_church_two_two():
    # 2 2 at instantiated base types: outer two at A = a->a
    two_outer = parse_term("\\f:(a->a)->a->a.\\x:a->a. f (f x)")
    two_inner = church(2)
    got = reference_normalize(App(two_outer, two_inner))
    want = reference_normalize(parse_term("\\x:a->a.\\y:a. x (x (x (x y)))"))
    assert alpha_eq(got, want)


def test_reference_normalize_add():
    got = reference_normalize(App(App(ADD, church(2)), church(1)))
    assert alpha_eq(got, reference_normalize(church(3)))


def test_capture_avoiding_substitution():
    # (\x:a.\y:a. x) y  must not capture the free y
    t = App(parse_term("\\x:a.\\y:a. x"), Var("y"))
    nf = reference_normalize(t)
    assert isinstance(nf, Abs)
    assert nf.binder != "y"
    assert nf.body == Var("y")


# -- corpus ------------------------------------------------------------------------


CORPUS = [
    ("I", [], parse_term("\\x:a. x")),
    ("K", [], parse_term("\\x:a.\\y:b. x")),
    ("S", [], parse_term("\\x:a->a->b.\\y:a->a.\\z:a. (x z) (y z)")),
    ("c0", [], church(0)),
    ("c1", [], church(1)),
    ("c2", [], church(2)),
    ("c3", [], church(3)),
    ("succ c0", [], App(SUCC, church(0))),
    ("succ c1", [], App(SUCC, church(1))),
    ("succ c2", [], App(SUCC, church(2))),
    ("add c1 c1", [], App(App(ADD, church(1)), church(1))),
]


@pytest.mark.parametrize("name,ctx,term", CORPUS, ids=[c[0] for c in CORPUS])
def test_corpus_boundary_contract(name, ctx, term):
    boundary_contract(ctx, term)


@pytest.mark.parametrize("name,ctx,term", CORPUS, ids=[c[0] for c in CORPUS])
def test_corpus_normalize_invariants(name, ctx, term):
    net = translate(ctx, term)
    nodes = len(net.structure.nodes)
    ty = infer(ctx, term)
    result = normalize(net, max_steps=10 * nodes * nodes)
    assert result.steps_taken <= 10 * nodes * nodes
    assert isomorphic(result.net.conclusion, type_structure(ty, "T")) is not None
    assert isomorphic(result.net.premiss, net.premiss) is not None
