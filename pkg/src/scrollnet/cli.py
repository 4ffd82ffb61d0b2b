"""Batch command-line interface over the kernel.

Exit codes: 0 success, 1 domain negative (invalid structure, incorrect
net, unprovable sequent), 2 usage or input errors. Output is
deterministic: JSON is emitted with sorted keys and sorted id arrays.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import detour as detour_mod
from . import stlc as stlc_mod
from .compose import CompositionError, horizontal, vertical
from .correctness import SequentializationBudget, is_correct
from .net import (
    ScrollNet,
    encode_net_json,
    net_from_obj,
    net_to_obj,
)
from .oracle import SequentError, parse_sequent, prove
from .rules import (
    ReplayError,
    RuleError,
    enumerate_applicable,
    replay,
    step_from_obj,
    step_to_obj,
    trace_from_obj,
)
from .structure import (
    ParseError,
    SchemaError,
    StructureError,
    structure_from_obj,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise UsageError(f"bad JSON in {path}: {e.msg}") from e


def _load_net(path: str) -> ScrollNet:
    return net_from_obj(_load_json(path))


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def cmd_check(args) -> int:
    obj = _load_json(args.file)
    try:
        if args.net:
            net_from_obj(obj)
        else:
            structure_from_obj(obj)
    except SchemaError as e:
        _emit({"ok": False, "error": str(e)})
        return 1
    _emit({"ok": True})
    return 0


def cmd_boundaries(args) -> int:
    net = _load_net(args.file)
    premiss, conclusion = net.premiss, net.conclusion
    print(f"premiss: {premiss.to_text()}")
    print(f"conclusion: {conclusion.to_text()}")
    if net.is_interpretable():
        print(f"premiss formula: {premiss.interpret()}")
        print(f"conclusion formula: {conclusion.interpret()}")
    return 0


def cmd_interpret(args) -> int:
    s = structure_from_obj(_load_json(args.file))
    print(s.interpret())
    return 0


def cmd_derive(args) -> int:
    origin = structure_from_obj(_load_json(args.file))
    script = _load_json(args.script)
    if isinstance(script, dict) and "steps" in script:
        trace = trace_from_obj(script)
        steps = trace.steps
        origin = trace.origin
    else:
        if not isinstance(script, list):
            raise UsageError("script must be a list of steps or a trace object")
        steps = tuple(
            step_from_obj(s, f"$[{i}]") for i, s in enumerate(script)
        )
    net = replay(origin, steps)
    sys.stdout.write(encode_net_json(net).decode() + "\n")
    return 0


def cmd_applicable(args) -> int:
    net = _load_net(args.file)
    steps = enumerate_applicable(net, at=args.at, payload_bound=args.payload_bound)
    _emit([step_to_obj(s) for s in steps])
    return 0


def cmd_correct(args) -> int:
    net = _load_net(args.file)
    try:
        ok = is_correct(net)
    except SequentializationBudget:
        _emit({"correct": None, "reason": "search budget exhausted"})
        return 1
    if ok:
        _emit({"correct": True})
        return 0
    reason = "not interpretable" if not net.is_interpretable() else "no sequentialization"
    _emit({"correct": False, "reason": reason})
    return 1


def cmd_detours(args) -> int:
    net = _load_net(args.file)
    _emit([{"node": d.node, "kind": d.kind} for d in detour_mod.find_detours(net)])
    return 0


def cmd_normalize(args) -> int:
    net = _load_net(args.file)
    result = detour_mod.normalize(net, max_steps=args.max_steps)
    _emit(
        {
            "net": net_to_obj(result.net),
            "stepsTaken": result.steps_taken,
            "fullyNormal": result.fully_normal,
            "blocked": [{"node": d.node, "kind": d.kind} for d in result.blocked],
        }
    )
    return 0


def cmd_compose(args) -> int:
    a = _load_net(args.left)
    b = _load_net(args.right)
    net = horizontal(a, b) if args.horizontal else vertical(a, b)
    sys.stdout.write(encode_net_json(net).decode() + "\n")
    return 0


def cmd_prove(args) -> int:
    seq = parse_sequent(args.sequent)
    ok = prove(seq)
    _emit({"provable": ok})
    return 0 if ok else 1


def cmd_stlc(args) -> int:
    ctx: list[tuple[str, stlc_mod.SimpleType]] = []
    if args.ctx:
        for part in args.ctx.split(","):
            if not part.strip():
                continue
            name, _, ty = part.partition(":")
            if not ty:
                raise UsageError(f"bad context entry {part!r}")
            ctx.append((name.strip(), stlc_mod.parse_type(ty)))
    term = stlc_mod.parse_term(args.term)
    if args.action == "check":
        print(stlc_mod.infer(ctx, term))
        return 0
    net = stlc_mod.translate(ctx, term)
    if args.action == "translate":
        sys.stdout.write(encode_net_json(net).decode() + "\n")
        return 0
    if args.action == "reduce":
        redexes = [
            d.node
            for d in detour_mod.find_detours(net)
            if d.kind == detour_mod.KIND_II
        ]
        for node in redexes:
            try:
                net = stlc_mod.simulate_beta(net, node)
                break
            except stlc_mod.NotARedex:
                continue
        else:
            raise UsageError("no reducible redex in the translated net")
        sys.stdout.write(encode_net_json(net).decode() + "\n")
        return 0
    result = detour_mod.normalize(net)
    _emit(
        {
            "net": net_to_obj(result.net),
            "stepsTaken": result.steps_taken,
            "fullyNormal": result.fully_normal,
            "conclusion": result.net.conclusion.to_text(),
        }
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scrollnet", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("check", help="validate a structure (or net with --net)")
    q.add_argument("file")
    q.add_argument("--net", action="store_true")
    q.set_defaults(fn=cmd_check)

    q = sub.add_parser("boundaries", help="premiss and conclusion of a net")
    q.add_argument("file")
    q.set_defaults(fn=cmd_boundaries)

    q = sub.add_parser("interpret", help="formula reading of a structure")
    q.add_argument("file")
    q.set_defaults(fn=cmd_interpret)

    q = sub.add_parser("derive", help="replay a step script over a structure")
    q.add_argument("file")
    q.add_argument("--script", required=True)
    q.set_defaults(fn=cmd_derive)

    q = sub.add_parser("applicable", help="enumerate applicable steps")
    q.add_argument("file")
    q.add_argument("--at", default=None)
    q.add_argument("--payload-bound", type=int, default=0)
    q.set_defaults(fn=cmd_applicable)

    q = sub.add_parser("correct", help="sequential correctness check")
    q.add_argument("file")
    q.set_defaults(fn=cmd_correct)

    q = sub.add_parser("detours", help="list detours of a net")
    q.add_argument("file")
    q.set_defaults(fn=cmd_detours)

    q = sub.add_parser("normalize", help="reduce detours to normal form")
    q.add_argument("file")
    q.add_argument("--max-steps", type=int, default=None)
    q.set_defaults(fn=cmd_normalize)

    q = sub.add_parser("compose", help="compose two nets")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--h", dest="horizontal", action="store_true")
    g.add_argument("--v", dest="vertical", action="store_true")
    q.add_argument("left")
    q.add_argument("right")
    q.set_defaults(fn=cmd_compose)

    q = sub.add_parser("stlc", help="λ-term front end")
    q.add_argument("action", choices=["check", "translate", "reduce", "normalize"])
    q.add_argument("term")
    q.add_argument("--ctx", default="", help="context, e.g. 'x:a, f:a->b'")
    q.set_defaults(fn=cmd_stlc)

    q = sub.add_parser("prove", help="intuitionistic entailment oracle")
    q.add_argument("sequent")
    q.set_defaults(fn=cmd_prove)

    q = sub.add_parser("serve", help="run the workbench session service")
    q.add_argument("--port", type=int, default=8787)
    q.add_argument("--host", default="127.0.0.1")
    q.set_defaults(fn=cmd_serve)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (RuleError, ReplayError, CompositionError, stlc_mod.TypeError_) as e:
        # Well-formed input refused by the kernel: domain negative.
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (
        UsageError,
        SchemaError,
        ParseError,
        StructureError,
        SequentError,
        stlc_mod.StlcError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
