"""Scroll nets: a proof kernel for the implicative fragment of
intuitionistic existential graphs, with derivation rules, boundary
extraction, sequential correctness, composition, detour reduction and a
simply typed λ-calculus front end."""

from .structure import (
    Formula,
    ParseError,
    SchemaError,
    ScrollStructure,
    StructureError,
    Violation,
    decode_json,
    encode_json,
    isomorphic,
    parse_text,
    print_text,
)
from .net import (
    EditState,
    NetError,
    ScrollNet,
    decode_net_json,
    encode_net_json,
    lift,
    net_isomorphic,
)
from .rules import (
    DerivationStep,
    ReplayError,
    RuleError,
    Trace,
    apply,
    apply_step,
    enumerate_applicable,
    replay,
)
from .correctness import (
    SequentializationBudget,
    check_certificate,
    is_correct,
    sequentialize,
)
from .compose import CompositionError, compatible, horizontal, superpose, vertical
from .detour import DetourBlocked, DetourReport, find_detours, normalize, reduce_detour
from .oracle import Sequent, equivalent, kripke_check, parse_sequent, prove

__all__ = [
    "Formula",
    "ParseError",
    "SchemaError",
    "ScrollStructure",
    "StructureError",
    "Violation",
    "decode_json",
    "encode_json",
    "isomorphic",
    "parse_text",
    "print_text",
    "EditState",
    "NetError",
    "ScrollNet",
    "decode_net_json",
    "encode_net_json",
    "lift",
    "net_isomorphic",
    "DerivationStep",
    "ReplayError",
    "RuleError",
    "Trace",
    "apply",
    "apply_step",
    "enumerate_applicable",
    "replay",
    "SequentializationBudget",
    "check_certificate",
    "is_correct",
    "sequentialize",
    "CompositionError",
    "compatible",
    "horizontal",
    "superpose",
    "vertical",
    "DetourBlocked",
    "DetourReport",
    "find_detours",
    "normalize",
    "reduce_detour",
    "Sequent",
    "equivalent",
    "kripke_check",
    "parse_sequent",
    "prove",
]
