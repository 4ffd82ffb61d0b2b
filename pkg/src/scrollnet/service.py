"""Local HTTP/JSON session service behind the interactive workbench.

Sessions are in-memory: each holds a current net plus an undo stack of
previous nets. Every mutation is serialized per session; kernel calls
are pure, so reads never see partial state. Precondition failures map
to 409 with the violated rule premiss in the body.
"""

from __future__ import annotations

import json
import threading
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from . import detour as detour_mod
from . import stlc as stlc_mod
from .correctness import SequentializationBudget, is_correct
from .net import ScrollNet, encode_net_json, lift, net_from_obj, net_to_obj
from .rules import RuleError, Trace, apply_step, enumerate_applicable, step_from_obj, step_to_obj
from .structure import SchemaError, structure_from_obj


class Session:
    def __init__(self, sid: str, net: ScrollNet, created_from: str):
        self.sid = sid
        self.net = net
        self.created_from = created_from
        self.history: list[ScrollNet] = []
        self.lock = threading.Lock()


class _Store:
    def __init__(self):
        self.sessions: dict[str, Session] = {}
        self.counter = 0
        self.lock = threading.Lock()

    def new(self, net: ScrollNet, created_from: str) -> Session:
        with self.lock:
            self.counter += 1
            sid = f"s{self.counter}"
            session = Session(sid, net, created_from)
            self.sessions[sid] = session
            return session


def _session_view(session: Session) -> dict:
    net = session.net
    es = net.edit_state
    return {
        "id": session.sid,
        "createdFrom": session.created_from,
        "net": net_to_obj(net),
        "editState": {
            "opened": sorted(es.opened),
            "closed": sorted(es.closed),
            "introduced": sorted(es.introduced),
            "eliminated": sorted(es.eliminated),
        },
        "complete": net.is_complete(),
        "interpretable": net.is_interpretable(),
        "historyDepth": len(session.history),
    }


def _boundaries_view(net: ScrollNet) -> dict:
    out = {
        "premiss": net.premiss.to_text() if net.premiss.is_forest else None,
        "conclusion": net.conclusion.to_text() if net.conclusion.is_forest else None,
        "premissJson": json.loads(encode_net_json(lift(net.premiss))),
        "conclusionJson": json.loads(encode_net_json(lift(net.conclusion))),
    }
    if net.is_interpretable():
        out["premissFormula"] = str(net.premiss.interpret())
        out["conclusionFormula"] = str(net.conclusion.interpret())
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="scrollnet workbench service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = _Store()

    def _get(sid: str) -> Optional[Session]:
        return store.sessions.get(sid)

    def _missing(sid: str) -> JSONResponse:
        return JSONResponse({"error": f"unknown session {sid!r}"}, status_code=404)

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        if not isinstance(body, dict):
            return JSONResponse({"error": "expected an object"}, status_code=400)
        keys = set(body) & {"structure", "net", "stlc"}
        if len(keys) != 1:
            return JSONResponse(
                {"error": "provide exactly one of structure, net, stlc"},
                status_code=400,
            )
        try:
            if "structure" in body:
                net = lift(structure_from_obj(body["structure"]))
                created_from = "structure"
            elif "net" in body:
                net = net_from_obj(body["net"])
                created_from = "net"
            else:
                term = stlc_mod.parse_term(body["stlc"])
                net = stlc_mod.translate([], term)
                created_from = "stlc-term"
        except (SchemaError, stlc_mod.StlcError) as e:
            return JSONResponse({"error": str(e)}, status_code=400)
        session = store.new(net, created_from)
        return JSONResponse(_session_view(session), status_code=201)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        return _session_view(session)

    @app.get("/sessions/{sid}/boundaries")
    def boundaries(sid: str):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        return _boundaries_view(session.net)

    @app.get("/sessions/{sid}/applicable")
    def applicable(sid: str, node: Optional[str] = None, payloadBound: int = 1):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        if node is not None and node not in session.net.structure.nodes:
            return JSONResponse({"error": f"unknown node {node!r}"}, status_code=404)
        steps = enumerate_applicable(session.net, at=node, payload_bound=payloadBound)
        return [step_to_obj(s) for s in steps]

    @app.post("/sessions/{sid}/apply")
    async def apply_rule(sid: str, request: Request):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        body = await request.json()
        try:
            step = step_from_obj(body)
        except SchemaError as e:
            return JSONResponse({"error": str(e)}, status_code=400)
        with session.lock:
            try:
                net, _ = apply_step(session.net, step)
            except RuleError as e:
                return JSONResponse(
                    {"error": str(e), "premiss": e.premiss, "rule": e.rule},
                    status_code=409,
                )
            session.history.append(session.net)
            session.net = _with_trace(session.net, net, step)
            return _session_view(session)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        with session.lock:
            if not session.history:
                return JSONResponse({"error": "nothing to undo"}, status_code=409)
            session.net = session.history.pop()
            return _session_view(session)

    @app.get("/sessions/{sid}/detours")
    def detours(sid: str):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        return [
            {"node": d.node, "kind": d.kind}
            for d in detour_mod.find_detours(session.net)
        ]

    @app.post("/sessions/{sid}/reduce")
    async def reduce(sid: str, request: Request):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        body = await request.json()
        node = body.get("node") if isinstance(body, dict) else None
        if not isinstance(node, str):
            return JSONResponse({"error": "expected {'node': id}"}, status_code=400)
        with session.lock:
            reports = [
                d for d in detour_mod.find_detours(session.net) if d.node == node
            ]
            if not reports:
                return JSONResponse(
                    {"error": f"no detour at {node!r}"}, status_code=404
                )
            try:
                net = detour_mod.reduce_detour(session.net, reports[0])
            except detour_mod.DetourBlocked as e:
                return JSONResponse({"error": str(e)}, status_code=409)
            session.history.append(session.net)
            session.net = net
            return _session_view(session)

    @app.get("/sessions/{sid}/export")
    def export(sid: str):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        return Response(
            content=encode_net_json(session.net) + b"\n",
            media_type="application/json",
        )

    @app.get("/sessions/{sid}/correct")
    def correct(sid: str):
        session = _get(sid)
        if session is None:
            return _missing(sid)
        try:
            ok = is_correct(session.net)
        except SequentializationBudget:
            return {"correct": None, "reason": "search budget exhausted"}
        return {"correct": ok}

    return app


def _with_trace(old: ScrollNet, new: ScrollNet, step) -> ScrollNet:
    """Extend the certificate so exports match CLI derive output."""
    if old.certificate is not None:
        cert = Trace(old.certificate.origin, old.certificate.steps + (step,))
    elif old.event_count() == 0:
        cert = Trace(old.structure, (step,))
    else:
        return new
    return new.replace(certificate=cert)
