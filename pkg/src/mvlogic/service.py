"""HTTP facade over the workspace.

All state lives in a :class:`~mvlogic.workspace.Workspace`; handlers are
thin adapters between JSON documents and the library calls.  Validation
errors surface as 422 with the offending JSON pointer, unknown ids as
404, and out-of-order session operations as 409.
"""
from __future__ import annotations

from typing import Any

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse

from .chain import validate_conj
from .entailment import derive_closure
from .errors import (
    InvalidTableError,
    NotDerivableError,
    SchemaError,
    SessionError,
    StructuralError,
)
from .generator import select, start
from .intervals import IntervalAlgebra
from .morphisms import is_quasi_morphism
from .schemas import (
    algebra_from_doc,
    algebra_to_doc,
    bridge_from_doc,
    bridge_to_doc,
    candidate_to_doc,
    canonical_json,
    chain_from_doc,
    module_from_doc,
    module_to_doc,
    renaming_from_doc,
    renaming_to_doc,
    sentence_from_doc,
    sentence_to_doc,
    session_to_doc,
    table_from_doc,
)
from .translation import harness_weak_conservative, translate
from .workspace import Workspace


def _not_found(kind: str, key: str) -> JSONResponse:
    return JSONResponse({"detail": f"no such {kind}: {key}"}, status_code=404)


def create_app(workspace: Workspace | None = None) -> FastAPI:
    ws = workspace if workspace is not None else Workspace()
    app = FastAPI(title="mvlogic", version="1")

    @app.exception_handler(SchemaError)
    async def _schema_error(_: Request, e: SchemaError):
        body: dict[str, Any] = {"detail": str(e)}
        if e.path:
            body["path"] = e.path
        return JSONResponse(body, status_code=422)

    @app.exception_handler(StructuralError)
    async def _structural_error(_: Request, e: StructuralError):
        return JSONResponse({"detail": str(e)}, status_code=422)

    @app.exception_handler(InvalidTableError)
    async def _table_error(_: Request, e: InvalidTableError):
        body: dict[str, Any] = {"detail": str(e)}
        if e.report is not None:
            body["violations"] = [
                {"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                for v in e.report.violations
            ]
        return JSONResponse(body, status_code=422)

    @app.exception_handler(SessionError)
    async def _session_error(_: Request, e: SessionError):
        return JSONResponse({"detail": str(e)}, status_code=409)

    @app.exception_handler(NotDerivableError)
    async def _not_derivable(_: Request, e: NotDerivableError):
        return JSONResponse({"detail": str(e)}, status_code=409)

    def _algebra(ref: Any, path: str):
        """Inline algebra document or the id of a registered one."""
        if isinstance(ref, str):
            alg = ws.algebras.get(ref)
            if alg is None:
                raise SchemaError(f"unknown algebra id {ref!r}", path)
            return alg
        return algebra_from_doc(ref, path)

    # --- algebras ---------------------------------------------------------

    @app.post("/v1/validate")
    def post_validate(doc: dict = Body(...)):
        chain = chain_from_doc(doc)
        table = table_from_doc(doc.get("conj"), chain.n, "/conj")
        report = validate_conj(chain, table)
        return {
            "ok": report.ok,
            "violations": [
                {"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                for v in report.violations
            ],
        }

    @app.post("/v1/algebras", status_code=201)
    def post_algebra(doc: dict = Body(...)):
        alg = algebra_from_doc(doc)
        aid = ws.add_algebra(alg)
        return {"id": aid, "algebra": algebra_to_doc(alg)}

    @app.get("/v1/algebras")
    def list_algebras():
        return {
            "algebras": [
                {"id": aid, "n": alg.n} for aid, alg in sorted(ws.algebras.items())
            ]
        }

    @app.get("/v1/algebras/{aid}")
    def get_algebra(aid: str):
        alg = ws.algebras.get(aid)
        if alg is None:
            return _not_found("algebra", aid)
        return {"id": aid, "algebra": algebra_to_doc(alg)}

    @app.get("/v1/algebras/{aid}/intervals")
    def get_intervals(aid: str):
        alg = ws.algebras.get(aid)
        if alg is None:
            return _not_found("algebra", aid)
        ia = IntervalAlgebra(alg)
        classes = ia.sign_classes
        return {
            "count": len(ia),
            "carrier": [v.to_json() for v in ia.carrier],
            "signClasses": {
                "negative": [v.to_json() for v in classes.negatives],
                "fixed": [v.to_json() for v in classes.fixed],
                "positive": [v.to_json() for v in classes.positives],
                "indefinite": [v.to_json() for v in classes.indefinite],
            },
            "hasse": [[a.to_json(), b.to_json()] for a, b in ia.hasse],
        }

    @app.get("/v1/algebras/{aid}/validation")
    def get_validation(aid: str):
        alg = ws.algebras.get(aid)
        if alg is None:
            return _not_found("algebra", aid)
        # registered algebras are valid by construction; report for symmetry
        report = validate_conj(alg.chain, alg.conj)
        return {
            "ok": report.ok,
            "violations": [
                {"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                for v in report.violations
            ],
        }

    # --- renamings --------------------------------------------------------

    @app.post("/v1/check-qm")
    def post_check_qm(body: dict = Body(...)):
        source = _algebra(body.get("source"), "/source")
        target = _algebra(body.get("target"), "/target")
        f = renaming_from_doc(body.get("renaming"), source, "/renaming")
        report = is_quasi_morphism(source, target, f)
        return {
            "ok": report.ok,
            "morphism": report.is_morphism,
            "conjLeqStar": report.conj_leq_star_ok,
            "violations": [
                {
                    "condition": v.condition,
                    "witness": list(v.witness),
                    "detail": v.detail,
                }
                for v in report.violations
            ],
        }

    @app.post("/v1/renamings", status_code=201)
    def post_renaming(body: dict = Body(...)):
        source = _algebra(body.get("source"), "/source")
        f = renaming_from_doc(body.get("renaming"), source, "/renaming")
        rid = ws.add_renaming(f)
        return {"id": rid, "renaming": renaming_to_doc(f)}

    @app.get("/v1/renamings/{rid}")
    def get_renaming(rid: str):
        f = ws.renamings.get(rid)
        if f is None:
            return _not_found("renaming", rid)
        return {"id": rid, "renaming": renaming_to_doc(f)}

    # --- modules and entailment --------------------------------------------

    @app.post("/v1/modules", status_code=201)
    def post_module(doc: dict = Body(...)):
        km = module_from_doc(doc, resolve=ws.algebras.get)
        mid = ws.add_module(km)
        return {"id": mid, "module": module_to_doc(km)}

    @app.get("/v1/modules/{mid}")
    def get_module(mid: str):
        km = ws.modules.get(mid)
        if km is None:
            return _not_found("module", mid)
        return {"id": mid, "module": module_to_doc(km)}

    @app.post("/v1/modules/{mid}/derive")
    def post_derive(mid: str, body: dict = Body(default={})):
        km = ws.modules.get(mid)
        if km is None:
            return _not_found("module", mid)
        mode = body.get("modusPonens", "tnorm")
        if mode not in ("tnorm", "interval"):
            raise SchemaError("modusPonens must be 'tnorm' or 'interval'", "/modusPonens")
        closure = derive_closure(km, modus_ponens=mode)
        if body.get("goal") is not None:
            goal = sentence_from_doc(body["goal"], km.algebra, "/goal")
            ok, step = closure.entails(goal)
            return {
                "entailed": ok,
                "goal": sentence_to_doc(goal),
                "trace": step.to_json() if step else None,
            }
        derived = sorted(
            (sentence_to_doc(s) for s, _ in closure.sentences()),
            key=canonical_json,
        )
        return {
            "arityBound": closure.arity_bound,
            "arityCapped": closure.arity_capped,
            "derived": derived,
        }

    # --- bridges ------------------------------------------------------------

    @app.post("/v1/bridges", status_code=201)
    def post_bridge(doc: dict = Body(...)):
        b = bridge_from_doc(doc, resolve_module=ws.modules.get)
        bid = ws.add_bridge(b)
        return {"id": bid, "bridge": bridge_to_doc(b)}

    @app.get("/v1/bridges/{bid}")
    def get_bridge(bid: str):
        b = ws.bridges.get(bid)
        if b is None:
            return _not_found("bridge", bid)
        return {"id": bid, "bridge": bridge_to_doc(b)}

    @app.post("/v1/bridges/{bid}/translate")
    def post_translate(bid: str, body: dict = Body(...)):
        b = ws.bridges.get(bid)
        if b is None:
            return _not_found("bridge", bid)
        s = sentence_from_doc(body.get("sentence"), b.source.algebra, "/sentence")
        return {"sentence": sentence_to_doc(translate(b, s))}

    @app.post("/v1/bridges/{bid}/verify")
    def post_verify(bid: str, body: dict = Body(default={})):
        b = ws.bridges.get(bid)
        if b is None:
            return _not_found("bridge", bid)
        samples = int(body.get("samples", 25))
        seed = int(body.get("seed", 0))
        report = is_quasi_morphism(b.source.algebra, b.target.algebra, b.renaming)
        checked, failures = harness_weak_conservative(b, samples=samples, seed=seed)
        return {
            "quasiMorphism": report.ok,
            "conclusionsChecked": checked,
            "failures": len(failures),
            "ok": report.ok and not failures,
        }

    # --- sessions -----------------------------------------------------------

    @app.post("/v1/sessions", status_code=201)
    def post_session(body: dict = Body(...)):
        source = _algebra(body.get("source"), "/source")
        target = body.get("target")
        if isinstance(target, str):
            alg = ws.algebras.get(target)
            if alg is None:
                raise SchemaError(f"unknown algebra id {target!r}", "/target")
            chain, table = alg.chain, alg.conj
        else:
            chain = chain_from_doc(target, "/target")
            table = None
            if isinstance(target, dict) and "conj" in target:
                table = table_from_doc(target["conj"], chain.n, "/target/conj")
        f = renaming_from_doc(body.get("renaming"), source, "/renaming")
        session = start(source, chain, table, f, session_id=body.get("id"))
        ws.add_session(session)
        return session_to_doc(session, include_candidates=False)

    @app.get("/v1/sessions/{sid}")
    def get_session(sid: str):
        session = ws.sessions.get(sid)
        if session is None:
            return _not_found("session", sid)
        return session_to_doc(session, include_candidates=False)

    @app.get("/v1/sessions/{sid}/candidates")
    def get_candidates(sid: str, offset: int = 0, limit: int = 20):
        session = ws.sessions.get(sid)
        if session is None:
            return _not_found("session", sid)
        page = session.candidates[offset : offset + max(limit, 0)]
        return {
            "phase": session.phase,
            "total": len(session.candidates),
            "offset": offset,
            "candidates": [candidate_to_doc(c) for c in page],
        }

    @app.post("/v1/sessions/{sid}/select")
    def post_select(sid: str, body: dict = Body(default={})):
        session = ws.sessions.get(sid)
        if session is None:
            return _not_found("session", sid)
        select(session, body.get("candidate"))
        return session_to_doc(session, include_candidates=False)

    @app.get("/v1/sessions/{sid}/result")
    def get_result(sid: str):
        session = ws.sessions.get(sid)
        if session is None:
            return _not_found("session", sid)
        if session.result is None:
            raise SessionError(f"session is {session.phase}, no result yet")
        return session.result

    return app
