"""JSON documents for every entity, with content-addressed ids.

Wire values are always chain indices; labels appear once in each algebra's
``chain`` array.  ``canonical_json`` (sorted keys, no whitespace) is the
hashing and equality form everywhere, so the same document gets the same id
no matter which front end produced it.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Sequence

from .chain import Algebra, Chain, Table, freeze_table
from .entailment import (
    Conj,
    KnowledgeModule,
    Literal,
    Rule,
    Sentence,
    conjunction,
)
from .errors import SchemaError
from .generator import Candidate, Metrics, Session
from .interval import Interval
from .morphisms import Renaming
from .translation import Bridge


def canonical_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def content_id(doc: Any) -> str:
    return hashlib.sha256(canonical_json(doc).encode("utf-8")).hexdigest()[:12]


def _expect(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise SchemaError(message, path)


def _get(doc: dict, key: str, path: str) -> Any:
    _expect(isinstance(doc, dict), "expected an object", path)
    _expect(key in doc, f"missing key {key!r}", path)
    return doc[key]


# --- algebra --------------------------------------------------------------

def algebra_to_doc(alg: Algebra) -> dict:
    return {"chain": list(alg.chain.labels), "conj": [list(r) for r in alg.conj]}


def algebra_id(alg: Algebra) -> str:
    return content_id(algebra_to_doc(alg))


def chain_from_doc(doc: Any, path: str = "") -> Chain:
    if isinstance(doc, dict):
        doc = _get(doc, "chain", path)
        path = f"{path}/chain"
    _expect(isinstance(doc, list), "chain must be an array of labels", path)
    for i, label in enumerate(doc):
        _expect(isinstance(label, str), "labels must be strings", f"{path}/{i}")
    try:
        return Chain(tuple(doc))
    except Exception as e:
        raise SchemaError(str(e), path) from None


def table_from_doc(doc: Any, n: int, path: str = "") -> Table:
    _expect(isinstance(doc, list) and len(doc) == n, f"expected {n} rows", path)
    for i, row in enumerate(doc):
        _expect(isinstance(row, list) and len(row) == n, f"expected {n} entries", f"{path}/{i}")
        for j, x in enumerate(row):
            _expect(
                isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n,
                "entries must be chain indices",
                f"{path}/{i}/{j}",
            )
    return freeze_table(doc)


def algebra_from_doc(doc: Any, path: str = "") -> Algebra:
    chain = chain_from_doc(doc, path)
    table = table_from_doc(_get(doc, "conj", path), chain.n, f"{path}/conj")
    return Algebra(chain, table)


# --- intervals and renamings ----------------------------------------------

def interval_from_doc(doc: Any, top: int, path: str = "") -> Interval:
    _expect(
        isinstance(doc, list) and len(doc) == 2, "interval must be [lo, hi]", path
    )
    lo, hi = doc
    for k, v in (("0", lo), ("1", hi)):
        _expect(
            isinstance(v, int) and not isinstance(v, bool), "endpoints are indices", f"{path}/{k}"
        )
    _expect(0 <= lo <= hi <= top, f"endpoints must satisfy 0 <= lo <= hi <= {top}", path)
    return Interval(lo, hi)


def renaming_to_doc(r: Renaming) -> dict:
    return {
        "from": algebra_id(r.source),
        "toChain": list(r.target_chain.labels),
        "image": {str(a): r(a).to_json() for a in range(r.source.n)},
    }


def renaming_id(r: Renaming) -> str:
    return content_id(renaming_to_doc(r))


def renaming_from_doc(doc: Any, source: Algebra, path: str = "") -> Renaming:
    _expect(isinstance(doc, dict), "expected an object", path)
    if "from" in doc:
        _expect(
            doc["from"] == algebra_id(source),
            "renaming was exported for a different source algebra",
            f"{path}/from",
        )
    chain = chain_from_doc(_get(doc, "toChain", path), f"{path}/toChain")
    image_doc = _get(doc, "image", path)
    _expect(isinstance(image_doc, dict), "image must map indices to intervals", f"{path}/image")
    image = []
    for a in range(source.n):
        key = str(a)
        _expect(key in image_doc, f"missing image of {a}", f"{path}/image")
        image.append(interval_from_doc(image_doc[key], chain.top, f"{path}/image/{key}"))
    extra = set(image_doc) - {str(a) for a in range(source.n)}
    _expect(not extra, f"unexpected image keys {sorted(extra)}", f"{path}/image")
    return Renaming(source, chain, tuple(image))


# --- sentences and modules -------------------------------------------------

def _literal_from_text(text: Any, path: str) -> Literal:
    _expect(isinstance(text, str) and text.strip("!"), "expected an atom", path)
    positive = True
    while text.startswith("!"):
        positive = not positive
        text = text[1:]
    return Literal(text, positive)


def _weight_from_doc(doc: Any, alg: Algebra, path: str) -> Interval:
    if isinstance(doc, list):
        out = []
        for k, v in enumerate(doc):
            if isinstance(v, str):
                out.append(alg.chain.index(v) if v in alg.chain.labels else -1)
                _expect(out[-1] >= 0, f"unknown label {v!r}", f"{path}/{k}")
            else:
                out.append(v)
        return interval_from_doc(out, alg.top, path)
    if isinstance(doc, str):
        _expect(doc in alg.chain.labels, f"unknown label {doc!r}", path)
        idx = alg.chain.index(doc)
        return Interval(idx, idx)
    if isinstance(doc, int) and not isinstance(doc, bool):
        _expect(0 <= doc <= alg.top, "index out of range", path)
        return Interval(doc, doc)
    raise SchemaError("weight must be [lo, hi], an index or a label", path)


def sentence_from_doc(doc: Any, alg: Algebra, path: str = "") -> Sentence:
    _expect(isinstance(doc, dict), "expected an object", path)
    weight = _weight_from_doc(_get(doc, "weight", path), alg, f"{path}/weight")
    if "then" in doc or "if" in doc:
        prem_doc = _get(doc, "if", path)
        _expect(isinstance(prem_doc, list) and prem_doc, "premise must be a non-empty array", f"{path}/if")
        prem = tuple(
            _literal_from_text(x, f"{path}/if/{i}") for i, x in enumerate(prem_doc)
        )
        head = _get(doc, "then", path)
        _expect(isinstance(head, str) and not head.startswith("!"), "head must be an atom", f"{path}/then")
        return Sentence(Rule(prem, head), weight)
    if "fact" in doc:
        return Sentence(_literal_from_text(doc["fact"], f"{path}/fact"), weight)
    if "fact_conj" in doc:
        lits_doc = doc["fact_conj"]
        _expect(isinstance(lits_doc, list) and lits_doc, "expected a non-empty array", f"{path}/fact_conj")
        lits = [
            _literal_from_text(x, f"{path}/fact_conj/{i}") for i, x in enumerate(lits_doc)
        ]
        return Sentence(conjunction(lits), weight)
    raise SchemaError("sentence needs 'fact', 'fact_conj' or 'if'/'then'", path)


def sentence_to_doc(s: Sentence) -> dict:
    w = s.weight.to_json()
    f = s.formula
    if isinstance(f, Literal):
        return {"fact": str(f), "weight": w}
    if isinstance(f, Conj):
        return {"fact_conj": [str(l) for l in f.literals], "weight": w}
    return {"if": [str(l) for l in f.premise], "then": f.head, "weight": w}


def module_to_doc(km: KnowledgeModule, algebra_ref: str | None = None) -> dict:
    return {
        "atoms": list(km.atoms),
        "algebra": algebra_ref if algebra_ref else algebra_to_doc(km.algebra),
        "sentences": [sentence_to_doc(s) for s in km.sentences],
    }


def module_id(km: KnowledgeModule) -> str:
    return content_id(module_to_doc(km))


def module_from_doc(doc: Any, path: str = "", resolve=None) -> KnowledgeModule:
    _expect(isinstance(doc, dict), "expected an object", path)
    alg_doc = _get(doc, "algebra", path)
    if isinstance(alg_doc, str):
        _expect(resolve is not None, "algebra references need a workspace", f"{path}/algebra")
        alg = resolve(alg_doc)
        _expect(alg is not None, f"unknown algebra {alg_doc!r}", f"{path}/algebra")
    else:
        alg = algebra_from_doc(alg_doc, f"{path}/algebra")
    atoms_doc = _get(doc, "atoms", path)
    _expect(isinstance(atoms_doc, list), "atoms must be an array", f"{path}/atoms")
    for i, a in enumerate(atoms_doc):
        _expect(isinstance(a, str) and a and not a.startswith("!"), "atoms are plain names", f"{path}/atoms/{i}")
    sent_doc = _get(doc, "sentences", path)
    _expect(isinstance(sent_doc, list), "sentences must be an array", f"{path}/sentences")
    sentences = tuple(
        sentence_from_doc(s, alg, f"{path}/sentences/{i}") for i, s in enumerate(sent_doc)
    )
    try:
        return KnowledgeModule(alg, tuple(atoms_doc), sentences)
    except Exception as e:
        raise SchemaError(str(e), path) from None


# --- bridges ----------------------------------------------------------------

def bridge_to_doc(b: Bridge) -> dict:
    return {
        "source": module_to_doc(b.source),
        "target": module_to_doc(b.target),
        "renaming": renaming_to_doc(b.renaming),
    }


def bridge_id(b: Bridge) -> str:
    return content_id(bridge_to_doc(b))


def bridge_from_doc(doc: Any, path: str = "", resolve_module=None, verify: bool = True) -> Bridge:
    from .translation import bridge as make_bridge

    _expect(isinstance(doc, dict), "expected an object", path)
    src_doc = _get(doc, "source", path)
    tgt_doc = _get(doc, "target", path)

    def load(part: Any, part_path: str) -> KnowledgeModule:
        if isinstance(part, str):
            _expect(resolve_module is not None, "module references need a workspace", part_path)
            km = resolve_module(part)
            _expect(km is not None, f"unknown module {part!r}", part_path)
            return km
        return module_from_doc(part, part_path)

    source = load(src_doc, f"{path}/source")
    target = load(tgt_doc, f"{path}/target")
    renaming = renaming_from_doc(_get(doc, "renaming", path), source.algebra, f"{path}/renaming")
    try:
        return make_bridge(source, target, renaming, verify=verify)
    except SchemaError:
        raise
    except Exception as e:
        raise SchemaError(str(e), path) from None


# --- generator sessions ------------------------------------------------------

def candidate_payload_id(renaming: Renaming | None, table: Table | None) -> str:
    payload = {
        "renaming": renaming_to_doc(renaming) if renaming is not None else None,
        "table": [list(r) for r in table] if table is not None else None,
    }
    return "c" + content_id(payload)


def candidate_to_doc(c: Candidate) -> dict:
    return {
        "id": c.id,
        "renaming": renaming_to_doc(c.renaming) if c.renaming is not None else None,
        "table": [list(r) for r in c.table] if c.table is not None else None,
        "metrics": {
            "morphism": c.metrics.morphism,
            "imprecision": c.metrics.imprecision,
            "displacement": c.metrics.displacement,
            "tableDistance": c.metrics.table_distance,
        },
    }


def session_to_doc(s: Session, include_candidates: bool = True) -> dict:
    doc = {
        "id": s.id,
        "phase": s.phase,
        "source": algebra_to_doc(s.source),
        "targetChain": list(s.target_chain.labels),
        "targetTable": [list(r) for r in s.target_table] if s.target_table else None,
        "initial": renaming_to_doc(s.initial),
        "history": s.history,
        "result": s.result,
    }
    if include_candidates:
        doc["candidates"] = [candidate_to_doc(c) for c in s.candidates]
    return doc


def session_from_doc(doc: Any, path: str = "") -> Session:
    alg = algebra_from_doc(_get(doc, "source", path), f"{path}/source")
    chain = chain_from_doc(_get(doc, "targetChain", path), f"{path}/targetChain")
    table_doc = _get(doc, "targetTable", path)
    table = table_from_doc(table_doc, chain.n, f"{path}/targetTable") if table_doc else None
    initial = renaming_from_doc(_get(doc, "initial", path), alg, f"{path}/initial")
    session = Session(
        id=_get(doc, "id", path),
        source=alg,
        target_chain=chain,
        target_table=table,
        initial=initial,
        phase=_get(doc, "phase", path),
        history=list(_get(doc, "history", path)),
        result=doc.get("result"),
    )
    cands = []
    for i, c in enumerate(doc.get("candidates", [])):
        cpath = f"{path}/candidates/{i}"
        r = (
            renaming_from_doc(c["renaming"], alg, f"{cpath}/renaming")
            if c.get("renaming")
            else None
        )
        t = (
            table_from_doc(c["table"], chain.n, f"{cpath}/table")
            if c.get("table")
            else None
        )
        m = c.get("metrics", {})
        cands.append(
            Candidate(
                c["id"],
                r,
                t,
                Metrics(
                    m.get("morphism", False),
                    m.get("imprecision", 0),
                    m.get("displacement", 0.0),
                    m.get("tableDistance", 0),
                ),
            )
        )
    session.candidates = cands
    return session
