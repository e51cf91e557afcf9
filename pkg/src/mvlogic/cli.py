"""Command line front end.

Exit codes: 0 on success (and for positive verdicts), 1 for negative
verdicts (failed validation, non-entailment, failed checks), 2 for
structural problems (malformed documents, bad references, bad syntax).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import __version__
from .chain import Chain, enumerate_conj, validate_conj
from .entailment import Sentence, conjunction, derive_closure, Literal, Rule
from .errors import MVLogicError, NotDerivableError, SchemaError, StructuralError
from .generator import (
    DONE,
    FAILED,
    gen_both,
    gen_renamings,
    gen_tables,
    select,
    start,
)
from .interval import Interval
from .intervals import IntervalAlgebra
from .morphisms import is_quasi_morphism
from .schemas import (
    algebra_from_doc,
    bridge_from_doc,
    candidate_to_doc,
    canonical_json,
    chain_from_doc,
    module_from_doc,
    renaming_from_doc,
    sentence_from_doc,
    sentence_to_doc,
    session_to_doc,
)
from .translation import harness_weak_conservative, translate
from .workspace import SessionStore


def _load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON in {path}: {e}")


def _emit(doc: Any, as_json: bool, text: str | None = None) -> None:
    if as_json:
        print(canonical_json(doc))
    elif text is not None:
        print(text)


def parse_sentence_text(text: str, alg) -> Sentence:
    """Compact sentence syntax: ``p & !q -> r @ [a1,1]`` or ``p @ a2``.

    Weights may use labels or indices; a single value means a point.
    JSON objects are also accepted for symmetry with the documents.
    """
    text = text.strip()
    if text.startswith("{"):
        return sentence_from_doc(json.loads(text), alg)
    if "@" not in text:
        raise SchemaError("sentence text needs '<formula> @ <weight>'")
    formula_text, weight_text = text.rsplit("@", 1)
    weight_text = weight_text.strip()
    if weight_text.startswith("["):
        if not weight_text.endswith("]"):
            raise SchemaError(f"bad weight {weight_text!r}")
        parts = [p.strip() for p in weight_text[1:-1].split(",")]
        if len(parts) != 2:
            raise SchemaError(f"bad weight {weight_text!r}")
        lo, hi = (_value(p, alg) for p in parts)
    else:
        lo = hi = _value(weight_text, alg)
    if not 0 <= lo <= hi <= alg.top:
        raise SchemaError(f"weight [{lo},{hi}] out of order or range")
    weight = Interval(lo, hi)

    formula_text = formula_text.strip()
    if "->" in formula_text:
        prem_text, head = formula_text.rsplit("->", 1)
        head = head.strip()
        if not head or head.startswith("!"):
            raise SchemaError("rule head must be a plain atom")
        prem = tuple(_literal(p) for p in prem_text.split("&"))
        return Sentence(Rule(prem, head), weight)
    lits = [_literal(p) for p in formula_text.split("&")]
    return Sentence(conjunction(lits), weight)


def _literal(text: str) -> Literal:
    text = text.strip()
    positive = True
    while text.startswith("!"):
        positive = not positive
        text = text[1:].strip()
    if not text:
        raise SchemaError("empty literal")
    return Literal(text, positive)


def _value(text: str, alg) -> int:
    # labels take precedence: on a standard chain "1" is the top, not index 1
    text = text.strip()
    if text in alg.chain.labels:
        return alg.chain.index(text)
    if text.lstrip("-").isdigit():
        return int(text)
    raise SchemaError(f"unknown truth value {text!r}")


# --- subcommands -----------------------------------------------------------

def cmd_validate(args) -> int:
    doc = _load(args.algebra)
    chain = chain_from_doc(doc)
    from .schemas import table_from_doc

    table = table_from_doc(doc.get("conj"), chain.n, "/conj")
    report = validate_conj(chain, table)
    payload = {
        "ok": report.ok,
        "violations": [
            {"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
            for v in report.violations
        ],
    }
    if args.json:
        print(canonical_json(payload))
    elif report.ok:
        print("ok: all five axioms hold")
    else:
        for v in report.violations:
            print(f"{v.axiom} fails at {v.witness}: {v.detail}")
    return 0 if report.ok else 1


def cmd_enumerate(args) -> int:
    chain = Chain.standard(args.n)
    tables = list(enumerate_conj(chain))
    shown = tables if args.limit is None else tables[: args.limit]
    if args.json:
        print(canonical_json({
            "n": args.n,
            "count": len(tables),
            "tables": [[list(r) for r in t] for t in shown],
        }))
    else:
        print(f"{len(tables)} tables on the {args.n}-chain")
        for t in shown:
            print(";".join(",".join(str(x) for x in row) for row in t))
    return 0


def cmd_intervals(args) -> int:
    alg = algebra_from_doc(_load(args.algebra))
    ia = IntervalAlgebra(alg)
    classes = ia.sign_classes
    doc = {
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
    if args.json:
        print(canonical_json(doc))
    else:
        labels = alg.chain.labels

        def show(v: Interval) -> str:
            return labels[v.lo] if v.is_point else f"[{labels[v.lo]},{labels[v.hi]}]"

        print(f"{len(ia)} intervals over the {alg.n}-chain")
        for name, group in (
            ("negative", classes.negatives),
            ("fixed", classes.fixed),
            ("positive", classes.positives),
            ("indefinite", classes.indefinite),
        ):
            print(f"{name}: " + " ".join(show(v) for v in group))
        for a, b in ia.hasse:
            print(f"{show(a)} -> {show(b)}")
    if args.figure:
        from .figures import render_hasse

        render_hasse(alg, args.figure)
        if not args.json:
            print(f"figure written to {args.figure}")
    return 0


def cmd_report(args) -> int:
    from .figures import write_report

    alg = algebra_from_doc(_load(args.algebra))
    paths = write_report(alg, args.out)
    if args.json:
        print(canonical_json({"files": paths}))
    else:
        for p in paths:
            print(p)
    return 0


def cmd_check_qm(args) -> int:
    a = algebra_from_doc(_load(args.source))
    b = algebra_from_doc(_load(args.target))
    f = renaming_from_doc(_load(args.renaming), a)
    report = is_quasi_morphism(a, b, f)
    payload = {
        "ok": report.ok,
        "morphism": report.is_morphism,
        "conjLeqStar": report.conj_leq_star_ok,
        "violations": [
            {"condition": v.condition, "witness": list(v.witness), "detail": v.detail}
            for v in report.violations
        ],
    }
    if args.json:
        print(canonical_json(payload))
    elif report.ok:
        kind = "morphism" if report.is_morphism else "quasi-morphism"
        print(f"ok: renaming is a {kind}")
    else:
        for v in report.violations:
            print(f"{v.condition} fails: {v.detail}")
    return 0 if report.ok else 1


def _candidates_out(cands, args) -> None:
    if args.json:
        print(canonical_json({"count": len(cands), "candidates": [candidate_to_doc(c) for c in cands]}))
    else:
        print(f"{len(cands)} candidates")
        for c in cands:
            bits = [c.id]
            if c.renaming is not None:
                bits.append(
                    " ".join(f"{a}->{c.renaming(a)}" for a in range(c.renaming.source.n))
                )
            if c.table is not None:
                bits.append(";".join(",".join(str(x) for x in row) for row in c.table))
            m = c.metrics
            bits.append(
                f"(morphism={m.morphism} imprecision={m.imprecision} displacement={m.displacement})"
            )
            print("  ".join(bits))


def cmd_gen_renamings(args) -> int:
    a = algebra_from_doc(_load(args.source))
    b = algebra_from_doc(_load(args.target))
    initial = renaming_from_doc(_load(args.initial), a) if args.initial else None
    _candidates_out(gen_renamings(a, b, initial), args)
    return 0


def cmd_gen_tables(args) -> int:
    a = algebra_from_doc(_load(args.source))
    chain = chain_from_doc(_load(args.target_chain))
    f = renaming_from_doc(_load(args.renaming), a)
    _candidates_out(gen_tables(a, chain, f), args)
    return 0


def cmd_gen_both(args) -> int:
    a = algebra_from_doc(_load(args.source))
    chain = chain_from_doc(_load(args.target_chain))
    initial = renaming_from_doc(_load(args.initial), a) if args.initial else None
    _candidates_out(gen_both(a, chain, initial), args)
    return 0


def cmd_derive(args) -> int:
    km = module_from_doc(_load(args.module))
    closure = derive_closure(
        km, modus_ponens="interval" if args.interval_mp else "tnorm"
    )
    if args.goal:
        goal = parse_sentence_text(args.goal, km.algebra)
        ok, step = closure.entails(goal)
        payload = {
            "entailed": ok,
            "goal": sentence_to_doc(goal),
            "trace": step.to_json() if step else None,
        }
        if args.json:
            print(canonical_json(payload))
        else:
            print(("entailed" if ok else "not entailed") + f": {goal}")
            if step is not None:
                for s in _trace_lines(step):
                    print(s)
        return 0 if ok else 1
    derived = [
        {"sentence": sentence_to_doc(s), "rule": step.rule}
        for s, step in sorted(
            closure.sentences(), key=lambda p: canonical_json(sentence_to_doc(p[0]))
        )
    ]
    payload = {
        "arityBound": closure.arity_bound,
        "arityCapped": closure.arity_capped,
        "derived": derived,
    }
    if args.json:
        print(canonical_json(payload))
    else:
        labels = km.algebra.chain.labels
        for item in derived:
            d = item["sentence"]
            w = d["weight"]
            print(f"{_sentence_text(d)} @ [{labels[w[0]]},{labels[w[1]]}]  ({item['rule']})")
        if closure.arity_capped:
            print(f"(conjunctions capped at arity {closure.arity_bound})")
    return 0


def _sentence_text(doc: dict) -> str:
    if "fact" in doc:
        return doc["fact"]
    if "fact_conj" in doc:
        return " & ".join(doc["fact_conj"])
    return " & ".join(doc["if"]) + " -> " + doc["then"]


def _trace_lines(step, depth: int = 0) -> list[str]:
    lines = [f"{'  ' * depth}{step.rule}: {step.sentence}"]
    for p in step.parents:
        lines.extend(_trace_lines(p, depth + 1))
    return lines


def cmd_translate(args) -> int:
    b = bridge_from_doc(_load(args.bridge))
    s = parse_sentence_text(args.sentence, b.source.algebra)
    out = translate(b, s)
    if args.json:
        print(canonical_json(sentence_to_doc(out)))
    else:
        print(str(out))
    return 0


def cmd_verify_bridge(args) -> int:
    b = bridge_from_doc(_load(args.bridge))
    report = is_quasi_morphism(b.source.algebra, b.target.algebra, b.renaming)
    samples = 60 if args.exhaustive else 15
    checked, failures = harness_weak_conservative(
        b, samples=samples, seed=args.seed
    )
    ok = report.ok and not failures
    payload = {
        "quasiMorphism": report.ok,
        "conclusionsChecked": checked,
        "failures": len(failures),
        "ok": ok,
    }
    if args.json:
        print(canonical_json(payload))
    else:
        print(
            f"quasi-morphism: {report.ok}; {checked} derivable conclusions replayed, "
            f"{len(failures)} failures"
        )
    return 0 if ok else 1


def cmd_session(args) -> int:
    store = SessionStore(args.store)
    as_json = args.json

    if args.action == "start":
        session = _session_start(args)
        store.save(session)
        _emit(
            session_to_doc(session),
            as_json,
            f"session {session.id}: {session.phase} ({len(session.candidates)} candidates)",
        )
        return 0
    if args.action == "run":
        session = _session_start(args)
        while session.phase not in (DONE, FAILED):
            if args.pick == "first" and session.candidates:
                select(session, session.candidates[0].id)
            else:
                select(session, None)
        store.save(session)
        _emit(
            session.result if session.phase == DONE else {"phase": FAILED},
            as_json,
            f"session {session.id}: {session.phase}",
        )
        return 0 if session.phase == DONE else 1

    session = store.load(args.id)
    if args.action == "candidates":
        page = session.candidates[args.offset : args.offset + args.page_size]
        _emit(
            {
                "phase": session.phase,
                "total": len(session.candidates),
                "offset": args.offset,
                "candidates": [candidate_to_doc(c) for c in page],
            },
            as_json,
            "\n".join(f"{c.id}" for c in page) or "(no candidates)",
        )
        return 0
    if args.action == "select":
        choice = None if args.candidate in (None, "none") else args.candidate
        select(session, choice)
        store.save(session)
        _emit(
            session_to_doc(session),
            as_json,
            f"session {session.id}: {session.phase}",
        )
        return 0
    if args.action == "result":
        if session.phase == DONE:
            _emit(session.result, as_json, canonical_json(session.result))
            return 0
        _emit({"phase": session.phase}, as_json, f"session is {session.phase}")
        return 1
    raise SchemaError(f"unknown session action {args.action!r}")


def _session_start(args):
    a = algebra_from_doc(_load(args.source))
    target_doc = _load(args.target)
    chain = chain_from_doc(target_doc)
    table = None
    if isinstance(target_doc, dict) and "conj" in target_doc:
        from .schemas import table_from_doc

        table = table_from_doc(target_doc["conj"], chain.n, "/conj")
    f = renaming_from_doc(_load(args.renaming), a)
    return start(a, chain, table, f, session_id=getattr(args, "id", None))


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvlogic",
        description="Finite multiple-valued logics for modular rule bases.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate, "check the five table axioms")
    p.add_argument("algebra")

    p = add("enumerate-tnorms", cmd_enumerate, "all tables on the standard n-chain")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--limit", type=int, default=None, help="print at most this many tables")

    p = add("intervals", cmd_intervals, "interval carrier, sign classes and order")
    p.add_argument("algebra")
    p.add_argument("--figure", help="also draw the order diagram to this path")

    p = add("report", cmd_report, "figures and delimited views of an algebra")
    p.add_argument("algebra")
    p.add_argument("--out", required=True)

    p = add("check-qm", cmd_check_qm, "quasi-morphism conditions for a renaming")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("renaming")

    p = add("gen-renamings", cmd_gen_renamings, "renaming candidates between algebras")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--initial")

    p = add("gen-tables", cmd_gen_tables, "table candidates for a fixed renaming")
    p.add_argument("source")
    p.add_argument("target_chain")
    p.add_argument("renaming")

    p = add("gen-both", cmd_gen_both, "joint renaming and table candidates")
    p.add_argument("source")
    p.add_argument("target_chain")
    p.add_argument("--initial")

    p = add("derive", cmd_derive, "saturate a module; optionally test a goal")
    p.add_argument("module")
    p.add_argument("--goal", help="sentence text, e.g. 'p & !q -> r @ [a1,1]'")
    p.add_argument("--interval-mp", action="store_true", help="sound detachment weights")

    p = add("translate", cmd_translate, "carry a sentence across a bridge")
    p.add_argument("bridge")
    p.add_argument("sentence")

    p = add("verify-bridge", cmd_verify_bridge, "replay-check a bridge's conclusions")
    p.add_argument("bridge")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = add("session", cmd_session, "interactive candidate search")
    p.add_argument("action", choices=["start", "run", "candidates", "select", "result"])
    p.add_argument("--store", default=".mvlogic-sessions")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--renaming")
    p.add_argument("--id")
    p.add_argument("--candidate")
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--page-size", type=int, default=20)
    p.add_argument("--non-interactive", action="store_true")
    p.add_argument("--pick", choices=["first", "none"], default="first")

    p = add("serve", cmd_serve, "HTTP facade")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SchemaError, StructuralError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NotDerivableError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except MVLogicError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
