"""Search for renamings and conjunction tables connecting two vocabularies.

When a proposed renaming between two algebras fails the quasi-morphism
check, the session walks through three fallback rounds: alternative
renamings into the same target algebra, alternative tables on the target
chain keeping the proposed renaming, and finally joint (renaming, table)
pairs.  At each round the caller either picks a candidate or passes; three
passes end the session without a result.
"""
from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .chain import Algebra, Chain, Table, enumerate_conj, sign_partition
from .errors import SessionError, StructuralError
from .interval import Interval, point
from .morphisms import Renaming, is_quasi_morphism


@dataclass(frozen=True)
class Metrics:
    morphism: bool
    imprecision: int
    displacement: float
    table_distance: int


@dataclass(frozen=True)
class Candidate:
    id: str
    renaming: Renaming | None
    table: Table | None
    metrics: Metrics


def _candidate_id(renaming: Renaming | None, table: Table | None) -> str:
    from .schemas import candidate_payload_id

    return candidate_payload_id(renaming, table)


def _metrics(
    renaming: Renaming | None,
    table: Table | None,
    initial: Renaming | None,
    initial_table: Table | None,
) -> Metrics:
    morphism = renaming.all_points if renaming is not None else False
    imprecision = renaming.imprecision() if renaming is not None else 0
    displacement = 0.0
    if renaming is not None and initial is not None:
        displacement = sum(
            abs(renaming(a).midpoint - initial(a).midpoint)
            for a in range(renaming.source.n)
        )
    distance = 0
    if table is not None and initial_table is not None:
        distance = sum(
            1
            for i in range(len(table))
            for j in range(len(table))
            if table[i][j] != initial_table[i][j]
        )
    return Metrics(morphism, imprecision, displacement, distance)


def rank(
    candidates: Sequence[Candidate],
    initial: Renaming | None = None,
    initial_table: Table | None = None,
) -> list[Candidate]:
    """Deterministic preference order: morphisms first, then least
    imprecision, least drift from the initial proposal, fewest table edits,
    with the candidate id as the final tiebreak."""
    rebuilt = [
        Candidate(
            c.id, c.renaming, c.table, _metrics(c.renaming, c.table, initial, initial_table)
        )
        for c in candidates
    ]
    rebuilt.sort(
        key=lambda c: (
            not c.metrics.morphism,
            c.metrics.imprecision,
            c.metrics.displacement,
            c.metrics.table_distance,
            c.id,
        )
    )
    return rebuilt


def _sign_class_images(chain: Chain) -> tuple[list[Interval], list[Interval]]:
    """Intervals a non-positive source value may map to: the target's
    non-positive and fixed interval classes.  These depend only on the
    chain, not on any table."""
    n = chain.n
    neg = chain.neg
    lower, fixed = [], []
    for lo in range(n):
        for hi in range(lo, n):
            v = Interval(lo, hi)
            nv = Interval(neg(hi), neg(lo))
            if v == nv:
                fixed.append(v)
            elif v.hi <= nv.lo:
                lower.append(v)
    return lower, fixed


def _extensions(source: Algebra, target_chain: Chain) -> list[Renaming]:
    """Every monotone assignment of non-positive values to the target's
    non-positive and fixed interval classes, the image of 0 pinned to
    [0,0], a fixed source value only going to fixed intervals, and the
    positive side forced through the negations.  Lexicographic order of
    the chosen images."""
    out = []
    part = sign_partition(source.chain)
    lower_values = part.negatives + part.fixed
    lower, fixed = _sign_class_images(target_chain)
    pool = sorted(lower + fixed)
    fixed_pool = sorted(fixed)
    slots = [
        fixed_pool if a in part.fixed else pool for a in lower_values[1:]
    ]
    for combo in product(*slots):
        images = (point(0),) + tuple(combo)
        mono = all(
            images[i].lo <= images[i + 1].lo and images[i].hi <= images[i + 1].hi
            for i in range(len(images) - 1)
        )
        if not mono:
            continue
        full: list[Interval] = [point(0)] * source.n
        for a, v in zip(lower_values, images):
            full[a] = v
        for a in part.positives:
            ref = full[source.chain.neg(a)]
            full[a] = Interval(target_chain.neg(ref.hi), target_chain.neg(ref.lo))
        out.append(Renaming(source, target_chain, tuple(full)))
    return out


def gen_renamings(
    source: Algebra, target: Algebra, initial: Renaming | None = None
) -> list[Candidate]:
    """Quasi-morphisms from source into the target's intervals, ranked."""
    found = []
    for f in _extensions(source, target.chain):
        if is_quasi_morphism(source, target, f).ok:
            found.append(Candidate(_candidate_id(f, None), f, None, _metrics(f, None, None, None)))
    return rank(found, initial)


def gen_tables(
    source: Algebra,
    target_chain: Chain,
    f: Renaming,
    initial_table: Table | None = None,
) -> list[Candidate]:
    """Tables on the target chain making ``f`` a quasi-morphism.

    Empty unless ``f`` already has the table-independent properties
    (monotone, zero-preserving, commuting with negation): no table can
    repair those.
    """
    if not _negation_morphism_shape(source, target_chain, f):
        return []
    found = []
    for table in enumerate_conj(target_chain):
        target = Algebra(target_chain, table)
        if is_quasi_morphism(source, target, f).ok:
            found.append(
                Candidate(
                    _candidate_id(f, table), f, table, _metrics(f, table, None, None)
                )
            )
    return rank(found, f, initial_table)


def gen_both(
    source: Algebra,
    target_chain: Chain,
    initial: Renaming | None = None,
    initial_table: Table | None = None,
) -> list[Candidate]:
    """Joint (renaming, table) pairs, ranked."""
    extensions = _extensions(source, target_chain)
    found = []
    for table in enumerate_conj(target_chain):
        target = Algebra(target_chain, table)
        for f in extensions:
            if is_quasi_morphism(source, target, f).ok:
                found.append(
                    Candidate(
                        _candidate_id(f, table), f, table, _metrics(f, table, None, None)
                    )
                )
    return rank(found, initial, initial_table)


def _negation_morphism_shape(source: Algebra, target_chain: Chain, f: Renaming) -> bool:
    if f.source != source or f.target_chain != target_chain:
        return False
    n = source.n
    if f(0) != point(0):
        return False
    for a in range(n - 1):
        if f(a).lo > f(a + 1).lo or f(a).hi > f(a + 1).hi:
            return False
    for a in range(n):
        img = f(source.neg(a))
        want = Interval(target_chain.neg(f(a).hi), target_chain.neg(f(a).lo))
        if img != want:
            return False
    return True


# --- sessions -----------------------------------------------------------

CHECK = "check"
SELECT_RENAMING = "select_renaming"
SELECT_TABLE = "select_table"
SELECT_BOTH = "select_both"
DONE = "done"
FAILED = "failed"


@dataclass
class Session:
    id: str
    source: Algebra
    target_chain: Chain
    target_table: Table | None
    initial: Renaming
    phase: str
    candidates: list[Candidate] = field(default_factory=list)
    history: list[dict] = field(default_factory=list)
    result: dict | None = None

    @property
    def target(self) -> Algebra | None:
        if self.target_table is None:
            return None
        return Algebra(self.target_chain, self.target_table)


def _finish(session: Session, renaming: Renaming, table: Table) -> Session:
    from .schemas import algebra_to_doc, renaming_to_doc

    target = Algebra(session.target_chain, table)
    session.phase = DONE
    session.candidates = []
    session.result = {
        "source": algebra_to_doc(session.source),
        "target": algebra_to_doc(target),
        "renaming": renaming_to_doc(renaming),
    }
    return session


def start(
    source: Algebra,
    target_chain: Chain,
    target_table: Table | None,
    f: Renaming,
    session_id: str | None = None,
) -> Session:
    """Open a session: accept ``f`` outright if it already checks out,
    otherwise enter the renaming round (or the joint round when no target
    table was given)."""
    if f.source != source or f.target_chain != target_chain:
        raise StructuralError("initial renaming does not match the session algebras")
    session = Session(
        id=session_id or uuid.uuid4().hex[:12],
        source=source,
        target_chain=target_chain,
        target_table=freeze_table_or_none(target_table),
        initial=f,
        phase=CHECK,
    )
    if session.target_table is not None:
        target = Algebra(target_chain, session.target_table)
        if is_quasi_morphism(source, target, f).ok:
            session.history.append({"phase": CHECK, "outcome": "accepted"})
            return _finish(session, f, session.target_table)
        session.history.append({"phase": CHECK, "outcome": "rejected"})
        session.phase = SELECT_RENAMING
        session.candidates = gen_renamings(source, target, f)
    else:
        session.history.append({"phase": CHECK, "outcome": "no target table"})
        session.phase = SELECT_BOTH
        session.candidates = gen_both(source, target_chain, f)
    return session


def freeze_table_or_none(table) -> Table | None:
    if table is None:
        return None
    from .chain import freeze_table

    return freeze_table(table)


def select(session: Session, candidate_id: str | None) -> Session:
    """Pick a candidate from the current round, or pass with ``None``."""
    if session.phase in (DONE, FAILED):
        raise SessionError(f"session already {session.phase}")
    if session.phase not in (SELECT_RENAMING, SELECT_TABLE, SELECT_BOTH):
        raise SessionError(f"session is not awaiting a selection ({session.phase})")

    if candidate_id is not None:
        chosen = next((c for c in session.candidates if c.id == candidate_id), None)
        if chosen is None:
            raise SessionError(f"unknown candidate {candidate_id!r}")
        session.history.append({"phase": session.phase, "selected": chosen.id})
        if session.phase == SELECT_RENAMING:
            return _finish(session, chosen.renaming, session.target_table)
        if session.phase == SELECT_TABLE:
            return _finish(session, session.initial, chosen.table)
        return _finish(session, chosen.renaming, chosen.table)

    session.history.append({"phase": session.phase, "selected": None})
    if session.phase == SELECT_RENAMING:
        session.phase = SELECT_TABLE
        session.candidates = gen_tables(
            session.source, session.target_chain, session.initial, session.target_table
        )
    elif session.phase == SELECT_TABLE:
        session.phase = SELECT_BOTH
        session.candidates = gen_both(
            session.source, session.target_chain, session.initial, session.target_table
        )
    else:
        session.phase = FAILED
        session.candidates = []
    return session
