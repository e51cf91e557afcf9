"""Carrying weighted sentences across a renaming between two algebras.

A bridge fixes a source module, a target module and a renaming between
their algebras.  Sentences keep their shape; only the weight moves, taking
the hull of the images of its endpoints.  Because renamings are quasi-
morphisms rather than morphisms, translation does not commute with
derivation on the nose; what survives is the witness property: anything
derivable from the translated premises is the weakening of the translation
of something derivable at the source.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .chain import Algebra
from .entailment import (
    AND_INTRO,
    MODUS_PONENS,
    MODUS_PONENS_T,
    NOT_INTRO,
    PREMISE,
    WEAKEN,
    Closure,
    KnowledgeModule,
    Literal,
    Rule,
    Sentence,
    Step,
    conjunction,
    derive_closure,
    formula_atoms,
)
from .errors import MVLogicError, NotDerivableError, StructuralError
from .interval import Interval
from .intervals import IntervalAlgebra
from .morphisms import Renaming, is_quasi_morphism


@dataclass(frozen=True)
class Bridge:
    source: KnowledgeModule
    target: KnowledgeModule
    renaming: Renaming


def bridge(
    source: KnowledgeModule, target: KnowledgeModule, renaming: Renaming, *, verify: bool = True
) -> Bridge:
    """Build a bridge, by default refusing non-quasi-morphism renamings."""
    if renaming.source != source.algebra:
        raise StructuralError("renaming does not start at the source algebra")
    if renaming.target_chain != target.algebra.chain:
        raise StructuralError("renaming does not land on the target chain")
    if verify:
        report = is_quasi_morphism(source.algebra, target.algebra, renaming)
        if not report.ok:
            raise StructuralError(
                "renaming is not a quasi-morphism: "
                + "; ".join(v.detail for v in report.violations)
            )
    return Bridge(source, target, renaming)


def translate_weight(renaming: Renaming, w: Interval) -> Interval:
    """Hull of the endpoint images; exact on morphisms."""
    return Interval(renaming(w.lo).lo, renaming(w.hi).hi)


def translate(b: Bridge, s: Sentence) -> Sentence:
    b.source.algebra.lift(s.weight)
    return Sentence(s.formula, translate_weight(b.renaming, s.weight))


def _atoms_of(gamma: tuple[Sentence, ...]) -> tuple[str, ...]:
    atoms: set[str] = set()
    for s in gamma:
        atoms |= formula_atoms(s.formula)
    return tuple(sorted(atoms))


def translated_module(b: Bridge, gamma: tuple[Sentence, ...]) -> KnowledgeModule:
    return KnowledgeModule(
        b.target.algebra, _atoms_of(gamma), tuple(translate(b, s) for s in gamma)
    )


def source_module(b: Bridge, gamma: tuple[Sentence, ...]) -> KnowledgeModule:
    return KnowledgeModule(b.source.algebra, _atoms_of(gamma), gamma)


def replay_witness(b: Bridge, gamma: tuple[Sentence, ...], step: Step) -> Sentence:
    """Re-run a target-side derivation with the source operators.

    Leaves must be translations of sentences in ``gamma``; every inner step
    reapplies the operator of its rule tag over the source algebra.  The
    weakening steps the engine adds on entailment queries are skipped, so
    the witness is the strongest source sentence the trace supports.
    """
    alg = b.source.algebra
    ia = IntervalAlgebra(alg)
    by_translation: dict[tuple, Sentence] = {}
    for s in gamma:
        key = (s.formula, translate(b, s).weight)
        by_translation.setdefault(key, s)

    def rebuild(st: Step) -> Sentence:
        if st.rule == PREMISE:
            key = (st.sentence.formula, st.sentence.weight)
            try:
                return by_translation[key]
            except KeyError:
                raise NotDerivableError(
                    f"leaf {st.sentence} is not the translation of a premise"
                ) from None
        if st.rule == WEAKEN:
            return rebuild(st.parents[0])
        parents = [rebuild(p) for p in st.parents]
        if st.rule == NOT_INTRO:
            (p,) = parents
            lit = p.formula
            assert isinstance(lit, Literal)
            return Sentence(lit.negate(), ia.neg(p.weight))
        if st.rule == AND_INTRO:
            p, q = parents
            lits = []
            for part in (p.formula, q.formula):
                lits.extend(
                    part.literals if not isinstance(part, Literal) else [part]
                )
            return Sentence(conjunction(lits), ia.conj(p.weight, q.weight))
        if st.rule in (MODUS_PONENS_T, MODUS_PONENS):
            p, r = parents
            if not isinstance(r.formula, Rule):
                p, r = r, p
            assert isinstance(r.formula, Rule)
            if st.rule == MODUS_PONENS_T:
                w = ia.conj(p.weight, r.weight)
            else:
                from .entailment import _mp_star

                w = _mp_star(alg, p.weight, r.weight)
                if w is None:
                    raise NotDerivableError("detachment is empty at the source")
            return Sentence(Literal(r.formula.head), w)
        raise MVLogicError(f"unknown rule tag {st.rule!r}")

    return rebuild(step)


def check_map(
    b: Bridge, gamma: tuple[Sentence, ...], e: Sentence, **options
) -> bool:
    """Does derivability of ``e`` from ``gamma`` carry over to the target?"""
    src = source_module(b, gamma)
    ok, _ = derive_closure(src, **options).entails(e)
    if not ok:
        return True
    tgt = translated_module(b, gamma)
    ok, _ = derive_closure(tgt, **options).entails(translate(b, e))
    return ok


def check_weak_conservative(
    b: Bridge, gamma: tuple[Sentence, ...], e_prime: Sentence, **options
) -> tuple[bool, Sentence]:
    """Find a source witness for a target-derivable conclusion.

    Requires ``e_prime`` to be derivable from the translated premises;
    returns whether the replayed witness is source-derivable and maps back
    under the translation into a strengthening of ``e_prime``.
    """
    tgt = translated_module(b, gamma)
    closure = derive_closure(tgt, **options)
    ok, step = closure.entails(e_prime)
    if not ok:
        raise NotDerivableError(f"{e_prime} is not derivable from the translated set")
    witness = replay_witness(b, gamma, step)
    src = source_module(b, gamma)
    src_ok, _ = derive_closure(src, **options).entails(witness)
    back = translate(b, witness)
    covers = back.formula == e_prime.formula and back.weight.issubset(e_prime.weight)
    return (src_ok and covers, witness)


def weak_conservative_report(
    b: Bridge, closure: Closure, gamma: tuple[Sentence, ...]
) -> list[tuple[Sentence, Sentence, bool]]:
    """Check the witness property for every minimal derived sentence."""
    out = []
    for s, step in closure.sentences():
        witness = replay_witness(b, gamma, step)
        src = source_module(b, gamma)
        src_ok, _ = derive_closure(src).entails(witness)
        back = translate(b, witness)
        out.append((s, witness, src_ok and back.weight.issubset(s.weight)))
    return out


def harness_weak_conservative(
    b: Bridge,
    *,
    atoms: tuple[str, ...] = ("p", "q", "r"),
    samples: int = 25,
    max_sentences: int = 3,
    seed: int = 0,
    **options,
) -> tuple[int, list[tuple[tuple[Sentence, ...], Sentence]]]:
    """Sample premise sets and verify every derivable conclusion replays.

    Returns the number of conclusions checked and the list of failures as
    (premises, conclusion) pairs; an empty list means the property held on
    every sample.
    """
    rng = random.Random(seed)
    alg = b.source.algebra
    checked = 0
    failures: list[tuple[tuple[Sentence, ...], Sentence]] = []
    for _ in range(samples):
        gamma = tuple(
            _random_sentence(rng, alg, atoms) for _ in range(rng.randint(1, max_sentences))
        )
        tgt = translated_module(b, gamma)
        closure = derive_closure(tgt, **options)
        for s, step in closure.sentences():
            checked += 1
            try:
                witness = replay_witness(b, gamma, step)
                src_ok, _ = derive_closure(source_module(b, gamma), **options).entails(
                    witness
                )
                back = translate(b, witness)
                good = src_ok and back.weight.issubset(s.weight)
            except MVLogicError:
                good = False
            if not good:
                failures.append((gamma, s))
    return checked, failures


def _random_sentence(rng: random.Random, alg: Algebra, atoms: tuple[str, ...]) -> Sentence:
    def literal() -> Literal:
        return Literal(rng.choice(atoms), rng.random() < 0.7)

    lo = rng.randrange(alg.n)
    hi = rng.randrange(lo, alg.n)
    w = Interval(lo, hi)
    shape = rng.random()
    if shape < 0.45:
        return Sentence(literal(), w)
    if shape < 0.7:
        return Sentence(conjunction([literal(), literal()]), w)
    prem = tuple(literal() for _ in range(rng.randint(1, 2)))
    return Sentence(Rule(prem, rng.choice(atoms)), w)
