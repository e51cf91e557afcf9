"""Weighted sentences over a chain algebra and the derivation engine.

The language is deliberately small: facts are literals or conjunctions of
literals, rules have a literal-conjunction premise and an atomic head, and
every sentence carries an interval weight.  Conjunctions are kept as sorted
multisets, and double negation is normalised away at construction, so the
structural axioms (idempotence-free reordering, double negation) need no
inference steps of their own.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence, Union

from .chain import Algebra
from .errors import CapExceededError, StructuralError, UndeclaredAtomError
from .interval import Interval, point
from .intervals import IntervalAlgebra


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    positive: bool = True

    def negate(self) -> Literal:
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else f"!{self.atom}"


@dataclass(frozen=True)
class Conj:
    """A multiset of at least two literals, kept sorted."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if len(self.literals) < 2:
            raise StructuralError("use the literal itself for a one-term conjunction")
        object.__setattr__(self, "literals", tuple(sorted(self.literals)))

    @property
    def arity(self) -> int:
        return len(self.literals)

    def __str__(self) -> str:
        return " & ".join(str(l) for l in self.literals)


@dataclass(frozen=True)
class Rule:
    premise: tuple[Literal, ...]
    head: str

    def __post_init__(self) -> None:
        if not self.premise:
            raise StructuralError("a rule needs a non-empty premise")
        object.__setattr__(self, "premise", tuple(sorted(self.premise)))

    @property
    def premise_formula(self) -> Formula:
        return conjunction(self.premise)

    def __str__(self) -> str:
        return " & ".join(str(l) for l in self.premise) + f" -> {self.head}"


Formula = Union[Literal, Conj, Rule]


def conjunction(literals: Sequence[Literal]) -> Formula:
    """Canonical conjunction: a lone literal stays a literal."""
    lits = tuple(literals)
    if not lits:
        raise StructuralError("empty conjunction")
    if len(lits) == 1:
        return lits[0]
    return Conj(lits)


def formula_atoms(formula: Formula) -> set[str]:
    if isinstance(formula, Literal):
        return {formula.atom}
    if isinstance(formula, Conj):
        return {l.atom for l in formula.literals}
    return {l.atom for l in formula.premise} | {formula.head}


def formula_arity(formula: Formula) -> int:
    if isinstance(formula, Conj):
        return formula.arity
    if isinstance(formula, Rule):
        return len(formula.premise)
    return 1


@dataclass(frozen=True)
class Sentence:
    formula: Formula
    weight: Interval

    def __str__(self) -> str:
        return f"({self.formula}, {self.weight})"


@dataclass(frozen=True)
class KnowledgeModule:
    """A signature of atoms plus weighted sentences over one algebra."""

    algebra: Algebra
    atoms: tuple[str, ...]
    sentences: tuple[Sentence, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if len(set(self.atoms)) != len(self.atoms):
            raise StructuralError("duplicate atoms in the signature")
        declared = set(self.atoms)
        for s in self.sentences:
            missing = formula_atoms(s.formula) - declared
            if missing:
                raise UndeclaredAtomError(
                    f"sentence {s} uses undeclared atoms {sorted(missing)}"
                )
            self.algebra.lift(s.weight)


Valuation = Mapping[str, int]


def eval_formula(alg: Algebra, v: Valuation, formula: Formula) -> int:
    if isinstance(formula, Literal):
        value = v[formula.atom]
        return value if formula.positive else alg.neg(value)
    if isinstance(formula, Conj):
        out = eval_formula(alg, v, formula.literals[0])
        for lit in formula.literals[1:]:
            out = alg.t(out, eval_formula(alg, v, lit))
        return out
    prem = eval_formula(alg, v, formula.premise_formula)
    return alg.impl(prem, v[formula.head])


def satisfies(alg: Algebra, v: Valuation, s: Sentence) -> bool:
    return s.weight.contains(eval_formula(alg, v, s.formula))


def valuations(alg: Algebra, atoms: Sequence[str]) -> Iterator[Valuation]:
    for combo in itertools.product(range(alg.n), repeat=len(atoms)):
        yield dict(zip(atoms, combo))


def semantic_entails(
    km: KnowledgeModule, s: Sentence, max_valuations: int = 1_000_000
) -> bool:
    """Brute-force entailment: every model of the module satisfies ``s``."""
    alg = km.algebra
    total = alg.n ** len(km.atoms)
    if total > max_valuations:
        raise CapExceededError(
            f"{total} valuations exceed the cap of {max_valuations}"
        )
    for v in valuations(alg, km.atoms):
        if all(satisfies(alg, v, g) for g in km.sentences):
            if not satisfies(alg, v, s):
                return False
    return True


# --- derivation ---------------------------------------------------------

PREMISE = "premise"
WEAKEN = "RI-1"
NOT_INTRO = "RI-2"
AND_INTRO = "RI-3"
MODUS_PONENS = "RI-4"
MODUS_PONENS_T = "RI-4'"


@dataclass(frozen=True)
class Step:
    """One node of a derivation DAG."""

    rule: str
    parents: tuple[Step, ...]
    sentence: Sentence

    def walk(self) -> Iterator[Step]:
        seen: set[int] = set()
        stack = [self]
        while stack:
            step = stack.pop()
            if id(step) in seen:
                continue
            seen.add(id(step))
            yield step
            stack.extend(step.parents)

    def to_json(self) -> dict:
        from .schemas import sentence_to_doc

        return {
            "rule": self.rule,
            "sentence": sentence_to_doc(self.sentence),
            "premises": [p.to_json() for p in self.parents],
        }


def replay_step(alg: Algebra, step: Step) -> bool:
    """Recompute every weight in the DAG from its premises; exact match."""
    ia = IntervalAlgebra(alg)
    for s in step.walk():
        ws = [p.sentence.weight for p in s.parents]
        if s.rule == PREMISE:
            continue
        if s.rule == WEAKEN:
            if len(ws) != 1 or not ws[0].issubset(s.sentence.weight):
                return False
        elif s.rule == NOT_INTRO:
            if len(ws) != 1 or ia.neg(ws[0]) != s.sentence.weight:
                return False
        elif s.rule in (AND_INTRO, MODUS_PONENS_T):
            if len(ws) != 2 or ia.conj(ws[0], ws[1]) != s.sentence.weight:
                return False
        elif s.rule == MODUS_PONENS:
            if len(ws) != 2 or _mp_star(alg, ws[0], ws[1]) != s.sentence.weight:
                return False
        else:
            return False
    return True


def _mp_star(alg: Algebra, v1: Interval, v2: Interval) -> Interval | None:
    """Interval form of the detachment value: endpointwise, hulled."""
    lo = alg.mp(v1.lo, v2.lo)
    hi = alg.mp(v1.hi, v2.hi)
    if lo is None or hi is None:
        return None
    return Interval(lo.lo, hi.hi)


class Closure:
    """The saturation of a module under the inference rules.

    Weakening is implicit: for every formula only the inclusion-minimal
    weight intervals are stored (an antichain), each with the step that
    produced it, and a sentence is derivable iff its weight contains one of
    the stored intervals.
    """

    def __init__(
        self,
        module: KnowledgeModule,
        entries: dict[Formula, list[tuple[Interval, Step]]],
        arity_bound: int,
        arity_capped: bool,
    ) -> None:
        self.module = module
        self.entries = entries
        self.arity_bound = arity_bound
        self.arity_capped = arity_capped

    def formulas(self) -> list[Formula]:
        return list(self.entries)

    def minimal(self, formula: Formula) -> list[tuple[Interval, Step]]:
        return list(self.entries.get(formula, ()))

    def entails(self, s: Sentence) -> tuple[bool, Step | None]:
        self.module.algebra.lift(s.weight)
        for w, step in self.entries.get(s.formula, ()):
            if w.issubset(s.weight):
                if w == s.weight:
                    return True, step
                return True, Step(WEAKEN, (step,), s)
        return False, None

    def sentences(self) -> Iterator[tuple[Sentence, Step]]:
        for formula, pairs in self.entries.items():
            for w, step in pairs:
                yield Sentence(formula, w), step


def derive_closure(
    km: KnowledgeModule,
    *,
    modus_ponens: str = "tnorm",
    include_not: bool = True,
    max_arity: int | None = None,
) -> Closure:
    """Saturate the module under the inference rules.

    ``modus_ponens`` picks the detachment weight: ``"tnorm"`` combines the
    premise and rule weights with the lifted conjunction (cheap, complete
    for upper weights but unsound in general), ``"interval"`` uses the
    detachment interval (sound everywhere, may be wider).  Conjunction
    arity is capped at the largest arity present in the input unless
    ``max_arity`` overrides it.
    """
    if modus_ponens not in ("tnorm", "interval"):
        raise StructuralError(f"unknown modus ponens mode {modus_ponens!r}")
    alg = km.algebra
    ia = IntervalAlgebra(alg)
    bound = max_arity if max_arity is not None else max(
        [formula_arity(s.formula) for s in km.sentences], default=1
    )
    bound = max(bound, 1)

    entries: dict[Formula, list[tuple[Interval, Step]]] = {}
    rules: list[tuple[Rule, Interval, Step]] = []
    work: deque[tuple[Formula, Interval, Step]] = deque()
    capped = False

    def insert(formula: Formula, w: Interval, step: Step) -> None:
        current = entries.setdefault(formula, [])
        for w0, _ in current:
            if w0.issubset(w):
                return
        current[:] = [(w0, s0) for w0, s0 in current if not w.issubset(w0)]
        current.append((w, step))
        work.append((formula, w, step))

    for s in km.sentences:
        step = Step(PREMISE, (), s)
        if isinstance(s.formula, Rule):
            rules.append((s.formula, s.weight, step))
        insert(s.formula, s.weight, step)

    def fire_mp(
        prem_w: Interval, prem_step: Step, rule: Rule, rule_w: Interval, rule_step: Step
    ) -> None:
        if modus_ponens == "tnorm":
            w = ia.conj(prem_w, rule_w)
            tag = MODUS_PONENS_T
        else:
            w = _mp_star(alg, prem_w, rule_w)
            tag = MODUS_PONENS
            if w is None:
                return
        head = Literal(rule.head)
        insert(head, w, Step(tag, (prem_step, rule_step), Sentence(head, w)))

    while work:
        formula, w, step = work.popleft()
        if entries.get(formula) is None or (w, step) not in entries[formula]:
            continue  # superseded by a smaller interval

        if isinstance(formula, Literal) and include_not:
            neg = formula.negate()
            nw = ia.neg(w)
            insert(neg, nw, Step(NOT_INTRO, (step,), Sentence(neg, nw)))

        if isinstance(formula, (Literal, Conj)):
            lits = (formula,) if isinstance(formula, Literal) else formula.literals
            snapshot = [
                (other, pairs)
                for other, pairs in entries.items()
                if isinstance(other, (Literal, Conj))
            ]
            for other, pairs in snapshot:
                olits = (other,) if isinstance(other, Literal) else other.literals
                if len(lits) + len(olits) > bound:
                    capped = True
                    continue
                merged = conjunction(tuple(lits) + tuple(olits))
                for ow, ostep in list(pairs):
                    mw = ia.conj(w, ow)
                    insert(
                        merged, mw, Step(AND_INTRO, (step, ostep), Sentence(merged, mw))
                    )
            for rule, rw, rstep in rules:
                if rule.premise_formula == formula:
                    fire_mp(w, step, rule, rw, rstep)

        if isinstance(formula, Rule):
            for pw, pstep in list(entries.get(formula.premise_formula, ())):
                fire_mp(pw, pstep, formula, w, step)

    return Closure(km, entries, bound, capped)


def entails(km: KnowledgeModule, s: Sentence, **options) -> tuple[bool, Step | None]:
    return derive_closure(km, **options).entails(s)
