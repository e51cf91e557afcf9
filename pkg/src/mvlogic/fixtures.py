"""Ready-made algebras, modules and bridges used in tests and demos."""
from __future__ import annotations

from .chain import Algebra, Chain, Table, freeze_table
from .entailment import KnowledgeModule, Literal, Rule, Sentence
from .interval import Interval
from .morphisms import Renaming
from .translation import Bridge, bridge


def minimum_table(n: int) -> Table:
    return freeze_table([[min(i, j) for j in range(n)] for i in range(n)])


def lukasiewicz_table(n: int) -> Table:
    return freeze_table(
        [[max(0, i + j - (n - 1)) for j in range(n)] for i in range(n)]
    )


def drastic_table(n: int) -> Table:
    """Everything below the top annihilates."""
    return freeze_table(
        [
            [j if i == n - 1 else (i if j == n - 1 else 0) for j in range(n)]
            for i in range(n)
        ]
    )


def four_luk() -> Algebra:
    """Four values with the bottom-shifted table; the running small example."""
    return Algebra(Chain.standard(4), lukasiewicz_table(4))


def five_example() -> Algebra:
    """Five values; minimum everywhere except the first step, which
    annihilates.  Its only non-trivial subalgebras are the booleans with
    and without the fixed point."""
    table = (
        (0, 0, 0, 0, 0),
        (0, 0, 1, 1, 1),
        (0, 1, 2, 2, 2),
        (0, 1, 2, 3, 3),
        (0, 1, 2, 3, 4),
    )
    return Algebra(Chain.standard(5), table)


def seven_min() -> Algebra:
    return Algebra(Chain.standard(7, "b"), minimum_table(7))


def three_min() -> Algebra:
    return Algebra(Chain.standard(3, "b"), minimum_table(3))


def three_luk() -> Algebra:
    return Algebra(Chain.standard(3, "b"), lukasiewicz_table(3))


def demo_renaming() -> Renaming:
    """The five-to-seven renaming induced by their common boolean-plus-fixed
    subalgebra: 0 -> [0,0], a1 -> [0,b3], a2 -> [b3,b3], a3 -> [b3,1],
    1 -> [1,1]."""
    return Renaming(
        five_example(),
        seven_min().chain,
        (
            Interval(0, 0),
            Interval(0, 3),
            Interval(3, 3),
            Interval(3, 6),
            Interval(6, 6),
        ),
    )


def demo_module() -> KnowledgeModule:
    """Tiny diagnosis rule base over the five-valued example."""
    alg = five_example()
    return KnowledgeModule(
        algebra=alg,
        atoms=("fever", "cough", "flu"),
        sentences=(
            Sentence(Literal("fever"), Interval(3, 4)),
            Sentence(Literal("cough"), Interval(2, 3)),
            Sentence(
                Rule((Literal("fever"), Literal("cough")), "flu"), Interval(3, 3)
            ),
        ),
    )


def demo_target_module() -> KnowledgeModule:
    alg = seven_min()
    return KnowledgeModule(
        algebra=alg,
        atoms=("fever", "cough", "flu", "bedrest"),
        sentences=(Sentence(Rule((Literal("flu"),), "bedrest"), Interval(3, 6)),),
    )


def demo_bridge() -> Bridge:
    return bridge(demo_module(), demo_target_module(), demo_renaming())
