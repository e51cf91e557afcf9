"""Finite chains of truth values and the algebras built on them.

A chain is a totally ordered finite set of linguistic truth labels.  Labels
are presentation only: every operation below works on indices ``0..n-1``
with ``0`` = falsehood and ``n-1`` = truth.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import CapExceededError, InvalidTableError, StructuralError
from .interval import Interval

Table = tuple[tuple[int, ...], ...]

# Chains above this size are refused by the enumerator; the number of valid
# tables grows too fast for exhaustive search to stay interactive.
ENUMERATION_CAP = 9


def freeze_table(rows: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Chain:
    """Ordered truth labels; index 0 is falsehood, index n-1 is truth."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if len(self.labels) < 2:
            raise StructuralError("a chain needs at least the two boolean values")
        if len(set(self.labels)) != len(self.labels):
            raise StructuralError("chain labels must be distinct")

    @classmethod
    def standard(cls, n: int, var: str = "a") -> Chain:
        if n == 2:
            return cls(("0", "1"))
        return cls(("0",) + tuple(f"{var}{i}" for i in range(1, n - 1)) + ("1",))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def top(self) -> int:
        return len(self.labels) - 1

    def neg(self, a: int) -> int:
        return len(self.labels) - 1 - a

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructuralError(f"unknown truth label {label!r}") from None

    def __len__(self) -> int:
        return len(self.labels)


def negation(chain: Chain) -> tuple[int, ...]:
    """The unique involutive order-reversing unary map on the chain."""
    return tuple(chain.neg(i) for i in range(chain.n))


@dataclass(frozen=True)
class SignPartition:
    """Split of a chain into negative, fixed and positive values."""

    negatives: tuple[int, ...]
    fixed: tuple[int, ...]
    positives: tuple[int, ...]


def sign_partition(chain: Chain) -> SignPartition:
    n = chain.n
    half = n // 2
    if n % 2:
        return SignPartition(
            negatives=tuple(range(half)),
            fixed=(half,),
            positives=tuple(range(half + 1, n)),
        )
    return SignPartition(
        negatives=tuple(range(half)),
        fixed=(),
        positives=tuple(range(half, n)),
    )


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[AxiomViolation, ...]

    def axioms(self) -> tuple[str, ...]:
        return tuple(v.axiom for v in self.violations)


def _check_shape(chain: Chain, table: Sequence[Sequence[int]]) -> Table:
    n = chain.n
    if len(table) != n:
        raise StructuralError(f"table has {len(table)} rows, chain has {n} values")
    for i, row in enumerate(table):
        if len(row) != n:
            raise StructuralError(f"row {i} has {len(row)} entries, expected {n}")
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise StructuralError(f"entry ({i},{j}) = {x!r} is not a chain index")
    return freeze_table(table)


def validate_conj(chain: Chain, table: Sequence[Sequence[int]]) -> ValidationReport:
    """Check the five axioms; report the first witness per violated axiom.

    Shape or range problems raise StructuralError instead of being reported:
    a mis-shaped table is not a candidate at all.
    """
    t = _check_shape(chain, table)
    n = chain.n
    found: list[AxiomViolation] = []

    def first(axiom: str, witness: tuple[int, ...], detail: str) -> None:
        if all(v.axiom != axiom for v in found):
            found.append(AxiomViolation(axiom, witness, detail))

    for i in range(n):
        for j in range(n):
            if t[i][j] != t[j][i]:
                first("T1", (i, j), f"T({i},{j})={t[i][j]} but T({j},{i})={t[j][i]}")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = t[i][t[j][k]]
                rhs = t[t[i][j]][k]
                if lhs != rhs:
                    first("T2", (i, j, k), f"T({i},T({j},{k}))={lhs} != T(T({i},{j}),{k})={rhs}")
    for j in range(n):
        if t[0][j] != 0:
            first("T3", (0, j), f"T(0,{j})={t[0][j]} != 0")
    for j in range(n):
        if t[n - 1][j] != j:
            first("T4", (n - 1, j), f"T(1,{j})={t[n - 1][j]} != {j}")
    for i in range(n - 1):
        for j in range(n):
            if t[i][j] > t[i + 1][j]:
                first("T5", (i, j), f"T({i},{j})={t[i][j]} > T({i + 1},{j})={t[i + 1][j]}")

    order = {"T1": 1, "T2": 2, "T3": 3, "T4": 4, "T5": 5}
    found.sort(key=lambda v: order[v.axiom])
    return ValidationReport(ok=not found, violations=tuple(found))


@dataclass(frozen=True)
class Algebra:
    """A chain plus a conjunction table satisfying the five axioms.

    Negation and implication are not free parameters: negation is the unique
    involutive order-reversing map, implication is the residuum of the table.
    """

    chain: Chain
    conj: Table

    def __post_init__(self) -> None:
        object.__setattr__(self, "conj", _check_shape(self.chain, self.conj))
        report = validate_conj(self.chain, self.conj)
        if not report.ok:
            raise InvalidTableError(
                "conjunction table violates " + ", ".join(report.axioms()), report
            )

    @property
    def n(self) -> int:
        return self.chain.n

    @property
    def top(self) -> int:
        return self.chain.top

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return negation(self.chain)

    @cached_property
    def impl_table(self) -> Table:
        n = self.chain.n
        rows = []
        for a in range(n):
            row = []
            for b in range(n):
                # residuum: the largest c with T(a,c) <= b; c=0 always works
                c = max(c for c in range(n) if self.conj[a][c] <= b)
                row.append(c)
            rows.append(tuple(row))
        return tuple(rows)

    def t(self, a: int, b: int) -> int:
        return self.conj[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def impl(self, a: int, b: int) -> int:
        return self.impl_table[a][b]

    def disj(self, a: int, b: int) -> int:
        return self.neg(self.conj[self.neg(a)][self.neg(b)])

    def mp(self, a: int, b: int) -> Interval | None:
        return mp_interval(self, a, b)

    def lift(self, w: Interval | None) -> Interval:
        """Validate an interval against this chain's index range."""
        if w is None or not (0 <= w.lo <= w.hi <= self.top):
            raise StructuralError(f"weight {w} out of range for a {self.n}-chain")
        return w


def residuum(alg: Algebra, a: int, b: int) -> int:
    """Max c with T(a, c) <= b."""
    return alg.impl(a, b)


def disjunction(alg: Algebra, a: int, b: int) -> int:
    """De Morgan dual of the conjunction table."""
    return alg.disj(a, b)


def mp_interval(alg: Algebra, a: int, b: int) -> Interval | None:
    """Values the head of a rule may take, given value ``a`` for the premise
    and value ``b`` for the rule itself.

    Returns the preimage of ``b`` under ``I(a, .)`` which, when non-empty, is
    the contiguous run ``[T(a,b), max{c : I(a,c)=b}]``; for ``b = 1`` this is
    ``[a, 1]``.  ``None`` when ``a`` and ``b`` are inconsistent (no value of
    the head yields rule value ``b``): that is a value, not an error.
    """
    n = alg.n
    sols = [c for c in range(n) if alg.impl(a, c) == b]
    if not sols:
        return None
    # contiguity: the residuum is monotone in its second argument
    return Interval(sols[0], sols[-1])


def enumerate_conj(chain: Chain, cap: int = ENUMERATION_CAP) -> Iterator[Table]:
    """All conjunction tables on the chain, in lexicographic order of the
    free upper-triangular entries.

    Rows 0 and n-1 are forced by T3/T4 and the rest is symmetric, so the
    search fills entries (i, j) with 1 <= i <= j <= n-2 in row-major order.
    Monotonicity bounds prune as we go; associativity, the expensive axiom,
    is checked last on each completed table.
    """
    n = chain.n
    if n > cap:
        raise CapExceededError(f"enumeration capped at chains of size {cap}, got {n}")

    t = [[0] * n for _ in range(n)]
    t[n - 1] = list(range(n))
    for i in range(n):
        t[i][0] = 0
        t[0][i] = 0
        t[i][n - 1] = i
        t[n - 1][i] = i

    cells = [(i, j) for i in range(1, n - 1) for j in range(i, n - 1)]

    def associative() -> bool:
        rng = range(n)
        for i in rng:
            ti = t[i]
            for j in rng:
                tj = t[j]
                row_ij = t[ti[j]]
                for k in rng:
                    if ti[tj[k]] != row_ij[k]:
                        return False
        return True

    def fill(pos: int) -> Iterator[Table]:
        if pos == len(cells):
            if associative():
                yield freeze_table(t)
            return
        i, j = cells[pos]
        lo = max(t[i - 1][j], t[i][j - 1])
        hi = i  # T(a_i, a_j) <= min(i, j) follows from T4 + T5
        for v in range(lo, hi + 1):
            t[i][j] = v
            t[j][i] = v
            yield from fill(pos + 1)
        t[i][j] = 0
        t[j][i] = 0

    yield from fill(0)


def all_algebras(n: int, var: str = "a", cap: int = ENUMERATION_CAP) -> list[Algebra]:
    """Every algebra on the standard n-chain, enumeration order."""
    chain = Chain.standard(n, var)
    return [Algebra(chain, t) for t in enumerate_conj(chain, cap)]
