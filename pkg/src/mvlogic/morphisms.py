"""Maps between chain algebras: renamings, morphisms and quasi-morphisms.

A renaming sends each source value to an interval of target values.  A
quasi-morphism is a renaming that preserves falsehood, commutes exactly with
negation, is monotone componentwise, and under-approximates conjunction:
the image of a conjunction is contained in the lifted conjunction of the
images.  A morphism is a quasi-morphism whose images are all points.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .chain import (
    Algebra,
    Chain,
    Table,
    freeze_table,
    sign_partition,
    validate_conj,
)
from .errors import (
    IncompatibleMapError,
    NegationMismatchError,
    StructuralError,
)
from .interval import Interval, point
from .intervals import IntervalAlgebra, leq_star


@dataclass(frozen=True)
class Renaming:
    """A total map from source values to target-chain intervals."""

    source: Algebra
    target_chain: Chain
    image: tuple[Interval, ...]

    def __post_init__(self) -> None:
        if len(self.image) != self.source.n:
            raise StructuralError(
                f"renaming has {len(self.image)} images for {self.source.n} values"
            )
        top = self.target_chain.top
        for v in self.image:
            if v.hi > top:
                raise StructuralError(f"image {v} exceeds the target chain")

    def __call__(self, a: int) -> Interval:
        return self.image[a]

    @property
    def all_points(self) -> bool:
        return all(v.is_point for v in self.image)

    def imprecision(self) -> int:
        return sum(v.width for v in self.image)


@dataclass(frozen=True)
class ConditionViolation:
    condition: str
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class MorphismReport:
    """Outcome of the quasi-morphism check.

    ``ok`` uses the containment reading of the conjunction condition; the
    spread-order reading is reported separately for diagnostics since the two
    disagree on non-point images.
    """

    ok: bool
    violations: tuple[ConditionViolation, ...]
    conj_leq_star_ok: bool
    all_points: bool

    @property
    def is_morphism(self) -> bool:
        return self.ok and self.all_points


def is_quasi_morphism(source: Algebra, target: Algebra, f: Renaming) -> MorphismReport:
    if f.source != source:
        raise StructuralError("renaming was built for a different source algebra")
    if f.target_chain != target.chain:
        raise StructuralError("renaming targets a different chain")

    n = source.n
    ia = IntervalAlgebra(target)
    bad: list[ConditionViolation] = []

    for a in range(n - 1):
        lo_ok = f(a).lo <= f(a + 1).lo
        hi_ok = f(a).hi <= f(a + 1).hi
        if not (lo_ok and hi_ok):
            bad.append(
                ConditionViolation(
                    "monotone", (a, a + 1), f"f({a})={f(a)} not below f({a + 1})={f(a + 1)}"
                )
            )
    if f(0) != point(0):
        bad.append(ConditionViolation("zero", (0,), f"f(0)={f(0)} != [0,0]"))
    for a in range(n):
        lhs = f(source.neg(a))
        rhs = ia.neg(f(a))
        if lhs != rhs:
            bad.append(
                ConditionViolation(
                    "negation", (a,), f"f(N({a}))={lhs} != N*(f({a}))={rhs}"
                )
            )

    leq_ok = True
    for a in range(n):
        for b in range(a, n):
            img = f(source.t(a, b))
            lifted = ia.conj(f(a), f(b))
            if not img.issubset(lifted):
                bad.append(
                    ConditionViolation(
                        "conjunction",
                        (a, b),
                        f"f(T({a},{b}))={img} not within T*(f({a}),f({b}))={lifted}",
                    )
                )
            if not (img == lifted or leq_star(img, lifted)):
                leq_ok = False

    return MorphismReport(
        ok=not bad,
        violations=tuple(bad),
        conj_leq_star_ok=leq_ok,
        all_points=f.all_points,
    )


def is_morphism(source: Algebra, target: Algebra, f: Renaming) -> bool:
    return is_quasi_morphism(source, target, f).is_morphism


def identity_renaming(alg: Algebra) -> Renaming:
    return Renaming(alg, alg.chain, tuple(point(a) for a in range(alg.n)))


def negation_morphisms(source: Chain, target: Chain) -> Iterator[tuple[int, ...]]:
    """All order-preserving value maps commuting with the two negations.

    Such a map is fixed by its restriction to the non-positive values: the
    restriction must stay within the target's non-positives and send 0 to 0,
    and the positive side is forced through the negations.  When the source
    has a fixed value and the target has none (odd onto even chain) there is
    no such map and the iterator is empty.
    """
    n, m = source.n, target.n
    if n % 2 == 1 and m % 2 == 0:
        return
    src_part = sign_partition(source)
    lower = src_part.negatives + src_part.fixed
    # non-positive target values: indices 0 .. ceil(m/2)-1
    codomain = list(range((m + 1) // 2))
    fixed_target = target.n // 2 if m % 2 else None

    def extend(choice: Sequence[int]) -> tuple[int, ...]:
        full = [0] * n
        for a, v in zip(lower, choice):
            full[a] = v
        for a in src_part.positives:
            full[a] = target.neg(full[source.neg(a)])
        return tuple(full)

    free = lower[1:]  # image of 0 is forced
    for combo in product(codomain, repeat=len(free)):
        choice = (0,) + combo
        if any(choice[i] > choice[i + 1] for i in range(len(choice) - 1)):
            continue
        if source.n % 2 == 1 and choice[-1] != fixed_target:
            # the fixed value must land on the target's fixed value
            continue
        yield extend(choice)


@dataclass(frozen=True)
class CompatibilityResult:
    ok: bool
    witness: tuple[int, int, int, int] | None
    detail: str = ""


def is_compatible(alg: Algebra, f: Sequence[int]) -> CompatibilityResult:
    """Whether equal images force equal images of conjunctions.

    Scans quadruples (a, b, c, d) lexicographically and reports the first
    one with f(a)=f(b), f(c)=f(d) but f(T(a,c)) != f(T(b,d)).
    """
    n = alg.n
    if len(f) != n:
        raise StructuralError(f"value map has {len(f)} entries for {n} values")
    for a in range(n):
        for b in range(n):
            if f[a] != f[b]:
                continue
            for c in range(n):
                for d in range(n):
                    if f[c] != f[d]:
                        continue
                    x, y = alg.t(a, c), alg.t(b, d)
                    if f[x] != f[y]:
                        return CompatibilityResult(
                            False,
                            (a, b, c, d),
                            f"f(T({a},{c}))={f[x]} != {f[y]}=f(T({b},{d}))",
                        )
    return CompatibilityResult(True, None)


@dataclass(frozen=True)
class Quotient:
    algebra: Algebra
    projection: tuple[int, ...]
    respects_negation: bool


def quotient(alg: Algebra, f: Sequence[int]) -> Quotient:
    """Collapse the chain along the classes of a compatible value map.

    Classes must be convex (so the quotient is again a chain) and compatible
    with the table.  The quotient takes the canonical negation of its own
    chain; whether the projection also commutes with negation is reported,
    since collapsing can break the symmetry (e.g. merging a value with its
    own negation's neighbour).
    """
    compat = is_compatible(alg, f)
    if not compat.ok:
        raise IncompatibleMapError(
            f"value map is not a congruence: {compat.detail}", compat.witness
        )
    n = alg.n
    classes: dict[int, list[int]] = {}
    for a in range(n):
        classes.setdefault(f[a], []).append(a)
    for members in classes.values():
        if members[-1] - members[0] + 1 != len(members):
            raise IncompatibleMapError(
                f"class {members} is not convex, quotient would not be a chain",
                tuple(members[:2]),
            )
    ordered = sorted(classes.values(), key=lambda ms: ms[0])
    proj = [0] * n
    for idx, members in enumerate(ordered):
        for a in members:
            proj[a] = idx
    q = len(ordered)
    reps = [ms[0] for ms in ordered]
    table = freeze_table(
        [[proj[alg.t(reps[i], reps[j])] for j in range(q)] for i in range(q)]
    )
    labels = tuple("+".join(alg.chain.labels[a] for a in ms) for ms in ordered)
    qalg = Algebra(Chain(labels), table)
    respects = all(proj[alg.neg(a)] == q - 1 - proj[a] for a in range(n))
    return Quotient(qalg, tuple(proj), respects)


@dataclass(frozen=True)
class Embedding:
    """An injective order-preserving map identifying ``sub`` inside ``sup``."""

    sub: Algebra
    sup: Algebra
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        m = self.map
        if len(m) != self.sub.n:
            raise StructuralError("embedding must be total on the subalgebra")
        if any(m[i] >= m[i + 1] for i in range(len(m) - 1)):
            raise StructuralError("embedding must be strictly increasing")
        if m[0] != 0 or m[-1] != self.sup.top:
            raise StructuralError("embedding must preserve the booleans")

    def check(self) -> bool:
        """True iff the map preserves negation and conjunction exactly."""
        sub, sup, m = self.sub, self.sup, self.map
        for a in range(sub.n):
            if sup.neg(m[a]) != m[sub.neg(a)]:
                return False
            for b in range(sub.n):
                if sup.t(m[a], m[b]) != m[sub.t(a, b)]:
                    return False
        return True


def subalgebras(alg: Algebra) -> list[Embedding]:
    """All subsets containing the booleans and closed under both operations,
    as embeddings of their induced algebras, smallest first."""
    n = alg.n
    middles = list(range(1, n - 1))
    found: list[Embedding] = []
    for bits in range(1 << len(middles)):
        subset = [0] + [middles[i] for i in range(len(middles)) if bits >> i & 1] + [n - 1]
        inside = set(subset)
        if any(alg.neg(a) not in inside for a in subset):
            continue
        if any(alg.t(a, b) not in inside for a in subset for b in subset):
            continue
        pos = {a: i for i, a in enumerate(subset)}
        table = freeze_table(
            [[pos[alg.t(a, b)] for b in subset] for a in subset]
        )
        labels = tuple(alg.chain.labels[a] for a in subset)
        found.append(Embedding(Algebra(Chain(labels), table), alg, tuple(subset)))
    found.sort(key=lambda e: (e.sub.n, e.map))
    return found


def common_subalgebras(a: Algebra, b: Algebra) -> list[tuple[Embedding, Embedding]]:
    """Pairs of embeddings of a shared algebra into both, largest first."""
    pairs = []
    for ea in subalgebras(a):
        for eb in subalgebras(b):
            if ea.sub.conj == eb.sub.conj:
                pairs.append((ea, eb))
    pairs.sort(key=lambda p: (-p[0].sub.n, p[0].map, p[1].map))
    return pairs


def extend_conj(sub: Algebra, sup_chain: Chain, embed: Sequence[int]) -> Table:
    """Grow a conjunction table from a subchain to a superchain.

    The superchain's top acts as unit; every other value is rounded down to
    the largest embedded value below it and conjoined inside the subalgebra.
    The embedding must commute with the negations, otherwise the result
    could not carry the canonical negation (typical failure: even chain
    into odd chain positions, or an asymmetric embedded subset).
    """
    emb = tuple(int(x) for x in embed)
    if len(emb) != sub.n:
        raise StructuralError("embedding must be total on the subalgebra")
    if any(emb[i] >= emb[i + 1] for i in range(len(emb) - 1)):
        raise StructuralError("embedding must be strictly increasing")
    m = sup_chain.n
    if emb[0] != 0 or emb[-1] != m - 1:
        raise StructuralError("embedding must preserve the booleans")
    for a in range(sub.n):
        if sup_chain.neg(emb[a]) != emb[sub.neg(a)]:
            raise NegationMismatchError(
                f"embedded positions are not negation-symmetric at {a}"
            )

    def below(p: int) -> int:
        # largest subalgebra value sitting at or under p; 0 always qualifies
        return max(x for x in range(sub.n) if emb[x] <= p)

    top = m - 1
    rows = []
    for p in range(m):
        row = []
        for q in range(m):
            if p == top:
                row.append(q)
            elif q == top:
                row.append(p)
            else:
                row.append(emb[sub.t(below(p), below(q))])
        rows.append(row)
    return freeze_table(rows)


def quasi_from_common(
    a: Algebra, b: Algebra, h1: Embedding, h2: Embedding
) -> Renaming:
    """Build a renaming a -> intervals over b's chain from a shared subalgebra.

    Each source value is bracketed by the nearest embedded values around it
    in ``a`` and sent to the interval their images span in ``b``.  The
    result is always a quasi-morphism; it collapses to a morphism when the
    shared algebra is all of ``a``.
    """
    if h1.sup != a or h2.sup != b:
        raise StructuralError("embeddings must target the two endpoint algebras")
    if h1.sub.conj != h2.sub.conj or h1.sub.n != h2.sub.n:
        raise StructuralError("the two embeddings must share their subalgebra")
    if not (h1.check() and h2.check()):
        raise StructuralError("embeddings must preserve the operations exactly")

    image = []
    for x in range(a.n):
        below = max(c for c in range(h1.sub.n) if h1.map[c] <= x)
        above = min(c for c in range(h1.sub.n) if h1.map[c] >= x)
        image.append(Interval(h2.map[below], h2.map[above]))
    return Renaming(a, b.chain, tuple(image))
