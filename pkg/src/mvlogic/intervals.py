"""The algebra of intervals over a chain algebra.

Intervals stand for imprecise truth values.  The order ``<=*`` is the
set-spread order: every element of the left interval is below every element
of the right one, so it is reflexive only on points; where a partial order
is needed (the Hasse diagram) the identity is added.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .chain import Algebra
from .interval import Interval


def leq_star(a: Interval, b: Interval) -> bool:
    """True iff hi(a) <= lo(b).  Note [x,y] <=* [x,y] iff x == y."""
    return a.hi <= b.lo


@dataclass(frozen=True)
class IntervalSignClasses:
    negatives: tuple[Interval, ...]
    fixed: tuple[Interval, ...]
    positives: tuple[Interval, ...]
    indefinite: tuple[Interval, ...]


@dataclass(frozen=True)
class IntervalAlgebra:
    """Intervals over a base algebra with the lifted operations."""

    base: Algebra

    @cached_property
    def carrier(self) -> tuple[Interval, ...]:
        n = self.base.n
        return tuple(
            Interval(lo, hi) for lo in range(n) for hi in range(lo, n)
        )

    def __len__(self) -> int:
        n = self.base.n
        return n * (n + 1) // 2

    def embed(self, a: int) -> Interval:
        return Interval(a, a)

    def neg(self, v: Interval) -> Interval:
        neg = self.base.neg
        return Interval(neg(v.hi), neg(v.lo))

    def conj(self, a: Interval, b: Interval) -> Interval:
        t = self.base.t
        return Interval(t(a.lo, b.lo), t(a.hi, b.hi))

    def disj(self, a: Interval, b: Interval) -> Interval:
        s = self.base.disj
        return Interval(s(a.lo, b.lo), s(a.hi, b.hi))

    def impl(self, a: Interval, b: Interval) -> Interval:
        # antitone in the first argument, monotone in the second
        i = self.base.impl
        return Interval(i(a.hi, b.lo), i(a.lo, b.hi))

    @cached_property
    def sign_classes(self) -> IntervalSignClasses:
        """Intervals below / fixed by / above their own negation.

        Intervals comparable with their negation in neither direction are
        indefinite and reported as a fourth class.
        """
        neg_side, fixed, pos_side, rest = [], [], [], []
        for v in self.carrier:
            nv = self.neg(v)
            if nv == v:
                fixed.append(v)
            elif leq_star(v, nv):
                neg_side.append(v)
            elif leq_star(nv, v):
                pos_side.append(v)
            else:
                rest.append(v)
        return IntervalSignClasses(
            tuple(neg_side), tuple(fixed), tuple(pos_side), tuple(rest)
        )

    @cached_property
    def hasse(self) -> tuple[tuple[Interval, Interval], ...]:
        """Cover edges of <=* patched with identity, as (lower, upper) pairs."""
        carrier = self.carrier

        def lt(a: Interval, b: Interval) -> bool:
            return a != b and leq_star(a, b)

        edges = []
        for a in carrier:
            for b in carrier:
                if lt(a, b) and not any(lt(a, w) and lt(w, b) for w in carrier):
                    edges.append((a, b))
        return tuple(edges)


def build(base: Algebra) -> IntervalAlgebra:
    return IntervalAlgebra(base)
