"""Strategies described by logic: step predicates and accepting conditions.

A characteristic predicate decides, per trace and candidate label, whether a
step is permitted; lifting one gives an intensional strategy. An accepting
condition selects which completed traces count, so a logical strategy (base
strategy plus condition) generates a derivation set that need not be
prefix-closed. nonclosed_witness searches, up to a horizon, for a lasso whose
finite truncations always remain extendable to accepted derivations without
ever being accepted themselves: a finitely presented limit point outside the
accepted set.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Callable, Iterable

from . import rational
from .ars import Ars, Derivation, Lasso, Trace
from .errors import MemoryRequired
from .extensional import AbstractStrategy
from .intensional import (
    AcceptFiltered,
    EvalResult,
    LabelOrder,
    Strategy,
    _lassos_in,
    finite_support,
    induced_steps,
)

# -- characteristic predicates ---------------------------------------------------


class Predicate(abc.ABC):
    """Decides whether a candidate label is permitted after a trace."""

    @abc.abstractmethod
    def holds(self, ars: Ars, trace: Trace, label: str) -> bool: ...

    @property
    @abc.abstractmethod
    def memoryless(self) -> bool: ...


@dataclass(frozen=True)
class TruePredicate(Predicate):
    def holds(self, ars: Ars, trace: Trace, label: str) -> bool:
        return True

    @property
    def memoryless(self) -> bool:
        return True


@dataclass(frozen=True)
class FalsePredicate(Predicate):
    def holds(self, ars: Ars, trace: Trace, label: str) -> bool:
        return False

    @property
    def memoryless(self) -> bool:
        return True


@dataclass(frozen=True)
class GreatmostPredicate(Predicate):
    """No out-label of the head is strictly above the candidate."""

    order: LabelOrder

    def holds(self, ars: Ars, trace: Trace, label: str) -> bool:
        return not any(
            self.order.less(label, s.label) for s in ars.out_steps(trace.head)
        )

    @property
    def memoryless(self) -> bool:
        return True


@dataclass(frozen=True)
class LenLess(Predicate):
    """Permits extension while the history is shorter than bound - 1.

    Matches MaxLen(bound) step for step, so lifting it and the built-in
    generate the same derivations.
    """

    bound: int

    def holds(self, ars: Ars, trace: Trace, label: str) -> bool:
        return len(trace) < self.bound - 1

    @property
    def memoryless(self) -> bool:
        return False


@dataclass(frozen=True)
class AlternatePredicate(Predicate):
    """Label-set alternation, starting in the first set."""

    first: frozenset[str]
    second: frozenset[str]

    def holds(self, ars: Ars, trace: Trace, label: str) -> bool:
        if not trace.pairs:
            return label in self.first
        last = trace.pairs[-1][1]
        return (last in self.second and label in self.first) or (
            last in self.first and label in self.second
        )

    @property
    def memoryless(self) -> bool:
        return False


@dataclass(frozen=True)
class CustomPredicate(Predicate):
    """Wraps a callable over (label word, head object, candidate label)."""

    fn: Callable[[tuple[str, ...], str, str], bool]
    trace_free: bool = False

    def holds(self, ars: Ars, trace: Trace, label: str) -> bool:
        return self.fn(trace.label_word, trace.head, label)

    @property
    def memoryless(self) -> bool:
        return self.trace_free


@dataclass(frozen=True)
class Predicated(Strategy):
    """The intensional strategy a predicate describes (defined everywhere)."""

    pred: Predicate

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        keep = tuple(
            s for s in ars.out_steps(trace.head) if self.pred.holds(ars, trace, s.label)
        )
        return EvalResult(True, keep)

    @property
    def memoryless(self) -> bool:
        return self.pred.memoryless


def strategy_from_predicate(pred: Predicate) -> Strategy:
    return Predicated(pred)


# -- accepting conditions ----------------------------------------------------------


class AcceptCondition(abc.ABC):
    """Decides whether a completed trace is accepted."""

    @abc.abstractmethod
    def accepts(self, trace: Trace) -> bool: ...


@dataclass(frozen=True)
class LabelWordIn(AcceptCondition):
    """The trace's label word lies in a rational language."""

    expr: object

    def accepts(self, trace: Trace) -> bool:
        return rational.matches(self.expr, trace.label_word)


@dataclass(frozen=True)
class LenAtLeast(AcceptCondition):
    bound: int

    def accepts(self, trace: Trace) -> bool:
        return len(trace) >= self.bound


@dataclass(frozen=True)
class LenAtMost(AcceptCondition):
    bound: int

    def accepts(self, trace: Trace) -> bool:
        return len(trace) <= self.bound


@dataclass(frozen=True)
class LenEq(AcceptCondition):
    bound: int

    def accepts(self, trace: Trace) -> bool:
        return len(trace) == self.bound


@dataclass(frozen=True)
class AtObject(AcceptCondition):
    """The trace ends at the given object."""

    obj: str

    def accepts(self, trace: Trace) -> bool:
        return trace.head == self.obj


@dataclass(frozen=True)
class ExplicitTraceSet(AcceptCondition):
    traces: frozenset[Trace]

    def accepts(self, trace: Trace) -> bool:
        return trace in self.traces


@dataclass(frozen=True)
class And(AcceptCondition):
    parts: tuple[AcceptCondition, ...]

    def accepts(self, trace: Trace) -> bool:
        return all(p.accepts(trace) for p in self.parts)


@dataclass(frozen=True)
class Or(AcceptCondition):
    parts: tuple[AcceptCondition, ...]

    def accepts(self, trace: Trace) -> bool:
        return any(p.accepts(trace) for p in self.parts)


@dataclass(frozen=True)
class Not(AcceptCondition):
    part: AcceptCondition

    def accepts(self, trace: Trace) -> bool:
        return not self.part.accepts(trace)


ACCEPT_ALL: AcceptCondition = LenAtLeast(0)


# -- logical strategies -------------------------------------------------------------


@dataclass(frozen=True)
class LogicalStrategy:
    base: Strategy
    accept: AcceptCondition


def as_logical(xi: Strategy) -> LogicalStrategy:
    """View any strategy as a logical one, folding accept wrappers into one.

    A chain of accept wrappers conjoins its conditions; a bare strategy gets
    the always-true condition (its generated set is then its support).
    """
    conditions: list[AcceptCondition] = []
    node = xi
    while isinstance(node, AcceptFiltered):
        conditions.append(node.condition)  # type: ignore[arg-type]
        node = node.child
    if not conditions:
        return LogicalStrategy(node, ACCEPT_ALL)
    if len(conditions) == 1:
        return LogicalStrategy(node, conditions[0])
    return LogicalStrategy(node, And(tuple(conditions)))


def accepted(
    ls: LogicalStrategy, ars: Ars, depth: int, sources: Iterable[str] | None = None
) -> AbstractStrategy:
    """Members of the base's support (up to depth) whose trace is accepted."""
    support = finite_support(ls.base, ars, depth, sources)
    kept = frozenset(d for d in support.finite_part if ls.accept.accepts(d.trace()))
    return AbstractStrategy(ars, kept)


def nonclosed_witness(
    ls: LogicalStrategy, ars: Ars, horizon: int, sources: Iterable[str] | None = None
) -> Lasso | None:
    """Bounded search for a lasso witnessing non-closedness of the accepted set.

    A candidate lasso (|stem| + |cycle| <= horizon, from the base's induced
    sub-system) is a witness when every pumped truncation stem . cycle^i for
    i = 1..horizon//|cycle| is a prefix of some accepted derivation within
    depth horizon + |stem| + |cycle| and is never itself accepted: along the
    loop, acceptance stays reachable but is never attained. Returns the first
    witness in deterministic order, or None (a semi-decision: no witness up to
    the horizon is not a closedness proof).
    """
    if horizon < 2:
        raise ValueError("horizon must be at least 2")
    if not ls.base.memoryless:
        raise MemoryRequired("witness search needs a memoryless base strategy")
    sub = ars.restrict(induced_steps(ls.base, ars))
    candidates = [
        l
        for l in _lassos_in(sub, ars.objects if sources is None else sources, into=ars)
        if len(l.stem) + len(l.cycle) <= horizon
    ]
    member_cache: dict[tuple[int, str], tuple[Derivation, ...]] = {}
    for lasso in candidates:
        depth = horizon + len(lasso.stem) + len(lasso.cycle)
        key = (depth, lasso.source)
        if key not in member_cache:
            member_cache[key] = accepted(ls, ars, depth, sources={lasso.source}).members()
        members = member_cache[key]
        member_set = set(members)
        pumps = max(1, horizon // len(lasso.cycle))
        good = True
        for i in range(1, pumps + 1):
            pumped = lasso.unroll(i)
            if pumped in member_set:
                good = False
                break
            if not any(pumped.is_prefix_of(m) for m in members):
                good = False
                break
        if good:
            return lasso
    return None
