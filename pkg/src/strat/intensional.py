"""Strategies as step-choosing functions over traced objects.

A Strategy maps a trace (history plus current object) to the set of steps it
permits next, together with a definedness flag: Fail is undefined everywhere,
which is not the same as being defined with no permitted steps. Strategies
that ignore the history are memoryless; finite_support materialises the
derivations a strategy generates up to a depth, and lassos_of_memoryless
witnesses the infinite ones.

memoryless_from and memoried_from invert generation: they rebuild a strategy
(as an explicit table) from a derivation set, provided the set has the
closure properties that make this possible (factor+composition closure for a
memoryless table, prefix closure for a memoried one).
"""

from __future__ import annotations

import abc
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .ars import Ars, Derivation, Lasso, Step, Trace, rotate_cycle, shortest_path_to, simple_cycles
from .errors import (
    CyclicOrder,
    MemoryRequired,
    NotCompositionClosed,
    NotFactorClosed,
    NotPrefixClosed,
)
from .extensional import (
    AbstractStrategy,
    is_composition_closed,
    is_factor_closed,
    is_prefix_closed,
)


class EvalResult(NamedTuple):
    defined: bool
    steps: tuple[Step, ...]


UNDEFINED = EvalResult(False, ())


class Strategy(abc.ABC):
    """Interface of intensional strategies."""

    @abc.abstractmethod
    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        """Permitted next steps at a trace compatible with ars."""

    @property
    @abc.abstractmethod
    def memoryless(self) -> bool:
        """True when eval never inspects the history part of the trace."""


@dataclass(frozen=True)
class LabelOrder:
    """A strict partial order on labels, stored transitively closed."""

    relation: frozenset[tuple[str, str]]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "LabelOrder":
        closure = set(pairs)
        names = {x for pair in closure for x in pair}
        changed = True
        while changed:
            changed = False
            for a, b in list(closure):
                for c in names:
                    if (b, c) in closure and (a, c) not in closure:
                        closure.add((a, c))
                        changed = True
        for name in names:
            if (name, name) in closure:
                raise CyclicOrder(name)
        return cls(frozenset(closure))

    def less(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def is_total_on(self, labels: Iterable[str]) -> bool:
        labels = tuple(labels)
        return all(
            a == b or self.less(a, b) or self.less(b, a)
            for a, b in itertools.product(labels, labels)
        )


@dataclass(frozen=True)
class Universal(Strategy):
    """Permits every out-step; defined on every object."""

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        return EvalResult(True, ars.out_steps(trace.head))

    @property
    def memoryless(self) -> bool:
        return True


@dataclass(frozen=True)
class Fail(Strategy):
    """Undefined everywhere; generates nothing."""

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        return UNDEFINED

    @property
    def memoryless(self) -> bool:
        return True


@dataclass(frozen=True)
class Greatmost(Strategy):
    """Permits the steps whose labels are maximal among the out-labels.

    Defined exactly on objects with at least one out-step. With a total order
    the choice is a single step; a partial order keeps all maximal ones.
    """

    order: LabelOrder

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        outs = ars.out_steps(trace.head)
        if not outs:
            return UNDEFINED
        keep = tuple(
            s for s in outs if not any(self.order.less(s.label, o.label) for o in outs)
        )
        return EvalResult(True, keep)

    @property
    def memoryless(self) -> bool:
        return True


@dataclass(frozen=True)
class MaxLen(Strategy):
    """Cuts off extension once the history reaches bound - 1 steps."""

    bound: int

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        if len(trace) < self.bound - 1:
            return EvalResult(True, ars.out_steps(trace.head))
        return EvalResult(True, ())

    @property
    def memoryless(self) -> bool:
        return False


@dataclass(frozen=True)
class RestrictLabels(Strategy):
    """Permits only out-steps whose label lies in the allowed set."""

    allowed: frozenset[str]

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        keep = tuple(s for s in ars.out_steps(trace.head) if s.label in self.allowed)
        return EvalResult(True, keep)

    @property
    def memoryless(self) -> bool:
        return True


@dataclass(frozen=True)
class Alternate(Strategy):
    """Alternates between two step sets, starting in the first.

    Empty history: steps from `first`. A history whose last step lies in
    `second` continues with `first` and vice versa; a last step in both allows
    both; a last step in neither leaves the strategy undefined there.
    """

    first: frozenset[Step]
    second: frozenset[Step]

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        outs = ars.out_steps(trace.head)
        if not trace.pairs:
            return EvalResult(True, tuple(s for s in outs if s in self.first))
        obj, label = trace.pairs[-1]
        last = ars.step(obj, label)
        allowed: set[Step] = set()
        defined = False
        if last in self.second:
            defined = True
            allowed.update(s for s in outs if s in self.first)
        if last in self.first:
            defined = True
            allowed.update(s for s in outs if s in self.second)
        if not defined:
            return UNDEFINED
        return EvalResult(True, ars.sorted_steps(allowed))

    @property
    def memoryless(self) -> bool:
        return False


@dataclass(frozen=True)
class ColorAlternate(Strategy):
    """Alternates label colours: after a white-labelled step, only black.

    Any coloured first step is permitted on an empty history. A last step with
    an uncoloured label leaves the strategy undefined at that trace.
    """

    white: frozenset[str]
    black: frozenset[str]

    def __post_init__(self) -> None:
        if self.white & self.black:
            raise ValueError("a label cannot be both white and black")

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        outs = ars.out_steps(trace.head)
        if not trace.pairs:
            coloured = self.white | self.black
            return EvalResult(True, tuple(s for s in outs if s.label in coloured))
        last_label = trace.pairs[-1][1]
        if last_label in self.white:
            want = self.black
        elif last_label in self.black:
            want = self.white
        else:
            return UNDEFINED
        return EvalResult(True, tuple(s for s in outs if s.label in want))

    @property
    def memoryless(self) -> bool:
        return False


@dataclass(frozen=True)
class Intersect(Strategy):
    """Pointwise intersection; defined where all children are."""

    children: tuple[Strategy, ...]

    def __post_init__(self) -> None:
        if not self.children:
            raise ValueError("intersection needs at least one child")

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        results = [c.eval(ars, trace) for c in self.children]
        if not all(r.defined for r in results):
            return UNDEFINED
        common = set(results[0].steps)
        for r in results[1:]:
            common &= set(r.steps)
        return EvalResult(True, ars.sorted_steps(common))

    @property
    def memoryless(self) -> bool:
        return all(c.memoryless for c in self.children)


@dataclass(frozen=True)
class UnionPointwise(Strategy):
    """Pointwise union; defined where some child is.

    Its extension can be strictly larger than the union of the children's
    extensions: a derivation may swap between children mid-flight.
    """

    children: tuple[Strategy, ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("union needs at least two children")

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        results = [c.eval(ars, trace) for c in self.children]
        if not any(r.defined for r in results):
            return UNDEFINED
        merged: set[Step] = set()
        for r in results:
            merged.update(r.steps)
        return EvalResult(True, ars.sorted_steps(merged))

    @property
    def memoryless(self) -> bool:
        return all(c.memoryless for c in self.children)


def _obeys(child: Strategy, ars: Ars, trace: Trace) -> bool:
    """Whether every recorded step of the trace was permitted by child."""
    for i, (obj, label) in enumerate(trace.pairs):
        step = ars.step(obj, label)
        if step is None:
            return False
        prefix = Trace(trace.pairs[:i], obj)
        if step not in child.eval(ars, prefix).steps:
            return False
    return True


@dataclass(frozen=True)
class UnionCommitted(Strategy):
    """Union that commits: once the history leaves a child, that child is out.

    Each child only contributes at traces whose every step it permitted, so
    the generated set is exactly the union of the children's generated sets.
    """

    children: tuple[Strategy, ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("union needs at least two children")

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        merged: set[Step] = set()
        defined = False
        for child in self.children:
            if not _obeys(child, ars, trace):
                continue
            r = child.eval(ars, trace)
            if r.defined:
                defined = True
                merged.update(r.steps)
        if not defined:
            return UNDEFINED
        return EvalResult(True, ars.sorted_steps(merged))

    @property
    def memoryless(self) -> bool:
        return False


@dataclass(frozen=True)
class TableEntry:
    """One row of an explicit strategy table.

    Exact rows match traces with precisely this label word (and source, when
    given); wildcard rows match any trace whose word extends the stored
    prefix. The head must match either way.
    """

    head: str
    steps: frozenset[Step]
    word: tuple[str, ...] = ()
    wildcard: bool = True
    source: str | None = None

    def __post_init__(self) -> None:
        for s in self.steps:
            if s.source != self.head:
                raise ValueError(f"table step {s.render()} does not leave {self.head}")

    def matches(self, trace: Trace) -> bool:
        if trace.head != self.head:
            return False
        if self.source is not None and trace.source != self.source:
            return False
        word = trace.label_word
        if self.wildcard:
            return word[: len(self.word)] == self.word
        return word == self.word


@dataclass(frozen=True)
class FromTable(Strategy):
    """Finite mapping from trace patterns to permitted step sets.

    Exact rows win over wildcard rows; among wildcard rows the longest stored
    prefix wins. Undefined where no row matches.
    """

    entries: tuple[TableEntry, ...]

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        best: TableEntry | None = None
        for entry in self.entries:
            if not entry.matches(trace):
                continue
            if not entry.wildcard:
                return EvalResult(True, ars.sorted_steps(entry.steps))
            if best is None or len(entry.word) > len(best.word):
                best = entry
        if best is None:
            return UNDEFINED
        return EvalResult(True, ars.sorted_steps(best.steps))

    @property
    def memoryless(self) -> bool:
        return all(
            e.wildcard and not e.word and e.source is None for e in self.entries
        )


@dataclass(frozen=True)
class AcceptFiltered(Strategy):
    """A strategy plus an accepting condition over completed traces.

    The condition does not constrain stepping; it selects which generated
    derivations count as accepted when the strategy is materialised.
    """

    child: Strategy
    condition: object

    def eval(self, ars: Ars, trace: Trace) -> EvalResult:
        return self.child.eval(ars, trace)

    @property
    def memoryless(self) -> bool:
        return self.child.memoryless


# -- combinator builders -------------------------------------------------------


def intersect(*children: Strategy) -> Intersect:
    return Intersect(tuple(children))


def union_pointwise(left: Strategy, right: Strategy) -> UnionPointwise:
    return UnionPointwise((left, right))


def union_committed(left: Strategy, right: Strategy) -> UnionCommitted:
    return UnionCommitted((left, right))


# -- generation ----------------------------------------------------------------


def finite_support(
    xi: Strategy, ars: Ars, depth: int, sources: Iterable[str] | None = None
) -> AbstractStrategy:
    """All derivations of length <= depth generated by xi.

    A derivation is generated when each of its steps is permitted by xi at
    the trace of the preceding prefix. The result is prefix-closed by
    construction and carries no lassos.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if sources is None:
        starts = list(ars.objects)
    else:
        starts = sorted(set(sources), key=ars.object_index)
    members: list[Derivation] = []
    frontier: list[Derivation] = []
    for obj in starts:
        seed = xi.eval(ars, Trace((), obj))
        for step in seed.steps:
            frontier.append(ars.derivation(obj, step.label))
    members.extend(frontier)
    for _ in range(depth - 1):
        grown: list[Derivation] = []
        for d in frontier:
            nxt = xi.eval(ars, d.trace())
            for step in nxt.steps:
                grown.append(d.extended(step.label))
        members.extend(grown)
        frontier = grown
        if not frontier:
            break
    return AbstractStrategy(ars, frozenset(members))


def induced_steps(xi: Strategy, ars: Ars) -> tuple[Step, ...]:
    """Steps a memoryless strategy permits anywhere (its sub-system)."""
    if not xi.memoryless:
        raise MemoryRequired("induced sub-system needs a memoryless strategy")
    chosen: set[Step] = set()
    for obj in ars.objects:
        chosen.update(xi.eval(ars, Trace((), obj)).steps)
    return ars.sorted_steps(chosen)


def _lassos_in(sub: Ars, sources: Iterable[str], into: Ars | None = None) -> list[Lasso]:
    """Lassos of sub, optionally rebuilt over the parent system `into`."""
    cycles = simple_cycles(sub)
    out: list[Lasso] = []
    for src in sorted(set(sources), key=sub.object_index):
        for cycle in cycles:
            on_cycle = set(cycle.targets)
            stem = shortest_path_to(sub, src, on_cycle)
            if stem is None:
                continue
            loop = rotate_cycle(cycle, stem.target)
            if into is not None:
                stem = Derivation(into, stem.source, stem.labels)
                loop = Derivation(into, loop.source, loop.labels)
            out.append(Lasso(stem, loop))
    out.sort(key=Lasso.sort_key)
    return out


def lassos_of_memoryless(
    xi: Strategy, ars: Ars, sources: Iterable[str] | None = None
) -> list[Lasso]:
    """Witnesses for the infinite derivations a memoryless strategy generates.

    One lasso per (source object, simple cycle) pair of the induced
    sub-system, with a shortest stem from the source to the cycle; raises
    MemoryRequired for memoried strategies, where the sub-system view is not
    available.
    """
    sub = ars.restrict(induced_steps(xi, ars))
    return _lassos_in(sub, ars.objects if sources is None else sources, into=ars)


# -- rebuilding strategies from derivation sets ---------------------------------


def memoryless_from(z: AbstractStrategy) -> Strategy:
    """A memoryless strategy generating exactly z (up to z's member lengths).

    Requires z to be factor-closed and composition-closed; the empty set
    yields Fail. The result is a wildcard table: object -> one-step members.
    """
    if z.lasso_part:
        raise ValueError("only finite derivation sets can be rebuilt")
    if not z.finite_part:
        return Fail()
    verdict = is_factor_closed(z)
    if not verdict:
        raise NotFactorClosed(verdict.missing)
    verdict = is_composition_closed(z)
    if not verdict:
        raise NotCompositionClosed(verdict.missing)
    per_object: dict[str, set[Step]] = {}
    for d in z.members():
        if len(d) == 1:
            per_object.setdefault(d.source, set()).add(d.steps[0])
    entries = tuple(
        TableEntry(head=obj, steps=frozenset(steps))
        for obj, steps in sorted(per_object.items(), key=lambda kv: z.ars.object_index(kv[0]))
    )
    return FromTable(entries)


def memoried_from(z: AbstractStrategy) -> Strategy:
    """A memoried strategy generating exactly z.

    Requires z to be prefix-closed; the empty set yields Fail. The table maps
    the empty trace at each object to z's one-step members there, and each
    member's trace to the steps extending it inside z.
    """
    if z.lasso_part:
        raise ValueError("only finite derivation sets can be rebuilt")
    if not z.finite_part:
        return Fail()
    verdict = is_prefix_closed(z)
    if not verdict:
        raise NotPrefixClosed(verdict.missing)
    ars = z.ars
    entries: list[TableEntry] = []
    seeds: dict[str, set[Step]] = {}
    for d in z.members():
        if len(d) == 1:
            seeds.setdefault(d.source, set()).add(d.steps[0])
    for obj, steps in sorted(seeds.items(), key=lambda kv: ars.object_index(kv[0])):
        entries.append(TableEntry(head=obj, steps=frozenset(steps), word=(), wildcard=False))
    for d in z.members():
        nxt = {
            step for step in ars.out_steps(d.target) if d.extended(step.label) in z.finite_part
        }
        entries.append(
            TableEntry(
                head=d.target,
                steps=frozenset(nxt),
                word=d.labels,
                wildcard=False,
                source=d.source,
            )
        )
    return FromTable(tuple(entries))
