"""Finite abstract reduction systems and their derivations.

An Ars is a triple of object symbols, label symbols and labelled steps where
the step relation is functional: a (source, label) pair determines at most one
target. Derivations are composable step sequences; traces pair each visited
object with the label fired from it. Lassos encode eventually periodic
infinite derivations as a finite stem plus a repeated cycle.

All values here are immutable after construction and safe to share. Symbols
are interned with stable integer indices (declaration order) and every set
produced by the module is emitted sorted by (source index, label indices) so
identical inputs give byte-identical renderings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    FunctionalityViolation,
    IncompatibleTrace,
    NotComposable,
    ObjectLabelOverlap,
    UndefinedStep,
    UnknownSymbol,
)


@dataclass(frozen=True)
class Step:
    """One labelled reduction step."""

    source: str
    label: str
    target: str

    def render(self) -> str:
        return f"{self.source} -{self.label}-> {self.target}"


class Ars:
    """A finite abstract reduction system with a functional step relation."""

    __slots__ = ("objects", "labels", "steps", "_obj_index", "_lab_index", "_out", "_lookup")

    def __init__(
        self,
        objects: Iterable[str],
        labels: Iterable[str],
        steps: Iterable[Step | tuple[str, str, str]],
    ) -> None:
        objects = tuple(objects)
        labels = tuple(labels)
        for pool, kind in ((objects, "object"), (labels, "label")):
            seen: set[str] = set()
            for name in pool:
                if name in seen:
                    raise ValueError(f"duplicate {kind} symbol {name!r}")
                seen.add(name)
        overlap = sorted(set(objects) & set(labels))
        if overlap:
            raise ObjectLabelOverlap(tuple(overlap))

        obj_index = {name: i for i, name in enumerate(objects)}
        lab_index = {name: i for i, name in enumerate(labels)}

        lookup: dict[tuple[str, str], Step] = {}
        for raw in steps:
            step = raw if isinstance(raw, Step) else Step(*raw)
            for name, pool in ((step.source, obj_index), (step.target, obj_index)):
                if name not in pool:
                    raise UnknownSymbol(name)
            if step.label not in lab_index:
                raise UnknownSymbol(step.label)
            prior = lookup.get((step.source, step.label))
            if prior is not None and prior.target != step.target:
                raise FunctionalityViolation(step.source, step.label, prior.target, step.target)
            lookup[(step.source, step.label)] = step

        ordered = tuple(
            sorted(lookup.values(), key=lambda s: (obj_index[s.source], lab_index[s.label]))
        )
        out: dict[str, list[Step]] = {name: [] for name in objects}
        for step in ordered:
            out[step.source].append(step)

        self.objects = objects
        self.labels = labels
        self.steps = ordered
        self._obj_index = obj_index
        self._lab_index = lab_index
        self._out = {name: tuple(ss) for name, ss in out.items()}
        self._lookup = lookup

    # -- symbol table -----------------------------------------------------

    def has_object(self, name: str) -> bool:
        return name in self._obj_index

    def has_label(self, name: str) -> bool:
        return name in self._lab_index

    def object_index(self, name: str) -> int:
        try:
            return self._obj_index[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def label_index(self, name: str) -> int:
        try:
            return self._lab_index[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    # -- step relation ----------------------------------------------------

    def out_steps(self, obj: str) -> tuple[Step, ...]:
        """Steps leaving obj, ordered by label index."""
        self.object_index(obj)
        return self._out[obj]

    def step(self, source: str, label: str) -> Step | None:
        return self._lookup.get((source, label))

    def sorted_steps(self, steps: Iterable[Step]) -> tuple[Step, ...]:
        return tuple(
            sorted(
                set(steps),
                key=lambda s: (self._obj_index[s.source], self._lab_index[s.label]),
            )
        )

    def restrict(self, steps: Iterable[Step]) -> "Ars":
        """Sub-system over the same symbols with a subset of the steps."""
        kept = []
        for step in steps:
            if self._lookup.get((step.source, step.label)) != step:
                raise ValueError(f"{step.render()} is not a step of this system")
            kept.append(step)
        return Ars(self.objects, self.labels, kept)

    # -- derivation constructors -------------------------------------------

    def derivation(self, source: str, *labels: str) -> "Derivation":
        return Derivation(self, source, tuple(labels))

    def empty_derivation(self, source: str) -> "Derivation":
        return Derivation(self, source, ())

    def __repr__(self) -> str:
        return f"Ars({len(self.objects)} objects, {len(self.labels)} labels, {len(self.steps)} steps)"


@dataclass(frozen=True)
class Derivation:
    """A composable sequence of steps, identified by source and label word.

    The target sequence is forced by functionality and cached. The empty
    derivation at an object is a legal value (neutral for composition) but is
    never a strategy member.
    """

    ars: Ars
    source: str
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        self.targets  # walk once, eagerly, so invalid derivations never exist

    @cached_property
    def targets(self) -> tuple[str, ...]:
        """Visited objects t_0 .. t_n with t_0 the source."""
        self.ars.object_index(self.source)
        out = [self.source]
        cur = self.source
        for label in self.labels:
            step = self.ars.step(cur, label)
            if step is None:
                raise UndefinedStep(cur, label)
            cur = step.target
            out.append(cur)
        return tuple(out)

    @cached_property
    def steps(self) -> tuple[Step, ...]:
        return tuple(
            self.ars.step(self.targets[i], label)  # type: ignore[misc]
            for i, label in enumerate(self.labels)
        )

    @property
    def target(self) -> str:
        return self.targets[-1]

    @property
    def is_empty(self) -> bool:
        return not self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def sort_key(self) -> tuple:
        return (
            len(self.labels),
            self.ars.object_index(self.source),
            tuple(self.ars.label_index(l) for l in self.labels),
        )

    # -- composition and subsequences ---------------------------------------

    def compose(self, other: "Derivation") -> "Derivation":
        """self then other; the empty derivation is neutral on both sides."""
        if other.ars is not self.ars:
            raise ValueError("cannot compose derivations of different systems")
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        if self.target != other.source:
            raise NotComposable(self.target, other.source)
        return Derivation(self.ars, self.source, self.labels + other.labels)

    def extended(self, label: str) -> "Derivation":
        return Derivation(self.ars, self.source, self.labels + (label,))

    def prefixes(self) -> list["Derivation"]:
        """All non-empty prefixes, shortest first, ending with self."""
        return [Derivation(self.ars, self.source, self.labels[:k]) for k in range(1, len(self.labels) + 1)]

    def strict_prefixes(self) -> list["Derivation"]:
        return self.prefixes()[:-1]

    def factors(self) -> list["Derivation"]:
        """All non-empty contiguous subsequences, re-sourced, deduplicated."""
        seen = set()
        out = []
        for i in range(len(self.labels)):
            for j in range(i + 1, len(self.labels) + 1):
                d = Derivation(self.ars, self.targets[i], self.labels[i:j])
                if d not in seen:
                    seen.add(d)
                    out.append(d)
        out.sort(key=Derivation.sort_key)
        return out

    def is_prefix_of(self, other: "Derivation") -> bool:
        return (
            self.ars is other.ars
            and self.source == other.source
            and self.labels == other.labels[: len(self.labels)]
        )

    # -- views ---------------------------------------------------------------

    def trace(self) -> "Trace":
        pairs = tuple((self.targets[i], label) for i, label in enumerate(self.labels))
        return Trace(pairs, self.target)

    def render(self) -> str:
        parts = [self.source]
        for step in self.steps:
            parts.append(f"-{step.label}-> {step.target}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<{self.render()}>"


@dataclass(frozen=True)
class Trace:
    """A traced object: (object, fired label) pairs plus the current head."""

    pairs: tuple[tuple[str, str], ...]
    head: str

    @property
    def label_word(self) -> tuple[str, ...]:
        return tuple(label for _, label in self.pairs)

    @property
    def source(self) -> str:
        return self.pairs[0][0] if self.pairs else self.head

    def __len__(self) -> int:
        return len(self.pairs)

    def compatible(self, ars: Ars) -> bool:
        try:
            self.to_derivation(ars)
        except (IncompatibleTrace, UnknownSymbol):
            return False
        return True

    def to_derivation(self, ars: Ars) -> Derivation:
        """The derivation this trace records; raises IncompatibleTrace."""
        ars.object_index(self.head)
        for i, (obj, label) in enumerate(self.pairs):
            step = ars.step(obj, label) if ars.has_object(obj) and ars.has_label(label) else None
            if step is None:
                raise IncompatibleTrace(i, f"no step from {obj} with label {label}")
            follow = self.pairs[i + 1][0] if i + 1 < len(self.pairs) else self.head
            if step.target != follow:
                raise IncompatibleTrace(i, f"step reaches {step.target}, trace says {follow}")
        return Derivation(ars, self.source, self.label_word)

    def render(self) -> str:
        inner = "".join(f"({obj}, {label})" for obj, label in self.pairs)
        return f"<{inner}>{self.head}"


@dataclass(frozen=True)
class Lasso:
    """stem . cycle^omega: a finitely presented infinite derivation."""

    stem: Derivation
    cycle: Derivation

    def __post_init__(self) -> None:
        if self.cycle.ars is not self.stem.ars:
            raise ValueError("stem and cycle belong to different systems")
        if self.cycle.is_empty:
            raise ValueError("lasso cycle must be non-empty")
        if self.stem.target != self.cycle.source:
            raise NotComposable(self.stem.target, self.cycle.source)
        if self.cycle.target != self.cycle.source:
            raise NotComposable(self.cycle.target, self.cycle.source)

    @property
    def ars(self) -> Ars:
        return self.stem.ars

    @property
    def source(self) -> str:
        return self.stem.source

    def unroll(self, repeats: int) -> Derivation:
        """stem followed by `repeats` copies of the cycle."""
        out = self.stem
        for _ in range(repeats):
            out = out.compose(self.cycle)
        return out

    def omega_prefix(self, length: int) -> Derivation:
        """The first `length` steps of stem . cycle^omega."""
        need = length - len(self.stem)
        if need <= 0:
            return Derivation(self.ars, self.stem.source, self.stem.labels[:length])
        reps = (need + len(self.cycle) - 1) // len(self.cycle)
        full = self.unroll(reps)
        return Derivation(self.ars, full.source, full.labels[:length])

    def finite_prefixes(self, max_len: int) -> list[Derivation]:
        """Non-empty prefixes of the infinite word, lengths 1..max_len."""
        return [self.omega_prefix(k) for k in range(1, max_len + 1)]

    def sort_key(self) -> tuple:
        return (
            len(self.stem) + len(self.cycle),
            self.stem.sort_key(),
            self.cycle.sort_key(),
        )

    def render(self) -> str:
        loop = " ".join(f"-{s.label}-> {s.target}" for s in self.cycle.steps)
        return f"{self.stem.render()} ( {loop} )^w"

    def __repr__(self) -> str:
        return f"<{self.render()}>"


# -- enumeration and graph searches ------------------------------------------


def enumerate_derivations(ars: Ars, max_len: int, source: str | None = None) -> list[Derivation]:
    """All non-empty derivations of length <= max_len, optionally from source.

    Deterministic order: by length, then source index, then label indices.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if source is not None:
        ars.object_index(source)
    starts = [source] if source is not None else list(ars.objects)
    out: list[Derivation] = []
    frontier = [ars.empty_derivation(s) for s in starts]
    for _ in range(max_len):
        grown: list[Derivation] = []
        for d in frontier:
            for step in ars.out_steps(d.target):
                grown.append(d.extended(step.label))
        out.extend(grown)
        frontier = grown
        if not frontier:
            break
    out.sort(key=Derivation.sort_key)
    return out


def reachable_objects(ars: Ars, sources: Iterable[str]) -> list[str]:
    """Objects reachable from the sources (inclusive), in BFS order."""
    queue = deque()
    seen: set[str] = set()
    for s in sources:
        ars.object_index(s)
        if s not in seen:
            seen.add(s)
            queue.append(s)
    order = list(queue)
    while queue:
        cur = queue.popleft()
        for step in ars.out_steps(cur):
            if step.target not in seen:
                seen.add(step.target)
                order.append(step.target)
                queue.append(step.target)
    return order


def shortest_path_to(ars: Ars, source: str, targets: set[str]) -> Derivation | None:
    """BFS path (ties broken by step order) from source into targets."""
    ars.object_index(source)
    if source in targets:
        return ars.empty_derivation(source)
    queue = deque([ars.empty_derivation(source)])
    seen = {source}
    while queue:
        d = queue.popleft()
        for step in ars.out_steps(d.target):
            if step.target in seen:
                continue
            grown = d.extended(step.label)
            if step.target in targets:
                return grown
            seen.add(step.target)
            queue.append(grown)
    return None


def simple_cycles(ars: Ars) -> list[Derivation]:
    """All vertex-simple cycles, as derivations with source == target.

    Each cycle appears once, rooted at its minimum-index object. Parallel
    steps count as distinct cycles (two self-loops give two cycles).
    """
    found: list[Derivation] = []

    def search(root: str, current: str, labels: list[str], on_path: set[str]) -> None:
        for step in ars.out_steps(current):
            if step.target == root:
                found.append(Derivation(ars, root, tuple(labels) + (step.label,)))
            elif (
                ars.object_index(step.target) > ars.object_index(root)
                and step.target not in on_path
            ):
                on_path.add(step.target)
                labels.append(step.label)
                search(root, step.target, labels, on_path)
                labels.pop()
                on_path.remove(step.target)

    for root in ars.objects:
        search(root, root, [], {root})
    found.sort(key=Derivation.sort_key)
    return found


def rotate_cycle(cycle: Derivation, start: str) -> Derivation:
    """The same cyclic step sequence, started at `start` (must lie on it)."""
    steps = cycle.steps
    for i, step in enumerate(steps):
        if step.source == start:
            labels = tuple(s.label for s in steps[i:] + steps[:i])
            return Derivation(cycle.ars, start, labels)
    raise ValueError(f"{start} does not lie on the cycle")
