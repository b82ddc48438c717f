"""A two-signal traffic intersection as a finite reduction system.

States track the queue length and signal state of two crossing directions
and render as `s_q1_l1_q2_l2`. Six step schemas: car1/car2 join a queue
(blocked at the bound), signal1/signal2 toggle a signal, cross1/cross2 let a
waiting car cross on green. The safety controller never_both_green blocks
exactly the signal toggles that would turn both signals green; the fairness
condition accepts the traces in which every arrival is eventually followed by
a matching crossing, and fairness_nonclosed_witness exhibits a lasso that
starves the waiting car while staying extendable to fair traces forever.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rational
from .ars import Ars, Derivation, Lasso, shortest_path_to
from .errors import NoWitnessUpToHorizon
from .intensional import FromTable, Strategy, TableEntry, Universal, induced_steps
from .logic import AcceptCondition, And, LabelWordIn, LogicalStrategy, nonclosed_witness

LABELS = ("car1", "car2", "signal1", "signal2", "cross1", "cross2")
_SIGNALS = ("signal1", "signal2")


@dataclass(frozen=True)
class TrafficState:
    """Queue lengths and signal states of the two directions."""

    q1: int
    l1: int
    q2: int
    l2: int

    @property
    def symbol(self) -> str:
        return f"s_{self.q1}_{self.l1}_{self.q2}_{self.l2}"

    @classmethod
    def from_symbol(cls, name: str) -> "TrafficState":
        head, *parts = name.split("_")
        if head != "s" or len(parts) != 4:
            raise ValueError(f"not a traffic state symbol: {name!r}")
        q1, l1, q2, l2 = (int(p) for p in parts)
        return cls(q1, l1, q2, l2)

    @property
    def both_green(self) -> bool:
        return self.l1 == 1 and self.l2 == 1


def build_traffic_ars(queue_bound: int) -> Ars:
    """The intersection system with queues bounded by queue_bound >= 1."""
    if queue_bound < 1:
        raise ValueError("queue_bound must be at least 1")
    states = [
        TrafficState(q1, l1, q2, l2)
        for q1 in range(queue_bound + 1)
        for l1 in (0, 1)
        for q2 in range(queue_bound + 1)
        for l2 in (0, 1)
    ]
    steps: list[tuple[str, str, str]] = []
    for st in states:
        if st.q1 < queue_bound:
            steps.append((st.symbol, "car1", TrafficState(st.q1 + 1, st.l1, st.q2, st.l2).symbol))
        if st.q2 < queue_bound:
            steps.append((st.symbol, "car2", TrafficState(st.q1, st.l1, st.q2 + 1, st.l2).symbol))
        steps.append((st.symbol, "signal1", TrafficState(st.q1, 1 - st.l1, st.q2, st.l2).symbol))
        steps.append((st.symbol, "signal2", TrafficState(st.q1, st.l1, st.q2, 1 - st.l2).symbol))
        if st.l1 == 1 and st.q1 >= 1:
            steps.append((st.symbol, "cross1", TrafficState(st.q1 - 1, st.l1, st.q2, st.l2).symbol))
        if st.l2 == 1 and st.q2 >= 1:
            steps.append((st.symbol, "cross2", TrafficState(st.q1, st.l1, st.q2 - 1, st.l2).symbol))
    return Ars(tuple(s.symbol for s in states), LABELS, steps)


def good_starts(ars: Ars) -> tuple[str, ...]:
    """States legal as starts for safety claims: not both signals green."""
    return tuple(s for s in ars.objects if not TrafficState.from_symbol(s).both_green)


def never_both_green(ars: Ars) -> Strategy:
    """Memoryless controller permitting everything but toggles into both-green."""
    entries = []
    for obj in ars.objects:
        keep = frozenset(
            s
            for s in ars.out_steps(obj)
            if not (s.label in _SIGNALS and TrafficState.from_symbol(s.target).both_green)
        )
        entries.append(TableEntry(head=obj, steps=keep))
    return FromTable(tuple(entries))


def _eventually_released(trigger: str, release: str) -> object:
    """Words in which every `trigger` is followed later by a `release`."""
    not_trigger = rational.alternation([rational.Sym(x) for x in LABELS if x != trigger])
    not_release = rational.alternation([rational.Sym(x) for x in LABELS if x != release])
    block = rational.concat(
        [
            rational.Star(not_trigger),
            rational.Sym(trigger),
            rational.Star(not_release),
            rational.Sym(release),
        ]
    )
    return rational.concat([rational.Star(block), rational.Star(not_trigger)])


def fairness_condition() -> AcceptCondition:
    """Accepts traces in which every arrival gets a later matching crossing."""
    return And(
        (
            LabelWordIn(_eventually_released("car1", "cross1")),
            LabelWordIn(_eventually_released("car2", "cross2")),
        )
    )


STARVATION_START = "s_1_0_1_1"


def fairness_nonclosed_witness(ars: Ars, horizon: int) -> Lasso:
    """The starvation lasso at the exemplar start, or NoWitnessUpToHorizon.

    The search is pinned to the state with one car waiting on red while the
    other direction holds green; its cross2.car2 loop keeps direction 2
    flowing forever while the queued car in direction 1 never crosses.
    """
    if horizon < 2:
        raise NoWitnessUpToHorizon(horizon)
    ls = LogicalStrategy(Universal(), fairness_condition())
    witness = nonclosed_witness(ls, ars, horizon, sources=(STARVATION_START,))
    if witness is None:
        raise NoWitnessUpToHorizon(horizon)
    return witness


def safety_violation(ars: Ars, strategy: Strategy) -> Derivation | None:
    """Shortest reach of a both-green state from a good start, if any.

    Searches the sub-system the (memoryless) strategy induces; None means no
    both-green state is reachable from any good start under the strategy.
    """
    sub = ars.restrict(induced_steps(strategy, ars))
    bad = {s for s in ars.objects if TrafficState.from_symbol(s).both_green}
    for start in good_starts(ars):
        path = shortest_path_to(sub, start, bad)
        if path is not None and not path.is_empty:
            return Derivation(ars, path.source, path.labels)
    return None


def traffic_document(queue_bound: int) -> str:
    """A .ars document for the intersection: system, fairness, queries."""
    ars = build_traffic_ars(queue_bound)
    lines = ["ars {"]
    lines.append(f"  objects: {', '.join(ars.objects)};")
    lines.append(f"  labels: {', '.join(ars.labels)};")
    lines.append("  steps:")
    for i, step in enumerate(ars.steps):
        mark = ";" if i == len(ars.steps) - 1 else ","
        lines.append(f"    ({step.source}, {step.label}, {step.target}){mark}")
    lines.append("}")
    fair1 = rational.render(_eventually_released("car1", "cross1"))
    fair2 = rational.render(_eventually_released("car2", "cross2"))
    lines.append(f"accept fair = and(word({fair1}), word({fair2}));")
    lines.append("strategy all = universal;")
    lines.append("strategy fair_runs = accept(universal, fair);")
    lines.append("query witness fair_runs horizon 6;")
    return "\n".join(lines) + "\n"
