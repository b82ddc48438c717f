"""Shared fixtures-in-code: corpus systems, strategy pools, brute oracles.

The oracles here are deliberately independent of the implementations they
check: support by filtering a raw enumeration step by step, regex matching by
word derivatives, closedness by a limit-point scan over an ambient
enumeration.
"""

from __future__ import annotations

import random
from typing import Iterable

from strat import (
    AbstractStrategy,
    AcceptFiltered,
    Alternate,
    Ars,
    ColorAlternate,
    Derivation,
    Fail,
    FromTable,
    Greatmost,
    GreatmostPredicate,
    Intersect,
    LabelOrder,
    LenAtMost,
    MaxLen,
    RestrictLabels,
    Strategy,
    TableEntry,
    TruePredicate,
    UnionCommitted,
    UnionPointwise,
    Universal,
    enumerate_derivations,
    strategy_from_predicate,
)
from strat import rational

# -- corpus systems ---------------------------------------------------------------


def alc() -> Ars:
    return Ars(
        ("a", "b", "c", "d"),
        ("phi1", "phi2", "phi3", "phi4"),
        [("a", "phi1", "b"), ("a", "phi2", "c"), ("b", "phi3", "a"), ("b", "phi4", "d")],
    )


def ac() -> Ars:
    return Ars(("a",), ("phi1", "phi2"), [("a", "phi1", "a"), ("a", "phi2", "a")])


def aloop() -> Ars:
    return Ars(("a", "b"), ("phi1", "phi2"), [("a", "phi1", "b"), ("b", "phi2", "a")])


def union_ars() -> Ars:
    return Ars(
        ("a", "b1", "b2"),
        ("phi1", "phi2", "beta1", "beta2"),
        [("a", "phi1", "b1"), ("a", "phi2", "b2"), ("b1", "beta1", "a"), ("b2", "beta2", "a")],
    )


def eventual_ars() -> Ars:
    return Ars(("a", "b"), ("loop", "exit"), [("a", "loop", "a"), ("a", "exit", "b")])


def chain_order(labels: Iterable[str]) -> LabelOrder:
    labels = tuple(labels)
    return LabelOrder.from_pairs(zip(labels, labels[1:]))


def strategy_pool(ars: Ars) -> list[tuple[str, Strategy]]:
    """A diverse pool of built-ins and combinators over one system."""
    labels = ars.labels
    k = max(1, len(labels) // 2)
    low, high = labels[:k], labels[k:]
    asc = chain_order(labels)
    desc = chain_order(reversed(labels))
    low_steps = frozenset(s for s in ars.steps if s.label in low)
    high_steps = frozenset(s for s in ars.steps if s.label in high)
    table = FromTable(
        tuple(
            TableEntry(head=obj, steps=frozenset(ars.out_steps(obj)[:1]))
            for obj in ars.objects
        )
    )
    pool: list[tuple[str, Strategy]] = [
        ("universal", Universal()),
        ("fail", Fail()),
        ("greatmost_asc", Greatmost(asc)),
        ("greatmost_desc", Greatmost(desc)),
        ("maxlen1", MaxLen(1)),
        ("maxlen3", MaxLen(3)),
        ("restrict_low", RestrictLabels(frozenset(low))),
        ("alternate", Alternate(low_steps, high_steps)),
        ("intersect", Intersect((Universal(), RestrictLabels(frozenset(low))))),
        ("union_pointwise", UnionPointwise((RestrictLabels(frozenset(low)), table))),
        ("union_committed", UnionCommitted((RestrictLabels(frozenset(low)), table))),
        ("first_step_table", table),
        ("accept_wrapped", AcceptFiltered(Universal(), LenAtMost(2))),
        ("pred_true", strategy_from_predicate(TruePredicate())),
        ("pred_greatmost", strategy_from_predicate(GreatmostPredicate(asc))),
    ]
    if high:
        pool.append(("color_alternate", ColorAlternate(frozenset(low), frozenset(high))))
    return pool


# -- oracle: support by stepwise filtering -----------------------------------------


def stepwise_support(
    xi: Strategy, ars: Ars, depth: int, sources: Iterable[str] | None = None
) -> frozenset[Derivation]:
    """Filter a raw enumeration by evaluating the strategy at every prefix."""
    allowed = set(ars.objects if sources is None else sources)
    kept = []
    for d in enumerate_derivations(ars, depth):
        if d.source not in allowed:
            continue
        if all(
            d.steps[j] in xi.eval(ars, Derivation(ars, d.source, d.labels[:j]).trace()).steps
            for j in range(len(d))
        ):
            kept.append(d)
    return frozenset(kept)


# -- oracle: regex matching by word derivatives -------------------------------------

_EMPTY = ("no-words",)
_EPS = ("empty-word",)


def _nullable(n) -> bool:
    if n is _EMPTY:
        return False
    if n is _EPS:
        return True
    if isinstance(n, rational.Sym):
        return False
    if isinstance(n, rational.Alt):
        return any(_nullable(p) for p in n.parts)
    if isinstance(n, rational.Concat):
        return all(_nullable(p) for p in n.parts)
    if isinstance(n, (rational.Star, rational.Opt)):
        return True
    if isinstance(n, rational.Plus):
        return _nullable(n.item)
    raise TypeError(n)


def _cat2(x, y):
    if x is _EMPTY or y is _EMPTY:
        return _EMPTY
    if x is _EPS:
        return y
    if y is _EPS:
        return x
    return rational.Concat((x, y))


def _alt2(x, y):
    if x is _EMPTY:
        return y
    if y is _EMPTY:
        return x
    return rational.Alt((x, y))


def _deriv(n, c: str):
    if n is _EMPTY or n is _EPS:
        return _EMPTY
    if isinstance(n, rational.Sym):
        return _EPS if n.label == c else _EMPTY
    if isinstance(n, rational.Alt):
        out = _EMPTY
        for p in n.parts:
            out = _alt2(out, _deriv(p, c))
        return out
    if isinstance(n, rational.Concat):
        head = n.parts[0]
        rest = n.parts[1] if len(n.parts) == 2 else rational.Concat(n.parts[1:])
        out = _cat2(_deriv(head, c), rest)
        if _nullable(head):
            out = _alt2(out, _deriv(rest, c))
        return out
    if isinstance(n, rational.Star):
        return _cat2(_deriv(n.item, c), n)
    if isinstance(n, rational.Plus):
        return _cat2(_deriv(n.item, c), rational.Star(n.item))
    if isinstance(n, rational.Opt):
        return _deriv(n.item, c)
    raise TypeError(n)


def brute_match(node, word: Iterable[str]) -> bool:
    """Membership by successive derivatives; no automaton involved."""
    cur = node
    for sym in word:
        cur = _deriv(cur, sym)
        if cur is _EMPTY:
            return False
    return _nullable(cur)


def all_words(alphabet: tuple[str, ...], max_len: int) -> list[tuple[str, ...]]:
    words: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    for _ in range(max_len):
        frontier = [w + (c,) for w in frontier for c in alphabet]
        words.extend(frontier)
    return words


# -- oracle: closedness as a limit-point scan ---------------------------------------


def brute_is_closed(z: AbstractStrategy, ambient_depth: int) -> bool:
    """No missing limit points: any derivation whose prefixes all extend into
    the set must already belong to it. Finite members only."""
    members = z.members()
    for d in enumerate_derivations(z.ars, ambient_depth):
        if d in z.finite_part:
            continue
        if all(any(p.is_prefix_of(m) for m in members) for p in d.prefixes()):
            return False
    return True


# -- random systems and closed sets --------------------------------------------------


def random_dag_ars(rng: random.Random, n_objects: int = 5, n_labels: int = 3) -> Ars:
    """A random acyclic system: steps only go from lower to higher index."""
    objects = tuple(f"o{i}" for i in range(n_objects))
    labels = tuple(f"l{i}" for i in range(n_labels))
    steps = []
    for i in range(n_objects - 1):
        for lab in labels:
            if rng.random() < 0.55:
                steps.append((objects[i], lab, objects[rng.randrange(i + 1, n_objects)]))
    return Ars(objects, labels, steps)


def transplant(ars: Ars, derivations: Iterable[Derivation]) -> frozenset[Derivation]:
    return frozenset(Derivation(ars, d.source, d.labels) for d in derivations)


def random_subsystem_set(rng: random.Random, ars: Ars) -> AbstractStrategy:
    """All derivations of a random sub-system: factor- and composition-closed."""
    kept = [s for s in ars.steps if rng.random() < 0.7]
    sub = ars.restrict(kept)
    if not kept:
        return AbstractStrategy(ars)
    members = transplant(ars, enumerate_derivations(sub, len(ars.objects)))
    return AbstractStrategy(ars, members)
