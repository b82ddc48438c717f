"""Predicates, accepting conditions, and the non-closedness witness search."""

from __future__ import annotations

import pytest

import helpers
from strat import (
    ACCEPT_ALL,
    AcceptFiltered,
    Alternate,
    AlternatePredicate,
    And,
    AtObject,
    CustomPredicate,
    ExplicitTraceSet,
    FalsePredicate,
    Greatmost,
    GreatmostPredicate,
    LabelWordIn,
    Lasso,
    LenAtLeast,
    LenAtMost,
    LenEq,
    LenLess,
    LogicalStrategy,
    MaxLen,
    MemoryRequired,
    Not,
    Or,
    Trace,
    TruePredicate,
    Universal,
    accepted,
    as_logical,
    finite_support,
    is_prefix_closed,
    nonclosed_witness,
    rational,
    strategy_from_predicate,
)


def _support(xi, ars, depth=6):
    return finite_support(xi, ars, depth).finite_part


class TestPredicateLifting:
    def test_true_predicate_is_universal(self):
        for ars in (helpers.alc(), helpers.ac(), helpers.aloop()):
            assert _support(strategy_from_predicate(TruePredicate()), ars) == _support(
                Universal(), ars
            )

    def test_false_predicate_generates_nothing_but_is_defined(self, alc):
        lifted = strategy_from_predicate(FalsePredicate())
        res = lifted.eval(alc, Trace((), "a"))
        assert res.defined and res.steps == ()
        assert not _support(lifted, alc)

    def test_greatmost_predicate_matches_builtin(self, alc):
        for labels in (
            ("phi1", "phi2", "phi3", "phi4"),
            ("phi4", "phi3", "phi2", "phi1"),
            ("phi3", "phi4"),
        ):
            order = helpers.chain_order(labels)
            lifted = strategy_from_predicate(GreatmostPredicate(order))
            assert _support(lifted, alc) == _support(Greatmost(order), alc)

    def test_len_less_matches_maxlen(self, ac):
        for bound in range(1, 6):
            assert _support(strategy_from_predicate(LenLess(bound)), ac) == _support(
                MaxLen(bound), ac
            )

    def test_alternate_predicate_matches_builtin(self, ac):
        pred = AlternatePredicate(frozenset({"phi1"}), frozenset({"phi2"}))
        builtin = Alternate(
            frozenset({ac.step("a", "phi1")}), frozenset({ac.step("a", "phi2")})
        )
        assert _support(strategy_from_predicate(pred), ac) == _support(builtin, ac)

    def test_custom_predicate(self, alc):
        only_phi1 = CustomPredicate(lambda word, head, label: label == "phi1", trace_free=True)
        lifted = strategy_from_predicate(only_phi1)
        assert lifted.memoryless
        assert {d.labels for d in _support(lifted, alc)} == {("phi1",)}
        parity = CustomPredicate(lambda word, head, label: len(word) % 2 == 0)
        assert not strategy_from_predicate(parity).memoryless


class TestAcceptConditions:
    def test_length_bounds(self, alc):
        t2 = alc.derivation("a", "phi1", "phi3").trace()
        assert LenAtLeast(2).accepts(t2) and not LenAtLeast(3).accepts(t2)
        assert LenAtMost(2).accepts(t2) and not LenAtMost(1).accepts(t2)
        assert LenEq(2).accepts(t2) and not LenEq(1).accepts(t2)
        assert ACCEPT_ALL.accepts(Trace((), "a"))

    def test_word_object_and_explicit(self, alc):
        t = alc.derivation("a", "phi1", "phi3", "phi2").trace()
        assert LabelWordIn(rational.parse("phi1 phi3 phi2")).accepts(t)
        assert not LabelWordIn(rational.parse("phi1*")).accepts(t)
        assert AtObject("c").accepts(t) and not AtObject("a").accepts(t)
        explicit = ExplicitTraceSet(frozenset({t}))
        assert explicit.accepts(t)
        assert not explicit.accepts(alc.derivation("a", "phi1").trace())

    def test_boolean_connectives(self, alc):
        t = alc.derivation("a", "phi1").trace()
        yes, no = LenAtLeast(0), LenAtLeast(99)
        assert And((yes, yes)).accepts(t) and not And((yes, no)).accepts(t)
        assert Or((no, yes)).accepts(t) and not Or((no, no)).accepts(t)
        assert Not(no).accepts(t) and not Not(yes).accepts(t)


class TestAsLogical:
    def test_bare_strategy_gets_accept_all(self):
        ls = as_logical(Universal())
        assert ls == LogicalStrategy(Universal(), ACCEPT_ALL)

    def test_wrappers_fold_and_conjoin(self):
        inner, outer = LenAtMost(3), AtObject("c")
        ls = as_logical(AcceptFiltered(AcceptFiltered(Universal(), inner), outer))
        assert ls.base == Universal()
        assert ls.accept == And((outer, inner))
        single = as_logical(AcceptFiltered(Universal(), inner))
        assert single.accept == inner

    def test_accepted_equals_support_under_accept_all(self, alc):
        for depth in (1, 3, 5):
            ls = as_logical(Universal())
            assert accepted(ls, alc, depth).finite_part == _support(Universal(), alc, depth)


class TestAccepted:
    def test_accepted_is_a_subset_of_support(self, aloop):
        ls = LogicalStrategy(Universal(), LenEq(3))
        acc = accepted(ls, aloop, 5)
        assert acc.finite_part <= _support(Universal(), aloop, 5)
        assert {len(d) for d in acc.finite_part} == {3}

    def test_sources_pin_the_start(self, aloop):
        ls = LogicalStrategy(Universal(), ACCEPT_ALL)
        acc = accepted(ls, aloop, 3, sources=("b",))
        assert {d.source for d in acc.finite_part} == {"b"}

    def test_accepted_sets_need_not_be_prefix_closed(self, eventual):
        ls = LogicalStrategy(Universal(), LabelWordIn(rational.parse("loop loop exit")))
        acc = accepted(ls, eventual, 3)
        assert len(acc.finite_part) == 1
        assert not is_prefix_closed(acc).holds


class TestNonclosedWitness:
    def test_horizon_validation(self, eventual):
        ls = LogicalStrategy(Universal(), ACCEPT_ALL)
        with pytest.raises(ValueError):
            nonclosed_witness(ls, eventual, 1)

    def test_memoried_base_rejected(self, eventual):
        ls = LogicalStrategy(MaxLen(3), ACCEPT_ALL)
        with pytest.raises(MemoryRequired):
            nonclosed_witness(ls, eventual, 4)

    def test_accept_all_sets_are_closed(self, aloop):
        ls = LogicalStrategy(Universal(), ACCEPT_ALL)
        assert nonclosed_witness(ls, aloop, 6) is None

    def test_bounded_length_sets_give_no_witness(self, ac):
        ls = LogicalStrategy(Universal(), LenAtMost(2))
        assert nonclosed_witness(ls, ac, 4) is None

    def test_starvation_loop_found(self, aloop):
        ls = LogicalStrategy(
            Universal(), LabelWordIn(rational.parse("(phi1 phi2)* phi1"))
        )
        expected = Lasso(aloop.empty_derivation("a"), aloop.derivation("a", "phi1", "phi2"))
        for horizon in (2, 4, 6):
            assert nonclosed_witness(ls, aloop, horizon) == expected

    def test_sources_pin_the_search(self, aloop):
        ls = LogicalStrategy(
            Universal(), LabelWordIn(rational.parse("(phi1 phi2)* phi1"))
        )
        # no accepted derivation starts at b, so nothing stays extendable there
        assert nonclosed_witness(ls, aloop, 4, sources=("b",)) is None

    def test_witness_is_sound(self, eventual):
        ls = LogicalStrategy(Universal(), LabelWordIn(rational.parse("loop* exit")))
        horizon = 4
        witness = nonclosed_witness(ls, eventual, horizon)
        assert witness is not None
        depth = horizon + len(witness.stem) + len(witness.cycle)
        members = accepted(ls, eventual, depth, sources={witness.source}).members()
        for i in range(1, max(1, horizon // len(witness.cycle)) + 1):
            pumped = witness.unroll(i)
            assert pumped not in members
            assert any(pumped.is_prefix_of(m) for m in members)
