"""The .ars document language: lexing, validation, canonical form, builders."""

from __future__ import annotations

import pytest

from strat import (
    AcceptFiltered,
    Alternate,
    And,
    AtObject,
    Fail,
    Greatmost,
    Intersect,
    LabelWordIn,
    LenAtLeast,
    LenAtMost,
    LenEq,
    MaxLen,
    Not,
    RestrictLabels,
    SpecLangError,
    UnionCommitted,
    UnionPointwise,
    Universal,
    UnknownSymbol,
    speclang,
)
from strat.speclang import (
    ALen,
    ARef,
    Diagnostic,
    QApply,
    QCheck,
    QEnumerate,
    QWitness,
    SAccept,
    SRestrict,
    build_accept,
    build_ars,
    build_order,
    build_strategy,
    parse,
    serialize,
)

CANONICAL = """ars {
  objects: a, b;
  labels: l1, l2;
  steps:
    (a, l1, b),
    (b, l2, a);
}
order o {
  l1 < l2;
}
accept short = len <= 2;
strategy all = universal;
query enumerate all depth 3;
"""


def _col(text: str, needle: str, occurrence: int = 1) -> int:
    """1-based column of a substring in a single-line document."""
    pos = -1
    for _ in range(occurrence):
        pos = text.index(needle, pos + 1)
    return pos + 1


def _diags(text: str) -> tuple[Diagnostic, ...]:
    with pytest.raises(SpecLangError) as err:
        parse(text)
    return err.value.diagnostics


MINI = "ars { objects: a, b; labels: l1, l2; steps: (a, l1, b), (b, l2, a); }"


class TestParsing:
    def test_document_contents(self):
        doc = parse(CANONICAL)
        assert doc.objects == ("a", "b")
        assert doc.labels == ("l1", "l2")
        assert doc.steps == (("a", "l1", "b"), ("b", "l2", "a"))
        assert doc.orders == (("o", (("l1", "l2"),)),)
        assert doc.accepts == (("short", ALen("<=", 2)),)
        assert doc.strategies[0][0] == "all"
        assert doc.queries == (QEnumerate("all", 3, None),)

    def test_comments_and_whitespace(self):
        text = "# heading\nars { # inline\n objects: a; labels: l; steps: ; }\n"
        doc = parse(text)
        assert doc.objects == ("a",) and doc.steps == ()

    def test_positions_recorded(self):
        doc = parse(CANONICAL)
        assert doc.positions[("ars",)] == (1, 1)
        assert doc.positions[("order", "o")][0] == 8

    def test_equality_ignores_layout(self):
        squashed = " ".join(CANONICAL.split())
        assert parse(squashed) == parse(CANONICAL)


class TestCanonicalForm:
    def test_serialize_golden(self):
        assert serialize(parse(CANONICAL)) == CANONICAL

    def test_round_trip_identity(self):
        doc = parse(MINI + " strategy s = restrict({l2, l1});")
        assert parse(serialize(doc)) == doc

    def test_empty_steps_render(self):
        doc = parse("ars { objects: a; labels: l; steps: ; }")
        assert serialize(doc) == "ars {\n  objects: a;\n  labels: l;\n  steps: ;\n}\n"

    def test_steps_sorted_by_symbol_indices(self):
        doc = parse("ars { objects: a, b; labels: l1, l2; steps: (b, l2, a), (a, l1, b); }")
        assert doc.steps == (("a", "l1", "b"), ("b", "l2", "a"))

    def test_label_sets_sorted_and_deduped(self):
        doc = parse(MINI + " strategy s = restrict({l2, l1, l2});")
        assert doc.get_strategy("s") == SRestrict(("l1", "l2"))

    def test_order_pair_canonicalisation(self):
        text = (
            "ars { objects: a; labels: l1, l2, l3; steps: ; }"
            " order o { l2 < l3; l1 < l2; l1 < l2; }"
        )
        doc = parse(text)
        assert doc.get_order("o") == (("l1", "l2"), ("l2", "l3"))

    def test_strategies_sorted_accepts_kept_in_declaration_order(self):
        text = (
            MINI
            + " accept zz = len < 3; accept aa = not(zz);"
            + " strategy z = universal; strategy a = fail;"
        )
        doc = parse(text)
        assert [n for n, _ in doc.accepts] == ["zz", "aa"]
        assert [n for n, _ in doc.strategies] == ["a", "z"]
        assert parse(serialize(doc)) == doc


class TestDiagnostics:
    def test_unknown_label_position(self):
        text = "ars { objects: a; labels: l; steps: (a, zz, a); }"
        (diag,) = _diags(text)
        assert (diag.line, diag.col) == (1, _col(text, "zz"))
        assert diag.message == "unknown label 'zz'"

    def test_unknown_object_position(self):
        text = "ars { objects: a; labels: l; steps: (a, l, zz); }"
        (diag,) = _diags(text)
        assert (diag.line, diag.col) == (1, _col(text, "zz"))
        assert diag.message == "unknown object 'zz'"

    def test_functionality_violation(self):
        text = "ars { objects: a, b; labels: l; steps: (a, l, a), (a, l, b); }"
        (diag,) = _diags(text)
        assert diag.col == _col(text, "(", 2)
        assert "reach 'a' and 'b'" in diag.message

    def test_duplicate_and_overlapping_symbols(self):
        (diag,) = _diags("ars { objects: a, a; labels: l; steps: ; }")
        assert diag.message == "duplicate symbol 'a'"
        (diag,) = _diags("ars { objects: a; labels: a; steps: ; }")
        assert diag.message == "'a' is declared both as an object and as a label"

    def test_reserved_words_rejected_as_names(self):
        (diag,) = _diags(MINI + " strategy word = universal;")
        assert diag.message == "reserved word 'word' cannot be used as a name"

    def test_cyclic_order(self):
        text = MINI + " order o { l1 < l2; l2 < l1; }"
        (diag,) = _diags(text)
        assert diag.col == _col(text, "order")
        assert "not a strict order" in diag.message

    def test_duplicate_sections_and_names(self):
        diags = _diags(MINI + " " + MINI)
        assert any("more than one ars section" in d.message for d in diags)
        (diag,) = _diags(MINI + " strategy s = fail; strategy s = universal;")
        assert diag.message == "duplicate strategy 's'"

    def test_missing_ars_section(self):
        (diag,) = _diags("strategy s = universal;")
        assert (diag.line, diag.col) == (1, 1)
        assert diag.message == "document declares no ars section"

    def test_use_before_ars_section(self):
        text = "strategy s = restrict({l1}); " + MINI
        diags = _diags(text)
        assert diags[0].message == "label 'l1' used before the ars section"

    def test_unknown_references(self):
        (diag,) = _diags(MINI + " strategy s = greatmost(nope);")
        assert diag.message == "unknown order 'nope'"
        (diag,) = _diags(MINI + " query apply nope from a depth 2;")
        assert diag.message == "unknown strategy 'nope'"
        (diag,) = _diags(MINI + " strategy s = accept(universal, nope);")
        assert diag.message == "unknown accepting condition 'nope'"

    def test_bound_validation(self):
        text = MINI + " strategy s = universal; query enumerate s depth 0;"
        (diag,) = _diags(text)
        assert diag.message == "depth must be at least 1"
        assert diag.col == _col(text, "0;")
        text = MINI + " strategy s = universal; query witness s horizon 1;"
        (diag,) = _diags(text)
        assert diag.message == "horizon must be at least 2"

    def test_syntax_errors_carry_expectations(self):
        text = "ars { objects: a labels: l; steps: ; }"
        (diag,) = _diags(text)
        assert diag.col == _col(text, "labels")
        assert "expected ';'" in diag.message and diag.expected == (";",)

    def test_unexpected_character(self):
        text = MINI + " $"
        (diag,) = _diags(text)
        assert diag.message == "unexpected character '$'"
        assert diag.col == len(text)

    def test_semantic_diagnostics_accumulate(self):
        text = "ars { objects: a; labels: l; steps: (a, u1, a), (a, u2, a); }"
        diags = _diags(text)
        assert [d.message for d in diags] == ["unknown label 'u1'", "unknown label 'u2'"]

    def test_semantic_diagnostics_survive_syntax_abort(self):
        text = "ars { objects: a; labels: l; steps: (a, u1, a); "
        diags = _diags(text)
        assert diags[0].message == "unknown label 'u1'"
        assert "expected" in diags[-1].message

    def test_deep_nesting_is_reported_not_crashed(self):
        bomb = MINI + " accept w = word(" + "(" * 8000 + "l1" + ")" * 8000 + ");"
        with pytest.raises(SpecLangError) as err:
            parse(bomb)
        assert any("nesting too deep" in d.message for d in err.value.diagnostics)

    def test_error_rendering(self):
        diag = Diagnostic(3, 7, "boom")
        assert diag.render() == "3:7: error: boom"
        err = SpecLangError((diag, Diagnostic(4, 1, "again")))
        assert str(err) == "3:7: error: boom (+1 more)"


class TestQueries:
    def test_query_forms(self):
        text = (
            MINI
            + " strategy s = universal;"
            + " query enumerate depth 2;"
            + " query enumerate s depth 3 from a;"
            + " query apply s from b depth 4;"
            + " query check prefix s depth 2;"
            + " query check closed s depth 2;"
            + " query witness s horizon 2;"
        )
        doc = parse(text)
        assert doc.queries == (
            QEnumerate(None, 2, None),
            QEnumerate("s", 3, "a"),
            QApply("s", "b", 4),
            QCheck("prefix", "s", 2),
            QCheck("closed", "s", 2),
            QWitness("s", 2),
        )

    def test_bad_check_property(self):
        with pytest.raises(SpecLangError) as err:
            parse(MINI + " strategy s = universal; query check bogus s depth 2;")
        assert "'prefix', 'factor', 'composition' or 'closed'" in str(err.value)


class TestBuilders:
    def test_build_ars(self):
        ars = build_ars(parse(MINI))
        assert ars.objects == ("a", "b")
        assert [s.label for s in ars.steps] == ["l1", "l2"]

    def test_length_condition_mapping(self):
        doc = parse(MINI)
        assert build_accept(doc, ALen("<", 3)) == LenAtMost(2)
        assert build_accept(doc, ALen("<=", 3)) == LenAtMost(3)
        assert build_accept(doc, ALen("=", 3)) == LenEq(3)
        assert build_accept(doc, ALen(">=", 3)) == LenAtLeast(3)
        assert build_accept(doc, ALen(">", 3)) == LenAtLeast(4)

    def test_build_accept_resolves_references(self):
        text = MINI + " accept base = at(a); accept both = and(base, not(len > 5));"
        doc = parse(text)
        built = build_accept(doc, "both")
        assert built == And((AtObject("a"), Not(LenAtLeast(6))))
        assert build_accept(doc, doc.get_accept("base")) == AtObject("a")

    def test_build_strategies(self):
        text = (
            MINI
            + " order o { l1 < l2; }"
            + " strategy g = greatmost(o);"
            + " strategy m = maxlen(4);"
            + " strategy alt = alternate({l1}; {l2});"
            + " strategy r = restrict({l1});"
            + " strategy i = intersect(universal, restrict({l1}));"
            + " strategy up = unionP(universal, fail);"
            + " strategy uc = unionC(universal, fail);"
            + " strategy acc = accept(universal, len <= 2);"
        )
        doc = parse(text)
        ars = build_ars(doc)
        assert build_strategy(doc, "g") == Greatmost(build_order(doc, "o"))
        assert build_strategy(doc, "m") == MaxLen(4)
        assert build_strategy(doc, "alt") == Alternate(
            frozenset({ars.step("a", "l1")}), frozenset({ars.step("b", "l2")})
        )
        assert build_strategy(doc, "r") == RestrictLabels(frozenset({"l1"}))
        assert build_strategy(doc, "i") == Intersect(
            (Universal(), RestrictLabels(frozenset({"l1"})))
        )
        assert build_strategy(doc, "up") == UnionPointwise((Universal(), Fail()))
        assert build_strategy(doc, "uc") == UnionCommitted((Universal(), Fail()))
        assert build_strategy(doc, "acc") == AcceptFiltered(Universal(), LenAtMost(2))

    def test_build_word_condition_matches(self):
        doc = parse(MINI + " accept w = word((l1 l2)* l1);")
        cond = build_accept(doc, "w")
        assert isinstance(cond, LabelWordIn)
        ars = build_ars(doc)
        assert cond.accepts(ars.derivation("a", "l1").trace())
        assert not cond.accepts(ars.derivation("a", "l1", "l2").trace())

    def test_unknown_names_raise(self):
        doc = parse(MINI)
        with pytest.raises(UnknownSymbol):
            doc.get_strategy("missing")
        with pytest.raises(UnknownSymbol):
            build_accept(doc, ARef("missing"))
        assert not doc.has_strategy("missing")


class TestTokenFuzz:
    def test_single_token_deletion_points_at_a_real_token(self):
        tokens = speclang._lex(CANONICAL)[:-1]
        flat = " ".join(t.text for t in tokens)
        assert parse(flat) == parse(CANONICAL)
        errors = 0
        for i in range(len(tokens)):
            remaining = tokens[:i] + tokens[i + 1 :]
            cols = []
            c = 1
            for t in remaining:
                cols.append(c)
                c += len(t.text) + 1
            eof_col = (cols[-1] + len(remaining[-1].text)) if remaining else 1
            rebuilt = " ".join(t.text for t in remaining)
            try:
                parse(rebuilt)
            except SpecLangError as err:
                errors += 1
                diag = err.diagnostics[0]
                assert diag.line == 1
                assert diag.col in set(cols) | {eof_col}, (i, tokens[i], diag)
        # every deletion except the optional enumerate strategy name must break parsing
        assert errors == len(tokens) - 1
