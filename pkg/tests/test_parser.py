import pytest

from ppt import (
    And, AtomRef, Not, ParseError, RestrictionError, RuleKind, Since,
    format_program, parse_formula, parse_program,
)
from ppt.syntax import CORE_TRUE, INITIAL_EXPANSION, Falsum


class TestProgramParsing:
    def test_p1_partition(self, p1):
        assert len(p1.initial) == 1
        assert len(p1.dynamic) == 3
        assert len(p1.final) == 1

    def test_dynamic_rule_shape(self):
        p = parse_program("#dynamic. dead :- shoot, (not unload since load).")
        (rule,) = p.rules
        assert rule.kind is RuleKind.DYNAMIC
        assert rule.head == ("dead",)
        assert rule.body == And(AtomRef("shoot"),
                                Since(Not(AtomRef("unload")), AtomRef("load")))

    def test_default_section_is_initial(self):
        p = parse_program("a.")
        assert p.rules[0].kind is RuleKind.INITIAL

    def test_fact_body_is_true(self):
        p = parse_program("a.")
        assert p.rules[0].body == CORE_TRUE

    def test_comment_and_blank_lines(self):
        p = parse_program("% leading comment\n\na.  % trailing\n")
        assert len(p.rules) == 1

    def test_head_disjunction_synonyms(self):
        for sep in ("|", ";", "or"):
            p = parse_program(f"a {sep} b.")
            assert p.rules[0].head == ("a", "b")

    def test_body_connective_synonyms(self):
        assert parse_formula("a, b") == parse_formula("a and b")
        assert parse_formula("a; b") == parse_formula("a or b")

    def test_initial_since_rejected(self):
        with pytest.raises(RestrictionError):
            parse_program("#initial. a :- (b since c).")

    def test_initial_double_negation_rejected(self):
        with pytest.raises(RestrictionError):
            parse_program("a :- not not b.")

    def test_final_head_rejected(self):
        with pytest.raises(RestrictionError):
            parse_program("#final. a :- b.")

    def test_dynamic_constraint_allowed(self):
        p = parse_program("#dynamic. :- a, prev b.")
        assert p.rules[0].head == ()

    def test_restriction_error_is_parse_error(self):
        with pytest.raises(ParseError):
            parse_program("#final. a :- b.")


class TestFormulaParsing:
    def test_since_precedence_under_not(self):
        assert parse_formula("not unload since load") == Since(
            Not(AtomRef("unload")), AtomRef("load"))

    def test_initially_expands(self):
        assert parse_formula("initially") == INITIAL_EXPANSION

    def test_false(self):
        assert parse_formula("false") == Falsum()

    def test_since_left_associative(self):
        a, b, c = AtomRef("a"), AtomRef("b"), AtomRef("c")
        assert parse_formula("a since b since c") == Since(Since(a, b), c)

    def test_precedence_or_and(self):
        f = parse_formula("a, b; c")
        g = parse_formula("(a and b) or c")
        assert f == g

    def test_parens_override(self):
        assert parse_formula("a, (b; c)") != parse_formula("a, b; c")


class TestErrors:
    @pytest.mark.parametrize("src", [
        "a :- .", "a b.", ":-", "a.)", "#unknown.", "since.", "a :- since.",
        "Foo.", "_x.", "a | not b.", "a ::- b.",
    ])
    def test_bad_syntax(self, src):
        with pytest.raises(ParseError):
            parse_program(src)

    def test_position_points_at_token(self):
        with pytest.raises(ParseError) as err:
            parse_program("a :- b,\n  since c.")
        assert (err.value.line, err.value.column) == (2, 3)

    def test_positions_within_bounds(self):
        sources = ["", "a", "a :-", "a :- b", "x.\ny.\nz", "(", "a :- (b."]
        for src in sources:
            try:
                parse_program(src)
            except ParseError as err:
                lines = src.split("\n") or [""]
                assert 1 <= err.line <= len(lines)
                assert 1 <= err.column <= len(lines[err.line - 1]) + 1

    def test_reserved_atom_message(self):
        with pytest.raises(ParseError) as err:
            parse_program("trigger.")
        assert "reserved" in err.value.message


class TestRoundTrip:
    def test_p1(self, p1):
        assert parse_program(format_program(p1)) == p1

    def test_interleaved_sections(self):
        text = "a.\n#dynamic.\nb :- prev a.\n#initial.\nc.\n"
        p = parse_program(text)
        assert parse_program(format_program(p)) == p

    def test_empty_program(self):
        assert parse_program("") == parse_program(format_program(parse_program("")))

    def test_body_with_true_conjunct(self):
        p = parse_program("a :- b, true.")
        assert parse_program(format_program(p)) == p
