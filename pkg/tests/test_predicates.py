"""
Tests for the predicate mini-language
"""

import pytest

from ringlab.errors import PredicateSyntaxError, UnknownFlag
from ringlab.services.predicates import And, Name, Not, parse_predicate
from ringlab.services.profiles import profile_ring


class TestParsing:
    """Grammar, aliases and error positions"""

    def test_precedence(self):
        """Test & binds tighter than |"""
        predicate = parse_predicate("clean | reduced & CS")
        assert predicate.evaluate({"clean": False, "reduced": True, "CS": True}) is True
        assert predicate.evaluate({"clean": False, "reduced": True, "CS": False}) is False

    def test_unicode_operators(self):
        """Test ∧ ∨ ¬ mean & | !"""
        ascii_form = parse_predicate("!(clean & CS) | reduced")
        unicode_form = parse_predicate("¬(clean ∧ CS) ∨ reduced")
        assert ascii_form.tree == unicode_form.tree

    def test_aliases_expand(self):
        """Test rickart means both sides"""
        predicate = parse_predicate("rickart")
        assert predicate.tree == And(Name("rickart_right"), Name("rickart_left"))
        assert parse_predicate("!regular").tree == Not(Name("vn_regular"))

    def test_known_flag_wins_over_alias(self):
        """Test module predicates read nonsingular as the module flag"""
        assert parse_predicate("nonsingular", modules=True).tree == Name("nonsingular")
        assert parse_predicate("nonsingular").tree == Name("right_nonsingular")

    def test_unknown_flag_position(self):
        """Test the error points at the offending name"""
        with pytest.raises(UnknownFlag) as info:
            parse_predicate("clean & shiny")
        assert info.value.position == 8

    @pytest.mark.parametrize("text", ["", "clean &", "(clean", "clean CS", "clean $ CS", ")"])
    def test_syntax_errors(self, text):
        """Test malformed predicates are rejected"""
        with pytest.raises(PredicateSyntaxError):
            parse_predicate(text)

    def test_flags(self):
        """Test the flags a predicate reads"""
        assert parse_predicate("CS & nonsingular & !quasi_continuous").flags() == {
            "CS",
            "right_nonsingular",
            "quasi_continuous",
        }


class TestKleeneLogic:
    """Undecided flags propagate only when they matter"""

    def test_and(self):
        """Test False decides a conjunction"""
        predicate = parse_predicate("clean & CS")
        assert predicate.evaluate({"clean": False, "CS": None}) is False
        assert predicate.evaluate({"clean": True, "CS": None}) is None

    def test_or(self):
        """Test True decides a disjunction"""
        predicate = parse_predicate("clean | CS")
        assert predicate.evaluate({"clean": True, "CS": None}) is True
        assert predicate.evaluate({"clean": False, "CS": None}) is None

    def test_not(self):
        """Test negation keeps None"""
        assert parse_predicate("!CS").evaluate({"CS": None}) is None

    def test_missing_flag_is_undecided(self):
        """Test a flag absent from the mapping reads as None"""
        assert parse_predicate("star_clean").evaluate({}) is None


class TestProfiles:
    """Predicates over computed ring profiles"""

    def test_zmod4(self, z4, budgets):
        """Test Z/4 is clean, CS and not special almost clean"""
        flags = profile_ring("Z4", z4, budgets).flags()
        assert parse_predicate("clean & CS & !special_almost_clean").evaluate(flags) is True
        assert parse_predicate("abelian & commutative").evaluate(flags) is True
        assert parse_predicate("star_clean").evaluate(flags) is None

    def test_uppertri(self, t2f2, budgets):
        """Test T2(GF(2)) matches the CS-nonsingular-not-quasi-continuous query"""
        flags = profile_ring("T2F2", t2f2, budgets).flags()
        assert parse_predicate("CS & nonsingular & !quasi_continuous").evaluate(flags) is True
        assert parse_predicate("abelian").evaluate(flags) is False
