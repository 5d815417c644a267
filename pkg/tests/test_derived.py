import pytest

from jex.checker import (
    IRR,
    ArrowExpected,
    Derivation,
    Judgment,
    NotATerm,
    Rule,
    infer_irrelevant,
    infer_relevant,
    open_premises,
    replay_derivation,
)
from jex.derived import (
    BUILDERS,
    EXPR_BUILDERS,
    BuilderError,
    build_lax,
    build_logical,
    graft,
    is_lax_builder,
    lax_axiom,
    proposition_witness,
    trunc_elim,
    trunc_intro,
)
from jex.logic import JUST, TRUE, LogicalJudgment, check_logical, erase
from jex.logic import open_premises as logical_premises
from jex.parser import parse_expr, parse_prop
from jex.syntax import Arrow, Atom, Box, Context, Exists, LamJ, Var, lolli

P, Q = Atom("p"), Atom("q")

LOGICAL_BUILDERS = [
    name for name in BUILDERS if name not in EXPR_BUILDERS and not is_lax_builder(name)
]
ONE_ARGUMENT = {"prop-6", "axiom-i", "axiom-ii"}


class TestTruncation:
    def test_intro(self, ambient):
        boxed, derivation = trunc_intro(ambient, Var("a"))
        assert boxed == Box(Var("a"))
        assert derivation.conclusion.prop == Exists(P)
        assert derivation.rule is Rule.EXISTS_I
        assert derivation.premises[0].rule is Rule.JUST
        assert replay_derivation(derivation)

    def test_intro_needs_a_term(self, ambient):
        with pytest.raises(NotATerm):
            trunc_intro(ambient, LamJ("x", P, Var("x")))

    def test_elim(self, ambient):
        result, derivation = trunc_elim(ambient, Var("f"))
        assert result == parse_expr(r"\j(y:Ex p). let [x] = y in f @j x")
        assert derivation.conclusion.prop == Arrow(Exists(P), Q)
        assert replay_derivation(derivation)
        assert infer_irrelevant(ambient, result)[0] == Arrow(Exists(P), Q)

    def test_elim_tree_has_structural_steps(self, ambient):
        _, derivation = trunc_elim(ambient, Var("f"))
        body = derivation.premises[0].premises[1]
        assert body.rule is Rule.EXCHANGE
        assert body.premises[0].rule is Rule.WEAKEN

    def test_elim_erases_to_a_logical_proof(self, ambient):
        _, derivation = trunc_elim(ambient, Var("f"))
        assert check_logical(erase(derivation))

    def test_elim_needs_an_implication(self, ambient):
        with pytest.raises(ArrowExpected):
            trunc_elim(ambient, Var("a"))

    def test_elim_of_a_premise(self):
        premise = Derivation(
            Judgment(Context(), Var("g"), IRR, Arrow(P, Q)), Rule.PREMISE
        )
        result, derivation = trunc_elim(Context(), Var("g"), premise)
        assert result == parse_expr(r"\j(y:Ex p). let [x] = y in g @j x")
        assert replay_derivation(derivation)
        assert open_premises(derivation) == [premise.conclusion]


class TestLaxAxioms:
    @pytest.mark.parametrize(
        "which,props,expected",
        [
            ("i", [P], "p -> Ex p"),
            ("ii", [P], "Ex Ex p -> Ex p"),
            ("iii", [P, Q], "(p -> q) -> Ex p -> Ex q"),
        ],
    )
    def test_types(self, which, props, expected):
        term, derivation = lax_axiom(which, *props)
        assert infer_relevant(Context(), term)[0] == parse_prop(expected)
        assert derivation.conclusion.prop == parse_prop(expected)
        assert replay_derivation(derivation)

    @pytest.mark.parametrize(
        "which,props", [("iii", [P]), ("i", [P, Q]), ("iv", [P])]
    )
    def test_bad_arguments(self, which, props):
        with pytest.raises(BuilderError):
            lax_axiom(which, *props)

    def test_build_lax(self):
        term, _ = build_lax("lax-i", [P])
        assert term == parse_expr(r"\(x:p). [x]")
        with pytest.raises(BuilderError):
            build_lax("lax-i", [])


class TestLogicalBuilders:
    @pytest.mark.parametrize("name", LOGICAL_BUILDERS)
    def test_every_builder_checks(self, name):
        tree = build_logical(name, [P] if name in ONE_ARGUMENT else [P, Q])
        assert check_logical(tree)

    @pytest.mark.parametrize(
        "name,conclusion,kind,premises",
        [
            ("prop-1L", Arrow(P, Q), JUST, [lolli(P, Q)]),
            ("prop-1R", lolli(P, Q), TRUE, [Arrow(P, Q)]),
            ("prop-2L", Arrow(Exists(P), Exists(Q)), TRUE, [lolli(P, Q)]),
            ("prop-2R", lolli(P, Q), TRUE, [Arrow(Exists(P), Exists(Q))]),
            ("prop-3L", Arrow(Exists(P), Q), JUST, [lolli(P, Q)]),
            ("prop-3R", lolli(P, Q), TRUE, [Arrow(Exists(P), Q)]),
            ("prop-4L", Arrow(Exists(P), Q), JUST, [Arrow(P, Q)]),
            ("prop-4R", Arrow(P, Q), JUST, [Arrow(Exists(P), Q)]),
            ("prop-5", Arrow(Exists(P), Exists(Q)), TRUE, [Exists(Arrow(P, Q))]),
            ("true-to-lolli", lolli(P, Q), TRUE, [Arrow(P, Q)]),
        ],
    )
    def test_conclusions(self, name, conclusion, kind, premises):
        tree = build_logical(name, [P, Q])
        assert tree.conclusion == LogicalJudgment((), conclusion, kind)
        assert [j.conclusion for j in logical_premises(tree)] == premises

    def test_closed_trees(self):
        assert logical_premises(build_logical("prop-6", [P])) == []
        assert logical_premises(build_logical("axiom-iii", [P, Q])) == []
        tree = build_logical("axiom-i", [P])
        assert tree.conclusion.conclusion == Arrow(P, Exists(P))

    def test_graft(self):
        tree = graft(proposition_witness("3L", P, Q), proposition_witness("1R", P, Q))
        assert check_logical(tree)
        assert logical_premises(tree) == [LogicalJudgment((), Arrow(P, Q), JUST)]

    def test_graft_ignores_other_premises(self):
        tree = proposition_witness("1L", P, Q)
        unrelated = build_logical("prop-6", [P])
        assert graft(tree, unrelated) == tree

    @pytest.mark.parametrize(
        "name,props",
        [("prop-9", [P, Q]), ("prop-1L", [P]), ("lolli-I", [P]), ("nope", [P])],
    )
    def test_unknown(self, name, props):
        with pytest.raises(BuilderError):
            build_logical(name, props)
