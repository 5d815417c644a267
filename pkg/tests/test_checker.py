from dataclasses import replace as with_fields

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jex import checker
from jex.checker import (
    Derivation,
    Judgment,
    Rule,
    TypeMismatch,
    check_against,
    find_replay_failure,
    infer,
    infer_irrelevant,
    infer_relevant,
    open_premises,
    replay_derivation,
)
from jex.generator import GenConfig, sample_at
from jex.parser import parse_expr, parse_prop
from jex.runner import context_of
from jex.substitution import subst_term
from jex.syntax import (
    Ap,
    ApJ,
    Arrow,
    Atom,
    Box,
    Context,
    Exists,
    JudgmentKind,
    Lam,
    LamJ,
    LetBox,
    Var,
    free_vars,
    fresh,
)

P, Q = Atom("p"), Atom("q")
REL, IRR = JudgmentKind.RELEVANT, JudgmentKind.IRRELEVANT


def _kind(separator):
    return REL if separator == ":" else IRR


class TestInference:
    def test_well_typed_data(self, well_typed_data):
        for text, separator, prop in well_typed_data:
            found, derivation = infer(Context(), parse_expr(text), _kind(separator))
            assert found == parse_prop(prop), text
            assert replay_derivation(derivation), text

    def test_ill_typed_data(self, ill_typed_data):
        for text, hyps, error in ill_typed_data:
            with pytest.raises(getattr(checker, error)):
                infer_irrelevant(context_of(hyps), parse_expr(text))

    def test_hyp(self, ambient):
        prop, derivation = infer_relevant(ambient, Var("a"))
        assert prop == P
        assert derivation.rule is Rule.HYP

    def test_terms_are_just_true(self, ambient):
        prop, derivation = infer_irrelevant(ambient, Var("a"))
        assert prop == P
        assert derivation.rule is Rule.JUST
        assert derivation.premises[0].rule is Rule.HYP

    def test_let_is_irrelevant_only(self, ambient):
        e = LetBox("x", Var("b"), Var("x"))
        with pytest.raises(checker.NotATerm):
            infer_relevant(ambient, e)
        assert infer_irrelevant(ambient, e)[0] == P

    def test_let_scrutinee_must_be_a_term(self, ambient):
        e = parse_expr(r"let [x] = (let [y] = b in [y]) in x")
        with pytest.raises(checker.NonTermArgument):
            infer_irrelevant(ambient, e)

    def test_apj_argument_must_be_a_term(self, ambient):
        e = parse_expr(r"(\j(x:p). x) @j (let [y] = b in y)")
        with pytest.raises(checker.NonTermArgument):
            infer_irrelevant(ambient, e)

    def test_binder_shadowing_a_hypothesis(self, ambient):
        e = Lam("a", Q, Var("a"))
        prop, derivation = infer_relevant(ambient, e)
        assert prop == Arrow(Q, Q)
        assert replay_derivation(derivation)
        premise = derivation.premises[0].conclusion
        assert len(premise.context.names()) == len(ambient) + 1

    def test_check_against_mismatch(self, ambient):
        with pytest.raises(TypeMismatch) as err:
            check_against(ambient, Var("a"), REL, Q)
        assert err.value.expected == Q
        assert err.value.found == P

    def test_box_of_let(self, ambient):
        e = Box(LetBox("x", Var("b"), Var("x")))
        assert check_against(ambient, e, REL, Exists(P)).rule is Rule.EXISTS_I


class TestReplay:
    def test_tampered_conclusion(self, ambient):
        _, derivation = infer_relevant(ambient, parse_expr("f a"))
        bad = with_fields(
            derivation, conclusion=with_fields(derivation.conclusion, prop=P)
        )
        failure = find_replay_failure(bad)
        assert failure.path == ()
        assert failure.rule == "->E"

    def test_tampered_premise(self, ambient):
        _, derivation = infer_relevant(ambient, parse_expr(r"\(x:p). x"))
        hyp = derivation.premises[0]
        bad_hyp = with_fields(hyp, conclusion=with_fields(hyp.conclusion, prop=Q))
        bad = with_fields(derivation, premises=(bad_hyp,))
        failure = find_replay_failure(bad)
        assert failure is not None
        assert not replay_derivation(bad)

    def test_wrong_rule(self, ambient):
        judgment = Judgment(ambient, Var("a"), IRR, P)
        assert find_replay_failure(Derivation(judgment, Rule.HYP)).rule == "hyp"

    def test_structural_rules(self):
        y_ctx = Context.of(("y", Q))
        both = Context.of(("x", P), ("y", Q))
        swapped = Context.of(("y", Q), ("x", P))
        hyp = Derivation(Judgment(y_ctx, Var("y"), REL, Q), Rule.HYP)
        weakened = Derivation(Judgment(both, Var("y"), REL, Q), Rule.WEAKEN, (hyp,))
        exchanged = Derivation(
            Judgment(swapped, Var("y"), REL, Q), Rule.EXCHANGE, (weakened,)
        )
        assert replay_derivation(exchanged)
        not_weakening = Derivation(
            Judgment(y_ctx, Var("y"), REL, Q), Rule.WEAKEN, (hyp,)
        )
        assert find_replay_failure(not_weakening).detail.startswith(
            "conclusion context must add"
        )

    def test_open_premises(self):
        f_type = Arrow(P, Q)
        premise = Derivation(Judgment(Context(), Var("f"), IRR, f_type), Rule.PREMISE)
        assert replay_derivation(premise)
        assert open_premises(premise) == [premise.conclusion]

    def test_assumed_premises_close_the_tree(self):
        judgment = Judgment(Context(), Var("x"), REL, Q)
        premise = Derivation(judgment, Rule.PREMISE)
        assert replay_derivation(premise, assumptions=[judgment])
        assert not replay_derivation(premise, assumptions=())
        failure = find_replay_failure(premise, assumptions=())
        assert failure.rule == "premise"
        assert failure.detail == "premise is not among the assumptions"

    def test_unassumed_premise_below_the_root(self, ambient):
        f_type = Arrow(P, Q)
        f_premise = Derivation(Judgment(ambient, Var("g"), IRR, f_type), Rule.PREMISE)
        a_hyp = Derivation(Judgment(ambient, Var("a"), REL, P), Rule.HYP)
        applied = Derivation(
            Judgment(ambient, parse_expr("g @j a"), IRR, Q),
            Rule.ARROW_EJ,
            (f_premise, a_hyp),
        )
        assert replay_derivation(applied)
        assert find_replay_failure(applied, assumptions=()).path == (0,)
        assumed = [f_premise.conclusion]
        assert replay_derivation(applied, assumptions=assumed)


CORPUS = GenConfig(max_depth=5, atom_pool=["p", "q"])

seeds = st.integers(min_value=0, max_value=10_000)


def _typed(ctx, e, kind):
    prop, _ = infer(ctx, e, kind)
    return prop


class TestStructuralProperties:
    @given(seeds, st.sampled_from([REL, IRR]), st.booleans())
    @settings(max_examples=40, deadline=None)
    def test_weakening(self, seed, kind, at_front):
        sample = sample_at(CORPUS, seed, kind)
        ctx, e = sample.context, sample.expression
        name = fresh(ctx.names() | free_vars(e), "w")
        index = 0 if at_front else len(ctx)
        weakened = ctx.insert(index, name, Arrow(P, Exists(Q)))
        assert _typed(weakened, e, kind) == sample.proposition

    @given(seeds, st.sampled_from([REL, IRR]))
    @settings(max_examples=40, deadline=None)
    def test_exchange(self, seed, kind):
        sample = sample_at(CORPUS, seed, kind)
        for i in range(len(sample.context) - 1):
            swapped = sample.context.swap(i)
            assert _typed(swapped, sample.expression, kind) == sample.proposition

    @given(seeds, st.sampled_from([REL, IRR]))
    @settings(max_examples=40, deadline=None)
    def test_contraction(self, seed, kind):
        # ctx, y : A |- (\z. e) y  merges into  ctx |- (\z. e) x  for each x : A
        sample = sample_at(CORPUS, seed, kind)
        ctx, e = sample.context, sample.expression
        avoid = ctx.names() | free_vars(e)
        y, z = fresh(avoid, "y"), fresh(avoid, "z")
        for x, prop in ctx:
            if kind is REL:
                duplicated = Ap(Lam(z, prop, e), Var(y))
            else:
                duplicated = ApJ(LamJ(z, prop, e), Var(y))
            assert _typed(ctx.extend(y, prop), duplicated, kind) == sample.proposition
            merged = subst_term(Var(x), y, duplicated)
            assert _typed(ctx, merged, kind) == sample.proposition

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_relevant_implies_irrelevant(self, seed):
        sample = sample_at(CORPUS, seed, REL)
        assert _typed(sample.context, sample.expression, IRR) == sample.proposition
