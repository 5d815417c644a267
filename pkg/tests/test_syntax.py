import pytest
from hypothesis import given
from hypothesis import strategies as st

from jex.substitution import replace
from jex.syntax import (
    Ap,
    Arrow,
    Atom,
    Box,
    Context,
    ContextError,
    Exists,
    Lam,
    LamJ,
    LetBox,
    Var,
    alpha_eq,
    free_vars,
    fresh,
    is_lolli,
    is_single_insertion,
    is_single_move,
    is_term,
    lolli,
    size,
    subexpressions,
    uniquify,
)
from tests.strategies import expressions, names

P, Q = Atom("p"), Atom("q")


class TestAlphaEquivalence:
    def test_renamed_binders_are_equal(self):
        assert Lam("x", P, Var("x")) == Lam("y", P, Var("y"))
        assert alpha_eq(
            LetBox("x", Var("b"), Var("x")), LetBox("z", Var("b"), Var("z"))
        )

    def test_free_names_matter(self):
        assert Lam("x", P, Var("y")) != Lam("x", P, Var("z"))

    def test_annotations_matter(self):
        assert Lam("x", P, Var("x")) != Lam("x", Q, Var("x"))

    def test_binder_kinds_matter(self):
        assert Lam("x", P, Var("x")) != LamJ("x", P, Var("x"))

    def test_shadowing(self):
        inner_bound = Lam("x", P, Lam("x", P, Var("x")))
        assert inner_bound == Lam("a", P, Lam("b", P, Var("b")))
        assert inner_bound != Lam("a", P, Lam("b", P, Var("a")))

    def test_hash_agrees(self):
        assert hash(Lam("x", P, Var("x"))) == hash(Lam("y", P, Var("y")))
        assert len({Lam("x", P, Var("x")), Lam("y", P, Var("y"))}) == 1

    @given(expressions)
    def test_reflexive(self, e):
        assert alpha_eq(e, e)

    @given(expressions, expressions)
    def test_symmetric(self, e1, e2):
        assert alpha_eq(e1, e2) == alpha_eq(e2, e1)

    @given(expressions)
    def test_uniquify_keeps_class(self, e):
        assert uniquify(e) == e
        assert free_vars(uniquify(e)) == free_vars(e)


class TestFreeVars:
    @pytest.mark.parametrize(
        "expression,expected",
        [
            (Var("x"), {"x"}),
            (Lam("x", P, Ap(Var("x"), Var("y"))), {"y"}),
            (LetBox("x", Var("x"), Var("x")), {"x"}),
            (LetBox("x", Var("b"), Ap(Var("x"), Var("c"))), {"b", "c"}),
            (Box(LamJ("z", P, Var("z"))), set()),
        ],
    )
    def test_free_vars(self, expression, expected):
        assert free_vars(expression) == expected

    @given(expressions, names, names)
    def test_renaming_a_binder_keeps_free_vars(self, body, old, new):
        if new in free_vars(body) - {old}:
            return
        renamed = Lam(new, P, replace(body, old, Var(new)))
        assert free_vars(Lam(old, P, body)) == free_vars(renamed)


class TestFresh:
    def test_unused_hint(self):
        assert fresh({"y"}, "x") == "x"

    def test_least_suffix(self):
        assert fresh({"x", "x1", "x3"}, "x") == "x2"

    @given(st.sets(names))
    def test_never_in_avoid(self, avoid):
        assert fresh(avoid, "x") not in avoid


class TestTerms:
    @pytest.mark.parametrize(
        "expression,expected",
        [
            (Var("x"), True),
            (Lam("x", P, Var("x")), True),
            (Box(LetBox("x", Var("b"), Var("x"))), True),
            (Lam("x", P, LetBox("y", Var("b"), Var("y"))), False),
            (Ap(Var("f"), LamJ("x", P, Var("x"))), False),
            (LamJ("x", P, Var("x")), False),
        ],
    )
    def test_is_term(self, expression, expected):
        assert is_term(expression) is expected

    def test_size_and_walk(self):
        e = Ap(Lam("x", P, Var("x")), Box(Var("a")))
        assert size(e) == 5
        assert [type(s).__name__ for s in subexpressions(e)] == [
            "Ap",
            "Lam",
            "Var",
            "Box",
            "Var",
        ]


class TestPropositions:
    def test_lolli_is_sugar(self):
        assert lolli(P, Q) == Arrow(P, Exists(Q))
        assert is_lolli(lolli(P, Q))
        assert not is_lolli(Arrow(P, Q))


class TestContext:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ContextError):
            Context.of(("x", P), ("x", Q))
        with pytest.raises(ContextError):
            Context.of(("x", P)).extend("x", Q)

    def test_lookup(self):
        ctx = Context.of(("x", P), ("y", Q))
        assert ctx.lookup("y") == Q
        assert ctx.lookup("z") is None
        assert ctx.names() == {"x", "y"}
        assert ctx.props() == (P, Q)

    def test_insert_and_swap(self):
        ctx = Context.of(("x", P), ("y", Q))
        assert ctx.insert(1, "z", P).entries == (("x", P), ("z", P), ("y", Q))
        assert ctx.swap(0).entries == (("y", Q), ("x", P))


class TestStructuralShapes:
    @pytest.mark.parametrize(
        "smaller,larger,expected",
        [
            ((), ("a",), True),
            (("a",), ("b", "a"), True),
            (("a", "b"), ("a", "c", "b"), True),
            (("a",), ("a",), False),
            (("a",), ("b", "c"), False),
        ],
    )
    def test_single_insertion(self, smaller, larger, expected):
        assert is_single_insertion(smaller, larger) is expected

    @pytest.mark.parametrize(
        "before,after,expected",
        [
            (("a", "b"), ("b", "a"), True),
            (("a", "b", "c"), ("c", "a", "b"), True),
            (("a", "a"), ("a", "a"), True),
            (("a", "b"), ("a", "b"), False),
            (("a", "b", "c"), ("c", "b", "a"), False),
            (("a",), ("a", "a"), False),
        ],
    )
    def test_single_move(self, before, after, expected):
        assert is_single_move(before, after) is expected
