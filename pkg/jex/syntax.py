"""jex.syntax"""

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator


class ContextError(Exception):
    """Raised when a context would bind a name twice"""

    def __init__(self, detail: str):
        self.detail = detail


class JudgmentKind(enum.StrEnum):
    """Relevant (`:`, true) or irrelevant (`::`, just true) judgment"""

    RELEVANT = "relevant"
    IRRELEVANT = "irrelevant"

    @property
    def separator(self) -> str:
        """typing separator in concrete syntax"""
        return ":" if self is JudgmentKind.RELEVANT else "::"

    @property
    def verdict(self) -> str:
        """logical-judgment suffix in concrete syntax"""
        return "true" if self is JudgmentKind.RELEVANT else "just"


# propositions


@dataclass(frozen=True)
class Atom:
    """propositional atom"""

    name: str


@dataclass(frozen=True)
class Arrow:
    """implication"""

    domain: "Proposition"
    codomain: "Proposition"


@dataclass(frozen=True)
class Exists:
    """existence modality"""

    body: "Proposition"


Proposition = Atom | Arrow | Exists


def lolli(domain: Proposition, codomain: Proposition) -> Arrow:
    """existential implication, always stored as `domain -> Ex codomain`"""
    return Arrow(domain, Exists(codomain))


def is_lolli(prop: Proposition) -> bool:
    return isinstance(prop, Arrow) and isinstance(prop.codomain, Exists)


# expressions


class Expression:
    """Base class of the expression AST.

    Equality is alpha-equivalence and hashing agrees with it, so binder names
    never leak into any comparison.
    """

    def __eq__(self, other):
        if not isinstance(other, Expression):
            return NotImplemented
        return self.nameless == other.nameless

    def __hash__(self):
        return hash(self.nameless)

    @cached_property
    def nameless(self) -> tuple:
        """binder-free key of the expression"""
        return _nameless(self, ())


@dataclass(frozen=True, eq=False)
class Var(Expression):
    name: str


@dataclass(frozen=True, eq=False)
class Lam(Expression):
    """λ(var:annot).body"""

    var: str
    annot: Proposition
    body: Expression


@dataclass(frozen=True, eq=False)
class Ap(Expression):
    fun: Expression
    arg: Expression


@dataclass(frozen=True, eq=False)
class Box(Expression):
    """⟨body⟩"""

    body: Expression


@dataclass(frozen=True, eq=False)
class LetBox(Expression):
    """let ⟨var⟩ be scrutinee in body"""

    var: str
    scrutinee: Expression
    body: Expression


@dataclass(frozen=True, eq=False)
class LamJ(Expression):
    """λⱼ(var:annot).body"""

    var: str
    annot: Proposition
    body: Expression


@dataclass(frozen=True, eq=False)
class ApJ(Expression):
    fun: Expression
    arg: Expression


@dataclass(frozen=True, eq=False)
class BoxJ(Expression):
    """⟨body⟩ⱼ"""

    body: Expression


@dataclass(frozen=True, eq=False)
class LetBoxJ(Expression):
    """let ⟨var⟩ⱼ be scrutinee in body"""

    var: str
    scrutinee: Expression
    body: Expression


LAMBDAS = (Lam, LamJ)
LETS = (LetBox, LetBoxJ)
APPLICATIONS = (Ap, ApJ)
BOXES = (Box, BoxJ)


def _nameless(e: Expression, env: tuple[str, ...]) -> tuple:
    match e:
        case Var(name):
            for index, bound in enumerate(reversed(env)):
                if bound == name:
                    return ("bound", index)
            return ("free", name)
        case Lam() | LamJ():
            return (type(e).__name__, e.annot, _nameless(e.body, env + (e.var,)))
        case LetBox() | LetBoxJ():
            return (
                type(e).__name__,
                _nameless(e.scrutinee, env),
                _nameless(e.body, env + (e.var,)),
            )
        case Ap() | ApJ():
            return (type(e).__name__, _nameless(e.fun, env), _nameless(e.arg, env))
        case Box() | BoxJ():
            return (type(e).__name__, _nameless(e.body, env))
    raise TypeError(f"not an expression: {e!r}")


def alpha_eq(e1: Expression, e2: Expression) -> bool:
    """True iff the expressions differ at most in bound-variable names"""
    return e1.nameless == e2.nameless


def free_vars(e: Expression) -> frozenset[str]:
    match e:
        case Var(name):
            return frozenset((name,))
        case Lam() | LamJ():
            return free_vars(e.body) - {e.var}
        case LetBox() | LetBoxJ():
            return free_vars(e.scrutinee) | (free_vars(e.body) - {e.var})
        case Ap() | ApJ():
            return free_vars(e.fun) | free_vars(e.arg)
        case Box() | BoxJ():
            return free_vars(e.body)
    raise TypeError(f"not an expression: {e!r}")


def fresh(avoid, hint: str) -> str:
    """`hint` itself, or `hint` with the least positive suffix not in `avoid`"""
    if hint not in avoid:
        return hint
    suffix = 1
    while f"{hint}{suffix}" in avoid:
        suffix += 1
    return f"{hint}{suffix}"


def is_term(e: Expression) -> bool:
    """Term-hood along the term grammar x | λx.t | ap(t,t') | ⟨e⟩"""
    match e:
        case Var() | Box():
            return True
        case Lam():
            return is_term(e.body)
        case Ap():
            return is_term(e.fun) and is_term(e.arg)
    return False


def children(e: Expression) -> tuple[Expression, ...]:
    match e:
        case Var():
            return ()
        case Lam() | LamJ() | Box() | BoxJ():
            return (e.body,)
        case LetBox() | LetBoxJ():
            return (e.scrutinee, e.body)
        case Ap() | ApJ():
            return (e.fun, e.arg)
    raise TypeError(f"not an expression: {e!r}")


def subexpressions(e: Expression) -> Iterator[Expression]:
    """pre-order walk, binders ignored"""
    yield e
    for child in children(e):
        yield from subexpressions(child)


def size(e: Expression) -> int:
    return 1 + sum(size(child) for child in children(e))


def uniquify(e: Expression, avoid=frozenset()) -> Expression:
    """Rename binders apart from each other, from `avoid` and from free names."""
    used = set(avoid) | free_vars(e)

    def go(e: Expression, renaming: dict[str, str]) -> Expression:
        match e:
            case Var(name):
                return Var(renaming.get(name, name))
            case Lam() | LamJ():
                var = fresh(used, e.var)
                used.add(var)
                return type(e)(var, e.annot, go(e.body, renaming | {e.var: var}))
            case LetBox() | LetBoxJ():
                scrutinee = go(e.scrutinee, renaming)
                var = fresh(used, e.var)
                used.add(var)
                return type(e)(var, scrutinee, go(e.body, renaming | {e.var: var}))
            case Ap() | ApJ():
                return type(e)(go(e.fun, renaming), go(e.arg, renaming))
            case Box() | BoxJ():
                return type(e)(go(e.body, renaming))
        raise TypeError(f"not an expression: {e!r}")

    return go(e, {})


# contexts


@dataclass(frozen=True)
class Context:
    """Ordered relevant hypotheses `x : φ` with pairwise distinct names"""

    entries: tuple[tuple[str, Proposition], ...] = ()

    def __post_init__(self):
        seen = set()
        for name, _ in self.entries:
            if name in seen:
                raise ContextError(f"hypothesis '{name}' bound twice")
            seen.add(name)

    @classmethod
    def of(cls, *entries: tuple[str, Proposition]) -> "Context":
        return cls(tuple(entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def names(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.entries)

    def props(self) -> tuple[Proposition, ...]:
        return tuple(prop for _, prop in self.entries)

    def lookup(self, name: str) -> Proposition | None:
        """rightmost binding of `name`, or None"""
        for bound, prop in reversed(self.entries):
            if bound == name:
                return prop
        return None

    def extend(self, name: str, prop: Proposition) -> "Context":
        if name in self.names():
            raise ContextError(f"hypothesis '{name}' already in context")
        return Context(self.entries + ((name, prop),))

    def insert(self, index: int, name: str, prop: Proposition) -> "Context":
        if name in self.names():
            raise ContextError(f"hypothesis '{name}' already in context")
        return Context(self.entries[:index] + ((name, prop),) + self.entries[index:])

    def swap(self, index: int) -> "Context":
        """exchange the entries at `index` and `index + 1`"""
        entries = list(self.entries)
        entries[index], entries[index + 1] = entries[index + 1], entries[index]
        return Context(tuple(entries))


def is_single_insertion(smaller: tuple, larger: tuple) -> bool:
    """`larger` is `smaller` with exactly one entry inserted somewhere"""
    if len(larger) != len(smaller) + 1:
        return False
    return any(
        larger[:index] + larger[index + 1 :] == smaller for index in range(len(larger))
    )


def is_single_move(before: tuple, after: tuple) -> bool:
    """`after` is `before` with exactly one entry moved to another position"""
    if len(before) != len(after):
        return False
    for source in range(len(before)):
        rest = before[:source] + before[source + 1 :]
        for target in range(len(before)):
            if target == source:
                continue
            if rest[:target] + (before[source],) + rest[target:] == after:
                return True
    return False
