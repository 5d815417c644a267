"""jex.generator

Type-directed random generation of well-typed expressions. A goal
proposition is picked first and an expression is built for it by running the
typing rules backwards, so every sample type checks by construction.

Box bodies are let-chains ending in a term. On that shape the expression
substitution only ever takes its term and let clauses, and reduction never
builds any other box body, so subject reduction holds on the whole corpus.
"""

import random
from dataclasses import dataclass
from typing import Iterator

from pydantic import BaseModel, Field

from jex.config import CONFIG
from jex.syntax import (
    Ap,
    ApJ,
    Arrow,
    Atom,
    Box,
    BoxJ,
    Context,
    Exists,
    Expression,
    JudgmentKind,
    Lam,
    LamJ,
    LetBox,
    LetBoxJ,
    Proposition,
    Var,
)

REL = JudgmentKind.RELEVANT
IRR = JudgmentKind.IRRELEVANT

RELEVANT_RULES = ("hyp", "lam", "ap", "box")
IRRELEVANT_RULES = ("just", "lamj", "apj", "boxj", "let", "letj")
BODY_RULES = ("just", "let", "letj")


def _default_weights() -> dict[str, float]:
    return {rule: 1.0 for rule in RELEVANT_RULES + IRRELEVANT_RULES}


class GenConfig(BaseModel):
    """Generator settings; the same config and seed give the same stream"""

    max_depth: int = Field(default_factory=lambda: CONFIG.max_depth, ge=0)
    seed: int = 0
    weights: dict[str, float] = Field(default_factory=_default_weights)
    atom_pool: list[str] = Field(default_factory=lambda: list(CONFIG.atoms))
    prop_depth: int = Field(default=3, ge=0)
    max_size: int = Field(default=120, gt=0)


@dataclass(frozen=True)
class Sample:
    context: Context
    expression: Expression
    proposition: Proposition
    kind: JudgmentKind


@dataclass(frozen=True)
class SubstitutionCase:
    """`context, var : prop ⊢ target kind result` with `context ⊢ substitutee`

    mode is "relevant" (a term into a relevant target), "irrelevant" (a term
    into an irrelevant target) or "expression" (an irrelevant let-chain into
    an irrelevant target).
    """

    context: Context
    var: str
    prop: Proposition
    substitutee: Expression
    target: Expression
    result: Proposition
    mode: str


def random_prop(rng: random.Random, atoms: list[str], depth: int) -> Proposition:
    roll = rng.random()
    if depth <= 0 or roll < 0.4:
        return Atom(rng.choice(atoms))
    if roll < 0.75:
        return Arrow(
            random_prop(rng, atoms, depth - 1), random_prop(rng, atoms, depth - 1)
        )
    return Exists(random_prop(rng, atoms, depth - 1))


class Generator:
    """Builds one sample at a time from a shared random source"""

    def __init__(self, cfg: GenConfig, rng: random.Random):
        self.cfg = cfg
        self.rng = rng
        self.free: list[tuple[str, Proposition]] = []
        self.counter = 0
        self.size = 0

    def reset(self):
        self.free = []
        self.counter = 0
        self.size = 0

    # names and props

    def binder(self) -> str:
        self.counter += 1
        return f"x{self.counter - 1}"

    def hypothesis(self, prop: Proposition) -> str:
        name = f"h{len(self.free)}"
        self.free.append((name, prop))
        return name

    def prop(self, ctx: Context) -> Proposition:
        """an intermediate proposition, often one already in scope"""
        in_scope = list(ctx.props()) + [prop for _, prop in self.free]
        if in_scope and self.rng.random() < 0.5:
            return self.rng.choice(in_scope)
        return random_prop(self.rng, self.cfg.atom_pool, 2)

    def _vars_of(self, ctx: Context, goal: Proposition) -> list[str]:
        return [name for name, prop in list(self.free) + list(ctx) if prop == goal]

    def _pick(self, options: list[str]) -> str | None:
        weights = [self.cfg.weights.get(option, 0.0) for option in options]
        if not options or sum(weights) <= 0:
            return None
        return self.rng.choices(options, weights=weights)[0]

    def _exhausted(self, depth: int) -> bool:
        return depth <= 0 or self.size >= self.cfg.max_size

    # closing a goal without further choices

    def close(self, ctx: Context, goal: Proposition) -> Expression:
        self.size += 1
        if candidates := self._vars_of(ctx, goal):
            return Var(self.rng.choice(candidates))
        match goal:
            case Arrow(domain, codomain):
                var = self.binder()
                return Lam(var, domain, self.close(ctx.extend(var, domain), codomain))
            case Exists(body):
                return Box(self.close(ctx, body))
        return Var(self.hypothesis(goal))

    # relevant goals

    def relevant(self, ctx: Context, goal: Proposition, depth: int) -> Expression:
        if self._exhausted(depth):
            return self.close(ctx, goal)
        options = ["ap"]
        if self._vars_of(ctx, goal):
            options.append("hyp")
        if isinstance(goal, Arrow):
            options.append("lam")
        if isinstance(goal, Exists):
            options.append("box")
        choice = self._pick(options)
        self.size += 1
        match choice:
            case "hyp":
                return Var(self.rng.choice(self._vars_of(ctx, goal)))
            case "lam":
                var = self.binder()
                body = self.relevant(
                    ctx.extend(var, goal.domain), goal.codomain, depth - 1
                )
                return Lam(var, goal.domain, body)
            case "box":
                return Box(self.body(ctx, goal.body, depth - 1))
            case "ap":
                domain = self.prop(ctx)
                fun = self.relevant(ctx, Arrow(domain, goal), depth - 1)
                return Ap(fun, self.relevant(ctx, domain, depth - 1))
        return self.close(ctx, goal)

    # irrelevant goals

    def irrelevant(self, ctx: Context, goal: Proposition, depth: int) -> Expression:
        if self._exhausted(depth):
            return self.close(ctx, goal)
        options = ["just", "apj", "let", "letj"]
        if isinstance(goal, Arrow):
            options.append("lamj")
        if isinstance(goal, Exists):
            options.append("boxj")
        choice = self._pick(options)
        self.size += 1
        match choice:
            case "just":
                return self.relevant(ctx, goal, depth - 1)
            case "lamj":
                var = self.binder()
                body = self.irrelevant(
                    ctx.extend(var, goal.domain), goal.codomain, depth - 1
                )
                return LamJ(var, goal.domain, body)
            case "boxj":
                return BoxJ(self.body(ctx, goal.body, depth - 1))
            case "apj":
                domain = self.prop(ctx)
                fun = self.irrelevant(ctx, Arrow(domain, goal), depth - 1)
                return ApJ(fun, self.relevant(ctx, domain, depth - 1))
            case "let" | "letj":
                packed = self.prop(ctx)
                scrutinee = (
                    self.relevant(ctx, Exists(packed), depth - 1)
                    if choice == "let"
                    else self.irrelevant(ctx, Exists(packed), depth - 1)
                )
                var = self.binder()
                body = self.irrelevant(ctx.extend(var, packed), goal, depth - 1)
                node = LetBox if choice == "let" else LetBoxJ
                return node(var, scrutinee, body)
        return self.close(ctx, goal)

    def body(self, ctx: Context, goal: Proposition, depth: int) -> Expression:
        """irrelevant let-chain ending in a term"""
        if self._exhausted(depth):
            return self.close(ctx, goal)
        choice = self._pick(list(BODY_RULES))
        self.size += 1
        if choice in ("let", "letj"):
            packed = self.prop(ctx)
            scrutinee = (
                self.relevant(ctx, Exists(packed), depth - 1)
                if choice == "let"
                else self.irrelevant(ctx, Exists(packed), depth - 1)
            )
            var = self.binder()
            rest = self.body(ctx.extend(var, packed), goal, depth - 1)
            return (LetBox if choice == "let" else LetBoxJ)(var, scrutinee, rest)
        return self.relevant(ctx, goal, depth - 1)

    # samples

    def sample(self, kind: JudgmentKind) -> Sample:
        self.reset()
        goal = random_prop(self.rng, self.cfg.atom_pool, self.cfg.prop_depth)
        depth = self.rng.randint(0, self.cfg.max_depth)
        if kind is REL:
            expression = self.relevant(Context(), goal, depth)
        else:
            expression = self.irrelevant(Context(), goal, depth)
        return Sample(Context(tuple(self.free)), expression, goal, kind)

    def substitution_case(self, mode: str) -> SubstitutionCase:
        self.reset()
        atoms = self.cfg.atom_pool
        depth = max(1, self.rng.randint(0, self.cfg.max_depth) // 2)
        prop = random_prop(self.rng, atoms, 2)
        result = random_prop(self.rng, atoms, 2)
        var = self.binder()
        extended = Context.of((var, prop))
        if mode == "relevant":
            target = self.relevant(extended, result, depth)
        else:
            target = self.irrelevant(extended, result, depth)
        if mode == "expression":
            substitutee = self.body(Context(), prop, depth)
        else:
            substitutee = self.relevant(Context(), prop, depth)
        free = Context(tuple(self.free))
        return SubstitutionCase(free, var, prop, substitutee, target, result, mode)


def generate_well_typed(cfg: GenConfig, kind: JudgmentKind) -> Iterator[Sample]:
    """Endless reproducible stream of samples of the given kind"""
    generator = Generator(cfg, random.Random(cfg.seed))
    while True:
        yield generator.sample(kind)


def sample_at(cfg: GenConfig, seed: int, kind: JudgmentKind) -> Sample:
    """the first sample of the stream for `seed`"""
    return Generator(cfg, random.Random(seed)).sample(kind)


def substitution_case_at(cfg: GenConfig, seed: int, mode: str) -> SubstitutionCase:
    return Generator(cfg, random.Random(seed)).substitution_case(mode)


def props_at(cfg: GenConfig, seed: int, count: int) -> list[Proposition]:
    rng = random.Random(seed)
    return [random_prop(rng, cfg.atom_pool, cfg.prop_depth + 2) for _ in range(count)]
