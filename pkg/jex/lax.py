"""jex.lax

Translation between propositions and lax-logic propositions: Ex becomes the
lax modality `O`, implication becomes `=>`, atoms stay atoms.
"""

from dataclasses import dataclass

from jex.syntax import Arrow, Atom, Context, Exists, Proposition


@dataclass(frozen=True)
class LaxAtom:
    name: str


@dataclass(frozen=True)
class Implies:
    domain: "LaxProposition"
    codomain: "LaxProposition"


@dataclass(frozen=True)
class Circle:
    """lax modality ◯"""

    body: "LaxProposition"


LaxProposition = LaxAtom | Implies | Circle


def to_lax(prop: Proposition) -> LaxProposition:
    match prop:
        case Atom(name):
            return LaxAtom(name)
        case Arrow(domain, codomain):
            return Implies(to_lax(domain), to_lax(codomain))
        case Exists(body):
            return Circle(to_lax(body))
    raise TypeError(f"not a proposition: {prop!r}")


def from_lax(prop: LaxProposition) -> Proposition:
    match prop:
        case LaxAtom(name):
            return Atom(name)
        case Implies(domain, codomain):
            return Arrow(from_lax(domain), from_lax(codomain))
        case Circle(body):
            return Exists(from_lax(body))
    raise TypeError(f"not a lax proposition: {prop!r}")


def context_to_lax(ctx: Context) -> tuple[LaxProposition, ...]:
    """pointwise; hypotheses are all `true` on both sides"""
    return tuple(to_lax(prop) for prop in ctx.props())


def context_from_lax(
    hypotheses: tuple[LaxProposition, ...], hint: str = "h"
) -> Context:
    """pointwise, naming the hypotheses h0, h1, ..."""
    return Context(
        tuple(
            (f"{hint}{index}", from_lax(prop)) for index, prop in enumerate(hypotheses)
        )
    )
