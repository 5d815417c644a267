"""jex.derived

Builders for the derived constructions: truncation introduction and
elimination, the lax axioms, the existential-implication rules and the proof
trees relating `just` conclusions, existential implication and Ex.
"""

from jex.checker import (
    IRR,
    REL,
    ArrowExpected,
    Derivation,
    Judgment,
    Rule,
    infer_irrelevant,
    infer_relevant,
)
from jex.logic import JUST, TRUE, LogicalDerivation, LogicalRule, node
from jex.syntax import (
    Ap,
    ApJ,
    Arrow,
    Box,
    Context,
    Exists,
    Expression,
    JudgmentKind,
    Lam,
    LamJ,
    LetBox,
    Proposition,
    Var,
    free_vars,
    fresh,
    lolli,
)


class BuilderError(Exception):
    """Unknown builder or wrong number of arguments"""

    def __init__(self, detail: str):
        self.detail = detail


# truncation


def trunc_intro(ctx: Context, t: Expression) -> tuple[Expression, Derivation]:
    """⟨t⟩ : Ex φ for t : φ, by just then ExI"""
    infer_relevant(ctx, t)
    boxed = Box(t)
    _, derivation = infer_relevant(ctx, boxed)
    return boxed, derivation


def trunc_elim(
    ctx: Context, f: Expression, f_derivation: Derivation | None = None
) -> tuple[Expression, Derivation]:
    """λⱼy. let ⟨x⟩ be y in apⱼ(f, x) :: Ex φ -> ψ for f :: φ -> ψ.

    The tree carries the explicit weakening and exchange steps. Pass
    `f_derivation` to graft a given derivation of `f` (for instance an open
    premise) instead of inferring one.
    """
    if f_derivation is None:
        f_prop, f_derivation = infer_irrelevant(ctx, f)
    else:
        f_prop = f_derivation.conclusion.prop
    if not isinstance(f_prop, Arrow):
        raise ArrowExpected(f_prop)
    domain, codomain = f_prop.domain, f_prop.codomain
    packed = Exists(domain)

    y = fresh(ctx.names() | free_vars(f), "y")
    x = fresh(ctx.names() | free_vars(f) | {y}, "x")
    ctx_x = ctx.extend(x, domain)
    ctx_y = ctx.extend(y, packed)
    applied = ApJ(f, Var(x))
    unpacked = LetBox(x, Var(y), applied)
    result = LamJ(y, packed, unpacked)

    def at(context, subject, kind, prop, rule, *premises):
        return Derivation(Judgment(context, subject, kind, prop), rule, premises)

    apply_d = at(
        ctx_x,
        applied,
        IRR,
        codomain,
        Rule.ARROW_EJ,
        at(ctx_x, f, IRR, f_prop, Rule.WEAKEN, f_derivation),
        at(ctx_x, Var(x), REL, domain, Rule.HYP),
    )
    body_d = at(
        ctx_y.extend(x, domain),
        applied,
        IRR,
        codomain,
        Rule.EXCHANGE,
        at(ctx_x.extend(y, packed), applied, IRR, codomain, Rule.WEAKEN, apply_d),
    )
    let_d = at(
        ctx_y,
        unpacked,
        IRR,
        codomain,
        Rule.EXISTS_E,
        at(ctx_y, Var(y), REL, packed, Rule.HYP),
        body_d,
    )
    return result, at(ctx, result, IRR, Arrow(packed, codomain), Rule.ARROW_IJ, let_d)


# lax axioms


def lax_axiom(
    which: str, phi: Proposition, psi: Proposition | None = None
) -> tuple[Expression, Derivation]:
    """Closed relevant witnesses of the three lax-modality axioms"""
    if (which == "iii") != (psi is not None):
        count = 2 if which == "iii" else 1
        raise BuilderError(f"lax-{which} takes {count} proposition(s)")
    match which:
        case "i":
            term = Lam("x", phi, Box(Var("x")))
        case "ii":
            term = Lam(
                "y",
                Exists(Exists(phi)),
                Box(LetBox("z", Var("y"), LetBox("x", Var("z"), Var("x")))),
            )
        case "iii":
            term = Lam(
                "f",
                Arrow(phi, psi),
                Lam(
                    "y",
                    Exists(phi),
                    Box(LetBox("x", Var("y"), Ap(Var("f"), Var("x")))),
                ),
            )
        case _:
            raise BuilderError(f"unknown lax axiom '{which}'")
    _, derivation = infer_relevant(Context(), term)
    return term, derivation


# logical trees


def _hyp(hyps, prop):
    return node(LogicalRule.HYP, hyps, prop, TRUE)


def _premise(prop, kind, hyps=()):
    return node(LogicalRule.PREMISE, hyps, prop, kind)


def _weaken(hyps, d):
    concl = d.conclusion
    return node(LogicalRule.WEAKEN, hyps, concl.conclusion, concl.kind, d)


def _exchange(hyps, d):
    concl = d.conclusion
    return node(LogicalRule.EXCHANGE, hyps, concl.conclusion, concl.kind, d)


def _just(d):
    concl = d.conclusion
    return node(LogicalRule.JUST, concl.hypotheses, concl.conclusion, JUST, d)


def graft(tree: LogicalDerivation, proof: LogicalDerivation) -> LogicalDerivation:
    """replace every open premise matching `proof`'s conclusion by `proof`"""
    if tree.rule is LogicalRule.PREMISE and tree.conclusion == proof.conclusion:
        return proof
    return LogicalDerivation(
        tree.conclusion, tree.rule, tuple(graft(p, proof) for p in tree.premises)
    )


def _prop1_left(phi, psi):
    # phi -o psi true  ==>  phi -> psi just
    return node(
        LogicalRule.ARROW_IJ,
        (),
        Arrow(phi, psi),
        JUST,
        node(
            LogicalRule.LOLLI_E,
            (phi,),
            psi,
            JUST,
            _weaken((phi,), _premise(lolli(phi, psi), TRUE)),
            _hyp((phi,), phi),
        ),
    )


def _prop1_right(phi, psi):
    # phi -> psi just  ==>  phi -o psi true
    return node(
        LogicalRule.LOLLI_I,
        (),
        lolli(phi, psi),
        TRUE,
        node(
            LogicalRule.ARROW_EJ,
            (phi,),
            psi,
            JUST,
            _weaken((phi,), _premise(Arrow(phi, psi), JUST)),
            _hyp((phi,), phi),
        ),
    )


def _prop2_left(phi, psi):
    # phi -o psi true  ==>  Ex phi -> Ex psi true
    packed = Exists(phi)
    unpacked = node(
        LogicalRule.EXISTS_E,
        (phi,),
        psi,
        JUST,
        node(
            LogicalRule.ARROW_E,
            (phi,),
            Exists(psi),
            TRUE,
            _weaken((phi,), _premise(lolli(phi, psi), TRUE)),
            _hyp((phi,), phi),
        ),
        _just(_exchange((phi, psi), _weaken((psi, phi), _hyp((psi,), psi)))),
    )
    return node(
        LogicalRule.ARROW_I,
        (),
        Arrow(packed, Exists(psi)),
        TRUE,
        node(
            LogicalRule.EXISTS_I,
            (packed,),
            Exists(psi),
            TRUE,
            node(
                LogicalRule.EXISTS_E,
                (packed,),
                psi,
                JUST,
                _hyp((packed,), packed),
                _exchange((packed, phi), _weaken((phi, packed), unpacked)),
            ),
        ),
    )


def _boxed_hyp(phi):
    # phi |- Ex phi true
    return node(
        LogicalRule.EXISTS_I, (phi,), Exists(phi), TRUE, _just(_hyp((phi,), phi))
    )


def _prop2_right(phi, psi):
    # Ex phi -> Ex psi true  ==>  phi -o psi true
    premise = Arrow(Exists(phi), Exists(psi))
    return node(
        LogicalRule.ARROW_I,
        (),
        lolli(phi, psi),
        TRUE,
        node(
            LogicalRule.ARROW_E,
            (phi,),
            Exists(psi),
            TRUE,
            _weaken((phi,), _premise(premise, TRUE)),
            _boxed_hyp(phi),
        ),
    )


def _prop3_left(phi, psi):
    # phi -o psi true  ==>  Ex phi -> psi just
    packed = Exists(phi)
    applied = node(
        LogicalRule.LOLLI_E,
        (phi,),
        psi,
        JUST,
        _weaken((phi,), _premise(lolli(phi, psi), TRUE)),
        _hyp((phi,), phi),
    )
    return node(
        LogicalRule.ARROW_IJ,
        (),
        Arrow(packed, psi),
        JUST,
        node(
            LogicalRule.EXISTS_E,
            (packed,),
            psi,
            JUST,
            _hyp((packed,), packed),
            _exchange((packed, phi), _weaken((phi, packed), applied)),
        ),
    )


def _prop3_right(phi, psi):
    # Ex phi -> psi just  ==>  phi -o psi true
    return node(
        LogicalRule.LOLLI_I,
        (),
        lolli(phi, psi),
        TRUE,
        node(
            LogicalRule.ARROW_EJ,
            (phi,),
            psi,
            JUST,
            _weaken((phi,), _premise(Arrow(Exists(phi), psi), JUST)),
            _boxed_hyp(phi),
        ),
    )


def _prop5(phi, psi):
    # Ex (phi -> psi) true  ==>  Ex phi -> Ex psi true
    packed = Exists(phi)
    implication = Arrow(phi, psi)
    hyps = (phi, implication)
    applied = node(
        LogicalRule.ARROW_E,
        hyps,
        psi,
        TRUE,
        _exchange(hyps, _weaken((implication, phi), _hyp((implication,), implication))),
        _weaken(hyps, _hyp((phi,), phi)),
    )
    unpacked = node(
        LogicalRule.EXISTS_E,
        (phi,),
        psi,
        JUST,
        _weaken((phi,), _premise(Exists(implication), TRUE)),
        _just(applied),
    )
    return node(
        LogicalRule.ARROW_I,
        (),
        Arrow(packed, Exists(psi)),
        TRUE,
        node(
            LogicalRule.EXISTS_I,
            (packed,),
            Exists(psi),
            TRUE,
            node(
                LogicalRule.EXISTS_E,
                (packed,),
                psi,
                JUST,
                _hyp((packed,), packed),
                _exchange((packed, phi), _weaken((phi, packed), unpacked)),
            ),
        ),
    )


def _prop6(phi, _psi=None):
    # |- Ex Ex phi -> Ex phi true
    packed = Exists(phi)
    twice = Exists(packed)
    inner = node(
        LogicalRule.EXISTS_E,
        (packed,),
        phi,
        JUST,
        _hyp((packed,), packed),
        _exchange((packed, phi), _weaken((phi, packed), _just(_hyp((phi,), phi)))),
    )
    return node(
        LogicalRule.ARROW_I,
        (),
        Arrow(twice, packed),
        TRUE,
        node(
            LogicalRule.EXISTS_I,
            (twice,),
            packed,
            TRUE,
            node(
                LogicalRule.EXISTS_E,
                (twice,),
                phi,
                JUST,
                _hyp((twice,), twice),
                _exchange((twice, packed), _weaken((packed, twice), inner)),
            ),
        ),
    )


WITNESSES = {
    "1L": _prop1_left,
    "1R": _prop1_right,
    "2L": _prop2_left,
    "2R": _prop2_right,
    "3L": _prop3_left,
    "3R": _prop3_right,
    "4L": lambda phi, psi: graft(_prop3_left(phi, psi), _prop1_right(phi, psi)),
    "4R": lambda phi, psi: graft(_prop1_left(phi, psi), _prop3_right(phi, psi)),
    "5": _prop5,
    "6": _prop6,
}


def proposition_witness(
    which: str, phi: Proposition, psi: Proposition | None = None
) -> LogicalDerivation:
    """Proof tree of one direction of the equivalences between `just`
    conclusions, existential implication and Ex, instantiated at phi, psi.

    Open premises are the schematic assumptions of each direction.
    """
    if which not in WITNESSES:
        raise BuilderError(f"unknown proposition witness '{which}'")
    if which != "6" and psi is None:
        raise BuilderError(f"proposition witness {which} takes 2")
    return WITNESSES[which](phi, psi)


def lolli_tree(
    which: str, phi: Proposition, psi: Proposition, kind: JudgmentKind = TRUE
) -> LogicalDerivation:
    """Derived introduction ("I") or elimination ("E") of phi -o psi"""
    arrow_i, exists_i, arrow_e, exists_e = (
        (
            LogicalRule.ARROW_I,
            LogicalRule.EXISTS_I,
            LogicalRule.ARROW_E,
            LogicalRule.EXISTS_E,
        )
        if kind is TRUE
        else (
            LogicalRule.ARROW_IJ,
            LogicalRule.EXISTS_IJ,
            LogicalRule.ARROW_EJ,
            LogicalRule.EXISTS_EJ,
        )
    )
    match which:
        case "I":
            return node(
                arrow_i,
                (),
                lolli(phi, psi),
                kind,
                node(
                    exists_i,
                    (phi,),
                    Exists(psi),
                    kind,
                    _premise(psi, JUST, (phi,)),
                ),
            )
        case "E":
            return node(
                exists_e,
                (),
                psi,
                JUST,
                node(
                    arrow_e,
                    (),
                    Exists(psi),
                    kind,
                    _premise(lolli(phi, psi), kind),
                    _premise(phi, TRUE),
                ),
                _just(_hyp((psi,), psi)),
            )
    raise BuilderError(f"unknown existential implication rule '{which}'")


def axiom_tree(
    which: str, phi: Proposition, psi: Proposition | None = None
) -> LogicalDerivation:
    """Logical proofs of lax axioms i and iii; ii is proposition witness 6"""
    match which:
        case "i":
            return node(
                LogicalRule.ARROW_I, (), Arrow(phi, Exists(phi)), TRUE, _boxed_hyp(phi)
            )
        case "ii":
            return _prop6(phi)
        case "iii" if psi is not None:
            return _axiom_iii(phi, psi)
    raise BuilderError(f"no proof tree for lax axiom '{which}'")


def _axiom_iii(phi, psi):
    packed = Exists(phi)
    implication = Arrow(phi, psi)
    result = Exists(psi)
    applied = node(
        LogicalRule.ARROW_E,
        (implication, phi),
        psi,
        TRUE,
        _weaken((implication, phi), _hyp((implication,), implication)),
        _exchange(
            (implication, phi), _weaken((phi, implication), _hyp((phi,), phi))
        ),
    )
    unpacked = node(
        LogicalRule.EXISTS_E,
        (packed, implication),
        psi,
        JUST,
        _weaken((packed, implication), _hyp((packed,), packed)),
        _exchange(
            (packed, implication, phi),
            _weaken((implication, phi, packed), _just(applied)),
        ),
    )
    boxed = node(
        LogicalRule.EXISTS_I, (packed, implication), result, TRUE, unpacked
    )
    return node(
        LogicalRule.ARROW_I,
        (),
        Arrow(implication, Arrow(packed, result)),
        TRUE,
        node(
            LogicalRule.ARROW_I,
            (implication,),
            Arrow(packed, result),
            TRUE,
            _exchange((implication, packed), boxed),
        ),
    )


def relevant_to_lolli(phi: Proposition, psi: Proposition) -> LogicalDerivation:
    """phi -> psi true  ==>  phi -o psi true"""
    implication = Arrow(phi, psi)
    return node(
        LogicalRule.ARROW_I,
        (),
        lolli(phi, psi),
        TRUE,
        node(
            LogicalRule.EXISTS_I,
            (phi,),
            Exists(psi),
            TRUE,
            _just(
                node(
                    LogicalRule.ARROW_E,
                    (phi,),
                    psi,
                    TRUE,
                    _weaken((phi,), _premise(implication, TRUE)),
                    _hyp((phi,), phi),
                )
            ),
        ),
    )


# builder registry for the command line and the service

EXPR_BUILDERS = ("trunc-intro", "trunc-elim")
BUILDERS = (
    EXPR_BUILDERS
    + tuple(f"prop-{which}" for which in WITNESSES)
    + ("lolli-I", "lolli-Ij", "lolli-E", "lolli-Ej")
    + ("axiom-i", "axiom-ii", "axiom-iii", "true-to-lolli")
    + ("lax-i", "lax-ii", "lax-iii")
)


def build_logical(name: str, props: list[Proposition]) -> LogicalDerivation:
    """Dispatch a `prop-*`, `lolli-*`, `axiom-*` or `true-to-lolli` builder"""
    family, _, which = name.partition("-")
    match family, props:
        case "prop", [phi]:
            return proposition_witness(which, phi)
        case "prop", [phi, psi]:
            return proposition_witness(which, phi, psi)
        case "lolli", [phi, psi]:
            kind = JUST if which.endswith("j") else TRUE
            return lolli_tree(which.removesuffix("j"), phi, psi, kind)
        case "axiom", [phi]:
            return axiom_tree(which, phi)
        case "axiom", [phi, psi]:
            return axiom_tree(which, phi, psi)
        case "true", [phi, psi] if which == "to-lolli":
            return relevant_to_lolli(phi, psi)
    raise BuilderError(f"unknown builder '{name}' for {len(props)} argument(s)")


def build_lax(name: str, props: list[Proposition]) -> tuple[Expression, Derivation]:
    """Dispatch a `lax-i`, `lax-ii` or `lax-iii` builder"""
    family, _, which = name.partition("-")
    if family != "lax" or not 1 <= len(props) <= 2:
        raise BuilderError(f"unknown builder '{name}' for {len(props)} argument(s)")
    return lax_axiom(which, *props)


def is_lax_builder(name: str) -> bool:
    return name.startswith("lax-")

