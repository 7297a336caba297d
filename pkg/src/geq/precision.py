"""Precision and consistency deciders.

``struct_prec`` decides structural precision between two terms typed in
their own contexts: the left term is at least as informative as the right.
Unknowns absorb anything of a matching type from the right, errors embed
from the left, casts may be stripped when their endpoint types stay under
the right side's type, and a composition is below whatever either operand
is below.  ``def_prec`` closes that relation under reduction, and
``prec_mod_conv`` closes it under reduction on both sides independently
(the equality checker uses it for witnesses).  Consistency is the
symmetric, purely syntactic analogue used by elaboration.
"""

from __future__ import annotations

import dataclasses

from .reduction import Fuel, OutOfFuelError, StuckError, normalize, whnf
from .syntax import (
    App,
    Cast,
    Comp,
    Con,
    Eq,
    EqElim,
    Err,
    Ind,
    Lam,
    Match,
    Pi,
    Refl,
    SEqElim,
    SigTable,
    SLam,
    SMatch,
    SPi,
    SrcTerm,
    SUnk,
    Term,
    Univ,
    Unk,
    Var,
    alpha_eq,
    ctor_args_at,
    shift,
)
from .typecheck import CheckError, Context, presynth, synth_type

EMPTY = Context()


@dataclasses.dataclass(frozen=True)
class PrecQuery:
    """A precision question: is ``lhs`` at least as informative as ``rhs``?"""

    lhs: Term
    rhs: Term
    ctx_lhs: Context = EMPTY
    ctx_rhs: Context = EMPTY


def _type_of(ctx: Context, t: Term, fuel: Fuel, sigs: SigTable) -> Term | None:
    try:
        return normalize(presynth(ctx, t, fuel, sigs), fuel, sigs)
    except (CheckError, StuckError):
        return None


def struct_prec(
    t1: Term,
    t2: Term,
    fuel: Fuel,
    sigs: SigTable,
    ctx1: Context = EMPTY,
    ctx2: Context = EMPTY,
) -> bool:
    # an unknown on the right absorbs anything whose type sits under its own;
    # the unknown type itself additionally absorbs all lower universes
    if isinstance(t2, Unk):
        ty1 = _type_of(ctx1, t1, fuel, sigs)
        if ty1 is not None:
            try:
                ty2_whnf = whnf(t2.ty, fuel, sigs)
            except StuckError:
                ty2_whnf = t2.ty
            if (
                isinstance(ty2_whnf, Univ)
                and isinstance(ty1, Univ)
                and ty1.level < ty2_whnf.level
            ):
                return True
            if def_prec(ty1, t2.ty, fuel, sigs, ctx1, ctx2):
                return True
    # an error on the left embeds below anything whose type sits above its own
    if isinstance(t1, Err):
        ty2 = _type_of(ctx2, t2, fuel, sigs)
        if ty2 is not None and def_prec(t1.ty, ty2, fuel, sigs, ctx1, ctx2):
            return True
    # an error eta-expanded at a function type still embeds
    if isinstance(t1, Lam) and isinstance(t1.body, Err):
        ty2 = _type_of(ctx2, t2, fuel, sigs)
        if isinstance(ty2, Pi):
            pi1 = Pi(t1.dom, t1.body.ty, t1.name)
            if def_prec(pi1, ty2, fuel, sigs, ctx1, ctx2):
                return True
    # a cast may be dropped while both of its endpoint types stay under the
    # other side's type
    if isinstance(t1, Cast):
        ty2 = _type_of(ctx2, t2, fuel, sigs)
        if (
            ty2 is not None
            and def_prec(t1.src, ty2, fuel, sigs, ctx1, ctx2)
            and def_prec(t1.tgt, ty2, fuel, sigs, ctx1, ctx2)
            and struct_prec(t1.body, t2, fuel, sigs, ctx1, ctx2)
        ):
            return True
    if isinstance(t2, Cast):
        ty1 = _type_of(ctx1, t1, fuel, sigs)
        if (
            ty1 is not None
            and def_prec(ty1, t2.src, fuel, sigs, ctx1, ctx2)
            and def_prec(ty1, t2.tgt, fuel, sigs, ctx1, ctx2)
            and struct_prec(t1, t2.body, fuel, sigs, ctx1, ctx2)
        ):
            return True
    # a composition is below whatever either operand is below
    if isinstance(t1, Comp):
        if struct_prec(t1.lhs, t2, fuel, sigs, ctx1, ctx2):
            return True
        if struct_prec(t1.rhs, t2, fuel, sigs, ctx1, ctx2):
            return True

    match t1, t2:
        case Var(i, _), Var(j, _):
            return i == j
        case Univ(i), Univ(j):
            return i == j
        case Lam(dom1, body1, n1), Lam(dom2, body2, _):
            return def_prec(dom1, dom2, fuel, sigs, ctx1, ctx2) and struct_prec(
                body1, body2, fuel, sigs,
                ctx1.extend(n1, dom1), ctx2.extend(n1, dom2),
            )
        case Pi(dom1, cod1, n1), Pi(dom2, cod2, _):
            return struct_prec(dom1, dom2, fuel, sigs, ctx1, ctx2) and struct_prec(
                cod1, cod2, fuel, sigs,
                ctx1.extend(n1, dom1), ctx2.extend(n1, dom2),
            )
        case App(fn1, arg1), App(fn2, arg2):
            return struct_prec(fn1, fn2, fuel, sigs, ctx1, ctx2) and struct_prec(
                arg1, arg2, fuel, sigs, ctx1, ctx2
            )
        case Ind(n1, l1, params1), Ind(n2, l2, params2):
            return (
                (n1, l1) == (n2, l2)
                and len(params1) == len(params2)
                and all(
                    struct_prec(p1, p2, fuel, sigs, ctx1, ctx2)
                    for p1, p2 in zip(params1, params2)
                )
            )
        case Con(n1, i1, l1, params1, args1), Con(n2, i2, l2, params2, args2):
            return (
                (n1, i1, l1) == (n2, i2, l2)
                and len(params1) == len(params2)
                and len(args1) == len(args2)
                and all(
                    struct_prec(a, b, fuel, sigs, ctx1, ctx2)
                    for a, b in zip(params1 + args1, params2 + args2)
                )
            )
        case Match(i1, s1, m1, bs1, ar1, mn, _), Match(i2, s2, m2, bs2, ar2, _, _):
            if i1 != i2 or ar1 != ar2 or len(bs1) != len(bs2):
                return False
            if not struct_prec(s1, s2, fuel, sigs, ctx1, ctx2):
                return False
            sty1 = _type_of(ctx1, s1, fuel, sigs)
            sty2 = _type_of(ctx2, s2, fuel, sigs)
            if not (isinstance(sty1, Ind) and isinstance(sty2, Ind)):
                return False
            if not struct_prec(
                m1, m2, fuel, sigs, ctx1.extend(mn, sty1), ctx2.extend(mn, sty2)
            ):
                return False
            for k in range(len(bs1)):
                csig = sigs[i1].ctors[k]
                bctx1 = ctx1.extend("rec", Pi(sty1, m1, "w"))
                bctx2 = ctx2.extend("rec", Pi(sty2, m2, "w"))
                tele1 = ctor_args_at(sigs[i1], csig.name, sty1.level, list(sty1.params))
                tele2 = ctor_args_at(sigs[i2], csig.name, sty2.level, list(sty2.params))
                for j in range(len(tele1)):
                    bctx1 = bctx1.extend(tele1[j][0], shift(tele1[j][1], 1, j))
                    bctx2 = bctx2.extend(tele2[j][0], shift(tele2[j][1], 1, j))
                if not struct_prec(bs1[k], bs2[k], fuel, sigs, bctx1, bctx2):
                    return False
            return True
        case Cast(src1, tgt1, body1), Cast(src2, tgt2, body2):
            return (
                struct_prec(src1, src2, fuel, sigs, ctx1, ctx2)
                and struct_prec(tgt1, tgt2, fuel, sigs, ctx1, ctx2)
                and struct_prec(body1, body2, fuel, sigs, ctx1, ctx2)
            )
        case Eq(ty1, l1, r1), Eq(ty2, l2, r2):
            return (
                def_prec(ty1, ty2, fuel, sigs, ctx1, ctx2)
                and struct_prec(l1, l2, fuel, sigs, ctx1, ctx2)
                and struct_prec(r1, r2, fuel, sigs, ctx1, ctx2)
            )
        case Refl(w1, l1, r1), Refl(w2, l2, r2):
            return (
                struct_prec(w1, w2, fuel, sigs, ctx1, ctx2)
                and def_prec(l1, l2, fuel, sigs, ctx1, ctx2)
                and def_prec(r1, r2, fuel, sigs, ctx1, ctx2)
            )
        case Comp(ty1, l1, r1), Comp(ty2, l2, r2):
            return (
                struct_prec(ty1, ty2, fuel, sigs, ctx1, ctx2)
                and struct_prec(l1, l2, fuel, sigs, ctx1, ctx2)
                and struct_prec(r1, r2, fuel, sigs, ctx1, ctx2)
            )
        case EqElim(m1, l1, r1, b1, p1, mn), EqElim(m2, l2, r2, b2, p2, _):
            ety1 = _type_of(ctx1, l1, fuel, sigs)
            ety2 = _type_of(ctx2, l2, fuel, sigs)
            if ety1 is None or ety2 is None:
                return False
            return (
                struct_prec(m1, m2, fuel, sigs, ctx1.extend(mn, ety1), ctx2.extend(mn, ety2))
                and struct_prec(l1, l2, fuel, sigs, ctx1, ctx2)
                and struct_prec(r1, r2, fuel, sigs, ctx1, ctx2)
                and struct_prec(b1, b2, fuel, sigs, ctx1, ctx2)
                and struct_prec(p1, p2, fuel, sigs, ctx1, ctx2)
            )
        case _:
            return False


def _reduction_ladder(t: Term, fuel: Fuel, sigs: SigTable) -> tuple[Term, Term, Term]:
    """The term, its weak-head form, and its normal form."""

    try:
        w = whnf(t, fuel, sigs)
    except StuckError:
        w = t
    try:
        n = normalize(w, fuel, sigs)
    except StuckError:
        n = w
    return (t, w, n)


def def_prec(
    t1: Term,
    t2: Term,
    fuel: Fuel,
    sigs: SigTable,
    ctx1: Context = EMPTY,
    ctx2: Context = EMPTY,
) -> bool:
    """Precision up to reduction, stepping both sides in lockstep."""

    tried: list[tuple[Term, Term]] = []
    for pair in zip(_reduction_ladder(t1, fuel, sigs), _reduction_ladder(t2, fuel, sigs)):
        if pair in tried:
            continue
        tried.append(pair)
        if struct_prec(pair[0], pair[1], fuel, sigs, ctx1, ctx2):
            return True
    return False


def prec_mod_conv(
    t1: Term,
    t2: Term,
    fuel: Fuel,
    sigs: SigTable,
    ctx: Context = EMPTY,
) -> bool:
    """Precision up to reduction on each side independently."""

    tried: list[tuple[Term, Term]] = []
    for u1 in _reduction_ladder(t1, fuel, sigs):
        for u2 in _reduction_ladder(t2, fuel, sigs):
            if (u1, u2) in tried:
                continue
            tried.append((u1, u2))
            if struct_prec(u1, u2, fuel, sigs, ctx, ctx):
                return True
    return False


# ---------------------------------------------------------------------------
# Consistency


def alpha_consistent(t1: Term, t2: Term) -> bool:
    """Symmetric syntactic agreement: unknowns agree with everything, casts
    and their ascriptions are ignored, compositions must agree on both
    operands, errors agree only with unknowns.

    Errors are not consistent even with themselves: an error is more precise
    than every term, so any error self-agreement would spread to all pairs
    under upward closure of consistency along precision."""

    if isinstance(t1, Unk) or isinstance(t2, Unk):
        return True
    if isinstance(t1, Cast):
        return alpha_consistent(t1.body, t2)
    if isinstance(t2, Cast):
        return alpha_consistent(t1, t2.body)
    if isinstance(t1, Comp):
        return alpha_consistent(t1.lhs, t2) and alpha_consistent(t1.rhs, t2)
    if isinstance(t2, Comp):
        return alpha_consistent(t1, t2.lhs) and alpha_consistent(t1, t2.rhs)

    match t1, t2:
        case Var(i, _), Var(j, _):
            return i == j
        case Univ(i), Univ(j):
            return i == j
        case Lam(dom1, body1, _), Lam(dom2, body2, _):
            return alpha_consistent(dom1, dom2) and alpha_consistent(body1, body2)
        case Pi(dom1, cod1, _), Pi(dom2, cod2, _):
            return alpha_consistent(dom1, dom2) and alpha_consistent(cod1, cod2)
        case App(fn1, arg1), App(fn2, arg2):
            return alpha_consistent(fn1, fn2) and alpha_consistent(arg1, arg2)
        case Ind(n1, l1, params1), Ind(n2, l2, params2):
            return (
                (n1, l1) == (n2, l2)
                and len(params1) == len(params2)
                and all(alpha_consistent(a, b) for a, b in zip(params1, params2))
            )
        case Con(n1, i1, l1, params1, args1), Con(n2, i2, l2, params2, args2):
            return (
                (n1, i1, l1) == (n2, i2, l2)
                and len(params1) == len(params2)
                and len(args1) == len(args2)
                and all(
                    alpha_consistent(a, b)
                    for a, b in zip(params1 + args1, params2 + args2)
                )
            )
        case Match(i1, s1, m1, bs1, ar1, _, _), Match(i2, s2, m2, bs2, ar2, _, _):
            return (
                i1 == i2
                and ar1 == ar2
                and len(bs1) == len(bs2)
                and alpha_consistent(s1, s2)
                and alpha_consistent(m1, m2)
                and all(alpha_consistent(a, b) for a, b in zip(bs1, bs2))
            )
        case Eq(ty1, l1, r1), Eq(ty2, l2, r2):
            return (
                alpha_consistent(ty1, ty2)
                and alpha_consistent(l1, l2)
                and alpha_consistent(r1, r2)
            )
        case Refl(w1, l1, r1), Refl(w2, l2, r2):
            return (
                alpha_consistent(w1, w2)
                and alpha_consistent(l1, l2)
                and alpha_consistent(r1, r2)
            )
        case EqElim(m1, l1, r1, b1, p1, _), EqElim(m2, l2, r2, b2, p2, _):
            return all(
                alpha_consistent(a, b)
                for a, b in ((m1, m2), (l1, l2), (r1, r2), (b1, b2), (p1, p2))
            )
        case _:
            return False


def def_consistent(t1: Term, t2: Term, fuel: Fuel, sigs: SigTable) -> bool:
    """Consistency up to reduction."""

    try:
        t1 = normalize(t1, fuel, sigs)
    except StuckError:
        pass
    try:
        t2 = normalize(t2, fuel, sigs)
    except StuckError:
        pass
    return alpha_consistent(t1, t2)


# ---------------------------------------------------------------------------
# Surface precision and boolean observations


def surface_prec(s1: SrcTerm, s2: SrcTerm) -> bool:
    """The right side is the left with subterms replaced by unknowns whose
    levels name the universe that the replaced subterm's type lives in."""

    try:
        return _sprec(s1, s2, EMPTY, True, Fuel(100000), SigTable())
    except (CheckError, StuckError, OutOfFuelError):
        return False


def _site_level_ok(ctx: Context, a: SrcTerm, level: int,
                   fuel: Fuel, sigs: SigTable) -> bool:
    from .elaborate import elab_synth

    _, aty = elab_synth(ctx, a, fuel, sigs)
    return synth_type(ctx, aty, fuel, sigs) == level


def _sprec(a: SrcTerm, b: SrcTerm, ctx: Context, known: bool,
           fuel: Fuel, sigs: SigTable) -> bool:
    if isinstance(b, SUnk) and not isinstance(a, SUnk):
        # hole levels are only checkable where the binder chain could be
        # elaborated; elsewhere the structure alone decides
        return _site_level_ok(ctx, a, b.level, fuel, sigs) if known else True
    if type(a) is not type(b):
        return False

    def extend(name: str, dom: SrcTerm) -> tuple[Context, bool]:
        if not known:
            return ctx, False
        from .elaborate import elab_type

        try:
            gdom, _ = elab_type(ctx, dom, fuel, sigs)
        except (CheckError, StuckError):
            return ctx, False
        return ctx.extend(name, gdom), True

    match a:
        case SPi(dom, cod, name):
            assert isinstance(b, SPi)
            if not _sprec(dom, b.dom, ctx, known, fuel, sigs):
                return False
            inner, inner_known = extend(name, dom)
            return _sprec(cod, b.cod, inner, inner_known, fuel, sigs)
        case SLam(dom, body, name):
            assert isinstance(b, SLam)
            if not _sprec(dom, b.dom, ctx, known, fuel, sigs):
                return False
            inner, inner_known = extend(name, dom)
            return _sprec(body, b.body, inner, inner_known, fuel, sigs)
        case SMatch(ind, scrut, motive, branches, arities):
            assert isinstance(b, SMatch)
            return (
                ind == b.ind
                and arities == b.arities
                and len(branches) == len(b.branches)
                and _sprec(scrut, b.scrut, ctx, known, fuel, sigs)
                and _sprec(motive, b.motive, ctx, False, fuel, sigs)
                and all(
                    _sprec(x, y, ctx, False, fuel, sigs)
                    for x, y in zip(branches, b.branches)
                )
            )
        case SEqElim(motive, lhs, rhs, base, proof):
            assert isinstance(b, SEqElim)
            return _sprec(motive, b.motive, ctx, False, fuel, sigs) and all(
                _sprec(x, y, ctx, known, fuel, sigs)
                for x, y in zip(
                    (lhs, rhs, base, proof), (b.lhs, b.rhs, b.base, b.proof)
                )
            )
        case _:
            for f in dataclasses.fields(a):
                if not f.compare:
                    continue
                x, y = getattr(a, f.name), getattr(b, f.name)
                if isinstance(x, SrcTerm):
                    if not _sprec(x, y, ctx, known, fuel, sigs):
                        return False
                elif isinstance(x, tuple) and x and isinstance(x[0], SrcTerm):
                    if len(x) != len(y) or not all(
                        _sprec(p, q, ctx, known, fuel, sigs)
                        for p, q in zip(x, y)
                    ):
                        return False
                elif x != y:
                    return False
            return True


def bool_prec(o1: str, o2: str) -> bool:
    """Precision on boolean observations: err below all, unknown above all."""

    return o1 == "err" or o2 == "unk" or o1 == o2
