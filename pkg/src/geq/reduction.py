"""Reduction for the cast calculus.

``reduce_step`` performs one deterministic leftmost-outermost step and names
the rule it applied.  ``whnf`` iterates it to a weak-head normal form,
``normalize`` additionally rewrites all subterms (under binders).  The
value/neutral predicates classify exactly the terms ``reduce_step`` refuses
to step.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

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
    SigTable,
    Term,
    Univ,
    Unk,
    Var,
    EQ_HEAD,
    PI_HEAD,
    ctor_args_at,
    germ,
    head_of,
    ind_head,
    is_germ_for,
    min_germ_level,
    params_at,
    shift,
    subst,
    subst_at,
    subst_many,
    tele_entry_type,
)


class OutOfFuelError(Exception):
    """Step budget exhausted; reported as a verdict, never as a result."""


class StuckError(Exception):
    """No rule applies and the term is not a value (ill-typed input)."""

    def __init__(self, reason: str, term: Term):
        super().__init__(reason)
        self.term = term


class Fuel:
    """Mutable step budget shared down a call tree."""

    def __init__(self, steps: int = 100000):
        if steps < 0:
            raise ValueError("fuel must be non-negative")
        self.remaining = steps

    def spend(self) -> None:
        if self.remaining <= 0:
            raise OutOfFuelError("step budget exhausted")
        self.remaining -= 1


@dataclass(frozen=True)
class Stepped:
    term: Term
    rule: str


@dataclass(frozen=True)
class AlreadyValue:
    pass


@dataclass(frozen=True)
class AlreadyNeutral:
    blocker: Var


@dataclass(frozen=True)
class Stuck:
    reason: str


StepOutcome = Stepped | AlreadyValue | AlreadyNeutral | Stuck

_VALUE = AlreadyValue()


def subst_keep_binder(body: Term, repl: Term) -> Term:
    """Replace index 0 of ``body`` with ``repl`` while keeping the binder in
    scope (``repl`` may itself mention index 0)."""

    return subst_at(shift(body, 1, 1), repl, 0)


def _ascription_inert(ty: Term) -> bool:
    """Ascription shapes at which unknown/error composition operands reduce."""

    match ty:
        case Univ() | Ind() | Unk(Univ()) | Err(Univ()):
            return True
        case _:
            return False


# ---------------------------------------------------------------------------
# Value / neutral classification


def neutral_var(t: Term, sigs: SigTable) -> Var | None:
    """The variable blocking ``t``, when ``t`` is neutral."""

    match t:
        case Var():
            return t
        case App(fn, _):
            return neutral_var(fn, sigs)
        case Match(_, scrut, _, _, _):
            return neutral_var(scrut, sigs)
        case EqElim(_, _, _, _, proof):
            return neutral_var(proof, sigs)
        case Unk(ty) | Err(ty):
            return neutral_var(ty, sigs)
        case Comp(ty, lhs, rhs):
            blocker = neutral_var(ty, sigs)
            if blocker is not None:
                return blocker
            if not (is_value(ty, sigs) and is_value(lhs, sigs) and is_value(rhs, sigs)):
                return None
            if _ascription_inert(ty) and (
                isinstance(lhs, (Unk, Err)) or isinstance(rhs, (Unk, Err))
            ):
                return None
            return neutral_var(lhs, sigs) or neutral_var(rhs, sigs)
        case Cast(src, tgt, body):
            blocker = neutral_var(src, sigs)
            if blocker is not None:
                return blocker
            src_shape = isinstance(src, (Pi, Ind, Eq, Univ)) or (
                isinstance(src, Unk) and isinstance(src.ty, Univ)
            )
            if src_shape:
                blocker = neutral_var(tgt, sigs)
                if blocker is not None:
                    return blocker
            if isinstance(src, Pi) and isinstance(tgt, Pi):
                return neutral_var(body, sigs)
            if isinstance(src, Eq) and isinstance(tgt, Eq):
                return neutral_var(body, sigs)
            if (
                isinstance(src, Ind)
                and isinstance(tgt, Ind)
                and (src.name, src.level) == (tgt.name, tgt.level)
            ):
                return neutral_var(body, sigs)
            if isinstance(src, Unk) and isinstance(src.ty, Univ) and is_value(tgt, sigs):
                return neutral_var(body, sigs)
            return None
        case _:
            return None


def is_neutral(t: Term, sigs: SigTable) -> bool:
    return neutral_var(t, sigs) is not None


def is_value(t: Term, sigs: SigTable) -> bool:
    match t:
        case Univ() | Pi() | Ind() | Eq() | Lam() | Con() | Refl():
            return True
        case Unk(ty) | Err(ty):
            match ty:
                case Univ() | Ind() | Unk(Univ()) | Err(Univ()):
                    return True
                case _:
                    return is_neutral(t, sigs)
        case Cast(src, Unk(Univ(level)), _) if is_germ_for(src, level, sigs):
            return True
        case _:
            return is_neutral(t, sigs)


# ---------------------------------------------------------------------------
# One-step reduction


def reduce_step(t: Term, sigs: SigTable) -> StepOutcome:
    match t:
        case Var():
            return AlreadyNeutral(t)
        case Univ() | Pi() | Lam() | Ind() | Con() | Eq() | Refl():
            return _VALUE
        case App(fn, arg):
            out = reduce_step(fn, sigs)
            match out:
                case Stepped(fn2, rule):
                    return Stepped(App(fn2, arg), rule)
                case AlreadyNeutral():
                    return out
                case Stuck():
                    return out
            if isinstance(fn, Lam):
                return Stepped(subst(fn.body, arg), "beta")
            return Stuck("applied a non-function value")
        case Match():
            return _step_match(t, sigs)
        case Unk(ty):
            return _step_indeterminate(t, ty, sigs, unknown=True)
        case Err(ty):
            return _step_indeterminate(t, ty, sigs, unknown=False)
        case Cast():
            return _step_cast(t, sigs)
        case EqElim(motive, lhs, rhs, base, proof):
            out = reduce_step(proof, sigs)
            match out:
                case Stepped(proof2, rule):
                    return Stepped(replace(t, proof=proof2), rule)
                case AlreadyNeutral():
                    return out
                case Stuck():
                    return out
            if isinstance(proof, Refl):
                mid = subst(motive, proof.wit)
                inner = Cast(subst(motive, lhs), mid, base)
                return Stepped(Cast(mid, subst(motive, rhs), inner), "eq-elim")
            return Stuck("eliminating a non-equality-proof value")
        case Comp():
            return _step_comp(t, sigs)
    return Stuck(f"unrecognized term {type(t).__name__}")


def _sub(out: StepOutcome, rebuild) -> StepOutcome | None:
    """Propagate a subposition outcome; None means the position is a value."""

    match out:
        case Stepped(t2, rule):
            return Stepped(rebuild(t2), rule)
        case AlreadyNeutral() | Stuck():
            return out
        case _:
            return None


def _step_match(t: Match, sigs: SigTable) -> StepOutcome:
    out = _sub(reduce_step(t.scrut, sigs), lambda s: replace(t, scrut=s))
    if out is not None:
        return out
    scrut = t.scrut
    match scrut:
        case Unk():
            return Stepped(Unk(subst(t.motive, scrut)), "match-unk")
        case Err():
            return Stepped(Err(subst(t.motive, scrut)), "match-err")
        case Con(name, ind, level, params, args):
            if ind != t.ind:
                return Stuck("scrutinee constructor from a different inductive")
            k = sigs[ind].ctor_index(name)
            lifted = shift(t, 1)
            rec_body = replace(lifted, scrut=Var(0, "w"))
            rec_fn = Lam(Ind(ind, level, tuple(shift(p, 1) for p in params)), rec_body, "w")
            values = list(reversed(args)) + [rec_fn]
            return Stepped(subst_many(t.branches[k], values), "match-ctor")
        case _:
            return Stuck("matching on a non-constructor value")


def _step_indeterminate(t: Term, ty: Term, sigs: SigTable, unknown: bool) -> StepOutcome:
    out = _sub(reduce_step(ty, sigs), lambda ty2: Unk(ty2) if unknown else Err(ty2))
    if out is not None:
        return out
    tag = "unk" if unknown else "err"
    match ty:
        case Pi(dom, cod, name):
            inner = Unk(cod) if unknown else Err(cod)
            return Stepped(Lam(dom, inner, name), f"{tag}-fun")
        case Eq(ety, lhs, rhs):
            wit = Comp(ety, lhs, rhs) if unknown else Err(ety)
            return Stepped(Refl(wit, lhs, rhs), f"{tag}-eq")
        case Univ() | Ind() | Unk(Univ()) | Err(Univ()):
            return _VALUE
        case _:
            return Stuck(f"{tag} ascribed with a non-type value")


def _cast_src_shape(src: Term) -> bool:
    match src:
        case Pi() | Ind() | Eq() | Univ() | Unk(Univ()):
            return True
        case _:
            return False


def _step_cast(t: Cast, sigs: SigTable) -> StepOutcome:
    src, tgt, body = t.src, t.tgt, t.body
    out = _sub(reduce_step(src, sigs), lambda s: Cast(s, tgt, body))
    if out is not None:
        return out
    if isinstance(src, Err) and isinstance(src.ty, Univ):
        return Stepped(Err(tgt), "cast-dom-err")
    out = _sub(reduce_step(tgt, sigs), lambda g: Cast(src, g, body))
    if out is not None:
        if isinstance(out, AlreadyNeutral) and not _cast_src_shape(src):
            return Stuck("cast source is not a type former")
        return out
    if isinstance(tgt, Err) and isinstance(tgt.ty, Univ):
        return Stepped(Err(tgt), "cast-codom-err")

    if isinstance(src, Unk) and isinstance(src.ty, Univ):
        # source is the unknown type: the subject decides
        out = _sub(reduce_step(body, sigs), lambda b: Cast(src, tgt, b))
        if out is not None:
            return out
        match body:
            case Unk():
                return Stepped(Unk(tgt), "cast-down-unk")
            case Err():
                return Stepped(Err(tgt), "cast-down-err")
            case Cast(inner_src, Unk(Univ(level)), inner_body) if (
                level == src.ty.level and is_germ_for(inner_src, level, sigs)
            ):
                return Stepped(Cast(inner_src, tgt, inner_body), "cast-up-down")
            case _:
                return Stuck("cast out of the unknown type on an untagged subject")

    if isinstance(tgt, Unk) and isinstance(tgt.ty, Univ):
        level = tgt.ty.level
        if is_germ_for(src, level, sigs):
            return _VALUE
        least = min_germ_level(src)
        if least is not None and least > level:
            return Stepped(Err(Unk(Univ(level))), "cast-size-err")
        if isinstance(src, Pi):
            mid = germ(PI_HEAD, level, sigs)
            return Stepped(Cast(mid, tgt, Cast(src, mid, body)), "cast-germ-fun")
        if isinstance(src, Eq):
            mid = germ(EQ_HEAD, level, sigs)
            return Stepped(Cast(mid, tgt, Cast(src, mid, body)), "cast-germ-eq")
        if isinstance(src, Ind):
            mid = germ(ind_head(src.name, level), level, sigs)
            return Stepped(Cast(mid, tgt, Cast(src, mid, body)), "cast-germ-ind")
        return Stuck("cast into the unknown type from a non-type former")

    src_head, tgt_head = head_of(src), head_of(tgt)
    if src_head is None or src_head.tag not in ("Type", "Pi", "Ind", "Eq"):
        return Stuck("cast source is not a type former")
    if tgt_head is None or tgt_head.tag not in ("Type", "Pi", "Ind", "Eq"):
        return Stuck("cast target is not a type former")
    if src_head != tgt_head:
        return Stepped(Err(tgt), "cast-head-err")

    match src:
        case Univ():
            return Stepped(body, "cast-universe")
        case Pi(dom1, cod1, name):
            out = _sub(reduce_step(body, sigs), lambda b: Cast(src, tgt, b))
            if out is not None:
                return out
            if isinstance(body, Lam):
                assert isinstance(tgt, Pi)
                arg = Cast(shift(tgt.dom, 1), shift(dom1, 1), Var(0, name))
                cod_src = subst_keep_binder(cod1, arg)
                applied = App(shift(body, 1), arg)
                return Stepped(
                    Lam(tgt.dom, Cast(cod_src, tgt.cod, applied), tgt.name), "cast-fun"
                )
            return Stuck("casting a non-function between function types")
        case Eq(ety, _, _):
            out = _sub(reduce_step(body, sigs), lambda b: Cast(src, tgt, b))
            if out is not None:
                return out
            if isinstance(body, Refl):
                assert isinstance(tgt, Eq)
                wit = Cast(ety, tgt.ty, body.wit)
                wit = Comp(tgt.ty, wit, tgt.lhs)
                wit = Comp(tgt.ty, wit, tgt.rhs)
                return Stepped(Refl(wit, tgt.lhs, tgt.rhs), "cast-eq")
            return Stuck("casting a non-proof between equality types")
        case Ind(ind, level, old_params):
            out = _sub(reduce_step(body, sigs), lambda b: Cast(src, tgt, b))
            if out is not None:
                return out
            assert isinstance(tgt, Ind)
            match body:
                case Unk():
                    return Stepped(Unk(tgt), "cast-ind-unk")
                case Err():
                    return Stepped(Err(tgt), "cast-ind-err")
                case Con(cname, cind, clevel, _, args) if cind == ind and clevel == level:
                    old_tele = ctor_args_at(sigs[ind], cname, level, list(old_params))
                    new_tele = ctor_args_at(sigs[ind], cname, level, list(tgt.params))
                    new_args: list[Term] = []
                    for m, arg in enumerate(args):
                        src_ty = tele_entry_type(old_tele, list(args), m)
                        tgt_ty = tele_entry_type(new_tele, new_args, m)
                        new_args.append(Cast(src_ty, tgt_ty, arg))
                    return Stepped(
                        Con(cname, ind, level, tgt.params, tuple(new_args)), "cast-ctor"
                    )
                case _:
                    return Stuck("casting a non-constructor between inductive types")
    return Stuck("no cast rule applies")


def _step_comp(t: Comp, sigs: SigTable) -> StepOutcome:
    ty, lhs, rhs = t.ty, t.lhs, t.rhs
    out = _sub(reduce_step(ty, sigs), lambda ty2: Comp(ty2, lhs, rhs))
    if out is not None:
        return out

    out = _sub(reduce_step(lhs, sigs), lambda l: Comp(ty, l, rhs))
    left_neutral: Var | None = None
    if isinstance(out, Stepped):
        return out
    if isinstance(out, Stuck):
        return out
    if isinstance(out, AlreadyNeutral):
        left_neutral = out.blocker

    if _ascription_inert(ty) and left_neutral is None:
        if isinstance(lhs, Unk):
            return Stepped(rhs, "comp-unk-l")
        if isinstance(lhs, Err):
            return Stepped(Err(ty), "comp-err-l")

    out = _sub(reduce_step(rhs, sigs), lambda r: Comp(ty, lhs, r))
    right_neutral: Var | None = None
    if isinstance(out, Stepped):
        return out
    if isinstance(out, Stuck):
        return out
    if isinstance(out, AlreadyNeutral):
        right_neutral = out.blocker

    if _ascription_inert(ty) and right_neutral is None:
        if isinstance(rhs, Unk):
            return Stepped(lhs, "comp-unk-r")
        if isinstance(rhs, Err):
            return Stepped(Err(ty), "comp-err-r")

    if left_neutral is not None or right_neutral is not None:
        return AlreadyNeutral(left_neutral or right_neutral)

    match ty:
        case Univ(level):
            return _comp_at_universe(t, level, sigs)
        case Unk(Univ(level)):
            return _comp_at_unknown_type(t, level, sigs)
        case Ind(ind, ilevel, params):
            match lhs, rhs:
                case Con(n1, i1, l1, _, args1), Con(n2, i2, l2, _, args2):
                    if (i1, l1) != (ind, ilevel) or (i2, l2) != (ind, ilevel):
                        return Stuck("composed constructors from a different inductive")
                    if n1 != n2:
                        return Stepped(Err(ty), "comp-head-err")
                    tele = ctor_args_at(sigs[ind], n1, ilevel, list(params))
                    merged = iter_compose(tele, list(args1), list(args2))
                    return Stepped(Con(n1, ind, ilevel, params, tuple(merged)), "comp-ctor")
                case _:
                    return Stuck("composition at an inductive type on non-constructors")
        case Err(Univ()):
            return Stuck("composition at the error type on non-indeterminates")
        case Pi(dom, cod, name):
            match lhs, rhs:
                case Lam(_, body1, _), Lam(_, body2, _):
                    return Stepped(Lam(dom, Comp(cod, body1, body2), name), "comp-fun")
                case _:
                    return Stuck("composition at a function type on non-functions")
        case Eq(ety, elhs, erhs):
            match lhs, rhs:
                case Refl(w1, _, _), Refl(w2, _, _):
                    return Stepped(Refl(Comp(ety, w1, w2), elhs, erhs), "comp-refl")
                case _:
                    return Stuck("composition at an equality type on non-proofs")
        case _:
            return Stuck("composition ascribed with a non-type value")


def _comp_at_universe(t: Comp, level: int, sigs: SigTable) -> StepOutcome:
    lhs, rhs = t.lhs, t.rhs
    match lhs, rhs:
        case Pi(dom1, cod1, name), Pi(dom2, cod2, _):
            dom = Comp(Univ(level), dom1, dom2)
            var = Var(0, name)
            left = subst_keep_binder(cod1, Cast(shift(dom, 1), shift(dom1, 1), var))
            right = subst_keep_binder(cod2, Cast(shift(dom, 1), shift(dom2, 1), var))
            return Stepped(Pi(dom, Comp(Univ(level), left, right), name), "comp-pi")
        case Eq(ty1, l1, r1), Eq(ty2, l2, r2):
            ty = Comp(Univ(level), ty1, ty2)
            new_l = Comp(ty, Cast(ty1, ty, l1), Cast(ty2, ty, l2))
            new_r = Comp(ty, Cast(ty1, ty, r1), Cast(ty2, ty, r2))
            return Stepped(Eq(ty, new_l, new_r), "comp-eq")
        case Ind(n1, l1, params1), Ind(n2, l2, params2):
            if (n1, l1) != (n2, l2):
                return Stepped(Err(t.ty), "comp-head-err")
            tele = params_at(sigs[n1], l1)
            merged = iter_compose(tele, list(params1), list(params2))
            return Stepped(Ind(n1, l1, tuple(merged)), "comp-ind")
        case Univ(i), Univ(j):
            if i == j:
                return Stepped(Univ(i), "comp-universe")
            return Stepped(Err(t.ty), "comp-head-err")
        case _:
            h1, h2 = head_of(lhs), head_of(rhs)
            if h1 is not None and h2 is not None and h1 != h2:
                return Stepped(Err(t.ty), "comp-head-err")
            return Stuck("composition at a universe on non-types")


def _comp_at_unknown_type(t: Comp, level: int, sigs: SigTable) -> StepOutcome:
    match t.lhs, t.rhs:
        case (
            Cast(g1, Unk(Univ(l1)), u1),
            Cast(g2, Unk(Univ(l2)), u2),
        ) if (
            l1 == level and l2 == level
            and is_germ_for(g1, level, sigs)
            and is_germ_for(g2, level, sigs)
        ):
            if g1 == g2:
                return Stepped(
                    Cast(g1, Unk(Univ(level)), Comp(g1, u1, u2)), "comp-germ"
                )
            return Stepped(Err(Unk(Univ(level))), "comp-germ-err")
        case _:
            return Stuck("composition at the unknown type on untagged values")


def iter_compose(tele, seq1: list[Term], seq2: list[Term]) -> list[Term]:
    """Element-wise composition along a dependent telescope.

    Each element is cast from its entry type under its own earlier elements
    to the entry type under the composed earlier elements, then composed
    there.  The head element needs no cast.
    """

    if not (len(seq1) == len(seq2) == len(tele)):
        raise IndexError("telescope and element sequences must have equal length")
    out: list[Term] = []
    for k in range(len(tele)):
        tgt_ty = tele_entry_type(tele, out, k)
        if k == 0:
            out.append(Comp(tgt_ty, seq1[0], seq2[0]))
            continue
        src1 = tele_entry_type(tele, seq1, k)
        src2 = tele_entry_type(tele, seq2, k)
        out.append(Comp(tgt_ty, Cast(src1, tgt_ty, seq1[k]), Cast(src2, tgt_ty, seq2[k])))
    return out


# ---------------------------------------------------------------------------
# Multi-step reduction


def whnf(t: Term, fuel: Fuel, sigs: SigTable) -> Term:
    while True:
        out = reduce_step(t, sigs)
        match out:
            case Stepped(t2, _):
                fuel.spend()
                t = t2
            case AlreadyValue() | AlreadyNeutral():
                return t
            case Stuck(reason):
                raise StuckError(reason, t)


def normalize(t: Term, fuel: Fuel, sigs: SigTable) -> Term:
    t = whnf(t, fuel, sigs)
    match t:
        case Var() | Univ():
            return t
        case Pi(dom, cod, name):
            return Pi(normalize(dom, fuel, sigs), normalize(cod, fuel, sigs), name)
        case Lam(dom, body, name):
            return Lam(normalize(dom, fuel, sigs), normalize(body, fuel, sigs), name)
        case App(fn, arg):
            return App(normalize(fn, fuel, sigs), normalize(arg, fuel, sigs))
        case Ind(name, level, params):
            return Ind(name, level, tuple(normalize(p, fuel, sigs) for p in params))
        case Con(name, ind, level, params, args):
            return Con(
                name,
                ind,
                level,
                tuple(normalize(p, fuel, sigs) for p in params),
                tuple(normalize(a, fuel, sigs) for a in args),
            )
        case Match(ind, scrut, motive, branches, arities, mn, rn):
            return Match(
                ind,
                normalize(scrut, fuel, sigs),
                normalize(motive, fuel, sigs),
                tuple(normalize(b, fuel, sigs) for b in branches),
                arities,
                mn,
                rn,
            )
        case Unk(ty):
            return Unk(normalize(ty, fuel, sigs))
        case Err(ty):
            return Err(normalize(ty, fuel, sigs))
        case Cast(src, tgt, body):
            return Cast(
                normalize(src, fuel, sigs),
                normalize(tgt, fuel, sigs),
                normalize(body, fuel, sigs),
            )
        case Eq(ty, lhs, rhs):
            return Eq(
                normalize(ty, fuel, sigs),
                normalize(lhs, fuel, sigs),
                normalize(rhs, fuel, sigs),
            )
        case Refl(wit, lhs, rhs):
            return Refl(
                normalize(wit, fuel, sigs),
                normalize(lhs, fuel, sigs),
                normalize(rhs, fuel, sigs),
            )
        case EqElim(motive, lhs, rhs, base, proof, mn):
            return EqElim(
                normalize(motive, fuel, sigs),
                normalize(lhs, fuel, sigs),
                normalize(rhs, fuel, sigs),
                normalize(base, fuel, sigs),
                normalize(proof, fuel, sigs),
                mn,
            )
        case Comp(ty, lhs, rhs):
            return Comp(
                normalize(ty, fuel, sigs),
                normalize(lhs, fuel, sigs),
                normalize(rhs, fuel, sigs),
            )
    raise TypeError(f"not a term: {t!r}")


def contains_error(t: Term) -> list[str] | None:
    """Path to the leftmost error subterm, None when there is none."""

    match t:
        case Err():
            return []
        case Var() | Univ():
            return None
        case Pi(dom, cod, _) | Lam(dom, cod, _):
            for label, sub in (("domain", dom), ("body", cod)):
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
        case App(fn, arg):
            for label, sub in (("function", fn), ("argument", arg)):
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
        case Ind(_, _, params):
            for k, p in enumerate(params):
                path = contains_error(p)
                if path is not None:
                    return [f"param {k}"] + path
            return None
        case Con(name, _, _, params, args):
            for k, p in enumerate(params):
                path = contains_error(p)
                if path is not None:
                    return [f"{name} param {k}"] + path
            for k, a in enumerate(args):
                path = contains_error(a)
                if path is not None:
                    return [f"{name} arg {k}"] + path
            return None
        case Match(_, scrut, motive, branches, _, _, _):
            for label, sub in [("scrutinee", scrut), ("motive", motive)] + [
                (f"branch {k}", b) for k, b in enumerate(branches)
            ]:
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
        case Unk(ty):
            path = contains_error(ty)
            return None if path is None else ["unknown type"] + path
        case Cast(src, tgt, body):
            for label, sub in (("cast source", src), ("cast target", tgt), ("cast subject", body)):
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
        case Eq(ty, lhs, rhs):
            for label, sub in (("element type", ty), ("left side", lhs), ("right side", rhs)):
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
        case Refl(wit, lhs, rhs):
            for label, sub in (("witness", wit), ("left side", lhs), ("right side", rhs)):
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
        case EqElim(motive, lhs, rhs, base, proof, _):
            for label, sub in (
                ("motive", motive),
                ("left side", lhs),
                ("right side", rhs),
                ("base", base),
                ("proof", proof),
            ):
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
        case Comp(ty, lhs, rhs):
            for label, sub in (("type", ty), ("left side", lhs), ("right side", rhs)):
                path = contains_error(sub)
                if path is not None:
                    return [label] + path
            return None
    return None
