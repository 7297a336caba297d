"""Bidirectional typing for the cast calculus.

Synthesis (``synth``) computes a type; checking (``check``) compares a
synthesized type with the expected one up to convertibility.  Casts are
checked against their source type only; consistency plays no role here,
it belongs to elaboration.  ``presynth`` is synthesis with the equality
proof's witness-precision side condition switched off; the precision
deciders use it to type the sides of a query without recursing back into
precision.
"""

from __future__ import annotations

from dataclasses import dataclass

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
    SigTable,
    Term,
    Univ,
    Unk,
    Var,
    alpha_eq,
    ctor_args_at,
    params_at,
    shift,
    subst,
    tele_entry_type,
)

OutOfFuel = OutOfFuelError


class CheckError(Exception):
    """A typing failure, with the offending term attached."""

    def __init__(self, message: str, term: Term | None = None):
        super().__init__(message)
        self.term = term


class TypeMismatch(CheckError):
    pass


class HeadMismatch(CheckError):
    pass


class ScopeError(CheckError):
    pass


class WitnessNotPrecise(CheckError):
    pass


@dataclass(frozen=True)
class Context:
    """Typing context; innermost binder last, looked up by de Bruijn index."""

    entries: tuple[tuple[str, Term], ...] = ()

    def extend(self, name: str, ty: Term) -> "Context":
        return Context(self.entries + ((name, ty),))

    def lookup(self, idx: int) -> Term:
        if idx < 0 or idx >= len(self.entries):
            raise ScopeError(f"variable index {idx} out of scope")
        return shift(self.entries[-1 - idx][1], idx + 1)

    def __len__(self) -> int:
        return len(self.entries)


def convertible(t1: Term, t2: Term, fuel: Fuel, sigs: SigTable) -> bool:
    """Definitional equality: reduce both sides, compare up to binder names."""

    if alpha_eq(t1, t2):
        return True
    try:
        return alpha_eq(normalize(t1, fuel, sigs), normalize(t2, fuel, sigs))
    except StuckError:
        return False


def synth(ctx: Context, t: Term, fuel: Fuel, sigs: SigTable) -> Term:
    return _synth(ctx, t, fuel, sigs, strict=True)


def presynth(ctx: Context, t: Term, fuel: Fuel, sigs: SigTable) -> Term:
    return _synth(ctx, t, fuel, sigs, strict=False)


def check(ctx: Context, t: Term, ty: Term, fuel: Fuel, sigs: SigTable,
          strict: bool = True) -> None:
    got = _synth(ctx, t, fuel, sigs, strict)
    if not convertible(got, ty, fuel, sigs):
        raise TypeMismatch(f"expected a different type for {type(t).__name__}", t)


def constrained_synth(ctx: Context, t: Term, shape: str, fuel: Fuel,
                      sigs: SigTable, strict: bool = True) -> Term:
    """Synthesize and reduce the type to the requested head shape."""

    ty = whnf(_synth(ctx, t, fuel, sigs, strict), fuel, sigs)
    want = {"Type": Univ, "Pi": Pi, "Ind": Ind, "Eq": Eq}[shape]
    if not isinstance(ty, want):
        raise HeadMismatch(f"expected a {shape}-headed type", t)
    return ty


def synth_type(ctx: Context, t: Term, fuel: Fuel, sigs: SigTable,
               strict: bool = True) -> int:
    """Check that ``t`` is a type and return its universe level."""

    ty = constrained_synth(ctx, t, "Type", fuel, sigs, strict)
    assert isinstance(ty, Univ)
    return ty.level


def _synth(ctx: Context, t: Term, fuel: Fuel, sigs: SigTable, strict: bool) -> Term:
    match t:
        case Var(idx, _):
            return ctx.lookup(idx)
        case Univ(level):
            return Univ(level + 1)
        case Pi(dom, cod, name):
            i = synth_type(ctx, dom, fuel, sigs, strict)
            j = synth_type(ctx.extend(name, dom), cod, fuel, sigs, strict)
            return Univ(max(i, j))
        case Lam(dom, body, name):
            synth_type(ctx, dom, fuel, sigs, strict)
            body_ty = _synth(ctx.extend(name, dom), body, fuel, sigs, strict)
            return Pi(dom, body_ty, name)
        case App(fn, arg):
            fn_ty = constrained_synth(ctx, fn, "Pi", fuel, sigs, strict)
            assert isinstance(fn_ty, Pi)
            check(ctx, arg, fn_ty.dom, fuel, sigs, strict)
            return subst(fn_ty.cod, arg)
        case Ind(name, level, params):
            if name not in sigs:
                raise ScopeError(f"unknown inductive {name}", t)
            tele = params_at(sigs[name], level)
            if len(params) != len(tele):
                raise TypeMismatch(f"{name} expects {len(tele)} parameters", t)
            for k, p in enumerate(params):
                check(ctx, p, tele_entry_type(tele, list(params), k), fuel, sigs, strict)
            return Univ(level)
        case Con(name, ind, level, params, args):
            if ind not in sigs or sigs.parent_of(name) != ind:
                raise ScopeError(f"unknown constructor {name}", t)
            ind_ty = Ind(ind, level, params)
            _synth(ctx, ind_ty, fuel, sigs, strict)
            tele = ctor_args_at(sigs[ind], name, level, list(params))
            if len(args) != len(tele):
                raise TypeMismatch(f"{name} expects {len(tele)} arguments", t)
            for k, a in enumerate(args):
                check(ctx, a, tele_entry_type(tele, list(args), k), fuel, sigs, strict)
            return ind_ty
        case Match(ind, scrut, motive, branches, arities, _, _):
            scrut_ty = constrained_synth(ctx, scrut, "Ind", fuel, sigs, strict)
            assert isinstance(scrut_ty, Ind)
            if scrut_ty.name != ind:
                raise HeadMismatch(f"scrutinee is not a {ind}", t)
            sig = sigs[ind]
            if len(branches) != len(sig.ctors) or arities != sigs.arities(ind):
                raise TypeMismatch(f"match on {ind} has the wrong branch shape", t)
            synth_type(ctx.extend("z", scrut_ty), motive, fuel, sigs, strict)
            rec_ty = Pi(scrut_ty, motive, "w")
            for k, csig in enumerate(sig.ctors):
                m = arities[k]
                branch_ctx = ctx.extend("rec", rec_ty)
                tele = ctor_args_at(sig, csig.name, scrut_ty.level, list(scrut_ty.params))
                for j, (n, ty) in enumerate(tele):
                    branch_ctx = branch_ctx.extend(n, shift(ty, 1, j))
                ctor_term = Con(
                    csig.name,
                    ind,
                    scrut_ty.level,
                    tuple(shift(p, m + 1) for p in scrut_ty.params),
                    tuple(Var(m - 1 - j, tele[j][0]) for j in range(m)),
                )
                expected = subst(shift(motive, m + 1, 1), ctor_term)
                check(branch_ctx, branches[k], expected, fuel, sigs, strict)
            return subst(motive, scrut)
        case Unk(ty) | Err(ty):
            synth_type(ctx, ty, fuel, sigs, strict)
            return ty
        case Cast(src, tgt, body):
            synth_type(ctx, src, fuel, sigs, strict)
            synth_type(ctx, tgt, fuel, sigs, strict)
            check(ctx, body, src, fuel, sigs, strict)
            return tgt
        case Eq(ty, lhs, rhs):
            level = synth_type(ctx, ty, fuel, sigs, strict)
            check(ctx, lhs, ty, fuel, sigs, strict)
            check(ctx, rhs, ty, fuel, sigs, strict)
            return Univ(level)
        case Refl(wit, lhs, rhs):
            ty = _synth(ctx, wit, fuel, sigs, strict)
            check(ctx, lhs, ty, fuel, sigs, strict)
            check(ctx, rhs, ty, fuel, sigs, strict)
            if strict:
                from . import precision

                for endpoint in (lhs, rhs):
                    if not precision.prec_mod_conv(wit, endpoint, fuel, sigs, ctx=ctx):
                        raise WitnessNotPrecise(
                            "equality witness is not more precise than an endpoint", t
                        )
            return Eq(ty, lhs, rhs)
        case EqElim(motive, lhs, rhs, base, proof, motive_name):
            proof_ty = constrained_synth(ctx, proof, "Eq", fuel, sigs, strict)
            assert isinstance(proof_ty, Eq)
            ty = proof_ty.ty
            synth_type(ctx.extend(motive_name, ty), motive, fuel, sigs, strict)
            check(ctx, lhs, ty, fuel, sigs, strict)
            check(ctx, rhs, ty, fuel, sigs, strict)
            if not (
                convertible(lhs, proof_ty.lhs, fuel, sigs)
                and convertible(rhs, proof_ty.rhs, fuel, sigs)
            ):
                raise TypeMismatch("transport endpoints do not match the proof", t)
            check(ctx, base, subst(motive, lhs), fuel, sigs, strict)
            return subst(motive, rhs)
        case Comp(ty, lhs, rhs):
            synth_type(ctx, ty, fuel, sigs, strict)
            check(ctx, lhs, ty, fuel, sigs, strict)
            check(ctx, rhs, ty, fuel, sigs, strict)
            return ty
    raise CheckError(f"cannot type {type(t).__name__}", t)
