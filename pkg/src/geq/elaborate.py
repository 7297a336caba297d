"""Elaboration of the surface language into the cast calculus.

Surface terms synthesize a kernel type while being rewritten into kernel
terms: unknowns become annotated unknowns, checking against a merely
consistent type inserts a cast recording both sides, and a term whose
type is the unknown type gets cast to the least precise type with the
head the context demands.  The output always typechecks in the kernel at
the synthesized type; inconsistent types are rejected here, never by the
kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .frontend import print_term
from .precision import def_consistent
from .reduction import Fuel, OutOfFuelError, StuckError, normalize, whnf
from .syntax import (
    App,
    Cast,
    Con,
    CtorSig,
    EQ_HEAD,
    Eq,
    EqElim,
    Err,
    Ind,
    IndSig,
    Lam,
    Match,
    NoGermAtLevel,
    PI_HEAD,
    Pi,
    Refl,
    SApp,
    SAsc,
    SCon,
    SData,
    SDecl,
    SDef,
    SEq,
    SEqElim,
    SInd,
    SLam,
    SMatch,
    SPi,
    SRefl,
    SUniv,
    SUnk,
    SVar,
    SigTable,
    SrcTerm,
    Term,
    Univ,
    Unk,
    Var,
    alpha_eq,
    ctor_args_at,
    germ,
    ind_head,
    params_at,
    shift,
    subst,
    subst_many_open,
    tele_entry_type,
    type_head,
)
from .typecheck import (
    CheckError,
    Context,
    HeadMismatch,
    TypeMismatch,
    convertible,
    synth_type,
)


class Inconsistent(CheckError):
    """The synthesized and expected types cannot be reconciled by a cast."""


def _pretty(ctx: Context, t: Term, fuel: Fuel, sigs: SigTable) -> str:
    try:
        t = normalize(t, fuel, sigs)
    except (StuckError, OutOfFuelError):
        pass
    return print_term(t, sigs, tuple(n for n, _ in ctx.entries))


def _where(s: SrcTerm) -> str:
    span = getattr(s, "span", None)
    if span is None:
        return ""
    return f"{span.file}:{span.line}:{span.col}: "


def elab_synth(ctx: Context, s: SrcTerm, fuel: Fuel,
               sigs: SigTable) -> tuple[Term, Term]:
    """Elaborate ``s`` and synthesize its kernel type."""

    match s:
        case SVar(idx, name):
            ty = ctx.lookup(idx)
            # references to earlier definitions are transparent: conversion
            # has no unfold rule, so the closed body stands in for the name
            body = sigs.def_body(len(ctx) - 1 - idx, name)
            if body is not None:
                return body, ty
            return Var(idx, name), ty
        case SUniv(level):
            return Univ(level), Univ(level + 1)
        case SPi(dom, cod, name):
            gdom, i = elab_type(ctx, dom, fuel, sigs)
            gcod, j = elab_type(ctx.extend(name, gdom), cod, fuel, sigs)
            return Pi(gdom, gcod, name), Univ(max(i, j))
        case SLam(dom, body, name):
            gdom, _ = elab_type(ctx, dom, fuel, sigs)
            gbody, bty = elab_synth(ctx.extend(name, gdom), body, fuel, sigs)
            return Lam(gdom, gbody, name), Pi(gdom, bty, name)
        case SApp(fn, arg):
            gfn, fty = elab_constrained(ctx, fn, "Pi", fuel, sigs)
            assert isinstance(fty, Pi)
            garg = elab_check(ctx, arg, fty.dom, fuel, sigs)
            return App(gfn, garg), subst(fty.cod, garg)
        case SInd(name, level, params):
            if name not in sigs:
                raise CheckError(f"{_where(s)}unknown inductive {name}")
            tele = params_at(sigs[name], level)
            if len(params) != len(tele):
                raise TypeMismatch(f"{_where(s)}{name} expects {len(tele)} parameters")
            gparams: list[Term] = []
            for k, p in enumerate(params):
                gparams.append(elab_check(
                    ctx, p, tele_entry_type(tele, gparams, k), fuel, sigs))
            return Ind(name, level, tuple(gparams)), Univ(level)
        case SCon(name, ind, level, params, args):
            if ind not in sigs or sigs.parent_of(name) != ind:
                raise CheckError(f"{_where(s)}unknown constructor {name}")
            tele = params_at(sigs[ind], level)
            if len(params) != len(tele):
                raise TypeMismatch(f"{_where(s)}{ind} expects {len(tele)} parameters")
            gparams: list[Term] = []
            for k, p in enumerate(params):
                gparams.append(elab_check(
                    ctx, p, tele_entry_type(tele, gparams, k), fuel, sigs))
            atele = ctor_args_at(sigs[ind], name, level, gparams)
            if len(args) != len(atele):
                raise TypeMismatch(f"{_where(s)}{name} expects {len(atele)} arguments")
            gargs: list[Term] = []
            for k, a in enumerate(args):
                gargs.append(elab_check(
                    ctx, a, tele_entry_type(atele, gargs, k), fuel, sigs))
            return (Con(name, ind, level, tuple(gparams), tuple(gargs)),
                    Ind(ind, level, tuple(gparams)))
        case SMatch(ind, scrut, motive, branches, arities, mname, rec_name):
            gscrut, sty = elab_constrained(ctx, scrut, "Ind", fuel, sigs, ind=ind)
            assert isinstance(sty, Ind)
            sig = sigs[ind]
            if arities != sigs.arities(ind):
                raise TypeMismatch(f"{_where(s)}match on {ind} has the wrong branch shape")
            gmotive, _ = elab_type(ctx.extend(mname, sty), motive, fuel, sigs)
            rec_ty = Pi(sty, gmotive, "w")
            gbranches: list[Term] = []
            for k, csig in enumerate(sig.ctors):
                m = arities[k]
                branch_ctx = ctx.extend(rec_name, rec_ty)
                tele = ctor_args_at(sig, csig.name, sty.level, list(sty.params))
                for j, (n, ty) in enumerate(tele):
                    branch_ctx = branch_ctx.extend(n, shift(ty, 1, j))
                ctor_term = Con(
                    csig.name,
                    ind,
                    sty.level,
                    tuple(shift(p, m + 1) for p in sty.params),
                    tuple(Var(m - 1 - j, tele[j][0]) for j in range(m)),
                )
                expected = subst(shift(gmotive, m + 1, 1), ctor_term)
                gbranches.append(elab_check(branch_ctx, branches[k], expected, fuel, sigs))
            out = Match(ind, gscrut, gmotive, tuple(gbranches), arities,
                        mname, rec_name)
            return out, subst(gmotive, gscrut)
        case SUnk(level):
            if level is None:
                raise CheckError(
                    f"{_where(s)}? needs an explicit level here; "
                    "only an argument position can determine it")
            return Unk(Unk(Univ(level))), Unk(Univ(level))
        case SAsc(body, ty):
            gty, _ = elab_type(ctx, ty, fuel, sigs)
            return elab_check(ctx, body, gty, fuel, sigs), gty
        case SEq(ty, lhs, rhs):
            gty, level = elab_type(ctx, ty, fuel, sigs)
            glhs = elab_check(ctx, lhs, gty, fuel, sigs)
            grhs = elab_check(ctx, rhs, gty, fuel, sigs)
            return Eq(gty, glhs, grhs), Univ(level)
        case SRefl(body):
            g, ty = elab_synth(ctx, body, fuel, sigs)
            return Refl(g, g, g), Eq(ty, g, g)
        case SEqElim(motive, lhs, rhs, base, proof, mname):
            gproof, pty = elab_constrained(ctx, proof, "Eq", fuel, sigs)
            assert isinstance(pty, Eq)
            gmotive, _ = elab_type(ctx.extend(mname, pty.ty), motive, fuel, sigs)
            glhs = elab_check(ctx, lhs, pty.ty, fuel, sigs)
            grhs = elab_check(ctx, rhs, pty.ty, fuel, sigs)
            if not (convertible(glhs, pty.lhs, fuel, sigs)
                    and convertible(grhs, pty.rhs, fuel, sigs)):
                raise TypeMismatch(
                    f"{_where(s)}transport endpoints do not match the proof")
            gbase = elab_check(ctx, base, subst(gmotive, glhs), fuel, sigs)
            out = EqElim(gmotive, glhs, grhs, gbase, gproof, mname)
            return out, subst(gmotive, grhs)
    raise CheckError(f"cannot elaborate {type(s).__name__}")


def elab_check(ctx: Context, s: SrcTerm, ty: Term, fuel: Fuel,
               sigs: SigTable) -> Term:
    """Elaborate ``s`` against an expected kernel type, casting if the
    synthesized type is merely consistent with it."""

    if isinstance(s, SUnk) and s.level is None:
        level = synth_type(ctx, ty, fuel, sigs)
        src = Unk(Univ(level))
        if alpha_eq(src, ty):
            return Unk(src)
        return Cast(src, ty, Unk(src))
    g, got = elab_synth(ctx, s, fuel, sigs)
    if alpha_eq(got, ty):
        return g
    if def_consistent(got, ty, fuel, sigs):
        return Cast(got, ty, g)
    raise Inconsistent(
        f"{_where(s)}type {_pretty(ctx, got, fuel, sigs)} is not consistent "
        f"with {_pretty(ctx, ty, fuel, sigs)}")


def elab_constrained(ctx: Context, s: SrcTerm, shape: str, fuel: Fuel,
                     sigs: SigTable, ind: str | None = None) -> tuple[Term, Term]:
    """Elaborate ``s`` and force its type to the requested head, casting a
    term of unknown type to the head's least precise form."""

    g, ty = elab_synth(ctx, s, fuel, sigs)
    want = {"Type": Univ, "Pi": Pi, "Ind": Ind, "Eq": Eq}[shape]
    red = whnf(ty, fuel, sigs)
    if isinstance(red, want):
        if isinstance(red, Ind) and ind is not None and red.name != ind:
            raise HeadMismatch(f"{_where(s)}expected a {ind}, found {red.name}")
        return g, red
    if isinstance(red, Unk):
        inner = whnf(red.ty, fuel, sigs)
        if isinstance(inner, Univ):
            level = inner.level
            if shape == "Type":
                head = type_head(level)
            elif shape == "Pi":
                head = PI_HEAD
            elif shape == "Eq":
                head = EQ_HEAD
            else:
                assert ind is not None
                head = ind_head(ind, level)
            try:
                tgt = germ(head, level, sigs)
            except NoGermAtLevel as e:
                raise HeadMismatch(f"{_where(s)}{e}") from None
            return Cast(Unk(inner), tgt, g), tgt
    raise HeadMismatch(f"{_where(s)}expected a {shape}-headed type, "
                       f"found {_pretty(ctx, red, fuel, sigs)}")


def elab_type(ctx: Context, s: SrcTerm, fuel: Fuel,
              sigs: SigTable) -> tuple[Term, int]:
    """Elaborate ``s`` as a type; returns the kernel type and its level."""

    g, u = elab_constrained(ctx, s, "Type", fuel, sigs)
    assert isinstance(u, Univ)
    return g, u.level


# ---------------------------------------------------------------------------
# Programs


@dataclass(frozen=True)
class ElabDef:
    """A fully elaborated definition; type and body are closed terms."""

    name: str
    ty: Term
    term: Term


@dataclass(frozen=True)
class Diagnostic:
    decl: str
    message: str

    def __str__(self) -> str:
        return f"{self.decl}: {self.message}"


@dataclass(frozen=True)
class Program:
    defs: tuple[ElabDef, ...]
    sigs: SigTable
    diagnostics: tuple[Diagnostic, ...] = ()

    def lookup(self, name: str) -> ElabDef | None:
        for d in self.defs:
            if d.name == name:
                return d
        return None


def _surface_nodes(root: SrcTerm):
    stack: list[object] = [root]
    while stack:
        node = stack.pop()
        if isinstance(node, SrcTerm):
            yield node
            for f in fields(node):
                if f.name != "span":
                    stack.append(getattr(node, f.name))
        elif isinstance(node, tuple):
            stack.extend(node)


def _float_literals(decls: tuple[SDecl, ...]) -> list[str]:
    roots: list[SrcTerm] = []
    for d in decls:
        if isinstance(d, SDef):
            roots += [d.ty, d.body]
        else:
            roots += [ty for _, ty in d.params]
            for _, args in d.ctors:
                roots += [ty for _, ty in args]
    return sorted(
        {n.name for r in roots for n in _surface_nodes(r)
         if isinstance(n, SCon) and n.ind == "Float"},
        key=float,
    )


def elab_program(decls: tuple[SDecl, ...], fuel: Fuel,
                 sigs: SigTable | None = None) -> Program:
    """Elaborate a program declaration by declaration.

    Definitions are closed over the earlier ones immediately; a body that
    fails to elaborate is replaced by the error at its stated type so the
    rest of the program still sees a complete environment.  A failing type
    or data declaration stops elaboration.
    """

    sigs = sigs or SigTable()
    floats = _float_literals(decls)
    if floats:
        sigs.register_floats(floats)
    defs: list[ElabDef] = []
    diags: list[Diagnostic] = []
    ctx = Context()
    bodies: list[Term] = []  # closed, in declaration order
    for pos, d in enumerate(decls):
        try:
            if isinstance(d, SData):
                _elab_data(d, ctx, bodies, fuel, sigs)
                continue
            gty, _ = elab_type(ctx, d.ty, fuel, sigs)
            gty_closed = subst_many_open(gty, bodies, 0)
            try:
                gbody = elab_check(ctx, d.body, gty, fuel, sigs)
                gbody_closed = subst_many_open(gbody, bodies, 0)
            except CheckError as e:
                diags.append(Diagnostic(d.name, str(e)))
                gbody_closed = Err(gty_closed)
            defs.append(ElabDef(d.name, gty_closed, gbody_closed))
            ctx = ctx.extend(d.name, gty_closed)
            bodies.append(gbody_closed)
        except CheckError as e:
            diags.append(Diagnostic(d.name, str(e)))
            remaining = len(decls) - pos - 1
            if remaining:
                diags.append(Diagnostic(
                    d.name, f"{remaining} later declaration(s) skipped"))
            break
    return Program(tuple(defs), sigs, tuple(diags))


def _elab_data(d: SData, ctx: Context, bodies: list[Term], fuel: Fuel,
               sigs: SigTable) -> None:
    pctx = ctx
    ptys: list[tuple[str, Term]] = []
    for k, (pname, sty) in enumerate(d.params):
        gp, _ = elab_type(pctx, sty, fuel, sigs)
        ptys.append((pname, subst_many_open(gp, bodies, k)))
        pctx = pctx.extend(pname, gp)
    sigs.register(IndSig(d.name, tuple(ptys), ()))
    ctor_sigs: list[CtorSig] = []
    for cname, args in d.ctors:
        actx = pctx
        atys: list[tuple[str, Term]] = []
        for j, (aname, sty) in enumerate(args):
            ga, _ = elab_type(actx, sty, fuel, sigs)
            atys.append((aname, subst_many_open(ga, bodies, len(d.params) + j)))
            actx = actx.extend(aname, ga)
        ctor_sigs.append(CtorSig(cname, tuple(atys)))
    sigs.redeclare(IndSig(d.name, tuple(ptys), tuple(ctor_sigs)))


def def_context(prog: Program) -> Context:
    return Context(tuple((d.name, d.ty) for d in prog.defs))


def elab_term(prog: Program, s: SrcTerm, fuel: Fuel) -> tuple[Term, Term]:
    """Elaborate one term against a program's definitions; closed output."""

    floats = sorted({n.name for n in _surface_nodes(s)
                     if isinstance(n, SCon) and n.ind == "Float"}, key=float)
    if floats:
        prog.sigs.register_floats(floats)
    ctx = def_context(prog)
    bodies = [d.term for d in prog.defs]
    g, ty = elab_synth(ctx, s, fuel, prog.sigs)
    return subst_many_open(g, bodies, 0), subst_many_open(ty, bodies, 0)
