"""Randomized property suites for the kernel.

Generation is guided by the typing rules so every produced term checks at
its target type.  All generated types are closed, which keeps de Bruijn
bookkeeping out of the generators; openness enters only through typing
contexts.  Properties with an existential conclusion (reduction monotone,
the dynamic guarantee) use bounded search and report fuel exhaustion as
inconclusive, never as pass or fail.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields, replace

from .elaborate import elab_program, elab_term
from .frontend import ParseError, parse_program, print_term
from .precision import (
    bool_prec,
    def_consistent,
    def_prec,
    prec_mod_conv,
    struct_prec,
    surface_prec,
)
from .reduction import (
    AlreadyNeutral,
    AlreadyValue,
    Fuel,
    OutOfFuelError,
    Stepped,
    StuckError,
    normalize,
    reduce_step,
)
from .syntax import (
    BOOL,
    FALSE,
    NAT,
    TRUE,
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
    SrcTerm,
    SUnk,
    Term,
    Univ,
    Unk,
    Var,
    alpha_eq,
    nat_lit,
    subst,
)
from .syntax import (
    SApp,
    SCon,
    SInd,
    SLam,
    SMatch,
    SRefl,
    SVar,
)
from .typecheck import CheckError, Context, check, convertible, synth_type

DEFAULT_FUEL = 100000

LEMMA_TITLES = (
    "Precision Reflexive",
    "Composition Safety",
    "Composition Confluence",
    "Composition Lower Bound",
    "Precision Transitive",
    "Precision Modulo Conversion",
    "Static Consistency",
    "Cast Monotonicity",
    "Substitution Monotone",
    "Reduction Monotone",
    "Consistency Upward Closed for Precision",
    "Structural Precision",
)


@dataclass(frozen=True)
class GenBudget:
    max_size: int = 8
    max_level: int = 1
    max_depth: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("term size budget must be at least 1")


@dataclass(frozen=True)
class Failure:
    witness: str
    detail: str


@dataclass(frozen=True)
class PropReport:
    lemma: str
    trials: int
    passes: int
    failures: tuple[Failure, ...]
    inconclusive: int

    def __post_init__(self):
        assert self.trials == self.passes + len(self.failures) + self.inconclusive

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "trials": self.trials,
            "passes": self.passes,
            "failures": [
                {"witness": fl.witness, "detail": fl.detail}
                for fl in self.failures
            ],
            "inconclusive": self.inconclusive,
        }


# ---------------------------------------------------------------------------
# Term generation


class TermGen:
    """Produce well-typed cast-calculus terms at a requested closed type."""

    def __init__(self, rng: random.Random, budget: GenBudget, sigs: SigTable,
                 static_only: bool = False):
        self.rng = rng
        self.budget = budget
        self.sigs = sigs
        self.gradual = 0.0 if static_only else 0.4

    def _grad(self) -> bool:
        return self.rng.random() < self.gradual

    def small_type(self) -> Term:
        k = self.rng.randrange(6)
        if k < 2:
            return NAT
        if k == 2:
            return BOOL
        if k == 3:
            return Pi(NAT, NAT, "n")
        n = nat_lit(self.rng.randrange(3))
        return Eq(NAT, n, n)

    def type_at(self, level: int, size: int) -> Term:
        if self._grad() and self.rng.random() < 0.3:
            return Unk(Univ(level))
        if level > 0:
            k = self.rng.randrange(3)
            if k == 0:
                return Univ(level - 1)
            if k == 1:
                return Pi(self.type_at(level, size // 2),
                          self.type_at(level, size // 2), "x")
            level = 0
        if size <= 1:
            return NAT if self.rng.random() < 0.6 else BOOL
        k = self.rng.randrange(4)
        if k == 0:
            return Pi(self.type_at(0, size // 2), self.type_at(0, size // 2), "x")
        if k == 1:
            a = self.term(Context(), NAT, size // 3)
            b = a if self.rng.random() < 0.6 else self.term(Context(), NAT, size // 3)
            return Eq(NAT, a, b)
        return NAT if k == 2 else BOOL

    def _vars_at(self, ctx: Context, ty: Term) -> list[Term]:
        return [
            Var(i, ctx.entries[-1 - i][0])
            for i in range(len(ctx))
            if alpha_eq(ctx.lookup(i), ty)
        ]

    def leaf(self, ctx: Context, ty: Term) -> Term:
        cands: list[Term] = self._vars_at(ctx, ty)
        if self._grad():
            cands += [Unk(ty), Err(ty)]
        match ty:
            case Ind("Nat"):
                cands.append(nat_lit(self.rng.randrange(4)))
            case Ind("Bool"):
                cands.append(TRUE if self.rng.random() < 0.5 else FALSE)
            case Univ(0):
                cands.append(NAT if self.rng.random() < 0.5 else BOOL)
            case Univ(level):
                cands.append(Univ(level - 1))
            case Pi(dom, cod, name):
                cands.append(Lam(dom, self.leaf(ctx.extend(name, dom), cod), name))
            case Eq(carrier, lhs, rhs):
                if self.gradual > 0:
                    cands.append(Refl(Comp(carrier, lhs, rhs), lhs, rhs))
                else:
                    cands.append(Refl(lhs, lhs, rhs))
            case Unk(_):
                cands += [Unk(ty), Err(ty)]
        if not cands:
            cands = [Unk(ty)]
        return self.rng.choice(cands)

    def term(self, ctx: Context, ty: Term, size: int) -> Term:
        if size <= 1:
            return self.leaf(ctx, ty)
        half = max(1, size // 2)
        gradual_forms = []
        if self._grad():
            gradual_forms = [self._comp, self._cast, self._transport]
        static_forms = [self._beta, self._match_form]
        match ty:
            case Ind("Nat"):
                static_forms.append(self._succ)
            case Pi(_, _, _):
                static_forms.append(self._lam)
            case Univ(level):
                return self.type_at(level, size)
            case Eq(_, _, _):
                return self.leaf(ctx, ty)
            case Unk(_):
                gradual_forms.append(self._inject)
        form = self.rng.choice(static_forms + gradual_forms)
        return form(ctx, ty, half)

    def _succ(self, ctx: Context, ty: Term, size: int) -> Term:
        return Con("S", "Nat", 0, (), (self.term(ctx, ty, size),))

    def _lam(self, ctx: Context, ty: Term, size: int) -> Term:
        assert isinstance(ty, Pi)
        body = self.term(ctx.extend(ty.name, ty.dom), ty.cod, size)
        return Lam(ty.dom, body, ty.name)

    def _beta(self, ctx: Context, ty: Term, size: int) -> Term:
        dom = self.small_type()
        body = self.term(ctx.extend("v", dom), ty, size)
        return App(Lam(dom, body, "v"), self.term(ctx, dom, max(1, size // 2)))

    def _match_form(self, ctx: Context, ty: Term, size: int) -> Term:
        ind = "Bool" if self.rng.random() < 0.5 else "Nat"
        scrut_ty = BOOL if ind == "Bool" else NAT
        scrut = self.term(ctx, scrut_ty, max(1, size // 2))
        rec_ty = Pi(scrut_ty, ty, "w")
        branches = []
        for arity in self.sigs.arities(ind):
            bctx = ctx.extend("rec", rec_ty)
            for j in range(arity):
                bctx = bctx.extend(f"y{j}", scrut_ty)
            branches.append(self.term(bctx, ty, max(1, size // 2)))
        return Match(ind, scrut, ty, tuple(branches), self.sigs.arities(ind))

    def _comp(self, ctx: Context, ty: Term, size: int) -> Term:
        return Comp(ty, self.term(ctx, ty, size), self.term(ctx, ty, size))

    def _cast(self, ctx: Context, ty: Term, size: int) -> Term:
        src = ty if self.rng.random() < 0.4 else self.small_type()
        return Cast(src, ty, self.term(ctx, src, size))

    def _inject(self, ctx: Context, ty: Term, size: int) -> Term:
        src = NAT if self.rng.random() < 0.6 else BOOL
        return Cast(src, ty, self.term(ctx, src, size))

    def _transport(self, ctx: Context, ty: Term, size: int) -> Term:
        a = nat_lit(self.rng.randrange(3))
        base = self.term(ctx, ty, size)
        proof = self.term(ctx, Eq(NAT, a, a), max(1, size // 2))
        return EqElim(_shift1(ty), a, a, base, proof)

    # -- precision-related pairs and chains

    def term_pair(self, ctx: Context, ty: Term, size: int) -> tuple[Term, Term]:
        r = self.rng.random()
        if r < 0.2 or size <= 1:
            t = self.term(ctx, ty, size)
            return (t, Unk(ty)) if self.rng.random() < 0.5 else (t, t)
        half = max(1, size // 2)
        match ty:
            case Ind("Nat") if r < 0.5:
                a1, a2 = self.term_pair(ctx, ty, half)
                s = lambda x: Con("S", "Nat", 0, (), (x,))
                return s(a1), s(a2)
            case Pi(dom, cod, name) if r < 0.6:
                b1, b2 = self.term_pair(ctx.extend(name, dom), cod, half)
                return Lam(dom, b1, name), Lam(dom, b2, name)
            case _:
                pass
        if r < 0.45 and self.gradual > 0:
            a1, a2 = self.term_pair(ctx, ty, half)
            b1, b2 = self.term_pair(ctx, ty, half)
            return Comp(ty, a1, b1), Comp(ty, a2, b2)
        if r < 0.6 and self.gradual > 0:
            src = self.small_type()
            b1, b2 = self.term_pair(ctx, src, half)
            return Cast(src, ty, b1), Cast(src, ty, b2)
        dom = self.small_type()
        f1, f2 = self.term_pair(ctx.extend("v", dom), ty, half)
        a1, a2 = self.term_pair(ctx, dom, half)
        return App(Lam(dom, f1, "v"), a1), App(Lam(dom, f2, "v"), a2)

    def term_triple(self, ctx: Context, ty: Term, size: int) -> tuple[Term, Term, Term]:
        r = self.rng.random()
        if r < 0.15 or size <= 1:
            t = self.term(ctx, ty, size)
            return t, Unk(ty), Unk(ty)
        if r < 0.3:
            t = self.term(ctx, ty, size)
            return t, t, Unk(ty)
        half = max(1, size // 2)
        if isinstance(ty, Ind) and ty.name == "Nat" and r < 0.6:
            a1, a2, a3 = self.term_triple(ctx, ty, half)
            s = lambda x: Con("S", "Nat", 0, (), (x,))
            return s(a1), s(a2), s(a3)
        if r < 0.75 and self.gradual > 0:
            a = self.term_triple(ctx, ty, half)
            b = self.term_triple(ctx, ty, half)
            return tuple(Comp(ty, x, y) for x, y in zip(a, b))
        dom = self.small_type()
        f = self.term_triple(ctx.extend("v", dom), ty, half)
        a = self.term_triple(ctx, dom, half)
        return tuple(App(Lam(dom, fx, "v"), ax) for fx, ax in zip(f, a))

    def blur_type(self, ty: Term) -> Term:
        r = self.rng.random()
        if r < 0.35:
            return Unk(Univ(_type_level(ty)))
        match ty:
            case Pi(dom, cod, name) if r < 0.8:
                return Pi(self.blur_type(dom), self.blur_type(cod), name)
            case Eq(carrier, lhs, rhs) if r < 0.8:
                if self.rng.random() < 0.5:
                    return Eq(carrier, Unk(carrier), rhs)
                return Eq(carrier, lhs, Unk(carrier))
            case _:
                return ty


def _type_level(ty: Term) -> int:
    if isinstance(ty, Univ):
        return ty.level + 1
    return 0


def _shift1(t: Term) -> Term:
    from .syntax import shift

    return shift(t, 1)


def gen_well_typed_term(ctx: Context, ty: Term | None, budget: GenBudget,
                        rng: random.Random | None = None,
                        sigs: SigTable | None = None,
                        static_only: bool = False) -> Term:
    rng = rng or random.Random(budget.seed)
    sigs = sigs or SigTable()
    gen = TermGen(rng, budget, sigs, static_only)
    if ty is None:
        ty = gen.small_type()
    return gen.term(ctx, ty, budget.max_size)


# ---------------------------------------------------------------------------
# Surface precision pairs


class SurfaceGen:
    """Closed surface terms over a small typed pool, with replacement sites.

    Every generated node is a candidate for replacement by an unknown whose
    level is the universe that the node's type inhabits: term positions over
    the pool's small types sit at level 0, type positions at level 1.
    """

    def __init__(self, rng: random.Random, budget: GenBudget):
        self.rng = rng
        self.budget = budget
        self.sites: list[tuple[SrcTerm, int]] = []

    def _site(self, node: SrcTerm, level: int) -> SrcTerm:
        self.sites.append((node, level))
        return node

    def _nat_ty(self) -> SrcTerm:
        return self._site(SInd("Nat", 0), 1)

    def nat(self, depth: int, env: list[Term]) -> SrcTerm:
        r = self.rng.randrange(5 if depth > 0 else 2)
        if r == 0 or r == 1:
            lit = self.rng.randrange(4)
            node = SCon("Zero", "Nat", 0)
            for _ in range(lit):
                node = SCon("S", "Nat", 0, (), (node,))
            return self._site(node, 0)
        if r == 2 and any(alpha_eq(t, NAT) for t in env):
            idxs = [i for i, t in enumerate(reversed(env)) if alpha_eq(t, NAT)]
            return self._site(SVar(self.rng.choice(idxs), "x"), 0)
        if r == 3:
            fn = SLam(self._nat_ty(), self.nat(depth - 1, env + [NAT]), "x")
            return self._site(SApp(self._site(fn, 0), self.nat(depth - 1, env)), 0)
        scrut = self.bool(depth - 1, env)
        b1 = self.nat(depth - 1, env + [Pi(BOOL, NAT, "w")])
        b2 = self.nat(depth - 1, env + [Pi(BOOL, NAT, "w")])
        node = SMatch("Bool", scrut, self._nat_ty(), (b1, b2), (0, 0), "z", "rec")
        return self._site(node, 0)

    def bool(self, depth: int, env: list[Term]) -> SrcTerm:
        name = "true" if self.rng.random() < 0.5 else "false"
        return self._site(SCon(name, "Bool", 0), 0)

    def top(self) -> tuple[SrcTerm, Term]:
        k = self.rng.randrange(4)
        depth = self.budget.max_depth
        if k == 0:
            return self.nat(depth, []), NAT
        if k == 1:
            return self.bool(depth, []), BOOL
        if k == 2:
            body = self.nat(depth, [NAT])
            return self._site(SLam(self._nat_ty(), body, "x"), 0), Pi(NAT, NAT, "x")
        sub = self.nat(depth, [])
        kernel = elab_term(elab_program((), Fuel(DEFAULT_FUEL)), sub, Fuel(DEFAULT_FUEL))
        return self._site(SRefl(sub), 0), Eq(NAT, kernel[0], kernel[0])

    def pair(self) -> tuple[SrcTerm, SrcTerm, Term]:
        self.sites = []
        s1, ty = self.top()
        node, level = self.rng.choice(self.sites)
        s2 = _replace_surface_once(s1, node, SUnk(level))
        return s1, s2, ty


def _replace_surface_once(root: SrcTerm, target: SrcTerm, repl: SrcTerm) -> SrcTerm:
    if root is target:
        return repl
    updates = {}
    for f in fields(root):
        if f.name == "span":
            continue
        v = getattr(root, f.name)
        if isinstance(v, SrcTerm):
            new = _replace_surface_once(v, target, repl)
            if new is not v:
                updates[f.name] = new
                break
        elif isinstance(v, tuple) and v and isinstance(v[0], SrcTerm):
            for i, x in enumerate(v):
                new = _replace_surface_once(x, target, repl)
                if new is not x:
                    updates[f.name] = v[:i] + (new,) + v[i + 1:]
                    break
            if updates:
                break
    if not updates:
        return root
    return replace(root, **updates)


def gen_surface_prec_pair(budget: GenBudget,
                          rng: random.Random | None = None
                          ) -> tuple[SrcTerm, SrcTerm]:
    rng = rng or random.Random(budget.seed)
    s1, s2, _ = SurfaceGen(rng, budget).pair()
    return s1, s2


# ---------------------------------------------------------------------------
# Boolean observation contexts


def gen_bool_context(ty: Term, budget: GenBudget,
                     rng: random.Random | None = None,
                     sigs: SigTable | None = None) -> Term:
    rng = rng or random.Random(budget.seed)
    sigs = sigs or SigTable()
    constant = Lam(ty, TRUE if rng.random() < 0.5 else FALSE, "v")
    if alpha_eq(ty, BOOL):
        if rng.random() < 0.4:
            return Lam(ty, Var(0, "v"), "v")
        if rng.random() < 0.5:
            return Lam(ty, Match("Bool", Var(0, "v"), BOOL,
                                 (_shift1(FALSE), _shift1(TRUE)), (0, 0)), "v")
        return constant
    if alpha_eq(ty, NAT):
        if rng.random() < 0.7:
            return Lam(ty, _is_zero(Var(0, "v")), "v")
        return constant
    if isinstance(ty, Pi) and alpha_eq(ty.dom, NAT) and alpha_eq(ty.cod, NAT):
        if rng.random() < 0.7:
            probe = nat_lit(rng.randrange(3))
            return Lam(ty, _is_zero(App(Var(0, "v"), probe)), "v")
        return constant
    if isinstance(ty, Eq):
        if rng.random() < 0.7:
            base = TRUE if rng.random() < 0.5 else FALSE
            return Lam(ty, EqElim(BOOL, _shift1(ty.lhs), _shift1(ty.rhs),
                                  base, Var(0, "v")), "v")
        return constant
    return constant


def _is_zero(scrut: Term) -> Term:
    return Match("Nat", scrut, BOOL, (TRUE, FALSE), (0, 1))


def _bool_obs(v: Term) -> str | None:
    match v:
        case Con("true", "Bool", _, _, _):
            return "true"
        case Con("false", "Bool", _, _, _):
            return "false"
        case Unk(_):
            return "unk"
        case Err(_):
            return "err"
    return None


# ---------------------------------------------------------------------------
# Generic term surgery (paths, local confluence, shrinking)


def _subterm_paths(t: Term) -> list[tuple]:
    out = [()]
    for f in fields(t):
        v = getattr(t, f.name)
        if isinstance(v, Term):
            out += [((f.name, None),) + p for p in _subterm_paths(v)]
        elif isinstance(v, tuple):
            for i, x in enumerate(v):
                if isinstance(x, Term):
                    out += [((f.name, i),) + p for p in _subterm_paths(x)]
    return out


def _get_at(t: Term, path: tuple) -> Term:
    for name, idx in path:
        v = getattr(t, name)
        t = v if idx is None else v[idx]
    return t


def _replace_at(t: Term, path: tuple, new: Term) -> Term:
    if not path:
        return new
    (name, idx), rest = path[0], path[1:]
    v = getattr(t, name)
    if idx is None:
        return replace(t, **{name: _replace_at(v, rest, new)})
    return replace(t, **{name: v[:idx] + (_replace_at(v[idx], rest, new),) + v[idx + 1:]})


def local_confluence_check(t: Term, fuel: int, sigs: SigTable) -> str:
    """One-step reducts at every position must rejoin within fuel."""

    reducts: list[Term] = []
    for path in _subterm_paths(t):
        out = reduce_step(_get_at(t, path), sigs)
        if isinstance(out, Stepped):
            cand = _replace_at(t, path, out.term)
            if not any(alpha_eq(cand, r) for r in reducts):
                reducts.append(cand)
    if len(reducts) < 2:
        return "joined"
    normals = []
    for r in reducts:
        try:
            normals.append(normalize(r, Fuel(fuel), sigs))
        except OutOfFuelError:
            return "inconclusive"
        except StuckError:
            return "failed"
    first = normals[0]
    if all(alpha_eq(first, n) for n in normals[1:]):
        return "joined"
    return "failed"


def _size_of(t: Term) -> int:
    return len(_subterm_paths(t))


def _checks_at(t: Term, ty: Term, fuel: int, sigs: SigTable) -> bool:
    try:
        check(Context(), t, ty, Fuel(fuel), sigs)
        return True
    except (CheckError, OutOfFuelError, StuckError):
        return False


def _shrink(terms: list[Term], tys: list[Term | None], still_fails,
            fuel: int, sigs: SigTable) -> list[Term]:
    terms = list(terms)
    for _ in range(12):
        progressed = False
        for i, ty in enumerate(tys):
            if ty is None:
                continue
            t = terms[i]
            cands = [Err(ty), Unk(ty)]
            if alpha_eq(ty, NAT):
                cands.append(nat_lit(0))
            if alpha_eq(ty, BOOL):
                cands.append(TRUE)
            for f in fields(t):
                v = getattr(t, f.name)
                for sub in (v if isinstance(v, tuple) else (v,)):
                    if isinstance(sub, Term) and _checks_at(sub, ty, fuel, sigs):
                        cands.append(sub)
            for cand in cands:
                if alpha_eq(cand, t) or _size_of(cand) >= _size_of(t):
                    continue
                trial = terms[:]
                trial[i] = cand
                try:
                    if still_fails(trial):
                        terms, progressed = trial, True
                        break
                except (CheckError, OutOfFuelError, StuckError):
                    continue
            if progressed:
                break
        if not progressed:
            break
    return terms


# ---------------------------------------------------------------------------
# Trial plumbing


class _Trial:
    __slots__ = ("status", "witness", "tys", "detail", "still_fails")

    def __init__(self, status, witness=(), tys=(), detail="", still_fails=None):
        self.status = status
        self.witness = witness
        self.tys = tys
        self.detail = detail
        self.still_fails = still_fails


_PASS = _Trial("pass")
_INCONCLUSIVE = _Trial("inconclusive")


def _run_trials(title: str, trials: int, trial_fn, seed_base: int,
                fuel: int, sigs: SigTable) -> PropReport:
    passes, inconclusive = 0, 0
    failures: list[Failure] = []
    for i in range(trials):
        rng = random.Random(seed_base + i)
        try:
            out = trial_fn(rng)
        except OutOfFuelError:
            inconclusive += 1
            continue
        except StuckError as e:
            failures.append(Failure("<stuck>", f"kernel got stuck: {e}"))
            continue
        if out.status == "pass":
            passes += 1
        elif out.status == "inconclusive":
            inconclusive += 1
        else:
            witness = list(out.witness)
            if out.still_fails is not None:
                witness = _shrink(witness, list(out.tys), out.still_fails, fuel, sigs)
            shown = " | ".join(print_term(w, sigs) for w in witness)
            failures.append(Failure(shown, out.detail))
    return PropReport(title, trials, passes, tuple(failures), inconclusive)


def _gen_ctx(rng: random.Random, budget: GenBudget) -> Context:
    ctx = Context()
    pool = (NAT, BOOL, Pi(NAT, NAT, "n"))
    for i in range(rng.randrange(budget.max_depth + 1)):
        ctx = ctx.extend(f"c{i}", rng.choice(pool))
    return ctx


def _step_chain(t: Term, limit: int, sigs: SigTable) -> list[Term]:
    chain = [t]
    for _ in range(limit):
        out = reduce_step(chain[-1], sigs)
        if not isinstance(out, Stepped):
            break
        chain.append(out.term)
    return chain


# ---------------------------------------------------------------------------
# The twelve lemma suites


def _lemma_precision_reflexive(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ctx = _gen_ctx(rng, budget)
        ty = gen.small_type()
        t = gen.term(ctx, ty, budget.max_size)
        still = lambda w: not def_prec(w[0], w[0], Fuel(fuel), sigs, ctx, ctx)
        if def_prec(t, t, Fuel(fuel), sigs, ctx, ctx):
            return _PASS
        shrink_ty = ty if len(ctx) == 0 else None
        return _Trial("fail", (t,), (shrink_ty,),
                      "term is not precision-related to itself", still)

    return trial


def _lemma_composition_safety(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        c = Comp(ty, gen.term(Context(), ty, budget.max_size),
                 gen.term(Context(), ty, budget.max_size))

        def violates(w):
            out = reduce_step(w[0], sigs)
            if isinstance(out, (AlreadyValue, AlreadyNeutral)):
                return False
            if not isinstance(out, Stepped):
                return True
            return not _checks_at(out.term, ty, fuel, sigs)

        out = reduce_step(c, sigs)
        if isinstance(out, AlreadyValue):
            return _PASS
        if isinstance(out, Stepped):
            if _checks_at(out.term, ty, fuel, sigs):
                return _PASS
            return _Trial("fail", (c,), (ty,),
                          "step result no longer checks at the annotation", violates)
        return _Trial("fail", (c,), (ty,),
                      "well-typed non-value composition cannot step", violates)

    return trial


def _lemma_composition_confluence(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        c = Comp(ty, gen.term(Context(), ty, budget.max_size),
                 gen.term(Context(), ty, budget.max_size))
        verdict = local_confluence_check(c, fuel, sigs)
        if verdict == "joined":
            return _PASS
        if verdict == "inconclusive":
            return _INCONCLUSIVE
        still = lambda w: local_confluence_check(w[0], fuel, sigs) == "failed"
        return _Trial("fail", (c,), (ty,), "one-step reducts do not rejoin", still)

    return trial


def _lemma_composition_lower_bound(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        t1 = gen.term(Context(), ty, budget.max_size)
        t2 = gen.term(Context(), ty, budget.max_size)
        c = Comp(ty, t1, t2)

        def violates(w):
            comp = Comp(ty, w[0], w[1])
            return not (def_prec(comp, w[0], Fuel(fuel), sigs)
                        and def_prec(comp, w[1], Fuel(fuel), sigs))

        if def_prec(c, t1, Fuel(fuel), sigs) and def_prec(c, t2, Fuel(fuel), sigs):
            return _PASS
        return _Trial("fail", (t1, t2), (ty, ty),
                      "composition is not below both operands", violates)

    return trial


def _lemma_precision_transitive(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ctx = _gen_ctx(rng, budget)
        ty = gen.small_type()
        a, b, c = gen.term_triple(ctx, ty, budget.max_size)
        lo = struct_prec(a, b, Fuel(fuel), sigs, ctx, ctx)
        hi = struct_prec(b, c, Fuel(fuel), sigs, ctx, ctx)
        if not (lo and hi):
            return _Trial("fail", (a, b, c), (None, None, None),
                          "generated chain is not structurally related")
        if struct_prec(a, c, Fuel(fuel), sigs, ctx, ctx):
            return _PASS
        return _Trial("fail", (a, b, c), (None, None, None),
                      "structural precision fails to compose")

    return trial


def _lemma_precision_modulo_conversion(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        t1, t2 = gen.term_pair(Context(), ty, budget.max_size)
        if not prec_mod_conv(t1, t2, Fuel(fuel), sigs):
            return _Trial("fail", (t1, t2), (ty, ty),
                          "generated pair is not related modulo conversion")
        k = 1 + rng.randrange(5)
        stepped = _step_chain(t1, k, sigs)[-1]

        def violates(w):
            last = _step_chain(w[0], k, sigs)[-1]
            return (prec_mod_conv(w[0], w[1], Fuel(fuel), sigs)
                    and not prec_mod_conv(last, w[1], Fuel(fuel), sigs))

        if prec_mod_conv(stepped, t2, Fuel(fuel), sigs):
            return _PASS
        return _Trial("fail", (t1, t2), (ty, ty),
                      "relation is lost after stepping the precise side", violates)

    return trial


def _lemma_static_consistency(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs, static_only=True)
        ty = gen.small_type()
        if isinstance(ty, Eq):
            ty = NAT
        t1 = gen.term(Context(), ty, budget.max_size)
        if rng.random() < 0.5:
            t2 = gen.term(Context(), ty, budget.max_size)
        else:
            t2 = App(Lam(NAT, _shift1(t1), "u"), nat_lit(rng.randrange(3)))

        def violates(w):
            return (def_consistent(w[0], w[1], Fuel(fuel), sigs)
                    != convertible(w[0], w[1], Fuel(fuel), sigs))

        if not violates((t1, t2)):
            return _PASS
        return _Trial("fail", (t1, t2), (ty, ty),
                      "static consistency and convertibility disagree", violates)

    return trial


def _lemma_cast_monotonicity(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        t1, t2 = gen.term_pair(Context(), ty, budget.max_size)
        tgt1 = gen.blur_type(ty)
        tgt2 = gen.blur_type(tgt1)
        premises = (def_prec(t1, t2, Fuel(fuel), sigs)
                    and def_prec(ty, tgt1, Fuel(fuel), sigs)
                    and def_prec(tgt1, tgt2, Fuel(fuel), sigs))
        if not premises:
            return _Trial("fail", (t1, t2, tgt1, tgt2), (None,) * 4,
                          "generated cast premises do not hold")

        def violates(w):
            return not def_prec(Cast(ty, tgt1, w[0]), Cast(ty, tgt2, w[1]),
                                Fuel(fuel), sigs)

        if not violates((t1, t2)):
            return _PASS
        return _Trial("fail", (t1, t2, tgt1, tgt2), (ty, ty, None, None),
                      "casts of related subjects are unrelated",
                      lambda w: violates(w[:2]))

    return trial


def _lemma_substitution_monotone(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ctx1 = Context().extend("x", NAT)
        b1, b2 = gen.term_pair(ctx1, gen.small_type(), budget.max_size)
        a1, a2 = gen.term_pair(Context(), NAT, budget.max_size)
        if not (def_prec(b1, b2, Fuel(fuel), sigs, ctx1, ctx1)
                and def_prec(a1, a2, Fuel(fuel), sigs)):
            return _Trial("fail", (b1, b2, a1, a2), (None,) * 4,
                          "generated substitution premises do not hold")

        def violates(w):
            return not def_prec(subst(b1, w[0]), subst(b2, w[1]), Fuel(fuel), sigs)

        if not violates((a1, a2)):
            return _PASS
        return _Trial("fail", (a1, a2, b1, b2), (NAT, NAT, None, None),
                      "precision is not preserved under substitution",
                      lambda w: violates(w[:2]))

    return trial


def _lemma_reduction_monotone(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        t1, t2 = gen.term_pair(Context(), ty, budget.max_size)
        if not def_prec(t1, t2, Fuel(fuel), sigs):
            return _Trial("fail", (t1, t2), (ty, ty),
                          "generated pair is not precision-related")
        k = 1 + rng.randrange(5)
        chain1 = _step_chain(t1, k, sigs)
        reduced = chain1[-1]
        bound = 4 * (len(chain1) - 1) + 1
        for candidate in _step_chain(t2, bound, sigs):
            if def_prec(reduced, candidate, Fuel(fuel), sigs):
                return _PASS
        return _INCONCLUSIVE

    return trial


def _lemma_consistency_upward(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        t1, t1p = gen.term_pair(Context(), ty, budget.max_size)
        if rng.random() < 0.7:
            arg = nat_lit(rng.randrange(3))
            t2 = App(Lam(NAT, _shift1(t1), "u"), arg)
            t2p = App(Lam(NAT, _shift1(t1p), "u"), arg)
        else:
            t2, t2p = gen.term_pair(Context(), ty, budget.max_size)
        if not (def_prec(t1, t1p, Fuel(fuel), sigs)
                and def_prec(t2, t2p, Fuel(fuel), sigs)):
            return _Trial("fail", (t1, t1p, t2, t2p), (None,) * 4,
                          "generated precision premises do not hold")
        if not def_consistent(t1, t2, Fuel(fuel), sigs):
            return _PASS
        if def_consistent(t1p, t2p, Fuel(fuel), sigs):
            return _PASS
        return _Trial("fail", (t1, t1p, t2, t2p), (ty,) * 4,
                      "consistency is lost when precision is reduced")

    return trial


def _lemma_structural_precision(budget, fuel, sigs):
    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        a, b = gen.term_pair(Context(), ty, budget.max_size)
        extra = gen.term(Context(), ty, max(1, budget.max_size // 2))
        blurred = gen.blur_type(ty)
        wrappers = [
            lambda x: App(Lam(ty, Var(0, "w"), "w"), x),
            lambda x: Comp(ty, x, extra),
            lambda x: Comp(ty, extra, x),
            lambda x: Cast(ty, blurred, x),
            lambda x: Lam(NAT, _shift1(x), "u"),
            lambda x: Match("Bool", TRUE, ty, (_shift1(x), _shift1(extra)), (0, 0)),
        ]
        if alpha_eq(ty, NAT):
            wrappers.append(lambda x: Con("S", "Nat", 0, (), (x,)))
        wrap = rng.choice(wrappers)
        wa, wb = wrap(a), wrap(b)
        if not def_prec(a, b, Fuel(fuel), sigs):
            return _Trial("fail", (a, b), (ty, ty),
                          "generated pair is not precision-related")

        def violates(w):
            return (def_prec(w[0], w[1], Fuel(fuel), sigs)
                    and not def_prec(wrap(w[0]), wrap(w[1]), Fuel(fuel), sigs))

        if def_prec(wa, wb, Fuel(fuel), sigs):
            return _PASS
        return _Trial("fail", (a, b), (ty, ty),
                      "precision is not preserved by a structural wrapper", violates)

    return trial


_LEMMA_BUILDERS = (
    _lemma_precision_reflexive,
    _lemma_composition_safety,
    _lemma_composition_confluence,
    _lemma_composition_lower_bound,
    _lemma_precision_transitive,
    _lemma_precision_modulo_conversion,
    _lemma_static_consistency,
    _lemma_cast_monotonicity,
    _lemma_substitution_monotone,
    _lemma_reduction_monotone,
    _lemma_consistency_upward,
    _lemma_structural_precision,
)


def run_lemma_suite(lemma_id: int, budget: GenBudget, trials: int = 1000,
                    fuel: int = DEFAULT_FUEL,
                    sigs: SigTable | None = None) -> PropReport:
    if not 1 <= lemma_id <= 12:
        raise KeyError(f"no lemma {lemma_id}")
    sigs = sigs or SigTable()
    title = LEMMA_TITLES[lemma_id - 1]
    trial_fn = _LEMMA_BUILDERS[lemma_id - 1](budget, fuel, sigs)
    seed_base = budget.seed * 1_000_003 + lemma_id * 7919
    return _run_trials(title, trials, trial_fn, seed_base, fuel, sigs)


# ---------------------------------------------------------------------------
# Confluence, progress/preservation, conservativity, DGG, canonicity


def local_confluence_suite(budget: GenBudget, trials: int = 500,
                           fuel: int = DEFAULT_FUEL,
                           sigs: SigTable | None = None) -> PropReport:
    sigs = sigs or SigTable()

    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        t = gen.term(Context(), ty, budget.max_size)
        verdict = local_confluence_check(t, fuel, sigs)
        if verdict == "joined":
            return _PASS
        if verdict == "inconclusive":
            return _INCONCLUSIVE
        still = lambda w: local_confluence_check(w[0], fuel, sigs) == "failed"
        return _Trial("fail", (t,), (ty,), "one-step reducts do not rejoin", still)

    seed_base = budget.seed * 1_000_003 + 13 * 7919
    return _run_trials("Local Confluence", trials, trial, seed_base, fuel, sigs)


def progress_preservation_suite(budget: GenBudget, trials: int = 1000,
                                steps: int = 500, fuel: int = DEFAULT_FUEL,
                                sigs: SigTable | None = None) -> PropReport:
    sigs = sigs or SigTable()

    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.small_type()
        t = gen.term(Context(), ty, budget.max_size)
        state = t
        for _ in range(steps):
            out = reduce_step(state, sigs)
            if isinstance(out, AlreadyValue):
                return _PASS
            if isinstance(out, Stepped):
                state = out.term
                if not _checks_at(state, ty, fuel, sigs):
                    return _Trial("fail", (t, state), (ty, None),
                                  "reduction broke typing")
                continue
            return _Trial("fail", (t, state), (ty, None),
                          "closed well-typed term is stuck")
        return _PASS

    seed_base = budget.seed * 1_000_003 + 14 * 7919
    return _run_trials("Progress and Preservation", trials, trial,
                       seed_base, fuel, sigs)


# -- a reference checker for the static fragment: embed the surface program
#    into the kernel with no casts at all, then let kernel typing (which uses
#    convertibility, never consistency) decide.

class _NotStatic(Exception):
    pass


def _embed_static(s: SrcTerm) -> Term:
    from .syntax import (
        SAsc,
        SEq,
        SEqElim,
        SPi,
        SUniv,
    )

    match s:
        case SVar(idx, name):
            return Var(idx, name)
        case SUniv(level):
            return Univ(level)
        case SPi(dom, cod, name):
            return Pi(_embed_static(dom), _embed_static(cod), name)
        case SLam(dom, body, name):
            return Lam(_embed_static(dom), _embed_static(body), name)
        case SApp(fn, arg):
            return App(_embed_static(fn), _embed_static(arg))
        case SInd(name, level, params):
            return Ind(name, level, tuple(_embed_static(p) for p in params))
        case SCon(name, ind, level, params, args):
            return Con(name, ind, level,
                       tuple(_embed_static(p) for p in params),
                       tuple(_embed_static(a) for a in args))
        case SMatch(ind, scrut, motive, branches, arities, mname, rname):
            return Match(ind, _embed_static(scrut), _embed_static(motive),
                         tuple(_embed_static(b) for b in branches), arities,
                         mname, rname)
        case SEq(ty, lhs, rhs):
            return Eq(_embed_static(ty), _embed_static(lhs), _embed_static(rhs))
        case SRefl(body):
            e = _embed_static(body)
            return Refl(e, e, e)
        case SEqElim(motive, lhs, rhs, base, proof, mname):
            return EqElim(_embed_static(motive), _embed_static(lhs),
                          _embed_static(rhs), _embed_static(base),
                          _embed_static(proof), mname)
        case SAsc(body, ty):
            ety = _embed_static(ty)
            return App(Lam(ety, Var(0, "a"), "a"), _embed_static(body))
    raise _NotStatic(type(s).__name__)


def static_reference_accepts(text: str, fuel: int = DEFAULT_FUEL) -> bool:
    """Typing verdict with consistency replaced by convertibility."""

    from .syntax import SDef, subst_many_open

    sigs = SigTable()
    try:
        decls = parse_program(text)
        bodies: list[Term] = []
        for d in decls:
            if not isinstance(d, SDef):
                raise _NotStatic("data declarations are outside this corpus")
            gty = subst_many_open(_embed_static(d.ty), bodies, 0)
            synth_type(Context(), gty, Fuel(fuel), sigs)
            gbody = subst_many_open(_embed_static(d.body), bodies, 0)
            check(Context(), gbody, gty, Fuel(fuel), sigs)
            bodies.append(gbody)
        return True
    except (ParseError, CheckError, _NotStatic, StuckError):
        return False


def gradual_accepts(text: str, fuel: int = DEFAULT_FUEL) -> bool:
    try:
        prog = elab_program(parse_program(text), Fuel(fuel))
    except (ParseError, CheckError, StuckError):
        return False
    return not prog.diagnostics


_WELL_TYPED_STATIC = (
    "def idnat : Nat -> Nat := \\(x : Nat) . x",
    "def two : Nat := 2",
    "def flag : Bool := true",
    "def pick : Bool -> Nat := \\(b : Bool) . match[Bool] b (z . Nat) { | true => 1 | false => 0 }",
    "def double : Nat -> Nat := \\(n : Nat) . match[Nat] n (z . Nat) rec r { | Zero => 0 | S p => S (S (r p)) }",
    "def refl2 : 2 == 2 : Nat := refl 2",
    "def poly : (X : Type) -> X -> X := \\(X : Type) . \\(x : X) . x",
    "def applied : Nat := (\\(X : Type) . \\(x : X) . x) Nat 3",
    "def comp : (Nat -> Nat) -> (Nat -> Nat) -> Nat -> Nat := \\(f : Nat -> Nat) . \\(g : Nat -> Nat) . \\(x : Nat) . f (g x)",
    "def asc : Nat := 3 :: Nat",
    "def beta : 4 == (\\(x : Nat) . S x) 3 : Nat := refl 4",
    "def transp : (x : Nat) -> (y : Nat) -> (x == y : Nat) -> (S x == S y : Nat) := \\(x : Nat) . \\(y : Nat) . \\(p : x == y : Nat) . J (w . (S x == S w : Nat)) x y (refl (S x)) p",
    "def still : Unit := unit",
    "def pair : Nat -> Bool := \\(n : Nat) . match[Nat] n (z . Bool) { | Zero => true | S p => false }",
    "def level : Type 1 := Type",
    "def arrow : Type := Nat -> Bool",
    "def eqty : Type := 0 == 0 : Nat",
    "def lamlam : Nat -> Nat -> Nat := \\(a : Nat) . \\(b : Nat) . a",
    "def apply2 : Nat := (\\(f : Nat -> Nat) . f (f 1)) (\\(x : Nat) . S x)",
    "def jconst : Nat := J (w . Nat) 0 0 5 (refl 0)",
    "def useind : List Nat := nil Nat",
    "def consed : List Nat := cons Nat 1 (nil Nat)",
    "def vempty : Vec Bool 0 := VNil Bool 0 (refl 0)",
    "def depfun : (n : Nat) -> Vec Nat n -> Vec Nat n := \\(n : Nat) . \\(v : Vec Nat n) . v",
    "def etaish : Nat -> Nat := \\(x : Nat) . (\\(y : Nat) . y) x",
)

_ILL_TYPED_STATIC = (
    "def bad : Nat := true",
    "def bad : Bool := 0",
    "def bad : Nat -> Nat := \\(x : Bool) . 0",
    "def bad : (x : Nat) -> (y : Nat) -> (x == y : Nat) := \\(x : Nat) . \\(y : Nat) . refl x",
    "def bad : Nat := (\\(x : Nat) . x) true",
    "def bad : 0 == 1 : Nat := refl 0",
    "def bad : Nat := S true",
    "def bad : Type := 3",
    "def bad : Nat := match[Bool] 0 (z . Nat) { | true => 1 | false => 0 }",
    "def bad : Nat := match[Nat] 1 (z . Nat) { | Zero => 0 | S p => true }",
    "def bad : Nat -> Nat := \\(f : Nat -> Nat) . f",
    "def bad : Nat := (\\(X : Type) . \\(x : X) . x) 3 Nat",
    "def bad : 1 == 2 : Nat := refl 1",
    "def bad : Bool := J (w . Nat) 0 0 5 (refl 0)",
    "def bad : Nat := J (w . Nat) 0 1 5 (refl 0)",
    "def bad : Type := Type",
    "def bad : Nat -> Nat := \\(x : Nat) . y",
    "def bad : List Nat := cons Bool true (nil Nat)",
    "def bad : Vec Nat 1 := VNil Nat",
    "def bad : Nat := refl 0",
    "def bad : 0 == 0 : Bool := refl 0",
    "def bad : (0 == 0 : Nat) -> Nat := \\(p : 0 == 0 : Nat) . p",
    "def bad : Unit := 0",
    "def bad : Nat := 2.5",
    "def bad : Nat -> Bool := \\(x : Nat) . match[Bool] x (z . Bool) { | true => true | false => false }",
)


def conservativity_suite(fuel: int = DEFAULT_FUEL,
                         sigs: SigTable | None = None) -> PropReport:
    sigs = sigs or SigTable()
    corpus = ([(t, True) for t in _WELL_TYPED_STATIC]
              + [(t, False) for t in _ILL_TYPED_STATIC])
    passes = 0
    failures: list[Failure] = []
    for text, expected in corpus:
        graded = gradual_accepts(text, fuel)
        reference = static_reference_accepts(text, fuel)
        if graded == reference == expected:
            passes += 1
        else:
            failures.append(Failure(
                text,
                f"gradual={graded} reference={reference} expected={expected}"))
    return PropReport("Conservativity", len(corpus), passes,
                      tuple(failures), 0)


def dgg_probe(budget: GenBudget, pairs: int = 200, contexts: int = 20,
              fuel: int = DEFAULT_FUEL,
              sigs: SigTable | None = None) -> PropReport:
    """Sampled boolean contexts approximate semantic precision."""

    sigs = sigs or SigTable()
    empty = elab_program((), Fuel(fuel))

    def trial(rng):
        s1, s2, _ = SurfaceGen(rng, budget).pair()
        if not surface_prec(s1, s2):
            return _Trial("fail", (), (), "surface pair generator broke its contract")
        g1, ty1 = elab_term(empty, s1, Fuel(fuel))
        g2, ty2 = elab_term(empty, s2, Fuel(fuel))
        if convertible(ty2, ty1, Fuel(fuel), sigs):
            mediated = g2
        else:
            mediated = Cast(ty2, ty1, g2)
        saw_fuel_limit = False
        for _ in range(contexts):
            context = gen_bool_context(ty1, budget, rng, sigs)
            try:
                v1 = _bool_obs(normalize(App(context, g1), Fuel(fuel), sigs))
            except OutOfFuelError:
                saw_fuel_limit = True
                continue
            if v1 is None:
                saw_fuel_limit = True
                continue
            try:
                v2 = _bool_obs(normalize(App(context, mediated), Fuel(fuel), sigs))
            except OutOfFuelError:
                saw_fuel_limit = True
                continue
            if v2 is None or not bool_prec(v1, v2):
                return _Trial("fail", (g1, mediated, context),
                              (None, None, None),
                              f"observation {v1} is not below {v2}")
        return _INCONCLUSIVE if saw_fuel_limit else _PASS

    seed_base = budget.seed * 1_000_003 + 15 * 7919
    return _run_trials("Dynamic Gradual Guarantee", pairs, trial,
                       seed_base, fuel, sigs)


def canonical_shape(v: Term, ty: Term, fuel: int, sigs: SigTable) -> bool:
    """Shape table for terminating closed evaluations, keyed by the type."""

    try:
        tyw = normalize(ty, Fuel(fuel), sigs)
    except (OutOfFuelError, StuckError):
        tyw = ty
    match v:
        case Unk(at) | Err(at):
            return convertible(at, tyw, Fuel(fuel), sigs)
    match tyw:
        case Pi(_, _, _):
            return isinstance(v, Lam)
        case Eq(_, _, _):
            return isinstance(v, Refl)
        case Ind(name, _, _):
            return isinstance(v, Con) and v.ind == name
        case Univ(level):
            match v:
                case Ind(_, _, _) | Pi(_, _, _) | Eq(_, _, _):
                    return True
                case Univ(smaller):
                    return smaller < level
            return False
        case Unk(_):
            return isinstance(v, Cast) and convertible(v.tgt, tyw, Fuel(fuel), sigs)
    return False


def canonicity_suite(budget: GenBudget, trials: int = 300,
                     fuel: int = DEFAULT_FUEL,
                     sigs: SigTable | None = None) -> PropReport:
    sigs = sigs or SigTable()

    def trial(rng):
        gen = TermGen(rng, budget, sigs)
        ty = gen.type_at(budget.max_level, budget.max_size) \
            if rng.random() < 0.3 else gen.small_type()
        t = gen.term(Context(), ty, budget.max_size)
        try:
            v = normalize(t, Fuel(fuel), sigs)
        except OutOfFuelError:
            return _INCONCLUSIVE
        if canonical_shape(v, ty, fuel, sigs):
            return _PASS
        still = lambda w: (not canonical_shape(
            normalize(w[0], Fuel(fuel), sigs), ty, fuel, sigs))
        return _Trial("fail", (t,), (ty,),
                      "normal form is outside the shape table", still)

    seed_base = budget.seed * 1_000_003 + 16 * 7919
    return _run_trials("Weak Canonicity", trials, trial, seed_base, fuel, sigs)


# ---------------------------------------------------------------------------
# Suite dispatch


def run_suite(name: str, budget: GenBudget, fuel: int = DEFAULT_FUEL,
              trials: int | None = None) -> list[PropReport]:
    sigs = SigTable()
    if name == "all":
        return [run_lemma_suite(i, budget, trials or 1000, fuel, sigs)
                for i in range(1, 13)]
    if name.startswith("lemma") and name[5:].isdigit():
        return [run_lemma_suite(int(name[5:]), budget, trials or 1000, fuel, sigs)]
    if name == "confluence":
        return [local_confluence_suite(budget, trials or 500, fuel, sigs)]
    if name == "progress":
        return [progress_preservation_suite(budget, trials or 1000, 500, fuel, sigs)]
    if name == "conservativity":
        return [conservativity_suite(fuel, sigs)]
    if name == "dgg":
        return [dgg_probe(budget, trials or 200, 20, fuel, sigs)]
    if name == "canonicity":
        return [canonicity_suite(budget, trials or 300, fuel, sigs)]
    raise KeyError(name)
