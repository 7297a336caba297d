"""Abstract syntax for the cast calculus and the surface language.

Binders are nameless (de Bruijn indices).  Display names ride along in
``compare=False`` fields, so ``==`` on terms is alpha-equivalence.

Binder conventions:

- ``Pi.cod``, ``Lam.body``, ``Match.motive`` and ``EqElim.motive`` bind one
  variable at index 0.
- A match branch for a constructor with m arguments binds m+1 variables:
  index m is the recursion function, indices m-1 .. 0 are the constructor
  arguments in declaration order (first argument has the highest index).
- Telescope entry k is open over entries 0 .. k-1; entry j appears at
  index k-1-j.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class Term:
    """A term of the cast calculus (types are terms)."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    idx: int
    name: str = field(default="_", compare=False)


@dataclass(frozen=True)
class Univ(Term):
    level: int


@dataclass(frozen=True)
class Pi(Term):
    dom: Term
    cod: Term
    name: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Lam(Term):
    dom: Term
    body: Term
    name: str = field(default="x", compare=False)


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Ind(Term):
    """Applied inductive type constructor, e.g. List at level 0 with [Nat]."""

    name: str
    level: int
    params: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Con(Term):
    """Applied data constructor: name, parent inductive, level, params, args."""

    name: str
    ind: str
    level: int
    params: tuple[Term, ...] = ()
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Match(Term):
    """Recursive eliminator.  Branch order equals declaration order.

    ``arities`` holds each constructor's argument count; branch k binds
    ``arities[k] + 1`` variables (the extra one is the recursion function).
    """

    ind: str
    scrut: Term
    motive: Term
    branches: tuple[Term, ...]
    arities: tuple[int, ...]
    motive_name: str = field(default="z", compare=False)
    rec_name: str = field(default="rec", compare=False)


@dataclass(frozen=True)
class Unk(Term):
    """The unknown term, ascribed with its type."""

    ty: Term


@dataclass(frozen=True)
class Err(Term):
    """The dynamic type error, ascribed with its type."""

    ty: Term


@dataclass(frozen=True)
class Cast(Term):
    """Cast of ``body`` from type ``src`` to type ``tgt``."""

    src: Term
    tgt: Term
    body: Term


@dataclass(frozen=True)
class Eq(Term):
    """Propositional equality ``lhs == rhs`` at element type ``ty``."""

    ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Refl(Term):
    """Equality proof carrying a consistency witness for its endpoints."""

    wit: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class EqElim(Term):
    """Eliminator for equality: transports ``base`` along ``proof``.

    ``motive`` binds the element the endpoints inhabit; ``base`` has the
    motive at ``lhs`` and the elimination has the motive at ``rhs``.
    """

    motive: Term
    lhs: Term
    rhs: Term
    base: Term
    proof: Term
    motive_name: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Comp(Term):
    """Composition of the information in two terms, ascribed with their type."""

    ty: Term
    lhs: Term
    rhs: Term


# ---------------------------------------------------------------------------
# Surface language


class SrcTerm:
    """A surface-language term (parser output, elaborator input)."""

    __slots__ = ()


@dataclass(frozen=True)
class SVar(SrcTerm):
    idx: int
    name: str = field(default="_", compare=False)
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SUniv(SrcTerm):
    level: int
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SPi(SrcTerm):
    dom: SrcTerm
    cod: SrcTerm
    name: str = field(default="x", compare=False)
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SLam(SrcTerm):
    dom: SrcTerm
    body: SrcTerm
    name: str = field(default="x", compare=False)
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SApp(SrcTerm):
    fn: SrcTerm
    arg: SrcTerm
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SInd(SrcTerm):
    name: str
    level: int
    params: tuple[SrcTerm, ...] = ()
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SCon(SrcTerm):
    name: str
    ind: str
    level: int
    params: tuple[SrcTerm, ...] = ()
    args: tuple[SrcTerm, ...] = ()
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SMatch(SrcTerm):
    ind: str
    scrut: SrcTerm
    motive: SrcTerm
    branches: tuple[SrcTerm, ...]
    arities: tuple[int, ...]
    motive_name: str = field(default="z", compare=False)
    rec_name: str = field(default="rec", compare=False)
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SUnk(SrcTerm):
    """Surface ``?``.  ``level`` is None for a bare ``?`` in checking position."""

    level: int | None = None
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SAsc(SrcTerm):
    body: SrcTerm
    ty: SrcTerm
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SEq(SrcTerm):
    ty: SrcTerm
    lhs: SrcTerm
    rhs: SrcTerm
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SRefl(SrcTerm):
    body: SrcTerm
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SEqElim(SrcTerm):
    motive: SrcTerm
    lhs: SrcTerm
    rhs: SrcTerm
    base: SrcTerm
    proof: SrcTerm
    motive_name: str = field(default="x", compare=False)
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SDef:
    """Top-level definition: a name, its stated type, and the body."""

    name: str
    ty: SrcTerm
    body: SrcTerm
    span: object | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SData:
    """Inductive declaration; the telescopes hold surface types."""

    name: str
    params: tuple[tuple[str, SrcTerm], ...]
    ctors: tuple[tuple[str, tuple[tuple[str, SrcTerm], ...]], ...]
    span: object | None = field(default=None, compare=False, repr=False)


SDecl = SDef | SData


# ---------------------------------------------------------------------------
# Heads


@dataclass(frozen=True, order=True)
class Head:
    """Head tag of a type former or canonical term.

    ``name`` is set for inductive and constructor heads, ``level`` for
    universes and inductives (level is part of the head so mismatched
    levels count as mismatched heads).
    """

    tag: str
    name: str = ""
    level: int = -1


PI_HEAD = Head("Pi")
EQ_HEAD = Head("Eq")
LAM_HEAD = Head("Lam")
REFL_HEAD = Head("Refl")


def type_head(level: int) -> Head:
    return Head("Type", level=level)


def ind_head(name: str, level: int) -> Head:
    return Head("Ind", name=name, level=level)


def con_head(name: str, level: int) -> Head:
    return Head("Con", name=name, level=level)


def head_of(t: Term) -> Head | None:
    """Head tag for type formers and canonical terms, None otherwise."""

    match t:
        case Univ(level):
            return type_head(level)
        case Pi():
            return PI_HEAD
        case Ind(name, level, _):
            return ind_head(name, level)
        case Eq():
            return EQ_HEAD
        case Lam():
            return LAM_HEAD
        case Con(name, _, level, _, _):
            return con_head(name, level)
        case Refl():
            return REFL_HEAD
        case _:
            return None


# ---------------------------------------------------------------------------
# Shifting and substitution


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    match t:
        case Var(idx, name):
            return Var(idx + by, name) if idx >= cutoff else t
        case Univ():
            return t
        case Pi(dom, cod, name):
            return Pi(shift(dom, by, cutoff), shift(cod, by, cutoff + 1), name)
        case Lam(dom, body, name):
            return Lam(shift(dom, by, cutoff), shift(body, by, cutoff + 1), name)
        case App(fn, arg):
            return App(shift(fn, by, cutoff), shift(arg, by, cutoff))
        case Ind(name, level, params):
            return Ind(name, level, tuple(shift(p, by, cutoff) for p in params))
        case Con(name, ind, level, params, args):
            return Con(
                name,
                ind,
                level,
                tuple(shift(p, by, cutoff) for p in params),
                tuple(shift(a, by, cutoff) for a in args),
            )
        case Match(ind, scrut, motive, branches, arities, mn, rn):
            shifted = tuple(
                shift(body, by, cutoff + arities[k] + 1) for k, body in enumerate(branches)
            )
            return Match(ind, shift(scrut, by, cutoff), shift(motive, by, cutoff + 1), shifted, arities, mn, rn)
        case Unk(ty):
            return Unk(shift(ty, by, cutoff))
        case Err(ty):
            return Err(shift(ty, by, cutoff))
        case Cast(src, tgt, body):
            return Cast(shift(src, by, cutoff), shift(tgt, by, cutoff), shift(body, by, cutoff))
        case Eq(ty, lhs, rhs):
            return Eq(shift(ty, by, cutoff), shift(lhs, by, cutoff), shift(rhs, by, cutoff))
        case Refl(wit, lhs, rhs):
            return Refl(shift(wit, by, cutoff), shift(lhs, by, cutoff), shift(rhs, by, cutoff))
        case EqElim(motive, lhs, rhs, base, proof, mn):
            return EqElim(
                shift(motive, by, cutoff + 1),
                shift(lhs, by, cutoff),
                shift(rhs, by, cutoff),
                shift(base, by, cutoff),
                shift(proof, by, cutoff),
                mn,
            )
        case Comp(ty, lhs, rhs):
            return Comp(shift(ty, by, cutoff), shift(lhs, by, cutoff), shift(rhs, by, cutoff))
    raise TypeError(f"not a term: {t!r}")


def subst_at(t: Term, value: Term, idx: int = 0) -> Term:
    """Replace index ``idx`` with ``value`` and shift higher indices down."""

    match t:
        case Var(i, _):
            if i == idx:
                return shift(value, idx)
            return Var(i - 1, t.name) if i > idx else t
        case Univ():
            return t
        case Pi(dom, cod, name):
            return Pi(subst_at(dom, value, idx), subst_at(cod, value, idx + 1), name)
        case Lam(dom, body, name):
            return Lam(subst_at(dom, value, idx), subst_at(body, value, idx + 1), name)
        case App(fn, arg):
            return App(subst_at(fn, value, idx), subst_at(arg, value, idx))
        case Ind(name, level, params):
            return Ind(name, level, tuple(subst_at(p, value, idx) for p in params))
        case Con(name, ind, level, params, args):
            return Con(
                name,
                ind,
                level,
                tuple(subst_at(p, value, idx) for p in params),
                tuple(subst_at(a, value, idx) for a in args),
            )
        case Match(ind, scrut, motive, branches, arities, mn, rn):
            out = tuple(
                subst_at(body, value, idx + arities[k] + 1) for k, body in enumerate(branches)
            )
            return Match(ind, subst_at(scrut, value, idx), subst_at(motive, value, idx + 1), out, arities, mn, rn)
        case Unk(ty):
            return Unk(subst_at(ty, value, idx))
        case Err(ty):
            return Err(subst_at(ty, value, idx))
        case Cast(src, tgt, body):
            return Cast(subst_at(src, value, idx), subst_at(tgt, value, idx), subst_at(body, value, idx))
        case Eq(ty, lhs, rhs):
            return Eq(subst_at(ty, value, idx), subst_at(lhs, value, idx), subst_at(rhs, value, idx))
        case Refl(wit, lhs, rhs):
            return Refl(subst_at(wit, value, idx), subst_at(lhs, value, idx), subst_at(rhs, value, idx))
        case EqElim(motive, lhs, rhs, base, proof, mn):
            return EqElim(
                subst_at(motive, value, idx + 1),
                subst_at(lhs, value, idx),
                subst_at(rhs, value, idx),
                subst_at(base, value, idx),
                subst_at(proof, value, idx),
                mn,
            )
        case Comp(ty, lhs, rhs):
            return Comp(subst_at(ty, value, idx), subst_at(lhs, value, idx), subst_at(rhs, value, idx))
    raise TypeError(f"not a term: {t!r}")


def subst(body: Term, value: Term) -> Term:
    """Substitute the outermost binder (index 0) of ``body`` with ``value``."""

    return subst_at(body, value, 0)


def subst_many(body: Term, values: list[Term]) -> Term:
    """Substitute indices 0 .. n-1 with ``values[0] .. values[n-1]``.

    ``values[0]`` replaces the innermost binder.  Each value is closed with
    respect to the binders being removed.
    """

    out = body
    for v in values:
        out = subst_at(out, v, 0)
    return out


def alpha_eq(t1: Term, t2: Term) -> bool:
    return t1 == t2


def well_scoped(t: Term, depth: int = 0) -> bool:
    match t:
        case Var(idx, _):
            return 0 <= idx < depth
        case Univ():
            return True
        case Pi(dom, cod, _) | Lam(dom, cod, _):
            return well_scoped(dom, depth) and well_scoped(cod, depth + 1)
        case App(fn, arg):
            return well_scoped(fn, depth) and well_scoped(arg, depth)
        case Ind(_, _, params):
            return all(well_scoped(p, depth) for p in params)
        case Con(_, _, _, params, args):
            return all(well_scoped(p, depth) for p in params) and all(
                well_scoped(a, depth) for a in args
            )
        case Match(_, scrut, motive, branches, arities, _, _):
            if not (well_scoped(scrut, depth) and well_scoped(motive, depth + 1)):
                return False
            return all(
                well_scoped(body, depth + arities[k] + 1) for k, body in enumerate(branches)
            )
        case Unk(ty) | Err(ty):
            return well_scoped(ty, depth)
        case Cast(src, tgt, body):
            return well_scoped(src, depth) and well_scoped(tgt, depth) and well_scoped(body, depth)
        case Eq(ty, lhs, rhs) | Comp(ty, lhs, rhs):
            return well_scoped(ty, depth) and well_scoped(lhs, depth) and well_scoped(rhs, depth)
        case Refl(wit, lhs, rhs):
            return well_scoped(wit, depth) and well_scoped(lhs, depth) and well_scoped(rhs, depth)
        case EqElim(motive, lhs, rhs, base, proof, _):
            return (
                well_scoped(motive, depth + 1)
                and well_scoped(lhs, depth)
                and well_scoped(rhs, depth)
                and well_scoped(base, depth)
                and well_scoped(proof, depth)
            )
    return False


def shift_levels(t: Term, by: int) -> Term:
    """Add ``by`` to every universe level (signature instantiation)."""

    if by == 0:
        return t
    match t:
        case Var():
            return t
        case Univ(level):
            return Univ(level + by)
        case Pi(dom, cod, name):
            return Pi(shift_levels(dom, by), shift_levels(cod, by), name)
        case Lam(dom, body, name):
            return Lam(shift_levels(dom, by), shift_levels(body, by), name)
        case App(fn, arg):
            return App(shift_levels(fn, by), shift_levels(arg, by))
        case Ind(name, level, params):
            return Ind(name, level + by, tuple(shift_levels(p, by) for p in params))
        case Con(name, ind, level, params, args):
            return Con(
                name,
                ind,
                level + by,
                tuple(shift_levels(p, by) for p in params),
                tuple(shift_levels(a, by) for a in args),
            )
        case Match(ind, scrut, motive, branches, arities, mn, rn):
            return Match(
                ind,
                shift_levels(scrut, by),
                shift_levels(motive, by),
                tuple(shift_levels(b, by) for b in branches),
                arities,
                mn,
                rn,
            )
        case Unk(ty):
            return Unk(shift_levels(ty, by))
        case Err(ty):
            return Err(shift_levels(ty, by))
        case Cast(src, tgt, body):
            return Cast(shift_levels(src, by), shift_levels(tgt, by), shift_levels(body, by))
        case Eq(ty, lhs, rhs):
            return Eq(shift_levels(ty, by), shift_levels(lhs, by), shift_levels(rhs, by))
        case Refl(wit, lhs, rhs):
            return Refl(shift_levels(wit, by), shift_levels(lhs, by), shift_levels(rhs, by))
        case EqElim(motive, lhs, rhs, base, proof, mn):
            return EqElim(
                shift_levels(motive, by),
                shift_levels(lhs, by),
                shift_levels(rhs, by),
                shift_levels(base, by),
                shift_levels(proof, by),
                mn,
            )
        case Comp(ty, lhs, rhs):
            return Comp(shift_levels(ty, by), shift_levels(lhs, by), shift_levels(rhs, by))
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Telescopes and inductive signatures

Telescope = tuple[tuple[str, Term], ...]


def tele_entry_type(tele: Telescope, actuals: list[Term], k: int) -> Term:
    """Type of entry k with entries 0..k-1 replaced by ``actuals[0..k-1]``."""

    if k >= len(tele) or k > len(actuals):
        raise IndexError(f"telescope entry {k} with {len(actuals)} actuals of {len(tele)}")
    _, ty = tele[k]
    return subst_many(ty, list(reversed(actuals[:k])))


def instantiate_telescope(tele: Telescope, actuals: list[Term]) -> list[Term]:
    """Types of the remaining entries after filling the first ``len(actuals)``."""

    if len(actuals) > len(tele):
        raise IndexError(f"{len(actuals)} actuals for telescope of {len(tele)}")
    return [
        subst_many_open(tele[k][1], actuals, k - len(actuals))
        for k in range(len(actuals), len(tele))
    ]


def subst_many_open(ty: Term, actuals: list[Term], keep: int) -> Term:
    """Substitute the outer binders of ``ty`` with ``actuals``, keeping the
    innermost ``keep`` binders untouched.

    ``ty`` is open over ``len(actuals) + keep`` binders: indices 0..keep-1
    stay, index keep+j receives ``actuals[-1-j]``.
    """

    out = ty
    for j in range(len(actuals)):
        out = subst_at(out, shift(actuals[len(actuals) - 1 - j], keep), keep)
    return out


@dataclass(frozen=True)
class CtorSig:
    """Constructor: argument telescope open over the params then earlier args."""

    name: str
    args: Telescope


@dataclass(frozen=True)
class IndSig:
    """Inductive type: parameter telescope and constructors, levels relative
    to the instantiation level."""

    name: str
    params: Telescope
    ctors: tuple[CtorSig, ...]

    def ctor(self, name: str) -> CtorSig:
        for c in self.ctors:
            if c.name == name:
                return c
        raise KeyError(f"{self.name} has no constructor {name}")

    def ctor_index(self, name: str) -> int:
        for k, c in enumerate(self.ctors):
            if c.name == name:
                return k
        raise KeyError(f"{self.name} has no constructor {name}")


def params_at(sig: IndSig, level: int) -> Telescope:
    return tuple((n, shift_levels(ty, level)) for n, ty in sig.params)


def ctor_args_at(sig: IndSig, ctor: str, level: int, params: list[Term]) -> Telescope:
    """Argument telescope of a constructor with the parameters filled in.

    The result is a telescope open over the earlier arguments only.
    """

    csig = sig.ctor(ctor)
    out = []
    for k, (n, ty) in enumerate(csig.args):
        ty = shift_levels(ty, level)
        # open over len(params) + k binders; fill the params, keep k
        out.append((n, subst_many_open(ty, params, k)))
    return tuple(out)


class SigTable:
    """Registry of inductive signatures.

    The Float family starts empty; programs register the literals they
    mention (sorted ascending) as Float's nullary constructors.
    """

    def __init__(self) -> None:
        self._sigs: dict[str, IndSig] = {}
        self._ctor_parent: dict[str, str] = {}
        self._def_bodies: list[tuple[str, Term]] = []
        for sig in _builtin_sigs():
            self.register(sig)

    def reset_defs(self) -> None:
        self._def_bodies = []

    def push_def(self, name: str, body: Term) -> None:
        """Record a closed definition body; slot order mirrors the context."""

        self._def_bodies.append((name, body))

    def def_body(self, pos: int, name: str) -> Term | None:
        """Body of the definition at context slot ``pos``, or None for binders."""

        if 0 <= pos < len(self._def_bodies) and self._def_bodies[pos][0] == name:
            return self._def_bodies[pos][1]
        return None

    def register(self, sig: IndSig) -> None:
        if sig.name in self._sigs and self._sigs[sig.name] != sig:
            raise KeyError(f"inductive {sig.name} already declared")
        self._sigs[sig.name] = sig
        for c in sig.ctors:
            self._ctor_parent[c.name] = sig.name

    def redeclare(self, sig: IndSig) -> None:
        """Replace a provisional signature once its constructors are known."""

        self._sigs[sig.name] = sig
        for c in sig.ctors:
            self._ctor_parent[c.name] = sig.name

    def arities(self, ind: str) -> tuple[int, ...]:
        return tuple(len(c.args) for c in self._sigs[ind].ctors)

    def __contains__(self, name: str) -> bool:
        return name in self._sigs

    def __getitem__(self, name: str) -> IndSig:
        return self._sigs[name]

    def parent_of(self, ctor: str) -> str | None:
        return self._ctor_parent.get(ctor)

    def names(self) -> list[str]:
        return sorted(self._sigs)

    def register_floats(self, literals: list[str]) -> None:
        """Register float literals (as written) as Float constructors."""

        merged = sorted(
            set(literals) | {c.name for c in self._sigs["Float"].ctors}, key=float
        )
        sig = IndSig("Float", (), tuple(CtorSig(lit, ()) for lit in merged))
        self._sigs["Float"] = sig
        for c in sig.ctors:
            self._ctor_parent[c.name] = "Float"


def _builtin_sigs() -> list[IndSig]:
    nat = Ind("Nat", 0)

    def ind0(name: str, *params: Term) -> Ind:
        return Ind(name, 0, params)

    return [
        IndSig("Nat", (), (CtorSig("Zero", ()), CtorSig("S", (("pred", nat),)))),
        IndSig("Bool", (), (CtorSig("true", ()), CtorSig("false", ()))),
        IndSig(
            "List",
            (("X", Univ(0)),),
            (
                CtorSig("nil", ()),
                # args open over (X); X is index 0 at the head, 1 under it
                CtorSig("cons", (("hd", Var(0, "X")), ("tl", ind0("List", Var(1, "X"))))),
            ),
        ),
        IndSig(
            "Vec",
            (("X", Univ(0)), ("len", nat)),
            (
                # params (X, len): len is index 0, X is index 1 in arg 0
                CtorSig("VNil", (("len_is", Eq(nat, Var(0, "len"), Con("Zero", "Nat", 0))),)),
                CtorSig(
                    "VCons",
                    (
                        ("m", nat),
                        ("hd", Var(2, "X")),
                        ("tl", ind0("Vec", Var(3, "X"), Var(1, "m"))),
                        (
                            "len_is",
                            Eq(nat, Var(3, "len"), Con("S", "Nat", 0, (), (Var(2, "m"),))),
                        ),
                    ),
                ),
            ),
        ),
        IndSig(
            "DPair",
            (("X", Univ(0)), ("P", Pi(Var(0, "X"), Univ(0)))),
            (
                CtorSig(
                    "mkDPair",
                    (("first", Var(1, "X")), ("second", App(Var(1, "P"), Var(0, "first")))),
                ),
            ),
        ),
        IndSig("Float", (), ()),
        IndSig("Unit", (), (CtorSig("unit", ()),)),
    ]


# ---------------------------------------------------------------------------
# Germs


NAT = Ind("Nat", 0)
BOOL = Ind("Bool", 0)
TRUE = Con("true", "Bool", 0)
FALSE = Con("false", "Bool", 0)


def nat_lit(n: int) -> Term:
    out: Term = Con("Zero", "Nat", 0)
    for _ in range(n):
        out = Con("S", "Nat", 0, (), (out,))
    return out


def nat_of(t: Term) -> int | None:
    """Inverse of nat_lit, None for anything but a closed numeral."""

    n = 0
    while True:
        match t:
            case Con("Zero", "Nat", 0, (), ()):
                return n
            case Con("S", "Nat", 0, (), (pred,)):
                n += 1
                t = pred
            case _:
                return None


class NoGermAtLevel(Exception):
    """The head has no least-precise type at the requested level."""


def germ(head: Head, level: int, sigs: SigTable) -> Term:
    """Least precise type with the given head at the given universe level."""

    unk_ty = Unk(Univ(level))
    if head.tag == "Pi":
        return Pi(unk_ty, shift(unk_ty, 1), "_")
    if head.tag == "Eq":
        return Eq(unk_ty, Unk(unk_ty), Unk(unk_ty))
    if head.tag == "Type":
        if level == 0:
            raise NoGermAtLevel("no universe fits inside the unknown type at level 0")
        return Univ(level - 1)
    if head.tag == "Ind":
        sig = sigs[head.name]
        tele = params_at(sig, level)
        params: list[Term] = []
        for k in range(len(tele)):
            params.append(Unk(tele_entry_type(tele, params, k)))
        return Ind(head.name, level, tuple(params))
    raise NoGermAtLevel(f"head {head.tag} has no germ")


def min_germ_level(ty: Term) -> int | None:
    """Smallest level whose unknown type the germ ``ty`` fits inside.

    Returns None when ``ty`` is not a germ of any head/level.
    """

    match ty:
        case Univ(level):
            return level + 1
        case Pi(Unk(Univ(i)), Unk(Univ(j)), _) if i == j:
            return i
        case Eq(Unk(Univ(i)), Unk(Unk(Univ(j))), Unk(Unk(Univ(k)))) if i == j == k:
            return i
        case Ind(_, level, params):
            for p in params:
                if not isinstance(p, Unk):
                    return None
            return level
        case _:
            return None


def is_germ_for(ty: Term, level: int, sigs: SigTable) -> bool:
    """Whether ``ty`` is a germ that fits inside the unknown type at ``level``."""

    match ty:
        case Univ(j):
            return j < level
        case Pi() | Eq():
            m = min_germ_level(ty)
            return m == level
        case Ind(name, j, _):
            if j != level or name not in sigs:
                return False
            return ty == germ(ind_head(name, level), level, sigs)
        case _:
            return False
