"""Concrete syntax: shared lexer, a parser per language, and a printer.

The surface grammar and the cast-calculus grammar share one lexer.  The
cast grammar adds the forms the surface language must not be able to
write: casts, compositions, errors, and reflexivity proofs with explicit
witnesses.  Constructor and inductive names are resolved and saturated
during parsing, so the ASTs only ever hold fully applied occurrences.
``print_term`` inverts both parsers up to binder names: parsing its
output yields an alpha-equal term.
"""

from __future__ import annotations

from dataclasses import dataclass

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
    nat_of,
    subst,
)

KEYWORDS = frozenset({"data", "where", "def", "match", "refl", "J", "err", "Type"})

_PUNCT = ("::", ":=", "=>", "->", "==", "<=",
          "(", ")", "{", "}", "[", "]", "<", ">", ".", ",", ":",
          "?", "@", "|", "\\", "&")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start: int
    end: int
    line: int
    col: int


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan | None = None):
        if span is not None:
            message = f"{span.file}:{span.line}:{span.col}: {message}"
        super().__init__(message)
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str  # ident | nat | float | punct | eof
    text: str
    start: int
    end: int


def _lex(text: str, file: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(Token("float", text[i:j], i, j))
            else:
                toks.append(Token("nat", text[i:j], i, j))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            toks.append(Token("ident", text[i:j], i, j))
            i = j
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                toks.append(Token("punct", p, i, i + len(p)))
                i += len(p)
                break
        else:
            span = _span_at(text, file, i, i + 1)
            raise ParseError(f"unexpected character {c!r}", span)
    toks.append(Token("eof", "", n, n))
    return toks


def _span_at(text: str, file: str, start: int, end: int) -> SourceSpan:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(file, start, end, line, col)


class _ParserBase:
    """Token-stream plumbing shared by the two grammars."""

    def __init__(self, text: str, file: str, sigs: SigTable | None):
        self.text = text
        self.file = file
        self.toks = _lex(text, file)
        self.pos = 0
        self.locals: list[str] = []
        # ind name -> parameter count; ctor name -> (ind, #params, #args)
        self.inds: dict[str, int] = {}
        self.ctors: dict[str, tuple[str, int, int]] = {}
        self.ind_ctors: dict[str, list[str]] = {}
        for name in (sigs := sigs or SigTable()).names():
            sig = sigs[name]
            self.inds[name] = len(sig.params)
            self.ind_ctors[name] = [c.name for c in sig.ctors]
            for c in sig.ctors:
                self.ctors[c.name] = (name, len(sig.params), len(c.args))

    def peek(self, ahead: int = 0) -> Token:
        k = min(self.pos + ahead, len(self.toks) - 1)
        return self.toks[k]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.text == text and t.kind in ("punct", "ident")

    def eat(self, text: str) -> Token | None:
        if self.at(text):
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise self.error(f"expected {text!r}, found {t.text or 'end of input'!r}", t)
        return t

    def expect_ident(self) -> Token:
        t = self.next()
        if t.kind != "ident" or t.text in KEYWORDS:
            raise self.error(f"expected a name, found {t.text or 'end of input'!r}", t)
        return t

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, _span_at(self.text, self.file, tok.start, tok.end))

    def span_from(self, start_tok: Token) -> SourceSpan:
        end = self.toks[max(self.pos - 1, 0)].end
        return _span_at(self.text, self.file, start_tok.start, max(end, start_tok.end))

    def opt_level(self) -> int:
        """An optional ``@ n`` level suffix."""

        if self.at("@") and self.peek(1).kind == "nat":
            self.next()
            return int(self.next().text)
        return 0

    def at_atom_start(self, cast: bool) -> bool:
        t = self.peek()
        if t.kind in ("nat", "float"):
            return True
        if t.kind == "ident":
            return t.text not in KEYWORDS or t.text in ("Type", "refl", "J", "match") or (
                cast and t.text == "err"
            )
        return t.text in ("(", "?", "\\") or (cast and t.text == "<")

    def lookup(self, name: str, tok: Token) -> int:
        for i in range(len(self.locals) - 1, -1, -1):
            if self.locals[i] == name:
                return len(self.locals) - 1 - i
        raise self.error(f"unknown name {name}", tok)


# ---------------------------------------------------------------------------
# Surface language


class _SurfaceParser(_ParserBase):
    def __init__(self, text: str, file: str, defs: tuple[str, ...] = (),
                 sigs: SigTable | None = None):
        super().__init__(text, file, sigs)
        self.defs: list[str] = list(defs)

    def program(self) -> tuple[SDecl, ...]:
        decls: list[SDecl] = []
        while self.peek().kind != "eof":
            if self.at("data"):
                decls.append(self.data_decl())
            elif self.at("def"):
                decls.append(self.def_decl())
            else:
                raise self.error("expected 'data' or 'def'")
        return tuple(decls)

    def data_decl(self) -> SData:
        start = self.expect("data")
        name = self.expect_ident().text
        if name in self.inds:
            raise self.error(f"inductive {name} already declared", start)
        params: list[tuple[str, SrcTerm]] = []
        while self.at("("):
            pname, pty = self.binder()
            params.append((pname, pty))
            self.locals.append(pname)
        self.expect("where")
        self.inds[name] = len(params)
        ctors: list[tuple[str, tuple[tuple[str, SrcTerm], ...]]] = []
        while self.eat("|"):
            cname = self.expect_ident().text
            if cname in self.ctors:
                raise self.error(f"constructor {cname} already declared")
            args: list[tuple[str, SrcTerm]] = []
            while self.at("("):
                aname, aty = self.binder()
                args.append((aname, aty))
                self.locals.append(aname)
            del self.locals[len(params):]
            ctors.append((cname, tuple(args)))
        del self.locals[:]
        self.ind_ctors[name] = [cname for cname, _ in ctors]
        for cname, args in ctors:
            self.ctors[cname] = (name, len(params), len(args))
        return SData(name, tuple(params), tuple(ctors), span=self.span_from(start))

    def def_decl(self) -> SDef:
        start = self.expect("def")
        name = self.expect_ident().text
        if name in self.defs or name in self.inds or name in self.ctors:
            raise self.error(f"{name} is already defined", start)
        self.expect(":")
        ty = self.expr()
        self.expect(":=")
        body = self.expr()
        self.defs.append(name)
        return SDef(name, ty, body, span=self.span_from(start))

    def binder(self) -> tuple[str, SrcTerm]:
        self.expect("(")
        name = self.expect_ident().text
        self.expect(":")
        ty = self.expr()
        self.expect(")")
        return name, ty

    def expr(self) -> SrcTerm:
        start = self.peek()
        body = self.eq_expr()
        if self.eat("::"):
            ty = self.expr()
            return SAsc(body, ty, span=self.span_from(start))
        return body

    def eq_expr(self) -> SrcTerm:
        start = self.peek()
        lhs = self.arrow()
        if self.eat("=="):
            rhs = self.arrow()
            self.expect(":")
            ty = self.eq_expr()
            return SEq(ty, lhs, rhs, span=self.span_from(start))
        return lhs

    def _at_binder(self) -> bool:
        return (self.at("(") and self.peek(1).kind == "ident"
                and self.peek(2).text == ":")

    def arrow(self) -> SrcTerm:
        start = self.peek()
        if self._at_binder():
            binders = []
            while self._at_binder():
                binders.append(self.binder())
                self.locals.append(binders[-1][0])
            self.expect("->")
            cod = self.arrow()
            del self.locals[-len(binders):]
            for name, dom in reversed(binders):
                cod = SPi(dom, cod, name, span=self.span_from(start))
            return cod
        dom = self.app()
        if self.eat("->"):
            self.locals.append("_")
            cod = self.arrow()
            self.locals.pop()
            return SPi(dom, cod, "_", span=self.span_from(start))
        return dom

    def app(self) -> SrcTerm:
        start = self.peek()
        out = self.atom()
        while self.at_atom_start(cast=False):
            out = SApp(out, self.atom(), span=self.span_from(start))
        return out

    def atom(self) -> SrcTerm:
        start = self.peek()
        if self.eat("?"):
            level = None
            if self.at("@"):
                self.next()
                tok = self.next()
                if tok.kind != "nat":
                    raise self.error("the unknown's level must be a numeral", tok)
                level = int(tok.text)
            return SUnk(level, span=self.span_from(start))
        if self.at("Type"):
            self.next()
            level = int(self.next().text) if self.peek().kind == "nat" else 0
            return SUniv(level, span=self.span_from(start))
        if self.at("\\"):
            return self.lam()
        if self.at("refl"):
            self.next()
            return SRefl(self.atom(), span=self.span_from(start))
        if self.at("J"):
            self.next()
            motive, mname = self.motive()
            lhs, rhs, base, proof = (self.atom() for _ in range(4))
            return SEqElim(motive, lhs, rhs, base, proof, mname,
                           span=self.span_from(start))
        if self.at("match"):
            return self.match_expr()
        tok = self.peek()
        if tok.kind == "nat":
            self.next()
            out: SrcTerm = SCon("Zero", "Nat", 0, span=self.span_from(start))
            for _ in range(int(tok.text)):
                out = SCon("S", "Nat", 0, (), (out,), span=self.span_from(start))
            return out
        if tok.kind == "float":
            self.next()
            return SCon(tok.text, "Float", 0, span=self.span_from(start))
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return self.name_atom()
        if self.eat("("):
            out = self.expr()
            self.expect(")")
            return out
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def lam(self) -> SrcTerm:
        start = self.expect("\\")
        binders = []
        while self._at_binder():
            binders.append(self.binder())
            self.locals.append(binders[-1][0])
        if not binders:
            raise self.error("lambda needs at least one (name : type) binder")
        self.expect(".")
        body = self.expr()
        del self.locals[-len(binders):]
        for name, dom in reversed(binders):
            body = SLam(dom, body, name, span=self.span_from(start))
        return body

    def motive(self) -> tuple[SrcTerm, str]:
        self.expect("(")
        name = self.expect_ident().text
        self.expect(".")
        self.locals.append(name)
        motive = self.expr()
        self.locals.pop()
        self.expect(")")
        return motive, name

    def name_atom(self) -> SrcTerm:
        tok = self.expect_ident()
        name = tok.text
        for i in range(len(self.locals) - 1, -1, -1):
            if self.locals[i] == name:
                return SVar(len(self.locals) - 1 - i, name, span=self.span_from(tok))
        if name in self.ctors:
            ind, nparams, nargs = self.ctors[name]
            level = self.opt_level()
            params = tuple(self.saturate(name, nparams))
            args = tuple(self.saturate(name, nargs))
            return SCon(name, ind, level, params, args, span=self.span_from(tok))
        if name in self.inds:
            level = self.opt_level()
            params = tuple(self.saturate(name, self.inds[name]))
            return SInd(name, level, params, span=self.span_from(tok))
        if name in self.defs:
            idx = len(self.locals) + (len(self.defs) - 1 - self.defs.index(name))
            return SVar(idx, name, span=self.span_from(tok))
        raise self.error(f"unknown name {name}", tok)

    def saturate(self, name: str, count: int) -> list[SrcTerm]:
        out = []
        for _ in range(count):
            if not self.at_atom_start(cast=False):
                raise self.error(f"{name} is not fully applied here")
            out.append(self.atom())
        return out

    def match_expr(self) -> SrcTerm:
        start = self.expect("match")
        self.expect("[")
        ind = self.expect_ident().text
        if ind not in self.inds:
            raise self.error(f"unknown inductive {ind}")
        self.expect("]")
        scrut = self.atom()
        motive, mname = self.motive()
        rec_name = "rec"
        if self.eat("rec"):
            rec_name = self.expect_ident().text
        self.expect("{")
        branches: list[SrcTerm] = []
        arities: list[int] = []
        first = True
        while not self.at("}"):
            if not first or self.at("|"):
                self.expect("|")
            first = False
            ctor = self.expect_ident().text
            ys = []
            while self.peek().kind == "ident" and not self.at("=>"):
                ys.append(self.expect_ident().text)
            self.expect("=>")
            expected = self.ctors.get(ctor)
            if expected is None or expected[0] != ind:
                raise self.error(f"{ctor} is not a constructor of {ind}")
            declared = self.ind_ctors[ind]
            if len(branches) >= len(declared) or declared[len(branches)] != ctor:
                raise self.error(
                    f"branches of a {ind} match must follow the declaration "
                    f"order {', '.join(declared)}")
            if len(ys) != expected[2]:
                raise self.error(f"{ctor} binds {expected[2]} arguments, found {len(ys)}")
            self.locals.append(rec_name)
            self.locals.extend(ys)
            branches.append(self.expr())
            del self.locals[-(len(ys) + 1):]
            arities.append(len(ys))
        self.expect("}")
        if len(branches) != len(self.ind_ctors[ind]):
            raise self.error(f"match on {ind} must cover every constructor")
        return SMatch(ind, scrut, motive, tuple(branches), tuple(arities),
                      mname, rec_name, span=self.span_from(start))


# ---------------------------------------------------------------------------
# Cast calculus


class _CastParser(_ParserBase):
    def __init__(self, text: str, file: str, free: tuple[str, ...] = (),
                 sigs: SigTable | None = None):
        super().__init__(text, file, sigs)
        self.locals = list(free)

    def term(self) -> Term:
        lhs = self.arrow()
        if self.eat("=="):
            rhs = self.arrow()
            self.expect(":")
            ty = self.term()
            return Eq(ty, lhs, rhs)
        return lhs

    def _at_binder(self) -> bool:
        return (self.at("(") and self.peek(1).kind == "ident"
                and self.peek(2).text == ":")

    def binder(self) -> tuple[str, Term]:
        self.expect("(")
        name = self.expect_ident().text
        self.expect(":")
        ty = self.term()
        self.expect(")")
        return name, ty

    def arrow(self) -> Term:
        if self._at_binder():
            binders = []
            while self._at_binder():
                binders.append(self.binder())
                self.locals.append(binders[-1][0])
            self.expect("->")
            cod = self.arrow()
            del self.locals[-len(binders):]
            for name, dom in reversed(binders):
                cod = Pi(dom, cod, name)
            return cod
        dom = self.comp()
        if self.eat("->"):
            self.locals.append("_")
            cod = self.arrow()
            self.locals.pop()
            return Pi(dom, cod, "_")
        return dom

    def comp(self) -> Term:
        out = self.app()
        while self.eat("&"):
            self.expect("[")
            ty = self.term()
            self.expect("]")
            out = Comp(ty, out, self.app())
        return out

    def app(self) -> Term:
        out = self.atom()
        while self.at_atom_start(cast=True):
            out = App(out, self.atom())
        return out

    def atom(self) -> Term:
        if self.eat("?"):
            self.expect("@")
            return Unk(self.atom())
        if self.at("err"):
            self.next()
            self.expect("@")
            return Err(self.atom())
        if self.at("Type"):
            self.next()
            level = int(self.next().text) if self.peek().kind == "nat" else 0
            return Univ(level)
        if self.at("\\"):
            return self.lam()
        if self.at("refl"):
            self.next()
            self.expect("<")
            wit = self.term()
            self.expect(">")
            self.expect("{")
            lhs = self.term()
            self.expect(",")
            rhs = self.term()
            self.expect("}")
            return Refl(wit, lhs, rhs)
        if self.at("<"):
            self.next()
            tgt = self.term()
            self.expect("<=")
            src = self.term()
            self.expect(">")
            return Cast(src, tgt, self.atom())
        if self.at("J"):
            self.next()
            motive, mname = self.motive()
            lhs, rhs, base, proof = (self.atom() for _ in range(4))
            return EqElim(motive, lhs, rhs, base, proof, mname)
        if self.at("match"):
            return self.match_expr()
        tok = self.peek()
        if tok.kind == "nat":
            self.next()
            out: Term = Con("Zero", "Nat", 0)
            for _ in range(int(tok.text)):
                out = Con("S", "Nat", 0, (), (out,))
            return out
        if tok.kind == "float":
            self.next()
            return Con(tok.text, "Float", 0)
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return self.name_atom()
        if self.eat("("):
            out = self.term()
            self.expect(")")
            return out
        raise self.error(f"expected a term, found {tok.text or 'end of input'!r}")

    def lam(self) -> Term:
        self.expect("\\")
        binders = []
        while self._at_binder():
            binders.append(self.binder())
            self.locals.append(binders[-1][0])
        if not binders:
            raise self.error("lambda needs at least one (name : type) binder")
        self.expect(".")
        body = self.term()
        del self.locals[-len(binders):]
        for name, dom in reversed(binders):
            body = Lam(dom, body, name)
        return body

    def motive(self) -> tuple[Term, str]:
        self.expect("(")
        name = self.expect_ident().text
        self.expect(".")
        self.locals.append(name)
        motive = self.term()
        self.locals.pop()
        self.expect(")")
        return motive, name

    def name_atom(self) -> Term:
        tok = self.expect_ident()
        name = tok.text
        for i in range(len(self.locals) - 1, -1, -1):
            if self.locals[i] == name:
                return Var(len(self.locals) - 1 - i, name)
        if name in self.ctors:
            ind, nparams, nargs = self.ctors[name]
            level = self.opt_level()
            params = tuple(self.saturate(name, nparams))
            args = tuple(self.saturate(name, nargs))
            return Con(name, ind, level, params, args)
        if name in self.inds:
            level = self.opt_level()
            return Ind(name, level, tuple(self.saturate(name, self.inds[name])))
        raise self.error(f"unknown name {name}", tok)

    def saturate(self, name: str, count: int) -> list[Term]:
        out = []
        for _ in range(count):
            if not self.at_atom_start(cast=True):
                raise self.error(f"{name} is not fully applied here")
            out.append(self.atom())
        return out

    def match_expr(self) -> Term:
        self.expect("match")
        self.expect("[")
        ind = self.expect_ident().text
        if ind not in self.inds:
            raise self.error(f"unknown inductive {ind}")
        self.expect("]")
        scrut = self.atom()
        motive, mname = self.motive()
        rec_name = "rec"
        if self.eat("rec"):
            rec_name = self.expect_ident().text
        self.expect("{")
        branches: list[Term] = []
        arities: list[int] = []
        first = True
        while not self.at("}"):
            if not first or self.at("|"):
                self.expect("|")
            first = False
            ctor = self.expect_ident().text
            ys = []
            while self.peek().kind == "ident" and not self.at("=>"):
                ys.append(self.expect_ident().text)
            self.expect("=>")
            expected = self.ctors.get(ctor)
            if expected is None or expected[0] != ind:
                raise self.error(f"{ctor} is not a constructor of {ind}")
            declared = self.ind_ctors[ind]
            if len(branches) >= len(declared) or declared[len(branches)] != ctor:
                raise self.error(
                    f"branches of a {ind} match must follow the declaration "
                    f"order {', '.join(declared)}")
            if len(ys) != expected[2]:
                raise self.error(f"{ctor} binds {expected[2]} arguments, found {len(ys)}")
            self.locals.append(rec_name)
            self.locals.extend(ys)
            branches.append(self.term())
            del self.locals[-(len(ys) + 1):]
            arities.append(len(ys))
        self.expect("}")
        if len(branches) != len(self.ind_ctors[ind]):
            raise self.error(f"match on {ind} must cover every constructor")
        return Match(ind, scrut, motive, tuple(branches), tuple(arities),
                     mname, rec_name)


def parse_program(text: str, file: str = "<input>") -> tuple[SDecl, ...]:
    return _SurfaceParser(text, file).program()


def parse_surface_term(text: str, file: str = "<input>", defs: tuple[str, ...] = (),
                       sigs: SigTable | None = None) -> SrcTerm:
    p = _SurfaceParser(text, file, defs, sigs)
    out = p.expr()
    if p.peek().kind != "eof":
        raise p.error("trailing input after the term")
    return out


def parse_cast_term(text: str, file: str = "<input>", free: tuple[str, ...] = (),
                    sigs: SigTable | None = None) -> Term:
    p = _CastParser(text, file, free, sigs)
    out = p.term()
    if p.peek().kind != "eof":
        raise p.error("trailing input after the term")
    return out


# ---------------------------------------------------------------------------
# Printing

_TOP, _EQ, _ARROW, _COMP, _APP, _ATOM = range(6)


def _ends_with_type_kw(s: str) -> bool:
    return s.endswith("Type") and (len(s) == 4 or not (s[-5].isalnum() or s[-5] in "_'"))


def _adjoin(parts: list[str]) -> str:
    """Join atom chunks, guarding numerals that 'Type' would swallow."""

    out = [parts[0]]
    for p in parts[1:]:
        if p[0].isdigit() and _ends_with_type_kw(out[-1]):
            p = f"({p})"
        out.append(p)
    return " ".join(out)


def _non_dependent(cod: Term) -> bool:
    # two distinct sentinels land on every use of the bound variable
    return alpha_eq(subst(cod, Univ(999000111)), subst(cod, Univ(999000222)))


class _Printer:
    def __init__(self, sigs: SigTable, names: tuple[str, ...]):
        self.sigs = sigs
        self.env: list[str] = list(names)
        self.reserved = set(KEYWORDS)
        for name in sigs.names():
            self.reserved.add(name)
            for c in sigs[name].ctors:
                self.reserved.add(c.name)

    def fresh(self, name: str) -> str:
        if not name or name == "_":
            name = "x"
        while name in self.env or name in self.reserved:
            name += "'"
        return name

    def var(self, idx: int, name: str) -> str:
        if 0 <= idx < len(self.env):
            return self.env[-1 - idx]
        return name

    def wrap(self, s: str, prec: int, need: int) -> str:
        return f"({s})" if prec < need else s

    # -- cast calculus ------------------------------------------------------

    def term(self, t: Term, need: int) -> str:
        match t:
            case Var(idx, name):
                return self.var(idx, name)
            case Univ(level):
                return "Type" if level == 0 else f"Type {level}"
            case Pi(dom, cod, name):
                if _non_dependent(cod):
                    left = self.term(dom, _COMP)
                    self.env.append("_")
                    s = f"{left} -> {self.term(cod, _ARROW)}"
                    self.env.pop()
                else:
                    fresh = self.fresh(name)
                    left = self.term(dom, _TOP)
                    self.env.append(fresh)
                    s = f"({fresh} : {left}) -> {self.term(cod, _ARROW)}"
                    self.env.pop()
                return self.wrap(s, _ARROW, need)
            case Lam(dom, body, name):
                fresh = self.fresh(name)
                left = self.term(dom, _TOP)
                self.env.append(fresh)
                s = f"\\({fresh} : {left}) . {self.term(body, _TOP)}"
                self.env.pop()
                return self.wrap(s, _TOP, need)
            case App(fn, arg):
                s = _adjoin([self.term(fn, _APP), self.term(arg, _ATOM)])
                return self.wrap(s, _APP, need)
            case Ind(name, level, params):
                return self.applied(name, level, params, (), need)
            case Con(_, _, _, _, _):
                n = nat_of(t)
                if n is not None:
                    return str(n)
                assert isinstance(t, Con)
                return self.applied(t.name, t.level, t.params, t.args, need)
            case Match():
                return self.match_term(t)
            case Unk(ty):
                return f"?@{self.term(ty, _ATOM)}"
            case Err(ty):
                return f"err @ {self.term(ty, _ATOM)}"
            case Cast(src, tgt, body):
                s = (f"<{self.term(tgt, _TOP)} <= {self.term(src, _TOP)}> "
                     f"{self.term(body, _ATOM)}")
                return self.wrap(s, _APP, need)
            case Eq(ty, lhs, rhs):
                s = (f"{self.term(lhs, _ARROW)} == {self.term(rhs, _ARROW)}"
                     f" : {self.term(ty, _EQ)}")
                return self.wrap(s, _EQ, need)
            case Refl(wit, lhs, rhs):
                return (f"refl<{self.term(wit, _TOP)}>"
                        f"{{{self.term(lhs, _TOP)}, {self.term(rhs, _TOP)}}}")
            case Comp(ty, lhs, rhs):
                s = (f"{self.term(lhs, _COMP)} &[{self.term(ty, _TOP)}] "
                     f"{self.term(rhs, _APP)}")
                return self.wrap(s, _COMP, need)
            case EqElim(motive, lhs, rhs, base, proof, mname):
                fresh = self.fresh(mname)
                self.env.append(fresh)
                m = self.term(motive, _TOP)
                self.env.pop()
                parts = [self.term(u, _ATOM) for u in (lhs, rhs, base, proof)]
                return self.wrap(_adjoin([f"J ({fresh} . {m})"] + parts), _APP, need)
        raise ValueError(f"cannot print {type(t).__name__}")

    def applied(self, name: str, level: int, params: tuple, args: tuple,
                need: int) -> str:
        head = name if level == 0 else f"{name}@{level}"
        parts = [head] + [self.term(u, _ATOM) for u in params + args]
        s = _adjoin(parts)
        return self.wrap(s, _APP if len(parts) > 1 else _ATOM, need)

    def match_term(self, t: Match) -> str:
        scrut = self.term(t.scrut, _ATOM)
        zname = self.fresh(t.motive_name)
        self.env.append(zname)
        motive = self.term(t.motive, _TOP)
        self.env.pop()
        rec = self.fresh(t.rec_name)
        sig = self.sigs[t.ind]
        rows = []
        for k, csig in enumerate(sig.ctors):
            ys = []
            self.env.append(rec)
            for n, _ in csig.args:
                y = self.fresh(n)
                ys.append(y)
                self.env.append(y)
            body = self.term(t.branches[k], _TOP)
            del self.env[-(len(ys) + 1):]
            rows.append(f"| {' '.join([csig.name] + ys)} => {body}")
        recpart = f" rec {rec}" if rec != "rec" else ""
        return (f"match[{t.ind}] {scrut} ({zname} . {motive}){recpart}"
                f" {{ {' '.join(rows)} }}")

    # -- surface language ---------------------------------------------------

    def sterm(self, t: SrcTerm, need: int) -> str:
        match t:
            case SVar(idx, name):
                return self.var(idx, name)
            case SUniv(level):
                return "Type" if level == 0 else f"Type {level}"
            case SPi(dom, cod, name):
                if not _s_mentions(cod, 0):
                    left = self.sterm(dom, _COMP)
                    self.env.append("_")
                    s = f"{left} -> {self.sterm(cod, _ARROW)}"
                    self.env.pop()
                else:
                    fresh = self.fresh(name)
                    left = self.sterm(dom, _TOP)
                    self.env.append(fresh)
                    s = f"({fresh} : {left}) -> {self.sterm(cod, _ARROW)}"
                    self.env.pop()
                return self.wrap(s, _ARROW, need)
            case SLam(dom, body, name):
                fresh = self.fresh(name)
                left = self.sterm(dom, _TOP)
                self.env.append(fresh)
                s = f"\\({fresh} : {left}) . {self.sterm(body, _TOP)}"
                self.env.pop()
                return self.wrap(s, _TOP, need)
            case SApp(fn, arg):
                s = _adjoin([self.sterm(fn, _APP), self.sterm(arg, _ATOM)])
                return self.wrap(s, _APP, need)
            case SInd(name, level, params):
                return self.sapplied(name, level, params, (), need)
            case SCon(_, _, _, _, _):
                n = _snat_of(t)
                if n is not None:
                    return str(n)
                assert isinstance(t, SCon)
                return self.sapplied(t.name, t.level, t.params, t.args, need)
            case SMatch():
                return self.smatch_term(t)
            case SUnk(level):
                return "?" if level is None else f"? @ {level}"
            case SAsc(body, ty):
                s = f"{self.sterm(body, _EQ)} :: {self.sterm(ty, _TOP)}"
                return self.wrap(s, _TOP, need)
            case SEq(ty, lhs, rhs):
                s = (f"{self.sterm(lhs, _ARROW)} == {self.sterm(rhs, _ARROW)}"
                     f" : {self.sterm(ty, _EQ)}")
                return self.wrap(s, _EQ, need)
            case SRefl(body):
                return self.wrap(f"refl {self.sterm(body, _ATOM)}", _APP, need)
            case SEqElim(motive, lhs, rhs, base, proof, mname):
                fresh = self.fresh(mname)
                self.env.append(fresh)
                m = self.sterm(motive, _TOP)
                self.env.pop()
                parts = [self.sterm(u, _ATOM) for u in (lhs, rhs, base, proof)]
                return self.wrap(_adjoin([f"J ({fresh} . {m})"] + parts), _APP, need)
        raise ValueError(f"cannot print {type(t).__name__}")

    def sapplied(self, name: str, level: int, params: tuple, args: tuple,
                 need: int) -> str:
        head = name if level == 0 else f"{name}@{level}"
        parts = [head] + [self.sterm(u, _ATOM) for u in params + args]
        s = _adjoin(parts)
        return self.wrap(s, _APP if len(parts) > 1 else _ATOM, need)

    def smatch_term(self, t: SMatch) -> str:
        scrut = self.sterm(t.scrut, _ATOM)
        zname = self.fresh(t.motive_name)
        self.env.append(zname)
        motive = self.sterm(t.motive, _TOP)
        self.env.pop()
        rec = self.fresh(t.rec_name)
        sig = self.sigs[t.ind]
        rows = []
        for k, csig in enumerate(sig.ctors):
            ys = []
            self.env.append(rec)
            for n, _ in csig.args:
                y = self.fresh(n)
                ys.append(y)
                self.env.append(y)
            body = self.sterm(t.branches[k], _TOP)
            del self.env[-(len(ys) + 1):]
            rows.append(f"| {' '.join([csig.name] + ys)} => {body}")
        recpart = f" rec {rec}" if rec != "rec" else ""
        return (f"match[{t.ind}] {scrut} ({zname} . {motive}){recpart}"
                f" {{ {' '.join(rows)} }}")


def _s_mentions(t: SrcTerm, idx: int) -> bool:
    match t:
        case SVar(i, _):
            return i == idx
        case SPi(dom, cod, _):
            return _s_mentions(dom, idx) or _s_mentions(cod, idx + 1)
        case SLam(dom, body, _):
            return _s_mentions(dom, idx) or _s_mentions(body, idx + 1)
        case SApp(fn, arg):
            return _s_mentions(fn, idx) or _s_mentions(arg, idx)
        case SInd(_, _, params):
            return any(_s_mentions(p, idx) for p in params)
        case SCon(_, _, _, params, args):
            return any(_s_mentions(u, idx) for u in params + args)
        case SMatch(_, scrut, motive, branches, arities):
            return (_s_mentions(scrut, idx) or _s_mentions(motive, idx + 1)
                    or any(_s_mentions(b, idx + a + 1)
                           for b, a in zip(branches, arities)))
        case SAsc(body, ty):
            return _s_mentions(body, idx) or _s_mentions(ty, idx)
        case SEq(ty, lhs, rhs):
            return any(_s_mentions(u, idx) for u in (ty, lhs, rhs))
        case SRefl(body):
            return _s_mentions(body, idx)
        case SEqElim(motive, lhs, rhs, base, proof, _):
            return (_s_mentions(motive, idx + 1)
                    or any(_s_mentions(u, idx) for u in (lhs, rhs, base, proof)))
        case _:
            return False


def _snat_of(t: SrcTerm) -> int | None:
    n = 0
    while True:
        match t:
            case SCon("Zero", "Nat", 0, (), ()):
                return n
            case SCon("S", "Nat", 0, (), (pred,)):
                n += 1
                t = pred
            case _:
                return None


def print_term(t: Term | SrcTerm, sigs: SigTable | None = None,
               names: tuple[str, ...] = ()) -> str:
    p = _Printer(sigs or SigTable(), names)
    if isinstance(t, SrcTerm):
        return p.sterm(t, _TOP)
    return p.term(t, _TOP)
