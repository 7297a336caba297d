"""Command-line entry point: check, elab, eval, repl, and props.

Exit codes: 0 success, 1 diagnostics (parse, elaboration, or property
failures), 2 out of fuel, 3 internal invariant breach.  An error verdict
from evaluation is a successful outcome: graceful failure is the object
language's feature, so eval exits 0 after reporting it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields

from .elaborate import Program, elab_program, elab_term
from .frontend import (
    ParseError,
    parse_cast_term,
    parse_program,
    parse_surface_term,
    print_term,
)
from .precision import def_consistent, def_prec
from .reduction import (
    AlreadyNeutral,
    AlreadyValue,
    Fuel,
    OutOfFuelError,
    Stepped,
    StuckError,
    contains_error,
    normalize,
    reduce_step,
)
from .syntax import Err, SData, SDecl, SDef, SigTable, SrcTerm, Term
from .typecheck import CheckError, Context, synth

DEFAULT_FUEL = 100000


@dataclass(frozen=True)
class RunConfig:
    fuel: int = DEFAULT_FUEL
    trace: bool = False
    emit: str = "cast"
    color: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.fuel < 1:
            raise ValueError("fuel must be at least 1")


def _paint(cfg: RunConfig, s: str, code: str) -> str:
    if cfg.color and sys.stdout.isatty():
        return f"\x1b[{code}m{s}\x1b[0m"
    return s


def _load(path: str) -> tuple[SDecl, ...]:
    with open(path) as fh:
        return parse_program(fh.read(), file=path)


def _diag(cfg: RunConfig, message: str) -> None:
    print(_paint(cfg, message, "31"), file=sys.stderr)


def _first_err(t: Term) -> Err | None:
    """Leftmost error subterm, following the same order as its path."""

    if isinstance(t, Err):
        return t
    if not isinstance(t, Term):
        return None
    for f in fields(t):
        v = getattr(t, f.name)
        subs = v if isinstance(v, tuple) else (v,)
        for sub in subs:
            if isinstance(sub, Term):
                found = _first_err(sub)
                if found is not None:
                    return found
    return None


# ---------------------------------------------------------------------------
# check / elab / eval


def cmd_check(path: str, cfg: RunConfig) -> int:
    decls = _load(path)
    prog = elab_program(decls, Fuel(cfg.fuel))
    for d in prog.diagnostics:
        _diag(cfg, str(d))
    if prog.diagnostics:
        return 1
    print(f"ok: {len(prog.defs)} definition(s)")
    return 0


def _term_json(t: Term | SrcTerm) -> object:
    out: dict[str, object] = {"node": type(t).__name__}
    for f in fields(t):
        if f.name == "span":
            continue
        v = getattr(t, f.name)
        if isinstance(v, (Term, SrcTerm)):
            out[f.name] = _term_json(v)
        elif isinstance(v, tuple):
            out[f.name] = [
                _term_json(x) if isinstance(x, (Term, SrcTerm)) else x for x in v
            ]
        else:
            out[f.name] = v
    return out


def _print_surface_decl(d: SDecl, sigs: SigTable) -> str:
    if isinstance(d, SDef):
        return (f"def {d.name} : {print_term(d.ty, sigs)} :="
                f"\n  {print_term(d.body, sigs)}")
    rows = [f"data {d.name}"]
    names: list[str] = []
    for pname, pty in d.params:
        rows.append(f"({pname} : {print_term(pty, sigs, tuple(names))})")
        names.append(pname)
    lines = [" ".join(rows) + " where"]
    for cname, args in d.ctors:
        binders = []
        anames = list(names)
        for aname, aty in args:
            binders.append(f"({aname} : {print_term(aty, sigs, tuple(anames))})")
            anames.append(aname)
        lines.append("  | " + " ".join([cname] + binders))
    return "\n".join(lines)


def cmd_elab(path: str, cfg: RunConfig) -> int:
    decls = _load(path)
    if cfg.emit == "surface":
        sigs = SigTable()
        print("\n\n".join(_print_surface_decl(d, sigs) for d in decls))
        return 0
    prog = elab_program(decls, Fuel(cfg.fuel))
    for d in prog.diagnostics:
        _diag(cfg, str(d))
    if prog.diagnostics:
        return 1
    if cfg.emit == "json":
        payload = {
            "defs": [
                {"name": d.name, "type": _term_json(d.ty), "term": _term_json(d.term)}
                for d in prog.defs
            ]
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    for d in prog.defs:
        print(f"{d.name} : {print_term(d.ty, prog.sigs)}")
        print(f"{d.name} := {print_term(d.term, prog.sigs)}")
    return 0


def _trace_eval(t: Term, fuel: Fuel, sigs: SigTable) -> Term:
    step = 0
    while True:
        outcome = reduce_step(t, sigs)
        if isinstance(outcome, Stepped):
            fuel.spend()
            step += 1
            print(f"  [{step}] {outcome.rule}")
            t = outcome.term
            continue
        if isinstance(outcome, (AlreadyValue, AlreadyNeutral)):
            return normalize(t, fuel, sigs)
        raise StuckError(f"stuck: {outcome.reason}")


def cmd_eval(path: str, name: str, cfg: RunConfig) -> int:
    decls = _load(path)
    fuel = Fuel(cfg.fuel)
    prog = elab_program(decls, fuel)
    for d in prog.diagnostics:
        _diag(cfg, str(d))
    if prog.diagnostics:
        return 1
    target = prog.lookup(name)
    if target is None:
        _diag(cfg, f"{name} is not defined in {path}")
        return 1
    try:
        if cfg.trace:
            value = _trace_eval(target.term, fuel, prog.sigs)
        else:
            value = normalize(target.term, fuel, prog.sigs)
    except OutOfFuelError:
        print("verdict: out of fuel")
        return 2
    print(print_term(value, prog.sigs))
    path_to_err = contains_error(value)
    if path_to_err is not None:
        err = _first_err(value)
        where = " > ".join(path_to_err) if path_to_err else "top"
        ty = print_term(err.ty, prog.sigs)
        print(_paint(cfg, f"verdict: error @ {where} : {ty}", "31"))
    else:
        print(_paint(cfg, "verdict: value", "32"))
    return 0


# ---------------------------------------------------------------------------
# repl


class Session:
    """REPL state: declarations accumulate and are re-elaborated as a whole."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.decls: list[SDecl] = []
        self.prog = elab_program((), Fuel(cfg.fuel))

    def def_names(self) -> tuple[str, ...]:
        return tuple(d.name for d in self.prog.defs)

    def _fuel(self) -> Fuel:
        return Fuel(self.cfg.fuel)

    def _warn_fuel(self, fuel: Fuel) -> None:
        used = self.cfg.fuel - fuel.remaining
        if used >= 0.8 * self.cfg.fuel:
            print(f"warning: {used} of {self.cfg.fuel} fuel used")

    def _parse_term(self, text: str) -> tuple[Term, Term]:
        """A term with its type: surface syntax first, cast calculus second."""

        fuel = self._fuel()
        try:
            s = parse_surface_term(text, defs=self.def_names(), sigs=self.prog.sigs)
            surface_error = None
        except ParseError as e:
            s, surface_error = None, e
        if s is not None:
            g, ty = elab_term(self.prog, s, fuel)
            self._warn_fuel(fuel)
            return g, ty
        try:
            t = parse_cast_term(text, sigs=self.prog.sigs)
        except ParseError:
            raise surface_error
        ty = synth(Context(), t, fuel, self.prog.sigs)
        self._warn_fuel(fuel)
        return t, ty

    def declare(self, text: str) -> None:
        decls = parse_program(text)
        before = len(self.prog.diagnostics)
        trial = elab_program(tuple(self.decls) + decls, Fuel(self.cfg.fuel))
        if len(trial.diagnostics) > before:
            for d in trial.diagnostics[before:]:
                print(str(d))
            return
        self.decls.extend(decls)
        self.prog = trial
        for d in decls:
            print(f"defined {d.name}")

    def line(self, text: str) -> None:
        text = text.strip()
        if not text or text.startswith("--"):
            return
        if text.startswith(("def ", "data ")):
            self.declare(text)
            return
        if text.startswith(":t "):
            _, ty = self._parse_term(text[3:])
            print(print_term(ty, self.prog.sigs))
            return
        if text.startswith(":prec "):
            lhs, rhs = _split_query(text[6:], ("⊑", "<="))
            t1, _ = self._parse_term(lhs)
            t2, _ = self._parse_term(rhs)
            fuel = self._fuel()
            print(str(def_prec(t1, t2, fuel, self.prog.sigs)).lower())
            return
        if text.startswith(":cst "):
            lhs, rhs = _split_query(text[5:], ("~",))
            t1, _ = self._parse_term(lhs)
            t2, _ = self._parse_term(rhs)
            fuel = self._fuel()
            print(str(def_consistent(t1, t2, fuel, self.prog.sigs)).lower())
            return
        if text in (":q", ":quit"):
            raise EOFError
        if text.startswith(":"):
            print(f"unknown command {text.split()[0]}; try :t :prec :cst :q")
            return
        t, _ = self._parse_term(text)
        fuel = self._fuel()
        print(print_term(normalize(t, fuel, self.prog.sigs), self.prog.sigs))
        self._warn_fuel(fuel)


def _split_query(text: str, seps: tuple[str, ...]) -> tuple[str, str]:
    for sep in seps:
        if sep in text:
            lhs, rhs = text.split(sep, 1)
            return lhs.strip(), rhs.strip()
    raise ParseError(f"expected one of {' '.join(seps)} in the query")


def cmd_repl(cfg: RunConfig) -> int:
    session = Session(cfg)
    print("geq repl; :t TERM for a type, :q to quit")
    while True:
        try:
            text = input("geq> ")
        except EOFError:
            print()
            return 0
        try:
            session.line(text)
        except EOFError:
            return 0
        except OutOfFuelError:
            print("out of fuel")
        except (ParseError, CheckError) as e:
            print(str(e))


# ---------------------------------------------------------------------------
# props


def cmd_props(suite: str, cfg: RunConfig) -> int:
    from . import harness

    budget = harness.GenBudget(seed=cfg.seed)
    try:
        reports = harness.run_suite(suite, budget, fuel=cfg.fuel)
    except KeyError:
        _diag(cfg, f"unknown suite {suite}; try lemma1..lemma12, all, "
                   "confluence, progress, conservativity, dgg, canonicity")
        return 1
    failed = any(r.failures for r in reports)
    if cfg.emit == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2))
        return 1 if failed else 0
    for r in reports:
        line = f"{r.lemma}: {r.passes} pass"
        if r.failures:
            line += f", {len(r.failures)} fail"
        if r.inconclusive:
            line += f", {r.inconclusive} inconclusive at fuel"
        print(line)
        for fail in r.failures[:5]:
            print(f"  counterexample: {fail.witness}")
            print(f"    {fail.detail}")
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="geq")
    parser.add_argument("--fuel", type=int,
                        default=int(os.environ.get("GEQ_FUEL", DEFAULT_FUEL)))
    parser.add_argument("--trace", action="store_true")
    parser.add_argument("--emit", choices=("surface", "cast", "json"), default="cast")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--no-color", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    p_check = sub.add_parser("check")
    p_check.add_argument("path")
    p_elab = sub.add_parser("elab")
    p_elab.add_argument("path")
    p_eval = sub.add_parser("eval")
    p_eval.add_argument("path")
    p_eval.add_argument("name")
    sub.add_parser("repl")
    p_props = sub.add_parser("props")
    p_props.add_argument("suite")
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(fuel=args.fuel, trace=args.trace, emit=args.emit,
                        color=not args.no_color, seed=args.seed)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        if args.command == "check":
            return cmd_check(args.path, cfg)
        if args.command == "elab":
            return cmd_elab(args.path, cfg)
        if args.command == "eval":
            return cmd_eval(args.path, args.name, cfg)
        if args.command == "repl":
            return cmd_repl(cfg)
        return cmd_props(args.suite, cfg)
    except (ParseError, CheckError) as e:
        _diag(cfg, str(e))
        return 1
    except OutOfFuelError:
        _diag(cfg, "out of fuel")
        return 2
    except (StuckError, AssertionError) as e:
        _diag(cfg, f"internal error: {e}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
