"""Parsing and printing: frozen concrete-syntax facts and round trips."""

import pytest
from hypothesis import given, settings

from geq.frontend import (
    ParseError,
    parse_cast_term,
    parse_program,
    parse_surface_term,
    print_term,
)
from geq.syntax import (
    App,
    BOOL,
    Cast,
    Comp,
    Con,
    Eq,
    EqElim,
    Err,
    FALSE,
    Ind,
    Lam,
    Match,
    NAT,
    Pi,
    Refl,
    SApp,
    SAsc,
    SCon,
    SData,
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
    TRUE,
    Univ,
    Unk,
    Var,
    alpha_eq,
    nat_lit,
    shift,
)

from strategies import typed_terms, untyped_terms


# -- surface parsing --------------------------------------------------------


def test_ascription_and_equality_nest_as_written():
    t = parse_surface_term("refl 0 :: 0 == 0 : Nat")
    assert t == SAsc(
        SRefl(SCon("Zero", "Nat", 0)),
        SEq(SInd("Nat", 0), SCon("Zero", "Nat", 0), SCon("Zero", "Nat", 0)),
    )


def test_unknown_with_and_without_level():
    assert parse_surface_term("?") == SUnk(None)
    assert parse_surface_term("? @ 0") == SUnk(0)
    assert parse_surface_term("?@2") == SUnk(2)


def test_numerals_become_unary_naturals():
    assert parse_surface_term("2") == SCon(
        "S", "Nat", 0, (), (SCon("S", "Nat", 0, (), (SCon("Zero", "Nat", 0),)),)
    )


def test_float_literals_name_float_constructors():
    assert parse_surface_term("2.25") == SCon("2.25", "Float", 0)


def test_arrow_sugar_and_dependent_binders():
    t = parse_surface_term("(x : Type) -> x -> x")
    assert t == SPi(SUniv(0), SPi(SVar(0, "x"), SVar(1, "x"), "_"), "x")


def test_application_is_left_associative():
    t = parse_surface_term("\\(f : Nat) . \\(x : Nat) . f x x")
    body = t.body.body
    assert body == SApp(SApp(SVar(1, "f"), SVar(0, "x")), SVar(0, "x"))


def test_constructors_are_saturated_at_parse_time():
    t = parse_surface_term("cons Nat 0 (nil Nat)")
    assert t == SCon(
        "cons", "List", 0, (SInd("Nat", 0),),
        (SCon("Zero", "Nat", 0), SCon("nil", "List", 0, (SInd("Nat", 0),))),
    )


def test_underapplied_constructor_is_rejected():
    with pytest.raises(ParseError, match="not fully applied"):
        parse_surface_term("cons Nat")


def test_match_with_recursion_binder():
    t = parse_surface_term(
        "\\(n : Nat) . match[Nat] n (z . Nat) { | Zero => 0 | S m => rec m }"
    )
    m = t.body
    assert isinstance(m, SMatch)
    assert m.arities == (0, 1)
    assert m.branches[1] == SApp(SVar(1, "rec"), SVar(0, "m"))


def test_match_branch_arity_is_checked():
    with pytest.raises(ParseError, match="binds 1 arguments"):
        parse_surface_term("match[Nat] 0 (z . Nat) { | Zero => 0 | S => 0 }")


def test_match_branches_must_follow_declaration_order():
    with pytest.raises(ParseError, match="declaration order"):
        parse_surface_term("match[Bool] true (z . Nat) { | false => 0 | true => 1 }")
    with pytest.raises(ParseError, match="every constructor"):
        parse_surface_term("match[Bool] true (z . Nat) { | true => 0 }")


def test_surface_rejects_cast_only_forms():
    for bad in ("<Nat <= Bool> 0", "0 &[Nat] 1", "err @ Nat", "refl<0>{0, 0}"):
        with pytest.raises(ParseError):
            parse_surface_term(bad)


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError, match=r"<input>:1:14: unknown name y"):
        parse_surface_term("\\(x : Nat) . y")


def test_spans_point_into_the_source():
    src = "refl 0 :: 0 == 0 : Nat"
    t = parse_surface_term(src)
    assert src[t.span.start:t.span.end] == src
    assert src[t.body.span.start:t.body.span.end] == "refl 0"


# -- programs ---------------------------------------------------------------


def test_program_with_data_and_defs():
    decls = parse_program(
        """
        -- length-indexed pairs, one level of nesting
        data Box (X : Type) where
          | box (contents : X)

        def idnat : (x : Nat) -> Nat := \\(x : Nat) . x
        def three : Nat := idnat 3
        """
    )
    assert [type(d).__name__ for d in decls] == ["SData", "SDef", "SDef"]
    box = decls[0]
    assert box == SData("Box", (("X", SUniv(0)),), (("box", (("contents", SVar(0, "X")),)),))
    assert decls[2].body == SApp(SVar(0, "idnat"), SCon(
        "S", "Nat", 0, (), (SCon("S", "Nat", 0, (), (SCon("S", "Nat", 0, (), (SCon("Zero", "Nat", 0),)),)),)
    ))


def test_data_constructors_may_mention_the_type_being_declared():
    decls = parse_program(
        """
        data Tree (X : Type) where
          | leaf
          | node (l : Tree X) (x : X) (r : Tree X)
        """
    )
    node_args = decls[0].ctors[1][1]
    assert node_args[0] == ("l", SInd("Tree", 0, (SVar(0, "X"),)))


def test_later_definitions_see_earlier_ones_by_index():
    decls = parse_program(
        """
        def a : Nat := 0
        def b : Nat := a
        def c : Nat := \\(x : Nat) . x
        def d : Nat := b
        """
    )
    assert decls[1].body == SVar(0, "a")
    assert decls[3].body == SVar(1, "b")  # c sits between d and b


def test_duplicate_definition_is_rejected():
    with pytest.raises(ParseError, match="already defined"):
        parse_program("def a : Nat := 0\ndef a : Nat := 1")


# -- cast calculus ----------------------------------------------------------


def test_cast_term_forms():
    assert parse_cast_term("<Bool <= Nat> 0") == Cast(NAT, BOOL, nat_lit(0))
    assert parse_cast_term("0 &[Nat] ?@Nat") == Comp(NAT, nat_lit(0), Unk(NAT))
    assert parse_cast_term("err @ Nat") == Err(NAT)
    assert parse_cast_term("refl<x &[Nat] y>{x, y}", free=("x", "y")) == Refl(
        Comp(NAT, Var(1, "x"), Var(0, "y")), Var(1, "x"), Var(0, "y")
    )


def test_composition_is_left_associative():
    t = parse_cast_term("0 &[Nat] 1 &[Nat] 2")
    assert t == Comp(NAT, Comp(NAT, nat_lit(0), nat_lit(1)), nat_lit(2))


def test_unknown_requires_its_type_annotation():
    with pytest.raises(ParseError):
        parse_cast_term("?")


def test_eliminator_binds_its_motive_variable():
    t = parse_cast_term("J (x . x == 0 : Nat) 0 0 refl<0>{0, 0} refl<0>{0, 0}")
    assert t == EqElim(
        Eq(NAT, Var(0, "x"), nat_lit(0)), nat_lit(0), nat_lit(0),
        Refl(nat_lit(0), nat_lit(0), nat_lit(0)),
        Refl(nat_lit(0), nat_lit(0), nat_lit(0)),
    )


def test_cast_of_cast_nests_without_parens():
    t = parse_cast_term("<Nat <= ?@Type> <?@Type <= Nat> 0")
    assert t == Cast(Unk(Univ(0)), NAT, Cast(NAT, Unk(Univ(0)), nat_lit(0)))


# -- printing ---------------------------------------------------------------


def test_printed_forms_match_the_documented_notation():
    assert print_term(Unk(NAT)) == "?@Nat"
    assert print_term(Refl(nat_lit(0), nat_lit(0), nat_lit(0))) == "refl<0>{0, 0}"
    assert print_term(Err(NAT)) == "err @ Nat"
    assert print_term(Comp(NAT, nat_lit(0), nat_lit(1))) == "0 &[Nat] 1"
    assert print_term(Cast(NAT, BOOL, nat_lit(0))) == "<Bool <= Nat> 0"
    assert print_term(nat_lit(3)) == "3"
    assert print_term(Univ(0)) == "Type"
    assert print_term(Univ(1)) == "Type 1"


def test_printer_freshens_shadowed_binders():
    t = Lam(NAT, Lam(NAT, Var(1, "x"), "x"), "x")
    assert print_term(t) == "\\(x : Nat) . \\(x' : Nat) . x"


def test_printer_names_free_variables_from_the_environment():
    t = Comp(NAT, Var(1, "a"), Var(0, "b"))
    assert print_term(t, names=("p", "q")) == "p &[Nat] q"


def test_type_swallowing_numerals_is_prevented():
    t = App(Unk(Univ(0)), nat_lit(1))
    s = print_term(t)
    assert alpha_eq(parse_cast_term(s), t)


def test_dependent_pi_named_underscore_still_prints_its_binder():
    t = Pi(NAT, Var(0, "_"), "_")
    s = print_term(t)
    assert alpha_eq(parse_cast_term(s), t)


# -- round trips ------------------------------------------------------------

FREE = ("a", "b", "c", "d")


@settings(max_examples=200, deadline=None)
@given(untyped_terms())
def test_cast_print_parse_round_trip_untyped(t):
    s = print_term(t, names=FREE)
    assert alpha_eq(parse_cast_term(s, free=FREE), t)


@settings(max_examples=200, deadline=None)
@given(typed_terms())
def test_cast_print_parse_round_trip_typed(t):
    s = print_term(t)
    assert alpha_eq(parse_cast_term(s), t)


def test_surface_round_trip_examples():
    sources = [
        "refl 0 :: 0 == 0 : Nat",
        "? @ 1",
        "\\(x : Nat) . x",
        "(x : Type) -> x -> x",
        "match[Nat] 2 (z . Nat) { | Zero => 0 | S m => rec m }",
        "J (p . 0 == 0 : Nat) 0 0 (refl 0) (refl 0)",
        "cons Nat 0 (nil Nat)",
        "2.25",
        "true == false : Bool",
    ]
    for src in sources:
        t = parse_surface_term(src)
        assert parse_surface_term(print_term(t)) == t, src
