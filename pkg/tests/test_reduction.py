import pytest

from hypothesis import given, settings

from geq.syntax import (
    App,
    Cast,
    Comp,
    Con,
    Eq,
    Err,
    Ind,
    Lam,
    Match,
    Pi,
    Refl,
    SigTable,
    Univ,
    Unk,
    Var,
    BOOL,
    EQ_HEAD,
    FALSE,
    NAT,
    PI_HEAD,
    TRUE,
    germ,
    ind_head,
    nat_lit,
    nat_of,
    shift,
    well_scoped,
)
from geq.reduction import (
    AlreadyNeutral,
    AlreadyValue,
    Fuel,
    OutOfFuelError,
    Stepped,
    Stuck,
    StuckError,
    contains_error,
    is_neutral,
    is_value,
    iter_compose,
    normalize,
    reduce_step,
    whnf,
)

from strategies import typed_terms, untyped_terms

SIGS = SigTable()


def norm(t, steps=10000):
    return normalize(t, Fuel(steps), SIGS)


def succ(t):
    return Con("S", "Nat", 0, (), (t,))


def add(m, n):
    # match m with Zero -> n | S p -> S (rec p)
    return Match("Nat", m, shift(NAT, 1), (shift(n, 1), succ(App(Var(1, "rec"), Var(0, "p")))), (0, 1))


NAT_TO_NAT = Pi(NAT, shift(NAT, 1), "x")


# --- composition at data -----------------------------------------------------


def test_compose_four_with_three():
    got = norm(Comp(NAT, nat_lit(4), nat_lit(3)))
    assert got == succ(succ(succ(Err(NAT))))


def test_compose_one_with_two():
    assert norm(Comp(NAT, nat_lit(1), nat_lit(2))) == succ(Err(NAT))


def test_compose_equal_literals_is_identity():
    assert norm(Comp(NAT, nat_lit(3), nat_lit(3))) == nat_lit(3)


def test_compose_unknown_yields_other_side():
    assert norm(Comp(NAT, Unk(NAT), nat_lit(3))) == nat_lit(3)
    assert norm(Comp(NAT, nat_lit(3), Unk(NAT))) == nat_lit(3)


def test_compose_error_absorbs():
    assert norm(Comp(NAT, Err(NAT), nat_lit(3))) == Err(NAT)
    assert norm(Comp(NAT, nat_lit(3), Err(NAT))) == Err(NAT)
    assert norm(Comp(NAT, Err(NAT), Unk(NAT))) == Err(NAT)


def test_compose_both_unknown_prefers_left_rule():
    out = reduce_step(Comp(NAT, Unk(NAT), Unk(NAT)), SIGS)
    assert isinstance(out, Stepped) and out.rule == "comp-unk-l"


def test_compose_booleans_clash():
    assert norm(Comp(BOOL, TRUE, FALSE)) == Err(BOOL)


def test_compose_functions_pointwise():
    id_nat = Lam(NAT, Var(0, "x"), "x")
    add0 = Lam(NAT, add(Var(0, "x"), nat_lit(0)), "x")
    got = norm(Comp(NAT_TO_NAT, id_nat, add0))
    assert got == Lam(NAT, Comp(NAT, Var(0, "x"), add(Var(0, "x"), nat_lit(0))), "x")
    assert is_value(got, SIGS)


def test_compose_universe_operands():
    assert norm(Comp(Univ(0), NAT, NAT)) == NAT
    assert norm(Comp(Univ(0), NAT, BOOL)) == Err(Univ(0))
    assert norm(Comp(Univ(1), Univ(0), Univ(0))) == Univ(0)


def test_compose_pi_types_merges_ends():
    got = norm(Comp(Univ(0), NAT_TO_NAT, NAT_TO_NAT))
    assert got == NAT_TO_NAT


def test_compose_eq_types():
    got = norm(Comp(Univ(0), Eq(NAT, nat_lit(0), nat_lit(1)), Eq(NAT, nat_lit(0), nat_lit(1))))
    assert got == Eq(NAT, nat_lit(0), nat_lit(1))


def test_compose_refl_witnesses():
    ty = Eq(NAT, nat_lit(2), nat_lit(2))
    got = norm(Comp(ty, Refl(nat_lit(2), nat_lit(2), nat_lit(2)), Refl(Unk(NAT), nat_lit(2), nat_lit(2))))
    assert got == Refl(nat_lit(2), nat_lit(2), nat_lit(2))


def test_compose_list_params():
    lst = lambda ty: Ind("List", 0, (ty,))
    assert norm(Comp(Univ(0), lst(NAT), lst(NAT))) == lst(NAT)
    assert norm(Comp(Univ(0), lst(NAT), lst(BOOL))) == lst(Err(Univ(0)))


def test_compose_germ_tagged_same_head():
    g = germ(ind_head("Nat", 0), 0, SIGS)
    u = Unk(Univ(0))
    lhs = Cast(g, u, nat_lit(2))
    rhs = Cast(g, u, nat_lit(2))
    got = norm(Comp(u, lhs, rhs))
    assert got == Cast(NAT, u, nat_lit(2))


def test_compose_germ_tagged_head_clash():
    u = Unk(Univ(0))
    lhs = Cast(germ(ind_head("Nat", 0), 0, SIGS), u, nat_lit(2))
    rhs = Cast(germ(PI_HEAD, 0, SIGS), u, Lam(Unk(u), Unk(u), "x"))
    assert norm(Comp(u, lhs, rhs)) == Err(u)


def test_iter_compose_entry_casting():
    vec = SIGS["Vec"]
    from geq.syntax import ctor_args_at

    tele = ctor_args_at(vec, "VCons", 0, [BOOL, nat_lit(1)])
    a = [nat_lit(0), TRUE, Con("VNil", "Vec", 0, (BOOL, nat_lit(0)), (Refl(nat_lit(0), nat_lit(0), nat_lit(0)),)), Refl(nat_lit(1), nat_lit(1), nat_lit(1))]
    out = iter_compose(tele, a, a)
    assert len(out) == 4
    assert out[0] == Comp(NAT, nat_lit(0), nat_lit(0))
    # later entries are cast to the composed-prefix instantiation first
    assert isinstance(out[2], Comp) and isinstance(out[2].lhs, Cast)
    with pytest.raises(IndexError):
        iter_compose(tele, a[:3], a)


# --- match and beta ----------------------------------------------------------


def test_beta():
    t = App(Lam(NAT, Var(0, "x"), "x"), nat_lit(5))
    out = reduce_step(t, SIGS)
    assert out == Stepped(nat_lit(5), "beta")


def test_match_recursion_addition():
    assert nat_of(norm(add(nat_lit(2), nat_lit(2)))) == 4


def test_match_unknown_scrutinee():
    t = Match("Nat", Unk(NAT), shift(BOOL, 1), (TRUE, FALSE), (0, 1))
    assert norm(t) == Unk(BOOL)


def test_match_error_scrutinee():
    t = Match("Nat", Err(NAT), shift(BOOL, 1), (TRUE, FALSE), (0, 1))
    assert norm(t) == Err(BOOL)


def test_match_dependent_motive_substitutes_scrutinee():
    # motive: match z with Zero -> Bool | S _ -> Nat.  The unknown scrutinee
    # lands in the motive, which then reduces to the unknown type itself.
    motive = Match("Nat", Var(0, "z"), shift(Univ(0), 1), (shift(BOOL, 1), shift(NAT, 2)), (0, 1))
    t = Match("Nat", Unk(NAT), motive, (TRUE, Var(0, "p")), (0, 1))
    assert norm(t) == Unk(Unk(Univ(0)))


# --- unknown and error at types ----------------------------------------------


def test_unknown_at_function_type_expands():
    assert norm(Unk(NAT_TO_NAT)) == Lam(NAT, Unk(NAT), "x")
    assert norm(Err(NAT_TO_NAT)) == Lam(NAT, Err(NAT), "x")


def test_unknown_at_equality_becomes_witnessed_proof():
    t = Unk(Eq(NAT, nat_lit(0), nat_lit(1)))
    assert norm(t) == Refl(Err(NAT), nat_lit(0), nat_lit(1))
    t = Unk(Eq(NAT, nat_lit(2), nat_lit(2)))
    assert norm(t) == Refl(nat_lit(2), nat_lit(2), nat_lit(2))


def test_error_at_equality_keeps_error_witness():
    t = Err(Eq(NAT, nat_lit(0), nat_lit(0)))
    assert norm(t) == Refl(Err(NAT), nat_lit(0), nat_lit(0))


def test_unknown_reduces_inside_its_type():
    t = Unk(App(Lam(Univ(0), Var(0, "X"), "X"), NAT))
    assert norm(t) == Unk(NAT)


# --- casts -------------------------------------------------------------------


def test_cast_same_universe_is_identity():
    assert norm(Cast(Univ(0), Univ(0), NAT)) == NAT


def test_cast_mismatched_heads_error():
    assert norm(Cast(NAT, BOOL, nat_lit(3))) == Err(BOOL)
    assert norm(Cast(Univ(0), Univ(1), NAT)) == Err(Univ(1))


def test_cast_function_wraps_argument_and_result():
    idf = Lam(NAT, Var(0, "x"), "x")
    t = App(Cast(NAT_TO_NAT, NAT_TO_NAT, idf), nat_lit(5))
    assert nat_of(norm(t)) == 5


def test_cast_constructor_recasts_arguments():
    lst = lambda ty: Ind("List", 0, (ty,))
    xs = Con("cons", "List", 0, (NAT,), (nat_lit(1), Con("nil", "List", 0, (NAT,), ())))
    got = norm(Cast(lst(NAT), lst(BOOL), xs))
    assert got == Con("cons", "List", 0, (BOOL,), (Err(BOOL), Con("nil", "List", 0, (BOOL,), ())))


def test_cast_inductive_unknown_and_error_subjects():
    assert norm(Cast(NAT, NAT, Unk(NAT))) == Unk(NAT)
    assert norm(Cast(NAT, NAT, Err(NAT))) == Err(NAT)


def test_cast_source_error_type():
    assert norm(Cast(Err(Univ(0)), NAT, nat_lit(0))) == Err(NAT)


def test_cast_target_error_type():
    got = norm(Cast(NAT, Err(Univ(0)), nat_lit(0)))
    assert got == Err(Err(Univ(0)))


def test_cast_round_trip_through_unknown_type():
    u = Unk(Univ(0))
    t = Cast(u, NAT, Cast(NAT, u, nat_lit(3)))
    assert norm(t) == nat_lit(3)


def test_cast_round_trip_with_head_switch_errors():
    u = Unk(Univ(0))
    t = Cast(u, BOOL, Cast(NAT, u, nat_lit(3)))
    assert norm(t) == Err(BOOL)


def test_cast_unknown_source_unknown_subject():
    u = Unk(Univ(0))
    assert norm(Cast(u, NAT, Unk(u))) == Unk(NAT)
    assert norm(Cast(u, NAT, Err(u))) == Err(NAT)


def test_cast_function_into_unknown_type_decomposes():
    u = Unk(Univ(0))
    idf = Lam(NAT, Var(0, "x"), "x")
    got = norm(Cast(NAT_TO_NAT, u, idf))
    assert isinstance(got, Cast) and got.src == germ(PI_HEAD, 0, SIGS) and got.tgt == u
    assert is_value(got, SIGS)
    back = norm(Cast(u, NAT_TO_NAT, got))
    assert norm(App(back, nat_lit(2))) == nat_lit(2)


def test_cast_universe_into_higher_unknown_type():
    # Type_0 fits inside ?_{Type_1} as is
    t = Cast(Univ(1), Unk(Univ(1)), NAT)
    assert reduce_step(t, SIGS) == Stepped(Err(Unk(Univ(1))), "cast-size-err")
    assert is_value(Cast(Univ(0), Unk(Univ(1)), NAT), SIGS)


def test_cast_equality_proof():
    e0 = Eq(NAT, nat_lit(2), nat_lit(2))
    e1 = Eq(NAT, nat_lit(2), nat_lit(2))
    got = norm(Cast(e0, e1, Refl(nat_lit(2), nat_lit(2), nat_lit(2))))
    assert got == Refl(nat_lit(2), nat_lit(2), nat_lit(2))


def test_cast_equality_proof_endpoint_clash():
    e0 = Eq(NAT, nat_lit(1), nat_lit(1))
    e1 = Eq(NAT, nat_lit(1), nat_lit(2))
    got = norm(Cast(e0, e1, Refl(nat_lit(1), nat_lit(1), nat_lit(1))))
    assert got == Refl(succ(Err(NAT)), nat_lit(1), nat_lit(2))


def test_cast_equality_through_unknown_type():
    u = Unk(Univ(0))
    e = Eq(NAT, nat_lit(0), nat_lit(0))
    tagged = norm(Cast(e, u, Refl(nat_lit(0), nat_lit(0), nat_lit(0))))
    assert isinstance(tagged, Cast) and tagged.src == germ(EQ_HEAD, 0, SIGS)
    assert is_value(tagged, SIGS)
    back = norm(Cast(u, e, tagged))
    assert isinstance(back, Refl)


# --- equality eliminator ------------------------------------------------------


def test_eq_elim_on_refl_transports():
    proof = Refl(nat_lit(0), nat_lit(0), nat_lit(0))
    t = EqElim_motive_nat(nat_lit(0), nat_lit(0), nat_lit(7), proof)
    assert nat_of(norm(t)) == 7


def EqElim_motive_nat(lhs, rhs, base, proof):
    from geq.syntax import EqElim

    return EqElim(shift(NAT, 1), lhs, rhs, base, proof)


def test_eq_elim_constant_motive_ignores_witness():
    # both transport casts are identities, so the error witness is dropped
    proof = Refl(Err(NAT), nat_lit(0), nat_lit(1))
    t = EqElim_motive_nat(nat_lit(0), nat_lit(1), nat_lit(7), proof)
    assert nat_of(norm(t)) == 7


def test_eq_elim_error_witness_hits_dependent_motive():
    # motive: match x with Zero -> Bool | S _ -> Nat; the error witness makes
    # the intermediate motive instance the error type, which poisons the casts
    from geq.syntax import EqElim

    motive = Match("Nat", Var(0, "x"), shift(Univ(0), 1), (shift(BOOL, 1), shift(NAT, 2)), (0, 1))
    proof = Refl(Err(NAT), nat_lit(0), nat_lit(0))
    t = EqElim(motive, nat_lit(0), nat_lit(0), TRUE, proof)
    assert norm(t) == Err(BOOL)


def test_eq_elim_dependent_motive_casts_through_witness():
    # motive picks Bool at Zero and Nat at S _: transport true along 0 == ?
    motive = Match("Nat", Var(0, "x"), shift(Univ(0), 1), (shift(BOOL, 1), shift(NAT, 2)), (0, 1))
    from geq.syntax import EqElim

    proof = Refl(nat_lit(0), nat_lit(0), nat_lit(0))
    t = EqElim(motive, nat_lit(0), nat_lit(0), TRUE, proof)
    assert norm(t) == TRUE


# --- values, neutrals, stuck, fuel -------------------------------------------


def test_neutral_forms():
    assert is_neutral(Var(0), SIGS)
    assert is_neutral(App(Var(0), nat_lit(1)), SIGS)
    assert is_neutral(Comp(NAT, Var(0, "x"), nat_lit(3)), SIGS)
    assert is_neutral(Unk(Var(0)), SIGS)
    assert is_neutral(Cast(Var(0), NAT, nat_lit(0)), SIGS)
    assert is_neutral(Cast(NAT, Var(0), nat_lit(0)), SIGS)
    assert not is_neutral(Comp(NAT, Unk(NAT), Var(0)), SIGS)
    assert not is_neutral(nat_lit(3), SIGS)


def test_neutral_comp_blocker_reported():
    out = reduce_step(Comp(NAT, Var(2, "y"), nat_lit(3)), SIGS)
    assert out == AlreadyNeutral(Var(2, "y"))


def test_values():
    assert is_value(Lam(NAT, Var(0), "x"), SIGS)
    assert is_value(Unk(NAT), SIGS)
    assert is_value(Unk(Unk(Univ(0))), SIGS)
    assert not is_value(Unk(NAT_TO_NAT), SIGS)
    assert not is_value(App(Lam(NAT, Var(0), "x"), nat_lit(0)), SIGS)
    assert is_value(Cast(germ(PI_HEAD, 0, SIGS), Unk(Univ(0)), Lam(Unk(Univ(0)), Var(0), "x")), SIGS)


def test_stuck_on_ill_typed():
    out = reduce_step(App(nat_lit(3), nat_lit(1)), SIGS)
    assert isinstance(out, Stuck)
    with pytest.raises(StuckError):
        whnf(App(nat_lit(3), nat_lit(1)), Fuel(10), SIGS)


def test_fuel_runs_out_on_divergence():
    # (\x. x x) (\x. x x) at a gradual function type
    u = Unk(Univ(0))
    pi_u = Pi(u, shift(u, 1), "x")
    omega = Lam(u, App(Cast(u, pi_u, Var(0, "x")), Var(0, "x")), "x")
    loop = App(omega, Cast(pi_u, u, omega))
    with pytest.raises(OutOfFuelError):
        normalize(loop, Fuel(5000), SIGS)


def test_whnf_stops_at_weak_head():
    t = Con("S", "Nat", 0, (), (App(Lam(NAT, Var(0), "x"), nat_lit(0)),))
    assert whnf(t, Fuel(100), SIGS) == t
    assert nat_of(norm(t)) == 1


def test_error_path_reporting():
    t = succ(succ(Err(NAT)))
    assert contains_error(t) == ["S arg 0", "S arg 0"]
    assert contains_error(nat_lit(2)) is None


# --- coherence properties -----------------------------------------------------


@settings(max_examples=200)
@given(typed_terms())
def test_step_outcome_matches_classification(t):
    out = reduce_step(t, SIGS)
    if isinstance(out, (AlreadyValue, AlreadyNeutral)):
        assert is_value(t, SIGS)
    elif isinstance(out, Stepped):
        assert not is_value(t, SIGS)
        assert well_scoped(out.term)


@settings(max_examples=200)
@given(typed_terms())
def test_well_typed_closed_terms_never_get_stuck(t):
    fuel = Fuel(4000)
    v = normalize(t, fuel, SIGS)
    assert is_value(v, SIGS)
    assert not is_neutral(v, SIGS)


@settings(max_examples=100)
@given(untyped_terms())
def test_stepping_preserves_scope(t):
    if not well_scoped(t):
        return
    out = reduce_step(t, SIGS)
    if isinstance(out, Stepped):
        assert well_scoped(out.term)


@settings(max_examples=100)
@given(typed_terms())
def test_normalize_is_idempotent(t):
    v = normalize(t, Fuel(4000), SIGS)
    assert normalize(v, Fuel(4000), SIGS) == v
