import json
import random

import pytest

from geq.elaborate import elab_synth
from geq.harness import (
    Failure,
    GenBudget,
    PropReport,
    canonicity_suite,
    conservativity_suite,
    dgg_probe,
    gen_bool_context,
    gen_surface_prec_pair,
    gen_well_typed_term,
    gradual_accepts,
    local_confluence_check,
    local_confluence_suite,
    progress_preservation_suite,
    run_lemma_suite,
    run_suite,
    static_reference_accepts,
)
from geq.precision import surface_prec
from geq.reduction import Fuel
from geq.syntax import (
    App,
    Cast,
    Comp,
    Con,
    Eq,
    Err,
    Lam,
    Match,
    Pi,
    SigTable,
    Unk,
    Var,
    BOOL,
    NAT,
    nat_lit,
)
from geq.typecheck import Context, check

SIGS = SigTable()


def f():
    return Fuel(100000)


def is_nat_value(t):
    while isinstance(t, Con) and t.name == "S":
        t = t.args[0]
    return isinstance(t, Con) and t.name == "Zero"


def nodes(t):
    yield t
    import dataclasses

    for fld in dataclasses.fields(t):
        v = getattr(t, fld.name)
        if hasattr(v, "__dataclass_fields__"):
            yield from nodes(v)
        elif isinstance(v, tuple):
            for x in v:
                if hasattr(x, "__dataclass_fields__"):
                    yield from nodes(x)


# --- budgets and reports ----------------------------------------------------------


def test_budget_rejects_empty_size():
    with pytest.raises(ValueError):
        GenBudget(max_size=0)


def test_report_counts_must_add_up():
    with pytest.raises(AssertionError):
        PropReport("x", 10, 3, (Failure("w", "d"),), 2)


def test_report_json_shape():
    r = PropReport("Precision Reflexive", 3, 2, (Failure("0 & 1", "boom"),), 0)
    blob = json.loads(json.dumps(r.to_json()))
    assert blob["lemma"] == "Precision Reflexive"
    assert blob["trials"] == 3
    assert blob["failures"][0]["witness"] == "0 & 1"


# --- term generation --------------------------------------------------------------


def test_smallest_nat_terms_are_leaves():
    seen = set()
    for s in range(30):
        t = gen_well_typed_term(Context(), NAT, GenBudget(max_size=1, seed=s))
        assert is_nat_value(t) or isinstance(t, (Unk, Err))
        seen.add("lit" if is_nat_value(t) else type(t).__name__)
    assert seen == {"lit", "Unk", "Err"}


def test_smallest_terms_use_context_variables():
    ctx = Context().extend("n", NAT)
    seen = set()
    for s in range(40):
        t = gen_well_typed_term(ctx, NAT, GenBudget(max_size=1, seed=s))
        seen.add(type(t).__name__)
        if isinstance(t, Var):
            assert t.idx == 0
    assert "Var" in seen


def test_generated_terms_always_check():
    types = (NAT, BOOL, Pi(NAT, NAT, "n"), Eq(NAT, nat_lit(1), nat_lit(1)))
    for ty in types:
        for s in range(25):
            t = gen_well_typed_term(Context(), ty, GenBudget(seed=s))
            check(Context(), t, ty, f(), SIGS)


def test_static_mode_emits_no_gradual_constructs():
    for s in range(25):
        t = gen_well_typed_term(
            Context(), NAT, GenBudget(seed=s), static_only=True)
        assert not any(isinstance(n, (Unk, Err, Cast, Comp)) for n in nodes(t))
        check(Context(), t, NAT, f(), SIGS)


def test_generation_is_deterministic_per_seed():
    b = GenBudget(seed=7)
    assert gen_well_typed_term(Context(), NAT, b) == gen_well_typed_term(
        Context(), NAT, b)
    t1 = gen_well_typed_term(Context(), BOOL, b, random.Random(3))
    t2 = gen_well_typed_term(Context(), BOOL, b, random.Random(3))
    assert t1 == t2


# --- surface pair generation ------------------------------------------------------


def test_surface_pairs_satisfy_their_contract():
    for s in range(40):
        s1, s2 = gen_surface_prec_pair(GenBudget(seed=s))
        assert surface_prec(s1, s2)
        elab_synth(Context(), s1, f(), SIGS)
        elab_synth(Context(), s2, f(), SIGS)


def test_surface_pairs_deterministic():
    assert gen_surface_prec_pair(GenBudget(seed=9)) == gen_surface_prec_pair(
        GenBudget(seed=9))


# --- boolean observation contexts -------------------------------------------------


def test_bool_contexts_are_observers():
    types = (BOOL, NAT, Pi(NAT, NAT, "n"), Eq(NAT, nat_lit(0), nat_lit(0)))
    for ty in types:
        for s in range(12):
            c = gen_bool_context(ty, GenBudget(seed=s), random.Random(s), SIGS)
            check(Context(), c, Pi(ty, BOOL, "v"), f(), SIGS)


def test_bool_context_repertoire():
    found_id = found_is_zero = found_apply = False
    for s in range(40):
        cb = gen_bool_context(BOOL, GenBudget(seed=s), random.Random(s), SIGS)
        if isinstance(cb, Lam) and cb.body == Var(0, "v"):
            found_id = True
        cn = gen_bool_context(NAT, GenBudget(seed=s), random.Random(s), SIGS)
        if isinstance(cn, Lam) and isinstance(cn.body, Match):
            found_is_zero = True
        cf = gen_bool_context(
            Pi(NAT, NAT, "n"), GenBudget(seed=s), random.Random(s), SIGS)
        if (isinstance(cf, Lam) and isinstance(cf.body, Match)
                and isinstance(cf.body.scrut, App)):
            found_apply = True
    assert found_id and found_is_zero and found_apply


# --- property suites --------------------------------------------------------------


def test_confluence_of_nested_redexes():
    t = App(Lam(NAT, Var(0, "x"), "x"),
            App(Lam(NAT, Var(0, "y"), "y"), nat_lit(0)))
    assert local_confluence_check(t, 1000, SIGS) == "joined"


def test_confluence_of_composition_against_inner_redex():
    t = Comp(NAT, Unk(NAT), App(Lam(NAT, Var(0, "x"), "x"), nat_lit(0)))
    assert local_confluence_check(t, 1000, SIGS) == "joined"


def test_lemma_suites_run_clean_at_small_sizes():
    for lemma in (1, 4, 7, 12):
        r = run_lemma_suite(lemma, GenBudget(seed=0), trials=60)
        assert r.trials == 60
        assert not r.failures


def test_lemma_ids_are_bounded():
    with pytest.raises(KeyError):
        run_lemma_suite(0, GenBudget(seed=0), trials=1)
    with pytest.raises(KeyError):
        run_lemma_suite(13, GenBudget(seed=0), trials=1)


def test_run_suite_dispatch():
    reports = run_suite("lemma3", GenBudget(seed=0), trials=30)
    assert len(reports) == 1
    assert reports[0].lemma == "Composition Confluence"
    with pytest.raises(KeyError):
        run_suite("bogus", GenBudget(seed=0))


def test_confluence_suite_never_fails():
    r = local_confluence_suite(GenBudget(seed=2), trials=60)
    assert not r.failures


def test_progress_preservation_small_sweep():
    r = progress_preservation_suite(GenBudget(seed=3), trials=40, steps=60)
    assert not r.failures
    assert r.inconclusive == 0


def test_conservativity_corpus_agrees_everywhere():
    r = conservativity_suite()
    assert r.trials == 50
    assert not r.failures
    assert r.inconclusive == 0


def test_reference_checker_spot_verdicts():
    good = "def idnat : Nat -> Nat := \\(x : Nat) . x"
    bad = "def broken : Nat := true"
    assert static_reference_accepts(good)
    assert gradual_accepts(good)
    assert not static_reference_accepts(bad)
    assert not gradual_accepts(bad)


def test_dgg_probe_small_sweep():
    r = dgg_probe(GenBudget(seed=0), pairs=25, contexts=5)
    assert not r.failures


def test_canonicity_small_sweep():
    r = canonicity_suite(GenBudget(seed=5), trials=60)
    assert not r.failures
