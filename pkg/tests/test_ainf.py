"""Tests for the homotopy-unital example pack: the cooperad C, its curved
structure, and the closed-form differential of its cobar construction."""

from hypothesis import given, settings
from hypothesis import strategies as st

from operad_calc.ainf import (
    F1,
    BGen,
    CGen,
    ainfhu_diff,
    build_C,
    build_ainfhu,
    c_comult,
    c_generators,
    comult_full,
    verify_iso,
)
from operad_calc.cobar_bar import cobar
from operad_calc.cooperads import check_cooperad_identities
from operad_calc.curved import verify_curved_cooperad, verify_curved_operad
from operad_calc.graded import Element, zdeg
from operad_calc.trees import corolla, tee


def term_labels(elt):
    return {tuple(g.label for g in w): c for w, c in elt.terms.items()}


# ---------------------------------------------------------------------------
# generator bookkeeping
# ---------------------------------------------------------------------------


def test_generator_degrees():
    f = CGen((0, 1, 0))
    assert f.arity == 1 and f.t == 2 and f.zdeg == -4 and f.wdeg == 4
    b = BGen((0, 1, 0))
    assert b.arity == 1 and b.zdeg == -3 and b.wdeg == 4
    assert F1.zdeg == 0 and F1.arity == 1
    assert BGen((0, 0)).zdeg == -1 and BGen((0, 0)).arity == 0


def test_generator_enumeration():
    # [DERIVED] arity-n generators with t blocks-1 come in C(n+t, t) shapes
    from math import comb

    for n in range(5):
        for t in range(5):
            if n + t == 0:
                continue
            got = [g for g in c_generators(n, t) if g.t == t]
            assert len(got) == comb(n + t, t)
            assert len(set(got)) == len(got)


# ---------------------------------------------------------------------------
# the comultiplication
# ---------------------------------------------------------------------------


def test_comult_counit_generator():
    assert term_labels(comult_full(F1)) == {("f_{1}", "f_{1}"): 1}


def test_comult_nullary_curvature_witness():
    # [PAPER] the degree -2 nullary generator splits into itself against
    # the counit plus a lone outer copy
    got = term_labels(comult_full(CGen((0, 0))))
    assert got == {("f_{0;0}", "f_{1}"): 1, ("f_{0;0}",): 1}


def test_comult_f010_has_nine_terms_all_plus_one():
    # [PAPER] the fully worked arity-one, t = 2 expansion
    got = term_labels(comult_full(CGen((0, 1, 0))))
    assert got == {
        ("f_{0;1;0}", "f_{1}"): 1,
        ("f_{1}", "f_{0;1;0}"): 1,
        ("f_{0;1}", "f_{1;0}"): 1,
        ("f_{1;0}", "f_{0;1}"): 1,
        ("f_{0;0}", "f_{1;0}", "f_{2}"): 1,
        ("f_{0;1}", "f_{0;0}", "f_{2}"): 1,
        ("f_{0;0}", "f_{1}", "f_{2;0}"): 1,
        ("f_{1}", "f_{0;0}", "f_{0;2}"): 1,
        ("f_{0;0}", "f_{1}", "f_{0;0}", "f_{3}"): 1,
    }


def test_comult_f11_by_hand():
    # [DERIVED] five terms: trivial splits, the two two-slot cuts, and the
    # absorb/pass pair for the isolated middle j
    got = term_labels(comult_full(CGen((1, 1))))
    assert got == {
        ("f_{1;1}", "f_{1}"): 1,
        ("f_{1}", "f_{1}", "f_{1;1}"): 1,
        ("f_{1}", "f_{0;1}", "f_{2}"): 1,
        ("f_{1;0}", "f_{1}", "f_{2}"): 1,
        ("f_{1}", "f_{0;0}", "f_{1}", "f_{3}"): 1,
    }


def test_c_comult_shape_filter():
    full = comult_full(CGen((0, 1, 0)))
    filtered = c_comult(CGen((0, 1, 0)), shape=(2, (0, 1)))
    assert term_labels(filtered) == {
        ("f_{0;0}", "f_{1;0}", "f_{2}"): 1,
        ("f_{0;0}", "f_{1}", "f_{2;0}"): 1,
    }
    total = Element()
    for k in range(1, 4):
        for w, c in full.terms.items():
            if len(w) - 1 == k:
                shape = (k, tuple(g.arity for g in w[:-1]))
                sub = c_comult(CGen((0, 1, 0)), shape=shape)
                assert w in sub.terms
    assert c_comult(CGen((2,)), shape=(2, (1, 1))) == Element(
        {(F1, F1, CGen((2,))): 1}
    )


@st.composite
def small_blocks(draw):
    t = draw(st.integers(min_value=0, max_value=3))
    blocks = tuple(
        draw(st.integers(min_value=0, max_value=3)) for _ in range(t + 1)
    )
    if sum(blocks) + t == 0:
        blocks = (1,)
    return blocks


@given(small_blocks())
@settings(max_examples=40, deadline=None)
def test_comult_term_bookkeeping(blocks):
    # coefficients are all +1 and arity/degree are additive in every term
    x = CGen(blocks)
    for w, c in comult_full(x).terms.items():
        assert c == 1
        inner, outer = w[:-1], w[-1]
        assert outer.arity == len(inner)
        assert sum(g.arity for g in inner) == x.arity
        assert sum(zdeg(g) for g in w) == x.zdeg


@given(small_blocks())
@settings(max_examples=25, deadline=None)
def test_corolla_component_is_identity(blocks):
    C = build_C(max_nt=8)
    x = CGen(blocks)
    xe = Element.from_letter(x)
    got = C.delta(xe, corolla(x.arity))
    assert got == Element({(x,): 1})


def test_tee_components_match_full_comult():
    # the two-factor tree components re-slice the full expansion
    C = build_C(max_nt=6)
    x = CGen((0, 1, 0))
    xe = Element.from_letter(x)
    got = {}
    for xs in range(2):
        for z in range(2 - xs):
            t = tee(xs, 1 - xs - z, z)
            for (a, b), c in C.delta(xe, t).terms.items():
                key = (tuple(F1 for _ in range(xs)) + (a,)
                       + tuple(F1 for _ in range(z)) + (b,))
                got[key] = got.get(key, 0) + c
    want = {
        w: c
        for w, c in comult_full(x).terms.items()
        if sum(1 for g in w[:-1] if g != F1) <= 1
    }
    assert got == want


# ---------------------------------------------------------------------------
# the curved cooperad and its verification
# ---------------------------------------------------------------------------


def test_build_C_passes_curved_verifier():
    C = build_C(max_nt=5)
    assert verify_curved_cooperad(C, bound=5, max_iv=5) == []


def test_coassociativity_and_counit():
    C = build_C(max_nt=5)
    assert check_cooperad_identities(C, bound=4, max_iv=2) == []


def test_delta0_values():
    C = build_C(max_nt=4)
    assert C.delta0(Element.from_letter(CGen((0, 1)))) == -1
    assert C.delta0(Element.from_letter(CGen((1, 0)))) == 1
    assert C.delta0(Element.from_letter(CGen((0, 0)))) == 0
    assert C.delta0(Element.from_letter(F1)) == 0
    assert C.counit(C.w) == 1


# ---------------------------------------------------------------------------
# the cobar construction and the closed-form differential
# ---------------------------------------------------------------------------


def test_cobar_C_is_dg():
    C = build_C(max_nt=3)
    result = cobar(C, max_arity=3, gen_max_iv=3)
    assert result.m0.is_zero()
    assert result.operad.tag == "ucdgOp"
    assert verify_curved_operad(result.operad, bound=3, max_iv=1) == []
    assert verify_curved_operad(
        result.operad, bound=2, max_iv=2, basis_cap=5
    ) == []


def test_closed_form_small_values():
    free = build_ainfhu(max_nt=4)
    i = BGen((0, 0))
    # [PAPER] the nullary generator and the binary product are cycles
    assert ainfhu_diff(i, free).is_zero()
    assert ainfhu_diff(BGen((2,)), free).is_zero()
    # [PAPER] the two arity-one, t = 1 generators kill the unit defect of i
    ie = free.gen_element(i)
    b2 = free.gen_element(BGen((2,)))
    assert ainfhu_diff(BGen((0, 1)), free) == (
        -1 * free.unit() - free.compose(ie, 0, 1, b2)
    )
    assert ainfhu_diff(BGen((1, 0)), free) == (
        free.unit() - free.compose(ie, 1, 0, b2)
    )
    # [DERIVED] the arity-three product differential is the associativity
    # defect of the binary one
    b3 = free.gen_element(BGen((3,)))
    assert ainfhu_diff(BGen((3,)), free) == (
        -1 * free.compose(b2, 0, 1, b2) - free.compose(b2, 1, 0, b2)
    )


def test_closed_form_squares_to_zero():
    free = build_ainfhu(max_nt=4)
    d = free.extend_derivation(lambda g: ainfhu_diff(g, free), 1)
    for gens in free.gens_by_arity.values():
        for g in gens:
            assert d(ainfhu_diff(g, free)).is_zero(), g


def test_verify_iso_small_bound():
    cert = verify_iso(4)
    assert cert["ok"]
    assert cert["mismatches"] == 0
    assert cert["curvature_zero"]
    assert cert["compared"] == 29
    labels = [r["generator"] for r in cert["records"]]
    assert "b_{0;0}" in labels and "b_{2}" in labels
    for r in cert["records"]:
        if r["generator"] == "b_{0;0}":
            assert r["cobar"] == "0" and r["closed_form"] == "0"
