from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from jointseries.oracle import FormPair, dims
from jointseries.ring import RatFunc, ZPoly, bag_sum, reduce_bag, series_prefix
from jointseries.springer import (
    KINDS,
    closed_form_simple,
    partial_fractions,
    poincare_series,
    shifted_genfun,
)
from published_tables import parse_poly

one = ZPoly.const(1)


def om(k):
    return one - ZPoly.monomial(k)


def rf(num: str, factors: dict[int, int]) -> RatFunc:
    den = one
    for k, m in factors.items():
        den = den * om(k) ** m
    return RatFunc(parse_poly(num), den)


def residue(pair, e, order=1) -> RatFunc:
    for term in partial_fractions(shifted_genfun(pair)):
        if term.e == e and term.order == order:
            return term.coeff
    raise KeyError(e)


PAIRS_8 = [(a, b) for a in range(1, 9) for b in range(a, 9)]
ODD_PAIRS = [(a, b) for b in range(2, 8) for a in range(1, b) if (b - a) % 2]


def test_shifted_genfun_examples():
    assert shifted_genfun((1, 3)).mult == {0: 1, 2: 2, 4: 2, 6: 1}
    assert shifted_genfun((1, 2)).mult == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}
    assert shifted_genfun((1, 1)).mult == {0: 2, 2: 2}
    assert shifted_genfun((3, 1)) == shifted_genfun((1, 3))


@pytest.mark.parametrize("pair", PAIRS_8)
def test_genfun_shape(pair):
    f = shifted_genfun(pair)
    assert sum(f.mult.values()) == pair[0] + pair[1] + 2
    has_double = any(m == 2 for m in f.mult.values())
    assert has_double == ((pair[0] - pair[1]) % 2 == 0)


def test_genfun_11_matches_direct_expansion():
    # f_{1,1}(t z, z) = 1/((1 - t z^2)(1 - t)(1 - t)(1 - t z^2)), counted weight by weight
    f = shifted_genfun((1, 1))
    for s in range(6):
        expected = {}
        for a in range(s + 1):
            # a factors of weight shifted to 2, s - a of weight 0, two variables each
            expected[2 * a] = expected.get(2 * a, 0) + (a + 1) * (s - a + 1)
        assert f.t_coefficient(s) == ZPoly.from_dict(expected)


def test_worked_example_residues():
    assert residue((1, 3), 2, 1) == rf("3z^6 + z^4 - z^2", {4: 2, 2: 3})
    assert residue((1, 3), 0, 1) == rf("1", {2: 2, 4: 2, 6: 1})
    # the order-2 coefficient at t = z^-2 carries a minus sign
    assert residue((1, 3), 2, 2) == rf("-z^2", {2: 3, 4: 1})


def test_printed_second_term_needs_the_minus_sign():
    # the printed next step, -(5z^4+4z^2+3) z^2 / ((1-z^2)^4 (1+z^2)^2), is the derivative of -z^3/(...)
    inner = rf("z^3", {2: 2, 4: 1})
    printed_next = RatFunc(
        -ZPoly.monomial(2) * parse_poly("5z^4 + 4z^2 + 3"),
        om(2) ** 4 * (one + ZPoly.monomial(2)) ** 2,
    )
    assert -inner.derivative() == printed_next


def _reconstruction_holds(pair) -> bool:
    f = shifted_genfun(pair)
    terms = partial_fractions(f)
    total_order = sum(f.mult.values())
    for s in range(total_order + 1):
        parts = []
        for term in terms:
            c = 1 if term.order == 1 else s + 1
            parts.append(term.bag.scale(c, term.e * s))
        got = reduce_bag(bag_sum(parts))
        if got != RatFunc(f.t_coefficient(s)):
            return False
    return True


@pytest.mark.parametrize("pair", [(1, 3), (2, 3), (2, 2), (3, 5)])
def test_partial_fractions_reconstruct(pair):
    assert _reconstruction_holds(pair)


def test_term_orders_match_multiplicities():
    f = shifted_genfun((2, 4))
    terms = partial_fractions(f)
    for e, m in f.exponents:
        orders = sorted(t.order for t in terms if t.e == e)
        assert orders == list(range(1, m + 1))


@pytest.mark.parametrize("pair", ODD_PAIRS)
def test_closed_form_family_a(pair):
    d1, d2 = pair
    for k in range(d1 + 1):
        assert closed_form_simple(pair, "A", k) == residue(pair, d1 + d2 - 2 * k)


@pytest.mark.parametrize("pair", ODD_PAIRS)
def test_closed_form_family_b_first_case(pair):
    d1, d2 = pair
    for k in range(d2 + 1):
        if 2 * k < d2 - d1:
            assert closed_form_simple(pair, "B", k) == residue(pair, 2 * k)


def test_closed_form_examples():
    assert closed_form_simple((1, 2), "A", 0) == residue((1, 2), 3)
    assert closed_form_simple((2, 3), "B", 0) == residue((2, 3), 0)
    with pytest.raises(ValueError):
        closed_form_simple((1, 3), "A", 0)
    with pytest.raises(ValueError):
        closed_form_simple((1, 2), "A", 5)


def test_literal_family_a_differs():
    # the upward-stepping last block vanishes or changes sign, so it cannot be the residue
    assert closed_form_simple((1, 2), "A", 0, literal=True) != residue((1, 2), 3)


def test_poincare_examples():
    assert poincare_series((1, 1), "invariants").value == RatFunc(1, om(2))
    assert poincare_series((1, 3), "invariants").value == rf("z^10 + z^6 + z^4 + 1", {4: 2, 8: 1})
    assert poincare_series((1, 1), "covariants").value == rf("1", {1: 2, 2: 1})
    with pytest.raises(ValueError):
        poincare_series((1, 1), "semi")


def test_result_fields():
    r = poincare_series((2, 3), "covariants", terms=12)
    assert r.series == tuple(series_prefix(r.value, 12))
    assert r.presentation.to_ratfunc() == r.value


@pytest.mark.parametrize("pair", [(a, b) for a in range(1, 7) for b in range(a, 7)])
def test_oracle_agreement(pair):
    for kind in KINDS:
        assert series_prefix(poincare_series(pair, kind).value, 20) == dims(pair, 20, kind)


@given(st.integers(1, 9), st.integers(1, 9))
@settings(max_examples=30, deadline=None)
def test_symmetry_and_degree_one(d1, d2):
    for kind in KINDS:
        assert poincare_series((d1, d2), kind).value == poincare_series((d2, d1), kind).value
    inv = series_prefix(poincare_series((d1, d2), "invariants").value, 25)
    cov = series_prefix(poincare_series((d1, d2), "covariants").value, 25)
    assert inv[1] == 0 and cov[1] == 2
    assert all(isinstance(c, int) and c >= 0 for c in inv + cov)
    assert all(c >= i for c, i in zip(cov, inv))


def test_form_pair_accepted():
    assert poincare_series(FormPair(2, 1)).pair == FormPair(2, 1)
