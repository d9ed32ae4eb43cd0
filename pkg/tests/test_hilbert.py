"""Hilbert series against independent oracles: monomial counts, linear algebra and resolutions."""
from itertools import combinations_with_replacement
from math import comb

import pytest
from hypothesis import given, strategies as st

from canonica import PolyRing, PrimeField, QuotientRing, build_det_ring, module_from_ideal
from canonica.builders import power_ideal
from canonica.hilbert import (HilbertSeries, hilbert_series_module, hilbert_series_via_resolution,
                              monomial_numerator)

GF = PrimeField(32003)


def _rank_mod_p(rows, p):
    """Plain Gaussian elimination over GF(p) on dense rows."""
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def _monomials(n, d):
    return sorted({tuple(sum(1 for v in c if v == i) for i in range(n))
                   for c in combinations_with_replacement(range(n), d)})


def _hilbert_by_linear_algebra(S, gens, d):
    """dim S_d - dim I_d, with I_d spanned by (monomial) * (generator) products."""
    basis = _monomials(S.nvars, d)
    pos = {e: i for i, e in enumerate(basis)}
    rows = []
    for g in gens:
        e = g.degree()
        if e > d:
            continue
        for mono in _monomials(S.nvars, d - e):
            h = S.monomial(mono) * g
            row = [0] * len(basis)
            for ex, c in h.items():
                row[pos[ex]] = c
            rows.append(row)
    return len(basis) - _rank_mod_p(rows, S.field.p)


def test_det_321_series(det321):
    H = det321.ring.hilbert_series()
    assert H.coeffs == (1, 2) and H.pole_order == 4 and H.multiplicity == 3
    assert str(H) == "(1+2t)/(1-t)^4"
    for d in range(9):
        assert H.coefficient(d) == (d + 1) * comb(d + 2, 2)


@pytest.mark.parametrize("mnr", [(3, 2, 1), (2, 2, 1), (3, 3, 1), (3, 3, 2)])
def test_hilbert_function_by_linear_algebra(mnr):
    det = build_det_ring(GF, *mnr)
    H = det.ring.hilbert_series()
    for d in range(5):
        assert H.coefficient(d) == _hilbert_by_linear_algebra(det.ambient, det.minors, d)


@pytest.mark.parametrize("c", [-2, -1, 0, 1, 2])
def test_module_series_two_routes(det321, c):
    M = module_from_ideal(power_ideal(det321, c))
    assert hilbert_series_module(M) == hilbert_series_via_resolution(M)


def test_power_series_of_free_module():
    S = PolyRing(GF, ["x", "y", "z"])
    R = QuotientRing(S, [])
    H = R.hilbert_series()
    assert H.coeffs == (1,) and H.pole_order == 3


@given(st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=4))
def test_monomial_numerator_matches_counting(gens):
    S = PolyRing(GF, ["x", "y", "z"])
    H = HilbertSeries.from_numerator(monomial_numerator(gens, 3), 3)
    for d in range(7):
        count = sum(1 for e in _monomials(3, d) if not any(all(a >= b for a, b in zip(e, g)) for g in gens))
        assert H.coefficient(d) == count
    assert S.nvars == 3


def test_series_normal_form():
    H = HilbertSeries.from_numerator({0: 1, 2: -1}, 3)
    assert H.coeffs == (1, 1) and H.pole_order == 2
    assert str(H) == "(1+t)/(1-t)^2"
