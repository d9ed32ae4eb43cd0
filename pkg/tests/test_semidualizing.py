"""Semidualizing and dualizing checks, the reflexivity order and base change."""
import pytest

from canonica import Ideal, PrimeField, build_chain, is_dualizing, is_semidualizing, module_from_ideal, quotient_module
from canonica import semidualizing as sd
from canonica.builders import ChainSpec, canonical_module_det, parse_chain_steps, power_ideal
from canonica.classification import chain_candidate
from canonica.hilbert import multiplicity
from canonica.homalg import depth_graded, hilbert_series, rank
from canonica.modules import hom_module, minimal_presentation
from canonica.semidualizing import (FALSE, HOMOTHETY_FAILS, NOT_SEMIDUALIZING, SEMIDUALIZING_UP_TO_BOUND, TRUE,
                                    reflexive_order_le, ring_depth, ring_module, totally_reflexive_wrt)

GF = PrimeField(32003)


def _sd_modules(det):
    return [module_from_ideal(power_ideal(det, c)) for c in det.predicted_classes()]


def test_semidualizing_verdicts(det321):
    verdicts = {c: is_semidualizing(module_from_ideal(power_ideal(det321, c)), 5) for c in (-1, 0, 1, 2)}
    assert verdicts[0].verdict == verdicts[1].verdict == SEMIDUALIZING_UP_TO_BOUND
    for c in (-1, 2):
        rep = verdicts[c]
        assert rep.verdict == NOT_SEMIDUALIZING
        assert rep.witness == {"ext_index": rep.first_nonvanishing_ext}
    assert verdicts[2].first_nonvanishing_ext == 3


def test_torsion_module_fails_homothety(det321):
    rep = is_semidualizing(quotient_module(det321.p_ideal), 3)
    assert rep.verdict == HOMOTHETY_FAILS
    assert rep.witness is not None


@pytest.mark.parametrize("fixture", ["det321", "det221", "det321_qq"])
def test_semidualizing_modules_are_rank_one_and_reflexive(fixture, request):
    det = request.getfixturevalue(fixture)
    R = det.ring
    Rm = ring_module(R)
    eR = multiplicity(Rm)
    for C in _sd_modules(det):
        assert is_semidualizing(C).verdict == SEMIDUALIZING_UP_TO_BOUND
        assert rank(C) == 1
        # biduality against R
        CC = hom_module(hom_module(C, Rm), Rm)
        Cm = minimal_presentation(C)
        assert CC.ngens == Cm.ngens and hilbert_series(CC) == hilbert_series(Cm)
        assert totally_reflexive_wrt(Rm, C)
        assert reflexive_order_le(C, Rm) == TRUE
        assert depth_graded(C) == ring_depth(R)
        assert multiplicity(C) == eR


def test_order_is_antisymmetric_on_distinct_classes(det321):
    R, W = ring_module(det321.ring), module_from_ideal(canonical_module_det(det321))
    assert reflexive_order_le(W, R) == TRUE
    assert reflexive_order_le(R, W) == FALSE


def test_dualizing_bass_pattern(det321):
    W = module_from_ideal(canonical_module_det(det321))
    rep = is_dualizing(W, 4)
    assert rep.verdict == sd.DUALIZING_UP_TO_BOUND
    assert rep.bass == [0, 0, 0, 0, 1]
    assert is_dualizing(ring_module(det321.ring), 5).verdict == sd.NOT_DUALIZING


def test_gorenstein_ring_is_dualizing(det221):
    rep = is_dualizing(ring_module(det221.ring))
    assert rep.verdict == sd.DUALIZING_UP_TO_BOUND
    assert rep.depth == 3


@pytest.mark.parametrize("c", [0, 1, 2, -1])
def test_reduction_route_gives_same_verdicts(det321, c, monkeypatch):
    """Forcing the Artinian reduction on every index changes nothing but the bookkeeping."""
    C = module_from_ideal(power_ideal(det321, c))
    direct = is_semidualizing(C, 5)
    monkeypatch.setattr(sd, "DIRECT_EXT_LIMIT", 0)
    C2 = module_from_ideal(power_ideal(det321, c))
    reduced = is_semidualizing(C2, 5)
    assert (direct.verdict, direct.first_nonvanishing_ext) == (reduced.verdict, reduced.first_nonvanishing_ext)
    if reduced.verdict == SEMIDUALIZING_UP_TO_BOUND:
        # R is free, so its Ext never needs the reduction
        assert reduced.reduced_indices == ([] if c == 0 else [1, 2, 3, 4, 5])
    assert direct.reduced_indices == []


@pytest.mark.parametrize("steps,count", [(["triv 2"], 2), (["triv 1"], 1), (["powq (y1,y2) 2"], 2)])
def test_chain_candidates_are_semidualizing(steps, count):
    chain = build_chain(ChainSpec(GF, parse_chain_steps(steps)))
    from itertools import product
    mods = [chain_candidate(chain, ch) for ch in product((0, 1), repeat=chain.s)]
    assert len(mods) == count
    R = chain.ring
    eR = multiplicity(ring_module(R))
    for C in mods:
        assert is_semidualizing(C).verdict == SEMIDUALIZING_UP_TO_BOUND
        assert multiplicity(C) == eR
        assert reflexive_order_le(C, ring_module(R)) == TRUE


def test_base_change_along_regular_element():
    from canonica.builders import quotient_by_regular_sequence
    from canonica.polynomial import PolyRing
    from canonica.quotient import QuotientRing
    S = PolyRing(GF, ["a", "b"])
    A = QuotientRing(S, [S("a^2")])
    T = quotient_by_regular_sequence(A, [S("b")])
    C = module_from_ideal(Ideal(A, [A.one()]))
    D = sd.base_change_tensor(C, T)
    assert minimal_presentation(D).ngens == 1
    assert is_semidualizing(D).verdict == SEMIDUALIZING_UP_TO_BOUND
