"""End-to-end classification reports and the verifiers behind `canonica verify`."""
import json
from math import comb

import pytest

from canonica import PrimeField, build_chain, build_det_ring, class_of, enumerate_semidualizing_det
from canonica.builders import ChainSpec, parse_chain_steps, power_ideal
from canonica.classification import (MATCHES_THEOREM, THEOREM_ASSERTED, beta0_table, hilbert_function_oracle,
                                     verify_chain_cardinality, verify_dagger, verify_engine_properties, verify_eq07,
                                     verify_mult_map_suite, verify_multiplicity_equality, verify_ordering,
                                     verify_prop_semidualizing_ideal)
from canonica.divisors import embed_as_ideal
from canonica.modules import module_from_ideal

GF = PrimeField(32003)


def _check_report(rep, predicted):
    assert rep.verdict == MATCHES_THEOREM
    assert rep.found_classes == sorted(predicted)
    for c in rep.candidates:
        if c["label"] in predicted:
            assert c["verdict"] == "SEMIDUALIZING_UP_TO_BOUND"
        else:
            # every rejection carries a witness
            assert c["first_nonvanishing_ext"] is not None or c["homothety"] != "ISO"
    json.dumps(rep.to_dict())


def test_gorenstein_enumeration(det221):
    rep = enumerate_semidualizing_det(det221, 3)
    _check_report(rep, [0])
    assert [c["label"] for c in rep.candidates] == list(range(-3, 4))


def test_non_gorenstein_enumeration(det321):
    rep = enumerate_semidualizing_det(det321, 2, 5)
    _check_report(rep, [0, 1])


def test_degenerate_enumeration():
    det = build_det_ring(GF, 3, 2, 0)
    rep = enumerate_semidualizing_det(det)
    assert rep.verdict == MATCHES_THEOREM and rep.found_classes == [0]


def test_found_classes_have_matching_labels(det321):
    """The module of each found class is recognized again by the class scan."""
    pw = lambda c: power_ideal(det321, c)
    for c in (0, 1):
        I, _ = embed_as_ideal(module_from_ideal(pw(c)))
        assert class_of(I, pw, 4) == c


@pytest.mark.parametrize("mnr", [(3, 2, 1), (4, 2, 1), (3, 3, 1)])
def test_beta0_closed_forms(mnr):
    det = build_det_ring(GF, *mnr)
    rep = beta0_table(det, 4, 3)
    assert rep.passed
    m, n = det.m, det.n
    assert rep.details["p"] == [comb(v + n - 1, n - 1) for v in range(5)]
    assert rep.details["q"] == [comb(v + m - 1, m - 1) for v in range(4)]


def test_eq07_inequalities(det321):
    rep = verify_eq07(det321)
    assert rep.passed and len(rep.details["rows"]) == 9


def test_prop22_pattern(det321):
    rep = verify_prop_semidualizing_ideal(det321, 4)
    assert rep.passed, rep.details


def test_mult_map_suite(det321):
    rep = verify_mult_map_suite(det321)
    assert rep.passed
    status = {r["pair"]: r["status"] for r in rep.details["pairs"]}
    assert status == {"R*p": "ISO", "p*p": "KERNEL_NONZERO", "p*q": "ISO", "q*q": "KERNEL_NONZERO"}


def test_multiplicity_and_hilbert_oracle(det321):
    mods = [module_from_ideal(power_ideal(det321, c)) for c in (0, 1)]
    rep = verify_multiplicity_equality(det321.ring, mods)
    assert rep.passed and rep.details["e_ring"] == 3
    oracle = hilbert_function_oracle(det321)
    assert oracle.passed
    assert oracle.details["oracle"] == [(d + 1) * comb(d + 2, 2) for d in range(9)]


def test_ordering_and_dagger(det321):
    assert verify_ordering(det321).passed
    rep = verify_dagger(det321)
    assert rep.passed and rep.details["class"] == 1 and rep.details["bass"] == [0, 0, 0, 0, 1]


@pytest.mark.parametrize("steps,count,betas", [
    (["triv 2"], 2, [1, 2]), (["triv 1"], 1, [1]), (["powq (y1,y2) 2"], 2, [1, 2]),
])
def test_chain_cardinality(steps, count, betas):
    chain = build_chain(ChainSpec(GF, parse_chain_steps(steps)))
    rep = verify_chain_cardinality(chain)
    assert rep.verdict == MATCHES_THEOREM
    assert rep.upper_bound == THEOREM_ASSERTED
    assert rep.found_classes == [count]
    assert sorted(c["beta0"] for c in rep.candidates) == betas
    # candidates are separated by their invariants
    keys = {(c["beta0"], c["hilbert"]) for c in rep.candidates}
    assert len(keys) == count


def test_engine_suite_small(det221):
    rep = verify_engine_properties(det221, n_ideals=20, group_bound=1, scan=1, threads=2)
    assert rep.passed, rep.details
    assert rep.details["resolutions_checked"] > 0
