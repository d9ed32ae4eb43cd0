"""The twelve acceptance runs, each driven through the command line over GF(32003) and QQ.

Every resolution built during runs 1-10 is logged and audited in criterion 11.
A summary with one PASS/FAIL line per criterion is printed at the end of the session.
"""
import time
from math import comb

import pytest

from canonica import cli, modules

FIELDS = {"gf": [], "qq": ["--rationals"]}
AUDIT = {"resolutions": 0, "bad": [], "seconds": 0.0, "runs": set()}


def _cli(argv, field, audit=True):
    """Run one command in-process; returns the envelope after auditing its resolutions."""
    log = [] if audit else None
    old = modules.RESOLUTION_LOG
    modules.RESOLUTION_LOG = log
    try:
        code, env, _ = cli.run(cli.build_parser().parse_args(argv + FIELDS[field]))
    finally:
        modules.RESOLUTION_LOG = old
    assert code == env["exit_code"] == cli.VERDICT_EXIT[env["verdict"]]
    if log:
        AUDIT["runs"].add(" ".join(argv[:7]))
        start = time.perf_counter()
        for F in log:
            AUDIT["resolutions"] += 1
            if not (F.check_complex() and F.check_minimal()):
                AUDIT["bad"].append(" ".join(argv))
        AUDIT["seconds"] += time.perf_counter() - start
    return env


def _rejections(payload):
    return {c["label"]: c["first_nonvanishing_ext"] for c in payload["candidates"]
            if c["verdict"] != "SEMIDUALIZING_UP_TO_BOUND"}


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_01_non_gorenstein_classes(field, acceptance):
    done = acceptance(1, "classify det 3 2 1 --scan 4 --ext-bound 5 finds {0, 1}", field)
    env = _cli(["classify", "det", "3", "2", "1", "--scan", "4", "--ext-bound", "5"], field)
    pay = env["payload"]
    assert env["verdict"] == "MATCHES_THEOREM" and env["exit_code"] == 0
    assert pay["found_classes"] == [0, 1] and len(pay["found_classes"]) == 2
    rej = _rejections(pay)
    assert sorted(rej) == [-4, -3, -2, -1, 2, 3, 4]
    # each rejection is witnessed by a nonvanishing Ext inside the bound
    assert all(w is not None and 1 <= w <= 5 for w in rej.values())
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_02_gorenstein_cases(field, acceptance):
    done = acceptance(2, "det 2 2 1 finds {0}; det m n 0 predicts 1 class", field)
    env = _cli(["classify", "det", "2", "2", "1", "--scan", "3"], field)
    assert env["verdict"] == "MATCHES_THEOREM" and env["payload"]["found_classes"] == [0]
    assert sorted(_rejections(env["payload"])) == [-3, -2, -1, 1, 2, 3]
    for m, n in ((3, 2), (2, 2), (4, 3)):
        b = _cli(["build", "det", str(m), str(n), "0"], field)
        assert b["verdict"] == "BUILT" and b["payload"]["nvars"] == 0
        c = _cli(["classify", "det", str(m), str(n), "0"], field)
        assert c["payload"]["predicted_classes"] == [0] == c["payload"]["found_classes"]
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_03_beta0_law(field, acceptance):
    done = acceptance(3, "beta0(p^v) = 1..6 and beta0(q^v) = 1,3,6,10 on det 3 2 1", field)
    env = _cli(["verify", "det", "3", "2", "1", "--suite", "beta0"], field)
    pay = env["payload"]
    assert env["verdict"] == "PASS"
    assert pay["p"][:6] == [1, 2, 3, 4, 5, 6] and pay["q"][:4] == [1, 3, 6, 10]
    # monomial counts of degree v in n and m variables
    assert pay["p"][:6] == [comb(v + 1, 1) for v in range(6)]
    assert pay["q"][:4] == [comb(v + 2, 2) for v in range(4)]
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
@pytest.mark.parametrize("shape", ["3 2 1", "4 2 1"])
def test_criterion_04_strict_inequalities(field, shape, acceptance):
    done = acceptance(4, "beta0 inequalities on det 3 2 1 and det 4 2 1", f"{field}:{shape}")
    env = _cli(["verify", "det", *shape.split(), "--suite", "eq07"], field)
    rows = env["payload"]["rows"]
    assert env["verdict"] == "PASS"
    assert {(r["u"], r["v"]) for r in rows} == {(u, v) for u in range(1, 4) for v in range(1, 4)}
    for r in rows:
        assert r["lhs"] > r["mid"] > r["rhs"]
        # independent count: beta0(p^v) = v + 1 since n = 2
        assert (r["lhs"], r["mid"], r["rhs"]) == ((r["u"] + 1) * (r["v"] + 1), r["u"] + r["v"] + 1, r["v"] + 1)
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_05_ext_pattern(field, acceptance):
    done = acceptance(5, "Hom/Ext pattern of R/p against p up to Ext^5", field)
    env = _cli(["verify", "det", "3", "2", "1", "--suite", "prop22", "--ext-bound", "5"], field)
    pay = env["payload"]
    assert env["verdict"] == "PASS" and all(pay["checks"].values())
    assert pay["bound"] == 5 and pay["higher_ext_beta0"] == {"2": 0, "3": 0, "4": 0, "5": 0}
    assert pay["dim_quotient"] == pay["depth_quotient"] == 3
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_06_dualizing_identification(field, acceptance):
    done = acceptance(6, "Ext^2 dual lands in class m - n = 1 with Bass (0,0,0,0,1)", field)
    env = _cli(["verify", "det", "3", "2", "1", "--suite", "dagger"], field)
    pay = env["payload"]
    assert env["verdict"] == "PASS"
    assert pay["class"] == 1 == 3 - 2
    assert pay["bass"] == [0, 0, 0, 0, 1] and pay["dualizing"] == "DUALIZING_UP_TO_BOUND"
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_07_multiplicity(field, acceptance):
    done = acceptance(7, "e(R) = e(p) = 3, numerator 1+2t, pole 4, oracle to degree 8", field)
    env = _cli(["verify", "det", "3", "2", "1", "--suite", "multiplicity"], field)
    pay = env["payload"]
    assert env["verdict"] == "PASS"
    assert pay["e_ring"] == 3 and set(pay["e_candidates"]) == {3}
    assert pay["hilbert_numerator"] == [1, 2] and sum(pay["hilbert_numerator"]) == 3
    assert pay["pole_order"] == 4
    want = [(d + 1) * comb(d + 2, 2) for d in range(9)]
    assert pay["hilbert_oracle"]["engine"] == pay["hilbert_oracle"]["oracle"] == want
    done()


CHAINS = [("[triv 2]", 2, [1, 2]), ("[triv 1]", 1, [1]), ("[powq (y1,y2) 2]", 2, [1, 2])]


@pytest.mark.parametrize("field", sorted(FIELDS))
@pytest.mark.parametrize("chain,count,betas", CHAINS)
def test_criterion_08_chains(field, chain, count, betas, acceptance):
    done = acceptance(8, "chain class counts 2, 1, 2 with THEOREM_ASSERTED bounds", f"{field}:{chain}")
    for extra in ([], ["--ext-bound", "4"]):
        env = _cli(["classify", "chain", chain] + extra, field)
        pay = env["payload"]
        assert env["verdict"] == "MATCHES_THEOREM"
        assert pay["found_classes"] == [count] == pay["predicted_classes"]
        assert pay["upper_bound"] == "THEOREM_ASSERTED"
        sd = [c for c in pay["candidates"] if c["verdict"] == "SEMIDUALIZING_UP_TO_BOUND"]
        assert sorted(c["beta0"] for c in sd) == betas
        assert len({c["module_fingerprint"] for c in sd}) == count
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_09_ordering(field, acceptance):
    done = acceptance(9, "omega<=R, omega<=omega, R<=R TRUE and R<=omega FALSE", field)
    env = _cli(["verify", "det", "3", "2", "1", "--suite", "ordering"], field)
    rel = env["payload"]["relations"]
    assert env["verdict"] == "PASS"
    assert rel == {"omega<=R": "TRUE", "omega<=omega": "TRUE", "R<=R": "TRUE", "R<=omega": "FALSE"}
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_10_multiplication_map(field, acceptance):
    done = acceptance(10, "p (x) p -> p^2 has a kernel; R (x) p -> p is an isomorphism", field)
    env = _cli(["verify", "det", "3", "2", "1", "--suite", "multmap"], field)
    status = {r["pair"]: r["status"] for r in env["payload"]["pairs"]}
    assert env["verdict"] == "PASS"
    assert status["p*p"] == "KERNEL_NONZERO" and status["R*p"] == "ISO"
    done()


@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_11_engine_properties(field, acceptance):
    done = acceptance(11, "engine properties, resolution audit of runs 1-10, threads 1/4", field)
    start = time.perf_counter()
    env = _cli(["verify", "det", "3", "2", "1", "--suite", "engine"], field, audit=False)
    pay = env["payload"]
    assert env["verdict"] == "PASS", pay
    assert pay["random_ideals"] == 200 and all(pay["checks"].values())
    assert pay["group_bound"] == 2 and pay["law_failures"] == []
    argv = ["classify", "det", "3", "2", "1", "--scan", "4", "--ext-bound", "5"]
    one = cli.run(cli.build_parser().parse_args(argv + ["--threads", "1"] + FIELDS[field]))[1]
    four = cli.run(cli.build_parser().parse_args(argv + ["--threads", "4"] + FIELDS[field]))[1]
    assert cli.dump_envelope(cli.scrub_wall_time(one)) == cli.dump_envelope(cli.scrub_wall_time(four))
    elapsed = time.perf_counter() - start
    assert elapsed <= 300, f"engine suites took {elapsed:.0f}s"
    done()


def test_criterion_11_resolution_audit(acceptance):
    if not AUDIT["runs"]:
        pytest.skip("runs 1-10 were not executed in this session")
    done = acceptance(11, "engine properties, resolution audit of runs 1-10, threads 1/4", "audit")
    heavy = {"classify det 3 2 1 --scan 4", "verify det 3 2 1 --suite prop22", "verify det 3 2 1 --suite dagger",
             "verify det 3 2 1 --suite ordering", "classify det 2 2 1 --scan 3"}
    assert heavy <= AUDIT["runs"], heavy - AUDIT["runs"]
    assert AUDIT["bad"] == []
    assert AUDIT["seconds"] <= 300
    done()


@pytest.mark.xfail(strict=False, reason="stretch run, allowed to fail")
@pytest.mark.parametrize("field", sorted(FIELDS))
def test_criterion_12_stretch(field, acceptance):
    done = acceptance(12, "classify det 4 2 1 --scan 4 finds {0, 2} (allow-fail)", field)
    start = time.perf_counter()
    env = _cli(["classify", "det", "4", "2", "1", "--scan", "4"], field, audit=False)
    assert env["verdict"] == "MATCHES_THEOREM"
    assert env["payload"]["found_classes"] == [0, 2]
    assert sorted(_rejections(env["payload"])) == [-4, -3, -2, -1, 1, 3, 4]
    assert time.perf_counter() - start <= 1800
    done()
