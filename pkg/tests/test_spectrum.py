from __future__ import annotations

import json

import pytest

from zeckphi.base_phi import s_beta
from zeckphi.beatty import Gbs, merge_union
from zeckphi.spectrum import (
    C_BETA_PARTS,
    C_BETA_PARTS_AS_PRINTED,
    CHECKS,
    CheckReport,
    Failure,
    SignClass,
    classify,
    phi_points,
    render_table,
    run_check,
    run_checks,
    sign_class,
    zeck_points,
)
from zeckphi.zeckendorf import s_z

SMALL_BOUNDS = {
    "zeck.tau": 5000,
    "zeck.gbs": 5000,
    "zeck.morph": 2000,
    "zeck.recursion": 12,
    "phi.gamma": 5000,
    "phi.rst": 2000,
    "phi.sigma": 2000,
    "phi.complexity": 20,
    "phi.gbs": 5000,
    "phi.morph": 2000,
    "phi.types": 5000,
    "phi.returnword": 1000,
    "phi.parity": 5000,
    "gbs.lemma1": 100,
    "gbs.lemma2": 500,
    "gbs.triple": 5000,
}


def test_every_check_has_a_small_bound():
    assert set(SMALL_BOUNDS) == set(CHECKS)


def test_classify_examples():
    inc, const, dec = classify([s_z(n) for n in range(40)])
    assert inc[:4] == [0, 3, 5, 8]
    assert dec[:3] == [4, 7, 12]
    inc, const, dec = classify([s_beta(n) for n in range(40)])
    assert inc[:6] == [0, 1, 3, 7, 8, 10]
    assert const[0] == 2
    assert dec[0] == 6
    assert classify([5, 5, 5, 5]) == ([], [0, 1, 2], [])
    with pytest.raises(ValueError):
        classify([1])


def test_classify_is_a_partition():
    f = [s_beta(n) for n in range(500)]
    inc, const, dec = classify(f)
    assert len(inc) + len(const) + len(dec) == len(f) - 1
    assert sorted(inc + const + dec) == list(range(len(f) - 1))
    assert sign_class(f, 0) is SignClass.INCREASE
    assert sign_class(f, 2) is SignClass.CONSTANCY
    assert sign_class(f, 6) is SignClass.DECREASE


def test_point_tables_agree_with_classify():
    for points, fn in ((zeck_points, s_z), (phi_points, s_beta)):
        ref = classify([fn(n) for n in range(1002)])
        got = points(1000)
        for r, g in zip(ref, got):
            assert r == [int(x) for x in g]


@pytest.mark.parametrize("check_id", list(CHECKS))
def test_checks_pass_at_small_bounds(check_id):
    report = run_check(check_id, SMALL_BOUNDS[check_id])
    assert report.passed, report.first_failure
    assert report.first_failure is None


@pytest.mark.parametrize("check_id", list(CHECKS))
def test_negative_controls_fail(check_id):
    report = run_check(check_id, SMALL_BOUNDS[check_id], perturb=True)
    assert report.status == "fail"
    f = report.first_failure
    assert isinstance(f, Failure)
    assert f.expected != f.actual
    assert isinstance(f.n, int)


def test_gbs_negative_control_reports_first_index():
    report = run_check("zeck.gbs", 10, perturb=True)
    assert report.status == "fail"
    assert report.first_failure.n == 1
    assert (report.first_failure.expected, report.first_failure.actual) == (0, 1)


def test_c_beta_printed_start_indices_fail():
    const = [int(x) for x in phi_points(5000)[1]]
    assert merge_union(C_BETA_PARTS, 5000) == const
    with pytest.raises(ValueError):
        # N = 2 is produced twice
        merge_union(C_BETA_PARTS_AS_PRINTED, 5000)
    loose = merge_union(C_BETA_PARTS_AS_PRINTED, 5000, disjoint=False)
    assert 4 in const and 4 not in loose


def test_d_beta_starts_at_six():
    assert phi_points(10)[2][0] == 6
    assert merge_union([Gbs(4, 3, -1), Gbs(7, 4, 0), Gbs(7, 4, 4)], 10)[0] == 6


def test_unknown_check_and_bad_bound():
    with pytest.raises(KeyError):
        run_check("no.such.check")
    with pytest.raises(ValueError):
        run_check("zeck.gbs", 0)
    with pytest.raises(KeyError):
        run_checks(["zeck.gbs", "nope"], 10)
    with pytest.raises(ValueError):
        run_check("zeck.recursion", 40)
    with pytest.raises(ValueError):
        run_checks(None, 200)


def test_report_records():
    rep = run_check("zeck.gbs", 100)
    rec = rep.to_record()
    assert list(rec) == ["check_id", "bound", "status", "elapsed_ms"]
    assert rec["status"] == "pass" and rec["bound"] == 100
    bad = run_check("zeck.gbs", 100, perturb=True)
    rec = json.loads(bad.to_json())
    assert rec["status"] == "fail"
    assert set(rec["first_failure"]) == {"n", "expected", "actual"}
    with pytest.raises(ValueError):
        CheckReport("x", 1, "fail", None, 0.0)
    table = render_table([rep, bad])
    assert "PASS" in table and "FAIL" in table and "n=1" in table


def _stable(reports):
    return [(r.check_id, r.bound, r.status, r.first_failure) for r in reports]


def test_reports_are_deterministic_and_independent_of_workers():
    ids = ["zeck.gbs", "phi.gbs", "phi.morph", "gbs.triple"]
    one = run_checks(ids, 3000)
    two = run_checks(ids, 3000)
    pooled = run_checks(ids, 3000, jobs=2)
    assert _stable(one) == _stable(two) == _stable(pooled)
    bad1 = run_checks(ids, 3000, perturb=True)
    bad2 = run_checks(ids, 3000, perturb=True, jobs=2)
    assert _stable(bad1) == _stable(bad2)
