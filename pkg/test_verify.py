import json
import logging

import mpmath
import pytest

from core.errors import ParameterError
from core.qscalar import QScalar
from representations.generators import fundamental_rep
from verification.closed_forms import a_power_closed_form, verify_apow
from verification.compare import compare_values
from verification.defining import CONTROLS, verify_defining_control, verify_defining_equation
from verification.hypergeometric import hyper_lhs, hyper_rhs, scipy_lhs, verify_hypergeometric_q1
from verification.mutation import (
    extract_mutation_fundamental, verify_mutation, verify_mutation_slN, verify_mutation_symmetric,
)
from verification.registry import CHECK_DEFINITIONS, get_check, is_experimental, run_checks
from verification.render import STRUCTURED_FORMAT, overall_status, render_reports
from verification.types import FAIL, PASS, Mismatch, VerificationReport


# ---- defining equation ----

@pytest.mark.parametrize("n", [1, 2])
def test_defining_equation(n):
    report = verify_defining_equation(n)
    assert report.passed, report.to_dict()
    assert report.details["dim"] == (n + 1) ** 2


@pytest.mark.slow
def test_defining_equation_n3():
    assert verify_defining_equation(3).passed


@pytest.mark.parametrize("kind", list(CONTROLS))
def test_negative_controls(kind):
    report = verify_defining_control(kind)
    assert report.passed
    inner = report.details["inner"]
    assert inner["status"] == FAIL
    assert "mismatch" in inner
    assert "elapsed_ms" not in inner


@pytest.fixture
def qcv_records(caplog):
    """Records of the `qcv` logger tree, which does not propagate to the root logger."""
    tree = logging.getLogger("qcv")
    caplog.set_level(logging.INFO, logger="qcv")
    tree.addHandler(caplog.handler)
    yield caplog
    tree.removeHandler(caplog.handler)


def test_control_failures_log_at_info(qcv_records):
    assert verify_defining_control("omega-zero").passed
    assert any("mismatch" in r.getMessage() for r in qcv_records.records)
    assert all(r.levelno < logging.WARNING for r in qcv_records.records)


def test_unexpected_mismatch_still_warns(qcv_records):
    report = VerificationReport(check="values", eq_tag="1 = 2", params={})
    assert not compare_values(report, QScalar.coerce(1), QScalar.coerce(2), "constant term")
    assert [r.levelno for r in qcv_records.records] == [logging.WARNING]


def test_unknown_control():
    with pytest.raises(ParameterError):
        verify_defining_control("omega-double")


def test_rank_too_small_for_rep():
    with pytest.raises(ParameterError):
        verify_defining_equation(2, fundamental_rep(2))


# ---- mutation ----

def test_mutation_fundamental():
    report = verify_mutation(fundamental_rep(2))
    assert report.passed, report.to_dict()
    substitution = report.details["substitution"]
    assert set(substitution) == {"a", "b", "c", "classical"}


def test_extracted_substitution():
    extraction = extract_mutation_fundamental()
    assert extraction["matches"]
    assert extraction["consistent"]


def test_mutation_small_symmetric_reps():
    report = verify_mutation_symmetric(3, guard=4)
    assert report.passed, report.to_dict()
    assert report.details["dimensions"] == [2, 4]


def test_mutation_needs_sl2():
    with pytest.raises(ParameterError):
        verify_mutation(fundamental_rep(3))


@pytest.mark.parametrize("i", [1, 2, 3])
def test_mutation_inside_sl3(i):
    report = verify_mutation_slN(2, i, guard=4)
    assert report.passed
    assert report.params["root"] == (2 if i == 2 else 1)


@pytest.mark.slow
def test_mutation_symmetric_acceptance():
    assert verify_mutation_symmetric(20).passed


# ---- powers of mutated variables ----

def test_apow():
    report = verify_apow(4)
    assert report.passed, report.to_dict()
    assert report.details["a^2"] == a_power_closed_form(2).to_text()


def test_apow_range():
    with pytest.raises(ParameterError):
        verify_apow(0)


# ---- hypergeometric identity at q = 1 ----

def test_hyper_smallest_case():
    # n = m = 1: both sides are x / (1 + x)^2
    x = 3.0
    expected = mpmath.mpf(x) / (1 + mpmath.mpf(x)) ** 2
    assert abs(hyper_lhs(1, 1, x) - expected) < mpmath.mpf(10) ** -20
    assert abs(hyper_rhs(1, 1, x) - expected) < mpmath.mpf(10) ** -20


def test_hyper_vanishing_case():
    # 2F1(-1, -1; 2; -2) = 1 - 1 = 0
    assert hyper_rhs(2, 2, 2.0) == 0
    assert abs(hyper_lhs(2, 2, 2.0)) < mpmath.mpf(10) ** -25


def test_hyper_sweep():
    report = verify_hypergeometric_q1(n_max=5, k_max=3, xs=(2.0, 10.0))
    assert report.passed, report.to_dict()
    assert report.details["cases"] == 2 * 5 * 4
    assert report.details["zero_cases"] >= 1
    assert report.details["max_relative_difference"] < 1e-9


def test_hyper_sweep_at_the_vanishing_point():
    report = verify_hypergeometric_q1(n_max=2, k_max=0, xs=(2.0,))
    assert report.passed, report.to_dict()
    assert report.details["cases"] == 2
    assert report.details["zero_cases"] == 1


def test_scipy_oracle_agrees():
    for n, m, x in [(1, 1, 2.0), (2, 3, 10.0), (3, 5, 4.0)]:
        assert scipy_lhs(n, m, x) == pytest.approx(float(hyper_rhs(n, m, x)), rel=1e-8)


@pytest.mark.parametrize("kwargs", [{"xs": (0.5,)}, {"xs": (-1.0,)}, {"tol": 0.0}, {"n_max": 0}])
def test_hyper_rejects_bad_parameters(kwargs):
    with pytest.raises(ParameterError):
        verify_hypergeometric_q1(**kwargs)


# ---- registry and rendering ----

def test_unknown_check_lists_known_ones():
    with pytest.raises(ValueError) as err:
        get_check("nonsense")
    assert "defining" in str(err.value)


def test_experimental_flag():
    assert is_experimental("mutation-infinite")
    assert not is_experimental("defining")
    assert all("description" in entry for entry in CHECK_DEFINITIONS.values())


@pytest.mark.parametrize("threads", [1, 3])
def test_run_checks_keeps_plan_order(threads):
    plan = [("apow", {"max_n": 2}), ("relations", {"rep": ["fund", "sym:2"]}), ("qexp-fact", {"degree": 4})]
    reports = run_checks(plan, threads=threads)
    assert [r.check for r in reports] == ["apow", "relations", "relations", "qexp-fact", "qexp-fact"]
    assert overall_status(reports) == PASS


@pytest.mark.parametrize("threads", [1, 2])
def test_runner_error_becomes_a_failed_report(threads):
    plan = [("apow", {"max_n": 2}), ("mutation-sln", {"n": 2, "blocks": [7]}), ("qexp-fact", {"degree": 4})]
    reports = run_checks(plan, threads=threads)
    assert [r.check for r in reports][:2] == ["apow", "mutation-sln"]
    assert reports[0].passed
    failed = reports[1]
    assert failed.status == FAIL
    assert failed.mismatch.location == "runner"
    assert "IndexOutOfRange" in failed.mismatch.actual
    assert all(r.passed for r in reports[2:])
    assert overall_status(reports) == FAIL


def test_runner_parameter_error_still_propagates():
    with pytest.raises(ParameterError):
        run_checks([("apow", {"max_n": 0})])


def test_structured_rendering():
    good = VerificationReport(check="apow", eq_tag="a^n", params={"max_n": 2}, elapsed_ms=5)
    bad = VerificationReport(check="leaf", eq_tag="g", params={"n": 1})
    bad.record(Mismatch(location="entry (1,2)", expected="1", actual="2"), 3)
    data = json.loads(render_reports([good, bad], STRUCTURED_FORMAT, timing=False))
    assert data["status"] == FAIL
    assert data["reports"][0] == {"check": "apow", "eq_tag": "a^n", "params": {"max_n": 2}, "status": PASS}
    assert data["reports"][1]["mismatch"]["location"] == "entry (1,2)"
    assert data["reports"][1]["mismatch_count"] == 3


def test_text_rendering():
    good = VerificationReport(check="apow", eq_tag="a^n", params={"max_n": 2}, elapsed_ms=5)
    text = render_reports([good])
    assert "✓ apow [PASS] 5 ms" in text
    assert text.rstrip().endswith("1/1 checks passed")
    with pytest.raises(ValueError):
        render_reports([good], "xml")
