import json
import math

import jsonschema
import pytest

from focklab.multipliers import NormScan
from focklab.report import REPORT_SCHEMA, Check, Report
from focklab.suites import SUITE_DIMENSIONS, SUITES, SuiteConfig, UnsupportedConfig, run_suite

pytestmark = pytest.mark.filterwarnings("ignore:op_norm:RuntimeWarning")

_CACHE: dict = {}


def _run(name: str, n: int = 1) -> Report:
    key = (name, n)
    if key not in _CACHE:
        _CACHE[key] = run_suite(SuiteConfig(name, n))
    return _CACHE[key]


def test_report_bookkeeping():
    rep = Report("demo", 7)
    rep.upper("b error", 1e-9, 1e-8)
    rep.within("a ratio", 0.95, 0.9, 1.0)
    rep.flag("c monotone", False)
    rep.add_scan(NormScan("s", [1, 2], [1.0, 2.0]))
    assert not rep.passed
    assert [c.name for c in rep.failures] == ["c monotone"]
    d = rep.to_dict()
    assert [c["name"] for c in d["checks"]] == ["a ratio", "b error", "c monotone"]
    assert d["checks"][0]["tolerance"] == pytest.approx(0.1)
    with pytest.raises(ValueError):
        rep.upper("a ratio", 0.0, 1.0)
    jsonschema.validate(d, REPORT_SCHEMA)
    assert rep.to_json().endswith("\n")
    assert rep.summary_lines()[0].startswith("PASS")


def test_non_finite_measurements_serialize():
    c = Check("x", math.inf, 1.0, False)
    assert json.loads(json.dumps(c.to_dict()))["measured"] == "inf"
    rep = Report("demo", 0)
    rep.upper("nan", math.nan, 1.0)
    assert not rep.passed
    jsonschema.validate(json.loads(rep.to_json()), REPORT_SCHEMA)


def test_suite_list_is_complete():
    assert set(SUITES) == {
        "orthonormality", "bargmann", "gauss-bargmann", "reproducing", "multiplier-routes", "lemma21",
        "lemma22", "lemma31", "sobolev", "uncertainty", "weyl-radial", "thm1-11", "schrodinger",
    }


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes_in_one_dimension(name):
    rep = _run(name)
    assert rep.passed, [c.to_dict() for c in rep.failures]
    jsonschema.validate(rep.to_dict(), REPORT_SCHEMA)
    assert rep.to_dict()["suite"] == name


@pytest.mark.parametrize("name", sorted(n for n, dims in SUITE_DIMENSIONS.items() if 2 in dims))
def test_two_dimensional_suites_pass(name):
    rep = _run(name, 2)
    assert rep.passed, [c.to_dict() for c in rep.failures]


def test_reports_are_deterministic():
    a = run_suite(SuiteConfig("bargmann", 1, seed=0xABC)).to_json()
    b = run_suite(SuiteConfig("bargmann", 1, seed=0xABC)).to_json()
    c = run_suite(SuiteConfig("bargmann", 1, seed=0xABD)).to_json()
    assert a == b
    assert a != c


def test_tolerance_override_can_fail_a_suite():
    rep = run_suite(SuiteConfig("reproducing", 1, tol=1e-300))
    assert not rep.passed


def test_unsupported_configurations():
    with pytest.raises(UnsupportedConfig):
        run_suite(SuiteConfig("sobolev", 2))
    with pytest.raises(UnsupportedConfig):
        run_suite(SuiteConfig("bargmann", 3))
    with pytest.raises(UnsupportedConfig):
        run_suite(SuiteConfig("bargmann", 1, degree=-1))
    with pytest.raises(KeyError):
        run_suite(SuiteConfig("nonsense"))
