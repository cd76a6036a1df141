"""The named verification suites: all green at defaults, stable shapes."""

import pytest

from taulink.config import RunConfig
from taulink.verify import SUITES, run_all, run_suite

FAST = RunConfig(u_max=2, weight_max=6, order=8)


def test_registry_names():
    assert list(SUITES) == ["lemma-c", "lemma5", "prop-quadratic",
                            "zassenhaus-w", "zassenhaus-l", "prop-p4",
                            "thm1", "cor2", "virasoro", "eta-pde",
                            "xi-iso", "stability"]


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_green_at_defaults(name):
    rep = run_suite(name, RunConfig())
    assert rep["mismatches"] == [], rep
    assert rep["checked"] >= 1
    assert set(rep) == {"window", "checked", "mismatches"}
    assert set(rep["window"]) == {"u_max", "weight_max"}


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", RunConfig())


def test_suites_deterministic():
    for name in ("zassenhaus-w", "xi-iso", "prop-p4"):
        assert run_suite(name, FAST) == run_suite(name, FAST)


def test_run_all_shape():
    rep = run_all(FAST)
    assert rep["mismatches"] == []
    assert rep["window"] == {"u_max": 2, "weight_max": 6}
    assert [s["suite"] for s in rep["suites"]] == list(SUITES)
    assert rep["checked"] == sum(s["checked"] for s in rep["suites"])
    for s in rep["suites"]:
        assert isinstance(s["elapsed_ms"], int)
        assert s["mismatches"] == []
