"""Suite runner plumbing: names, report shape, determinism."""

import json

import pytest

from qherm.verify import SUITE_NAMES, RunConfig, run_suites


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suites(["nonsense"], RunConfig())


def test_report_shape_and_serializability():
    report = run_suites(["landau", "recursion"], RunConfig())
    assert report["schema"] == 1
    assert report["passed"] is True
    assert [s["suite"] for s in report["suites"]] == ["landau", "recursion"]
    for suite in report["suites"]:
        for check in suite["checks"]:
            assert set(check).issuperset({"name", "value", "tolerance",
                                          "passed"})
    # the report must round-trip through JSON without custom encoders
    json.loads(json.dumps(report, sort_keys=True))


def test_all_suite_names_runnable():
    assert set(SUITE_NAMES) == {"orthogonality", "recursion", "kernels",
                                "landau", "resolution", "regularity",
                                "splitting", "su2"}


def test_same_config_same_report():
    cfg = RunConfig(seed=4)
    a = run_suites(["splitting"], cfg)
    b = run_suites(["splitting"], cfg)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
