"""Pytest entry for the real-data reproductions in test-cases/.

Cases skip unless their dataset paths are set (see config.yaml).
"""

import pytest

from tests.validation import run_validation as validation

CASES = validation.load_test_cases()


@pytest.fixture(scope="module")
def runner(tmp_path_factory):
    config = validation.ValidationConfig.from_yaml(validation.HERE / "config.yaml")
    config.workdir = str(tmp_path_factory.mktemp("validation"))
    return validation.ValidationRunner(config)


@pytest.mark.slow
@pytest.mark.parametrize("case", CASES, ids=[c.name for c in CASES])
def test_reproduction(runner, case):
    result = runner.run_test(case)
    if result.status is validation.TestStatus.SKIPPED:
        pytest.skip(result.message)
    assert result.status is validation.TestStatus.PASSED, (result.message, result.details)


def test_path_lookup():
    data = {
        "rows": [
            {"prior": "t", "method": "MCMC", "brier": 0.16},
            {"prior": "t", "method": "MAP", "brier": 0.18},
            {"prior": "normal", "method": "MAP", "brier": 0.17},
        ],
        "acceptance": {"0": 0.23},
    }
    assert validation.resolve(data, "rows[prior=t,method=MAP].brier") == 0.18
    assert validation.resolve(data, "rows[method=MAP][*].brier") == [0.18, 0.17]
    assert validation.resolve(data, "rows[*].prior") == ["t", "t", "normal"]
    assert validation.resolve(data, "acceptance.0") == 0.23
    with pytest.raises(KeyError, match="matched 2"):
        validation.resolve(data, "rows[prior=t].brier")
