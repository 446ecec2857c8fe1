"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import pytest

from tropclust.acceptance import CRITERIA, AcceptanceConfig, run_acceptance

CONFIG = AcceptanceConfig()


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion-{c.number:02d}")
def test_criterion(criterion, capsys):
    (res,) = run_acceptance(CONFIG, only=[str(criterion.number)])
    with capsys.disabled():
        print(f"\n{res.line()}  lhs={res.lhs} rhs={res.rhs} tol={res.tol}")
    assert res.passed, res.as_dict()
    assert res.within_budget, f"{res.seconds:.2f}s exceeds {res.budget}s"
