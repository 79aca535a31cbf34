import numpy as np

from modecoupler import validate as val
from modecoupler import liouvillian


def test_random_params_respect_constraints():
    rng = np.random.default_rng(0)
    for p in val.random_regular_params(rng, 30):
        assert p.gamma**2 <= p.gamma_a * p.gamma_b * (1 + 1e-12)
        assert not liouvillian.is_singular_point(p)


def test_suite_is_green_and_seeded():
    a = val.run_suite(seed=5)
    assert a.ok and a.failed == 0 and a.passed > 0
    b = val.run_suite(seed=5)
    assert (a.passed, a.failed) == (b.passed, b.failed)


def test_report_records_failures():
    rep = val.SuiteReport()
    rep.record("x", True)
    rep.record("y", False, "boom")
    assert rep.passed == 1 and rep.failed == 1
    assert not rep.ok and rep.failures == ["y: boom"]
