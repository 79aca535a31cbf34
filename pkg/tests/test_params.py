import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from modecoupler.errors import DomainError
from modecoupler.params import (
    SystemParams, collective_rate, derive, from_json, make_params, validate,
)


def test_validate_accepts_plain_params():
    p = SystemParams(omega=1, kappa=1, epsilon=1, gamma_a=1, gamma_b=1, gamma=0)
    assert validate(p) is p


def test_validate_rejects_cauchy_schwarz_violation():
    p = SystemParams(omega=1, gamma_a=0.01, gamma_b=0.01, gamma=0.02)
    with pytest.raises(DomainError, match="gamma"):
        validate(p)


def test_validate_rejects_nonpositive_omega():
    with pytest.raises(DomainError, match="omega"):
        validate(SystemParams(omega=0.0))
    with pytest.raises(DomainError):
        validate(SystemParams(omega=-1.0))


def test_validate_rejects_negative_rates_and_nonfinite():
    with pytest.raises(DomainError):
        validate(SystemParams(omega=1, kappa=-0.1))
    with pytest.raises(DomainError):
        validate(SystemParams(omega=1, gamma_a=float("nan")))


def test_collective_rate_values():
    assert collective_rate(0.2, 0.01, 0.0) == pytest.approx(math.sqrt(0.002), rel=1e-15)
    assert collective_rate(1.0, 3.0, math.pi / 2) == pytest.approx(0.0, abs=1e-15)
    assert collective_rate(4.0, 1.0, 0.0) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(DomainError):
        collective_rate(-1.0, 1.0, 0.0)


def test_collective_rate_monotone_in_theta():
    thetas = np.linspace(0, math.pi / 2, 50)
    vals = [collective_rate(0.3, 0.7, t) for t in thetas]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[0] == max(vals)


def test_derive_definitions():
    d = derive(make_params(1, gamma_a=0.2, gamma_b=0.01))
    assert d.gamma0 == pytest.approx(0.105)
    assert d.gamma_d == pytest.approx(0.095)
    d = derive(make_params(1, kappa=0.5, gamma_a=1, gamma_b=1))
    assert d.gamma_d == 0.0
    assert d.ratio_u == 0.0
    assert d.ratio_r == 0.5


def test_derive_requires_damping_for_ratios():
    with pytest.raises(DomainError):
        derive(make_params(1, kappa=1))


def test_explicit_gamma_wins_over_theta():
    p = make_params(1, gamma_a=1, gamma_b=1, gamma=0.25, theta=0.0)
    assert p.gamma == 0.25
    assert p.theta == 0.0  # kept as metadata
    p = make_params(1, gamma_a=1, gamma_b=1, theta=0.0)
    assert p.gamma == pytest.approx(1.0)


@given(ga=st.floats(0, 2), gb=st.floats(0, 2))
def test_gamma0_gamma_d_identity(ga, gb):
    p = make_params(1, gamma_a=ga, gamma_b=gb)
    g0 = (ga + gb) / 2
    gd = (ga - gb) / 2
    assert g0 * g0 - gd * gd == pytest.approx(ga * gb, abs=1e-12)
    if g0 > 0:
        assert abs(derive(p).ratio_u) <= 1 + 1e-15


def test_json_roundtrip(tmp_path):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"omega": 1.0, "kappa": 0.5, "epsilon": 1.0,
                                "gamma_a": 0.2, "gamma_b": 0.01}))
    p = from_json(path)
    assert p.kappa == 0.5
    assert p.gamma == 0.0


def test_json_rejects_unknown_keys(tmp_path):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"omega": 1.0, "detuning": 0.1}))
    with pytest.raises(DomainError, match="detuning"):
        from_json(path)
