import math

import numpy as np
import pytest

import sbo


def test_prox_l1_matches_soft_threshold():
    x = np.array([3.0, -0.5, 1.0, -2.0])
    np.testing.assert_allclose(sbo.prox_l1(1.0, x), [2.0, 0.0, 0.0, -1.0])


def test_prox_ball_and_box():
    np.testing.assert_allclose(sbo.prox_ball(1.0, np.array([3.0, 4.0])), [0.6, 0.8])
    out = sbo.prox_box(np.array([-1.0, -1.0]), np.array([1.0, 1.0]), np.array([2.0, -0.5]))
    np.testing.assert_allclose(out, [1.0, -0.5])


def test_regtools_shapes():
    A, b, x = sbo.regtools("phillips", 16)
    assert A.shape == (16, 16)
    np.testing.assert_allclose(A @ x, b, rtol=0, atol=0.05 * np.linalg.norm(b))


def test_weak_sharp_instance_and_metrics():
    p = sbo.build_problem("l1_weak_sharp:6:seed=3")
    assert p.dimension == 6
    assert p.L_f == pytest.approx(1.0)
    np.testing.assert_array_equal(p.x_star, np.zeros(6))
    x = np.ones(6)
    assert sbo.infeasibility(p, x) == pytest.approx(6.0)
    assert sbo.dist_to_optimum_sq(p, x) == pytest.approx(6.0)


def test_ir_ista_reduces_infeasibility():
    p = sbo.build_problem("rank_deficient_ls:20:rank=8,seed=1")
    r = sbo.solve_ir_ista(p, 2000)
    infeas = dict(r["trace"]["infeas"])
    assert not r["diverged"]
    assert infeas[2000] < 1e-2 * max(infeas[0], 1e-12) or infeas[2000] < 1e-6
    assert r["trace_csv"].startswith("k,eta,theta,")


def test_config_error_is_typed():
    p = sbo.build_problem("rank_deficient_ls:20:rank=8,seed=1")
    with pytest.raises(sbo.ConfigError):
        sbo.solve_ir_ista(p, 5, schedule="constant_ista", p=1.0)


def test_run_config_is_deterministic():
    text = "instance.name = rank_deficient_ls\ninstance.n = 12\ninstance.rank = 5\ninstance.seed = 7\n" \
           "solver.name = r_vfista\nsolver.K = 300\n"
    a = sbo.run_config(text)
    b = sbo.run_config(text)
    assert a["trace_csv"] == b["trace_csv"]
    assert "r_vfista" in a["report"] or "R-VFISTA" in a["report"]


def test_fit_rate_recovers_power_law():
    samples = [(k, 7.0 / k) for k in (1, 2, 4, 8, 16, 32, 64)]
    fit = sbo.fit_rate(samples)
    assert fit["slope"] == pytest.approx(-1.0, abs=1e-12)
    assert math.exp(fit["intercept"]) == pytest.approx(7.0)


def test_ipr_inner_eta_floor():
    assert sbo.ipr_inner_eta(1, 2.0, 1.0) == pytest.approx(48 * (math.log(2) / 1) ** 2)
    assert sbo.ipr_inner_eta(4, 2.0, 1.0) == pytest.approx(48 * (math.log(4) / 4) ** 2)
