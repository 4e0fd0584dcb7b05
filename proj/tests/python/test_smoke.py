"""Smoke tests for the python bindings."""

import json
import math
import os

import pytest

import laplab as lab


@pytest.fixture(scope="module")
def free_solution():
    g = lab.standard_grid(100.0, 1 << 12)
    p = lab.free_mode_problem(3, 0, 1.0, 0.0, "plus", g)
    f = lab.smooth_bump(g, 5.0, 0.5, "l2")
    gsrc = lab.to_v_form(f, 3)
    sol = lab.solve_resolvent_mode(p, gsrc, "outgoing")
    return g, p, f, sol


def test_grid_and_cutoff():
    g = lab.make_grid(1.0, 2.0, 3)
    assert list(g.r) == pytest.approx([1.0, 1.5, 2.0])
    assert lab.smooth_step(0.5) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        lab.make_grid(0.0, 1.0, 10)


def test_solve_and_kernel(free_solution):
    g, p, f, sol = free_solution
    assert sol.discrete_residual <= 1e-10
    # beyond the source the profile is a unit-frequency outgoing wave
    r = list(g.r)
    v = list(sol.v.values)
    i = next(k for k, rr in enumerate(r) if rr > 20.0)
    j = next(k for k, rr in enumerate(r) if rr > 40.0)
    assert abs(abs(v[i]) - abs(v[j])) <= 1e-3 * abs(v[i])


def test_norms_and_gauges(free_solution):
    g, p, f, sol = free_solution
    mode = lab.ModeParams(3, 0)
    n0 = lab.weighted_norm(sol.v, lab.WeightSpec(0, -0.75), mode)
    assert n0 > 0.0
    rep = lab.estimate_gauge(sol, f, "1")
    assert rep["ratio_defined"]
    assert rep["lhs"] > 0.0
    assert set(lab.estimate_catalog()) >= {"1", "3", "11", "28", "40"}


def test_energies_positivity(free_solution):
    g, p, f, sol = free_solution
    s = lab.spherical_energies(sol, f)
    assert all(m >= 0.0 for m in s["M"])
    assert all(n >= 0.0 for n in s["N"])
    for F, M, R in zip(s["F"], s["M"], s["R"]):
        assert abs(F) <= math.sqrt(M * R) * (1 + 1e-12) + 1e-300


def test_charge_identity(free_solution):
    g, p, f, sol = free_solution
    rep = lab.charge_residual(sol, f)
    assert rep["relative_residual"] <= 1e-8
    assert rep["flux_rmax"] >= 0.0


def test_ladder_and_sommerfeld():
    g = lab.standard_grid(100.0, 1 << 12)
    p = lab.free_mode_problem(3, 0, 1.0, 0.0, "plus", g)
    f = lab.smooth_bump(g, 5.0, 0.5, "l2")
    gsrc = lab.to_v_form(f, 3)
    lad = lab.epsilon_ladder(p, gsrc, [1e-1, 1e-2, 1e-3])
    assert lad["converged"]
    d = lad["cauchy_differences"]
    assert d[1] * 1.5 <= d[0]
    gauge, slope = lab.sommerfeld_gauge(lad["final"], 0.1)
    assert gauge >= 0.0


def test_matched_mode_and_quasimode():
    g = lab.standard_grid(4.0, 1 << 12)
    mm = lab.build_bessel_matching(4, 3, g)
    assert mm.v_at(0.25) == pytest.approx(0.25**5)
    assert mm.v_at(2.0) == pytest.approx(2.0**-4)
    assert mm.V_at(2.0) == 0.0

    q = lab.quasimode_profile(10, 3)
    assert q["lambda_l"] == 143.0
    assert q["residual_norm"] < q["chiU_norm"]


def test_evolution_round_trip():
    g = lab.standard_grid(60.0, 1 << 10)
    p = lab.free_mode_problem(3, 0, 1.0, 0.0, "plus", g)
    v0 = lab.RadialFunction(
        g, [r * math.exp(-r * r / 4.0) for r in g.r])
    traj = lab.evolve_schrodinger(p, v0, 0.02, 2.0, False)
    logs = traj.conserved_log
    assert abs(logs[-1] - logs[0]) <= 1e-8 * logs[0]

    obs = lab.local_observables(traj, 10.0)
    assert obs["local_mass"][0] > 0.0


def test_run_experiment(tmp_path):
    cfg = {
        "experiment": "lap_scan",
        "resolution": 1024,
        "l_grid": [0],
        "lambda_grid": [1.0],
        "eps_ladder": [0.1, 0.01],
        "out_dir": str(tmp_path),
    }
    res = lab.run_experiment(json.dumps(cfg))
    assert len(res["csv_files"]) == 1
    assert os.path.exists(res["csv_files"][0])
    assert os.path.exists(os.path.join(str(tmp_path), "manifest.json"))
    with open(res["csv_files"][0]) as fh:
        header = fh.readline().strip()
    assert header == "estimate_id,n,l,lambda,epsilon,sigma,lhs,rhs_factor,ratio"
