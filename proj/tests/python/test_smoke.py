"""Smoke tests for the pybind11 module (built by the CMake tree; the module
directory is passed via PLPDIM_MODULE_DIR)."""

import math
import os
import sys

import pytest

_mod_dir = os.environ.get("PLPDIM_MODULE_DIR")
if _mod_dir:
    sys.path.insert(0, _mod_dir)

plpdim = pytest.importorskip("_plpdim")

SCENARIO_DIR = os.environ.get("PLPDIM_SCENARIO_DIR", os.path.join(
    os.path.dirname(__file__), "..", "..", "scenarios"))


def reference_config(power_dbm=30.0, service_rate=1e6):
    return plpdim.RadioConfig(
        power_mw=plpdim.dbm_to_mw(power_dbm),
        prop_const=plpdim.db_to_linear(130.0),
        half_pathloss_exp=1.75,
        prb_bandwidth_hz=180e3,
        mimo_layers=2,
        noise_mw=plpdim.dbm_to_mw(-93.0),
        sinr_threshold=plpdim.db_to_linear(-10.0),
        service_rate_bps=service_rate,
        n_max=10**6,
    )


def test_sampling_reproducible():
    a = plpdim.sample_plp(5.0, 0.6, seed=42)
    b = plpdim.sample_plp(5.0, 0.6, seed=42)
    assert len(a.lines) == len(b.lines)
    assert all(x.r == y.r for x, y in zip(a.lines, b.lines))
    assert all(line.r <= 0.6 for line in a.lines)


def test_chord_and_mean_users():
    assert plpdim.chord_half_length(0.3, 0.5) == pytest.approx(0.4)
    assert plpdim.mean_users_in_disk(5.0, 2.0, 0.6) == pytest.approx(
        5.0 * 2.0 * math.pi * 0.36)


def test_link_budget():
    cfg = reference_config(power_dbm=60.0)
    assert plpdim.sinr(0.6, cfg, 0.0) == pytest.approx(1192.533598331748, rel=1e-10)
    assert plpdim.terminal_n(cfg) == 21
    rings = plpdim.ring_radii(cfg, 0.0)
    assert rings.radii_km[0] == 0.0
    assert all(b > a for a, b in zip(rings.radii_km, rings.radii_km[1:]))


def test_congestion_matches_oracle():
    prof = plpdim.DemandProfile([1.5, 0.5, 0.25])
    for m in range(0, 20):
        quad = plpdim.congestion_conditional(prof, m)
        oracle = plpdim.brute_force_ccdf(prof, m)
        assert quad == pytest.approx(oracle, abs=1e-8)
    assert plpdim.congestion_conditional(prof, 0) == 1.0
    assert plpdim.pgf_eval(prof, 1.0 + 0.0j) == pytest.approx(1.0)


def test_scenario_roundtrip():
    path = os.path.join(SCENARIO_DIR, "fig2_tau8.json")
    ls = plpdim.load_scenario(path)
    est = plpdim.congestion_avg(ls, 0)
    assert est.value == 1.0
    csv = plpdim.run_study("congestion", ls, threads=2)
    lines = [l for l in csv.splitlines() if not l.startswith("#")]
    assert lines[0] == "M,pi_analytic,pi_mc,mc_stderr"
    assert lines[1] == "0,1,1,0"


def test_dimension_trivial_load():
    path = os.path.join(SCENARIO_DIR, "fig3_lambda5.json")
    ls = plpdim.load_scenario(path)
    res = plpdim.dimension(ls, 0.999)
    assert res.m_star >= 1
    assert res.achieved_pi <= 0.999
