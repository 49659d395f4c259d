"""Mass-constrained minimization: descent invariants, classification, probes."""

import json

import numpy as np
import pytest

from hexnls.analytic import soliton_params, soliton_profile
from hexnls.calculus import GraphFunction, integrate_power
from hexnls.solver import (INITIALIZERS, BracketError, ResolutionError, SolverConfig,
                           bisect_critical_mass, demonstrate_unbounded,
                           euler_lagrange_residual, initial_function,
                           make_discretization, minimize, outcome_to_json,
                           squeezed_profile, trace_to_csv)
from hexnls.graph_core import build_line
from hexnls.honeycomb import build_honeycomb


@pytest.fixture(scope="module")
def lat():
    return build_honeycomb(4, 1.0)


@pytest.fixture(scope="module")
def line_outcome():
    return minimize(build_line(30.0), 4.0, 2.0, init="soliton-bump")


class TestConfigAndInputs:
    def test_invalid_config(self):
        with pytest.raises(ValueError):
            SolverConfig(step=0.0)
        with pytest.raises(ValueError):
            SolverConfig(residual_tol=-1.0)
        with pytest.raises(ValueError):
            SolverConfig(spread_threshold=1.5)

    def test_invalid_problem_parameters(self, lat):
        with pytest.raises(ValueError):
            minimize(lat, 2.0, 1.0)
        with pytest.raises(ValueError):
            minimize(lat, 7.0, 1.0)
        with pytest.raises(ValueError):
            minimize(lat, 3.0, -1.0)
        with pytest.raises(ValueError):
            minimize(lat, 3.0, 1.0, init="nosuch")

    @pytest.mark.parametrize("tag", INITIALIZERS)
    def test_initializers_have_exact_mass(self, lat, tag):
        u = initial_function(lat, tag, 3.0, 2.5, 9)
        assert integrate_power(u, 2) == pytest.approx(2.5, rel=1e-10)
        assert u.continuity_violations(tol=1e-12) == []


class TestDescentInvariants:
    def test_energy_monotone_and_converged(self, lat):
        out = minimize(lat, 3.0, 10.0, init="trial-eps")
        energies = [row["energy"] for row in out.trace]
        assert len(energies) > 1
        diffs = np.diff(energies)
        assert np.all(diffs <= 1e-12 * np.maximum(np.abs(energies[:-1]), 1.0))
        assert out.classification == "GroundState"
        assert out.final_energy < 0
        assert out.residual <= 1e-6

    def test_mass_conserved_by_minimizer(self, lat):
        out = minimize(lat, 3.0, 2.0, init="soliton-bump")
        assert out.minimizer is not None
        assert integrate_power(out.minimizer, 2) == pytest.approx(2.0, rel=1e-10)

    def test_deterministic(self, lat):
        o1 = minimize(lat, 3.0, 1.0, init="soliton-bump")
        o2 = minimize(lat, 3.0, 1.0, init="soliton-bump")
        assert o1.final_energy == o2.final_energy
        assert o1.iterations == o2.iterations

    def test_multi_start_not_worse_than_each_single(self, lat):
        multi = minimize(lat, 3.0, 1.0, init="multi")
        singles = [minimize(lat, 3.0, 1.0, init=tag).final_energy
                   for tag in INITIALIZERS]
        assert multi.final_energy <= min(singles) + 1e-9 * max(abs(min(singles)), 1.0)
        assert multi.init_used in INITIALIZERS

    def test_custom_initial_function(self, lat):
        u0 = initial_function(lat, "trial-eps", 3.0, 10.0, 9)
        out = minimize(lat, 3.0, 10.0, init=u0)
        assert out.init_used == "custom"
        assert out.classification == "GroundState"


class TestEulerLagrangeResidual:
    def test_converged_minimizer_stationary(self, line_outcome):
        lam, res = euler_lagrange_residual(line_outcome.minimizer, 4.0)
        assert res < 1e-6
        assert lam == pytest.approx(line_outcome.lagrange_multiplier, rel=1e-12)

    def test_random_function_nonstationary(self, lat):
        rng = np.random.default_rng(3)
        u = GraphFunction(lat.graph, rng.uniform(0.1, 1.0, (lat.graph.num_edges, 9)))
        _, res = euler_lagrange_residual(u, 3.0)
        assert res > 0.1

    def test_zero_mass_rejected(self, lat):
        u = GraphFunction(lat.graph, np.zeros((lat.graph.num_edges, 9)))
        with pytest.raises(ValueError):
            euler_lagrange_residual(u, 3.0)


class TestLineSolitonOracle:
    def test_ground_state_matches_sech_profile(self, line_outcome):
        out = line_outcome
        assert out.classification == "GroundState"
        assert out.final_energy < 0
        u = out.minimizer
        params = soliton_params(4.0, 2.0)
        t = np.linspace(0.0, 1.0, u.samples_per_edge)
        ref = np.empty_like(u.values)
        for e in u.graph.edges:
            x0, x1 = u.graph.vertices[e.tail].x, u.graph.vertices[e.head].x
            ref[e.id] = soliton_profile(params, x0 + (x1 - x0) * t)
        diff = GraphFunction(u.graph, np.abs(u.values) - ref)
        rel_l2 = np.sqrt(integrate_power(diff, 2) / 2.0)
        assert rel_l2 < 1e-2


class TestClassification:
    def test_subcritical_ground_state(self, lat):
        # mu large enough that the localized state beats the near-flat one on
        # this small truncation.
        out = minimize(lat, 3.0, 10.0)
        assert out.classification == "GroundState"
        assert out.minimizer is not None

    def test_supercritical_small_mass_spreads(self, lat):
        out = minimize(lat, 5.0, 0.01)
        assert out.classification == "SpreadToZero"
        assert out.minimizer is None
        assert out.final_energy >= -1e-6

    def test_uniform_start_is_discrete_critical_point(self, lat):
        out = minimize(lat, 3.5, 0.01, init="uniform")
        assert out.classification == "SpreadToZero"
        assert out.residual < 1e-10

    @pytest.mark.parametrize("mu", [0.1, 10.0])
    def test_p6_never_ground_state(self, lat, mu):
        out = minimize(lat, 6.0, mu)
        assert out.classification != "GroundState"


@pytest.fixture(scope="module")
def bracket(lat):
    return bisect_critical_mass(lat, 5.0, 1e-3, 100.0, tol=0.10)


class TestBisectCriticalMass:
    def test_bracket_properties(self, lat, bracket):
        mu_star, (lo, hi) = bracket
        assert 1e-3 < lo < mu_star < hi < 100.0
        assert (hi - lo) <= 0.10 * 0.5 * (hi + lo) + 1e-12
        assert minimize(lat, 5.0, lo).classification == "SpreadToZero"
        assert minimize(lat, 5.0, hi).classification == "GroundState"

    def test_invalid_bracket_raises(self, lat):
        with pytest.raises(BracketError):
            bisect_critical_mass(lat, 5.0, 50.0, 100.0, tol=0.2)

    def test_invalid_power(self, lat):
        with pytest.raises(ValueError):
            bisect_critical_mass(lat, 3.0, 0.01, 10.0)


class TestCriticalPowerProbes:
    def test_large_mass_unbounded_below(self, lat):
        energies = demonstrate_unbounded(lat, 10.0, [1.0, 0.5, 0.25, 0.125])
        assert all(b < a for a, b in zip(energies, energies[1:]))
        assert energies[-1] < -10.0

    def test_small_mass_bounded(self, lat):
        energies = demonstrate_unbounded(lat, 0.01, [1.0, 0.5, 0.25, 0.125])
        assert all(e >= -1e-6 for e in energies)

    def test_sample_refinement_gate(self, lat):
        w = 0.5
        e1 = demonstrate_unbounded(lat, 10.0, [w], samples_per_edge=33)[0]
        e2 = demonstrate_unbounded(lat, 10.0, [w], samples_per_edge=65)[0]
        assert abs(e2 - e1) < 1e-3 * abs(e1)

    def test_under_resolved_width_refused(self, lat):
        with pytest.raises(ResolutionError):
            squeezed_profile(lat, 1.0, 0.05, samples_per_edge=9)

    def test_invalid_width_sequences(self, lat):
        with pytest.raises(ValueError):
            demonstrate_unbounded(lat, 1.0, [0.5, 1.0])
        with pytest.raises(ValueError):
            demonstrate_unbounded(lat, 1.0, [1.0, -0.5])

    def test_squeezed_profile_mass(self, lat):
        u = squeezed_profile(lat, 3.0, 0.5)
        assert integrate_power(u, 2) == pytest.approx(3.0, rel=1e-10)


class TestArtifacts:
    def test_trace_csv_shape(self, lat):
        out = minimize(lat, 3.0, 1.0, init="uniform")
        text = trace_to_csv(out.trace)
        lines = text.strip().split("\n")
        assert lines[0] == "iteration,energy,residual,step,boundary_mass_fraction"
        assert len(lines) == 1 + len(out.trace)

    def test_outcome_json_round_trip(self, lat):
        cfg = SolverConfig()
        out = minimize(lat, 3.0, 1.0, cfg=cfg, init="trial-eps")
        doc = json.loads(outcome_to_json(out, cfg, 3.0, 1.0))
        assert doc["classification"] == out.classification
        assert doc["final_energy"] == out.final_energy
        assert doc["p"] == 3.0 and doc["mu"] == 1.0
        assert doc["config"]["residual_tol"] == cfg.residual_tol

    def test_discretization_helper_uses_free_boundary(self, lat):
        dz = make_discretization(lat, 9)
        assert sorted(dz.boundary_vertices) == sorted(lat.boundary_vertices())
