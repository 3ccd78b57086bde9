"""Integration tests for scenario runs."""

import json
import math

import pytest

from src.config.scenario import Task, load_scenario, parse_scenario, scenario_dir
from src.model.interfaces import OrbitSpec
from src.output.csv_writer import read_trajectory_csv
from src.output.figures import FigureDataError
from src.pipeline.runner import ScenarioRunner, run_scenario
from src.trajectory.analytic import orbit_state
from src.trajectory.integrator import integrate
from src.trajectory.interfaces import AnalyticTrajectory


def ids(report):
    return {r.check_id for r in report.records}


def records(report):
    return {r.check_id: r for r in report.records}


class TestAnalyticRun:
    """Tests for a run of the analytic task."""

    def test_files_and_report(self, scenario_dict, tmp_path):
        """Should write analytic.csv and report.json and pass."""
        report = run_scenario(parse_scenario(scenario_dict), out_dir=tmp_path)
        assert report.passed, report.failures
        assert report.files == ["analytic.csv", "report.json"]
        assert {"analytic.energy", "analytic.on_circle"} <= ids(report)

        rows = read_trajectory_csv(tmp_path / "analytic.csv")
        assert len(rows) == 257
        assert rows[-1]["t"] == pytest.approx(16.0 * math.sqrt(2.0) * math.pi)

        data = json.loads((tmp_path / "report.json").read_text())
        assert data["passed"] is True
        assert data["metadata"]["seed"] == 11
        assert data["metadata"]["tasks"] == ["analytic"]

    def test_json_only(self, scenario_dict, tmp_path):
        """Should skip the CSV when only JSON is requested."""
        scenario_dict["output"]["formats"] = ["json"]
        report = run_scenario(parse_scenario(scenario_dict), out_dir=tmp_path)
        assert report.files == ["report.json"]
        assert not (tmp_path / "analytic.csv").exists()

    def test_task_subset(self, scenario_dict, tmp_path):
        """Should run only the given tasks."""
        scenario_dict["tasks"] = ["analytic", "invariants"]
        report = run_scenario(parse_scenario(scenario_dict), out_dir=tmp_path, tasks=[Task.ANALYTIC])
        assert report.metadata["tasks"] == ["analytic"]
        assert not any(i.startswith("invariants.") for i in ids(report))


class TestReferenceRun:
    """Tests for simulate, duality and invariants on the reference orbit."""

    @pytest.fixture
    def report(self, scenario_dict, tmp_path):
        scenario_dict["tasks"] = ["simulate", "duality", "invariants"]
        return run_scenario(parse_scenario(scenario_dict), out_dir=tmp_path)

    def test_passes(self, report):
        """Should pass every recorded check."""
        assert report.passed, report.failures

    def test_simulation_checks(self, report):
        """Should fit the simulated circle and close the orbit."""
        assert {"simulate.energy_drift", "simulate.center", "simulate.radius", "simulate.closure"} <= ids(report)
        assert report.metadata["simulate_energy_drift"] < 1e-8

    def test_duality_checks(self, report):
        """Should check images, antipodality, momentum and time change."""
        expected = {
            "duality.image_circle", "duality.antipodality", "duality.random_images",
            "duality.random_antipodality", "duality.angular_momentum", "duality.time_dilation",
        }
        assert expected <= ids(report)
        assert report.metadata["dual_energy"] == pytest.approx(1.0 / 36.0)

    def test_invariant_checks(self, report):
        """Should check brackets, norm and orientation."""
        assert {"invariants.brackets", "invariants.brackets_fd", "invariants.norm",
                "invariants.orientation"} <= ids(report)
        assert report.metadata["integrals"]["Iy/Ix"] == pytest.approx(0.0, abs=1e-12)


class TestShippedScenarios:
    """Tests for the bundled scenario documents."""

    @pytest.mark.parametrize(
        "name", ["tilted", "quartic", "hyperbolic", "nonzero_energy", "verlet", "reference"]
    )
    def test_scenario_passes(self, name, tmp_path):
        """Should pass every check of each bundled scenario."""
        report = run_scenario(load_scenario(scenario_dir() / f"{name}.json"), out_dir=tmp_path)
        assert report.passed, report.failures
        for f in report.files:
            assert (tmp_path / f).exists()

    def test_hyperbolic_stops_at_border(self, tmp_path):
        """Should record the border stop and draw the disk family."""
        report = run_scenario(load_scenario(scenario_dir() / "hyperbolic.json"), out_dir=tmp_path)
        assert "simulate.border" in ids(report)
        assert "simulate.energy_drift" not in ids(report)
        svg = (tmp_path / "fig4.svg").read_text()
        assert 'id="boundary-circle"' in svg

    def test_quartic_line_image(self, tmp_path):
        """Should check the inversion image instead of the sphere."""
        report = run_scenario(load_scenario(scenario_dir() / "quartic.json"), out_dir=tmp_path)
        assert {"duality.line_image", "duality.quartic_scaling"} <= ids(report)
        assert "duality.time_dilation" not in ids(report)

    def test_verlet_records_drift_only(self, tmp_path):
        """Should write the symplectic run without tolerance checks."""
        report = run_scenario(load_scenario(scenario_dir() / "verlet.json"), out_dir=tmp_path)
        assert report.records == []
        assert report.metadata["simulate_energy_drift"] < 1e-5
        assert "simulate.csv" in report.files


class TestFigures:
    """Tests for the figures task."""

    def test_reference_figures(self, scenario_dict, tmp_path):
        """Should write one SVG per requested figure."""
        scenario_dict["tasks"] = ["figures"]
        scenario_dict["figures"] = ["fig1", "fig2", "fig3", "trajectory"]
        scenario_dict["output"]["formats"] = ["svg"]
        report = run_scenario(parse_scenario(scenario_dict), out_dir=tmp_path)
        assert report.files == ["fig1.svg", "fig2.svg", "fig3.svg", "trajectory.svg"]
        assert 'id="chord"' in (tmp_path / "fig1.svg").read_text()

    def test_same_seed_same_bytes(self, scenario_dict, tmp_path):
        """Should reproduce the random great circles from the seed."""
        scenario_dict["tasks"] = ["figures"]
        scenario_dict["figures"] = ["fig3"]
        scenario_dict["output"]["formats"] = ["svg"]
        config = parse_scenario(scenario_dict)
        run_scenario(config, out_dir=tmp_path / "a")
        run_scenario(config, out_dir=tmp_path / "b")
        assert (tmp_path / "a" / "fig3.svg").read_bytes() == (tmp_path / "b" / "fig3.svg").read_bytes()

    def test_wrong_regime(self, scenario_dict, tmp_path):
        """Should refuse the disk figure for sigma > 0."""
        scenario_dict["tasks"] = ["figures"]
        scenario_dict["figures"] = ["fig4"]
        with pytest.raises(FigureDataError):
            ScenarioRunner(parse_scenario(scenario_dict), out_dir=tmp_path).run()


class TestCenteredOrbit:
    """Tests for the l = 0 orbit, which coincides with the equator circle."""

    @pytest.fixture
    def centered_dict(self, scenario_dict):
        scenario_dict["initial"]["orbit"] = {"R": math.sqrt(3.0), "l": 0.0}
        return scenario_dict

    def test_duality_passes(self, centered_dict, tmp_path):
        """Should record antipodality as coincidence instead of raising."""
        centered_dict["tasks"] = ["duality"]
        report = run_scenario(parse_scenario(centered_dict), out_dir=tmp_path)
        assert report.passed, report.failures
        record = records(report)["duality.antipodality"]
        assert record.description == "orbit coincides with the equator circle"
        assert record.max_deviation < 1e-12

    def test_invariants_skip_orientation(self, centered_dict, tmp_path):
        """Should check the vanishing planar components in place of atan2(Iy, Ix)."""
        centered_dict["tasks"] = ["analytic", "invariants"]
        report = run_scenario(parse_scenario(centered_dict), out_dir=tmp_path)
        assert report.passed, report.failures
        assert "invariants.planar_vanishes" in ids(report)
        assert "invariants.orientation" not in ids(report)
        assert "integrals" not in report.metadata


class TestInvariantTolerances:
    """Tests for the tolerances the invariants task records."""

    def test_analytic_norm_tolerance(self, scenario_dict, tmp_path):
        """Should hold closed-form states to the tight norm tolerance."""
        scenario_dict["tasks"] = ["analytic", "invariants"]
        report = run_scenario(parse_scenario(scenario_dict), out_dir=tmp_path)
        norm = records(report)["invariants.norm"]
        assert norm.tolerance == 1e-10
        assert norm.passed


class TestQuarticDuality:
    """Tests for the inversion check on the sigma = 0 orbit."""

    def test_records_inversion_lengths(self, tmp_path):
        """Should record R0, d and the image radius."""
        report = run_scenario(load_scenario(scenario_dir() / "quartic.json"), out_dir=tmp_path)
        assert report.passed, report.failures
        assert "duality.inverted_orbit" in ids(report)
        inversion = report.metadata["inversion"]
        assert inversion["R0"] == pytest.approx(1.0)
        assert inversion["d"] == pytest.approx(0.5)
        assert inversion["Rimage"] == pytest.approx(1.0)

    def test_without_simulate_task(self, tmp_path):
        """Should integrate the orbit itself when simulate did not run."""
        config = load_scenario(scenario_dir() / "quartic.json").with_overrides(tasks=[Task.DUALITY])
        report = run_scenario(config, out_dir=tmp_path)
        assert report.passed, report.failures
        assert "duality.line_image" in ids(report)
        assert report.files == ["report.json"]

    def test_wrong_orbit_fails(self, tmp_path):
        """Should fail when the integrated path is not the inverted line."""
        runner = ScenarioRunner(load_scenario(scenario_dir() / "quartic.json"), out_dir=tmp_path)
        wrong = OrbitSpec(R=1.2, l=1.2)
        c = AnalyticTrajectory.from_orbit(wrong).c
        runner._trajectories["simulate"] = integrate(
            runner.params, orbit_state(wrong, 1.0, 1.0, 0.0), 0.8 * math.pi * 1.2 / abs(c), samples=257,
        )
        runner._duality()
        found = records(runner.report)
        assert not found["duality.line_image"].passed
        assert not found["duality.inverted_orbit"].passed
