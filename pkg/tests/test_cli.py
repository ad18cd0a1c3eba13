import json

import numpy as np
import pytest

from pseudospec import io, toeplitz
from pseudospec.cli import main
from pseudospec.families import generate


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "m.json"
    assert run("generate", "--family", "tridiag_toeplitz", "--n", "5",
               "--seed", "2", "--out", path) == 0
    return path


class TestIoRoundTrip:
    def test_matrix_round_trip_exact(self, tmp_path):
        A, pattern, _ = generate("pentadiag_toeplitz", 6, seed=9)
        path = tmp_path / "m.json"
        io.save_matrix(str(path), A, pattern)
        B, loaded = io.load_matrix(str(path))
        np.testing.assert_array_equal(A, B)
        assert loaded == pattern

    def test_structure_validated_on_load(self, tmp_path):
        path = tmp_path / "bad.json"
        A = np.array([[1.0, 2.0], [3.0, 4.0]])  # not Toeplitz
        io.save_matrix(str(path), A, toeplitz(2, {-1, 0, 1}))
        from pseudospec.errors import BadParams

        with pytest.raises(BadParams):
            io.load_matrix(str(path))

    def test_cloud_round_trip(self, tmp_path):
        from pseudospec import SweepConfig, eig_pairs, full, sweep_wilkinson

        A, pattern, _ = generate("tridiag_toeplitz", 4, seed=0)
        cloud = sweep_wilkinson(
            A, eig_pairs(A), SweepConfig(pattern=full(4), epsilon=0.1, angles=5)
        )
        path = tmp_path / "c.csv"
        io.save_cloud(str(path), cloud, "abc123")
        loaded, header = io.load_cloud(str(path), dim_hint=4)
        np.testing.assert_array_equal(loaded.points, cloud.points)
        np.testing.assert_array_equal(loaded.source_eigen, cloud.source_eigen)
        assert loaded.epsilon == cloud.epsilon
        assert header["matrix_sha256"] == "abc123"


class TestGenerate:
    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert run("generate", "--family", "hamiltonian_random", "--n", "6",
                       "--seed", "4", "--out", path) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_family_exit_code(self, tmp_path, capsys):
        with pytest.raises(SystemExit):
            run("generate", "--family", "nope", "--n", "4", "--seed", "0",
                "--out", tmp_path / "x.json")

    def test_bad_dimension_exit_code(self, tmp_path):
        assert run("generate", "--family", "hamiltonian_random", "--n", "5",
                   "--seed", "0", "--out", tmp_path / "x.json") == 2


class TestAnalyze:
    def test_json_output(self, matrix_file, tmp_path):
        out = tmp_path / "report.json"
        assert run("analyze", matrix_file, "--json-out", out) == 0
        doc = json.loads(out.read_text())
        assert len(doc["eigenvalues"]) == 5
        assert doc["epsilon_structured"] >= doc["epsilon"]
        assert doc["pattern"]["kind"] == "toeplitz"

    def test_structure_override(self, matrix_file, tmp_path):
        out = tmp_path / "report.json"
        assert run("analyze", matrix_file, "--structure", "full",
                   "--json-out", out) == 0
        doc = json.loads(out.read_text())
        assert doc["kappa"] == doc["kappa_structured"]

    def test_missing_file_exit_code(self, tmp_path):
        assert run("analyze", tmp_path / "absent.json") == 2


class TestApprox:
    def test_cloud_written_with_expected_count(self, matrix_file, tmp_path):
        out = tmp_path / "cloud.csv"
        assert run("approx", matrix_file, "--angles", "1", "--pair", "0,1",
                   "--epsilon", "0.05", "--out", out) == 0
        cloud, header = io.load_cloud(str(out), dim_hint=5)
        assert len(cloud) == 2 * 1 * 5
        assert cloud.epsilon == 0.05
        assert header["matrix_sha256"] == io.matrix_hash(str(matrix_file))

    def test_deterministic_outputs(self, matrix_file, tmp_path):
        outs = []
        for name in ("c1.csv", "c2.csv"):
            out = tmp_path / name
            svg = tmp_path / (name + ".svg")
            assert run("approx", matrix_file, "--angles", "16",
                       "--baseline", "2", "--seed", "7",
                       "--out", out, "--svg", svg) == 0
            outs.append((out.read_bytes(), svg.read_bytes(),
                         (tmp_path / (name + ".baseline.csv")).read_bytes()))
        assert outs[0] == outs[1]

    def test_svg_is_valid_and_plots_points(self, matrix_file, tmp_path):
        out = tmp_path / "cloud.csv"
        svg = tmp_path / "plot.svg"
        assert run("approx", matrix_file, "--angles", "8", "--out", out,
                   "--svg", svg) == 0
        text = svg.read_text()
        assert text.startswith("<?xml")
        assert "<svg" in text and "</svg>" in text
        assert text.count("<circle") >= 2 * 8 * 5


class TestOracle:
    def test_inclusion_check_passes(self, matrix_file, tmp_path):
        out = tmp_path / "cloud.csv"
        assert run("approx", matrix_file, "--angles", "20", "--out", out) == 0
        assert run("oracle", matrix_file, "--res", "20x20", "--check", out) == 0

    def test_hash_mismatch_rejected(self, matrix_file, tmp_path):
        out = tmp_path / "cloud.csv"
        assert run("approx", matrix_file, "--angles", "4", "--out", out) == 0
        other = tmp_path / "other.json"
        assert run("generate", "--family", "tridiag_toeplitz", "--n", "5",
                   "--seed", "3", "--out", other) == 0
        assert run("oracle", other, "--res", "20x20", "--check", out) == 2

    def test_grid_output_and_abscissa(self, matrix_file, tmp_path):
        grid = tmp_path / "grid.csv"
        assert run("oracle", matrix_file, "--res", "30x30",
                   "--eps-list", "0.1", "0.2", "--out", grid) == 0
        text = grid.read_text()
        assert text.count("\n") == 30 * 30 + 3
        assert "resolution=30x30" in text

    def test_empty_level_set_exit_code(self, matrix_file, tmp_path):
        assert run("oracle", matrix_file, "--res", "20x20",
                   "--bounds", "100,101,100,101", "--eps-list", "1e-6") == 3

    def test_bad_bounds_exit_code(self, matrix_file):
        assert run("oracle", matrix_file, "--bounds", "0,1,2") == 2


class TestTrajectory:
    def test_writes_expected_points(self, matrix_file, tmp_path):
        out = tmp_path / "traj.csv"
        assert run("trajectory", matrix_file, "--eps-max", "0.1",
                   "--steps", "9", "--out", out) == 0
        cloud, _ = io.load_cloud(str(out), dim_hint=5)
        # two variants (raw and projected direction) x 5 eigenvalues x 9 steps
        assert len(cloud) == 2 * 5 * 9
        assert set(np.unique(cloud.angle_index)) == {0, 1}


class TestDefectiveExit:
    def test_numeric_failure_exit_code(self, tmp_path):
        path = tmp_path / "jordan.json"
        io.save_matrix(str(path), np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert run("analyze", path) == 3
