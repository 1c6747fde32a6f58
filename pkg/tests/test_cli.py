"""End-to-end tests for the command-line interface."""

import subprocess
import sys

import numpy as np
import pytest

from pottscut import (
    Partition,
    add_noise,
    effective_resistance_weights,
    generate_case,
    grid_graph,
    induced_partition,
)
from pottscut import fileio
from pottscut.cli import dispatch


def write_path_graph(tmp_path, n, name="g.graph"):
    p = tmp_path / name
    lines = [f"{n} {n - 1}"] + [f"{i} {i + 1}" for i in range(1, n)]
    p.write_text("\n".join(lines) + "\n")
    return p


def write_signal(tmp_path, values, name="y.signal"):
    p = tmp_path / name
    p.write_text("\n".join(repr(float(v)) for v in values) + "\n")
    return p


class TestUsageErrors:
    def test_no_command(self, capsys):
        assert dispatch([]) == 2
        capsys.readouterr()

    def test_unknown_command(self, capsys):
        assert dispatch(["paint"]) == 2
        capsys.readouterr()

    def test_unknown_flag(self, capsys):
        assert dispatch(["eval", "--fast", "a", "b"]) == 2
        capsys.readouterr()

    def test_bad_case_choice(self, capsys):
        code = dispatch(
            ["simulate", "--case", "7", "--side", "8", "--kappa", "1",
             "--sigma", "0", "--seed", "0", "--out-prefix", "x"]
        )
        assert code == 2
        capsys.readouterr()


class TestResistance:
    def test_stdout_cycle(self, tmp_path, capsys):
        p = tmp_path / "c4.graph"
        p.write_text("4 4\n1 2\n2 3\n3 4\n1 4\n")
        assert dispatch(["resistance", str(p)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4
        assert lines[0] == "1 2 0.75"

    def test_file_output_round_trips(self, tmp_path, capsys):
        p = tmp_path / "c4.graph"
        p.write_text("4 4\n1 2\n2 3\n3 4\n1 4\n")
        out = tmp_path / "w.weights"
        assert dispatch(["resistance", str(p), "-o", str(out)]) == 0
        capsys.readouterr()
        g = fileio.load_graph(p)
        w = fileio.load_weights(out, g)
        assert np.allclose(w, effective_resistance_weights(g), atol=1e-12)

    def test_missing_file(self, tmp_path, capsys):
        assert dispatch(["resistance", str(tmp_path / "nope.graph")]) == 3
        assert "invalid input" in capsys.readouterr().err

    def test_malformed_graph(self, tmp_path, capsys):
        p = tmp_path / "bad.graph"
        p.write_text("2 1\n1 5\n")
        assert dispatch(["resistance", str(p)]) == 3
        err = capsys.readouterr().err
        assert "invalid input" in err


class TestSolve:
    def test_fixed_lambda_two_piece(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [0.0, 0.0, 8.0, 8.0])
        prefix = str(tmp_path / "fit")
        code = dispatch(
            ["solve", str(g), str(y), "--lambda", "1", "--delta", "0.5",
             "--tau", "0", "--out-prefix", prefix]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("lambda=1.0 delta=0.5 tau=0.0 ")
        assert "objective=17.0 blocks=2" in out
        part = fileio.load_partition(prefix + ".partition")
        assert part.blocks == (frozenset({1, 2}), frozenset({3, 4}))
        mu = fileio.load_signal(prefix + ".fit")
        assert mu.tolist() == [0.0, 0.0, 4.0, 4.0]

    def test_recursive_flag_refits_blocks(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [0.0, 0.0, 8.0, 8.0])
        prefix = str(tmp_path / "fit")
        code = dispatch(
            ["solve", str(g), str(y), "--lambda", "1", "--delta", "0.5",
             "--tau", "0", "--recursive", "--out-prefix", prefix]
        )
        assert code == 0
        assert "objective=1.0 blocks=2" in capsys.readouterr().out
        mu = fileio.load_signal(prefix + ".fit")
        assert mu.tolist() == [0.0, 0.0, 8.0, 8.0]

    def test_bic_over_lambda_grid(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [0.0, 0.0, 8.0, 8.0])
        prefix = str(tmp_path / "fit")
        code = dispatch(
            ["solve", str(g), str(y), "--delta", "0.5", "--tau", "0",
             "--lambdas", "0.1,1000", "--recursive", "--out-prefix", prefix]
        )
        assert code == 0
        assert capsys.readouterr().out.startswith("lambda=0.1 ")
        mu = fileio.load_signal(prefix + ".fit")
        assert mu.tolist() == [0.0, 0.0, 8.0, 8.0]

    def test_defaults_derive_from_noise_proxy(self, tmp_path, capsys):
        # Defaults: tau = sigma_hat^2, delta = sigma_hat / sqrt(n).  On this
        # tiny instance the jump inflates sigma_hat^2 to 64/3, so the flag
        # margin suppresses every split and the fit stays constant.
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [0.0, 0.0, 8.0, 8.0])
        prefix = str(tmp_path / "fit")
        assert dispatch(["solve", str(g), str(y), "--out-prefix", prefix]) == 0
        assert "blocks=1" in capsys.readouterr().out
        mu = fileio.load_signal(prefix + ".fit")
        assert mu.tolist() == [4.0] * 4

    def test_constant_signal_single_block(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 5)
        y = write_signal(tmp_path, [2.5] * 5)
        prefix = str(tmp_path / "fit")
        code = dispatch(
            ["solve", str(g), str(y), "--lambda", "1", "--delta", "0.5",
             "--tau", "0", "--out-prefix", prefix]
        )
        assert code == 0
        assert "blocks=1" in capsys.readouterr().out
        part = fileio.load_partition(prefix + ".partition")
        assert part.blocks == (frozenset({1, 2, 3, 4, 5}),)

    def test_named_weightings_accepted(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [0.0, 0.0, 8.0, 8.0])
        for mode in ("unit", "resistance"):
            prefix = str(tmp_path / f"fit_{mode}")
            code = dispatch(
                ["solve", str(g), str(y), "--lambda", "1", "--delta", "0.5",
                 "--tau", "0", "--weights", mode, "--out-prefix", prefix]
            )
            assert code == 0
        capsys.readouterr()

    def test_weights_file(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [0.0, 0.0, 8.0, 8.0])
        wfile = tmp_path / "w.weights"
        wfile.write_text("1 2 1.0\n2 3 100.0\n3 4 1.0\n")
        prefix = str(tmp_path / "fit")
        code = dispatch(
            ["solve", str(g), str(y), "--lambda", "1", "--delta", "0.5",
             "--tau", "0", "--weights", str(wfile), "--out-prefix", prefix]
        )
        assert code == 0
        capsys.readouterr()
        mu = fileio.load_signal(prefix + ".fit")
        # The heavy middle edge blocks the clean cut; peeling an endpoint
        # across a unit edge still pays off.
        assert len(set(mu.tolist())) == 2

    def test_signal_length_mismatch(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [1.0, 2.0])
        code = dispatch(
            ["solve", str(g), str(y), "--lambda", "1",
             "--out-prefix", str(tmp_path / "fit")]
        )
        assert code == 3
        assert "invalid input" in capsys.readouterr().err

    def test_failure_rolls_back_outputs(self, tmp_path, capsys):
        g = write_path_graph(tmp_path, 4)
        y = write_signal(tmp_path, [0.0, 0.0, 8.0, 8.0])
        prefix = tmp_path / "fit"
        # Writing <prefix>.fit will hit a directory and fail after
        # <prefix>.partition was already written.
        (tmp_path / "fit.fit").mkdir()
        code = dispatch(
            ["solve", str(g), str(y), "--lambda", "1", "--delta", "0.5",
             "--tau", "0", "--out-prefix", str(prefix)]
        )
        assert code == 3
        assert not (tmp_path / "fit.partition").exists()
        capsys.readouterr()


class TestSimulate:
    def test_round_trip(self, tmp_path, capsys):
        prefix = str(tmp_path / "inst")
        code = dispatch(
            ["simulate", "--case", "3", "--side", "8", "--kappa", "2",
             "--sigma", "0.5", "--seed", "7", "--out-prefix", prefix]
        )
        assert code == 0
        capsys.readouterr()
        g = fileio.load_graph(prefix + ".graph")
        assert g.edge_keys == grid_graph(8).edge_keys
        mu_star = generate_case(3, 8, 2.0)
        truth = fileio.load_partition(prefix + ".truth")
        assert truth == induced_partition(mu_star)
        Y = fileio.load_signal(prefix + ".signal")
        assert np.array_equal(Y, add_noise(mu_star, 0.5, 7))

    def test_bad_parameters(self, tmp_path, capsys):
        base = ["simulate", "--case", "1", "--kappa", "1", "--out-prefix",
                str(tmp_path / "x")]
        assert dispatch(base + ["--side", "1", "--sigma", "0", "--seed", "0"]) == 3
        assert dispatch(base + ["--side", "8", "--sigma", "-1", "--seed", "0"]) == 3
        assert dispatch(base + ["--side", "8", "--sigma", "0", "--seed", "-1"]) == 3
        capsys.readouterr()


class TestEval:
    def test_identical_partitions(self, tmp_path, capsys):
        p = Partition((frozenset({1, 2}), frozenset({3, 4})))
        a = tmp_path / "a.partition"
        b = tmp_path / "b.partition"
        fileio.save_partition(a, p)
        fileio.save_partition(b, p)
        assert dispatch(["eval", str(a), str(b)]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_worked_distance(self, tmp_path, capsys):
        a = tmp_path / "a.partition"
        b = tmp_path / "b.partition"
        fileio.save_partition(
            a, Partition((frozenset({1, 2, 3}), frozenset({4, 5, 6})))
        )
        fileio.save_partition(
            b, Partition((frozenset({1, 2}), frozenset({3, 4, 5, 6})))
        )
        assert dispatch(["eval", str(a), str(b)]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_mismatched_node_sets(self, tmp_path, capsys):
        a = tmp_path / "a.partition"
        b = tmp_path / "b.partition"
        fileio.save_partition(a, Partition((frozenset({1, 2}),)))
        fileio.save_partition(b, Partition((frozenset({1, 2, 3}),)))
        assert dispatch(["eval", str(a), str(b)]) == 3
        capsys.readouterr()


class TestBench:
    def write_config(self, tmp_path, text):
        p = tmp_path / "run.cfg"
        p.write_text(text)
        return p

    def test_smoke(self, tmp_path, capsys):
        cfg = self.write_config(
            tmp_path,
            "# a desk-scale run\n"
            "case = 3\nside = 8\nkappa = 2.0\nsigma = 0.25\n"
            "repetitions = 2\nseed = 1\nlambdas = 0.01,1\n",
        )
        out_dir = tmp_path / "out"
        assert dispatch(["bench", str(cfg), "--out-dir", str(out_dir)]) == 0
        stdout = capsys.readouterr().out
        assert stdout.startswith("case=3 side=8 kappa=2.0 reps=2 ")
        report = (out_dir / "report.csv").read_text().splitlines()
        assert report[1] == "case,kappa,side,rep,seed,lambda,hausdorff,runtime_ms"
        assert len(report) == 4
        summary = (out_dir / "summary.csv").read_text().splitlines()
        assert summary[1].startswith("case,kappa,side,repetitions,median_")

    def test_pgm_flag(self, tmp_path, capsys):
        cfg = self.write_config(
            tmp_path,
            "case = 1\nside = 8\nkappa = 2.0\nsigma = 0.1\n"
            "repetitions = 1\nseed = 0\nlambdas = 0.1\n",
        )
        out_dir = tmp_path / "out"
        code = dispatch(
            ["bench", str(cfg), "--out-dir", str(out_dir), "--pgm"]
        )
        assert code == 0
        capsys.readouterr()
        pgms = sorted(p.name for p in out_dir.glob("*.pgm"))
        assert pgms == ["rep000_data.pgm", "rep000_fit.pgm", "rep000_truth.pgm"]

    def test_missing_keys(self, tmp_path, capsys):
        cfg = self.write_config(tmp_path, "case = 1\nside = 8\n")
        assert dispatch(["bench", str(cfg), "--out-dir", str(tmp_path / "o")]) == 3
        assert "missing keys" in capsys.readouterr().err

    def test_unknown_key(self, tmp_path, capsys):
        cfg = self.write_config(
            tmp_path,
            "case = 1\nside = 8\nkappa = 1\nsigma = 0\n"
            "repetitions = 1\nseed = 0\nturbo = yes\n",
        )
        assert dispatch(["bench", str(cfg), "--out-dir", str(tmp_path / "o")]) == 3
        err = capsys.readouterr().err
        assert "turbo" in err and ":7:" in err

    def test_bad_value_reports_line(self, tmp_path, capsys):
        cfg = self.write_config(
            tmp_path,
            "case = 1\nside = eight\nkappa = 1\nsigma = 0\n"
            "repetitions = 1\nseed = 0\n",
        )
        assert dispatch(["bench", str(cfg), "--out-dir", str(tmp_path / "o")]) == 3
        assert ":2:" in capsys.readouterr().err


class TestConsoleScript:
    def test_installed_entry_point(self, tmp_path):
        a = tmp_path / "a.partition"
        fileio.save_partition(a, Partition((frozenset({1, 2}),)))
        proc = subprocess.run(
            [sys.executable, "-c",
             "from pottscut.cli import main; main()",
             "eval", str(a), str(a)],
            capture_output=True, text=True,
        )
        # argparse consumes sys.argv[1:]; the -c payload occupies argv[0].
        assert proc.returncode == 0
        assert proc.stdout.strip() == "0"
