import json

import numpy as np
import pytest

from twosample import (
    NullDrawConfig,
    block_summary,
    derive_seed,
    load_matrix_csv,
    run_realdata_blocks,
    run_test,
)
from twosample.cli import main


def _write_matrix(path, matrix):
    with open(path, "w") as fh:
        for row in matrix:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


@pytest.fixture
def sample_pair(tmp_path):
    rng = np.random.default_rng(20250819)
    x = rng.standard_normal((12, 7))
    y = rng.standard_normal((14, 7))
    x_path = tmp_path / "x.csv"
    y_path = tmp_path / "y.csv"
    _write_matrix(x_path, x)
    _write_matrix(y_path, y)
    return x, y, str(x_path), str(y_path)


class TestLoadMatrixCsv:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "m.csv"
        matrix = np.array([[1.5, -2.0], [0.25, 3.0], [7.0, 0.125]])
        _write_matrix(path, matrix)
        assert np.array_equal(load_matrix_csv(path), matrix)

    def test_header_row_is_skipped(self, tmp_path):
        path = tmp_path / "h.csv"
        path.write_text("g1,g2\n1,2\n3,4\n")
        assert np.array_equal(load_matrix_csv(path), [[1.0, 2.0], [3.0, 4.0]])

    def test_ragged_rows_name_the_line(self, tmp_path):
        path = tmp_path / "r.csv"
        path.write_text("1,2,3\n4,5\n")
        with pytest.raises(ValueError, match="line 2"):
            load_matrix_csv(path)

    def test_non_numeric_cell_names_the_line(self, tmp_path):
        path = tmp_path / "n.csv"
        path.write_text("g1,g2\n1,2\nbad,4\n")
        with pytest.raises(ValueError, match="line 3"):
            load_matrix_csv(path)

    def test_non_finite_value_rejected(self, tmp_path):
        path = tmp_path / "f.csv"
        path.write_text("1,nan\n2,3\n")
        with pytest.raises(ValueError, match="line 1"):
            load_matrix_csv(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "e.csv"
        path.write_text("")
        with pytest.raises(ValueError, match="no data rows"):
            load_matrix_csv(path)

    def test_header_only_rejected(self, tmp_path):
        path = tmp_path / "ho.csv"
        path.write_text("a,b\n")
        with pytest.raises(ValueError, match="no data rows"):
            load_matrix_csv(path)

    def test_blank_lines_ignored(self, tmp_path):
        path = tmp_path / "b.csv"
        path.write_text("1,2\n\n3,4\n")
        assert np.array_equal(load_matrix_csv(path), [[1.0, 2.0], [3.0, 4.0]])


class TestRunRealdataBlocks:
    def test_blocks_partition_and_drop_remainder(self, sample_pair):
        x, y, _, _ = sample_pair
        reports = run_realdata_blocks(x, y, 3, draws=200, seed=5)
        assert [(b.start, b.stop) for b in reports] == [(0, 3), (3, 6)]
        summary = block_summary(reports)
        assert sum(summary.histogram) == 2
        assert len(summary.histogram) == 20

    def test_single_block_when_width_is_column_count(self, sample_pair):
        x, y, _, _ = sample_pair
        reports = run_realdata_blocks(x, y, 7, draws=200, seed=5)
        assert len(reports) == 1

    def test_width_beyond_columns_raises(self, sample_pair):
        x, y, _, _ = sample_pair
        with pytest.raises(ValueError, match="width"):
            run_realdata_blocks(x, y, 8, draws=200, seed=5)

    def test_block_reports_do_not_depend_on_other_blocks(self, sample_pair):
        # block b is keyed by (seed, b), so a standalone run reproduces it
        x, y, _, _ = sample_pair
        reports = run_realdata_blocks(x, y, 3, draws=200, seed=5)
        config = NullDrawConfig(draws=200, alpha=0.05, seed=derive_seed(5, 1))
        standalone = run_test(x[:, 3:6], y[:, 3:6], "sign", "plain", config)
        assert reports[1].report == standalone


class TestCliTest:
    def test_json_report_keys_and_determinism(self, sample_pair, tmp_path):
        _, _, x_path, y_path = sample_pair
        out_a = tmp_path / "a.json"
        out_b = tmp_path / "b.json"
        for out in (out_a, out_b):
            code = main(
                [
                    "test",
                    "--x", x_path,
                    "--y", y_path,
                    "--kernel", "sign",
                    "--estimator", "plain",
                    "--draws", "500",
                    "--seed", "11",
                    "--json", str(out),
                ]
            )
            assert code == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        payload = json.loads(out_a.read_text())
        assert set(payload) == {
            "statistic", "cutoff", "p_value", "reject", "p", "n1", "n2",
            "kernel", "estimator", "alpha", "M", "seed",
        }
        assert payload["p"] == 7
        assert payload["n1"] == 12
        assert payload["n2"] == 14
        assert payload["M"] == 500
        assert isinstance(payload["reject"], bool)

    def test_default_seed_is_printed(self, sample_pair, capsys):
        _, _, x_path, y_path = sample_pair
        assert main(["test", "--x", x_path, "--y", y_path, "--draws", "200"]) == 0
        assert "using fixed default" in capsys.readouterr().out

    def test_usage_error_exits_2(self, sample_pair):
        _, _, x_path, y_path = sample_pair
        with pytest.raises(SystemExit) as err:
            main(["test", "--x", x_path, "--y", y_path, "--kernel", "rbf"])
        assert err.value.code == 2

    def test_data_error_exits_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("1,2\n3\n")
        good = tmp_path / "good.csv"
        good.write_text("1,2\n3,4\n5,6\n")
        code = main(["test", "--x", str(bad), "--y", str(good), "--seed", "1"])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exits_1(self, tmp_path, capsys):
        good = tmp_path / "good.csv"
        good.write_text("1,2\n3,4\n")
        code = main(["test", "--x", str(tmp_path / "nope.csv"), "--y", str(good), "--seed", "1"])
        assert code == 1


class TestCliBlocks:
    def test_json_structure(self, sample_pair, tmp_path):
        _, _, x_path, y_path = sample_pair
        out = tmp_path / "blocks.json"
        code = main(
            [
                "blocks",
                "--x", x_path,
                "--y", y_path,
                "--width", "3",
                "--draws", "200",
                "--seed", "9",
                "--json", str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["width"] == 3
        assert len(payload["blocks"]) == 2
        assert sum(payload["summary"]["histogram"]) == 2
        pvals = [b["p_value"] for b in payload["blocks"]]
        assert abs(payload["summary"]["mean_p_value"] - np.mean(pvals)) < 1e-15

    def test_width_error_exits_1(self, sample_pair, capsys):
        _, _, x_path, y_path = sample_pair
        code = main(["blocks", "--x", x_path, "--y", y_path, "--width", "8", "--seed", "1"])
        assert code == 1
        assert "width" in capsys.readouterr().err


class TestCliSimulate:
    def test_runs_configs_and_writes_outputs(self, tmp_path, capsys):
        config = {
            "scenario_id": "cli-tiny",
            "family": "gaussian",
            "cov_form": "identity",
            "p": 3,
            "n1": 10,
            "n2": 12,
            "deltas": [0.0],
            "kernel": "sign",
            "estimator": "plain",
            "draws": 100,
            "replications": 10,
        }
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps(config))
        out_dir = tmp_path / "results"
        code = main(["simulate", "--config", str(config_path), "--out", str(out_dir)])
        assert code == 0
        assert "no seed in config" in capsys.readouterr().out
        csv_path = out_dir / "cli-tiny.csv"
        manifest_path = out_dir / "cli-tiny.json"
        assert csv_path.exists() and manifest_path.exists()
        manifest = json.loads(manifest_path.read_text())
        assert manifest["scenario_id"] == "cli-tiny"
        assert manifest["seed"] == 12345  # the printed fixed default
        header = csv_path.read_text().splitlines()[0]
        assert header.split(",")[0] == "scenario_id"

    def test_bad_config_exits_1(self, tmp_path, capsys):
        config_path = tmp_path / "config.json"
        config_path.write_text(json.dumps({"scenario_id": "x"}))
        code = main(["simulate", "--config", str(config_path), "--out", str(tmp_path / "o")])
        assert code == 1
