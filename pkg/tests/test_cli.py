import json

import numpy as np

from sketchlab.cli import main
from sketchlab.dataio import load_matrix_market


def write_graph(tmp_path):
    p = tmp_path / "g.txt"
    lines = ["# demo graph"]
    rng = np.random.default_rng(0)
    for _ in range(120):
        i, j = rng.integers(1, 31, size=2)
        if i != j:
            lines.append(f"{i} {j}")
    p.write_text("\n".join(lines) + "\n")
    return p


class TestGen:
    def test_deterministic_bytes(self, tmp_path):
        a1, a2 = tmp_path / "a1.mtx", tmp_path / "a2.mtx"
        argv = ["gen", "--n", "100", "--d", "20", "--k", "5",
                "--zeta", "10", "--seed", "7"]
        assert main(argv + ["--out", str(a1)]) == 0
        assert main(argv + ["--out", str(a2)]) == 0
        assert a1.read_bytes() == a2.read_bytes()

    def test_loads_back(self, tmp_path):
        out = tmp_path / "a.mtx"
        assert main(["gen", "--n", "30", "--d", "8", "--k", "2",
                     "--seed", "1", "--out", str(out)]) == 0
        m = load_matrix_market(out)
        assert m.shape == (30, 8)


class TestSketch:
    def test_writes_b_and_v(self, tmp_path):
        data = tmp_path / "a.mtx"
        main(["gen", "--n", "40", "--d", "10", "--k", "3", "--seed", "2",
              "--out", str(data)])
        out_b, out_v = tmp_path / "b.mtx", tmp_path / "v.mtx"
        code = main([
            "sketch", "--input", str(data), "--format", "matrixmarket",
            "--method", "spfd2", "--ell", "4", "--seed", "3",
            "--out-b", str(out_b), "--out-v", str(out_v),
        ])
        assert code == 0
        b = load_matrix_market(out_b)
        v = load_matrix_market(out_v)
        assert b.shape == (4, 10)
        assert v.shape == (10, 4)
        assert np.abs(v.T @ v - np.eye(4)).max() <= 1e-10


class TestBench:
    def test_runs_config(self, tmp_path):
        out = tmp_path / "results.csv"
        cfg = {
            "schema_version": 1,
            "dataset": {"type": "synthetic", "n": 60, "d": 12, "k": 3,
                        "zeta": 5},
            "methods": ["fd", "spemb"],
            "k": 3,
            "ell_sweep": "3:3:6",
            "repetitions": {"outer": 1, "inner": 2},
            "seed": 5,
            "output": str(out),
            "format": "csv",
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        assert main(["bench", "--config", str(cfg_path)]) == 0
        lines = out.read_text().splitlines()
        assert lines[1].startswith("method,ell")
        assert len(lines) == 2 + 4  # 2 methods x 2 sketch sizes

    def test_method_override(self, tmp_path):
        out = tmp_path / "results.csv"
        cfg = {
            "schema_version": 1,
            "dataset": {"type": "synthetic", "n": 60, "d": 12, "k": 3,
                        "zeta": 5},
            "methods": ["fd", "spemb"],
            "k": 3,
            "ell_sweep": "3:3:3",
            "seed": 5,
            "output": str(out),
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        assert main(["bench", "--config", str(cfg_path),
                     "--methods", "normsamp"]) == 0
        assert "normsamp" in out.read_text()
        assert "fd," not in out.read_text()


class TestNetwork:
    def test_json_schema(self, tmp_path):
        graph = write_graph(tmp_path)
        out = tmp_path / "ranks.json"
        code = main([
            "network", "--edges", str(graph), "--k", "10",
            "--methods", "hits,expm,fd,spfd5", "--seed", "4",
            "--out", str(out),
        ])
        assert code == 0
        records = json.loads(out.read_text())
        assert [r["method"] for r in records] == ["hits", "expm", "fd", "spfd5"]
        for rec in records:
            assert len(rec["top_hubs"]) == 10
            assert len(rec["top_authorities"]) == 10
            assert rec["elapsed_seconds"] >= 0.0
            assert rec["overlap_vs_exact"]["hubs"] <= 10
            # ids reported in the file's one-indexed numbering
            assert min(rec["top_hubs"]) >= 1
        expm_rec = records[1]
        assert expm_rec["overlap_vs_exact"] == {"hubs": 10, "authorities": 10}


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self, capsys):
        assert main(["gen", "--bogus", "1"]) == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_missing_file_is_runtime_error(self, tmp_path, capsys):
        code = main([
            "sketch", "--input", str(tmp_path / "nope.mtx"),
            "--format", "matrixmarket", "--method", "fd", "--ell", "2",
            "--out-b", str(tmp_path / "b.mtx"),
        ])
        assert code == 2
        assert "error" in capsys.readouterr().err
