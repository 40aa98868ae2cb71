import json

import pytest

from subrank.cli import main
from subrank.pattern import pattern_from_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestQ:
    def test_square_example(self, capsys):
        code, out, _ = run(capsys, "q", "--dims", "6,6,6")
        assert code == 0
        assert "Q(6,6,6) = 4" in out
        assert "24 rows x 24 columns" in out

    def test_tiny_cube(self, capsys):
        code, out, _ = run(capsys, "q", "--dims", "2,2,2")
        assert code == 0
        assert "Q(2,2,2) = 2" in out

    def test_order_four(self, capsys):
        code, out, _ = run(capsys, "q", "--dims", "3,3,3,3")
        assert code == 0
        assert "Q(3,3,3,3) = 2" in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "q", "--dims", "6,6,6", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["q"] == 4
        assert doc["rows_at_q"] == doc["cols_at_q"] == 24

    def test_malformed_dims(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["q", "--dims", "6,six,6"])
        assert exc.value.code == 2

    def test_too_few_dims(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["q", "--dims", "6,6"])
        assert exc.value.code == 2


class TestCertificate:
    def test_writes_valid_json(self, capsys, tmp_path):
        out_path = tmp_path / "cert.json"
        code, out, _ = run(capsys, "certificate", "--dims", "6,6,6", "--r", "4",
                           "--out", str(out_path))
        assert code == 0
        assert "degree 24" in out
        doc = json.loads(out_path.read_text())
        assert doc["r"] == 4
        assert sum(m["power"] for m in doc["monomial"]) == 24

    def test_non_certificate_regime(self, capsys):
        code, _, err = run(capsys, "certificate", "--dims", "6,6,6", "--r", "5")
        assert code == 2
        assert "15 columns < 60 rows" in err

    def test_empty_certificate(self, capsys):
        code, out, _ = run(capsys, "certificate", "--dims", "3,3,3", "--r", "2")
        assert code == 0
        assert "degree 0" in out


class TestVerify:
    def test_square_example(self, capsys):
        code, out, _ = run(capsys, "verify", "--dims", "6,6,6", "--r", "4",
                           "--trials", "3")
        assert code == 0
        assert "rank 24" in out
        assert out.strip().endswith("ok")

    def test_degree_six(self, capsys):
        code, out, _ = run(capsys, "verify", "--dims", "4,4,4", "--r", "3")
        assert code == 0

    def test_not_ok_when_columns_short(self, capsys):
        code, out, _ = run(capsys, "verify", "--dims", "6,6,6", "--r", "5")
        assert code == 1
        assert "NOT ok" in out

    def test_composite_prime_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["verify", "--dims", "6,6,6", "--r", "4", "--prime", "1000"])


class TestDim:
    def test_oracle_agreement(self, capsys):
        code, out, _ = run(capsys, "dim", "--dims", "3,3,3", "--r", "3", "--oracle")
        assert code == 0
        assert "dim = 21" in out
        assert "oracle agrees" in out

    def test_asymmetric_oracle(self, capsys):
        code, out, _ = run(capsys, "dim", "--dims", "4,3,3", "--r", "3", "--oracle")
        assert code == 0
        assert "dim = 33" in out

    def test_full_regime(self, capsys):
        code, out, _ = run(capsys, "dim", "--dims", "6,6,6", "--r", "4")
        assert code == 0
        assert "dim = 216" in out
        assert "regime: full" in out


class TestTable:
    def test_verified_table(self, capsys):
        code, out, _ = run(capsys, "table", "--max", "6", "--verify")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,q,rows,cols,certificate_ok,rank_ok"
        assert len(lines) == 7
        assert all(line.endswith("true,true") for line in lines[1:])

    def test_single_row(self, capsys):
        code, out, _ = run(capsys, "table", "--max", "1")
        assert code == 0
        assert out.strip().split("\n")[1] == "1,1,0,0"

    def test_byte_identical_runs(self, capsys):
        _, out1, _ = run(capsys, "table", "--max", "8", "--verify")
        _, out2, _ = run(capsys, "table", "--max", "8", "--verify")
        assert out1 == out2

    def test_q_of_40(self, capsys):
        code, out, _ = run(capsys, "table", "--max", "40")
        rows = {int(line.split(",")[0]): line for line in out.strip().split("\n")[1:]}
        assert rows[40].startswith("40,10,")

    def test_closed_form_table_to_100_is_fast(self, capsys):
        import time

        start = time.time()
        code, out, _ = run(capsys, "table", "--max", "100")
        assert code == 0
        assert time.time() - start < 1.0
        lines = out.strip().split("\n")
        assert len(lines) == 101
        assert lines[100] == "100,17,4080,4233"

    def test_verified_table_to_40_within_budget(self, capsys):
        import time

        start = time.time()
        code, out, _ = run(capsys, "table", "--max", "40", "--verify")
        elapsed = time.time() - start
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 41
        assert all(line.endswith("true,true") for line in lines[1:])
        assert elapsed < 600


class TestExport:
    def test_json_export_round_trips(self, capsys, tmp_path):
        path = tmp_path / "pattern.json"
        code, _, _ = run(capsys, "export", "--dims", "6,6,6", "--r", "4",
                         "--format", "json", "--out", str(path))
        assert code == 0
        pm = pattern_from_json(path.read_text())
        assert pm.nnz == 144

    def test_coord_export_header_only(self, capsys):
        code, out, _ = run(capsys, "export", "--dims", "3,3,3", "--r", "2",
                           "--format", "coord")
        assert code == 0
        assert out.strip() == "0 6 0"

    def test_values_export(self, capsys):
        code, out, _ = run(capsys, "export", "--dims", "4,4,4", "--r", "3",
                           "--format", "values", "--seed", "1")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "6 9 18"
        assert len(lines) == 19

    def test_r_above_dims_rejected(self, capsys):
        code, _, err = run(capsys, "export", "--dims", "3,3,3", "--r", "4")
        assert code == 2
        assert "exceeds" in err


class TestSeedEnvFallback:
    def test_env_seed_changes_values(self, capsys, monkeypatch):
        monkeypatch.setenv("SUBRANK_SEED", "5")
        import importlib

        import subrank.cli as cli_module
        importlib.reload(cli_module)
        code = cli_module.main(["export", "--dims", "4,4,4", "--r", "3",
                                "--format", "values"])
        out_env = capsys.readouterr().out
        assert code == 0
        monkeypatch.delenv("SUBRANK_SEED")
        importlib.reload(cli_module)
        code = cli_module.main(["export", "--dims", "4,4,4", "--r", "3",
                                "--format", "values", "--seed", "5"])
        out_flag = capsys.readouterr().out
        assert out_env == out_flag
