import json

import numpy as np
import pytest

from clusterdilog.cli import main
from clusterdilog.exchange import ExchangeMatrix
from clusterdilog.fixtures import builtin_seed, seed_from_dict, seed_to_dict
from clusterdilog.search import search_periods


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestMutate:
    def test_a2_unit_point_matches_trajectory(self, capsys):
        code, rep = run_json(capsys, "mutate", "--builtin", "A2", "--y", "1,1")
        assert code == 0
        actives = [r["active_y"] for r in rep["rows"][:-1]]
        assert actives == [1.0, 2.0, 3.0, 2.0, 1.0]
        assert rep["rows"][-1]["y"] == [1.0, 1.0]

    def test_a1(self, capsys):
        code, rep = run_json(capsys, "mutate", "--builtin", "A1", "--y", "5")
        assert code == 0
        assert [r["y"][0] for r in rep["rows"]] == [5.0, 0.2, 5.0]

    def test_empty_sequence_echo(self, capsys, tmp_path):
        doc = {"n": 2, "B": [[0, -1], [1, 0]], "sequence": [], "nu": [1, 2]}
        path = tmp_path / "seed.json"
        path.write_text(json.dumps(doc))
        code, rep = run_json(capsys, "mutate", "--seed-file", str(path),
                             "--y", "2,3")
        assert code == 0
        assert rep["rows"] == [{"t": 1, "y": [2.0, 3.0]}]

    def test_markdown_format(self, capsys):
        code, out = run(capsys, "mutate", "--builtin", "A1", "--format", "md")
        assert code == 0 and "**command**: mutate" in out


class TestVerify:
    def test_classical_pass(self, capsys):
        code, rep = run_json(capsys, "verify", "classical", "--builtin", "A2",
                             "--trials", "25")
        assert code == 0
        assert rep["verdict"] == "PASS"
        assert rep["results"][0]["n_minus"] == 3

    def test_quantum_tropical_exact(self, capsys):
        code, rep = run_json(capsys, "verify", "quantum-tropical",
                             "--builtin", "A2", "-N", "8")
        assert code == 0
        assert rep["results"][0]["residual_terms"] == []

    def test_multiple_modes_aggregate(self, capsys):
        code, rep = run_json(capsys, "verify", "shuffle", "dual",
                             "--builtin", "A2", "-N", "5")
        assert code == 0
        assert len(rep["results"]) == 2

    def test_saddle(self, capsys):
        code, rep = run_json(capsys, "verify", "saddle", "--builtin", "A2",
                             "--trials", "10")
        assert code == 0
        assert rep["results"][0]["max_residuals"]["newton_step"] < 1e-12

    def test_saddle_lambda(self, capsys):
        code, rep = run_json(capsys, "verify", "saddle-lambda",
                             "--builtin", "A2")
        assert code == 0
        assert len(rep["results"][0]["points"]) == 3

    def test_fast_mode_is_labeled(self, capsys):
        code, rep = run_json(capsys, "verify", "quantum-tropical",
                             "--builtin", "A2", "-N", "6", "--q0", "3/8")
        assert code == 0
        assert "probabilistic" in rep["results"][0]["mode"]

    def test_not_a_period_exit_2(self, capsys, tmp_path):
        doc = {"n": 2, "B": [[0, -1], [1, 0]], "sequence": [1, 2, 1],
               "nu": [1, 2]}
        path = tmp_path / "seed.json"
        path.write_text(json.dumps(doc))
        code, out = run(capsys, "verify", "classical", "--seed-file", str(path))
        assert code == 2
        assert "not a period" in out

    def test_parse_error_exit_4_unknown_builtin(self, capsys):
        assert main(["verify", "classical", "--builtin", "NOPE"]) == 4

    def test_parse_error_exit_4_bad_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["verify", "classical", "--seed-file", str(path)]) == 4

    def test_parse_error_exit_4_bad_args(self, capsys):
        assert main(["verify", "no-such-mode", "--builtin", "A2"]) == 4

    def test_numerical_failure_exit_3(self, capsys):
        code, rep = run_json(capsys, "verify", "classical", "--builtin", "A2",
                             "--trials", "5", "--tol", "1e-30")
        assert code == 3
        assert rep["verdict"] == "FAIL"

    def test_rng_seed_reproducible(self, capsys):
        _, rep1 = run_json(capsys, "verify", "classical", "--builtin", "A2",
                           "--trials", "7", "--rng-seed", "99")
        _, rep2 = run_json(capsys, "verify", "classical", "--builtin", "A2",
                           "--trials", "7", "--rng-seed", "99")
        assert rep1["results"] == rep2["results"]
        assert rep1["rng_seed"] == 99


class TestSearch:
    def test_a2_depth5_finds_the_pentagon_period(self, capsys):
        code, rep = run_json(capsys, "search", "--builtin", "A2", "--depth", "5")
        assert code == 0
        assert {"sequence": [1, 2, 1, 2, 1], "nu": [2, 1]} in rep["periods"]

    def test_a1_depth2(self, capsys):
        code, rep = run_json(capsys, "search", "--builtin", "A1", "--depth", "2")
        assert {"sequence": [1, 1], "nu": [1]} in rep["periods"]

    def test_a2_no_length3_period(self, capsys):
        code, rep = run_json(capsys, "search", "--builtin", "A2", "--depth", "3")
        assert not any(len(p["sequence"]) == 3 for p in rep["periods"])

    def test_resource_guards(self):
        big = ExchangeMatrix(np.zeros((5, 5), dtype=int))
        with pytest.raises(ValueError):
            search_periods(big, 3)
        small, _ = builtin_seed("A2")
        with pytest.raises(ValueError):
            search_periods(small, 13)

    def test_every_reported_period_checks_out(self, capsys):
        from clusterdilog.exchange import check_period
        B, _ = builtin_seed("A2-principal")
        for sched in search_periods(B, 6):
            assert check_period(B, sched).periodic


class TestPhibCommand:
    def test_value_modulus_one(self, capsys):
        code, rep = run_json(capsys, "phib", "--b", "1.0", "--z", "0.3")
        assert code == 0
        assert abs(rep["modulus"] - 1.0) < 1e-8

    def test_recurrence_grid(self, capsys):
        code, rep = run_json(capsys, "phib", "--check", "recurrence",
                             "--b", "1.3")
        assert code == 0
        assert all(r["residual"] < 1e-7 for r in rep["rows"])

    def test_duality(self, capsys):
        code, rep = run_json(capsys, "phib", "--check", "duality", "--b", "1.3",
                             "--z", "0.2")
        assert code == 0 and rep["residual_inverse_b"] < 1e-7

    def test_asymptotics_csv(self, capsys):
        code, out = run(capsys, "phib", "--check", "asymptotics", "--z", "0.0",
                        "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "b,defect"


class TestBuiltinFixtures:
    def test_a2_fixture_byte_stable(self):
        from clusterdilog.exchange import sign_sequence

        B, sched = builtin_seed("A2")
        assert B.entries.tolist() == [[0, -1], [1, 0]]
        assert sched.sequence == (1, 2, 1, 2, 1)
        assert sched.nu == (2, 1)
        ss = sign_sequence(B, sched)
        assert ss.signs == (1, 1, -1, -1, -1)
        assert ss.cvectors == ((1, 0), (0, 1), (-1, 0), (-1, -1), (0, -1))

    def test_a1_fixture(self):
        B, sched = builtin_seed("A1")
        assert B.entries.tolist() == [[0]]
        assert sched.sequence == (1, 1) and sched.nu == (1,)

    def test_a2_principal_fixture(self):
        B, sched = builtin_seed("A2-principal")
        assert B.n == 4
        assert sched.sequence == (1, 2, 1, 2, 1)
        assert sched.nu == (2, 1, 3, 4)

    def test_unknown_builtin(self):
        with pytest.raises(ValueError):
            builtin_seed("E8")


class TestSeedRoundtrip:
    def test_dict_roundtrip(self):
        B, sched = builtin_seed("A2-principal")
        B2, sched2 = seed_from_dict(seed_to_dict(B, sched))
        assert B2 == B and sched2 == sched

    def test_malformed_document(self):
        with pytest.raises(ValueError):
            seed_from_dict({"n": 2, "B": [[0, -1], [1, 0]]})
        with pytest.raises(ValueError):
            seed_from_dict({"n": 3, "B": [[0, -1], [1, 0]], "sequence": []})
