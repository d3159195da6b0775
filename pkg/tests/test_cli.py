import json

import pytest

from netupgrade.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def gen_file(tmp_path, capsys, *extra):
    path = tmp_path / "inst.json"
    code, _out, _err = run(capsys, "gen", "--kind", "imst", "--n", "6",
                           "--m", "9", "--seed", "3", "--budget", "8",
                           "--out", str(path), *extra)
    assert code == 0
    return path


def test_gen_writes_canonical_file_and_hash(tmp_path, capsys):
    path = gen_file(tmp_path, capsys)
    code, out, _ = run(capsys, "gen", "--kind", "imst", "--n", "6", "--m", "9",
                       "--seed", "3", "--budget", "8", "--out", str(path))
    meta = json.loads(out)
    assert meta["hash"] == "289aa45b1d7e99d2"
    doc = json.loads(path.read_text())
    assert doc["kind"] == "imst" and len(doc["edges"]) == 9


def test_gen_knapsack_reports_known_optimum(tmp_path, capsys):
    path = tmp_path / "kp.json"
    code, out, _ = run(capsys, "gen", "--kind", "wildag", "--knapsack",
                       "3,4,5", "1,2,3", "--budget", "4", "--out", str(path))
    assert code == 0
    assert json.loads(out)["known_optimum"] == 8


def test_solve_outputs_json_result(tmp_path, capsys):
    path = gen_file(tmp_path, capsys)
    code, out, _ = run(capsys, "solve", "--algo", "exact-imst",
                       "--in", str(path), "--no-timing")
    assert code == 0
    doc = json.loads(out)
    assert doc["objective"] == 41 and doc["feasible"] is True
    assert doc["spend"] <= doc["budget"] == 8
    assert all(set(e) == {"id", "level"} for e in doc["edges"])


def test_solve_timing_flag(tmp_path, capsys):
    path = gen_file(tmp_path, capsys)
    _, with_t, _ = run(capsys, "solve", "--algo", "uimst", "--k", "2",
                       "--in", str(path))
    _, without_t, _ = run(capsys, "solve", "--algo", "uimst", "--k", "2",
                          "--in", str(path), "--no-timing")
    assert "wall_ms" in json.loads(with_t)
    assert "wall_ms" not in json.loads(without_t)


def test_solve_is_byte_deterministic_without_timing(tmp_path, capsys):
    path = gen_file(tmp_path, capsys)
    outs = set()
    for _ in range(3):
        _, out, _ = run(capsys, "solve", "--algo", "imst", "--in", str(path),
                        "--seed", "7", "--no-timing")
        outs.add(out)
    assert len(outs) == 1


def test_solve_budget_override(tmp_path, capsys):
    path = gen_file(tmp_path, capsys)
    _, out, _ = run(capsys, "solve", "--algo", "exact-imst", "--in", str(path),
                    "--budget", "0", "--no-timing")
    # zero-cost improvement levels remain available at budget 0
    assert json.loads(out)["objective"] == 24


def test_wildag_pipeline(tmp_path, capsys):
    path = tmp_path / "d.json"
    run(capsys, "gen", "--kind", "wildag", "--n", "7", "--m", "12",
        "--seed", "11", "--budget", "7", "--out", str(path))
    _, out, _ = run(capsys, "solve", "--algo", "wildag-exact",
                    "--in", str(path), "--no-timing")
    assert json.loads(out)["objective"] == 32
    _, out, _ = run(capsys, "solve", "--algo", "wildag-fptas",
                    "--epsilon", "0.3", "--in", str(path), "--no-timing")
    doc = json.loads(out)
    assert doc["objective"] >= (1 - 0.3) * 32 and doc["feasible"]


def test_exit_code_usage_errors(tmp_path, capsys):
    path = gen_file(tmp_path, capsys)
    assert run(capsys, "solve", "--algo", "nope", "--in", str(path))[0] == 2
    assert run(capsys, "solve", "--algo", "wildag-exact", "--in", str(path))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert run(capsys, "solve", "--algo", "uimst", "--in", str(bad))[0] == 2
    missing = tmp_path / "missing.json"
    assert run(capsys, "solve", "--algo", "uimst", "--in", str(missing))[0] == 2


def test_exit_code_oracle_guard(tmp_path, capsys):
    path = tmp_path / "big.json"
    run(capsys, "gen", "--kind", "imst", "--n", "12", "--m", "20",
        "--seed", "0", "--budget", "5", "--out", str(path))
    code, _, err = run(capsys, "solve", "--algo", "exact-imst", "--in", str(path))
    assert code == 4
    assert "oracle" in err


def test_verify_emits_csv(capsys):
    code, out, _ = run(capsys, "verify", "--algo", "twocost", "--count", "2",
                       "--size", "5", "--seed", "11")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("instance,hash,algo,")
    assert len(lines) == 3
    assert all(line.endswith("True") for line in lines[1:])


def test_verify_unknown_algo(capsys):
    assert run(capsys, "verify", "--algo", "nope", "--count", "1")[0] == 2


def test_bench_empty_sweep_is_header_only(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "wildag-uniform",
                       "--sizes", "")
    assert code == 0
    assert out.strip() == "algo,n,m,W,epsilon,wall_ms,objective"


def test_bench_rows(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "wildag-fptas",
                       "--sizes", "16", "--epsilons", "1/2,1/4")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert lines[1].split(",")[0] == "wildag-fptas"


def test_seed_env_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NETUPGRADE_SEED", "99")
    from netupgrade import cli
    path = gen_file(tmp_path, capsys)
    parser = cli.build_parser()
    # parser defaults are bound at build time, after the env var is set
    args = parser.parse_args(["solve", "--algo", "uimst", "--k", "1",
                              "--in", str(path)])
    assert args.seed == 99
