import json

from msrcodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_params_c3(capsys):
    code, out, _ = run(capsys, "params", "--family", "c3", "--n", "6", "--k", "2",
                       "--h", "2", "--d", "4")
    assert code == 0
    assert "ell=128" in out and "prime=13" in out


def test_params_c1_d_list(capsys):
    code, out, _ = run(capsys, "params", "--family", "c1", "--n", "5", "--k", "2",
                       "--d", "3,4")
    assert code == 0 and "ell=486" in out


def test_params_invalid_exits_1(capsys):
    code, _, err = run(capsys, "params", "--family", "c3", "--n", "6", "--k", "2",
                       "--h", "2", "--d", "5")
    assert code == 1 and "n-h" in err


def test_params_json(capsys):
    code, out, _ = run(capsys, "params", "--family", "c2", "--n", "6", "--k", "2",
                       "--patterns", "1:3,1:4,1:5,2:4", "--json")
    assert code == 0
    info = json.loads(out)
    assert info["ell"] == 24576 and info["s_m"] == 4 and info["s"] == 6
    assert {"h": 2, "d": 4, "beta": 12288, "gamma": 49152} in info["bounds"]


def test_missing_subcommand_exits_1(capsys):
    assert main([]) == 1


def test_encode_fail_repair_cycle(tmp_path, capsys):
    cluster = tmp_path / "cl"
    code, out, _ = run(capsys, "encode", "--family", "c3", "--n", "6", "--k", "2",
                       "--h", "2", "--d", "4", "--cluster", str(cluster),
                       "--random-bytes", "1000", "--seed", "3", "--json")
    assert code == 0
    info = json.loads(out)
    assert info["seed"] == 3 and info["prime"] == 257

    code, out, _ = run(capsys, "fail", "--cluster", str(cluster), "--nodes", "1,2")
    assert code == 0 and "[1, 2]" in out

    report_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "repair", "--cluster", str(cluster),
                       "--nodes", "1,2", "--helpers", "3,4,5,6",
                       "--h", "2", "--d", "4", "--report", str(report_path))
    assert code == 0
    assert "optimal=True" in out
    rep = json.loads(report_path.read_text())
    assert rep["bound_report"]["optimal"] is True
    assert rep["transcript"]["pattern"] == [2, 4]


def test_repair_wrong_helpers_exits_1(tmp_path, capsys):
    cluster = tmp_path / "cl"
    run(capsys, "encode", "--family", "c3", "--n", "6", "--k", "2",
        "--h", "2", "--d", "4", "--cluster", str(cluster), "--blocks", "1")
    run(capsys, "fail", "--cluster", str(cluster), "--nodes", "1,2")
    code, _, err = run(capsys, "repair", "--cluster", str(cluster),
                       "--nodes", "1,2", "--helpers", "3,4,5", "--h", "2", "--d", "4")
    assert code == 1 and "d=4" in err


def test_repair_corrupted_helper_exits_2(tmp_path, capsys):
    cluster = tmp_path / "cl"
    run(capsys, "encode", "--family", "c3", "--n", "6", "--k", "2",
        "--h", "2", "--d", "4", "--cluster", str(cluster),
        "--random-bytes", "500", "--seed", "1")
    run(capsys, "fail", "--cluster", str(cluster), "--nodes", "1,2")
    # flip one element inside helper 3's shard data section
    shard = cluster / "shards" / "node_03.shard"
    blob = bytearray(shard.read_bytes())
    blob[40] ^= 1
    shard.write_bytes(bytes(blob))
    code, _, err = run(capsys, "repair", "--cluster", str(cluster),
                       "--nodes", "1,2", "--helpers", "3,4,5,6",
                       "--h", "2", "--d", "4")
    assert code == 2 and "digest" in err


def test_verify_mds(tmp_path, capsys):
    cluster = tmp_path / "cl"
    run(capsys, "encode", "--family", "c1", "--n", "5", "--k", "2", "--d", "3,4",
        "--cluster", str(cluster), "--blocks", "1")
    code, out, _ = run(capsys, "verify-mds", "--manifest",
                       str(cluster / "manifest.json"), "--samples", "100",
                       "--seed", "2", "--json")
    assert code == 0
    info = json.loads(out)
    assert info["ok"] and info["subsets"] == 10  # exhaustive: C(5,2)


def test_table_csv(tmp_path, capsys):
    out_csv = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "--n", "12", "--k", "6", "--h", "2",
                       "--d", "8", "--csv", str(out_csv))
    assert code == 0
    text = out_csv.read_text()
    assert str(12**12) in text and str(4 * 3**12) in text and str(2 * 2**12) in text
    assert "ye-barg" in out


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "1")
    assert code == 0
    assert out.count("[PASS]") == 6 and "[FAIL]" not in out


def test_env_seed_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MSR_SEED", "9")
    cluster = tmp_path / "cl"
    code, out, _ = run(capsys, "encode", "--family", "c3", "--n", "6", "--k", "2",
                       "--h", "2", "--d", "4", "--cluster", str(cluster),
                       "--random-bytes", "64", "--json")
    assert code == 0 and json.loads(out)["seed"] == 9
