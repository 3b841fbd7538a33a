import json
import os

import pytest

from twistbench.cli import main
from twistbench.fixtures import emit_fixture_files


@pytest.fixture(scope="module")
def fixdir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fx")
    emit_fixture_files(str(d))
    return str(d)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_golden(capsys, fixdir):
    code, out, _ = run(capsys, "verify",
                       os.path.join(fixdir, "rank22_double_c2c2c2.json"))
    assert code == 0
    assert "22 simples, N=4, xi=1, all checks pass" in out


def test_verify_json_mode(capsys, fixdir):
    code, out, _ = run(capsys, "verify", "--json",
                       os.path.join(fixdir, "twisted_double_c2.json"))
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["N"] == 4


def test_verify_devnull_usage_error(capsys):
    code, _, err = run(capsys, "verify", "/dev/null")
    assert code == 2


def test_verify_invalid_data_exit_one(capsys, tmp_path, fixdir):
    with open(os.path.join(fixdir, "twisted_double_c2.json")) as fh:
        payload = json.load(fh)
    payload["T"][2], payload["T"][3] = payload["T"][3], payload["T"][2]
    payload["T"][2] = {"k": 1, "m": 2}  # break a twist
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "verify", str(bad))
    assert code == 1
    assert "FAIL" in out


def test_metric_listing(capsys):
    code, out, _ = run(capsys, "metric", "--group", "4", "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["forms"]) == 4


def test_metric_twist_filter(capsys):
    code, out, _ = run(capsys, "metric", "--group", "2,2", "--twists", "1,i,-i",
                       "--classes", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["classes"] == 1


def test_double_emit_and_verify(capsys, tmp_path):
    out_file = tmp_path / "d.json"
    code, out, _ = run(capsys, "double", "--group", "2", "--omega-index", "1",
                       "--emit", str(out_file))
    assert code == 0
    code2, out2, _ = run(capsys, "verify", str(out_file))
    assert code2 == 0


def test_double_scan(capsys):
    code, out, _ = run(capsys, "double", "--group", "2,2", "--scan", "--json")
    assert code == 0
    rows = json.loads(out)
    assert any(r["twist_count"] == 3 for r in rows)


def test_sl2_csv(capsys):
    code, out, _ = run(capsys, "sl2", "--csv", "--max-distinct", "2")
    assert code == 0
    assert out.splitlines()[0] == "name,level,dim,spectrum"
    assert len(out.strip().splitlines()) == 24


def test_dnumber_default_window(capsys):
    code, out, _ = run(capsys, "dnumber", "--json")
    assert code == 0
    assert len(json.loads(out)) == 5


def test_dnumber_scan(capsys):
    code, out, _ = run(capsys, "dnumber", "--scan-sqrt2", "6", "10", "--json")
    assert code == 0
    assert json.loads(out)["hits"] == []


def test_galois_verb(capsys, fixdir):
    code, out, _ = run(capsys, "galois",
                       os.path.join(fixdir, "fibonacci_z10^3.json"),
                       "-k", "2", "--json")
    assert code == 0
    assert json.loads(out)["permutation"] == [1, 0]


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures", "--json")
    assert code == 0
    names = json.loads(out)
    assert "rank22_double_c2c2c2" in names


def test_usage_error_exit_2(capsys):
    assert main(["classify"]) == 2
    assert main(["no-such-verb"]) == 2


def test_classify_two_twists_deterministic_across_threads(capsys, monkeypatch):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("TWISTBENCH_THREADS", threads)
        code = main(["classify", "--twists", "2", "--json"])
        assert code == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    payload = json.loads(outs[0])
    assert [row["count"] for row in payload["rows"]] == [2, 2, 4]
    assert sorted(payload["empty"]) == \
        sorted(str(n) for n in (6, 8, 10, 12, 15, 16, 20, 24, 30, 40, 48, 60, 80, 120))
