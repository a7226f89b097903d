import json

from permbinom import cli, scan
from permbinom.ff import construct_field

def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out

def test_test_command(capsys):
    code, out = run(capsys, "test", "--q", "343", "--m", "10", "--n", "1", "--a", "3")
    assert code == 0 and json.loads(out)["permutes"] is True
    code, out = run(capsys, "test", "--q", "5", "--m", "2", "--n", "1", "--a", "1")
    assert code == 1 and json.loads(out)["permutes"] is False
    code, _ = run(capsys, "test", "--q", "25", "--m", "5", "--n", "1", "--a", "-g")
    assert code == 0
    code, _ = run(capsys, "test", "--q", "25", "--m", "7", "--n", "1", "--a", "g^1")
    assert code == 0

def test_parse_element():
    F = construct_field(5, 2)
    assert cli.parse_element(F, "g") == F.gen
    assert cli.parse_element(F, "-g") == F.neg(F.gen)
    assert cli.parse_element(F, "g^2") == F.pow(F.gen, 2)
    assert cli.parse_element(F, "1,1") == 6
    assert cli.parse_element(construct_field(7), "-3") == 4

def test_usage_errors(capsys):
    assert cli.main(["test", "--q", "6", "--m", "2", "--n", "1", "--a", "1"]) == 2
    assert cli.main(["test", "--q", "7", "--m", "1", "--n", "2", "--a", "1"]) == 2
    assert cli.main(["bogus"]) == 2
    assert cli.main(["heuristic", "--R", "99"]) == 2

def test_count_t_and_bounds(capsys):
    code, out = run(capsys, "count-t", "--q", "7", "--m", "4", "--n", "1")
    assert code == 0 and json.loads(out)["T"] == 2
    code, out = run(capsys, "bounds", "--q", "7", "--m", "4", "--n", "1")
    assert json.loads(out)["values"]["genus"] == 0

def test_certify(capsys):
    code, out = run(capsys, "certify", "--p", "19", "--m", "5", "--n", "1")
    assert code == 0 and json.loads(out)["certificate"]["exponent"] == 6
    code, out = run(capsys, "certify", "--p", "7", "--m", "4", "--n", "1")
    assert code == 1 and json.loads(out)["certificate"] is None

def test_heuristic(capsys, tmp_path):
    code, out = run(capsys, "heuristic", "--R", "12", "--table", str(tmp_path / "f.csv"))
    assert code == 0 and json.loads(out)["R"] == 12
    lines = (tmp_path / "f.csv").read_text().splitlines()
    assert lines[0] == "r,F,summand" and lines[1].startswith("3,4,")

def test_scan_deterministic(capsys, tmp_path, monkeypatch):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert cli.main(["scan", "--q-min", "3", "--q-max", "40", "--out", str(a)]) == 0
    monkeypatch.setenv("PB_JOBS", "2")
    assert cli.main(["scan", "--q-min", "3", "--q-max", "40", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    code, out = run(capsys, "scan", "--q-max", "9", "--format", "csv")
    assert out.startswith("# meta ")

def test_campaign_exit_codes(capsys, monkeypatch):
    assert cli.main(["verify-intro1", "--max-p", "200"]) == 0
    assert cli.main(["verify-conjecture", "--max-p", "200"]) == 0
    assert cli.main(["verify-existence", "--max-q", "200"]) == 0
    assert cli.main(["verify-conjecture", "--max-p", "100", "--c", "0.2"]) == 1
    capsys.readouterr()

    # fault injection: a fabricated permuting class with tiny gcd flips the exit code
    real = scan.prime_class_survey

    def forged(p_max, jobs=None):
        return real(p_max, jobs) + [scan.ClassOutcome(101, 2, 1, 1)]

    monkeypatch.setattr(scan, "prime_class_survey", forged)
    assert cli.main(["verify-intro1", "--max-p", "200"]) == 1
    assert cli.main(["verify-conjecture", "--max-p", "200"]) == 1
    out = capsys.readouterr().out.splitlines()
    assert json.loads(out[0])["violations"][0]["q"] == 101

def test_corollary_table_cli(capsys):
    code, out = run(capsys, "corollary-table", "--g-list", "5,7,8", "--max-p", "100")
    assert code == 0 and json.loads(out) == {"5": [11], "7": [29], "8": [17]}
