import json
import os
import subprocess
import sys

import pytest

from superstring.cli import main
from superstring.formats import parse_instance, serialize_instance


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_bytes(data if isinstance(data, bytes) else data.encode())
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), (json.loads(err) if err else None), out


def test_exact_example(tmp_path, capsys):
    f = write(tmp_path, "s.txt", "abc\nbcd\ncde\n")
    code, out, _, _ = run(capsys, "exact", f)
    assert code == 0 and out["command"] == "exact"
    assert out["result"]["length"] == 5 and out["result"]["superstring"] == "abcde"
    assert isinstance(out["stats"]["elapsed_ms"], float)


def test_kernelize_example(tmp_path, capsys):
    f = write(tmp_path, "s.txt", "ab\ncd\n")
    code, out, _, _ = run(capsys, "kernelize", f, "--ell", "3")
    assert code == 0 and out["answer"] is False and out["decided_by"] == "rule2"
    assert [e["rule"] for e in out["stats"]["rule_trace"]] == ["rule2", "rule2"]


def test_kernelize_reduced_writes_instance(tmp_path, capsys):
    f = write(tmp_path, "s.txt", "0110\n1101\n0011\n1000\n")
    dest = tmp_path / "k.txt"
    code, out, _, _ = run(capsys, "kernelize", f, "--ell", "10", "--out", str(dest))
    assert code == 0 and out["decided_by"] is None and out["answer"] is None
    back = parse_instance(dest.read_bytes())
    assert [s.decode() for s in back.strings] == out["result"]["strings"]
    assert back.headers == [f"ell {out['result']['ell']}"]


@pytest.mark.parametrize("mode", ["deterministic", "randomized"])
def test_partial_example(tmp_path, capsys, mode):
    f = write(tmp_path, "s.txt", "ab\nbc\nzz\n")
    code, out, _, _ = run(capsys, "partial", f, "--k", "2", "--ell", "3", "--mode", mode)
    assert code == 0 and out["answer"] is True and out["witness"] == "abc"
    assert out["stats"]["trials"] >= 1


def test_partial_weighted(tmp_path, capsys):
    f = write(tmp_path, "w.txt", "1\tab\n1\tbc\n5\txy\n5\tyz\n")
    code, out, _, _ = run(capsys, "partial", f, "--k", "2", "--ell", "3", "--bigw", "10")
    assert code == 0 and out["witness"] == "xyz" and out["result"]["weight"] == 10
    code, _, err, _ = run(capsys, "partial", f, "--k", "2", "--ell", "3")
    assert code == 2 and err["error"]["type"] == "InputError"


def test_decide_bound_greedy(tmp_path, capsys):
    f = write(tmp_path, "s.txt", "abc\nbcd\ncde\n")
    _, out, _, _ = run(capsys, "decide", f, "--ell", "5")
    assert out["answer"] is True
    _, out, _, _ = run(capsys, "bound", f)
    assert out["result"]["mu"] == 2 and out["result"]["upper_bound"] == 7
    _, out, _, _ = run(capsys, "greedy", f)
    assert out["result"]["superstring"] == "abcde"


def test_graph_commands(tmp_path, capsys):
    g = write(tmp_path, "g.txt", "3 2\n1 2\n2 3\n")
    _, out, _, _ = run(capsys, "oracle-hampath", g)
    assert out["answer"] is True
    dest = tmp_path / "g2.txt"
    _, out, _, _ = run(capsys, "gen-longtrail", g, "--out", str(dest))
    assert out["result"]["ell"] == 7 and out["result"]["n"] == 8
    _, out, _, _ = run(capsys, "oracle-trail", str(dest), "--ell", "7")
    assert out["answer"] is True
    _, out, _, _ = run(capsys, "oracle-trail", g)
    assert out["result"]["longest"] == 2


def test_generator_files_roundtrip_and_verify(tmp_path, capsys):
    g = write(tmp_path, "g.txt", "4 3\n1 2\n2 3\n4 1\n")
    cc = tmp_path / "cc.txt"
    code, out, _, _ = run(capsys, "gen-crosscomp", g, g, "--ell", "2", "--out", str(cc))
    assert code == 0 and out["result"]["params"] == {"ell": 60, "k": 2}
    data = cc.read_bytes()
    assert serialize_instance(parse_instance(data)) == data
    _, out, _, _ = run(capsys, "verify", str(cc))
    assert out["answer"] is True

    arcs = "".join(f"{i} {i + 1}\n" for i in range(1, 6))
    big = write(tmp_path, "big.txt", f"64 5\n{arcs}")
    bm = tmp_path / "bm.txt"
    _, out, _, _ = run(capsys, "gen-belowmatching", big, "--out", str(bm))
    assert out["result"]["params"]["mu"] == 620
    data = bm.read_bytes()
    assert serialize_instance(parse_instance(data)) == data
    _, out, _, _ = run(capsys, "verify", str(bm))
    assert out["answer"] is True and out["result"]["notes"]["mu"] == 620


def test_determinism(tmp_path, capsys):
    f = write(tmp_path, "s.txt", "0110\n1100\n0011\n1001\n0101\n1110\n")
    outs = set()
    for _ in range(3):
        _, _, _, raw = run(capsys, "partial", f, "--k", "3", "--ell", "7", "--seed", "11", "--no-timing")
        outs.add(raw)
    assert len(outs) == 1
    assert json.loads(outs.pop())["stats"]["elapsed_ms"] is None


def test_exit_codes(tmp_path, capsys):
    code, _, err, _ = run(capsys, "exact", str(tmp_path / "missing.txt"))
    assert code == 2 and "error" in err
    mixed = write(tmp_path, "m.txt", "1\tab\ncd\n")
    assert run(capsys, "exact", mixed)[0] == 2
    g = write(tmp_path, "g.txt", "2 1\n1 1\n")
    assert run(capsys, "oracle-hampath", g)[0] == 2
    f = write(tmp_path, "s.txt", "ab\n")
    assert run(capsys, "decide", f)[0] == 2
    many = "".join(bytes([65 + i // 26, 97 + i % 26]).decode() * 2 + "\n" for i in range(30))
    code, _, err, _ = run(capsys, "exact", write(tmp_path, "big.txt", many))
    assert code == 3 and err["error"]["type"] == "CapacityError"
    g = write(tmp_path, "g3.txt", "3 2\n1 2\n2 3\n")
    assert run(capsys, "gen-crosscomp", g, "--ell", "3")[0] == 2


def test_module_entry_point(tmp_path):
    f = write(tmp_path, "s.txt", "ab\nbc\n")
    env = dict(os.environ)
    res = subprocess.run(
        [sys.executable, "-m", "superstring", "exact", f, "--no-timing"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["superstring"] == "abc"
