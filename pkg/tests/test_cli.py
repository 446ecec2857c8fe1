import io
import json

import pytest

from tropclust.cli import load_matrix, main, parse_sequence, InputError

A2 = '{"B": [[0, -1], [1, 0]]}'


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_parse_sequence_is_one_based():
    assert parse_sequence("1,2, 1") == (0, 1, 0)
    assert parse_sequence("") == ()
    with pytest.raises(InputError):
        parse_sequence("0")
    with pytest.raises(InputError):
        parse_sequence("a")


def test_load_matrix_inline_and_file(tmp_path):
    assert load_matrix(A2).tolist() == [[0, -1], [1, 0]]
    p = tmp_path / "b.json"
    p.write_text('{"B": [[0, -1], [2, 0]], "d": [2, 1]}')
    assert load_matrix(str(p)).d == (2, 1)
    with pytest.raises(InputError):
        load_matrix("{not json")
    with pytest.raises(InputError):
        load_matrix('{"B": [[0, 1], [1, 0]]}')


def test_mutate_empty_sequence_echoes_initial_seed():
    code, out = run(["mutate", "--B", A2])
    assert code == 0
    (rec,) = records(out)
    assert rec["x"] == ["x1", "x2"] and rec["y"] == ["y1", "y2"] and rec["C"] == [[1, 0], [0, 1]]


def test_mutate_pentagon_dump():
    code, out = run(["mutate", "--B", A2, "--seq", "1,2,1,2,1"])
    recs = records(out)
    assert code == 0 and len(recs) == 6
    assert recs[-1]["x"] == ["x2", "x1"] and recs[-1]["y"] == ["y2", "y1"]
    assert [r["eps"] for r in recs[1:]] == [1, 1, -1, -1, -1]


def test_malformed_json_exit_code(capsys):
    code, _ = run(["mutate", "--B", "{oops"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_period_command():
    code, out = run(["period", "--B", A2, "--seq", "1,2,1,2,1"])
    assert code == 0 and records(out)[0]["lhs"] == [2, 1]
    code, out = run(["period", "--B", A2, "--seq", "1,2"])
    assert code == 1 and records(out)[0]["status"] == "fail"


def test_ysystem_command():
    code, out = run(["ysystem", "--type", "A2", "--level", "2", "--verify-period"])
    recs = records(out)
    assert code == 0 and all(r["status"] == "pass" for r in recs)


def test_dilog_identity_filter():
    code, out = run(["dilog-check", "--samples", "3", "--identity", "euler"])
    recs = records(out)
    assert code == 0 and {r["id"] for r in recs} == {"euler"}


def test_quantum_check_pentagon():
    code, out = run(["quantum-check", "--B", A2, "--seq", "1,2,1,2,1", "--order", "6"])
    assert code == 0 and all(r["status"] == "pass" for r in records(out))


def test_verify_all_only_pentagon():
    code, out = run(["verify-all", "--only", "pentagon"])
    recs = records(out)
    assert code == 0
    assert [r["id"] for r in recs] == ["criterion-02", "criterion-10", "criterion-12", "criterion-13"]


def test_verify_all_is_byte_deterministic():
    a = run(["verify-all", "--rng-seed", "7", "--only", "3,8"])
    b = run(["verify-all", "--rng-seed", "7", "--only", "3,8"])
    assert a == b and a[0] == 0


def test_unknown_selector():
    code, _ = run(["verify-all", "--only", "bogus"])
    assert code == 2
