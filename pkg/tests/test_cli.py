"""The command-line client: flags, formats, exit codes."""

import json

import pytest

from gnskit.cli import main, parse_point, parse_points

EX_QS = {"d": 2, "gaps": [[1, 0], [2, 0], [0, 1], [1, 1], [2, 2], [1, 3]]}


@pytest.fixture
def ex_file(tmp_path):
    path = tmp_path / "ex3.json"
    path.write_text(json.dumps(EX_QS))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_parse_helpers():
    assert parse_point("1,2,3") == [1, 2, 3]
    assert parse_points("1,0;0,1") == [[1, 0], [0, 1]]
    assert parse_points("") == []


def test_analyze(capsys, ex_file):
    code, out = run(capsys, "analyze", "--file", ex_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["pseudo_frobenius"] == [[1, 3], [2, 2]]
    assert doc["classification"]["quasiSymmetric"] is True


def test_analyze_explain_order_gap(capsys, ex_file):
    code, out = run(capsys, "analyze", "--file", ex_file, "--explain",
                    "--order-gap", "1,3")
    assert code == 0
    doc = json.loads(out)
    assert doc["frobenius_gap_under_order"]["gap"] == [1, 3]
    assert doc["witnesses"] is not None


def test_analyze_invalid_file_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"d": 2, "gaps": [[1, 1]]}))
    code, out = run(capsys, "analyze", "--file", str(bad))
    assert code == 1
    assert json.loads(out)["kind"] == "ClosureViolation"


def test_analyze_missing_file_exits_1(capsys):
    code, out = run(capsys, "analyze", "--file", "/nonexistent.json")
    assert code == 1


def test_analyze_malformed_document_exits_1(capsys, tmp_path):
    for junk in ('{"gaps": [[1]]}', "[1, 2]", "{not json"):
        f = tmp_path / "junk.json"
        f.write_text(junk)
        code, out = run(capsys, "analyze", "--file", str(f))
        assert code == 1


def test_enumerate_plain(capsys):
    code, out = run(capsys, "enumerate", "--F", "1,1")
    assert code == 0
    assert out.strip() == "3"


def test_enumerate_list_jsonl(capsys):
    code, out = run(capsys, "enumerate", "--F", "3", "--list")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert lines == [
        {"d": 1, "gaps": [[1], [2], [3]]},
        {"d": 1, "gaps": [[1], [3]]},
    ]


def test_enumerate_limit_exits_2(capsys):
    code, out = run(capsys, "enumerate", "--F", "99")
    assert code == 2
    assert json.loads(out)["kind"] == "LimitExceeded"


def test_enumerate_json_format(capsys):
    code, out = run(capsys, "enumerate", "--F", "2,1", "--format", "json")
    doc = json.loads(out)
    assert doc["count"] == 7
    assert doc["tool"]["version"]


def test_construct(capsys):
    code, out = run(capsys, "construct", "--F", "1,1,1", "--Z", "1,1,0")
    assert code == 0
    assert json.loads(out)["frobenius_gap"] == [1, 1, 1]
    code, out = run(capsys, "construct", "--F", "1,1,1", "--Z", "1,1,1")
    assert code == 1
    assert json.loads(out)["kind"] == "ZNotInC"


def test_bounds_constants_csv(capsys):
    code, out = run(capsys, "bounds", "--constants", "--dmax", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "d,a_d,eps_d,b_d,note"
    assert lines[1].startswith("1,1.4142,")
    assert lines[4].startswith("4,1.4612,")


def test_bounds_sandwich(capsys):
    code, out = run(capsys, "bounds", "--F", "7")
    doc = json.loads(out)
    assert doc["report"]["exact"] == 11
    assert doc["report"]["backelin"] == {"lower": 8, "upper": 32}


def test_bounds_lpf(capsys):
    code, out = run(capsys, "bounds", "--lpf", "--P", "1,1", "--F", "3,3")
    doc = json.loads(out)
    assert doc["good_subsets"] == 5184
    assert doc["graph"]["cycles"] == []


def test_bounds_usage_error(capsys):
    code, out = run(capsys, "bounds")
    assert code == 2
    code, out = run(capsys, "bounds", "--lpf", "--P", "1")
    assert code == 2
    code, out = run(capsys, "bounds", "--constants", "--dmax", "900")
    assert code == 2


def test_verify(capsys):
    code, out = run(capsys, "verify", "--box", "6", "--axiom-samples", "100")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_byte_identical_reports_across_threads(capsys):
    outs = []
    for t in ("1", "4", "8"):
        code, out = run(capsys, "verify", "--box", "1,2", "--threads", t,
                        "--axiom-samples", "100")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["enumerate"])  # --F is required
    assert e.value.code == 2


def test_server_mode_round_trip(capsys):
    # thin-client HTTP path against an in-process test server
    import httpx
    from fastapi.testclient import TestClient

    from gnskit.service.app import create_app

    server = TestClient(create_app())
    real_post = httpx.post

    def fake_post(url, **kw):
        kw.pop("timeout", None)
        return server.post(url.replace("http://svc", ""), **kw)

    httpx.post = fake_post
    try:
        code, out = run(capsys, "enumerate", "--F", "1,1", "--server", "http://svc")
        assert code == 0 and out.strip() == "3"
        code, out = run(capsys, "enumerate", "--F", "99", "--server", "http://svc")
        assert code == 2
    finally:
        httpx.post = real_post
