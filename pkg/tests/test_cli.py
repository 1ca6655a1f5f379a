import io
import json

import pytest

from wngt.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_lambda_text():
    code, text = run("lambda", "--type", "B", "--rank", "3", "--word", "0,1")
    assert code == 0
    assert text.splitlines()[:2] == ["[1,-1,0@0]", "[0,-1,0@1]"]
    assert text.endswith("length 2\n")


def test_lambda_json():
    code, text = run("lambda", "--type", "C", "--rank", "3", "--word", "1,2,3", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["length"] == 3 and len(data["lambda"]) == 3


def test_lambda_with_pi_prefix():
    code, text = run("lambda", "--type", "B", "--rank", "3", "--word", "pi:3,0")
    assert code == 0 and "length 1" in text
    code, _ = run("lambda", "--type", "B", "--rank", "3", "--word", "pi:2,0")
    assert code == 1


def test_non_reduced_word(capsys):
    code, _ = run("lambda", "--type", "B", "--rank", "3", "--word", "1,1")
    assert code == 2
    assert "position 2" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["lambda", "--type", "E", "--rank", "3"],
    ["lambda", "--type", "B", "--rank", "3", "--word", "1,x"],
    ["lambda", "--type", "B", "--rank", "3", "--word", "5"],
    ["gather", "--type", "B", "--rank", "3", "--word", "1", "--cap", "0"],
    ["render"],
])
def test_usage_errors(argv):
    try:
        code, _ = run(*argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_gather_exit_codes():
    code, text = run("gather", "--type", "B", "--rank", "3", "--word", "2,1,3,2,1,3,2")
    assert code == 3 and "non-gatherable" in text
    code, text = run("gather", "--type", "B", "--rank", "3", "--word", "2,1,2,3,2,1,3,2",
                     "--triple", "0,1,-1;1,0,1", "--format", "json")
    assert code == 0 and json.loads(text)["gatherable"] is True


def test_gather_reports_both_answers_for_one_element():
    codes = {run("gather", "--type", "B", "--rank", "3", "--word", w,
                 "--triple", "0,1,-1;1,0,1")[0]
             for w in ("1,2,1,3,2,1,3,2", "2,1,2,3,2,1,3,2")}
    assert codes == {0, 3}


def test_gather_cap(monkeypatch):
    code, text = run("gather", "--type", "B", "--rank", "3", "--word", "1,0,1,2,1,0,1", "--cap", "2")
    assert code == 4 and text.startswith("cap-exceeded")
    monkeypatch.setenv("WNGT_CAP", "2")
    code, _ = run("gather", "--type", "B", "--rank", "3", "--word", "1,0,1,2,1,0,1")
    assert code == 4


def test_verify_passes_all_fixtures():
    code, text = run("verify", "--paper-examples")
    assert code == 0
    lines = text.splitlines()
    assert sum(line.startswith("PASS") for line in lines) == 7
    assert lines[-1] == "0 failed"


def test_catalog_brute_and_construct_agree():
    _, brute = run("catalog", "--type", "B", "--rank", "3", "--max-len", "12", "--mode", "brute")
    _, built = run("catalog", "--type", "B", "--rank", "3", "--max-len", "12")
    assert brute.splitlines()[1:] != [] and len(brute.splitlines()) == len(built.splitlines())
    strip = lambda t: [json.dumps({k: v for k, v in json.loads(x).items() if k != "provenance"},
                                  sort_keys=True) for x in t.splitlines()[1:]]
    assert strip(brute) == strip(built)


def test_catalog_writes_file(tmp_path):
    path = tmp_path / "c3.jsonl"
    code, text = run("catalog", "--type", "C", "--rank", "3", "--max-len", "9", "--out", str(path))
    assert code == 0 and text == ""
    assert json.loads(path.read_text().splitlines()[0])["family"] == "C"


def test_catalog_type_a_is_empty():
    code, text = run("catalog", "--type", "A", "--rank", "3", "--max-len", "8")
    assert code == 0 and len(text.splitlines()) == 1


def test_render_is_deterministic(tmp_path):
    cfg = tmp_path / "fig.json"
    cfg.write_text(json.dumps({"n": 6, "u": 1, "v": 2, "p": [3], "t": [1]}))
    a = run("render", "--config", str(cfg))
    b = run("render", "--config", str(cfg))
    assert a == b and a[0] == 0 and "</svg>" in a[1]
    code, svg = run("render", "--word", "0,1,2", "--rank", "3")
    assert code == 0 and "<svg" in svg


def test_missing_file_is_an_io_error():
    code, _ = run("render", "--config", "/nonexistent/file.json")
    assert code == 1
