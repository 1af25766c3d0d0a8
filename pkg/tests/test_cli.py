import json

import pytest

from thuetwist.cli import main, parse_range


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def jsonl(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_parse_range():
    assert parse_range("-2..2") == range(-2, 3)
    assert parse_range("4") == range(4, 5)


def test_form(capsys):
    code, out, _ = run(capsys, "form", "shanks:n=1", "--a", "0")
    assert code == 0
    assert jsonl(out) == [{"degree": 3, "coeffs": ["1", "0", "-3", "-1"], "a": 0}]
    code, out, _ = run(capsys, "form", "bh:D=1,n=2,c=1", "--a", "0")
    assert jsonl(out)[0]["coeffs"] == ["1", "-4", "6", "-4", "-1"]
    code, out, _ = run(capsys, "form", "shanks:n=1", "--a", "-2..2")
    assert len(jsonl(out)) == 5


def test_form_csv(capsys):
    code, out, _ = run(capsys, "form", "shanks:n=1", "--a", "0..1", "--format", "csv")
    assert out.splitlines()[1:] == ["0,1,0,-3,-1", "1,1,3,0,-1"]


def test_form_degenerate_notice(capsys):
    # alpha = eps^-1, so a = 1 gives the rational element 1
    desc = "custom:poly=[-1,-3,0,1],alpha=[-1,-1,0],eps=[-2,-1,1]"
    code, out, err = run(capsys, "form", desc, "--a", "0..1")
    assert code == 0 and "a=1: degenerate" in err
    assert jsonl(out)[1] == {"a": 1, "degenerate": True, "degree": 1}


def test_coeffs(capsys):
    code, out, _ = run(capsys, "coeffs", "bh:D=1,n=2,c=1", "--a", "0", "--h", "1")
    assert jsonl(out) == [{"a": 0, "U": {"1": "4"}}]


@pytest.mark.parametrize("argv", [
    ("verify", "bh:D=2,n=3,c=-1", "--suite", "prop41", "--a", "-4..4"),
    ("verify", "shanks:n=5", "--suite", "shanks", "--a", "-6..6"),
    ("verify", "bh:D=1,n=2,c=1", "--suite", "ud"),
    ("verify", "bh:D=2,n=2,c=1", "--suite", "factorization", "--a", "-1..1"),
    ("verify", "bh:D=1,n=3,c=1", "--suite", "quadratic"),
    ("verify", "shanks:n=2", "--suite", "cubic"),
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert jsonl(out)[0]["passed"] is True


def test_verify_wrong_family_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "shanks:n=1", "--suite", "prop41")
    assert code == 2 and "bh" in err


def test_search_both(capsys):
    code, out, _ = run(capsys, "search", "shanks:n=1", "--a", "-3..3", "--bound", "200", "--m", "3",
                       "--engine", "both")
    recs = jsonl(out)
    summary = recs[-1]
    assert code == 0
    assert summary["engines_agree"] is True and summary["max_kappa"] is not None
    assert all(set(r) == {"a", "x", "y", "value", "kappa"} for r in recs[:-1])


def test_search_m1_and_usage(capsys):
    code, out, err = run(capsys, "search", "shanks:n=1", "--a", "0", "--bound", "50", "--m", "1")
    assert code == 0 and "undefined" in err
    assert jsonl(out)[-1]["kappa_defined"] is False
    code, _, _ = run(capsys, "search", "shanks:n=1", "--a", "0", "--bound", "0", "--m", "1")
    assert code == 2


def test_siegel(capsys):
    code, out, _ = run(capsys, "siegel", "shanks:n=1", "--a", "1", "--x", "2", "--y", "1", "--triple", "0,1,2")
    rec = jsonl(out)[0]
    assert code == 0
    assert rec["residual"]["contains_zero"] and rec["residual"]["width_log2"] < -80
    code, _, _ = run(capsys, "siegel", "shanks:n=1", "--a", "1", "--x", "2", "--y", "1", "--triple", "0,0,1")
    assert code == 2


def test_lemma(capsys, tmp_path):
    code, _, _ = run(capsys, "lemma", "--t", "6", "--trials", "10")
    assert code == 2
    target = tmp_path / "fuzz.json"
    code, out, _ = run(capsys, "lemma", "--t", "6", "--trials", "2000", "--seed", "42", "--out", str(target))
    assert code == 0 and out == ""
    first = target.read_text()
    assert json.loads(first)["failures"] == 0
    run(capsys, "lemma", "--t", "6", "--trials", "2000", "--seed", "42", "--out", str(target))
    assert target.read_text() == first


def test_bad_descriptor_and_precision(capsys):
    code, _, _ = run(capsys, "form", "bh:D=1,n=2,c=-1", "--a", "0")
    assert code == 2
    code, _, _ = run(capsys, "form", "shanks:n=1", "--a", "0", "--precision", "16")
    assert code == 2
