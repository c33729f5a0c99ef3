import io
import json

import pytest

from charpforms.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_report_keys_in_order(capsys):
    code, out, _ = run(capsys, "hp-class", "--tower", "GF(4)((t))", "--form", "(w + t^-2)*dlog(t)")
    assert code == 0
    data = json.loads(out)
    assert list(data) == ["command", "decided", "representative", "log", "precision", "timing"]
    assert data["decided"] == 1 and data["representative"] == "w*dlog(t)"


def test_verbose_log_is_annotated(capsys):
    code, out, _ = run(capsys, "hp-class", "--tower", "GF(4)((t))", "--form", "(w + t^-2)*dlog(t)", "--verbose")
    log = json.loads(out)["log"]
    assert [step["rule"] for step in log] == ["fold-p-power", "drop-nonzero-theta"]
    assert all(step["note"] for step in log)


def test_undecided_exit_code(capsys):
    code, out, _ = run(capsys, "hp-class", "--tower", "Frac GF(2)[b]", "--form", "b^2*dlog(b)")
    data = json.loads(out)
    assert code == 2 and data["decided"] is None and data["representative"] == "b^2*dlog(b)"
    assert "undecided" in data


def test_hp1_class(capsys):
    code, out, _ = run(capsys, "hp1-class", "--tower", "GF(4)", "--element", "w")
    assert code == 0 and json.loads(out)["decided"] == 1
    code, out, _ = run(capsys, "hp1-class", "--tower", "Frac GF(2)[b]", "--element", "b")
    assert code == 2


def test_reduce_form(capsys):
    code, out, _ = run(capsys, "reduce-form", "--tower", "Frac GF(2)[b]", "--form", "(b^3 + b)*dlog(b)")
    assert code == 0 and json.loads(out)["representative"] == "0"


def test_trace_chain(capsys):
    code, out, _ = run(capsys, "trace", "--tower", "Frac GF(2)[b]", "--ext", "radicial a: b",
                       "--form", "(1 + a)*dlog(a)")
    data = json.loads(out)
    assert code == 0 and data["representative"] == "dlog(b)" and data["class"] == "dlog(b)"


def test_series_commands(capsys):
    code, out, _ = run(capsys, "wprep", "--ring", "GF(5)[[u]][[T]] D=8", "--f", "T^2 - u")
    data = json.loads(out)
    assert code == 0 and data["representative"] == {"unit": "1", "poly": "4*u + T^2"} and data["k"] == 2
    code, out, _ = run(capsys, "wreg", "--ring", "GF(3)[[X1,X2,T]] D=8", "--f", "X1*X2")
    data = json.loads(out)
    assert data["representative"]["exponents"] == [1, 2] and data["k"] == 3
    code, out, _ = run(capsys, "as-solve", "--ring", "GF(2)[[t]] D=16", "--a", "t")
    assert json.loads(out)["representative"] == "t + t^2 + t^4 + t^8"


def test_hensel_and_stdin(capsys, monkeypatch):
    code, out, _ = run(capsys, "hensel", "--ring", "GF(5)[[t]] D=6", "--x0", "0", "--verbose",
                       stdin="X^2 - (1+2*t)*X + t^2\n", monkeypatch=monkeypatch)
    data = json.loads(out)
    assert code == 0 and data["log"][0] == {"step": 0, "valuation": 2}


def test_text_format(capsys):
    code, out, _ = run(capsys, "wdiv", "--ring", "GF(5)[[u]][[T]] D=12", "--f", "T^2-u", "--g", "T^3",
                       "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "wdiv" and "  q: T" in lines and "  r: u*T" in lines


def test_check_suite(capsys):
    code, out, _ = run(capsys, "check", "d-squared", "--tower", "GF(3)((t1))((t2))", "--trials", "5")
    data = json.loads(out)
    assert code == 0 and data["decided"] is True and data["results"][0]["trials"] == 5


@pytest.mark.parametrize("argv", [
    ["hp-class", "--tower", "GF(6)", "--form", "1"],
    ["hp-class", "--tower", "GF(4)((t))", "--form", "dlog(t"],
    ["hp-class", "--tower", "GF(4)((t))", "--form", "t^-1*dlog(t) + O(t^0)"],
    ["wdiv", "--ring", "GF(5)[[u]][[T]]", "--f", "u*T", "--g", "T"],
])
def test_errors_go_to_stderr(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and not out and err.startswith("error:")


def test_empty_stdin_is_an_error(capsys, monkeypatch):
    code, _, err = run(capsys, "hp1-class", "--tower", "GF(4)", stdin="", monkeypatch=monkeypatch)
    assert code == 1 and "no element" in err
