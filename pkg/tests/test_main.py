import json
from fractions import Fraction

import pytest

from src.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, UsageError, giff_op, main, parse_coeffs, show_component
from src.units import polar_u


@pytest.fixture(autouse=True)
def output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("OUTPUT_DIR", str(tmp_path))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.strip().splitlines()


def test_giff_inverse(capsys):
    assert run(capsys, "giff", "--op", "inverse", "--coeffs=-1/2,1/6", "--order", "3") == (EXIT_OK, ["1/2,1/3"])


def test_giff_exp(capsys):
    assert run(capsys, "giff", "--op", "exp", "--coeffs", "1", "--order", "3") == (EXIT_OK, ["1/1,1/1,1/1"])


def test_giff_coproduct(capsys):
    code, lines = run(capsys, "giff", "--op", "coproduct", "--order", "3")
    assert code == EXIT_OK
    assert lines == ["3 | 1,1,1", "2 | 1,2", "2 | 2,1", "1 | 3"]


def test_giff_ops_directly():
    assert giff_op("compose", [1], [1], 3) == ["2/1,2/1"]
    assert giff_op("log", [1, 1, 1], [], 4) == ["1/1,0/1,0/1"]
    assert giff_op("dilator", [Fraction(1, 2)], [], 3) == ["1/2,-1/2"]
    with pytest.raises(UsageError):
        giff_op("inverse", [], [], 0)


def test_bad_coefficients(capsys):
    with pytest.raises(UsageError):
        parse_coeffs("1,x")
    assert main(["giff", "--op", "inverse", "--coeffs", "1,x", "--order", "3"]) == EXIT_USAGE


def test_show(capsys):
    assert run(capsys, "show", "--bimould", "es", "--length", "2") == (EXIT_OK, ["1 / (u1^2 + u1*u2)"])
    assert run(capsys, "show", "--bimould", "re:1") == (EXIT_OK, ["1 / (u1)"])
    assert run(capsys, "show", "--bimould", "ez", "--unit", "polar-v", "--length", "1") == (EXIT_OK, ["1 / (v1)"])


def test_show_rejects_unknown_names():
    with pytest.raises(UsageError):
        show_component("ez2", polar_u())
    with pytest.raises(UsageError):
        show_component("re:0", polar_u())
    assert main(["show", "--bimould", "nope"]) == EXIT_USAGE


def test_usage_errors():
    assert main(["verify", "--check", "no-such-check"]) == EXIT_USAGE
    assert main(["verify", "--check", "negpush", "--unit", "polar-w"]) == EXIT_USAGE
    assert main(["verify", "--check", "negpush", "--max-length", "0"]) == EXIT_USAGE


def test_verify_writes_report(tmp_path, capsys):
    path = tmp_path / "negpush.json"
    code, lines = run(capsys, "verify", "--check", "negpush", "--backend", "exact", "--max-length", "2",
                      "--no-progress", "--report", str(path))
    assert code == EXIT_OK
    assert lines[-1] == "✅ 1 check(s) passed"
    [report] = json.loads(path.read_text())
    assert report["check"] == "negpush"
    assert report["status"] == "pass"
    assert report["max_length"] == 2


def test_verify_default_report_location(output_dir, capsys):
    code, _ = run(capsys, "verify", "--check", "tripartite", "--max-length", "2", "--points", "2",
                  "--no-progress", "--no-timings", "--report")
    assert code == EXIT_OK
    [report] = json.loads((output_dir / "reports" / "verify_tripartite.json").read_text())
    assert report["wall_ms"] is None


def test_verify_failure_exit_code(monkeypatch, capsys):
    from src.verify import REGISTRY, CheckEntry

    def wrong(ctx):
        ctx.expect_true("always false", False)

    monkeypatch.setitem(REGISTRY, "wrong", CheckEntry("wrong", "bimould", "cheap", 1, wrong))
    code, lines = run(capsys, "verify", "--check", "wrong", "--max-length", "1", "--no-progress")
    assert code == EXIT_FAILED
    assert "fail" in lines[0]


def test_verify_skipped_check_exit_code(capsys):
    code, lines = run(capsys, "verify", "--check", "es-split", "--max-length", "1", "--no-progress")
    assert code == EXIT_FAILED
    assert "skipped" in lines[0]
    assert not any("passed" in line for line in lines)


def test_report_timings_default_to_null(tmp_path, capsys):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        code, _ = run(capsys, "verify", "--check", "negpush", "--max-length", "2", "--points", "2",
                      "--no-progress", "--report", str(path))
        assert code == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert json.loads(paths[0].read_text())[0]["wall_ms"] is None

    timed = tmp_path / "timed.json"
    run(capsys, "verify", "--check", "negpush", "--max-length", "2", "--points", "2",
        "--no-progress", "--timings", "--report", str(timed))
    assert isinstance(json.loads(timed.read_text())[0]["wall_ms"], float)
