import io
import json

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from oslo_verifier import cli, suite
from oslo_verifier.report import VerificationReport

pytestmark = pytest.mark.filterwarnings("ignore::DeprecationWarning")


def run_cli(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.startswith("{")]


def test_no_subcommand(capsys):
    code, _, err = run_cli([], capsys)
    assert code == 3 and "subcommand" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["coins", "--n", "x"],
        ["coins", "--n", "0"],
        ["coins", "--trace", "ABC", "1"],
        ["coins", "--trace", "AABB", "9"],
        ["coins", "--golden", "f.txt"],
        ["partners", "--candidate", "cubic"],
        ["partners", "--x", "0.0"],
        ["partners", "--x", "1", "--x2", "1/2"],
        ["primes", "--arrange", "3,9,7"],
        ["primes", "--arrange", "3,7"],
        ["nordic"],
        ["nordic", "--count", "/nonexistent/file"],
        ["pentagon", "--tolerance", "-1"],
        ["all", "--format", "yaml"],
        ["all", "--workers", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    code, out, err = run_cli(argv, capsys)
    assert code == 3
    assert err


@pytest.mark.parametrize(
    "argv, claim, guard",
    [
        (["nordic", "--oracle", "4"], "p6.brute_force", "n <= 3"),
        (["coins", "--n", "8"], "p1.answer_set", "n <= 7"),
        (["primes", "--arrange", ",".join(map(str, [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]))],
         "p3.arrangements", "|S| <= 12"),
        (["diophantine", "--bmax", "1000"], "p5.search", "<= 300"),
    ],
)
def test_refusals(argv, claim, guard, capsys, monkeypatch):
    def boom(*a, **k):
        raise AssertionError("no work may run after a refusal")

    monkeypatch.setattr(cli, "_reports", boom)
    code, out, _ = run_cli(argv + ["--format", "structured"], capsys)
    assert code == 3
    (rec,) = records(out)
    assert rec["claim_id"] == claim and rec["verdict"] == "refused" and guard in rec["guard"]


def test_help_and_version(capsys):
    assert cli.main(["--help"]) == 0
    assert cli.main(["--version"]) == 0
    assert "oslo-verifier" in capsys.readouterr().out


def test_coins_trace_text(capsys):
    code, out, _ = run_cli(["coins", "--trace", "AABBBABA", "4"], capsys)
    assert code == 0
    assert out.startswith("[GREEN] p1.trace") and out.count("\n") == 1
    code, out, _ = run_cli(["coins", "--n", "2", "--trace", "AABBBABA", "4"], capsys)
    assert [line.split()[1] for line in out.splitlines()] == ["p1.answer_set", "p1.trace"]


def test_coins_golden(capsys, golden_dir):
    code, out, _ = run_cli(["coins", "--trace", "AABBBABA", "4", "--golden", str(golden_dir / "p1_worked_example.txt")], capsys)
    assert code == 0
    code, out, _ = run_cli(["coins", "--trace", "AABBBABA", "3", "--golden", str(golden_dir / "p1_worked_example.txt")], capsys)
    assert code == 1


def test_coins_pairs_structured(capsys):
    code, out, _ = run_cli(["coins", "--n", "4", "--k", "3-4", "--format", "structured"], capsys)
    recs = records(out)
    assert code == 0
    assert [(r["parameters"]["k"], r["verdict"]) for r in recs] == [(3, "green"), (4, "green")]


def test_partners_commands(capsys):
    assert run_cli(["partners"], capsys)[0] == 0
    assert run_cli(["partners", "--x", "3/7"], capsys)[0] == 0
    assert run_cli(["partners", "--x", "1", "--x2", "2", "--grid", "6"], capsys)[0] == 0
    # candidates refuted on the grid are green refutations
    assert run_cli(["partners", "--candidate", "scaled:1/2"], capsys)[0] == 0


def test_primes_and_diophantine(capsys):
    assert run_cli(["primes", "--arrange", "3,7,19"], capsys)[0] == 0
    assert run_cli(["primes", "--sweep", "200", "20", "--workers", "2"], capsys)[0] == 0
    assert run_cli(["diophantine", "--lemmas"], capsys)[0] == 0


def test_positive_mode_sweep_is_red(capsys):
    code, out, _ = run_cli(["primes", "--sweep", "100", "40", "--positive", "--format", "structured"], capsys)
    assert code == 1
    assert records(out)[0]["verdict"] == "red"


def test_nordic_commands(capsys, tmp_path):
    code, out, _ = run_cli(["nordic", "--build", "4", "--seed", "3"], capsys)
    assert code == 0
    grid = "\n".join(out.splitlines()[:4])
    path = tmp_path / "sq.txt"
    path.write_text(grid + "\n")
    code, out, _ = run_cli(["nordic", "--count", str(path), "--format", "structured"], capsys)
    assert code == 0 and records(out)[0]["parameters"]["paths"] == 25
    code, out, _ = run_cli(["nordic", "--show-marking", "6", "13"], capsys)
    assert code == 0 and ".#.#.#.#.#.#." in out


def test_pentagon_dump(capsys, tmp_path):
    dump = tmp_path / "d.jsonl"
    code, _, _ = run_cli(["pentagon", "--seeds", "5", "--dump", str(dump)], capsys)
    assert code == 0
    rows = [json.loads(line) for line in dump.read_text().splitlines()]
    assert len(rows) == 5 and set(rows[0]) == {"seed", "config", "residuals", "control_psqr"}


def test_out_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.OUT_DIR_ENV, str(tmp_path))
    code, out, _ = run_cli(["diophantine", "--format", "structured"], capsys)
    assert code == 0 and out == ""
    assert records((tmp_path / "diophantine.jsonl").read_text())[0]["claim_id"] == "p5.search"
    explicit = tmp_path / "x.txt"
    run_cli(["diophantine", "--out", str(explicit)], capsys)
    assert explicit.read_text().startswith("[GREEN] p5.search")


def test_unwritable_output(capsys):
    assert run_cli(["diophantine", "--out", "/nonexistent/dir/out.txt"], capsys)[0] == 3


@pytest.mark.parametrize(
    "verdicts, code",
    [(["green"], 0), (["green", "red"], 1), (["green", "inconclusive"], 2), (["inconclusive", "red"], 1)],
)
def test_injected_exit_codes(verdicts, code, monkeypatch, capsys):
    fake = [VerificationReport(f"x{i}", v, witnesses=["w"]) for i, v in enumerate(verdicts)]
    monkeypatch.setattr(suite, "full_suite", lambda seed, workers: iter(fake))
    assert run_cli(["all"], capsys)[0] == code


def test_guarded_turns_crashes_into_inconclusive():
    def crash():
        raise RuntimeError("boom")

    r = suite.guarded("x.y", crash, a=1)
    assert r.verdict.value == "inconclusive" and "boom" in r.witnesses[0]


tokens = st.sampled_from(
    ["coins", "partners", "primes", "pentagon", "diophantine", "nordic", "all", "--n", "--k", "--seed",
     "--format", "text", "structured", "--oracle", "--build", "--grid", "--x", "--arrange", "-1", "0",
     "9", "abc", "1/0", "3,7", "--workers", "--bmax", "--seeds", "--timing", "--", "", "--out"]
)


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(st.lists(tokens, max_size=5))
def test_fuzz_never_crashes(monkeypatch, argv):
    # cheap stand-ins so the fuzz exercises parsing and dispatch, not the checks
    monkeypatch.setattr(cli, "_reports", lambda config: iter([]))
    monkeypatch.chdir("/tmp")
    stdout = io.StringIO()
    monkeypatch.setattr("sys.stdout", stdout)
    monkeypatch.setattr("sys.stderr", io.StringIO())
    code = cli.main(argv)
    assert code in (0, 1, 2, 3)
