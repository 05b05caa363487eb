import io
import json
import threading

import pytest
from hypothesis import given, strategies as st

from oslo_verifier.report import (
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_RED,
    EXIT_USAGE,
    ReportError,
    ReportWriter,
    Verdict,
    VerificationReport,
    aggregate,
    emit,
    exit_code,
    green_or_red,
    parse,
    refused,
)

json_scalar = st.one_of(st.integers(-10**6, 10**6), st.text(max_size=8), st.booleans(), st.none())


@st.composite
def reports(draw):
    verdict = draw(st.sampled_from(list(Verdict)))
    witnesses = draw(st.lists(json_scalar, max_size=3))
    if verdict is Verdict.RED and not witnesses:
        witnesses = ["w"]
    guard = draw(st.text(min_size=1, max_size=10)) if verdict is Verdict.REFUSED else None
    return VerificationReport(
        claim_id=draw(st.sampled_from(["p1.a", "p2.b", "p3.c", "p4.d"])),
        verdict=verdict,
        parameters=draw(st.dictionaries(st.text(max_size=5), json_scalar, max_size=3)),
        witnesses=witnesses,
        metrics=draw(st.dictionaries(st.sampled_from(["m1", "m2", "m3"]), st.floats(-1e6, 1e6), max_size=3)),
        guard=guard,
        seed=draw(st.one_of(st.none(), st.integers(0, 10**9))),
        elapsed=draw(st.floats(0, 100)),
    )


def test_invariants():
    with pytest.raises(ReportError):
        VerificationReport("x", Verdict.RED)
    with pytest.raises(ReportError):
        VerificationReport("x", Verdict.REFUSED)
    with pytest.raises(ValueError):
        VerificationReport("x", "purple")
    assert green_or_red("x", []).verdict is Verdict.GREEN
    assert green_or_red("x", [1]).verdict is Verdict.RED
    assert refused("x", "n <= 3", n=4).parameters == {"n": 4}


@given(reports())
def test_structured_round_trip(r):
    buf = io.StringIO()
    emit(r, buf, "structured", timing=True)
    line = buf.getvalue()
    assert line.endswith("\n") and line.count("\n") == 1
    assert parse(line) == r


@given(reports())
def test_timing_excluded_by_request(r):
    buf = io.StringIO()
    emit(r, buf, "structured", timing=False)
    d = json.loads(buf.getvalue())
    assert "elapsed" not in d
    assert list(d) == ["claim_id", "verdict", "parameters", "witnesses", "metrics", "guard", "seed"]


def test_text_format():
    buf = io.StringIO()
    emit(green_or_red("p9.x", [1, 2, 3, 4], parameters={"n": 2}), buf, "text", timing=False)
    assert buf.getvalue() == "[RED] p9.x n=2 witnesses: [1, 2, 3] (+1 more)\n"
    with pytest.raises(ValueError):
        emit(green_or_red("p9.x", []), buf, "xml")


@given(st.lists(reports(), max_size=12), st.randoms())
def test_aggregate_is_order_independent(rs, rnd):
    shuffled = list(rs)
    rnd.shuffle(shuffled)
    assert aggregate(rs) == aggregate(shuffled)
    assert aggregate(rs).total == len(rs)


def test_aggregate_contents():
    rs = [
        VerificationReport("a", "green", metrics={"m": 1.0}, elapsed=0.5),
        VerificationReport("a", "green", metrics={"m": 3.0}, elapsed=0.25),
        VerificationReport("b", "inconclusive", metrics={"m": -1.0}),
    ]
    s = aggregate(rs)
    assert s.counts == {"green": 2, "red": 0, "inconclusive": 1, "refused": 0}
    assert s.worst_metrics == {"m": 3.0}
    assert s.total_elapsed == 0.75
    assert s.duplicate_claim_ids == ["a"]


@pytest.mark.parametrize(
    "verdicts, code",
    [
        ([], EXIT_OK),
        (["green"], EXIT_OK),
        (["green", "red"], EXIT_RED),
        (["inconclusive", "red"], EXIT_RED),
        (["green", "inconclusive"], EXIT_INCONCLUSIVE),
        (["refused"], EXIT_USAGE),
        (["refused", "inconclusive"], EXIT_INCONCLUSIVE),
    ],
)
def test_exit_code(verdicts, code):
    rs = [VerificationReport("c", v, witnesses=["w"], guard="g") for v in verdicts]
    assert exit_code(rs) == code


def test_writer_serializes_concurrent_producers():
    buf = io.StringIO()
    writer = ReportWriter([(buf, "structured")])

    def produce(i):
        for j in range(50):
            writer(green_or_red(f"t{i}.{j}", []))

    threads = [threading.Thread(target=produce, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    lines = buf.getvalue().splitlines()
    assert len(lines) == len(writer.reports) == 400
    assert {parse(line).claim_id for line in lines} == {r.claim_id for r in writer.reports}
