"""File formats and the replay engine."""

import random

import pytest

from trisections import moves, scriptlang
from trisections.diagram import (
    ArcedRelativeDiagram,
    DoublyPointedDiagram,
    TrisectionDiagram,
)
from trisections.scriptlang import (
    ParseError,
    ReplayAssertError,
    ReplayMoveError,
    diagram_digest,
    load_diagram_file,
    parse_diagram,
    parse_script,
    replay,
    serialize_diagram,
    serialize_script,
)

from conftest import (
    FIXTURES,
    fixture_names,
    fixture_text,
    load_fixture,
    random_closed_diagram,
)


@pytest.mark.parametrize("name", fixture_names(".trid"))
def test_fixture_roundtrip_bytes(name):
    text = fixture_text(name)
    pf = load_diagram_file(text)
    assert serialize_diagram(pf.diagram, matching=pf.matching) == text


def test_random_diagram_roundtrip():
    rng = random.Random(20260826)
    for _ in range(60):
        d = random_closed_diagram(rng)
        text = serialize_diagram(d)
        again = parse_diagram(text)
        assert serialize_diagram(again) == text
        assert diagram_digest(again) == diagram_digest(d)


def test_parse_kinds():
    assert isinstance(load_fixture("s4_genus0.trid"), TrisectionDiagram)
    assert isinstance(load_fixture("cp2.trid"), DoublyPointedDiagram)
    assert isinstance(load_fixture("nu_pminus.trid"), ArcedRelativeDiagram)
    pf = load_diagram_file(fixture_text("unknot_complement.trid"))
    assert pf.matching is not None
    assert pf.matching.pairs == (("d1", "d1"), ("d2", "d2"))


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse_diagram("PARAMS trisection 0 0 0 0\nWHAT\n")
    assert e.value.line == 2
    with pytest.raises(ParseError) as e:
        parse_diagram("")
    assert e.value.kind == "syntax"
    bad = ("PARAMS trisection 1 0 0 0\nSCHEMA\na1 b1 -a1 -b1\n"
           "CURVES alpha\nb1:7\n")
    with pytest.raises(ParseError) as e:
        parse_diagram(bad)
    assert e.value.kind == "semantic"
    assert e.value.line == 5


def test_parse_rejects_bad_params():
    with pytest.raises(ParseError):
        parse_diagram("PARAMS trisection 0 1 0 0\nSCHEMA\na1 -a1\n")
    with pytest.raises(ParseError):
        parse_diagram("PARAMS sandwich 0 0 0 0\nSCHEMA\na1 -a1\n")


def test_script_roundtrip():
    text = ("SLIDE alpha 0 1 0 0\nNORMALIZE\nSTABILIZE 2 0\n"
            "DESTABILIZE auto\nDESTABILIZE 1 1 1 0 alpha\n"
            "GLUE other.trid\nCAP identity-monodromy\nASSERT chi 2\n")
    s = parse_script(text)
    assert serialize_script(s) == text
    assert [c.name for c in s.commands] == [
        "SLIDE", "NORMALIZE", "STABILIZE", "DESTABILIZE", "DESTABILIZE",
        "GLUE", "CAP", "ASSERT"]


def test_script_parse_errors():
    for text in ("WOBBLE\n", "SLIDE alpha 0 1\n", "ASSERT chi\n",
                 "DESTABILIZE 1 2\n", "CAP\n"):
        with pytest.raises(ParseError):
            parse_script(text)


def test_replay_roundtrip_script():
    d = load_fixture("s1xs3.trid")
    script = parse_script(fixture_text("roundtrip.mvs"))
    final, trace = replay(script, d, base_dir=FIXTURES)
    assert diagram_digest(final) == diagram_digest(d)
    assert trace.destabilization_count() == 1
    assert [r.step for r in trace.rows] == [0, 1, 2]


def test_replay_assert_failure_carries_step():
    d = load_fixture("s4_genus0.trid")
    script = parse_script("STABILIZE 1\nASSERT genus 5\n")
    with pytest.raises(ReplayAssertError) as e:
        replay(script, d, base_dir=FIXTURES)
    assert e.value.step == 2
    assert e.value.trace is not None
    assert len(e.value.trace.rows) == 2  # start row + STABILIZE row


def test_replay_move_failure_carries_step():
    d = load_fixture("s4_genus0.trid")
    script = parse_script("DESTABILIZE auto\n")
    with pytest.raises(ReplayMoveError) as e:
        replay(script, d, base_dir=FIXTURES)
    assert e.value.step == 1


def test_replay_glue_command():
    d = load_fixture("nu_unknot.trid")
    script = parse_script("GLUE unknot_complement.trid\n"
                          "ASSERT chi 2\nASSERT h1 trivial\n"
                          "DESTABILIZE auto\nDESTABILIZE auto\n"
                          "ASSERT genus 0\n")
    final, trace = replay(script, d, base_dir=FIXTURES)
    assert final.params.g == 0
    assert trace.destabilization_count() == 2


def test_replay_is_deterministic():
    d = load_fixture("glued_start.trid")
    script = parse_script(fixture_text("proof.mvs"))
    f1, t1 = replay(script, d, base_dir=FIXTURES)
    f2, t2 = replay(script, d, base_dir=FIXTURES)
    assert t1.lines() == t2.lines()
    assert diagram_digest(f1) == diagram_digest(f2)


def test_trace_rows_report_invariants():
    d = load_fixture("s4_genus0.trid")
    script = parse_script("STABILIZE 3\n")
    _, trace = replay(script, d, base_dir=FIXTURES)
    row = trace.rows[-1]
    assert row.genus == 1
    assert row.chi == 2
    assert row.h1 == ()
    assert row.validation == "certified"
    assert len(row.digest) == 64
