"""Command-line behaviour: output, exit codes, atomic writes."""

import pytest

from trisections import cli

from conftest import fixture_path


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_certified(capsys):
    code, out, _ = run(capsys, "validate", fixture_path("s4_genus0.trid"))
    assert code == 0
    assert out.startswith("status: certified")


def test_validate_cp2(capsys):
    code, out, _ = run(capsys, "validate", fixture_path("cp2.trid"))
    assert code == 0


def test_validate_corrupted_file(tmp_path, capsys):
    bad = tmp_path / "bad.trid"
    bad.write_text("PARAMS trisection x 0 0 0\nSCHEMA\na1 b1 -a1\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "line" in err


def test_invariants_report(capsys):
    code, out, _ = run(capsys, "invariants", fixture_path("cp2.trid"))
    assert code == 0
    assert "chi: 3" in out
    assert "h1: trivial" in out
    code, out, _ = run(capsys, "invariants", fixture_path("s1xs3.trid"))
    assert "h1: 0" in out


def test_replay_proof(capsys, tmp_path):
    out_file = tmp_path / "final.trid"
    code, out, _ = run(capsys, "replay", fixture_path("glued_start.trid"),
                       fixture_path("proof.mvs"), "--out", str(out_file),
                       "--trace", str(tmp_path / "trace.txt"))
    assert code == 0
    want = open(fixture_path("t_prime_standard.trid")).read()
    assert out_file.read_text() == want
    assert "final digest:" in out


def test_replay_wrong_assert_exits_4(capsys, tmp_path):
    script = tmp_path / "bad.mvs"
    script.write_text("ASSERT genus 9\n")
    code, _, err = run(capsys, "replay", fixture_path("s4_genus0.trid"),
                       str(script))
    assert code == 4
    assert "step 1" in err


def test_replay_move_failure_exits_3(capsys, tmp_path):
    script = tmp_path / "bad.mvs"
    script.write_text("DESTABILIZE auto\n")
    code, _, err = run(capsys, "replay", fixture_path("s4_genus0.trid"),
                       str(script))
    assert code == 3


def test_replay_failure_writes_nothing(capsys, tmp_path):
    script = tmp_path / "bad.mvs"
    script.write_text("STABILIZE 1\nASSERT genus 9\n")
    out_file = tmp_path / "final.trid"
    code, _, _ = run(capsys, "replay", fixture_path("s4_genus0.trid"),
                     str(script), "--out", str(out_file))
    assert code == 4
    assert not out_file.exists()


def test_render_svg_file(capsys, tmp_path):
    out_file = tmp_path / "cp2.svg"
    code, _, _ = run(capsys, "render", fixture_path("cp2.trid"),
                     "--svg", str(out_file))
    assert code == 0
    text = out_file.read_text()
    assert text.count('class="curve') == 3
    assert text.count('class="basepoint"') == 2
    # byte-identical on a second run
    run(capsys, "render", fixture_path("cp2.trid"), "--svg", str(out_file))
    assert out_file.read_text() == text


def test_render_stdout(capsys):
    code, out, _ = run(capsys, "render", fixture_path("stab_type1.trid"))
    assert code == 0
    assert out.startswith('<?xml')


def test_missing_file_is_parse_error(capsys):
    code, _, err = run(capsys, "validate", "/does/not/exist.trid")
    assert code == 2


def test_strict_flag(capsys):
    # the relative standard validates as homologically-consistent, which
    # --strict treats as failure
    code, _, _ = run(capsys, "validate", fixture_path("rel_standard.trid"))
    assert code == 0
    code, _, err = run(capsys, "validate", "--strict",
                       fixture_path("rel_standard.trid"))
    assert code == 1
