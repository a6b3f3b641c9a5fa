"""Catalog parsing/building and the command line interface."""

import json

import pytest

from lienilp.catalog import Catalog, load_catalog
from lienilp.cli import main
from lienilp.errors import (
    CatalogParseError,
    NotHomomorphismError,
    UnknownConstructionError,
    UnresolvedReferenceError,
)

REQUIRED_ENTRIES = {"C2", "C4", "C2xC2", "D8", "Q8", "C4xC2", "D8xD8",
                    "C2wrC4", "H27", "C3wrC3", "H125", "S3"}


# --- catalog ---------------------------------------------------------------------


def test_shipped_catalog_loads(catalog):
    names = {e.name for e in catalog.entries}
    assert REQUIRED_ENTRIES <= names
    for entry in catalog.entries:
        assert catalog.build(entry.name).order >= 1


def test_builds_well_known_orders(built):
    assert built("D8").order == 8
    assert built("C2wrC4").order == 64
    assert built("H125").order == 125
    assert built("D8sd").order == 8


def test_parse_error_reports_line(tmp_path):
    f = tmp_path / "bad.jsonl"
    f.write_text('{"kind": "cyclic", "name": "C2", "order": 2}\nnot json\n')
    with pytest.raises(CatalogParseError) as err:
        load_catalog(f)
    assert err.value.line == 2


def test_duplicate_name_rejected(tmp_path):
    f = tmp_path / "dup.jsonl"
    f.write_text('{"kind": "cyclic", "name": "A", "order": 2}\n'
                 '{"kind": "cyclic", "name": "A", "order": 3}\n')
    with pytest.raises(CatalogParseError):
        load_catalog(f)


def test_unknown_kind(tmp_path):
    f = tmp_path / "weird.jsonl"
    f.write_text('{"kind": "sporadic", "name": "M"}\n')
    with pytest.raises(UnknownConstructionError):
        load_catalog(f)


def test_unresolved_and_cyclic_references(tmp_path):
    f = tmp_path / "refs.jsonl"
    f.write_text(
        '{"kind": "direct_product", "name": "A", "factors": ["B", "B"]}\n'
        '{"kind": "direct_product", "name": "B", "factors": ["A", "A"]}\n'
        '{"kind": "direct_product", "name": "C", "factors": ["nope", "A"]}\n')
    cat = Catalog(load_catalog(f))
    with pytest.raises(UnresolvedReferenceError, match="cyclic"):
        cat.build("A")
    with pytest.raises(UnresolvedReferenceError, match="nope"):
        cat.build("C")


def test_semidirect_action_on_generators(tmp_path):
    f = tmp_path / "sd.jsonl"
    f.write_text(
        '{"kind": "cyclic", "name": "C4", "order": 4}\n'
        '{"kind": "cyclic", "name": "C2", "order": 2}\n'
        '{"kind": "semidirect", "name": "D8v", "parts": ["C4", "C2"],'
        ' "action": {"1": [0, 3, 2, 1]}}\n')
    g = Catalog(load_catalog(f)).build("D8v")
    assert g.order == 8 and not g.is_abelian()


def test_semidirect_action_must_cover(tmp_path):
    f = tmp_path / "sd.jsonl"
    f.write_text(
        '{"kind": "cyclic", "name": "C4", "order": 4}\n'
        '{"kind": "direct_product", "name": "V", "factors": ["C2", "C2"]}\n'
        '{"kind": "cyclic", "name": "C2", "order": 2}\n'
        '{"kind": "semidirect", "name": "X", "parts": ["C4", "V"],'
        ' "action": {"0": [0, 1, 2, 3]}}\n')
    with pytest.raises(NotHomomorphismError):
        Catalog(load_catalog(f)).build("X")


def test_comments_and_blank_lines_skipped(tmp_path):
    f = tmp_path / "c.jsonl"
    f.write_text('# header\n\n{"kind": "cyclic", "name": "C3", "order": 3}\n')
    assert len(load_catalog(f)) == 1


# --- CLI -------------------------------------------------------------------------


def test_analyze_d8(capsys):
    rc = main(["analyze", "D8", "--prime", "2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "verdict       : maximal" in out
    assert "t upper (formula): 3" in out


def test_analyze_s3_not_lie_nilpotent(capsys):
    rc = main(["analyze", "S3", "--prime", "2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "not_lie_nilpotent" in out


def test_analyze_unknown_group_exits_2(capsys):
    rc = main(["analyze", "Nope", "--prime", "2"])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_analyze_json_deterministic(capsys):
    rc = main(["analyze", "C3wrC3", "--prime", "3", "--json", "--no-oracle"])
    first = capsys.readouterr().out
    assert rc == 0
    rc = main(["analyze", "C3wrC3", "--prime", "3", "--json", "--no-oracle"])
    second = capsys.readouterr().out
    assert rc == 0
    assert first == second
    payload = json.loads(first)
    assert payload["t_upper_jennings"] == 8
    assert payload["verdict"] == "almost_maximal.iv"
    assert payload["d_vector"] == {"2": 1, "3": 1}
    assert payload["oracle"]["ran"] is False


def test_analyze_force_oracle(capsys):
    rc = main(["analyze", "C2wrC4", "--prime", "2", "--json", "--cap", "8",
               "--oracle"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["oracle"]["ran"] is True
    assert payload["oracle"]["t_upper"] == 8


def test_analyze_cap_skips_oracle(capsys):
    rc = main(["analyze", "D8", "--prime", "2", "--json", "--cap", "4"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["oracle"]["ran"] is False
    assert payload["checks"]["oracle_upper_matches_jennings"] is None


def test_scan_p2(capsys):
    rc = main(["scan", "--prime", "2", "--max-order", "64", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    summary = payload["summary"]
    assert summary["biconditional_violations"] == []
    assert summary["verdict_counts"]["almost_maximal.i"] == 1
    assert summary["verdict_counts"]["almost_maximal.iii"] == 1
    names = {w["name"] for w in summary["sharpness_witnesses"]}
    assert "C2wrC4" in names


def test_scan_p3(capsys):
    rc = main(["scan", "--prime", "3", "--max-order", "81", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    names = {w["name"] for w in payload["summary"]["sharpness_witnesses"]}
    assert "C3wrC3" in names


def test_scan_p5_no_oracle_text(capsys):
    rc = main(["scan", "--prime", "5", "--no-oracle"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "C5wrC5" in out


def test_selftest_skips_oracle_criteria(capsys):
    rc = main(["selftest", "--cap", "0", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    by_key = {c["key"]: c["status"] for c in payload["criteria"]}
    assert by_key["1-golden-indices"] == "skip"
    assert by_key["4-bounds"] == "skip"
    assert by_key["3-biconditional"] == "pass"
    assert by_key["8-negative-controls"] == "pass"


def test_console_script_entry():
    import subprocess
    import sys
    proc = subprocess.run(
        [sys.executable, "-m", "lienilp.cli", "analyze", "Q8",
         "--prime", "2", "--json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["t_upper_jennings"] == 3
