import json

import pytest

from gdesign.cli import EXIT_INVALID, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, run_cli
from gdesign.generators import FIXTURE_NAMES, fixture_designs, kite_cyclic_design, star_design
from gdesign.io import DocumentError, decode, dumps, encode, load, loads, save


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(name):
    obj = fixture_designs(name)
    assert loads(dumps(obj)) == obj


def test_generator_round_trip():
    for d in (kite_cyclic_design(2), star_design(10, 5)):
        assert decode(encode(d)) == d


def test_c5_fixture_has_11_blocks():
    assert len(fixture_designs("c5-k11-cyclic").blocks) == 11


def test_complete_host_encoding():
    doc = encode(kite_cyclic_design(1))
    assert doc["host"] == {"kind": "complete", "v": 9}
    assert doc["pattern"] == {"kind": "kite"}
    assert doc["v"] == 1 and doc["type"] == "design"


def _design_doc(**over):
    doc = {"v": 1, "type": "design", "host": {"kind": "complete", "v": 4},
           "pattern": {"kind": "kite"}, "blocks": [[0, 1, 2, 3]]}
    doc.update(over)
    return doc


@pytest.mark.parametrize("doc,where", [
    (_design_doc(blocks=[[0, 1, 2, 3], [0, 1, 2]]), "$.blocks[1]"),
    (_design_doc(pattern={"kind": "hexagon"}), "$.pattern.kind"),
    (_design_doc(blocks=[[0, 1, -2, 3]]), "$.blocks[0][2]"),
    (_design_doc(host={"kind": "blob"}), "$.host.kind"),
    (_design_doc(v=7), "$.v"),
    (_design_doc(pattern={"kind": "path", "k": 1}), "$.pattern"),
    ([], "$"),
])
def test_decode_diagnostics(doc, where):
    with pytest.raises(DocumentError) as exc:
        decode(doc)
    assert exc.value.where == where


def test_bad_json():
    with pytest.raises(DocumentError):
        loads("{not json")


def test_decode_does_not_validate_design():
    d = decode(_design_doc())
    assert len(d.blocks) == 1


def test_atomic_save(tmp_path):
    p = tmp_path / "d.json"
    save(kite_cyclic_design(1), p)
    assert load(p) == kite_cyclic_design(1)
    assert [f.name for f in tmp_path.iterdir()] == ["d.json"]


def test_cli_pipeline_kite(tmp_path, capsys):
    d, c = tmp_path / "d.json", tmp_path / "c.json"
    assert run_cli(["gen", "--pattern", "kite", "--order", "17", "--profile", "degree2", "-o", str(d)]) == EXIT_OK
    assert run_cli(["downlink", str(d), "-o", str(c), "--minimal"]) == EXIT_OK
    assert run_cli(["verify", str(c)]) == EXIT_OK
    assert load(c).target_order == 16


def test_cli_verify_fixture(tmp_path):
    f = tmp_path / "c5.json"
    assert run_cli(["fixture", "c5-k11-downlink", "-o", str(f)]) == EXIT_OK
    assert run_cli(["verify", str(f)]) == EXIT_OK


def test_cli_verify_invalid(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(_design_doc()))
    assert run_cli(["verify", str(f)]) == EXIT_INVALID
    assert "uncovered-edge" in capsys.readouterr().out


def test_cli_malformed_file(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text("[")
    assert run_cli(["verify", str(f)]) == EXIT_INVALID


def test_cli_spectrum(capsys):
    assert run_cli(["spectrum", "--pattern", "p4", "--order", "4", "--mode", "some"]) == EXIT_OK
    assert "eta1 = 4" in capsys.readouterr().out


def test_cli_oracle(tmp_path, capsys):
    out = tmp_path / "c4.json"
    assert run_cli(["oracle", "decompose", "--pattern", "c4", "--order", "9", "-o", str(out)]) == EXIT_OK
    assert run_cli(["oracle", "downlink", str(out), "--order", "8"]) == EXIT_OK
    assert run_cli(["oracle", "decompose", "--pattern", "p3", "--order", "6"]) == EXIT_INVALID
    assert run_cli(["oracle", "decompose", "--pattern", "c4", "--order", "9", "--budget", "2"]) == EXIT_UNKNOWN


def test_cli_usage_errors(capsys):
    assert run_cli([]) == EXIT_USAGE
    assert run_cli(["gen", "--order", "9"]) == EXIT_USAGE
    assert run_cli(["gen", "--pattern", "bogus", "--order", "9", "-o", "x"]) == EXIT_USAGE
    assert run_cli(["fixture", "nope"]) == EXIT_USAGE


def test_cli_impossible_design(tmp_path, capsys):
    assert run_cli(["gen", "--pattern", "star", "--order", "12", "--k", "4", "-o", str(tmp_path / "s")]) == EXIT_INVALID


def test_cli_fixture_list(capsys):
    assert run_cli(["fixture"]) == EXIT_OK
    assert "c5-k11-cyclic" in capsys.readouterr().out
