"""CLI surface: commands, exit codes, report formats, determinism."""

import json

import pytest

from twistlab.cli import main
from twistlab.corpus import fixture_corpus, load_corpus
from twistlab.errors import CurveParseError


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_info_text(capsys):
    code, out = run(capsys, ["info", "[1,0,1,-76,298]"])
    assert code == 0
    assert "conductor        50" in out
    assert "torsion          Z/3Z" in out


def test_info_171b2(capsys):
    code, out = run(capsys, ["info", "[0,0,1,-84,315]"])
    assert code == 0
    assert "conductor        171" in out
    assert "Z/3Z" in out


def test_info_json_schema(capsys):
    code, out = run(capsys, ["info", "[1,0,1,-76,298]", "--json"])
    doc = json.loads(out)
    assert set(doc) == {"curve", "invariants", "reduction", "torsion"}
    assert doc["reduction"]["conductor"] == 50
    assert doc["torsion"]["structure"] == "Z/3Z"


def test_info_singular_exits_2(capsys):
    assert main(["info", "[0,0,0,0,0]"]) == 2


def test_info_parse_error_exits_2(capsys):
    assert main(["info", "[1,2,3]"]) == 2


def test_twist_command(capsys):
    code, out = run(capsys, ["twist", "[0,1,1,-9,-15]", "-d", "-3"])
    assert code == 0
    assert "[0,0,1,-84,315]" in out


def test_growth_text(capsys):
    code, out = run(capsys, ["growth", "[1,0,1,-76,298]", "-d", "5"])
    assert code == 0
    assert "growth primes    [5]" in out
    assert "odd quotient     5" in out


def test_growth_json_schema(capsys):
    code, out = run(capsys, ["growth", "[1,0,1,-76,298]", "-d", "5", "--json"])
    doc = json.loads(out)
    assert set(doc) == {"curve", "invariants", "reduction", "torsion", "growth", "verdicts"}
    assert doc["growth"]["growth_primes"] == [5]
    assert doc["growth"]["quotient_odd_part"] == 5
    assert len(doc["verdicts"]) == 5


def test_growth_50a4(capsys):
    code, out = run(capsys, ["growth", "[1,0,1,549,-2202]", "-d", "-3", "--json"])
    doc = json.loads(out)
    assert doc["growth"]["odd_L_torsion"] == "Z/3Z"


def test_growth_trivial_extension_exits_2(capsys):
    assert main(["growth", "[1,0,1,-76,298]", "-d", "1"]) == 2


def test_heegner_examples(capsys):
    code, out = run(capsys, ["heegner", "[1,0,1,-76,298]", "-d", "-31"])
    assert code == 0 and "heegner          True" in out
    code, out = run(capsys, ["heegner", "[1,0,1,-76,298]", "-d", "-3"])
    assert code == 0 and "heegner          False" in out and "inert" in out
    code, out = run(capsys, ["heegner", "[1,0,1,-76,298]", "-d", "5"])
    assert code == 0 and "heegner          False" in out and "not imaginary" in out


def test_fixture_corpus_bundled():
    entries = fixture_corpus()
    assert [e.label for e in entries] == [
        "50a2", "50b3", "19a2", "171b2", "26.b1", "1225.b2", "50a4",
    ]


def test_load_corpus_rejects_bad_header(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("label,a1,a2,a3,a4\nx,1,2,3,4\n")
    with pytest.raises(CurveParseError):
        load_corpus(bad)


def test_load_corpus_rejects_duplicates(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("label,a1,a2,a3,a4,a6\nx,0,0,0,1,0\nx,0,0,0,4,0\n")
    with pytest.raises(CurveParseError):
        load_corpus(bad)


def test_verify_empty_corpus(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("label,a1,a2,a3,a4,a6\n")
    rep = tmp_path / "rep.json"
    code, out = run(
        capsys,
        ["verify", str(empty), "--d-min", "-3", "--d-max", "3", "--json-out", str(rep)],
    )
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["pairs_checked"] == 0 and doc["violations"] == []


def test_verify_malformed_csv_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("label,a1\nx,1\n")
    assert main(["verify", str(bad)]) == 2


def test_verify_small_sweep_outputs(tmp_path, capsys):
    corpus = tmp_path / "c.csv"
    corpus.write_text("label,a1,a2,a3,a4,a6\ncurveA,1,0,1,-76,298\n")
    rep = tmp_path / "rep.json"
    csv_out = tmp_path / "pairs.csv"
    figs = tmp_path / "figs"
    code, out = run(
        capsys,
        [
            "verify", str(corpus),
            "--d-min", "-5", "--d-max", "5",
            "--json-out", str(rep), "--csv-out", str(csv_out),
            "--figures-dir", str(figs),
        ],
    )
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["pairs_checked"] == 7  # squarefree in [-5,5] minus {0,1}
    assert set(doc["verdicts_by_theorem"]) == {
        "Thm_TwistNoLargeTorsion", "Thm_RamifiedPrimesBad",
        "Thm_TorsionGrowthPowerOf2", "Cor_LocalTwist", "Cor_Heegner",
    }
    assert doc["violations"] == []
    header = csv_out.read_text().splitlines()[0]
    assert header.startswith("label,d,")
    assert sorted(p.name for p in figs.iterdir()) == [
        "odd_growth_by_d.png", "verdicts_by_theorem.png",
    ]


def test_verify_bundled_corpus_default_range(tmp_path, capsys):
    rep = tmp_path / "rep.json"
    code, out = run(capsys, ["verify", "--json-out", str(rep)])
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["d_range"] == [-20, 20]
    assert doc["pairs_checked"] == 7 * 25
    assert doc["violations"] == []


def test_verify_report_byte_stable_across_parallelism(tmp_path, capsys):
    corpus = tmp_path / "c.csv"
    corpus.write_text(
        "label,a1,a2,a3,a4,a6\nb,0,1,1,-9,-15\na,1,0,1,-76,298\n"
    )
    outputs = []
    for workers in ("1", "2", "1"):
        rep = tmp_path / f"rep{len(outputs)}.json"
        code, _ = run(
            capsys,
            [
                "verify", str(corpus),
                "--d-min", "-4", "--d-max", "4",
                "--parallelism", workers,
                "--json-out", str(rep),
            ],
        )
        assert code == 0
        outputs.append(rep.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_parallelism_env_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TWISTLAB_PARALLELISM", "2")
    monkeypatch.setenv("TWISTLAB_D_MIN", "-3")
    monkeypatch.setenv("TWISTLAB_D_MAX", "3")
    corpus = tmp_path / "c.csv"
    corpus.write_text("label,a1,a2,a3,a4,a6\nx,0,1,1,-9,-15\n")
    rep = tmp_path / "rep.json"
    code, _ = run(capsys, ["verify", str(corpus), "--json-out", str(rep)])
    assert code == 0
    doc = json.loads(rep.read_text())
    assert doc["d_range"] == [-3, 3]
    # flags still beat the environment
    code, _ = run(
        capsys,
        ["verify", str(corpus), "--d-max", "2", "--json-out", str(rep)],
    )
    assert code == 0
    assert json.loads(rep.read_text())["d_range"] == [-3, 2]
