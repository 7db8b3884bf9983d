import json
import tempfile
from pathlib import Path

import pytest
from click.testing import CliRunner

from eqhocolim.cli.checks import CHECK_NAMES
from eqhocolim.cli.document import DocumentError, parse, serialize
from eqhocolim.cli.generate import Caps, generate, generate_document
from eqhocolim.cli.main import main
from eqhocolim.simplicial.validate import validate_sset

DATA = Path(__file__).parent / "data"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


# -- format ------------------------------------------------------------------------

def test_two_line_group_block():
    doc = parse("group G\n  row 0 1\n  row 1 0\nend\n")
    assert doc.get("G").order == 2


def test_interval_sset_block():
    x = parse("sset I\n  simplex 1\nend\n", top=2).get("I")
    assert x.counts == (2, 3, 4) and validate_sset(x).ok


def test_missing_eta_entry_names_the_pair():
    text = (DATA / "cofinal.eqh").read_text().replace("  at 1 2 idTwo\n", "")
    with pytest.raises(DocumentError, match=r"g=1, X=2"):
        parse(text)


@pytest.mark.parametrize("text, fragment", [
    ("group G\n  cyclic 2\n  bogus 1\nend\n", "unknown"),
    ("gaction A on C by G\n  trivial\nend\n", "undefined block 'C'"),
    ("group G\n  cyclic\nend\n", "line 2"),
])
def test_diagnostics_are_located(text, fragment):
    with pytest.raises(DocumentError, match=fragment):
        parse(text)


@pytest.mark.parametrize("name", ["collapse.eqh", "interval.eqh", "cofinal.eqh"])
def test_round_trip_on_hand_written_documents(name):
    doc = parse((DATA / name).read_text())
    text = serialize(doc)
    again = parse(text)
    assert again.same_as(doc)
    assert serialize(again) == text


def test_round_trip_on_generated_corpus():
    for seed in range(1, 21):
        doc = generate_document(seed, Caps(functor=True))
        assert parse(serialize(doc)).same_as(doc)


# -- generator ---------------------------------------------------------------------

def test_generator_is_deterministic():
    assert generate(7) == generate(7)
    assert generate(7) != generate(8)


def test_small_caps_validate():
    doc = generate_document(1, Caps(max_group=2, max_objects=3))
    assert doc.get("G").order <= 2 and doc.get("C").n_objects <= 3
    res = run("verify", _write(doc), "axioms")
    assert res.exit_code == 0


def test_infeasible_caps_exit_two():
    assert run("gen", "--max-group", "0").exit_code == 2


# -- commands ----------------------------------------------------------------------

def _write(doc):
    fh = tempfile.NamedTemporaryFile("w", suffix=".eqh", delete=False)
    fh.write(serialize(doc))
    fh.close()
    return fh.name


def test_check_valid_and_corrupted(tmp_path):
    assert run("check", DATA / "interval.eqh").exit_code == 0
    lines = serialize(parse("sset X\n  simplex 2\nend\n", top=2)).splitlines()
    d0 = next(i for i, ln in enumerate(lines) if ln.startswith("  face 2 0 "))
    d1 = next(ln for ln in lines if ln.startswith("  face 2 1 "))
    lines[d0] = "  face 2 0 " + d1.split(maxsplit=3)[3]
    bad = tmp_path / "bad.eqh"
    bad.write_text("\n".join(lines) + "\n")
    res = run("check", bad, "--format", "json")
    assert res.exit_code == 1
    report = json.loads(res.output)
    (check,) = report["checks"]
    assert not check["ok"] and check["witness"]["rule"].startswith("sset.")


def test_build_nerve_of_interval(tmp_path):
    out = tmp_path / "n.eqh"
    res = run("build", DATA / "interval.eqh", "nerve", "--truncate", "2", "--out", out)
    assert res.exit_code == 0
    doc = parse(out.read_text(), top=2)
    block = doc.blocks[-1]
    assert block.kind == "sset" and block.provenance == "nerve A"
    assert doc.get(block.name).counts == (2, 3, 4)


def test_build_hocolim_over_swapped_pair(tmp_path):
    out = tmp_path / "h.eqh"
    assert run("build", DATA / "collapse.eqh", "hocolim", "--out", out).exit_code == 0
    x = parse(out.read_text()).blocks[-1].value
    assert x.counts[0] == 2 and x.action[1][0].tolist() == [1, 0]


def test_build_grothendieck_of_point_functor(tmp_path):
    src = tmp_path / "g.eqh"
    src.write_text((DATA / "cofinal.eqh").read_text()
                   + "\ncategory One\n  ordinal 0\nend\n\nfunctor K on A kind cat\n  constant One\nend\n"
                   + "\neta K\n  identity\nend\n")
    out = tmp_path / "g2.eqh"
    res = run("build", src, "grothendieck", "--diagram", "K", "--out", out)
    assert res.exit_code == 0, res.output
    doc = parse(out.read_text())
    g, c = doc.get("Groth"), doc.get("C")
    assert (g.n_objects, g.n_morphisms) == (c.n_objects, c.n_morphisms)


def test_verify_eq12_exit_zero():
    assert run("verify", DATA / "cofinal.eqh", "iso:eq12").exit_code == 0


def test_verify_eq28_on_interval():
    res = run("verify", DATA / "interval.eqh", "contractible:eq28", "--format", "json")
    assert res.exit_code == 0
    assert json.loads(res.output)["checks"][0]["details"]["pairs"] == 4


def test_verify_thm2_thickening():
    assert run("verify", DATA / "collapse.eqh", "witness:thm2").exit_code == 0


def test_collapse_witness_fails_with_exit_one():
    res = run("verify", DATA / "collapse.eqh", "witness:thm2", "--map", "collapse", "--format", "json")
    assert res.exit_code == 1
    w = json.loads(res.output)["checks"][0]["witness"]
    assert w["subgroup"] == [0] and w["degree"] == 0


def test_text_and_json_agree():
    text = run("verify", DATA / "cofinal.eqh", "all").output
    data = json.loads(run("verify", DATA / "cofinal.eqh", "all", "--format", "json").output)
    for check in data["checks"]:
        assert f"{'PASS' if check['ok'] else 'FAIL'} {check['name']}:" in text
    assert data["digest"] in text


@pytest.mark.parametrize("name", CHECK_NAMES)
def test_exit_status_trichotomy(name, tmp_path):
    assert run("verify", DATA / "cofinal.eqh", name).exit_code == 0
    broken = tmp_path / "broken.eqh"
    broken.write_text("group G\n  cyclic 2\nend\n\ncategory C\n  ordinal 1\n  extra\nend\n")
    assert run("verify", broken, name).exit_code == 2


def test_unknown_check_and_missing_functor_exit_two():
    assert run("verify", DATA / "interval.eqh", "iso:eq99").exit_code == 2
    assert run("verify", DATA / "interval.eqh", "iso:eq22").exit_code == 2


def test_gen_writes_parseable_document(tmp_path):
    out = tmp_path / "g.eqh"
    assert run("gen", "--seed", 3, "--with-functor", "--out", out).exit_code == 0
    assert parse(out.read_text()).same_as(generate_document(3, Caps(functor=True)))
