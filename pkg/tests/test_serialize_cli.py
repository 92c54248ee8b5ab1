import json

import pytest
from hypothesis import given, settings, strategies as st

from morita import serialize
from morita.algebroid import convolution_algebroid, primitive_hopf, scramble_algebroid
from morita.bimodule import convolution_bimodule, scramble_bimodule
from morita.cli import dispatch
from morita.generators import random_bibundle, random_groupoid
from morita.groupoid import pair_groupoid, reverse_two_point_bundle, two_point_bundle
from morita.report import Report
from morita.serialize import MalformedInput

seeds = st.integers(0, 10_000)


def same_algebroid(a, b):
    return (a.labels == b.labels and a.base == b.base and a.mult == b.mult
            and a.a0_embedding == b.a0_embedding and a.antipode == b.antipode
            and a.coalgebra.comult == b.coalgebra.comult and a.coalgebra.counit == b.coalgebra.counit)


def same_bimodule(m, n):
    return (same_algebroid(m.left_alg, n.left_alg) and same_algebroid(m.right_alg, n.right_alg)
            and m.labels == n.labels and m.act_left == n.act_left and m.act_right == n.act_right
            and m.coalgebra.comult == n.coalgebra.comult and m.coalgebra.counit == n.coalgebra.counit)


# -- serialization ------------------------------------------------------------

@settings(max_examples=20, deadline=None)
@given(seeds)
def test_round_trip_all_kinds(seed):
    g = random_groupoid(seed, 3, 3)
    _, p = random_bibundle(seed, g)
    a, _ = scramble_algebroid(convolution_algebroid(g), seed)
    m, _ = scramble_bimodule(convolution_bimodule(p), seed)
    assert serialize.loads(serialize.dumps(g)) == g
    assert serialize.loads(serialize.dumps(p)) == p
    assert same_algebroid(serialize.loads(serialize.dumps(a)), a)
    assert same_bimodule(serialize.loads(serialize.dumps(m)), m)
    for obj in (g, p, a, m):
        text = serialize.dumps(obj)
        assert serialize.dumps(serialize.loads(text)) == text


def test_save_and_load_with_subdocument_paths(tmp_path):
    p = two_point_bundle()
    serialize.save(p.left, tmp_path / "left.json")
    serialize.save(p.right, tmp_path / "right.json")
    doc = serialize.to_dict(p)
    doc["left"], doc["right"] = "left.json", "right.json"
    (tmp_path / "p.json").write_text(json.dumps(doc))
    assert serialize.load(tmp_path / "p.json") == p


def test_groupoid_document_shape():
    doc = serialize.to_dict(pair_groupoid(["1", "2"]))
    assert doc["kind"] == "groupoid"
    assert doc["objects"] == ["1", "2"]
    assert doc["arrows"][1] == {"id": "(1,2)", "src": "2", "tgt": "1"}
    assert ["(1,2)", "(2,1)", "(1,1)"] in doc["compose"]


def _malformed(doc):
    with pytest.raises(MalformedInput):
        serialize.from_dict(doc)


def test_malformed_documents():
    _malformed([])
    _malformed({"kind": "sheaf"})
    doc = serialize.to_dict(pair_groupoid(["1", "2"]))
    _malformed({k: v for k, v in doc.items() if k != "inv"})
    _malformed(dict(doc, compose=doc["compose"][1:]))
    _malformed(dict(doc, objects=["1", "1"]))
    _malformed(dict(doc, unit=[["1", "nope"], ["2", "(2,2)"]]))
    with pytest.raises(MalformedInput):
        serialize.loads("{not json")


def test_float_scalars_are_rejected():
    doc = serialize.to_dict(convolution_algebroid(pair_groupoid(["1", "2"])))
    doc["counit"]["0"]["1"] = 1.0
    _malformed(doc)


def test_block_violation_is_malformed():
    # (1,1) (x) (2,2) straddles the blocks over 1 and 2
    doc = serialize.to_dict(convolution_algebroid(pair_groupoid(["1", "2"])))
    doc["comult"]["0"] = [[0, 3, "1"]]
    _malformed(doc)


# -- reports ------------------------------------------------------------------

def test_empty_report():
    rep = Report("nothing")
    assert "no checks run" in rep.to_text()
    assert json.loads(rep.to_json())["checks"] == []


def test_failing_report_prints_witness():
    rep = Report("x")
    rep.add("axiom_iii", False, ["x", "x"])
    assert 'FAIL  axiom_iii  witness=["x", "x"]' in rep.to_text()
    with pytest.raises(ValueError):
        rep.add("unwitnessed", False)


# -- command line -----------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    out = {}
    p = two_point_bundle()
    objs = {
        "pair": pair_groupoid(["1", "2"]),
        "p": p,
        "q": reverse_two_point_bundle(),
        "prim": primitive_hopf(),
        "scrambled": scramble_bimodule(convolution_bimodule(p), 1)[0],
    }
    for name, obj in objs.items():
        out[name] = str(tmp_path / f"{name}.json")
        serialize.save(obj, out[name])
    out["bad"] = str(tmp_path / "bad.json")
    (tmp_path / "bad.json").write_text('{"kind": "groupoid", "objects": ["a"]}')
    out["dir"] = tmp_path
    return out


def run(argv, capsys):
    code = dispatch(argv)
    return code, capsys.readouterr()


def test_validate_pair(files, capsys):
    code, out = run(["validate", files["pair"]], capsys)
    assert code == 0
    assert json.loads(out.out)["subject"] == "groupoid"


def test_roundtrip_scrambled_bimodule(files, capsys):
    code, out = run(["roundtrip", files["scrambled"]], capsys)
    assert code == 0
    rep = json.loads(out.out)
    assert rep["derived"]["psi"]["rows"] == 2 and rep["derived"]["spectral_points"] == 2


def test_spectral_primitive(files, capsys):
    code, out = run(["spectral", files["prim"]], capsys)
    assert code == 1
    (check,) = json.loads(out.out)["checks"]
    assert check["witness"]["error"] == "NotLocallyGrouplike"
    assert check["witness"]["reason"] == "not_diagonalizable"


def test_malformed_input_exit(files, capsys):
    assert run(["validate", files["bad"]], capsys)[0] == 2
    assert run(["validate", str(files["dir"] / "missing.json")], capsys)[0] == 2
    assert run(["tensor", files["p"], files["p"]], capsys)[0] == 2
    assert run(["cc", files["prim"]], capsys)[0] == 2
    assert run(["validate"], capsys)[0] == 2


def test_size_limit_exit(files, capsys, monkeypatch):
    monkeypatch.setenv("MORITA_MAX_SIZE", "3")
    assert run(["validate", files["pair"]], capsys)[0] == 3
    assert run(["validate", "--max-size", "10", files["pair"]], capsys)[0] == 0


def test_cc_tensor_and_iso(files, capsys):
    d = files["dir"]
    assert run(["tensor", files["p"], files["q"], "-o", str(d / "pq.json")], capsys)[0] == 0
    assert len(serialize.load(d / "pq.json").points) == 4
    for name in ("p", "q", "pq"):
        assert run(["cc", str(d / f"{name}.json"), "-o", str(d / f"c{name}.json")], capsys)[0] == 0
    assert run(["tensor", str(d / "cp.json"), str(d / "cq.json"), "-o", str(d / "cpcq.json")], capsys)[0] == 0
    code, out = run(["iso", str(d / "cpcq.json"), str(d / "cpq.json")], capsys)
    assert code == 0 and json.loads(out.out)["checks"][0]["pass"]


def test_grouplikes_verb(files, capsys):
    d = files["dir"]
    run(["cc", files["pair"], "-o", str(d / "a.json")], capsys)
    code, out = run(["grouplikes", str(d / "a.json"), "--point", "1"], capsys)
    assert code == 0
    assert json.loads(out.out)["derived"]["grouplikes"] == {"1": [{"(1,1)": "1"}, {"(1,2)": "1"}]}
    assert run(["grouplikes", str(d / "a.json"), "--point", "7"], capsys)[0] == 2


def test_text_report(files, capsys):
    code, out = run(["validate", "--report", "text", files["pair"]], capsys)
    assert code == 0
    assert out.out.startswith("subject: groupoid\nPASS")


def test_gen_and_scramble_are_deterministic(files, capsys):
    d = files["dir"]
    outs = []
    for _ in range(2):
        outs.append(run(["gen", "bibundle", "--seed", "9"], capsys)[1].out)
    assert outs[0] == outs[1]
    (d / "b.json").write_text(outs[0])
    assert serialize.load(d / "b.json") == random_bibundle(9, random_groupoid(9))[1]
    run(["cc", str(d / "b.json"), "-o", str(d / "m.json")], capsys)
    s1 = run(["scramble", str(d / "m.json"), "--seed", "4"], capsys)[1].out
    s2 = run(["scramble", str(d / "m.json"), "--seed", "4"], capsys)[1].out
    assert s1 == s2
    (d / "s.json").write_text(s1)
    r1 = run(["roundtrip", str(d / "s.json")], capsys)
    r2 = run(["roundtrip", str(d / "s.json")], capsys)
    assert r1[0] == 0 and r1[1].out == r2[1].out


def test_gen_bibundle_on_given_groupoid(files, capsys):
    code, out = run(["gen", "bibundle", "--groupoid", files["pair"], "--seed", "2"], capsys)
    assert code == 0
    assert serialize.loads(out.out).left == pair_groupoid(["1", "2"])
