import json

import pytest

from ripr.cli import (
    ExperimentSpec,
    canonical,
    load_matrix,
    main,
    parse_colouring,
    parse_family,
    report_diff,
    run,
)
from ripr.matgen import finite_sums_matrix, schur_matrix


def _capture(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_canonical_format():
    assert canonical({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}\n'


def test_parse_family_slugs():
    assert parse_family("schur") == schur_matrix()
    assert parse_family("f:3") == finite_sums_matrix(3)
    assert len(parse_family("mt:2,1:3").rows) == 5
    assert parse_family("identity:4").width == 4
    with pytest.raises(ValueError):
        parse_family("zzz")
    with pytest.raises(ValueError):
        parse_family("f")  # missing width argument


def test_parse_colouring_slugs():
    assert parse_colouring("mod:3").palette == {0, 1, 2}
    assert parse_colouring("alpha:3/2").params["base"] == 3
    assert parse_colouring("notrapid:7:1,2").kind == "notrapid"
    with pytest.raises(ValueError):
        parse_colouring("nope:1")
    with pytest.raises(ValueError):
        parse_colouring("notrapid:6:1")  # base not prime


def test_load_matrix_formats(tmp_path):
    dense = tmp_path / "m.json"
    dense.write_text(json.dumps([[1, 0], [0, 1], [1, 1]]))
    M = load_matrix(dense)
    assert M.dense() == [(1, 0), (0, 1), (1, 1)]
    keyed = tmp_path / "k.json"
    keyed.write_text(json.dumps({"dense": [[2, 1]], "width": 3}))
    assert load_matrix(keyed).width == 3
    trip = tmp_path / "t.json"
    trip.write_text(json.dumps(M.to_obj()))
    assert load_matrix(trip) == M


def test_run_replay_is_byte_identical():
    spec = ExperimentSpec(
        "search",
        {"family": "f:3", "colouring": "mod:3", "bound": 12, "threads": 2},
    )
    first = canonical(run(spec))
    second = canonical(run(spec))
    assert first == second
    assert first.endswith("\n")


def test_run_timing_sidecar_opt_in():
    spec = ExperimentSpec("gen", {"family": "schur"})
    plain = run(spec)
    timed = run(spec, timing=True)
    assert "timing" not in plain
    assert timed["timing"]["wallMs"] >= 0
    assert report_diff(plain, timed) == []


def test_run_unknown_command():
    with pytest.raises(ValueError):
        run(ExperimentSpec("bogus", {}))


def test_report_diff_paths():
    l = {"schemaVersion": 1, "a": [1, 2], "b": {"c": 3}}
    r = {"schemaVersion": 1, "a": [1, 5], "b": {}}
    diffs = report_diff(l, r)
    paths = {d["path"] for d in diffs}
    assert paths == {"/a/1", "/b/c"}
    byp = {d["path"]: d for d in diffs}
    assert byp["/b/c"]["right"] == "<absent>"
    with pytest.raises(ValueError):
        report_diff({"schemaVersion": 1}, {"schemaVersion": 2})


def test_main_gen(capsys):
    code, out, _ = _capture(capsys, ["gen", "f", "--width", "3"])
    assert code == 0
    rep = json.loads(out)
    assert rep["rowCount"] == 7
    assert rep["schemaVersion"] == 1
    assert out == canonical(rep)  # stdout already canonical


def test_main_search_witness(capsys):
    code, out, _ = _capture(
        capsys,
        ["search", "--family", "schur", "--colouring", "mod:2", "--bound", "10"],
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["outcome"] == "witness"
    assert rep["witness"]["assignment"] == [2, 2]
    assert rep["witness"]["image"] == [[2, 1], [4, 1]]


def test_main_image_fields(capsys):
    code, out, _ = _capture(capsys, ["image", "--family", "f:2", "--x", "1,2"])
    rep = json.loads(out)
    assert code == 0
    assert rep["values"] == [[1, 1], [2, 1], [3, 1]]
    assert rep["provenance"] == {"1": 0, "2": 1, "3": 2}
    assert rep["natural"] is True
    _, out2, _ = _capture(capsys, ["image", "--family", "identity:1", "--x", "1/2"])
    rep2 = json.loads(out2)
    assert rep2["values"] == [[1, 2]]
    assert rep2["natural"] is False


def test_main_digits_with_gap(capsys):
    n = "282477650"
    code, out, _ = _capture(
        capsys, ["digits", "--base", "-7", "--gap", "1,1,0,0,0", n]
    )
    rep = json.loads(out)
    assert code == 0
    rec = rep["expansions"][0]
    assert rec["gapSites"] == [[4, 10]]
    assert rec["gapResidue"] == 1
    assert rec["leastSignificantDigit"] == 1  # lowest nonzero digit, at position 4
    assert rec["support"] == [4, 10]


def test_main_colour_notrapid(capsys):
    code, out, _ = _capture(
        capsys,
        ["colour", "--kind", "notrapid", "--p", "7", "--coeffs", "1,2", "7", "2500"],
    )
    rep = json.loads(out)
    assert code == 0
    assert rep["colours"][0] == ["small"]
    assert rep["colours"][1][0] == "big"
    assert rep["reserved"] == [True, False]
    assert rep["common"] is None


def test_main_force_and_rapid(capsys):
    code, out, _ = _capture(
        capsys, ["force", "--family", "schur", "--colours", "2", "--nmax", "8"]
    )
    rep = json.loads(out)
    assert code == 0 and rep["bound"] == 5
    code, out, _ = _capture(capsys, ["rapid", "--p", "2", "--x", "3,512"])
    assert code == 0 and json.loads(out)["rapid"] is True
    code, out, _ = _capture(capsys, ["rapid", "--p", "2", "--make", "--seeds", "3,5"])
    assert code == 0 and json.loads(out)["sequence"] == [3, 2560]


def test_main_translate_search(capsys):
    code, out, _ = _capture(
        capsys,
        ["translate-search", "--a", "2,1", "--colouring", "mod:2",
         "--prefix", "2", "--bbound", "8", "--xbound", "10"],
    )
    rep = json.loads(out)
    assert code == 0
    assert rep["witness"] == {"b": 2, "x": [2, 4], "colour": 0}
    assert rep["lastCoefficientOne"] is True


def test_main_separate_none(capsys):
    code, out, _ = _capture(
        capsys,
        ["separate", "--a", "1", "--b", "2,1", "--colouring", "notrapid:7:1,2",
         "--prefix", "3", "--bound", "200"],
    )
    rep = json.loads(out)
    assert code == 0  # absence is still a completed run
    assert rep["outcome"] == "none-within-bounds"
    assert rep["witness"] is None


def test_main_usage_errors(capsys):
    code, _, err = _capture(capsys, ["gen", "zzz"])
    assert code == 2 and "error:" in err
    code, _, err = _capture(capsys, ["gen", "f"])  # missing --width
    assert code == 2
    code, _, err = _capture(
        capsys, ["digits", "--base", "-7", "--gap", "1,1", "50"]
    )
    assert code == 2 and "five digits" in err
    code, _, err = _capture(capsys, ["image", "--x", "1,2"])
    assert code == 2  # no family and no file


def test_main_budget_exit(capsys):
    code, _, err = _capture(
        capsys,
        ["force", "--family", "schur", "--colours", "2", "--nmax", "8",
         "--budget", "5"],
    )
    assert code == 3
    assert "budget" in err


def test_main_out_file(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code, out, _ = _capture(
        capsys, ["gen", "schur", "--out", str(path)]
    )
    assert code == 0
    assert path.read_text() == out


def test_main_diff_flow(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    c = tmp_path / "c.json"
    _capture(capsys, ["gen", "schur", "--out", str(a)])
    _capture(capsys, ["gen", "schur", "--timing", "--out", str(b)])
    _capture(capsys, ["gen", "f", "--width", "2", "--out", str(c)])
    code, out, _ = _capture(capsys, ["diff", str(a), str(b)])
    assert code == 0
    assert json.loads(out)["outcome"] == "identical"  # timing ignored
    code, out, _ = _capture(capsys, ["diff", str(a), str(c)])
    assert code == 0
    rep = json.loads(out)
    assert rep["outcome"] == "different"
    assert rep["differences"]
    skew = tmp_path / "skew.json"
    skew.write_text(json.dumps({"schemaVersion": 99}))
    code, _, err = _capture(capsys, ["diff", str(a), str(skew)])
    assert code == 2 and "schema" in err


def test_main_missing_file(tmp_path, capsys):
    code, _, err = _capture(
        capsys, ["image", "--matrix-file", str(tmp_path / "nope.json"), "--x", "1"]
    )
    assert code == 2
