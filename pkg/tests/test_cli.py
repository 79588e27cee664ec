import json
from itertools import combinations

import pytest

from tenjoin.cli import run
from tenjoin.hgr import parse_hgr, read_hgr, write_hgr

from conftest import C4_K1, STAR, TRIANGLE, graph

K6 = graph(6, combinations(range(1, 7), 2))


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, h in {"tri": TRIANGLE, "k6": K6, "c4k1": C4_K1, "star": STAR}.items():
        p = tmp_path / f"{name}.hgr"
        write_hgr(p, h)
        paths[name] = str(p)
    return paths


def test_join_triangles_gives_k6(files, capsys):
    assert run(["join", "--family", "full", "--classes", "3,3", files["tri"], files["tri"], "--wc", "2=1"]) == 0
    doc = parse_hgr(capsys.readouterr().out)
    assert doc.h == K6 and doc.w(2) == 1


def test_join_bspan_to_file(files, tmp_path):
    out = tmp_path / "j.hgr"
    assert run(["join", "--family", "bspan", "--B", "2", files["tri"], files["tri"], "--wc", "*=1", "-o", str(out)]) == 0
    assert read_hgr(out).h == K6


def test_spectrum_both_methods(files, capsys):
    assert run(["spectrum", "--matrix", "adj", "--method", "both", "--classes", "3,3", files["k6"]]) == 0
    out = capsys.readouterr().out
    assert "agreement: yes" in out and "exact: yes" in out


def test_spectrum_json(files, capsys):
    assert run(["spectrum", "--matrix", "lap", "--method", "both", "--classes", "3,3", "--json", files["k6"]]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert set(rep) >= {"input", "matrix", "method", "spectrum", "charpoly", "agreement"}
    assert rep["agreement"] and rep["exact_agreement"]
    assert rep["spectrum"] == pytest.approx([0.0] + [6.0] * 5, abs=1e-12)


def test_spectrum_nlap_direct(files, capsys):
    assert run(["spectrum", "--matrix", "nlap", "--json", files["k6"]]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["spectrum"] == pytest.approx([0.0] + [1.2] * 5, abs=1e-12)


def test_spectrum_closed_form_needs_regular_parts(files):
    assert run(["spectrum", "--method", "both", "--classes", "4,1", files["c4k1"]]) == 0
    # the star split 2,3 has non-constant cross counts: library error, exit 2
    assert run(["spectrum", "--method", "both", "--classes", "2,3", files["star"]]) == 2


def test_verify_exit_codes(files, capsys):
    assert run(["verify", files["c4k1"], files["star"], "--require", "adj"]) == 0
    assert run(["verify", files["c4k1"], files["star"]]) == 1
    out = capsys.readouterr().out
    assert "adjacency: cospectral" in out and "laplacian: not cospectral" in out
    assert run(["verify", files["k6"], files["k6"], "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["adjacency"] and rep["laplacian"] and rep["normalized"]


def test_build_and_decompose(tmp_path, capsys):
    tri = tmp_path / "tri.hgr"
    assert run(["build", "cycle", "--n", "3", "-o", str(tri)]) == 0
    assert read_hgr(tri).h == TRIANGLE
    out = tmp_path / "mirror.hgr"
    assert run(["build", "two-copy", str(tri), "--family", "identity", "-o", str(out)]) == 0
    assert run(["spectrum", str(out), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["spectrum"] == pytest.approx([-2, -2, 0, 0, 1, 3], abs=1e-12)
    assert run(["decompose", str(out), "--classes", "3,3"]) == 0
    text = capsys.readouterr().out
    assert "3 crossing member(s)" in text and "member 1 4" in text


def test_build_catalogue(tmp_path):
    for argv in (
        ["empty", "--n", "3"],
        ["complete", "--n", "4"],
        ["uniform", "--n", "4", "--m", "3"],
        ["strong-partite", "--classes", "2,2,2", "--m", "3"],
    ):
        assert run(["build", *argv, "-o", str(tmp_path / "x.hgr")]) == 0
    assert read_hgr(tmp_path / "x.hgr").h.num_edges == 8


def test_backbone_join(files, tmp_path, capsys):
    back = tmp_path / "p3.hgr"
    write_hgr(back, graph(3, [(1, 2), (2, 3)]))
    assert run(["backbone-join", str(back), files["tri"], files["tri"], files["tri"], "--family", "bspan", "--B", "2", "--wc", "2=1"]) == 0
    h = parse_hgr(capsys.readouterr().out).h
    assert h.num_edges == 9 + 9 + 9


def test_cospectral_none_found(capsys):
    assert run(["cospectral", "--n", "6", "--uniform", "3", "--regular"]) == 0
    assert "none found at n=6" in capsys.readouterr().out


def test_cospectral_writes_certificates(tmp_path, capsys):
    out = tmp_path / "certs"
    assert run(["cospectral", "--n", "7", "--uniform", "3", "--regular", "--limit", "1", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "join pair A/L/nL True/True/True" in text
    names = sorted(p.name for p in out.iterdir())
    assert names == ["n7_m3_pair001_a.hgr", "n7_m3_pair001_b.hgr", "n7_m3_pair001_join_a.hgr", "n7_m3_pair001_join_b.hgr"]


def test_usage_errors(files, tmp_path, capsys):
    assert run([]) == 2
    assert run(["join", files["tri"], "--family", "bspan"]) == 2
    assert run(["join", str(tmp_path / "missing.hgr")]) == 2
    bad = tmp_path / "bad.hgr"
    bad.write_text("hgr 1\nvertices 3\nedge 1 1 1 2\n")
    assert run(["spectrum", str(bad)]) == 2
    assert "line 3: repeated vertex" in capsys.readouterr().err
    assert run(["join", files["tri"], files["tri"], "--wc", "2"]) == 2


def test_family_guard_env(files, monkeypatch):
    monkeypatch.setenv("TENJOIN_MAX_FAMILY", "5")
    assert run(["join", files["tri"], files["tri"], "--wc", "2=1"]) == 2
    assert run(["join", files["tri"], files["tri"], "--wc", "2=1", "--allow-huge"]) == 0
