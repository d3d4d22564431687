from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest

from cfcolor.cli import choose_auto, color_report, main
from cfcolor.graph import (
    complete_graph,
    cycle_graph,
    generate_subdivided_clique,
    path_graph,
    random_planar,
    serialize_edge_list,
)
from cfcolor.report import parse_report, render_report, strip_timing
from cfcolor.verify import Coloring, serialize_coloring


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_color_path5_pathwidth(files, capsys):
    g = files("path5.txt", serialize_edge_list(path_graph(5)))
    code, out, _ = run(["color", g, "--method", "pathwidth"], capsys)
    rep = parse_report(out)
    assert code == 0 and rep["VERDICT"]["valid"] == "true"
    assert int(rep["BOUND"]["colors_used"]) <= 3


def test_color_kstar4_fvs(files, capsys):
    g = files("kstar4.txt", serialize_edge_list(generate_subdivided_clique(4)))
    code, out, _ = run(["color", g, "--method", "fvs"], capsys)
    rep = parse_report(out)
    assert code == 0
    assert rep["BOUND"]["colors_used"] == "4" and rep["BOUND"]["declared_bound"] == "4"
    assert rep["PARAMS"]["fvs"] == "2"


def test_color_c5_outerplanar(files, capsys):
    g = files("c5.txt", serialize_edge_list(cycle_graph(5)))
    code, out, _ = run(["color", g, "--method", "outerplanar"], capsys)
    rep = parse_report(out)
    assert code == 0 and rep["BOUND"]["colors_used"] == "3"
    assert list(rep) == ["HEADER", "PARAMS", "BOUND", "COLORING", "WITNESS", "AUDIT", "VERDICT"]


def test_verify_exit_codes(files, capsys):
    g = files("c4.txt", serialize_edge_list(cycle_graph(4)))
    good = files("good.txt", serialize_coloring(Coloring.of([1, 1, 2, 2])))
    bad = files("bad.txt", serialize_coloring(Coloring.of([1, 1, 1, 1])))
    partial = files("partial.txt", serialize_coloring(Coloring.of([1, None, 2, None])))
    code, out, _ = run(["verify", g, good], capsys)
    assert code == 0 and out.startswith("valid")
    code, out, _ = run(["verify", g, bad], capsys)
    assert code == 1 and "4 violations" in out and out.count("vertex") == 4
    code, _, err = run(["verify", g, partial, "--variant", "open"], capsys)
    assert code == 2 and "error" in err


def test_exact_and_cap(files, capsys, monkeypatch):
    g = files("p3.txt", serialize_edge_list(path_graph(3)))
    code, out, _ = run(["exact", g], capsys)
    assert code == 0 and "optimum: 2" in out
    code, out, _ = run(["exact", g, "--variant", "partial-open"], capsys)
    assert "optimum: 1" in out
    big = files("kstar4.txt", serialize_edge_list(generate_subdivided_clique(4)))
    code, _, err = run(["exact", big, "--cap", "5"], capsys)
    assert code == 3 and "cap" in err
    monkeypatch.setenv("CFON_ORACLE_CAP", "5")
    assert run(["exact", big], capsys)[0] == 3


def test_parse_error_and_missing_file(files, capsys):
    bad = files("bad.txt", "1 2\nfoo\n")
    assert run(["color", bad], capsys)[0] == 1
    assert run(["color", "/nonexistent/graph.txt"], capsys)[0] == 1
    loop = files("loop.txt", "1 1\n")
    assert run(["color", loop], capsys)[0] == 1


def test_precondition_exit(files, capsys):
    g = files("iso.txt", "p edge 3 1\n1 2\n")
    assert run(["color", g, "--method", "fvs"], capsys)[0] == 2
    k4 = files("k4.txt", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    assert run(["color", k4, "--method", "outerplanar-partial"], capsys)[0] == 2


def test_generate_with_certificate_then_color(tmp_path, capsys):
    out = str(tmp_path / "cl.txt")
    code, _, _ = run(
        ["generate", "--family", "random_cluster_plus_modulator", "--params", "cliques=3,3,2;d=2", "--seed", "1", "--out", out],
        capsys,
    )
    assert code == 0
    code, text, _ = run(["color", out, "--method", "dc", "--certificate", out + ".cert"], capsys)
    rep = parse_report(text)
    assert code == 0 and rep["PARAMS"]["dc"] == "2"
    assert any("certificate" in n for n in rep["HEADER"]["note"].splitlines())


def test_generate_to_stdout(capsys):
    code, out, _ = run(["generate", "--family", "cycle", "--params", "n=5"], capsys)
    assert code == 0 and out.splitlines() == ["1 2", "1 5", "2 3", "3 4", "4 5"]


def test_certificate_kind_mismatch(tmp_path, capsys):
    out = str(tmp_path / "nd.txt")
    run(["generate", "--family", "random_bounded_nd", "--params", "types=4", "--out", out], capsys)
    assert run(["color", out, "--method", "fvs", "--certificate", out + ".cert"], capsys)[0] == 2
    assert run(["color", out, "--method", "nd", "--certificate", out + ".cert"], capsys)[0] == 0


@pytest.mark.parametrize("method", ["pathwidth", "dc", "nd", "outerplanar", "planar-partial", "fvs"])
def test_audit_passes(files, capsys, method):
    g = files("g.txt", serialize_edge_list(cycle_graph(6)))
    code, out, _ = run(["audit", g, "--method", method], capsys)
    assert code == 0 and "FAIL" not in out and "check: pass coloring verifies" in out


def test_audit_pathwidth_reports_expensive_subset(files, capsys):
    g = files("g.txt", serialize_edge_list(cycle_graph(7)))
    _, out, _ = run(["audit", g, "--method", "pathwidth"], capsys)
    assert "k_star:" in out and "max_bag:" in out and "check: pass max_bag >= ceil(3k*/2)" in out


def test_auto_choices():
    assert choose_auto(cycle_graph(5))[0] == "outerplanar"
    assert choose_auto(generate_subdivided_clique(4))[0] == "fvs"
    # K6 still has a small feedback vertex set; K12 needs ten, so the clique falls to dc
    assert choose_auto(complete_graph(6))[0] == "fvs"
    assert choose_auto(complete_graph(12))[0] == "dc"


def test_report_roundtrip_and_timing_strip():
    rep = color_report(cycle_graph(6), "pathwidth")
    text = render_report(rep)
    assert "timing_ms:" in text and "timing_ms:" not in strip_timing(text)
    back = parse_report(text)
    assert back["HEADER"]["method"] == "pathwidth" and back["VERDICT"]["violations"] == "0"


def test_report_deterministic_across_processes(files):
    g = files("planar.txt", serialize_edge_list(random_planar(20, random.Random(2))))
    outs = [
        subprocess.run([sys.executable, "-m", "cfcolor.cli", "color", g, "--method", "planar-partial"], capture_output=True, text=True, check=True).stdout
        for _ in range(2)
    ]
    assert strip_timing(outs[0]) == strip_timing(outs[1])


def test_pure_python_backend_gives_same_report(files):
    g = files("kstar3.txt", serialize_edge_list(generate_subdivided_clique(3)))
    env = dict(os.environ, CFCOLOR_PURE_PYTHON="1")
    cmd = [sys.executable, "-m", "cfcolor.cli", "exact", g]
    slow = subprocess.run(cmd, capture_output=True, text=True, env=env, check=True).stdout
    fast = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert slow == fast
