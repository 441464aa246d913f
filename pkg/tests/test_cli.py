import csv
import io

import pytest

from dagzip import (
    SetCoverInstance,
    read_compression,
    read_graph,
    rook_mst_compression,
    write_compression,
    write_graph,
    write_setcover,
    write_shores,
)
from dagzip.cli import main
from dagzip.graphs import ShorePartition


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def mst_file(tmp_path, mst_compression):
    path = tmp_path / "fig.dagc"
    path.write_text(write_compression(mst_compression), encoding="ascii")
    return str(path)


def test_mst_check_ok(mst_file, capsys, tmp_path):
    out_path = tmp_path / "out.mst"
    code, out, err = run_cli(["mst", mst_file, "--check", "-o", str(out_path)], capsys)
    assert code == 0, err
    text = out_path.read_text()
    assert text.splitlines()[0] == "mst 7 6 7"


def test_mst_deterministic(mst_file, capsys):
    code1, out1, _ = run_cli(["mst", mst_file], capsys)
    code2, out2, _ = run_cli(["mst", mst_file], capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_mst_baseline_agrees(mst_file, capsys):
    _, compressed, _ = run_cli(["mst", mst_file], capsys)
    _, baseline, _ = run_cli(["mst", mst_file, "--baseline"], capsys)
    head_c = compressed.splitlines()[0].split()
    head_b = baseline.splitlines()[0].split()
    assert head_c[3] == head_b[3] == "7"


def test_validate_ok_and_exit_codes(tmp_path, capsys, mst_compression):
    good = tmp_path / "good.dagc"
    good.write_text(write_compression(mst_compression), encoding="ascii")
    code, out, _ = run_cli(["validate", str(good)], capsys)
    assert code == 0 and out.startswith("ok")
    bad = tmp_path / "bad.dagc"
    bad.write_text(
        "dagc directed\nsinks 2\nclusters 1\narcs 1\na 1 3\ncedges 0\n",
        encoding="ascii",
    )
    code, out, _ = run_cli(["validate", str(bad)], capsys)
    assert code == 2
    assert "violation" in out


def test_invalid_compression_exits_2_from_mst(tmp_path, capsys):
    bad = tmp_path / "bad.dagc"
    bad.write_text(
        "dagc undirected weighted\nsinks 2\nclusters 1\narcs 0\ncedges 1\nc 1 2 4\n",
        encoding="ascii",
    )
    code, _, err = run_cli(["mst", str(bad)], capsys)
    assert code == 2
    assert "invalid" in err or "error" in err


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_decompress_roundtrip(tmp_path, capsys, fig_compression):
    src = tmp_path / "fig.dagc"
    src.write_text(write_compression(fig_compression), encoding="ascii")
    out_path = tmp_path / "fig.graph"
    code, _, _ = run_cli(["decompress", str(src), "-o", str(out_path)], capsys)
    assert code == 0
    g = read_graph(out_path.read_text())
    assert g.n == 8 and g.has_edge(1, 3)


def test_generate_validate_decompress_compress_pipeline(tmp_path, capsys):
    comp = tmp_path / "rook.dagc"
    code, _, _ = run_cli(
        ["generate", "rook", "--g", "5", "--compress", "-o", str(comp)], capsys)
    assert code == 0
    code, _, _ = run_cli(["validate", str(comp)], capsys)
    assert code == 0
    graph = tmp_path / "rook.graph"
    code, _, _ = run_cli(["decompress", str(comp), "-o", str(graph)], capsys)
    assert code == 0
    re_comp = tmp_path / "rook2.dagc"
    code, _, _ = run_cli(
        ["compress", "--strategy", "greedy", str(graph), "-o", str(re_comp)], capsys)
    assert code == 0
    code, _, _ = run_cli(["validate", str(re_comp)], capsys)
    assert code == 0


def test_generate_random_seed_env(tmp_path, capsys, monkeypatch):
    out = tmp_path / "g.graph"
    monkeypatch.setenv("DAGZIP_SEED", "5")
    run_cli(["generate", "random", "--n", "6", "--p", "0.5", "-o", str(out)], capsys)
    first = out.read_text()
    run_cli(["generate", "random", "--n", "6", "--p", "0.5", "-o", str(out)], capsys)
    assert out.read_text() == first
    run_cli(["generate", "random", "--n", "6", "--p", "0.5", "--seed", "6",
             "-o", str(out)], capsys)
    assert out.read_text() != first


def test_generate_random_compression_validates(tmp_path, capsys):
    out = tmp_path / "rc.dagc"
    code, _, _ = run_cli(
        ["generate", "random-compression", "--sinks", "9", "--clusters", "4",
         "--edges", "7", "--seed", "3", "-o", str(out)], capsys)
    assert code == 0
    code, _, _ = run_cli(["validate", str(out)], capsys)
    assert code == 0


def test_oracle_cli_k22(tmp_path, capsys):
    g = tmp_path / "k22.graph"
    g.write_text("graph directed 4 4\ne 1 3\ne 1 4\ne 2 3\ne 2 4\n", encoding="ascii")
    wit = tmp_path / "w.dagc"
    code, out, _ = run_cli(["oracle", str(g), "--witness", str(wit)], capsys)
    assert code == 0
    assert "minimum compression size: 4" in out
    assert read_compression(wit.read_text()).size() == 4


def test_oracle_cli_decision(tmp_path, capsys):
    g = tmp_path / "e.graph"
    g.write_text("graph directed 2 1\ne 1 2\n", encoding="ascii")
    code, out, _ = run_cli(["oracle", str(g), "--k", "0"], capsys)
    assert code == 0 and "no" in out
    code, out, _ = run_cli(["oracle", str(g), "--k", "1"], capsys)
    assert code == 0 and "yes" in out


def test_reduce_cli_mindag(tmp_path, capsys):
    inst = SetCoverInstance(n=2, sets=(frozenset({1}), frozenset({2})), k=1)
    src = tmp_path / "sc.txt"
    src.write_text(write_setcover(inst), encoding="ascii")
    prefix = str(tmp_path / "red")
    code, out, _ = run_cli(["reduce", "mindag", str(src), "--out-prefix", prefix], capsys)
    assert code == 0
    g = read_graph((tmp_path / "red.graph").read_text())
    assert g.n == 2 + 2 * 3
    meta = (tmp_path / "red.meta").read_text()
    assert "k_prime" in meta and "m_closure 2" in meta


def test_reduce_cli_add_and_delete(tmp_path, capsys):
    inst = SetCoverInstance(n=2, sets=(frozenset({1}), frozenset({2})), k=2)
    src = tmp_path / "sc.txt"
    src.write_text(write_setcover(inst), encoding="ascii")
    for problem in ("add", "delete"):
        prefix = str(tmp_path / problem)
        code, _, _ = run_cli(["reduce", problem, str(src), "--out-prefix", prefix], capsys)
        assert code == 0
        comp = read_compression((tmp_path / f"{problem}.dagc").read_text())
        code, _, _ = run_cli(["validate", str(tmp_path / f"{problem}.dagc")], capsys)
        assert code == 0
        assert comp.size() > 0


def test_normalize_cli(tmp_path, capsys):
    from dagzip import twinned_incidence, DagCompression

    sets = (frozenset({1, 2}), frozenset({2}))
    tg = twinned_incidence(sets, 2)
    d = DagCompression(directed=True, n_sinks=tg.graph.n, n_clusters=0,
                       arcs=frozenset(), cedges=tg.graph.edges)
    comp = tmp_path / "t.dagc"
    comp.write_text(write_compression(d), encoding="ascii")
    shores = tmp_path / "t.shores"
    shores.write_text(write_shores(tg.shores), encoding="ascii")
    out = tmp_path / "out.dagc"
    for pass_name in ("twins", "shore", "single-edge"):
        code, _, err = run_cli(
            ["normalize", "--pass", pass_name, "--shores", str(shores),
             str(comp), "-o", str(out)], capsys)
        assert code == 0, err
    normalized = read_compression(out.read_text())
    assert normalized.size() == d.size()


def test_gap_cli(tmp_path, capsys):
    out = tmp_path / "gap.csv"
    code, _, _ = run_cli(["gap", "--g", "2,4", "--policy", "balanced",
                          "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0][0] == "g"
    assert len(rows) == 3


def test_bench_cli(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, printed, _ = run_cli(
        ["bench", "--family", "random-compression", "--sizes", "8,12",
         "--trials", "2", "--seed", "1", "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    header = rows[0]
    assert header[0] == "family" and "add_edge_calls" in header
    assert len(rows) == 1 + 2 * 2
    for row in rows[1:]:
        calls = int(row[header.index("add_edge_calls")])
        arcs = int(row[header.index("arcs")])
        cedges = int(row[header.index("cedges")])
        assert calls <= arcs + cedges


def test_bench_cli_empty_sizes(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code, _, _ = run_cli(
        ["bench", "--family", "rook", "--sizes", "", "--trials", "1",
         "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert len(rows) == 1  # header only


def test_help_runs(capsys):
    assert main(["--help"]) == 0
    assert main(["mst", "--help"]) == 0


def test_weight_mismatch_exits_3(mst_file, capsys, monkeypatch):
    import dagzip.cli as cli_mod
    from dagzip.mst import MstResult, MstStats

    def broken(d, **kwargs):
        return MstResult(edges=[], total_weight=0, stats=MstStats())

    monkeypatch.setattr(cli_mod, "kruskal_compressed", broken)
    code, _, err = run_cli(["mst", mst_file, "--check"], capsys)
    assert code == 3
    assert "mismatch" in err
