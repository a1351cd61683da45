import csv
import io

from totalres.bench import CSV_HEADER, load_graph_dir, records_to_csv, run_bench

HEADER = "graph,nodes,edges,mode,iterations,runtime_ms,angular_deg,crossing_deg,total_deg,converged,error"


def write_graphs(tmp_path):
    (tmp_path / "path.txt").write_text("a b\nb c\nc d\n")
    (tmp_path / "square.txt").write_text("a b\nb c\nc d\nd a\na c\n")
    (tmp_path / "star.txt").write_text("c x\nc y\nc z\n")
    return tmp_path


def test_cartesian_product_and_header(tmp_path):
    graphs = load_graph_dir(write_graphs(tmp_path))
    recs = run_bench(graphs, ["initial", "mixed", "angular-only"], max_iters=200)
    assert len(recs) == 9
    text = records_to_csv(recs)
    assert text.splitlines()[0] == HEADER == ",".join(CSV_HEADER)
    rows = list(csv.DictReader(io.StringIO(text)))
    for row in rows:
        assert float(row["runtime_ms"]) >= 0 and row["error"] == ""
        defined = [float(row[k]) for k in ("angular_deg", "crossing_deg") if row[k]]
        assert float(row["total_deg"]) == min(defined)
    assert {r["crossing_deg"] for r in rows if r["graph"] == "path"} == {""}


def test_deterministic_without_timing(tmp_path):
    graphs = load_graph_dir(write_graphs(tmp_path))
    a = records_to_csv(run_bench(graphs, ["mixed", "crossing-only"], max_iters=100, timing=False))
    b = records_to_csv(run_bench(graphs, ["mixed", "crossing-only"], max_iters=100, timing=False))
    assert a == b


def test_bad_file_becomes_error_rows(tmp_path):
    (tmp_path / "broken.txt").write_text("a a\n")
    recs = run_bench(load_graph_dir(tmp_path), ["initial", "mixed"])
    assert len(recs) == 2 and all(r.error.startswith("parse:") for r in recs)
