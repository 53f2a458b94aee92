from termpicker.corpus import (
    UNASSIGNED,
    ingest_files,
    partition_by_pld,
    read_corpus_dir,
    read_manifest,
    write_corpus_dir,
)
from conftest import FOAF, quad


def _ctx_quad(i, ctx):
    return quad(f"http://a.org/s{i}", FOAF + "knows", f"http://a.org/o{i}", ctx)


def test_subdomains_collapse_to_one_pld():
    quads = [
        _ctx_quad(0, "http://a.bbc.co.uk/g"),
        _ctx_quad(1, "http://b.bbc.co.uk/g"),
    ]
    partition = partition_by_pld(quads)
    assert set(partition.graphs) == {"bbc.co.uk"}
    assert len(partition.graphs["bbc.co.uk"]) == 2


def test_empty_input_gives_empty_partition():
    partition = partition_by_pld([])
    assert partition.graphs == {} and partition.unassigned == []


def test_mixed_contexts_split():
    quads = [_ctx_quad(0, "http://x.org/g"), _ctx_quad(1, "http://y.com/g")]
    partition = partition_by_pld(quads)
    assert set(partition.graphs) == {"x.org", "y.com"}


def test_unresolvable_contexts_go_to_unassigned():
    quads = [
        _ctx_quad(0, "http://x.org/g"),
        _ctx_quad(1, "http://192.168.0.1/g"),
        _ctx_quad(2, "http://no-suffix.zz/g"),
    ]
    partition = partition_by_pld(quads)
    assert len(partition.unassigned) == 2
    assert partition.total_quads() == 3


def test_corpus_dir_round_trip(tmp_path):
    quads = [
        _ctx_quad(0, "http://x.org/g"),
        _ctx_quad(1, "http://y.com/g"),
        _ctx_quad(2, "http://[::1]/g"),
    ]
    out = write_corpus_dir(partition_by_pld(quads), tmp_path / "corpus")
    manifest = read_manifest(out)
    assert [(pld, count) for pld, count, _f in manifest] == [
        ("x.org", 1),
        ("y.com", 1),
        (UNASSIGNED, 1),
    ]
    graphs = read_corpus_dir(out)
    assert set(graphs) == {"x.org", "y.com"}  # unassigned bucket never loads
    assert graphs["x.org"].quads == [quads[0]]


def test_read_corpus_dir_filters(tmp_path):
    quads = [_ctx_quad(0, "http://x.org/g"), _ctx_quad(1, "http://y.com/g")]
    out = write_corpus_dir(partition_by_pld(quads), tmp_path / "corpus")
    assert set(read_corpus_dir(out, include=["x.org"])) == {"x.org"}
    assert set(read_corpus_dir(out, exclude=["x.org"])) == {"y.com"}


def test_partition_completeness_accounting(tmp_path):
    quads = [_ctx_quad(i, "http://x.org/g") for i in range(5)] + [
        _ctx_quad(9, "urn:not-a-host")
    ]
    partition = partition_by_pld(quads)
    assert partition.total_quads() == len(quads)


def test_ingest_files_scopes_blank_nodes(tmp_path):
    file_a = tmp_path / "a.nq"
    file_b = tmp_path / "b.nq"
    file_a.write_text("_:n1 <http://p.org/p> <http://o.org/x> <http://x.org/g> .\n")
    file_b.write_text("_:n1 <http://p.org/p> <http://o.org/y> <http://x.org/g> .\n")
    report = ingest_files([file_a, file_b], tmp_path / "corpus")
    graphs = read_corpus_dir(tmp_path / "corpus")
    subjects = {q.subject for q in graphs["x.org"].quads}
    assert subjects == {"_:f0.n1", "_:f1.n1"}
    assert report.stats.quads == 2


def test_ingest_counts_malformed_lines(tmp_path):
    dump = tmp_path / "dirty.nq"
    dump.write_text(
        "<http://s.org/a> <http://p.org/p> <http://o.org/x> <http://x.org/g> .\n"
        "garbage\n"
    )
    report = ingest_files([dump], tmp_path / "corpus")
    assert report.stats.malformed == 1
    assert report.stats.quads == 1


def test_write_corpus_dir_is_deterministic(tmp_path, listing1_quads):
    partition = partition_by_pld(listing1_quads)
    out1 = write_corpus_dir(partition, tmp_path / "c1")
    out2 = write_corpus_dir(partition, tmp_path / "c2")
    for name in ("manifest.tsv", read_manifest(out1)[0][2]):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
