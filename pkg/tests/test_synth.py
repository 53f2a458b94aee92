import filecmp
import random

from termpicker.corpus import read_corpus_dir, read_manifest
from termpicker.domains import pay_level_domain
from termpicker.slp import compute_slps
from termpicker.synth import SynthSpec, build_templates, generate_synthetic_corpus

from oracles import brute_force_slp_store


def test_fixed_seed_produces_byte_identical_corpus(tmp_path):
    spec = SynthSpec(pld_count=4, vocab_count=3, slp_templates=3)
    a = generate_synthetic_corpus(spec, seed=5, out_dir=tmp_path / "a")
    b = generate_synthetic_corpus(spec, seed=5, out_dir=tmp_path / "b")
    names = [row[2] for row in read_manifest(a)] + ["manifest.tsv"]
    match, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    assert mismatch == [] and errors == []


def test_different_seed_changes_corpus(tmp_path):
    spec = SynthSpec(pld_count=2, vocab_count=2, slp_templates=2)
    a = generate_synthetic_corpus(spec, seed=1, out_dir=tmp_path / "a")
    b = generate_synthetic_corpus(spec, seed=2, out_dir=tmp_path / "b")
    read_a = sorted(f.read_text() for f in a.glob("*.nq"))
    read_b = sorted(f.read_text() for f in b.glob("*.nq"))
    assert read_a != read_b


def test_single_template_shared_by_all_plds(tmp_path):
    spec = SynthSpec(pld_count=4, vocab_count=2, slp_templates=1, noise_rate=0.0)
    out = generate_synthetic_corpus(spec, seed=9, out_dir=tmp_path / "c")
    graphs = read_corpus_dir(out)
    per_pld = [set(compute_slps(g)) for g in graphs.values()]
    assert all(s == per_pld[0] for s in per_pld)
    assert len(per_pld[0]) == 1


def test_template_count_equals_distinct_slps_at_zero_noise(tmp_path):
    spec = SynthSpec(pld_count=5, vocab_count=3, slp_templates=7, noise_rate=0.0)
    out = generate_synthetic_corpus(spec, seed=13, out_dir=tmp_path / "c")
    graphs = read_corpus_dir(out)
    store = brute_force_slp_store({pld: g.quads for pld, g in graphs.items()})
    assert len(store) == 7
    templates = set(build_templates(spec, random.Random(13)))
    assert store == templates


def test_noise_adds_slps_but_keeps_templates(tmp_path):
    spec = SynthSpec(pld_count=3, vocab_count=2, slp_templates=4, noise_rate=0.3)
    out = generate_synthetic_corpus(spec, seed=3, out_dir=tmp_path / "c")
    graphs = read_corpus_dir(out)
    store = brute_force_slp_store({pld: g.quads for pld, g in graphs.items()})
    templates = set(build_templates(spec, random.Random(3)))
    assert templates <= store
    assert len(store) > 4


def test_contexts_map_to_manifest_pld(tmp_path):
    spec = SynthSpec(pld_count=3, vocab_count=2, slp_templates=2)
    out = generate_synthetic_corpus(spec, seed=11, out_dir=tmp_path / "c")
    for pld, graph in read_corpus_dir(out).items():
        assert all(pay_level_domain(q.context) == pld for q in graph.quads)


def test_extracted_terms_unique_by_cooccurrence(tmp_path):
    """Dropping any one term from a template leaves a pattern that matches
    the original template and nothing else in the store."""
    spec = SynthSpec(pld_count=4, vocab_count=3, slp_templates=5)
    out = generate_synthetic_corpus(spec, seed=21, out_dir=tmp_path / "c")
    graphs = read_corpus_dir(out)
    store = brute_force_slp_store({pld: g.quads for pld, g in graphs.items()})
    templates = build_templates(spec, random.Random(21))
    for template in templates:
        for reduced in (
            (set(), template.ps, template.ots),
            (template.sts, set(), template.ots),
            (template.sts, template.ps, set()),
        ):
            sts, ps, ots = reduced
            matches = [
                s for s in store if set(sts) <= s.sts and set(ps) <= s.ps and set(ots) <= s.ots
            ]
            assert matches == [template]
