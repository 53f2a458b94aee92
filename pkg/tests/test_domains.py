import pytest
from hypothesis import given, strategies as st

from termpicker.domains import (
    PayLevelDomainError,
    PublicSuffixList,
    pay_level_domain,
    vocabulary_namespace,
)


@pytest.mark.parametrize(
    "iri,expected",
    [
        ("http://data.bbc.co.uk/things/1", "bbc.co.uk"),
        ("http://dbpedia.org/resource/X", "dbpedia.org"),
        ("http://example.com/", "example.com"),
        ("http://kasei.us/about", "kasei.us"),
        ("http://b4mad.net/datenbrei/", "b4mad.net"),
        ("http://www.derby.ac.uk/", "derby.ac.uk"),
        ("http://heppnetz.de/foo", "heppnetz.de"),
        ("http://data.gov.uk/dataset/1", "data.gov.uk"),
        ("http://www.bl.uk/", "bl.uk"),
        ("https://user@sub.a.mit.edu:8443/x?y=1", "mit.edu"),
        ("HTTP://WWW.BBC.CO.UK/UPPER", "bbc.co.uk"),
    ],
)
def test_pay_level_domain_examples(iri, expected):
    assert pay_level_domain(iri) == expected


@pytest.mark.parametrize(
    "iri",
    [
        "urn:isbn:12345",
        "http:///nohost",
        "http://192.168.0.1/x",
        "http://[2001:db8::1]/x",
        "http://hostwithunknowntld.zz/x",
        "http://co.uk/",  # host is itself a public suffix
        "mailto:someone@example.com",
    ],
)
def test_pay_level_domain_errors(iri):
    with pytest.raises(PayLevelDomainError):
        pay_level_domain(iri)


def test_wildcard_and_exception_rules():
    # *.ck makes b.ck a suffix; !www.ck exempts www.ck
    assert pay_level_domain("http://a.b.ck/") == "a.b.ck"
    assert pay_level_domain("http://www.ck/") == "www.ck"
    assert pay_level_domain("http://sub.www.ck/") == "www.ck"
    with pytest.raises(PayLevelDomainError):
        pay_level_domain("http://b.ck/")
    assert pay_level_domain("http://city.kawasaki.jp/") == "city.kawasaki.jp"
    assert pay_level_domain("http://web.foo.kawasaki.jp/") == "web.foo.kawasaki.jp"


def test_custom_rule_file(tmp_path):
    rules = tmp_path / "rules.dat"
    rules.write_text("// test rules\nzz\ninner.zz\n", encoding="utf-8")
    psl = PublicSuffixList.from_file(rules)
    assert psl.registrable_domain("a.b.inner.zz") == "b.inner.zz"
    assert psl.registrable_domain("plain.zz") == "plain.zz"
    assert psl.registrable_domain("zz") is None


@given(
    st.sampled_from(["bbc.co.uk", "dbpedia.org", "kasei.us", "heppnetz.de"]),
    st.lists(st.sampled_from(["www", "data", "a1"]), max_size=2),
)
def test_pld_is_suffix_of_host(base, subs):
    host = ".".join(subs + [base])
    pld = pay_level_domain(f"http://{host}/x")
    assert host.endswith(pld)
    assert pld == base


@pytest.mark.parametrize(
    "term,expected",
    [
        ("http://xmlns.com/foaf/0.1/Person", "http://xmlns.com/foaf/0.1/"),
        ("http://www.w3.org/2004/02/skos/core#Concept", "http://www.w3.org/2004/02/skos/core#"),
        ("http://swrc.ontoware.org/ontology#Publication", "http://swrc.ontoware.org/ontology#"),
        ("http://a.org/v#x/y", "http://a.org/v#"),  # first hash wins over later slashes
    ],
)
def test_vocabulary_namespace_examples(term, expected):
    assert vocabulary_namespace(term) == expected


def test_vocabulary_namespace_requires_separator():
    with pytest.raises(ValueError):
        vocabulary_namespace("urn:nothing")


@given(st.sampled_from([
    "http://xmlns.com/foaf/0.1/Person",
    "http://swrc.ontoware.org/ontology#Person",
    "http://purl.org/dc/elements/1.1/date",
    "http://a.org/deep/path/to/Term",
]))
def test_namespace_is_prefix_of_term(term):
    ns = vocabulary_namespace(term)
    assert term.startswith(ns)
    assert ns.endswith(("#", "/"))
