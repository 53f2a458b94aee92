import pytest

from termpicker.nquads import BLANK_KIND, IRI_KIND, LITERAL_KIND, RDF_TYPE, Quad, RdfObject

FOAF = "http://xmlns.com/foaf/0.1/"
DBO = "http://dbpedia.org/ontology/"
SWRC = "http://swrc.ontoware.org/ontology#"
DC = "http://purl.org/dc/elements/1.1/"
CTX = "http://ex1.org/g"


def iri(value: str) -> RdfObject:
    return RdfObject(IRI_KIND, value)


def blank(label: str) -> RdfObject:
    return RdfObject(BLANK_KIND, label)


def lit(value: str, datatype: str | None = None, lang: str | None = None) -> RdfObject:
    return RdfObject(LITERAL_KIND, value, datatype=datatype, lang=lang)


def quad(s: str, p: str, o, c: str = CTX) -> Quad:
    if isinstance(o, str):
        o = iri(o)
    return Quad(s, p, o, c)


@pytest.fixture
def listing1_quads() -> list[Quad]:
    """Two typed resources linked by foaf:knows: a person who is also a
    chess player knows a person who is also a coach."""
    s1 = "http://ex1.org/sports_001"
    s2 = "http://ex1.org/sports_002"
    return [
        quad(s1, RDF_TYPE, FOAF + "Person"),
        quad(s1, RDF_TYPE, DBO + "ChessPlayer"),
        quad(s1, FOAF + "knows", s2),
        quad(s2, RDF_TYPE, FOAF + "Person"),
        quad(s2, RDF_TYPE, DBO + "Coach"),
    ]
