import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from ssdkb.isomorphism import isomorphic
from ssdkb.terms import BlankNode, Iri, Literal, RDF_TYPE, SSD_NS, ssd
from ssdkb.turtle import Triple, TurtleSyntaxError, parse_turtle, serialize_turtle

PAUL_BLOCK = """
@prefix ssd: <http://bdi.si.ehu.es/bdi/ontologies/SSDOnt/SSDOnt#> .

ssd:paul a ssd:Participant ;
    ssd:hasCondition ssd:autism ;
    ssd:hasGender ssd:male ;
    ssd:hasAge _:age01 ;
    ssd:diagnosedAtAge _:age02 .
"""


def test_paul_block_yields_five_triples():
    graph = parse_turtle(PAUL_BLOCK)
    assert len(graph) == 5
    assert Triple(ssd("paul"), RDF_TYPE, ssd("Participant")) in graph.triples
    assert Triple(ssd("paul"), ssd("hasCondition"), ssd("autism")) in graph.triples
    assert Triple(ssd("paul"), ssd("hasAge"), BlankNode("age01")) in graph.triples


def test_prefix_only_document_is_empty_graph():
    graph = parse_turtle(
        "@prefix ssd: <http://example.org/a#> .\n@prefix aut: <http://example.org/b#> .\n"
    )
    assert len(graph) == 0
    assert graph.prefix_table["ssd"] == "http://example.org/a#"


def test_missing_terminator_is_syntax_error():
    with pytest.raises(TurtleSyntaxError):
        parse_turtle(
            "@prefix ssd: <http://example.org/#> .\nssd:paul ssd:hasGender ssd:male"
        )


def test_unresolvable_prefix():
    with pytest.raises(TurtleSyntaxError, match="unresolvable prefix"):
        parse_turtle("nope:x nope:y nope:z .")


def test_error_carries_line_and_column():
    try:
        parse_turtle("@prefix ssd: <http://e.org/#> .\nssd:a ssd:b @bad .")
    except TurtleSyntaxError as exc:
        assert exc.line == 2
        assert exc.column > 1
    else:
        pytest.fail("expected a syntax error")


def test_literals_and_comments():
    graph = parse_turtle(
        "@prefix s: <http://e.org/#> .\n"
        "# a comment\n"
        's:x s:int 7 ; s:dec 10.1 ; s:str "hi \\"there\\"" . # trailing\n'
    )
    objs = {t.object for t in graph.triples}
    assert Literal("7", "integer") in objs
    assert Literal("10.1", "decimal") in objs
    assert Literal('hi "there"', "string") in objs


def test_absolute_iris():
    graph = parse_turtle("<http://e.org/s> <http://e.org/p> <http://e.org/o> .")
    assert Triple(Iri("http://e.org/s"), Iri("http://e.org/p"), Iri("http://e.org/o")) in graph.triples


def test_statement_order_and_whitespace_insensitive():
    a = parse_turtle("@prefix s: <http://e.org/#> .\ns:a s:p s:b .\ns:c s:p s:d .")
    b = parse_turtle(
        "@prefix s: <http://e.org/#> .\n\n\ns:c   s:p\n\ts:d .\ns:a s:p s:b ."
    )
    assert a.triples == b.triples


def test_duplicate_statements_collapse():
    graph = parse_turtle("@prefix s: <http://e.org/#> .\ns:a s:p s:b .\ns:a s:p s:b .")
    assert len(graph) == 1


@pytest.mark.parametrize("name", ["fig3.ttl", "mbd_setting.ttl", "ab_study.ttl", "cookbook.ttl"])
def test_fixture_round_trip(name):
    graph = parse_turtle((FIXTURES / name).read_text())
    text = serialize_turtle(graph)
    again = parse_turtle(text)
    assert isomorphic(graph, again)
    # canonical output is a fixpoint
    assert serialize_turtle(again) == serialize_turtle(parse_turtle(serialize_turtle(again)))


def test_serializer_canonical_shape():
    graph = parse_turtle((FIXTURES / "fig3.ttl").read_text())
    text = serialize_turtle(graph)
    assert "ssd:hasPosition 1" in text
    lines = text.splitlines()
    prefix_lines = [l for l in lines if l.startswith("@prefix")]
    assert prefix_lines == sorted(prefix_lines)
    assert "_:b1" in text


def test_empty_graph_serializes_to_prefixes_only():
    from ssdkb.turtle import TripleGraph

    text = serialize_turtle(TripleGraph())
    assert "@prefix" in text
    assert parse_turtle(text).triples == set()


_local = st.from_regex(r"[a-z][a-z0-9]{0,6}", fullmatch=True)
_term = st.one_of(
    _local.map(lambda s: Iri(SSD_NS + s)),
    _local.map(BlankNode),
    st.integers(-999, 999).map(lambda i: Literal(str(i), "integer")),
)
_triples = st.sets(
    st.tuples(
        st.one_of(_local.map(lambda s: Iri(SSD_NS + s)), _local.map(BlankNode)),
        _local.map(lambda s: Iri(SSD_NS + s)),
        _term,
    ).map(lambda t: Triple(*t)),
    max_size=25,
)


@given(_triples)
def test_round_trip_random_graphs(triples):
    from ssdkb.turtle import TripleGraph

    graph = TripleGraph(triples=set(triples))
    again = parse_turtle(serialize_turtle(graph))
    assert isomorphic(graph, again)
