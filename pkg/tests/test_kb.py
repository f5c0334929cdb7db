from decimal import Decimal

import pytest

from conftest import load_kb
from ssdkb import vocab
from ssdkb.classify import materialize_types
from ssdkb.kb import SchemaError, empty_kb, graph_to_kb, kb_stats, kb_to_graph, validate_kb
from ssdkb.model import PhaseKind, age_in_months
from ssdkb.terms import RDF_TYPE, aut, local_name, ssd
from ssdkb.turtle import Triple, parse_turtle


def test_fig3_lifts_to_typed_model(fig3_kb):
    assert validate_kb(fig3_kb) == []
    (study,) = fig3_kb.studies
    assert study.id == ssd("ssd01")
    assert study.asserted_class == vocab.ABAB_DESIGN

    (paul,) = study.participants
    assert paul.id == ssd("paul")
    assert paul.condition == ssd("autism")
    assert age_in_months(paul.age) == 88
    assert age_in_months(paul.diagnosed_at_age) == 36

    kinds = [p.kind for p in study.phases]
    assert kinds == [
        PhaseKind.BASELINE,
        PhaseKind.SIMPLE_INTERVENTION,
        PhaseKind.BASELINE,
        PhaseKind.SIMPLE_INTERVENTION,
    ]
    assert study.phases[1].intervention_types == (aut("weekendInterview"),)

    by_name = {local_name(r.id): r for r in study.results}
    assert by_name["res01"].value == Decimal("10.1")
    assert by_name["res01"].instant == 1
    assert by_name["res02"].value == Decimal("10.1")
    assert by_name["res02"].instant == 2
    assert by_name["res04"].value == Decimal("20.4")
    assert by_name["res04"].instant == 4
    assert by_name["res04"].intervention_type == aut("weekendInterview")
    assert by_name["res04"].phase_ref == ssd("ph02")


def test_non_integer_position_is_type_clash():
    text = (
        "@prefix ssd: <http://bdi.si.ehu.es/bdi/ontologies/SSDOnt/SSDOnt#> .\n"
        "ssd:s a ssd:AB_Design ; ssd:hasPhase ssd:ph02 .\n"
        'ssd:ph02 a ssd:SimpleInterventionPhase ; ssd:hasPosition "two" .\n'
    )
    with pytest.raises(SchemaError) as err:
        graph_to_kb(parse_turtle(text))
    assert err.value.subject == ssd("ph02")


def test_dangling_result_phase_reference():
    text = (
        "@prefix ssd: <http://bdi.si.ehu.es/bdi/ontologies/SSDOnt/SSDOnt#> .\n"
        "ssd:r a ssd:Result ; ssd:hasValue 1.0 ; ssd:occursIn _:i ;"
        " ssd:isResultOfPhase ssd:ghost .\n"
        "_:i a ssd:Instant ; ssd:hasValue 1 .\n"
    )
    with pytest.raises(SchemaError):
        graph_to_kb(parse_turtle(text))


def test_empty_graph_gives_empty_kb():
    kb = graph_to_kb(parse_turtle(""))
    assert kb.studies == ()
    assert kb.all_triples() == set()


def test_unknown_predicates_survive(fig3_kb):
    text = (
        "@prefix ssd: <http://bdi.si.ehu.es/bdi/ontologies/SSDOnt/SSDOnt#> .\n"
        "ssd:paul a ssd:Participant ; ssd:likes ssd:trains .\n"
    )
    kb = graph_to_kb(parse_turtle(text))
    assert Triple(ssd("paul"), ssd("likes"), ssd("trains")) in kb.graph.triples
    again = kb_to_graph(kb)
    assert Triple(ssd("paul"), ssd("likes"), ssd("trains")) in again.triples


def test_kb_to_graph_asserted_only_until_materialized(fig3_kb):
    graph = kb_to_graph(fig3_kb)
    assert graph.triples == fig3_kb.graph.triples
    assert Triple(ssd("ssd01"), RDF_TYPE, vocab.ABAB_DESIGN) in graph.triples
    assert Triple(ssd("ssd01"), RDF_TYPE, vocab.WITHDRAWAL_DESIGN) not in graph.triples

    mat = materialize_types(fig3_kb)
    graph = kb_to_graph(mat)
    assert Triple(ssd("ssd01"), RDF_TYPE, vocab.WITHDRAWAL_DESIGN) in graph.triples
    # re-lifting reproduces the typed content
    again = graph_to_kb(graph)
    assert [s.id for s in again.studies] == [s.id for s in mat.studies]
    assert again.studies[0].phases == mat.studies[0].phases
    assert again.studies[0].results == mat.studies[0].results


def test_fig3_stats(fig3_kb):
    stats = kb_stats(fig3_kb)
    assert stats.study_count == 1
    assert stats.triple_count == len(fig3_kb.graph.triples)
    # ssd01 + paul + 4 phases + 6 results + 6 instants + 2 ages + the
    # outcome, weekendInterview, autism, male and percentage = 25
    assert stats.individual_count == 25
    assert stats.per_class_counts["Result"] == 6
    assert stats.per_class_counts["Instant"] == 6
    assert stats.per_class_counts["AgeDescription"] == 2


def test_empty_kb_stats():
    stats = kb_stats(empty_kb())
    assert (stats.study_count, stats.triple_count, stats.individual_count) == (0, 0, 0)


def test_stats_additive_over_disjoint_kbs():
    a = load_kb("fig3.ttl")
    b = load_kb("ab_study.ttl")
    merged = parse_turtle("")
    merged.triples = set(a.graph.triples) | set(b.graph.triples)
    merged.prefix_table.update(a.graph.prefix_table)
    both = graph_to_kb(merged)
    sa, sb, sm = kb_stats(a), kb_stats(b), kb_stats(both)
    # fixtures share paul, the outcome and the intervention individual;
    # build genuinely disjoint inputs instead
    assert sm.study_count == sa.study_count + sb.study_count

    from ssdkb.generate import GenProfile, generate_graph

    g1 = generate_graph(3, GenProfile(seed=1))
    g2 = generate_graph(3, GenProfile(seed=2))
    # shared pool individuals break disjointness; rename one side
    from ssdkb.terms import Iri

    def shift(term):
        if isinstance(term, Iri):
            return Iri(term.value.replace("#", "#other_"))
        from ssdkb.terms import BlankNode

        if isinstance(term, BlankNode):
            return BlankNode("other_" + term.label)
        return term

    shifted = {
        Triple(shift(t.subject), t.predicate, shift(t.object) if t.predicate != RDF_TYPE else t.object)
        for t in g2.triples
    }
    union = parse_turtle("")
    union.triples = set(g1.triples) | shifted
    k1 = graph_to_kb(g1)
    shifted_graph = parse_turtle("")
    shifted_graph.triples = shifted
    k2 = graph_to_kb(shifted_graph)
    ku = graph_to_kb(union)
    s1, s2, su = kb_stats(k1), kb_stats(k2), kb_stats(ku)
    assert su.triple_count == s1.triple_count + s2.triple_count
    assert su.individual_count == s1.individual_count + s2.individual_count
    assert su.study_count == s1.study_count + s2.study_count
