"""Knowledge base: typed studies plus the raw triple graph they came from.

graph_to_kb lifts a parsed graph into the typed model; kb_to_graph is its
inverse and additionally emits inferred type triples once the kb has been
materialized. Unknown predicates survive in the graph untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from decimal import Decimal, InvalidOperation

from . import vocab
from .model import (
    AgeDescription,
    MBDItem,
    Participant,
    Phase,
    PhaseKind,
    Result,
    Study,
    Violation,
    KIND_TO_PHASE_CLASS,
    PHASE_CLASS_TO_KIND,
    validate_study,
)
from .taxonomy import Taxonomy, core_taxonomy
from .terms import (
    BlankNode,
    Iri,
    Literal,
    RDF_TYPE,
    Term,
    integer,
    local_name,
    term_sort_key,
)
from .turtle import Triple, TripleGraph


class SchemaError(Exception):
    """The graph does not fit the annotation schema (type clash or
    dangling reference); carries the offending subject term."""

    def __init__(self, message: str, subject: Term):
        super().__init__(f"{message} (subject {subject})")
        self.subject = subject


class TripleIndex:
    """Lookup structures over one immutable triple set."""

    def __init__(self, triples):
        self.all = list(triples)
        self.by_p: dict[Iri, list[Triple]] = {}
        self.by_po: dict[tuple, list[Triple]] = {}
        self.by_sp: dict[tuple, list[Triple]] = {}
        self.type_index: dict[Iri, set[Term]] = {}
        self.individual_iris: set[str] = set()
        for t in self.all:
            self.by_p.setdefault(t.predicate, []).append(t)
            self.by_po.setdefault((t.predicate, t.object), []).append(t)
            self.by_sp.setdefault((t.subject, t.predicate), []).append(t)
            if t.predicate == RDF_TYPE and isinstance(t.object, Iri):
                self.type_index.setdefault(t.object, set()).add(t.subject)
            for term in (t.subject, t.object):
                if isinstance(term, Iri):
                    self.individual_iris.add(term.value)

    def candidates(self, subject, predicate, obj) -> list[Triple]:
        """Triples matching the given constants (None = wildcard)."""
        if predicate is not None:
            if subject is not None:
                found = self.by_sp.get((subject, predicate), [])
            elif obj is not None:
                found = self.by_po.get((predicate, obj), [])
            else:
                found = self.by_p.get(predicate, [])
        else:
            found = self.all
        return [
            t
            for t in found
            if (subject is None or t.subject == subject)
            and (obj is None or t.object == obj)
        ]


@dataclass(frozen=True)
class KnowledgeBase:
    graph: TripleGraph
    taxonomy: Taxonomy
    studies: tuple[Study, ...] = ()
    inferred: frozenset[Triple] = frozenset()
    materialized: bool = False
    _index: TripleIndex | None = field(
        init=False, repr=False, compare=False, default=None
    )

    def all_triples(self) -> set[Triple]:
        return set(self.graph.triples) | set(self.inferred)

    def index(self) -> TripleIndex:
        """Cached index over asserted + inferred triples. The kb is
        immutable, so building it once is safe."""
        if self._index is None:
            object.__setattr__(self, "_index", TripleIndex(self.all_triples()))
        return self._index

    def with_inferred(self, inferred: frozenset[Triple]) -> "KnowledgeBase":
        return replace(self, inferred=inferred, materialized=True)


def empty_kb(taxonomy: Taxonomy | None = None) -> KnowledgeBase:
    return KnowledgeBase(graph=TripleGraph(), taxonomy=taxonomy or core_taxonomy())


# --- graph -> typed model ---


class _GraphView:
    def __init__(self, graph: TripleGraph):
        self.by_subject: dict[Term, list[Triple]] = {}
        for t in graph.triples:
            self.by_subject.setdefault(t.subject, []).append(t)

    def objects(self, subject: Term, predicate: Iri) -> list[Term]:
        found = [
            t.object
            for t in self.by_subject.get(subject, [])
            if t.predicate == predicate
        ]
        found.sort(key=term_sort_key)
        return found

    def one(self, subject: Term, predicate: Iri) -> Term | None:
        found = self.objects(subject, predicate)
        return found[0] if found else None

    def types(self, subject: Term) -> list[Term]:
        return self.objects(subject, RDF_TYPE)


def _require_int(value: Term | None, subject: Term, what: str) -> int | None:
    if value is None:
        return None
    if not isinstance(value, Literal) or value.datatype != "integer":
        raise SchemaError(f"{what} must be an integer, got {value}", subject)
    return value.as_int()


def _require_decimal(value: Term | None, subject: Term, what: str) -> Decimal | None:
    if value is None:
        return None
    if not isinstance(value, Literal) or value.datatype not in ("integer", "decimal"):
        raise SchemaError(f"{what} must be numeric, got {value}", subject)
    try:
        return value.as_decimal()
    except InvalidOperation:
        raise SchemaError(f"{what} is not a finite number: {value}", subject)


def _read_age(view: _GraphView, node: Term | None) -> AgeDescription | None:
    if node is None:
        return None
    years = _require_int(view.one(node, vocab.YEARS), node, "years")
    months = _require_int(view.one(node, vocab.MONTHS), node, "months")
    if years is None:
        raise SchemaError("age description lacks a years value", node)
    return AgeDescription(years=years, months=months)


def _read_participant(view: _GraphView, node: Term) -> Participant:
    return Participant(
        id=node,
        condition=view.one(node, vocab.HAS_CONDITION),
        gender=view.one(node, vocab.HAS_GENDER),
        age=_read_age(view, view.one(node, vocab.HAS_AGE)),
        diagnosed_at_age=_read_age(view, view.one(node, vocab.DIAGNOSED_AT_AGE)),
    )


def _read_phase(view: _GraphView, node: Term, taxonomy: Taxonomy) -> Phase:
    kind: PhaseKind | None = None
    for typ in view.types(node):
        if isinstance(typ, Iri) and typ in PHASE_CLASS_TO_KIND:
            kind = PHASE_CLASS_TO_KIND[typ]
        elif isinstance(typ, Iri) and typ == vocab.INTERVENTION_PHASE:
            kind = kind or PhaseKind.SIMPLE_INTERVENTION
    if kind is None:
        raise SchemaError("phase node has no recognized phase type", node)
    position = _require_int(view.one(node, vocab.HAS_POSITION), node, "hasPosition")
    if position is None:
        raise SchemaError("phase lacks a hasPosition value", node)
    return Phase(
        id=node,
        kind=kind,
        position=position,
        intervention_types=tuple(view.objects(node, vocab.HAS_INTERVENTION_TYPE)),
    )


def _read_result(view: _GraphView, node: Term) -> Result:
    value = _require_decimal(view.one(node, vocab.HAS_VALUE), node, "hasValue")
    if value is None:
        raise SchemaError("result lacks a hasValue", node)
    instant_node = view.one(node, vocab.OCCURS_IN)
    if instant_node is None:
        raise SchemaError("result lacks an occursIn instant", node)
    instant = _require_int(view.one(instant_node, vocab.HAS_VALUE), instant_node, "instant hasValue")
    if instant is None:
        raise SchemaError("instant lacks a hasValue", instant_node)
    phase_ref = view.one(node, vocab.IS_RESULT_OF_PHASE)
    if phase_ref is None:
        raise SchemaError("result lacks isResultOfPhase", node)
    return Result(
        id=node,
        value=value,
        instant=instant,
        phase_ref=phase_ref,
        intervention_type=view.one(node, vocab.HAS_INTERVENTION_TYPE),
    )


def _asserted_design(view: _GraphView, node: Term, taxonomy: Taxonomy) -> Iri | None:
    designs = [
        t
        for t in view.types(node)
        if isinstance(t, Iri)
        and taxonomy.contains(t)
        and taxonomy.is_subclass_of(t, vocab.SINGLE_SUBJECT_DESIGN)
    ]
    if not designs:
        return None
    # most specific asserted design class
    designs.sort(key=lambda c: (-taxonomy.depth(c), c.value))
    return designs[0]


def graph_to_kb(graph: TripleGraph, taxonomy: Taxonomy | None = None) -> KnowledgeBase:
    """Lift a triple graph to typed studies. Raises SchemaError on type
    clashes and dangling references; structural problems beyond that are
    left for validate_study."""
    taxonomy = taxonomy or core_taxonomy()
    view = _GraphView(graph)

    study_nodes = sorted(
        {
            t.subject
            for t in graph.triples
            if t.predicate == RDF_TYPE
            and isinstance(t.object, Iri)
            and taxonomy.contains(t.object)
            and taxonomy.is_subclass_of(t.object, vocab.SINGLE_SUBJECT_DESIGN)
        },
        key=term_sort_key,
    )

    phase_cache: dict[Term, Phase] = {}

    def phase_of(node: Term) -> Phase:
        if node not in phase_cache:
            phase_cache[node] = _read_phase(view, node, taxonomy)
        return phase_cache[node]

    # results grouped by the phase they reference
    results_by_phase: dict[Term, list[Result]] = {}
    for t in graph.triples:
        if t.predicate == RDF_TYPE and t.object == vocab.RESULT:
            result = _read_result(view, t.subject)
            results_by_phase.setdefault(result.phase_ref, []).append(result)

    phase_nodes = {
        t.subject
        for t in graph.triples
        if t.predicate == RDF_TYPE
        and isinstance(t.object, Iri)
        and t.object in PHASE_CLASS_TO_KIND
    }
    for phase_ref in results_by_phase:
        if phase_ref not in phase_nodes:
            raise SchemaError("result references a phase that does not exist", phase_ref)

    studies = []
    for node in study_nodes:
        participants = tuple(
            _read_participant(view, p) for p in view.objects(node, vocab.HAS_PARTICIPANT)
        )
        outcomes = tuple(view.objects(node, vocab.HAS_OUTCOME))
        phases = tuple(
            sorted(
                (phase_of(p) for p in view.objects(node, vocab.HAS_PHASE)),
                key=lambda ph: ph.position,
            )
        )
        items = []
        for item_node in view.objects(node, vocab.HAS_MBD_ITEM):
            item_phases = tuple(
                sorted(
                    (phase_of(p) for p in view.objects(item_node, vocab.HAS_PHASE)),
                    key=lambda ph: ph.position,
                )
            )
            items.append(
                MBDItem(
                    id=item_node,
                    subject=view.one(item_node, vocab.HAS_PARTICIPANT),
                    setting=view.one(item_node, vocab.HAS_SETTING),
                    outcome=view.one(item_node, vocab.HAS_OUTCOME),
                    phases=item_phases,
                )
            )
        item_type = view.one(node, vocab.HAS_MBD_ITEM_TYPE)
        if item_type is not None and not isinstance(item_type, Iri):
            raise SchemaError("hasMBDItemType must name a class", node)
        results = tuple(
            sorted(
                (
                    r
                    for phase in (phases + tuple(p for it in items for p in it.phases))
                    for r in results_by_phase.get(phase.id, [])
                ),
                key=lambda r: (r.instant, term_sort_key(r.id)),
            )
        )
        studies.append(
            Study(
                id=node,
                participants=participants,
                outcomes=outcomes,
                phases=phases,
                mbd_items=tuple(items),
                mbd_item_type=item_type,
                results=results,
                asserted_class=_asserted_design(view, node, taxonomy),
            )
        )
    return KnowledgeBase(graph=graph, taxonomy=taxonomy, studies=tuple(studies))


def validate_kb(kb: KnowledgeBase) -> list[Violation]:
    out: list[Violation] = []
    for study in kb.studies:
        out.extend(validate_study(study, kb.taxonomy))
    return out


# --- typed model -> graph ---


def kb_to_graph(kb: KnowledgeBase) -> TripleGraph:
    """Asserted triples, plus inferred type triples when materialized."""
    graph = TripleGraph(prefix_table=dict(kb.graph.prefix_table))
    graph.triples = set(kb.graph.triples)
    if kb.materialized:
        graph.triples |= kb.inferred
    return graph


def study_to_triples(study: Study) -> set[Triple]:
    """Triples asserting one typed study (used by the generator)."""
    triples: set[Triple] = set()

    def add(s: Term, p: Iri, o: Term) -> None:
        triples.add(Triple(s, p, o))

    asserted = study.asserted_class or vocab.SINGLE_SUBJECT_DESIGN
    add(study.id, RDF_TYPE, asserted)
    for participant in study.participants:
        add(study.id, vocab.HAS_PARTICIPANT, participant.id)
        add(participant.id, RDF_TYPE, vocab.PARTICIPANT)
        if participant.condition is not None:
            add(participant.id, vocab.HAS_CONDITION, participant.condition)
        if participant.gender is not None:
            add(participant.id, vocab.HAS_GENDER, participant.gender)
        for prop, age in (
            (vocab.HAS_AGE, participant.age),
            (vocab.DIAGNOSED_AT_AGE, participant.diagnosed_at_age),
        ):
            if age is None:
                continue
            node = BlankNode(f"{local_name(participant.id)}_{local_name(prop)}")
            add(participant.id, prop, node)
            add(node, RDF_TYPE, vocab.AGE_DESCRIPTION)
            add(node, vocab.YEARS, integer(age.years))
            if age.months is not None:
                add(node, vocab.MONTHS, integer(age.months))
    for outcome in study.outcomes:
        add(study.id, vocab.HAS_OUTCOME, outcome)

    def emit_phase(owner: Term, phase: Phase) -> None:
        add(owner, vocab.HAS_PHASE, phase.id)
        add(phase.id, RDF_TYPE, KIND_TO_PHASE_CLASS[phase.kind])
        add(phase.id, vocab.HAS_POSITION, integer(phase.position))
        for it in phase.intervention_types:
            add(phase.id, vocab.HAS_INTERVENTION_TYPE, it)

    for phase in study.phases:
        emit_phase(study.id, phase)
    if study.mbd_item_type is not None:
        add(study.id, vocab.HAS_MBD_ITEM_TYPE, study.mbd_item_type)
    for item in study.mbd_items:
        add(study.id, vocab.HAS_MBD_ITEM, item.id)
        add(item.id, RDF_TYPE, vocab.MBD_ITEM)
        if item.subject is not None:
            add(item.id, vocab.HAS_PARTICIPANT, item.subject)
        if item.setting is not None:
            add(item.id, vocab.HAS_SETTING, item.setting)
        if item.outcome is not None:
            add(item.id, vocab.HAS_OUTCOME, item.outcome)
        for phase in item.phases:
            emit_phase(item.id, phase)

    for result in study.results:
        add(result.id, RDF_TYPE, vocab.RESULT)
        add(result.id, vocab.HAS_VALUE, Literal(str(result.value), "decimal"))
        instant_node = BlankNode(f"{local_name(result.id)}_inst")
        add(result.id, vocab.OCCURS_IN, instant_node)
        add(instant_node, RDF_TYPE, vocab.INSTANT)
        add(instant_node, vocab.HAS_VALUE, integer(result.instant))
        add(result.id, vocab.IS_RESULT_OF_PHASE, result.phase_ref)
        if result.intervention_type is not None:
            add(result.id, vocab.HAS_INTERVENTION_TYPE, result.intervention_type)
    return triples


# --- stats ---


@dataclass(frozen=True)
class KbStats:
    study_count: int
    triple_count: int
    individual_count: int
    per_class_counts: dict[str, int] = field(default_factory=dict)


def kb_stats(kb: KnowledgeBase) -> KbStats:
    """Exact counts over the serialized (asserted + inferred) graph.
    Individuals are IRI/blank nodes occurring in individual positions:
    subjects, plus non-class objects of non-type triples."""
    graph = kb_to_graph(kb)
    individuals: set[Term] = set()
    per_class: dict[str, int] = {}
    for t in graph.triples:
        if isinstance(t.subject, (Iri, BlankNode)):
            individuals.add(t.subject)
        if t.predicate == RDF_TYPE:
            if isinstance(t.object, Iri):
                name = local_name(t.object)
                per_class[name] = per_class.get(name, 0) + 1
        elif isinstance(t.object, (Iri, BlankNode)):
            # hasMBDItemType points at a class, not an individual
            if not (isinstance(t.object, Iri) and kb.taxonomy.contains(t.object)):
                individuals.add(t.object)
    return KbStats(
        study_count=len(kb.studies),
        triple_count=len(graph.triples),
        individual_count=len(individuals),
        per_class_counts=dict(sorted(per_class.items())),
    )
