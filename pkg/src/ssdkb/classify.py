"""Structural design classification from phase signatures, and forward
materialization of inferred type assertions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import vocab
from .kb import KnowledgeBase, validate_kb
from .model import MBDItem, Study, Violation
from .taxonomy import Taxonomy
from .terms import Iri, RDF_TYPE, Term
from .turtle import Triple


class ClassificationError(Exception):
    pass


# warning code attached when a valid study fits no specific pattern
UNRECOGNIZED_DESIGN = "UnrecognizedDesign"


def phase_signature(study: Study) -> str:
    """Letters over {B,I,A,F} following phase kinds in position order.
    MBD studies have no study-level signature; use item_signature."""
    if study.is_mbd:
        raise ClassificationError(
            f"study {study.id} is multiple-baseline; signatures apply per item"
        )
    return "".join(p.kind.letter for p in sorted(study.phases, key=lambda p: p.position))


def item_signature(item: MBDItem) -> str:
    return "".join(p.kind.letter for p in sorted(item.phases, key=lambda p: p.position))


def _strip_follow_up(sig: str) -> str:
    return sig[:-1] if sig.endswith("F") else sig


def _is_ab(sig: str) -> bool:
    return _strip_follow_up(sig) == "BI"


def _is_abab(sig: str) -> bool:
    return _strip_follow_up(sig) == "BIBI"


def _is_withdrawal(sig: str) -> bool:
    """B (I B)+ with optional trailing I: intervention is withdrawn at
    least once, so at least three non-follow-up phases."""
    core = _strip_follow_up(sig)
    if len(core) < 3 or "A" in core or "F" in core:
        return False
    for i, letter in enumerate(core):
        expected = "B" if i % 2 == 0 else "I"
        if letter != expected:
            return False
    return True


def _is_alternating(sig: str) -> bool:
    return _strip_follow_up(sig) == "BA"


def _is_simple(sig: str) -> bool:
    """One baseline then a single intervention episode of one or more
    simple-intervention phases."""
    core = _strip_follow_up(sig)
    return len(core) >= 2 and core[0] == "B" and set(core[1:]) == {"I"}


SignaturePredicate = Callable[[str], bool]

# design class -> signature predicate, most specific entries included
PATTERN_TABLE: dict[Iri, SignaturePredicate] = {
    vocab.AB_DESIGN: _is_ab,
    vocab.ABAB_DESIGN: _is_abab,
    vocab.WITHDRAWAL_DESIGN: _is_withdrawal,
    vocab.ALTERNATING_TREATMENT_DESIGN: _is_alternating,
    vocab.SIMPLE_DESIGN: _is_simple,
}


@dataclass(frozen=True)
class Classification:
    classes: frozenset[Iri]
    warnings: tuple[Violation, ...] = ()


def _close_upward(classes: set[Iri], taxonomy: Taxonomy) -> frozenset[Iri]:
    closed: set[Iri] = set()
    for cls in classes:
        closed |= taxonomy.superclasses(cls)
    return frozenset(closed)


def classify_study(study: Study, taxonomy: Taxonomy) -> Classification:
    """All design classes the study satisfies, upward-closed. Valid studies
    matching no specific pattern classify as SingleSubjectDesign only,
    with a warning."""
    if study.is_mbd:
        outcome = classify_mbd(study)
        if isinstance(outcome, Violation):
            return Classification(
                classes=_close_upward({vocab.MULTIPLE_BASELINE_DESIGN}, taxonomy),
                warnings=(outcome,),
            )
        return Classification(classes=_close_upward({outcome}, taxonomy))

    sig = phase_signature(study)
    matched = {cls for cls, pred in PATTERN_TABLE.items() if pred(sig)}
    if not matched:
        return Classification(
            classes=frozenset({vocab.SINGLE_SUBJECT_DESIGN}),
            warnings=(
                Violation(
                    UNRECOGNIZED_DESIGN,
                    study.id,
                    f"signature {sig!r} matches no specific design pattern",
                ),
            ),
        )
    return Classification(classes=_close_upward(matched, taxonomy))


def classify_design(study: Study, taxonomy: Taxonomy) -> frozenset[Iri]:
    return classify_study(study, taxonomy).classes


_ITEM_TYPE_PREDICATES: dict[Iri, SignaturePredicate] = {
    vocab.SIMPLE_DESIGN: _is_simple,
    vocab.WITHDRAWAL_DESIGN: _is_withdrawal,
    vocab.ALTERNATING_TREATMENT_DESIGN: _is_alternating,
}

_MBD_DIMENSION_CLASS = {
    "outcome": vocab.ACROSS_OUTCOME_MBD,
    "setting": vocab.ACROSS_SETTING_MBD,
    "subject": vocab.ACROSS_SUBJECT_MBD,
}

MBD_ITEM_CLASS_FOR_STUDY = {
    vocab.ACROSS_OUTCOME_MBD: vocab.ACROSS_OUTCOME_MBD_ITEM,
    vocab.ACROSS_SETTING_MBD: vocab.ACROSS_SETTING_MBD_ITEM,
    vocab.ACROSS_SUBJECT_MBD: vocab.ACROSS_SUBJECT_MBD_ITEM,
}


def classify_mbd(study: Study) -> Iri | Violation:
    """Across-X class when exactly one of {outcome, setting, subject}
    varies over the items (all items pairwise distinct in it); otherwise
    a violation. Baseline lengths are free to differ."""
    if len(study.mbd_items) < 2:
        return Violation("MBDNeedsTwoItems", study.id, "fewer than two MBD items")

    item_type = study.mbd_item_type
    if item_type is not None:
        predicate = _ITEM_TYPE_PREDICATES.get(item_type)
        if predicate is None:
            return Violation(
                "MBDUnknownItemType", study.id, f"unsupported item type {item_type}"
            )
        for item in study.mbd_items:
            sig = item_signature(item)
            if not predicate(sig):
                return Violation(
                    "MBDItemSignatureMismatch",
                    item.id,
                    f"item signature {sig!r} does not match item type {item_type}",
                )

    def values(extract: Callable[[MBDItem], Optional[Term]]) -> list[Optional[Term]]:
        return [extract(item) for item in study.mbd_items]

    dims = {
        "outcome": values(lambda i: i.outcome),
        "setting": values(lambda i: i.setting),
        "subject": values(lambda i: i.subject),
    }
    varying = []
    for name, vals in dims.items():
        distinct = set(vals)
        if len(distinct) == 1:
            continue
        if len(distinct) != len(vals):
            return Violation(
                "MBDDimensionPartiallyVaries",
                study.id,
                f"dimension {name} varies but items are not pairwise distinct",
            )
        varying.append(name)
    if not varying:
        return Violation(
            "MBDNoVaryingDimension", study.id, "no dimension varies across items"
        )
    if len(varying) > 1:
        return Violation(
            "MBDMultipleDimensions",
            study.id,
            f"dimensions {sorted(varying)} all vary; exactly one may",
        )
    return _MBD_DIMENSION_CLASS[varying[0]]


# --- materialization ---


def materialize_types(kb: KnowledgeBase) -> KnowledgeBase:
    """Forward closure: subclass-closure types for every typed individual,
    design classes for every study, across-X item types for MBD items.
    Idempotent and monotone."""
    violations = validate_kb(kb)
    if violations:
        ids = sorted({str(v.subject) for v in violations})
        raise ClassificationError(
            f"kb fails validation; offending subjects: {', '.join(ids)}"
        )

    taxonomy = kb.taxonomy
    inferred: set[Triple] = set(kb.inferred)

    for t in kb.graph.triples:
        if (
            t.predicate == RDF_TYPE
            and isinstance(t.object, Iri)
            and taxonomy.contains(t.object)
        ):
            for sup in taxonomy.superclasses(t.object):
                inferred.add(Triple(t.subject, RDF_TYPE, sup))

    for study in kb.studies:
        classification = classify_study(study, taxonomy)
        for cls in classification.classes:
            inferred.add(Triple(study.id, RDF_TYPE, cls))
        item_class = None
        for cls in classification.classes:
            item_class = MBD_ITEM_CLASS_FOR_STUDY.get(cls) or item_class
        if item_class is not None:
            for item in study.mbd_items:
                for sup in taxonomy.superclasses(item_class):
                    inferred.add(Triple(item.id, RDF_TYPE, sup))

    inferred -= kb.graph.triples
    return kb.with_inferred(frozenset(inferred))
