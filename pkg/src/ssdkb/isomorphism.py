"""Graph isomorphism for triple sets: equality up to a bijection of
blank-node labels. Color refinement narrows candidates, backtracking
settles symmetric leftovers."""

from __future__ import annotations

from .terms import BlankNode, Term, term_sort_key
from .turtle import Triple, TripleGraph


def _blank_labels(triples: set[Triple]) -> set[str]:
    labels = set()
    for t in triples:
        if isinstance(t.subject, BlankNode):
            labels.add(t.subject.label)
        if isinstance(t.object, BlankNode):
            labels.add(t.object.label)
    return labels


def _ground_key(term: Term) -> tuple:
    if isinstance(term, BlankNode):
        return ("_",)
    return term_sort_key(term)


def _refine_colors(triples: set[Triple], labels: set[str], rounds: int) -> dict[str, int]:
    # adjacency: label -> [(direction, predicate, neighbor-label or ground key)]
    adjacency: dict[str, list[tuple]] = {label: [] for label in labels}
    for t in triples:
        s_blank = isinstance(t.subject, BlankNode)
        o_blank = isinstance(t.object, BlankNode)
        if s_blank:
            other = t.object.label if o_blank else _ground_key(t.object)
            adjacency[t.subject.label].append(("out", t.predicate.value, o_blank, other))
        if o_blank:
            other = t.subject.label if s_blank else _ground_key(t.subject)
            adjacency[t.object.label].append(("in", t.predicate.value, s_blank, other))

    colors = {label: 0 for label in labels}
    for _ in range(rounds):
        new_colors = {}
        for label in labels:
            signature = tuple(
                sorted(
                    (direction, pred, ("b", colors[other]) if is_blank else ("g", other))
                    for direction, pred, is_blank, other in adjacency[label]
                )
            )
            new_colors[label] = hash(signature)
        if new_colors == colors:
            break
        colors = new_colors
    return colors


def _substitute(triples: set[Triple], mapping: dict[str, str]) -> set[Triple]:
    def sub(term: Term) -> Term:
        if isinstance(term, BlankNode):
            return BlankNode(mapping[term.label])
        return term

    return {Triple(sub(t.subject), t.predicate, sub(t.object)) for t in triples}


def isomorphic(a: TripleGraph | set[Triple], b: TripleGraph | set[Triple]) -> bool:
    """True iff the two triple sets are equal under some blank-node bijection."""
    ta = a.triples if isinstance(a, TripleGraph) else a
    tb = b.triples if isinstance(b, TripleGraph) else b
    if len(ta) != len(tb):
        return False

    ground_a = {t for t in ta if not _blank_labels({t})}
    ground_b = {t for t in tb if not _blank_labels({t})}
    if ground_a != ground_b:
        return False

    labels_a = _blank_labels(ta)
    labels_b = _blank_labels(tb)
    if len(labels_a) != len(labels_b):
        return False
    if not labels_a:
        return ta == tb

    rounds = len(labels_a) + 1
    colors_a = _refine_colors(ta, labels_a, rounds)
    colors_b = _refine_colors(tb, labels_b, rounds)
    if sorted(colors_a.values()) != sorted(colors_b.values()):
        return False

    by_color_b: dict[int, list[str]] = {}
    for label, color in colors_b.items():
        by_color_b.setdefault(color, []).append(label)

    order = sorted(labels_a, key=lambda l: (len(by_color_b[colors_a[l]]), l))

    def backtrack(idx: int, mapping: dict[str, str], used: set[str]) -> bool:
        if idx == len(order):
            return _substitute(ta, mapping) == tb
        label = order[idx]
        for candidate in by_color_b[colors_a[label]]:
            if candidate in used:
                continue
            mapping[label] = candidate
            used.add(candidate)
            if backtrack(idx + 1, mapping, used):
                return True
            del mapping[label]
            used.remove(candidate)
        return False

    return backtrack(0, {}, set())
