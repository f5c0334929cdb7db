"""Turtle subset parser and canonical serializer.

Supported grammar: `@prefix` directives, prefixed names, absolute IRIs in
angle brackets, the `a` keyword, `;` predicate lists, `.` terminators,
`_:label` blank nodes, integer/decimal/quoted-string literals, and
`#` comments. Collections, language tags and numeric exponents are out of
scope.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .terms import (
    DEFAULT_PREFIXES,
    BlankNode,
    Iri,
    Literal,
    RDF_TYPE,
    Term,
    term_sort_key,
)


class TurtleSyntaxError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Iri
    object: Term

    def __post_init__(self) -> None:
        if not isinstance(self.predicate, Iri):
            raise ValueError(f"predicate must be an IRI, got {self.predicate!r}")


@dataclass
class TripleGraph:
    prefix_table: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_PREFIXES))
    triples: set[Triple] = field(default_factory=set)

    def add(self, subject: Term, predicate: Iri, obj: Term) -> None:
        self.triples.add(Triple(subject, predicate, obj))

    def __len__(self) -> int:
        return len(self.triples)


# --- tokenizer ---

_TOKEN_RES = [
    ("IRIREF", re.compile(r"<([^<>\s]*)>")),
    ("PREFIX_DIRECTIVE", re.compile(r"@prefix\b")),
    ("BLANK", re.compile(r"_:([A-Za-z0-9][A-Za-z0-9_\-]*)")),
    # Local part may be empty (`ssd:` alone is valid but unused here).
    ("PNAME", re.compile(r"([A-Za-z][A-Za-z0-9_\-]*)?:([A-Za-z_][A-Za-z0-9_\-]*)?")),
    ("DECIMAL", re.compile(r"[+-]?[0-9]+\.[0-9]+")),
    ("INTEGER", re.compile(r"[+-]?[0-9]+")),
    ("STRING", re.compile(r'"((?:[^"\\]|\\.)*)"')),
    ("A", re.compile(r"a(?![A-Za-z0-9_\-:])")),
    ("SEMI", re.compile(r";")),
    ("DOT", re.compile(r"\.")),
]


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    groups: tuple
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    line_start = 0
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            line += 1
            pos += 1
            line_start = pos
            continue
        if ch.isspace():
            pos += 1
            continue
        if ch == "#":
            end = text.find("\n", pos)
            pos = n if end == -1 else end
            continue
        for kind, rx in _TOKEN_RES:
            m = rx.match(text, pos)
            if m:
                tokens.append(
                    _Token(kind, m.group(0), m.groups(), line, pos - line_start + 1)
                )
                pos = m.end()
                break
        else:
            raise TurtleSyntaxError(
                f"unexpected character {ch!r}", line, pos - line_start + 1
            )
    tokens.append(_Token("EOF", "", (), line, n - line_start + 1))
    return tokens


_STRING_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}


def _unescape(raw: str, token: _Token) -> str:
    out = []
    i = 0
    while i < len(raw):
        if raw[i] == "\\":
            if i + 1 >= len(raw) or raw[i + 1] not in _STRING_ESCAPES:
                raise TurtleSyntaxError("bad string escape", token.line, token.column)
            out.append(_STRING_ESCAPES[raw[i + 1]])
            i += 2
        else:
            out.append(raw[i])
            i += 1
    return "".join(out)


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.graph = TripleGraph(prefix_table={})

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise TurtleSyntaxError(
                f"expected {kind}, found {tok.kind} {tok.text!r}", tok.line, tok.column
            )
        return tok

    def parse(self) -> TripleGraph:
        while self.peek().kind != "EOF":
            if self.peek().kind == "PREFIX_DIRECTIVE":
                self.parse_prefix()
            else:
                self.parse_statement()
        return self.graph

    def parse_prefix(self) -> None:
        self.expect("PREFIX_DIRECTIVE")
        tok = self.expect("PNAME")
        label, local = tok.groups
        if local:
            raise TurtleSyntaxError(
                "prefix declaration label must end with ':'", tok.line, tok.column
            )
        iri = self.expect("IRIREF")
        self.expect("DOT")
        self.graph.prefix_table[label or ""] = iri.groups[0]

    def resolve_pname(self, tok: _Token) -> Iri:
        label, local = tok.groups
        label = label or ""
        ns = self.graph.prefix_table.get(label)
        if ns is None:
            raise TurtleSyntaxError(f"unresolvable prefix {label!r}", tok.line, tok.column)
        return Iri(ns + (local or ""))

    def parse_term(self, *, as_predicate: bool = False) -> Term:
        tok = self.next()
        if tok.kind == "A" and as_predicate:
            return RDF_TYPE
        if tok.kind == "IRIREF":
            return Iri(tok.groups[0])
        if tok.kind == "PNAME":
            return self.resolve_pname(tok)
        if as_predicate:
            raise TurtleSyntaxError(
                f"predicate must be an IRI, found {tok.text!r}", tok.line, tok.column
            )
        if tok.kind == "BLANK":
            return BlankNode(tok.groups[0])
        if tok.kind == "INTEGER":
            return Literal(tok.text, "integer")
        if tok.kind == "DECIMAL":
            return Literal(tok.text, "decimal")
        if tok.kind == "STRING":
            return Literal(_unescape(tok.groups[0], tok), "string")
        raise TurtleSyntaxError(f"unexpected token {tok.text!r}", tok.line, tok.column)

    def parse_statement(self) -> None:
        subject = self.parse_term()
        if isinstance(subject, Literal):
            tok = self.tokens[self.pos - 1]
            raise TurtleSyntaxError("subject cannot be a literal", tok.line, tok.column)
        while True:
            predicate = self.parse_term(as_predicate=True)
            obj = self.parse_term()
            self.graph.add(subject, predicate, obj)  # type: ignore[arg-type]
            tok = self.next()
            if tok.kind == "DOT":
                return
            if tok.kind == "SEMI":
                # Permit a trailing `;` before the `.`
                if self.peek().kind == "DOT":
                    self.next()
                    return
                continue
            if tok.kind == "EOF":
                raise TurtleSyntaxError("unterminated statement", tok.line, tok.column)
            raise TurtleSyntaxError(
                f"expected ';' or '.', found {tok.text!r}", tok.line, tok.column
            )


def parse_turtle(text: str) -> TripleGraph:
    """Parse a document in the supported Turtle subset."""
    return _Parser(_tokenize(text)).parse()


# --- serializer ---


def _prefix_map(prefix_table: dict[str, str]) -> dict[str, str]:
    """namespace -> label; the lexicographically smallest label wins."""
    out: dict[str, str] = {}
    for label in sorted(prefix_table):
        ns = prefix_table[label]
        if ns not in out:
            out[ns] = label
    return out


_LOCAL_RX = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*$")


def _render(term: Term, ns_to_label: dict[str, str], bnode_map: dict[str, str]) -> str:
    if isinstance(term, Iri):
        for ns, label in ns_to_label.items():
            if term.value.startswith(ns):
                local = term.value[len(ns):]
                if _LOCAL_RX.fullmatch(local):
                    return f"{label}:{local}"
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{bnode_map[term.label]}"
    return str(term)


def serialize_turtle(graph: TripleGraph) -> str:
    """Canonical text form: prefixes sorted by label, subjects sorted,
    predicates grouped with ';', blank nodes renumbered _:b1.. in first-use
    order. Re-parses to an isomorphic graph."""
    ns_to_label = _prefix_map(graph.prefix_table)

    ordered = sorted(
        graph.triples,
        key=lambda t: (
            term_sort_key(t.subject),
            t.predicate != RDF_TYPE,  # rdf:type first within a subject block
            term_sort_key(t.predicate),
            term_sort_key(t.object),
        ),
    )
    bnode_map: dict[str, str] = {}
    for t in ordered:
        for term in (t.subject, t.object):
            if isinstance(term, BlankNode) and term.label not in bnode_map:
                bnode_map[term.label] = f"b{len(bnode_map) + 1}"

    lines = [
        f"@prefix {label}: <{graph.prefix_table[label]}> ."
        for label in sorted(graph.prefix_table)
    ]

    blocks: list[str] = []
    i = 0
    while i < len(ordered):
        subject = ordered[i].subject
        group = []
        while i < len(ordered) and ordered[i].subject == subject:
            group.append(ordered[i])
            i += 1
        subj_text = _render(subject, ns_to_label, bnode_map)
        parts = []
        for t in group:
            pred_text = (
                "a" if t.predicate == RDF_TYPE else _render(t.predicate, ns_to_label, bnode_map)
            )
            obj_text = _render(t.object, ns_to_label, bnode_map)
            parts.append(f"{pred_text} {obj_text}")
        body = f"{subj_text} " + " ;\n    ".join(parts) + " ."
        blocks.append(body)

    text = "\n".join(lines)
    if blocks:
        text += "\n\n" + "\n\n".join(blocks)
    return text + "\n"
