"""DL-style class expression parser and evaluator.

Grammar (left-associative `and`):
    Expr  := Atom ('and' Atom)*
    Atom  := ClassName
           | prop 'some' '(' Expr ')'
           | prop 'some' '{' Ind (',' Ind)* '}'
           | prop 'some' 'xsd:int' '[' op INT ']'
           | prop 'value' Ind
           | '{' Ind (',' Ind)* '}'
           | '(' Expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from . import vocab
from .kb import KnowledgeBase
from .terms import AUT_NS, DEFAULT_PREFIXES, SSD_NS, Iri, Literal, RDF_TYPE, Term


class DlSyntaxError(Exception):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DlEvalError(Exception):
    """Unknown class or property name; distinct from an empty result."""


# --- AST ---


@dataclass(frozen=True)
class NamedClass:
    name: str  # surface name, possibly prefixed


@dataclass(frozen=True)
class And:
    left: "ClassExpr"
    right: "ClassExpr"


@dataclass(frozen=True)
class Some:
    prop: str
    filler: "ClassExpr"


@dataclass(frozen=True)
class Value:
    prop: str
    individual: str


@dataclass(frozen=True)
class OneOf:
    individuals: tuple[str, ...]


@dataclass(frozen=True)
class DataSome:
    prop: str
    op: str  # < <= > >= =
    bound: int


ClassExpr = Union[NamedClass, And, Some, Value, OneOf, DataSome]


# --- parser ---

_TOKEN_RX = re.compile(
    r"""\s*(?:
        (?P<lpar>\()|(?P<rpar>\))|
        (?P<lbrace>\{)|(?P<rbrace>\})|
        (?P<lbrack>\[)|(?P<rbrack>\])|
        (?P<comma>,)|
        (?P<op><=|>=|≤|≥|<|>|=)|
        (?P<int>[0-9]+)|
        (?P<name>[A-Za-z_][A-Za-z0-9_\-]*(?::[A-Za-z_][A-Za-z0-9_\-]*)?)
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RX.match(text, pos)
        if m is None or m.end() == m.start():
            if text[pos:].strip() == "":
                break
            raise DlSyntaxError(f"unknown token near {text[pos:pos + 10]!r}", pos)
        kind = m.lastgroup
        assert kind is not None
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _DlParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise DlSyntaxError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> ClassExpr:
        expr = self.parse_expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise DlSyntaxError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return expr

    def parse_expr(self) -> ClassExpr:
        expr = self.parse_atom()
        while self.peek()[0] == "name" and self.peek()[1] == "and":
            self.next()
            expr = And(expr, self.parse_atom())
        return expr

    def parse_one_of(self) -> OneOf:
        self.expect("lbrace")
        individuals = [self.expect("name")[1]]
        while self.peek()[0] == "comma":
            self.next()
            individuals.append(self.expect("name")[1])
        self.expect("rbrace")
        return OneOf(tuple(individuals))

    def parse_atom(self) -> ClassExpr:
        tok = self.peek()
        if tok[0] == "lpar":
            self.next()
            expr = self.parse_expr()
            self.expect("rpar")
            return expr
        if tok[0] == "lbrace":
            return self.parse_one_of()
        if tok[0] != "name":
            raise DlSyntaxError(f"expected a name, found {tok[1]!r}", tok[2])
        name = self.next()[1]
        if name == "and":
            raise DlSyntaxError("dangling 'and' connective", tok[2])
        following = self.peek()
        if following[0] == "name" and following[1] == "some":
            self.next()
            return Some(name, self.parse_filler())
        if following[0] == "name" and following[1] == "value":
            self.next()
            return Value(name, self.expect("name")[1])
        return NamedClass(name)

    def parse_filler(self) -> ClassExpr:
        tok = self.peek()
        if tok[0] == "lpar":
            self.next()
            expr = self.parse_expr()
            self.expect("rpar")
            return expr
        if tok[0] == "lbrace":
            return self.parse_one_of()
        if tok[0] == "name" and tok[1] in ("xsd:int", "xsd:integer"):
            self.next()
            self.expect("lbrack")
            op = self.expect("op")[1]
            bound = int(self.expect("int")[1])
            self.expect("rbrack")
            op = {"≤": "<=", "≥": ">="}.get(op, op)
            return ("facet", op, bound)  # type: ignore[return-value]
        if tok[0] == "name":
            return NamedClass(self.next()[1])
        raise DlSyntaxError(f"expected a filler, found {tok[1]!r}", tok[2])


def parse_dl_query(text: str) -> ClassExpr:
    expr = _DlParser(text).parse()
    return _lift_facets(expr)


def _lift_facets(expr) -> ClassExpr:
    """Rewrite Some(prop, facet) into DataSome(prop, op, bound)."""
    if isinstance(expr, And):
        return And(_lift_facets(expr.left), _lift_facets(expr.right))
    if isinstance(expr, Some):
        if isinstance(expr.filler, tuple) and expr.filler[0] == "facet":
            _, op, bound = expr.filler
            return DataSome(expr.prop, op, bound)
        return Some(expr.prop, _lift_facets(expr.filler))
    return expr


# --- evaluation ---

_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "=": lambda a, b: a == b,
}


class DlEvaluator:
    """Evaluates class expressions over the materialized triple set."""

    def __init__(self, kb: KnowledgeBase):
        self.kb = kb
        index = kb.index()
        self.by_predicate = index.by_p
        self.type_index = index.type_index
        self.individuals = index.individual_iris

    def resolve_class(self, name: str) -> Iri:
        iri = self._resolve_name(name)
        if iri is None or not self.kb.taxonomy.contains(iri):
            raise DlEvalError(f"unknown class name: {name}")
        return iri

    def resolve_property(self, name: str) -> Iri:
        iri = self._resolve_name(name)
        if iri is None:
            raise DlEvalError(f"unknown property name: {name}")
        if iri not in vocab.PROPERTIES and iri not in self.by_predicate:
            raise DlEvalError(f"unknown property name: {name}")
        return iri

    def resolve_individual(self, name: str) -> Term:
        iri = self._resolve_name(name)
        if iri is None:
            raise DlEvalError(f"unknown individual name: {name}")
        return iri

    def _resolve_name(self, name: str) -> Iri | None:
        if ":" in name:
            prefix, local = name.split(":", 1)
            ns = DEFAULT_PREFIXES.get(prefix)
            return Iri(ns + local) if ns else None
        for ns in (SSD_NS, AUT_NS):
            candidate = ns + name
            if candidate in self.individuals or self.kb.taxonomy.contains(Iri(candidate)):
                return Iri(candidate)
        # default to the core namespace for names the kb has not seen
        return Iri(SSD_NS + name)

    def eval(self, expr: ClassExpr) -> set[Term]:
        if isinstance(expr, NamedClass):
            cls = self.resolve_class(expr.name)
            return set(self.type_index.get(cls, set()))
        if isinstance(expr, And):
            return self.eval(expr.left) & self.eval(expr.right)
        if isinstance(expr, Some):
            prop = self.resolve_property(expr.prop)
            members = self.eval(expr.filler)
            return {t.subject for t in self.by_predicate.get(prop, []) if t.object in members}
        if isinstance(expr, Value):
            prop = self.resolve_property(expr.prop)
            individual = self.resolve_individual(expr.individual)
            return {t.subject for t in self.by_predicate.get(prop, []) if t.object == individual}
        if isinstance(expr, OneOf):
            return {self.resolve_individual(name) for name in expr.individuals}
        if isinstance(expr, DataSome):
            prop = self.resolve_property(expr.prop)
            compare = _OPS[expr.op]
            out = set()
            for t in self.by_predicate.get(prop, []):
                if isinstance(t.object, Literal) and t.object.datatype in ("integer", "decimal"):
                    if compare(t.object.numeric(), expr.bound):
                        out.add(t.subject)
            return out
        raise TypeError(f"not a class expression: {expr!r}")


def eval_dl_query(expr: ClassExpr, kb: KnowledgeBase) -> set[Term]:
    return DlEvaluator(kb).eval(expr)
