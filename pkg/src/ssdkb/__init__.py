"""Knowledge-base engine for single-subject design (SSD) research studies:
Turtle-subset annotation I/O, structural design classification, DL-style
and SPARQL-style querying, and a synthetic-data benchmark."""

from .classify import classify_design, classify_mbd, materialize_types, phase_signature
from .dlquery import eval_dl_query, parse_dl_query
from .generate import GenProfile, generate_studies
from .kb import KnowledgeBase, graph_to_kb, kb_stats, kb_to_graph, validate_kb
from .model import age_in_months, validate_study
from .sparql import eval_sparql, parse_sparql
from .taxonomy import Taxonomy, core_taxonomy
from .turtle import TripleGraph, parse_turtle, serialize_turtle

__all__ = [
    "GenProfile",
    "KnowledgeBase",
    "Taxonomy",
    "TripleGraph",
    "age_in_months",
    "classify_design",
    "classify_mbd",
    "core_taxonomy",
    "eval_dl_query",
    "eval_sparql",
    "generate_studies",
    "graph_to_kb",
    "kb_stats",
    "kb_to_graph",
    "materialize_types",
    "parse_dl_query",
    "parse_sparql",
    "parse_turtle",
    "phase_signature",
    "serialize_turtle",
    "validate_kb",
    "validate_study",
]
