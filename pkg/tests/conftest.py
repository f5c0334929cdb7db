import pathlib

import pytest

from ssdkb.classify import materialize_types
from ssdkb.kb import graph_to_kb
from ssdkb.turtle import parse_turtle

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
QUERIES = pathlib.Path(__file__).resolve().parent.parent / "queries"


def load_graph(name: str):
    return parse_turtle((FIXTURES / name).read_text())


def load_kb(name: str, taxonomy=None):
    return graph_to_kb(load_graph(name), taxonomy)


@pytest.fixture(scope="session")
def fig3_kb():
    return load_kb("fig3.ttl")


@pytest.fixture(scope="session")
def fig3_mat():
    return materialize_types(load_kb("fig3.ttl"))


@pytest.fixture(scope="session")
def mbd_mat():
    return materialize_types(load_kb("mbd_setting.ttl"))


@pytest.fixture(scope="session")
def ab_mat():
    return materialize_types(load_kb("ab_study.ttl"))
