import pathlib

import pytest

from ontomatch.model import EntityKind, EntityRef, OntologyDoc

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
TRACK = FIXTURES / "track"
MICRO = FIXTURES / "micro"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def track_dir():
    return TRACK


@pytest.fixture(scope="session")
def micro_dir():
    return MICRO


def make_ontology(names, kind=EntityKind.CLASS, prefix="http://test#"):
    """Small helper: an ontology whose entities are named after ``names``."""
    entities = tuple(
        EntityRef(iri=f"{prefix}{name}", kind=kind, local_name=name) for name in names
    )
    return OntologyDoc(source_path=prefix, entities=entities)


def load_stemmer_fixture(name):
    pairs = []
    path = FIXTURES / f"stemmer_{name}.txt"
    for line in path.read_text(encoding="utf-8").splitlines():
        word, _, stemmed = line.partition("\t")
        pairs.append((word, stemmed))
    return pairs
