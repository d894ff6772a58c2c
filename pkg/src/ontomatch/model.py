"""Domain model: ontology entities, correspondences, and alignments."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class EntityKind(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATATYPE_PROPERTY = "DatatypeProperty"


class Category(Enum):
    """Kind compatibility bucket: object and datatype properties pool together."""

    CLASS = "Class"
    PROPERTY = "Property"


def category_of(kind: EntityKind) -> Category:
    return Category.CLASS if kind is EntityKind.CLASS else Category.PROPERTY


class LabelPolicy(Enum):
    NAME_THEN_LABEL = "name-first"
    LABEL_THEN_NAME = "label-first"


class Relation(Enum):
    EQUIVALENCE = "="


@dataclass(frozen=True)
class EntityRef:
    iri: str
    kind: EntityKind
    local_name: str
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.iri:
            raise ValueError("entity IRI must be non-empty")


def local_name_of(iri: str) -> str:
    """IRI fragment after '#', else the last path segment."""
    if "#" in iri:
        return iri.rsplit("#", 1)[1]
    return iri.rstrip("/").rsplit("/", 1)[-1]


def _is_textual(text: str) -> bool:
    """A text is matchable when it has a run of two or more letters.

    Isolated letters inside code-style names ("C12345") don't count — such
    entities should fall back to their human-readable label.
    """
    run = 0
    for ch in text:
        if ch.isalpha():
            run += 1
            if run >= 2:
                return True
        else:
            run = 0
    return False


def display_text(entity: EntityRef, policy: LabelPolicy = LabelPolicy.NAME_THEN_LABEL) -> str:
    """Pick the matchable text for an entity.

    The preferred source (name or first label, per policy) is used when it
    is textual; otherwise the other source is returned, and the empty
    string signals a textless entity.
    """
    name = entity.local_name
    label = entity.labels[0] if entity.labels else ""
    if policy is LabelPolicy.NAME_THEN_LABEL:
        first, second = name, label
    else:
        first, second = label, name
    if _is_textual(first):
        return first
    return second


@dataclass(frozen=True)
class OntologyDoc:
    source_path: str
    entities: tuple[EntityRef, ...] = ()

    def __post_init__(self):
        seen = set()
        for entity in self.entities:
            if entity.iri in seen:
                raise ValueError(f"duplicate entity IRI: {entity.iri}")
            seen.add(entity.iri)

    def iri_map(self) -> dict[str, EntityRef]:
        return {e.iri: e for e in self.entities}


@dataclass(frozen=True)
class Correspondence:
    entity1: str
    entity2: str
    relation: Relation = Relation.EQUIVALENCE
    confidence: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")

    @property
    def pair(self) -> tuple[str, str]:
        return (self.entity1, self.entity2)


@dataclass(frozen=True)
class Alignment:
    source_ontology: str = ""
    target_ontology: str = ""
    cells: tuple[Correspondence, ...] = ()
    provenance: str = ""

    def __post_init__(self):
        seen = set()
        for cell in self.cells:
            if cell.pair in seen:
                raise ValueError(f"duplicate correspondence: {cell.pair}")
            seen.add(cell.pair)
        # canonical cell order makes equality and serialisation stable
        object.__setattr__(self, "cells", tuple(sorted(self.cells, key=lambda c: c.pair)))

    def pairs(self) -> set[tuple[str, str]]:
        return {cell.pair for cell in self.cells}

    def sorted_cells(self) -> tuple[Correspondence, ...]:
        return tuple(sorted(self.cells, key=lambda c: c.pair))

    def __len__(self) -> int:
        return len(self.cells)
