"""Alignment generation by canonical-key equality (hash join over keys)."""

from __future__ import annotations

from dataclasses import dataclass, field

from ontomatch.model import (
    Alignment,
    Category,
    Correspondence,
    EntityRef,
    LabelPolicy,
    OntologyDoc,
    Relation,
    category_of,
    display_text,
)
from ontomatch.pipeline import PipelineConfig, apply_pipeline


@dataclass
class CanonicalIndex:
    """Entities grouped by (canonical key, category)."""

    buckets: dict[tuple[str, Category], list[EntityRef]] = field(default_factory=dict)
    skipped_textless: int = 0

    def add(self, key: str, category: Category, entity: EntityRef):
        self.buckets.setdefault((key, category), []).append(entity)


def canonical_index(
    ontology: OntologyDoc,
    config: PipelineConfig,
    reserved: frozenset[str] | set[str] | None = None,
    policy: LabelPolicy = LabelPolicy.NAME_THEN_LABEL,
) -> CanonicalIndex:
    """Index each entity with displayable text under its canonical key."""
    index = CanonicalIndex()
    for entity in ontology.entities:
        text = display_text(entity, policy)
        if not text:
            index.skipped_textless += 1
            continue
        key = apply_pipeline(text, config, reserved)
        if not key:
            index.skipped_textless += 1
            continue
        index.add(key, category_of(entity.kind), entity)
    return index


def match_ontologies(
    source: OntologyDoc,
    target: OntologyDoc,
    config: PipelineConfig,
    reserved: frozenset[str] | set[str] | None = None,
    policy: LabelPolicy = LabelPolicy.NAME_THEN_LABEL,
) -> Alignment:
    """Emit every source×target entity pair whose keys and categories agree."""
    source_index = canonical_index(source, config, reserved, policy)
    target_index = canonical_index(target, config, reserved, policy)
    pairs = set()
    for bucket_key, source_entities in source_index.buckets.items():
        target_entities = target_index.buckets.get(bucket_key)
        if not target_entities:
            continue
        for e1 in source_entities:
            for e2 in target_entities:
                pairs.add((e1.iri, e2.iri))
    cells = tuple(
        Correspondence(e1, e2, Relation.EQUIVALENCE, 1.0) for e1, e2 in sorted(pairs)
    )
    provenance = f"pipeline={config.spec() or 'raw'} policy={policy.value}"
    if reserved:
        provenance += f" reserved={len(reserved)}"
    return Alignment(
        source_ontology=source.source_path,
        target_ontology=target.source_path,
        cells=cells,
        provenance=provenance,
    )
