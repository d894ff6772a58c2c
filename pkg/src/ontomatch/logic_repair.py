"""Reserved-word-set repair: prevent within-ontology key collisions.

Phase 1 finds entity pairs inside one ontology whose canonical keys
collide even though their tokenised texts differ, and reserves the
differing tokens. Phase 2 drops words the pipeline leaves unchanged
anyway, since exempting them cannot affect any key.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

from ontomatch.model import LabelPolicy, OntologyDoc, display_text
from ontomatch.pipeline import (
    Lemmatise,
    Normalise,
    PipelineConfig,
    RemoveStopWords,
    Stem,
    Tokenise,
    apply_pipeline_tokens,
    phase1_tokens,
)
from ontomatch.matcher import canonical_index


def _word_level_fixed_point(word: str, config: PipelineConfig) -> bool:
    """True when every word-level step of ``config`` maps ``word`` to itself.

    Deliberately evaluated without the stop-list empty-result guard: a stop
    word is mutable (it gets deleted), which is exactly why it must stay in
    the reserved set.
    """
    removable = config.stop_list - config.stop_list_keep
    tokens = [word]
    for step in config.steps:
        if isinstance(step, (Tokenise, Normalise)):
            continue
        if isinstance(step, RemoveStopWords):
            tokens = [t for t in tokens if t not in removable]
        elif isinstance(step, (Stem, Lemmatise)):
            single = PipelineConfig(
                steps=(step,),
                stop_list=config.stop_list,
                stop_list_keep=config.stop_list_keep,
                lexicon=config.lexicon,
            )
            tokens = [t2 for t in tokens for t2 in apply_pipeline_tokens(t, single)]
        if tokens != [word]:
            return False
    return tokens == [word]


def find_reserved_word_set(
    ontology: OntologyDoc,
    config: PipelineConfig,
    policy: LabelPolicy = LabelPolicy.NAME_THEN_LABEL,
) -> frozenset[str]:
    """Algorithm: collect colliding-pair token differences, prune fixed points."""
    index = canonical_index(ontology, config, reserved=None, policy=policy)
    candidates: set[str] = set()
    phase1_cache: dict[str, tuple[str, ...]] = {}

    def tokens_of(entity) -> tuple[str, ...]:
        if entity.iri not in phase1_cache:
            phase1_cache[entity.iri] = tuple(phase1_tokens(display_text(entity, policy), config))
        return phase1_cache[entity.iri]

    for bucket in index.buckets.values():
        if len(bucket) < 2:
            continue
        for i in range(len(bucket)):
            for j in range(i + 1, len(bucket)):
                seq_i = tokens_of(bucket[i])
                seq_j = tokens_of(bucket[j])
                if seq_i == seq_j:
                    continue
                count_i = Counter(seq_i)
                count_j = Counter(seq_j)
                difference = (count_i - count_j) + (count_j - count_i)
                if difference:
                    candidates.update(difference)
                else:
                    # pure reordering collision: exempt every token so word
                    # order survives preprocessing
                    candidates.update(count_i | count_j)

    return frozenset(
        w for w in candidates if w and not _word_level_fixed_point(w, config)
    )


def build_joint_reserved_set(
    source: OntologyDoc,
    target: OntologyDoc,
    config: PipelineConfig,
    policy: LabelPolicy = LabelPolicy.NAME_THEN_LABEL,
) -> frozenset[str]:
    """Union of the per-ontology reserved sets; no cross-ontology pairs."""
    return find_reserved_word_set(source, config, policy) | find_reserved_word_set(
        target, config, policy
    )


def save_reserved_set(reserved, path: str | Path):
    Path(path).write_text("".join(f"{w}\n" for w in sorted(reserved)), encoding="utf-8")


def load_reserved_set(path: str | Path) -> frozenset[str]:
    words = Path(path).read_text(encoding="utf-8").split()
    return frozenset(w.lower() for w in words)
