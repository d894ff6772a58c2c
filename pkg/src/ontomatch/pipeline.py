"""The text-preprocessing pipeline f(·) producing canonical keys.

A pipeline is an ordered list of steps — Tokenise, Normalise,
RemoveStopWords, Stem or Lemmatise — applied to an entity's display text.
The resulting tokens joined by single spaces form the canonical key used
for matching. Reserved words (see logic_repair) bypass the destructive
steps verbatim.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from ontomatch import kernels
from ontomatch.lemmatizer import MorphyLexicon, Pos, default_lexicon


class StemAlgorithm(Enum):
    PORTER = "porter"
    SNOWBALL = "snowball"
    LANCASTER = "lancaster"


_STEMMERS = {
    StemAlgorithm.PORTER: kernels.porter_stem,
    StemAlgorithm.SNOWBALL: kernels.snowball_stem,
    StemAlgorithm.LANCASTER: kernels.lancaster_stem,
}


@dataclass(frozen=True)
class Tokenise:
    pass


@dataclass(frozen=True)
class Normalise:
    pass


@dataclass(frozen=True)
class RemoveStopWords:
    pass


@dataclass(frozen=True)
class Stem:
    algorithm: StemAlgorithm = StemAlgorithm.PORTER


@dataclass(frozen=True)
class Lemmatise:
    use_pos: bool = False


Step = Tokenise | Normalise | RemoveStopWords | Stem | Lemmatise

# Keep-set recommended when stop-word removal erases meaningful logical or
# single-letter name tokens; opt-in, never applied by default.
RECOMMENDED_STOP_KEEP = frozenset({"and", "or", "not", "d", "i", "m", "o", "s", "t", "y"})

STOP_LIST_SHA256 = "019f104ba2ed07436d05f9cdd3383034ad66014edc27fc651f837e1a038b6451"


def default_stop_list() -> frozenset[str]:
    data = (resources.files("ontomatch") / "data" / "stopwords_en.txt").read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != STOP_LIST_SHA256:
        raise RuntimeError(f"bundled stop list checksum mismatch: {digest}")
    return frozenset(data.decode("utf-8").split())


@dataclass(frozen=True)
class PipelineConfig:
    """An ordered step list plus the stop-word configuration."""

    steps: tuple[Step, ...] = ()
    stop_list: frozenset[str] = field(default_factory=default_stop_list)
    stop_list_keep: frozenset[str] = frozenset()
    lexicon: MorphyLexicon | None = None

    def __post_init__(self):
        kinds = [type(s) for s in self.steps]
        if Tokenise in kinds and kinds[0] is not Tokenise:
            raise ValueError("Tokenise, when present, must be the first step")
        if len(set(kinds)) != len(kinds):
            raise ValueError("pipeline steps must not repeat")
        if Stem in kinds and Lemmatise in kinds:
            raise ValueError("at most one of Stem/Lemmatise may be present")

    def spec(self) -> str:
        """Compact textual form, e.g. ``T,N,R,S:porter``."""
        parts = []
        for step in self.steps:
            if isinstance(step, Tokenise):
                parts.append("T")
            elif isinstance(step, Normalise):
                parts.append("N")
            elif isinstance(step, RemoveStopWords):
                parts.append("R")
            elif isinstance(step, Stem):
                parts.append(f"S:{step.algorithm.value}")
            else:
                parts.append("L:pos" if step.use_pos else "L")
        return ",".join(parts)


def parse_pipeline_spec(spec: str, **config_kwargs) -> PipelineConfig:
    """Build a config from a spec string like ``T,N,R,S:porter`` or ``T,N,L:pos``.

    An empty spec yields the empty pipeline (raw whitespace-collapsed text).
    """
    steps: list[Step] = []
    for part in filter(None, (p.strip() for p in spec.split(","))):
        head, _, arg = part.partition(":")
        head = head.upper()
        if head == "T":
            steps.append(Tokenise())
        elif head == "N":
            steps.append(Normalise())
        elif head == "R":
            steps.append(RemoveStopWords())
        elif head == "S":
            steps.append(Stem(StemAlgorithm(arg.lower() or "porter")))
        elif head == "L":
            if arg and arg.lower() != "pos":
                raise ValueError(f"unknown lemmatise option: {arg!r}")
            steps.append(Lemmatise(use_pos=arg.lower() == "pos"))
        else:
            raise ValueError(f"unknown pipeline step: {part!r}")
    return PipelineConfig(steps=tuple(steps), **config_kwargs)


def tokenize(text: str) -> list[str]:
    return kernels.tokenize_text(text)


def normalize(tokens: list[str]) -> list[str]:
    out = []
    for token in tokens:
        norm = kernels.normalize_token(token)
        if norm:
            out.append(norm)
    return out


def remove_stop_words(tokens: list[str], config: PipelineConfig) -> list[str]:
    removable = config.stop_list - config.stop_list_keep
    kept = [t for t in tokens if t not in removable]
    if not kept and tokens:
        # deleting everything would collapse distinct entities onto the
        # empty key, so an all-stop-word sequence passes through unchanged
        return list(tokens)
    return kept


def _is_alphabetic(token: str) -> bool:
    return token.isalpha()


def stem(tokens: list[str], algorithm: StemAlgorithm) -> list[str]:
    stemmer = _STEMMERS[algorithm]
    return [stemmer(t) if _is_alphabetic(t) else t for t in tokens]


_ADJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "ic", "al", "ish")
_ADV_SUFFIXES = ("ly",)
_VERB_SUFFIXES = ("ing", "ed", "ise", "ize", "ate", "ify")


def pos_tag(tokens: list[str]) -> list[tuple[str, Pos]]:
    """Suffix-heuristic tagger; anything unrecognised is a noun."""
    tagged = []
    for token in tokens:
        if token.endswith(_VERB_SUFFIXES):
            pos = Pos.VERB
        elif token.endswith(_ADV_SUFFIXES):
            pos = Pos.ADVERB
        elif token.endswith(_ADJ_SUFFIXES):
            pos = Pos.ADJECTIVE
        else:
            pos = Pos.NOUN
        tagged.append((token, pos))
    return tagged


def lemmatize(tokens: list[str], use_pos: bool = False, lexicon: MorphyLexicon | None = None) -> list[str]:
    lexicon = lexicon if lexicon is not None else default_lexicon()
    if use_pos:
        return [
            lexicon.lemmatize(token, pos) if _is_alphabetic(token) else token
            for token, pos in pos_tag(tokens)
        ]
    return [lexicon.lemmatize(t, Pos.NOUN) if _is_alphabetic(t) else t for t in tokens]


def _collapse_whitespace(text: str) -> str:
    return " ".join(text.split())


def apply_pipeline_tokens(
    text: str,
    config: PipelineConfig,
    reserved: frozenset[str] | set[str] | None = None,
) -> list[str]:
    """Run the configured steps and return the surviving token sequence."""
    has_tokenise = any(isinstance(s, Tokenise) for s in config.steps)
    if has_tokenise:
        tokens = tokenize(text)
    else:
        collapsed = _collapse_whitespace(text)
        tokens = [collapsed] if collapsed else []
    for step in config.steps:
        if isinstance(step, Tokenise):
            continue
        if isinstance(step, Normalise):
            tokens = normalize(tokens)
            continue
        # destructive steps: reserved tokens pass through verbatim
        if reserved:
            shielded = [(t, t.lower() in reserved) for t in tokens]
        else:
            shielded = [(t, False) for t in tokens]
        if isinstance(step, RemoveStopWords):
            removable = config.stop_list - config.stop_list_keep
            new_tokens = [t for t, keep in shielded if keep or t not in removable]
            # sequence-level guard: if nothing at all would survive, the
            # step is skipped so the entity keeps a non-degenerate key
            if not new_tokens and tokens:
                continue
            tokens = new_tokens
        elif isinstance(step, Stem):
            stemmer = _STEMMERS[step.algorithm]
            tokens = [
                t if keep or not _is_alphabetic(t) else stemmer(t)
                for t, keep in shielded
            ]
        elif isinstance(step, Lemmatise):
            lexicon = config.lexicon if config.lexicon is not None else default_lexicon()
            if step.use_pos:
                tagged = pos_tag([t for t, _ in shielded])
                tokens = [
                    t if keep or not _is_alphabetic(t) else lexicon.lemmatize(t, pos)
                    for (t, keep), (_, pos) in zip(shielded, tagged)
                ]
            else:
                tokens = [
                    t if keep or not _is_alphabetic(t) else lexicon.lemmatize(t, Pos.NOUN)
                    for t, keep in shielded
                ]
    return tokens


def apply_pipeline(
    text: str,
    config: PipelineConfig,
    reserved: frozenset[str] | set[str] | None = None,
) -> str:
    """Canonical key of ``text`` under ``config``: tokens joined by spaces."""
    return " ".join(apply_pipeline_tokens(text, config, reserved))


def phase1_tokens(text: str, config: PipelineConfig) -> list[str]:
    """Token sequence after only the Tokenise/Normalise prefix of ``config``."""
    prefix = tuple(s for s in config.steps if isinstance(s, (Tokenise, Normalise)))
    phase1 = PipelineConfig(
        steps=prefix,
        stop_list=config.stop_list,
        stop_list_keep=config.stop_list_keep,
        lexicon=config.lexicon,
    )
    return apply_pipeline_tokens(text, phase1)
