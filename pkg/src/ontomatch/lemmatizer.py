"""WordNet-style morphological lemmatisation (the morphy procedure).

Works from plain-text lexicon files: ``index.<pos>`` listing known lemmas
(first whitespace-separated field per line; lines starting with whitespace
are header/license lines and are skipped) and ``<pos>.exc`` exception lists
mapping an inflected form to one or more base forms.
"""

from __future__ import annotations

from enum import Enum
from importlib import resources
from pathlib import Path

from ontomatch.errors import LexiconUnavailable


class Pos(Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adj"
    ADVERB = "adv"


# Detachment rules per part of speech: (suffix, replacement), tried on every
# form in the current frontier, keeping results present in the index.
_SUBSTITUTIONS = {
    Pos.NOUN: [
        ("s", ""),
        ("ses", "s"),
        ("ves", "f"),
        ("xes", "x"),
        ("zes", "z"),
        ("ches", "ch"),
        ("shes", "sh"),
        ("men", "man"),
        ("ies", "y"),
    ],
    Pos.VERB: [
        ("s", ""),
        ("ies", "y"),
        ("es", "e"),
        ("es", ""),
        ("ed", "e"),
        ("ed", ""),
        ("ing", "e"),
        ("ing", ""),
    ],
    Pos.ADJECTIVE: [
        ("er", ""),
        ("est", ""),
        ("er", "e"),
        ("est", "e"),
    ],
    Pos.ADVERB: [],
}


def _read_index(path: Path) -> frozenset[str]:
    lemmas = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line or line[0].isspace():
            continue
        lemmas.add(line.split()[0])
    return frozenset(lemmas)


def _read_exceptions(path: Path) -> dict[str, tuple[str, ...]]:
    table: dict[str, tuple[str, ...]] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        parts = line.split()
        if len(parts) < 2 or line[0].isspace():
            continue
        table[parts[0]] = table.get(parts[0], ()) + tuple(parts[1:])
    return table


class MorphyLexicon:
    """Read-only lemma index + exception lists for the four open classes."""

    def __init__(self, directory: str | Path):
        directory = Path(directory)
        if not directory.is_dir():
            raise LexiconUnavailable(f"lexicon directory not found: {directory}")
        self._index: dict[Pos, frozenset[str]] = {}
        self._exceptions: dict[Pos, dict[str, tuple[str, ...]]] = {}
        for pos in Pos:
            index_path = directory / f"index.{pos.value}"
            exc_path = directory / f"{pos.value}.exc"
            if not index_path.is_file() or not exc_path.is_file():
                raise LexiconUnavailable(f"missing lexicon file for {pos.value!r} in {directory}")
            self._index[pos] = _read_index(index_path)
            self._exceptions[pos] = _read_exceptions(exc_path)

    def morphy(self, word: str, pos: Pos) -> list[str]:
        """All base forms of ``word`` for ``pos``: exceptions first, then rules."""
        index = self._index[pos]
        forms = [f for f in self._exceptions[pos].get(word, ()) if f in index]
        if word in index and word not in forms:
            forms.append(word)
        substitutions = _SUBSTITUTIONS[pos]
        frontier = [word]
        seen = {word}
        while frontier:
            next_frontier = []
            for form in frontier:
                for suffix, replacement in substitutions:
                    if form.endswith(suffix):
                        candidate = form[: len(form) - len(suffix)] + replacement
                        if candidate and candidate not in seen:
                            seen.add(candidate)
                            next_frontier.append(candidate)
                            if candidate in index and candidate not in forms:
                                forms.append(candidate)
            frontier = next_frontier
        return forms

    def lemmatize(self, word: str, pos: Pos = Pos.NOUN) -> str:
        """Shortest base form of ``word``, or ``word`` itself when unknown."""
        forms = self.morphy(word, pos)
        if not forms:
            return word
        return min(forms, key=len)


_DEFAULT: MorphyLexicon | None = None


def default_lexicon() -> MorphyLexicon:
    """The lexicon bundled with the package, loaded once."""
    global _DEFAULT
    if _DEFAULT is None:
        root = resources.files("ontomatch") / "data" / "wordnet_mini"
        _DEFAULT = MorphyLexicon(Path(str(root)))
    return _DEFAULT
