"""Morphy lemmatisation against the bundled lexicon."""

import pytest

from ontomatch.errors import LexiconUnavailable
from ontomatch.lemmatizer import MorphyLexicon, Pos, default_lexicon


@pytest.fixture(scope="module")
def lexicon():
    return default_lexicon()


class TestMorphy:
    @pytest.mark.parametrize(
        "word,pos,expected",
        [
            ("members", Pos.NOUN, "member"),
            ("committees", Pos.NOUN, "committee"),
            ("children", Pos.NOUN, "child"),
            ("criteria", Pos.NOUN, "criterion"),
            ("reviewing", Pos.VERB, "review"),
            ("was", Pos.VERB, "be"),
            ("running", Pos.VERB, "run"),
            ("wrote", Pos.VERB, "write"),
            ("better", Pos.ADJECTIVE, "good"),
            ("heart", Pos.NOUN, "heart"),
        ],
    )
    def test_lemmatize(self, lexicon, word, pos, expected):
        assert lexicon.lemmatize(word, pos) == expected

    def test_out_of_vocabulary_unchanged(self, lexicon):
        assert lexicon.lemmatize("zzyzx", Pos.NOUN) == "zzyzx"

    def test_noun_rules_do_not_fire_for_verb_inflection(self, lexicon):
        # gerunds stay intact under the default noun tag
        assert lexicon.lemmatize("reviewing", Pos.NOUN) == "reviewing"

    def test_morphy_returns_all_base_forms(self, lexicon):
        assert "member" in lexicon.morphy("members", Pos.NOUN)
        assert lexicon.morphy("zzyzx", Pos.NOUN) == []

    def test_exceptions_take_priority(self, lexicon):
        forms = lexicon.morphy("feet", Pos.NOUN)
        assert forms[0] == "foot"


class TestLoading:
    def test_missing_directory(self, tmp_path):
        with pytest.raises(LexiconUnavailable):
            MorphyLexicon(tmp_path / "nope")

    def test_missing_file(self, tmp_path):
        (tmp_path / "index.noun").write_text("heart n\n")
        with pytest.raises(LexiconUnavailable):
            MorphyLexicon(tmp_path)

    def test_custom_directory(self, tmp_path):
        for pos in ("noun", "verb", "adj", "adv"):
            (tmp_path / f"index.{pos}").write_text("widget x\n")
            (tmp_path / f"{pos}.exc").write_text("")
        lexicon = MorphyLexicon(tmp_path)
        assert lexicon.lemmatize("widgets", Pos.NOUN) == "widget"
