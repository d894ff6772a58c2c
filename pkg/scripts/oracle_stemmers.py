"""Load the reference stemmer implementations from examples/ for fixture generation.

The snowball reference file expects a few nltk modules; tiny shims are
installed so it can be imported standalone. This script is a development
tool only and is not part of the installed package.
"""

import importlib.util
import sys
import types
from pathlib import Path

EXAMPLES = Path(__file__).resolve().parents[1] / "examples" / "porter_snowball_lancaster_stemmer_implementation"


def _load_module(name, path):
    spec = importlib.util.spec_from_file_location(name, path)
    mod = importlib.util.module_from_spec(spec)
    sys.modules[name] = mod
    spec.loader.exec_module(mod)
    return mod


def _install_nltk_shims():
    nltk = types.ModuleType("nltk")
    corpus = types.ModuleType("nltk.corpus")

    class _Stopwords:
        def words(self, lang):
            return []

    corpus.stopwords = _Stopwords()
    stem = types.ModuleType("nltk.stem")
    api = types.ModuleType("nltk.stem.api")

    class StemmerI:
        pass

    api.StemmerI = StemmerI
    util = types.ModuleType("nltk.stem.util")

    def suffix_replace(original, old, new):
        return original[: -len(old)] + new

    def prefix_replace(original, old, new):
        return new + original[len(old):]

    util.suffix_replace = suffix_replace
    util.prefix_replace = prefix_replace

    porter = types.ModuleType("nltk.stem.porter")

    class PorterStemmer:
        pass

    porter.PorterStemmer = PorterStemmer

    stem.porter = porter
    stem.api = api
    stem.util = util
    nltk.corpus = corpus
    nltk.stem = stem
    for name, mod in (
        ("nltk", nltk),
        ("nltk.corpus", corpus),
        ("nltk.stem", stem),
        ("nltk.stem.api", api),
        ("nltk.stem.util", util),
        ("nltk.stem.porter", porter),
    ):
        sys.modules.setdefault(name, mod)


def load_reference_porter():
    mod = _load_module("_ref_porter", EXAMPLES / "r023__piskvorky__gensim__porter.py")
    return mod.PorterStemmer().stem


def load_reference_snowball():
    _install_nltk_shims()
    mod = _load_module("_ref_snowball", EXAMPLES / "r000__microsoft__ML-For-Beginners__snowball.py")
    return mod.SnowballStemmer("english").stem
