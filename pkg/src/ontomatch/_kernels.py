"""Hot text-processing kernels: tokenisation, normalisation, stemming.

Pure-Python reference implementation. The build compiles a copy of this
module to ``ontomatch._kernels_c`` with Cython; ``ontomatch.kernels``
selects whichever is importable. Keep this module dependency-free and
behaviour-identical to the compiled variant (it is the same source).
"""

import re
import unicodedata

# ---------------------------------------------------------------------------
# Tokenisation


def _is_separator(ch):
    return unicodedata.category(ch).startswith("P")


def _append_subwords(word, out):
    """Split one separator-free chunk at camel-case and letter/digit edges."""
    n = len(word)
    start = 0
    for i in range(1, n):
        prev = word[i - 1]
        ch = word[i]
        boundary = False
        if prev.islower() and ch.isupper():
            boundary = True
        elif prev.isalpha() and ch.isdigit():
            boundary = True
        elif prev.isdigit() and ch.isalpha():
            boundary = True
        elif prev.isupper() and ch.isupper() and i + 1 < n and word[i + 1].islower():
            # all-caps run followed by a capitalised word: "NCIThesaurus"
            boundary = True
        if boundary:
            out.append(word[start:i])
            start = i
    if start < n:
        out.append(word[start:n])


def tokenize_text(text):
    """Split text on whitespace/punctuation, then at intra-word case edges."""
    chunks = []
    cur = []
    for ch in text:
        if ch.isspace() or _is_separator(ch):
            if cur:
                chunks.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        chunks.append("".join(cur))
    tokens = []
    for chunk in chunks:
        _append_subwords(chunk, tokens)
    return tokens


# ---------------------------------------------------------------------------
# Normalisation

_TAG_RE = re.compile(r"<[^>]*>")


def normalize_token(token):
    """Strip HTML tags, lowercase, drop separators and punctuation.

    Digits and symbol characters survive; the result may be empty.
    """
    stripped = _TAG_RE.sub("", token).lower()
    out = []
    for ch in stripped:
        if ch.isspace():
            continue
        cat = unicodedata.category(ch)
        if cat[0] == "P" or cat[0] == "Z":
            continue
        out.append(ch)
    return "".join(out)


# ---------------------------------------------------------------------------
# Porter stemmer (classical algorithm, with the customary guard that words
# of length <= 2 are returned unchanged)


def _p_is_cons(word, i):
    ch = word[i]
    if ch in "aeiou":
        return False
    if ch == "y":
        return i == 0 or not _p_is_cons(word, i - 1)
    return True


def _p_measure(stem):
    """Count vowel->consonant transitions (the m of the algorithm)."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _p_is_cons(stem, i)
        if prev_vowel and cons:
            m += 1
        prev_vowel = not cons
    return m


def _p_has_vowel(stem):
    for i in range(len(stem)):
        if not _p_is_cons(stem, i):
            return True
    return False


def _p_double_cons(word):
    return len(word) >= 2 and word[-1] == word[-2] and _p_is_cons(word, len(word) - 1)


def _p_cvc_at(word, i):
    if i < 2 or not _p_is_cons(word, i) or _p_is_cons(word, i - 1) or not _p_is_cons(word, i - 2):
        return False
    return word[i] not in "wxy"


def _p_step1ab(word):
    if word.endswith("s"):
        if word.endswith("sses"):
            word = word[:-2]
        elif word.endswith("ies"):
            word = word[:-3] + "i"
        elif not word.endswith("ss"):
            word = word[:-1]
    if word.endswith("eed"):
        if _p_measure(word[:-3]) > 0:
            word = word[:-1]
        return word
    if word.endswith("ed") and _p_has_vowel(word[:-2]):
        word = word[:-2]
    elif word.endswith("ing") and _p_has_vowel(word[:-3]):
        word = word[:-3]
    else:
        return word
    if word.endswith("at") or word.endswith("bl") or word.endswith("iz"):
        word += "e"
    elif _p_double_cons(word) and word[-1] not in "lsz":
        word = word[:-1]
    elif _p_measure(word) == 1 and _p_cvc_at(word, len(word) - 1):
        word += "e"
    return word


def _p_step1c(word):
    if word.endswith("y") and _p_has_vowel(word[:-1]):
        word = word[:-1] + "i"
    return word


_P_STEP2 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("bli", "ble"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
    ("logi", "log"),
)

_P_STEP3 = (
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
)

_P_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _p_rewrite(word, rules, min_measure):
    for suffix, replacement in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if _p_measure(stem) > min_measure:
                return stem + replacement
            return word
    return word


def _p_step4(word):
    for suffix in _P_STEP4:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if suffix == "ion" and not (stem and stem[-1] in "st"):
                continue
            if _p_measure(stem) > 1:
                return stem
            return word
    return word


def _p_step5(word):
    if word.endswith("e"):
        m = _p_measure(word)
        if m > 1 or (m == 1 and not _p_cvc_at(word, len(word) - 2)):
            word = word[:-1]
    if word.endswith("ll") and _p_measure(word) > 1:
        word = word[:-1]
    return word


def porter_stem(word):
    word = word.lower()
    if len(word) <= 2:
        return word
    word = _p_step1ab(word)
    word = _p_step1c(word)
    word = _p_rewrite(word, _P_STEP2, 0)
    word = _p_rewrite(word, _P_STEP3, 0)
    word = _p_step4(word)
    word = _p_step5(word)
    return word


# ---------------------------------------------------------------------------
# Snowball stemmer, English (Porter2)

_SB_VOWELS = "aeiouy"
_SB_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_SB_LI_ENDING = "cdeghkmnrt"
_SB_STEP0 = ("'s'", "'s", "'")
_SB_STEP1A = ("sses", "ied", "ies", "us", "ss", "s")
_SB_STEP1B = ("eedly", "ingly", "edly", "eed", "ing", "ed")
_SB_STEP2 = (
    "ization", "ational", "fulness", "ousness", "iveness", "tional",
    "biliti", "lessli", "entli", "ation", "alism", "aliti", "ousli",
    "iviti", "fulli", "enci", "anci", "abli", "izer", "ator", "alli",
    "bli", "ogi", "li",
)
_SB_STEP3 = ("ational", "tional", "alize", "icate", "iciti", "ative", "ical", "ness", "ful")
_SB_STEP4 = (
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
    "ate", "iti", "ous", "ive", "ize", "ion", "al", "er", "ic",
)
_SB_SPECIAL = {
    "skis": "ski",
    "skies": "sky",
    "dying": "die",
    "lying": "lie",
    "tying": "tie",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
    "inning": "inning",
    "innings": "inning",
    "outing": "outing",
    "outings": "outing",
    "canning": "canning",
    "cannings": "canning",
    "herring": "herring",
    "herrings": "herring",
    "earring": "earring",
    "earrings": "earring",
    "proceed": "proceed",
    "proceeds": "proceed",
    "proceeded": "proceed",
    "proceeding": "proceed",
    "exceed": "exceed",
    "exceeds": "exceed",
    "exceeded": "exceed",
    "exceeding": "exceed",
    "succeed": "succeed",
    "succeeds": "succeed",
    "succeeded": "succeed",
    "succeeding": "succeed",
}


def _sb_replace(s, suffix, replacement):
    return s[: len(s) - len(suffix)] + replacement


def _sb_r1r2(word):
    r1 = ""
    r2 = ""
    if word.startswith(("gener", "commun", "arsen")):
        if word.startswith(("gener", "arsen")):
            r1 = word[5:]
        else:
            r1 = word[6:]
    else:
        for i in range(1, len(word)):
            if word[i] not in _SB_VOWELS and word[i - 1] in _SB_VOWELS:
                r1 = word[i + 1:]
                break
    for i in range(1, len(r1)):
        if r1[i] not in _SB_VOWELS and r1[i - 1] in _SB_VOWELS:
            r2 = r1[i + 1:]
            break
    return r1, r2


def snowball_stem(word):
    word = word.lower()
    if len(word) <= 2:
        return word
    if word in _SB_SPECIAL:
        return _SB_SPECIAL[word]

    word = word.replace("’", "\x27").replace("‘", "\x27").replace("‛", "\x27")
    if word.startswith("\x27"):
        word = word[1:]
    if word.startswith("y"):
        word = "Y" + word[1:]
    for i in range(1, len(word)):
        if word[i - 1] in _SB_VOWELS and word[i] == "y":
            word = word[:i] + "Y" + word[i + 1:]

    r1, r2 = _sb_r1r2(word)

    # step 0
    for suffix in _SB_STEP0:
        if word.endswith(suffix):
            word = word[: -len(suffix)]
            r1 = r1[: -len(suffix)]
            r2 = r2[: -len(suffix)]
            break

    # step 1a
    for suffix in _SB_STEP1A:
        if word.endswith(suffix):
            if suffix == "sses":
                word = word[:-2]
                r1 = r1[:-2]
                r2 = r2[:-2]
            elif suffix in ("ied", "ies"):
                if len(word[: -len(suffix)]) > 1:
                    word = word[:-2]
                    r1 = r1[:-2]
                    r2 = r2[:-2]
                else:
                    word = word[:-1]
                    r1 = r1[:-1]
                    r2 = r2[:-1]
            elif suffix == "s":
                if any(letter in _SB_VOWELS for letter in word[:-2]):
                    word = word[:-1]
                    r1 = r1[:-1]
                    r2 = r2[:-1]
            break

    # step 1b
    for suffix in _SB_STEP1B:
        if word.endswith(suffix):
            if suffix in ("eed", "eedly"):
                if r1.endswith(suffix):
                    word = _sb_replace(word, suffix, "ee")
                    r1 = _sb_replace(r1, suffix, "ee") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ee") if len(r2) >= len(suffix) else ""
            else:
                if any(letter in _SB_VOWELS for letter in word[: -len(suffix)]):
                    word = word[: -len(suffix)]
                    r1 = r1[: -len(suffix)]
                    r2 = r2[: -len(suffix)]
                    if word.endswith(("at", "bl", "iz")):
                        word += "e"
                        r1 += "e"
                        if len(word) > 5 or len(r1) >= 3:
                            r2 += "e"
                    elif word.endswith(_SB_DOUBLES):
                        word = word[:-1]
                        r1 = r1[:-1]
                        r2 = r2[:-1]
                    elif (
                        r1 == ""
                        and len(word) >= 3
                        and word[-1] not in _SB_VOWELS
                        and word[-1] not in "wxY"
                        and word[-2] in _SB_VOWELS
                        and word[-3] not in _SB_VOWELS
                    ) or (
                        r1 == ""
                        and len(word) == 2
                        and word[0] in _SB_VOWELS
                        and word[1] not in _SB_VOWELS
                    ):
                        word += "e"
                        if len(r1) > 0:
                            r1 += "e"
                        if len(r2) > 0:
                            r2 += "e"
            break

    # step 1c
    if len(word) > 2 and word[-1] in "yY" and word[-2] not in _SB_VOWELS:
        word = word[:-1] + "i"
        r1 = r1[:-1] + "i" if len(r1) >= 1 else ""
        r2 = r2[:-1] + "i" if len(r2) >= 1 else ""

    # step 2
    for suffix in _SB_STEP2:
        if word.endswith(suffix):
            if r1.endswith(suffix):
                if suffix == "tional":
                    word = word[:-2]
                    r1 = r1[:-2]
                    r2 = r2[:-2]
                elif suffix in ("enci", "anci", "abli"):
                    word = word[:-1] + "e"
                    r1 = r1[:-1] + "e" if len(r1) >= 1 else ""
                    r2 = r2[:-1] + "e" if len(r2) >= 1 else ""
                elif suffix == "entli":
                    word = word[:-2]
                    r1 = r1[:-2]
                    r2 = r2[:-2]
                elif suffix in ("izer", "ization"):
                    word = _sb_replace(word, suffix, "ize")
                    r1 = _sb_replace(r1, suffix, "ize") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ize") if len(r2) >= len(suffix) else ""
                elif suffix in ("ational", "ation", "ator"):
                    word = _sb_replace(word, suffix, "ate")
                    r1 = _sb_replace(r1, suffix, "ate") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ate") if len(r2) >= len(suffix) else "e"
                elif suffix in ("alism", "aliti", "alli"):
                    word = _sb_replace(word, suffix, "al")
                    r1 = _sb_replace(r1, suffix, "al") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "al") if len(r2) >= len(suffix) else ""
                elif suffix == "fulness":
                    word = word[:-4]
                    r1 = r1[:-4]
                    r2 = r2[:-4]
                elif suffix in ("ousli", "ousness"):
                    word = _sb_replace(word, suffix, "ous")
                    r1 = _sb_replace(r1, suffix, "ous") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ous") if len(r2) >= len(suffix) else ""
                elif suffix in ("iveness", "iviti"):
                    word = _sb_replace(word, suffix, "ive")
                    r1 = _sb_replace(r1, suffix, "ive") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ive") if len(r2) >= len(suffix) else "e"
                elif suffix in ("biliti", "bli"):
                    word = _sb_replace(word, suffix, "ble")
                    r1 = _sb_replace(r1, suffix, "ble") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ble") if len(r2) >= len(suffix) else ""
                elif suffix == "ogi" and len(word) >= 4 and word[-4] == "l":
                    word = word[:-1]
                    r1 = r1[:-1]
                    r2 = r2[:-1]
                elif suffix in ("fulli", "lessli"):
                    word = word[:-2]
                    r1 = r1[:-2]
                    r2 = r2[:-2]
                elif suffix == "li" and len(word) >= 3 and word[-3] in _SB_LI_ENDING:
                    word = word[:-2]
                    r1 = r1[:-2]
                    r2 = r2[:-2]
            break

    # step 3
    for suffix in _SB_STEP3:
        if word.endswith(suffix):
            if r1.endswith(suffix):
                if suffix == "tional":
                    word = word[:-2]
                    r1 = r1[:-2]
                    r2 = r2[:-2]
                elif suffix == "ational":
                    word = _sb_replace(word, suffix, "ate")
                    r1 = _sb_replace(r1, suffix, "ate") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ate") if len(r2) >= len(suffix) else ""
                elif suffix == "alize":
                    word = word[:-3]
                    r1 = r1[:-3]
                    r2 = r2[:-3]
                elif suffix in ("icate", "iciti", "ical"):
                    word = _sb_replace(word, suffix, "ic")
                    r1 = _sb_replace(r1, suffix, "ic") if len(r1) >= len(suffix) else ""
                    r2 = _sb_replace(r2, suffix, "ic") if len(r2) >= len(suffix) else ""
                elif suffix in ("ful", "ness"):
                    word = word[: -len(suffix)]
                    r1 = r1[: -len(suffix)]
                    r2 = r2[: -len(suffix)]
                elif suffix == "ative" and r2.endswith(suffix):
                    word = word[:-5]
                    r1 = r1[:-5]
                    r2 = r2[:-5]
            break

    # step 4
    for suffix in _SB_STEP4:
        if word.endswith(suffix):
            if r2.endswith(suffix):
                if suffix == "ion":
                    if len(word) >= 4 and word[-4] in "st":
                        word = word[:-3]
                        r1 = r1[:-3]
                        r2 = r2[:-3]
                else:
                    word = word[: -len(suffix)]
                    r1 = r1[: -len(suffix)]
                    r2 = r2[: -len(suffix)]
            break

    # step 5
    if r2.endswith("l") and len(word) >= 2 and word[-2] == "l":
        word = word[:-1]
    elif r2.endswith("e"):
        word = word[:-1]
    elif r1.endswith("e"):
        if len(word) >= 4 and (
            word[-2] in _SB_VOWELS
            or word[-2] in "wxY"
            or word[-3] not in _SB_VOWELS
            or word[-4] in _SB_VOWELS
        ):
            word = word[:-1]

    return word.replace("Y", "y")


# ---------------------------------------------------------------------------
# Lancaster (Paice/Husk) stemmer
#
# Rule notation: reversed suffix, optional '*' (applies only to an intact
# word), digits to remove, letters to append, then '>' continue or '.' stop.
# A removal count of 0 with '.' protects the ending.

_LANCASTER_RULES = (
    "ai*2.", "a*1.",
    "bb1.",
    "city3s.", "ci2>", "cn1t>",
    "dd1.", "dei3y>", "deec2ss.", "dee1.", "de2>", "dooh4>",
    "e1>",
    "feil1v.", "fi2>",
    "gni3>", "gai3y.", "ga2>", "gg1.",
    "ht*2.", "hsiug5ct.", "hsi3>",
    "i*1.", "i1y>",
    "ji1d.", "juf1s.", "ju1d.", "jo1d.", "jeh1r.", "jrev1t.",
    "jsim2t.", "jn1d.", "j1s.",
    "lbaifi6.", "lbai4y.", "lba3>", "lbi3.", "lib2l>", "cil4.",
    "le2>", "luf3>", "lu2.", "lai3>", "lau3>", "la2>", "ll1.",
    "mui3.", "mu*2.", "msi3>", "mm1.",
    "nois4j>", "noix4ct.", "noi3>", "nai3>", "na2>", "nee0.", "ne2>", "nn1.",
    "pihs4>", "pp1.",
    "re2>", "rae0.", "ra2.", "ro2>", "ru2>", "rr1.", "rt1>", "rei3y>",
    "sei3y>", "sis2.", "si2>", "ssen4>", "ss0.", "suo3>", "su*2.",
    "s*1>", "s0.",
    "tacilp4c.", "ta2>", "tnem4>", "tne3>", "tna3>", "tpir2b.",
    "tpro2b.", "tcud1.", "tpmus2.", "tpec2iv.", "tulo2v.", "tsis0.",
    "tsi3>", "tt1.",
    "uqi3.", "ugo1.",
    "vis3j>", "vie0.", "vi2>",
    "ylb1>", "yli3y>", "ylp0.", "yl2>", "ygo1.", "yhp1.", "ymo1.",
    "ypo1.", "yti3>", "yte3>", "ytl2.", "yrtsi5.", "yra3>", "yro3>",
    "yfi3.", "ydo1.", "yh1.",
    "zi2>", "zy1s.",
)

_LANCASTER_RULE_RE = re.compile(r"^([a-z]+)(\*?)(\d)([a-z]*)([>.])$")


def _parse_lancaster_rules():
    table = {}
    for spec in _LANCASTER_RULES:
        match = _LANCASTER_RULE_RE.match(spec)
        suffix = match.group(1)[::-1]
        intact_only = match.group(2) == "*"
        remove = int(match.group(3))
        append = match.group(4)
        cont = match.group(5) == ">"
        table.setdefault(suffix[-1], []).append((suffix, intact_only, remove, append, cont))
    return table


_LANCASTER_TABLE = _parse_lancaster_rules()


def _lancaster_acceptable(word, remove):
    remaining = len(word) - remove
    if word[0] in "aeiouy":
        return remaining >= 2
    if remaining < 3:
        return False
    return word[1] in "aeiouy" or word[2] in "aeiouy"


def lancaster_stem(word):
    word = word.lower()
    if not word:
        return word
    intact = word
    while True:
        rules = _LANCASTER_TABLE.get(word[-1])
        if rules is None:
            return word
        applied = False
        for suffix, intact_only, remove, append, cont in rules:
            if not word.endswith(suffix):
                continue
            if intact_only and word != intact:
                continue
            if not _lancaster_acceptable(word, remove):
                continue
            word = word[: len(word) - remove] + append
            if not cont:
                return word
            applied = True
            break
        if not applied or not word:
            return word
