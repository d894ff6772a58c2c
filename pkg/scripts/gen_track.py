"""Generate the small conference-domain evaluation track fixture.

Four ontologies describe the same 42 concepts under different naming
conventions (Pascal, camel, snake, hyphenated; one ontology ships as
Turtle). Reference alignments link every shared concept. The layout
mirrors a MELT-style track: per-pair reference files plus a TOML manifest.

The script verifies the properties the test suite relies on before
writing anything: per-pair Porter and Snowball alignments are identical,
the Lancaster reserved-word density stays below 10 per 100 entities, and
logic repair strictly improves Lancaster precision on a majority of pairs.

Run from the repository root: python3 scripts/gen_track.py
"""

import pathlib
import statistics
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from ontomatch.logic_repair import build_joint_reserved_set  # noqa: E402
from ontomatch.matcher import match_ontologies  # noqa: E402
from ontomatch.metrics import evaluate, reserved_density  # noqa: E402
from ontomatch.model import Alignment, Correspondence  # noqa: E402
from ontomatch.ontio import load_alignment, load_ontology, save_alignment  # noqa: E402
from ontomatch.pipeline import parse_pipeline_spec  # noqa: E402

TRACK = ROOT / "tests" / "fixtures" / "track"

CLASSES = [
    ["paper"], ["author"], ["reviewer"], ["review"], ["session"], ["workshop"],
    ["tutorial"], ["conference"], ["topic"], ["track"], ["person"], ["organization"],
    ["meeting", "room"], ["invited", "talk"], ["steering", "committee"],
    ["program", "committee"], ["registration", "fee"], ["camera", "ready", "paper"],
    ["acceptance", "decision"], ["keyword"], ["poster"], ["demo", "session"],
    ["social", "event"], ["proceedings"], ["city"], ["country"], ["hotel"],
    ["student"], ["invited", "speaker"], ["abstract"],
]
OBJECT_PROPERTIES = [
    ["writes"], ["reviews"], ["submits"], ["attends"], ["chairs"], ["gives"],
    ["has", "members"], ["was", "a", "member", "of"], ["has", "track"],
    ["accepted", "by"],
]
DATATYPE_PROPERTIES = [["has", "email"], ["has", "title"]]


def pascal(tokens):
    return "".join(t.capitalize() for t in tokens)


def camel(tokens):
    return tokens[0] + "".join(t.capitalize() for t in tokens[1:])


def snake(tokens):
    return "_".join(tokens)


def pascal_underscore(tokens):
    return "_".join(t.capitalize() for t in tokens)


def hyphen(tokens):
    return "-".join(tokens)


# (ontology id, class style, property style, file format)
ONTOLOGIES = [
    ("cmt", pascal, camel, "rdfxml"),
    ("conf", snake, snake, "rdfxml"),
    ("edas", pascal_underscore, camel, "rdfxml"),
    ("ekaw", hyphen, hyphen, "turtle"),
]

PAIRS = [
    ("cmt", "conf"),
    ("cmt", "edas"),
    ("conf", "edas"),
    ("conf", "ekaw"),
    ("edas", "ekaw"),
]


def iri(onto_id, name):
    return f"http://ontomatch.test/{onto_id}#{name}"


def entity_rows(onto_id, class_style, prop_style):
    """(iri, owl kind, label-or-None) triples in stable order."""
    rows = []
    for tokens in CLASSES:
        name = class_style(tokens)
        if onto_id == "edas" and tokens == ["abstract"]:
            # numeric-code entity whose text lives in its label
            rows.append((iri(onto_id, "E4001"), "Class", name))
            continue
        rows.append((iri(onto_id, name), "Class", None))
    for tokens in OBJECT_PROPERTIES:
        rows.append((iri(onto_id, prop_style(tokens)), "ObjectProperty", None))
    for tokens in DATATYPE_PROPERTIES:
        rows.append((iri(onto_id, prop_style(tokens)), "DatatypeProperty", None))
    if onto_id == "edas":
        # textless entity: numeric code, no label; matchers must skip it
        rows.append((iri(onto_id, "E9999"), "Class", None))
    return rows


def write_rdfxml(path, onto_id, rows):
    lines = [
        '<?xml version="1.0" encoding="utf-8"?>',
        '<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"',
        '         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"',
        '         xmlns:owl="http://www.w3.org/2002/07/owl#">',
    ]
    for entity_iri, kind, label in rows:
        if label is None:
            lines.append(f'  <owl:{kind} rdf:about="{entity_iri}"/>')
        else:
            lines.append(f'  <owl:{kind} rdf:about="{entity_iri}">')
            lines.append(f'    <rdfs:label xml:lang="en">{label}</rdfs:label>')
            lines.append(f"  </owl:{kind}>")
    lines.extend(["</rdf:RDF>", ""])
    path.write_text("\n".join(lines), encoding="utf-8")


def write_turtle(path, onto_id, rows):
    lines = [
        "@prefix owl: <http://www.w3.org/2002/07/owl#> .",
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .",
        "",
    ]
    for entity_iri, kind, label in rows:
        if label is None:
            lines.append(f"<{entity_iri}> a owl:{kind} .")
        else:
            lines.append(f'<{entity_iri}> a owl:{kind} ; rdfs:label "{label}"@en .')
    lines.append("")
    path.write_text("\n".join(lines), encoding="utf-8")


def build_reference(source_id, target_id, source_style, target_style):
    cells = []
    for tokens, src_style, tgt_style in (
        [(t, source_style[0], target_style[0]) for t in CLASSES]
        + [(t, source_style[1], target_style[1]) for t in OBJECT_PROPERTIES]
        + [(t, source_style[1], target_style[1]) for t in DATATYPE_PROPERTIES]
    ):
        src_name = src_style(tokens)
        tgt_name = tgt_style(tokens)
        if source_id == "edas" and tokens == ["abstract"]:
            src_name = "E4001"
        if target_id == "edas" and tokens == ["abstract"]:
            tgt_name = "E4001"
        cells.append(Correspondence(iri(source_id, src_name), iri(target_id, tgt_name)))
    return Alignment(
        source_ontology=f"{source_id}",
        target_ontology=f"{target_id}",
        cells=tuple(cells),
        provenance="reference",
    )


MANIFEST_TEMPLATE = """\
track = "conference-mini"
output_dir = "out"
label_policy = "name-first"
repair = ["none", "logic"]

{pairs}
[[pipelines]]
id = "raw"
spec = ""

[[pipelines]]
id = "TN"
spec = "T,N"

[[pipelines]]
id = "TNR"
spec = "T,N,R"

[[pipelines]]
id = "TNRSl"
spec = "T,N,R,S:lancaster"
"""


def main():
    TRACK.mkdir(parents=True, exist_ok=True)
    (TRACK / "refs").mkdir(exist_ok=True)
    styles = {}
    for onto_id, class_style, prop_style, fmt in ONTOLOGIES:
        rows = entity_rows(onto_id, class_style, prop_style)
        styles[onto_id] = (class_style, prop_style, fmt)
        if fmt == "turtle":
            write_turtle(TRACK / f"{onto_id}.ttl", onto_id, rows)
        else:
            write_rdfxml(TRACK / f"{onto_id}.rdf", onto_id, rows)
    pair_sections = []
    for source_id, target_id in PAIRS:
        reference = build_reference(
            source_id, target_id, styles[source_id][:2], styles[target_id][:2]
        )
        ref_path = TRACK / "refs" / f"{source_id}-{target_id}.rdf"
        save_alignment(reference, ref_path)
        src_file = f"{source_id}.ttl" if styles[source_id][2] == "turtle" else f"{source_id}.rdf"
        tgt_file = f"{target_id}.ttl" if styles[target_id][2] == "turtle" else f"{target_id}.rdf"
        pair_sections.append(
            "[[pairs]]\n"
            f'id = "{source_id}-{target_id}"\n'
            f'track = "conference-mini"\n'
            f'source = "{src_file}"\n'
            f'target = "{tgt_file}"\n'
            f'reference = "refs/{source_id}-{target_id}.rdf"\n'
        )
    (TRACK / "manifest.toml").write_text(
        MANIFEST_TEMPLATE.format(pairs="\n".join(pair_sections)), encoding="utf-8"
    )

    # ----- verify the properties the acceptance tests rely on -----
    docs = {}
    for onto_id, (_, _, fmt) in styles.items():
        suffix = "ttl" if fmt == "turtle" else "rdf"
        docs[onto_id] = load_ontology(TRACK / f"{onto_id}.{suffix}")
    raw_cfg = parse_pipeline_spec("")
    tn_cfg = parse_pipeline_spec("T,N")
    porter_cfg = parse_pipeline_spec("T,N,R,S:porter")
    snowball_cfg = parse_pipeline_spec("T,N,R,S:snowball")
    lancaster_cfg = parse_pipeline_spec("T,N,R,S:lancaster")
    raw_f1, tn_f1, improvements = [], [], 0
    for source_id, target_id in PAIRS:
        src, tgt = docs[source_id], docs[target_id]
        reference = load_alignment(TRACK / "refs" / f"{source_id}-{target_id}.rdf")
        raw_f1.append(evaluate(match_ontologies(src, tgt, raw_cfg), reference).f1)
        tn_f1.append(evaluate(match_ontologies(src, tgt, tn_cfg), reference).f1)
        porter_cells = match_ontologies(src, tgt, porter_cfg).pairs()
        snowball_cells = match_ontologies(src, tgt, snowball_cfg).pairs()
        assert porter_cells == snowball_cells, f"porter/snowball divergence on {source_id}-{target_id}"
        plain = evaluate(match_ontologies(src, tgt, lancaster_cfg), reference)
        reserved = build_joint_reserved_set(src, tgt, lancaster_cfg)
        repaired = evaluate(match_ontologies(src, tgt, lancaster_cfg, reserved), reference)
        density = reserved_density(reserved, src, tgt)
        assert density < 10, f"density {density} too high on {source_id}-{target_id}"
        if repaired.precision > plain.precision:
            improvements += 1
        print(
            f"{source_id}-{target_id}: tnF1={tn_f1[-1]:.3f} lancasterP={plain.precision:.3f}"
            f" repairedP={repaired.precision:.3f} density={density:.2f} reserved={len(reserved)}"
        )
    assert statistics.median(tn_f1) >= statistics.median(raw_f1)
    assert improvements * 2 > len(PAIRS), "logic repair must help on a strict majority"
    print(f"ok: {improvements}/{len(PAIRS)} pairs improved by logic repair")


if __name__ == "__main__":
    main()
