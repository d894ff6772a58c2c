"""Reading ontology documents and reading/writing alignment files.

Only the triples the matcher needs are consumed: rdf:type for the three
OWL entity kinds, rdfs:label, and any configured annotation properties.
RDF/XML is handled with the standard XML parser; Turtle with a small
single-purpose parser covering the subset emitted by common tools.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from enum import Enum
from pathlib import Path

from ontomatch.errors import MalformedDocument, UnsupportedFormat, UnsupportedRelation
from ontomatch.model import (
    Alignment,
    Correspondence,
    EntityKind,
    EntityRef,
    OntologyDoc,
    Relation,
    local_name_of,
)

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XML_NS = "http://www.w3.org/XML/1998/namespace"
ALIGN_NS = "http://knowledgeweb.semanticweb.org/heterogeneity/alignment"

RDFS_LABEL = RDFS_NS + "label"

_KIND_BY_TYPE = {
    OWL_NS + "Class": EntityKind.CLASS,
    OWL_NS + "ObjectProperty": EntityKind.OBJECT_PROPERTY,
    OWL_NS + "DatatypeProperty": EntityKind.DATATYPE_PROPERTY,
}


class DocumentFormat(Enum):
    RDF_XML = "rdfxml"
    TURTLE = "turtle"


def _expand_tag(tag: str) -> str:
    """ElementTree '{ns}local' -> concatenated IRI 'nslocal'."""
    if tag.startswith("{"):
        ns, local = tag[1:].split("}", 1)
        return ns + local
    return tag


def _resolve(base: str, ref: str) -> str:
    if not ref:
        return base
    if re.match(r"^[A-Za-z][A-Za-z0-9+.-]*:", ref):
        return ref
    if ref.startswith("#"):
        return base.split("#", 1)[0] + ref
    return base.rstrip("#/") + "/" + ref


class _EntityCollector:
    """Accumulates (iri, kind, labels) statements preserving document order."""

    def __init__(self):
        self.order: list[str] = []
        self.kinds: dict[str, EntityKind] = {}
        self.labels: dict[str, list[tuple[int, str]]] = {}

    def add_type(self, iri: str, type_iri: str):
        kind = _KIND_BY_TYPE.get(type_iri)
        if kind is None:
            return
        if iri not in self.kinds:
            self.kinds[iri] = kind
            self.order.append(iri)

    def add_label(self, iri: str, text: str, lang: str):
        # untagged or English labels outrank other languages
        rank = 0 if lang in ("", "en") or lang.startswith("en-") else 1
        self.labels.setdefault(iri, []).append((rank, text))

    def build(self, source_path: str) -> OntologyDoc:
        entities = []
        for iri in self.order:
            ranked = self.labels.get(iri, [])
            labels = tuple(text for _, text in sorted(ranked, key=lambda p: p[0]))
            entities.append(
                EntityRef(
                    iri=iri,
                    kind=self.kinds[iri],
                    local_name=local_name_of(iri),
                    labels=labels,
                )
            )
        return OntologyDoc(source_path=source_path, entities=tuple(entities))


# ---------------------------------------------------------------------------
# RDF/XML


def _subject_iri(elem, base: str) -> str | None:
    about = elem.get(f"{{{RDF_NS}}}about")
    if about is not None:
        return _resolve(base, about)
    rdf_id = elem.get(f"{{{RDF_NS}}}ID")
    if rdf_id is not None:
        return base.split("#", 1)[0] + "#" + rdf_id
    return None  # blank node


def _parse_rdfxml(data: bytes, annotation_props: set[str], source_path: str) -> OntologyDoc:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position
        raise MalformedDocument(f"RDF/XML syntax error: {exc.msg.split(':')[0]}", line, column) from exc
    base = root.get(f"{{{XML_NS}}}base", "")
    collector = _EntityCollector()
    for elem in root:
        elem_base = elem.get(f"{{{XML_NS}}}base", base)
        iri = _subject_iri(elem, elem_base)
        if iri is None:
            continue
        tag_iri = _expand_tag(elem.tag)
        if tag_iri in _KIND_BY_TYPE:
            collector.add_type(iri, tag_iri)
        for child in elem:
            child_iri = _expand_tag(child.tag)
            if child_iri == RDF_NS + "type":
                resource = child.get(f"{{{RDF_NS}}}resource")
                if resource:
                    collector.add_type(iri, _resolve(elem_base, resource))
            elif child_iri == RDFS_LABEL or child_iri in annotation_props:
                text = (child.text or "").strip()
                if text:
                    lang = child.get(f"{{{XML_NS}}}lang", "")
                    collector.add_label(iri, text, lang)
    return collector.build(source_path)


# ---------------------------------------------------------------------------
# Turtle (subset: prefixes, IRIs, prefixed names, literals, ';' ',' '.')

_TTL_TOKEN = re.compile(
    r"""
    (?P<comment>\#[^\n]*)
  | (?P<iri><[^<>\s]*>)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<langtag>@[A-Za-z][A-Za-z0-9-]*)
  | (?P<punct>\^\^|[;,.\[\]()])
  | (?P<pname>[A-Za-z_][\w-]*(?:\.[\w-]+)*)?:(?P<local>(?:[\w-]+(?:\.[\w-]+)*)?)
  | (?P<keyword>@?[A-Za-z_][\w-]*)
  | (?P<number>[+-]?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ws>\s+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


def _ttl_tokens(text: str):
    line = 1
    col = 1
    for match in _TTL_TOKEN.finditer(text):
        kind = match.lastgroup
        value = match.group(0)
        if kind == "local":
            kind = "pname"
        if kind == "bad":
            raise MalformedDocument(f"unexpected character {value!r}", line, col)
        if kind not in ("ws", "comment"):
            yield kind, value, line, col
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
    yield "eof", "", line, col


_TTL_STRING_ESCAPES = {
    "t": "\t", "n": "\n", "r": "\r", '"': '"', "\\": "\\", "b": "\b", "f": "\f", "'": "'",
}


def _ttl_unescape(raw: str) -> str:
    body = raw[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            nxt = body[i + 1]
            if nxt in "uU":
                width = 4 if nxt == "u" else 8
                out.append(chr(int(body[i + 2 : i + 2 + width], 16)))
                i += 2 + width
                continue
            out.append(_TTL_STRING_ESCAPES.get(nxt, nxt))
            i += 2
            continue
        out.append(ch)
        i += 1
    return "".join(out)


def _parse_turtle(data: bytes, annotation_props: set[str], source_path: str) -> OntologyDoc:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedDocument(f"Turtle document is not valid UTF-8: {exc.reason}") from exc
    tokens = list(_ttl_tokens(text))
    pos = 0
    prefixes: dict[str, str] = {}
    base = ""
    collector = _EntityCollector()

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def fail(message, tok):
        raise MalformedDocument(message, tok[2], tok[3])

    def term():
        """Resolve one subject/predicate/object term to (kind, value, lang)."""
        kind, value, line, col = advance()
        if kind == "iri":
            return "iri", _resolve(base, value[1:-1]), ""
        if kind == "pname":
            prefix, _, local = value.partition(":")
            if prefix == "" and local == "a":  # bare pname ':a'
                pass
            if prefix not in prefixes:
                fail(f"undeclared prefix {prefix + ':'!r}", (kind, value, line, col))
            return "iri", prefixes[prefix] + local, ""
        if kind == "keyword" and value == "a":
            return "iri", RDF_NS + "type", ""
        if kind == "string":
            lang = ""
            nxt = peek()
            if nxt[0] == "langtag":
                lang = advance()[1][1:]
            elif nxt[0] == "punct" and nxt[1] == "^^":
                advance()
                term()  # datatype IRI, ignored
            return "literal", _ttl_unescape(value), lang
        if kind == "number":
            return "literal", value, ""
        fail(f"unexpected token {value!r}", (kind, value, line, col))

    while True:
        kind, value, line, col = peek()
        if kind == "eof":
            break
        if kind in ("keyword", "langtag") and value in ("@prefix", "PREFIX", "prefix"):
            advance()
            name_kind, name_value, nline, ncol = advance()
            if name_kind != "pname" or not name_value.endswith(":"):
                fail("expected prefix name", (name_kind, name_value, nline, ncol))
            iri_kind, iri_value, iline, icol = advance()
            if iri_kind != "iri":
                fail("expected IRI in prefix declaration", (iri_kind, iri_value, iline, icol))
            prefixes[name_value[:-1]] = _resolve(base, iri_value[1:-1])
            if peek()[0] == "punct" and peek()[1] == ".":
                advance()
            continue
        if kind in ("keyword", "langtag") and value in ("@base", "BASE", "base"):
            advance()
            iri_kind, iri_value, iline, icol = advance()
            if iri_kind != "iri":
                fail("expected IRI in base declaration", (iri_kind, iri_value, iline, icol))
            base = iri_value[1:-1]
            if peek()[0] == "punct" and peek()[1] == ".":
                advance()
            continue

        subject_kind, subject, _ = term()
        if subject_kind != "iri":
            fail("expected IRI subject", (kind, value, line, col))
        while True:  # predicate-object lists separated by ';'
            predicate_kind, predicate, _ = term()
            if predicate_kind != "iri":
                raise MalformedDocument("expected IRI predicate")
            while True:  # object lists separated by ','
                object_kind, obj, lang = term()
                if predicate == RDF_NS + "type" and object_kind == "iri":
                    collector.add_type(subject, obj)
                elif (predicate == RDFS_LABEL or predicate in annotation_props) and object_kind == "literal":
                    if obj.strip():
                        collector.add_label(subject, obj.strip(), lang)
                sep = peek()
                if sep[0] == "punct" and sep[1] == ",":
                    advance()
                    continue
                break
            sep = peek()
            if sep[0] == "punct" and sep[1] == ";":
                advance()
                # tolerate trailing ';' before '.'
                if peek()[0] == "punct" and peek()[1] == ".":
                    advance()
                    break
                continue
            if sep[0] == "punct" and sep[1] == ".":
                advance()
                break
            fail(f"expected ';' or '.' after triple, got {sep[1]!r}", sep)
    return collector.build(source_path)


# ---------------------------------------------------------------------------
# Public entry points


def parse_ontology(
    data: bytes,
    format: DocumentFormat | str = DocumentFormat.RDF_XML,
    annotation_props: tuple[str, ...] = (),
    source_path: str = "",
) -> OntologyDoc:
    """Extract class/property entities with their labels from a document."""
    if isinstance(format, str):
        try:
            format = DocumentFormat(format)
        except ValueError:
            raise UnsupportedFormat(f"unsupported ontology format: {format!r}") from None
    props = set(annotation_props)
    if format is DocumentFormat.RDF_XML:
        return _parse_rdfxml(data, props, source_path)
    if format is DocumentFormat.TURTLE:
        return _parse_turtle(data, props, source_path)
    raise UnsupportedFormat(f"unsupported ontology format: {format!r}")


def guess_format(path: str | Path) -> DocumentFormat:
    suffix = Path(path).suffix.lower()
    if suffix in (".ttl", ".n3"):
        return DocumentFormat.TURTLE
    return DocumentFormat.RDF_XML


def load_ontology(path: str | Path, annotation_props: tuple[str, ...] = (),
                  format: DocumentFormat | str | None = None) -> OntologyDoc:
    path = Path(path)
    fmt = format if format is not None else guess_format(path)
    return parse_ontology(path.read_bytes(), fmt, annotation_props, source_path=str(path))


def read_alignment(data: bytes) -> Alignment:
    """Deserialise an Alignment-format RDF/XML document."""
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position
        raise MalformedDocument(f"alignment syntax error: {exc.msg.split(':')[0]}", line, column) from exc

    def first_text(tag):
        elem = root.find(f".//{{{ALIGN_NS}}}{tag}")
        if elem is None:
            return ""
        nested = elem.find(f".//*[@{{{RDF_NS}}}about]")
        if nested is not None:
            return nested.get(f"{{{RDF_NS}}}about", "")
        return (elem.text or "").strip()

    cells = []
    for cell in root.iter(f"{{{ALIGN_NS}}}Cell"):
        entity1 = cell.find(f"{{{ALIGN_NS}}}entity1")
        entity2 = cell.find(f"{{{ALIGN_NS}}}entity2")
        if entity1 is None or entity2 is None:
            raise MalformedDocument("Cell missing entity1/entity2")
        iri1 = entity1.get(f"{{{RDF_NS}}}resource", "")
        iri2 = entity2.get(f"{{{RDF_NS}}}resource", "")
        relation_elem = cell.find(f"{{{ALIGN_NS}}}relation")
        relation = (relation_elem.text or "").strip() if relation_elem is not None else "="
        if relation != "=":
            raise UnsupportedRelation(relation)
        measure_elem = cell.find(f"{{{ALIGN_NS}}}measure")
        confidence = 1.0
        if measure_elem is not None and measure_elem.text and measure_elem.text.strip():
            confidence = float(measure_elem.text.strip())
        cells.append(Correspondence(iri1, iri2, Relation.EQUIVALENCE, confidence))
    return Alignment(
        source_ontology=first_text("onto1"),
        target_ontology=first_text("onto2"),
        cells=tuple(cells),
        provenance=first_text("provenance"),
    )


def load_alignment(path: str | Path) -> Alignment:
    return read_alignment(Path(path).read_bytes())


def _xml_escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )


def write_alignment(alignment: Alignment) -> bytes:
    """Serialise to Alignment-format RDF/XML, cells in (entity1, entity2) order."""
    lines = [
        '<?xml version="1.0" encoding="utf-8"?>',
        f'<rdf:RDF xmlns="{ALIGN_NS}"',
        f'         xmlns:rdf="{RDF_NS}"',
        f'         xmlns:xsd="http://www.w3.org/2001/XMLSchema#">',
        "  <Alignment>",
        "    <xml>yes</xml>",
        "    <level>0</level>",
        "    <type>**</type>",
    ]
    if alignment.source_ontology:
        lines.append(f"    <onto1>{_xml_escape(alignment.source_ontology)}</onto1>")
    if alignment.target_ontology:
        lines.append(f"    <onto2>{_xml_escape(alignment.target_ontology)}</onto2>")
    if alignment.provenance:
        lines.append(f"    <provenance>{_xml_escape(alignment.provenance)}</provenance>")
    for cell in alignment.sorted_cells():
        lines.extend(
            [
                "    <map>",
                "      <Cell>",
                f'        <entity1 rdf:resource="{_xml_escape(cell.entity1)}"/>',
                f'        <entity2 rdf:resource="{_xml_escape(cell.entity2)}"/>',
                f"        <relation>{cell.relation.value}</relation>",
                f'        <measure rdf:datatype="http://www.w3.org/2001/XMLSchema#float">{cell.confidence!r}</measure>',
                "      </Cell>",
                "    </map>",
            ]
        )
    lines.extend(["  </Alignment>", "</rdf:RDF>", ""])
    return "\n".join(lines).encode("utf-8")


def save_alignment(alignment: Alignment, path: str | Path):
    Path(path).write_bytes(write_alignment(alignment))
