"""Line-oriented N-Quads parsing and serialization.

The ingestion atom is a quad (subject, predicate, object, context). Parsing
is streaming and tolerant by default: real-world crawl dumps contain broken
lines, and the default mode counts and skips them. Strict mode raises on the
first malformed line instead, reporting the line number.
"""

from __future__ import annotations

import gzip
import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Union

RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"

IRI_KIND = "iri"
BLANK_KIND = "blank"
LITERAL_KIND = "literal"


class ParseError(ValueError):
    """Malformed N-Quads input in strict mode."""

    def __init__(self, message: str, line_no: int, line: str = ""):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.line = line


@dataclass(frozen=True)
class RdfObject:
    """Object term of a quad: an IRI, a blank node, or a literal.

    Blank-node values keep their ``_:`` prefix. Literal values hold the
    unescaped lexical form; ``datatype`` and ``lang`` are mutually exclusive.
    """

    kind: str
    value: str
    datatype: str | None = None
    lang: str | None = None

    def is_iri(self) -> bool:
        return self.kind == IRI_KIND


@dataclass(frozen=True)
class Quad:
    """One RDF statement. Subjects may be IRIs or blank nodes (``_:`` prefix);
    predicates and contexts are always IRIs."""

    subject: str
    predicate: str
    obj: RdfObject
    context: str


@dataclass
class ParseStats:
    """Per-stream parse counters, filled in by :func:`parse_nquads`."""

    lines: int = 0
    quads: int = 0
    malformed: int = 0
    malformed_samples: list[str] = field(default_factory=list)

    def record_malformed(self, line: str, keep: int = 5) -> None:
        self.malformed += 1
        if len(self.malformed_samples) < keep:
            self.malformed_samples.append(line)


_ECHAR_DECODE = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_IRI_RE = re.compile(r'<((?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>')
_BLANK_RE = re.compile(r"_:([^\s<>\"]+)")
_LITERAL_RE = re.compile(
    r'"((?:[^"\\\n\r]|\\.)*)"'
    r"(?:\^\^<((?:[^\x00-\x20<>\"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>"
    r"|@([A-Za-z]+(?:-[A-Za-z0-9]+)*))?"
)
_WS_RE = re.compile(r"[ \t]+")
_END_RE = re.compile(r"\.[ \t]*(?:#.*)?$")

# fast path for the dominant dump shape: four plain IRIs, no escapes, no
# trailing comment; anything else falls back to the stepwise scanner
_PLAIN_IRI = r'<([^\x00-\x20<>"{}|^`\\]*)>'
_FAST_RE = re.compile(
    rf"[ \t]*{_PLAIN_IRI}[ \t]+{_PLAIN_IRI}[ \t]+{_PLAIN_IRI}[ \t]+{_PLAIN_IRI}[ \t]*\.[ \t]*$"
)


def _unescape(s: str) -> str:
    if "\\" not in s:
        return s
    out: list[str] = []
    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        if i + 1 >= n:
            raise ValueError("trailing backslash")
        nxt = s[i + 1]
        if nxt == "u":
            out.append(chr(int(s[i + 2 : i + 6], 16)))
            i += 6
        elif nxt == "U":
            out.append(chr(int(s[i + 2 : i + 10], 16)))
            i += 10
        elif nxt in _ECHAR_DECODE:
            out.append(_ECHAR_DECODE[nxt])
            i += 2
        else:
            raise ValueError(f"invalid escape \\{nxt}")
    return "".join(out)


def _skip_ws(line: str, pos: int, required: bool) -> int:
    m = _WS_RE.match(line, pos)
    if m:
        return m.end()
    if required:
        raise ValueError(f"expected whitespace at column {pos}")
    return pos


def _parse_line(line: str, bnode_prefix: str) -> Quad | None:
    """Parse one statement line; returns None for blank/comment lines."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None

    body = line.rstrip("\r\n")
    fast = _FAST_RE.match(body)
    if fast:
        subject, predicate, obj_iri, context = fast.groups()
        if subject and predicate and context:
            return Quad(subject, predicate, RdfObject(IRI_KIND, obj_iri), context)

    pos = _skip_ws(body, 0, required=False)

    # subject: IRI or blank node
    m = _IRI_RE.match(body, pos)
    if m:
        subject = _unescape(m.group(1))
    else:
        m = _BLANK_RE.match(body, pos)
        if not m:
            raise ValueError("expected subject IRI or blank node")
        subject = "_:" + bnode_prefix + m.group(1)
    pos = _skip_ws(body, m.end(), required=True)

    m = _IRI_RE.match(body, pos)
    if not m:
        raise ValueError("expected predicate IRI")
    predicate = _unescape(m.group(1))
    pos = _skip_ws(body, m.end(), required=True)

    # object: IRI, blank node, or literal
    m = _IRI_RE.match(body, pos)
    if m:
        obj = RdfObject(IRI_KIND, _unescape(m.group(1)))
    else:
        m = _BLANK_RE.match(body, pos)
        if m:
            obj = RdfObject(BLANK_KIND, "_:" + bnode_prefix + m.group(1))
        else:
            m = _LITERAL_RE.match(body, pos)
            if not m:
                raise ValueError("expected object term")
            lexical, datatype, lang = m.group(1), m.group(2), m.group(3)
            obj = RdfObject(
                LITERAL_KIND,
                _unescape(lexical),
                datatype=_unescape(datatype) if datatype else None,
                lang=lang,
            )
    pos = _skip_ws(body, m.end(), required=True)

    m = _IRI_RE.match(body, pos)
    if not m:
        raise ValueError("expected context IRI")
    context = _unescape(m.group(1))
    pos = _skip_ws(body, m.end(), required=False)
    if not _END_RE.match(body, pos):
        raise ValueError(f"expected statement terminator '.' at column {pos}")

    if not subject or not predicate or not context:
        raise ValueError("empty term")
    return Quad(subject, predicate, obj, context)


Source = Union[str, Path, IO[bytes], IO[str], Iterable[str]]


def _open_lines(source: Source) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        path = Path(source)
        opener = gzip.open if path.suffix == ".gz" else open
        with opener(path, "rt", encoding="utf-8") as fh:  # type: ignore[operator]
            yield from fh
    elif isinstance(source, io.TextIOBase):
        yield from source
    elif hasattr(source, "read"):
        yield from io.TextIOWrapper(source, encoding="utf-8")  # type: ignore[arg-type]
    else:
        yield from source


def parse_nquads(
    source: Source,
    strict: bool = False,
    stats: ParseStats | None = None,
    bnode_prefix: str = "",
) -> Iterator[Quad]:
    """Stream quads from N-Quads input.

    ``source`` may be a path (``.gz`` handled transparently), a file object,
    or an iterable of lines. Malformed lines are counted in ``stats`` and
    skipped unless ``strict``, in which case a :class:`ParseError` carrying
    the line number is raised. ``bnode_prefix`` scopes blank-node labels so
    labels from different input files never collide.
    """
    if stats is None:
        stats = ParseStats()
    for line_no, line in enumerate(_open_lines(source), start=1):
        stats.lines += 1
        try:
            quad = _parse_line(line, bnode_prefix)
        except ValueError as exc:
            if strict:
                raise ParseError(str(exc), line_no, line) from exc
            stats.record_malformed(line.rstrip("\n"))
            continue
        if quad is not None:
            stats.quads += 1
            yield quad


_LITERAL_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}

_IRI_FORBIDDEN = set('<>"{}|^`\\') | {chr(c) for c in range(0x21)}


def _escape_literal(s: str) -> str:
    return "".join(_LITERAL_ESCAPES.get(c, c) for c in s)


def _escape_iri(s: str) -> str:
    out = []
    for c in s:
        if c in _IRI_FORBIDDEN:
            cp = ord(c)
            out.append(f"\\u{cp:04X}" if cp <= 0xFFFF else f"\\U{cp:08X}")
        else:
            out.append(c)
    return "".join(out)


def _serialize_term(value: str) -> str:
    if value.startswith("_:"):
        return value
    return f"<{_escape_iri(value)}>"


def serialize_object(obj: RdfObject) -> str:
    if obj.kind == LITERAL_KIND:
        base = f'"{_escape_literal(obj.value)}"'
        if obj.datatype:
            return f"{base}^^<{_escape_iri(obj.datatype)}>"
        if obj.lang:
            return f"{base}@{obj.lang}"
        return base
    return _serialize_term(obj.value)


def serialize_quad(quad: Quad) -> str:
    """One N-Quads statement line (without trailing newline)."""
    return (
        f"{_serialize_term(quad.subject)} <{_escape_iri(quad.predicate)}> "
        f"{serialize_object(quad.obj)} <{_escape_iri(quad.context)}> ."
    )


def write_nquads(quads: Iterable[Quad], path: str | Path) -> int:
    """Write quads to a file, one statement per line. Returns the count."""
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for quad in quads:
            fh.write(serialize_quad(quad))
            fh.write("\n")
            count += 1
    return count
