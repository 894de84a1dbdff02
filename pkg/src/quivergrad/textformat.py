"""Presentation text format (a small YAML document).

::

    vertices: [e, f]
    arrows:
    - {name: a, source: e, target: f, weight: [1]}
    - {name: b, source: e, target: f, weight: [1]}
    relations:
    - "a.a* + b.b*"

``weight`` is optional (default ``[1]``, path length). Printing always emits
the canonical form, and ``parse(print(p))`` reproduces it byte for byte.
"""
from __future__ import annotations

import json
import re

import yaml

from .errors import ParseError, QuiverError
from .graded import Presentation
from .quiver import Quiver, format_element, parse_element

__all__ = [
    "parse_quiver",
    "parse_presentation",
    "format_presentation",
    "load_presentation",
    "save_presentation",
    "parse_element",
    "format_element",
]

_PLAIN = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\**")
_TOP_KEYS = {"vertices", "arrows", "relations"}
_ARROW_KEYS = {"name", "source", "target", "weight"}


def _load(text):
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        pos = f"line {mark.line + 1}, column {mark.column + 1}" if mark else None
        raise ParseError(f"malformed document: {getattr(exc, 'problem', exc)}", pos) from None
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ParseError("document must be a mapping", "line 1, column 1")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise ParseError(f"unknown fields {sorted(map(str, unknown))}")
    return doc


def _quiver_from(doc):
    verts = doc.get("vertices") or []
    if not isinstance(verts, list):
        raise ParseError("'vertices' must be a list")
    arrows = []
    weights = {}
    for k, a in enumerate(doc.get("arrows") or []):
        where = f"arrow #{k + 1}"
        if not isinstance(a, dict):
            raise ParseError("arrow entries must be mappings", where)
        unknown = set(a) - _ARROW_KEYS
        if unknown:
            raise ParseError(f"unknown arrow fields {sorted(map(str, unknown))}", where)
        try:
            name, src, tgt = str(a["name"]), str(a["source"]), str(a["target"])
        except KeyError as exc:
            raise ParseError(f"missing field {exc.args[0]!r}", where) from None
        w = a.get("weight", [1])
        if isinstance(w, int):
            w = [w]
        if not isinstance(w, list) or not all(isinstance(x, int) for x in w):
            raise ParseError("weight must be a list of integers", where)
        arrows.append((name, src, tgt))
        weights[name] = tuple(w)
    try:
        q = Quiver(tuple(str(v) for v in verts), tuple(arrows))
    except QuiverError:
        raise
    return q, weights


def parse_quiver(text):
    """The quiver described by a presentation document."""
    return _quiver_from(_load(text))[0]


def parse_presentation(text):
    doc = _load(text)
    q, weights = _quiver_from(doc)
    rels = []
    for k, r in enumerate(doc.get("relations") or []):
        try:
            rels.append(parse_element(q, str(r)))
        except ParseError as exc:
            raise ParseError(f"relation #{k + 1}: {exc}") from None
    return Presentation(q, rels, weights)


def _scalar(s):
    return s if _PLAIN.fullmatch(s) else json.dumps(s)


def format_presentation(p):
    q = p.quiver
    lines = ["vertices: [" + ", ".join(_scalar(v) for v in q.vertices) + "]"]
    if q.arrows:
        lines.append("arrows:")
        for a in q.arrows:
            w = ", ".join(str(x) for x in p.weights[a.name])
            lines.append(f"- {{name: {_scalar(a.name)}, source: {_scalar(a.source)}, "
                         f"target: {_scalar(a.target)}, weight: [{w}]}}")
    else:
        lines.append("arrows: []")
    if p.relations:
        lines.append("relations:")
        for r in p.relations:
            lines.append(f"- {json.dumps(format_element(r))}")
    else:
        lines.append("relations: []")
    return "\n".join(lines) + "\n"


def load_presentation(path):
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def save_presentation(p, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_presentation(p))
