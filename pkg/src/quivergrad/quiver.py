"""Quivers, paths and elements of the free path algebra.

Paths are read left to right: ``p * q`` is defined iff ``p.target == q.source``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .errors import ParseError, QuiverError

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\**")
VERTEX_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*")


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Path(NamedTuple):
    source: str
    target: str
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    @property
    def is_lazy(self):
        return not self.arrows

    def key(self):
        """Ordering key: length first, then arrow names lexicographically."""
        return (len(self.arrows), self.arrows, self.source, self.target)

    def concat(self, other):
        """``self`` followed by ``other``, or ``None`` when they do not compose."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def __str__(self):
        return ".".join(self.arrows) if self.arrows else self.source


def lazy(v):
    return Path(v, v, ())


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()
    _by_name: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        arrows = tuple(Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)
        if len(set(verts)) != len(verts):
            dup = next(v for v in verts if verts.count(v) > 1)
            raise QuiverError(f"duplicate vertex {dup!r}")
        for v in verts:
            if not VERTEX_RE.fullmatch(v):
                raise QuiverError(f"bad vertex name {v!r}")
        by_name = {}
        for a in arrows:
            if not NAME_RE.fullmatch(a.name):
                raise QuiverError(f"bad arrow name {a.name!r}")
            if a.name in by_name:
                raise QuiverError(f"duplicate arrow {a.name!r}")
            if a.name in verts:
                raise QuiverError(f"arrow {a.name!r} shares a name with a vertex")
            for end in (a.source, a.target):
                if end not in verts:
                    raise QuiverError(f"arrow {a.name!r} has unknown endpoint {end!r}")
            by_name[a.name] = a
        object.__setattr__(self, "_by_name", by_name)

    def arrow(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name):
        return name in self._by_name

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v):
        return [a for a in self.arrows if a.target == v]

    def path(self, names):
        """The path through the named arrows; ``QuiverError`` if not composable."""
        names = tuple(names)
        if not names:
            raise QuiverError("empty arrow sequence; use lazy(v)")
        arrows = [self.arrow(n) for n in names]
        for x, y in zip(arrows, arrows[1:]):
            if x.target != y.source:
                raise QuiverError(f"arrows {x.name!r} and {y.name!r} do not compose")
        return Path(arrows[0].source, arrows[-1].target, names)

    def arrow_path(self, name):
        a = self.arrow(name)
        return Path(a.source, a.target, (name,))


def paths_between(q, i, j, d):
    """All length-``d`` paths from ``i`` to ``j``, ordered by arrow names."""
    if d < 0:
        raise ValueError("length must be nonnegative")
    if d == 0:
        return [lazy(i)] if i == j else []
    out = []
    frontier = [lazy(i)]
    for _ in range(d):
        nxt = []
        for p in frontier:
            for a in q.arrows_from(p.target):
                nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        frontier = nxt
    out = [p for p in frontier if p.target == j]
    out.sort(key=lambda p: p.arrows)
    return out


def all_paths(q, d):
    """All length-``d`` paths of ``q`` in (source, target, arrows) order."""
    out = []
    for i in q.vertices:
        for j in q.vertices:
            out.extend(paths_between(q, i, j, d))
    return out


class Element:
    """Finite rational combination of paths; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for p, c in items:
                c = Fraction(c)
                if c:
                    c = clean.get(p, 0) + c
                    if c:
                        clean[p] = c
                    else:
                        clean.pop(p, None)
        self.terms = clean

    @classmethod
    def of(cls, path, coef=1):
        return cls({path: coef})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            v = out.get(p, 0) + c
            if v:
                out[p] = v
            else:
                out.pop(p, None)
        e = Element()
        e.terms = out
        return e

    def __neg__(self):
        e = Element()
        e.terms = {p: -c for p, c in self.terms.items()}
        return e

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        e = Element()
        e.terms = {p: c * v for p, v in self.terms.items()} if c else {}
        return e

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def items(self):
        """Terms sorted by path length, then arrow names."""
        return sorted(self.terms.items(), key=lambda t: t[0].key())

    def paths(self):
        return [p for p, _ in self.items()]

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def multiply(x, y):
    """Bilinear extension of path concatenation."""
    out = {}
    by_source = {}
    for q, c in y.terms.items():
        by_source.setdefault(q.source, []).append((q, c))
    for p, a in x.terms.items():
        for q, b in by_source.get(p.target, ()):
            r = Path(p.source, q.target, p.arrows + q.arrows)
            v = out.get(r, 0) + a * b
            if v:
                out[r] = v
            else:
                out.pop(r, None)
    e = Element()
    e.terms = out
    return e


def unit(q):
    return Element({lazy(v): 1 for v in q.vertices})


def _format_coef(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_element(x):
    """Canonical text: ``a* - a.a* + 3/2*a*.a``; zero prints as ``0``."""
    if not x.terms:
        return "0"
    parts = []
    for i, (p, c) in enumerate(x.items()):
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = str(p) if mag == 1 else f"{_format_coef(mag)}*{p}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_COEF_RE = re.compile(r"(\d+(?:/\d+)?|\d*\.\d+)\s*\*")


def _parse_coef(text):
    if "/" in text:
        n, d = text.split("/")
        if int(d) == 0:
            raise ZeroDivisionError
        return Fraction(int(n), int(d))
    return Fraction(text)


def parse_element(q, text):
    """Parse ``3/2*a.b* - a*.a + e``; vertex names denote lazy paths."""
    pos = 0
    n = len(text)
    terms = []

    def skip(i):
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip(pos)
    if pos == n:
        raise ParseError("empty element", 0)
    first = True
    while pos < n:
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip(pos + 1)
        elif not first:
            raise ParseError("expected '+' or '-'", pos)
        first = False
        coef = Fraction(1)
        m = _COEF_RE.match(text, pos)
        if m:
            try:
                coef = _parse_coef(m.group(1))
            except ZeroDivisionError:
                raise ParseError("zero denominator", pos) from None
            pos = skip(m.end())
        names = []
        m = VERTEX_RE.match(text, pos)
        if m and m.group(0) in q.vertices and not NAME_RE.match(text, pos):
            path = lazy(m.group(0))
            terms.append((path, sign * coef))
            pos = skip(m.end())
            continue
        while True:
            m = NAME_RE.match(text, pos)
            if not m:
                raise ParseError("expected an arrow or vertex name", pos)
            names.append((m.group(0), pos))
            pos = skip(m.end())
            if pos < n and text[pos] == ".":
                pos = skip(pos + 1)
                continue
            break
        if len(names) == 1 and names[0][0] in q.vertices:
            path = lazy(names[0][0])
        else:
            for name, at in names:
                if not q.has_arrow(name):
                    raise ParseError(f"unknown arrow {name!r}", at)
            try:
                path = q.path([nm for nm, _ in names])
            except QuiverError as exc:
                raise ParseError(str(exc), names[0][1]) from None
        terms.append((path, sign * coef))
    return Element(terms)
