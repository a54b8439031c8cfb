"""Plain-text curve files.

A file is a ``key: value`` header followed by components.  Each component
opens with a ``component: <kind>`` line, may give a ``translation: a b`` line,
and then lists one vertex per line as two exact fractions.  Blank lines
separate components; ``#`` starts a comment.  Example::

    kind: companion
    name: -T2,3
    model: cylinder

    component: wrapping
    -1/2 -1
    1/4 -1
    ...

Kinds are ``wrapping`` (periodic with translation (1, 0) unless given),
``periodic`` (translation required) and ``closed``.  Pattern files carry
``w:`` and ``z:`` header lines and a single component, by default periodic
with translation (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .exactgeom import Rat2
from .torus import CoverLoop, CylinderCurve, MarkedTorus, TorusCurve

HEADER_KEYS = {"kind", "name", "model", "w", "z", "genus", "orient"}
COMPONENT_KINDS = {"wrapping", "periodic", "closed"}


@dataclass
class CurveFile:
    header: dict[str, str] = field(default_factory=dict)
    components: list[CoverLoop] = field(default_factory=list)
    source: str = "<string>"

    @property
    def kind(self) -> str:
        return self.header.get("kind", "companion")

    @property
    def name(self) -> str:
        return self.header.get("name", Path(self.source).stem)

    def torus(self) -> MarkedTorus:
        if "w" in self.header or "z" in self.header:
            defaults = MarkedTorus()
            w = _point(self.header["w"], self.source, 0) if "w" in self.header else defaults.w
            z = _point(self.header["z"], self.source, 0) if "z" in self.header else defaults.z
            return MarkedTorus(w, z)
        return MarkedTorus()


def _fraction(tok: str, source: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{source}:{line}: bad number {tok!r}") from exc


def _point(text: str, source: str, line: int) -> Rat2:
    parts = text.split()
    if len(parts) != 2:
        raise ParseError(f"{source}:{line}: expected two numbers, got {text!r}")
    return Rat2(_fraction(parts[0], source, line), _fraction(parts[1], source, line))


def _finish(kind, translation, verts, start_line, source, default_translation) -> CoverLoop:
    if not verts:
        raise ParseError(f"{source}:{start_line}: component has no vertices")
    try:
        if kind == "closed":
            if translation is not None and translation != Rat2(0, 0):
                raise ParseError(f"{source}:{start_line}: closed components take no translation")
            return CoverLoop(verts)
        if translation is None:
            if kind == "periodic" and default_translation is None:
                raise ParseError(f"{source}:{start_line}: periodic component needs a translation")
            translation = Rat2(1, 0) if kind == "wrapping" else default_translation
        return CoverLoop(verts, translation)
    except ValueError as exc:
        raise ParseError(f"{source}:{start_line}: {exc}") from exc


def parse_curve_text(text: str, source: str = "<string>") -> CurveFile:
    out = CurveFile(source=source)
    comp_kind = None
    comp_line = 0
    translation = None
    verts: list[Rat2] = []
    pending: list[tuple] = []

    def close():
        nonlocal comp_kind, translation, verts
        if comp_kind is not None:
            pending.append((comp_kind, translation, verts, comp_line))
        comp_kind, translation, verts = None, None, []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if comp_kind is not None and verts:
                close()
            continue
        if ":" in line:
            key, value = (s.strip() for s in line.split(":", 1))
            key = key.lower()
            if key == "component":
                close()
                if value not in COMPONENT_KINDS:
                    raise ParseError(f"{source}:{lineno}: unknown component kind {value!r}")
                comp_kind, comp_line = value, lineno
            elif key == "translation":
                if comp_kind is None:
                    raise ParseError(f"{source}:{lineno}: translation outside a component")
                translation = _point(value, source, lineno)
            elif key in HEADER_KEYS:
                if comp_kind is not None or pending:
                    raise ParseError(f"{source}:{lineno}: header key {key!r} after the first component")
                out.header[key] = value
            else:
                raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
            continue
        if comp_kind is None:
            raise ParseError(f"{source}:{lineno}: vertex outside a component")
        verts.append(_point(line, source, lineno))
    close()

    default_translation = Rat2(0, 1) if out.kind == "pattern" else None
    for kind, tr, vs, ln in pending:
        out.components.append(_finish(kind, tr, vs, ln, source, default_translation))
    if out.kind not in ("companion", "pattern"):
        raise ParseError(f"{source}:1: kind must be companion or pattern")
    return out


def read_curve_file(path: str | Path) -> CurveFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return parse_curve_text(text, str(path))


def _fmt(q: Fraction) -> str:
    return str(q)


def dump_components(components, header: dict[str, str]) -> str:
    lines = [f"{k}: {v}" for k, v in header.items()]
    for c in components:
        lines.append("")
        if c.closed:
            lines.append("component: closed")
        elif c.translation == Rat2(1, 0):
            lines.append("component: wrapping")
        else:
            lines.append("component: periodic")
            lines.append(f"translation: {_fmt(c.translation.x)} {_fmt(c.translation.y)}")
        lines.extend(f"{_fmt(p.x)} {_fmt(p.y)}" for p in c.vertices)
    return "\n".join(lines) + "\n"


def dump_companion(companion, model: str = "cylinder") -> str:
    curve: CylinderCurve | TorusCurve = companion.cylinder if model == "cylinder" else companion.torus
    return dump_components(curve.components, {"kind": "companion", "name": companion.name, "model": model})


def dump_pattern(pattern) -> str:
    t = pattern.torus
    header = {
        "kind": "pattern",
        "name": pattern.name,
        "w": f"{_fmt(t.w.x)} {_fmt(t.w.y)}",
        "z": f"{_fmt(t.z.x)} {_fmt(t.z.y)}",
    }
    return dump_components([pattern.beta], header)
