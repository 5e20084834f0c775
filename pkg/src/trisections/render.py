"""Deterministic SVG output for diagrams.

The polygon is drawn as a regular n-gon.  Crossing positions keep their
stored side parameters, so slots come out evenly spaced along each side.
Every chord between consecutive crossings is a circular arc bowing toward
the polygon centre; alpha curves are red, beta blue, gamma green.  Output
is byte-identical across runs for the same diagram.
"""

import math
from fractions import Fraction

from trisections.diagram import (
    ArcedRelativeDiagram,
    DoublyPointedDiagram,
)
from trisections.schema.curves import build_complex

__all__ = ["render_svg", "render_to_file", "FAMILY_COLORS"]

FAMILY_COLORS = {
    "alpha": "#c62828",
    "beta": "#1565c0",
    "gamma": "#2e7d32",
}

_FAMILIES = ("alpha", "beta", "gamma")


def _base_of(d):
    if isinstance(d, (ArcedRelativeDiagram, DoublyPointedDiagram)):
        return d.base
    return d


def _systems_of(d):
    base = _base_of(d)
    systems = [(n, base.family(n)) for n in _FAMILIES]
    if isinstance(d, ArcedRelativeDiagram):
        systems += [("arcs_" + n, m) for n, m in zip(_FAMILIES, d.arc_families)]
    return base, systems


def _fmt(x: float) -> str:
    s = "%.2f" % x
    return "0.00" if s == "-0.00" else s


class _Layout:
    def __init__(self, n: int, size: int):
        self.size = size
        self.cx = size / 2.0
        self.cy = size / 2.0
        self.r = size * 0.42
        self.verts = []
        for p in range(n):
            ang = 2.0 * math.pi * p / n - math.pi / 2.0
            self.verts.append((self.cx + self.r * math.cos(ang),
                               self.cy + self.r * math.sin(ang)))
        self.n = n

    def vertex(self, p: int):
        return self.verts[p % self.n]

    def boundary_point(self, u: Fraction):
        p = int(u)
        f = float(u - p)
        x1, y1 = self.vertex(p)
        x2, y2 = self.vertex(p + 1)
        return (x1 + f * (x2 - x1), y1 + f * (y2 - y1))


def _arc_path(p1, p2, centre):
    """SVG path for a circular arc from p1 to p2 bowing toward `centre`."""
    x1, y1 = p1
    x2, y2 = p2
    mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
    dx, dy = x2 - x1, y2 - y1
    length = math.hypot(dx, dy)
    if length < 1e-9:
        return "M %s %s" % (_fmt(x1), _fmt(y1))
    nx, ny = centre[0] - mx, centre[1] - my
    nlen = math.hypot(nx, ny)
    if nlen < 1e-9:
        # chord through the centre: bow toward a fixed perpendicular
        nx, ny = -dy / length, dx / length
    else:
        nx, ny = nx / nlen, ny / nlen
    h = min(length / 4.0, nlen if nlen > 1e-9 else length / 4.0)
    if h < 1e-6:
        return "M %s %s L %s %s" % (_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2))
    r = (length * length / 4.0 + h * h) / (2.0 * h)
    apex = (mx + h * nx, my + h * ny)
    centre_o = (mx - (r - h) * nx, my - (r - h) * ny)
    cross = ((x1 - centre_o[0]) * (apex[1] - centre_o[1])
             - (y1 - centre_o[1]) * (apex[0] - centre_o[0]))
    sweep = 1 if cross > 0 else 0
    return "M %s %s A %s %s 0 0 %d %s %s" % (
        _fmt(x1), _fmt(y1), _fmt(r), _fmt(r), sweep, _fmt(x2), _fmt(y2))


def render_svg(d, size: int = 640) -> str:
    base, systems = _systems_of(d)
    cx = build_complex(base.surface, *systems)
    word = base.surface.sides
    layout = _Layout(len(word), size)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           'width="%d" height="%d" viewBox="0 0 %d %d">'
           % (size, size, size, size),
           '<rect width="%d" height="%d" fill="#ffffff"/>' % (size, size)]

    # polygon outline: boundary sides dashed, paired sides solid
    for p, (lab, sgn) in enumerate(word):
        x1, y1 = layout.vertex(p)
        x2, y2 = layout.vertex(p + 1)
        dashed = lab in base.surface.boundary_labels
        out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#444444" '
                   'stroke-width="1.5"%s/>'
                   % (_fmt(x1), _fmt(y1), _fmt(x2), _fmt(y2),
                      ' stroke-dasharray="6 4"' if dashed else ""))
        # side label outside the midpoint
        mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
        ox = mx + (mx - layout.cx) * 0.09
        oy = my + (my - layout.cy) * 0.09
        text = lab if sgn > 0 else "-" + lab
        out.append('<text x="%s" y="%s" font-size="%d" text-anchor="middle" '
                   'fill="#444444">%s</text>'
                   % (_fmt(ox), _fmt(oy), max(10, size // 55), text))

    # anchors for the layout self-check
    anchors = []

    centre = (layout.cx, layout.cy)
    for si, (name, m) in enumerate(systems):
        fam = name.split("_")[-1]
        color = FAMILY_COLORS[fam]
        dash = ' stroke-dasharray="4 3"' if name.startswith("arcs_") else ""
        for comp in cx.systems[si].components:
            segs = []
            for _, u1, u2, _ in cx.chords_of(comp):
                p1 = layout.boundary_point(u1)
                p2 = layout.boundary_point(u2)
                anchors.append(p1)
                anchors.append(p2)
                segs.append(_arc_path(p1, p2, centre))
            if not segs:
                continue
            out.append('<path class="curve %s" d="%s" fill="none" '
                       'stroke="%s" stroke-width="1.8"%s/>'
                       % (name, " ".join(segs), color, dash))

    if isinstance(d, DoublyPointedDiagram):
        for c in sorted(d.points):
            x, y = layout.vertex(c)
            out.append('<circle class="basepoint" cx="%s" cy="%s" r="4" '
                       'fill="#000000"/>' % (_fmt(x), _fmt(y)))

    for w in _overlap_warnings(anchors):
        out.append("<!-- overlap-warning: %s -->" % w)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _overlap_warnings(anchors, tol: float = 0.75):
    """Distinct chord endpoints closer than `tol` pixels, as messages."""
    # endpoints shared by consecutive chords of one strand are expected
    # to coincide only when they are literally the same point
    seen = {}
    for (x, y) in anchors:
        key = (round(x / tol), round(y / tol))
        seen.setdefault(key, []).append((x, y))
    msgs = []
    for key in sorted(seen):
        pts = sorted(set(seen[key]))
        if len(pts) > 1:
            msgs.append("anchors collide near (%s, %s)"
                        % (_fmt(pts[0][0]), _fmt(pts[0][1])))
    return msgs


def render_to_file(d, path: str, size: int = 640):
    import os
    import tempfile

    text = render_svg(d, size=size)
    dirname = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=dirname, suffix=".svg.part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return text
