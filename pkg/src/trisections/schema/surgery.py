"""Cutting, compressing, band sums and connected sums of schemas.

Operations that change the surface run on the mutable complex, then the
result is rewritten into a standard polygon by the classifier, which
carries every curve system through the rewriting.
"""

from dataclasses import dataclass
from fractions import Fraction

from trisections.schema.classify import ClassifyError, classify
from trisections.schema.curves import EmbeddedArc, Multicurve, build_complex
from trisections.schema.cx import (
    BOUNDARY,
    Complex,
    Component,
    Node,
    SurfaceError,
    System,
)
from trisections.schema.polygon import PolygonSchema

__all__ = [
    "CutPiece",
    "cut_components",
    "compress_along",
    "band_sum",
    "connect_sum",
    "cap_boundary",
]


@dataclass(frozen=True)
class CutPiece:
    euler_characteristic: int
    genus: int
    boundary_count: int


def _pieces(cx: Complex):
    """Split a possibly disconnected complex into connected sub-complexes."""
    occ = cx.occurrences()
    adj = {f: set() for f in cx.faces}
    for lab, k in cx.kind.items():
        if k != BOUNDARY:
            a, b = occ[lab]
            adj[a.face].add(b.face)
            adj[b.face].add(a.face)
    groups = []
    seen = set()
    for f in cx.faces:
        if f in seen:
            continue
        grp, stack = {f}, [f]
        seen.add(f)
        while stack:
            for g in adj[stack.pop()]:
                if g not in grp:
                    grp.add(g)
                    seen.add(g)
                    stack.append(g)
        groups.append(grp)
    out = []
    for grp in groups:
        faces = {f: list(cx.faces[f]) for f in grp}
        labs = {l for w in faces.values() for l, _ in w}
        kind = {l: k for l, k in cx.kind.items() if l in labs}
        systems = []
        for sys in cx.systems:
            comps = []
            for comp in sys.components:
                homes = {o.face for o in (cx.arrive_occ(n)
                                          for n in comp.nodes)}
                if homes & grp:
                    comps.append(comp)
            systems.append(System(sys.name, comps))
        out.append(Complex(faces, kind, systems))
    return out


def cut_components(schema: PolygonSchema, m: Multicurve):
    """Cut along every closed component of m; returns (piece count,
    tuple of CutPiece descriptions in a deterministic order)."""
    cx = build_complex(schema, ("m", m))
    targets = [(0, ki) for ki, c in enumerate(m.components) if c.closed]
    if not targets:
        g, b = cx.genus_and_boundary()
        return 1, (CutPiece(2 - 2 * g - b, g, b),)
    cx.cut_along(targets)
    descs = []
    for piece in _pieces(cx):
        g, b = piece.genus_and_boundary()
        descs.append(CutPiece(2 - 2 * g - b, g, b))
    descs.sort(key=lambda p: (p.genus, p.boundary_count))
    return len(descs), tuple(descs)


def _standardize(cx: Complex):
    """Classify to the standard polygon; returns (schema, boundary_map)."""
    info = classify(cx)
    (face, word), = cx.faces.items()
    blabels = tuple(info["boundary"])
    return PolygonSchema(tuple(word), blabels), info["boundary_map"]


def compress_along(schema: PolygonSchema, c: Component, *carried):
    """Surger the surface along a closed curve: cut and fill both sides
    with disks.  Returns (schema, tuple of carried multicurves,
    boundary_map).  The curve must be non-separating and disjoint from
    every carried curve."""
    if not c.closed:
        raise SurfaceError("can only compress along a closed curve")
    cx = schema.complex()
    for i, m in enumerate(carried):
        cx.systems.append(System("carry%d" % i, list(m.components)))
    cx.systems.append(System("cut", [c]))
    cx.validate()
    copies = cx.cut_along([(len(carried), 0)])
    la, lb = copies[(0, 0)]
    cx.cap_circle(la)
    cx.cap_circle(lb)
    cx.systems.pop()
    if not cx.is_connected():
        raise SurfaceError("curve separates the surface; genus would not drop")
    cx.to_single_face()
    new_schema, bmap = _standardize(cx)
    if new_schema.genus != schema.genus - 1 \
            or new_schema.boundary_count != schema.boundary_count:
        raise SurfaceError("compression changed the surface unexpectedly")
    out = tuple(Multicurve(tuple(sys.components)) for sys in cx.systems)
    return new_schema, out, bmap


def cap_boundary(schema: PolygonSchema, label: str, *carried):
    """Glue a disk onto the boundary circle of `label`.  Returns
    (schema, tuple of carried multicurves, boundary_map)."""
    if label not in schema.boundary_labels:
        raise SurfaceError("%r is not a boundary label" % label)
    cx = schema.complex()
    for i, m in enumerate(carried):
        cx.systems.append(System("carry%d" % i, list(m.components)))
    cx.validate()
    cx.cap_circle(label)
    cx.to_single_face()
    new_schema, bmap = _standardize(cx)
    if new_schema.genus != schema.genus \
            or new_schema.boundary_count != schema.boundary_count - 1:
        raise SurfaceError("capping changed the surface unexpectedly")
    out = tuple(Multicurve(tuple(sys.components)) for sys in cx.systems)
    return new_schema, out, bmap


# ---------------------------------------------------------------------------
# band sum (handle slide primitive)


def band_sum(schema: PolygonSchema, m: Multicurve, i: int, j: int,
             w: EmbeddedArc) -> Multicurve:
    """Replace component i by its band sum with a parallel copy of
    component j, guided by the arc w.  The push-off side and the copy's
    direction are chosen so the result embeds disjointly; the new class
    is [i] +/- [j]."""
    if i == j:
        raise SurfaceError("cannot band-sum a component with itself")
    if w.start[0] != i or w.end[0] != j:
        raise SurfaceError("slide guide endpoints disagree with i and j")
    comp_i = m.components[i]
    comp_j = m.components[j]
    if not comp_j.closed:
        raise SurfaceError("can only slide over a closed component")
    ci, cj = w.start[1], w.end[1]
    build_complex(schema, ("m", m))
    ts: dict[str, list[Fraction]] = {}
    for comp in m.components:
        for n in comp.nodes:
            ts.setdefault(n.label, []).append(n.t)
    for n in w.nodes:
        ts.setdefault(n.label, []).append(n.t)
    gap = Fraction(1, 4)
    for vals in ts.values():
        vals = [Fraction(0)] + sorted(vals) + [Fraction(1)]
        for a, b in zip(vals, vals[1:]):
            if b - a > 0:
                gap = min(gap, b - a)
    nj = len(comp_j.nodes)
    jcycle = [comp_j.nodes[(cj + 1 + r) % nj] for r in range(nj)]
    for sigma in (1, -1):
        for rev in (False, True):
            d1 = sigma * gap / 4
            d2 = sigma * gap / 8
            out_w = [Node(n.label, n.t + d2, n.d) for n in w.nodes]
            back_w = [Node(n.label, n.t - d2, -n.d)
                      for n in reversed(w.nodes)]
            par = [Node(n.label, n.t + d1, n.d) for n in jcycle]
            if rev:
                par = [Node(n.label, n.t + d1, -n.d)
                       for n in reversed(jcycle)]
            mid = out_w + par + back_w
            old = list(comp_i.nodes)
            new_nodes = old[:ci + 1] + mid + old[ci + 1:]
            try:
                cand = Component(comp_i.closed, tuple(new_nodes))
                comps = list(m.components)
                comps[i] = cand
                res = Multicurve(tuple(comps))
                build_complex(schema, ("m", res))
            except SurfaceError:
                continue
            return res
    raise SurfaceError("slide guide crosses the multicurve")


# ---------------------------------------------------------------------------
# connected sum


def connect_sum(s1: PolygonSchema, ms1, s2: PolygonSchema, ms2):
    """Connected sum away from all curves: concatenate the polygons.

    ms1 / ms2 are sequences of Multicurve; returns (schema, curves) with
    the second summand's sides and curves relabeled out of the way.
    Standard closed summands yield the standard schema of the sum.
    """
    mapping = {}
    g1, b1 = s1.genus, s1.boundary_count
    if s1.is_standard() and s2.is_standard():
        for idx in range(1, s2.genus + 1):
            mapping["a%d" % idx] = "a%d" % (g1 + idx)
            mapping["b%d" % idx] = "b%d" % (g1 + idx)
        for idx in range(1, s2.boundary_count + 1):
            mapping["e%d" % idx] = "e%d" % (b1 + idx)
            mapping["d%d" % idx] = "d%d" % (b1 + idx)
    else:
        used = {l for l, _ in s1.sides}
        for l, _ in s2.sides:
            if l in mapping:
                continue
            cand, r = l, 2
            while cand in used:
                cand = "%s_%d" % (l, r)
                r += 1
            mapping[l] = cand
            used.add(cand)
    word2 = tuple((mapping.get(l, l), s) for l, s in s2.sides)
    word1 = tuple(s1.sides)
    if s1.genus == 0 and s1.boundary_count == 0:
        combined = word2  # summing with the sphere: drop its trivial bigon
    elif s2.genus == 0 and s2.boundary_count == 0:
        combined = word1
    else:
        combined = word1 + word2
    blabels = tuple(s1.boundary_labels) + tuple(
        mapping.get(l, l) for l in s2.boundary_labels)
    out = PolygonSchema(combined, blabels)
    if out.euler_characteristic != s1.euler_characteristic \
            + s2.euler_characteristic - 2:
        raise SurfaceError("connected sum bookkeeping failed")

    def remap(mc: Multicurve) -> Multicurve:
        comps = []
        for c in mc.components:
            comps.append(Component(c.closed, tuple(
                Node(mapping.get(n.label, n.label), n.t, n.d)
                for n in c.nodes)))
        return Multicurve(tuple(comps))

    curves = tuple(ms1) + tuple(remap(mc) for mc in ms2)
    for mc in curves:
        build_complex(out, ("m", mc))
    return out, curves
