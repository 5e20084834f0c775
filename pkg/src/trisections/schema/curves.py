"""Multicurves and arcs on a polygon schema.

Curves are stored by their crossing data: each component is a cyclic (or
open) sequence of nodes, a node being a point on a side at an exact
rational parameter together with the crossing direction.  Consecutive
nodes are joined by chords inside the polygon; embeddedness is endpoint
interleaving, so everything stays integer-exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from trisections.schema.cx import (
    BOUNDARY,
    PAIRED,
    Complex,
    Component,
    Node,
    SurfaceError,
    System,
)
from trisections.schema.polygon import PolygonSchema, make_standard_schema

__all__ = [
    "Multicurve",
    "EmbeddedArc",
    "build_complex",
    "normalize",
    "canonical_word",
    "component_key",
    "multicurve_key",
    "homology_class",
    "torus_curve",
]


@dataclass(frozen=True)
class Multicurve:
    """A disjointly embedded collection of closed curves and boundary arcs."""

    components: tuple[Component, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def words(self):
        return tuple(c.word() for c in self.components)

    def closed_components(self):
        return tuple(c for c in self.components if c.closed)

    def arcs(self):
        return tuple(c for c in self.components if not c.closed)

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class EmbeddedArc:
    """A slide guide: an arc between interior points of two chords.

    nodes: the sides crossed along the way (may be empty); start / end:
    (component index, chord index) into the multicurve the guide is used
    with.  The endpoints themselves sit on the named chords, not on sides.
    """

    nodes: tuple[Node, ...] = ()
    start: tuple[int, int] = (0, 0)
    end: tuple[int, int] = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        for n in self.nodes:
            if n.d == 0:
                raise SurfaceError("slide guide nodes must be crossings")


def build_complex(schema: PolygonSchema, *systems) -> Complex:
    """Complex carrying the given (name, Multicurve) pairs, validated."""
    cx = schema.complex()
    for name, m in systems:
        cx.systems.append(System(name, list(m.components)))
    cx.validate()
    return cx


# ---------------------------------------------------------------------------
# normalization


def _removable_pair(cx: Complex, si: int):
    """Locate an innermost side-bigon: a component entering and leaving
    through the same side with no other node between the two parameters."""
    all_params = {}
    for sys in cx.systems:
        for comp in sys.components:
            for n in comp.nodes:
                all_params.setdefault(n.label, []).append(n.t)
    for ki, comp in enumerate(cx.systems[si].components):
        nodes = comp.nodes
        m = len(nodes)
        if comp.closed and m <= 2:
            continue  # trivial circles keep their two crossings
        idxs = range(m) if comp.closed else range(m - 1)
        for i in idxs:
            n1, n2 = nodes[i], nodes[(i + 1) % m]
            if n1.label != n2.label or n1.d == 0 or n1.d != -n2.d:
                continue
            lo, hi = sorted((n1.t, n2.t))
            blocked = any(lo < t < hi for t in all_params[n1.label])
            if not blocked:
                return ki, i
    return None


def normalize(schema: PolygonSchema, m: Multicurve) -> Multicurve:
    """Remove side-bigons (cross a side and come straight back) until none
    remain.  Idempotent; preserves component count, homology classes and
    arc endpoints."""
    cx = build_complex(schema, ("m", m))
    while True:
        hit = _removable_pair(cx, 0)
        if hit is None:
            break
        ki, i = hit
        comp = cx.systems[0].components[ki]
        mlen = len(comp.nodes)
        drop = {i, (i + 1) % mlen}
        nodes = tuple(n for j, n in enumerate(comp.nodes) if j not in drop)
        cx.systems[0].components[ki] = Component(comp.closed, nodes)
        cx.repark()
        cx.validate()
    return Multicurve(tuple(cx.systems[0].components))


# ---------------------------------------------------------------------------
# canonical forms


def _flip(word):
    return tuple((l, -d) for l, d in reversed(word))


def canonical_word(comp: Component):
    """Canonical crossing word for isotopy-equality of normalized curves:
    least rotation over both traversal directions (open: least of the two
    directions)."""
    w = comp.word()
    if not comp.closed:
        return min(w, _flip(w))
    cands = []
    for word in (w, _flip(w)):
        n = len(word)
        cands.extend(tuple(word[(r + i) % n] for i in range(n))
                     for r in range(n))
    return min(cands)


def component_key(comp: Component):
    return (comp.closed, canonical_word(comp))


def multicurve_key(m: Multicurve):
    return tuple(sorted(component_key(c) for c in m.components))


# ---------------------------------------------------------------------------
# homology


def homology_class(schema: PolygonSchema, comp: Component):
    """Class of a closed component in H_1, basis dual to the handle sides.

    Coordinate 2i counts signed crossings of side b_{i+1}, coordinate
    2i+1 signed crossings of side a_{i+1}; with this convention the
    torus_curve(p, q) has class (p, q).
    """
    if not comp.closed:
        raise SurfaceError("homology class needs a closed component")
    g = schema.genus
    counts = {}
    for n in comp.nodes:
        counts[n.label] = counts.get(n.label, 0) + n.d
    out = []
    for i in range(1, g + 1):
        out.append(counts.get("b%d" % i, 0))
        out.append(-counts.get("a%d" % i, 0))
    return tuple(out)


# ---------------------------------------------------------------------------
# torus curves


def torus_curve(p: int, q: int) -> Multicurve:
    """The (p, q) multicurve on the standard torus schema: gcd(p, q)
    parallel copies of the primitive slope, as straight lines on the
    square.  Positive p runs rightward (crossing side b1), positive q
    upward (crossing side a1)."""
    if p == 0 and q == 0:
        raise SurfaceError("the (0, 0) slope is not a curve")
    c = gcd(abs(p), abs(q))
    pp, qq = p // c, q // c
    # generic start keeps lines off the corners; offset copies stay parallel
    h = Fraction(1, 7 * c * (abs(pp) + abs(qq)))
    comps = []
    for j in range(c):
        sx = Fraction(1, 3) - qq * (j + 1) * h
        sy = Fraction(1, 5) + pp * (j + 1) * h
        events = []
        # vertical lattice lines crossed: nodes on side b1
        for k in (range(1, pp + 1) if pp > 0 else range(0, pp, -1)):
            t = Fraction(k - sx, pp)
            y = (sy + t * qq) % 1
            events.append((t, Node("b1", y, 1 if pp > 0 else -1)))
        # horizontal lattice lines crossed: nodes on side a1
        for k in (range(1, qq + 1) if qq > 0 else range(0, qq, -1)):
            t = Fraction(k - sy, qq)
            x = (sx + t * pp) % 1
            events.append((t, Node("a1", x, -1 if qq > 0 else 1)))
        events.sort(key=lambda e: e[0])
        comps.append(Component(True, tuple(n for _, n in events)))
    m = Multicurve(tuple(comps))
    build_complex(make_standard_schema(1, 0), ("m", m))  # validates
    return m
