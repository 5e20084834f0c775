"""The rewriting calculus on diagrams: handle slides, stabilization and
destabilization, gluing of arced relative diagrams, and capping.

Every move returns a fresh diagram; nothing is mutated.  Gluing and
destabilization go through the surface classifier, so their outputs are
always on a standard polygon schema.
"""

from dataclasses import dataclass, replace

from trisections import invariants
from trisections.diagram import (
    ArcedRelativeDiagram,
    RelativeTrisectionDiagram,
    RelParams,
    TriParams,
    TrisectionDiagram,
    normalize_diagram,
    _parallel,
)
from trisections.schema.curves import (
    EmbeddedArc,
    Multicurve,
    build_complex,
    normalize,
)
from trisections.schema.cx import (
    BOUNDARY,
    PAIRED,
    Complex,
    Component,
    Node,
    SurfaceError,
    System,
)
from trisections.schema.intersect import geometric_intersection
from trisections.schema.polygon import PolygonSchema
from trisections.schema.surgery import (
    _standardize,
    cap_boundary,
    compress_along,
    connect_sum,
)
from trisections.diagram import stabilization_diagram

__all__ = [
    "DestabTriple",
    "BoundaryMatching",
    "MoveError",
    "handle_slide",
    "stabilize",
    "find_destabilizations",
    "destabilize",
    "glue",
    "trivial_reglue_cap",
]

_FAMILY_NAMES = ("alpha", "beta", "gamma")
# parallel-pair slot s goes with parameter k_{s+1}
_PAIR_SLOTS = (("alpha", "beta"), ("beta", "gamma"), ("gamma", "alpha"))


class MoveError(Exception):
    pass


@dataclass(frozen=True)
class DestabTriple:
    """One curve per family forming a stabilization summand.

    indices: curve index within alpha, beta, gamma respectively.
    pair_slot: 0, 1 or 2 -- which cyclic pair is the parallel one
    ((alpha,beta), (beta,gamma) or (gamma,alpha)); the remaining family
    holds the once-intersecting curve.  surger: name of the parallel
    family whose curve is compressed (the other one is erased)."""
    indices: tuple
    pair_slot: int
    surger: str

    def __post_init__(self):
        if len(self.indices) != 3 or self.pair_slot not in (0, 1, 2):
            raise ValueError("malformed destabilization triple")
        if self.surger not in _PAIR_SLOTS[self.pair_slot]:
            raise ValueError("surgered family must belong to the parallel pair")

    @property
    def parallel_families(self):
        return _PAIR_SLOTS[self.pair_slot]

    @property
    def transverse_family(self):
        return next(n for n in _FAMILY_NAMES
                    if n not in _PAIR_SLOTS[self.pair_slot])

    @property
    def erased(self):
        a, b = _PAIR_SLOTS[self.pair_slot]
        return b if self.surger == a else a


@dataclass(frozen=True)
class BoundaryMatching:
    """Pairs of boundary labels to glue, first diagram's label first.
    Matched arc endpoints must sit at equal side parameters."""
    pairs: tuple


# ---------------------------------------------------------------------------
# slides


def handle_slide(d, family: str, i: int, j: int, w: EmbeddedArc):
    """Slide curve i over curve j of the named family along the guide w."""
    if family not in _FAMILY_NAMES:
        raise MoveError("cannot slide across families: %r" % family)
    m = d.family(family)
    try:
        new = band_sum_family(d.surface, m, i, j, w)
    except SurfaceError as e:
        raise MoveError(str(e))
    return replace(d, **{family: new})


def band_sum_family(schema, m, i, j, w):
    from trisections.schema.surgery import band_sum
    return normalize(schema, band_sum(schema, m, i, j, w))


# ---------------------------------------------------------------------------
# stabilization


def _rotated(schema: PolygonSchema, site: int) -> PolygonSchema:
    if site % len(schema.sides) == 0:
        return schema
    w = schema.sides
    site %= len(w)
    return PolygonSchema(w[site:] + w[:site], schema.boundary_labels)


def stabilize(d: TrisectionDiagram, stype: int,
              site: int = 0) -> TrisectionDiagram:
    """Connect-sum with the genus-1 summand of the given type at the
    polygon corner `site`."""
    piece = stabilization_diagram(stype)
    base = _rotated(d.surface, site)
    s, curves = connect_sum(base, d.families, piece.surface, piece.families)
    p = d.params
    return TrisectionDiagram(
        s,
        Multicurve(curves[0].components + curves[3].components),
        Multicurve(curves[1].components + curves[4].components),
        Multicurve(curves[2].components + curves[5].components),
        TriParams(p.g + 1, p.k1 + (stype == 1), p.k2 + (stype == 2),
                  p.k3 + (stype == 3)))


# ---------------------------------------------------------------------------
# destabilization


def _single(c: Component) -> Multicurve:
    return Multicurve((c,))


def find_destabilizations(d: TrisectionDiagram):
    """All triples (one curve per family) where one cyclic pair is
    parallel, the third curve meets each of the pair exactly once, and
    every other curve of the diagram avoids all three."""
    nd = normalize_diagram(d)
    s = nd.surface
    out = []
    for slot in (0, 1, 2):
        fa, fb = _PAIR_SLOTS[slot]
        fc = next(n for n in _FAMILY_NAMES if n not in (fa, fb))
        ma, mb, mc = nd.family(fa), nd.family(fb), nd.family(fc)
        for ia, ca in enumerate(ma.components):
            for ib, cb in enumerate(mb.components):
                if not _parallel(ca, cb):
                    continue
                if geometric_intersection(s, _single(ca), _single(cb)):
                    continue
                for ic, cc in enumerate(mc.components):
                    if geometric_intersection(s, _single(cc), _single(ca)) != 1:
                        continue
                    if geometric_intersection(s, _single(cc), _single(cb)) != 1:
                        continue
                    trip = {fa: ia, fb: ib, fc: ic}
                    if not _others_disjoint(nd, trip):
                        continue
                    out.append(DestabTriple(
                        (trip["alpha"], trip["beta"], trip["gamma"]),
                        slot, fa))
    return out


def _others_disjoint(d, trip) -> bool:
    s = d.surface
    chosen = [(n, trip[n]) for n in _FAMILY_NAMES]
    for name in _FAMILY_NAMES:
        for i, c in enumerate(d.family(name).components):
            if trip[name] == i:
                continue
            for cname, ci in chosen:
                cc = d.family(cname).components[ci]
                if name == cname:
                    continue  # same family is disjoint by embeddedness
                if geometric_intersection(s, _single(c), _single(cc)):
                    return False
    return True


def destabilize(d: TrisectionDiagram, t: DestabTriple) -> TrisectionDiagram:
    """Erase the once-intersecting curve and one of the parallel pair,
    then compress the surface along the survivor."""
    if not any(f.indices == t.indices and f.pair_slot == t.pair_slot
               for f in find_destabilizations(d)):
        raise MoveError("stale destabilization triple")
    nd = normalize_diagram(d)
    idx = dict(zip(_FAMILY_NAMES, t.indices))
    survivor = nd.family(t.surger).components[idx[t.surger]]
    carried = []
    for name in _FAMILY_NAMES:
        comps = list(nd.family(name).components)
        drop = {idx[name]} if name in (t.erased, t.transverse_family) else set()
        if name == t.surger:
            drop = {idx[name]}
        carried.append(Multicurve(tuple(
            c for i, c in enumerate(comps) if i not in drop)))
    try:
        s, out, _ = compress_along(nd.surface, survivor, *carried)
    except SurfaceError as e:
        raise MoveError(str(e))
    p = d.params
    ks = [p.k1, p.k2, p.k3]
    ks[t.pair_slot] -= 1
    new = TrisectionDiagram(s, out[0], out[1], out[2],
                            TriParams(p.g - 1, *ks))
    return normalize_diagram(new)


# ---------------------------------------------------------------------------
# gluing


def _fresh_map(labels, used):
    mapping = {}
    for l in labels:
        cand, r = l, 2
        while cand in used:
            cand = "%s_%d" % (l, r)
            r += 1
        mapping[l] = cand
        used.add(cand)
    return mapping


def _convert_families(arced: ArcedRelativeDiagram, remap, flip_edges):
    """Closed curves then arcs per family, with the second summand's
    labels remapped and edge parameters flipped where the glued side was
    inverted."""

    def conv(node):
        lab = remap.get(node.label, node.label)
        if node.label in flip_edges:
            return Node(lab, 1 - node.t, -node.d)
        return Node(lab, node.t, node.d)

    def conv_comp(c):
        return Component(c.closed, tuple(conv(n) for n in c.nodes))

    out = []
    for m in arced.base.families:
        out.append([conv_comp(c) for c in m.components])
    for m in arced.arc_families:
        out.append([conv_comp(c) for c in m.components])
    return out


def _fuse_arcs(arcs, faces_of, glued, face_sign):
    """Concatenate arcs across glued edges; matched endpoints share the
    edge label and parameter.  faces_of[i] is the polygon face arc i lives
    in; face_sign(label, face) is the occurrence sign used as the crossing
    direction when leaving that face.  Returns (closed, open)."""

    def key(n):
        return (n.label, n.t) if n.d == 0 and n.label in glued else None

    adj = {}
    for ai, c in enumerate(arcs):
        for end in (0, 1):
            k = key(c.nodes[0 if end == 0 else -1])
            if k:
                adj.setdefault(k, []).append((ai, end))
    for k, v in adj.items():
        if len(v) != 2:
            raise MoveError("arc endpoint at %s:%s has no partner" % k)

    used = set()
    closed_out, open_out = [], []

    def take(ai, end):
        c = arcs[ai] if end == 0 else arcs[ai].reversed()
        return list(c.nodes)

    def partner(k, ai, end):
        for x in adj[k]:
            if x != (ai, end):
                return x
        raise MoveError("degenerate arc matching at %s:%s" % k)

    def walk(ai, end):
        """Chain forward from arc ai entered at `end`; returns the node
        list and whether it closed up into a cycle."""
        used.add(ai)
        nodes = take(ai, end)
        first = (ai, end)
        cur, cend = ai, 1 - end
        while True:
            k = key(nodes[-1])
            if k is None:
                return nodes, False
            nxt, nend = partner(k, cur, cend)
            join = Node(k[0], k[1], face_sign(k[0], faces_of[cur]))
            if (nxt, nend) == first:
                return [join] + nodes[1:-1], True
            if nxt in used:
                raise MoveError("arc chain revisits a consumed arc")
            used.add(nxt)
            nodes = nodes[:-1] + [join] + take(nxt, nend)[1:]
            cur, cend = nxt, 1 - nend

    for ai, c in enumerate(arcs):
        if ai in used:
            continue
        free = [e for e in (0, 1) if key(c.nodes[0 if e == 0 else -1]) is None]
        if not free:
            continue
        nodes, _ = walk(ai, free[0])
        open_out.append(Component(False, tuple(nodes)))
    for ai in range(len(arcs)):
        if ai in used:
            continue
        nodes, cyc = walk(ai, 0)
        if not cyc:
            raise MoveError("arc chain failed to close")
        closed_out.append(Component(True, tuple(nodes)))
    return closed_out, open_out


def glue(a: ArcedRelativeDiagram, b: ArcedRelativeDiagram,
         m: BoundaryMatching):
    """Glue two arced diagrams along matched boundary circles.

    Matched arc endpoints (equal side parameter) join into longer arcs or
    closed curves.  The result is classified to a standard schema; it is
    a TrisectionDiagram when no boundary remains, otherwise an arced
    relative diagram."""
    sa, sb = a.base.surface, b.base.surface
    pa = {la for la, _ in m.pairs}
    pb = {lb for _, lb in m.pairs}
    if len(pa) != len(m.pairs) or len(pb) != len(m.pairs):
        raise MoveError("matching repeats a boundary label")
    if not pa <= set(sa.boundary_labels) or not pb <= set(sb.boundary_labels):
        raise MoveError("matching names a non-boundary label")
    occ_a = {l: s for l, s in sa.sides}
    occ_b = {l: s for l, s in sb.sides}
    to_a = {lb: la for la, lb in m.pairs}
    # a glued side keeps its intrinsic parameter; when both polygons list
    # it with the same sign, the second copy's nodes flip t -> 1-t
    flip = {lb for la, lb in m.pairs if occ_b[lb] == occ_a[la]}
    used = {l for l, _ in sa.sides}
    remap = dict(to_a)
    remap.update(_fresh_map(
        sorted({l for l, _ in sb.sides if l not in to_a}), used))
    word_b = [(to_a[l], -occ_a[to_a[l]]) if l in to_a else (remap[l], s)
              for l, s in sb.sides]
    kind = {}
    for l, _ in sa.sides:
        kind[l] = BOUNDARY if (l in sa.boundary_labels and l not in pa) \
            else PAIRED
    for l, _ in sb.sides:
        if l in to_a:
            continue
        kind[remap[l]] = BOUNDARY if l in sb.boundary_labels else PAIRED
    faces = {0: list(sa.sides), 1: word_b}
    sys_a = _convert_families(a, {}, set())
    sys_b = _convert_families(b, remap, flip)

    def face_sign(label, face):
        # occurrence sign of a glued label in the given face
        return occ_a[label] if face == 0 else -occ_a[label]

    systems = []
    fam_closed, fam_arcs = [], []
    for fi in range(3):
        arcs = sys_a[3 + fi] + sys_b[3 + fi]
        faces_of = [0] * len(sys_a[3 + fi]) + [1] * len(sys_b[3 + fi])
        closed_extra, open_arcs = _fuse_arcs(arcs, faces_of, pa, face_sign)
        fam_closed.append(sys_a[fi] + sys_b[fi] + closed_extra)
        fam_arcs.append(open_arcs)
    for fi, name in enumerate(_FAMILY_NAMES):
        systems.append(System(name, fam_closed[fi]))
    for fi, name in enumerate(_FAMILY_NAMES):
        systems.append(System("arcs_" + name, fam_arcs[fi]))
    cx = Complex(faces, kind, systems)
    cx.validate()
    cx.to_single_face()
    schema, _ = _standardize(cx)
    fams = [Multicurve(tuple(cx.systems[i].components)) for i in range(3)]
    arcs = [Multicurve(tuple(cx.systems[3 + i].components)) for i in range(3)]
    g, bcount = schema.genus, schema.boundary_count
    if bcount == 0:
        if any(am.components for am in arcs):
            raise MoveError("closed result still carries arcs")
        params = TriParams(g, *_infer_ks(schema, fams))
        return TrisectionDiagram(schema, fams[0], fams[1], fams[2], params)
    p = g - len(fams[0].components)
    params = RelParams(g, 2 * p + bcount - 1, p, bcount)
    base = RelativeTrisectionDiagram(schema, fams[0], fams[1], fams[2], params)
    return ArcedRelativeDiagram(base, arcs[0], arcs[1], arcs[2])


def _infer_ks(schema, fams):
    ks = []
    g = schema.genus

    class _D:
        surface = schema
        alpha, beta, gamma = fams

    for na, nb in (("alpha", "beta"), ("beta", "gamma"), ("gamma", "alpha")):
        im = invariants.intersection_matrix(_D, na, nb)
        rank = len(invariants.invariant_factors(im))
        ks.append(g - rank)
    return ks


# ---------------------------------------------------------------------------
# capping


def trivial_reglue_cap(d: RelativeTrisectionDiagram,
                       monodromy_identity: bool = False) -> TrisectionDiagram:
    """Cap both boundary circles of a two-boundary relative diagram whose
    induced open book has identity monodromy (caller-asserted flag)."""
    if not monodromy_identity:
        raise MoveError("identity-monodromy flag must be set by the caller")
    if d.surface.boundary_count != 2:
        raise MoveError("expected exactly two boundary circles")
    schema = d.surface
    fams = list(d.families)
    for _ in range(2):
        label = schema.boundary_labels[0]
        try:
            schema, out, _ = cap_boundary(schema, label, *fams)
        except SurfaceError as e:
            raise MoveError(str(e))
        fams = list(out)
    params = TriParams(schema.genus, *_infer_ks(schema, fams))
    return TrisectionDiagram(schema, fams[0], fams[1], fams[2], params)
