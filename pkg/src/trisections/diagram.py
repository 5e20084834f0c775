"""Diagram types and their validators.

A trisection diagram is a closed surface with three curve families, each
pair forming a Heegaard diagram of a connected sum of copies of S1 x S2.
Validation is tiered: structural and homological checks are decidable,
full handle-slide equivalence is not, so the top tier is a bounded
search for an explicit slide certificate.
"""

import heapq
from dataclasses import dataclass, field, replace
from fractions import Fraction

from trisections import invariants
from trisections.schema.curves import (
    Multicurve,
    build_complex,
    canonical_word,
    multicurve_key,
    normalize,
    torus_curve,
)
from trisections.schema.cx import Component, Node, SurfaceError
from trisections.schema.intersect import geometric_intersection
from trisections.schema.polygon import PolygonSchema, make_standard_schema
from trisections.schema.surgery import band_sum, connect_sum, cut_components
from trisections.schema.curves import EmbeddedArc

__all__ = [
    "TriParams",
    "RelParams",
    "TrisectionDiagram",
    "RelativeTrisectionDiagram",
    "ArcedRelativeDiagram",
    "DoublyPointedDiagram",
    "BridgeParams",
    "ValidationReport",
    "standard_heegaard_pair",
    "standard_trisection",
    "stabilization_diagram",
    "cp2_doubly_pointed",
    "validate_trisection",
    "validate_relative",
    "puncture_at_basepoints",
    "normalize_diagram",
    "corners_in_same_region",
]


@dataclass(frozen=True)
class TriParams:
    g: int
    k1: int
    k2: int
    k3: int

    def __post_init__(self):
        for k in (self.k1, self.k2, self.k3):
            if not 0 <= k <= self.g:
                raise ValueError("need 0 <= k_i <= g, got %r" % (self,))

    @property
    def ks(self):
        return (self.k1, self.k2, self.k3)


@dataclass(frozen=True)
class RelParams:
    g: int
    k: int
    p: int
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("relative diagram needs b >= 1")
        if not (2 * self.p + self.b - 1 <= self.k
                <= self.g + self.p + self.b - 1):
            raise ValueError(
                "need 2p+b-1 <= k <= g+p+b-1, got %r" % (self,))

    @property
    def l(self):
        return 2 * self.p + self.b - 1

    @property
    def n(self):
        return self.k - self.l

    @property
    def s(self):
        return self.g - self.k + self.p + self.b - 1


@dataclass(frozen=True)
class BridgeParams:
    b: int
    c1: int
    c2: int
    c3: int
    n: int

    def __post_init__(self):
        if self.b < 1 or min(self.c1, self.c2, self.c3) < 1:
            raise ValueError("bridge parameters must be positive")

    @property
    def euler_characteristic(self):
        return self.c1 + self.c2 + self.c3 - self.b


@dataclass(frozen=True)
class TrisectionDiagram:
    surface: PolygonSchema
    alpha: Multicurve
    beta: Multicurve
    gamma: Multicurve
    params: TriParams

    @property
    def families(self):
        return (self.alpha, self.beta, self.gamma)

    def family(self, name: str) -> Multicurve:
        return getattr(self, name)


@dataclass(frozen=True)
class RelativeTrisectionDiagram:
    surface: PolygonSchema
    alpha: Multicurve
    beta: Multicurve
    gamma: Multicurve
    params: RelParams

    @property
    def families(self):
        return (self.alpha, self.beta, self.gamma)

    def family(self, name: str) -> Multicurve:
        return getattr(self, name)


@dataclass(frozen=True)
class ArcedRelativeDiagram:
    base: RelativeTrisectionDiagram
    arcs_alpha: Multicurve
    arcs_beta: Multicurve
    arcs_gamma: Multicurve

    @property
    def arc_families(self):
        return (self.arcs_alpha, self.arcs_beta, self.arcs_gamma)


@dataclass(frozen=True)
class DoublyPointedDiagram:
    """A trisection diagram with two base points, given as corner indices
    of the polygon (corners are always disjoint from the curves)."""
    base: TrisectionDiagram
    points: tuple

    def __post_init__(self):
        if len(self.points) != 2:
            raise ValueError("exactly two base points required")
        n = len(self.base.surface.sides)
        for c in self.points:
            if not 0 <= c < n:
                raise ValueError("corner index %r out of range" % (c,))


@dataclass(frozen=True)
class ValidationReport:
    status: str  # certified | homologically-consistent | failed
    checks: tuple  # (name, ok, detail)
    depth: int = 8

    @property
    def ok(self):
        return self.status != "failed"

    def lines(self):
        out = ["status: %s" % self.status]
        for name, ok, detail in self.checks:
            out.append("  [%s] %s: %s" % ("ok" if ok else "FAIL", name, detail))
        return out


# ---------------------------------------------------------------------------
# generators


_DELTA = Fraction(1, 53)


def _shift(comp: Component, delta: Fraction) -> Component:
    return Component(comp.closed,
                     tuple(Node(n.label, n.t + delta, n.d) for n in comp.nodes))


def _block_dual(i: int, which: str, t: Fraction, parallel=0) -> Component:
    """A curve crossing side a_i or b_i of handle block i exactly once."""
    d = 1 if which == "b" else -1
    lab = "%s%d" % (which, i)
    return Component(True, (Node(lab, t + parallel * _DELTA, d),))


def standard_heegaard_pair(g: int, k: int):
    """The standard genus-g Heegaard diagram of #_k S1 x S2: k parallel
    pairs and g-k once-transverse pairs."""
    if not 0 <= k <= g:
        raise ValueError("need 0 <= k <= g")
    schema = make_standard_schema(g)
    alphas, betas = [], []
    for i in range(1, g + 1):
        alphas.append(_block_dual(i, "b", Fraction(1, 2)))
        if i <= k:
            betas.append(_block_dual(i, "b", Fraction(1, 2), parallel=1))
        else:
            betas.append(_block_dual(i, "a", Fraction(1, 2)))
    return schema, Multicurve(tuple(alphas)), Multicurve(tuple(betas))


def stabilization_diagram(stype: int) -> TrisectionDiagram:
    """The three genus-1 diagrams of S4.  Type t has the parallel pair in
    the t-th slot of the cyclic order (alpha,beta), (beta,gamma),
    (gamma,alpha)."""
    if stype not in (1, 2, 3):
        raise ValueError("stabilization type must be 1, 2 or 3")
    schema = make_standard_schema(1)
    dual = _block_dual(1, "b", Fraction(1, 2))
    dual2 = _block_dual(1, "b", Fraction(1, 2), parallel=1)
    cross = _block_dual(1, "a", Fraction(1, 2))
    trip = {
        1: (dual, dual2, cross),
        2: (cross, dual, dual2),
        3: (dual2, cross, dual),
    }[stype]
    ks = tuple(1 if i == stype else 0 for i in (1, 2, 3))
    return TrisectionDiagram(schema,
                             Multicurve((trip[0],)),
                             Multicurve((trip[1],)),
                             Multicurve((trip[2],)),
                             TriParams(1, *ks))


def standard_trisection(g: int, k1: int, k2: int, k3: int) -> TrisectionDiagram:
    """Connect sum of genus-1 summands and the genus-0 diagram; only
    parameters with g = k1+k2+k3 arise this way."""
    params = TriParams(g, k1, k2, k3)
    if g != k1 + k2 + k3:
        raise ValueError(
            "only connect sums of the three genus-1 pieces are standard "
            "here; need g = k1+k2+k3, got %r" % (params,))
    out = TrisectionDiagram(make_standard_schema(0),
                            Multicurve(), Multicurve(), Multicurve(),
                            TriParams(0, 0, 0, 0))
    for stype, count in ((1, k1), (2, k2), (3, k3)):
        for _ in range(count):
            piece = stabilization_diagram(stype)
            s, curves = connect_sum(
                out.surface, out.families, piece.surface, piece.families)
            out = TrisectionDiagram(
                s,
                Multicurve(curves[0].components + curves[3].components),
                Multicurve(curves[1].components + curves[4].components),
                Multicurve(curves[2].components + curves[5].components),
                TriParams(out.params.g + 1,
                          out.params.k1 + (stype == 1),
                          out.params.k2 + (stype == 2),
                          out.params.k3 + (stype == 3)))
    return out


def cp2_doubly_pointed() -> DoublyPointedDiagram:
    """Torus diagram with curve classes (1,0), (0,1), (1,1) and two base
    points in one complementary region."""
    schema = make_standard_schema(1)
    d = TrisectionDiagram(schema,
                          torus_curve(1, 0),
                          torus_curve(0, 1),
                          torus_curve(1, 1),
                          TriParams(1, 0, 0, 0))
    pts = None
    n = len(schema.sides)
    for c1 in range(n):
        for c2 in range(c1 + 1, n):
            if corners_in_same_region(schema, d.families, c1, c2):
                pts = (c1, c2)
                break
        if pts:
            break
    if pts is None:
        raise SurfaceError("no two corners share a complementary region")
    return DoublyPointedDiagram(d, pts)


def normalize_diagram(d):
    """Normalize every family (innermost bigon removal against the sides)."""
    return replace(d,
                   alpha=normalize(d.surface, d.alpha),
                   beta=normalize(d.surface, d.beta),
                   gamma=normalize(d.surface, d.gamma))


# ---------------------------------------------------------------------------
# complementary regions


def corners_in_same_region(schema: PolygonSchema, families, c1: int,
                           c2: int) -> bool:
    """True if the sectors at polygon corners c1 and c2 lie in the same
    complementary region of all curves on the surface.

    Two sectors agree inside the polygon when they sit on the same side of
    every chord, and connect across an edge end when the edge segment
    between the vertex and the nearest crossing is shared (which it always
    is, on both occurrences of a paired side)."""
    cx = build_complex(schema, *(("f%d" % i, m)
                                 for i, m in enumerate(families)))
    n = len(schema.sides)
    chords = [(u1, u2)
              for sys in cx.systems for comp in sys.components
              for _, u1, u2, _ in cx.chords_of(comp)]

    def side(c, u1, u2):
        return (c - u1) % n < (u2 - u1) % n

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for a in range(n):
        for b in range(a + 1, n):
            if all(side(a, u1, u2) == side(b, u1, u2) for u1, u2 in chords):
                union(a, b)
    occ = cx.occurrences()
    for lab, os in occ.items():
        if cx.kind[lab] == "boundary":
            continue
        op = next(o for o in os if o.sign > 0)
        om = next(o for o in os if o.sign < 0)
        union(op.pos, (om.pos + 1) % n)
        union((op.pos + 1) % n, om.pos)
    return find(c1) == find(c2)


# ---------------------------------------------------------------------------
# validation


def _check(checks, name, ok, detail=""):
    checks.append((name, bool(ok), detail))
    return bool(ok)


def _parallel(a: Component, b: Component) -> bool:
    return canonical_word(a) == canonical_word(b)


def _geom_matrix(schema, ma: Multicurve, mb: Multicurve):
    return [[geometric_intersection(schema, Multicurve((ca,)),
                                    Multicurve((cb,)))
             for cb in mb.components] for ca in ma.components]


def _visibly_standard(schema, ma: Multicurve, mb: Multicurve, k: int) -> bool:
    """Geometric intersection pattern of the standard #_k S1xS2 diagram:
    a matching with g-k once-transverse pairs, k parallel pairs, and no
    other crossings."""
    g = len(ma.components)
    if len(mb.components) != g:
        return False
    gm = _geom_matrix(schema, ma, mb)
    ones = []
    zero_rows, zero_cols = set(range(g)), set(range(g))
    for i in range(g):
        for j in range(g):
            if gm[i][j] == 1:
                ones.append((i, j))
            elif gm[i][j] != 0:
                return False
    if len(ones) != g - k:
        return False
    for i, j in ones:
        if i not in zero_rows or j not in zero_cols:
            return False  # a row or column with two crossings
        zero_rows.discard(i)
        zero_cols.discard(j)
    cols = set(zero_cols)
    for i in sorted(zero_rows):
        mate = next((j for j in sorted(cols)
                     if _parallel(ma.components[i], mb.components[j])), None)
        if mate is None:
            return False
        cols.discard(mate)
    return True


def _slide_candidates(schema, m: Multicurve):
    """All empty-guide slides of one curve over another in a family."""
    out = []
    for i, ci_comp in enumerate(m.components):
        for j, cj_comp in enumerate(m.components):
            if i == j:
                continue
            for ci in range(len(ci_comp.nodes)):
                for cj in range(len(cj_comp.nodes)):
                    out.append((i, j, ci, cj))
    return out


def _certify_pair(schema, ma, mb, k, depth, budget=400):
    """Bounded best-first search for a slide sequence making the pair
    visibly standard.  Returns the slide count or None."""
    if _visibly_standard(schema, ma, mb, k):
        return 0
    start = (multicurve_key(ma), multicurve_key(mb))
    seen = {start}
    queue = [(0, 0, ma, mb)]
    tick = 0
    expanded = 0
    while queue and expanded < budget:
        dpt, _, xa, xb = heapq.heappop(queue)
        expanded += 1
        if dpt >= depth:
            continue
        for fam, cur, other in ((0, xa, xb), (1, xb, xa)):
            for i, j, ci, cj in _slide_candidates(schema, cur):
                try:
                    new = band_sum(schema, cur, i, j,
                                   EmbeddedArc((), (i, ci), (j, cj)))
                except SurfaceError:
                    continue
                new = normalize(schema, new)
                na, nb = (new, other) if fam == 0 else (other, new)
                key = (multicurve_key(na), multicurve_key(nb))
                if key in seen:
                    continue
                seen.add(key)
                if _visibly_standard(schema, na, nb, k):
                    return dpt + 1
                tick += 1
                heapq.heappush(queue, (dpt + 1, tick, na, nb))
    return None


def _cut_system_check(schema, m: Multicurve, g):
    if len(m.components) != g:
        return False, "expected %d curves, found %d" % (g, len(m.components))
    if any(not c.closed for c in m.components):
        return False, "open component in a closed family"
    count, pieces = cut_components(schema, m)
    if count != 1:
        return False, "cut surface has %d components" % count
    if pieces[0].genus != 0:
        return False, "cut surface has genus %d" % pieces[0].genus
    return True, "planar, %d boundary circles" % pieces[0].boundary_count


def _homology_rank_check(d, name_a, name_b, k):
    g = d.params.g
    im = invariants.intersection_matrix(d, name_a, name_b)
    facs = invariants.invariant_factors(im)
    want = (1,) * (g - k)
    ok = facs == want
    return ok, "SNF factors %s, expected %s" % (list(facs), list(want))


_PAIRS = (("alpha", "beta", "k1"), ("beta", "gamma", "k2"),
          ("gamma", "alpha", "k3"))


def validate_trisection(d: TrisectionDiagram, depth: int = 8) -> ValidationReport:
    checks = []
    g = d.params.g
    structural = True
    try:
        build_complex(d.surface, ("alpha", d.alpha), ("beta", d.beta),
                      ("gamma", d.gamma))
        _check(checks, "embeddedness", True, "all families embedded")
    except SurfaceError as e:
        structural = _check(checks, "embeddedness", False, str(e))
    structural &= _check(checks, "closed surface",
                         d.surface.boundary_count == 0,
                         "b=%d" % d.surface.boundary_count)
    structural &= _check(checks, "genus", d.surface.genus == g,
                         "surface genus %d, params genus %d"
                         % (d.surface.genus, g))
    if structural:
        for name in ("alpha", "beta", "gamma"):
            ok, detail = _cut_system_check(d.surface, d.family(name), g)
            structural &= _check(checks, "cut system %s" % name, ok, detail)
    if not structural:
        return ValidationReport("failed", tuple(checks), depth)

    homological = True
    for name_a, name_b, kname in _PAIRS:
        k = getattr(d.params, kname)
        ok, detail = _homology_rank_check(d, name_a, name_b, k)
        homological &= _check(
            checks, "pair (%s,%s) homology" % (name_a, name_b), ok, detail)
    if not homological:
        return ValidationReport("failed", tuple(checks), depth)

    certified = True
    nd = normalize_diagram(d)
    for name_a, name_b, kname in _PAIRS:
        k = getattr(d.params, kname)
        ma, mb = nd.family(name_a), nd.family(name_b)
        if g == 1:
            if k == 0:
                got = abs(invariants.intersection_matrix(
                    nd, name_a, name_b).entries[0][0]) == 1
                cert = 0 if got else None
            else:
                cert = 0 if _parallel(ma.components[0],
                                      mb.components[0]) else None
        else:
            cert = _certify_pair(d.surface, ma, mb, k, depth)
        okc = cert is not None
        certified &= _check(
            checks, "pair (%s,%s) standard" % (name_a, name_b), okc,
            "certified with %s slides" % cert if okc
            else "no certificate within depth %d" % depth)
    status = "certified" if certified else "homologically-consistent"
    return ValidationReport(status, tuple(checks), depth)


def validate_relative(d: RelativeTrisectionDiagram,
                      depth: int = 8) -> ValidationReport:
    checks = []
    p = d.params
    ok = True
    try:
        build_complex(d.surface, ("alpha", d.alpha), ("beta", d.beta),
                      ("gamma", d.gamma))
        _check(checks, "embeddedness", True, "all families embedded")
    except SurfaceError as e:
        ok = _check(checks, "embeddedness", False, str(e))
    ok &= _check(checks, "surface shape",
                 d.surface.genus == p.g and d.surface.boundary_count == p.b,
                 "surface (%d,%d), params (%d,%d)"
                 % (d.surface.genus, d.surface.boundary_count, p.g, p.b))
    want = p.g - p.p
    for name in ("alpha", "beta", "gamma"):
        m = d.family(name)
        closed = [c for c in m.components if c.closed]
        ok &= _check(checks, "count %s" % name,
                     len(closed) == want and len(closed) == len(m.components),
                     "%d closed curves, expected %d" % (len(closed), want))
    if not ok:
        return ValidationReport("failed", tuple(checks), depth)
    for name in ("alpha", "beta", "gamma"):
        m = d.family(name)
        if not m.components:
            _check(checks, "cut %s" % name, True, "empty family")
            continue
        count, pieces = cut_components(d.surface, m)
        good = (count == 1 and pieces[0].genus == p.p)
        ok &= _check(checks, "cut %s" % name, good,
                     "%d pieces, genus %s" % (count,
                                              [q.genus for q in pieces]))
    if not ok:
        return ValidationReport("failed", tuple(checks), depth)
    homological = True
    for name_a, name_b, _ in _PAIRS:
        im = invariants.intersection_matrix(d, name_a, name_b)
        facs = invariants.invariant_factors(im)
        good = all(f == 1 for f in facs)
        homological &= _check(
            checks, "pair (%s,%s) torsion-free" % (name_a, name_b), good,
            "SNF factors %s" % (list(facs),))
    if not homological:
        return ValidationReport("failed", tuple(checks), depth)
    return ValidationReport("homologically-consistent", tuple(checks), depth)


# ---------------------------------------------------------------------------
# puncturing


def puncture_at_basepoints(d: DoublyPointedDiagram) -> RelativeTrisectionDiagram:
    """Remove a disk around each base point: the surface gains two
    boundary circles, the curves are untouched."""
    base = d.base
    schema = base.surface
    used = {l for l, _ in schema.sides}
    fresh = []
    i = 1
    while len(fresh) < 4:
        for cand in ("e%d" % i, "d%d" % i):
            if cand not in used and cand not in fresh:
                fresh.append(cand)
        i += 1
    word = list(schema.sides)
    blabels = list(schema.boundary_labels)
    for nth, corner in enumerate(sorted(d.points, reverse=True)):
        e, bd = fresh[2 * nth], fresh[2 * nth + 1]
        word[corner:corner] = [(e, 1), (bd, 1), (e, -1)]
        blabels.append(bd)
    out = PolygonSchema(tuple(word), tuple(blabels))
    g = base.params.g
    ktot = sum(base.params.ks)
    k = min(max(1, ktot + 1), g + 1)
    params = RelParams(g, k, 0, 2)
    rel = RelativeTrisectionDiagram(out, base.alpha, base.beta, base.gamma,
                                    params)
    build_complex(out, ("alpha", rel.alpha), ("beta", rel.beta),
                  ("gamma", rel.gamma))
    return rel
