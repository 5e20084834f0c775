"""Cell-complex engine for compact oriented surfaces with carried curves.

A surface is stored as polygonal faces with oriented edge identifications.
Each face is a cyclic word of (label, sign) occurrences read counterclockwise
(interior on the left).  A paired edge appears exactly twice with opposite
signs; a boundary edge appears once.

Curves and arcs are stored as sequences of nodes.  A node is a point where
the curve meets an edge:

* crossing node (label, t, d) with d = +1/-1: travelling along the component
  the strand arrives at the occurrence whose sign equals d and departs from
  the other occurrence, at edge parameter t in (0, 1);
* endpoint node (label, t, 0): the end of an arc on a boundary edge.

The chord between two consecutive nodes is implicit: it is the straight arc
in the face shared by the departure point of the first node and the arrival
point of the second.  Everything downstream (embeddedness, intersection
counts, surgery) is exact integer/rational combinatorics on these words.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from trisections import kernels

PAIRED = "paired"
BOUNDARY = "boundary"


class SurfaceError(ValueError):
    """Raised when a complex or carried curve system is malformed."""


@dataclass(frozen=True)
class Node:
    label: str
    t: Fraction
    d: int  # +1 / -1 crossing direction, 0 for an arc endpoint

    def reversed(self) -> "Node":
        if self.d == 0:
            return self
        return Node(self.label, self.t, -self.d)


@dataclass(frozen=True)
class Component:
    closed: bool
    nodes: tuple[Node, ...]

    def __post_init__(self):
        if not self.closed:
            if len(self.nodes) < 2:
                raise SurfaceError("an open component needs two endpoints")
            if self.nodes[0].d != 0 or self.nodes[-1].d != 0:
                raise SurfaceError("open component must start and end on the boundary")
            for n in self.nodes[1:-1]:
                if n.d == 0:
                    raise SurfaceError("interior node of an arc must be a crossing")
        else:
            if not self.nodes:
                # a circle missing every edge has no well defined face;
                # represent trivial circles crossing some edge twice
                raise SurfaceError("closed component must cross at least one edge")
            for n in self.nodes:
                if n.d == 0:
                    raise SurfaceError("closed component cannot touch the boundary")

    def word(self) -> tuple[tuple[str, int], ...]:
        """Crossing word: the sides met in order, with direction signs."""
        return tuple((n.label, n.d) for n in self.nodes if n.d != 0)

    def reversed(self) -> "Component":
        return Component(self.closed, tuple(n.reversed() for n in reversed(self.nodes)))


@dataclass
class System:
    """One multicurve (or arc family): disjointly embedded components."""

    name: str
    components: list[Component] = field(default_factory=list)


@dataclass(frozen=True)
class Occ:
    face: int
    pos: int
    sign: int


class Complex:
    """Mutable surface complex used for surgery; freeze via public wrappers."""

    def __init__(self, faces: dict[int, list[tuple[str, int]]],
                 kind: dict[str, str],
                 systems: Optional[list[System]] = None):
        self.faces = {f: list(w) for f, w in faces.items()}
        self.kind = dict(kind)
        self.systems = systems if systems is not None else []
        self._fresh = 0

    # ----- construction helpers -------------------------------------------

    @classmethod
    def from_word(cls, word: Iterable[tuple[str, int]],
                  boundary_labels: Iterable[str] = ()) -> "Complex":
        word = list(word)
        bl = set(boundary_labels)
        kind = {}
        for lab, _ in word:
            kind[lab] = BOUNDARY if lab in bl else PAIRED
        return cls({0: word}, kind)

    def copy(self) -> "Complex":
        c = Complex({f: list(w) for f, w in self.faces.items()}, dict(self.kind),
                    [System(s.name, list(s.components)) for s in self.systems])
        c._fresh = self._fresh
        return c

    def fresh_label(self, prefix: str = "z") -> str:
        while True:
            self._fresh += 1
            lab = "%s%d" % (prefix, self._fresh)
            if lab not in self.kind:
                return lab

    # ----- basic queries ---------------------------------------------------

    def occurrences(self) -> dict[str, list[Occ]]:
        out: dict[str, list[Occ]] = {}
        for f, word in self.faces.items():
            for p, (lab, s) in enumerate(word):
                out.setdefault(lab, []).append(Occ(f, p, s))
        return out

    def occ_with_sign(self, label: str, sign: int) -> Occ:
        for o in self.occurrences()[label]:
            if o.sign == sign:
                return o
        raise SurfaceError("no occurrence of %s with sign %d" % (label, sign))

    def validate_structure(self):
        occ = self.occurrences()
        if set(occ) != set(self.kind):
            raise SurfaceError("edge labels out of sync with faces")
        for lab, k in self.kind.items():
            os = occ[lab]
            if k == PAIRED:
                if len(os) != 2 or os[0].sign + os[1].sign != 0:
                    raise SurfaceError(
                        "paired label %r must occur twice with opposite signs" % lab)
            else:
                if len(os) != 1:
                    raise SurfaceError("boundary label %r must occur once" % lab)
        for f, word in self.faces.items():
            if not word:
                raise SurfaceError("empty face %d" % f)

    # A node's arrival/departure occurrences.

    def arrive_occ(self, node: Node) -> Occ:
        if node.d == 0:
            return self.occurrences()[node.label][0]
        return self.occ_with_sign(node.label, node.d)

    def depart_occ(self, node: Node) -> Occ:
        if node.d == 0:
            return self.occurrences()[node.label][0]
        return self.occ_with_sign(node.label, -node.d)

    @staticmethod
    def boundary_u(occ: Occ, t: Fraction) -> Fraction:
        return Fraction(occ.pos) + (t if occ.sign > 0 else 1 - t)

    def point_coord(self, occ: Occ, t: Fraction) -> tuple[int, Fraction]:
        return (occ.face, self.boundary_u(occ, t))

    # ----- chords ----------------------------------------------------------

    def chords_of(self, comp: Component):
        """Yield (face, coord_from, coord_to, chord_index)."""
        nodes = comp.nodes
        if comp.closed:
            if not nodes:
                return
            pairs = [(i, (i + 1) % len(nodes)) for i in range(len(nodes))]
        else:
            pairs = [(i, i + 1) for i in range(len(nodes) - 1)]
        for ci, (i, j) in enumerate(pairs):
            o1 = self.depart_occ(nodes[i])
            o2 = self.arrive_occ(nodes[j])
            f1, u1 = self.point_coord(o1, nodes[i].t)
            f2, u2 = self.point_coord(o2, nodes[j].t)
            if f1 != f2:
                raise SurfaceError(
                    "chord %d of component runs between faces %d and %d"
                    % (ci, f1, f2))
            yield (f1, u1, u2, ci)

    def face_chords(self, sys_indices: Optional[list[int]] = None):
        """Chords per face: face -> list of (u1, u2, (sys, comp, chord))."""
        if sys_indices is None:
            sys_indices = list(range(len(self.systems)))
        out: dict[int, list] = {f: [] for f in self.faces}
        for si in sys_indices:
            for ki, comp in enumerate(self.systems[si].components):
                for f, u1, u2, ci in self.chords_of(comp):
                    out[f].append((u1, u2, (si, ki, ci)))
        return out

    def check_embedded(self, si: int):
        """Each system must be a disjointly embedded 1-manifold."""
        per_face: dict[int, list] = {}
        for ki, comp in enumerate(self.systems[si].components):
            for f, u1, u2, ci in self.chords_of(comp):
                per_face.setdefault(f, []).append((u1, u2))
        for f, chords in per_face.items():
            coords = sorted({u for c in chords for u in c})
            rank = {u: i for i, u in enumerate(coords)}
            if len(coords) != 2 * len(chords):
                raise SurfaceError("chord endpoints collide in face %d" % f)
            starts = [rank[c[0]] for c in chords]
            ends = [rank[c[1]] for c in chords]
            if kernels.has_interleaving(starts, ends):
                raise SurfaceError(
                    "system %r is not embedded (chords cross in face %d)"
                    % (self.systems[si].name, f))

    def validate(self):
        self.validate_structure()
        for si in range(len(self.systems)):
            for comp in self.systems[si].components:
                list(self.chords_of(comp))  # face consistency
            self.check_embedded(si)
        self._check_node_params()

    def _check_node_params(self):
        seen: dict[tuple[str, Fraction], int] = {}
        for si, sys in enumerate(self.systems):
            for comp in sys.components:
                for n in comp.nodes:
                    if not (0 < n.t < 1):
                        raise SurfaceError("node parameter out of range")
                    key = (n.label, n.t)
                    if key in seen:
                        raise SurfaceError(
                            "two nodes share the point %r" % (key,))
                    seen[key] = si

    # ----- topology --------------------------------------------------------

    def corner_orbits(self):
        """Union-find over polygon corners; corner (f, p) precedes word[p]."""
        parent: dict[tuple[int, int], tuple[int, int]] = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for f, word in self.faces.items():
            for p in range(len(word)):
                parent[(f, p)] = (f, p)
        occ = self.occurrences()
        for lab, k in self.kind.items():
            if k != PAIRED:
                continue
            x = [o for o in occ[lab] if o.sign > 0][0]
            y = [o for o in occ[lab] if o.sign < 0][0]
            nx = len(self.faces[x.face])
            ny = len(self.faces[y.face])
            # start of +occ is the t=0 end, matching the t=0 end of -occ,
            # which sits at the -occ's end corner.
            union((x.face, x.pos), (y.face, (y.pos + 1) % ny))
            union((x.face, (x.pos + 1) % nx), (y.face, y.pos))
        orbits: dict[tuple[int, int], list] = {}
        for c in parent:
            orbits.setdefault(find(c), []).append(c)
        return list(orbits.values())

    def euler_characteristic(self) -> int:
        v = len(self.corner_orbits())
        e = len(self.kind)
        f = len(self.faces)
        return v - e + f

    def boundary_circles(self) -> list[list[Occ]]:
        """Boundary circles as cyclic sequences of boundary-edge occurrences."""
        occ = self.occurrences()
        boundary = [occ[lab][0] for lab, k in self.kind.items() if k == BOUNDARY]
        boundary.sort(key=lambda o: (o.face, o.pos))

        def successor(o: Occ) -> Occ:
            f, p = o.face, (o.pos + 1) % len(self.faces[o.face])
            guard = 0
            while True:
                lab, s = self.faces[f][p]
                if self.kind[lab] == BOUNDARY:
                    return Occ(f, p, s)
                twin = [q for q in occ[lab] if (q.face, q.pos) != (f, p)][0]
                f, p = twin.face, (twin.pos + 1) % len(self.faces[twin.face])
                guard += 1
                if guard > sum(len(w) for w in self.faces.values()) + 1:
                    raise SurfaceError("boundary walk does not close up")

        circles = []
        seen = set()
        for o in boundary:
            if (o.face, o.pos) in seen:
                continue
            circle = [o]
            seen.add((o.face, o.pos))
            cur = successor(o)
            while (cur.face, cur.pos) != (o.face, o.pos):
                circle.append(cur)
                seen.add((cur.face, cur.pos))
                cur = successor(cur)
            circles.append(circle)
        return circles

    def is_connected(self) -> bool:
        if not self.faces:
            return True
        faces = set(self.faces)
        occ = self.occurrences()
        adj: dict[int, set[int]] = {f: set() for f in faces}
        for lab, k in self.kind.items():
            if k == PAIRED:
                a, b = occ[lab]
                adj[a.face].add(b.face)
                adj[b.face].add(a.face)
        stack = [next(iter(faces))]
        seen = set(stack)
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        return seen == faces

    def genus_and_boundary(self) -> tuple[int, int]:
        if not self.is_connected():
            raise SurfaceError("surface is not connected")
        chi = self.euler_characteristic()
        b = len(self.boundary_circles())
        g2 = 2 - b - chi
        if g2 < 0 or g2 % 2:
            raise SurfaceError("inconsistent Euler characteristic")
        return g2 // 2, b

    # ----- node bookkeeping -------------------------------------------------

    def map_nodes(self, fn):
        """Rebuild every component, mapping each node through fn.

        fn returns a Node, a list of Nodes, or None (drop the node).
        """
        for sys in self.systems:
            new_comps = []
            for comp in sys.components:
                nodes = []
                for i, n in enumerate(comp.nodes):
                    r = fn(n, comp, i)
                    if r is None:
                        continue
                    if isinstance(r, Node):
                        nodes.append(r)
                    else:
                        nodes.extend(r)
                new_comps.append(Component(comp.closed, tuple(nodes)))
            sys.components = new_comps

    def repark(self):
        """Re-space node parameters evenly on every edge, preserving order."""
        per_edge: dict[str, list] = {}
        for si, sys in enumerate(self.systems):
            for ki, comp in enumerate(sys.components):
                for i, n in enumerate(comp.nodes):
                    per_edge.setdefault(n.label, []).append((n.t, si, ki, i))
        new_t: dict[tuple[int, int, int], Fraction] = {}
        for lab, entries in per_edge.items():
            entries.sort()
            m = len(entries)
            for r, (t, si, ki, i) in enumerate(entries):
                new_t[(si, ki, i)] = Fraction(r + 1, m + 1)
        for si, sys in enumerate(self.systems):
            comps = []
            for ki, comp in enumerate(sys.components):
                nodes = tuple(
                    Node(n.label, new_t[(si, ki, i)], n.d)
                    for i, n in enumerate(comp.nodes))
                comps.append(Component(comp.closed, nodes))
            sys.components = comps

    # ----- elementary moves -------------------------------------------------

    def drop_edge_nodes(self, label: str):
        self.map_nodes(lambda n, c, i: None if n.label == label else n)

    def glue_faces(self, label: str):
        """Merge the two faces sharing paired edge `label` and erase it."""
        a, b = self.occurrences()[label]
        if a.face == b.face:
            raise SurfaceError("occurrences of %r lie in one face" % label)
        wa = self.faces[a.face]
        wb = self.faces[b.face]
        ra = wa[a.pos + 1:] + wa[:a.pos]
        rb = wb[b.pos + 1:] + wb[:b.pos]
        self.faces[a.face] = ra + rb
        del self.faces[b.face]
        del self.kind[label]
        self.drop_edge_nodes(label)

    def zip_adjacent(self, label: str):
        """Cancel an adjacent pair x x^-1 within one face."""
        a, b = self.occurrences()[label]
        if a.face != b.face:
            raise SurfaceError("occurrences of %r lie in different faces" % label)
        word = self.faces[a.face]
        n = len(word)
        if n == 2:
            raise SurfaceError("cannot zip the terminal sphere word")
        p, q = a.pos, b.pos
        if (p + 1) % n == q:
            lo = p
        elif (q + 1) % n == p:
            lo = q
        else:
            raise SurfaceError("occurrences of %r are not adjacent" % label)
        keep = [word[(lo + 2 + i) % n] for i in range(n - 2)]
        self.faces[a.face] = keep
        del self.kind[label]
        self.drop_edge_nodes(label)

    def unzip(self, face: int, pos: int, label: Optional[str] = None) -> str:
        """Insert a cancelling pair x x^-1 at corner `pos` (inverse of zip)."""
        lab = label or self.fresh_label("u")
        word = self.faces[face]
        pos = pos % (len(word) + 1)
        self.faces[face] = word[:pos] + [(lab, 1), (lab, -1)] + word[pos:]
        self.kind[lab] = PAIRED
        return lab

    def _chords_crossing_diagonal(self, face: int, ci: Fraction, cj: Fraction):
        """All curve chords of `face` separated by corner coords ci < cj.

        Returns records (inside_coord, sys, comp_index, gap_index, direction)
        sorted along the diagonal from corner ci; direction is +1 when the
        chord travels from the (ci, cj) side across to the other side.
        """
        hits = []
        for si, sys in enumerate(self.systems):
            for ki, comp in enumerate(sys.components):
                for f, u1, u2, gi in self.chords_of(comp):
                    if f != face:
                        continue
                    in1 = ci < u1 < cj
                    in2 = ci < u2 < cj
                    if in1 == in2:
                        continue
                    inside = u1 if in1 else u2
                    direction = 1 if in1 else -1
                    hits.append((inside, si, ki, gi, direction))
        hits.sort(key=lambda h: h[0])
        return hits

    def cut_diagonal(self, face: int, i: int, j: int, label: Optional[str] = None) -> str:
        """Split `face` along a diagonal between corners i and j.

        The new paired edge runs corner i -> corner j; curves crossing the
        diagonal receive crossing nodes on it.
        """
        word = self.faces[face]
        n = len(word)
        i, j = i % n, j % n
        if i == j:
            raise SurfaceError("degenerate diagonal")
        if i > j:
            i, j = j, i
        lab = label or self.fresh_label("d")
        ci, cj = Fraction(i), Fraction(j)
        hits = self._chords_crossing_diagonal(face, ci, cj)
        m = len(hits)
        # Face A carries word[i:j] and sees the diagonal against its
        # direction; face B gets the rest.
        fb = max(self.faces) + 1
        self.faces[face] = word[i:j] + [(lab, -1)]
        self.faces[fb] = word[j:] + word[:i] + [(lab, 1)]
        self.kind[lab] = PAIRED
        # Insert crossing nodes; a chord meets the diagonal at most once.
        # A strand crossing A -> B arrives at the occurrence left in face A,
        # which carries sign -1, so the node direction is -travel direction.
        ins: dict[tuple[int, int, int], Node] = {}
        for r, (_, si, ki, gi, direction) in enumerate(hits):
            t = Fraction(r + 1, m + 1)
            key = (si, ki, gi)
            if key in ins:
                raise SurfaceError("chord crosses a diagonal twice")
            ins[key] = Node(lab, t, -direction)
        for si, sys in enumerate(self.systems):
            comps = []
            for ki, comp in enumerate(sys.components):
                nodes = list(comp.nodes)
                out = []
                npairs = len(nodes) if comp.closed else len(nodes) - 1
                for gi in range(len(nodes)):
                    out.append(nodes[gi])
                    if gi < npairs and (si, ki, gi) in ins:
                        out.append(ins[(si, ki, gi)])
                comps.append(Component(comp.closed, tuple(out)))
            sys.components = comps
        return lab

    # ----- cutting along carried curves -------------------------------------

    def _subdivide_for_cut(self, cut_nodes: list[Node]):
        """Split edges at the parameters of `cut_nodes`.

        Returns corner_map[(face, old_pos, cut_rank)] -> corner index valid
        after all faces are rewritten, where cut_rank counts cut params on
        the edge in ascending order starting at 1.
        """
        cuts: dict[str, list[Fraction]] = {}
        for n in cut_nodes:
            cuts.setdefault(n.label, []).append(n.t)
        for lab in cuts:
            cuts[lab] = sorted(set(cuts[lab]))
        sublabels: dict[str, list[str]] = {}
        for lab, ts in cuts.items():
            subs = [self.fresh_label("s") for _ in range(len(ts) + 1)]
            sublabels[lab] = subs
            for s in subs:
                self.kind[s] = self.kind[lab]
        corner_map: dict[tuple[int, int, int], int] = {}
        for f in list(self.faces):
            word = self.faces[f]
            new_word: list[tuple[str, int]] = []
            for p, (lab, s) in enumerate(word):
                if lab not in cuts:
                    new_word.append((lab, s))
                    continue
                subs = sublabels[lab]
                m = len(cuts[lab])
                base = len(new_word)
                if s > 0:
                    new_word.extend((x, 1) for x in subs)
                    for i in range(1, m + 1):
                        corner_map[(f, p, i)] = base + i
                else:
                    new_word.extend((x, -1) for x in reversed(subs))
                    for i in range(1, m + 1):
                        corner_map[(f, p, i)] = base + m - i + 1
            self.faces[f] = new_word
        for lab in cuts:
            del self.kind[lab]

        def rehome(n: Node, comp, i):
            if n.label not in cuts:
                return n
            ts = cuts[n.label]
            k = 0
            while k < len(ts) and ts[k] < n.t:
                k += 1
            lo = ts[k - 1] if k else Fraction(0)
            hi = ts[k] if k < len(ts) else Fraction(1)
            if n.t == lo or n.t == hi:
                raise SurfaceError("node collides with a cut point")
            return Node(sublabels[n.label][k], (n.t - lo) / (hi - lo), n.d)

        self.map_nodes(rehome)
        return corner_map, cuts

    def cut_along(self, targets: list[tuple[int, int]], through: bool = False):
        """Cut the surface open along closed carried components.

        targets lists (system index, component index) pairs; the components
        must be pairwise disjoint.  Each cut chord becomes two fresh boundary
        edges, one per side.  With through=False any other curve meeting a
        target is an error; with through=True such curves are themselves cut
        into arcs ending on the new boundary edges.

        Returns copies[(target_idx, chord_idx)] = (label_ab, label_ba), the
        two side labels of each cut chord.
        """
        targets = list(targets)
        tset = set(targets)
        comps = []
        for si, ki in targets:
            c = self.systems[si].components[ki]
            if not c.closed:
                raise SurfaceError("can only cut along closed components")
            comps.append(c)

        # chord coordinate tables before any rewriting
        cut_chords = []  # (face, u_from, u_to, target_idx, chord_idx)
        for ti, c in enumerate(comps):
            for f, u1, u2, gi in self.chords_of(c):
                cut_chords.append((f, u1, u2, ti, gi))
        other_chords = []  # (face, u_from, u_to, si, ki, gi)
        for si, sys in enumerate(self.systems):
            for ki, comp in enumerate(sys.components):
                if (si, ki) in tset:
                    continue
                for f, u1, u2, gi in self.chords_of(comp):
                    other_chords.append((f, u1, u2, si, ki, gi))

        def interleave(a, b, x):
            lo, hi = min(a, b), max(a, b)
            return (lo < x < hi)

        def crosses(c1, c2):
            return interleave(c1[1], c1[2], c2[1]) != interleave(c1[1], c1[2], c2[2])

        for ca, cb in itertools.combinations(cut_chords, 2):
            if ca[0] == cb[0] and ca[3] != cb[3] and crosses(ca, cb):
                raise SurfaceError("cut components intersect each other")
        crossings = []  # (cut record, other record)
        for cc in cut_chords:
            for oc in other_chords:
                if cc[0] == oc[0] and crosses(cc, oc):
                    crossings.append((cc, oc))
        if crossings and not through:
            raise SurfaceError("a carried curve meets the cut locus")
        spans = {f: len(w) for f, w in self.faces.items()}

        # rank of each cut node on its edge, keyed by identity of the node
        per_edge: dict[str, list[Fraction]] = {}
        for c in comps:
            for n in c.nodes:
                per_edge.setdefault(n.label, []).append(n.t)
        rank = {lab: {t: i + 1 for i, t in enumerate(sorted(set(ts)))}
                for lab, ts in per_edge.items()}

        def chord_corners(c: Component, ti: int):
            """Corner keys (face, old_pos, cut_rank) of each chord end."""
            out = []
            nodes = c.nodes
            for gi in range(len(nodes)):
                a = nodes[gi]
                b = nodes[(gi + 1) % len(nodes)]
                oa = self.depart_occ(a)
                ob = self.arrive_occ(b)
                out.append(((oa.face, oa.pos, rank[a.label][a.t]),
                            (ob.face, ob.pos, rank[b.label][b.t])))
            return out

        corner_keys = {ti: chord_corners(c, ti) for ti, c in enumerate(comps)}

        # remove the cut components, then subdivide
        for si, sys in enumerate(self.systems):
            sys.components = [c for ki, c in enumerate(sys.components)
                              if (si, ki) not in tset]
        cut_nodes = [n for c in comps for n in c.nodes]
        corner_map, _ = self._subdivide_for_cut(cut_nodes)

        # region tracing face by face
        copies: dict[tuple[int, int], tuple[str, str]] = {}
        chords_by_face: dict[int, list] = {}
        for ti, c in enumerate(comps):
            for gi, (ka, kb) in enumerate(corner_keys[ti]):
                f = ka[0]
                ca, cb = corner_map[ka], corner_map[kb]
                la = self.fresh_label("c")
                lb = self.fresh_label("c")
                copies[(ti, gi)] = (la, lb)
                chords_by_face.setdefault(f, []).append((ca, cb, ti, gi, la, lb))

        next_face = max(self.faces) + 1
        new_faces: dict[int, list[tuple[str, int]]] = {}
        for f in list(self.faces):
            word = self.faces[f]
            n = len(word)
            chords = chords_by_face.get(f, [])
            if not chords:
                new_faces[next_face] = word
                next_face += 1
                continue
            chord_at: dict[int, tuple] = {}
            for rec in chords:
                ca, cb = rec[0], rec[1]
                for c in (ca, cb):
                    if c in chord_at:
                        raise SurfaceError("two cut chords share a corner")
                    chord_at[c] = rec
            # directed items: ("edge", p) or ("chord", rec_index, dir)
            items = [("edge", p) for p in range(n)]
            for ri in range(len(chords)):
                items.append(("chord", ri, 0))
                items.append(("chord", ri, 1))
            unused = set(items)

            def item_end(it):
                if it[0] == "edge":
                    return (it[1] + 1) % n
                rec = chords[it[1]]
                return rec[1] if it[2] == 0 else rec[0]

            def item_start(it):
                if it[0] == "edge":
                    return it[1]
                rec = chords[it[1]]
                return rec[0] if it[2] == 0 else rec[1]

            def successor(it):
                c = item_end(it)
                if c in chord_at and it[0] != "chord":
                    rec = chord_at[c]
                    ri = chords.index(rec)
                    return ("chord", ri, 0) if rec[0] == c else ("chord", ri, 1)
                if c in chord_at and it[0] == "chord":
                    rec = chord_at[c]
                    ri = chords.index(rec)
                    if ri != it[1]:
                        return ("chord", ri, 0) if rec[0] == c else ("chord", ri, 1)
                return ("edge", c)

            while unused:
                start = min(unused)
                cyc = [start]
                unused.discard(start)
                cur = successor(start)
                while cur != start:
                    if cur not in unused:
                        raise SurfaceError("region tracing failed to close up")
                    cyc.append(cur)
                    unused.discard(cur)
                    cur = successor(cur)
                rword = []
                for it in cyc:
                    if it[0] == "edge":
                        rword.append(word[it[1]])
                    else:
                        rec = chords[it[1]]
                        lab = rec[4] if it[2] == 0 else rec[5]
                        rword.append((lab, 1))
                new_faces[next_face] = rword
                next_face += 1
            del self.faces[f]
        self.faces.update(new_faces)
        for la, lb in copies.values():
            self.kind[la] = BOUNDARY
            self.kind[lb] = BOUNDARY

        if crossings:
            self._split_through(crossings, copies, spans)
        self.repark()
        return copies

    def _split_through(self, crossings, copies, spans):
        """Cut other curves open where they crossed the cut locus.

        Coordinates in the crossing records refer to the faces as they were
        before the cut; `spans` maps those face ids to their word length, for
        circular arithmetic.
        """
        # rank the crossings along each cut chord, measured from its from-end
        along_cut: dict[tuple[int, int], list] = {}
        for cc, oc in crossings:
            f, uf, ut, ti, gi = cc
            span = spans[f]
            inside = None
            for x in (oc[1], oc[2]):
                if (x - uf) % span < (ut - uf) % span:
                    inside = x
            if inside is None:
                raise SurfaceError("crossing bookkeeping failed")
            along_cut.setdefault((ti, gi), []).append(
                ((inside - uf) % span, oc))
        cut_params: dict[tuple, tuple[Fraction, Fraction]] = {}
        for key, lst in along_cut.items():
            lst.sort(key=lambda rec: rec[0])
            m = len(lst)
            for r, (_, oc) in enumerate(lst):
                okey = key + (oc[3], oc[4], oc[5])
                cut_params[okey] = (Fraction(r + 1, m + 1), Fraction(m - r, m + 1))

        # translate each crossing into a split event on the carried chord
        events: dict[tuple[int, int], list] = {}
        for cc, oc in crossings:
            f, uf, ut, ti, gi = cc
            _, o1, o2, si, ki, ogi = oc
            span = spans[f]
            inside_cut_end = uf if (uf - o1) % span < (o2 - o1) % span else ut
            pos_along = (inside_cut_end - o1) % span
            la, lb = copies[(ti, gi)]
            # the region traversing the cut chord from -> to keeps the
            # boundary arc running from its to-end back around to its from-end
            start_on_ab_side = (o1 - ut) % span < (uf - ut) % span
            approach, depart = (la, lb) if start_on_ab_side else (lb, la)
            ta, tb = cut_params[(ti, gi, si, ki, ogi)]
            t_in = ta if approach == la else tb
            t_out = ta if depart == la else tb
            events.setdefault((si, ki), []).append(
                (ogi, pos_along, approach, t_in, depart, t_out))

        by_system: dict[int, dict[int, list]] = {}
        for (si, ki), evs in events.items():
            by_system.setdefault(si, {})[ki] = sorted(evs)
        for si, per_comp in sorted(by_system.items()):
            sys = self.systems[si]
            rebuilt = []
            for ki, comp in enumerate(sys.components):
                if ki not in per_comp:
                    rebuilt.append(comp)
                    continue
                evs = per_comp[ki]
                nodes = list(comp.nodes)
                if comp.closed:
                    r = len(evs)
                    for j in range(r):
                        gi_a, pos_a, _, _, dep, t_out = evs[j]
                        k = (j + 1) % r
                        gi_b, pos_b, app, t_in, _, _ = evs[k]
                        if k > j and gi_a == gi_b:
                            mid = []
                        elif k > j:
                            mid = nodes[gi_a + 1:gi_b + 1]
                        else:  # wrap piece
                            mid = nodes[gi_a + 1:] + nodes[:gi_b + 1]
                        rebuilt.append(Component(False, tuple(
                            [Node(dep, t_out, 0)] + mid + [Node(app, t_in, 0)])))
                else:
                    prev = 0
                    prev_node = None
                    for gi, _, app, t_in, dep, t_out in evs:
                        head = [prev_node] if prev_node is not None else []
                        rebuilt.append(Component(False, tuple(
                            head + nodes[prev:gi + 1] + [Node(app, t_in, 0)])))
                        prev = gi + 1
                        prev_node = Node(dep, t_out, 0)
                    rebuilt.append(Component(False, tuple(
                        [prev_node] + nodes[prev:])))
            sys.components = rebuilt

    # ----- capping and boundary chains ---------------------------------------

    def cap_circle(self, label: str):
        """Glue a disk onto the boundary circle containing edge `label`."""
        for circle in self.boundary_circles():
            if any(o for o in circle if self.faces[o.face][o.pos][0] == label):
                break
        else:
            raise SurfaceError("%r is not on a boundary circle" % label)
        labs = [self.faces[o.face][o.pos] for o in circle]
        for lab, _ in labs:
            for sys in self.systems:
                for comp in sys.components:
                    if any(n.label == lab for n in comp.nodes):
                        raise SurfaceError(
                            "cannot cap a circle met by a curve or arc")
        f = max(self.faces) + 1 if self.faces else 0
        self.faces[f] = [(lab, -s) for lab, s in reversed(labs)]
        for lab, _ in labs:
            self.kind[lab] = PAIRED

    def merge_boundary_chain(self, face: int, start: int, length: int,
                             label: Optional[str] = None) -> str:
        """Replace `length` consecutive boundary letters of a face word by one.

        The chain's interior vertices must be free (no other edge ends there),
        which holds exactly when the chain letters are consecutive both in the
        word and on their boundary circle.
        """
        word = self.faces[face]
        n = len(word)
        idx = [(start + i) % n for i in range(length)]
        labs = [word[p] for p in idx]
        for lab, _ in labs:
            if self.kind[lab] != BOUNDARY:
                raise SurfaceError("chain contains a paired edge")
        # interior vertices of the chain must be bare corners
        orbits = {frozenset(o) for o in self.corner_orbits()}
        for p in idx[1:]:
            if frozenset([(face, p)]) not in orbits:
                raise SurfaceError("chain vertex is not free")
        new = label or self.fresh_label("b")
        remap = {}
        for i, (lab, s) in enumerate(labs):
            remap[lab] = (i, s)

        def fix(node: Node, comp, j):
            if node.label not in remap:
                return node
            i, s = remap[node.label]
            u = node.t if s > 0 else 1 - node.t
            return Node(new, Fraction(i + u, length), node.d)

        self.map_nodes(fix)
        out = []
        for p, (lab, s) in enumerate(word):
            if lab in remap:
                if p == idx[0]:
                    out.append((new, 1))
                continue
            out.append((lab, s))
        self.faces[face] = out
        for lab, _ in labs:
            del self.kind[lab]
        self.kind[new] = BOUNDARY
        return new

    def invert_edge(self, label: str):
        """Reverse the intrinsic direction of an edge."""
        for f in self.faces:
            self.faces[f] = [(l, -s) if l == label else (l, s)
                             for l, s in self.faces[f]]
        self.map_nodes(lambda n, c, i: Node(label, 1 - n.t, -n.d)
                       if n.label == label else n)

    def rotate_face(self, face: int, start: int):
        word = self.faces[face]
        self.faces[face] = word[start:] + word[:start]

    def relabel(self, mapping: dict[str, str]):
        """Rename edges; values must be fresh labels."""
        for old, new in mapping.items():
            if new in self.kind and new not in mapping:
                raise SurfaceError("label %r already in use" % new)
        self.kind = {mapping.get(l, l): k for l, k in self.kind.items()}
        for f in self.faces:
            self.faces[f] = [(mapping.get(l, l), s) for l, s in self.faces[f]]
        self.map_nodes(lambda n, c, i: Node(mapping.get(n.label, n.label), n.t, n.d)
                       if n.label in mapping else n)

    def to_single_face(self):
        """Glue faces along paired edges until one face remains."""
        while len(self.faces) > 1:
            occ = self.occurrences()
            for lab, k in self.kind.items():
                if k != PAIRED:
                    continue
                a, b = occ[lab]
                if a.face != b.face:
                    self.glue_faces(lab)
                    break
            else:
                raise SurfaceError("faces are not edge-connected")
