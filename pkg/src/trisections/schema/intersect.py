"""Intersection numbers of multicurves on a polygon schema.

Crossings only happen inside the polygon, as chord interleavings, once
the two curve systems are nudged off each other's side parameters.
Geometric intersection removes curve-curve bigons first; a bigon is a
pair of crossings adjacent along both curves whose connecting loop is
null-homotopic (tested in words.py).
"""

from fractions import Fraction

from trisections.schema.cx import (
    Complex,
    Component,
    Node,
    SurfaceError,
    System,
)
from trisections.schema.curves import Multicurve
from trisections.schema.polygon import PolygonSchema
from trisections.schema.words import is_trivial_loop

__all__ = [
    "geometric_intersection",
    "algebraic_intersection",
    "crossing_count",
]


# ---------------------------------------------------------------------------
# placement: put two systems on one complex with disjoint side parameters


def _nudge(cx: Complex, si: int):
    """Shift system si's parameters just past colliding ones, preserving
    the system's own parameter order on every side."""
    per_edge: dict[str, list[Fraction]] = {}
    for sys in cx.systems:
        for comp in sys.components:
            for n in comp.nodes:
                per_edge.setdefault(n.label, []).append(n.t)
    eps = Fraction(1, 2)
    for lab, ts in per_edge.items():
        ts = sorted(set(ts)) + [Fraction(1)]
        gaps = [b - a for a, b in zip(ts, ts[1:])]
        eps = min([eps] + [g / 2 for g in gaps if g > 0])
    sys = cx.systems[si]
    sys.components = [
        Component(c.closed, tuple(Node(n.label, n.t + eps, n.d)
                                  for n in c.nodes))
        for c in sys.components]


def place(schema: PolygonSchema, m1: Multicurve, m2: Multicurve) -> Complex:
    cx = schema.complex()
    cx.systems.append(System("x", list(m1.components)))
    cx.systems.append(System("y", list(m2.components)))
    _nudge(cx, 1)
    cx.validate()
    return cx


# ---------------------------------------------------------------------------
# crossings


def _cross_pairs(cx: Complex):
    """All inter-system crossings with positions along both chords.

    Yields dicts with keys a/b: (comp index, chord index, order key along
    the chord) for systems 0 and 1, plus the crossing sign.
    """
    chords = cx.face_chords()
    out = []
    for f, lst in chords.items():
        xs = [(u1, u2, ki, ci) for u1, u2, (si, ki, ci) in lst if si == 0]
        ys = [(u1, u2, ki, ci) for u1, u2, (si, ki, ci) in lst if si == 1]
        n_side = len(cx.faces[f])
        span = Fraction(n_side)

        def between(u, lo, hi):
            return (u - lo) % span < (hi - lo) % span

        for (u1, u2, ki, ci) in xs:
            for (v1, v2, kj, cj) in ys:
                inside1 = between(v1, u1, u2)
                inside2 = between(v2, u1, u2)
                if inside1 == inside2:
                    continue
                # order along the x chord: ccw offset of the y endpoint
                # lying in the ccw arc u1 -> u2 (see nesting argument)
                uoff = ((v1 if inside1 else v2) - u1) % span
                voff = ((u2 if between(u2, v1, v2) else u1) - v1) % span
                sign = 1 if inside1 else -1
                out.append({"a": (ki, ci, uoff), "b": (kj, cj, voff),
                            "sign": sign, "face": f})
    return out


def crossing_count(schema: PolygonSchema, m1: Multicurve,
                   m2: Multicurve) -> int:
    """Crossings of the given representatives, no bigon removal."""
    return len(_cross_pairs(place(schema, m1, m2)))


def algebraic_intersection(schema: PolygonSchema, m1: Multicurve,
                           m2: Multicurve) -> int:
    """Signed crossing sum; orientation from component node order, sign
    +1 where m2 crosses m1 from right to left (counterclockwise faces)."""
    return sum(c["sign"] for c in _cross_pairs(place(schema, m1, m2)))


# ---------------------------------------------------------------------------
# bigon removal


def _order_along(cx: Complex, si: int, which: str, crossings):
    """Cyclic crossing order along each component of system si."""
    per_comp: dict[int, list] = {}
    for idx, c in enumerate(crossings):
        ki, ci, off = c[which]
        per_comp.setdefault(ki, []).append(((ci, off), idx))
    for ki in per_comp:
        per_comp[ki].sort()
    return per_comp


def _subarc_nodes(comp: Component, c_from: int, c_to: int):
    """Nodes strictly between a crossing on chord c_from and one on chord
    c_to, walking forward; chord ci joins nodes ci and ci+1."""
    n = len(comp.nodes)
    if not comp.closed:
        return [comp.nodes[i] for i in range(c_from + 1, c_to + 1)]
    out = []
    i = c_from
    while i != c_to:
        i = (i + 1) % n
        out.append(comp.nodes[i])
    return out


def _loop_word(nodes_a, nodes_b_rev):
    word = [(n.label, n.d) for n in nodes_a]
    word += [(n.label, -n.d) for n in reversed(nodes_b_rev)]
    return word


def _successors(cx, si, which, crossings):
    """Ordered pairs of crossing indices consecutive along system si."""
    succ = set()
    for k, lst in _order_along(cx, si, which, crossings).items():
        closed = cx.systems[si].components[k].closed
        m = len(lst)
        for r in range(m if (closed and m > 1) else m - 1):
            succ.add((lst[r][1], lst[(r + 1) % m][1]))
    return succ


def _bigon_candidates(schema, cx, crossings):
    """Pairs of crossings adjacent along both systems bounding a disk."""
    succ_b = _successors(cx, 1, "b", crossings)
    for i1, i2 in _successors(cx, 0, "a", crossings):
        if i1 == i2:
            continue
        dirs = []
        if (i1, i2) in succ_b:
            dirs.append(True)
        if (i2, i1) in succ_b:
            dirs.append(False)
        if not dirs:
            continue
        c1, c2 = crossings[i1], crossings[i2]
        ki = c1["a"][0]
        comp_a = cx.systems[0].components[ki]
        comp_b = cx.systems[1].components[c1["b"][0]]
        sub_a = _subarc_nodes(comp_a, c1["a"][1], c2["a"][1])
        for forward in dirs:
            if forward:
                sub_b = _subarc_nodes(comp_b, c1["b"][1], c2["b"][1])
            else:
                rev = _subarc_nodes(comp_b, c2["b"][1], c1["b"][1])
                sub_b = [n.reversed() for n in reversed(rev)]
            if is_trivial_loop(schema, _loop_word(sub_a, sub_b)):
                yield ki, c1, c2, sub_a, sub_b, forward


def _remove_bigon(cx, hit) -> bool:
    """Re-route the x side of the bigon parallel to the y side; the side
    of the push-off is settled by trying both and keeping the one that
    drops the crossing count."""
    ki, c1, c2, sub_a, sub_b, forward = hit
    comp_a = cx.systems[0].components[ki]
    n = len(comp_a.nodes)
    drop = set()
    i, j = c1["a"][1], c2["a"][1]
    k = i
    while k != j:
        k = (k + 1) % n if comp_a.closed else k + 1
        drop.add(k)
    base = [comp_a.nodes[idx] for idx in range(n) if idx not in drop]
    pos = next((r for r, nd in enumerate(base) if nd == comp_a.nodes[i]), -1)
    before = len(_cross_pairs(cx))
    for delta_sign in (1, -1):
        delta = _min_gap(cx) * delta_sign / 3
        par = [Node(bn.label, bn.t + delta, bn.d) for bn in sub_b]
        new_nodes = base[:pos + 1] + par + base[pos + 1:]
        try:
            trial = cx.copy()
            trial.systems[0].components[ki] = Component(comp_a.closed,
                                                        tuple(new_nodes))
            trial.validate()
        except SurfaceError:
            continue
        if len(_cross_pairs(trial)) <= before - 2:
            cx.systems[0].components[ki] = Component(comp_a.closed,
                                                     tuple(new_nodes))
            return True
    return False


def _min_gap(cx: Complex) -> Fraction:
    ts = {}
    for sys in cx.systems:
        for comp in sys.components:
            for nd in comp.nodes:
                ts.setdefault(nd.label, []).append(nd.t)
    best = Fraction(1, 4)
    for lab, vals in ts.items():
        vals = sorted(vals) + [Fraction(1)]
        vals = [Fraction(0)] + vals
        for a, b in zip(vals, vals[1:]):
            if b - a > 0:
                best = min(best, b - a)
    return best


def geometric_intersection(schema: PolygonSchema, m1: Multicurve,
                           m2: Multicurve) -> int:
    """Minimal crossing count: remove curve-curve bigons, then count."""
    cx = place(schema, m1, m2)
    while True:
        crossings = _cross_pairs(cx)
        for hit in _bigon_candidates(schema, cx, crossings):
            if _remove_bigon(cx, hit):
                break
        else:
            return len(crossings)
