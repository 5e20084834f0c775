"""Exact homological invariants of diagrams.

Everything here is integer arithmetic: Smith normal form with unimodular
transforms, first homology of the 4-manifold a diagram describes, a
finite presentation of its fundamental group, the Euler characteristic
from the trisection parameters, and pairwise intersection matrices.
"""

from dataclasses import dataclass

from trisections.schema.curves import Multicurve, homology_class
from trisections.schema.intersect import algebraic_intersection

__all__ = [
    "IntegerMatrix",
    "FinitePresentation",
    "smith_normal_form",
    "invariant_factors",
    "euler_char_4manifold",
    "class_matrix",
    "h1",
    "pi1_presentation",
    "abelianization",
    "intersection_matrix",
]


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_lists(grid) -> "IntegerMatrix":
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        return IntegerMatrix(rows, cols, tuple(tuple(r) for r in grid))

    @staticmethod
    def identity(n: int) -> "IntegerMatrix":
        return IntegerMatrix(n, n, tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        grid = [[sum(self.entries[i][t] * other.entries[t][j]
                     for t in range(self.cols))
                 for j in range(other.cols)] for i in range(self.rows)]
        return IntegerMatrix.from_lists(grid) if grid \
            else IntegerMatrix(0, other.cols, ())

    def diagonal(self):
        return tuple(self.entries[i][i]
                     for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class FinitePresentation:
    """Generators plus relator words; a word is a tuple of (gen, +-1)."""
    generators: tuple
    relators: tuple

    def __post_init__(self):
        gens = set(self.generators)
        for word in self.relators:
            for g, s in word:
                if g not in gens or s not in (1, -1):
                    raise ValueError("relator letter %r not a generator" % (g,))


def smith_normal_form(m: IntegerMatrix):
    """Returns (d, u, v) with u @ m @ v = d, d diagonal with d_i | d_{i+1},
    u and v unimodular.  Pivot: smallest nonzero absolute value, then
    top-left position."""
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row i -= q * row j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for r in a:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(nr, nc):
        piv = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (piv is None
                                or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break
        # pivot must divide the rest of the submatrix
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return (IntegerMatrix.from_lists(a) if a else IntegerMatrix(0, nc, ()),
            IntegerMatrix.from_lists(u) if u else IntegerMatrix(0, 0, ()),
            IntegerMatrix.from_lists(v) if v else IntegerMatrix(0, 0, ()))


def invariant_factors(m: IntegerMatrix):
    """Nonzero diagonal entries of the Smith form, in order."""
    d, _, _ = smith_normal_form(m)
    return tuple(x for x in d.diagonal() if x)


def euler_char_4manifold(params) -> int:
    """chi of the closed 4-manifold with the given trisection parameters:
    2 + g - (k1 + k2 + k3)."""
    return 2 + params.g - (params.k1 + params.k2 + params.k3)


def class_matrix(schema, *families) -> IntegerMatrix:
    """One row per closed component of the given multicurves: its homology
    class in Z^{2g}."""
    rows = []
    for m in families:
        for c in m.components:
            rows.append(tuple(homology_class(schema, c)))
    return IntegerMatrix(len(rows), 2 * schema.genus, tuple(rows))


def h1(d):
    """Invariant factors of H_1 of the 4-manifold: the quotient of Z^{2g}
    by the row space of the alpha/beta/gamma class matrix.  Torsion
    factors > 1 first, then one 0 per free rank."""
    m = class_matrix(d.surface, d.alpha, d.beta, d.gamma)
    facs = invariant_factors(m)
    torsion = tuple(x for x in facs if x > 1)
    free = m.cols - len(facs)
    return torsion + (0,) * free


def pi1_presentation(d) -> FinitePresentation:
    """Presentation of pi_1 of the 4-manifold: surface edge generators
    modulo a spanning tree of the glued 1-skeleton, the polygon relator,
    and one relator per diagram curve (its word of side crossings)."""
    s = d.surface
    cx = s.complex()
    orbits = cx.corner_orbits()
    vert = {}
    for vi, orb in enumerate(orbits):
        for c in orb:
            vert[c] = vi
    n = len(s.sides)
    occ = cx.occurrences()
    edges = {}
    for lab in sorted({l for l, _ in s.sides}):
        op = next(o for o in occ[lab] if o.sign > 0)
        edges[lab] = (vert[(op.face, op.pos)],
                      vert[(op.face, (op.pos + 1) % n)])
    tree = set()
    reached = {0} if orbits else set()
    grew = True
    while grew:
        grew = False
        for lab in sorted(edges):
            a, b = edges[lab]
            if lab in tree:
                continue
            if (a in reached) != (b in reached):
                tree.add(lab)
                reached.update((a, b))
                grew = True
    gens = tuple(l for l in sorted(edges) if l not in tree)

    def strip(word):
        return tuple((l, sgn) for l, sgn in word if l not in tree)

    relators = [strip(s.sides)]
    for m in (d.alpha, d.beta, d.gamma):
        for c in m.components:
            relators.append(strip((node.label, node.d) for node in c.nodes))
    return FinitePresentation(gens, tuple(relators))


def abelianization(p: FinitePresentation):
    """Invariant factors of the abelianized presentation, same format
    as h1."""
    idx = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for word in p.relators:
        row = [0] * len(p.generators)
        for g, sgn in word:
            row[idx[g]] += sgn
        rows.append(tuple(row))
    m = IntegerMatrix(len(rows), len(p.generators), tuple(rows))
    facs = invariant_factors(m)
    torsion = tuple(x for x in facs if x > 1)
    return torsion + (0,) * (len(p.generators) - len(facs))


_FAMILIES = ("alpha", "beta", "gamma")


def intersection_matrix(d, family_a: str, family_b: str) -> IntegerMatrix:
    """Entry (i, j) = algebraic intersection of the i-th curve of family_a
    with the j-th curve of family_b."""
    if family_a not in _FAMILIES or family_b not in _FAMILIES:
        raise ValueError("family must be one of %s" % (_FAMILIES,))
    ma = getattr(d, family_a)
    mb = getattr(d, family_b)
    grid = []
    for ca in ma.components:
        row = []
        for cb in mb.components:
            row.append(algebraic_intersection(
                d.surface, Multicurve((ca,)), Multicurve((cb,))))
        grid.append(tuple(row))
    return IntegerMatrix(len(grid), len(mb.components), tuple(grid))
