"""Regenerate the shipped fixture set.

Builds the standard diagrams, the three boundary pieces of the twisted
double construction, glues them into the genus-6 starting diagram, derives
the destabilization script from the glued fixture, and writes everything
under src/trisections/fixtures/.  The big glue step classifies a genus-5
surface word and takes about half a minute; run this only when the fixture
set actually changes.
"""

import os
import sys
from fractions import Fraction as F

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from trisections import invariants, moves, scriptlang
from trisections.diagram import (
    ArcedRelativeDiagram,
    RelativeTrisectionDiagram,
    RelParams,
    cp2_doubly_pointed,
    stabilization_diagram,
    standard_trisection,
    validate_relative,
    validate_trisection,
)
from trisections.moves import BoundaryMatching, glue
from trisections.schema.curves import Multicurve
from trisections.schema.cx import Component, Node
from trisections.schema.polygon import make_standard_schema

OUT = os.path.join(os.path.dirname(__file__), "..",
                   "src", "trisections", "fixtures")

H = F(1, 2)
D = F(1, 53)


def C(*nodes):
    return Component(True, tuple(
        Node(l, F(*t) if isinstance(t, tuple) else F(t), d)
        for l, t, d in nodes))


def A(*nodes):
    return Component(False, tuple(
        Node(l, F(*t) if isinstance(t, tuple) else F(t), d)
        for l, t, d in nodes))


def M(*comps):
    return Multicurve(tuple(comps))


# ---------------------------------------------------------------------------
# boundary pieces
#
# All three pieces carry one arc per family and per matched circle; each
# arc runs between the two boundary sides, and a gluing-side twist is
# encoded by routing the arc across the adjacent collar side (e-label).
# The arc parameters on the two sides of a matched circle mirror each
# other (t on one side glues to 1-t on the other).


def twisted_projective_neighborhood() -> ArcedRelativeDiagram:
    """Genus-1 piece with two boundary circles: alpha and beta are parallel
    duals of the handle, gamma is the core."""
    s = make_standard_schema(1, 2)
    alpha = C(("b1", H, 1))
    beta = C(("b1", H + D, 1))
    gamma = C(("a1", H, -1))
    base = RelativeTrisectionDiagram(s, M(alpha), M(beta), M(gamma),
                                     RelParams(1, 1, 0, 2))
    return ArcedRelativeDiagram(
        base,
        M(A(("d1", (1, 4), 0), ("d2", (1, 4), 0))),
        M(A(("d1", (2, 4), 0), ("d2", (2, 4), 0))),
        M(A(("d1", (3, 4), 0), ("d2", (3, 4), 0))))


def projective_complement() -> ArcedRelativeDiagram:
    """Genus-3 piece with four boundary circles.

    The three handles realize the three genus-1 block types; the twist
    crossings on the alpha arc of the first circle pair and the beta arc
    of the second pair make the fused gluing curves duals of the right
    families after assembly.
    """
    s = make_standard_schema(3, 4)
    alpha = [C(("b1", H, 1)), C(("a2", H, -1)), C(("b3", H + D, 1))]
    beta = [C(("b1", H + D, 1)), C(("b2", H, 1)), C(("a3", H, -1))]
    gamma = [C(("a1", H, -1)), C(("b2", H + D, 1)), C(("b3", H, 1))]
    arcs_a = M(A(("d2", (3, 4), 0), ("e1", H, 1), ("d1", (3, 4), 0)),
               A(("d3", (1, 4), 0), ("d4", (1, 4), 0)))
    arcs_b = M(A(("d1", (2, 4), 0), ("d2", (2, 4), 0)),
               A(("d4", (2, 4), 0), ("e3", H, 1), ("d3", (2, 4), 0)))
    arcs_g = M(A(("d1", (1, 4), 0), ("d2", (1, 4), 0)),
               A(("d3", (3, 4), 0), ("d4", (3, 4), 0)))
    base = RelativeTrisectionDiagram(s, M(*alpha), M(*beta), M(*gamma),
                                     RelParams(3, 3, 0, 4))
    return ArcedRelativeDiagram(base, arcs_a, arcs_b, arcs_g)


def annulus_complement() -> ArcedRelativeDiagram:
    """The annulus piece: no curves, one straight arc per family."""
    s = make_standard_schema(0, 2)
    base = RelativeTrisectionDiagram(s, M(), M(), M(), RelParams(0, 1, 0, 2))
    return ArcedRelativeDiagram(
        base,
        M(A(("d1", (3, 4), 0), ("d2", (3, 4), 0))),
        M(A(("d1", (2, 4), 0), ("d2", (2, 4), 0))),
        M(A(("d1", (1, 4), 0), ("d2", (1, 4), 0))))


def sphere_neighborhood() -> ArcedRelativeDiagram:
    """Genus-1 piece gluing to the annulus into a genus-2 sphere diagram;
    the twist sits on the alpha arc."""
    s = make_standard_schema(1, 2)
    alpha = C(("b1", H, 1))
    beta = C(("b1", H + D, 1))
    gamma = C(("a1", H, -1))
    base = RelativeTrisectionDiagram(s, M(alpha), M(beta), M(gamma),
                                     RelParams(1, 1, 0, 2))
    return ArcedRelativeDiagram(
        base,
        M(A(("d2", (1, 4), 0), ("e1", H, 1), ("d1", (1, 4), 0))),
        M(A(("d1", (2, 4), 0), ("d2", (2, 4), 0))),
        M(A(("d1", (3, 4), 0), ("d2", (3, 4), 0))))


def s1_x_s3(n: int):
    """Genus-n diagram of the n-fold connected sum of S^1 x S^3: all three
    families are parallel copies of the handle duals."""
    from trisections.diagram import TriParams, TrisectionDiagram
    s = make_standard_schema(n)
    fams = []
    for j in range(3):
        fams.append(M(*[C(("b%d" % (i + 1), H + j * D, 1))
                        for i in range(n)]))
    return TrisectionDiagram(s, fams[0], fams[1], fams[2],
                             TriParams(n, n, n, n))


def relative_standard() -> RelativeTrisectionDiagram:
    """Genus-1 one-boundary diagram with three parallel handle duals."""
    s = make_standard_schema(1, 1)
    return RelativeTrisectionDiagram(
        s, M(C(("b1", H, 1))), M(C(("b1", H + D, 1))),
        M(C(("b1", H + 2 * D, 1))), RelParams(1, 1, 0, 1))


# ---------------------------------------------------------------------------
# writing


def write(name, text):
    path = os.path.join(OUT, name)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    print("wrote %s" % name)


def reparse(name):
    with open(os.path.join(OUT, name), "r", encoding="utf-8") as fh:
        return scriptlang.load_diagram_file(fh.read()).diagram


def main():
    os.makedirs(OUT, exist_ok=True)
    match = BoundaryMatching((("d1", "d1"), ("d2", "d2")))

    write("s4_genus0.trid",
          scriptlang.serialize_diagram(standard_trisection(0, 0, 0, 0)))
    write("t_prime_standard.trid",
          scriptlang.serialize_diagram(standard_trisection(0, 0, 0, 0)))
    for t in (1, 2, 3):
        write("stab_type%d.trid" % t,
              scriptlang.serialize_diagram(stabilization_diagram(t)))
    write("cp2.trid", scriptlang.serialize_diagram(cp2_doubly_pointed()))
    write("s1xs3.trid", scriptlang.serialize_diagram(s1_x_s3(1)))
    write("s1xs3_2.trid", scriptlang.serialize_diagram(s1_x_s3(2)))
    write("rel_standard.trid",
          scriptlang.serialize_diagram(relative_standard()))

    P = twisted_projective_neighborhood()
    Q = projective_complement()
    ann = annulus_complement()
    N = sphere_neighborhood()
    write("nu_pminus.trid", scriptlang.serialize_diagram(P))
    write("s4_minus_nu_pminus.trid",
          scriptlang.serialize_diagram(Q, matching=match))
    write("unknot_complement.trid",
          scriptlang.serialize_diagram(ann, matching=match))
    write("nu_unknot.trid", scriptlang.serialize_diagram(N))

    print("gluing the projective pieces (slow step) ...")
    pq = glue(reparse("nu_pminus.trid"), reparse("s4_minus_nu_pminus.trid"),
              match)
    assert isinstance(pq, ArcedRelativeDiagram)
    rep = validate_relative(pq.base, depth=2)
    assert rep.status != "failed", rep.lines()
    write("pq_glued.trid", scriptlang.serialize_diagram(pq))

    pq = reparse("pq_glued.trid")
    start = glue(pq, reparse("unknot_complement.trid"), match)
    assert invariants.euler_char_4manifold(start.params) == 2
    assert invariants.h1(start) == ()
    rep = validate_trisection(start, depth=2)
    assert rep.status == "certified", rep.lines()
    write("glued_start.trid", scriptlang.serialize_diagram(start))

    # proof script: destabilize six times, asserting the invariants after
    # every step, and land exactly on the genus-0 standard diagram
    d = reparse("glued_start.trid")
    target = scriptlang.diagram_digest(reparse("t_prime_standard.trid"))
    lines = ["# six destabilizations from the glued genus-6 diagram",
             "ASSERT genus 6", "ASSERT chi 2", "ASSERT h1 trivial"]
    for _ in range(6):
        cands = moves.find_destabilizations(d)
        assert cands, "destabilization sequence broke off early"
        t = cands[0]
        d = moves.destabilize(d, t)
        ia, ib, ic = t.indices
        lines.append("DESTABILIZE %d %d %d %d %s"
                     % (ia, ib, ic, t.pair_slot, t.surger))
        lines.append("ASSERT chi 2")
        lines.append("ASSERT h1 trivial")
    assert d.params.g == 0
    got = scriptlang.diagram_digest(d)
    assert got == target, "proof endpoint %s != standard %s" % (got, target)
    lines.append("ASSERT genus 0")
    lines.append("ASSERT digest %s" % target)
    write("proof.mvs", "\n".join(lines) + "\n")

    # corollary script: cap the two boundary circles of the relative
    # intermediate (identity monodromy), then destabilize to genus 0
    d = moves.trivial_reglue_cap(reparse("pq_glued.trid").base,
                                 monodromy_identity=True)
    lines = ["# cap both boundary circles, then destabilize to genus 0",
             "CAP identity-monodromy", "ASSERT chi 2", "ASSERT h1 trivial"]
    while True:
        cands = moves.find_destabilizations(d)
        if not cands:
            break
        t = cands[0]
        d = moves.destabilize(d, t)
        ia, ib, ic = t.indices
        lines.append("DESTABILIZE %d %d %d %d %s"
                     % (ia, ib, ic, t.pair_slot, t.surger))
        lines.append("ASSERT chi 2")
        lines.append("ASSERT h1 trivial")
    assert d.params.g == 0, d.params
    lines.append("ASSERT genus 0")
    lines.append("ASSERT digest %s" % scriptlang.diagram_digest(d))
    write("corollary.mvs", "\n".join(lines) + "\n")

    write("roundtrip.mvs", "STABILIZE 1\nDESTABILIZE auto\n")

    # sanity: replaying the shipped scripts from the shipped fixtures
    final, trace = scriptlang.replay(
        scriptlang.parse_script(open(os.path.join(OUT, "proof.mvs")).read()),
        reparse("glued_start.trid"), base_dir=OUT)
    assert trace.destabilization_count() == 6
    assert scriptlang.diagram_digest(final) == target
    print("proof replay ok: %d rows" % len(trace.rows))


if __name__ == "__main__":
    main()
