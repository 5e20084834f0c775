"""The rewriting calculus: slides, (de)stabilization, gluing, capping."""

import random

import pytest

from trisections import invariants, moves, scriptlang
from trisections.diagram import (
    ArcedRelativeDiagram,
    TriParams,
    TrisectionDiagram,
    stabilization_diagram,
    standard_trisection,
    validate_trisection,
)
from trisections.moves import BoundaryMatching, DestabTriple, MoveError
from trisections.schema.curves import EmbeddedArc, Multicurve

from conftest import load_fixture, parallel_families_diagram


def digest(d):
    return scriptlang.diagram_digest(d)


def created_triple(d: TrisectionDiagram, stype: int) -> DestabTriple:
    """The destabilization triple of the summand stabilize just added:
    its curves sit at the end of each family."""
    i = len(d.alpha.components) - 1
    return DestabTriple((i, i, i), stype - 1,
                        moves._PAIR_SLOTS[stype - 1][0])


BASES = ["s4_genus0.trid", "stab_type1.trid", "stab_type2.trid",
         "stab_type3.trid", "s1xs3.trid", "s1xs3_2.trid"]


@pytest.mark.parametrize("name", BASES)
@pytest.mark.parametrize("stype", [1, 2, 3])
def test_stabilize_destabilize_roundtrip(name, stype):
    d = load_fixture(name)
    up = moves.stabilize(d, stype)
    back = moves.destabilize(up, created_triple(up, stype))
    assert digest(back) == digest(d)


@pytest.mark.parametrize("stype", [1, 2, 3])
def test_stabilize_parameter_bookkeeping(stype):
    for name in BASES:
        d = load_fixture(name)
        p, q = d.params, moves.stabilize(d, stype).params
        assert q.g == p.g + 1
        assert q.ks == tuple(k + (i == stype - 1)
                             for i, k in enumerate(p.ks))


@pytest.mark.parametrize("stype", [1, 2, 3])
def test_both_surgery_choices_agree(stype):
    d = load_fixture("s1xs3.trid")
    up = moves.stabilize(d, stype)
    i = len(up.alpha.components) - 1
    fa, fb = moves._PAIR_SLOTS[stype - 1]
    da = moves.destabilize(up, DestabTriple((i, i, i), stype - 1, fa))
    db = moves.destabilize(up, DestabTriple((i, i, i), stype - 1, fb))
    assert digest(da) == digest(db) == digest(d)


def test_stabilization_diagram_shapes():
    for stype in (1, 2, 3):
        d = stabilization_diagram(stype)
        assert d.params == TriParams(1, stype == 1, stype == 2, stype == 3)
        assert validate_trisection(d, depth=2).status == "certified"
        trips = moves.find_destabilizations(d)
        assert any(t.pair_slot == stype - 1 for t in trips)


def test_find_destabilizations_index_stability():
    d = load_fixture("glued_start.trid")
    trips = moves.find_destabilizations(d)
    assert trips
    # reverse the order of every family; the same sites must be found
    rev = TrisectionDiagram(
        d.surface,
        Multicurve(tuple(reversed(d.alpha.components))),
        Multicurve(tuple(reversed(d.beta.components))),
        Multicurve(tuple(reversed(d.gamma.components))),
        d.params)
    n = len(d.alpha.components)
    mapped = {tuple(n - 1 - i for i in t.indices) + (t.pair_slot,)
              for t in moves.find_destabilizations(rev)}
    assert {t.indices + (t.pair_slot,) for t in trips} == mapped


def test_destabilize_requires_valid_triple():
    d = load_fixture("s4_genus0.trid")
    with pytest.raises(MoveError):
        moves.destabilize(d, DestabTriple((0, 0, 0), 0, "alpha"))


def test_handle_slide_preserves_invariants():
    d = load_fixture("s1xs3_2.trid")
    before = invariants.h1(d)
    slid = moves.handle_slide(d, "alpha", 0, 1,
                              EmbeddedArc((), (0, 0), (1, 0)))
    assert invariants.h1(slid) == before
    assert slid.params == d.params


def test_slide_rejects_cross_family():
    d = load_fixture("s1xs3_2.trid")
    with pytest.raises(MoveError):
        moves.handle_slide(d, "delta", 0, 1, EmbeddedArc((), (0, 0), (1, 0)))


def test_random_slides_invariant_suite():
    rng = random.Random(7)
    d = load_fixture("s1xs3_2.trid")
    h1_0 = invariants.h1(d)
    chi_0 = invariants.euler_char_4manifold(d.params)
    snf_0 = [invariants.invariant_factors(
        invariants.intersection_matrix(d, a, b))
        for a, b in (("alpha", "beta"), ("beta", "gamma"),
                     ("gamma", "alpha"))]
    done = 0
    while done < 25:
        fam = rng.choice(("alpha", "beta", "gamma"))
        m = d.family(fam)
        i = rng.randrange(len(m.components))
        j = rng.randrange(len(m.components))
        if i == j:
            continue
        ci = rng.randrange(len(m.components[i].nodes))
        cj = rng.randrange(len(m.components[j].nodes))
        try:
            d = moves.handle_slide(d, fam, i, j,
                                   EmbeddedArc((), (i, ci), (j, cj)))
        except MoveError:
            continue
        done += 1
    assert invariants.h1(d) == h1_0
    assert invariants.euler_char_4manifold(d.params) == chi_0
    for (a, b), want in zip((("alpha", "beta"), ("beta", "gamma"),
                             ("gamma", "alpha")), snf_0):
        got = invariants.invariant_factors(
            invariants.intersection_matrix(d, a, b))
        assert got == want


# ---------------------------------------------------------------------------
# gluing and capping


def test_glue_sphere_neighborhood_to_annulus():
    n = load_fixture("nu_unknot.trid")
    ann = load_fixture("unknot_complement.trid")
    out = moves.glue(n, ann, BoundaryMatching((("d1", "d1"), ("d2", "d2"))))
    assert isinstance(out, TrisectionDiagram)
    assert invariants.euler_char_4manifold(out.params) == 2
    assert invariants.h1(out) == ()
    d, count = out, 0
    while True:
        trips = moves.find_destabilizations(d)
        if not trips:
            break
        d = moves.destabilize(d, trips[0])
        count += 1
    assert d.params.g == 0
    assert count == out.params.g


def test_glue_projective_pieces_matches_fixture():
    pq = load_fixture("pq_glued.trid")
    ann = load_fixture("unknot_complement.trid")
    out = moves.glue(pq, ann, BoundaryMatching((("d1", "d1"), ("d2", "d2"))))
    assert digest(out) == digest(load_fixture("glued_start.trid"))
    assert out.params == TriParams(6, 2, 2, 2)


def test_glue_rejects_unknown_labels():
    n = load_fixture("nu_unknot.trid")
    ann = load_fixture("unknot_complement.trid")
    with pytest.raises(MoveError):
        moves.glue(n, ann, BoundaryMatching((("d1", "d9"), ("d2", "d1"))))


def test_cap_relative_intermediate():
    pq = load_fixture("pq_glued.trid")
    assert isinstance(pq, ArcedRelativeDiagram)
    capped = moves.trivial_reglue_cap(pq.base, monodromy_identity=True)
    assert capped.params == TriParams(5, 2, 2, 1)
    assert invariants.euler_char_4manifold(capped.params) == 2
    assert invariants.h1(capped) == ()


def test_cap_requires_flag_and_two_circles():
    pq = load_fixture("pq_glued.trid")
    with pytest.raises(MoveError):
        moves.trivial_reglue_cap(pq.base)
    rel = load_fixture("rel_standard.trid")
    with pytest.raises(MoveError):
        moves.trivial_reglue_cap(rel, monodromy_identity=True)
