"""End-to-end acceptance checks with explicit time budgets.

Each test asserts both the mathematical requirement and that it ran
inside its budget, so the suite doubles as a coarse performance gate.
"""

import dataclasses
import itertools
import random
import time
from fractions import Fraction

import pytest

from trisections import invariants, moves, scriptlang
from trisections.diagram import (
    TriParams,
    standard_trisection,
    validate_trisection,
)
from trisections.moves import DestabTriple
from trisections.schema.curves import EmbeddedArc, Multicurve, torus_curve
from trisections.schema.cx import Component, Node
from trisections.schema.intersect import geometric_intersection
from trisections.schema.polygon import make_standard_schema
from trisections.scriptlang import parse_script, replay

from conftest import (
    FIXTURES,
    fixture_names,
    fixture_text,
    load_fixture,
    parallel_families_diagram,
    random_closed_diagram,
    standard_partitions,
)


def digest(d):
    return scriptlang.diagram_digest(d)


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.monotonic()

    def check(self):
        elapsed = time.monotonic() - self.start
        assert elapsed < self.seconds, "over budget: %.1fs" % elapsed


# 1. stabilize/destabilize roundtrip is the identity on serialized form

def test_roundtrip_digests():
    budget = Budget(5.0)
    bases = []
    for g, k1, k2, k3 in standard_partitions(2):
        bases.append(standard_trisection(g, k1, k2, k3))
    bases.append(parallel_families_diagram(1))
    bases.append(parallel_families_diagram(2))
    for d in bases:
        for stype in (1, 2, 3):
            up = moves.stabilize(d, stype)
            i = len(up.alpha.components) - 1
            trip = DestabTriple((i, i, i), stype - 1,
                                moves._PAIR_SLOTS[stype - 1][0])
            back = moves.destabilize(up, trip)
            assert digest(back) == digest(d)
    budget.check()


# 2. parameter bookkeeping under stabilization

def test_parameter_bookkeeping():
    budget = Budget(1.0)
    for g, k1, k2, k3 in standard_partitions(2):
        d = standard_trisection(g, k1, k2, k3)
        for stype in (1, 2, 3):
            q = moves.stabilize(d, stype).params
            assert q.g == g + 1
            assert q.ks == tuple(k + (i == stype - 1)
                                 for i, k in enumerate((k1, k2, k3)))
    budget.check()


# 3. Euler characteristic and first homology of the model manifolds

def test_model_manifold_invariants():
    budget = Budget(1.0)
    cases = [("s4_genus0.trid", 2, ()),
             ("cp2.trid", 3, ()),
             ("s1xs3.trid", 0, (0,)),
             ("s1xs3_2.trid", -2, (0, 0))]
    for name, chi, h1 in cases:
        d = load_fixture(name)
        d = getattr(d, "base", d)
        assert invariants.euler_char_4manifold(d.params) == chi
        # independent count: chi = (3 - sum k_i) - 3(1 - g) + (2 - 2g)
        g, ks = d.params.g, d.params.ks
        assert chi == (3 - sum(ks)) - 3 * (1 - g) + (2 - 2 * g)
        assert invariants.h1(d) == h1
    budget.check()


# 4. handle slides never change the invariant suite

def test_slides_preserve_invariants():
    budget = Budget(30.0)
    rng = random.Random(40)
    starts = ["s1xs3_2.trid", "glued_start.trid"]
    total = 0
    for name in starts:
        d = load_fixture(name)
        h1_0 = invariants.h1(d)
        chi_0 = invariants.euler_char_4manifold(d.params)
        snf_0 = [invariants.invariant_factors(
            invariants.intersection_matrix(d, a, b))
            for a, b in (("alpha", "beta"), ("beta", "gamma"),
                         ("gamma", "alpha"))]
        done = 0
        while done < 60:
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
            except moves.MoveError:
                continue
            done += 1
            total += 1
            assert invariants.h1(d) == h1_0
            assert invariants.euler_char_4manifold(d.params) == chi_0
            got = [invariants.invariant_factors(
                invariants.intersection_matrix(d, a, b))
                for a, b in (("alpha", "beta"), ("beta", "gamma"),
                             ("gamma", "alpha"))]
            assert got == snf_0
    assert total >= 100
    budget.check()


# 5. torus intersection numbers against the closed form |ps - qr|

def test_torus_intersection_oracle():
    budget = Budget(60.0)
    torus = make_standard_schema(1)
    pairs = [(p, q) for p in range(-5, 6) for q in range(-5, 6)
             if (p, q) != (0, 0)]
    curves = {pq: torus_curve(*pq) for pq in pairs}
    for (p, q), (r, s) in itertools.product(pairs, repeat=2):
        got = geometric_intersection(torus, curves[(p, q)], curves[(r, s)])
        assert got == abs(p * s - q * r), ((p, q), (r, s))
    budget.check()


# 6. the validator certifies standard diagrams and rejects mutations

def _mutate_one_curve(d):
    """Swap one curve's label a_i <-> b_i, changing its homology class."""
    comp = d.alpha.components[0]
    lab = comp.nodes[0].label
    new = ("a" if lab.startswith("b") else "b") + lab[1:]
    mut = Component(closed=True,
                    nodes=(Node(new, Fraction(1, 101), 1),))
    return dataclasses.replace(
        d, alpha=Multicurve((mut,) + d.alpha.components[1:]))


def test_validator_certifies_and_rejects():
    budget = Budget(60.0)
    for g, k1, k2, k3 in standard_partitions(3):
        d = standard_trisection(g, k1, k2, k3)
        assert validate_trisection(d, 8).status == "certified", (g, k1, k2, k3)
        if g > 0:
            assert validate_trisection(_mutate_one_curve(d), 8).status == \
                "failed", (g, k1, k2, k3)
    for n in (1, 2, 3):
        d = parallel_families_diagram(n)
        assert validate_trisection(d, 8).status == "certified"
        assert validate_trisection(_mutate_one_curve(d), 8).status == "failed"
    budget.check()


# 7. the main reduction replays mechanically

def test_main_reduction_replay():
    budget = Budget(60.0)
    d0 = load_fixture("glued_start.trid")
    script = parse_script(fixture_text("proof.mvs"))
    final, trace = replay(script, d0, base_dir=FIXTURES)
    assert trace.destabilization_count() == 6
    for row in trace.rows:
        assert row.chi == 2
        assert row.h1 == ()
    assert final.params == TriParams(0, 0, 0, 0)
    assert digest(final) == digest(load_fixture("t_prime_standard.trid"))
    budget.check()


def test_capping_route_replay():
    budget = Budget(60.0)
    d0 = load_fixture("pq_glued.trid")
    script = parse_script(fixture_text("corollary.mvs"))
    final, trace = replay(script, d0, base_dir=FIXTURES)
    assert final.params.g == 0
    assert invariants.euler_char_4manifold(final.params) == 2
    assert invariants.h1(final) == ()
    budget.check()


# 8. parse/serialize is the identity

def test_format_roundtrip_fixtures_and_random():
    budget = Budget(30.0)
    for name in fixture_names(".trid"):
        text = fixture_text(name)
        pf = scriptlang.load_diagram_file(text)
        assert scriptlang.serialize_diagram(pf.diagram, pf.matching) == text, \
            name
    rng = random.Random(80)
    for _ in range(500):
        d = random_closed_diagram(rng)
        text = scriptlang.serialize_diagram(d)
        assert scriptlang.serialize_diagram(
            scriptlang.parse_diagram(text)) == text
    budget.check()
