"""Curve carrying, normalization, and homology classes."""

from fractions import Fraction
from math import gcd

import pytest

from trisections.schema.curves import (
    Multicurve,
    build_complex,
    canonical_word,
    homology_class,
    multicurve_key,
    normalize,
    torus_curve,
)
from trisections.schema.cx import Component, Node, SurfaceError
from trisections.schema.polygon import make_standard_schema

TORUS = make_standard_schema(1)


@pytest.mark.parametrize("p,q", [(1, 0), (0, 1), (1, 1), (2, 3), (-1, 2),
                                 (3, -2), (2, 2), (-4, -6), (5, 0)])
def test_torus_curve_class(p, q):
    m = torus_curve(p, q)
    assert len(m.components) == gcd(abs(p), abs(q))
    total = [0, 0]
    for c in m.components:
        h = homology_class(TORUS, c)
        total[0] += h[0]
        total[1] += h[1]
    assert tuple(total) == (p, q)


def test_torus_zero_slope_rejected():
    with pytest.raises(SurfaceError):
        torus_curve(0, 0)


def test_normalize_removes_side_bigons():
    # a curve wiggling back and forth across a1 twice is isotopic to one
    # crossing it zero extra times
    wiggly = Component(True, (
        Node("b1", Fraction(1, 2), 1),
        Node("a1", Fraction(1, 3), 1),
        Node("a1", Fraction(2, 5), -1),
    ))
    m = normalize(TORUS, Multicurve((wiggly,)))
    assert len(m.components) == 1
    assert m.components[0].word() == (("b1", 1),)


def test_normalize_idempotent():
    m = torus_curve(2, 3)
    n1 = normalize(TORUS, m)
    assert multicurve_key(n1) == multicurve_key(normalize(TORUS, n1))


def test_canonical_word_rotation_and_reversal():
    c = torus_curve(1, 2).components[0]
    n = len(c.nodes)
    rotated = Component(True, c.nodes[1:] + c.nodes[:1])
    assert canonical_word(c) == canonical_word(rotated)
    assert canonical_word(c) == canonical_word(c.reversed())
    assert n == 3


def test_build_complex_checks_embeddedness():
    a = torus_curve(1, 0).components[0]
    b = torus_curve(0, 1).components[0]
    with pytest.raises(SurfaceError):
        build_complex(TORUS, ("m", Multicurve((a, b))))  # they must cross


def test_homology_needs_closed():
    arc_schema = make_standard_schema(0, 2)
    arc = Component(False, (Node("d1", Fraction(1, 2), 0),
                            Node("d2", Fraction(1, 2), 0)))
    with pytest.raises(SurfaceError):
        homology_class(arc_schema, arc)
