"""Intersection numbers; the torus gives a complete closed-form oracle."""

import itertools

import pytest

from trisections.schema.curves import torus_curve
from trisections.schema.intersect import (
    algebraic_intersection,
    geometric_intersection,
)
from trisections.schema.polygon import make_standard_schema

TORUS = make_standard_schema(1)

SMALL = [(p, q) for p in range(-3, 4) for q in range(-3, 4)
         if (p, q) != (0, 0)]


def test_torus_oracle_small_range():
    for (p, q), (r, s) in itertools.product(SMALL, repeat=2):
        got = geometric_intersection(TORUS, torus_curve(p, q),
                                     torus_curve(r, s))
        assert got == abs(p * s - q * r), ((p, q), (r, s))


@pytest.mark.parametrize("a,b", [((1, 0), (0, 1)), ((2, 1), (1, 2)),
                                 ((1, 3), (-2, 1))])
def test_algebraic_antisymmetry(a, b):
    m1, m2 = torus_curve(*a), torus_curve(*b)
    x = algebraic_intersection(TORUS, m1, m2)
    y = algebraic_intersection(TORUS, m2, m1)
    assert x == -y
    assert x == a[0] * b[1] - a[1] * b[0]


def test_algebraic_bounded_by_geometric():
    for (p, q), (r, s) in itertools.product(SMALL[:20], SMALL[:20]):
        m1, m2 = torus_curve(p, q), torus_curve(r, s)
        assert abs(algebraic_intersection(TORUS, m1, m2)) <= \
            geometric_intersection(TORUS, m1, m2)


def test_self_intersection_zero():
    m = torus_curve(2, 3)
    assert geometric_intersection(TORUS, m, m) == 0
