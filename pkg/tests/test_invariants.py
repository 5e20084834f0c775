"""Homological invariants, with the Smith form checked two independent ways:
the transformation identity U m V = D, and the gcd-of-minors formula."""

import itertools
from math import gcd

from hypothesis import given, settings
from hypothesis import strategies as st

from trisections import invariants
from trisections.diagram import standard_trisection
from trisections.invariants import (
    IntegerMatrix,
    euler_char_4manifold,
    invariant_factors,
    smith_normal_form,
)

from conftest import load_fixture, parallel_families_diagram


def det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det(minor)
    return total


def minors_gcd(rows, k):
    """gcd of all k x k minors; zero when every minor vanishes."""
    m, n = len(rows), len(rows[0])
    g = 0
    for ri in itertools.combinations(range(m), k):
        for ci in itertools.combinations(range(n), k):
            sub = [[rows[i][j] for j in ci] for i in ri]
            g = gcd(g, abs(det(sub)))
    return g


def mat_mult(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


small = st.integers(min_value=-6, max_value=6)


@settings(max_examples=120, deadline=None)
@given(st.lists(st.lists(small, min_size=1, max_size=4),
                min_size=1, max_size=4).filter(
                    lambda r: len({len(x) for x in r}) == 1))
def test_smith_form_identity_and_minors(rows):
    m = IntegerMatrix.from_lists(rows)
    d, u, v = smith_normal_form(m)
    urows = [list(r) for r in u.entries]
    vrows = [list(r) for r in v.entries]
    # U m V = D exactly
    prod = mat_mult(mat_mult(urows, rows), vrows)
    drows = [list(r) for r in d.entries]
    assert prod == drows
    # D diagonal with a divisibility chain
    diag = []
    for i, row in enumerate(drows):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
            elif x:
                diag.append(abs(x))
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    # transformation matrices are unimodular
    assert abs(det(urows)) == 1
    assert abs(det(vrows)) == 1
    # invariant factor k = gcd of k-minors / gcd of (k-1)-minors
    prev = 1
    for k, dk in enumerate(diag, start=1):
        cur = minors_gcd(rows, k)
        assert cur == prev * dk
        prev = cur


def test_euler_char_inclusion_exclusion():
    # chi(X) of a (g; k1,k2,k3) trisection from the pieces: three
    # 1-handlebodies (chi = 1 - k), three handlebody walls (chi = 1 - g),
    # one central surface (chi = 2 - 2g)
    for g in range(4):
        for k1 in range(g + 1):
            for k2 in range(g - k1 + 1):
                k3 = g - k1 - k2
                p = standard_trisection(g, k1, k2, k3).params
                oracle = (3 - (k1 + k2 + k3)) - 3 * (1 - g) + (2 - 2 * g)
                assert euler_char_4manifold(p) == oracle


def test_h1_fixture_values():
    assert invariants.h1(load_fixture("s4_genus0.trid")) == ()
    assert invariants.h1(load_fixture("cp2.trid").base) == ()
    assert invariants.h1(load_fixture("s1xs3.trid")) == (0,)
    assert invariants.h1(load_fixture("s1xs3_2.trid")) == (0, 0)


def test_pi1_abelianization_matches_h1():
    for d in (standard_trisection(2, 1, 1, 0),
              parallel_families_diagram(2),
              load_fixture("cp2.trid").base):
        pres = invariants.pi1_presentation(d)
        assert invariants.abelianization(pres) == invariants.h1(d)


def test_intersection_matrix_shape():
    d = load_fixture("glued_start.trid")
    m = invariants.intersection_matrix(d, "alpha", "beta")
    assert m.rows == 6 and m.cols == 6
    assert invariant_factors(m) == (1, 1, 1, 1)
