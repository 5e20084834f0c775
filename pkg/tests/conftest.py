import os
import random
from fractions import Fraction

import pytest

from trisections import scriptlang
from trisections.diagram import (
    TriParams,
    TrisectionDiagram,
    stabilization_diagram,
    standard_trisection,
)
from trisections.schema.curves import Multicurve
from trisections.schema.cx import Component, Node
from trisections.schema.polygon import make_standard_schema

FIXTURES = os.path.join(os.path.dirname(__file__), "..",
                        "src", "trisections", "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def fixture_text(name):
    with open(fixture_path(name), "r", encoding="utf-8") as fh:
        return fh.read()


def load_fixture(name):
    return scriptlang.parse_diagram(fixture_text(name))


def fixture_names(suffix=".trid"):
    return sorted(n for n in os.listdir(FIXTURES) if n.endswith(suffix))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def parallel_families_diagram(n, delta=Fraction(1, 53)):
    """Genus-n diagram of #_n S^1 x S^3: three parallel dual families."""
    s = make_standard_schema(n)
    h = Fraction(1, 2)
    fams = []
    for j in range(3):
        comps = [Component(True, (Node("b%d" % (i + 1), h + j * delta, 1),))
                 for i in range(n)]
        fams.append(Multicurve(tuple(comps)))
    return TrisectionDiagram(s, fams[0], fams[1], fams[2],
                             TriParams(n, n, n, n))


def standard_partitions(gmax=3):
    out = []
    for g in range(gmax + 1):
        for k1 in range(g + 1):
            for k2 in range(g - k1 + 1):
                out.append((g, k1, k2, g - k1 - k2))
    return out


def random_closed_diagram(rng: random.Random):
    """A small random well-formed diagram, for format roundtrip tests."""
    from trisections import moves

    kind = rng.randrange(3)
    if kind == 0:
        g, k1, k2, k3 = rng.choice(standard_partitions(2))
        d = standard_trisection(g, k1, k2, k3)
    elif kind == 1:
        d = parallel_families_diagram(rng.randrange(1, 3))
    else:
        d = stabilization_diagram(rng.randrange(1, 4))
    for _ in range(rng.randrange(2)):
        site = rng.randrange(len(d.surface.sides))
        d = moves.stabilize(d, rng.randrange(1, 4), site)
    return d
