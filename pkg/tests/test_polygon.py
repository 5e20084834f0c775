"""Surface schema basics against the closed-form Euler characteristic."""

import pytest

from trisections.schema.cx import SurfaceError
from trisections.schema.polygon import (
    PolygonSchema,
    euler_characteristic_surface,
    make_standard_schema,
)


@pytest.mark.parametrize("g", range(4))
@pytest.mark.parametrize("b", range(4))
def test_standard_schema_shape(g, b):
    s = make_standard_schema(g, b)
    assert s.genus == g
    assert s.boundary_count == b
    assert euler_characteristic_surface(s) == 2 - 2 * g - b
    assert s.is_standard()


def test_sphere_is_bigon():
    s = make_standard_schema(0)
    assert s.sides == (("a1", 1), ("a1", -1))
    assert s.boundary_labels == ()


def test_boundary_labels_in_word_order():
    s = make_standard_schema(2, 3)
    assert s.boundary_labels == ("d1", "d2", "d3")


def test_negative_parameters_rejected():
    with pytest.raises(SurfaceError):
        make_standard_schema(-1, 0)
    with pytest.raises(SurfaceError):
        make_standard_schema(0, -2)


def test_nonstandard_word_same_surface():
    # a a b b is the Klein-bottle style word for the orientable genus-1
    # surface only when signs alternate; use the valid alternative form
    s = PolygonSchema((("x", 1), ("y", 1), ("x", -1), ("y", -1)))
    assert (s.genus, s.boundary_count) == (1, 0)
    assert not s.is_standard()


def test_bad_pairing_rejected():
    with pytest.raises(SurfaceError):
        PolygonSchema((("x", 1), ("x", 1), ("x", -1)))


def test_side_kind():
    s = make_standard_schema(1, 1)
    assert s.side_kind("d1") == "boundary"
    assert s.side_kind("a1") == "paired"
    assert s.paired_labels() == ("a1", "b1", "e1")
