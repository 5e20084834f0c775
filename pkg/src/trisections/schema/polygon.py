"""Polygon gluing schemas: the public immutable surface description.

A schema is a single polygon whose sides are identified in pairs (kind
"paired") or left free (kind "boundary").  The side word is read
counterclockwise, so the face interior lies to the left of each side.
"""

from dataclasses import dataclass
from functools import cached_property

from trisections.schema.cx import BOUNDARY, PAIRED, Complex, SurfaceError

__all__ = [
    "PolygonSchema",
    "make_standard_schema",
    "euler_characteristic_surface",
]


@dataclass(frozen=True)
class PolygonSchema:
    """A one-polygon identification schema for a compact oriented surface.

    sides: counterclockwise cyclic word of (label, orientation) with
    orientation +1/-1; boundary_labels: labels left unglued, in the order
    they appear in the word.
    """

    sides: tuple[tuple[str, int], ...]
    boundary_labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sides",
                           tuple((str(l), int(s)) for l, s in self.sides))
        object.__setattr__(self, "boundary_labels",
                           tuple(self.boundary_labels))
        cx = self.complex()
        cx.validate_structure()
        if not cx.is_connected():
            raise SurfaceError("schema does not describe a connected surface")
        cx.genus_and_boundary()  # raises when inconsistent

    def complex(self) -> Complex:
        """A fresh mutable complex carrying no curve systems."""
        return Complex.from_word(self.sides, self.boundary_labels)

    @cached_property
    def _gb(self) -> tuple[int, int]:
        return self.complex().genus_and_boundary()

    @property
    def genus(self) -> int:
        return self._gb[0]

    @property
    def boundary_count(self) -> int:
        return self._gb[1]

    @property
    def euler_characteristic(self) -> int:
        g, b = self._gb
        return 2 - 2 * g - b

    def side_kind(self, label: str) -> str:
        return BOUNDARY if label in self.boundary_labels else PAIRED

    def paired_labels(self) -> tuple[str, ...]:
        seen = []
        for l, _ in self.sides:
            if l not in self.boundary_labels and l not in seen:
                seen.append(l)
        return tuple(seen)

    def is_standard(self) -> bool:
        """True when the side word is the standard form produced by
        make_standard_schema (up to nothing: exact label match)."""
        return self == make_standard_schema(self.genus, self.boundary_count)


def make_standard_schema(g: int, b: int = 0) -> PolygonSchema:
    """Standard fundamental polygon: commutators [a_i, b_i] followed by
    boundary blocks e_j d_j e_j^-1, with d_j the boundary sides.

    The sphere (g = 0, b = 0) is the bigon a1 a1^-1.
    """
    if g < 0 or b < 0:
        raise SurfaceError("genus and boundary count must be nonnegative")
    word = []
    for i in range(1, g + 1):
        a, bb = "a%d" % i, "b%d" % i
        word += [(a, 1), (bb, 1), (a, -1), (bb, -1)]
    blabels = []
    for j in range(1, b + 1):
        e, d = "e%d" % j, "d%d" % j
        word += [(e, 1), (d, 1), (e, -1)]
        blabels.append(d)
    if not word:
        word = [("a1", 1), ("a1", -1)]
    return PolygonSchema(tuple(word), tuple(blabels))


def euler_characteristic_surface(s: PolygonSchema) -> int:
    """Vertices - edges + 1, computed from the identification."""
    return s.complex().euler_characteristic()
