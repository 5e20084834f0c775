from trisections.schema.cx import (
    BOUNDARY,
    PAIRED,
    Complex,
    Component,
    Node,
    SurfaceError,
    System,
)

__all__ = [
    "BOUNDARY",
    "PAIRED",
    "Complex",
    "Component",
    "Node",
    "SurfaceError",
    "System",
]
