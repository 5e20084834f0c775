"""Kernel dispatch: compiled extension when built, pure Python otherwise."""

try:
    from trisections._kernels import (  # type: ignore[attr-defined]
        IMPLEMENTATION,
        count_interleavings,
        has_interleaving,
    )
except ImportError:
    from trisections._kernels_py import (  # noqa: F401
        IMPLEMENTATION,
        count_interleavings,
        has_interleaving,
    )

__all__ = ["IMPLEMENTATION", "has_interleaving", "count_interleavings"]
