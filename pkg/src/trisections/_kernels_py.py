"""Pure-Python chord kernels.

Chords on a disk boundary are given by integer endpoint ranks in a global
circular order.  Two chords cross iff their endpoint pairs interleave.
These two loops are the innermost primitive of embeddedness checking and
crossing counting; a compiled twin lives in _kernels.pyx.
"""

IMPLEMENTATION = "python"


def _interleaves(a1, b1, a2, b2):
    if a1 > b1:
        a1, b1 = b1, a1
    inside2 = a1 < a2 < b1
    inside3 = a1 < b2 < b1
    return inside2 != inside3


def has_interleaving(starts, ends):
    """True if any two chords (starts[i], ends[i]) interleave."""
    n = len(starts)
    for i in range(n):
        for j in range(i + 1, n):
            if _interleaves(starts[i], ends[i], starts[j], ends[j]):
                return True
    return False


def count_interleavings(starts1, ends1, starts2, ends2):
    """Number of interleaving pairs between two chord families."""
    total = 0
    for i in range(len(starts1)):
        a, b = starts1[i], ends1[i]
        if a > b:
            a, b = b, a
        for j in range(len(starts2)):
            if (a < starts2[j] < b) != (a < ends2[j] < b):
                total += 1
    return total
