"""Word problem in the fundamental group of a standard schema.

A loop transverse to the sides is encoded by its crossing word: the
sequence of (side label, direction) letters.  Triviality testing:

* boundary present: the group is free on the paired sides, so free
  reduction decides;
* closed torus: abelianization (exponent sums) decides;
* closed genus >= 2: Dehn's algorithm with the surface relator.

Only standard schemas are supported; callers normalize first.
"""

from trisections.schema.cx import SurfaceError
from trisections.schema.polygon import PolygonSchema

__all__ = ["free_reduce", "is_trivial_loop"]


def free_reduce(word):
    out = []
    for l, d in word:
        if out and out[-1][0] == l and out[-1][1] == -d:
            out.pop()
        else:
            out.append((l, d))
    return tuple(out)


def _cyclic_reduce(word):
    word = list(free_reduce(word))
    while len(word) > 1 and word[0][0] == word[-1][0] \
            and word[0][1] == -word[-1][1]:
        word = word[1:-1]
        word = list(free_reduce(word))
    return tuple(word)


def _relator(g):
    rel = []
    for i in range(1, g + 1):
        a, b = "a%d" % i, "b%d" % i
        rel += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return tuple(rel)


def _inv(word):
    return tuple((l, -d) for l, d in reversed(word))


def _dehn_trivial(word, g):
    """Dehn's algorithm for the closed surface relator, genus >= 2."""
    rel = _relator(g)
    n = len(rel)
    variants = []
    for r in (rel, _inv(rel)):
        for k in range(n):
            variants.append(tuple(r[(k + i) % n] for i in range(n)))
    half = n // 2
    word = _cyclic_reduce(word)
    guard = 0
    while word:
        guard += 1
        if guard > 10000:
            raise SurfaceError("word problem did not terminate")
        m = len(word)
        replaced = False
        for v in variants:
            # longest prefix of v matching a cyclic subword of word
            for start in range(m):
                run = 0
                while run < min(m, n) and word[(start + run) % m] == v[run]:
                    run += 1
                if run > half:
                    # subword == v[:run]; v[:run] = inv(v[run:]) in the group
                    repl = _inv(v[run:])
                    rest = [word[(start + run + i) % m]
                            for i in range(m - run)]
                    word = _cyclic_reduce(list(repl) + rest)
                    replaced = True
                    break
            if replaced:
                break
        if not replaced:
            return False
    return True


def is_trivial_loop(schema: PolygonSchema, word) -> bool:
    """Is the loop with this crossing word null-homotopic?"""
    word = free_reduce(word)
    g, b = schema.genus, schema.boundary_count
    if b > 0:
        return not word
    if g == 0:
        return True
    if g == 1:
        sums = {}
        for l, d in word:
            sums[l] = sums.get(l, 0) + d
        return all(v == 0 for v in sums.values())
    return _dehn_trivial(word, g)
