"""Normalization of a one-face surface complex to the standard polygon.

The standard word is

    a1 b1 a1' b1' ... ag bg ag' bg'  e1 d1 e1' ... eb db eb'

with x' denoting the reversed occurrence of x and d1..db the boundary
edges.  Normalization proceeds by the classical cut-and-paste argument:
cancel adjacent inverse pairs, make each boundary circle a single edge,
reduce to one interior vertex, then gather handles into commutator blocks.
Rather than hard-coding every rearrangement, each stage does a small
deterministic search over cut+glue moves scored by the stage's potential;
every candidate is simulated on the bare word first and only the winning
move is replayed on the complex, so curves and arcs are carried along by
the (always sound) surgery primitives in cx.
"""

from __future__ import annotations

from trisections.schema.cx import BOUNDARY, PAIRED, Complex, SurfaceError

DIAG = "\x00d"  # placeholder label prefix for simulated diagonals
_diag_counter = 0


def _fresh_diag():
    global _diag_counter
    _diag_counter += 1
    return "%s%d" % (DIAG, _diag_counter)


class ClassifyError(SurfaceError):
    pass


# --------------------------------------------------------------------------
# word-level simulation


def sim_cutglue(word, kind, i, j, glue_lab, diag=None):
    """Mirror of Complex.cut_diagonal(i, j) followed by glue_faces(glue_lab).

    Returns the merged word, or None when the move is not available.
    """
    n = len(word)
    if i == j:
        return None
    if i > j:
        i, j = j, i
    diag = diag or _fresh_diag()
    a = word[i:j] + [(diag, -1)]
    b = word[j:] + word[:i] + [(diag, 1)]
    pa = [p for p, (l, _) in enumerate(a) if l == glue_lab]
    pb = [p for p, (l, _) in enumerate(b) if l == glue_lab]
    if len(pa) != 1 or len(pb) != 1:
        return None
    p, q = pa[0], pb[0]
    return a[p + 1:] + a[:p] + b[q + 1:] + b[:q]


def sim_zip(word, lab):
    n = len(word)
    if n <= 2:
        return None
    pos = [p for p, (l, _) in enumerate(word) if l == lab]
    if len(pos) != 2:
        return None
    p, q = pos
    if (p + 1) % n == q:
        lo = p
    elif (q + 1) % n == p:
        lo = q
    else:
        return None
    return [word[(lo + 2 + i) % n] for i in range(n - 2)]


def zippable(word, kind):
    n = len(word)
    if n <= 2:
        return []
    out = []
    for p in range(n):
        l1, s1 = word[p]
        l2, s2 = word[(p + 1) % n]
        if l1 == l2 and s1 == -s2 and kind.get(l1, PAIRED) == PAIRED:
            out.append(l1)
    return sorted(set(out))


# --------------------------------------------------------------------------
# word-level metrics


def word_kind(word, kind):
    return {l: kind.get(l, PAIRED) for l, _ in word}


def _twins(word):
    pos = {}
    for p, (l, s) in enumerate(word):
        pos.setdefault(l, []).append((p, s))
    return pos


def corner_orbits_word(word, kind):
    """Orbit id per corner; corner p sits before word[p]."""
    n = len(word)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for l, occ in _twins(word).items():
        if kind.get(l, PAIRED) != PAIRED:
            continue
        (p1, s1), (p2, s2) = occ
        if s1 < 0:
            p1, p2 = p2, p1
        union(p1, (p2 + 1) % n)
        union((p1 + 1) % n, p2)
    return [find(p) for p in range(n)]


def boundary_circles_word(word, kind):
    """Circles of boundary-letter positions, in walk order."""
    n = len(word)
    tw = _twins(word)
    bpos = [p for p, (l, _) in enumerate(word) if kind.get(l, PAIRED) == BOUNDARY]

    def succ(p):
        c = (p + 1) % n
        guard = 0
        while kind.get(word[c][0], PAIRED) == PAIRED:
            occ = tw[word[c][0]]
            other = [q for q, _ in occ if q != c][0]
            c = (other + 1) % n
            guard += 1
            if guard > n + 1:
                raise ClassifyError("boundary walk loops")
        return c

    circles, seen = [], set()
    for p in bpos:
        if p in seen:
            continue
        circ = [p]
        seen.add(p)
        q = succ(p)
        while q != p:
            circ.append(q)
            seen.add(q)
            q = succ(q)
        circles.append(circ)
    return circles


def breaks(word, kind):
    n = len(word)
    total = 0
    for circ in boundary_circles_word(word, kind):
        if len(circ) < 2:
            continue
        bad = sum(1 for k in range(len(circ))
                  if circ[(k + 1) % len(circ)] != (circ[k] + 1) % n)
        total += max(0, bad - 1)
    return total


def orbit_stats(word, kind):
    """(number of orbits, boundary flank violations)."""
    n = len(word)
    orb = corner_orbits_word(word, kind)
    size = {}
    for o in orb:
        size[o] = size.get(o, 0) + 1
    viol = 0
    for p, (l, _) in enumerate(word):
        if kind.get(l, PAIRED) != BOUNDARY:
            continue
        a, b = orb[p], orb[(p + 1) % n]
        if a != b or size[a] != 2:
            viol += 1
    return len(size), viol


def flank_viol(word, kind):
    """Boundary flank violations, without building the full orbit table.

    A boundary letter at p is fine when corners p and p+1 form a two
    element orbit; the orbit is traced locally through the corner links
    of the paired letters, stopping as soon as it grows past two.
    """
    n = len(word)
    bpos = [p for p, (l, _) in enumerate(word)
            if kind.get(l, PAIRED) == BOUNDARY]
    if not bpos:
        return 0
    link: dict[int, list[int]] = {}
    for l, occ in _twins(word).items():
        if kind.get(l, PAIRED) != PAIRED or len(occ) != 2:
            continue
        (p1, s1), (p2, s2) = occ
        if s1 < 0:
            p1, p2 = p2, p1
        for a, c in ((p1, (p2 + 1) % n), ((p1 + 1) % n, p2)):
            link.setdefault(a, []).append(c)
            link.setdefault(c, []).append(a)
    viol = 0
    for p in bpos:
        want = {p, (p + 1) % n}
        comp = {p}
        stack = [p]
        while stack and len(comp) <= 2:
            for q in link.get(stack.pop(), ()):
                if q not in comp:
                    comp.add(q)
                    stack.append(q)
        if comp != want:
            viol += 1
    return viol


def frozen_contiguous(word, frozen):
    if not frozen:
        return True
    n = len(word)
    flags = [word[p][0] in frozen for p in range(n)]
    runs = sum(1 for p in range(n) if flags[p] and not flags[p - 1])
    return runs <= 1


def anchor_of(word, frozen):
    """First position after the frozen block (0 if nothing is frozen)."""
    if not frozen:
        return 0
    n = len(word)
    for p in range(n):
        if word[p][0] in frozen and word[(p + 1) % n][0] not in frozen:
            return (p + 1) % n
    raise ClassifyError("frozen block fills the whole word")


def interleaved(word, x, y):
    pos = {}
    for p, (l, _) in enumerate(word):
        pos.setdefault(l, []).append(p)
    px, py = pos.get(x, []), pos.get(y, [])
    if len(px) != 2 or len(py) != 2:
        return False
    a, b = px
    return (a < py[0] < b) != (a < py[1] < b)


# --------------------------------------------------------------------------
# move search


def _candidate_ops(word, kind, frozen, allow_zip, allow_unzip=False):
    n = len(word)

    def free_corner(p):
        return not (word[p - 1][0] in frozen and word[p % n][0] in frozen)

    corners = [p for p in range(n) if free_corner(p)]
    glues = sorted({l for l, _ in word
                    if kind.get(l, PAIRED) == PAIRED and l not in frozen})
    ops = []
    if allow_zip:
        for l in zippable(word, kind):
            if l not in frozen:
                ops.append(("zip", l))
    if allow_unzip:
        for p in corners:
            ops.append(("unzip", p, _fresh_diag()))
    for ii in range(len(corners)):
        for jj in range(ii + 1, len(corners)):
            for l in glues:
                ops.append(("cutglue", corners[ii], corners[jj], l,
                            _fresh_diag()))
    return ops


def _triangle_ops(word, kind, frozen, allow_zip, allow_unzip=False):
    """The textbook vertex-reduction moves: cut off the triangle at one
    corner and reglue along one of its two edges.  Keeps the word length
    fixed and shrinks one corner orbit per step, so a tiny branching
    factor suffices."""
    n = len(word)
    ops = []
    if allow_zip:
        for l in zippable(word, kind):
            if l not in frozen:
                ops.append(("zip", l))
    if n < 4:
        return ops
    for p in range(n):
        i, j = (p - 1) % n, (p + 1) % n
        if i == j:
            continue
        for lab in {word[(p - 1) % n][0], word[p][0]}:
            if kind.get(lab, PAIRED) == PAIRED and lab not in frozen:
                ops.append(("cutglue", i, j, lab, _fresh_diag()))
    return ops


def _pair_focus_ops(x, y):
    """Handle-gathering moves for the interleaved pair (x, y): diagonals
    between corners flanking their occurrences, reglued along x or y."""

    def gen(word, kind, frozen, allow_zip, allow_unzip=False):
        n = len(word)
        spots = set()
        for p, (l, _) in enumerate(word):
            if l in (x, y):
                spots.add(p)
                spots.add((p + 1) % n)

        def free_corner(p):
            return not (word[p - 1][0] in frozen and word[p % n][0] in frozen)

        corners = sorted(p for p in spots if free_corner(p))
        ops = []
        for ii in range(len(corners)):
            for jj in range(ii + 1, len(corners)):
                for lab in (x, y):
                    ops.append(("cutglue", corners[ii], corners[jj], lab,
                                _fresh_diag()))
        return ops

    return gen


def _apply_sim(word, kind, op):
    if op[0] == "zip":
        return sim_zip(word, op[1])
    if op[0] == "unzip":
        _, p, u = op
        return word[:p] + [(u, 1), (u, -1)] + word[p:]
    return sim_cutglue(word, kind, op[1], op[2], op[3], op[4])


def _rot_key(word):
    """Canonical key: best rotation, with placeholder names normalized.

    Placeholders get fresh names per simulated op, so two structurally
    identical words usually differ only in those names; renaming them by
    first appearance within each rotation makes the dedup catch that.
    """
    n = len(word)
    best = None
    for r in range(n):
        ren = {}
        rot = []
        for i in range(n):
            l, s = word[(r + i) % n]
            if l.startswith(DIAG):
                l = ren.setdefault(l, "%s#%d" % (DIAG, len(ren)))
            rot.append((l, s))
        t = tuple(rot)
        if best is None or t < best:
            best = t
    return best


def _best_first(word, kind, frozen, pot, allow_zip, allow_unzip,
                max_nodes=6000, keep=200, cand_fn=None):
    """Search over cut/glue/zip rewrites for a word hitting pot.target.

    Returns (ops, score): the list of ops reaching the target with its
    final score, or (None, best score seen).  States equal up to rotation
    are identified; every op is sound (it realizes a self-homeomorphism of
    the surface), so any found path is correct and the potential only
    steers the search.
    """
    import heapq

    if cand_fn is None:
        cand_fn = _candidate_ops
    start = [tuple(x) for x in word]
    best = pot(start)
    h = [(best, 0, start, ())]
    visited = set()
    counter = 1
    expanded = 0
    while h and expanded < max_nodes:
        score, _, w, path = heapq.heappop(h)
        if pot.done(score):
            return list(path), score
        # dedup lazily: keys are costly, duplicates in the heap are cheap
        key = _rot_key(w)
        if key in visited:
            continue
        visited.add(key)
        expanded += 1
        children = []
        for op in cand_fn(w, kind, frozen, allow_zip, allow_unzip):
            w2 = _apply_sim(list(w), kind, op)
            if w2 is None or not frozen_contiguous(w2, frozen):
                continue
            children.append((pot(w2), op, w2))
        children.sort(key=lambda r: r[0])
        for s2, op, w2 in children[:keep]:
            if pot.done(s2):
                return list(path) + [op], s2
            best = min(best, s2)
            heapq.heappush(h, (s2, counter, w2, path + (op,)))
            counter += 1
    return None, best


# --------------------------------------------------------------------------
# driver


def _single_face_word(cx: Complex):
    (face, word), = cx.faces.items()
    return face, list(word)


def _replay(cx: Complex, ops):
    # placeholder names used in simulation -> labels created on the complex
    trans: dict[str, str] = {}
    for op in ops:
        face, word = _single_face_word(cx)
        if op[0] == "zip":
            cx.zip_adjacent(trans.get(op[1], op[1]))
        elif op[0] == "unzip":
            trans[op[2]] = cx.unzip(face, op[1])
        else:
            _, i, j, lab, ph = op
            trans[ph] = cx.cut_diagonal(face, i, j)
            cx.glue_faces(trans.get(lab, lab))


def _run_phase(cx: Complex, pot, frozen, allow_zip, allow_unzip, what,
               max_nodes=6000, cand_fns=None):
    face, word = _single_face_word(cx)
    if pot.done(pot(word)):
        return
    path = best = None
    for cand_fn in (cand_fns or (None,)):
        path, best = _best_first(word, cx.kind, frozen, pot, allow_zip,
                                 allow_unzip, max_nodes=max_nodes,
                                 cand_fn=cand_fn)
        if path is not None:
            break
    if path is None:
        err = ClassifyError("normalization stuck during %s (word %r)"
                            % (what, word))
        err.best = best
        raise err
    _replay(cx, path)
    face, word = _single_face_word(cx)
    if not pot.done(pot(word)):
        raise ClassifyError("replay drifted from simulation during %s" % what)


class _Pot:
    def __init__(self, fn, target, done=None):
        self.fn = fn
        self.target = target
        self.done = done or (lambda s: s == target)

    def __call__(self, word):
        return self.fn(word)


def classify(cx: Complex) -> dict:
    """Rewrite cx in place into standard form; returns naming metadata.

    The result dict has keys genus, boundary (final boundary labels in word
    order) and boundary_map (old boundary label -> final label).
    """
    cx.validate_structure()
    if not cx.is_connected():
        raise ClassifyError("surface is not connected")
    g, b = cx.genus_and_boundary()
    cx.to_single_face()
    kind = cx.kind

    # stage 0: free cancellations
    while True:
        face, word = _single_face_word(cx)
        z = [l for l in zippable(word, kind)]
        if not z:
            break
        cx.zip_adjacent(z[0])

    old_boundary = {l for l, k in cx.kind.items() if k == BOUNDARY}

    if g == 0 and b == 0:
        face, word = _single_face_word(cx)
        if len(word) != 2:
            raise ClassifyError("sphere word did not cancel to a bigon")
        lab = word[0][0]
        if word[0][1] < 0:
            cx.invert_edge(lab)
        cx.relabel({lab: "a1"})
        face, word = _single_face_word(cx)
        if word[0][1] < 0:
            cx.rotate_face(face, 1)
        return {"genus": 0, "boundary": [], "boundary_map": {}}

    # stage 1: make each boundary circle consecutive, then one edge
    pot_a = _Pot(lambda w: (breaks(w, kind), len(w)), None,
                 done=lambda s: s[0] == 0)
    _run_phase(cx, pot_a, set(), True, False, "boundary gathering")

    boundary_map = {}
    while True:
        face, word = _single_face_word(cx)
        circles = boundary_circles_word(word, cx.kind)
        multi = [c for c in circles if len(c) > 1]
        if not multi:
            break
        circ = multi[0]
        n = len(word)
        # positions are consecutive mod n; find the run start
        pos = set(circ)
        start = next(p for p in circ if (p - 1) % n not in pos)
        labs = [word[(start + i) % n][0] for i in range(len(circ))]
        new = cx.merge_boundary_chain(face, start, len(circ))
        for l in labs:
            boundary_map[l] = new
    for l in old_boundary:
        boundary_map.setdefault(l, l)

    # stage 2: one interior vertex, boundary flanks paired off
    kind = cx.kind

    def pot_b_fn(w):
        # corners not yet absorbed: the textbook reduction moves one
        # corner per step, so this measure falls along a good path,
        # unlike the raw orbit count which is flat between orbit deaths
        k = word_kind(w, kind)
        n = len(w)
        orb = corner_orbits_word(w, k)
        size = {}
        for o in orb:
            size[o] = size.get(o, 0) + 1
        viol = 0
        flank_ids = set()
        for p, (l, _) in enumerate(w):
            if k[l] != BOUNDARY:
                continue
            oa, ob = orb[p], orb[(p + 1) % n]
            flank_ids.update((oa, ob))
            if oa != ob or size[oa] != 2:
                viol += 1
        interior = [s for o, s in size.items() if o not in flank_ids]
        scatter = sum(interior) - max(interior) if interior else 0
        extra = sum(size[o] - 2 for o in flank_ids if size[o] > 2)
        return (viol + scatter + extra, len(w))

    target_len = 2 * (2 * g + b) + b
    pot_b = _Pot(pot_b_fn, (0, target_len))
    _run_phase(cx, pot_b, set(), True, True, "vertex reduction",
               cand_fns=(_triangle_ops, None))

    # stage 3: gather handles into commutator blocks.  Cut-and-glue moves
    # are homeomorphisms fixing the vertex structure, so the orbit count
    # and flank condition established by stage 2 hold throughout; check
    # them once here and keep them out of the inner potential.
    face, word = _single_face_word(cx)
    n_orb0, viol0 = orbit_stats(word, word_kind(word, kind))
    if n_orb0 != 1 + b or viol0:
        raise ClassifyError("vertex reduction left %d orbits, %d loose "
                            "boundary flanks" % (n_orb0, viol0))

    frozen: set[str] = set()
    for k_i in range(g):
        face, word = _single_face_word(cx)
        kindw = word_kind(word, kind)
        anchor = anchor_of(word, frozen)
        n = len(word)
        rot = word[anchor:] + word[:anchor]
        paired_unfrozen = [l for l, _ in rot
                           if kindw[l] == PAIRED and l not in frozen]
        cands = []
        uniq = list(dict.fromkeys(paired_unfrozen))
        for xi, x in enumerate(uniq):
            for y in uniq[xi + 1:]:
                if interleaved(word, x, y):
                    cands.append((_q4(rot, x, y, anchored=bool(frozen)), x, y))
        if not cands:
            raise ClassifyError("no interleaved pair found for handle %d" % k_i)
        cands.sort()

        # cheap budgets across every pair first, escalate only if needed;
        # later rounds take the pair whose last search got closest
        err = None
        gathered = False
        rank = {(x, y): (q, ) for q, x, y in cands}
        for budget in (400, 4000, 40000):
            for x, y in sorted(rank, key=rank.get):
                def pot_c_fn(w, x=x, y=y):
                    if not frozen_contiguous(w, frozen):
                        return (9, 10 ** 9, len(w))
                    bad = flank_viol(w, kind)
                    if not interleaved(w, x, y):
                        return (bad, 10 ** 9, len(w))
                    a = anchor_of(w, frozen)
                    r = w[a:] + w[:a]
                    return (bad, _q4(r, x, y, anchored=bool(frozen)), len(w))

                face, word = _single_face_word(cx)
                pot_c = _Pot(pot_c_fn, (0, 0, len(word)))
                try:
                    _run_phase(cx, pot_c, frozen, False, False,
                               "handle gathering", max_nodes=budget,
                               cand_fns=(_pair_focus_ops(x, y), None))
                except ClassifyError as e:
                    err = e
                    rank[(x, y)] = getattr(e, "best", rank[(x, y)])
                    continue
                frozen.update([x, y])
                gathered = True
                break
            if gathered:
                break
        if not gathered:
            raise err

    # stage 4: check tiling of boundary blocks, orient, rename, rotate
    face, word = _single_face_word(cx)
    n = len(word)

    def parses(rot):
        w = word[rot:] + word[:rot]
        for k_i in range(g):
            blk = w[4 * k_i:4 * k_i + 4]
            if not (blk[0][0] == blk[2][0] and blk[1][0] == blk[3][0]
                    and blk[0][1] == -blk[2][1] and blk[1][1] == -blk[3][1]):
                return False
        for j in range(b):
            blk = w[4 * g + 3 * j:4 * g + 3 * j + 3]
            if len(blk) < 3 or blk[0][0] != blk[2][0] \
                    or blk[0][1] != -blk[2][1] \
                    or cx.kind[blk[1][0]] != BOUNDARY:
                return False
        return True

    rot = next((r for r in range(n) if parses(r)), None)
    if rot is None:
        raise ClassifyError("final word does not tile into blocks: %r" % word)
    cx.rotate_face(face, rot)
    face, word = _single_face_word(cx)
    mapping = {}
    invert = []
    for k_i in range(g):
        blk = word[4 * k_i:4 * k_i + 4]
        for off, name in ((0, "a%d" % (k_i + 1)), (1, "b%d" % (k_i + 1))):
            lab, sign = blk[off]
            if sign < 0:
                invert.append(lab)
            mapping[lab] = name
    final_boundary = []
    for j in range(b):
        base = 4 * g + 3 * j
        blk = word[base:base + 3]
        if len(blk) < 3 or blk[0][0] != blk[2][0] or blk[0][1] != -blk[2][1] \
                or cx.kind[blk[1][0]] != BOUNDARY:
            raise ClassifyError("boundary block %d malformed: %r" % (j, blk))
        if blk[0][1] < 0:
            invert.append(blk[0][0])
        if blk[1][1] < 0:
            invert.append(blk[1][0])
        mapping[blk[0][0]] = "e%d" % (j + 1)
        mapping[blk[1][0]] = "d%d" % (j + 1)
        final_boundary.append("d%d" % (j + 1))
    if len(word) != 4 * g + 3 * b:
        raise ClassifyError("leftover letters after normalization: %r" % word)
    for lab in invert:
        cx.invert_edge(lab)
    tmp = {l: "\x00tmp%d" % i for i, l in enumerate(mapping)}
    cx.relabel(tmp)
    cx.relabel({tmp[l]: new for l, new in mapping.items()})
    boundary_map = {old: mapping.get(mid, mid)
                    for old, mid in boundary_map.items()}
    cx.repark()
    return {"genus": g, "boundary": final_boundary, "boundary_map": boundary_map}


def _q4(rot, x, y, anchored=True):
    """Total displacement before x,y,x',y' sit in four consecutive slots.

    With `anchored` the window must start at position 0; otherwise the
    best cyclic placement counts (rotation invariant).  Zero exactly when
    the four occurrences are adjacent (and at the front, if anchored).
    """
    pos = [p for p, (l, _) in enumerate(rot) if l in (x, y)]
    if len(pos) != 4:
        return 10 ** 9
    if anchored:
        return sum(pos) - 6
    n = len(rot)
    best = 10 ** 9
    for k in range(4):
        off = [(pos[(k + i) % 4] - pos[k]) % n for i in range(4)]
        best = min(best, sum(off) - 6)
    return best


def standard_word(g: int, b: int):
    if g == 0 and b == 0:
        return [("a1", 1), ("a1", -1)]
    w = []
    for i in range(1, g + 1):
        w += [("a%d" % i, 1), ("b%d" % i, 1), ("a%d" % i, -1), ("b%d" % i, -1)]
    for j in range(1, b + 1):
        w += [("e%d" % j, 1), ("d%d" % j, 1), ("e%d" % j, -1)]
    return w
