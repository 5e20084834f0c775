"""Text formats for diagrams and move scripts, plus the replay engine.

Diagram files (`.trid`) are line oriented: a PARAMS line, a SCHEMA
section holding the polygon side word, CURVES / ARCS sections with one
component per line, and optional POINTS and MATCHING sections.  Crossing
positions are stored as slots: slot k out of the m stored positions on a
side means the parameter k/(m+1), so files carry no raw fractions and
two diagrams with the same combinatorics serialize identically.

Move scripts (`.mvs`) hold one command per line.  Replay applies them in
order, recording a trace row (genus, Euler characteristic, first
homology, validation status, digest) after every step.
"""

import hashlib
import re
from dataclasses import dataclass, replace
from fractions import Fraction

from trisections import invariants, moves
from trisections.diagram import (
    ArcedRelativeDiagram,
    DoublyPointedDiagram,
    RelativeTrisectionDiagram,
    RelParams,
    TriParams,
    TrisectionDiagram,
    validate_relative,
    validate_trisection,
)
from trisections.schema.curves import EmbeddedArc, Multicurve, build_complex
from trisections.schema.cx import Component, Node, SurfaceError
from trisections.schema.polygon import PolygonSchema

__all__ = [
    "ParseError",
    "ReplayAssertError",
    "ReplayMoveError",
    "ParsedFile",
    "MoveScript",
    "Command",
    "TraceRow",
    "ReplayTrace",
    "parse_diagram",
    "load_diagram_file",
    "serialize_diagram",
    "diagram_digest",
    "parse_script",
    "serialize_script",
    "replay",
]

_FAMILIES = ("alpha", "beta", "gamma")


class ParseError(ValueError):
    """Structured parse failure with position information."""

    def __init__(self, message, line, col=1, kind="syntax"):
        super().__init__("line %d, col %d: %s" % (line, col, message))
        self.message = message
        self.line = line
        self.col = col
        self.kind = kind


class ReplayAssertError(Exception):
    """An ASSERT command failed; `step` is the failing command index."""

    def __init__(self, step, message, trace=None):
        super().__init__("step %d: %s" % (step, message))
        self.step = step
        self.trace = trace


class ReplayMoveError(Exception):
    """A move precondition failed during replay."""

    def __init__(self, step, message, trace=None):
        super().__init__("step %d: %s" % (step, message))
        self.step = step
        self.trace = trace


# ---------------------------------------------------------------------------
# diagram files


@dataclass(frozen=True)
class ParsedFile:
    """A diagram file: the diagram plus its optional gluing matching."""

    diagram: object
    matching: object = None  # moves.BoundaryMatching or None


_TOKEN = re.compile(r"^(-?)([A-Za-z][A-Za-z0-9_]*):(\d+)$")


def _lines(text):
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((ln, line))
    return out


def _parse_token(tok, ln):
    m = _TOKEN.match(tok)
    if not m:
        raise ParseError("bad crossing token %r" % tok, ln)
    sign, label, slot = m.groups()
    return label, int(slot), -1 if sign else 1


def parse_diagram(text):
    """Parse a `.trid` file into a diagram (ignoring any MATCHING)."""
    return load_diagram_file(text).diagram


def load_diagram_file(text) -> ParsedFile:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty diagram file", 1)
    params = None
    schema_word = None
    schema_line = 1
    sections = {}  # name -> list of (line, tokens)
    points = None
    matching = []
    i = 0
    while i < len(lines):
        ln, line = lines[i]
        parts = line.split()
        head = parts[0]
        if head == "PARAMS":
            if params is not None:
                raise ParseError("duplicate PARAMS", ln)
            params = (ln, parts[1:])
            i += 1
        elif head == "SCHEMA":
            i += 1
            if i >= len(lines):
                raise ParseError("SCHEMA section is empty", ln)
            schema_line, schema_word = lines[i]
            i += 1
        elif head in ("CURVES", "ARCS"):
            if len(parts) != 2 or parts[1] not in _FAMILIES:
                raise ParseError("expected a family name after %s" % head, ln)
            key = (head, parts[1])
            if key in sections:
                raise ParseError("duplicate section %s %s" % key, ln)
            body = []
            i += 1
            while i < len(lines) and lines[i][1].split()[0] not in (
                    "PARAMS", "SCHEMA", "CURVES", "ARCS", "POINTS", "MATCHING"):
                body.append(lines[i])
                i += 1
            sections[key] = body
        elif head == "POINTS":
            i += 1
            if i >= len(lines):
                raise ParseError("POINTS section is empty", ln)
            pln, pline = lines[i]
            try:
                points = tuple(int(x) for x in pline.split())
            except ValueError:
                raise ParseError("base points must be corner indices", pln)
            i += 1
        elif head == "MATCHING":
            i += 1
            while i < len(lines) and lines[i][1].split()[0] not in (
                    "PARAMS", "SCHEMA", "CURVES", "ARCS", "POINTS", "MATCHING"):
                mln, mline = lines[i]
                pair = mline.split()
                if len(pair) != 2:
                    raise ParseError("matching line needs two labels", mln)
                matching.append(tuple(pair))
                i += 1
        else:
            raise ParseError("unknown section %r" % head, ln)
    if params is None:
        raise ParseError("missing PARAMS line", 1)
    if schema_word is None:
        raise ParseError("missing SCHEMA section", 1)

    pln, pargs = params
    if not pargs:
        raise ParseError("PARAMS needs a kind", pln)
    kind = pargs[0]
    try:
        nums = [int(x) for x in pargs[1:]]
    except ValueError:
        raise ParseError("non-integer parameter", pln)
    if kind == "trisection":
        if len(nums) != 4:
            raise ParseError("PARAMS trisection g k1 k2 k3", pln)
        try:
            pobj = TriParams(*nums)
        except ValueError as e:
            raise ParseError(str(e), pln, kind="semantic")
    elif kind == "relative":
        if len(nums) != 4:
            raise ParseError("PARAMS relative g k p b", pln)
        try:
            pobj = RelParams(*nums)
        except ValueError as e:
            raise ParseError(str(e), pln, kind="semantic")
    else:
        raise ParseError("unknown diagram kind %r" % kind, pln)

    # schema: labels seen once are boundary sides
    word = []
    for tok in schema_word.split():
        neg = tok.startswith("-")
        lab = tok[1:] if neg else tok
        if not lab:
            raise ParseError("empty side label", schema_line)
        word.append((lab, -1 if neg else 1))
    counts = {}
    for lab, _ in word:
        counts[lab] = counts.get(lab, 0) + 1
    blabels = []
    for lab, _ in word:
        if counts[lab] == 1 and lab not in blabels:
            blabels.append(lab)
        elif counts[lab] > 2:
            raise ParseError("side %r appears %d times" % (lab, counts[lab]),
                             schema_line, kind="semantic")
    try:
        schema = PolygonSchema(tuple(word), tuple(blabels))
    except SurfaceError as e:
        raise ParseError(str(e), schema_line, kind="semantic")

    # first pass: slot totals per side label over the whole file
    totals = {}
    for body in sections.values():
        for ln, line in body:
            for tok in line.split():
                lab, _, _ = _parse_token(tok, ln)
                totals[lab] = totals.get(lab, 0) + 1

    def node_of(tok, ln, endpoint=False):
        lab, slot, sign = _parse_token(tok, ln)
        if lab not in counts:
            raise ParseError("unknown side %r" % lab, ln, kind="semantic")
        if not 1 <= slot <= totals[lab]:
            raise ParseError("slot %d out of range on side %r" % (slot, lab),
                             ln, kind="semantic")
        t = Fraction(slot, totals[lab] + 1)
        if endpoint:
            if sign < 0:
                raise ParseError("arc endpoints carry no sign", ln)
            return Node(lab, t, 0)
        return Node(lab, t, sign)

    def read_family(head, name, closed):
        body = sections.pop((head, name), [])
        comps = []
        for ln, line in body:
            toks = line.split()
            try:
                if closed:
                    nodes = [node_of(t, ln) for t in toks]
                    comps.append(Component(True, tuple(nodes)))
                else:
                    if len(toks) < 2:
                        raise ParseError("an arc needs two endpoints", ln)
                    nodes = [node_of(toks[0], ln, endpoint=True)]
                    nodes += [node_of(t, ln) for t in toks[1:-1]]
                    nodes.append(node_of(toks[-1], ln, endpoint=True))
                    comps.append(Component(False, tuple(nodes)))
            except SurfaceError as e:
                raise ParseError(str(e), ln, kind="semantic")
        return Multicurve(tuple(comps))

    fams = [read_family("CURVES", n, True) for n in _FAMILIES]
    has_arcs = any(("ARCS", n) in sections for n in _FAMILIES)
    arcs = [read_family("ARCS", n, False) for n in _FAMILIES]
    if sections:
        (head, name) = next(iter(sections))
        raise ParseError("misplaced section %s %s" % (head, name), 1,
                         kind="semantic")

    if kind == "trisection":
        d = TrisectionDiagram(schema, fams[0], fams[1], fams[2], pobj)
        if points is not None:
            try:
                d = DoublyPointedDiagram(d, points)
            except ValueError as e:
                raise ParseError(str(e), pln, kind="semantic")
    else:
        d = RelativeTrisectionDiagram(schema, fams[0], fams[1], fams[2], pobj)
        if has_arcs:
            d = ArcedRelativeDiagram(d, arcs[0], arcs[1], arcs[2])
    try:
        base = d.base if isinstance(
            d, (ArcedRelativeDiagram, DoublyPointedDiagram)) else d
        systems = [(n, base.family(n)) for n in _FAMILIES]
        if isinstance(d, ArcedRelativeDiagram):
            systems += [("arcs_" + n, m)
                        for n, m in zip(_FAMILIES, d.arc_families)]
        build_complex(schema, *systems)
    except SurfaceError as e:
        raise ParseError(str(e), 1, kind="semantic")

    mt = None
    if matching:
        mt = moves.BoundaryMatching(tuple(sorted(matching)))
    return ParsedFile(d, mt)


# ---------------------------------------------------------------------------
# canonical serialization


def _base_of(d):
    if isinstance(d, (ArcedRelativeDiagram, DoublyPointedDiagram)):
        return d.base
    return d


def _slot_map(systems):
    per_label = {}
    for m in systems:
        for c in m.components:
            for n in c.nodes:
                per_label.setdefault(n.label, set()).add(n.t)
    out = {}
    for lab, ts in per_label.items():
        for i, t in enumerate(sorted(ts), start=1):
            out[(lab, t)] = i
    return out


def _tokens(comp, slots):
    def tok(n):
        sign = "-" if n.d < 0 else ""
        return "%s%s:%d" % (sign, n.label, slots[(n.label, n.t)])

    if comp.closed:
        best = None
        for c in (comp, comp.reversed()):
            n = len(c.nodes)
            for r in range(n):
                cand = tuple(tok(c.nodes[(r + i) % n]) for i in range(n))
                if best is None or cand < best:
                    best = cand
        return best
    a = tuple(tok(n) for n in comp.nodes)
    b = tuple(tok(n) for n in comp.reversed().nodes)
    return min(a, b)


def serialize_diagram(d, matching=None) -> str:
    """Canonical text form: slot-normalized positions, least rotation and
    direction per component, components sorted within each family."""
    base = _base_of(d)
    if isinstance(base, TrisectionDiagram):
        p = base.params
        header = "PARAMS trisection %d %d %d %d" % (p.g, p.k1, p.k2, p.k3)
    else:
        p = base.params
        header = "PARAMS relative %d %d %d %d" % (p.g, p.k, p.p, p.b)
    systems = list(base.families)
    arced = isinstance(d, ArcedRelativeDiagram)
    if arced:
        systems += list(d.arc_families)
    slots = _slot_map(systems)
    out = [header, "SCHEMA",
           " ".join(("-" if s < 0 else "") + l for l, s in base.surface.sides)]
    for name, m in zip(_FAMILIES, base.families):
        out.append("CURVES " + name)
        out.extend(" ".join(t) for t in sorted(_tokens(c, slots)
                                               for c in m.components))
    if arced:
        for name, m in zip(_FAMILIES, d.arc_families):
            out.append("ARCS " + name)
            out.extend(" ".join(t) for t in sorted(_tokens(c, slots)
                                                   for c in m.components))
    if isinstance(d, DoublyPointedDiagram):
        out.append("POINTS")
        out.append("%d %d" % tuple(sorted(d.points)))
    if matching is not None:
        out.append("MATCHING")
        out.extend("%s %s" % pair for pair in sorted(matching.pairs))
    return "\n".join(out) + "\n"


def diagram_digest(d) -> str:
    """SHA-256 of the canonical serialization."""
    return hashlib.sha256(serialize_diagram(d).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# move scripts


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    line: int

    def text(self):
        return " ".join((self.name,) + tuple(str(a) for a in self.args))


@dataclass(frozen=True)
class MoveScript:
    commands: tuple


_FRACTION = re.compile(r"^(-?)([A-Za-z][A-Za-z0-9_]*):(\d+)/(\d+)$")


def _guide_node(tok, ln):
    m = _FRACTION.match(tok)
    if not m:
        raise ParseError("bad guide token %r" % tok, ln)
    sign, lab, num, den = m.groups()
    t = Fraction(int(num), int(den))
    if not 0 < t < 1:
        raise ParseError("guide parameter must lie inside the side", ln)
    return Node(lab, t, -1 if sign else 1)


def _int(tok, ln, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError("%s must be an integer, got %r" % (what, tok), ln)


def parse_script(text) -> MoveScript:
    cmds = []
    for ln, line in _lines(text):
        parts = line.split()
        name, args = parts[0], parts[1:]
        if name == "SLIDE":
            if len(args) < 5:
                raise ParseError("SLIDE family i j chord_i chord_j [guide]",
                                 ln)
            fam = args[0]
            if fam not in _FAMILIES:
                raise ParseError("unknown family %r" % fam, ln)
            i, j, ci, cj = (_int(a, ln, "curve/chord index")
                            for a in args[1:5])
            guide = tuple(_guide_node(t, ln) for t in args[5:])
            cmds.append(Command("SLIDE", (fam, i, j, ci, cj) + guide, ln))
        elif name == "NORMALIZE":
            if args:
                raise ParseError("NORMALIZE takes no arguments", ln)
            cmds.append(Command("NORMALIZE", (), ln))
        elif name == "STABILIZE":
            if len(args) not in (1, 2):
                raise ParseError("STABILIZE type [site]", ln)
            stype = _int(args[0], ln, "stabilization type")
            site = _int(args[1], ln, "site") if len(args) == 2 else 0
            cmds.append(Command("STABILIZE", (stype, site), ln))
        elif name == "DESTABILIZE":
            if args == ["auto"]:
                cmds.append(Command("DESTABILIZE", ("auto",), ln))
            elif len(args) in (4, 5):
                ia, ib, ic, slot = (_int(a, ln, "index") for a in args[:4])
                surger = args[4] if len(args) == 5 else None
                if surger is not None and surger not in _FAMILIES:
                    raise ParseError("unknown family %r" % surger, ln)
                cmds.append(Command("DESTABILIZE", (ia, ib, ic, slot, surger),
                                    ln))
            else:
                raise ParseError(
                    "DESTABILIZE auto | DESTABILIZE ia ib ic slot [surger]",
                    ln)
        elif name == "GLUE":
            if len(args) != 1:
                raise ParseError("GLUE diagram-file", ln)
            cmds.append(Command("GLUE", (args[0],), ln))
        elif name == "CAP":
            if args != ["identity-monodromy"]:
                raise ParseError("CAP identity-monodromy", ln)
            cmds.append(Command("CAP", ("identity-monodromy",), ln))
        elif name == "ASSERT":
            if len(args) != 2 or args[0] not in ("chi", "h1", "genus",
                                                 "digest"):
                raise ParseError("ASSERT chi|h1|genus|digest value", ln)
            cmds.append(Command("ASSERT", tuple(args), ln))
        else:
            raise ParseError("unknown command %r" % name, ln)
    return MoveScript(tuple(cmds))


def serialize_script(s: MoveScript) -> str:
    return "\n".join(c.text() for c in s.commands) + "\n"


# ---------------------------------------------------------------------------
# replay


@dataclass(frozen=True)
class TraceRow:
    step: int
    command: str
    genus: int
    chi: object  # int for closed states, None otherwise
    h1: tuple
    validation: str
    digest: str


@dataclass(frozen=True)
class ReplayTrace:
    rows: tuple

    def lines(self):
        out = []
        for r in self.rows:
            chi = "-" if r.chi is None else str(r.chi)
            h1 = "trivial" if not r.h1 else ",".join(str(f) for f in r.h1)
            out.append("%3d  %-40s g=%d chi=%s h1=%s %s %s"
                       % (r.step, r.command, r.genus, chi, h1,
                          r.validation, r.digest))
        return out

    def destabilization_count(self):
        return sum(1 for r in self.rows if r.command.startswith("DESTABILIZE"))


def _h1_of(d):
    base = _base_of(d)
    try:
        return invariants.h1(base)
    except Exception:
        return ("?",)


def _row(step, cmd, d, depth):
    base = _base_of(d)
    if isinstance(base, TrisectionDiagram):
        chi = invariants.euler_char_4manifold(base.params)
        status = validate_trisection(base, depth=depth).status
    else:
        chi = None
        status = validate_relative(base, depth=depth).status
    return TraceRow(step, cmd, base.surface.genus, chi, _h1_of(d),
                    status, diagram_digest(d))


def _read_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def replay(script: MoveScript, d0, base_dir=".", validate_depth=2):
    """Apply the script to d0; returns (final diagram, ReplayTrace).

    Raises ReplayAssertError when an ASSERT fails and ReplayMoveError when
    a move precondition fails; both carry the step index and the partial
    trace."""
    import os

    d = d0
    rows = [_row(0, "(start)", d, validate_depth)]
    for step, cmd in enumerate(script.commands, start=1):
        try:
            d = _apply(cmd, d, base_dir)
        except ReplayAssertError as e:
            raise ReplayAssertError(step, e.args[0],
                                    ReplayTrace(tuple(rows)))
        except (moves.MoveError, SurfaceError, ValueError) as e:
            raise ReplayMoveError(step, str(e), ReplayTrace(tuple(rows)))
        rows.append(_row(step, cmd.text(), d, validate_depth))
    return d, ReplayTrace(tuple(rows))


def _apply(cmd, d, base_dir):
    import os

    from trisections.diagram import normalize_diagram

    name, args = cmd.name, cmd.args
    if name == "SLIDE":
        fam, i, j, ci, cj = args[:5]
        guide = EmbeddedArc(args[5:], (i, ci), (j, cj))
        return moves.handle_slide(d, fam, i, j, guide)
    if name == "NORMALIZE":
        return normalize_diagram(d)
    if name == "STABILIZE":
        stype, site = args
        return moves.stabilize(d, stype, site)
    if name == "DESTABILIZE":
        if args[0] == "auto":
            found = moves.find_destabilizations(d)
            if not found:
                raise moves.MoveError("no destabilization available")
            return moves.destabilize(d, found[0])
        ia, ib, ic, slot, surger = args
        if surger is None:
            surger = moves._PAIR_SLOTS[slot][0]
        trip = moves.DestabTriple((ia, ib, ic), slot, surger)
        return moves.destabilize(d, trip)
    if name == "GLUE":
        path = os.path.join(base_dir, args[0])
        other = load_diagram_file(_read_file(path))
        if other.matching is None:
            raise moves.MoveError("glued file %r carries no MATCHING"
                                  % args[0])
        if not isinstance(d, ArcedRelativeDiagram):
            raise moves.MoveError("GLUE needs an arced relative state")
        if not isinstance(other.diagram, ArcedRelativeDiagram):
            raise moves.MoveError("GLUE needs an arced relative file")
        return moves.glue(d, other.diagram, other.matching)
    if name == "CAP":
        base = _base_of(d)
        if not isinstance(base, RelativeTrisectionDiagram):
            raise moves.MoveError("CAP needs a relative state")
        return moves.trivial_reglue_cap(base, monodromy_identity=True)
    if name == "ASSERT":
        what, want = args
        base = _base_of(d)
        if what == "chi":
            if not isinstance(base, TrisectionDiagram):
                raise moves.MoveError("ASSERT chi needs a closed diagram")
            got = invariants.euler_char_4manifold(base.params)
            if got != int(want):
                raise ReplayAssertError(0, "chi is %d, expected %s"
                                        % (got, want))
        elif what == "genus":
            got = base.surface.genus
            if got != int(want):
                raise ReplayAssertError(0, "genus is %d, expected %s"
                                        % (got, want))
        elif what == "h1":
            got = _h1_of(d)
            want_t = () if want == "trivial" else tuple(
                int(x) for x in want.split(","))
            if got != want_t:
                raise ReplayAssertError(0, "h1 factors %s, expected %s"
                                        % (list(got), want))
        elif what == "digest":
            got = diagram_digest(d)
            if got != want:
                raise ReplayAssertError(0, "digest %s, expected %s"
                                        % (got, want))
        return d
    raise moves.MoveError("unhandled command %r" % name)
