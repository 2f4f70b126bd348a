"""Triangulations and cubulations as face-gluing data, with parsers.

A triangulation is a list of tetrahedra with the four faces (face k is
opposite vertex k) glued in pairs by vertex bijections.  A cubulation is a
list of cubes with the six faces glued in pairs by dihedral corner
bijections (see cubegeom for the conventions).  Self-adjacencies and
multiple adjacencies are allowed; gluing a face slot to itself is not.

File formats ('#' starts a comment, tokens are whitespace separated):

* ``.tri``: first line is the tetrahedron count t, then t lines of four
  tokens ``j:g:p`` giving target tetrahedron, target face and the index
  p in 0..23 of the vertex bijection (lexicographic order of one-line
  notation).  ``-`` marks an unglued slot.
* ``.cub``: first line is the cube count c, then c lines of six tokens
  ``j:g:s`` with s in 0..7 the dihedral symmetry.  Cubulations are always
  fully glued.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .cubegeom import INVERSE_TOKEN, SLOT_MAPS

# The 24 vertex bijections of a tetrahedron in lexicographic order of
# one-line notation; PERM_INDEX recovers the file-format index.
PERMS4 = tuple(permutations(range(4)))
PERM_INDEX = {p: i for i, p in enumerate(PERMS4)}
PERM_INVERSE = {p: tuple(p.index(i) for i in range(4)) for p in PERMS4}
PERM_PARITY = {}
for _p in PERMS4:
    _inv = sum(1 for i in range(4) for j in range(i + 1, 4) if _p[i] > _p[j])
    PERM_PARITY[_p] = _inv & 1


class ParseError(ValueError):
    """Input text does not conform to the file grammar."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(message + where)


class GluingError(ValueError):
    """Gluing data violates the involution or self-gluing invariants."""


@dataclass(frozen=True)
class Triangulation:
    """Gluings[t][f] is (target tet, target face, vertex bijection) or None.

    The bijection is a 4-tuple p with p[v] the image vertex; it must carry
    face f (the vertices other than f) onto the target face.
    """

    gluings: tuple

    def __post_init__(self):
        for t, row in enumerate(self.gluings):
            if len(row) != 4:
                raise GluingError(f"tet {t} must list 4 face slots")
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, f2, p = g
                if not 0 <= t2 < len(self.gluings):
                    raise GluingError(f"slot ({t},{f}) targets missing tet {t2}")
                if (t2, f2) == (t, f):
                    raise GluingError(f"self-glued slot ({t},{f})")
                if p[f] != f2:
                    raise GluingError(
                        f"slot ({t},{f}): bijection {p} does not carry face {f} to face {f2}"
                    )
                back = self.gluings[t2][f2]
                if back is None or back[0] != t or back[1] != f or back[2] != PERM_INVERSE[p]:
                    raise GluingError(
                        f"involution violated between slots ({t},{f}) and ({t2},{f2})"
                    )

    @property
    def tet_count(self):
        return len(self.gluings)

    def is_closed(self):
        return all(g is not None for row in self.gluings for g in row)


@dataclass(frozen=True)
class Cubulation:
    """Gluings[q][f] is (target cube, target face, symmetry token 0..7)."""

    gluings: tuple

    def __post_init__(self):
        for q, row in enumerate(self.gluings):
            if len(row) != 6:
                raise GluingError(f"cube {q} must list 6 face slots")
            for f, g in enumerate(row):
                if g is None:
                    raise GluingError(f"unglued slot ({q},{f}): cubulations are closed")
                q2, f2, s = g
                if not 0 <= q2 < len(self.gluings):
                    raise GluingError(f"slot ({q},{f}) targets missing cube {q2}")
                if (q2, f2) == (q, f):
                    raise GluingError(f"self-glued slot ({q},{f})")
                back = self.gluings[q2][f2]
                if back is None or back != (q, f, INVERSE_TOKEN[s]):
                    raise GluingError(
                        f"involution violated between slots ({q},{f}) and ({q2},{f2})"
                    )

    @property
    def cube_count(self):
        return len(self.gluings)

    def face_orbits(self):
        """Unordered list of glued slot pairs, one entry per 2-cell."""
        seen = set()
        orbits = []
        for q, row in enumerate(self.gluings):
            for f, (q2, f2, s) in enumerate(row):
                if (q, f) in seen:
                    continue
                seen.add((q, f))
                seen.add((q2, f2))
                orbits.append(((q, f), (q2, f2, s)))
        return orbits


def _logical_lines(text):
    """Non-empty lines with comments stripped, paired with line numbers."""
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            out.append((ln, body))
    return out


def _parse_count(lines, what):
    if not lines:
        raise ParseError(f"missing {what} count", line=1)
    ln, body = lines[0]
    tok = body.split()
    if len(tok) != 1:
        raise ParseError(f"expected a single {what} count", line=ln)
    try:
        n = int(tok[0])
    except ValueError:
        raise ParseError(f"bad {what} count {tok[0]!r}", line=ln) from None
    if n < 0:
        raise ParseError(f"negative {what} count", line=ln)
    return n


def _split_token(tok, ln, col):
    parts = tok.split(":")
    if len(parts) != 3:
        raise ParseError(f"malformed token {tok!r}", line=ln, col=col)
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise ParseError(f"malformed token {tok!r}", line=ln, col=col) from None


def _parse_body(text, slots, bij_range, what):
    lines = _logical_lines(text)
    n = _parse_count(lines, what)
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(
            f"expected {n} {what} lines, found {len(rows)}",
            line=rows[-1][0] if rows else lines[0][0],
        )
    data = []
    for i, (ln, body) in enumerate(rows):
        toks = body.split()
        if len(toks) != slots:
            raise ParseError(f"{what} {i} needs {slots} tokens, found {len(toks)}", line=ln)
        row = []
        for f, tok in enumerate(toks):
            col = body.index(tok) + 1
            if tok == "-":
                row.append(None)
                continue
            j, g, b = _split_token(tok, ln, col)
            if not 0 <= j < n:
                raise ParseError(f"target index {j} out of range", line=ln, col=col)
            if not 0 <= g < slots:
                raise ParseError(f"target face {g} out of range", line=ln, col=col)
            if not 0 <= b < bij_range:
                raise ParseError(f"bijection token {b} out of range", line=ln, col=col)
            row.append((j, g, b))
        data.append(tuple(row))
    return tuple(data)


def parse_triangulation(text: str) -> Triangulation:
    """Parse the ``.tri`` format; raises ParseError or GluingError."""
    data = _parse_body(text, 4, 24, "tet")
    rows = tuple(
        tuple(None if g is None else (g[0], g[1], PERMS4[g[2]]) for g in row) for row in data
    )
    return Triangulation(rows)


def parse_cubulation(text: str) -> Cubulation:
    """Parse the ``.cub`` format; raises ParseError or GluingError."""
    data = _parse_body(text, 6, 8, "cube")
    for row in data:
        for g in row:
            if g is None:
                raise ParseError("cubulations must glue every slot ('-' not allowed)")
    return Cubulation(data)


def serialize_triangulation(T: Triangulation) -> str:
    lines = [str(T.tet_count)]
    for row in T.gluings:
        toks = ["-" if g is None else f"{g[0]}:{g[1]}:{PERM_INDEX[g[2]]}" for g in row]
        lines.append(" ".join(toks))
    return "\n".join(lines) + "\n"


def serialize_cubulation(C: Cubulation) -> str:
    lines = [str(C.cube_count)]
    for row in C.gluings:
        lines.append(" ".join(f"{q}:{f}:{s}" for q, f, s in row))
    return "\n".join(lines) + "\n"


def gluing_tokens(C: Cubulation) -> str:
    """All gluing tokens on one line, cube by cube (census record field)."""
    return " ".join(f"{q}:{f}:{s}" for row in C.gluings for q, f, s in row)


def cubulation_from_tokens(cube_count: int, tokens: str) -> Cubulation:
    toks = tokens.split()
    if len(toks) != 6 * cube_count:
        raise ParseError(f"expected {6 * cube_count} tokens, found {len(toks)}")
    rows = []
    for q in range(cube_count):
        row = []
        for f in range(6):
            j, g, s = _split_token(toks[6 * q + f], None, None)
            row.append((j, g, s))
        rows.append(tuple(row))
    return Cubulation(tuple(rows))


def make_triangulation(tet_count: int, gluing_list) -> Triangulation:
    """Build a triangulation from [((t,f),(t2,f2),perm), ...] declaring each
    glued pair once; the inverse direction is filled in automatically."""
    rows = [[None] * 4 for _ in range(tet_count)]
    for (t, f), (t2, f2), p in gluing_list:
        p = tuple(p)
        if rows[t][f] is not None or rows[t2][f2] is not None:
            raise GluingError(f"slot ({t},{f}) or ({t2},{f2}) glued twice")
        rows[t][f] = (t2, f2, p)
        rows[t2][f2] = (t, f, PERM_INVERSE[p])
    return Triangulation(tuple(tuple(r) for r in rows))


def make_cubulation(cube_count: int, gluing_list) -> Cubulation:
    """Build a cubulation from [((q,f),(q2,f2),s), ...] declaring each pair once."""
    rows = [[None] * 6 for _ in range(cube_count)]
    for (q, f), (q2, f2), s in gluing_list:
        if rows[q][f] is not None or rows[q2][f2] is not None:
            raise GluingError(f"slot ({q},{f}) or ({q2},{f2}) glued twice")
        rows[q][f] = (q2, f2, s)
        rows[q2][f2] = (q, f, INVERSE_TOKEN[s])
    return Cubulation(tuple(tuple(r) for r in rows))
