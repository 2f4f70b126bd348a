"""Exhaustive census of cubulations with a fixed number of cubes.

All pairings of the 6c face slots with all dihedral symmetry assignments
are searched depth-first.  Isomorph rejection: whenever the scan first
reaches an untouched cube, the entering gluing may be normalized to
(face 0, symmetry 0) and untouched cubes renamed in discovery order, so
only those branches are generated; remaining duplicates collapse by
canonical signature afterwards.  A signed union-find over cube-edge
incidences prunes any branch identifying an edge with itself reversed.
Candidates then pass the closed-manifold check, and each surviving
isomorphism class is fingerprinted by homology, orientability and the
dual sheet surface.

The branch list at the first slot partitions the search space for
parallel workers; results are merged, deduplicated and sorted, so output
is independent of the worker count.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import get_context

from .complexes import Cubulation, cubulation_from_tokens, gluing_tokens
from .cubegeom import CUBE_EDGE_INDEX, FACE_SLOT_EDGES, INVERSE_TOKEN, gluing_corner_map
from .duality import dual_dehn_surface, sheet_summary, verify_duality_counts
from .homology import HomologyProfile, homology_groups
from .signature import canonical_signature
from .validate import (
    CubulationCells,
    UnionFind,
    cone_subdivision,
    validate_closed_3manifold,
    validate_cubulation,
)


@dataclass(frozen=True)
class CensusRecord:
    signature: str
    cube_count: int
    tokens: str
    orientable: bool
    homology: HomologyProfile
    sheet_summary: str
    euler_ok: bool

    def render(self):
        return "\t".join(
            (
                self.signature,
                self.tokens,
                "orientable" if self.orientable else "nonorientable",
                self.homology.render(),
                self.sheet_summary,
            )
        )


class _RollbackSignedUF:
    """Union-find with parity and an undo log, no path compression."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.par = [0] * n
        self.size = [1] * n
        self.log = []
        self.count = n

    def find(self, x):
        p = 0
        while self.parent[x] != x:
            p ^= self.par[x]
            x = self.parent[x]
        return x, p

    def union(self, a, b, rel):
        """False iff this identification closes an odd (reversing) cycle."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == rel
        if self.size[ra] < self.size[rb]:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[rb] = ra
        self.par[rb] = pa ^ pb ^ rel
        self.size[ra] += self.size[rb]
        self.count -= 1
        self.log.append((ra, rb))
        return True

    def mark(self):
        return len(self.log)

    def rollback(self, mark):
        while len(self.log) > mark:
            ra, rb = self.log.pop()
            self.parent[rb] = rb
            self.par[rb] = 0
            self.size[ra] -= self.size[rb]
            self.count += 1


@lru_cache(maxsize=None)
def _edge_actions(F, F2, s):
    """Per slot edge of F: (source edge index, target edge index, flip bit)."""
    cmap = gluing_corner_map(F, F2, s)
    out = []
    for x, y in FACE_SLOT_EDGES[F]:
        mx, my = cmap[x], cmap[y]
        e1 = CUBE_EDGE_INDEX[(x, y) if x < y else (y, x)]
        e2 = CUBE_EDGE_INDEX[(mx, my) if mx < my else (my, mx)]
        out.append((e1, e2, 1 if (x < y) != (mx < my) else 0))
    return tuple(out)


def _first_slot_branches(c):
    """Assignments of slot (0,0) indexing the parallel partitions."""
    branches = [(f, s) for f in range(1, 6) for s in range(8)]
    if c > 1:
        branches.append((6, 0))  # first touch of cube 1 at its face 0
    return branches


def _complete(glue, c):
    """Quick necessary checks, then the closed-manifold check on the cone
    subdivision; returns the gluing token string or None."""
    cube_uf = UnionFind(c)
    for a, (b, s) in enumerate(glue):
        cube_uf.union(a // 6, b // 6)
    if cube_uf.count != 1:
        return None
    corner_uf = UnionFind(8 * c)
    for a, (b, s) in enumerate(glue):
        if a > b:
            continue
        q, F = divmod(a, 6)
        q2, F2 = divmod(b, 6)
        for x, y in gluing_corner_map(F, F2, s).items():
            corner_uf.union(8 * q + x, 8 * q2 + y)
    rows = []
    for q in range(c):
        rows.append(
            tuple((glue[6 * q + F][0] // 6, glue[6 * q + F][0] % 6, glue[6 * q + F][1]) for F in range(6))
        )
    C = Cubulation(tuple(rows))
    cells = CubulationCells(C)
    if cells.reversed_edge is not None:
        return None
    if cells.n_edges != cells.n_vertices + 2 * c:
        return None
    if not validate_closed_3manifold(cone_subdivision(C)).is_closed_manifold:
        return None
    return gluing_tokens(C)


def _search_branches(c, branches):
    """Candidate token strings found in the given first-slot branches."""
    glue = [None] * (6 * c)
    touched = [False] * c
    touched[0] = True
    uf = _RollbackSignedUF(12 * c)
    results = []
    first = _first_slot_branches(c)

    def assign(a, b, s):
        q, F = divmod(a, 6)
        q2, F2 = divmod(b, 6)
        mark = uf.mark()
        for e1, e2, rel in _edge_actions(F, F2, s):
            if not uf.union(12 * q + e1, 12 * q2 + e2, rel):
                uf.rollback(mark)
                return None
        glue[a] = (b, s)
        glue[b] = (a, INVERSE_TOKEN[s])
        return mark

    def undo(a, mark):
        b = glue[a][0]
        glue[a] = None
        glue[b] = None
        uf.rollback(mark)

    def rec(start):
        a = start
        while a < 6 * c and glue[a] is not None:
            a += 1
        if a == 6 * c:
            tok = _complete(glue, c)
            if tok is not None:
                results.append(tok)
            return
        # Partners on already-touched cubes, any symmetry.
        for b in range(a + 1, 6 * c):
            if glue[b] is None and touched[b // 6]:
                for s in range(8):
                    mark = assign(a, b, s)
                    if mark is not None:
                        rec(a + 1)
                        undo(a, mark)
        # First touch of the lowest-indexed untouched cube, normalized.
        for q in range(c):
            if not touched[q]:
                touched[q] = True
                mark = assign(a, 6 * q, 0)
                if mark is not None:
                    rec(a + 1)
                    undo(a, mark)
                touched[q] = False
                break

    for bi in branches:
        f_or_slot, s = first[bi]
        if f_or_slot == 6:
            touched[1] = True
            mark = assign(0, 6, 0)
            if mark is not None:
                rec(1)
                undo(0, mark)
            touched[1] = False
        else:
            mark = assign(0, f_or_slot, s)
            if mark is not None:
                rec(1)
                undo(0, mark)
    return results


def _worker(args):
    c, branches = args
    return _search_branches(c, branches)


def fingerprint(C: Cubulation) -> CensusRecord:
    """Full record for a closed-manifold cubulation."""
    rep = validate_cubulation(C)
    if not rep.is_closed_manifold:
        raise ValueError(f"not a closed manifold: {rep.failure_witness}")
    H = homology_groups(cone_subdivision(C))
    dual = dual_dehn_surface(C)
    euler_ok = (
        rep.counts.euler == 0
        and rep.counts.edges == rep.counts.vertices + 2 * C.cube_count
        and verify_duality_counts(C, dual)
    )
    return CensusRecord(
        signature=canonical_signature(C),
        cube_count=C.cube_count,
        tokens=gluing_tokens(C),
        orientable=rep.orientable,
        homology=H,
        sheet_summary=sheet_summary(dual),
        euler_ok=euler_ok,
    )


def enumerate_cubulations(c: int, workers: int = 1):
    """All closed-manifold cubulations with c cubes, one record per
    isomorphism class, sorted by canonical signature."""
    if c < 1:
        raise ValueError("cube count must be positive")
    if c > 2:
        warnings.warn(
            f"census with {c} cubes may take very long; designed scale is c <= 2",
            stacklevel=2,
        )
    branches = list(range(len(_first_slot_branches(c))))
    if workers <= 1:
        candidate_lists = [_search_branches(c, branches)]
    else:
        parts = [(c, branches[w::workers]) for w in range(workers)]
        parts = [p for p in parts if p[1]]
        with get_context("fork").Pool(len(parts)) as pool:
            candidate_lists = pool.map(_worker, parts)

    by_signature = {}
    for tokens in sorted(set(t for lst in candidate_lists for t in lst)):
        C = cubulation_from_tokens(c, tokens)
        sig = canonical_signature(C)
        if sig not in by_signature:
            by_signature[sig] = tokens
    records = []
    for sig in sorted(by_signature):
        C = cubulation_from_tokens(c, by_signature[sig])
        rec = fingerprint(C)
        if rec.signature != sig or not rec.euler_ok:
            raise AssertionError("census record failed its own invariants")
        records.append(rec)
    return records


def render_census(records, c: int) -> str:
    lines = [f"census c={c} records={len(records)}"]
    lines.extend(r.render() for r in records)
    return "\n".join(lines) + "\n"


def parse_census(text: str):
    """(cube count, [(signature, tokens, orientable, homology, sheet)])."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("census c="):
        raise ValueError("missing census header")
    head = lines[0].split()
    c = int(head[1].split("=")[1])
    k = int(head[2].split("=")[1])
    rows = []
    for line in lines[1:]:
        if not line:
            continue
        sig, tokens, orient, hom, sheet = line.split("\t")
        rows.append((sig, tokens, orient == "orientable", hom, sheet))
    if len(rows) != k:
        raise ValueError(f"header promises {k} records, found {len(rows)}")
    return c, rows
