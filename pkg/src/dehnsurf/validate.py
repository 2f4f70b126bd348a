"""Closed-3-manifold validation, subdivisions and cell-orbit machinery.

The validity criterion for a triangulation is the standard one: every face
slot glued in pairs, no edge identified with itself reversing orientation
(pseudo-manifold), and every vertex link a 2-sphere (closed manifold).
Links are assembled from corner germs, which is sound on arbitrary
face-gluing complexes; cubulations are nevertheless checked through a
barycentric subdivision of their cone subdivision whenever a cube is glued
to itself, so the link complexes are genuinely simplicial.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional

from .complexes import (
    PERM_PARITY,
    PERMS4,
    PERM_INDEX,
    Cubulation,
    Triangulation,
)
from .cubegeom import (
    CUBE_EDGES,
    CUBE_EDGE_INDEX,
    FACE_CORNERS,
    FACE_SLOT_EDGES,
    SLOT_MAPS,
    gluing_corner_map,
    other_face_of_edge,
)


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.count = n

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra
            self.count -= 1

    def classes(self):
        out = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out


# Ordered pairs of distinct tetrahedron vertices, for directed-edge codes.
TET_DIRED = tuple((a, b) for a in range(4) for b in range(4) if a != b)
TET_DIRED_INDEX = {e: i for i, e in enumerate(TET_DIRED)}


@dataclass(frozen=True)
class CellCounts:
    vertices: int
    edges: int
    faces: int
    top_cells: int

    @property
    def euler(self):
        return self.vertices - self.edges + self.faces - self.top_cells


@dataclass(frozen=True)
class ManifoldReport:
    is_pseudo_manifold: bool
    is_closed_manifold: bool
    orientable: Optional[bool]
    counts: CellCounts
    failure_witness: Optional[str] = None


def _empty_report():
    return ManifoldReport(False, False, None, CellCounts(0, 0, 0, 0), "empty complex")


class TriangulationCells:
    """Orbit decomposition of the cells of a triangulation.

    Vertices are orbits of (tet, vertex) corners, edges are orbits of
    directed (tet, a, b) incidences paired with their reversals, faces are
    glued slot pairs.  Only meaningful when every edge is valid (no
    reversal), which `validate_closed_3manifold` checks first.
    """

    def __init__(self, T: Triangulation):
        self.T = T
        n = T.tet_count
        vert_uf = UnionFind(4 * n)
        dired_uf = UnionFind(12 * n)
        for t, row in enumerate(T.gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, f2, p = g
                face_verts = [v for v in range(4) if v != f]
                for v in face_verts:
                    vert_uf.union(4 * t + v, 4 * t2 + p[v])
                for a in face_verts:
                    for b in face_verts:
                        if a != b:
                            dired_uf.union(
                                12 * t + TET_DIRED_INDEX[(a, b)],
                                12 * t2 + TET_DIRED_INDEX[(p[a], p[b])],
                            )
        self.vert_uf = vert_uf
        self.dired_uf = dired_uf

        self.vertex_ids = {}
        for t in range(n):
            for v in range(4):
                r = vert_uf.find(4 * t + v)
                if r not in self.vertex_ids:
                    self.vertex_ids[r] = len(self.vertex_ids)

        # Pair each directed-edge orbit with its mirror; an orbit equal to
        # its own mirror is a reversed (invalid) edge.
        self.reversed_edge = None
        dir_root_mirror = {}
        for t in range(n):
            for i, (a, b) in enumerate(TET_DIRED):
                x = 12 * t + i
                rx = dired_uf.find(x)
                rm = dired_uf.find(12 * t + TET_DIRED_INDEX[(b, a)])
                if rx == rm and self.reversed_edge is None:
                    self.reversed_edge = (t, a, b)
                dir_root_mirror[rx] = rm
        # Positive orientation: the orbit pair's smaller root.
        self.edge_ids = {}
        self.positive_root = {}
        for rx, rm in dir_root_mirror.items():
            key = min(rx, rm)
            if key not in self.edge_ids:
                self.edge_ids[key] = len(self.edge_ids)
            self.positive_root[rx] = key

        self.face_pairs = []
        self.face_of_slot = {}
        seen = set()
        for t, row in enumerate(T.gluings):
            for f, g in enumerate(row):
                if (t, f) in seen:
                    continue
                seen.add((t, f))
                if g is None:
                    self.face_of_slot[(t, f)] = len(self.face_pairs)
                    self.face_pairs.append(((t, f), None))
                else:
                    seen.add((g[0], g[1]))
                    self.face_of_slot[(t, f)] = len(self.face_pairs)
                    self.face_of_slot[(g[0], g[1])] = len(self.face_pairs)
                    self.face_pairs.append(((t, f), g))

    @property
    def n_vertices(self):
        return len(self.vertex_ids)

    @property
    def n_edges(self):
        return len(self.edge_ids)

    @property
    def n_faces(self):
        return len(self.face_pairs)

    def vertex(self, t, v):
        return self.vertex_ids[self.vert_uf.find(4 * t + v)]

    def edge(self, t, a, b):
        """(edge orbit id, sign): sign +1 when (a, b) is the positive sense."""
        r = self.dired_uf.find(12 * t + TET_DIRED_INDEX[(a, b)])
        key = self.positive_root[r]
        return self.edge_ids[key], (1 if key == r else -1)

    def face(self, t, f):
        return self.face_of_slot[(t, f)]

    def counts(self):
        return CellCounts(self.n_vertices, self.n_edges, self.n_faces, self.T.tet_count)


def validate_closed_3manifold(T: Triangulation) -> ManifoldReport:
    """Pseudo-manifold and closed-manifold checks with a failure witness."""
    if T.tet_count == 0:
        return _empty_report()
    cells = TriangulationCells(T)
    counts = cells.counts()

    unglued = [
        (t, f) for t, row in enumerate(T.gluings) for f, g in enumerate(row) if g is None
    ]
    if unglued:
        return ManifoldReport(
            False, False, None, counts, f"unglued slot {unglued[0]}"
        )
    if cells.reversed_edge is not None:
        t, a, b = cells.reversed_edge
        return ManifoldReport(
            False,
            False,
            None,
            counts,
            f"edge ({t},{{{a},{b}}}) identified with itself reversed: link not a single cycle",
        )

    # Vertex links: for the orbit V the link has one triangle per corner,
    # 3/2 edges per corner, and one vertex per directed-edge orbit with
    # source in V; the link is a sphere iff its Euler characteristic is 2.
    corners_in = [0] * cells.n_vertices
    for t in range(T.tet_count):
        for v in range(4):
            corners_in[cells.vertex(t, v)] += 1
    link_vertices = [0] * cells.n_vertices
    seen_roots = set()
    for t in range(T.tet_count):
        for a, b in TET_DIRED:
            r = cells.dired_uf.find(12 * t + TET_DIRED_INDEX[(a, b)])
            if r in seen_roots:
                continue
            seen_roots.add(r)
            link_vertices[cells.vertex(t, a)] += 1
    for vid in range(cells.n_vertices):
        tri = corners_in[vid]
        chi = link_vertices[vid] - (3 * tri) // 2 + tri
        if chi != 2:
            return ManifoldReport(
                True,
                False,
                None,
                counts,
                f"vertex orbit {vid} has link Euler characteristic {chi}",
            )
    return ManifoldReport(True, True, orientability(T), counts, None)


def orientability(T: Triangulation) -> bool:
    """True iff tetrahedra admit a consistent orientation assignment.

    Convention: a gluing is orientation-compatible between equally signed
    tetrahedra iff its vertex bijection is an odd permutation.
    """
    n = T.tet_count
    if n == 0:
        raise ValueError("orientability of the empty complex is undefined")
    sign = [0] * n
    for start in range(n):
        if sign[start]:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            t = stack.pop()
            for g in T.gluings[t]:
                if g is None:
                    continue
                t2, _, p = g
                want = sign[t] if PERM_PARITY[p] else -sign[t]
                if sign[t2] == 0:
                    sign[t2] = want
                    stack.append(t2)
                elif sign[t2] != want:
                    return False
    return True


# Vertex bijections used by the cone subdivision: internal gluings swap the
# two corner vertices, rotation-type boundary gluings are the identity.
_SWAP01 = (1, 0, 2, 3)
_IDENT = (0, 1, 2, 3)


def cone_subdivision(C: Cubulation) -> Triangulation:
    """24 tetrahedra per cube: each face is coned from its center into four
    triangles over its corner arcs, and the boundary is coned from the cube
    center.  Tet 24q + 4F + k has vertices (corner k of face F, corner k+1,
    center of F, center of cube q)."""
    rows = []
    for q, row in enumerate(C.gluings):
        for F in range(6):
            corners = FACE_CORNERS[F]
            for k in range(4):
                A, B = corners[k], corners[(k + 1) % 4]
                F2 = other_face_of_edge(F, A, B)
                k2 = FACE_SLOT_EDGES[F2].index((B, A))
                q2, G, s = row[F]
                sm = SLOT_MAPS[s]
                if s < 4:
                    ext = (24 * q2 + 4 * G + sm[k], 3, _IDENT)
                else:
                    ext = (24 * q2 + 4 * G + sm[(k + 1) % 4], 3, _SWAP01)
                rows.append(
                    (
                        (24 * q + 4 * F + (k + 1) % 4, 1, _SWAP01),
                        (24 * q + 4 * F + (k - 1) % 4, 0, _SWAP01),
                        (24 * q + 4 * F2 + k2, 2, _SWAP01),
                        ext,
                    )
                )
    return Triangulation(tuple(rows))


# Flags of a tetrahedron: permutations (v, w, u, x) meaning the chain
# v < {v,w} < {v,w,u} < tet; one barycentric tetrahedron per flag.
def barycentric_subdivision(T: Triangulation) -> Triangulation:
    rows = []
    for t, row in enumerate(T.gluings):
        for flag in PERMS4:
            v, w, u, x = flag
            g0 = (24 * t + PERM_INDEX[(w, v, u, x)], 0, _IDENT)
            g1 = (24 * t + PERM_INDEX[(v, u, w, x)], 1, _IDENT)
            g2 = (24 * t + PERM_INDEX[(v, w, x, u)], 2, _IDENT)
            g = row[x]
            if g is None:
                g3 = None
            else:
                t2, _, p = g
                g3 = (24 * t2 + PERM_INDEX[(p[v], p[w], p[u], p[x])], 3, _IDENT)
            rows.append((g0, g1, g2, g3))
    return Triangulation(tuple(rows))


class CubulationCells:
    """Corner, edge and face orbits of a cubulation."""

    def __init__(self, C: Cubulation):
        self.C = C
        c = C.cube_count
        corner_uf = UnionFind(8 * c)
        # Directed cube edges: code 24q + 2e + d, d = 1 when traversed from
        # the larger corner to the smaller.
        dired_uf = UnionFind(24 * c)
        cube_uf = UnionFind(max(c, 1))
        for (q, F), (q2, F2, s) in C.face_orbits():
            cube_uf.union(q, q2)
            cmap = gluing_corner_map(F, F2, s)
            for a, b in cmap.items():
                corner_uf.union(8 * q + a, 8 * q2 + b)
            for A, B in FACE_SLOT_EDGES[F]:
                A2, B2 = cmap[A], cmap[B]
                dired_uf.union(
                    self._dired_code(q, A, B), self._dired_code(q2, A2, B2)
                )
                dired_uf.union(
                    self._dired_code(q, B, A), self._dired_code(q2, B2, A2)
                )
        self.corner_uf = corner_uf
        self.dired_uf = dired_uf
        self.cube_uf = cube_uf
        self.reversed_edge = None
        roots = set()
        for q in range(c):
            for e, (a, b) in enumerate(CUBE_EDGES):
                x = self._dired_code(q, a, b)
                rx = dired_uf.find(x)
                rm = dired_uf.find(self._dired_code(q, b, a))
                if rx == rm and self.reversed_edge is None:
                    self.reversed_edge = (q, (a, b))
                roots.add(min(rx, rm))
        self.n_edges = len(roots)
        self.n_vertices = len({corner_uf.find(x) for x in range(8 * c)})
        self.connected = c <= 1 or cube_uf.count == 1

    @staticmethod
    def _dired_code(q, a, b):
        if a < b:
            return 24 * q + 2 * CUBE_EDGE_INDEX[(a, b)]
        return 24 * q + 2 * CUBE_EDGE_INDEX[(b, a)] + 1

    def edge_orbit(self, q, a, b):
        """Undirected edge orbit root of cube edge {a, b} of cube q."""
        rx = self.dired_uf.find(self._dired_code(q, a, b))
        rm = self.dired_uf.find(self._dired_code(q, b, a))
        return min(rx, rm)

    def counts(self):
        c = self.C.cube_count
        return CellCounts(self.n_vertices, self.n_edges, 3 * c, c)


def has_self_adjacency(C: Cubulation) -> bool:
    return any(g[0] == q for q, row in enumerate(C.gluings) for g in row)


def validate_cubulation(C: Cubulation) -> ManifoldReport:
    """Validate through the cone subdivision; counts are the cubulation's own.

    When a cube is glued to itself the link check runs on a barycentric
    subdivision of the cone subdivision.
    """
    if C.cube_count == 0:
        return _empty_report()
    cells = CubulationCells(C)
    counts = cells.counts()
    T = cone_subdivision(C)
    Tcheck = barycentric_subdivision(T) if has_self_adjacency(C) else T
    rep = validate_closed_3manifold(Tcheck)
    orientable = orientability(T) if rep.is_closed_manifold else None
    witness = rep.failure_witness
    if rep.is_closed_manifold and counts.edges != counts.vertices + 2 * C.cube_count:
        # Unreachable for genuine closed manifolds; recorded defensively.
        witness = (
            f"edge count {counts.edges} != vertices + 2*cubes "
            f"{counts.vertices + 2 * C.cube_count}"
        )
        return ManifoldReport(rep.is_pseudo_manifold, False, None, counts, witness)
    return ManifoldReport(
        rep.is_pseudo_manifold, rep.is_closed_manifold, orientable, counts, witness
    )
