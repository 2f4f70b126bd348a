"""Conversions between triangulations and cubulations.

Triangulation -> cubulation: four cubes per tetrahedron, one per corner,
with cube vertices at the corner, the three adjacent edge midpoints, the
three adjacent face barycenters and the tet barycenter.

Cubulation -> triangulation: five tetrahedra per cube (four corner tets
chopped at alternating vertices plus a central one), selected by one
parity bit per cube; whenever the induced face diagonals of a glued pair
disagree, a single tetrahedron with no new vertices is inserted between
the two triangulated squares.  The parity vector is chosen by exhaustive
search (all 2^c vectors, c <= 20) or by steepest-descent bit flips.
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .complexes import Cubulation, Triangulation, make_cubulation, make_triangulation
from .cubegeom import (
    CORNERS,
    CORNER_PARITY,
    CORNER_SLOT,
    FACE_AXIS,
    FACE_CORNERS,
    FACE_ODD_SLOT_CLASS,
    gluing_corner_map,
    token_from_corner_map,
)
from .validate import validate_closed_3manifold, validate_cubulation


@dataclass(frozen=True)
class ConversionStats:
    input_cells: int
    output_cells: int
    inserted_cells: int
    strategy: Optional[str]
    orientation_vector: Optional[tuple]

    def render(self):
        parts = [
            f"input_cells={self.input_cells}",
            f"output_cells={self.output_cells}",
            f"inserted_cells={self.inserted_cells}",
        ]
        if self.strategy is not None:
            parts.append(f"strategy={self.strategy}")
        if self.orientation_vector is not None:
            parts.append("orientation=" + "".join(str(b) for b in self.orientation_vector))
        return " ".join(parts)


def _others(v):
    return [w for w in range(4) if w != v]


def _corner_subset(v, bits):
    others = _others(v)
    return frozenset([v] + [others[j] for j in range(3) if bits[j]])


def _subset_corner(v, subset):
    others = _others(v)
    code = 0
    for j in range(3):
        code |= (others[j] in subset) << (2 - j)
    return code


def _corner_to_subset(v, corner):
    others = _others(v)
    bits = ((corner >> 2) & 1, (corner >> 1) & 1, corner & 1)
    return frozenset([v] + [others[j] for j in range(3) if bits[j]])


def triangulation_to_cubulation(T: Triangulation):
    """(Cubulation with 4 cubes per tetrahedron, ConversionStats)."""
    rep = validate_closed_3manifold(T)
    if not rep.is_closed_manifold:
        raise ValueError(f"input is not a closed manifold: {rep.failure_witness}")
    n = T.tet_count
    pairs = []
    for t in range(n):
        for v in range(4):
            others = _others(v)
            for j in range(3):
                w = others[j]
                # Internal wall between the corner cubes at v and at w:
                # the quadrilateral of barycenters of subsets containing
                # both v and w.
                if v < w:
                    i = _others(w).index(v)
                    src_face, dst_face = 2 * j + 1, 2 * i + 1
                    cmap = {}
                    for corner in FACE_CORNERS[src_face]:
                        subset = _corner_to_subset(v, corner)
                        cmap[corner] = _subset_corner(w, subset)
                    s = token_from_corner_map(src_face, dst_face, cmap)
                    pairs.append(((4 * t + v, src_face), (4 * t + w, dst_face), s))
                # Outer wall on the tet face opposite w, glued across the
                # tet gluing.
                t2, f2, p = T.gluings[t][w]
                if (t, w) < (t2, f2):
                    v2 = p[v]
                    i = _others(v2).index(p[w])
                    src_face, dst_face = 2 * j, 2 * i
                    cmap = {}
                    for corner in FACE_CORNERS[src_face]:
                        subset = _corner_to_subset(v, corner)
                        image = frozenset(p[x] for x in subset)
                        cmap[corner] = _subset_corner(v2, image)
                    s = token_from_corner_map(src_face, dst_face, cmap)
                    pairs.append(((4 * t + v, src_face), (4 * t2 + v2, dst_face), s))
    C = make_cubulation(4 * n, pairs)
    stats = ConversionStats(n, 4 * n, 0, None, None)
    return C, stats


def _diag_class(F, b):
    """Slot-pair class ({0,2} is 0, {1,3} is 1) of the diagonal induced on
    face F by cube parity bit b (corner tets sit on parity-b corners, so
    the diagonal joins the opposite-parity pair)."""
    return FACE_ODD_SLOT_CLASS[F] ^ b


def _orbit_constants(C: Cubulation):
    """Per face orbit (q, q2, K): diagonals disagree iff b_q ^ b_q2 ^ K."""
    out = []
    for (q, F), (q2, F2, s) in C.face_orbits():
        K = FACE_ODD_SLOT_CLASS[F] ^ FACE_ODD_SLOT_CLASS[F2] ^ (s & 1)
        out.append((q, q2, K))
    return out


def _insertions(orbits, bits):
    return sum(bits[q] ^ bits[q2] ^ K for q, q2, K in orbits)


def _search_exhaustive(C: Cubulation):
    c = C.cube_count
    if c > 20:
        raise ValueError("exhaustive parity search is limited to 20 cubes; use greedy")
    orbits = _orbit_constants(C)
    best = None
    for bits in product((0, 1), repeat=c):
        cost = _insertions(orbits, bits)
        if best is None or cost < best[0]:
            best = (cost, bits)
    return best[1]


def _search_greedy(C: Cubulation):
    c = C.cube_count
    orbits = _orbit_constants(C)
    bits = [0] * c
    cost = _insertions(orbits, bits)
    while True:
        best_q, best_cost = None, cost
        for q in range(c):
            bits[q] ^= 1
            trial = _insertions(orbits, bits)
            bits[q] ^= 1
            if trial < best_cost:
                best_q, best_cost = q, trial
        if best_q is None:
            return tuple(bits)
        bits[best_q] ^= 1
        cost = best_cost


def _brick_tets(q, b):
    """Vertex lists (cube corner codes) of the five tets of cube q.

    Corner tets sit on the parity-b corners in ascending order (indices
    5q..5q+3), the central tet on the other four corners (index 5q+4).
    """
    apexes = [u for u in CORNERS if CORNER_PARITY[u] == b]
    central = [u for u in CORNERS if CORNER_PARITY[u] != b]
    tets = []
    for u in apexes:
        tets.append([u] + sorted((u ^ 4, u ^ 2, u ^ 1)))
    tets.append(central)
    return tets


def _face_triangle_records(q, b, tets):
    """For each face F: two records (tet id, tet face, {corner: position}).

    Each record is one of the two triangles into which the induced
    diagonal cuts the face square.
    """
    records = {F: [] for F in range(6)}
    apexes = [u for u in CORNERS if CORNER_PARITY[u] == b]
    for F in range(6):
        cls = _diag_class(F, b)
        d1 = FACE_CORNERS[F][cls]
        d2 = FACE_CORNERS[F][cls + 2]
        axis_bit = (4, 2, 1)[FACE_AXIS[F]]
        for m in (cls + 1, (cls + 3) % 4):
            u = FACE_CORNERS[F][m]
            local = 5 * q + apexes.index(u)
            verts = tets[local - 5 * q]
            off = u ^ axis_bit  # the neighbor of u across the face
            tf = verts.index(off)
            posmap = {x: verts.index(x) for x in (u, d1, d2)}
            records[F].append((local, tf, posmap, (u, d1, d2)))
    return records


def cubulation_to_triangulation(C: Cubulation, strategy: str = "exhaustive"):
    """(Triangulation with 5c + insertions tetrahedra, ConversionStats)."""
    if strategy not in ("exhaustive", "greedy"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rep = validate_cubulation(C)
    if not rep.is_closed_manifold:
        raise ValueError(f"input is not a closed manifold: {rep.failure_witness}")
    c = C.cube_count
    bits = _search_exhaustive(C) if strategy == "exhaustive" else _search_greedy(C)
    orbits = _orbit_constants(C)
    inserted = _insertions(orbits, bits)

    tets = [_brick_tets(q, bits[q]) for q in range(c)]
    faces = [_face_triangle_records(q, bits[q], tets[q]) for q in range(c)]
    pairs = []

    # Internal gluings: each corner tet meets the central tet along its
    # inner face; the off-face vertices are a corner and its antipode.
    for q in range(c):
        central = tets[q][4]
        for r, u in enumerate(x for x in CORNERS if CORNER_PARITY[x] == bits[q]):
            verts = tets[q][r]
            anti = u ^ 7
            phi = [0, 0, 0, 0]
            phi[0] = central.index(anti)
            for i in (1, 2, 3):
                phi[i] = central.index(verts[i])
            pairs.append(((5 * q + r, 0), (5 * q + 4, phi[0]), tuple(phi)))

    next_tet = 5 * c
    insert_tets = []
    for (q, F), (q2, F2, s) in C.face_orbits():
        cmap = gluing_corner_map(F, F2, s)
        recs1 = faces[q][F]
        recs2 = faces[q2][F2]
        mismatch = bits[q] ^ bits[q2] ^ (
            FACE_ODD_SLOT_CLASS[F] ^ FACE_ODD_SLOT_CLASS[F2] ^ (s & 1)
        )
        if not mismatch:
            for tid1, tf1, pos1, tri1 in recs1:
                img = tuple(cmap[x] for x in tri1)
                (tid2, tf2, pos2, tri2) = next(
                    r for r in recs2 if set(r[3]) == set(img)
                )
                phi = [0, 0, 0, 0]
                phi[tf1] = tf2
                for x in tri1:
                    phi[pos1[x]] = pos2[cmap[x]]
                pairs.append(((tid1, tf1), (tid2, tf2), tuple(phi)))
        else:
            tid_ins = next_tet
            next_tet += 1
            insert_tets.append(tid_ins)
            # Insertion tet vertices are the corners of F2 in slot order.
            pos_ins = {x: CORNER_SLOT[F2][x] for x in FACE_CORNERS[F2]}
            used = set()
            for tid2, tf2, pos2, tri2 in recs2:
                opp = next(x for x in FACE_CORNERS[F2] if x not in tri2)
                phi = [0, 0, 0, 0]
                phi[tf2] = pos_ins[opp]
                for x in tri2:
                    phi[pos2[x]] = pos_ins[x]
                pairs.append(((tid2, tf2), (tid_ins, pos_ins[opp]), tuple(phi)))
                used.add(pos_ins[opp])
            for tid1, tf1, pos1, tri1 in recs1:
                img = tuple(cmap[x] for x in tri1)
                opp = next(x for x in FACE_CORNERS[F2] if x not in img)
                phi = [0, 0, 0, 0]
                phi[tf1] = pos_ins[opp]
                for x in tri1:
                    phi[pos1[x]] = pos_ins[cmap[x]]
                pairs.append(((tid1, tf1), (tid_ins, pos_ins[opp]), tuple(phi)))
                used.add(pos_ins[opp])
            if used != {0, 1, 2, 3}:
                raise AssertionError("insertion tet faces not exhausted")

    T = make_triangulation(next_tet, pairs)
    stats = ConversionStats(c, next_tet, inserted, strategy, tuple(bits))
    if not (5 * c + inserted == next_tet and next_tet <= 8 * c):
        raise AssertionError("tet count out of the guaranteed range")
    return T, stats
