"""Canonical isomorphism signatures for cubulations and triangulations.

The signature of a connected complex is the lexicographically least token
stream over all breadth-first relabelings: every (start cell, admissible
symmetry of that cell) seeds a BFS that relabels cells in discovery order
and normalizes the frame of each discovered cell so that its discovery
gluing reads as the trivial one.  Two complexes have equal signatures iff
they are related by a relabeling of cells together with per-cell
symmetries.  Disconnected complexes are canonicalized per component and
the component strings are sorted.
"""

from .complexes import (
    PERMS4,
    PERM_INDEX,
    Cubulation,
    Triangulation,
    make_cubulation,
)
from .cubegeom import (
    CORNER_SLOT,
    FACE_CORNERS,
    SLOT_MAP_TOKEN,
    SYMMETRIES,
    SYM_FACE,
    SYM_INVERSE,
    gluing_corner_map,
    sym_from_face_images,
)
from .validate import UnionFind


def _cube_components(C: Cubulation):
    uf = UnionFind(C.cube_count)
    for q, row in enumerate(C.gluings):
        for q2, _, _ in row:
            uf.union(q, q2)
    comps = {}
    for q in range(C.cube_count):
        comps.setdefault(uf.find(q), []).append(q)
    return list(comps.values())


def _cub_bfs_stream(C: Cubulation, component, start, g0):
    """Token stream for one (start cube, start frame) BFS relabeling."""
    label = {start: 0}
    order = [start]
    frames = {start: g0}
    stream = []
    i = 0
    while i < len(order):
        q = order[i]
        hi = frames[q]
        for F in range(6):
            Fo = SYM_FACE[hi][F]
            q2, F2o, s = C.gluings[q][Fo]
            cmap = gluing_corner_map(Fo, F2o, s)
            imgs = tuple(cmap[SYMMETRIES[hi][c]] for c in FACE_CORNERS[F])
            if q2 not in label:
                label[q2] = len(order)
                order.append(q2)
                frames[q2] = sym_from_face_images(0, imgs)
                stream.append((label[q2], 0, 0))
            else:
                hj_inv = SYM_INVERSE[frames[q2]]
                F2v = SYM_FACE[hj_inv][F2o]
                slots = tuple(
                    CORNER_SLOT[F2v][SYMMETRIES[hj_inv][b]] for b in imgs
                )
                stream.append((label[q2], F2v, SLOT_MAP_TOKEN[slots]))
        i += 1
    return stream


def _canonical_cub_component(C: Cubulation, component):
    best = None
    for start in component:
        for g0 in range(48):
            stream = _cub_bfs_stream(C, component, start, g0)
            if best is None or stream < best:
                best = stream
    return f"cub{len(component)}:" + ";".join(
        f"{j}.{f}.{s}" for j, f, s in best
    )


def canonical_signature(C: Cubulation) -> str:
    """Stable string identifying the combinatorial isomorphism class."""
    if C.cube_count == 0:
        return "cub0"
    parts = sorted(_canonical_cub_component(C, comp) for comp in _cube_components(C))
    return "|".join(parts)


def _tet_components(T: Triangulation):
    uf = UnionFind(T.tet_count)
    for t, row in enumerate(T.gluings):
        for g in row:
            if g is not None:
                uf.union(t, g[0])
    comps = {}
    for t in range(T.tet_count):
        comps.setdefault(uf.find(t), []).append(t)
    return list(comps.values())


def _tri_bfs_stream(T: Triangulation, start, p0):
    label = {start: 0}
    order = [start]
    frames = {start: p0}
    stream = []
    i = 0
    while i < len(order):
        t = order[i]
        pi = frames[t]
        for F in range(4):
            g = T.gluings[t][pi[F]]
            if g is None:
                stream.append((-1, -1, -1))
                continue
            t2, f2o, phi = g
            if t2 not in label:
                label[t2] = len(order)
                order.append(t2)
                frames[t2] = tuple(phi[pi[v]] for v in range(4))
                stream.append((label[t2], F, 0))
            else:
                pj = frames[t2]
                pj_inv = tuple(pj.index(v) for v in range(4))
                psi = tuple(pj_inv[phi[pi[v]]] for v in range(4))
                stream.append((label[t2], psi[F], PERM_INDEX[psi]))
        i += 1
    return stream


def _canonical_tri_component(T: Triangulation, component):
    best = None
    for start in component:
        for p0 in PERMS4:
            stream = _tri_bfs_stream(T, start, p0)
            if best is None or stream < best:
                best = stream
    return f"tri{len(component)}:" + ";".join(
        "u" if j < 0 else f"{j}.{f}.{p}" for j, f, p in best
    )


def canonical_signature_triangulation(T: Triangulation) -> str:
    if T.tet_count == 0:
        return "tri0"
    parts = sorted(_canonical_tri_component(T, comp) for comp in _tet_components(T))
    return "|".join(parts)


def relabel_cubulation(C: Cubulation, perm, syms) -> Cubulation:
    """Isomorphic copy: new cube a is old cube perm[a] viewed through the
    cube symmetry syms[a] (view corner c sits at old corner SYMMETRIES[syms[a]][c])."""
    inv = {old: new for new, old in enumerate(perm)}
    pairs = []
    seen = set()
    for a in range(C.cube_count):
        q = perm[a]
        ha = syms[a]
        for F in range(6):
            Fo = SYM_FACE[ha][F]
            if (q, Fo) in seen:
                continue
            q2, F2o, s = C.gluings[q][Fo]
            seen.add((q, Fo))
            seen.add((q2, F2o))
            b = inv[q2]
            hb_inv = SYM_INVERSE[syms[b]]
            F2 = SYM_FACE[hb_inv][F2o]
            cmap = gluing_corner_map(Fo, F2o, s)
            slots = tuple(
                CORNER_SLOT[F2][SYMMETRIES[hb_inv][cmap[SYMMETRIES[ha][c]]]]
                for c in FACE_CORNERS[F]
            )
            pairs.append(((a, F), (b, F2), SLOT_MAP_TOKEN[slots]))
    return make_cubulation(C.cube_count, pairs)


def relabel_triangulation(T: Triangulation, perm, vperms) -> Triangulation:
    """Isomorphic copy under the tet relabeling perm and per-tet vertex
    bijections vperms (view vertex v of new tet a is vperms[a][v] of old)."""
    inv = {old: new for new, old in enumerate(perm)}
    rows = []
    for a in range(T.tet_count):
        t = perm[a]
        pa = vperms[a]
        row = []
        for F in range(4):
            g = T.gluings[t][pa[F]]
            if g is None:
                row.append(None)
                continue
            t2, f2o, phi = g
            b = inv[t2]
            pb_inv = tuple(vperms[b].index(v) for v in range(4))
            psi = tuple(pb_inv[phi[pa[v]]] for v in range(4))
            row.append((b, psi[F], psi))
        rows.append(tuple(row))
    return Triangulation(tuple(rows))
