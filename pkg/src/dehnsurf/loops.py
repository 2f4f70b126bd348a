"""Loops with transverse crossings on closed surfaces.

A crossing has four half-edge slots in counterclockwise cyclic order
0,1,2,3; the transversality convention puts opposite slots (0,2) and
(1,3) on the same strand.  An embedding scheme is the matching of the 4V
half-edges into edges plus a sign per edge (+1 untwisted, -1 twisted
relative to the local orientations); this determines a cellular embedding
in a closed surface, possibly non-orientable.  The embedded circle with
no crossings is kept as an explicit special case (two-sided on the
sphere, one-sided on the projective plane); those two are the only
quasi-filling loops that are not filling.

Two routes recover the surface: face tracing in the embedding scheme, and
the dual square complex with one square per crossing.  loop_surface uses
the first, loop_dual_quadrangulation the second; they must agree.
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .validate import UnionFind


@dataclass(frozen=True)
class SurfaceType:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("negative genus")
        if not self.orientable and self.genus == 0:
            raise ValueError("a non-orientable surface has genus >= 1")

    @property
    def euler_characteristic(self):
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    def render(self):
        return f"{'orient' if self.orientable else 'nonorient'}:{self.genus}"

    def __str__(self):
        return self.render()


SPHERE = SurfaceType(True, 0)
PROJECTIVE_PLANE = SurfaceType(False, 1)
TORUS = SurfaceType(True, 1)
KLEIN_BOTTLE = SurfaceType(False, 2)


def surface_from_euler(chi, orientable):
    genus = (2 - chi) // 2 if orientable else 2 - chi
    if orientable and chi % 2:
        raise ValueError("orientable surfaces have even Euler characteristic")
    return SurfaceType(orientable, genus)


@dataclass(frozen=True)
class DehnLoop:
    """Crossing structure of an immersed curve system.

    ``mate`` pairs the 4V half-edge slots (dart 4c + s), ``sign`` gives
    each dart its edge sign (equal on both ends).  V = 0 describes an
    embedded circle and carries only ``one_sided``.
    """

    crossings: int
    mate: tuple = ()
    sign: tuple = ()
    one_sided: Optional[bool] = None

    def __post_init__(self):
        v = self.crossings
        if v < 0:
            raise ValueError("negative crossing count")
        if v == 0:
            if self.one_sided is None:
                raise ValueError("a crossingless circle must be tagged one- or two-sided")
            if self.mate or self.sign:
                raise ValueError("V=0 carries no darts")
            return
        if self.one_sided is not None:
            raise ValueError("one_sided applies only to V=0")
        n = 4 * v
        if len(self.mate) != n or len(self.sign) != n:
            raise ValueError("mate and sign must cover all 4V darts")
        for d in range(n):
            m = self.mate[d]
            if not 0 <= m < n or m == d or self.mate[m] != d:
                raise ValueError(f"mate is not a fixed-point-free involution at dart {d}")
            if self.sign[d] not in (1, -1) or self.sign[d] != self.sign[m]:
                raise ValueError(f"edge sign inconsistent at dart {d}")

    def strand_count(self):
        """Number of closed curves traced through opposite slots."""
        if self.crossings == 0:
            return 1
        n = 4 * self.crossings
        seen = [False] * n
        orbits = 0
        for d0 in range(n):
            if seen[d0]:
                continue
            orbits += 1
            d = d0
            while not seen[d]:
                seen[d] = True
                c, s = divmod(d, 4)
                d = self.mate[4 * c + (s + 2) % 4]
        return orbits // 2

    def edges(self):
        return [(d, self.mate[d]) for d in range(4 * self.crossings) if d < self.mate[d]]

    def is_connected(self):
        if self.crossings <= 1:
            return True
        uf = UnionFind(self.crossings)
        for d, m in self.edges():
            uf.union(d // 4, m // 4)
        return uf.count == 1


def loop_surface(L: DehnLoop):
    """(SurfaceType, face count) by face tracing in the embedding scheme."""
    if L.crossings == 0:
        return (PROJECTIVE_PLANE, 1) if L.one_sided else (SPHERE, 2)
    if not L.is_connected():
        raise ValueError("crossing graph is disconnected: not a loop of one surface")
    v = L.crossings
    n = 4 * v

    # States 2d + (0 for +, 1 for -): arrive at dart d with direction bit.
    def step(state):
        d, bit = state >> 1, state & 1
        c, s = divmod(d, 4)
        exit_dart = 4 * c + (s + (1 if bit == 0 else -1)) % 4
        nbit = bit ^ (L.sign[exit_dart] == -1)
        return 2 * L.mate[exit_dart] + nbit

    orbit_of = [-1] * (2 * n)
    orbits = 0
    for s0 in range(2 * n):
        if orbit_of[s0] >= 0:
            continue
        s = s0
        while orbit_of[s] < 0:
            orbit_of[s] = orbits
            s = step(s)
        orbits += 1

    # A face and its reversed traversal form one geometric face.
    pair_uf = UnionFind(orbits)
    for state in range(2 * n):
        d, bit = state >> 1, state & 1
        c, s = divmod(d, 4)
        mirror = 2 * (4 * c + (s + (1 if bit == 0 else -1)) % 4) + (bit ^ 1)
        pair_uf.union(orbit_of[state], orbit_of[mirror])
    faces = pair_uf.count

    chi = faces - v  # V - E + F with E = 2V
    orientable = _signs_balanced(L)
    return surface_from_euler(chi, orientable), faces


def _signs_balanced(L: DehnLoop):
    """True iff every cycle has positive sign product (vertex-flip gauge)."""
    flip = [0] * L.crossings
    seen = [False] * L.crossings
    seen[0] = True
    stack = [0]
    adj = {}
    for d, m in L.edges():
        adj.setdefault(d // 4, []).append((m // 4, L.sign[d]))
        adj.setdefault(m // 4, []).append((d // 4, L.sign[d]))
    while stack:
        c = stack.pop()
        for c2, sgn in adj.get(c, ()):
            want = flip[c] ^ (sgn == -1)
            if not seen[c2]:
                seen[c2] = True
                flip[c2] = want
                stack.append(c2)
            elif flip[c2] != want:
                return False
    return True


def loop_complexity_formula(S: SurfaceType) -> int:
    """Minimal crossings of a quasi-filling loop: 1 - chi, floored at 0."""
    return max(0, 1 - S.euler_characteristic)


@dataclass(frozen=True)
class SquareComplex2D:
    square_count: int
    edge_count: int
    vertex_count: int
    surface: SurfaceType

    @property
    def euler_characteristic(self):
        return self.vertex_count - self.edge_count + self.square_count


def loop_dual_quadrangulation(L: DehnLoop) -> SquareComplex2D:
    """One square per crossing, sides glued across the loop edges.

    The two possible gluings of each side pair are resolved by the edge
    sign; the assembled surface must equal loop_surface's.  Raises on
    non-filling input (no crossings).
    """
    if L.crossings == 0:
        raise ValueError("not filling: a crossingless circle induces no cell decomposition")
    if not L.is_connected():
        raise ValueError("crossing graph is disconnected")
    v = L.crossings
    # Corner k of square c is the quadrant between slots k and k+1.
    corner_uf = UnionFind(4 * v)
    square_uf_sign = [0] * v
    suf = UnionFind(v)
    bad = [False] * v
    flip = {}

    def corner(c, k):
        return 4 * c + k % 4

    for d, m in L.edges():
        c, s = divmod(d, 4)
        c2, s2 = divmod(m, 4)
        if L.sign[d] == 1:
            corner_uf.union(corner(c, s), corner(c2, s2 - 1))
            corner_uf.union(corner(c, s - 1), corner(c2, s2))
        else:
            corner_uf.union(corner(c, s), corner(c2, s2))
            corner_uf.union(corner(c, s - 1), corner(c2, s2 - 1))

    # Orientation propagation over squares: a sign -1 edge reverses.
    flip = [0] * v
    seen = [False] * v
    seen[0] = True
    stack = [0]
    adj = {}
    for d, m in L.edges():
        adj.setdefault(d // 4, []).append((m // 4, L.sign[d]))
        adj.setdefault(m // 4, []).append((d // 4, L.sign[d]))
    orientable = True
    while stack:
        c = stack.pop()
        for c2, sgn in adj.get(c, ()):
            want = flip[c] ^ (sgn == -1)
            if not seen[c2]:
                seen[c2] = True
                flip[c2] = want
                stack.append(c2)
            elif flip[c2] != want:
                orientable = False
    vertex_count = len({corner_uf.find(x) for x in range(4 * v)})
    chi = vertex_count - 2 * v + v
    out = SquareComplex2D(v, 2 * v, vertex_count, surface_from_euler(chi, orientable))
    check, faces = loop_surface(L)
    if check != out.surface or faces != vertex_count:
        raise AssertionError("dual quadrangulation disagrees with face tracing")
    return out


@dataclass(frozen=True)
class LoopRecord:
    loop: DehnLoop
    surface: SurfaceType
    filling: bool
    face_count: int

    def render(self):
        return (
            f"V={self.loop.crossings} surface={self.surface.render()} "
            f"faces={self.face_count} filling={1 if self.filling else 0} "
            f"code={canonical_loop_code(self.loop)}"
        )


def canonical_loop_code(L: DehnLoop) -> str:
    """Relabeling-, symmetry- and gauge-invariant encoding.

    Minimal BFS token stream over all starts (crossing, anchor slot,
    direction); discovered crossings are anchored at the arrival slot with
    the direction that gauges the discovery edge sign to +1, which fixes
    the vertex-flip freedom.
    """
    if L.crossings == 0:
        return "loop0:onesided" if L.one_sided else "loop0:twosided"
    v = L.crossings
    best = None
    for start in range(v):
        for a0 in range(4):
            for e0 in (1, -1):
                label = {start: 0}
                anchors = {start: (a0, e0)}
                order = [start]
                stream = []
                i = 0
                while i < len(order):
                    c = order[i]
                    a, eps = anchors[c]
                    flip_c = eps
                    for p in range(4):
                        s = (a + eps * p) % 4
                        d = 4 * c + s
                        m = L.mate[d]
                        c2, s2 = divmod(m, 4)
                        if c2 not in label:
                            label[c2] = len(order)
                            order.append(c2)
                            anchors[c2] = (s2, L.sign[d] * flip_c)
                            stream.append((label[c2], 0, 1))
                        else:
                            a2, eps2 = anchors[c2]
                            pos = (eps2 * (s2 - a2)) % 4
                            gsign = L.sign[d] * flip_c * eps2
                            stream.append((label[c2], pos, gsign))
                    i += 1
                if best is None or stream < best:
                    best = stream
    return f"loop{v}:" + ";".join(
        f"{j}.{p}.{'+' if g > 0 else '-'}" for j, p, g in best
    )


def _pairings(v):
    """Matchings of the 4v darts with new crossings entered at slot 0."""
    n = 4 * v
    mate = [-1] * n
    touched = [False] * v
    touched[0] = True
    out = []

    def rec(a):
        while a < n and mate[a] >= 0:
            a += 1
        if a == n:
            out.append(tuple(mate))
            return
        for b in range(a + 1, n):
            if mate[b] < 0 and touched[b // 4]:
                mate[a] = b
                mate[b] = a
                rec(a + 1)
                mate[a] = -1
                mate[b] = -1
        for q in range(v):
            if not touched[q]:
                touched[q] = True
                b = 4 * q
                mate[a] = b
                mate[b] = a
                rec(a + 1)
                mate[a] = -1
                mate[b] = -1
                touched[q] = False
                break

    rec(0)
    return out


def _sign_choices(v, mate):
    """Sign vectors with spanning-tree edges gauged to +1."""
    edges = [(d, mate[d]) for d in range(4 * v) if d < mate[d]]
    uf = UnionFind(v)
    tree = set()
    for idx, (d, m) in enumerate(edges):
        if uf.find(d // 4) != uf.find(m // 4):
            uf.union(d // 4, m // 4)
            tree.add(idx)
    free = [idx for idx in range(len(edges)) if idx not in tree]
    for bits in product((1, -1), repeat=len(free)):
        sign = [1] * (4 * v)
        for bi, idx in zip(bits, free):
            d, m = edges[idx]
            sign[d] = sign[m] = bi
        yield tuple(sign)


def enumerate_dehn_loops(max_V: int):
    """All loop structures with at most max_V crossings up to isomorphism.

    Isomorphism includes crossing relabelings, the dihedral symmetries of
    each crossing and vertex sign flips.  The two crossingless circles
    lead the list; they are quasi-filling but not filling.
    """
    if max_V > 4:
        raise ValueError("enumeration is desk-scale guarded to max_V <= 4")
    records = [
        LoopRecord(DehnLoop(0, one_sided=False), SPHERE, False, 2),
        LoopRecord(DehnLoop(0, one_sided=True), PROJECTIVE_PLANE, False, 1),
    ]
    for v in range(1, max_V + 1):
        seen = {}
        for mate in _pairings(v):
            uf = UnionFind(v)
            for d in range(4 * v):
                uf.union(d // 4, mate[d] // 4)
            if uf.count != 1:
                continue
            for sign in _sign_choices(v, mate):
                L = DehnLoop(v, mate, sign)
                code = canonical_loop_code(L)
                if code in seen:
                    continue
                surface, faces = loop_surface(L)
                seen[code] = LoopRecord(L, surface, True, faces)
        records.extend(seen[code] for code in sorted(seen))
    return records


def verify_lc(max_V: int):
    """Rows (surface, formula value, enumerated min V, match flag) for all
    surfaces realized by loops with at most max_V crossings."""
    records = enumerate_dehn_loops(max_V)
    min_v = {}
    for rec in records:
        key = rec.surface
        cur = min_v.get(key)
        if cur is None or rec.loop.crossings < cur:
            min_v[key] = rec.loop.crossings
    rows = []
    for surface in sorted(min_v, key=lambda s: (loop_complexity_formula(s), not s.orientable, s.genus)):
        formula = loop_complexity_formula(surface)
        rows.append((surface, formula, min_v[surface], formula == min_v[surface]))
    return rows
