"""Exact integer cellular homology via boundary matrices and Smith form.

All arithmetic is on Python integers, so pivots may grow without
overflow.  The Smith reduction eliminates with a minimal-absolute-value
pivot (preferring low fill) and finishes with a divisibility repair pass.
"""

from dataclasses import dataclass

from .complexes import Triangulation
from .validate import TriangulationCells, validate_closed_3manifold


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry storage inconsistent with dimensions")

    @staticmethod
    def from_rows(rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        return IntegerMatrix(rows, cols, tuple(tuple(r) for r in rows_list))

    @staticmethod
    def zero(rows, cols):
        return IntegerMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            row = self.entries[i]
            out.append(
                tuple(
                    sum(row[k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                )
            )
        return IntegerMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self):
        return all(v == 0 for r in self.entries for v in r)


def smith_normal_form(A) -> tuple:
    """Invariant factors d1 | d2 | ... followed by zeros, length min(m, n)."""
    if isinstance(A, IntegerMatrix):
        rows, cols, data = A.rows, A.cols, A.entries
    else:
        rows = len(A)
        cols = len(A[0]) if rows else 0
        data = A
    # Sparse storage: row -> {col: value} plus a column index.
    rmap = {}
    cmap = {}
    units = []  # candidate positions of +-1 entries, checked lazily
    for i in range(rows):
        for j in range(cols):
            v = data[i][j]
            if v:
                rmap.setdefault(i, {})[j] = v
                cmap.setdefault(j, set()).add(i)
                if v in (1, -1):
                    units.append((i, j))

    def addmul_row(dst, src, q):
        # row dst += q * row src
        if q == 0:
            return
        srow = rmap.get(src, {})
        drow = rmap.setdefault(dst, {})
        for j, v in srow.items():
            nv = drow.get(j, 0) + q * v
            if nv:
                drow[j] = nv
                cmap.setdefault(j, set()).add(dst)
                if nv in (1, -1):
                    units.append((dst, j))
            elif j in drow:
                del drow[j]
                cmap[j].discard(dst)
        if not drow:
            del rmap[dst]

    def addmul_col(dst, src, q):
        if q == 0:
            return
        for i in list(cmap.get(src, ())):
            v = rmap[i][src]
            drow = rmap[i]
            nv = drow.get(dst, 0) + q * v
            if nv:
                drow[dst] = nv
                cmap.setdefault(dst, set()).add(i)
                if nv in (1, -1):
                    units.append((i, dst))
            elif dst in drow:
                del drow[dst]
                cmap[dst].discard(i)

    divisors = []
    while rmap:
        # Pivot: a unit entry when available (no gcd descent needed),
        # preferring low fill among a bounded sample; otherwise minimal
        # |value| with least fill.
        best = None
        sample = []
        while units and len(sample) < 24:
            i, j = units.pop()
            if rmap.get(i, {}).get(j) in (1, -1):
                sample.append((len(rmap[i]) + len(cmap[j]), i, j))
        if sample:
            fill, pi, pj = min(sample)
            for f, i, j in sample:
                if (i, j) != (pi, pj):
                    units.append((i, j))
            best = (None, pi, pj)
        if best is None:
            for i, row in rmap.items():
                for j, v in row.items():
                    key = (abs(v), len(row) + len(cmap[j]))
                    if best is None or key < best[0]:
                        best = (key, i, j)
        _, pi, pj = best
        while True:
            pv = rmap[pi][pj]
            # Clear the pivot column.
            changed = False
            for i in list(cmap.get(pj, ())):
                if i == pi:
                    continue
                v = rmap[i][pj]
                q = -(v // pv)
                addmul_row(i, pi, q)
                if rmap.get(i, {}).get(pj):
                    # Remainder became the new, smaller pivot.
                    pi = i
                    changed = True
                    break
            if changed:
                continue
            # Clear the pivot row.
            prow = rmap[pi]
            for j in [j for j in prow if j != pj]:
                v = prow[j]
                q = -(v // pv)
                addmul_col(j, pj, q)
                if rmap.get(pi, {}).get(j):
                    pj = j
                    changed = True
                    break
            if changed:
                continue
            break
        pv = abs(rmap[pi][pj])
        # Detach the pivot row and column.
        for j in list(rmap[pi]):
            cmap[j].discard(pi)
            if not cmap[j]:
                del cmap[j]
        del rmap[pi]
        divisors.append(pv)

    divisors.sort()
    # Divisibility repair: replace each adjacent pair by (gcd, lcm).
    from math import gcd

    for i in range(len(divisors)):
        for j in range(i + 1, len(divisors)):
            a, b = divisors[i], divisors[j]
            if b % a:
                g = gcd(a, b)
                divisors[i], divisors[j] = g, a // g * b
    divisors.sort()
    n = min(rows, cols)
    return tuple(divisors) + (0,) * (n - len(divisors))


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple  # d1 | d2 | ..., each >= 2

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion entries must be >= 2")
            if prev is not None and d % prev:
                raise ValueError("torsion must form a divisibility chain")
            prev = d

    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def render(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class HomologyProfile:
    h0: AbelianGroup
    h1: AbelianGroup
    h2: AbelianGroup
    h3: AbelianGroup

    def groups(self):
        return (self.h0, self.h1, self.h2, self.h3)

    def render(self):
        return "|".join(g.render() for g in self.groups())

    def betti(self):
        return tuple(g.rank for g in self.groups())


def boundary_matrices(T: Triangulation):
    """(d1, d2, d3) over the orbit cells, with d(i-1) . d(i) = 0.

    Requires a closed pseudo-manifold so edge orientations are well
    defined.  Cell orientations: edges by their positive directed orbit,
    faces by the ascending vertex order of their first slot, tetrahedra by
    vertex order 0123.
    """
    if T.tet_count == 0:
        z = IntegerMatrix.zero(0, 0)
        return z, z, z
    rep = validate_closed_3manifold(T)
    if not rep.is_pseudo_manifold:
        raise ValueError(f"not a closed pseudo-manifold: {rep.failure_witness}")
    cells = TriangulationCells(T)

    d1 = [[0] * cells.n_edges for _ in range(cells.n_vertices)]
    seen = set()
    for t in range(T.tet_count):
        for a in range(4):
            for b in range(4):
                if a == b:
                    continue
                eid, sgn = cells.edge(t, a, b)
                if eid in seen or sgn != 1:
                    continue
                seen.add(eid)
                d1[cells.vertex(t, b)][eid] += 1
                d1[cells.vertex(t, a)][eid] -= 1

    d2 = [[0] * cells.n_faces for _ in range(cells.n_edges)]
    for fid, ((t, f), _) in enumerate(cells.face_pairs):
        a, b, c = [v for v in range(4) if v != f]
        for (u, v), coeff in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
            eid, sgn = cells.edge(t, u, v)
            d2[eid][fid] += coeff * sgn

    d3 = [[0] * T.tet_count for _ in range(cells.n_faces)]
    for t, row in enumerate(T.gluings):
        for k in range(4):
            fid = cells.face(t, k)
            (rt, rf), g = cells.face_pairs[fid]
            if (rt, rf) == (t, k):
                rel = 1
            else:
                # Transport the representative's ascending orientation
                # through the gluing and compare with this slot's.
                p = T.gluings[rt][rf][2]
                rep_tri = [v for v in range(4) if v != rf]
                img = [p[v] for v in rep_tri]
                nat = sorted(img)
                rel = _triple_parity(img, nat)
            d3[fid][t] += (-1) ** k * rel

    return (
        IntegerMatrix.from_rows(d1) if d1 else IntegerMatrix.zero(0, cells.n_edges),
        IntegerMatrix.from_rows(d2) if d2 else IntegerMatrix.zero(0, cells.n_faces),
        IntegerMatrix.from_rows(d3) if d3 else IntegerMatrix.zero(0, T.tet_count),
    )


def _triple_parity(img, nat):
    """+1 or -1: parity of the permutation taking img to nat (3 items)."""
    perm = [nat.index(x) for x in img]
    inversions = sum(
        1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j]
    )
    return -1 if inversions & 1 else 1


def _rank_from_snf(diag):
    return sum(1 for d in diag if d != 0)


def homology_groups(T: Triangulation) -> HomologyProfile:
    """H0..H3 from Smith normal forms of the boundary matrices."""
    if T.tet_count == 0:
        raise ValueError("homology of the empty complex is undefined")
    d1, d2, d3 = boundary_matrices(T)
    snf1 = smith_normal_form(d1)
    snf2 = smith_normal_form(d2)
    snf3 = smith_normal_form(d3)
    r1, r2, r3 = map(_rank_from_snf, (snf1, snf2, snf3))
    n_v, n_e, n_f, n_t = d1.rows, d1.cols, d2.cols, d3.cols

    def group(dim_cells, rank_in, rank_out, snf_in):
        rank = dim_cells - rank_out - rank_in
        torsion = tuple(d for d in snf_in if d > 1)
        return AbelianGroup(rank, torsion)

    h0 = group(n_v, _rank_from_snf(snf1), 0, snf1)
    h1 = group(n_e, r2, r1, snf2)
    h2 = group(n_f, r3, r2, snf3)
    h3 = AbelianGroup(n_t - r3, ())
    return HomologyProfile(h0, h1, h2, h3)
