"""Combinatorial tables for the standard cube.

Conventions used throughout the package:

* Corners of a cube are bit triples (x, y, z) in {0,1}^3, encoded as the
  integer 4*x + 2*y + z, so lexicographic order on triples equals numeric
  order on codes.
* Faces are numbered 0 = x-, 1 = x+, 2 = y-, 3 = y+, 4 = z-, 5 = z+.
* The four corner slots of a face are listed counterclockwise as seen from
  outside the cube, starting at the corner with minimal code.
* A face gluing carries a symmetry token s in 0..7 acting on slots:
  s = r (r < 4) is the cyclic shift k -> (k + r) mod 4, and s = 4 + r is
  the reversal k -> (r - k) mod 4.
"""

from itertools import permutations, product

CORNERS = tuple(range(8))


def corner_bits(c):
    return ((c >> 2) & 1, (c >> 1) & 1, c & 1)


def corner_code(bits):
    x, y, z = bits
    return 4 * x + 2 * y + z


# Slot cycles are counterclockwise seen from outside (boundary circulation
# agrees with the outward normal by the right-hand rule).
FACE_CORNERS = (
    (0, 1, 3, 2),  # 0: x-
    (4, 6, 7, 5),  # 1: x+
    (0, 4, 5, 1),  # 2: y-
    (2, 3, 7, 6),  # 3: y+
    (0, 2, 6, 4),  # 4: z-
    (1, 5, 7, 3),  # 5: z+
)

FACE_AXIS = (0, 0, 1, 1, 2, 2)
OPPOSITE_FACE = (1, 0, 3, 2, 5, 4)

# Slot position of each corner on each face (-1 when the corner is not on it).
CORNER_SLOT = tuple(
    tuple(FACE_CORNERS[f].index(c) if c in FACE_CORNERS[f] else -1 for c in CORNERS)
    for f in range(6)
)


def slot_map(s):
    """The slot bijection of symmetry token s as a 4-tuple of images."""
    if not 0 <= s <= 7:
        raise ValueError(f"symmetry token {s} out of range 0..7")
    if s < 4:
        return tuple((k + s) % 4 for k in range(4))
    return tuple((s - 4 - k) % 4 for k in range(4))


SLOT_MAPS = tuple(slot_map(s) for s in range(8))
SLOT_MAP_TOKEN = {SLOT_MAPS[s]: s for s in range(8)}

# Inverse token: rotations invert to the opposite shift, reversals are
# involutions.
INVERSE_TOKEN = tuple(SLOT_MAP_TOKEN[tuple(SLOT_MAPS[s].index(k) for k in range(4))] for s in range(8))


def token_from_slot_map(images):
    """Token for an explicit slot bijection, or None if not dihedral."""
    return SLOT_MAP_TOKEN.get(tuple(images))


def glued_slot(s, k):
    return SLOT_MAPS[s][k]


# Edges of a face in slot order: slot edge k joins slots k and k+1.
FACE_SLOT_EDGES = tuple(
    tuple((FACE_CORNERS[f][k], FACE_CORNERS[f][(k + 1) % 4]) for k in range(4))
    for f in range(6)
)

# All 12 undirected cube edges, as sorted corner pairs.
CUBE_EDGES = tuple(sorted({tuple(sorted(e)) for f in range(6) for e in FACE_SLOT_EDGES[f]}))
CUBE_EDGE_INDEX = {e: i for i, e in enumerate(CUBE_EDGES)}

# For an undirected edge, the two faces containing it.
EDGE_FACES = {
    e: tuple(f for f in range(6) if e[0] in FACE_CORNERS[f] and e[1] in FACE_CORNERS[f])
    for e in CUBE_EDGES
}


def other_face_of_edge(face, a, b):
    """The unique face other than `face` containing the edge {a, b}."""
    fa, fb = EDGE_FACES[tuple(sorted((a, b)))]
    return fb if fa == face else fa


def edge_direction(a, b):
    """Axis (0,1,2) along which the edge {a, b} runs."""
    d = a ^ b
    if d == 4:
        return 0
    if d == 2:
        return 1
    if d == 1:
        return 2
    raise ValueError(f"corners {a},{b} are not adjacent")


def _make_symmetries():
    syms = []
    for perm in permutations(range(3)):
        for flips in product((0, 1), repeat=3):
            images = []
            for c in CORNERS:
                b = corner_bits(c)
                nb = [0, 0, 0]
                for axis in range(3):
                    nb[perm[axis]] = b[axis] ^ flips[axis]
                images.append(corner_code(nb))
            syms.append(tuple(images))
    assert len(set(syms)) == 48
    return tuple(syms)


# The 48 symmetries of the cube as corner permutations (tuples of images).
SYMMETRIES = _make_symmetries()
SYM_INDEX = {s: i for i, s in enumerate(SYMMETRIES)}
SYM_IDENTITY = SYM_INDEX[tuple(CORNERS)]

SYM_INVERSE = tuple(
    SYM_INDEX[tuple(SYMMETRIES[g].index(c) for c in CORNERS)] for g in range(48)
)

# SYM_COMPOSE[g][h] = g after h (apply h first).
SYM_COMPOSE = tuple(
    tuple(SYM_INDEX[tuple(SYMMETRIES[g][SYMMETRIES[h][c]] for c in CORNERS)] for h in range(48))
    for g in range(48)
)


def _face_image_table():
    table = []
    for g in range(48):
        row = []
        for f in range(6):
            img = frozenset(SYMMETRIES[g][c] for c in FACE_CORNERS[f])
            (f2,) = [k for k in range(6) if frozenset(FACE_CORNERS[k]) == img]
            row.append(f2)
        table.append(tuple(row))
    return tuple(table)


SYM_FACE = _face_image_table()

# Lookup a symmetry from the ordered images of face 0's corners.
SYM_FROM_FACE0 = {
    tuple(SYMMETRIES[g][c] for c in FACE_CORNERS[0]): g for g in range(48)
}


def sym_from_face_images(face, images):
    """The unique symmetry sending face `face` (slot order) to `images`.

    `images` must be the corners of one face traversed in dihedral order;
    raises KeyError otherwise.
    """
    # Reduce to the face-0 lookup: g = wanted, h = any symmetry with
    # h(face 0) = face in slot order, then g∘h is keyed by face-0 images.
    h = _FACE0_TO_FACE[face]
    key = tuple(images[k] for k in range(4))
    gh = SYM_FROM_FACE0.get(key)
    if gh is None:
        raise KeyError(f"corner images {images} do not bound a face in order")
    return SYM_COMPOSE[gh][SYM_INVERSE[h]]


def _face0_to_face():
    out = []
    for f in range(6):
        key = FACE_CORNERS[f]
        out.append(SYM_FROM_FACE0[key])
    return tuple(out)


_FACE0_TO_FACE = _face0_to_face()


def gluing_corner_map(src_face, dst_face, s):
    """Corner-level map of a face gluing as a dict {src corner: dst corner}."""
    sm = SLOT_MAPS[s]
    src = FACE_CORNERS[src_face]
    dst = FACE_CORNERS[dst_face]
    return {src[k]: dst[sm[k]] for k in range(4)}


def token_from_corner_map(src_face, dst_face, cmap):
    """Symmetry token of a corner bijection between two faces.

    `cmap` maps each corner of src_face to a corner of dst_face. Raises
    ValueError if the induced slot map is not dihedral.
    """
    src = FACE_CORNERS[src_face]
    pos = CORNER_SLOT[dst_face]
    images = tuple(pos[cmap[src[k]]] for k in range(4))
    s = SLOT_MAP_TOKEN.get(images)
    if s is None:
        raise ValueError(
            f"corner map {cmap} from face {src_face} to {dst_face} is not dihedral"
        )
    return s


# Parity (bit sum mod 2) of each corner; on every face the parities
# alternate around the slot cycle.
CORNER_PARITY = tuple(bin(c).count("1") & 1 for c in CORNERS)

# Slot pair class holding the odd-parity corners of each face: class 0
# means slots {0,2}, class 1 means slots {1,3}.  Negative faces carry odd
# corners on slots {1,3}, positive faces on slots {0,2}.
FACE_ODD_SLOT_CLASS = tuple(
    0 if CORNER_PARITY[FACE_CORNERS[f][0]] == 1 else 1 for f in range(6)
)
