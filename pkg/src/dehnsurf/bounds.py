"""Upper-bound calculators from manifold presentations.

Heegaard data yields the bound 4n with n the total meridian intersection
count, refined to 4(n - m) under the stated irreducibility assumptions.
A framed link given by signed Gauss codes yields 8n + 4m in blackboard
framing mode and 8n + 4m + 4*sum|fr_i - w_i| with explicit framings,
where m counts components without an overpass and w_i is the writhe of
component i.  The Matveev-complexity relation turns a known value of
either quantity into an interval for the other.
"""

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class HeegaardData:
    """Genus and the matrix of geometric meridian intersection counts.

    ``m`` is the user-supplied count of intersection points in the closure
    of one complementary region; the refined bound is emitted only when
    ``assume_p2_irreducible`` is set (summands P^2-irreducible, none L(3,1)).
    """

    genus: int
    intersections: tuple  # g x g matrix of non-negative integers
    m: Optional[int] = None
    assume_p2_irreducible: bool = False

    def __post_init__(self):
        g = self.genus
        if g < 1:
            raise ValueError("genus must be positive")
        if len(self.intersections) != g or any(len(r) != g for r in self.intersections):
            raise ValueError(f"intersection matrix must be {g}x{g}")
        if any(v < 0 for r in self.intersections for v in r):
            raise ValueError("intersection counts are non-negative")
        if self.m is not None:
            if self.m < 0:
                raise ValueError("m must be non-negative")
            if self.m > self.total():
                raise ValueError("m exceeds the total intersection count")

    def total(self):
        return sum(v for r in self.intersections for v in r)


@dataclass(frozen=True)
class BoundResult:
    bound: int
    formula_terms: tuple  # ordered (name, value) pairs
    conditional: bool = False
    assumption: Optional[str] = None

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bounds are non-negative")

    def term(self, name):
        return dict(self.formula_terms)[name]

    def render(self):
        terms = ", ".join(f"{k}={v}" for k, v in self.formula_terms)
        tail = f" [assumes {self.assumption}]" if self.conditional else ""
        return f"sc <= {self.bound} ({terms}){tail}"


def heegaard_bound(H: HeegaardData):
    """(unconditional BoundResult, refined BoundResult or None)."""
    n = H.total()
    base = BoundResult(4 * n, (("n", n),))
    refined = None
    if H.m is not None and H.assume_p2_irreducible:
        refined = BoundResult(
            4 * (n - H.m),
            (("n", n), ("m", H.m)),
            conditional=True,
            assumption="P2-irreducible summands, none L(3,1)",
        )
    return base, refined


@dataclass(frozen=True)
class FramedLink:
    """Link diagram as signed Gauss codes with per-component framings.

    Each component is a tuple of passes (crossing id, 'o' or 'u', sign).
    Every crossing id occurs exactly twice overall, once over and once
    under, with equal signs at both passes.
    """

    components: tuple
    framings: tuple

    def __post_init__(self):
        if len(self.components) != len(self.framings):
            raise ValueError("one framing per component required")
        seen = {}
        for ci, comp in enumerate(self.components):
            for cid, kind, sign in comp:
                if kind not in ("o", "u") or sign not in (1, -1):
                    raise ValueError(f"malformed pass {(cid, kind, sign)}")
                seen.setdefault(cid, []).append((ci, kind, sign))
        for cid, passes in seen.items():
            if len(passes) == 1:
                raise ValueError(f"crossing {cid} unmatched")
            if len(passes) > 2:
                raise ValueError(f"crossing {cid} appears {len(passes)} times")
            (_, k1, s1), (_, k2, s2) = passes
            if {k1, k2} != {"o", "u"}:
                raise ValueError(f"crossing {cid} must have one over and one under pass")
            if s1 != s2:
                raise ValueError(f"crossing {cid} has mismatched signs")

    def crossing_count(self):
        return sum(len(c) for c in self.components) // 2

    def overpass_free_count(self):
        """Components with no 'o' pass; a crossingless component counts."""
        return sum(1 for c in self.components if not any(k == "o" for _, k, _ in c))

    def writhes(self):
        """Per component, the signed count of its self-crossings."""
        out = []
        for ci, comp in enumerate(self.components):
            counts = {}
            for cid, _, sign in comp:
                counts.setdefault(cid, []).append(sign)
            out.append(sum(signs[0] for signs in counts.values() if len(signs) == 2))
        return tuple(out)


def parse_gauss_code(text: str) -> FramedLink:
    """One line per component: ``comp: <passes> ; fr <int>``.

    Passes are ``<id><o|u><+|->`` tokens; '#' starts a comment.  The empty
    pass list describes a crossingless unknotted component.
    """
    components = []
    framings = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("comp:"):
            raise ValueError(f"line {ln}: expected 'comp:' prefix")
        body = line[len("comp:"):]
        if ";" not in body:
            raise ValueError(f"line {ln}: missing ';' before the framing")
        passes_part, fr_part = body.split(";", 1)
        fr_tokens = fr_part.split()
        if len(fr_tokens) != 2 or fr_tokens[0] != "fr":
            raise ValueError(f"line {ln}: framing must read 'fr <integer>'")
        try:
            framing = int(fr_tokens[1])
        except ValueError:
            raise ValueError(f"line {ln}: bad framing {fr_tokens[1]!r}") from None
        passes = []
        for tok in passes_part.split():
            if len(tok) < 3 or tok[-2] not in "ou" or tok[-1] not in "+-":
                raise ValueError(f"line {ln}: malformed pass {tok!r}")
            try:
                cid = int(tok[:-2])
            except ValueError:
                raise ValueError(f"line {ln}: malformed pass {tok!r}") from None
            passes.append((cid, tok[-2], 1 if tok[-1] == "+" else -1))
        components.append(tuple(passes))
        framings.append(framing)
    if not components:
        raise ValueError("no components found")
    return FramedLink(tuple(components), tuple(framings))


def surgery_bound(L: FramedLink, framing_mode: str = "blackboard") -> BoundResult:
    """Bound from a surgery presentation; mode 'blackboard' or 'explicit'."""
    if framing_mode not in ("blackboard", "explicit"):
        raise ValueError(f"unknown framing mode {framing_mode!r}")
    n = L.crossing_count()
    m = L.overpass_free_count()
    if framing_mode == "blackboard":
        return BoundResult(8 * n + 4 * m, (("n", n), ("m", m)))
    correction = sum(abs(fr - w) for fr, w in zip(L.framings, L.writhes()))
    return BoundResult(
        8 * n + 4 * m + 4 * correction,
        (("n", n), ("m", m), ("sum|fr-w|", correction)),
    )


@dataclass(frozen=True)
class MatveevRelation:
    """Interval report relating Matveev complexity and surface complexity."""

    given: str  # 'c' or 'sc'
    value: Optional[int]
    low: Optional[int]
    high: Optional[int]
    special: Optional[str] = None

    def render(self):
        if self.special:
            return self.special
        other = "sc" if self.given == "c" else "c"
        return f"{other} in [{self.low}, {self.high}] (from {self.given}={self.value})"


def matveev_relation(c=None, sc=None, flag=None) -> MatveevRelation:
    """Given one of c or sc, bound the other via sc <= 4c and c <= 8 sc.

    ``flag`` may be 'L31' or 'L41', for which the relation does not apply
    and only the one-sided facts are reported.
    """
    if flag == "L31":
        return MatveevRelation("c", None, None, None, "c=0, sc>0, relation inapplicable (L(3,1))")
    if flag == "L41":
        return MatveevRelation("sc", None, None, None, "sc=0, c>0, relation inapplicable (L(4,1))")
    if flag is not None:
        raise ValueError(f"unknown flag {flag!r}")
    if (c is None) == (sc is None):
        raise ValueError("exactly one of c and sc must be given")
    if c is not None:
        if c < 0:
            raise ValueError("negative complexity")
        return MatveevRelation("c", c, -(-c // 8), 4 * c)
    if sc < 0:
        raise ValueError("negative complexity")
    return MatveevRelation("sc", sc, -(-sc // 4), 8 * sc)
