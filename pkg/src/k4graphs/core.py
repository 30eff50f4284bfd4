"""Graph model for the rank-3 tensor model with tetrahedral (K4) interaction.

A Feynman graph is a set of b bubbles (copies of K4 with edges colored
1, 2, 3) together with a fixed-point-free perfect matching of color 0 on
the 4b vertices.  Vertices are addressed either by (bubble, local) pairs
or by the flat index 4*bubble + local.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import re

COLORS = (1, 2, 3)

# Local-index pairings of the three colored edge sets of the bubble.
# Color 1 pairs {0,1},{2,3}; color 2 pairs {0,3},{1,2}; color 3 pairs
# {0,2},{1,3}.  Each is a fixed-point-free involution on {0,1,2,3}.
COLOR_PAIRING = {
    1: (1, 0, 3, 2),
    2: (3, 2, 1, 0),
    3: (2, 3, 0, 1),
}

# The color-preserving automorphisms of the bubble: identity plus the
# three pairings above form a Klein four-group acting simply
# transitively on the local indices.
KLEIN_GROUP = ((0, 1, 2, 3), (1, 0, 3, 2), (3, 2, 1, 0), (2, 3, 0, 1))

# KLEIN_TO_ZERO[l] is the unique Klein element sending local l to 0
# (each element is an involution, so g[0] is also the preimage of 0).
KLEIN_TO_ZERO = {g[0]: g for g in KLEIN_GROUP}


class GraphError(ValueError):
    """Invalid graph construction or operation input."""


class SelfPairError(GraphError):
    pass


class DuplicateVertexError(GraphError):
    pass


class UncoveredVertexError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class ColorError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


def vertex_index(b: int, ref) -> int:
    """Flat index of a (bubble, local) reference, with range checking."""
    bub, loc = ref
    if not (0 <= bub < b) or not (0 <= loc < 4):
        raise VertexRangeError(f"vertex reference {ref!r} out of range for b={b}")
    return 4 * bub + loc


def vertex_ref(v: int):
    return (v // 4, v % 4)


@dataclass(frozen=True)
class FeynmanGraph:
    """b bubbles plus a color-0 perfect matching on the 4b vertices.

    ``matching[v]`` is the color-0 partner of vertex v.  Immutable; all
    operations return new graphs.
    """

    b: int
    matching: tuple

    @property
    def n_vertices(self) -> int:
        return 4 * self.b

    def partner(self, v: int) -> int:
        return self.matching[v]

    def zero_edges(self):
        """Color-0 edges as (u, v) pairs with u < v, sorted by u."""
        return [(v, self.matching[v]) for v in range(4 * self.b)
                if v < self.matching[v]]


def build_graph(b, pairs) -> FeynmanGraph:
    """Build a graph from (bubble, local) vertex-reference pairs.

    Every one of the 4b vertices must appear exactly once; self-pairs,
    duplicates, uncovered vertices and out-of-range references are each
    rejected with a distinct error.  Connectivity is not required.
    """
    if b < 1:
        raise GraphError(f"bubble count must be >= 1, got {b}")
    n = 4 * b
    m = [-1] * n
    for ref_u, ref_v in pairs:
        u = vertex_index(b, ref_u)
        v = vertex_index(b, ref_v)
        if u == v:
            raise SelfPairError(f"vertex {ref_u!r} paired with itself")
        for x in (u, v):
            if m[x] != -1:
                raise DuplicateVertexError(
                    f"vertex {vertex_ref(x)!r} appears in more than one pair")
        m[u] = v
        m[v] = u
    for x in range(n):
        if m[x] == -1:
            raise UncoveredVertexError(f"vertex {vertex_ref(x)!r} is unmatched")
    return FeynmanGraph(b, tuple(m))


def from_matching(b: int, matching) -> FeynmanGraph:
    """Build a graph from a flat partner array, validating it."""
    n = 4 * b
    m = list(matching)
    if len(m) != n:
        raise GraphError(f"matching length {len(m)} != {n}")
    for v in range(n):
        w = m[v]
        if not (0 <= w < n):
            raise VertexRangeError(f"partner {w} of vertex {v} out of range")
        if w == v:
            raise SelfPairError(f"vertex {vertex_ref(v)!r} paired with itself")
        if m[w] != v:
            raise GraphError(f"matching is not an involution at vertex {v}")
    return FeynmanGraph(b, tuple(m))


def double_tadpole(c: int) -> FeynmanGraph:
    """The one-bubble graph G1^(c): both propagators parallel to color c."""
    _check_color(c)
    return FeynmanGraph(1, COLOR_PAIRING[c])


def g2() -> FeynmanGraph:
    """The leading two-bubble graph, stored as the identity matching."""
    return FeynmanGraph(2, (4, 5, 6, 7, 0, 1, 2, 3))


def _check_color(c: int):
    if c not in COLORS:
        raise ColorError(f"color must be one of {COLORS}, got {c}")


def sigma(c: int, b: int):
    """Vertex permutation of the color-c bubble edges on 4b vertices."""
    pairing = COLOR_PAIRING[c]
    return [4 * (v // 4) + pairing[v % 4] for v in range(4 * b)]


@dataclass(frozen=True)
class Face:
    """One bicolored {0, c} cycle."""

    color: int
    vertices: tuple  # sorted flat vertex indices
    length: int      # number of color-0 edges on the cycle
    proper: bool     # the color-c edges lie in pairwise distinct bubbles


def faces(G: FeynmanGraph, c: int):
    """Faces of color c: connected components of the {0, c}-subgraph."""
    _check_color(c)
    n = 4 * G.b
    sig = sigma(c, G.b)
    m = G.matching
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        verts = []
        bubbles = set()
        length = 0
        v = start
        while True:
            seen[v] = True
            w = m[v]
            seen[w] = True
            verts.append(v)
            verts.append(w)
            length += 1
            bubbles.add(w // 4)  # bubble of the color-c edge leaving w
            v = sig[w]
            if v == start:
                break
        out.append(Face(c, tuple(sorted(verts)), length,
                        len(bubbles) == length))
    return out


@dataclass(frozen=True)
class FaceProfile:
    """Per-graph face summary over the three colors."""

    counts: tuple        # (F1, F2, F3)
    lengths: tuple       # per color, sorted tuple of face lengths
    proper_length2: int  # number of proper faces of length 2

    @property
    def total(self) -> int:
        return sum(self.counts)


def face_profile(G: FeynmanGraph) -> FaceProfile:
    counts = []
    lengths = []
    proper2 = 0
    for c in COLORS:
        fs = faces(G, c)
        counts.append(len(fs))
        lengths.append(tuple(sorted(f.length for f in fs)))
        proper2 += sum(1 for f in fs if f.proper and f.length == 2)
    return FaceProfile(tuple(counts), tuple(lengths), proper2)


def face_counts(G: FeynmanGraph):
    """(F1, F2, F3) by cycle counting, without building Face objects.

    Each component of the {0, c}-subgraph splits into exactly two orbits
    of the step permutation sigma_c o matching (the two traversal
    directions), so F_c is half the orbit count.
    """
    n = 4 * G.b
    m = G.matching
    out = []
    for c in COLORS:
        pairing = COLOR_PAIRING[c]
        seen = [False] * n
        orbits = 0
        for v0 in range(n):
            if seen[v0]:
                continue
            orbits += 1
            v = v0
            while not seen[v]:
                seen[v] = True
                w = m[v]
                v = 4 * (w // 4) + pairing[w % 4]
        out.append(orbits // 2)
    return tuple(out)


def total_faces(G: FeynmanGraph) -> int:
    return sum(face_counts(G))


def is_connected(G: FeynmanGraph) -> bool:
    """Connectivity over all edge colors.

    Bubbles are internally connected, so this reduces to connectivity of
    the bubble-level multigraph of color-0 edges.
    """
    b = G.b
    parent = list(range(b))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(4 * b):
        w = G.matching[v]
        if v < w:
            ru, rv = find(v // 4), find(w // 4)
            if ru != rv:
                parent[ru] = rv
    return sum(1 for x in range(b) if find(x) == x) == 1


@dataclass(frozen=True)
class DegreeValue:
    """The 1/N degree omega, stored exactly as the integer 2*omega."""

    two_omega: int

    @property
    def omega(self) -> Fraction:
        return Fraction(self.two_omega, 2)


def degree2(G: FeynmanGraph) -> DegreeValue:
    """2*omega = 6 + 3b - 2F.  Requires a connected graph."""
    if not is_connected(G):
        raise DisconnectedError("degree is only defined for connected graphs")
    return DegreeValue(6 + 3 * G.b - 2 * total_faces(G))


# ---------------------------------------------------------------------------
# Serialization: text record and structured-object form, both with pairs
# sorted by smaller endpoint in (bubble, local) order.

def to_text(G: FeynmanGraph) -> str:
    parts = [f"{u // 4}.{u % 4}-{v // 4}.{v % 4}" for u, v in G.zero_edges()]
    return f"b={G.b}; m=" + ",".join(f"({p})" for p in parts)


_TEXT_RE = re.compile(r"^b=(\d+); m=\((.*)\)$")
_PAIR_RE = re.compile(r"^(\d+)\.(\d+)-(\d+)\.(\d+)$")


def from_text(text: str) -> FeynmanGraph:
    mo = _TEXT_RE.match(text.strip())
    if not mo:
        raise GraphError(f"malformed graph record: {text!r}")
    b = int(mo.group(1))
    pairs = []
    for chunk in mo.group(2).split("),("):
        po = _PAIR_RE.match(chunk)
        if not po:
            raise GraphError(f"malformed pair {chunk!r}")
        bi, vi, bj, vj = map(int, po.groups())
        pairs.append(((bi, vi), (bj, vj)))
    return build_graph(b, pairs)


def to_obj(G: FeynmanGraph) -> dict:
    return {
        "bubbles": G.b,
        "matching": [[[u // 4, u % 4], [v // 4, v % 4]]
                     for u, v in G.zero_edges()],
    }


def from_obj(obj: dict) -> FeynmanGraph:
    try:
        b = int(obj["bubbles"])
        pairs = [((int(p[0][0]), int(p[0][1])), (int(p[1][0]), int(p[1][1])))
                 for p in obj["matching"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise GraphError(f"malformed graph object: {obj!r}") from exc
    return build_graph(b, pairs)
