"""Graph surgeries: flips, 2-edge-cuts, melonic dipole insertion/reduction."""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DisconnectedError,
    FeynmanGraph,
    GraphError,
    _check_color,
    face_counts,
    is_connected,
    sigma,
)

VARIANTS = ("A", "B")


class EdgeError(GraphError):
    pass


def normalize_edge(G: FeynmanGraph, edge):
    """Sorted (u, v) for a color-0 edge given as a vertex pair."""
    u, v = edge
    if u > v:
        u, v = v, u
    if not (0 <= u < 4 * G.b) or G.matching[u] != v or u == v:
        raise EdgeError(f"{edge!r} is not a color-0 edge of the graph")
    return (u, v)


def _ordered_pair(G, eL, eR):
    eL = normalize_edge(G, eL)
    eR = normalize_edge(G, eR)
    if eL == eR:
        raise EdgeError("the two edges must be distinct")
    if eL[0] > eR[0]:
        eL, eR = eR, eL
    return eL, eR


@dataclass(frozen=True)
class FlipOutcome:
    result: FeynmanGraph
    delta_faces: tuple      # (dF1, dF2, dF3)
    connected_after: bool
    variant: str
    new_edges: tuple        # the two color-0 edges created by the flip


def flip(G: FeynmanGraph, eL, eR, variant: str) -> FlipOutcome:
    """Cut two color-0 edges and reglue their endpoints.

    With eL = {a, b}, eR = {c, d} ordered so that a < b, c < d and
    a < c, variant A produces {a, c}, {b, d} and variant B produces
    {a, d}, {b, c}.  The move is its own inverse: flipping the two new
    edges with the matching variant restores the input graph.
    """
    if variant not in VARIANTS:
        raise EdgeError(f"variant must be one of {VARIANTS}, got {variant!r}")
    (a, b), (c, d) = _ordered_pair(G, eL, eR)
    pairs = ((a, c), (b, d)) if variant == "A" else ((a, d), (b, c))
    before = face_counts(G)
    result = FeynmanGraph(G.b, flip_matching(G, (a, b), (c, d), variant))
    after = face_counts(result)
    new_edges = tuple(tuple(sorted(p)) for p in pairs)
    return FlipOutcome(result, tuple(x - y for x, y in zip(after, before)),
                       is_connected(result), variant, new_edges)


def flip_matching(G: FeynmanGraph, eL, eR, variant: str):
    """Partner tuple after the flip, without face bookkeeping.

    Cheap path for bulk lemma checks; `flip` wraps it with exact deltas.
    """
    (a, b), (c, d) = _ordered_pair(G, eL, eR)
    pairs = ((a, c), (b, d)) if variant == "A" else ((a, d), (b, c))
    m = list(G.matching)
    for u, v in pairs:
        m[u] = v
        m[v] = u
    return tuple(m)


def connected_by_two_point(G: FeynmanGraph, u: int, v: int) -> bool:
    """Two vertices are connected by a 2-point function when they share a
    color-0 edge or their two color-0 edges form a 2-edge-cut."""
    if G.matching[u] == v:
        return True
    eu = tuple(sorted((u, G.matching[u])))
    ev = tuple(sorted((v, G.matching[v])))
    if eu == ev:
        return False
    return is_two_edge_cut(G, eu, ev)


def inverse_variant(G: FeynmanGraph, eL, eR, variant: str) -> str:
    """Variant that undoes flip(G, eL, eR, variant) on the new edges."""
    out = flip(G, eL, eR, variant)
    for var in VARIANTS:
        back = flip(out.result, *out.new_edges, var)
        if back.result == G:
            return var
    raise AssertionError("flip involution failed")  # unreachable


def faces_on_pair(G: FeynmanGraph, eL, eR, c: int) -> int:
    """Number of distinct color-c faces running along eL or eR (1 or 2)."""
    _check_color(c)
    (a, _), (cc, _) = _ordered_pair(G, eL, eR)
    comp = _face_components(G, c)
    return len({comp[a], comp[cc]})


def _face_components(G: FeynmanGraph, c: int):
    """Component id of the color-c face through each vertex."""
    n = 4 * G.b
    sig = sigma(c, G.b)
    m = G.matching
    comp = [-1] * n
    nc = 0
    for start in range(n):
        if comp[start] >= 0:
            continue
        v = start
        while comp[v] < 0:
            comp[v] = nc
            w = m[v]
            comp[w] = nc
            v = sig[w]
        nc += 1
    return comp


def _components_without(G: FeynmanGraph, eL, eR):
    """Bubble component labels after deleting two color-0 edges."""
    b = G.b
    parent = list(range(b))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    skip = {eL, eR}
    for v in range(4 * b):
        w = G.matching[v]
        if v < w and (v, w) not in skip:
            ru, rv = find(v // 4), find(w // 4)
            if ru != rv:
                parent[ru] = rv
    return [find(x) for x in range(b)]


def is_two_edge_cut(G: FeynmanGraph, eL, eR) -> bool:
    """True iff deleting both color-0 edges disconnects the graph."""
    if not is_connected(G):
        raise DisconnectedError("2-edge-cut test requires a connected graph")
    eL, eR = _ordered_pair(G, eL, eR)
    comp = _components_without(G, eL, eR)
    return len(set(comp)) > 1


def split_two_edge_cut(G: FeynmanGraph, eL, eR):
    """Close each side of a 2-edge-cut onto itself.

    Returns the two connected closed graphs (G_L, G_R), with G_L the
    side containing bubble 0.  Bubbles on each side are relabeled in
    increasing original order.  F(G) = F(G_L) + F(G_R) - 3.
    """
    if not is_connected(G):
        raise DisconnectedError("split requires a connected graph")
    (a, b_), (c, d) = _ordered_pair(G, eL, eR)
    comp = _components_without(G, (a, b_), (c, d))
    if len(set(comp)) < 2:
        raise EdgeError("the given pair is not a 2-edge-cut")
    # Each cut edge crosses the two sides (no color-0 bridges exist).
    side_a = comp[a // 4]
    x, y = (c, d) if comp[c // 4] == side_a else (d, c)
    m = list(G.matching)
    for u, v in ((a, x), (b_, y)):
        m[u] = v
        m[v] = u
    halves = []
    for side in (side_a, next(s for s in comp if s != side_a)):
        bubbles = [i for i in range(G.b) if comp[i] == side]
        relabel = {old: new for new, old in enumerate(bubbles)}
        sub = [0] * (4 * len(bubbles))
        for old in bubbles:
            for loc in range(4):
                w = m[4 * old + loc]
                sub[4 * relabel[old] + loc] = 4 * relabel[w // 4] + w % 4
        halves.append(FeynmanGraph(len(bubbles), tuple(sub)))
    # G_L is the side containing bubble 0.
    if comp[0] == side_a:
        return halves[0], halves[1]
    return halves[1], halves[0]


@dataclass(frozen=True)
class DipoleSite:
    """A reducible melonic dipole: two bubbles joined by three color-0
    edges in the pattern of a cut G2, up to Klein twists."""

    bubbles: tuple          # (i, j) with i < j
    internal_edges: tuple   # three (u, v) color-0 edges between them
    external: tuple         # (u, v): the free vertex of each bubble

    def to_obj(self):
        return {"bubbles": list(self.bubbles),
                "internal_edges": [list(e) for e in self.internal_edges],
                "external": list(self.external)}


def insert_dipole(G: FeynmanGraph, edge) -> FeynmanGraph:
    """Insert the melonic dipole on a color-0 edge: b += 2, F += 3.

    The inserted 2-point graph is the identity-matched G2 with the
    edge (B.0)-(B+1.0) cut, B being the first new bubble index.
    """
    u, v = normalize_edge(G, edge)
    B = G.b
    m = list(G.matching) + [-1] * 8
    p, q = 4 * B, 4 * (B + 1)
    m[u] = p
    m[p] = u
    m[v] = q
    m[q] = v
    for i in range(1, 4):
        m[p + i] = q + i
        m[q + i] = p + i
    return FeynmanGraph(B + 2, tuple(m))


def find_dipoles(G: FeynmanGraph):
    """All melonic dipole sites: bubble pairs joined by exactly three
    color-0 edges whose pattern is a cut G2 up to Klein twists."""
    from .core import KLEIN_TO_ZERO

    between = {}
    for u, v in G.zero_edges():
        bu, bv = u // 4, v // 4
        if bu != bv:
            key = (bu, bv) if bu < bv else (bv, bu)
            between.setdefault(key, []).append((u, v) if bu < bv else (v, u))
    sites = []
    for (i, j), edges in sorted(between.items()):
        if len(edges) != 3:
            continue
        locals_i = {e[0] % 4 for e in edges}
        locals_j = {e[1] % 4 for e in edges}
        (u_loc,) = set(range(4)) - locals_i
        (v_loc,) = set(range(4)) - locals_j
        g = KLEIN_TO_ZERO[u_loc]
        h = KLEIN_TO_ZERO[v_loc]
        if all(g[a % 4] == h[b % 4] for a, b in edges):
            sites.append(DipoleSite((i, j), tuple(sorted(edges)),
                                    (4 * i + u_loc, 4 * j + v_loc)))
    return sites


def reduce_dipole(G: FeynmanGraph, site: DipoleSite) -> FeynmanGraph:
    """Remove a dipole's two bubbles and reconnect the external vertices
    by one color-0 edge: b -= 2, F -= 3.  Inverse of insert_dipole up to
    isomorphism."""
    i, j = site.bubbles
    u, v = site.external
    m = G.matching
    for a, bb in site.internal_edges:
        if not (0 <= a < 4 * G.b) or m[a] != bb:
            raise EdgeError(f"stale dipole site: edge {(a, bb)} absent")
    if u // 4 != i or v // 4 != j:
        raise EdgeError("stale dipole site: external vertices moved")
    pu, pv = m[u], m[v]
    if pu // 4 in (i, j) or pv // 4 in (i, j):
        raise EdgeError("stale dipole site: external partner inside dipole")
    keep = [bi for bi in range(G.b) if bi not in (i, j)]
    relabel = {old: new for new, old in enumerate(keep)}

    def remap(w):
        return 4 * relabel[w // 4] + w % 4

    sub = [0] * (4 * len(keep))
    for old in keep:
        for loc in range(4):
            w = m[4 * old + loc]
            x = 4 * old + loc
            if x == pu:
                w = pv
            elif x == pv:
                w = pu
            sub[remap(x)] = remap(w)
    return FeynmanGraph(len(keep), tuple(sub))


def splice(GL: FeynmanGraph, GR: FeynmanGraph, eL, eR) -> FeynmanGraph:
    """Join two closed graphs through a 2-edge-cut.

    Cuts one color-0 edge in each graph and reconnects the four ends
    crosswise, so the new pair of edges is a 2-edge-cut of the result
    and F = F(GL) + F(GR) - 3.
    """
    u1, v1 = normalize_edge(GL, eL)
    u2, v2 = normalize_edge(GR, eR)
    off = 4 * GL.b
    m = list(GL.matching) + [w + off for w in GR.matching]
    for x, y in ((u1, u2 + off), (v1, v2 + off)):
        m[x] = y
        m[y] = x
    return FeynmanGraph(GL.b + GR.b, tuple(m))
