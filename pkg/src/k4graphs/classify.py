"""Isomorphism, automorphisms, melonic/NLO recognizers and generators.

The isomorphism group is (bubble relabeling) x (per-bubble Klein
four-group).  Global color permutations are NOT quotiented: the three
double tadpoles are three distinct graphs.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum

from .core import (
    FeynmanGraph,
    GraphError,
    KLEIN_GROUP,
    KLEIN_TO_ZERO,
    double_tadpole,
    g2,
    is_connected,
)
from .moves import find_dipoles, insert_dipole, reduce_dipole


def _code(G: FeynmanGraph, root: int, k0):
    """Traversal code for a given root bubble and root Klein twist.

    Bubbles are renumbered in discovery order; the Klein twist of each
    discovered bubble is forced by sending the entry vertex to local 0
    (the Klein group acts simply transitively on locals, so the twist is
    unique).  The code is the relabeled partner array, which determines
    the graph up to isomorphism.
    """
    b = G.b
    m = G.matching
    new_index = [-1] * b     # old bubble -> new bubble index
    order = [-1] * b         # new bubble index -> old bubble
    twist = [None] * b       # per old bubble, Klein element applied
    new_index[root] = 0
    order[0] = root
    twist[root] = k0
    assigned = 1
    code = []
    for nv in range(4 * b):
        ob = order[nv // 4]
        # Klein elements are involutions, so twist doubles as its inverse.
        ol = twist[ob][nv % 4]
        w = m[4 * ob + ol]
        wb, wl = w // 4, w % 4
        if new_index[wb] < 0:
            new_index[wb] = assigned
            order[assigned] = wb
            twist[wb] = KLEIN_TO_ZERO[wl]
            assigned += 1
        code.append(4 * new_index[wb] + twist[wb][wl])
    return tuple(code)


@dataclass(frozen=True)
class CanonicalKey:
    b: int
    code: tuple

    def as_text(self) -> str:
        return f"b={self.b};" + ",".join(map(str, self.code))


def canonical_form(G: FeynmanGraph) -> CanonicalKey:
    """Minimal traversal code over all (root bubble, root twist) seeds.

    Equal keys iff the graphs are isomorphic under the stated group;
    stable across runs.  Requires a connected graph.
    """
    if not is_connected(G):
        raise GraphError("canonical form requires a connected graph")
    best = None
    for root in range(G.b):
        for k0 in KLEIN_GROUP:
            code = _code(G, root, k0)
            if best is None or code < best:
                best = code
    return CanonicalKey(G.b, best)


def automorphism_count(G: FeynmanGraph) -> int:
    """|Aut(G)| within the group; the automorphism group acts simply
    transitively on the (root, twist) seeds realizing the minimal code."""
    if not is_connected(G):
        raise GraphError("automorphism count requires a connected graph")
    codes = [_code(G, root, k0)
             for root in range(G.b) for k0 in KLEIN_GROUP]
    best = min(codes)
    return sum(1 for c in codes if c == best)


def are_isomorphic(G: FeynmanGraph, H: FeynmanGraph) -> bool:
    return G.b == H.b and canonical_form(G) == canonical_form(H)


def apply_group_element(G: FeynmanGraph, bubble_perm, twists) -> FeynmanGraph:
    """Relabel bubbles by a permutation and twist each bubble by a Klein
    element; used by the brute-force oracle and invariance tests."""
    def img(v):
        return 4 * bubble_perm[v // 4] + twists[v // 4][v % 4]

    m = [0] * (4 * G.b)
    for v in range(4 * G.b):
        m[img(v)] = img(G.matching[v])
    return FeynmanGraph(G.b, tuple(m))


def orbit_min_bruteforce(G: FeynmanGraph) -> tuple:
    """Lexicographic minimum of the matching over the full group.

    Exact oracle with cost b! * 4^b; intended for b <= 4.
    """
    best = None
    for perm in itertools.permutations(range(G.b)):
        for twists in itertools.product(KLEIN_GROUP, repeat=G.b):
            m = apply_group_element(G, perm, twists).matching
            if best is None or m < best:
                best = m
    return best


class GraphClass(Enum):
    LEADING_MELONIC = "LEADING_MELONIC"
    NLO_TADPOLE = "NLO_TADPOLE"
    SUBLEADING = "SUBLEADING"


@dataclass(frozen=True)
class Classification:
    kind: GraphClass
    trace: tuple  # DipoleSites reduced, in order, when recognized


_G2_KEY = canonical_form(g2())
_G1_KEYS = {canonical_form(double_tadpole(c)) for c in (1, 2, 3)}


def _reduction_trace(G: FeynmanGraph, target_b: int, memo=None):
    """Backtracking dipole reduction down to target_b bubbles.

    Returns the ordered list of reduced DipoleSites, or None if no
    reduction sequence reaches target_b.  Failures are memoized on the
    canonical key.
    """
    if memo is None:
        memo = set()
    if G.b == target_b:
        return []
    if G.b < target_b:
        return None
    key = canonical_form(G)
    if key in memo:
        return None
    for site in find_dipoles(G):
        sub = _reduction_trace(reduce_dipole(G, site), target_b, memo)
        if sub is not None:
            return [site] + sub
    memo.add(key)
    return None


def reduce_greedy(G: FeynmanGraph) -> FeynmanGraph:
    """Fast path: repeatedly reduce the first dipole site until none is
    left.  Agreement with the backtracking search is property-tested,
    not assumed."""
    while True:
        sites = find_dipoles(G)
        if not sites:
            return G
        G = reduce_dipole(G, sites[0])


def melonic_trace(G: FeynmanGraph):
    """Reduction trace to G2 if G is melonic, else None."""
    if G.b % 2 != 0 or not is_connected(G):
        return None
    trace = _reduction_trace(G, 2)
    if trace is None:
        return None
    # Reaching b=2 is not enough: the residue must be G2 itself.
    H = G
    for site in trace:
        H = reduce_dipole(H, site)
    return trace if canonical_form(H) == _G2_KEY else None


def is_melonic(G: FeynmanGraph) -> bool:
    return melonic_trace(G) is not None


def nlo_trace(G: FeynmanGraph):
    """Reduction trace to a double tadpole if G is a melon-decorated
    double tadpole, else None."""
    if G.b % 2 != 1 or not is_connected(G):
        return None
    trace = _reduction_trace(G, 1)
    if trace is None:
        return None
    H = G
    for site in trace:
        H = reduce_dipole(H, site)
    return trace if canonical_form(H) in _G1_KEYS else None


def is_nlo_tadpole(G: FeynmanGraph) -> bool:
    return nlo_trace(G) is not None


def classify(G: FeynmanGraph) -> Classification:
    if not is_connected(G):
        raise GraphError("classification requires a connected graph")
    trace = melonic_trace(G) if G.b % 2 == 0 else nlo_trace(G)
    if trace is not None:
        kind = (GraphClass.LEADING_MELONIC if G.b % 2 == 0
                else GraphClass.NLO_TADPOLE)
        return Classification(kind, tuple(trace))
    return Classification(GraphClass.SUBLEADING, ())


def generate_random_melonic(b: int, seed) -> FeynmanGraph:
    """Random melonic graph: (b-2)/2 dipole insertions starting from G2,
    each on a uniformly chosen color-0 edge.  Deterministic in the seed."""
    if b < 2 or b % 2 != 0:
        raise GraphError(f"melonic graphs need even b >= 2, got {b}")
    rng = random.Random(seed)
    G = g2()
    for _ in range((b - 2) // 2):
        G = insert_dipole(G, rng.choice(G.zero_edges()))
    return G


def generate_random_nlo(b: int, seed) -> FeynmanGraph:
    """Random melon-decorated double tadpole with b odd."""
    if b < 1 or b % 2 != 1:
        raise GraphError(f"NLO graphs need odd b >= 1, got {b}")
    rng = random.Random(seed)
    G = double_tadpole(rng.choice((1, 2, 3)))
    for _ in range((b - 1) // 2):
        G = insert_dipole(G, rng.choice(G.zero_edges()))
    return G
