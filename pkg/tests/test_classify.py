import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from k4graphs.census import census, connected_scan
from k4graphs.classify import (
    GraphClass,
    apply_group_element,
    are_isomorphic,
    automorphism_count,
    canonical_form,
    classify,
    generate_random_melonic,
    generate_random_nlo,
    is_melonic,
    is_nlo_tadpole,
    melonic_trace,
    nlo_trace,
    orbit_min_bruteforce,
    reduce_greedy,
)
from k4graphs.core import (
    FeynmanGraph,
    GraphError,
    KLEIN_GROUP,
    degree2,
    double_tadpole,
    from_text,
    g2,
    total_faces,
)
from k4graphs.moves import insert_dipole, reduce_dipole, splice


def random_graph(b, seed):
    if b % 2 == 0:
        return generate_random_melonic(b, seed)
    return generate_random_nlo(b, seed)


class TestCanonicalForm:
    def test_bubble_relabelings_agree(self):
        G = g2()
        swapped = apply_group_element(G, (1, 0), (KLEIN_GROUP[0],) * 2)
        assert canonical_form(G) == canonical_form(swapped)

    def test_color_tadpoles_differ(self):
        keys = {canonical_form(double_tadpole(c)) for c in (1, 2, 3)}
        assert len(keys) == 3

    def test_klein_twisted_g2_agrees(self):
        G = g2()
        for g in KLEIN_GROUP:
            H = apply_group_element(G, (0, 1), (g, KLEIN_GROUP[0]))
            assert canonical_form(H) == canonical_form(G)

    def test_oracle_agreement_exhaustive_b2(self):
        # the BFS-code equivalence matches the full orbit-minimum oracle
        _, M, _ = connected_scan(2)
        graphs = [FeynmanGraph(2, tuple(int(x) for x in row)) for row in M]
        by_code = {}
        by_orbit = {}
        for G in graphs:
            by_code.setdefault(canonical_form(G), set()).add(G.matching)
            by_orbit.setdefault(orbit_min_bruteforce(G), set()).add(G.matching)
        assert set(map(frozenset, by_code.values())) == \
            set(map(frozenset, by_orbit.values()))

    def test_oracle_agreement_random_b3(self):
        rnd = random.Random(5)
        graphs = [random_graph(3, rnd.random()) for _ in range(12)]
        for G, H in itertools.combinations(graphs, 2):
            same_code = canonical_form(G) == canonical_form(H)
            same_orbit = orbit_min_bruteforce(G) == orbit_min_bruteforce(H)
            assert same_code == same_orbit

    @given(st.integers(1, 6), st.integers(0, 10**6), st.randoms())
    @settings(max_examples=100, deadline=None)
    def test_invariance_under_group(self, b, seed, rnd):
        G = random_graph(b, seed)
        perm = list(range(G.b))
        rnd.shuffle(perm)
        twists = tuple(rnd.choice(KLEIN_GROUP) for _ in range(G.b))
        H = apply_group_element(G, perm, twists)
        assert canonical_form(H) == canonical_form(G)

    def test_disconnected_rejected(self):
        m = tuple(KLEIN_GROUP[1]) + tuple(4 + l for l in KLEIN_GROUP[1])
        with pytest.raises(GraphError):
            canonical_form(FeynmanGraph(2, m))


class TestAutomorphisms:
    def test_tadpole_orbit_stabilizer(self):
        # each tadpole class has labeled multiplicity 1, so |Aut| must be
        # the full group order 1! * 4^1
        for c in (1, 2, 3):
            assert automorphism_count(double_tadpole(c)) == 4
        # and indeed every b=1 matching is one of the three tadpoles
        _, M, _ = connected_scan(1)
        assert M.shape[0] == 3

    def test_orbit_stabilizer_census_b_le_3(self):
        for b in (1, 2, 3):
            rep = census(b, dedup_iso=True)
            order = 1
            for k in range(1, b + 1):
                order *= k
            order *= 4 ** b
            for bucket in rep.buckets:
                for ce in bucket.classes:
                    G = from_text(ce.representative)
                    assert ce.labeled_count * automorphism_count(G) == order

    def test_isomorphic_pairs(self):
        G = g2()
        assert are_isomorphic(G, apply_group_element(G, (1, 0),
                                                     (KLEIN_GROUP[2],) * 2))
        assert not are_isomorphic(double_tadpole(1), double_tadpole(2))


class TestRecognizers:
    def test_g2_is_melonic(self):
        assert is_melonic(g2())
        assert melonic_trace(g2()) == []

    def test_tadpoles_not_melonic(self):
        for c in (1, 2, 3):
            assert not is_melonic(double_tadpole(c))
            assert is_nlo_tadpole(double_tadpole(c))

    def test_g2_not_nlo(self):
        assert not is_nlo_tadpole(g2())

    @given(st.integers(1, 5), st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_constructive_membership(self, k, seed):
        rnd = random.Random(seed)
        G = g2()
        for _ in range(k):
            G = insert_dipole(G, rnd.choice(G.zero_edges()))
        assert is_melonic(G)
        H = double_tadpole(rnd.choice((1, 2, 3)))
        for _ in range(k):
            H = insert_dipole(H, rnd.choice(H.zero_edges()))
        assert is_nlo_tadpole(H)

    def test_trace_replays(self):
        G = generate_random_melonic(8, 3)
        trace = melonic_trace(G)
        H = G
        for site in trace:
            H = reduce_dipole(H, site)
        assert are_isomorphic(H, g2())

    def test_nlo_trace_replays(self):
        G = generate_random_nlo(7, 3)
        trace = nlo_trace(G)
        H = G
        for site in trace:
            H = reduce_dipole(H, site)
        assert H.b == 1

    def test_greedy_agrees_with_backtracking_on_census(self):
        for b in (2, 3, 4):
            rep = census(b, dedup_iso=True)
            for bucket in rep.buckets:
                for ce in bucket.classes:
                    G = from_text(ce.representative)
                    residual = reduce_greedy(G)
                    if b % 2 == 0:
                        assert is_melonic(G) == \
                            (residual.b == 2 and are_isomorphic(residual, g2()))
                    else:
                        assert is_nlo_tadpole(G) == (residual.b == 1)

    def test_degree_equivalence_on_census(self):
        for b in (1, 2, 3):
            rep = census(b, dedup_iso=True)
            for bucket in rep.buckets:
                for ce in bucket.classes:
                    G = from_text(ce.representative)
                    two = degree2(G).two_omega
                    assert is_melonic(G) == (two == 0)
                    assert is_nlo_tadpole(G) == (b % 2 == 1 and two == 1)


class TestClassify:
    def test_leading(self):
        result = classify(generate_random_melonic(6, 1))
        assert result.kind is GraphClass.LEADING_MELONIC
        assert len(result.trace) == 2

    def test_nlo(self):
        result = classify(generate_random_nlo(5, 1))
        assert result.kind is GraphClass.NLO_TADPOLE

    def test_odd_odd_splice_subleading(self):
        GL = generate_random_nlo(3, 0)
        GR = generate_random_nlo(1, 0)
        G = splice(GL, GR, GL.zero_edges()[0], GR.zero_edges()[0])
        assert total_faces(G) == 3 * G.b // 2 + 2
        assert degree2(G).two_omega == 2
        assert classify(G).kind is GraphClass.SUBLEADING


class TestGenerators:
    def test_b2_is_always_g2(self):
        for seed in range(5):
            assert generate_random_melonic(2, seed) == g2()

    def test_b4_face_count(self):
        for seed in range(8):
            assert total_faces(generate_random_melonic(4, seed)) == 9

    def test_b3_face_count(self):
        for seed in range(8):
            assert total_faces(generate_random_nlo(3, seed)) == 7

    def test_parity_enforced(self):
        with pytest.raises(GraphError):
            generate_random_melonic(3, 0)
        with pytest.raises(GraphError):
            generate_random_nlo(4, 0)

    def test_deterministic_in_seed(self):
        assert generate_random_melonic(10, 42) == \
            generate_random_melonic(10, 42)
        assert generate_random_nlo(9, 42) == generate_random_nlo(9, 42)
