import pytest

from k4graphs.census import (
    CensusBudgetError,
    census,
    connected_scan,
    double_factorial,
    enumerate_matchings,
    max_face_classes,
    split_prefixes,
)
from k4graphs.classify import are_isomorphic, is_melonic, is_nlo_tadpole
from k4graphs.core import FeynmanGraph, from_text, g2, is_connected


class TestEnumeration:
    @pytest.mark.parametrize("b,count", [(1, 3), (2, 105), (3, 10395)])
    def test_matching_counts(self, b, count):
        assert double_factorial(4 * b - 1) == count
        assert sum(1 for _ in enumerate_matchings(b)) == count

    def test_matchings_are_distinct_involutions(self):
        seen = set()
        for m in enumerate_matchings(2):
            assert m not in seen
            seen.add(m)
            assert all(m[m[v]] == v and m[v] != v for v in range(8))

    def test_kernel_agrees_with_generator(self):
        # the jitted scan and the reference generator see the same
        # connected population
        for b in (1, 2, 3):
            expected = {m for m in enumerate_matchings(b)
                        if is_connected(FeynmanGraph(b, m))}
            _, M, _ = connected_scan(b)
            got = {tuple(int(x) for x in row) for row in M}
            assert got == expected

    def test_prefix_split_is_a_partition(self):
        prefixes = split_prefixes(2, 16)
        assert len(prefixes) >= 16
        total = 0
        for pre in prefixes:
            free = 8 - 2 * len(pre)
            total += double_factorial(free - 1)
        assert total == 105


class TestCensus:
    def test_b1(self):
        rep = census(1)
        assert rep.total_matchings == 3
        assert rep.connected_labeled == 3
        assert len(rep.buckets) == 1
        bucket = rep.buckets[0]
        assert bucket.two_omega == 1
        assert bucket.labeled_count == 3
        assert bucket.iso_class_count == 3
        assert rep.max_faces == 4
        for ce in bucket.classes:
            assert is_nlo_tadpole(from_text(ce.representative))

    def test_b2(self):
        rep = census(2)
        assert rep.total_matchings == 105
        assert rep.min_two_omega == 0
        bucket = rep.bucket(0)
        assert bucket.iso_class_count == 1
        G = from_text(bucket.classes[0].representative)
        assert are_isomorphic(G, g2())
        assert rep.max_faces == 6
        assert is_melonic(G)

    def test_b3(self):
        rep = census(3)
        assert rep.total_matchings == 10395
        assert rep.max_faces == 7
        assert rep.min_two_omega == 1
        for ce in rep.buckets[0].classes:
            assert is_nlo_tadpole(from_text(ce.representative))

    def test_bucket_counts_sum_to_connected(self):
        for b in (1, 2, 3):
            rep = census(b)
            assert sum(bk.labeled_count for bk in rep.buckets) == \
                rep.connected_labeled

    def test_parity_of_strata(self):
        for b in (2, 3):
            rep = census(b)
            for bucket in rep.buckets:
                assert bucket.two_omega % 2 == b % 2

    def test_parallel_equals_serial(self):
        serial = census(3, parallel_width=1).to_obj()
        parallel = census(3, parallel_width=2).to_obj()
        # identical up to the recorded worker count
        serial.pop("parallel_width")
        parallel.pop("parallel_width")
        assert serial == parallel

    def test_budget_refusals(self):
        with pytest.raises(CensusBudgetError):
            census(6)
        with pytest.raises(CensusBudgetError):
            census(5, dedup_iso=True)

    def test_labeled_only_agrees_with_dedup(self):
        full = census(3, dedup_iso=True)
        agg = census(3, dedup_iso=False)
        assert [(bk.two_omega, bk.labeled_count) for bk in full.buckets] == \
            [(bk.two_omega, bk.labeled_count) for bk in agg.buckets]
        assert agg.buckets[0].representatives
        for text in agg.buckets[0].representatives:
            assert is_nlo_tadpole(from_text(text))

    def test_report_serialization_stable(self):
        rep = census(2)
        assert census(2).to_json() == rep.to_json()
        table = rep.to_table()
        assert table.splitlines()[0] == "b\ttwo_omega\tlabeled_count\tiso_classes"
        assert f"2\t0\t4\t1" in table


class TestMaxFaceClasses:
    def test_b2_is_g2(self):
        classes = max_face_classes(2)
        assert len(classes) == 1
        assert are_isomorphic(from_text(classes[0].representative), g2())

    def test_b3_is_nlo_set(self):
        classes = max_face_classes(3)
        assert len(classes) == 3
        assert all(is_nlo_tadpole(from_text(ce.representative))
                   for ce in classes)
