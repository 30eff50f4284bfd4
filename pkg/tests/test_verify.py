import pytest

from k4graphs.verify import (
    CHECK_NAMES,
    check_corollary_total,
    check_face_formulas,
    check_flip_lemma,
    check_length2_lemma,
    check_split_identity,
    check_theorem_gmax,
    run_suite,
)


class TestIndividualChecks:
    def test_face_formulas(self):
        report = check_face_formulas(b_max=8, samples_per_b=2, seed=1)
        assert report.passed
        assert report.checked > 0

    def test_flip_lemma(self):
        report = check_flip_lemma(samples=300, seed=1, exhaustive_bmax=2)
        assert report.passed
        assert report.checked > 300

    def test_corollary_total(self):
        report = check_corollary_total(samples=300, seed=1,
                                       exhaustive_bmax=2)
        assert report.passed

    def test_length2(self):
        report = check_length2_lemma(b_max=3)
        assert report.passed

    @pytest.mark.parametrize("b", [1, 2, 3])
    def test_gmax(self, b):
        report = check_theorem_gmax(b)
        assert report.passed

    def test_split_identity(self):
        report = check_split_identity(samples=40, seed=1, census_bmax=3)
        assert report.passed


class TestSuite:
    def test_all_checks_named(self):
        reports = run_suite(b_max=2, samples=100, seed=0, gmax_bs=(2,))
        names = [r.name for r in reports]
        for name in CHECK_NAMES:
            assert name in names
        assert all(r.passed for r in reports)

    def test_unknown_check_rejected(self):
        with pytest.raises(ValueError):
            run_suite(checks=("bogus",))

    def test_reports_replay_with_seed(self):
        a = check_flip_lemma(samples=200, seed=7, exhaustive_bmax=2)
        b = check_flip_lemma(samples=200, seed=7, exhaustive_bmax=2)
        assert a.to_json() == b.to_json()
        # timing stays out of the serialized report unless asked for
        assert "elapsed" not in a.to_json()
        assert "elapsed_seconds" in a.to_json(include_timing=True)
