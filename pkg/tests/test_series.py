"""
Tests for the isogeny series and the all-volumes table.
"""

import pytest

from cuspforge.core.quad import FieldTag, QuadInt
from cuspforge.core.series import (
    all_volumes_table,
    all_volumes_witness,
    cycle_terms,
    degree_product,
    four_cusp_excluded,
    series_birational,
    series_four_cusp,
    series_nonbirational,
)
from cuspforge.utils.errors import DomainError

TAG = FieldTag(3)


def e(x, y=0):
    return QuadInt(TAG, x, y)


class TestCycleTerms:
    def test_repeats(self):
        assert cycle_terms([1, 2], 5) == [1, 2, 1, 2, 1]

    def test_truncates(self):
        assert cycle_terms([1, 2, 3], 2) == [1, 2]

    def test_empty(self):
        assert cycle_terms([], 0) == []
        with pytest.raises(DomainError):
            cycle_terms([], 1)


class TestBirationalSeries:
    def test_first_terms(self, hirzebruch):
        records = series_birational([e(1, 1)] * 5, hirzebruch)
        terms = [r for r in records if r.n >= 1]
        assert [r.volume_units for r in terms] == [3, 9, 27, 81, 243]
        assert [r.cusp_count for r in terms] == [6, 12, 30, 84, 246]
        assert [r.degree_total for r in terms] == [3, 9, 27, 81, 243]
        assert not any(r.mismatch for r in records)

    def test_base_row(self, hirzebruch):
        base = series_birational([e(1, 1)], hirzebruch)[0]
        assert (base.n, base.volume_units, base.cusp_count, base.formula_h) == (0, 1, 4, 4)

    def test_mixed_generators(self, hirzebruch):
        records = series_birational([e(2), e(1, 1)], hirzebruch)
        assert [r.volume_units for r in records[1:]] == [4, 12]
        assert [r.cusp_count for r in records[1:]] == [7, 15]
        assert records[-1].degree_total == degree_product([e(2), e(1, 1)])

    def test_rejects_units(self, hirzebruch):
        with pytest.raises(DomainError):
            series_birational([e(0, 1)], hirzebruch)

    def test_rejects_field_mismatch(self, hirzebruch):
        with pytest.raises(DomainError):
            series_birational([QuadInt(FieldTag(1), 1, 1)], hirzebruch)

    def test_default_base_by_key(self):
        records = series_birational([e(1, 1)], "hirzebruch")
        assert records[1].cusp_count == 6

    def test_holzapfel_base_has_no_formula(self, holzapfel):
        gaussian = FieldTag(1)
        records = series_birational([QuadInt(gaussian, 1, 1)], holzapfel)
        assert records[1].formula_h is None
        assert records[1].volume_units == 2 * 3


class TestFourCuspSeries:
    def test_first_terms(self, d14):
        records = series_four_cusp([e(2, 1)] * 4, d14)
        terms = records[1:]
        assert [r.cusp_count for r in terms] == [4, 4, 4, 4]
        assert [r.volume_units for r in terms] == [7, 49, 343, 2401]
        assert not any(r.mismatch for r in records)

    @pytest.mark.parametrize("gamma", [e(0), e(1), e(0, 1), e(-1, 2), e(3), e(-2, 4)])
    def test_excluded_generators(self, gamma):
        assert four_cusp_excluded(gamma)

    @pytest.mark.parametrize("gamma", [e(2), e(2, 1), e(1, 3)])
    def test_allowed_generators(self, gamma):
        assert not four_cusp_excluded(gamma)

    def test_rejects_excluded(self, d14):
        with pytest.raises(DomainError):
            series_four_cusp([e(2, 1), e(-1, 2)], d14)


class TestNonBirationalSeries:
    def test_ks_two_three_two(self, hirzebruch):
        records = series_nonbirational([2, 3, 2], hirzebruch)
        terms = records[1:]
        assert [r.source_conductor for r in terms] == [2, 6, 12]
        assert [r.volume_units for r in terms] == [4, 36, 144]
        assert [r.cusp_count for r in terms] == [7, 19, 37]
        assert [r.formula_h for r in terms] == [3, 7, 13]
        assert all(r.mismatch for r in terms)
        assert [r.degree_step for r in terms] == [4, 9, 4]

    def test_ks_two_two(self, hirzebruch):
        records = series_nonbirational([2, 2], hirzebruch)
        assert [r.cusp_count for r in records[1:]] == [7, 13]

    def test_d14_base(self, d14):
        records = series_nonbirational([2], d14)
        assert records[1].cusp_count == 2 * 2 + 2
        assert records[1].formula_h == 2 + 2

    def test_base_row_has_no_formula(self, hirzebruch):
        assert series_nonbirational([2], hirzebruch)[0].formula_h is None

    def test_rejects_small_factor(self, hirzebruch):
        with pytest.raises(DomainError):
            series_nonbirational([1], hirzebruch)


class TestAllVolumes:
    @pytest.mark.parametrize("m", range(1, 51))
    def test_euler_number_is_conductor(self, m):
        record = all_volumes_witness(m)
        assert record.volume_units == m
        assert record.degree_total == m
        assert record.cusp_count == m + 3
        assert not record.mismatch

    def test_table(self):
        assert [r.volume_units for r in all_volumes_table(3)] == [1, 2, 3]

    def test_rejects_non_positive(self):
        with pytest.raises(DomainError):
            all_volumes_table(0)
