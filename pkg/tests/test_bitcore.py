"""Bitstring indexing, UDISJ, and the val statistic."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from liftcert.bitcore import (
    BitString,
    SupportMatrix,
    all_strings,
    concat,
    cor_slack,
    enumerate_disjoint_pairs,
    has_antidiagonal_zero,
    intersection_size,
    is_atom_pattern,
    iter_disjoint_pairs,
    matrix_from_entries,
    matrix_to_csv,
    matrix_to_json,
    split,
    udisj,
    val,
)


def bitstrings(max_width: int = 8) -> st.SearchStrategy[BitString]:
    return st.integers(1, max_width).flatmap(
        lambda w: st.integers(0, 2**w - 1).map(lambda v: BitString(w, v))
    )


def same_width_pairs(max_width: int = 8) -> st.SearchStrategy[tuple[BitString, BitString]]:
    return st.integers(1, max_width).flatmap(
        lambda w: st.tuples(
            st.integers(0, 2**w - 1).map(lambda v: BitString(w, v)),
            st.integers(0, 2**w - 1).map(lambda v: BitString(w, v)),
        )
    )


class TestBitString:
    def test_lex_order_is_numeric_msb_first(self):
        assert [str(s) for s in all_strings(2)] == ["00", "01", "10", "11"]
        assert sorted(all_strings(2)) == all_strings(2)

    def test_text_round_trip(self):
        s = BitString.from_text("0110")
        assert s.width == 4 and s.value == 6
        assert str(s) == "0110"

    def test_unit_positions(self):
        assert str(BitString.unit(3, 1)) == "100"
        assert str(BitString.unit(3, 3)) == "001"
        assert BitString.unit(3, 2).bit(2) == 1

    @given(bitstrings())
    def test_complement_involution(self, a: BitString):
        assert a.complement().width == a.width
        assert a.complement().complement() == a

    def test_value_out_of_range(self):
        with pytest.raises(ValueError):
            BitString(2, 4)
        with pytest.raises(ValueError):
            BitString(17, 0)


class TestIntersectionAndConcat:
    def test_intersection_examples(self):
        assert intersection_size(BitString.from_text("00"), BitString.from_text("00")) == 0
        assert intersection_size(BitString.from_text("11"), BitString.from_text("01")) == 1
        ones5 = BitString.ones(5)
        assert intersection_size(ones5, ones5) == 5

    def test_width_mismatch_rejected(self):
        with pytest.raises(ValueError):
            intersection_size(BitString.from_text("0"), BitString.from_text("00"))

    def test_concat_example(self):
        assert str(concat(BitString.from_text("1"), BitString.from_text("01"))) == "101"

    @given(same_width_pairs(4))
    def test_concat_msb_dominance(self, ab):
        a, b = ab
        zero = BitString.zero(1)
        one = BitString(1, 1)
        assert concat(zero, a) < concat(one, b)

    @given(same_width_pairs(4), same_width_pairs(4))
    def test_intersection_additive_under_concat(self, xy, ab):
        x, y = xy
        a, b = ab
        assert intersection_size(concat(x, a), concat(y, b)) == intersection_size(
            x, y
        ) + intersection_size(a, b)

    @given(bitstrings(8), st.integers(0, 8))
    def test_split_inverts_concat(self, s: BitString, d: int):
        d = min(d, s.width)
        head, tail = split(s, d)
        assert concat(head, tail) == s


class TestDisjointPairs:
    def test_n1_listing(self):
        pairs = enumerate_disjoint_pairs(1)
        assert [(str(a), str(b)) for a, b in pairs] == [("0", "0"), ("0", "1"), ("1", "0")]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_count_is_3_to_the_n(self, n):
        assert len(enumerate_disjoint_pairs(n)) == 3**n

    def test_lex_row_major_order(self):
        pairs = enumerate_disjoint_pairs(3)
        assert pairs == sorted(pairs)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_antidiagonal_pairs_present(self, n):
        pairs = set(iter_disjoint_pairs(n))
        for a in all_strings(n):
            assert (a, a.complement()) in pairs


class TestUdisj:
    def test_n1_matrix(self):
        m = udisj(1)
        grid = [[m.value(a, b) for b in all_strings(1)] for a in all_strings(1)]
        assert grid == [[1, 1], [1, 0]]

    def test_intersection_two_entry(self):
        s11 = BitString.from_text("11")
        assert udisj(2).value(s11, s11) == 1  # (1 - 2)^2

    @pytest.mark.parametrize("n", range(1, 9))
    def test_val_is_3_to_the_n(self, n):
        if n > 8:
            pytest.skip("dense cap")
        assert val(udisj(n)) == 3**n

    def test_zero_exactly_at_intersection_one(self):
        m = udisj(3)
        for a in all_strings(3):
            for b in all_strings(3):
                if intersection_size(a, b) == 1:
                    assert m.value(a, b) == 0
                else:
                    assert m.value(a, b) > 0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            udisj(0)
        with pytest.raises(ValueError):
            udisj(11)


class TestCorSlack:
    def test_zero_row_always_one(self):
        z = BitString.zero(4)
        for b in all_strings(4):
            assert cor_slack(z, b) == 1

    def test_e1_against_itself(self):
        e1 = BitString.unit(3, 1)
        assert cor_slack(e1, e1) == 0

    def test_matches_udisj_entrywise_n3(self):
        # two independent routes: explicit inner product vs (1 - a.b)^2
        m = udisj(3)
        for a in all_strings(3):
            for b in all_strings(3):
                assert cor_slack(a, b) == m.value(a, b)


class TestValAndPatterns:
    def test_val_zero_matrix(self):
        assert val(SupportMatrix(2)) == 0

    def test_val_counts_only_disjoint_support(self):
        # the 7 crosses at disjoint positions of the d=2 sparsity pattern with
        # full first row and first column (the '?' corner pair intersects twice
        # and must not count)
        items = [
            ("00", "00", 1.0),
            ("00", "01", 1.0),
            ("00", "10", 1.0),
            ("00", "11", 1.0),
            ("01", "00", 1.0),
            ("10", "00", 1.0),
            ("11", "00", 1.0),
            ("11", "11", 1.0),
        ]
        m = matrix_from_entries(2, items)
        assert val(m) == 7

    @pytest.mark.parametrize("n", range(1, 7))
    def test_udisj_is_atom_pattern(self, n):
        assert is_atom_pattern(udisj(n))

    def test_all_ones_is_not_atom_pattern(self):
        entries = {(a, b): 1.0 for a in all_strings(2) for b in all_strings(2)}
        assert not is_atom_pattern(SupportMatrix(2, entries))

    def test_tiny_noise_below_threshold_is_zero(self):
        m = matrix_from_entries(2, [("00", "00", 1.0), ("01", "01", 1e-15)])
        assert is_atom_pattern(m)
        assert val(m) == 1

    def test_antidiagonal_zero_of_udisj_is_none(self):
        assert has_antidiagonal_zero(udisj(1)) is None

    def test_antidiagonal_zero_of_zero_matrix(self):
        assert has_antidiagonal_zero(SupportMatrix(2)) == BitString.zero(2)

    def test_antidiagonal_zero_lex_smallest(self):
        entries = {(a, a.complement()): 1.0 for a in all_strings(2)}
        del entries[(BitString.from_text("01"), BitString.from_text("10"))]
        del entries[(BitString.from_text("10"), BitString.from_text("01"))]
        m = SupportMatrix(2, entries)
        assert has_antidiagonal_zero(m) == BitString.from_text("01")


class TestEmission:
    def test_csv_headers_and_values(self):
        text = matrix_to_csv(udisj(1))
        lines = text.strip().split("\n")
        assert lines[0] == ",0,1"
        assert lines[1] == "0,1,1"
        assert lines[2] == "1,1,0"

    def test_json_lists_only_nonzeros(self):
        import json

        obj = json.loads(matrix_to_json(udisj(1)))
        assert obj["n"] == 1
        assert [["0", "0", 1], ["0", "1", 1], ["1", "0", 1]] == obj["entries"]

    def test_negative_entry_rejected(self):
        with pytest.raises(ValueError):
            matrix_from_entries(1, [("0", "0", -1.0)])
