"""Tests for the design generators.

The Fano plane, the 5x12 duplicated-combination matrix, and the
(9,3,1) resolvable classes below are frozen reference layouts; the
generators must reproduce them exactly (bit-stable ordering), not just
up to isomorphism.
"""

import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfr.designs import (
    BlockDesign,
    DcbdDesign,
    ResolvableDesign,
    dcbd,
    design_from_text,
    design_to_text,
    point_replications,
    projective_plane,
    rbibd_affine,
    verify_design,
)
from bfr.errors import ParameterError

FANO_BLOCKS = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 6, 7),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 5, 6),
)

DCBD_5_4_3 = (
    (1, 3, 4, 5, 6, 8, 9, 10, 11, 13, 14, 15),
    (1, 2, 4, 5, 6, 7, 9, 10, 11, 12, 14, 15),
    (1, 2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 15),
    (1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 14),
    (2, 3, 4, 5, 7, 8, 9, 10, 12, 13, 14, 15),
)

RBIBD_9_CLASSES = (
    ((1, 2, 3), (4, 5, 6), (7, 8, 9)),
    ((1, 4, 7), (2, 5, 8), (3, 6, 9)),
    ((1, 5, 9), (2, 6, 7), (3, 4, 8)),
    ((1, 6, 8), (2, 4, 9), (3, 5, 7)),
)


class TestProjectivePlane:
    def test_fano_plane_exact(self):
        d = projective_plane(2)
        assert d.v == 7 and d.kappa == 3 and d.lam == 1
        assert d.b == 7 and d.r == 3
        assert d.blocks == FANO_BLOCKS

    def test_order_three(self):
        d = projective_plane(3)
        assert d.v == 13 and d.b == 13
        assert d.kappa == 4 and d.r == 4
        assert verify_design(d).ok

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_pairwise_block_intersection(self, p):
        d = projective_plane(p)
        for i, j in itertools.combinations(range(d.b), 2):
            assert len(set(d.blocks[i]) & set(d.blocks[j])) == 1

    @pytest.mark.parametrize("p", [4, 6, 1])
    def test_non_prime_rejected(self, p):
        with pytest.raises(ParameterError):
            projective_plane(p)

    def test_deterministic(self):
        assert projective_plane(3) == projective_plane(3)


class TestDcbd:
    def test_paper_style_matrix(self):
        d = dcbd(5, 4, 3)
        assert d.blocks == DCBD_5_4_3
        assert d.v == 15 and d.kappa == 12
        assert d.b == 5 and d.r == 4
        assert verify_design(d).ok

    def test_two_point_case(self):
        d = dcbd(2, 1, 1)
        assert d.blocks == ((1,), (2,))

    def test_four_choose_three_two_groups(self):
        d = dcbd(4, 3, 2)
        assert d.b == 4
        assert all(len(blk) == 6 for blk in d.blocks)
        for g in range(2):
            rows = sorted(d.group_subset(i, g) for i in range(d.b))
            want = sorted(
                tuple(g * 4 + x for x in s)
                for s in itertools.combinations(range(1, 5), 3)
            )
            assert rows == want

    def test_near_full_blocks_cover_points(self):
        # With blocks of size v_base - 1, any m rows of one group hold
        # every group point at least m - 1 times in total.
        for v_base in range(3, 7):
            d = dcbd(v_base, v_base - 1, 1)
            for m in range(2, d.b + 1):
                for rows in itertools.combinations(range(d.b), m):
                    tally = {p: 0 for p in range(1, v_base + 1)}
                    for i in rows:
                        for p in d.blocks[i]:
                            tally[p] += 1
                    assert min(tally.values()) >= m - 1

    def test_bad_sizes_rejected(self):
        with pytest.raises(ParameterError):
            dcbd(3, 3, 1)
        with pytest.raises(ParameterError):
            dcbd(3, 0, 1)
        with pytest.raises(ParameterError):
            dcbd(3, 2, 0)

    @given(st.integers(2, 6), st.data())
    @settings(max_examples=20, deadline=None)
    def test_block_count_and_groups(self, v_base, data):
        kappa = data.draw(st.integers(1, v_base - 1))
        reps = data.draw(st.integers(1, 3))
        d = dcbd(v_base, kappa, reps)
        assert d.b == comb(v_base, kappa)
        assert verify_design(d).ok


class TestRbibd:
    def test_nine_point_classes_exact(self):
        rd = rbibd_affine(3)
        got = tuple(tuple(rd.class_blocks(c)) for c in range(len(rd.classes)))
        assert got == RBIBD_9_CLASSES
        report = verify_design(rd)
        assert report.ok
        assert report.r == 4 and report.b == 12

    def test_order_two(self):
        rd = rbibd_affine(2)
        assert rd.design.v == 4 and rd.design.kappa == 2
        assert len(rd.classes) == 3
        for c in range(3):
            covered = sorted(p for blk in rd.class_blocks(c) for p in blk)
            assert covered == [1, 2, 3, 4]

    def test_order_five(self):
        rd = rbibd_affine(5)
        assert rd.design.v == 25
        assert len(rd.classes) == 6
        assert verify_design(rd).ok

    def test_non_prime_rejected(self):
        with pytest.raises(ParameterError):
            rbibd_affine(4)


class TestVerify:
    def test_mutated_fano_reports_pair_violation(self):
        blocks = list(FANO_BLOCKS)
        blocks[0] = (1, 2, 4)  # swap point 3 for 4
        bad = BlockDesign(7, 3, 1, tuple(blocks))
        report = verify_design(bad)
        assert not report.ok
        assert any("pair" in viol for viol in report.violations)

    def test_wrong_block_size_reported(self):
        bad = BlockDesign(4, 3, 0, ((1, 2, 3), (1, 2)))
        report = verify_design(bad)
        assert any("points" in viol for viol in report.violations)

    def test_broken_class_reported(self):
        rd = rbibd_affine(2)
        broken = ResolvableDesign(rd.design, ((0, 2), (1, 3), (4, 5)))
        report = verify_design(broken)
        assert any("partition" in viol for viol in report.violations)

    def test_replication_helper(self):
        counts = point_replications(projective_plane(2))
        assert set(counts.values()) == {3}


class TestSerialization:
    def test_plain_roundtrip(self):
        d = projective_plane(2)
        text = design_to_text(d)
        assert text.splitlines()[0] == "7 3 1"
        assert design_from_text(text) == d

    def test_resolvable_roundtrip(self):
        rd = rbibd_affine(3)
        text = design_to_text(rd)
        assert text.count("%") == 3
        back = design_from_text(text)
        assert isinstance(back, ResolvableDesign)
        assert back.design.blocks == rd.design.blocks
        assert back.classes == rd.classes

    def test_dcbd_serializes_with_zero_lambda(self):
        d = dcbd(4, 3, 2)
        text = design_to_text(d)
        assert text.splitlines()[0] == "8 6 0"
        back = design_from_text(text)
        assert back.blocks == d.blocks

    def test_bad_header(self):
        with pytest.raises(ParameterError):
            design_from_text("7 3\n1 2 3\n")
        with pytest.raises(ParameterError):
            design_from_text("")
