import itertools
import random

import pytest

from bfr.constructions import (
    DcbdCode,
    DesignPlacedCode,
    GabMdsCode,
    RelaxedCode,
    TransposeCode,
    bfr_collect,
    bfr_repair,
    dcbd_construct,
    gab_mds_encode,
    pp_construct,
    rbfr_construct,
    three_block_code,
    transpose_encode,
)
from bfr.errors import ParameterError, RankErasureError
from bfr.fields import BinaryExtField
from bfr.regenerating import MBR, MSR, RegenParams


def rand_file(field, count, seed):
    pool = list(field.elements())
    rng = random.Random(seed)
    return [rng.choice(pool) for _ in range(count)]


def all_nodes(code):
    per_block = {}
    for blk, node in code.shards:
        per_block.setdefault(blk, []).append(node)
    return {blk: sorted(nodes) for blk, nodes in per_block.items()}


# ---------------------------------------------------------------------------
# transpose placement


class TestTranspose:
    def test_frozen_shape_n8_k4(self):
        code = TransposeCode(8, 4)
        p = code.params
        assert (p.n, p.b, p.M, p.k, p.d, p.alpha, p.beta) == (8, 2, 12, 4, 4, 4, 1)
        assert p.c == 4 and p.k_c == 2 and p.d_r == 4
        # 16 matrix entries, each stored twice (row copy and column copy)
        cov = code.encode(list(range(12))).layout().coverage()
        assert cov == {(0, i): 2 for i in range(16)}

    def test_shards_are_rows_and_columns(self):
        file = list(range(12))
        code = transpose_encode(file, 8, 4)
        word = code.mds.encode(file)
        for i in range(4):
            assert code.shards[(0, i)] == tuple(word[4 * i : 4 * i + 4])
            assert code.shards[(1, i)] == tuple(word[i::4])

    def test_collect_every_choice(self):
        file = list(range(12))
        code = transpose_encode(file, 8, 4)
        for rows in itertools.combinations(range(4), 2):
            for cols in itertools.combinations(range(4), 2):
                got = bfr_collect(code, [0, 1], {0: list(rows), 1: list(cols)})
                assert list(got) == file

    def test_repair_every_node(self):
        file = list(range(12))
        code = transpose_encode(file, 8, 4)
        for blk in (0, 1):
            for idx in range(4):
                other = 1 - blk
                vec, report = bfr_repair(
                    code, (blk, idx), [other], {other: [0, 1, 2, 3]}
                )
                assert vec == code.shards[(blk, idx)]
                assert report.total == 4
                assert report.per_block == {other: 4}

    def test_rejects_odd_parameters(self):
        with pytest.raises(ParameterError):
            TransposeCode(7, 4)
        with pytest.raises(ParameterError):
            TransposeCode(8, 3)
        with pytest.raises(ParameterError):
            TransposeCode(8, 6)  # k > n/2

    def test_small_instance_round_trip(self):
        # n=4: a 2x2 coded matrix over the default field
        file = [1, 2, 3]
        code = transpose_encode(file, 4, 2)
        assert code.params.M == 3
        got = bfr_collect(code, [0, 1], {0: [1], 1: [0]})
        assert list(got) == file
        vec, _ = bfr_repair(code, (0, 0), [1], {1: [0, 1]})
        assert vec == code.shards[(0, 0)]


# ---------------------------------------------------------------------------
# symmetric-design placement


TOY_SUB = RegenParams(n=10, k=4, d=5, mode=MBR)


class TestThreeBlock:
    def test_shape(self):
        code = three_block_code(TOY_SUB, rand_file(BinaryExtField(4), 42, 1))
        p = code.params
        assert (p.n, p.b, p.M, p.k, p.d, p.alpha, p.beta) == (15, 3, 42, 6, 10, 10, 1)
        assert p.c == 5 and p.k_c == 2 and p.d_r == 5
        # every sub-code symbol of every partition is stored exactly once
        cov = code.layout().coverage()
        assert set(cov.values()) == {1}
        assert len(cov) == 3 * 10 * 5

    def test_collect_choices(self):
        F = BinaryExtField(4)
        file = rand_file(F, 42, 2)
        code = three_block_code(TOY_SUB, file, field=F)
        rng = random.Random(3)
        for _ in range(6):
            choice = {
                blk: sorted(rng.sample(range(5), 2)) for blk in range(3)
            }
            assert list(bfr_collect(code, [0, 1, 2], choice)) == file

    def test_repair_and_reuse(self):
        file = rand_file(BinaryExtField(4), 42, 4)
        code = three_block_code(TOY_SUB, file)
        original = code.shards[(1, 3)]
        vec, report = bfr_repair(
            code, (1, 3), [0, 2], {0: [0, 1, 2, 3, 4], 2: [0, 1, 2, 3, 4]}
        )
        assert vec == original
        assert report.total == 10 and report.even_shares()
        assert report.per_block == {0: 5, 2: 5}
        # the rebuilt node is as good as the old one for collection
        code.shards[(1, 3)] = vec
        got = bfr_collect(code, [0, 1, 2], {0: [0, 4], 1: [2, 3], 2: [1, 2]})
        assert list(got) == file

    def test_capacity_rejection(self):
        # 5 nodes per (block, partition) cannot source d=7 repair fan-in
        with pytest.raises(ParameterError):
            DesignPlacedCode(((1, 2), (1, 3), (2, 3)), 3, RegenParams(10, 4, 7))

    def test_bad_designs_rejected(self):
        with pytest.raises(ParameterError):
            # blocks meeting in 0 or 2 points
            DesignPlacedCode(((1, 2), (1, 2), (3, 4)), 4, TOY_SUB)
        with pytest.raises(ParameterError):
            # resolvable-style layout: replication 2 != block size 3
            DesignPlacedCode(((1, 2, 3), (4, 5, 6)), 6, RegenParams(6, 3, 4))


class TestProjectivePlacement:
    def test_msr_shape_p2(self):
        file = rand_file(BinaryExtField(3), 42, 5)
        code = pp_construct(2, RegenParams(6, 3, 4, mode=MSR), file)
        p = code.params
        assert (p.n, p.b, p.M, p.k, p.d, p.alpha, p.beta) == (14, 7, 42, 7, 12, 6, 1)
        assert p.c == 2 and p.k_c == 1 and p.d_r == 2

    def test_mbr_shape_p2(self):
        file = rand_file(BinaryExtField(3), 63, 6)
        code = pp_construct(2, RegenParams(6, 3, 4, mode=MBR), file)
        p = code.params
        assert (p.M, p.alpha, p.k, p.d) == (63, 12, 7, 12)

    def test_collect_and_repair_msr(self):
        F = BinaryExtField(3)
        file = rand_file(F, 42, 7)
        code = pp_construct(2, RegenParams(6, 3, 4, mode=MSR), file, field=F)
        rng = random.Random(8)
        for _ in range(4):
            choice = {blk: [rng.randrange(2)] for blk in range(7)}
            assert list(bfr_collect(code, list(range(7)), choice)) == file
        helpers = [b for b in range(7) if b != 3]
        vec, report = bfr_repair(
            code, (3, 1), helpers, {hb: [0, 1] for hb in helpers}
        )
        assert vec == code.shards[(3, 1)]
        assert report.total == 12
        assert report.per_block == {hb: 2 for hb in helpers}

    def test_collect_and_repair_mbr(self):
        file = rand_file(BinaryExtField(3), 63, 9)
        code = pp_construct(2, RegenParams(6, 3, 4, mode=MBR), file)
        choice = {blk: [blk % 2] for blk in range(7)}
        assert list(bfr_collect(code, list(range(7)), choice)) == file
        helpers = [b for b in range(7) if b != 0]
        vec, report = bfr_repair(
            code, (0, 0), helpers, {hb: [0, 1] for hb in helpers}
        )
        assert vec == code.shards[(0, 0)]
        assert report.even_shares()

    def test_precondition_rejections(self):
        file = [0] * 42
        with pytest.raises(ParameterError):
            pp_construct(2, RegenParams(6, 2, 4), file)  # 3 does not divide k=2
        with pytest.raises(ParameterError):
            pp_construct(2, RegenParams(9, 3, 4), file)  # 3 does not divide n=9
        with pytest.raises(ParameterError):
            pp_construct(2, RegenParams(6, 3, 3), file)  # 2 does not divide d=3


# ---------------------------------------------------------------------------
# duplicated-combination placement


class TestDcbd:
    def test_small_shape_and_round_trip(self):
        F = BinaryExtField(3)
        sub = RegenParams(4, 2, 2, mode=MBR)
        file = rand_file(F, 18, 10)
        code = dcbd_construct(3, 1, sub, file, field=F)
        p = code.params
        assert (p.n, p.b, p.M, p.k, p.d, p.alpha, p.beta) == (6, 3, 18, 3, 4, 8, 2)
        assert p.c == 2 and p.k_c == 1 and p.d_r == 2
        for choice in itertools.product(range(2), repeat=3):
            picked = {blk: [choice[blk]] for blk in range(3)}
            assert list(bfr_collect(code, [0, 1, 2], picked)) == file

    def test_small_repair_all_nodes(self):
        sub = RegenParams(4, 2, 2, mode=MBR)
        file = rand_file(BinaryExtField(3), 18, 11)
        code = dcbd_construct(3, 1, sub, file)
        for blk in range(3):
            helpers = [x for x in range(3) if x != blk]
            for idx in range(2):
                vec, report = bfr_repair(
                    code, (blk, idx), helpers, {hb: [0, 1] for hb in helpers}
                )
                assert vec == code.shards[(blk, idx)]
                assert report.total == 8  # d * beta = 4 * 2
                assert report.per_block == {hb: 4 for hb in helpers}

    def test_frozen_schedule_b5(self):
        code = DcbdCode(5, 2, RegenParams(8, 4, 4, mode=MBR))
        serves = code.repair_plan(0, [1, 2, 3])
        assert serves[1] == [1, 4, 5, 9, 10, 11, 14, 15]
        assert serves[2] == [1, 3, 5, 6, 8, 10, 13, 15]
        assert serves[3] == [3, 4, 6, 8, 9, 11, 13, 14]
        # equal load: (b - sigma - 1)(b - 1) partitions each
        assert {len(v) for v in serves.values()} == {8}

    def test_b5_shape(self):
        code = DcbdCode(5, 2, RegenParams(8, 4, 4, mode=MBR))
        p = code.params
        assert (p.n, p.b, p.M, p.k, p.d, p.alpha, p.beta) == (
            10, 5, 150, 5, 6, 48, 8,
        )
        assert p.c == 2 and p.k_c == 1 and p.d_r == 2

    def test_b5_repair_every_helper_set(self):
        F = BinaryExtField(4)
        file = rand_file(F, 150, 12)
        code = dcbd_construct(5, 2, RegenParams(8, 4, 4, mode=MBR), file, field=F)
        original = code.shards[(0, 1)]
        for helpers in itertools.combinations(range(1, 5), 3):
            vec, report = bfr_repair(
                code, (0, 1), list(helpers), {hb: [0, 1] for hb in helpers}
            )
            assert vec == original
            # every helper block ships d_r * beta = 2 * 8 symbols
            assert report.per_block == {hb: 16 for hb in helpers}
            assert report.total == 48

    def test_b5_collect(self):
        F = BinaryExtField(4)
        file = rand_file(F, 150, 13)
        code = dcbd_construct(5, 2, RegenParams(8, 4, 4, mode=MBR), file, field=F)
        rng = random.Random(14)
        for _ in range(3):
            choice = {blk: [rng.randrange(2)] for blk in range(5)}
            assert list(bfr_collect(code, list(range(5)), choice)) == file

    def test_divisibility_rejections(self):
        with pytest.raises(ParameterError):
            # dimension 2 not divisible by b-1 = 4
            DcbdCode(5, 2, RegenParams(8, 2, 4, mode=MBR))
        with pytest.raises(ParameterError):
            # length 6 not divisible by b-1 = 4
            DcbdCode(5, 2, RegenParams(6, 4, 4, mode=MBR))
        with pytest.raises(ParameterError):
            # helper count 3 not divisible by b-sigma-1 = 2
            DcbdCode(5, 2, RegenParams(8, 4, 3, mode=MBR))

    def test_sigma_range(self):
        with pytest.raises(ParameterError):
            DcbdCode(3, 2, RegenParams(4, 2, 2))  # sigma = b-1 unsupported
        with pytest.raises(ParameterError):
            DcbdCode(3, 0, RegenParams(4, 2, 2))


# ---------------------------------------------------------------------------
# rank-metric outer code with per-block MDS


class TestGabMds:
    def test_default_field_and_shape(self):
        code = GabMdsCode(b=3, c=3, k_c=2, rho=1)
        assert code.K == 4 and code.N == 6
        assert code.field.m == 6 and code.field.q == 2
        # the per-block expansion uses GF(2) coefficients
        for row in code.inner.generator:
            assert all(x in (code.field.zero, code.field.one) for x in row)

    def test_every_tolerated_pattern_decodes(self):
        F = BinaryExtField(6)
        pool = list(F.elements())
        data = [pool[7], pool[11], pool[23], pool[42]]
        code = gab_mds_encode(data, b=3, c=3, k_c=2, rho=1, field=F)
        for dead_block in range(3):
            survivors = [b for b in range(3) if b != dead_block]
            for dead_nodes in itertools.product(range(3), repeat=2):
                available = {}
                for bi, dead in zip(survivors, dead_nodes):
                    for j in range(3):
                        if j != dead:
                            available[(bi, j)] = code.shards[(bi, j)][0]
                assert list(code.decode_from(available)) == data

    def test_rank_deficit_reports_achieved_rank(self):
        data = [1, 2, 3, 4]
        code = gab_mds_encode(data, b=3, c=3, k_c=2, rho=1)
        # one whole block down plus two nodes of another: rank K-1
        available = {}
        for j in range(3):
            available[(1, j)] = code.shards[(1, j)][0]
        available[(2, 0)] = code.shards[(2, 0)][0]
        with pytest.raises(RankErasureError) as exc:
            code.decode_from(available)
        assert exc.value.achieved_rank == 3
        assert exc.value.needed_rank == 4

    def test_collect_entry_point(self):
        data = [5, 6, 7, 8]
        code = gab_mds_encode(data, b=3, c=3, k_c=2, rho=1)
        got = bfr_collect(code, [0, 2], {0: [1, 2], 2: [0, 2]})
        assert list(got) == data
        with pytest.raises(ParameterError):
            bfr_repair(code, (0, 0), [1, 2], {1: [0], 2: [0]})

    def test_rho_zero_uses_all_blocks(self):
        # k_c=2 with c=4 needs bigger-than-binary expansion coefficients,
        # so the default field is a tower over GF(8)
        code = GabMdsCode(b=3, c=4, k_c=2, rho=0)
        assert code.field.base_field.m == 3
        data = rand_file(code.field, code.K, 31)
        code.encode(data)
        got = bfr_collect(code, [0, 1, 2], {0: [0, 3], 1: [1, 2], 2: [0, 1]})
        assert list(got) == data


# ---------------------------------------------------------------------------
# resolvable-design placement


class TestRelaxed:
    def test_shape_p2(self):
        F = BinaryExtField(3)
        file = rand_file(F, 36, 20)
        code = rbfr_construct(2, RegenParams(6, 3, 4, mode=MBR), file, sigma=1)
        p = code.params
        assert (p.n, p.b, p.M, p.k, p.d, p.alpha, p.beta) == (12, 3, 36, 6, 8, 8, 1)
        assert p.c == 4 and p.k_c == 2 and p.d_r == 4
        assert code.c_type == 2 and code.k_quota == 1 and code.d_quota == 2
        cov = code.layout().coverage()
        assert set(cov.values()) == {1}
        assert len(cov) == 4 * 6 * 4  # v partitions, n_sub sub-nodes, alpha_sub

    def test_collect_respects_type_quota(self):
        F = BinaryExtField(3)
        file = rand_file(F, 36, 21)
        code = rbfr_construct(2, RegenParams(6, 3, 4, mode=MBR), file, sigma=1, field=F)
        # one node from each of the two types per class
        got = bfr_collect(
            code, [0, 1, 2], {0: [0, 2], 1: [1, 3], 2: [0, 3]}
        )
        assert list(got) == file
        with pytest.raises(ParameterError):
            # both nodes from type 0 of class 0
            bfr_collect(code, [0, 1, 2], {0: [0, 1], 1: [1, 3], 2: [0, 3]})

    def test_repair_uses_designated_types(self):
        F = BinaryExtField(3)
        file = rand_file(F, 36, 22)
        code = rbfr_construct(2, RegenParams(6, 3, 4, mode=MBR), file, sigma=1, field=F)
        original = code.shards[(0, 1)]
        vec, report = bfr_repair(
            code, (0, 1), [1, 2], {1: [0, 1, 2, 3], 2: [0, 1, 2, 3]}
        )
        assert vec == original
        assert report.total == 8
        assert report.per_block == {1: 4, 2: 4}

    def test_single_helper_class(self):
        # sigma = b-1: every partition of the failed type is repaired
        # through one class
        F = BinaryExtField(4)
        file = rand_file(F, 36, 23)
        code = rbfr_construct(2, RegenParams(12, 3, 4, mode=MBR), file, sigma=2, field=F)
        p = code.params
        assert p.d_r == p.d == 8
        original = code.shards[(2, 0)]
        vec, report = bfr_repair(
            code, (2, 0), [1], {1: [0, 1, 2, 3, 4, 5, 6, 7]}
        )
        assert vec == original
        assert report.per_block == {1: 8}

    def test_rho_positive_collects_from_fewer_classes(self):
        F = BinaryExtField(3)
        file = rand_file(F, 12, 24)
        code = rbfr_construct(
            2, RegenParams(6, 2, 2, mode=MBR), file, sigma=1, rho=1, field=F
        )
        p = code.params
        assert (p.k, p.k_c, p.M) == (4, 2, 12)
        for classes in itertools.combinations(range(3), 2):
            got = bfr_collect(
                code, list(classes), {ci: [0, 2] for ci in classes}
            )
            assert list(got) == file

    def test_quota_divisibility_rejections(self):
        with pytest.raises(ParameterError):
            # k=4 not divisible by b-rho=3
            RelaxedCode(2, RegenParams(6, 4, 4), sigma=1)
        with pytest.raises(ParameterError):
            # d=3 not divisible by b-sigma=2
            RelaxedCode(2, RegenParams(6, 3, 3), sigma=1)
        with pytest.raises(ParameterError):
            # n=8 not divisible by r=3
            RelaxedCode(2, RegenParams(8, 3, 4), sigma=1)


# ---------------------------------------------------------------------------
# achieved operating points sit exactly on the bound corners


class TestAchievability:
    def test_transpose_hits_two_block_min_bandwidth(self):
        from fractions import Fraction

        from bfr.bounds import corner_points

        code = TransposeCode(8, 4)
        p = code.params
        _, mbr = corner_points(p)
        assert Fraction(p.alpha) == mbr.alpha
        assert Fraction(p.d * p.beta) == mbr.gamma
        # the display form: 4Md/(4dk - k^2)
        assert mbr.gamma == Fraction(4 * p.M * p.d, 4 * p.d * p.k - p.k**2) == 4

    def test_projective_msr_hits_min_storage(self):
        from fractions import Fraction

        from bfr.bounds import corner_points

        code = pp_construct(2, RegenParams(6, 3, 4, mode=MSR), [0] * 42)
        p = code.params
        msr, _ = corner_points(p)
        assert Fraction(p.alpha) == msr.alpha == Fraction(p.M, p.k)
        assert Fraction(p.d * p.beta) == msr.gamma

    def test_projective_mbr_hits_min_bandwidth(self):
        from fractions import Fraction

        from bfr.bounds import corner_points

        code = pp_construct(2, RegenParams(6, 3, 4, mode=MBR), [0] * 63)
        p = code.params
        _, mbr = corner_points(p)
        assert Fraction(p.alpha) == mbr.alpha
        assert Fraction(p.d * p.beta) == mbr.gamma

    def test_dcbd_corners_at_smallest_admissible_dimension(self):
        from fractions import Fraction

        from bfr.bounds import corner_points

        mbr_code = DcbdCode(3, 1, RegenParams(4, 2, 2, mode=MBR))
        p = mbr_code.params
        _, mbr = corner_points(p)
        assert Fraction(p.alpha) == mbr.alpha
        assert Fraction(p.d * p.beta) == mbr.gamma

        msr_code = DcbdCode(3, 1, RegenParams(4, 2, 2, mode=MSR))
        q = msr_code.params
        msr, _ = corner_points(q)
        assert Fraction(q.alpha) == msr.alpha == Fraction(q.M, q.k)
        assert Fraction(q.d * q.beta) == msr.gamma


# ---------------------------------------------------------------------------
# entry-point validation


class TestEntryPoints:
    @pytest.fixture()
    def toy(self):
        file = rand_file(BinaryExtField(4), 42, 30)
        return three_block_code(TOY_SUB, file), file

    def test_collect_block_count(self, toy):
        code, _ = toy
        with pytest.raises(ParameterError):
            bfr_collect(code, [0, 1], {0: [0, 1], 1: [0, 1]})
        with pytest.raises(ParameterError):
            bfr_collect(code, [0, 1, 1], {0: [0, 1], 1: [0, 1]})

    def test_collect_node_count(self, toy):
        code, _ = toy
        with pytest.raises(ParameterError):
            bfr_collect(code, [0, 1, 2], {0: [0], 1: [0, 1], 2: [0, 1]})
        with pytest.raises(ParameterError):
            bfr_collect(code, [0, 1, 2], {0: [0, 0], 1: [0, 1], 2: [0, 1]})

    def test_repair_rejects_failed_as_helper(self, toy):
        code, _ = toy
        with pytest.raises(ParameterError):
            bfr_repair(code, (0, 0), [0, 1], {0: [0, 1, 2, 3, 4], 1: [0, 1, 2, 3, 4]})

    def test_repair_helper_counts(self, toy):
        code, _ = toy
        with pytest.raises(ParameterError):
            bfr_repair(code, (0, 0), [1], {1: [0, 1, 2, 3, 4]})
        with pytest.raises(ParameterError):
            bfr_repair(code, (0, 0), [1, 2], {1: [0, 1, 2], 2: [0, 1, 2, 3, 4]})

    def test_out_of_range_block(self, toy):
        code, _ = toy
        with pytest.raises(ParameterError):
            bfr_collect(code, [0, 1, 5], {0: [0, 1], 1: [0, 1], 5: [0, 1]})
