"""Tests for the product-matrix regenerating codes.

The exhaustive-preimage oracle encodes every possible file and matches
against the surviving node vectors; tiny instances are checked against
it so the algebraic collect path never self-certifies.
"""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfr.errors import (
    CorruptionError,
    ParameterError,
    UnrecoverableErasureError,
)
from bfr.fields import BinaryExtField
from bfr.regenerating import MBR, MSR, RegenCode, RegenParams


def brute_force_collect(code, available):
    F = code.field
    elems = list(F.elements())
    matches = []
    for data in itertools.product(elems, repeat=code.params.file_size):
        nodes = code.encode(data)
        if all(tuple(nodes[i]) == tuple(v) for i, v in available.items()):
            matches.append(data)
    assert len(matches) == 1
    return matches[0]


def sample_data(code, salt=0):
    F = code.field
    elems = list(F.elements())
    return tuple(
        elems[(3 * i + salt) % len(elems)] for i in range(code.params.file_size)
    )


def check_all_collects(code, data=None):
    data = data or sample_data(code)
    nodes = code.encode(data)
    p = code.params
    for sub in itertools.combinations(range(p.n), p.k):
        got = code.collect({i: nodes[i] for i in sub})
        assert got == data, f"collect failed for nodes {sub}"


def check_all_repairs(code, data=None):
    data = data or sample_data(code)
    nodes = code.encode(data)
    p = code.params
    for failed in range(p.n):
        others = [i for i in range(p.n) if i != failed]
        for helpers in itertools.combinations(others, p.d):
            responses = {
                h: code.repair_response(h, nodes[h], failed) for h in helpers
            }
            assert code.repair(failed, responses) == nodes[failed], (
                f"repair of {failed} from {helpers} failed"
            )


class TestParams:
    def test_mbr_derived_quantities(self):
        p = RegenParams(6, 3, 4, mode=MBR)
        assert p.alpha == 4
        assert p.file_size == 9
        assert p.repair_bandwidth == 4

    def test_msr_derived_quantities(self):
        p = RegenParams(6, 3, 4, mode=MSR)
        assert p.alpha == 2
        assert p.file_size == 6
        p2 = RegenParams(7, 3, 5, mode=MSR)
        assert p2.alpha == 3
        assert p2.file_size == 9

    def test_beta_scales_everything(self):
        p = RegenParams(5, 2, 3, beta=2, mode=MBR)
        assert p.alpha == 6
        assert p.file_size == 10
        assert p.repair_bandwidth == 6

    def test_msr_k1_rejected(self):
        with pytest.raises(ParameterError, match="product-matrix infeasible"):
            RegenParams(4, 1, 2, mode=MSR)

    def test_msr_low_d_rejected(self):
        with pytest.raises(ParameterError, match="2k-2"):
            RegenParams(8, 4, 5, mode=MSR)

    def test_basic_ordering_enforced(self):
        with pytest.raises(ParameterError):
            RegenParams(4, 3, 2, mode=MBR)
        with pytest.raises(ParameterError):
            RegenParams(4, 2, 4, mode=MBR)
        with pytest.raises(ParameterError):
            RegenParams(4, 2, 3, beta=0, mode=MBR)
        with pytest.raises(ParameterError):
            RegenParams(4, 2, 3, mode="other")


class TestMbr:
    def test_tiny_instance_matches_preimage_oracle(self):
        # (n=3, k=2, d=2): file of 3 symbols over GF(4); every pair of
        # nodes determines the file uniquely among all 64 encodings.
        code = RegenCode(RegenParams(3, 2, 2, mode=MBR))
        assert code.field.order == 4
        data = (1, 2, 3)
        nodes = code.encode(data)
        for sub in itertools.combinations(range(3), 2):
            available = {i: nodes[i] for i in sub}
            assert code.collect(available) == data
            assert brute_force_collect(code, available) == data

    def test_all_collects_and_repairs(self):
        code = RegenCode(RegenParams(5, 2, 3, mode=MBR))
        check_all_collects(code)
        check_all_repairs(code)

    def test_six_node_instance(self):
        code = RegenCode(RegenParams(6, 3, 4, mode=MBR))
        check_all_collects(code)
        check_all_repairs(code)

    def test_repair_then_collect(self):
        code = RegenCode(RegenParams(5, 2, 3, mode=MBR))
        data = sample_data(code, salt=1)
        nodes = code.encode(data)
        rebuilt = code.repair(0, {h: code.repair_response(h, nodes[h], 0)
                                  for h in (1, 3, 4)})
        assert code.collect({0: rebuilt, 2: nodes[2]}) == data

    def test_striping(self):
        code = RegenCode(RegenParams(5, 2, 3, beta=2, mode=MBR))
        data = sample_data(code)
        nodes = code.encode(data)
        assert all(len(v) == 6 for v in nodes)
        assert code.collect({1: nodes[1], 4: nodes[4]}) == data
        resp = code.repair_response(1, nodes[1], 0)
        assert len(resp) == 2
        responses = {h: code.repair_response(h, nodes[h], 0) for h in (1, 2, 3)}
        assert code.repair(0, responses) == nodes[0]


class TestMsr:
    def test_tiny_instance_matches_preimage_oracle(self):
        # (n=4, k=2, d=2): 2 file symbols over GF(8), alpha = 1.
        code = RegenCode(RegenParams(4, 2, 2, mode=MSR))
        data = (5, 7)
        nodes = code.encode(data)
        for sub in itertools.combinations(range(4), 2):
            available = {i: nodes[i] for i in sub}
            assert code.collect(available) == data
        assert brute_force_collect(code, {0: nodes[0], 3: nodes[3]}) == data

    def test_native_instance(self):
        code = RegenCode(RegenParams(6, 3, 4, mode=MSR))
        check_all_collects(code)
        check_all_repairs(code)

    def test_shortened_instance(self):
        # d > 2k-2 goes through the shortened auxiliary code.
        code = RegenCode(RegenParams(7, 3, 5, mode=MSR))
        assert code.extra == 1
        check_all_collects(code)
        check_all_repairs(code)

    def test_doubly_shortened_repair_then_collect(self):
        code = RegenCode(RegenParams(7, 2, 4, mode=MSR))
        assert code.extra == 2
        data = sample_data(code, salt=2)
        nodes = code.encode(data)
        helpers = (2, 3, 5, 6)
        rebuilt = code.repair(1, {h: code.repair_response(h, nodes[h], 1)
                                  for h in helpers})
        assert rebuilt == nodes[1]
        assert code.collect({1: rebuilt, 4: nodes[4]}) == data

    def test_striping(self):
        code = RegenCode(RegenParams(6, 3, 4, beta=3, mode=MSR))
        data = sample_data(code, salt=3)
        nodes = code.encode(data)
        assert all(len(v) == 6 for v in nodes)
        assert code.collect({0: nodes[0], 2: nodes[2], 5: nodes[5]}) == data
        responses = {h: code.repair_response(h, nodes[h], 4)
                     for h in (0, 1, 2, 3)}
        assert len(responses[0]) == 3
        assert code.repair(4, responses) == nodes[4]

    def test_explicit_points(self):
        code = RegenCode(
            RegenParams(4, 2, 2, mode=MSR),
            field=BinaryExtField(4),
            points=[1, 2, 3, 4],
        )
        check_all_collects(code)
        check_all_repairs(code)


class TestFailureModes:
    def test_too_few_nodes(self):
        code = RegenCode(RegenParams(5, 2, 3, mode=MBR))
        nodes = code.encode(sample_data(code))
        with pytest.raises(UnrecoverableErasureError):
            code.collect({0: nodes[0]})

    def test_corrupted_extra_node(self):
        code = RegenCode(RegenParams(5, 2, 3, mode=MBR))
        nodes = code.encode(sample_data(code))
        bad = list(nodes[4])
        bad[0] = code.field.add(bad[0], code.field.one)
        with pytest.raises(CorruptionError):
            code.collect({0: nodes[0], 1: nodes[1], 4: tuple(bad)})

    def test_wrong_helper_count(self):
        code = RegenCode(RegenParams(5, 2, 3, mode=MBR))
        nodes = code.encode(sample_data(code))
        responses = {h: code.repair_response(h, nodes[h], 0) for h in (1, 2)}
        with pytest.raises(UnrecoverableErasureError):
            code.repair(0, responses)

    def test_self_help_rejected(self):
        code = RegenCode(RegenParams(5, 2, 3, mode=MBR))
        nodes = code.encode(sample_data(code))
        with pytest.raises(ParameterError):
            code.repair_response(0, nodes[0], 0)

    def test_bad_data_length(self):
        code = RegenCode(RegenParams(5, 2, 3, mode=MBR))
        with pytest.raises(ParameterError):
            code.encode((1, 2, 3))


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_random_roundtrip_both_modes(data):
    mode = data.draw(st.sampled_from([MBR, MSR]))
    code = RegenCode(RegenParams(6, 3, 4, mode=mode))
    elems = list(code.field.elements())
    file = tuple(
        data.draw(st.sampled_from(elems))
        for _ in range(code.params.file_size)
    )
    nodes = code.encode(file)
    sub = data.draw(st.permutations(range(6)))[:3]
    assert code.collect({i: nodes[i] for i in sub}) == file
    failed = data.draw(st.integers(0, 5))
    helpers = [i for i in range(6) if i != failed][:4]
    responses = {h: code.repair_response(h, nodes[h], failed) for h in helpers}
    assert code.repair(failed, responses) == nodes[failed]
