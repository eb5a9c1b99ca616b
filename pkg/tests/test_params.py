"""Tests for system-parameter validation and regime classification."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfr.errors import ParameterError
from bfr.params import (
    REGIME_IA,
    REGIME_IB,
    REGIME_II,
    SystemParams,
    params_from_text,
    params_to_text,
    validate_params,
)


def make(n, b, k, rho, d, sigma, M=10, **kw):
    return SystemParams(n=n, b=b, M=M, k=k, rho=rho, d=d, sigma=sigma, **kw)


class TestClassification:
    def test_two_block_example(self):
        # ten nodes in two groups, repair wider than collection
        p = make(n=10, b=2, k=4, rho=0, d=4, sigma=1)
        assert p.c == 5 and p.k_c == 2 and p.d_r == 4
        assert validate_params(p) == REGIME_IB

    def test_three_block_example(self):
        p = make(n=12, b=3, k=2, rho=1, d=4, sigma=1)
        assert p.k_c == 1 and p.d_r == 2
        assert validate_params(p) == REGIME_IA

    def test_four_block_example(self):
        p = make(n=12, b=4, k=4, rho=2, d=3, sigma=1)
        assert p.k_c == 2 and p.d_r == 1
        assert validate_params(p) == REGIME_II

    def test_narrow_repair_needs_extra_block_resilience(self):
        # d_r < k_c with rho <= sigma cannot work
        p = make(n=12, b=4, k=6, rho=1, d=3, sigma=1)
        with pytest.raises(ParameterError, match="rho > sigma"):
            validate_params(p)

    @given(
        st.integers(2, 6),
        st.integers(1, 4),
        st.integers(0, 5),
        st.integers(1, 5),
        st.data(),
    )
    @settings(max_examples=200, deadline=None)
    def test_classification_is_total(self, b, c, rho, sigma, data):
        if rho >= b or sigma >= b:
            return
        k_c = data.draw(st.integers(1, c))
        d_r = data.draw(st.integers(1, c))
        p = make(
            n=b * c, b=b, k=k_c * (b - rho), rho=rho, d=d_r * (b - sigma), sigma=sigma
        )
        try:
            tag = validate_params(p)
        except ParameterError:
            assert d_r < k_c and rho <= sigma
            return
        if d_r >= k_c:
            assert tag == (REGIME_IA if sigma <= rho else REGIME_IB)
        else:
            assert tag == REGIME_II and rho > sigma


class TestStructural:
    def test_block_size_divisibility(self):
        p = make(n=10, b=3, k=2, rho=1, d=4, sigma=1)
        with pytest.raises(ParameterError, match="divide n"):
            validate_params(p)

    def test_k_divisibility(self):
        p = make(n=12, b=3, k=3, rho=1, d=4, sigma=1)
        with pytest.raises(ParameterError, match="divide k"):
            validate_params(p)

    def test_d_divisibility(self):
        p = make(n=12, b=3, k=2, rho=1, d=3, sigma=1)
        with pytest.raises(ParameterError, match="divide d"):
            validate_params(p)

    def test_capacity(self):
        p = make(n=6, b=3, k=9, rho=0, d=2, sigma=1)
        with pytest.raises(ParameterError, match="exceeds block size"):
            validate_params(p)
        p = make(n=6, b=3, k=2, rho=1, d=6, sigma=1)
        with pytest.raises(ParameterError, match="exceeds block size"):
            validate_params(p)

    def test_rho_sigma_ranges(self):
        with pytest.raises(ParameterError):
            make(n=12, b=3, k=2, rho=3, d=4, sigma=1)
        with pytest.raises(ParameterError):
            make(n=12, b=3, k=2, rho=1, d=4, sigma=0)
        with pytest.raises(ParameterError):
            make(n=12, b=3, k=2, rho=1, d=4, sigma=3)

    def test_beta_cannot_exceed_alpha(self):
        with pytest.raises(ParameterError, match="beta > alpha"):
            make(n=12, b=3, k=2, rho=1, d=4, sigma=1, alpha=2, beta=3)

    def test_gamma(self):
        p = make(n=12, b=3, k=2, rho=1, d=4, sigma=1, alpha=4, beta=2)
        assert p.gamma == 8
        with pytest.raises(ParameterError):
            _ = make(n=12, b=3, k=2, rho=1, d=4, sigma=1).gamma


class TestTextFormat:
    def test_roundtrip(self):
        p = make(n=12, b=3, k=2, rho=1, d=4, sigma=1, alpha=4, beta=1)
        assert params_from_text(params_to_text(p)) == p

    def test_optional_fields_omitted(self):
        p = make(n=12, b=3, k=2, rho=1, d=4, sigma=1)
        text = params_to_text(p)
        assert "alpha" not in text and "beta" not in text
        assert params_from_text(text) == p

    def test_comments_and_blanks(self):
        text = (
            "# storage layout\nn: 12\nb: 3\nM: 10\n\nk: 2\nrho: 1\nd: 4\nsigma: 1\n"
        )
        p = params_from_text(text)
        assert p.n == 12 and p.sigma == 1

    def test_errors(self):
        with pytest.raises(ParameterError, match="missing"):
            params_from_text("n: 12\nb: 3\n")
        with pytest.raises(ParameterError, match="unknown"):
            params_from_text(
                "n: 12\nb: 3\nM: 10\nk: 2\nrho: 1\nd: 4\nsigma: 1\nzeta: 9\n"
            )
        with pytest.raises(ParameterError, match="duplicate"):
            params_from_text(
                "n: 12\nn: 12\nb: 3\nM: 10\nk: 2\nrho: 1\nd: 4\nsigma: 1\n"
            )
        with pytest.raises(ParameterError, match="non-integer"):
            params_from_text(
                "n: twelve\nb: 3\nM: 10\nk: 2\nrho: 1\nd: 4\nsigma: 1\n"
            )
