"""Closed-form file-size bounds and storage/bandwidth corner points.

Every bound here is a sum of per-node cut terms ``min(alpha, coeff *
beta)``; the regimes differ only in their coefficient lists, so the
corner points fall out generically:

* minimum storage: ``alpha = M/k``, reached when alpha is at most the
  smallest coefficient times beta, so ``gamma = M*d / (k * c_min)``;
* minimum bandwidth: ``alpha = d*beta``, every term saturates at
  ``coeff * beta``, so ``alpha = gamma = M*d / sum(coeffs)``.

All arithmetic is exact (fractions); nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError
from .params import REGIME_IA, REGIME_IB, REGIME_II, SystemParams, validate_params


@dataclass(frozen=True)
class TradeoffPoint:
    alpha: Fraction
    gamma: Fraction
    source: str


@dataclass(frozen=True)
class BoundResult:
    value: Fraction
    regime: str
    conjectured: bool
    corner_only: bool
    coefficients: tuple


def cut_coefficients(params: SystemParams) -> tuple:
    """Per-node cut coefficients for the file-size bound, k entries.

    Term j of the bound is ``min(alpha, coefficients[j] * beta)``.
    """
    regime = validate_params(params)
    b, rho, sigma = params.b, params.rho, params.sigma
    k_c, d_r, d = params.k_c, params.d_r, params.d
    coeffs = []
    if regime == REGIME_IA:
        for i in range(1, b - rho + 1):
            coeffs.extend([d - (i - 1) * k_c] * k_c)
    elif regime == REGIME_IB:
        for i in range(1, b - sigma + 1):
            coeffs.extend([d - (i - 1) * k_c] * k_c)
        coeffs.extend([d - (b - sigma) * k_c] * ((sigma - rho) * k_c))
    else:
        for i in range(1, b - rho + 1):
            coeffs.extend([d - (i - 1) * d_r] * d_r)
            coeffs.extend([d - (b - rho - 1) * d_r] * (k_c - d_r))
    assert len(coeffs) == params.k
    assert all(cf >= 0 for cf in coeffs)
    return tuple(coeffs)


def file_size_bound(params: SystemParams, alpha, beta) -> BoundResult:
    """Largest storable file for the given per-node storage and download.

    In regime I.A the closed form is known to match the true min-cut
    only at the two corner operating points (alpha = M/k and
    alpha = d*beta); elsewhere it is still the canonical-order cut
    value, flagged ``corner_only``.  Regime I.B values carry the
    ``conjectured`` flag: their tightness is an open conjecture.
    """
    regime = validate_params(params)
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise ParameterError("alpha and beta must be positive")
    coeffs = cut_coefficients(params)
    value = sum(min(alpha, cf * beta) for cf in coeffs)
    return BoundResult(
        value=value,
        regime=regime,
        conjectured=(regime == REGIME_IB),
        corner_only=(regime == REGIME_IA),
        coefficients=coeffs,
    )


def _corners_from_coefficients(M, d, k, coeffs, source: str):
    M = Fraction(M)
    c_min = min(coeffs)
    total = sum(coeffs)
    if c_min <= 0:
        raise ParameterError(
            "minimum-storage point does not exist: a cut coefficient is zero "
            "(repair spread equals collection spread with sigma > rho)"
        )
    msr = TradeoffPoint(
        alpha=M / k, gamma=M * d / (k * c_min), source=f"{source}-min-storage"
    )
    mbr_val = M * d / total
    mbr = TradeoffPoint(alpha=mbr_val, gamma=mbr_val, source=f"{source}-min-bandwidth")
    return msr, mbr


def _regime_coefficients(params: SystemParams):
    regime = validate_params(params)
    if params.b == 2 and params.rho == 0 and params.sigma == 1:
        return two_block_coefficients(params.k, params.d), "two-block"
    return cut_coefficients(params), f"regime-{regime}"


def min_storage_point(params: SystemParams) -> TradeoffPoint:
    """Minimum-storage corner on its own.

    Rejects parameter sets whose smallest cut coefficient is zero: there
    the alpha = M/k operating point supports no file of size M at any
    finite beta.
    """
    coeffs, source = _regime_coefficients(params)
    c_min = min(coeffs)
    if c_min <= 0:
        raise ParameterError(
            "minimum-storage point does not exist: a cut coefficient is zero "
            "(repair spread equals collection spread with sigma > rho)"
        )
    M = Fraction(params.M)
    return TradeoffPoint(
        alpha=M / params.k,
        gamma=M * params.d / (params.k * c_min),
        source=f"{source}-min-storage",
    )


def min_bandwidth_point(params: SystemParams) -> TradeoffPoint:
    """Minimum-bandwidth corner on its own; exists for every valid set."""
    coeffs, source = _regime_coefficients(params)
    value = Fraction(params.M) * params.d / sum(coeffs)
    return TradeoffPoint(alpha=value, gamma=value, source=f"{source}-min-bandwidth")


def corner_points(params: SystemParams):
    """The (minimum-storage, minimum-bandwidth) endpoints of the trade-off."""
    return min_storage_point(params), min_bandwidth_point(params)


def min_bandwidth_for_storage(params: SystemParams, alpha) -> TradeoffPoint:
    """Least repair bandwidth the cut bound allows at a fixed storage.

    Given alpha, returns the smallest gamma = d*beta with
    ``sum(min(alpha, coeff * beta)) >= M``.  At alpha = M/k this is the
    minimum-storage corner and at alpha = d_r * beta_mbr the
    minimum-bandwidth corner; in between it is a bound query only, not
    an achievability claim.
    """
    coeffs, source = _regime_coefficients(params)
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ParameterError("alpha must be positive")
    M = Fraction(params.M)
    usable = sorted(cf for cf in coeffs if cf > 0)
    if alpha * len(usable) < M:
        raise ParameterError(
            f"storage {alpha} per node cannot reach file size {params.M}: "
            f"need alpha >= {M / len(usable)}"
        )

    def cut(beta):
        return sum(min(alpha, cf * beta) for cf in usable)

    # the cut is piecewise linear in beta with breaks where a term
    # saturates; find the first break past the target and solve there
    prev = Fraction(0)
    for bp in sorted({alpha / cf for cf in usable}):
        if cut(bp) >= M:
            capped = sum(1 for cf in usable if alpha / cf <= prev)
            slope = sum(cf for cf in usable if alpha / cf > prev)
            beta = (M - alpha * capped) / slope
            return TradeoffPoint(
                alpha=alpha, gamma=params.d * beta, source=f"{source}-storage-sweep"
            )
        prev = bp
    raise ParameterError("no feasible beta")  # pragma: no cover


def two_block_coefficients(k: int, d: int) -> tuple:
    """Cut coefficients for the two-block system (rho=0, sigma=1).

    Even k refines the generic regime list into a staircase; odd k (not
    expressible through the divisibility-checked parameter record) has
    its own two-level list.  Both share their corner points with the
    generic machinery.
    """
    if not (1 <= k <= 2 * d):
        raise ParameterError(f"need 1 <= k <= 2d, got k={k}, d={d}")
    if k % 2 == 0:
        half = k // 2
        return tuple(range(d, d - half, -1)) + tuple(range(d - 1, d - half - 1, -1))
    t = k // 2
    return (d,) * (t + 1) + (d - t - 1,) * t


def corner_points_two_block(M, k: int, d: int):
    """Two-block corner points; handles odd k, where collection pulls
    ceil(k/2) nodes from one block and floor(k/2) from the other."""
    coeffs = two_block_coefficients(k, d)
    return _corners_from_coefficients(M, d, k, coeffs, "two-block")


def classical_corner_points(M, k: int, d: int):
    """Corner points of the unblocked (any-k-of-n) system, for comparison."""
    if not (1 <= k <= d):
        raise ParameterError(f"need 1 <= k <= d, got k={k}, d={d}")
    M = Fraction(M)
    msr = TradeoffPoint(
        alpha=M / k,
        gamma=M * d / (k * (d - k + 1)),
        source="classical-min-storage",
    )
    mbr_val = 2 * M * d / (k * (2 * d - k + 1))
    mbr = TradeoffPoint(
        alpha=mbr_val, gamma=mbr_val, source="classical-min-bandwidth"
    )
    return msr, mbr


def tradeoff_curve(params: SystemParams, steps: int = 17):
    """Intermediate storage/bandwidth points for the two-block system.

    Only the two-block (rho=0, sigma=1) case supports interior points;
    anything else is rejected.  Sweeps beta between its corner values
    and reports, for each gamma, the least alpha still supporting M.
    """
    if not (params.b == 2 and params.rho == 0 and params.sigma == 1):
        raise ParameterError("interior trade-off points exist only for b=2, rho=0, sigma=1")
    validate_params(params)
    if steps < 2:
        raise ParameterError("need at least 2 steps")
    M = Fraction(params.M)
    k, d = params.k, params.d
    coeffs = sorted(two_block_coefficients(k, d))
    c_min, total = coeffs[0], sum(coeffs)
    if c_min == 0:
        raise ParameterError("minimum-storage endpoint does not exist (k = 2d)")
    beta_msr = M / (k * c_min)
    beta_mbr = M / total
    points = []
    for t in range(steps):
        beta = beta_msr + (beta_mbr - beta_msr) * t / (steps - 1)
        alpha = _min_alpha_for(M, coeffs, beta)
        points.append(TradeoffPoint(alpha=alpha, gamma=d * beta, source="two-block-sweep"))
    return points


def _min_alpha_for(M: Fraction, coeffs_sorted, beta: Fraction) -> Fraction:
    """Least alpha with sum(min(alpha, c*beta)) >= M, coefficients ascending."""
    k = len(coeffs_sorted)
    if sum(cf * beta for cf in coeffs_sorted) < M:
        raise ParameterError("beta too small to support the file at any alpha")
    saturated = Fraction(0)
    for i in range(k + 1):
        # terms 0..i-1 saturated at c*beta, the rest contribute alpha
        remaining = k - i
        if remaining == 0:
            break
        alpha = (M - saturated) / remaining
        lo = coeffs_sorted[i - 1] * beta if i > 0 else Fraction(0)
        hi = coeffs_sorted[i] * beta
        if lo <= alpha <= hi:
            return alpha
        saturated += coeffs_sorted[i] * beta
    raise ParameterError("no feasible alpha")  # pragma: no cover


def msr_mbr_gap_report(k_values, d_values):
    """Ratio of two-block minimum-storage bandwidth to the classical
    minimum-bandwidth value, for each (k, d) pair with d >= k.

    The ratio is at least 1 and tends to 1 as 2d - k grows.
    """
    rows = []
    for k in k_values:
        for d in d_values:
            if d < k:
                continue
            gamma_msr_2b = corner_points_two_block(1, k, d)[0].gamma
            gamma_mbr_classical = classical_corner_points(1, k, d)[1].gamma
            rows.append(
                {
                    "k": k,
                    "d": d,
                    "parity": "odd" if k % 2 else "even",
                    "ratio": gamma_msr_2b / gamma_mbr_classical,
                }
            )
    return rows
