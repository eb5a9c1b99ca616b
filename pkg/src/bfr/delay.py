"""Repair-delay sweep across block-aware and classical regenerating codes.

A failed node pulls its repair data from helper blocks in parallel, so
the time to rebuild it is set by the busiest helper block:

    delay = max over helper blocks of (symbols drawn from that block)
            * beta / (M * link speed)

normalized by the file size so that schemes with different M compare
directly.  One sweep walks every feasible parameter set of up to six
schemes on a shared cluster of ``b`` blocks with ``c = n/b`` nodes each,
``sigma`` of which are unreachable during a repair:

* ``BFR-MSR`` / ``BFR-MBR`` -- block-failure-resilient codes at the
  minimum-storage / minimum-bandwidth corner.  Repair draws ``d_r =
  d/(b-sigma)`` helpers from each reachable block, so every block moves
  the same ``d_r * beta`` load and the delay is deterministic.
* ``MSR`` / ``MBR`` -- classical regenerating codes on the same nodes,
  restricted to ``d <= n - sigma*c`` so that all ``d`` helpers fit in
  the reachable blocks.  Helpers may land anywhere, so the reported
  delay is the mean busiest-block load over every helper allocation
  (ordered counts ``d_1..d_{b-sigma}`` with ``0 <= d_i <= c`` summing
  to ``d``).
* ``MSR-SYM`` / ``MBR-SYM`` -- classical codes forced to spread their
  helpers evenly across the reachable blocks, which needs
  ``(b-sigma) | d``; same corner formulas, block-balanced delay.

Storage overhead is reported as ``n * alpha / M``.  Everything is exact
(`fractions.Fraction`); the CSV rendering converts to 12-significant-
digit decimals, so envelope comparisons must use the in-memory points,
never the rendered file.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bounds import classical_corner_points, min_bandwidth_point, min_storage_point
from .errors import EnumerationGuardError, ParameterError
from .params import SystemParams, validate_params

SCHEMES = ("BFR-MSR", "BFR-MBR", "MSR", "MBR", "MSR-SYM", "MBR-SYM")

CSV_HEADER = "overhead,delay,scheme,k,d,alpha,beta"

#: largest number of helper-allocation tuples a single sweep may enumerate
ALLOCATION_GUARD = 2_000_000


@dataclass(frozen=True)
class DelayQuery:
    """One repair-delay study: cluster shape, schemes, link speeds.

    ``bandwidth`` is either one speed shared by every reachable block or
    a sequence giving each of the ``b - sigma`` helper blocks its own
    uplink speed.  ``max_overhead``, when set, drops every point whose
    storage overhead exceeds it (the sweep fails loudly if nothing is
    left).
    """

    b: int
    n: int
    sigma: int
    schemes: tuple = SCHEMES
    bandwidth: object = 1
    max_overhead: object = None

    def __post_init__(self):
        if self.b < 2:
            raise ParameterError("need at least 2 blocks")
        if self.n < self.b or self.n % self.b:
            raise ParameterError(
                f"blocks must be equal-sized: {self.b} does not divide n={self.n}"
            )
        if not (1 <= self.sigma < self.b):
            raise ParameterError(
                f"need 1 <= sigma < b, got sigma={self.sigma}, b={self.b}"
            )
        schemes = tuple(self.schemes)
        if not schemes:
            raise ParameterError("no schemes requested")
        unknown = [s for s in schemes if s not in SCHEMES]
        if unknown:
            raise ParameterError(
                f"unknown scheme(s) {unknown}; choose from {list(SCHEMES)}"
            )
        object.__setattr__(self, "schemes", schemes)
        speeds = self.bandwidth
        if isinstance(speeds, (int, Fraction)):
            speeds = (speeds,) * (self.b - self.sigma)
        speeds = tuple(Fraction(s) for s in speeds)
        if len(speeds) != self.b - self.sigma:
            raise ParameterError(
                f"need one bandwidth per helper block: got {len(speeds)}, "
                f"expected b-sigma={self.b - self.sigma}"
            )
        if any(s <= 0 for s in speeds):
            raise ParameterError("bandwidths must be positive")
        object.__setattr__(self, "bandwidth", speeds)
        if self.max_overhead is not None:
            cap = Fraction(self.max_overhead)
            if cap <= 0:
                raise ParameterError("max_overhead must be positive when given")
            object.__setattr__(self, "max_overhead", cap)

    @property
    def c(self) -> int:
        return self.n // self.b


@dataclass(frozen=True)
class DelayPoint:
    """One (storage overhead, normalized repair delay) sample.

    ``alpha`` and ``beta`` are per unit of file size; ``rho`` and
    ``regime`` are filled for the block-aware schemes only.
    """

    scheme: str
    k: int
    d: int
    overhead: Fraction
    delay: Fraction
    alpha: Fraction
    beta: Fraction
    rho: int | None = None
    regime: str | None = None


def helper_allocations(d: int, blocks: int, cap: int) -> tuple:
    """All ordered ways to draw d helpers from `blocks` blocks of `cap` nodes."""
    if blocks < 1 or cap < 1:
        raise ParameterError("need at least one block of at least one node")
    count = (cap + 1) ** blocks
    if count > ALLOCATION_GUARD:
        raise EnumerationGuardError(
            f"helper-allocation enumeration would visit {count} tuples "
            f"(guard is {ALLOCATION_GUARD})"
        )
    allocations = tuple(
        s for s in product(range(cap + 1), repeat=blocks) if sum(s) == d
    )
    if not allocations:
        raise ParameterError(
            f"cannot place {d} helpers in {blocks} blocks of {cap} nodes"
        )
    return allocations


def _bfr_parameter_sets(query: DelayQuery):
    """Every valid block-aware parameter set on the query's cluster."""
    sets = []
    for rho in range(query.b):
        for k_c in range(1, query.c + 1):
            for d_r in range(1, query.c + 1):
                params = SystemParams(
                    n=query.n,
                    b=query.b,
                    M=1,
                    k=k_c * (query.b - rho),
                    rho=rho,
                    d=d_r * (query.b - query.sigma),
                    sigma=query.sigma,
                )
                try:
                    regime = validate_params(params)
                except ParameterError:
                    continue
                sets.append((params, regime))
    return sets


def repair_delay_sweep(query: DelayQuery) -> list:
    """Every feasible parameter set's delay point, deterministically ordered.

    Block-aware parameter sets whose minimum-storage corner does not
    exist (smallest cut coefficient zero) simply contribute no BFR-MSR
    point; their minimum-bandwidth point is still emitted.
    """
    speeds = query.bandwidth
    slowest = min(speeds)
    parts = query.b - query.sigma
    points = []

    if "BFR-MSR" in query.schemes or "BFR-MBR" in query.schemes:
        for params, regime in _bfr_parameter_sets(query):
            corners = []
            if "BFR-MSR" in query.schemes:
                try:
                    corners.append(("BFR-MSR", min_storage_point(params)))
                except ParameterError:
                    pass
            if "BFR-MBR" in query.schemes:
                corners.append(("BFR-MBR", min_bandwidth_point(params)))
            for scheme, corner in corners:
                beta = corner.gamma / params.d
                points.append(
                    DelayPoint(
                        scheme=scheme,
                        k=params.k,
                        d=params.d,
                        overhead=query.n * corner.alpha,
                        delay=params.d_r * beta / slowest,
                        alpha=corner.alpha,
                        beta=beta,
                        rho=params.rho,
                        regime=regime,
                    )
                )

    classical = [s for s in query.schemes if not s.startswith("BFR")]
    if classical:
        d_max = query.n - query.sigma * query.c
        mean_cache = {}
        for k in range(1, d_max + 1):
            for d in range(k, d_max + 1):
                msr, mbr = classical_corner_points(1, k, d)
                for scheme, corner in (("MSR", msr), ("MBR", mbr)):
                    beta = corner.gamma / d
                    if scheme in query.schemes:
                        if d not in mean_cache:
                            allocations = helper_allocations(d, parts, query.c)
                            busiest = sum(
                                max(Fraction(s[i], speeds[i]) for i in range(parts))
                                for s in allocations
                            )
                            mean_cache[d] = busiest / len(allocations)
                        points.append(
                            DelayPoint(
                                scheme=scheme,
                                k=k,
                                d=d,
                                overhead=query.n * corner.alpha,
                                delay=mean_cache[d] * beta,
                                alpha=corner.alpha,
                                beta=beta,
                            )
                        )
                    if f"{scheme}-SYM" in query.schemes and d % parts == 0:
                        points.append(
                            DelayPoint(
                                scheme=f"{scheme}-SYM",
                                k=k,
                                d=d,
                                overhead=query.n * corner.alpha,
                                delay=Fraction(d, parts) * beta / slowest,
                                alpha=corner.alpha,
                                beta=beta,
                            )
                        )

    if query.max_overhead is not None:
        points = [p for p in points if p.overhead <= query.max_overhead]
    if not points:
        raise ParameterError(
            f"empty sweep: no feasible parameter sets for b={query.b}, "
            f"n={query.n}, sigma={query.sigma}"
            + (
                f" under overhead cap {query.max_overhead}"
                if query.max_overhead is not None
                else ""
            )
        )
    points.sort(
        key=lambda p: (
            p.scheme,
            p.k,
            p.d,
            -1 if p.rho is None else p.rho,
            p.overhead,
            p.delay,
        )
    )
    return points


def decimal(value) -> str:
    """Locale-independent 12-significant-digit rendering of an exact ratio."""
    return f"{float(value):.12g}"


def render_csv(points) -> str:
    """The sweep as CSV text under the documented fixed header."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for p in points:
        writer.writerow(
            (
                decimal(p.overhead),
                decimal(p.delay),
                p.scheme,
                p.k,
                p.d,
                decimal(p.alpha),
                decimal(p.beta),
            )
        )
    return out.getvalue()


def lower_envelope(points) -> tuple:
    """Vertices of the lower convex boundary of a point cloud.

    Accepts delay points or bare (overhead, delay) pairs.  Collinear
    interior points are dropped, so a cloud that sits on a single line
    collapses to its two extreme vertices.
    """
    best = {}
    for p in points:
        o, t = (p.overhead, p.delay) if hasattr(p, "overhead") else p
        o, t = Fraction(o), Fraction(t)
        if o not in best or t < best[o]:
            best[o] = t
    if not best:
        raise ParameterError("no points to build an envelope from")
    hull = []
    for o, t in sorted(best.items()):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle vertex when it lies on or above the chord
            if (x2 - x1) * (t - y1) <= (o - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append((o, t))
    return tuple(hull)


def envelope_value(envelope, overhead) -> Fraction:
    """Evaluate a lower envelope at one overhead (exact interpolation)."""
    o = Fraction(overhead)
    if not envelope:
        raise ParameterError("empty envelope")
    if o < envelope[0][0] or o > envelope[-1][0]:
        raise ParameterError(
            f"overhead {o} outside envelope range "
            f"[{envelope[0][0]}, {envelope[-1][0]}]"
        )
    for (x1, y1), (x2, y2) in zip(envelope, envelope[1:]):
        if x1 <= o <= x2:
            return y1 + (y2 - y1) * (o - x1) / (x2 - x1)
    return envelope[-1][1]


def envelope_agreement(points, schemes):
    """Compare schemes' lower envelopes on their shared overhead range.

    Builds one envelope per scheme, intersects their overhead ranges,
    and evaluates every envelope at every vertex overhead falling in
    that range.  Returns ``(breakpoints, mismatches)``: piecewise-linear
    functions that agree at each other's breakpoints agree everywhere
    between them, so an empty mismatch list means the envelopes coincide
    over the entire shared range.
    """
    envelopes = {}
    for scheme in schemes:
        mine = [p for p in points if p.scheme == scheme]
        if not mine:
            raise ParameterError(f"no points for scheme {scheme}")
        envelopes[scheme] = lower_envelope(mine)
    lo = max(env[0][0] for env in envelopes.values())
    hi = min(env[-1][0] for env in envelopes.values())
    if lo > hi:
        return (), ()
    breakpoints = sorted(
        {x for env in envelopes.values() for x, _ in env if lo <= x <= hi}
        | {lo, hi}
    )
    mismatches = []
    for o in breakpoints:
        values = {s: envelope_value(env, o) for s, env in envelopes.items()}
        if len(set(values.values())) > 1:
            mismatches.append((o, values))
    return tuple(breakpoints), tuple(mismatches)
