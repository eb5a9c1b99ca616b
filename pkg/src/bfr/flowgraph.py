"""Information-flow-graph min-cut oracle.

Independent check of the closed-form bounds: simulate every order in
which the data collector's k_c(b-rho) nodes could have failed and been
repaired, build the flow graph of that history (source -> original
data, beta-capacity download edges into each repaired node, alpha
through it, repaired nodes -> collector), and take the exact max-flow.
The file can never exceed the minimum over histories.

Helper attachment uses the cut-minimizing greedy rule: each repair
draws on as many previously repaired nodes as allowed (they are the
cheap side of the cut; a fresh helper's download is backed by the
source and can only cost more when alpha >= beta).  An exhaustive
attachment mode double-checks the greedy rule on tiny instances by
enumerating every admissible helper-block set and helper-node subset.

Failure orders are enumerated up to renaming of blocks (all blocks are
interchangeable before any failure), which cuts the order count by up
to (b-rho)! without affecting the minimum or maximum.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import EnumerationGuardError, ParameterError
from .params import SystemParams, validate_params

EXHAUSTIVE_EVENT_LIMIT = 10
EXHAUSTIVE_ATTACHMENT_EVENT_LIMIT = 6


@dataclass(frozen=True)
class OracleReport:
    value: Fraction
    max_value: Fraction
    order_invariant: bool
    orders_checked: int
    sampled: bool
    attachment: str

    @property
    def minimizing_is_unique_value(self) -> bool:
        return self.order_invariant


def max_flow(capacities: dict, s, t) -> int:
    """Exact integer max-flow (shortest augmenting paths)."""
    residual = {}
    for u, edges in capacities.items():
        residual.setdefault(u, {})
        for v, cap in edges.items():
            residual[u][v] = residual[u].get(v, 0) + cap
            residual.setdefault(v, {}).setdefault(u, 0)
    total = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v, cap in residual[u].items():
                if cap > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return total
        bottleneck = None
        v = t
        while parent[v] is not None:
            u = parent[v]
            cap = residual[u][v]
            bottleneck = cap if bottleneck is None else min(bottleneck, cap)
            v = u
        v = t
        while parent[v] is not None:
            u = parent[v]
            residual[u][v] -= bottleneck
            residual[v][u] += bottleneck
            v = u
        total += bottleneck


def canonical_orders(blocks: int, per_block: int):
    """Failure orders as block-label sequences, one per renaming class.

    A sequence is canonical when block labels first appear in increasing
    order; every multiset permutation is a relabeling of exactly one
    canonical sequence.
    """

    total = blocks * per_block

    def extend(seq, counts, used):
        if len(seq) == total:
            yield tuple(seq)
            return
        for j in range(min(used + 1, blocks)):
            if counts[j] == per_block:
                continue
            counts[j] += 1
            seq.append(j)
            yield from extend(seq, counts, used + (1 if j == used else 0))
            seq.pop()
            counts[j] -= 1

    yield from extend([], [0] * blocks, 0)


def all_orders(blocks: int, per_block: int):
    """Every distinct multiset permutation (no symmetry reduction)."""
    base = []
    for j in range(blocks):
        base.extend([j] * per_block)
    seen = set()
    for perm in itertools.permutations(base):
        if perm not in seen:
            seen.add(perm)
            yield perm


def _greedy_helpers(order, i, b, d_r, helpers_needed):
    """Helper blocks and per-block repaired-helper counts for event i."""
    own = order[i]
    repaired_before = {}
    for e in range(i):
        repaired_before.setdefault(order[e], []).append(e)
    candidates = []
    for j in range(b):
        if j == own:
            continue
        events = repaired_before.get(j, [])
        candidates.append((-min(len(events), d_r), j))
    candidates.sort()
    chosen = []
    for neg_used, j in candidates[:helpers_needed]:
        used = -neg_used
        chosen.append((j, repaired_before.get(j, [])[:used]))
    return chosen


def build_order_graph(order, p: SystemParams, alpha_scaled: int, beta_scaled: int):
    """Flow graph of one failure history under greedy helper attachment."""
    b, d_r = p.b, p.d_r
    helpers_needed = b - p.sigma
    S, T = "S", "T"
    cap = {S: {}, T: {}}
    inf = (alpha_scaled + p.d * beta_scaled) * (len(order) + 1)
    for i in range(len(order)):
        x_in, x_out = ("in", i), ("out", i)
        cap[x_in] = {x_out: alpha_scaled}
        cap[x_out] = {T: inf}
        fresh = 0
        for j, events in _greedy_helpers(order, i, b, d_r, helpers_needed):
            for e in events:
                cap[("out", e)][x_in] = cap[("out", e)].get(x_in, 0) + beta_scaled
            fresh += d_r - len(events)
        if fresh:
            cap[S][x_in] = fresh * beta_scaled
    return cap, S, T


def _attachment_choices(order, i, p: SystemParams):
    """All admissible (helper blocks, repaired-subset per block) choices."""
    b, c, d_r = p.b, p.c, p.d_r
    own = order[i]
    repaired_before = {}
    for e in range(i):
        repaired_before.setdefault(order[e], []).append(e)
    others = [j for j in range(b) if j != own]
    for blocks in itertools.combinations(others, b - p.sigma):
        per_block_options = []
        for j in blocks:
            events = repaired_before.get(j, [])
            lo = max(0, d_r - (c - len(events)))
            options = []
            for take in range(lo, min(d_r, len(events)) + 1):
                options.extend(itertools.combinations(events, take))
            per_block_options.append(options)
        for combo in itertools.product(*per_block_options):
            yield list(zip(blocks, combo))


def _exhaustive_order_value(order, p: SystemParams, alpha_scaled, beta_scaled):
    """Min over every admissible helper topology for one order (tiny only)."""
    d_r = p.d_r
    S, T = "S", "T"
    best = None

    def rec(i, partial_edges):
        nonlocal best
        if i == len(order):
            cap = {S: {}, T: {}}
            inf = (alpha_scaled + p.d * beta_scaled) * (len(order) + 1)
            for e in range(len(order)):
                cap[("in", e)] = {("out", e): alpha_scaled}
                cap[("out", e)] = {T: inf}
            for (src, dst), weight in partial_edges.items():
                cap.setdefault(src, {})[dst] = weight
            value = max_flow(cap, S, T)
            if best is None or value < best:
                best = value
            return
        for choice in _attachment_choices(order, i, p):
            edges = dict(partial_edges)
            fresh = 0
            for j, events in choice:
                for e in events:
                    key = (("out", e), ("in", i))
                    edges[key] = edges.get(key, 0) + beta_scaled
                fresh += d_r - len(events)
            if fresh:
                key = (S, ("in", i))
                edges[key] = edges.get(key, 0) + fresh * beta_scaled
            rec(i + 1, edges)

    rec(0, {})
    return best


def mincut_oracle(
    params: SystemParams,
    alpha,
    beta,
    mode: str = "exhaustive",
    samples: int = 200,
    seed: int = 0,
    attachment: str = "greedy",
) -> OracleReport:
    """Minimum over failure histories of the flow-graph max-flow.

    ``mode`` picks the order enumeration: ``exhaustive`` walks every
    canonical order (guarded by the event-count limit), ``sampled``
    draws random orders with the given seed.  ``attachment`` is
    ``greedy`` (cut-minimizing rule) or ``exhaustive`` (all topologies;
    tiny instances only).
    """
    validate_params(params)
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise ParameterError("alpha and beta must be positive")
    if alpha < beta:
        raise ParameterError("alpha < beta: a helper cannot send more than it stores")
    blocks = params.b - params.rho
    per_block = params.k_c
    events = blocks * per_block
    if mode == "exhaustive":
        if events > EXHAUSTIVE_EVENT_LIMIT:
            raise EnumerationGuardError(
                f"{events} repair events exceed the exhaustive limit "
                f"{EXHAUSTIVE_EVENT_LIMIT}; use sampled mode"
            )
        orders = list(canonical_orders(blocks, per_block))
        sampled = False
    elif mode == "sampled":
        rng = random.Random(seed)
        base = []
        for j in range(blocks):
            base.extend([j] * per_block)
        orders = []
        for _ in range(samples):
            shuffled = base[:]
            rng.shuffle(shuffled)
            orders.append(tuple(shuffled))
        sampled = True
    else:
        raise ParameterError(f"unknown oracle mode {mode!r}")
    if attachment == "exhaustive" and events > EXHAUSTIVE_ATTACHMENT_EVENT_LIMIT:
        raise EnumerationGuardError(
            f"{events} repair events exceed the exhaustive-attachment limit "
            f"{EXHAUSTIVE_ATTACHMENT_EVENT_LIMIT}"
        )
    if attachment not in ("greedy", "exhaustive"):
        raise ParameterError(f"unknown attachment rule {attachment!r}")
    scale = lcm(alpha.denominator, beta.denominator)
    a_scaled = int(alpha * scale)
    b_scaled = int(beta * scale)
    best = worst = None
    for order in orders:
        if attachment == "greedy":
            cap, S, T = build_order_graph(order, params, a_scaled, b_scaled)
            value = max_flow(cap, S, T)
        else:
            value = _exhaustive_order_value(order, params, a_scaled, b_scaled)
        if best is None or value < best:
            best = value
        if worst is None or value > worst:
            worst = value
    return OracleReport(
        value=Fraction(best, scale),
        max_value=Fraction(worst, scale),
        order_invariant=(best == worst),
        orders_checked=len(orders),
        sampled=sampled,
        attachment=attachment,
    )
