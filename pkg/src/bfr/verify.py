"""Scenario-sweeping verification of encoded instances.

Takes a loaded, encoded code object and exercises it the way a cluster
would: every (or a seeded sample of every) legal data-collection choice
must decode to one and the same file, every legal repair must rebuild
exactly the symbols the failed node stored, and a collect routed through
a freshly repaired node must still return the reference file.

Each of the three categories -- ``collect``, ``repair``, ``post-repair
collect`` -- runs exhaustively when its full scenario space fits the
budget and otherwise runs ``budget`` scenarios drawn from a seeded
generator, so a report is reproducible from (instance, budget, seed)
alone.  Failures never stop the sweep; they are returned with the full
scenario description and the seed that replays them.

Corruption shows up here as a decode mismatch: a flipped payload byte
makes some collect disagree with the reference decode, or some repair
disagree with the stored shard.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import NamedTuple

from .constructions import GabMdsCode, RelaxedCode, bfr_collect, bfr_repair
from .errors import BfrError, ParameterError


class CategoryTally(NamedTuple):
    attempted: int
    passed: int
    exhaustive: bool


@dataclass(frozen=True)
class FailureRecord:
    """One failed scenario, with everything needed to replay it."""

    category: str
    scenario: tuple
    seed: int
    detail: str


class BandwidthStats(NamedTuple):
    repairs: int
    total_min: int | None
    total_max: int | None
    balanced: int  # repairs whose per-block shares were all equal


@dataclass(frozen=True)
class ScenarioReport:
    instance: str
    seed: int
    collect: CategoryTally
    repair: CategoryTally
    post_repair: CategoryTally
    bandwidth: BandwidthStats
    achieved: tuple  # (alpha, gamma) actually observed; gamma None without repairs
    predicted: tuple | None  # (alpha, gamma) from the parameter record
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def _shape(code):
    if isinstance(code, GabMdsCode):
        return code.b, code.c, code.k_c, code.rho, None, None
    p = code.params
    return p.b, p.c, p.k_c, p.rho, p.d_r, p.sigma


def _supports_repair(code) -> bool:
    return not isinstance(code, GabMdsCode)


# ---------------------------------------------------------------------------
# legal node subsets per construction family


def _collect_node_sets(code):
    """Every node subset one block may legally contribute to a collect."""
    if isinstance(code, RelaxedCode):
        per_type = []
        for t in range(code.kappa):
            nodes = range(t * code.c_type, (t + 1) * code.c_type)
            per_type.append(list(combinations(nodes, code.k_quota)))
        return [sum(combo, ()) for combo in product(*per_type)]
    _, c, k_c, *_ = _shape(code)
    return list(combinations(range(c), k_c))


def _collect_sets_per_block(code) -> int:
    if isinstance(code, RelaxedCode):
        return math.comb(code.c_type, code.k_quota) ** code.kappa
    _, c, k_c, *_ = _shape(code)
    return math.comb(c, k_c)


def _random_collect_nodes(code, rng):
    if isinstance(code, RelaxedCode):
        chosen = []
        for t in range(code.kappa):
            lo = t * code.c_type
            chosen.extend(rng.sample(range(lo, lo + code.c_type), code.k_quota))
        return tuple(sorted(chosen))
    _, c, k_c, *_ = _shape(code)
    return tuple(sorted(rng.sample(range(c), k_c)))


def _repair_node_sets(code, failed, helper_block):
    """Every node subset one helper block may legally serve a repair with."""
    if isinstance(code, RelaxedCode):
        blk, idx = failed
        designated = code.helper_types(blk, code.node_type(idx), helper_block)
        per_type = []
        for t in sorted(set(designated.values())):
            nodes = range(t * code.c_type, (t + 1) * code.c_type)
            per_type.append(list(combinations(nodes, code.d_quota)))
        return [sum(combo, ()) for combo in product(*per_type)]
    _, c, _, _, d_r, _ = _shape(code)
    return list(combinations(range(c), d_r))


def _repair_sets_per_helper(code) -> int:
    if isinstance(code, RelaxedCode):
        return math.comb(code.c_type, code.d_quota) ** code.kappa
    _, c, _, _, d_r, _ = _shape(code)
    return math.comb(c, d_r)


def _random_repair_nodes(code, failed, helper_block, rng):
    if isinstance(code, RelaxedCode):
        blk, idx = failed
        designated = code.helper_types(blk, code.node_type(idx), helper_block)
        chosen = []
        for t in sorted(set(designated.values())):
            lo = t * code.c_type
            chosen.extend(rng.sample(range(lo, lo + code.c_type), code.d_quota))
        return tuple(sorted(chosen))
    _, c, _, _, d_r, _ = _shape(code)
    return tuple(sorted(rng.sample(range(c), d_r)))


# ---------------------------------------------------------------------------
# scenario generators


def _collect_scenarios(code, budget: int, rng):
    b, _, _, rho, *_ = _shape(code)
    block_sets = list(combinations(range(b), b - rho))
    space = len(block_sets) * _collect_sets_per_block(code) ** (b - rho)
    if space <= budget:
        node_sets = _collect_node_sets(code)
        scenarios = [
            (blocks, dict(zip(blocks, combo)))
            for blocks in block_sets
            for combo in product(node_sets, repeat=len(blocks))
        ]
        return scenarios, True
    scenarios = []
    for _ in range(budget):
        blocks = tuple(sorted(rng.sample(range(b), b - rho)))
        scenarios.append(
            (blocks, {bi: _random_collect_nodes(code, rng) for bi in blocks})
        )
    return scenarios, False


def _repair_scenarios(code, budget: int, rng):
    b, c, _, _, _, sigma = _shape(code)
    helper_count = b - sigma
    space = (
        b
        * c
        * math.comb(b - 1, helper_count)
        * _repair_sets_per_helper(code) ** helper_count
    )
    if space <= budget:
        scenarios = []
        for blk in range(b):
            others = [x for x in range(b) if x != blk]
            for idx in range(c):
                failed = (blk, idx)
                for helpers in combinations(others, helper_count):
                    per_helper = [
                        _repair_node_sets(code, failed, hb) for hb in helpers
                    ]
                    for combo in product(*per_helper):
                        scenarios.append((failed, helpers, dict(zip(helpers, combo))))
        return scenarios, True
    scenarios = []
    for _ in range(budget):
        failed = (rng.randrange(b), rng.randrange(c))
        others = [x for x in range(b) if x != failed[0]]
        helpers = tuple(sorted(rng.sample(others, helper_count)))
        scenarios.append(
            (
                failed,
                helpers,
                {
                    hb: _random_repair_nodes(code, failed, hb, rng)
                    for hb in helpers
                },
            )
        )
    return scenarios, False


def _post_collect_choice(code, block, idx):
    """A deterministic collect choice that routes through one given node."""
    b, c, k_c, rho, *_ = _shape(code)
    blocks = next(
        bs for bs in combinations(range(b), b - rho) if block in bs
    )
    nodes = {}
    for bi in blocks:
        if bi != block:
            nodes[bi] = _first_collect_nodes(code)
            continue
        if isinstance(code, RelaxedCode):
            chosen = []
            for t in range(code.kappa):
                lo = t * code.c_type
                pool = [x for x in range(lo, lo + code.c_type) if x != idx]
                want = code.k_quota
                if t == code.node_type(idx):
                    chosen.append(idx)
                    want -= 1
                chosen.extend(pool[:want])
            nodes[bi] = tuple(sorted(chosen))
        else:
            rest = [x for x in range(c) if x != idx]
            nodes[bi] = tuple(sorted([idx] + rest[: k_c - 1]))
    return blocks, nodes


def _first_collect_nodes(code):
    if isinstance(code, RelaxedCode):
        chosen = []
        for t in range(code.kappa):
            lo = t * code.c_type
            chosen.extend(range(lo, lo + code.k_quota))
        return tuple(chosen)
    _, c, k_c, *_ = _shape(code)
    return tuple(range(k_c))


# ---------------------------------------------------------------------------
# the sweep


def verify_exhaustive(code, budget: int, seed: int = 0) -> ScenarioReport:
    """Run collect / repair / repair-then-collect scenarios against a code.

    Each category is exhaustive when its scenario space is at most
    ``budget`` and otherwise samples ``budget`` scenarios from
    ``random.Random(seed)``.  The returned report is deterministic for a
    given (instance, budget, seed) triple.
    """
    if budget < 1:
        raise ParameterError("budget must be positive")
    if code.shards is None:
        raise ParameterError("instance holds no data; encode or load it first")
    rng = random.Random(seed)
    failures = []

    alpha_seen = {len(vec) for vec in code.shards.values()}
    achieved_alpha = max(alpha_seen)
    if len(alpha_seen) != 1:
        failures.append(
            FailureRecord(
                "collect",
                ("storage",),
                seed,
                f"nodes store unequal symbol counts {sorted(alpha_seen)}",
            )
        )

    # -- collect ----------------------------------------------------------
    scenarios, exhaustive = _collect_scenarios(code, budget, rng)
    reference = None
    passed = 0
    for blocks, nodes in scenarios:
        scenario = ("collect", blocks, tuple(sorted(nodes.items())))
        try:
            decoded = bfr_collect(code, blocks, nodes)
        except BfrError as exc:
            failures.append(FailureRecord("collect", scenario, seed, str(exc)))
            continue
        if reference is None:
            reference = decoded
        if decoded == reference:
            passed += 1
        else:
            failures.append(
                FailureRecord(
                    "collect",
                    scenario,
                    seed,
                    "decoded file differs from the reference decode",
                )
            )
    collect_tally = CategoryTally(len(scenarios), passed, exhaustive)

    # -- repair -----------------------------------------------------------
    repaired = []  # (failed, rebuilt) for the chains below
    totals = []
    balanced = 0
    if _supports_repair(code):
        scenarios, exhaustive = _repair_scenarios(code, budget, rng)
        passed = 0
        for failed, helpers, nodes in scenarios:
            scenario = ("repair", failed, helpers, tuple(sorted(nodes.items())))
            try:
                rebuilt, report = bfr_repair(code, failed, helpers, nodes)
            except BfrError as exc:
                failures.append(FailureRecord("repair", scenario, seed, str(exc)))
                continue
            totals.append(report.total)
            balanced += report.even_shares()
            if tuple(rebuilt) == tuple(code.shards[failed]):
                passed += 1
                repaired.append((failed, tuple(rebuilt)))
            else:
                failures.append(
                    FailureRecord(
                        "repair",
                        scenario,
                        seed,
                        f"rebuilt node {failed} differs from its stored shard",
                    )
                )
        repair_tally = CategoryTally(len(scenarios), passed, exhaustive)
    else:
        repair_tally = CategoryTally(0, 0, True)

    # -- repair-then-collect chains --------------------------------------
    chains = repaired[:budget]
    passed = 0
    for failed, rebuilt in chains:
        blocks, nodes = _post_collect_choice(code, *failed)
        scenario = ("post-repair", failed, blocks, tuple(sorted(nodes.items())))
        original = code.shards
        patched = dict(original)
        patched[failed] = rebuilt
        code.shards = patched
        try:
            decoded = bfr_collect(code, blocks, nodes)
        except BfrError as exc:
            failures.append(FailureRecord("post-repair", scenario, seed, str(exc)))
            continue
        finally:
            code.shards = original
        if decoded == reference:
            passed += 1
        else:
            failures.append(
                FailureRecord(
                    "post-repair",
                    scenario,
                    seed,
                    "collect through the repaired node differs from the reference",
                )
            )
    post_tally = CategoryTally(len(chains), passed, repair_tally.exhaustive)

    params = getattr(code, "params", None)
    predicted = (
        (params.alpha, params.d * params.beta) if params is not None else None
    )
    achieved_gamma = totals[0] if totals and len(set(totals)) == 1 else None
    return ScenarioReport(
        instance=f"{code.construction} {json.dumps(code.describe(), sort_keys=True)}",
        seed=seed,
        collect=collect_tally,
        repair=repair_tally,
        post_repair=post_tally,
        bandwidth=BandwidthStats(
            repairs=len(totals),
            total_min=min(totals) if totals else None,
            total_max=max(totals) if totals else None,
            balanced=balanced,
        ),
        achieved=(achieved_alpha, achieved_gamma),
        predicted=predicted,
        failures=tuple(failures),
    )


def render_report(report: ScenarioReport) -> str:
    """Human-readable summary, one line per fact."""
    lines = [f"instance: {report.instance}", f"seed: {report.seed}"]
    for name, tally in (
        ("collect", report.collect),
        ("repair", report.repair),
        ("post-repair collect", report.post_repair),
    ):
        mode = "exhaustive" if tally.exhaustive else "sampled"
        lines.append(f"{name}: {tally.passed}/{tally.attempted} passed ({mode})")
    bw = report.bandwidth
    if bw.repairs:
        span = (
            f"{bw.total_min}"
            if bw.total_min == bw.total_max
            else f"{bw.total_min}..{bw.total_max}"
        )
        lines.append(
            f"repair bandwidth: {span} symbols per repair, "
            f"evenly split across blocks in {bw.balanced}/{bw.repairs}"
        )
    lines.append(f"achieved (alpha, gamma): {report.achieved}")
    lines.append(f"predicted (alpha, gamma): {report.predicted}")
    if report.failures:
        lines.append(f"failures: {len(report.failures)}")
        for rec in report.failures:
            lines.append(f"  [{rec.category}] seed={rec.seed} {rec.scenario}: {rec.detail}")
    else:
        lines.append("failures: none")
    return "\n".join(lines) + "\n"
