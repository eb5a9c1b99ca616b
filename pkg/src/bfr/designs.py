"""Combinatorial block designs used to place coded symbols.

Three families are generated here, all with deterministic, bit-stable
orderings:

* projective planes of prime order (subspace enumeration over GF(p)),
* duplicated combination block designs (all kappa-subsets of a base
  point set, repeated over groups with disjoint labels),
* resolvable designs from affine planes (parallel classes of lines,
  vertical lines first, then one class per slope).

Designs serialize to a line-oriented text format: a ``v kappa lambda``
header, one block per line as space-separated point ids, and ``%``
lines separating parallel classes.  A design whose pair concurrency is
not constant (the duplicated-combination family) is written with
lambda = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import ParameterError
from .fields import is_prime


@dataclass(frozen=True)
class BlockDesign:
    """A block design on points {1..v}; lam = 0 means "not pair-balanced"."""

    v: int
    kappa: int
    lam: int
    blocks: tuple

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def r(self) -> int:
        """Replication number (blocks through a point; must be constant)."""
        counts = point_replications(self)
        values = set(counts.values())
        if len(values) != 1:
            raise ParameterError("replication is not constant across points")
        return values.pop()

    def blocks_through(self, point: int) -> list:
        return [i for i, blk in enumerate(self.blocks) if point in blk]


@dataclass(frozen=True)
class ResolvableDesign:
    """A block design plus a partition of its blocks into parallel classes."""

    design: BlockDesign
    classes: tuple  # tuple of tuples of block indices

    def class_blocks(self, c: int) -> list:
        return [self.design.blocks[i] for i in self.classes[c]]


@dataclass(frozen=True)
class DcbdDesign:
    """Duplicated combination block design.

    ``reps`` groups of ``v_base`` points each (disjoint labels); every
    block takes the same-position ``kappa_base``-subset from each group,
    so a block has ``reps * kappa_base`` points and there are
    C(v_base, kappa_base) blocks.
    """

    v_base: int
    kappa_base: int
    reps: int
    blocks: tuple

    @property
    def v(self) -> int:
        return self.v_base * self.reps

    @property
    def kappa(self) -> int:
        return self.kappa_base * self.reps

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def r(self) -> int:
        return comb(self.v_base - 1, self.kappa_base - 1)

    def group_points(self, g: int) -> range:
        lo = g * self.v_base + 1
        return range(lo, lo + self.v_base)

    def group_subset(self, block_idx: int, g: int) -> tuple:
        lo, hi = g * self.v_base + 1, (g + 1) * self.v_base
        return tuple(x for x in self.blocks[block_idx] if lo <= x <= hi)

    def as_block_design(self) -> BlockDesign:
        return BlockDesign(self.v, self.kappa, 0, self.blocks)


def point_replications(d: BlockDesign) -> dict:
    counts = {p: 0 for p in range(1, d.v + 1)}
    for blk in d.blocks:
        for p in blk:
            counts[p] += 1
    return counts


# ---------------------------------------------------------------------------
# projective planes


def _normalized_triples(p: int) -> list:
    """Projective points over GF(p): first nonzero coordinate scaled to 1."""
    out = []
    for t in itertools.product(range(p), repeat=3):
        if t == (0, 0, 0):
            continue
        lead = next(x for x in t if x)
        if lead == 1:
            out.append(t)
    return out


def projective_plane(p: int) -> BlockDesign:
    """The projective plane of prime order p as a (p²+p+1, p+1, 1) design.

    Points and lines are the normalized triples over GF(p) in
    lexicographic order; a point lies on a line when the dot product
    vanishes.  Blocks are returned sorted by their point sets.
    """
    if not is_prime(p):
        raise ParameterError(f"projective plane order must be prime, got {p}")
    pts = _normalized_triples(p)
    index = {t: i + 1 for i, t in enumerate(pts)}
    blocks = []
    for line in pts:
        blk = tuple(
            sorted(
                index[q]
                for q in pts
                if sum(a * b for a, b in zip(line, q)) % p == 0
            )
        )
        blocks.append(blk)
    blocks.sort()
    return BlockDesign(v=len(pts), kappa=p + 1, lam=1, blocks=tuple(blocks))


# ---------------------------------------------------------------------------
# duplicated combination block designs


def _combination_order(v: int, kappa: int) -> list:
    """Canonical enumeration of the kappa-subsets of {1..v}.

    Subsets are ordered so their complements ascend co-lexicographically,
    then the whole list is rotated left by one; this reproduces the
    customary printed form (the first block omits point 2, the last
    omits point 1, for kappa = v - 1).
    """
    subsets = [tuple(sorted(s)) for s in itertools.combinations(range(1, v + 1), kappa)]
    subsets.sort(
        key=lambda s: tuple(sorted(set(range(1, v + 1)) - set(s), reverse=True))
    )
    return subsets[1:] + subsets[:1]


def dcbd(v_base: int, kappa_base: int, reps: int) -> DcbdDesign:
    if not (1 <= kappa_base < v_base):
        raise ParameterError(
            f"need 1 <= kappa_base < v_base, got {kappa_base}, {v_base}"
        )
    if reps < 1:
        raise ParameterError("repetition count must be positive")
    order = _combination_order(v_base, kappa_base)
    blocks = []
    for subset in order:
        row = []
        for g in range(reps):
            row.extend(g * v_base + x for x in subset)
        blocks.append(tuple(row))
    return DcbdDesign(v_base, kappa_base, reps, tuple(blocks))


# ---------------------------------------------------------------------------
# resolvable designs from affine planes


def rbibd_affine(p: int) -> ResolvableDesign:
    """The (p², p, 1) resolvable design of lines of the affine plane.

    Point (x, y) of GF(p)² gets id p*x + y + 1.  The first parallel
    class holds the vertical lines (x constant); then one class per
    slope m, whose blocks are the lines y = m*x + c ordered by c.
    """
    if not is_prime(p):
        raise ParameterError(f"affine plane order must be prime, got {p}")

    def pid(x, y):
        return p * x + y + 1

    blocks = []
    classes = []
    nxt = 0
    vertical = []
    for c in range(p):
        blocks.append(tuple(pid(c, y) for y in range(p)))
        vertical.append(nxt)
        nxt += 1
    classes.append(tuple(vertical))
    for m in range(p):
        cls = []
        for c in range(p):
            blocks.append(tuple(sorted(pid(x, (m * x + c) % p) for x in range(p))))
            cls.append(nxt)
            nxt += 1
        classes.append(tuple(cls))
    design = BlockDesign(v=p * p, kappa=p, lam=1, blocks=tuple(blocks))
    return ResolvableDesign(design, tuple(classes))


# ---------------------------------------------------------------------------
# verification


@dataclass
class DesignReport:
    violations: list
    r: int | None
    b: int

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_design(d) -> DesignReport:
    """Check the design axioms; violations are reported, not raised."""
    if isinstance(d, DcbdDesign):
        return _verify_dcbd(d)
    if isinstance(d, ResolvableDesign):
        report = _verify_block_design(d.design)
        _verify_resolvability(d, report)
        return report
    return _verify_block_design(d)


def _verify_block_design(d: BlockDesign) -> DesignReport:
    violations = []
    for i, blk in enumerate(d.blocks):
        if len(set(blk)) != d.kappa:
            violations.append(f"block {i} has {len(set(blk))} points, expected {d.kappa}")
        if any(not (1 <= x <= d.v) for x in blk):
            violations.append(f"block {i} has out-of-range points")
    counts = point_replications(d)
    reps = set(counts.values())
    r = reps.pop() if len(reps) == 1 else None
    if r is None:
        violations.append("replication is not constant across points")
    if d.lam > 0:
        pair_counts = {}
        for blk in d.blocks:
            for a, bpt in itertools.combinations(sorted(set(blk)), 2):
                pair_counts[(a, bpt)] = pair_counts.get((a, bpt), 0) + 1
        for a, bpt in itertools.combinations(range(1, d.v + 1), 2):
            got = pair_counts.get((a, bpt), 0)
            if got != d.lam:
                violations.append(
                    f"pair ({a},{bpt}) lies in {got} blocks, expected {d.lam}"
                )
        expected_r = d.lam * (d.v - 1)
        if expected_r % (d.kappa - 1):
            violations.append("r = lambda(v-1)/(kappa-1) is not integral")
        elif r is not None and r != expected_r // (d.kappa - 1):
            violations.append(
                f"replication {r} differs from lambda(v-1)/(kappa-1)"
            )
        if r is not None:
            if (d.v * r) % d.kappa:
                violations.append("b = vr/kappa is not integral")
            elif len(d.blocks) != d.v * r // d.kappa:
                violations.append(
                    f"{len(d.blocks)} blocks, expected vr/kappa = {d.v * r // d.kappa}"
                )
    if d.lam == 1 and d.v == len(d.blocks):
        # symmetric case: every two blocks must meet in exactly one point
        for i, j in itertools.combinations(range(len(d.blocks)), 2):
            meet = set(d.blocks[i]) & set(d.blocks[j])
            if len(meet) != 1:
                violations.append(
                    f"blocks {i} and {j} meet in {len(meet)} points, expected 1"
                )
    return DesignReport(violations, r, len(d.blocks))


def _verify_resolvability(rd: ResolvableDesign, report: DesignReport):
    d = rd.design
    seen = []
    for ci, cls in enumerate(rd.classes):
        covered = []
        for bi in cls:
            covered.extend(d.blocks[bi])
        if sorted(covered) != list(range(1, d.v + 1)):
            report.violations.append(f"class {ci} does not partition the points")
        seen.extend(cls)
    if sorted(seen) != list(range(len(d.blocks))):
        report.violations.append("classes do not partition the block list")


def _verify_dcbd(d: DcbdDesign) -> DesignReport:
    violations = []
    expected_b = comb(d.v_base, d.kappa_base)
    if len(d.blocks) != expected_b:
        violations.append(f"{len(d.blocks)} blocks, expected {expected_b}")
    for g in range(d.reps):
        seen = sorted(d.group_subset(i, g) for i in range(len(d.blocks)))
        want = sorted(
            tuple(g * d.v_base + x for x in s)
            for s in itertools.combinations(range(1, d.v_base + 1), d.kappa_base)
        )
        if seen != want:
            violations.append(f"group {g} rows are not all {d.kappa_base}-subsets")
    return DesignReport(violations, d.r, len(d.blocks))


# ---------------------------------------------------------------------------
# text serialization


def design_to_text(d) -> str:
    if isinstance(d, DcbdDesign):
        d = d.as_block_design()
    if isinstance(d, ResolvableDesign):
        lines = [f"{d.design.v} {d.design.kappa} {d.design.lam}"]
        for ci, cls in enumerate(d.classes):
            if ci:
                lines.append("%")
            for bi in cls:
                lines.append(" ".join(map(str, d.design.blocks[bi])))
        return "\n".join(lines) + "\n"
    lines = [f"{d.v} {d.kappa} {d.lam}"]
    for blk in d.blocks:
        lines.append(" ".join(map(str, blk)))
    return "\n".join(lines) + "\n"


def design_from_text(text: str):
    rows = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not rows:
        raise ParameterError("empty design text")
    head = rows[0].split()
    if len(head) != 3:
        raise ParameterError("header must be 'v kappa lambda'")
    v, kappa, lam = map(int, head)
    blocks = []
    classes = []
    current = []
    for ln in rows[1:]:
        if ln == "%":
            classes.append(tuple(current))
            current = []
            continue
        blk = tuple(int(x) for x in ln.split())
        current.append(len(blocks))
        blocks.append(blk)
    design = BlockDesign(v, kappa, lam, tuple(blocks))
    if classes:
        classes.append(tuple(current))
        return ResolvableDesign(design, tuple(classes))
    return design
