"""Block-organized storage codes: encoding, data collection, repair.

Five constructions share the node/block model of ``params``:

* transpose placement -- two blocks storing the rows and the columns of
  an MDS-coded square matrix; repair of a row node reads one symbol
  from every column node and vice versa.
* symmetric-design placement -- one regenerating sub-code per design
  point ("partition"); every storage block hosts the partitions of one
  design block, and any two blocks share exactly one partition, which
  carries the cross-block repair traffic.  Covers projective planes and
  the hand-wired three-block layout.
* duplicated-combination placement -- the sub-codes are spread over
  repetition groups so that repair tolerates ``sigma`` unavailable
  blocks; the per-group partition missing from exactly one helper is
  served by the others, and "common" partitions are scheduled
  round-robin so every helper block ships the same number of symbols.
* rank-metric outer code with per-block MDS expansion -- data collection
  only: any ``b - rho`` blocks with any ``k_c`` nodes each retain full
  rank and decode.
* resolvable-design placement -- table-based variant: blocks are the
  parallel classes of an affine plane, nodes come in ``types`` (one
  design block each), and collection/repair quotas are per type rather
  than per block.

Collect and repair meter bandwidth exactly: a repair downloads
``beta`` symbols from each of ``d`` helper nodes, split evenly across
helper blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .classic import GabidulinCode, mds_code
from .errors import ParameterError, UnrecoverableErasureError
from .fields import BinaryExtField, PrimeField, TowerField, smallest_binary_field
from .params import SystemParams, validate_params
from .regenerating import RegenCode, RegenParams
from . import designs


@dataclass
class BandwidthReport:
    """Symbols shipped during one repair, total and per helper block."""

    total: int
    per_block: dict

    def even_shares(self) -> bool:
        return len(set(self.per_block.values())) == 1


@dataclass(frozen=True)
class CodewordLayout:
    """Where each stored symbol comes from: (partition, symbol index)."""

    construction: str
    partitions: int
    placement: dict  # (block, node) -> tuple of (partition, symbol_index)

    def check(self, alpha: int):
        for key, entries in self.placement.items():
            if len(entries) != alpha:
                raise ParameterError(f"node {key} stores {len(entries)} != {alpha}")

    def coverage(self) -> dict:
        """How often each (partition, symbol index) is stored somewhere."""
        counts = {}
        for entries in self.placement.values():
            for entry in entries:
                counts[entry] = counts.get(entry, 0) + 1
        return counts


def _chunk(file, index, size):
    return list(file[index * size : (index + 1) * size])


def _check_file(field, file, expected):
    if len(file) != expected:
        raise ParameterError(f"expected {expected} file symbols, got {len(file)}")
    for s in file:
        if not field.element_ok(s):
            raise ParameterError("file symbol outside the code's field")


# ---------------------------------------------------------------------------
# Construction: transpose placement (two blocks)


class TransposeCode:
    """Rows and columns of an MDS-coded square matrix as the two blocks."""

    construction = "transpose"

    def __init__(self, n: int, k: int, field=None, points=None):
        if n % 2 or n < 4:
            raise ParameterError(f"need even n >= 4, got {n}")
        if k % 2 or not (2 <= k <= n // 2):
            raise ParameterError(f"need even k with 2 <= k <= n/2, got k={k}")
        alpha = n // 2
        M = k * alpha - (k // 2) ** 2
        self.alpha = alpha
        self.mds = mds_code(alpha * alpha, M, field=field, points=points)
        self.field = self.mds.field
        self.params = SystemParams(
            n=n, b=2, M=M, k=k, rho=0, d=alpha, sigma=1, alpha=alpha, beta=1
        )
        validate_params(self.params)
        self.shards = None

    def encode(self, file: Sequence):
        _check_file(self.field, file, self.params.M)
        word = self.mds.encode(file)
        a = self.alpha
        shards = {}
        for i in range(a):
            shards[(0, i)] = tuple(word[i * a + j] for j in range(a))
            shards[(1, i)] = tuple(word[j * a + i] for j in range(a))
        self.shards = shards
        return self

    def layout(self) -> CodewordLayout:
        a = self.alpha
        placement = {}
        for i in range(a):
            placement[(0, i)] = tuple((0, i * a + j) for j in range(a))
            placement[(1, i)] = tuple((0, j * a + i) for j in range(a))
        return CodewordLayout(self.construction, 1, placement)

    def describe(self) -> dict:
        return {"n": self.params.n, "k": self.params.k}

    def collect_from(self, chosen_blocks, chosen_nodes) -> tuple:
        a = self.alpha
        available = {}
        for blk in chosen_blocks:
            for node in chosen_nodes[blk]:
                vec = self.shards[(blk, node)]
                for t in range(a):
                    idx = node * a + t if blk == 0 else t * a + node
                    available[idx] = vec[t]
        return tuple(self.mds.decode(available))

    def repair_node(self, failed, helper_blocks, helper_nodes):
        blk, idx = failed
        (hb,) = helper_blocks
        helpers = list(helper_nodes[hb])
        if sorted(helpers) != list(range(self.alpha)):
            raise ParameterError(
                "transpose repair reads one symbol from every node of the other block"
            )
        vec = []
        for j in helpers:
            helper_vec = self.shards[(hb, j)]
            vec.append(helper_vec[idx])
        # helper j's stored vector is column j (resp. row j); entry ``idx``
        # of it is exactly the failed node's j-th symbol
        ordered = [None] * self.alpha
        for j, value in zip(helpers, vec):
            ordered[j] = value
        report = BandwidthReport(total=self.alpha, per_block={hb: self.alpha})
        return tuple(ordered), report


def transpose_encode(file, n: int, k: int, field=None) -> TransposeCode:
    code = TransposeCode(n, k, field=field)
    return code.encode(file)


# ---------------------------------------------------------------------------
# Construction: symmetric-design placement


class DesignPlacedCode:
    """One regenerating sub-code per partition, placed by a symmetric design.

    The design must have every pair of blocks meeting in exactly one
    point, and every point on ``r`` blocks with ``r`` = block size.
    """

    construction = "design"

    def __init__(
        self,
        blocks: Sequence,
        v: int,
        subparams: RegenParams,
        field=None,
        points=None,
        design_name: str = "custom",
    ):
        blocks = tuple(tuple(sorted(blk)) for blk in blocks)
        b = len(blocks)
        kappa = len(blocks[0])
        if any(len(blk) != kappa for blk in blocks):
            raise ParameterError("design blocks must share one size")
        hosts = {pt: [] for pt in range(1, v + 1)}
        for bi, blk in enumerate(blocks):
            for pt in blk:
                hosts[pt].append(bi)
        reps = {len(h) for h in hosts.values()}
        if reps != {kappa}:
            raise ParameterError(
                "placement needs a symmetric design (replication = block size)"
            )
        for i in range(b):
            for j in range(i + 1, b):
                if len(set(blocks[i]) & set(blocks[j])) != 1:
                    raise ParameterError(
                        f"design blocks {i} and {j} must share exactly one point"
                    )
        r = kappa
        ns, ks, ds = subparams.n, subparams.k, subparams.d
        if ns % r:
            raise ParameterError(f"sub-code length {ns} not divisible by {r}")
        if ks % r:
            raise ParameterError(f"sub-code dimension {ks} not divisible by {r}")
        if ds % (r - 1):
            raise ParameterError(
                f"sub-code helper count {ds} not divisible by {r - 1}"
            )
        self.design_blocks = blocks
        self.design_name = design_name
        self.v = v
        self.hosts = {pt: tuple(sorted(h)) for pt, h in hosts.items()}
        self.kappa = kappa
        self.subparams = subparams
        self.subcode = RegenCode(subparams, field=field, points=points)
        self.field = self.subcode.field
        c = ns // r
        self.c_sub = c
        if c < max(ks // r, ds // (r - 1)):
            raise ParameterError(
                f"{c} nodes per (block, partition) cannot host "
                f"k_c={ks // r} collection or d_r={ds // (r - 1)} repair"
            )
        self.params = SystemParams(
            n=b * c,
            b=b,
            M=v * subparams.file_size,
            k=b * ks // r,
            rho=0,
            d=kappa * ds,
            sigma=1,
            alpha=kappa * subparams.alpha,
            beta=subparams.beta,
        )
        validate_params(self.params)
        self.shards = None
        self._sub_nodes = None

    def host_rank(self, partition: int, block: int) -> int:
        return self.hosts[partition].index(block)

    def subnode_of(self, partition: int, block: int, node: int) -> int:
        return self.host_rank(partition, block) * self.c_sub + node

    def encode(self, file: Sequence):
        _check_file(self.field, file, self.params.M)
        msub = self.subparams.file_size
        per_partition = {
            pt: self.subcode.encode(_chunk(file, pt - 1, msub))
            for pt in range(1, self.v + 1)
        }
        shards = {}
        for bi, blk in enumerate(self.design_blocks):
            for node in range(self.c_sub):
                vec = []
                for pt in blk:
                    vec.extend(per_partition[pt][self.subnode_of(pt, bi, node)])
                shards[(bi, node)] = tuple(vec)
        self.shards = shards
        return self

    def layout(self) -> CodewordLayout:
        a_sub = self.subparams.alpha
        placement = {}
        for bi, blk in enumerate(self.design_blocks):
            for node in range(self.c_sub):
                entries = []
                for pt in blk:
                    s = self.subnode_of(pt, bi, node)
                    entries.extend((pt, s * a_sub + t) for t in range(a_sub))
                placement[(bi, node)] = tuple(entries)
        return CodewordLayout(self.construction, self.v, placement)

    def describe(self) -> dict:
        return {
            "design": self.design_name,
            "blocks": [list(blk) for blk in self.design_blocks],
            "v": self.v,
            "sub": {
                "n": self.subparams.n,
                "k": self.subparams.k,
                "d": self.subparams.d,
                "beta": self.subparams.beta,
                "mode": self.subparams.mode,
            },
            "points": list(self.subcode.points),
        }

    def _partition_vector(self, partition: int, block: int, node: int):
        a_sub = self.subparams.alpha
        pos = self.design_blocks[block].index(partition)
        vec = self.shards[(block, node)]
        return vec[pos * a_sub : (pos + 1) * a_sub]

    def collect_from(self, chosen_blocks, chosen_nodes) -> tuple:
        k_c = self.params.k_c
        file = []
        for pt in range(1, self.v + 1):
            gathered = {}
            for bi in self.hosts[pt]:
                if bi not in chosen_blocks:
                    raise ParameterError(
                        f"partition {pt} needs block {bi}, which was not chosen"
                    )
                for node in chosen_nodes[bi]:
                    gathered[self.subnode_of(pt, bi, node)] = self._partition_vector(
                        pt, bi, node
                    )
            try:
                file.extend(self.subcode.collect(gathered))
            except UnrecoverableErasureError as exc:
                raise UnrecoverableErasureError(
                    f"partition {pt} failed to decode: {exc}"
                )
        return tuple(file)

    def repair_node(self, failed, helper_blocks, helper_nodes):
        blk, idx = failed
        responses_per_partition = {pt: {} for pt in self.design_blocks[blk]}
        per_block_symbols = {hb: 0 for hb in helper_blocks}
        beta = self.subparams.beta
        for hb in helper_blocks:
            shared = set(self.design_blocks[blk]) & set(self.design_blocks[hb])
            (pt,) = shared
            failed_sub = self.subnode_of(pt, blk, idx)
            for node in helper_nodes[hb]:
                helper_sub = self.subnode_of(pt, hb, node)
                resp = self.subcode.repair_response(
                    helper_sub, self._partition_vector(pt, hb, node), failed_sub
                )
                responses_per_partition[pt][helper_sub] = resp
                per_block_symbols[hb] += beta
        vec = []
        for pt in self.design_blocks[blk]:
            failed_sub = self.subnode_of(pt, blk, idx)
            rebuilt = self.subcode.repair(failed_sub, responses_per_partition[pt])
            vec.extend(rebuilt)
        report = BandwidthReport(
            total=sum(per_block_symbols.values()), per_block=per_block_symbols
        )
        return tuple(vec), report


def pp_construct(
    p: int, subparams: RegenParams, file, field=None, points=None
) -> DesignPlacedCode:
    """Place a regenerating sub-code with a projective plane of order p."""
    plane = designs.projective_plane(p)
    code = DesignPlacedCode(
        plane.blocks,
        plane.v,
        subparams,
        field=field,
        points=points,
        design_name=f"projective-{p}",
    )
    return code.encode(file)


THREE_BLOCK_LAYOUT = ((1, 2), (1, 3), (2, 3))


def three_block_code(subparams: RegenParams, file, field=None) -> DesignPlacedCode:
    """The hand-wired three-block layout (not a projective plane)."""
    code = DesignPlacedCode(
        THREE_BLOCK_LAYOUT, 3, subparams, field=field, design_name="three-block"
    )
    return code.encode(file)


# ---------------------------------------------------------------------------
# Construction: duplicated-combination placement


class DcbdCode:
    """Repetition-group placement tolerating sigma unavailable blocks."""

    construction = "dcbd"

    def __init__(self, b: int, sigma: int, subparams: RegenParams, field=None, points=None):
        if b < 3:
            raise ParameterError(f"need at least 3 blocks, got {b}")
        if not (1 <= sigma < b - 1):
            raise ParameterError(
                f"need 1 <= sigma < b-1, got sigma={sigma}, b={b}"
            )
        ns, ks, ds = subparams.n, subparams.k, subparams.d
        if ns % (b - 1):
            raise ParameterError(f"sub-code length {ns} not divisible by b-1={b - 1}")
        if ks % (b - 1):
            raise ParameterError(f"sub-code dimension {ks} not divisible by b-1={b - 1}")
        if ds % (b - sigma - 1):
            raise ParameterError(
                f"sub-code helper count {ds} not divisible by {b - sigma - 1}"
            )
        c = ns // (b - 1)
        d_r = ds // (b - sigma - 1)
        if c < d_r:
            raise ParameterError(
                f"repair infeasible: {c} nodes per (block, partition) < d_r={d_r}"
            )
        self.design = designs.dcbd(b, b - 1, b - sigma)
        self.b = b
        self.sigma = sigma
        self.subparams = subparams
        self.subcode = RegenCode(subparams, field=field, points=points)
        self.field = self.subcode.field
        self.c_sub = c
        self.v = self.design.v  # b * (b - sigma) partitions
        as_plain = self.design.as_block_design()
        self.hosts = {
            pt: tuple(as_plain.blocks_through(pt)) for pt in range(1, self.v + 1)
        }
        self.params = SystemParams(
            n=b * c,
            b=b,
            M=b * (b - sigma) * subparams.file_size,
            k=b * ks // (b - 1),
            rho=0,
            d=ds * (b - sigma) // (b - sigma - 1),
            sigma=sigma,
            alpha=(b - 1) * (b - sigma) * subparams.alpha,
            beta=(b - sigma - 1) * (b - 1) * subparams.beta,
        )
        validate_params(self.params)
        self.shards = None

    def subnode_of(self, partition: int, block: int, node: int) -> int:
        return self.hosts[partition].index(block) * self.c_sub + node

    def missing_point(self, block: int, group: int) -> int:
        """The group point absent from a block (each group misses one)."""
        present = set(self.design.group_subset(block, group))
        (gone,) = set(self.design.group_points(group)) - present
        return gone

    def encode(self, file: Sequence):
        _check_file(self.field, file, self.params.M)
        msub = self.subparams.file_size
        per_partition = {
            pt: self.subcode.encode(_chunk(file, pt - 1, msub))
            for pt in range(1, self.v + 1)
        }
        shards = {}
        for bi in range(self.b):
            blk = self.design.blocks[bi]
            for node in range(self.c_sub):
                vec = []
                for pt in blk:
                    vec.extend(per_partition[pt][self.subnode_of(pt, bi, node)])
                shards[(bi, node)] = tuple(vec)
        self.shards = shards
        return self

    def layout(self) -> CodewordLayout:
        a_sub = self.subparams.alpha
        placement = {}
        for bi in range(self.b):
            for node in range(self.c_sub):
                entries = []
                for pt in self.design.blocks[bi]:
                    s = self.subnode_of(pt, bi, node)
                    entries.extend((pt, s * a_sub + t) for t in range(a_sub))
                placement[(bi, node)] = tuple(entries)
        return CodewordLayout(self.construction, self.v, placement)

    def describe(self) -> dict:
        return {
            "b": self.b,
            "sigma": self.sigma,
            "sub": {
                "n": self.subparams.n,
                "k": self.subparams.k,
                "d": self.subparams.d,
                "beta": self.subparams.beta,
                "mode": self.subparams.mode,
            },
            "points": list(self.subcode.points),
        }

    def _partition_vector(self, partition: int, block: int, node: int):
        a_sub = self.subparams.alpha
        pos = self.design.blocks[block].index(partition)
        vec = self.shards[(block, node)]
        return vec[pos * a_sub : (pos + 1) * a_sub]

    def collect_from(self, chosen_blocks, chosen_nodes) -> tuple:
        file = []
        for pt in range(1, self.v + 1):
            gathered = {}
            for bi in self.hosts[pt]:
                for node in chosen_nodes[bi]:
                    gathered[self.subnode_of(pt, bi, node)] = self._partition_vector(
                        pt, bi, node
                    )
            try:
                file.extend(self.subcode.collect(gathered))
            except UnrecoverableErasureError as exc:
                raise UnrecoverableErasureError(
                    f"partition {pt} failed to decode: {exc}"
                )
        return tuple(file)

    def repair_plan(self, failed_block: int, helper_blocks) -> dict:
        """Which partitions each helper block serves for this repair.

        Within a repetition group, the failed block's partitions split
        into ``deficient`` ones (absent from exactly one helper, served
        by all the others) and ``common`` ones (present in every helper;
        one helper, rotating round-robin by group, sits the group out so
        the shipped symbol counts stay equal).
        """
        helpers = sorted(helper_blocks)
        serves = {hb: [] for hb in helpers}
        reps = self.b - self.sigma
        for g in range(reps):
            block_pts = set(self.design.group_subset(failed_block, g))
            deficient = set()
            for hb in helpers:
                gone = self.missing_point(hb, g)
                if gone in block_pts:
                    deficient.add(gone)
            skip = helpers[(g - 1) % len(helpers)]
            for pt in sorted(block_pts):
                for hb in helpers:
                    if pt == self.missing_point(hb, g):
                        continue
                    if pt not in deficient and hb == skip:
                        continue
                    serves[hb].append(pt)
        return serves

    def repair_node(self, failed, helper_blocks, helper_nodes):
        blk, idx = failed
        helpers = sorted(helper_blocks)
        serves = self.repair_plan(blk, helpers)
        responses = {pt: {} for pt in self.design.blocks[blk]}
        per_block_symbols = {hb: 0 for hb in helpers}
        beta = self.subparams.beta
        for hb in helpers:
            for pt in serves[hb]:
                failed_sub = self.subnode_of(pt, blk, idx)
                for node in helper_nodes[hb]:
                    helper_sub = self.subnode_of(pt, hb, node)
                    resp = self.subcode.repair_response(
                        helper_sub, self._partition_vector(pt, hb, node), failed_sub
                    )
                    responses[pt][helper_sub] = resp
                    per_block_symbols[hb] += beta
        vec = []
        for pt in self.design.blocks[blk]:
            failed_sub = self.subnode_of(pt, blk, idx)
            got = responses[pt]
            if len(got) != self.subparams.d:
                raise ParameterError(
                    f"partition {pt} received {len(got)} responses, "
                    f"needs {self.subparams.d}"
                )
            vec.extend(self.subcode.repair(failed_sub, got))
        report = BandwidthReport(
            total=sum(per_block_symbols.values()), per_block=per_block_symbols
        )
        return tuple(vec), report


def dcbd_construct(
    b: int, sigma: int, subparams: RegenParams, file, field=None, points=None
) -> DcbdCode:
    code = DcbdCode(b, sigma, subparams, field=field, points=points)
    return code.encode(file)


# ---------------------------------------------------------------------------
# Construction: rank-metric outer code + per-block MDS (collection only)


class GabMdsCode:
    """Outer rank-metric code split across blocks, each expanded by MDS.

    Tolerates ``rho`` whole-block erasures plus any ``c - k_c`` node
    erasures in every surviving block.  No repair scheme: collection
    only.
    """

    construction = "gabmds"

    def __init__(self, b: int, c: int, k_c: int, rho: int, field=None):
        if not (0 <= rho < b):
            raise ParameterError(f"need 0 <= rho < b, got rho={rho}")
        if not (1 <= k_c <= c):
            raise ParameterError(f"need 1 <= k_c <= c, got k_c={k_c}, c={c}")
        self.b, self.c, self.k_c, self.rho = b, c, k_c, rho
        self.K = (b - rho) * k_c
        self.N = b * k_c
        if field is None:
            field = _default_gabmds_field(self.N, c, k_c)
        self.field = field
        if self.N > field.m:
            raise ParameterError(
                f"outer code length {self.N} exceeds extension degree {field.m}"
            )
        self.outer = GabidulinCode(field, self.N, self.K)
        self.inner = mds_code(
            c, k_c, field=field, coefficient_field=field.base_field
        )
        self.shards = None

    def describe(self) -> dict:
        return {"b": self.b, "c": self.c, "k_c": self.k_c, "rho": self.rho}

    def encode(self, data: Sequence):
        if len(data) != self.K:
            raise ParameterError(f"expected {self.K} data symbols, got {len(data)}")
        word = self.outer.encode(data)
        shards = {}
        for bi in range(self.b):
            segment = word[bi * self.k_c : (bi + 1) * self.k_c]
            expanded = self.inner.encode(segment)
            for j in range(self.c):
                shards[(bi, j)] = (expanded[j],)
        self.shards = shards
        return self

    def layout(self) -> CodewordLayout:
        placement = {}
        for bi in range(self.b):
            for j in range(self.c):
                placement[(bi, j)] = ((0, bi * self.c + j),)
        return CodewordLayout(self.construction, 1, placement)

    def decode_from(self, available: Mapping) -> tuple:
        """Decode from any set of (block, node) -> symbol survivors.

        Each node's value is a known base-field combination of its
        block's outer-code symbols, so the induced evaluation points are
        the same combinations of the original points; rank >= K decodes.
        """
        F = self.field
        pairs = []
        for (bi, j), value in sorted(available.items()):
            point = F.zero
            for t in range(self.k_c):
                coeff = self.inner.generator[t][j]
                if coeff != F.zero:
                    point = F.add(
                        point, F.mul(coeff, self.outer.points[bi * self.k_c + t])
                    )
            pairs.append((point, value))
        return self.outer.decode_at_points(pairs)

    def collect_from(self, chosen_blocks, chosen_nodes) -> tuple:
        available = {}
        for bi in chosen_blocks:
            for j in chosen_nodes[bi]:
                available[(bi, j)] = self.shards[(bi, j)][0]
        return self.decode_from(available)

    def repair_node(self, failed, helper_blocks, helper_nodes):
        raise ParameterError("this construction has no repair scheme")


def _default_gabmds_field(N: int, c: int, k_c: int):
    if k_c in (1, c - 1, c):
        # inner coefficients fit GF(2)
        if N <= 16:
            return BinaryExtField(N)
        return TowerField(PrimeField(2), N)
    base = smallest_binary_field(c)
    return TowerField(base, N)


def gab_mds_encode(data, b: int, c: int, k_c: int, rho: int, field=None) -> GabMdsCode:
    code = GabMdsCode(b, c, k_c, rho, field=field)
    return code.encode(data)


# ---------------------------------------------------------------------------
# Construction: resolvable-design placement (table-based)


class RelaxedCode:
    """Blocks are parallel classes; node types carry the quota tables."""

    construction = "relaxed"

    def __init__(
        self,
        p: int,
        subparams: RegenParams,
        sigma: int,
        rho: int = 0,
        field=None,
        points=None,
    ):
        rd = designs.rbibd_affine(p)
        self.resolvable = rd
        v = rd.design.v
        kappa = rd.design.kappa
        b = len(rd.classes)
        if not (0 <= rho < b):
            raise ParameterError(f"need 0 <= rho < b, got rho={rho}")
        if not (1 <= sigma < b):
            raise ParameterError(f"need 1 <= sigma < b, got sigma={sigma}")
        ns, ks, ds = subparams.n, subparams.k, subparams.d
        r = b  # every point lies in one block per class
        if ns % r:
            raise ParameterError(f"sub-code length {ns} not divisible by {r}")
        if ks % (b - rho):
            raise ParameterError(
                f"sub-code dimension {ks} not divisible by b-rho={b - rho}"
            )
        if ds % (b - sigma):
            raise ParameterError(
                f"sub-code helper count {ds} not divisible by b-sigma={b - sigma}"
            )
        c_type = ns // r
        k_quota = ks // (b - rho)   # collection nodes per designated type
        d_quota = ds // (b - sigma)  # repair nodes per designated type
        if c_type < max(k_quota, d_quota):
            raise ParameterError(
                f"{c_type} nodes per type cannot host quota "
                f"max({k_quota}, {d_quota})"
            )
        self.p = p
        self.v = v
        self.kappa = kappa
        self.b = b
        self.c_type = c_type
        self.k_quota = k_quota
        self.d_quota = d_quota
        self.subparams = subparams
        self.subcode = RegenCode(subparams, field=field, points=points)
        self.field = self.subcode.field
        # type t of class ci is design block rd.classes[ci][t]
        self.type_points = [
            [rd.design.blocks[bi] for bi in cls] for cls in rd.classes
        ]
        self.type_of_point = [
            {pt: t for t, bi in enumerate(cls) for pt in rd.design.blocks[bi]}
            for cls in rd.classes
        ]
        self.params = SystemParams(
            n=b * kappa * c_type,
            b=b,
            M=v * subparams.file_size,
            k=(v // kappa) * ks,
            rho=rho,
            d=kappa * ds,
            sigma=sigma,
            alpha=kappa * subparams.alpha,
            beta=subparams.beta,
        )
        validate_params(self.params)
        self.shards = None

    @property
    def nodes_per_block(self) -> int:
        return self.kappa * self.c_type

    def node_type(self, node: int) -> int:
        return node // self.c_type

    def subnode_of(self, class_idx: int, node: int) -> int:
        return class_idx * self.c_type + node % self.c_type

    def describe(self) -> dict:
        return {
            "p": self.p,
            "sigma": self.params.sigma,
            "rho": self.params.rho,
            "sub": {
                "n": self.subparams.n,
                "k": self.subparams.k,
                "d": self.subparams.d,
                "beta": self.subparams.beta,
                "mode": self.subparams.mode,
            },
            "points": list(self.subcode.points),
        }

    def encode(self, file: Sequence):
        _check_file(self.field, file, self.params.M)
        msub = self.subparams.file_size
        per_partition = {
            pt: self.subcode.encode(_chunk(file, pt - 1, msub))
            for pt in range(1, self.v + 1)
        }
        shards = {}
        for ci in range(self.b):
            for node in range(self.nodes_per_block):
                pts = self.type_points[ci][self.node_type(node)]
                vec = []
                for pt in pts:
                    vec.extend(per_partition[pt][self.subnode_of(ci, node)])
                shards[(ci, node)] = tuple(vec)
        self.shards = shards
        return self

    def layout(self) -> CodewordLayout:
        a_sub = self.subparams.alpha
        placement = {}
        for ci in range(self.b):
            for node in range(self.nodes_per_block):
                pts = self.type_points[ci][self.node_type(node)]
                s = self.subnode_of(ci, node)
                entries = []
                for pt in pts:
                    entries.extend((pt, s * a_sub + t) for t in range(a_sub))
                placement[(ci, node)] = tuple(entries)
        return CodewordLayout(self.construction, self.v, placement)

    def _partition_vector(self, partition: int, class_idx: int, node: int):
        a_sub = self.subparams.alpha
        pts = self.type_points[class_idx][self.node_type(node)]
        pos = pts.index(partition)
        vec = self.shards[(class_idx, node)]
        return vec[pos * a_sub : (pos + 1) * a_sub]

    def _check_type_quota(self, class_idx, nodes, quota, what):
        tally = {}
        for node in nodes:
            tally[self.node_type(node)] = tally.get(self.node_type(node), 0) + 1
        bad = {t: cnt for t, cnt in tally.items() if cnt != quota}
        if bad or len(tally) != self.kappa:
            raise ParameterError(
                f"{what} must take exactly {quota} nodes from each of the "
                f"{self.kappa} types of class {class_idx}"
            )

    def collect_from(self, chosen_blocks, chosen_nodes) -> tuple:
        for ci in chosen_blocks:
            self._check_type_quota(ci, chosen_nodes[ci], self.k_quota, "collection")
        file = []
        for pt in range(1, self.v + 1):
            gathered = {}
            for ci in chosen_blocks:
                for node in chosen_nodes[ci]:
                    pts = self.type_points[ci][self.node_type(node)]
                    if pt in pts:
                        gathered[self.subnode_of(ci, node)] = self._partition_vector(
                            pt, ci, node
                        )
            try:
                file.extend(self.subcode.collect(gathered))
            except UnrecoverableErasureError as exc:
                raise UnrecoverableErasureError(
                    f"partition {pt} failed to decode: {exc}"
                )
        return tuple(file)

    def helper_types(self, failed_class: int, failed_type: int, helper_class: int):
        """The designated types in a helper class: one per failed partition."""
        out = {}
        for pt in self.type_points[failed_class][failed_type]:
            out[pt] = self.type_of_point[helper_class][pt]
        return out

    def repair_node(self, failed, helper_blocks, helper_nodes):
        blk, idx = failed
        ftype = self.node_type(idx)
        beta = self.subparams.beta
        responses = {pt: {} for pt in self.type_points[blk][ftype]}
        per_block_symbols = {hb: 0 for hb in helper_blocks}
        for hb in helper_blocks:
            designated = self.helper_types(blk, ftype, hb)
            type_to_pt = {t: pt for pt, t in designated.items()}
            tally = {}
            for node in helper_nodes[hb]:
                t = self.node_type(node)
                if t not in type_to_pt:
                    raise ParameterError(
                        f"node {node} of class {hb} is not in a designated type"
                    )
                tally[t] = tally.get(t, 0) + 1
                pt = type_to_pt[t]
                failed_sub = self.subnode_of(blk, idx)
                helper_sub = self.subnode_of(hb, node)
                resp = self.subcode.repair_response(
                    helper_sub, self._partition_vector(pt, hb, node), failed_sub
                )
                responses[pt][helper_sub] = resp
                per_block_symbols[hb] += beta
            if tally != {t: self.d_quota for t in type_to_pt}:
                raise ParameterError(
                    f"repair must take exactly {self.d_quota} nodes from each "
                    f"designated type of class {hb}"
                )
        vec = []
        for pt in self.type_points[blk][ftype]:
            failed_sub = self.subnode_of(blk, idx)
            vec.extend(self.subcode.repair(failed_sub, responses[pt]))
        report = BandwidthReport(
            total=sum(per_block_symbols.values()), per_block=per_block_symbols
        )
        return tuple(vec), report


def rbfr_construct(
    p: int,
    subparams: RegenParams,
    file,
    sigma: int,
    rho: int = 0,
    field=None,
    points=None,
) -> RelaxedCode:
    code = RelaxedCode(p, subparams, sigma=sigma, rho=rho, field=field, points=points)
    return code.encode(file)


# ---------------------------------------------------------------------------
# generic entry points


def bfr_collect(code, chosen_blocks: Sequence, chosen_nodes: Mapping) -> tuple:
    """Recover the file from k_c chosen nodes in each of b-rho blocks."""
    p = code.params if hasattr(code, "params") else None
    if isinstance(code, GabMdsCode):
        expect_blocks = code.b - code.rho
        k_c = code.k_c
        b = code.b
    else:
        expect_blocks = p.b - p.rho
        k_c = p.k_c
        b = p.b
    blocks = sorted(set(chosen_blocks))
    if len(blocks) != len(list(chosen_blocks)) or len(blocks) != expect_blocks:
        raise ParameterError(
            f"collection needs {expect_blocks} distinct blocks, got {list(chosen_blocks)}"
        )
    if any(not (0 <= bi < b) for bi in blocks):
        raise ParameterError("block index out of range")
    for bi in blocks:
        nodes = list(chosen_nodes.get(bi, ()))
        if len(set(nodes)) != k_c or len(nodes) != k_c:
            raise ParameterError(
                f"collection needs {k_c} distinct nodes in block {bi}, got {nodes}"
            )
    return code.collect_from(blocks, {bi: sorted(chosen_nodes[bi]) for bi in blocks})


def bfr_repair(code, failed, helper_blocks: Sequence, helper_nodes: Mapping):
    """Rebuild one node from d_r nodes in each of b-sigma helper blocks."""
    if isinstance(code, GabMdsCode):
        raise ParameterError("this construction has no repair scheme")
    p = code.params
    blk, idx = failed
    if not (0 <= blk < p.b):
        raise ParameterError(f"failed block {blk} out of range")
    helpers = sorted(set(helper_blocks))
    if blk in helpers:
        raise ParameterError("the failed block cannot help repair itself")
    if len(helpers) != len(list(helper_blocks)) or len(helpers) != p.b - p.sigma:
        raise ParameterError(
            f"repair needs {p.b - p.sigma} distinct helper blocks, got {list(helper_blocks)}"
        )
    d_r = p.d_r
    for hb in helpers:
        nodes = list(helper_nodes.get(hb, ()))
        if len(set(nodes)) != d_r or len(nodes) != d_r:
            raise ParameterError(
                f"repair needs {d_r} distinct nodes in block {hb}, got {nodes}"
            )
    vec, report = code.repair_node(
        failed, helpers, {hb: sorted(helper_nodes[hb]) for hb in helpers}
    )
    expected_total = p.d * p.beta
    if report.total != expected_total:
        raise ParameterError(
            f"bandwidth accounting broke: shipped {report.total}, expected {expected_total}"
        )
    return vec, report
