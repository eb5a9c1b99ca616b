"""Classical component codes: scalar MDS codes and rank-metric codes.

MDS generators are Vandermonde-based with a systematic transformation.
When the coefficients must live in a small subfield (identity, parity,
repetition shapes over GF(2)), the factory falls back to those explicit
generators, since nontrivial Vandermonde points do not exist there.

The rank-metric code evaluates a linearized polynomial at coordinates
that are linearly independent over the base field.  Erasure decoding is
a direct linear solve against the Moore matrix of the surviving points;
it also accepts *combined* points -- base-field linear combinations of
the original coordinates -- which is what a concatenated outer/inner
decoder sees.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from . import linalg
from .errors import (
    CorruptionError,
    ParameterError,
    RankErasureError,
    UnrecoverableErasureError,
)
from .fields import IndependenceTracker, LinearizedPoly, smallest_binary_field

_EXHAUSTIVE_MDS_LIMIT = 12


@dataclass
class MdsCode:
    """An [n, k] MDS code given by an explicit generator matrix."""

    field: object
    n: int
    k: int
    generator: list  # k rows of n entries
    systematic: bool = True
    _verified: bool = dc_field(default=False, repr=False)

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise ParameterError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if len(self.generator) != self.k or any(
            len(r) != self.n for r in self.generator
        ):
            raise ParameterError("generator shape does not match (k, n)")
        if self.n <= _EXHAUSTIVE_MDS_LIMIT:
            ok = self.verify_mds(exhaustive=True)
        else:
            ok = self.verify_mds(exhaustive=False)
        if not ok:
            raise ParameterError("generator has a singular k x k submatrix")
        self._verified = True

    def verify_mds(self, exhaustive: bool = True, samples: int = 200, seed: int = 0):
        F = self.field
        cols = list(range(self.n))
        if exhaustive:
            subsets = itertools.combinations(cols, self.k)
        else:
            rng = random.Random(seed)
            subsets = (
                tuple(sorted(rng.sample(cols, self.k))) for _ in range(samples)
            )
        for sub in subsets:
            M = [[self.generator[i][j] for j in sub] for i in range(self.k)]
            if linalg.rank(F, M) != self.k:
                return False
        return True

    def encode(self, data: Sequence) -> tuple:
        if len(data) != self.k:
            raise ParameterError(f"expected {self.k} data symbols, got {len(data)}")
        F = self.field
        for s in data:
            if not F.element_ok(s):
                raise ParameterError("data symbol outside the code's field")
        return tuple(linalg.vec_mat(F, list(data), self.generator))

    def decode(self, available: Mapping[int, object]) -> tuple:
        """Recover the data vector from >= k coordinate/value pairs.

        Extra coordinates are used as a consistency check; disagreement
        raises CorruptionError.
        """
        F = self.field
        if len(available) < self.k:
            raise UnrecoverableErasureError(
                f"{len(available)} coordinates available, need {self.k}"
            )
        positions = sorted(available)
        use = positions[: self.k]
        A = [[self.generator[i][j] for j in use] for i in range(self.k)]
        y = [available[j] for j in use]
        data = linalg.solve(F, linalg.transpose(A), y)
        if len(positions) > self.k:
            word = self.encode(data)
            for j in positions[self.k :]:
                if word[j] != available[j]:
                    raise CorruptionError(
                        f"coordinate {j} disagrees with the decoded word"
                    )
        return tuple(data)


def mds_code(
    n: int,
    k: int,
    field=None,
    points: Sequence | None = None,
    coefficient_field=None,
):
    """Build an [n, k] MDS code.

    ``points`` fixes the Vandermonde evaluation points (useful to force
    generator entries into an embedded subfield).  ``coefficient_field``
    restricts entries to the image of that base field inside ``field``;
    when the base is too small for Vandermonde points, the identity /
    parity / repetition shapes (entries 0 and 1 only) are used instead.
    """
    if field is None:
        field = smallest_binary_field(n)
    F = field
    if points is None and coefficient_field is not None:
        base = coefficient_field
        if base.order - 1 >= n:
            base_nonzero = [e for e in base.elements() if e != base.zero]
            points = [F.embed_base(e) for e in base_nonzero[:n]]
        else:
            gen = _unit_entry_generator(F, n, k)
            if gen is None:
                raise ParameterError(
                    f"coefficient field of order {base.order} too small for [{n},{k}]"
                )
            return MdsCode(F, n, k, gen, systematic=True)
    if points is None:
        nonzero = []
        for e in F.elements():
            if e != F.zero:
                nonzero.append(e)
            if len(nonzero) == n:
                break
        if len(nonzero) < n:
            gen = _unit_entry_generator(F, n, k)
            if gen is None:
                raise ParameterError(f"field of order {F.order} too small for [{n},{k}]")
            return MdsCode(F, n, k, gen, systematic=True)
        points = nonzero
    if len(points) < n or len(set(points)) < n:
        raise ParameterError("need n distinct evaluation points")
    points = list(points)[:n]
    raw = [[F.pow(x, i) for x in points] for i in range(k)]
    head = [[raw[i][j] for j in range(k)] for i in range(k)]
    gen = linalg.mat_mul(F, linalg.inv(F, head), raw)
    return MdsCode(F, n, k, gen, systematic=True)


def _unit_entry_generator(F, n, k):
    """Identity / parity / repetition generators (entries are 0 or 1)."""
    if k == n:
        return linalg.identity(F, n)
    if k == 1:
        return [[F.one] * n]
    if k == n - 1:
        gen = []
        for i in range(k):
            row = [F.one if j == i else F.zero for j in range(k)]
            row.append(F.one)
            gen.append(row)
        return gen
    return None


class GabidulinCode:
    """Rank-metric evaluation code of a linearized polynomial.

    ``n`` evaluation points that are independent over the base field,
    message length ``k``; any set of values whose (possibly combined)
    points still span a k-dimensional base-field space decodes.
    """

    def __init__(self, field, n: int, k: int, points: Sequence | None = None):
        if not hasattr(field, "frobenius") or not hasattr(field, "base_field"):
            raise ParameterError("rank-metric codes need an extension field")
        if not (1 <= k <= n):
            raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
        if n > field.m:
            raise ParameterError(
                f"cannot pick {n} independent points in a degree-{field.m} extension"
            )
        if points is None:
            points = []
            for i in range(n):
                coeffs = [field.base_field.zero] * field.m
                coeffs[i] = field.base_field.one
                points.append(field.unvec(coeffs))
        points = list(points)
        if len(points) != n:
            raise ParameterError("need exactly n evaluation points")
        tracker = IndependenceTracker(field)
        for p in points:
            if not tracker.offer(p):
                raise ParameterError("evaluation points are dependent over the base")
        self.field = field
        self.n = n
        self.k = k
        self.points = tuple(points)

    @property
    def min_rank_distance(self) -> int:
        return self.n - self.k + 1

    def encode(self, message: Sequence) -> tuple:
        if len(message) != self.k:
            raise ParameterError(f"expected {self.k} message symbols")
        f = LinearizedPoly(self.field, message)
        return tuple(f(g) for g in self.points)

    def decode_erasures(self, available: Mapping[int, object]) -> tuple:
        pairs = [(self.points[pos], val) for pos, val in sorted(available.items())]
        return self.decode_at_points(pairs)

    def decode_at_points(self, pairs: Sequence) -> tuple:
        """Decode from (evaluation point, value) pairs.

        Points may be base-field combinations of the original coordinates
        (with values combined the same way).  Requires the points to span
        at least a k-dimensional space over the base field.
        """
        F = self.field
        tracker = IndependenceTracker(F)
        chosen = []
        for point, value in pairs:
            if tracker.offer(point):
                chosen.append((point, value))
                if len(chosen) == self.k:
                    break
        if len(chosen) < self.k:
            # keep feeding to report the full achieved rank
            for point, _ in pairs:
                tracker.offer(point)
            raise RankErasureError(
                f"surviving points span rank {tracker.rank}, need {self.k}",
                achieved_rank=tracker.rank,
                needed_rank=self.k,
            )
        moore = []
        for point, _ in chosen:
            row = []
            cur = point
            for _ in range(self.k):
                row.append(cur)
                cur = F.frobenius(cur)
            moore.append(row)
        message = linalg.solve(F, moore, [v for _, v in chosen])
        f = LinearizedPoly(F, message)
        for point, value in pairs:
            if f(point) != value:
                raise CorruptionError("an available value disagrees with the decode")
        return tuple(message)
