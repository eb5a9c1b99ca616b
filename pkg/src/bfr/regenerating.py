"""Product-matrix regenerating codes (bandwidth-optimal repair).

Two operating points are supported:

* ``MBR``: minimum repair bandwidth.  Each node stores ``d*beta``
  symbols; a failed node is rebuilt by downloading ``beta`` symbols from
  each of any ``d`` survivors, and the file is recovered from any ``k``
  nodes.
* ``MSR``: minimum storage.  Each node stores ``(d - k + 1) * beta``
  symbols.  The product-matrix construction natively needs
  ``d = 2k - 2``; larger ``d`` is handled by shortening a longer
  auxiliary code (the extra nodes are pinned to zero and never
  materialised), which preserves the storage and repair bandwidth.
  ``k = 1`` has no product-matrix realisation and is rejected.

``beta > 1`` is plain striping: independent copies of the ``beta = 1``
code, with node vectors and repair downloads concatenated stripe by
stripe.

The codes are linear over their symbol field, and evaluation points may
be restricted (e.g. to an embedded subfield) via ``points=``; all the
generator coefficients are then polynomial expressions in those points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import linalg
from .errors import CorruptionError, ParameterError, UnrecoverableErasureError
from .fields import BinaryExtField

MBR = "MBR"
MSR = "MSR"


@dataclass(frozen=True)
class RegenParams:
    """Parameters of an (n, k, d) regenerating code at one extreme point."""

    n: int
    k: int
    d: int
    beta: int = 1
    mode: str = MBR

    def __post_init__(self):
        if self.mode not in (MBR, MSR):
            raise ParameterError(f"mode must be {MBR!r} or {MSR!r}, got {self.mode!r}")
        if not (1 <= self.k <= self.d <= self.n - 1):
            raise ParameterError(
                f"need 1 <= k <= d <= n-1, got n={self.n}, k={self.k}, d={self.d}"
            )
        if self.beta < 1:
            raise ParameterError("beta must be positive")
        if self.mode == MSR:
            if self.k < 2:
                raise ParameterError(
                    "k = 1 at minimum storage is product-matrix infeasible"
                )
            if self.d < 2 * self.k - 2:
                raise ParameterError(
                    f"minimum-storage construction needs d >= 2k-2, "
                    f"got d={self.d}, k={self.k}"
                )

    @property
    def alpha(self) -> int:
        if self.mode == MBR:
            return self.d * self.beta
        return (self.d - self.k + 1) * self.beta

    @property
    def file_size(self) -> int:
        if self.mode == MBR:
            return self.beta * (self.k * self.d - self.k * (self.k - 1) // 2)
        return self.k * self.alpha

    @property
    def repair_bandwidth(self) -> int:
        return self.d * self.beta


def _symmetric_from_upper(F, vals, size):
    S = [[F.zero] * size for _ in range(size)]
    it = iter(vals)
    for i in range(size):
        for j in range(i, size):
            v = next(it)
            S[i][j] = v
            S[j][i] = v
    return S


def _upper_triangle(S):
    out = []
    for i in range(len(S)):
        out.extend(S[i][i:])
    return out


def default_regen_field(params: RegenParams):
    """Smallest binary extension field admitting suitable points."""
    need = params.n + _shorten_extra(params)
    w = 1
    while True:
        F = BinaryExtField(w) if w > 1 else BinaryExtField(1)
        pts = _scan_points(F, need, params)
        if pts is not None:
            return F
        w += 1


def _shorten_extra(params: RegenParams) -> int:
    if params.mode == MSR:
        return params.d - (2 * params.k - 2)
    return 0


def _scan_points(F, need, params):
    """Greedy scan for distinct nonzero points (with distinct powers at MSR)."""
    alpha1 = params.d - params.k + 1 if params.mode == MSR else None
    pts, seen_lam = [], set()
    for e in F.elements():
        if e == F.zero:
            continue
        if alpha1 is not None:
            lam = F.pow(e, alpha1)
            if lam in seen_lam:
                continue
            seen_lam.add(lam)
        pts.append(e)
        if len(pts) == need:
            return pts
    return None


class RegenCode:
    """Concrete product-matrix code over a chosen field."""

    def __init__(self, params: RegenParams, field=None, points: Sequence | None = None):
        self.params = params
        self.extra = _shorten_extra(params)
        self.aux_n = params.n + self.extra
        if field is None:
            field = default_regen_field(params)
        self.field = field
        F = field
        if points is None:
            points = _scan_points(F, self.aux_n, params)
            if points is None:
                raise ParameterError(
                    f"field of order {F.order} has no {self.aux_n} usable points"
                )
        points = list(points)
        if len(points) != self.aux_n:
            raise ParameterError(f"need {self.aux_n} evaluation points")
        if len(set(points)) != self.aux_n or any(p == F.zero for p in points):
            raise ParameterError("evaluation points must be distinct and nonzero")
        self.points = tuple(points)
        self._psi_cache = {}
        # per-stripe geometry
        if params.mode == MBR:
            self.alpha1 = params.d
            self.m1 = params.k * params.d - params.k * (params.k - 1) // 2
        else:
            self.alpha1 = params.d - params.k + 1
            self.m1 = params.k * self.alpha1
            self.aux_k = params.k + self.extra
            self.aux_d = params.d + self.extra
            self.lams = [F.pow(x, self.alpha1) for x in points]
            if len(set(self.lams)) != self.aux_n:
                raise ParameterError("points must have distinct alpha-th powers")
            self.aux_m1 = self.aux_k * self.alpha1
            if self.extra:
                self._basis = self._shortening_basis()

    # -- helper rows ---------------------------------------------------

    def _phi(self, idx, length):
        F = self.field
        x = self.points[idx]
        row, cur = [], F.one
        for _ in range(length):
            row.append(cur)
            cur = F.mul(cur, x)
        return row

    def _psi(self, idx):
        """Full evaluation row (length d, or aux d when shortened)."""
        if idx not in self._psi_cache:
            if self.params.mode == MBR:
                row = self._phi(idx, self.params.d)
            else:
                row = self._phi(idx, 2 * self.alpha1)
            self._psi_cache[idx] = row
        return self._psi_cache[idx]

    # -- single-stripe primitives --------------------------------------

    def _message_matrix(self, stripe):
        F = self.field
        k, d = self.params.k, self.params.d
        if self.params.mode == MBR:
            nS = k * (k + 1) // 2
            S = _symmetric_from_upper(F, stripe[:nS], k)
            T_vals = stripe[nS:]
            T = [list(T_vals[i * (d - k) : (i + 1) * (d - k)]) for i in range(k)]
            M = [[F.zero] * d for _ in range(d)]
            for i in range(k):
                for j in range(k):
                    M[i][j] = S[i][j]
                for j in range(d - k):
                    M[i][k + j] = T[i][j]
                    M[k + j][i] = T[i][j]
            return M
        a = self.alpha1
        nS = a * (a + 1) // 2
        S1 = _symmetric_from_upper(F, stripe[:nS], a)
        S2 = _symmetric_from_upper(F, stripe[nS : 2 * nS], a)
        return S1 + S2

    def _stripe_to_aux(self, stripe):
        """Map a stripe of file symbols to the auxiliary message symbols."""
        if self.params.mode == MBR or not self.extra:
            return list(stripe)
        F = self.field
        out = [F.zero] * self.aux_m1
        for coeff, row in zip(stripe, self._basis):
            if coeff == F.zero:
                continue
            for t, r in enumerate(row):
                if r != F.zero:
                    out[t] = F.add(out[t], F.mul(coeff, r))
        return out

    def _aux_to_stripe(self, aux_msg):
        if self.params.mode == MBR or not self.extra:
            return list(aux_msg)
        F = self.field
        # solve stripe . basis = aux_msg  (basis has full row rank m1)
        A = linalg.transpose(self._basis)
        return linalg.solve_overdetermined(F, A, list(aux_msg))

    def _encode_stripe_node(self, aux_msg, idx):
        F = self.field
        M = self._message_matrix(aux_msg)
        return linalg.vec_mat(F, self._psi(idx), M)

    def _shortening_basis(self):
        """Basis of stripes whose shortened (virtual) nodes store zero."""
        F = self.field
        rows = []
        for j in range(self.aux_m1):
            unit = [F.zero] * self.aux_m1
            unit[j] = F.one
            vals = []
            for t in range(self.params.n, self.aux_n):
                vals.extend(self._encode_stripe_node(unit, t))
            rows.append(vals)
        # constraints matrix: (extra * alpha1) x aux_m1
        C = linalg.transpose(rows)
        basis = linalg.nullspace(F, C)
        if len(basis) != self.m1:
            raise ParameterError(
                f"shortening gave dimension {len(basis)}, expected {self.m1}"
            )
        return basis

    # -- public API ----------------------------------------------------

    @property
    def node_count(self):
        return self.params.n

    def encode(self, data: Sequence) -> list:
        """Spread ``file_size`` symbols over ``n`` nodes of ``alpha`` symbols."""
        p = self.params
        if len(data) != p.file_size:
            raise ParameterError(
                f"expected {p.file_size} file symbols, got {len(data)}"
            )
        for s in data:
            if not self.field.element_ok(s):
                raise ParameterError("file symbol outside the code's field")
        stripes = [
            self._stripe_to_aux(data[s * self.m1 : (s + 1) * self.m1])
            for s in range(p.beta)
        ]
        nodes = []
        for i in range(p.n):
            vec = []
            for aux in stripes:
                vec.extend(self._encode_stripe_node(aux, i))
            nodes.append(tuple(vec))
        return nodes

    def repair_response(self, helper_index: int, helper_node: Sequence,
                        failed_index: int) -> tuple:
        """The ``beta`` symbols a helper sends toward a failed node."""
        p = self.params
        if helper_index == failed_index:
            raise ParameterError("a node cannot help repair itself")
        if len(helper_node) != p.alpha:
            raise ParameterError(f"helper vector must have {p.alpha} symbols")
        F = self.field
        if p.mode == MBR:
            proj = self._psi(failed_index)
        else:
            proj = self._phi(failed_index, self.alpha1)
        out = []
        for s in range(p.beta):
            seg = helper_node[s * self.alpha1 : (s + 1) * self.alpha1]
            out.append(linalg.dot(F, list(seg), proj))
        return tuple(out)

    def repair(self, failed_index: int, responses: Mapping[int, Sequence]) -> tuple:
        """Rebuild a node from ``d`` helper responses of ``beta`` symbols each."""
        p = self.params
        F = self.field
        if failed_index in responses:
            raise ParameterError("failed node cannot appear among the helpers")
        if len(responses) != p.d:
            raise UnrecoverableErasureError(
                f"repair needs exactly {p.d} helpers, got {len(responses)}"
            )
        helpers = sorted(responses)
        if any(not (0 <= h < p.n) for h in helpers):
            raise ParameterError("helper index out of range")
        for h in helpers:
            if len(responses[h]) != p.beta:
                raise ParameterError(f"helper {h} must send {p.beta} symbols")
        virt = list(range(p.n, self.aux_n))
        rows = [self._psi(h) for h in helpers + virt]
        A = rows
        out = []
        for s in range(p.beta):
            w = [responses[h][s] for h in helpers] + [F.zero] * len(virt)
            z = linalg.solve(F, A, w)
            if p.mode == MBR:
                out.extend(z)
            else:
                a = self.alpha1
                lam_f = self.lams[failed_index]
                s1p, s2p = z[:a], z[a:]
                out.extend(
                    F.add(s1p[t], F.mul(lam_f, s2p[t])) for t in range(a)
                )
        return tuple(out)

    def collect(self, available: Mapping[int, Sequence]) -> tuple:
        """Recover the file from any ``k`` node vectors.

        Extra nodes, when provided, are checked for consistency against
        the re-encoded word.
        """
        p = self.params
        if len(available) < p.k:
            raise UnrecoverableErasureError(
                f"{len(available)} nodes available, need {p.k}"
            )
        idxs = sorted(available)
        if any(not (0 <= i < p.n) for i in idxs):
            raise ParameterError("node index out of range")
        for i in idxs:
            if len(available[i]) != p.alpha:
                raise ParameterError(f"node {i} must have {p.alpha} symbols")
        use = idxs[: p.k]
        data = []
        for s in range(p.beta):
            seg = {
                i: list(available[i][s * self.alpha1 : (s + 1) * self.alpha1])
                for i in use
            }
            if p.mode == MBR:
                data.extend(self._collect_stripe_mbr(use, seg))
            else:
                data.extend(self._collect_stripe_msr(use, seg))
        data = tuple(data)
        if len(idxs) > p.k:
            word = self.encode(data)
            for i in idxs[p.k :]:
                if tuple(available[i]) != word[i]:
                    raise CorruptionError(f"node {i} disagrees with the decoded file")
        return data

    def _collect_stripe_mbr(self, use, seg):
        F = self.field
        k, d = self.params.k, self.params.d
        phi = [self._phi(i, k) for i in use]
        phi_inv = linalg.inv(F, phi)
        y_left = [seg[i][:k] for i in use]
        if d > k:
            delta = [self._psi(i)[k:] for i in use]
            y_right = [seg[i][k:] for i in use]
            T = linalg.mat_mul(F, phi_inv, y_right)
            corr = linalg.mat_mul(F, delta, linalg.transpose(T))
            diff = [
                [F.sub(y_left[r][c], corr[r][c]) for c in range(k)]
                for r in range(k)
            ]
        else:
            T = [[] for _ in range(k)]
            diff = y_left
        S = linalg.mat_mul(F, phi_inv, diff)
        return _upper_triangle(S) + [v for row in T for v in row]

    def _collect_stripe_msr(self, use, seg):
        F = self.field
        a = self.alpha1
        virt = list(range(self.params.n, self.aux_n))
        rows = use + virt
        C = [seg[i] for i in use] + [[F.zero] * a for _ in virt]
        phi = [self._phi(i, a) for i in rows]
        lam = [self.lams[i] for i in rows]
        P = linalg.mat_mul(F, C, linalg.transpose(phi))
        K = len(rows)
        B = [[F.zero] * K for _ in range(K)]
        A = [[F.zero] * K for _ in range(K)]
        for i in range(K):
            for j in range(K):
                if i == j:
                    continue
                num = F.sub(P[i][j], P[j][i])
                B[i][j] = F.div(num, F.sub(lam[i], lam[j]))
                A[i][j] = F.sub(P[i][j], F.mul(lam[i], B[i][j]))
        S2 = self._solve_symmetric(phi, B)
        S1 = self._solve_symmetric(phi, A)
        aux_msg = _upper_triangle(S1) + _upper_triangle(S2)
        return self._aux_to_stripe(aux_msg)

    def _solve_symmetric(self, phi, Q):
        """Recover symmetric S with phi_i S phi_j^t = Q[i][j] (i != j)."""
        F = self.field
        a = self.alpha1
        rows_of_s_phi = []
        for i in range(a):
            others = [j for j in range(len(phi)) if j != i][:a]
            A = [phi[j] for j in others]
            b = [Q[i][j] for j in others]
            rows_of_s_phi.append(linalg.solve(F, A, b))  # = phi_i S
        Phi_sel = [phi[i] for i in range(a)]
        return linalg.mat_mul(F, linalg.inv(F, Phi_sel), rows_of_s_phi)
