"""System-wide parameters of a block-organized DSS and their validation.

Nodes are split into ``b`` equal blocks of ``c = n/b`` nodes.  Data
collection reads ``k_c = k/(b-rho)`` nodes from each of any ``b-rho``
blocks; repair reads ``d_r = d/(b-sigma)`` nodes from each of any
``b-sigma`` blocks, ``beta`` symbols per helper.

Classification of a valid parameter set is total:

* ``I.A`` -- repair spread at least as wide as collection per block
  (``d_r >= k_c``) with ``sigma <= rho``;
* ``I.B`` -- ``d_r >= k_c`` with ``sigma > rho``;
* ``II``  -- ``d_r < k_c``, which forces ``rho > sigma``;

``d_r < k_c`` with ``rho <= sigma`` admits no working code and is
rejected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

REGIME_IA = "I.A"
REGIME_IB = "I.B"
REGIME_II = "II"


@dataclass(frozen=True)
class SystemParams:
    n: int
    b: int
    M: int
    k: int
    rho: int
    d: int
    sigma: int
    alpha: int | None = None
    beta: int | None = None

    def __post_init__(self):
        for name in ("n", "b", "M", "k", "d"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} must be positive")
        if not (0 <= self.rho < self.b):
            raise ParameterError(f"need 0 <= rho < b, got rho={self.rho}, b={self.b}")
        if not (1 <= self.sigma < self.b):
            raise ParameterError(
                f"need 1 <= sigma < b, got sigma={self.sigma}, b={self.b}"
            )
        if self.alpha is not None and self.alpha < 1:
            raise ParameterError("alpha must be positive when given")
        if self.beta is not None and self.beta < 1:
            raise ParameterError("beta must be positive when given")
        if (
            self.alpha is not None
            and self.beta is not None
            and self.beta > self.alpha
        ):
            raise ParameterError("a helper cannot send more than it stores (beta > alpha)")

    @property
    def c(self) -> int:
        if self.n % self.b:
            raise ParameterError(f"blocks must be equal-sized: {self.b} does not divide n={self.n}")
        return self.n // self.b

    @property
    def k_c(self) -> int:
        if self.k % (self.b - self.rho):
            raise ParameterError(
                f"b-rho={self.b - self.rho} does not divide k={self.k}"
            )
        return self.k // (self.b - self.rho)

    @property
    def d_r(self) -> int:
        if self.d % (self.b - self.sigma):
            raise ParameterError(
                f"b-sigma={self.b - self.sigma} does not divide d={self.d}"
            )
        return self.d // (self.b - self.sigma)

    @property
    def gamma(self) -> int:
        if self.beta is None:
            raise ParameterError("gamma needs beta")
        return self.d * self.beta


def validate_params(p: SystemParams) -> str:
    """Classify a parameter set, or reject it naming the violated constraint."""
    c, k_c, d_r = p.c, p.k_c, p.d_r  # divisibility checks happen here
    if k_c > c:
        raise ParameterError(f"k_c={k_c} exceeds block size c={c}")
    if d_r > c:
        raise ParameterError(f"d_r={d_r} exceeds block size c={c}")
    if d_r >= k_c:
        return REGIME_IA if p.sigma <= p.rho else REGIME_IB
    if p.rho > p.sigma:
        return REGIME_II
    raise ParameterError(
        f"d_r={d_r} < k_c={k_c} requires rho > sigma, got rho={p.rho}, sigma={p.sigma}"
    )


def params_to_text(p: SystemParams) -> str:
    lines = []
    for name in ("n", "b", "M", "k", "rho", "d", "sigma", "alpha", "beta"):
        value = getattr(p, name)
        if value is not None:
            lines.append(f"{name}: {value}")
    return "\n".join(lines) + "\n"


def params_from_text(text: str) -> SystemParams:
    """Parse the ``key: value`` parameter document format."""
    fields = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        if ":" not in ln:
            raise ParameterError(f"bad parameter line: {ln!r}")
        key, _, value = ln.partition(":")
        key = key.strip()
        if key in fields:
            raise ParameterError(f"duplicate parameter {key!r}")
        try:
            fields[key] = int(value.strip())
        except ValueError:
            raise ParameterError(f"non-integer value for {key!r}: {value.strip()!r}")
    allowed = {"n", "b", "M", "k", "rho", "d", "sigma", "alpha", "beta"}
    unknown = set(fields) - allowed
    if unknown:
        raise ParameterError(f"unknown parameter keys: {sorted(unknown)}")
    missing = {"n", "b", "M", "k", "rho", "d", "sigma"} - set(fields)
    if missing:
        raise ParameterError(f"missing parameter keys: {sorted(missing)}")
    return SystemParams(**fields)
