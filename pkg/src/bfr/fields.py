"""Exact finite-field arithmetic.

Three kinds of fields, all with exact integer-backed elements:

* ``PrimeField(p)`` -- integers mod a prime ``p``.
* ``BinaryExtField(w)`` -- GF(2^w) with elements stored as ``w``-bit
  integers interpreted as polynomials over GF(2) in a fixed polynomial
  basis.  Doubles as the degree-``w`` extension tower over GF(2): the
  coefficient vector of an element is simply its bit vector.
* ``TowerField(base, m)`` -- a degree-``m`` extension of an arbitrary
  ``PrimeField`` or ``BinaryExtField`` base.  Elements are length-``m``
  tuples of base-field elements (polynomial basis, low degree first).

Default modulus polynomials (one fixed choice per degree, bit form,
also listed in ``docs/formats.md``)::

    w :  1      2      3      4      5      6       7       8
         0x3    0x7    0xB    0x13   0x25   0x43    0x89    0x11D
    w :  9      10     11     12     13     14      15      16
         0x211  0x409  0x805  0x1053 0x201B 0x4443  0x8003  0x1100B

Each is irreducible over GF(2) and primitive, so the element ``2``
(the polynomial ``x``) generates the multiplicative group and discrete
log tables are valid.  ``TowerField`` without an explicit modulus scans
monic degree-``m`` polynomials over its base in a fixed order and takes
the first irreducible one, so the choice is reproducible.

Extension fields additionally expose the structure used by rank-metric
machinery: ``vec``/``unvec`` between elements and base-field coefficient
vectors, ``frobenius`` (the map ``y -> y**q`` for base order ``q``), and
``embed_base`` for lifting base-field scalars.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import FieldMismatchError, ParameterError

# Fixed modulus table for GF(2^w), bit representation, degree 1..16.
_DEFAULT_MODULI = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}

_TABLE_LIMIT = 16  # build log/antilog tables up to this degree


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# GF(2)[x] helpers on bit-packed polynomials.


def _gf2_deg(a: int) -> int:
    return a.bit_length() - 1


def _gf2_mulmod(a: int, b: int, mod: int) -> int:
    deg = _gf2_deg(mod)
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= mod
    return r


def _gf2_mod(a: int, mod: int) -> int:
    dm = _gf2_deg(mod)
    da = _gf2_deg(a)
    while da >= dm:
        a ^= mod << (da - dm)
        da = _gf2_deg(a)
    return a


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _gf2_powmod(a: int, e: int, mod: int) -> int:
    r = 1
    a = _gf2_mod(a, mod)
    while e:
        if e & 1:
            r = _gf2_mulmod(r, a, mod)
        a = _gf2_mulmod(a, a, mod)
        e >>= 1
    return r


def gf2_poly_irreducible(poly: int) -> bool:
    """Irreducibility of a bit-packed polynomial over GF(2).

    Uses the standard criterion: with ``n = deg poly``,
    ``x**(2**n) == x (mod poly)`` and ``gcd(x**(2**(n/p)) - x, poly) == 1``
    for every prime ``p`` dividing ``n``.
    """
    n = _gf2_deg(poly)
    if n < 1:
        return False
    if n == 1:
        return True
    if poly & 1 == 0:  # divisible by x
        return False
    x = 0b10
    t = x
    powers = {}
    for i in range(1, n + 1):
        t = _gf2_mulmod(t, t, poly)
        powers[i] = t  # t == x**(2**i) mod poly
    if powers[n] != _gf2_mod(x, poly):
        return False
    for p in _prime_factors(n):
        g = _gf2_gcd(powers[n // p] ^ x, poly)
        if _gf2_deg(g) > 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Field classes.


class PrimeField:
    """GF(p) for prime p.  Elements are ints in [0, p)."""

    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ParameterError(f"modulus {p} is not prime")
        self.p = p
        self.order = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.inv(self.pow(a, -e))
        return pow(a, e, self.p)

    def element_ok(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.p

    def elements(self) -> Iterable[int]:
        return range(self.p)

    def describe(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class BinaryExtField:
    """GF(2^w), elements as w-bit ints over a fixed modulus polynomial.

    Also serves as the degree-w tower over GF(2): ``q == 2``, ``m == w``,
    and ``vec`` returns the bit vector of an element.
    """

    kind = "gf2"

    def __init__(self, w: int, modulus: int | None = None):
        if w < 1:
            raise ParameterError("extension degree must be >= 1")
        if modulus is None:
            if w not in _DEFAULT_MODULI:
                raise ParameterError(
                    f"no default modulus for degree {w}; pass one explicitly"
                )
            modulus = _DEFAULT_MODULI[w]
        if _gf2_deg(modulus) != w:
            raise ParameterError(
                f"modulus degree {_gf2_deg(modulus)} does not match field degree {w}"
            )
        if not gf2_poly_irreducible(modulus):
            raise ParameterError(f"modulus {modulus:#x} is reducible over GF(2)")
        self.w = w
        self.modulus = modulus
        self.order = 1 << w
        self.char = 2
        self.zero = 0
        self.one = 1
        # tower-protocol attributes (extension of GF(2))
        self.q = 2
        self.m = w
        self.base_field = PrimeField(2)
        self._exp = None
        self._log = None
        if w <= _TABLE_LIMIT:
            self._try_build_tables()

    def _try_build_tables(self):
        # valid only when x (=2) is primitive; fall back to clmul otherwise
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        a = 1
        seen = set()
        for i in range(n):
            exp[i] = a
            if a in seen:
                return
            seen.add(a)
            log[a] = i
            a = _gf2_mulmod(a, 2, self.modulus)
        if a != 1:
            return
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return _gf2_mulmod(a, b, self.modulus)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^%d)" % self.w)
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return _gf2_powmod(a, self.order - 2, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.inv(self.pow(a, -e))
        if a == 0:
            return 0 if e else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        return _gf2_powmod(a, e, self.modulus)

    def frobenius(self, a):
        """y -> y**q with q = 2."""
        return self.mul(a, a)

    def vec(self, a) -> tuple:
        return tuple((a >> i) & 1 for i in range(self.w))

    def unvec(self, coeffs: Sequence[int]):
        if len(coeffs) != self.w:
            raise FieldMismatchError(
                f"coefficient vector of length {len(coeffs)}, expected {self.w}"
            )
        v = 0
        for i, c in enumerate(coeffs):
            if c:
                v |= 1 << i
        return v

    def embed_base(self, a):
        # GF(2) scalars 0/1 are already valid elements of this field
        return a

    def element_ok(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.order

    def elements(self) -> Iterable[int]:
        return range(self.order)

    def describe(self) -> dict:
        return {"kind": "gf2", "w": self.w, "modulus": self.modulus}

    def __eq__(self, other):
        return (
            isinstance(other, BinaryExtField)
            and other.w == self.w
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("gf2", self.w, self.modulus))

    def __repr__(self):
        return f"BinaryExtField({self.w}, modulus={self.modulus:#x})"


# ---------------------------------------------------------------------------
# Dense polynomial helpers over an arbitrary base field (coefficient lists,
# low degree first).  Used for tower moduli and tower arithmetic.


def _pstrip(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _pdeg(c):
    return len(_pstrip(c)) - 1


def _pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == F.zero:
            continue
        for j, bj in enumerate(b):
            if bj == F.zero:
                continue
            out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return _pstrip(out)


def _pdivmod(F, a, b):
    a = list(_pstrip(a))
    b = _pstrip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    q = [F.zero] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        coef = F.mul(a[-1], lead_inv)
        q[da - db] = coef
        for i in range(db + 1):
            a[da - db + i] = F.sub(a[da - db + i], F.mul(coef, b[i]))
        a = list(_pstrip(a))
    return _pstrip(q), a


def _pmod(F, a, b):
    return _pdivmod(F, a, b)[1]


def _pgcd(F, a, b):
    a, b = _pstrip(a), _pstrip(b)
    while b:
        a, b = b, _pmod(F, a, b)
    if a:
        # make monic for determinism
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def _char_pow(F, c):
    """c**p for the field characteristic p (Fermat shortcut on prime fields)."""
    if F.order == F.char:
        return c
    e = F.char
    r = F.one
    b = c
    while e:
        if e & 1:
            r = F.mul(r, b)
        b = F.mul(b, b)
        e >>= 1
    return r


def _pfrob(F, a, mod):
    """a**q mod `mod` for q = F.order, one characteristic power at a time.

    In characteristic p the p-th power map acts coefficientwise:
    (sum a_i x^i)**p = sum a_i**p x**(p*i).  Iterating that log_p(q) times
    replaces the generic square-and-multiply ladder, which is the difference
    between an affordable and an unusable default-modulus search once the
    extension degree gets into the twenties.
    """
    p = F.char
    a = _pmod(F, a, mod)
    q = F.order
    while q > 1:
        q //= p
        spread = [F.zero] * (p * max(1, len(a)))
        for i, c in enumerate(a):
            if c != F.zero:
                spread[p * i] = _char_pow(F, c)
        a = _pmod(F, spread, mod)
    return a


def poly_irreducible(F, poly) -> bool:
    """Irreducibility over an arbitrary base field F (dense coefficients)."""
    poly = _pstrip(list(poly))
    n = len(poly) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if poly[0] == F.zero:  # divisible by x
        return False
    x = [F.zero, F.one]
    t = x
    powers = {}
    xm = _pmod(F, x, poly)
    for i in range(1, n + 1):
        t = _pfrob(F, t, poly)
        powers[i] = t
        if i <= n // 2:
            # any factor of degree dividing i surfaces here; rejecting
            # early keeps the default-modulus search affordable
            diff = _pstrip([F.sub(a, b) for a, b in _zip_pad(F, t, xm)])
            if _pdeg(_pgcd(F, diff, poly)) > 0:
                return False
    if _pstrip([F.sub(a, b) for a, b in _zip_pad(F, powers[n], xm)]):
        return False
    for p in _prime_factors(n):
        diff = _pstrip([F.sub(a, b) for a, b in _zip_pad(F, powers[n // p], xm)])
        if _pdeg(_pgcd(F, diff, poly)) > 0:
            return False
    return True


def _zip_pad(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [F.zero] * (n - len(a))
    b = list(b) + [F.zero] * (n - len(b))
    return zip(a, b)


# found default moduli, remembered per (base, degree) for the process
_TOWER_MODULI = {}


class TowerField:
    """Degree-m extension of a prime or binary base field.

    Elements are length-m tuples of base elements in the polynomial basis
    (low degree first).  The default modulus is the first monic irreducible
    degree-m polynomial in a fixed pseudorandom enumeration seeded by the
    base field and degree, so two constructions with the same parameters
    agree exactly, across processes included.
    """

    kind = "tower"

    def __init__(self, base, m: int, modulus: Sequence | None = None):
        if not isinstance(base, (PrimeField, BinaryExtField)):
            raise ParameterError("tower base must be a prime or binary field")
        if m < 1:
            raise ParameterError("tower degree must be >= 1")
        self.base = base
        self.m = m
        self.q = base.order
        self.base_field = base
        self.char = base.char
        self.order = base.order**m
        if modulus is None:
            modulus = self._find_modulus()
        modulus = _pstrip(list(modulus))
        if len(modulus) - 1 != m:
            raise ParameterError("tower modulus degree does not match m")
        if modulus[-1] != base.one:
            raise ParameterError("tower modulus must be monic")
        if not poly_irreducible(base, modulus):
            raise ParameterError("tower modulus is reducible over the base field")
        self.modulus = tuple(modulus)
        self.zero = tuple([base.zero] * m)
        self.one = tuple([base.one] + [base.zero] * (m - 1))
        # reduction table: x^(m+j) mod f for j = 0..m-2
        self._red = []
        xm = [base.sub(base.zero, c) for c in modulus[:-1]]  # x^m = -(low part)
        cur = xm
        for _ in range(m - 1):
            self._red.append(tuple(cur))
            cur = self._shift_reduce(cur, xm)

    def _shift_reduce(self, cur, xm):
        base = self.base
        out = [base.zero] + list(cur[: self.m - 1])
        top = cur[self.m - 1]
        if top != base.zero:
            out = [base.add(o, base.mul(top, c)) for o, c in zip(out, xm)]
        return out

    def _find_modulus(self):
        base = self.base
        key = (base.kind, tuple(sorted(base.describe().items())), self.m)
        if key in _TOWER_MODULI:
            return list(_TOWER_MODULI[key])
        q = base.order
        m = self.m
        elems = list(base.elements())

        def tail(u):
            coeffs = []
            for _ in range(m):
                coeffs.append(elems[u % q])
                u //= q
            return coeffs

        def check(coeffs):
            if coeffs[0] == base.zero:
                return None
            poly = coeffs + [base.one]
            if poly_irreducible(base, poly):
                _TOWER_MODULI[key] = tuple(poly)
                return poly
            return None

        # About 1/m of monic degree-m polynomials are irreducible, so a
        # seeded pseudorandom scan ends after ~m tries; plain counter order
        # stalls for large m because the small-support tails it visits first
        # are almost never irreducible.  The string seed keeps the choice
        # identical across processes.
        rng = random.Random(f"tower modulus {key!r}")
        for _ in range(64 * m):
            found = check(tail(rng.randrange(q**m)))
            if found:
                return found
        for u in range(q**m):  # exhaustive fallback, statistically unreachable
            found = check(tail(u))
            if found:
                return found
        raise ParameterError("no irreducible modulus found (unreachable)")

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        m = self.m
        prod = [base.zero] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai == base.zero:
                continue
            for j, bj in enumerate(b):
                if bj == base.zero:
                    continue
                prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        out = list(prod[:m])
        for j in range(m - 1):
            c = prod[m + j]
            if c != base.zero:
                red = self._red[j]
                out = [base.add(o, base.mul(c, r)) for o, r in zip(out, red)]
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in tower field")
        base = self.base
        # extended euclid over base[x]
        r0, r1 = list(self.modulus), _pstrip(list(a))
        s0, s1 = [], [base.one]
        while _pdeg(r1) > 0:
            qpoly, rem = _pdivmod(base, r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _pstrip(
                [
                    base.sub(x, y)
                    for x, y in _zip_pad(base, s0, _pmul(base, qpoly, s1))
                ]
            )
        if not r1:
            raise ZeroDivisionError("element not invertible (modulus reducible?)")
        c_inv = base.inv(r1[0])
        s1 = [base.mul(c, c_inv) for c in s1]
        s1 = s1 + [base.zero] * (self.m - len(s1))
        return tuple(s1[: self.m])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.inv(self.pow(a, -e))
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a):
        """y -> y**q for base order q."""
        return self.pow(a, self.q)

    def vec(self, a) -> tuple:
        return tuple(a)

    def unvec(self, coeffs: Sequence):
        if len(coeffs) != self.m:
            raise FieldMismatchError(
                f"coefficient vector of length {len(coeffs)}, expected {self.m}"
            )
        return tuple(coeffs)

    def embed_base(self, a):
        return tuple([a] + [self.base.zero] * (self.m - 1))

    def element_ok(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.m
            and all(self.base.element_ok(c) for c in a)
        )

    def elements(self) -> Iterable[tuple]:
        base_elems = list(self.base.elements())
        q = self.base.order

        def gen():
            for u in range(self.order):
                t = u
                coeffs = []
                for _ in range(self.m):
                    coeffs.append(base_elems[t % q])
                    t //= q
                yield tuple(coeffs)

        return gen()

    def describe(self) -> dict:
        mod = [
            c if isinstance(c, int) else list(c) for c in self.modulus
        ]
        return {
            "kind": "tower",
            "base": self.base.describe(),
            "m": self.m,
            "modulus": mod,
        }

    def __eq__(self, other):
        return (
            isinstance(other, TowerField)
            and other.base == self.base
            and other.m == self.m
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("tower", self.base, self.m, self.modulus))

    def __repr__(self):
        return f"TowerField({self.base!r}, m={self.m})"


def field_from_spec(spec: dict):
    """Rebuild a field object from its ``describe()`` dictionary."""
    kind = spec.get("kind")
    if kind == "prime":
        return PrimeField(spec["p"])
    if kind == "gf2":
        return BinaryExtField(spec["w"], modulus=spec.get("modulus"))
    if kind == "tower":
        base = field_from_spec(spec["base"])
        modulus = [
            tuple(c) if isinstance(c, list) else c for c in spec["modulus"]
        ]
        return TowerField(base, spec["m"], modulus=modulus)
    raise ParameterError(f"unknown field spec kind {kind!r}")


# ---------------------------------------------------------------------------
# Vector-space structure of extension fields.


def vector_rank(field, elems) -> int:
    """Rank over the base field of a list of extension-field elements.

    ``field`` must expose the tower protocol (``vec`` and ``base_field``).
    """
    base = field.base_field
    rows = [list(field.vec(e)) for e in elems]
    return _base_rank(base, rows)


def _base_rank(base, rows) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][col] != base.zero:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = base.inv(rows[r][col])
        rows[r] = [base.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != base.zero:
                f = rows[i][col]
                rows[i] = [
                    base.sub(x, base.mul(f, y)) for x, y in zip(rows[i], rows[r])
                ]
        rank += 1
        r += 1
        col += 1
    return rank


class IndependenceTracker:
    """Incremental base-field independence test for extension elements.

    Feed candidate elements with :meth:`offer`; it returns True and keeps
    the element when it enlarges the span.
    """

    def __init__(self, field):
        self.field = field
        self.base = field.base_field
        self._rows = []  # row-reduced basis of accepted vectors

    @property
    def rank(self) -> int:
        return len(self._rows)

    def offer(self, elem) -> bool:
        base = self.base
        row = list(self.field.vec(elem))
        for prow, pcol in self._rows:
            if row[pcol] != base.zero:
                f = row[pcol]
                row = [base.sub(x, base.mul(f, y)) for x, y in zip(row, prow)]
        for col, val in enumerate(row):
            if val != base.zero:
                inv = base.inv(val)
                row = [base.mul(inv, x) for x in row]
                self._rows.append((row, col))
                return True
        return False


# ---------------------------------------------------------------------------
# Linearized polynomials: f(y) = sum_i a_i * y**(q**i).


class LinearizedPoly:
    """A q-linearized polynomial over an extension field.

    Coefficients are listed by q-degree: ``coeffs[i]`` multiplies
    ``y**(q**i)``.  Evaluation is additive and base-field linear:
    ``f(u + v) == f(u) + f(v)`` and ``f(c*u) == c*f(u)`` for base ``c``.
    """

    def __init__(self, field, coeffs: Sequence):
        self.field = field
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == field.zero:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @property
    def qdegree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, y):
        F = self.field
        acc = F.zero
        power = y  # y**(q**0)
        for i, c in enumerate(self.coeffs):
            if c != F.zero:
                acc = F.add(acc, F.mul(c, power))
            if i + 1 < len(self.coeffs):
                power = F.frobenius(power)
        return acc


def smallest_binary_field(min_nonzero: int) -> BinaryExtField:
    """Smallest GF(2^w) with at least ``min_nonzero`` nonzero elements."""
    w = 1
    while (1 << w) - 1 < min_nonzero:
        w += 1
    return BinaryExtField(w)
