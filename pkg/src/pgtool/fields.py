"""Exact arithmetic in GF(p^k).

Elements are integer codes in ``[0, p^k)``; the base-p digits of a code
are the coefficients of a polynomial over GF(p), constant term first.
Every field is built on a canonical modulus: the lexicographically
smallest monic irreducible polynomial of degree k over GF(p), where
moduli are compared as ascending-coefficient tuples.  This makes field
descriptors reproducible bit for bit across runs and machines.
"""

from __future__ import annotations

import functools
from itertools import product

from .errors import (
    DegreeZero,
    FieldMismatch,
    NonPrimeP,
    SizeCapExceeded,
    ZeroInverse,
)

SIZE_CAP = 1 << 20
_TABLE_CAP = 256  # dense op tables are built for fields up to this order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m, over GF(p)."""
    a = _poly_trim([x % p for x in a])
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
        _poly_trim(a)
    return a


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(poly)/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_rem(poly, divisor, p):
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p)."""
    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # cannot happen


class GaloisField:
    """GF(p^k) with integer-coded elements and canonical modulus.

    Instances are immutable; all operations are pure functions of their
    arguments, so a field can be shared freely between threads.
    """

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise NonPrimeP(f"p = {p} is not prime")
        if k < 1:
            raise DegreeZero(f"extension degree must be >= 1, got {k}")
        q = p**k
        if q > SIZE_CAP:
            raise SizeCapExceeded(f"field order {q} exceeds cap {SIZE_CAP}")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = canonical_modulus(p, k)
        self._install_ops()

    # -- construction of the arithmetic closures ------------------------

    def _install_ops(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            add = lambda a, b: (a + b) % p
            sub = lambda a, b: (a - b) % p
            neg = lambda a: (-a) % p
            mul = lambda a, b: (a * b) % p
        else:
            decode = self._decode
            encode = self._encode
            modulus = list(self.modulus)

            def add(a, b):
                da, db = decode(a), decode(b)
                if len(da) < len(db):
                    da, db = db, da
                out = list(da)
                for i, x in enumerate(db):
                    out[i] = (out[i] + x) % p
                return encode(out)

            def sub(a, b):
                da, db = decode(a), decode(b)
                out = list(da) + [0] * (len(db) - len(da))
                for i, x in enumerate(db):
                    out[i] = (out[i] - x) % p
                return encode(out)

            def neg(a):
                return encode([(-x) % p for x in self._decode(a)])

            def mul(a, b):
                return encode(_poly_rem(_poly_mul(decode(a), decode(b), p), modulus, p))

        if q <= _TABLE_CAP:
            rng = range(q)
            add_t = [[add(a, b) for b in rng] for a in rng]
            mul_t = [[mul(a, b) for b in rng] for a in rng]
            neg_t = [neg(a) for a in rng]
            self.add = lambda a, b: add_t[a][b]
            self.sub = lambda a, b: add_t[a][neg_t[b]]
            self.neg = lambda a: neg_t[a]
            self.mul = lambda a, b: mul_t[a][b]
            inv_t = [0] * q
            for a in range(1, q):
                inv_t[a] = self._pow_with(mul, a, q - 2)

            def inv(a):
                if a == 0:
                    raise ZeroInverse("0 has no multiplicative inverse")
                return inv_t[a]

            self.inv = inv
            frob_t = [[self._pow_with(mul, a, p**m) for a in rng] for m in range(k)]
            self.frobenius = lambda a, m=1: frob_t[m % k][a]
        else:
            self.add, self.sub, self.neg, self.mul = add, sub, neg, mul

            def inv(a):
                if a == 0:
                    raise ZeroInverse("0 has no multiplicative inverse")
                return self._pow_with(mul, a, q - 2)

            self.inv = inv
            self.frobenius = lambda a, m=1: self._pow_with(mul, a, p ** (m % k))

    @staticmethod
    def _pow_with(mul, a: int, e: int) -> int:
        r = 1
        while e > 0:
            e, bit = divmod(e, 2)
            if bit:
                r = mul(r, a)
            if e:
                a = mul(a, a)
        return r

    def _decode(self, code: int) -> list[int]:
        p = self.p
        out = []
        while code:
            code, d = divmod(code, p)
            out.append(d)
        return out

    def _encode(self, digits: list[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    # -- public API ------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self._pow_with(self.mul, self.inv(a), -e)
        return self._pow_with(self.mul, a, e)

    def automorphism_exponents(self) -> range:
        """Exponents m of the k Frobenius automorphisms x -> x^(p^m)."""
        return range(self.k)

    def descriptor(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))


@functools.lru_cache(maxsize=None)
def create_field(p: int, k: int) -> GaloisField:
    """Build (or fetch the cached) GF(p^k) with the canonical modulus."""
    return GaloisField(p, k)


def field_from_descriptor(d: dict) -> GaloisField:
    """Rebuild a field from its serialized descriptor, validating the modulus."""
    field = create_field(int(d["p"]), int(d["k"]))
    recorded = tuple(int(c) for c in d["modulus"])
    if recorded != field.modulus:
        raise FieldMismatch(
            f"descriptor modulus {list(recorded)} differs from canonical "
            f"{list(field.modulus)}"
        )
    return field


def prime_power(q: int) -> tuple[int, int]:
    """Split q into (p, k) with p prime, or raise."""
    if q < 2:
        raise NonPrimeP(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise NonPrimeP(f"{q} is not a prime power")
            return p, k
    raise NonPrimeP(f"{q} is not a prime power")


def automorphisms(field: GaloisField) -> list[int]:
    """All automorphism exponents of the field, identity first."""
    return list(field.automorphism_exponents())


def apply_automorphism(field: GaloisField, m: int, a: int) -> int:
    return field.frobenius(a, m)


def element_ops(field: GaloisField, kind: str, a: int, b: int | None = None) -> int:
    """Checked single-operation entry point used by the CLI.

    ``kind`` is one of add, mul, inv, pow; for pow, b is an integer
    exponent rather than an element code.
    """
    if not isinstance(a, int) or not 0 <= a < field.q:
        raise FieldMismatch(f"code {a} outside [0, {field.q})")
    if kind in ("add", "mul") and (
        not isinstance(b, int) or not 0 <= b < field.q
    ):
        raise FieldMismatch(f"code {b} outside [0, {field.q})")
    if kind == "add":
        return field.add(a, b)
    if kind == "mul":
        return field.mul(a, b)
    if kind == "inv":
        return field.inv(a)
    if kind == "pow":
        if not isinstance(b, int):
            raise FieldMismatch("pow requires an integer exponent")
        return field.pow(a, b)
    raise FieldMismatch(f"unknown operation {kind!r}")
