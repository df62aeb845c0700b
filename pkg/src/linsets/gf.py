"""Finite field tower F_p < F_q < F_{q^m} with integer-encoded elements.

Every element is stored as a non-negative integer.  An element of
F_q = F_p[x]/(irr_q) is encoded by the base-p little-endian digits of its
coefficient vector; an element of F_{q^m} = F_q[y]/(irr_qm) is encoded as
sum_i c_i * q^i where c_i is the encoding of its i-th F_q coordinate.  Both
levels therefore share one flat base-p digit layout, which makes addition a
digit-wise operation and embeds F_q inside F_{q^m} as the integers below q.

Multiplication goes through exp/log tables built from a primitive element, so
all arithmetic methods accept numpy arrays as well as plain ints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

import numpy as np

MAX_ORDER = 1 << 20
_ADD_TABLE_LIMIT = 1 << 10


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class GaloisField:
    """A finite field, either prime or a simple extension of another GaloisField.

    ``base`` is ``None`` for the prime field F_p.  Otherwise ``modulus`` is the
    monic defining polynomial over ``base`` given low-degree-first as base
    encodings.  All arithmetic is vectorized over numpy arrays.
    """

    def __init__(self, p: int, base: Optional["GaloisField"] = None,
                 modulus: Optional[Sequence[int]] = None):
        self.p = p
        self.base = base
        if base is None:
            self.degree = 1
            self.modulus = None
            self.order = p
        else:
            self.modulus = tuple(int(c) for c in modulus)
            self.degree = len(self.modulus) - 1
            self.order = base.order ** self.degree
        if self.order > MAX_ORDER:
            raise ValueError(f"field order {self.order} exceeds desk-scale limit {MAX_ORDER}")
        # number of base-p digits of an encoding
        self.pdigits = round(np.log(self.order) / np.log(p))
        self._build_tables()

    # -- construction -------------------------------------------------------

    def _scalar_mul_poly(self, a: list[int], b: list[int]) -> list[int]:
        """Multiply coefficient lists over the base and reduce mod the modulus."""
        base = self.base
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = base.sadd(out[i + j], base.smul(ai, bj))
        d = self.degree
        mod = self.modulus
        for top in range(len(out) - 1, d - 1, -1):
            c = out[top]
            if c == 0:
                continue
            for j in range(d):
                if mod[j]:
                    out[top - d + j] = base.ssub(out[top - d + j], base.smul(c, mod[j]))
            out[top] = 0
        out = out[:d] + [0] * max(0, d - len(out))
        return out

    def _int_to_coeffs(self, a: int) -> list[int]:
        r = self.base.order
        out = []
        for _ in range(self.degree):
            a, c = divmod(a, r)
            out.append(c)
        return out

    def _coeffs_to_int(self, cs: Sequence[int]) -> int:
        r = self.base.order
        v = 0
        for c in reversed(cs):
            v = v * r + c
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        return self._coeffs_to_int(self._scalar_mul_poly(self._int_to_coeffs(a), self._int_to_coeffs(b)))

    def _slow_pow(self, a: int, e: int) -> int:
        result, acc = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, acc)
            acc = self._slow_mul(acc, acc)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        n = self.order
        p = self.p
        digits = np.zeros((n, self.pdigits), dtype=np.int64)
        rest = np.arange(n, dtype=np.int64)
        for i in range(self.pdigits):
            digits[:, i] = rest % p
            rest //= p
        self._pweights = p ** np.arange(self.pdigits, dtype=np.int64)
        self._digits = digits
        if p != 2 and n <= _ADD_TABLE_LIMIT:
            a = digits[:, None, :] + digits[None, :, :]
            self._add_table = ((a % p) @ self._pweights).astype(np.int64)
            self._neg_table = (((p - digits) % p) @ self._pweights).astype(np.int64)
            self._add_list = self._add_table.tolist()
            self._neg_list = self._neg_table.tolist()
        else:
            self._add_table = None
            self._neg_table = None
            self._add_list = None
        if n == 2:
            gen = 1
        else:
            factors = _prime_factors(n - 1)
            gen = next(g for g in range(2, n)
                       if all(self._slow_pow(g, (n - 1) // r) != 1 for r in factors))
        self.generator = gen
        exp = [1] * (n - 1)
        if self.base is None:
            cur = 1
            for i in range(1, n - 1):
                cur = cur * gen % p
                exp[i] = cur
        elif p == 2 and self.base.order == 2 and gen == 2:
            # multiplication by y is a shift with conditional reduction
            modint = self._coeffs_to_int(self.modulus)
            top = 1 << self.degree
            cur = 1
            for i in range(1, n - 1):
                cur <<= 1
                if cur & top:
                    cur ^= modint
                exp[i] = cur
        else:
            g = self._int_to_coeffs(gen)
            while len(g) > 1 and g[-1] == 0:
                g.pop()
            cur = [1] + [0] * (self.degree - 1)
            for i in range(1, n - 1):
                cur = self._scalar_mul_poly(cur, g)
                exp[i] = self._coeffs_to_int(cur)
        exp_arr = np.array(exp, dtype=np.int64)
        if len(set(exp)) != n - 1:
            raise ValueError("defining polynomial is not irreducible")
        log = np.zeros(n, dtype=np.int64)
        log[exp_arr] = np.arange(n - 1, dtype=np.int64)
        self._exp = np.concatenate([exp_arr, exp_arr])
        self._log = log
        self._exp_list = exp
        self._log_list = log.tolist()

    # -- scalar (python int) arithmetic, used while building towers ---------

    def sadd(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_list is not None:
            return self._add_list[a][b]
        return int(self.add(a, b))

    def ssub(self, a: int, b: int) -> int:
        if self.base is None:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_list is not None:
            return self._add_list[a][self._neg_list[b]]
        return int(self.sub(a, b))

    def smul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp_list[(self._log_list[a] + self._log_list[b]) % (self.order - 1)]

    # -- vectorized arithmetic ---------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self._add_table is not None:
            return self._add_table[a, b]
        s = (self._digits[a] + self._digits[b]) % self.p
        return s @ self._pweights

    def neg(self, a):
        if self.p == 2:
            return a
        if self._neg_table is not None:
            return self._neg_table[a]
        return ((self.p - self._digits[a]) % self.p) @ self._pweights

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        r = self._exp[(self._log[a] * (e % (self.order - 1))) % (self.order - 1)]
        return np.where(a == 0, 0, r)

    def coords(self, a):
        """Coordinates over the base field, shape ``a.shape + (degree,)``."""
        a = np.asarray(a, dtype=np.int64)
        r = self.base.order if self.base is not None else self.order
        out = np.empty(a.shape + (self.degree,), dtype=np.int64)
        rest = a.copy()
        for i in range(self.degree):
            out[..., i] = rest % r
            rest = rest // r
        return out

    def from_coords(self, c):
        c = np.asarray(c, dtype=np.int64)
        r = self.base.order if self.base is not None else self.order
        return c @ (r ** np.arange(self.degree, dtype=np.int64))

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


def _poly_divides(field: GaloisField, f: Sequence[int], g: Sequence[int]) -> bool:
    """True when monic g divides f over ``field`` (coefficients low-first)."""
    r = list(f)
    dg = len(g) - 1
    for top in range(len(r) - 1, dg - 1, -1):
        c = r[top]
        if c == 0:
            continue
        for j in range(dg + 1):
            r[top - dg + j] = field.ssub(r[top - dg + j], field.smul(c, g[j]))
    return all(c == 0 for c in r[:dg])


def _monic_polys(field: GaloisField, degree: int):
    """Monic polynomials of a given degree, ordered by integer encoding."""
    for tail in product(range(field.order), repeat=degree):
        yield list(reversed(tail)) + [1]


def is_irreducible(field: GaloisField, f: Sequence[int]) -> bool:
    """Brute-force irreducibility: search for a monic divisor of degree <= deg/2."""
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        return False
    for e in range(1, d // 2 + 1):
        for g in _monic_polys(field, e):
            if _poly_divides(field, f, g):
                return False
    return True


def least_irreducible(field: GaloisField, degree: int) -> list[int]:
    """Monic irreducible of the given degree with the smallest integer encoding.

    The encoding is sum_i enc(c_i) * r^i over the low-degree-first coefficient
    list, r = |field|; for degree 4 over F_2 this picks x^4 + x + 1.
    """
    for g in _monic_polys(field, degree):
        if is_irreducible(field, g):
            return g
    raise ValueError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """The validated tower F_p < F_q < F_{q^m}; ``fq`` and ``fqm`` do the arithmetic."""

    p: int
    h: int
    m: int
    irr_q: tuple[int, ...]
    irr_qm: tuple[int, ...]
    fq: GaloisField = field(repr=False)
    fqm: GaloisField = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.h

    @property
    def qm(self) -> int:
        return self.fqm.order

    def _key(self):
        return (self.p, self.h, self.m, self.irr_q, self.irr_qm)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    # -- convenience wrappers over the F_{q^m} level -----------------------

    def frobenius(self, a, s: int):
        """a -> a^(q^s), applied entrywise."""
        return self.fqm.power(a, pow(self.q, s, self.qm - 1) or (self.qm - 1))

    def to_fq_coords(self, v) -> np.ndarray:
        """Flatten (..., k) F_{q^m} entries to (..., k*m) F_q coordinates."""
        c = self.fqm.coords(v)
        return c.reshape(c.shape[:-2] + (c.shape[-2] * c.shape[-1],))

    def from_fq_coords(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        k = c.shape[-1] // self.m
        return self.fqm.from_coords(c.reshape(c.shape[:-1] + (k, self.m)))

    def element(self, value: int, level: str = "Fqm") -> "Element":
        return Element(self, level, int(value))

    def to_json(self) -> dict:
        return {"p": self.p, "h": self.h, "m": self.m,
                "irr_q": list(self.irr_q), "irr_qm": list(self.irr_qm)}


def make_field_tower(p: int, h: int, m: int,
                     irr_q: Optional[Sequence[int]] = None,
                     irr_qm: Optional[Sequence[int]] = None) -> FieldSpec:
    """Build and validate the tower F_p < F_{p^h} < F_{p^{hm}}.

    Omitted irreducibles default to the least monic irreducible by integer
    encoding.  Polynomials are given low-degree-first.
    """
    return _make_field_tower(p, h, m,
                             None if irr_q is None else tuple(int(c) for c in irr_q),
                             None if irr_qm is None else tuple(int(c) for c in irr_qm))


@lru_cache(maxsize=None)
def _make_field_tower(p, h, m, irr_q, irr_qm) -> FieldSpec:
    if not is_prime(p):
        raise ValueError(f"p not prime: {p}")
    if h < 1 or m < 1:
        raise ValueError("h and m must be positive")
    if p ** (h * m) > MAX_ORDER:
        raise ValueError(f"p^(hm) = {p ** (h * m)} exceeds desk-scale limit {MAX_ORDER}")
    fp = GaloisField(p)
    if irr_q is None:
        irr_q = tuple(least_irreducible(fp, h))
    _check_poly(fp, irr_q, h, "irr_q")
    fq = GaloisField(p, fp, irr_q)
    if irr_qm is None:
        irr_qm = tuple(least_irreducible(fq, m))
    _check_poly(fq, irr_qm, m, "irr_qm")
    fqm = GaloisField(p, fq, irr_qm)
    return FieldSpec(p, h, m, irr_q, irr_qm, fq, fqm)


def _check_poly(base: GaloisField, f: Sequence[int], degree: int, name: str) -> None:
    if len(f) - 1 != degree:
        raise ValueError(f"{name} has degree {len(f) - 1}, expected {degree}")
    if f[-1] != 1:
        raise ValueError(f"{name} is not monic")
    if any(not 0 <= c < base.order for c in f):
        raise ValueError(f"{name} has coefficients outside the base field")
    if not is_irreducible(base, f):
        raise ValueError(f"{name} is reducible")


def field_from_json(data: dict) -> FieldSpec:
    return make_field_tower(int(data["p"]), int(data["h"]), int(data["m"]),
                            data.get("irr_q"), data.get("irr_qm"))


def load_field(path: str) -> FieldSpec:
    with open(path) as fh:
        return field_from_json(json.load(fh))


@dataclass(frozen=True)
class Element:
    """A single field element at level ``"Fq"`` or ``"Fqm"`` of a tower.

    The integer ``value`` is the canonical encoding; equality is structural.
    """

    spec: FieldSpec
    level: str
    value: int

    def __post_init__(self):
        if self.level not in ("Fq", "Fqm"):
            raise ValueError(f"unknown level {self.level!r}")
        if not 0 <= self.value < self._field.order:
            raise ValueError(f"encoding {self.value} out of range for {self.level}")

    @property
    def _field(self) -> GaloisField:
        return self.spec.fq if self.level == "Fq" else self.spec.fqm

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self._field.coords(self.value))

    @classmethod
    def from_coeffs(cls, spec: FieldSpec, level: str, coeffs: Sequence[int]) -> "Element":
        f = spec.fq if level == "Fq" else spec.fqm
        return cls(spec, level, int(f.from_coords(list(coeffs))))

    def _other(self, other: "Element") -> int:
        if not isinstance(other, Element):
            return NotImplemented
        if other.level != self.level or other.spec != self.spec:
            raise TypeError("level mismatch between field elements")
        return other.value

    def _wrap(self, v) -> "Element":
        return Element(self.spec, self.level, int(v))

    def __add__(self, other):
        return self._wrap(self._field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return self._wrap(self._field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return self._wrap(self._field.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return self._wrap(self._field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self._field.neg(self.value))

    def inv(self) -> "Element":
        return self._wrap(self._field.inv(self.value))

    def frobenius(self, s: int) -> "Element":
        if self.level != "Fqm":
            raise TypeError("frobenius acts on F_{q^m} elements")
        return self._wrap(self.spec.frobenius(self.value, s))

    def __int__(self):
        return self.value


def mul(a: Element, b: Element) -> Element:
    return a * b


def add(a: Element, b: Element) -> Element:
    return a + b


def sub(a: Element, b: Element) -> Element:
    return a - b


def neg(a: Element) -> Element:
    return -a


def inv(a: Element) -> Element:
    return a.inv()


def frobenius(a: Element, s: int) -> Element:
    return a.frobenius(s)


def to_fq_coords(spec: FieldSpec, v: Sequence[int]) -> list[int]:
    """F_q coordinates of a vector over F_{q^m}, m per entry, concatenated."""
    return [int(c) for c in spec.to_fq_coords(np.asarray(v, dtype=np.int64))]


def from_fq_coords(spec: FieldSpec, c: Sequence[int]) -> list[int]:
    return [int(x) for x in spec.from_fq_coords(np.asarray(c, dtype=np.int64))]
