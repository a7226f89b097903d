"""Finite fields F_{p^e} with integer-encoded elements.

An element is stored as the integer ``c0 + c1*p + ... + c_{e-1}*p^(e-1)`` of its
polynomial-basis coefficients, so prime-field elements are just residues.  The
modulus is the first monic irreducible of degree ``e`` in that same encoding of
its non-leading coefficients, and the generator is the smallest encoding of
multiplicative order ``q - 1``.  Both choices are deterministic.

Exp/log/Zech tables are built lazily (``FiniteField.tables``) and are only
needed for vectorised work and fast extension-field multiplication.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotADivisor, NotPrime, NotPrimePower, Overflow
from .ntheory import is_prime, prime_factors, prime_power

Q_BUDGET = 2**31
TABLE_LIMIT = 1 << 24


# --- dense polynomials over F_p, little-endian coefficient lists -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic ``mod``."""
    a = _trim(list(a))
    d = len(mod) - 1
    while len(a) > d:
        c = a[-1]
        if c:
            shift = len(a) - 1 - d
            for i in range(d):
                a[shift + i] = (a[shift + i] - c * mod[i]) % p
        a.pop()
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod([c % p for c in out], mod, p)


def _poly_powmod(a: list[int], k: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, mod, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, mod, p)
        k >>= 1
        if k:
            base = _poly_mulmod(base, base, mod, p)
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [c * inv % p for c in b]
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(mod: list[int], p: int) -> bool:
    """Ben-Or test for a monic polynomial over F_p."""
    e = len(mod) - 1
    if e == 1:
        return True
    if mod[0] == 0:
        return False
    x = [0, 1]
    h = x
    for _ in range(e // 2):
        h = _poly_powmod(h, p, mod, p)
        diff = list(h) + [0] * (2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(mod, diff, p)
        if len(g) > 1:
            return False
    return True


def _digits(u: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        u, c = divmod(u, p)
        out.append(c)
    return out


def _encode(coeffs: list[int], p: int) -> int:
    u = 0
    for c in reversed(coeffs):
        u = u * p + c
    return u


@dataclass(frozen=True)
class FieldTables:
    """exp[i] = g^i for 0 <= i < q-1; log[u] (log[0] = -1); zech[t] = log(1 + g^t) or -1."""

    exp: np.ndarray
    log: np.ndarray
    zech: np.ndarray


class FiniteField:
    """The field F_q, q = p^e, with deterministic modulus and generator."""

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise NotPrime(p)
        if e < 1:
            raise ValueError(f"extension degree must be >= 1, got {e}")
        if p**e > Q_BUDGET:
            raise Overflow(p, e)
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = self._find_modulus()
        self._gen = self._find_generator()

    # --- construction -------------------------------------------------------

    def _find_modulus(self) -> tuple[int, ...]:
        p, e = self.p, self.e
        for c in range(p**e):
            mod = _digits(c, p, e) + [1]
            if is_irreducible(mod, p):
                return tuple(mod)
        raise AssertionError("no irreducible polynomial found")  # unreachable

    def _find_generator(self) -> int:
        order = self.q - 1
        cofactors = [order // ell for ell in prime_factors(order)] if order > 1 else []
        for u in range(1, self.q):
            if all(self._pow_slow(u, c) != 1 for c in cofactors):
                return u
        raise AssertionError("no generator found")  # unreachable

    def _pow_slow(self, u: int, k: int) -> int:
        if self.e == 1:
            return pow(u, k, self.p)
        res = _poly_powmod(_digits(u, self.p, self.e), k, list(self.modulus), self.p)
        return _encode(res, self.p)

    # --- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteField):
            return NotImplemented
        return (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, e={self.e})"

    @property
    def order(self) -> int:
        return self.q

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, self._gen)

    @property
    def gen(self) -> int:
        """Integer encoding of the generator."""
        return self._gen

    # --- element construction ------------------------------------------------

    def __call__(self, x) -> FieldElement:
        return FieldElement(self, self.encode(x))

    def encode(self, x) -> int:
        """Integer encoding of an int, a coefficient sequence or a FieldElement.

        An int in [0, q) is taken as an encoding already; over a prime field any
        int is reduced mod p.
        """
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field!r} vs {self!r}")
            return x.value
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if self.e == 1:
                return x % self.p
            if not 0 <= x < self.q:
                raise ValueError(f"encoding {x} outside [0, {self.q})")
            return x
        coeffs = [int(c) % self.p for c in x]
        if len(coeffs) > self.e:
            raise ValueError(f"too many coefficients for degree-{self.e} field")
        return _encode(coeffs, self.p)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, u) for u in range(self.q)]

    def digits(self, u: int) -> list[int]:
        return _digits(u, self.p, self.e)

    def to_text(self, u: int) -> str:
        if self.e == 1:
            return str(u)
        return ",".join(str(c) for c in self.digits(u))

    def from_text(self, s: str) -> int:
        s = s.strip()
        if self.e == 1 and "," not in s:
            return int(s) % self.p
        return self.encode([int(c) for c in s.split(",")])

    # --- arithmetic on encodings --------------------------------------------

    def add(self, u: int, v: int) -> int:
        if self.e == 1:
            return (u + v) % self.p
        p, out, scale = self.p, 0, 1
        while u or v:
            u, a = divmod(u, p)
            v, b = divmod(v, p)
            out += ((a + b) % p) * scale
            scale *= p
        return out

    def neg(self, u: int) -> int:
        if self.e == 1:
            return -u % self.p
        return _encode([-c % self.p for c in self.digits(u)], self.p)

    def sub(self, u: int, v: int) -> int:
        return self.add(u, self.neg(v))

    def mul(self, u: int, v: int) -> int:
        if self.e == 1:
            return u * v % self.p
        if u == 0 or v == 0:
            return 0
        t = self._scalar_tables
        if t is not None:
            exp, log = t
            return exp[(log[u] + log[v]) % (self.q - 1)]
        res = _poly_mulmod(self.digits(u), self.digits(v), list(self.modulus), self.p)
        return _encode(res, self.p)

    def pow(self, u: int, k: int) -> int:
        if u == 0:
            if k < 0:
                raise DivisionByZero("0 has no inverse")
            return 1 if k == 0 else 0
        k %= self.q - 1
        if self.e == 1:
            return pow(u, k, self.p)
        t = self._scalar_tables
        if t is not None:
            exp, log = t
            return exp[log[u] * k % (self.q - 1)]
        return self._pow_slow(u, k)

    def inv(self, u: int) -> int:
        if u == 0:
            raise DivisionByZero("0 has no inverse")
        return self.pow(u, self.q - 2)

    def log(self, u: int) -> int:
        """Discrete log to the base of the field generator."""
        if u == 0:
            raise DivisionByZero("log of 0")
        return int(self.tables.log[u])

    def order_of(self, u: int) -> int:
        """Multiplicative order of a nonzero element."""
        if u == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n = self.q - 1
        for ell in prime_factors(n) if n > 1 else []:
            while n % ell == 0 and self.pow(u, n // ell) == 1:
                n //= ell
        return n

    def is_power(self, u: int, d: int) -> bool:
        """Whether ``u`` is a d-th power in F_q (0 counts as one)."""
        if u == 0:
            return True
        return self.pow(u, (self.q - 1) // math.gcd(d, self.q - 1)) == 1

    # --- tables and vectorised helpers ---------------------------------------

    @cached_property
    def tables(self) -> FieldTables:
        if self.q > TABLE_LIMIT:
            raise Overflow(f"table for q={self.q} exceeds {TABLE_LIMIT}")
        p, e, Q = self.p, self.e, self.q - 1
        weights = np.array([p**i for i in range(e)], dtype=np.int64)
        digits = np.zeros((Q, e), dtype=np.int64)
        digits[0, 0] = 1
        block = 1
        while block < Q:
            gb = self._pow_slow(self._gen, block)
            # column j: digits of g^block * x^j
            mat = np.array(
                [self.digits(_encode(_poly_mulmod(self.digits(gb), [0] * j + [1], list(self.modulus), p), p))
                 for j in range(e)],
                dtype=np.int64,
            ).T
            n = min(block, Q - block)
            digits[block : block + n] = (digits[:n] @ mat.T) % p
            block *= 2
        exp = digits @ weights
        log = np.full(self.q, -1, dtype=np.int64)
        log[exp] = np.arange(Q, dtype=np.int64)
        c0 = exp % p
        one_plus = exp - c0 + (c0 + 1) % p
        zech = log[one_plus]
        return FieldTables(exp=exp, log=log, zech=zech)

    @cached_property
    def _scalar_tables(self) -> tuple[list[int], list[int]] | None:
        if self.e == 1 or self.q > TABLE_LIMIT:
            return None
        t = self.tables
        return t.exp.tolist(), t.log.tolist()

    def vadd(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Elementwise sum of encoding arrays (broadcasting)."""
        p = self.p
        if self.e == 1:
            return (u + v) % p
        out = np.zeros(np.broadcast(u, v).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.e):
            out += ((u // scale % p + v // scale % p) % p) * scale
            scale *= p
        return out

    def vmul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Elementwise product of encoding arrays (broadcasting)."""
        u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
        if self.e == 1:
            return u * v % self.p
        t = self.tables
        out = t.exp[(t.log[u] + t.log[v]) % (self.q - 1)]
        return np.where((u == 0) | (v == 0), 0, out)

    def vpow(self, u: np.ndarray, k: int) -> np.ndarray:
        """Elementwise ``u**k`` for k >= 0 on an encoding array."""
        u = np.asarray(u, dtype=np.int64)
        if k == 0:
            return np.ones_like(u)
        if self.e == 1 and self.q > TABLE_LIMIT:
            result = np.ones_like(u)
            base = u % self.p
            k %= self.q - 1
            k = k or self.q - 1
            while k:
                if k & 1:
                    result = result * base % self.p
                base = base * base % self.p
                k >>= 1
            return result
        t = self.tables
        out = t.exp[(t.log[u] * (k % (self.q - 1))) % (self.q - 1)]
        return np.where(u == 0, 0, out)


@dataclass(frozen=True, eq=False)
class FieldElement:
    field: FiniteField
    value: int

    @property
    def coeffs(self) -> list[int]:
        return self.field.digits(self.value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __eq__(self, other) -> bool:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self.value == v

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.field, self.field.sub(v, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(v)))

    def __pow__(self, k: int):
        if k < 0:
            return FieldElement(self.field, self.field.pow(self.field.inv(self.value), -k))
        return FieldElement(self.field, self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return self.field.to_text(self.value)

    def __repr__(self) -> str:
        return f"{self.field.to_text(self.value)} in F_{self.field.q}"


@lru_cache(maxsize=256)
def construct_field(p: int, e: int = 1) -> FiniteField:
    """Build (and memoise) F_{p^e}.

    >>> construct_field(7).generator.value
    3
    """
    return FiniteField(p, e)


def field_of_order(q: int) -> FiniteField:
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(q)
    return construct_field(*pe)


def _check_divisor(F: FiniteField, d: int) -> int:
    if d < 1 or (F.q - 1) % d:
        raise NotADivisor(d, F.q - 1)
    return (F.q - 1) // d


def roots_of_unity(F: FiniteField, r: int) -> list[FieldElement]:
    """mu_r as g^((q-1)/r * i), i = 0..r-1."""
    return [FieldElement(F, u) for u in roots_of_unity_enc(F, r)]


@lru_cache(maxsize=1024)
def roots_of_unity_enc(F: FiniteField, r: int) -> tuple[int, ...]:
    step = _check_divisor(F, r)
    h = F.pow(F.gen, step)
    out, z = [], 1
    for _ in range(r):
        out.append(z)
        z = F.mul(z, h)
    return tuple(out)


def coset_reps(F: FiniteField, k: int) -> list[FieldElement]:
    """g^0, ..., g^(k-1): one representative per coset of the k-th powers."""
    _check_divisor(F, k)
    out, z = [], 1
    for _ in range(k):
        out.append(FieldElement(F, z))
        z = F.mul(z, F.gen)
    return out
