"""Finite fields F_q (q = p^e) and extensions F_{q^m} over them.

Elements of F_q are integers in ``[0, q)``.  The integer ``v`` stands for the
polynomial ``sum(c_i * z**i)`` where ``c_i`` is the i-th base-p digit of ``v``
and ``z`` is a root of the field's modulus.  Moduli are always the
lexicographically smallest monic irreducible polynomial of the right degree,
so every run on every platform produces the same field.

Polynomials over F_q are tuples of coefficients, lowest degree first.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DivisionByZero, NotAPrimePower, TooLarge

MAX_ORDER = 2**16
# Dense q x q tables are only materialised below this order.
MAX_TABLE_ORDER = 2**12

Poly = tuple[int, ...]


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(_factor(n))


class FieldSpec:
    """The finite field of order ``q = p**e``.

    Build instances with :func:`field_new`; the constructor trusts its inputs.
    Scalar operations work for every supported order.  ``add_table`` and
    ``mul_table`` give dense numpy tables used by the array kernels.
    """

    def __init__(self, p: int, e: int, modulus: Poly | None) -> None:
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus
        if e == 1:
            self._exp = self._log = None
        else:
            self._build_log_tables()

    # -- construction helpers -------------------------------------------
    def _digits(self, v: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(v % p)
            v //= p
        return out

    def _undigits(self, digits: Sequence[int]) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def _slow_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        prod = [0] * (2 * e - 1)
        da, db = self._digits(a), self._digits(b)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k]
            if c:
                for i in range(e + 1):
                    prod[k - e + i] = (prod[k - e + i] - c * mod[i]) % p
        return self._undigits(prod[:e])

    def _build_log_tables(self) -> None:
        q = self.q
        order_factors = prime_divisors(q - 1)
        for g in range(2, q):
            # order test by repeated squaring with the slow multiplier
            def spow(x: int, k: int) -> int:
                r = 1
                while k:
                    if k & 1:
                        r = self._slow_mul(r, x)
                    x = self._slow_mul(x, x)
                    k >>= 1
                return r

            if all(spow(g, (q - 1) // ell) != 1 for ell in order_factors):
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        exp[q - 1 :] = exp[: q - 1]
        self._exp, self._log = exp, log

    # -- arithmetic -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._undigits([-x % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if self.e == 1:
            return pow(a, k, self.p)
        if a == 0:
            return 0 if k else 1
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    # -- dense tables -----------------------------------------------------
    def _table(self, op) -> np.ndarray:
        if self.q > MAX_TABLE_ORDER:
            raise TooLarge(f"dense tables need q <= {MAX_TABLE_ORDER}, got {self.q}")
        dtype = np.uint8 if self.q <= 256 else np.uint16
        q = self.q
        return np.array([[op(a, b) for b in range(q)] for a in range(q)], dtype=dtype)

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self.add)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self.mul)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=self.add_table.dtype)

    @cached_property
    def inv_table(self) -> np.ndarray:
        return np.array(
            [0] + [self.inv(a) for a in range(1, self.q)], dtype=self.add_table.dtype
        )

    # -- identity ---------------------------------------------------------
    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        if self.modulus is None:
            return f"FieldSpec(q={self.q})"
        return f"FieldSpec(q={self.q}, modulus={format_poly(self.modulus)})"


_FIELDS: dict[int, FieldSpec] = {}


def field_new(q: int) -> FieldSpec:
    """Return the field of order ``q``.

    Raises ``NotAPrimePower`` if ``q`` has two distinct prime factors and
    ``TooLarge`` above 2**16.  Fields are cached, so repeated calls return the
    same object.
    """
    if q in _FIELDS:
        return _FIELDS[q]
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    if q > MAX_ORDER:
        raise TooLarge(f"q={q} exceeds {MAX_ORDER}")
    fac = _factor(q)
    if len(fac) != 1:
        raise NotAPrimePower(f"{q} is not a prime power")
    ((p, e),) = fac.items()
    if e == 1:
        f = FieldSpec(p, 1, None)
    else:
        modulus = find_irreducible(field_new(p), e)
        f = FieldSpec(p, e, modulus)
    _FIELDS[q] = f
    return f


def field_arith(f: FieldSpec, op: str, a: int, b: int | None = None) -> int:
    """Dispatch a named operation (add, sub, mul, div, neg, inv, pow)."""
    for v in (a,) if b is None or op == "pow" else (a, b):
        if not 0 <= v < f.q:
            raise ValueError(f"{v} is not an element of F_{f.q}")
    if op in ("neg", "inv"):
        return getattr(f, op)(a)
    if op not in ("add", "sub", "mul", "div", "pow"):
        raise ValueError(f"unknown operation {op!r}")
    return getattr(f, op)(a, b)


# ---------------------------------------------------------------------------
# Polynomials over F_q
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([f.sub(x, y) for x, y in zip(a, b)])


def poly_mod(f: FieldSpec, a: Sequence[int], m: Sequence[int]) -> list[int]:
    a = _trim(list(a))
    m = _trim(list(m))
    dm = len(m) - 1
    lead_inv = f.inv(m[-1])
    while len(a) - 1 >= dm:
        c = f.mul(a[-1], lead_inv)
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = f.sub(a[shift + i], f.mul(c, y))
        _trim(a)
    return a


def poly_mulmod(f: FieldSpec, a: Sequence[int], b: Sequence[int], m: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = f.add(prod[i + j], f.mul(x, y))
    return poly_mod(f, prod, m)


def poly_powmod(f: FieldSpec, a: Sequence[int], k: int, m: Sequence[int]) -> list[int]:
    result: list[int] = poly_mod(f, [1], m)
    base = poly_mod(f, a, m)
    while k:
        if k & 1:
            result = poly_mulmod(f, result, base, m)
        base = poly_mulmod(f, base, base, m)
        k >>= 1
    return result


def poly_gcd(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(f, a, b)
    if a:
        c = f.inv(a[-1])
        a = [f.mul(c, x) for x in a]
    return a


def is_irreducible(f: FieldSpec, poly: Sequence[int]) -> bool:
    """Rabin's test for a monic polynomial of degree >= 1."""
    m = len(poly) - 1
    x = [0, 1]
    frob = [poly_mod(f, x, poly)]  # frob[k] = x^(q^k) mod poly
    for _ in range(m):
        frob.append(poly_powmod(f, frob[-1], f.q, poly))
    if poly_sub(f, frob[m], frob[0]):
        return False
    for ell in prime_divisors(m):
        g = poly_gcd(f, poly_sub(f, frob[m // ell], x), poly)
        if len(g) != 1:
            return False
    return True


def find_irreducible(f: FieldSpec, m: int) -> Poly:
    """Smallest monic irreducible polynomial of degree ``m`` over ``f``.

    Candidates are ordered by the integer whose base-q digits are
    ``(c_{m-1}, ..., c_0)``, most significant first.
    """
    if m < 1:
        raise ValueError("degree must be >= 1")
    q = f.q
    for k in range(q**m):
        coeffs = []
        v = k
        for _ in range(m):
            coeffs.append(v % q)
            v //= q
        poly = tuple(coeffs) + (1,)
        if is_irreducible(f, poly):
            return poly
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def format_poly(poly: Sequence[int], var: str = "x") -> str:
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if not c:
            continue
        mono = "1" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if c != 1:
            mono = f"{c}" if i == 0 else f"{c}*{mono}"
        terms.append(mono)
    return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# Extension fields
# ---------------------------------------------------------------------------


class ExtFieldSpec:
    """F_{q^m} as m-tuples of F_q coefficients in the basis 1, z, ..., z^(m-1).

    Elements are tuples; ``to_int``/``from_int`` convert to the base-q
    integer encoding ``sum(c_i * q**i)``.  No tables are built, so ``q**m``
    may be far beyond the dense-table cap.
    """

    def __init__(self, base: FieldSpec, m: int, modulus: Poly | None = None) -> None:
        self.base = base
        self.m = m
        self.modulus = modulus if modulus is not None else find_irreducible(base, m)
        self.order = base.q**m

    def from_int(self, v: int) -> tuple[int, ...]:
        q = self.base.q
        out = []
        for _ in range(self.m):
            out.append(v % q)
            v //= q
        return tuple(out)

    def to_int(self, a: Sequence[int]) -> int:
        v = 0
        for c in reversed(a):
            v = v * self.base.q + c
        return v

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.m

    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.m - 1)

    def add(self, a, b) -> tuple[int, ...]:
        f = self.base
        return tuple(f.add(x, y) for x, y in zip(a, b))

    def scale(self, c: int, a) -> tuple[int, ...]:
        f = self.base
        return tuple(f.mul(c, x) for x in a)

    def mul(self, a, b) -> tuple[int, ...]:
        r = poly_mulmod(self.base, a, b, self.modulus)
        return tuple(r) + (0,) * (self.m - len(r))

    def mul_by_z(self, a) -> tuple[int, ...]:
        f = self.base
        top = a[-1]
        shifted = (0,) + tuple(a[:-1])
        if not top:
            return shifted
        return tuple(f.sub(s, f.mul(top, c)) for s, c in zip(shifted, self.modulus))

    def pow(self, a, k: int) -> tuple[int, ...]:
        r = poly_powmod(self.base, a, k, self.modulus)
        return tuple(r) + (0,) * (self.m - len(r))

    def inv(self, a) -> tuple[int, ...]:
        if not any(a):
            raise DivisionByZero("0 has no inverse")
        return self.pow(a, self.order - 2)

    def __repr__(self) -> str:
        return f"ExtFieldSpec(q={self.base.q}, m={self.m}, modulus={format_poly(self.modulus)})"
