"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as a rational coefficient vector of length phi(N),
read as a polynomial in zeta_N reduced modulo the N-th cyclotomic
polynomial.  Orders N = 2 (mod 4) are folded onto N/2 because the two
fields coincide, so -1 lives in Q(zeta_1) = Q.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "CycScalar",
    "cyclotomic_polynomial",
    "root_of_unity",
    "ZERO",
    "ONE",
    "as_scalar",
]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (lowest degree first); ``den`` must be monic."""
    num = list(num)
    dn = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for shift in range(len(num) - 1 - dn, -1, -1):
        c = num[shift + dn]
        quot[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    rem = num[:dn] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Computed as (x^n - 1) divided exactly by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise ArithmeticError(f"inexact division by Phi_{d}")
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    # row k holds x^k mod Phi_n for 0 <= k < max(2*phi(n), n)
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(max(2 * deg, n)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


def _canonical_order(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def _power_vector(n: int, k: int) -> tuple[int, ...]:
    """zeta_n^k as an integer vector in the canonical order of n."""
    k %= n
    if n % 4 == 2:
        m = n // 2
        # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
        vec = _power_vector(m, k * (m + 1) // 2)
        return tuple(-c for c in vec) if k % 2 else vec
    return _reduction_table(n)[k]


class CycScalar:
    """Element of Q(zeta_order) with exact rational coordinates."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = tuple(Fraction(c) for c in coeffs)
        deg = len(cyclotomic_polynomial(order)) - 1
        if len(coeffs) != deg:
            raise ValueError(f"expected {deg} coefficients for order {order}, got {len(coeffs)}")
        if order % 4 == 2:
            m = order // 2
            acc = [Fraction(0)] * (len(cyclotomic_polynomial(m)) - 1)
            for k, c in enumerate(coeffs):
                if c:
                    for i, t in enumerate(_power_vector(order, k)):
                        acc[i] += c * t
            order, coeffs = m, tuple(acc)
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> "CycScalar":
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, q) -> "CycScalar":
        return cls._raw(1, (Fraction(q),))

    # -- structure -------------------------------------------------------

    def embed(self, order: int) -> "CycScalar":
        """Image of this element in Q(zeta_order); requires self.order | order."""
        target = _canonical_order(order)
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        if target == self.order:
            return self
        step = target // self.order
        deg = len(cyclotomic_polynomial(target)) - 1
        acc = [Fraction(0)] * deg
        for k, c in enumerate(self.coeffs):
            if c:
                for i, t in enumerate(_power_vector(target, k * step)):
                    if t:
                        acc[i] += c * t
        return CycScalar._raw(target, tuple(acc))

    def _common(self, other: "CycScalar") -> tuple["CycScalar", "CycScalar"]:
        if self.order == other.order:
            return self, other
        n = math.lcm(self.order, other.order)
        return self.embed(n), other.embed(n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        c = self.coeffs
        return c[0] == 1 and not any(c[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        if a.order == 1:
            return CycScalar._raw(1, (a.coeffs[0] + b.coeffs[0],))
        return CycScalar._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        if a.order == 1:
            return CycScalar._raw(1, (a.coeffs[0] * b.coeffs[0],))
        table = _reduction_table(a.order)
        deg = len(a.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        out = [Fraction(0)] * deg
        for k, c in enumerate(prod):
            if c:
                for i, t in enumerate(table[k]):
                    if t:
                        out[i] += c * t
        return CycScalar._raw(a.order, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.order == 1:
            return CycScalar._raw(1, (1 / self.coeffs[0],))
        deg = len(self.coeffs)
        # column j of the multiplication matrix is self * zeta^j
        cols = []
        z = CycScalar._raw(self.order, tuple(Fraction(c) for c in _power_vector(self.order, 1)))
        cur = self
        for _ in range(deg):
            cols.append(cur.coeffs)
            cur = cur * z
        mat = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if mat[r][c])
            mat[c], mat[piv] = mat[piv], mat[c]
            inv = 1 / mat[c][c]
            mat[c] = [x * inv for x in mat[c]]
            for r in range(deg):
                if r != c and mat[r][c]:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return CycScalar._raw(self.order, tuple(mat[i][deg] for i in range(deg)))

    def __truediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = as_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalized trace is invariant under the embeddings Q(zeta_M) -> Q(zeta_N)
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if c:
                total += c * _normalized_trace_of_power(self.order, k)
        return hash(total)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycScalar({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (f"zeta({self.order})" if k == 1 else f"zeta({self.order})^{k}")
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycScalar":
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def _totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _normalized_trace_of_power(n: int, k: int) -> Fraction:
    m = n // math.gcd(n, k)
    return Fraction(_mobius(m), _totient(m))


def as_scalar(x):
    """Coerce ints, Fractions and CycScalars; NotImplemented otherwise."""
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, (int, Rational)):
        return CycScalar._raw(1, (Fraction(x),))
    return NotImplemented


def root_of_unity(n: int, k: int = 1) -> CycScalar:
    """zeta_n^k for the primitive root zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    vec = _power_vector(n, k)
    return CycScalar._raw(_canonical_order(n), tuple(Fraction(c) for c in vec))


ZERO = CycScalar._raw(1, (Fraction(0),))
ONE = CycScalar._raw(1, (Fraction(1),))
