"""Exact arithmetic in Z[zeta_N] for the reflection representation.

Numbers are tuples of integers: coefficients of a polynomial in
``zeta = exp(i*pi/M)`` (so ``N = 2M``) reduced modulo the cyclotomic
polynomial Phi_N.  Every number that occurs as a root or chamber coordinate is
real, so its value is ``sum(c_k * cos(k*pi/M))``.  Zero testing is exact (the
reduced representation is unique); signs of nonzero numbers are certified by
interval evaluation with growing precision.
"""

from __future__ import annotations

import math
from functools import lru_cache

from mpmath import iv


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (coefficient lists, constant term first) by a monic divisor."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    dl = len(den) - 1
    for k in range(len(num) - 1, dl - 1, -1):
        c = num[k]
        if c:
            q[k - dl] = c
            for j, d in enumerate(den):
                num[k - dl + j] -= c * d
    return q, num[:dl] if dl else []


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


class CyclotomicRing:
    """The ring Z[zeta] with zeta a primitive 2M-th root of unity."""

    def __init__(self, M: int):
        self.M = M
        self.N = 2 * M
        self.phi = cyclotomic_polynomial(self.N)
        self.degree = len(self.phi) - 1
        # zeta^e reduced, for 0 <= e < 2N
        self._powers = [self._reduce_power(e) for e in range(2 * self.N)]
        self._cos = [math.cos(k * math.pi / M) for k in range(self.degree)]
        self._iv_cache: dict[int, list] = {}
        self._sign_cache: dict[tuple[int, ...], int] = {}
        self.zero = (0,) * self.degree
        self.one = self.from_int(1)

    def _reduce_power(self, e: int) -> tuple[int, ...]:
        vec = [0] * (e + 1)
        vec[e] = 1
        if e >= self.degree:
            _, vec = _poly_divmod(vec, list(self.phi))
        vec = vec + [0] * (self.degree - len(vec))
        return tuple(vec[: self.degree])

    def from_int(self, k: int) -> tuple[int, ...]:
        return (k,) + (0,) * (self.degree - 1)

    def two_cos(self, m: int) -> tuple[int, ...]:
        """The number 2*cos(pi/m); requires m | M."""
        k = self.M // m
        assert k * m == self.M
        a, b = self._powers[k], self._powers[self.N - k]
        return tuple(x + y for x, y in zip(a, b))

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def mul(self, x, y):
        out = [0] * self.degree
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                c = a * b
                for k, p in enumerate(self._powers[i + j]):
                    if p:
                        out[k] += c * p
        return tuple(out)

    def mul_matrix(self, x) -> tuple[tuple[int, ...], ...]:
        """Matrix of multiplication by x, as rows indexed by output coefficient."""
        cols = [self.mul(x, self._powers[j]) for j in range(self.degree)]
        return tuple(tuple(cols[j][i] for j in range(self.degree)) for i in range(self.degree))

    def approx(self, x) -> float:
        return sum(c * cs for c, cs in zip(x, self._cos))

    def sign(self, x) -> int:
        """Exact sign of a real element of the ring."""
        if not any(x):
            return 0
        cached = self._sign_cache.get(x)
        if cached is not None:
            return cached
        value = self.approx(x)
        bound = sum(abs(c) for c in x) * 1e-12
        if value > bound:
            s = 1
        elif value < -bound:
            s = -1
        else:
            s = self._interval_sign(x)
        self._sign_cache[x] = s
        return s

    def _interval_sign(self, x) -> int:
        prec = 80
        while True:
            old = iv.prec
            try:
                iv.prec = prec
                cos = self._iv_cache.get(prec)
                if cos is None:
                    cos = [iv.cos(k * iv.pi / self.M) for k in range(self.degree)]
                    self._iv_cache[prec] = cos
                total = iv.mpf(0)
                for c, cs in zip(x, cos):
                    if c:
                        total += c * cs
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
            finally:
                iv.prec = old
            if prec > 1 << 16:
                raise ArithmeticError("sign refinement did not converge")
            prec *= 2
