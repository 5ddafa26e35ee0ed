"""Integer Laurent polynomials in u and integer polynomials in q.

``abar`` below is the element ``u^-1 - u`` (the bar-conjugate of
``alpha = u - u^-1``); R-type polynomials live in ``Z[abar]``.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class NotKLNormalForm(ValueError):
    """A Laurent polynomial that does not normalise to a polynomial in q."""


class LaurentPoly:
    """Sparse element of Z[u, u^-1]; immutable."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        c: dict[int, int] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for e, v in items:
                e = int(e)
                v = c.get(e, 0) + int(v)
                if v:
                    c[e] = v
                else:
                    c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> LaurentPoly:
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, k: int) -> LaurentPoly:
        return cls._raw({0: k} if k else {})

    @classmethod
    def monomial(cls, e: int, k: int = 1) -> LaurentPoly:
        return cls._raw({e: k} if k else {})

    # -- ring structure -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __add__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        if not self._c or not other._c:
            return ZERO
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LaurentPoly.monomial(e * n, v ** (-n))
            raise ValueError("only unit monomials can be inverted")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- accessors -------------------------------------------------------------

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def exponents(self) -> list[int]:
        return sorted(self._c)

    @property
    def min_exp(self) -> int:
        return min(self._c)

    @property
    def max_exp(self) -> int:
        return max(self._c)

    def bar(self) -> LaurentPoly:
        """The involution u -> u^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by u^k."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def evaluate(self, u):
        return sum(v * u ** e for e, v in self._c.items())

    def derivative_at_one(self) -> int:
        return sum(e * v for e, v in self._c.items())

    def negative_part(self) -> LaurentPoly:
        return LaurentPoly._raw({e: v for e, v in self._c.items() if e < 0})

    def nonnegative_part(self) -> LaurentPoly:
        return LaurentPoly._raw({e: v for e, v in self._c.items() if e >= 0})

    # -- abar basis ------------------------------------------------------------

    def to_abar(self) -> dict[int, int]:
        """Coordinates in powers of abar = u^-1 - u; raises if self is not in Z[abar]."""
        rest = self
        out: dict[int, int] = {}
        while rest:
            lo = rest.min_exp
            if lo > 0:
                raise ValueError(f"{self} is not a polynomial in abar")
            k = -lo
            c = rest.coeff(lo)
            out[k] = c
            rest = rest - ABAR ** k * c
        return out

    @classmethod
    def from_abar(cls, coords: Mapping[int, int]) -> LaurentPoly:
        out = ZERO
        for k, c in coords.items():
            out = out + ABAR ** int(k) * int(c)
        return out

    def abar_degree(self) -> int:
        return max(self.to_abar(), default=-1)

    def is_monic_abar(self, degree: int) -> bool:
        try:
            coords = self.to_abar()
        except ValueError:
            return False
        return bool(coords) and max(coords) == degree and coords[degree] == 1

    # -- serialisation -----------------------------------------------------------

    def to_json(self) -> dict[str, int]:
        return {str(e): v for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LaurentPoly:
        return cls({int(e): int(v) for e, v in data.items()})

    def abar_json(self) -> dict[str, int]:
        return {str(k): v for k, v in sorted(self.to_abar().items())}

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return _format(sorted(self._c.items()), "u")

    def abar_str(self) -> str:
        return _format(sorted(self.to_abar().items(), reverse=True), "abar")


def _format(items, var: str) -> str:
    if not items:
        return "0"
    parts = []
    for e, v in items:
        if e == 0:
            term = str(abs(v))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            term = mono if abs(v) == 1 else f"{abs(v)}*{mono}"
        sign = "-" if v < 0 else "+"
        parts.append((sign, term))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
U = LaurentPoly._raw({1: 1})
ALPHA = LaurentPoly._raw({1: 1, -1: -1})
ABAR = LaurentPoly._raw({-1: 1, 1: -1})


class QPoly:
    """Element of Z[q]; immutable."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] | None = None):
        c: dict[int, int] = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
            for e, v in items:
                e, v = int(e), int(v)
                if e < 0:
                    raise ValueError("QPoly exponents must be nonnegative")
                v += c.get(e, 0)
                if v:
                    c[e] = v
                else:
                    c.pop(e, None)
        self._c = c

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly({0: other})
        if not isinstance(other, QPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __bool__(self) -> bool:
        return bool(self._c)

    def __add__(self, other: QPoly) -> QPoly:
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return QPoly(c)

    def __sub__(self, other: QPoly) -> QPoly:
        return self + QPoly({e: -v for e, v in other._c.items()})

    def __mul__(self, other) -> QPoly:
        if isinstance(other, int):
            return QPoly({e: v * other for e, v in self._c.items()})
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return QPoly(c)

    __rmul__ = __mul__

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    @property
    def degree(self) -> int:
        return max(self._c, default=-1)

    def evaluate(self, q):
        return sum(v * q ** e for e, v in self._c.items())

    def to_u(self, gap: int) -> LaurentPoly:
        """u^-gap * P(u^2), the inverse of :func:`p_normalize`."""
        return LaurentPoly({2 * e - gap: v for e, v in self._c.items()})

    def to_json(self) -> dict[str, int]:
        return {str(e): v for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> QPoly:
        return cls({int(e): int(v) for e, v in data.items()})

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        return _format(sorted(self._c.items()), "q")


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def r_tilde_from_q(rq: QPoly, lx: int, ly: int) -> LaurentPoly:
    """(-u)^(lx - ly) * R(u^2)."""
    k = lx - ly
    sign = -1 if k % 2 else 1
    return LaurentPoly({2 * e + k: sign * v for e, v in rq.items()})


def p_normalize(p: LaurentPoly, llow: int, lhigh: int) -> QPoly:
    """The q-polynomial P with u^(lhigh - llow) * p = P(u^2)."""
    shifted = p.shift(lhigh - llow)
    out = {}
    for e, v in shifted.items():
        if e < 0 or e % 2:
            raise NotKLNormalForm(f"not a valid KL normal form: u^{lhigh - llow} * ({p})")
        out[e // 2] = v
    return QPoly(out)
