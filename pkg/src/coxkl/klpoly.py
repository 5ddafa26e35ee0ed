"""Classical R-, P- and Q-polynomials, and the generic KL-from-R solver.

The solver :func:`generic_kl_from_r` is shared by every order in the package
(Bruhat order, twisted orders, Springer's poset): given lengths and an
R-table on an interval-closed slice it returns the unique p with p(w,w) = 1,
p(v,w) in u^-1 Z[u^-1] for v != w and p(v,w) = sum_z R(v,z) * bar(p(z,w)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence, TextIO

from .coxeter import CoxeterError, CoxeterSystem, Element
from .laurent import ABAR, ONE, ZERO, LaurentPoly, QPoly, p_normalize


class MemoConflict(RuntimeError):
    """Two different values were written for the same memo key."""


class InconsistentTable(ValueError):
    """An R-table violates the identity needed by the KL solver."""

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class PolyTable:
    """Append-only memo of polynomials keyed by ordered pairs."""

    def __init__(self, kind: str):
        self.kind = kind
        self._store: dict[tuple, object] = {}

    def get(self, x, y):
        return self._store.get((x, y))

    def put(self, x, y, value) -> None:
        old = self._store.get((x, y))
        if old is not None and old != value:
            raise MemoConflict(f"{self.kind}[{x}, {y}]: {old} != {value}")
        self._store[(x, y)] = value

    def __contains__(self, key) -> bool:
        return key in self._store

    def __len__(self) -> int:
        return len(self._store)

    def items(self):
        return self._store.items()

    def records(self, encode: Callable[[Hashable], object] = str) -> Iterable[dict]:
        for (x, y), p in self._store.items():
            yield {"x": encode(x), "y": encode(y), "kind": self.kind, "poly": _poly_json(p)}

    def dump_jsonl(self, fh: TextIO, encode: Callable[[Hashable], object] = str) -> int:
        n = 0
        for rec in sorted(self.records(encode), key=lambda r: (json.dumps(r["x"]), json.dumps(r["y"]))):
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
            n += 1
        return n


def _poly_json(p) -> dict:
    if isinstance(p, QPoly):
        return {"q": p.to_json()}
    return {"u": p.to_json()}


# -- generic solvers ------------------------------------------------------------


def generic_kl_from_r(
    elements: Sequence,
    length: Callable[[object], int],
    r: Callable[[object, object], LaurentPoly],
    leq: Callable[[object, object], bool] | None = None,
    tops: Iterable | None = None,
    p_table: PolyTable | None = None,
) -> tuple[PolyTable, PolyTable]:
    """Solve for the u-normalised p-table and the q-normalised P-table.

    ``elements`` must be closed under taking intervals between its members.
    Only pairs (v, w) with w in ``tops`` (default: every element) are solved.
    """
    if leq is None:
        leq = lambda a, b: bool(r(a, b))  # noqa: E731
    p_table = p_table if p_table is not None else PolyTable("p")
    big_p = PolyTable("P")
    for w in (elements if tops is None else tops):
        below = [z for z in elements if leq(z, w)]
        below.sort(key=length, reverse=True)
        for v in below:
            cached = p_table.get(v, w)
            if cached is None:
                if v == w:
                    if r(v, v) != ONE:
                        raise InconsistentTable(f"R({v},{v}) = {r(v, v)} != 1", (v, v))
                    cached = ONE
                else:
                    rhs = ZERO
                    for z in below:
                        if z != v and leq(v, z):
                            rhs = rhs + r(v, z) * p_table.get(z, w).bar()
                    cached = rhs.negative_part()
                    if rhs.nonnegative_part() != -cached.bar():
                        raise InconsistentTable(
                            f"R-table inconsistent at ({v}, {w}): p - bar(p) = {rhs} has no solution", (v, w))
                p_table.put(v, w, cached)
            big_p.put(v, w, p_normalize(cached, length(v), length(w)))
    return p_table, big_p


def orthogonal_inverse(
    elements: Sequence,
    length: Callable[[object], int],
    p: Callable[[object, object], QPoly],
    leq: Callable[[object, object], bool],
    tops: Iterable | None = None,
) -> PolyTable:
    """The family Q with sum_z (-1)^(l(z)-l(x)) P(x,z) Q(z,y) = delta(x,y)."""
    out = PolyTable("Q")
    for y in (elements if tops is None else tops):
        below = [z for z in elements if leq(z, y)]
        below.sort(key=length, reverse=True)
        for x in below:
            if x == y:
                out.put(x, y, QPoly({0: 1}))
                continue
            acc = QPoly()
            for z in below:
                if z != x and leq(x, z):
                    term = p(x, z) * out.get(z, y)
                    acc = acc - term if (length(z) - length(x)) % 2 == 0 else acc + term
            out.put(x, y, acc)
    return out


def inversion_defect(
    elements: Sequence, r: Callable[[object, object], LaurentPoly], leq: Callable[[object, object], bool],
    pairs: Iterable[tuple] | None = None,
) -> list[tuple]:
    """Pairs where sum_z R(x,z)(u) R(z,y)(u^-1) differs from delta(x,y)."""
    bad = []
    if pairs is None:
        pairs = ((x, y) for x in elements for y in elements if leq(x, y))
    for x, y in pairs:
        total = ZERO
        for z in elements:
            if leq(x, z) and leq(z, y):
                total = total + r(x, z) * r(z, y).bar()
        if total != (ONE if x == y else ZERO):
            bad.append((x, y, total))
    return bad


# -- classical polynomials ------------------------------------------------------------


class ClassicalKL:
    """Memoised R~, P and Q for one Coxeter system.

    ``policy`` selects the descent used by the R~ recursion: ``"first"``
    (smallest left descent of y), ``"last"`` (largest) or ``"right"``
    (smallest right descent, right-handed recursion).
    """

    def __init__(self, system: CoxeterSystem, policy: str = "first"):
        if policy not in ("first", "last", "right"):
            raise ValueError(f"unknown descent policy {policy!r}")
        self.W = system
        self.policy = policy
        self.R = PolyTable("R~")
        self.p_table = PolyTable("p")
        self.P = PolyTable("P")
        self.Q = PolyTable("Q")

    def r(self, x: Element, y: Element) -> LaurentPoly:
        """R~_{x,y} in Z[abar]; zero unless x <= y."""
        if x.system is not self.W or y.system is not self.W:
            raise CoxeterError("elements belong to a different Coxeter system")
        return self._r(x, y)

    def _r(self, x: Element, y: Element) -> LaurentPoly:
        if x is y:
            return ONE
        if len(x.word) >= len(y.word):
            return ZERO
        cached = self.R.get(x, y)
        if cached is not None:
            return cached
        if self.policy == "right":
            s = min(y.right_descents())
            ys, xs = y.rmul(s), x.rmul(s)
            if x.has_right_descent(s):
                val = self._r(xs, ys)
            else:
                val = self._r(xs, ys) + ABAR * self._r(x, ys)
        else:
            d = y.left_descents()
            s = min(d) if self.policy == "first" else max(d)
            sy, sx = y.lmul(s), x.lmul(s)
            if s in x.left_descents():
                val = self._r(sx, sy)
            else:
                val = self._r(sx, sy) + ABAR * self._r(x, sy)
        self.R.put(x, y, val)
        return val

    def _column(self, x: Element, y: Element) -> None:
        if self.P.get(x, y) is not None:
            return
        interval = self.W.bruhat_interval(x, y)
        p_table, big_p = generic_kl_from_r(
            interval, lambda z: z.length, self._r, self.W._leq, tops=[y], p_table=self.p_table)
        for (a, b), val in big_p.items():
            self.P.put(a, b, val)

    def p(self, x: Element, y: Element) -> QPoly:
        """Kazhdan-Lusztig polynomial P_{x,y}(q); zero unless x <= y."""
        if not self.W.bruhat_leq(x, y):
            return QPoly()
        self._column(x, y)
        return self.P.get(x, y)

    def p_u(self, x: Element, y: Element) -> LaurentPoly:
        if not self.W.bruhat_leq(x, y):
            return ZERO
        self._column(x, y)
        return self.p_table.get(x, y)

    def q(self, x: Element, y: Element) -> QPoly:
        """Inverse KL polynomial Q_{x,y}(q) by triangular inversion over [x, y]."""
        if not self.W.bruhat_leq(x, y):
            return QPoly()
        cached = self.Q.get(x, y)
        if cached is not None:
            return cached
        interval = self.W.bruhat_interval(x, y)
        table = orthogonal_inverse(interval, lambda z: z.length, self.p, self.W._leq, tops=[y])
        for (a, b), val in table.items():
            self.Q.put(a, b, val)
        return self.Q.get(x, y)


def classical(system: CoxeterSystem, policy: str = "first") -> ClassicalKL:
    """The shared memoised engine of a system."""
    key = f"classical:{policy}"
    eng = system.cache.get(key)
    if eng is None:
        eng = ClassicalKL(system, policy)
        system.cache[key] = eng
    return eng


def r_poly(x: Element, y: Element) -> LaurentPoly:
    return classical(x.system).r(x, y)


def kl_p(x: Element, y: Element) -> QPoly:
    return classical(x.system).p(x, y)


def kl_q(x: Element, y: Element) -> QPoly:
    return classical(x.system).q(x, y)


# -- reflection orders and the chain-sum oracle ---------------------------------------


@dataclass(frozen=True)
class ReflectionOrder:
    reflections: tuple[Element, ...]

    @property
    def index(self) -> dict[Element, int]:
        return {t: i for i, t in enumerate(self.reflections)}

    def __str__(self) -> str:
        return " < ".join(str(t) for t in self.reflections)


def reflection_order_from_w0(system: CoxeterSystem, word: Sequence[int | str]) -> ReflectionOrder:
    """t_i = s_1 ... s_{i-1} s_i s_{i-1} ... s_1 along a reduced word of the longest element."""
    x = system.element(word)
    if x.length != len(word):
        raise CoxeterError("word is not reduced")
    if not system.is_finite() or x != system.longest_element():
        raise CoxeterError("word does not represent the longest element")
    letters = [system.index[g] if isinstance(g, str) else g for g in word]
    out = []
    prefix = system.identity
    for i in letters:
        out.append(system.mul(prefix, system.mul(system.gen(i), prefix.inverse())))
        prefix = prefix.rmul(i)
    return ReflectionOrder(tuple(out))


def is_reflection_order(order: ReflectionOrder) -> bool:
    """Check the dihedral restriction property on every maximal dihedral reflection subgroup."""
    refl = order.reflections
    W = refl[0].system
    idx = order.index
    T = set(refl)
    seen: set[frozenset] = set()
    for a in refl:
        for b in refl:
            if a is b:
                continue
            sub = _reflection_subgroup(W, a, b) & T
            key = frozenset(sub)
            if key in seen:
                continue
            seen.add(key)
            canon = [t for t in sub if all(u is t for u in (r.element for r in W.inversions(t)) if u in sub)]
            r, s = sorted(canon, key=idx.get)
            seq = [r]
            rs = W.mul(r, s)
            cur = r
            while len(seq) < len(sub):
                cur = W.mul(rs, cur)
                seq.append(cur)
            restricted = sorted(sub, key=idx.get)
            if restricted != seq:
                return False
    return True


def _reflection_subgroup(W: CoxeterSystem, a: Element, b: Element) -> set[Element]:
    group = {W.identity}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in (a, b):
                gh = W.mul(g, h)
                if gh not in group:
                    group.add(gh)
                    nxt.append(gh)
        frontier = nxt
    return group


def r_gf_oracle(x: Element, y: Element, order: ReflectionOrder) -> LaurentPoly:
    """Sum of abar^n over order-increasing reflection chains x < t1 x < ... < tn...t1 x = y."""
    W = x.system
    refl = order.reflections
    memo: dict[tuple[Element, int], LaurentPoly] = {}

    def chains(z: Element, last: int) -> LaurentPoly:
        if z is y:
            return ONE
        key = (z, last)
        if key in memo:
            return memo[key]
        total = ZERO
        for k in range(last + 1, len(refl)):
            tz = W.mul(refl[k], z)
            if tz.length > z.length and W.bruhat_leq(tz, y):
                total = total + ABAR * chains(tz, k)
        memo[key] = total
        return total

    if not W.bruhat_leq(x, y):
        return ZERO
    return chains(x, -1)
