"""Coxeter systems from a Coxeter matrix, with exact descent tests.

An element ``w`` is identified by the vector ``(<w rho, alpha_s>)_s`` where
``rho`` lies in the open fundamental chamber of the contragredient reflection
representation.  Left descents are the negative coordinates of that vector,
and greedily stripping the smallest left descent yields the ShortLex-least
reduced word, which is the canonical form stored on every :class:`Element`.

When every finite bond order lies in {2, 3, 4, 6} (and the graph admits a
consistent rescaling of the simple roots) the representation is realised by an
integer Cartan matrix; otherwise coordinates live in a cyclotomic ring, see
:mod:`coxkl.cyclotomic`.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import reduce as _fold
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .cyclotomic import CyclotomicRing

INF = math.inf


class CoxeterError(ValueError):
    """Invalid Coxeter data or an operation outside its domain."""


class InfiniteGroupError(CoxeterError):
    """An unbounded enumeration or a longest element was requested in an infinite group."""


class _IntArith:
    def __init__(self, cartan: list[list[int]]):
        n = len(cartan)
        self.cartan = cartan
        self.rows = [[(j, cartan[i][j]) for j in range(n) if j != i and cartan[i][j]] for i in range(n)]
        self.one = 1
        self.zero = 0

    def act(self, i: int, vec: tuple) -> tuple:
        v = list(vec)
        ci = v[i]
        for j, a in self.rows[i]:
            v[j] -= a * ci
        v[i] = -ci
        return tuple(v)

    def root_act(self, i: int, root: tuple) -> tuple:
        r = list(root)
        r[i] -= sum(a * root[j] for j, a in self.rows[i]) + 2 * root[i]
        return tuple(r)

    @staticmethod
    def sign(x) -> int:
        return (x > 0) - (x < 0)

    @staticmethod
    def to_json(x):
        return x


class _CycArith:
    def __init__(self, matrix: Sequence[Sequence[float]]):
        n = len(matrix)
        finite = {int(m) for row in matrix for m in row if m != INF and m >= 3}
        M = _fold(math.lcm, finite, 1) if finite else 1
        ring = CyclotomicRing(M)
        self.ring = ring
        self.one = ring.one
        self.zero = ring.zero
        self.cartan = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m = matrix[i][j]
                if i == j:
                    self.cartan[i][j] = ring.from_int(2)
                elif m == INF:
                    self.cartan[i][j] = ring.from_int(-2)
                elif m == 2:
                    self.cartan[i][j] = ring.zero
                else:
                    self.cartan[i][j] = ring.neg(ring.two_cos(int(m)))
        self.rows = [[(j, self.cartan[i][j]) for j in range(n) if j != i and any(self.cartan[i][j])]
                     for i in range(n)]

    def act(self, i: int, vec: tuple) -> tuple:
        ring = self.ring
        v = list(vec)
        ci = v[i]
        for j, a in self.rows[i]:
            v[j] = ring.sub(v[j], ring.mul(a, ci))
        v[i] = ring.neg(ci)
        return tuple(v)

    def root_act(self, i: int, root: tuple) -> tuple:
        ring = self.ring
        coef = ring.mul(ring.from_int(2), root[i])
        for j, a in self.rows[i]:
            coef = ring.add(coef, ring.mul(a, root[j]))
        r = list(root)
        r[i] = ring.sub(r[i], coef)
        return tuple(r)

    def sign(self, x) -> int:
        return self.ring.sign(x)

    def to_json(self, x):
        return {"zeta_order": self.ring.N, "coeffs": list(x)}


def _integer_cartan(matrix: Sequence[Sequence[float]]) -> list[list[int]] | None:
    """Integer Cartan matrix realising the bonds up to positive rescaling of roots, if one exists.

    A root alpha_s is rescaled by sqrt(2)^p * sqrt(3)^q; bonds 4 and 6 then need
    a unit step in p (resp. q) across the edge, bonds 3 and inf need equal scales.
    """
    n = len(matrix)
    for i in range(n):
        for j in range(n):
            m = matrix[i][j]
            if i != j and m not in (2, 3, 4, 6, INF):
                return None
    scale: list[tuple[int, int] | None] = [None] * n
    for root in range(n):
        if scale[root] is not None:
            continue
        scale[root] = (0, 0)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            p, q = scale[i]
            for j in range(n):
                m = matrix[i][j]
                if j == i or m == 2:
                    continue
                if m == 4:
                    options = [(p + 1, q), (p - 1, q)]
                elif m == 6:
                    options = [(p, q + 1), (p, q - 1)]
                else:
                    options = [(p, q)]
                if scale[j] is None:
                    scale[j] = options[0]
                    queue.append(j)
                elif scale[j] not in options:
                    return None
    cartan = [[0] * n for _ in range(n)]
    for i in range(n):
        cartan[i][i] = 2
        for j in range(n):
            m = matrix[i][j]
            if i == j or m == 2:
                continue
            if m == 3:
                cartan[i][j] = -1
            elif m == INF:
                cartan[i][j] = -2
            else:
                # A_ij = 2B_ij * lambda_j / lambda_i
                up = (scale[j][0] - scale[i][0]) if m == 4 else (scale[j][1] - scale[i][1])
                cartan[i][j] = -(2 if m == 4 else 3) if up > 0 else -1
    return cartan


def _component_is_finite(nodes: list[int], matrix) -> bool:
    """Classification of connected finite Coxeter graphs."""
    k = len(nodes)
    if k == 1:
        return True
    edges = [(i, j, matrix[i][j]) for i, j in combinations(nodes, 2) if matrix[i][j] != 2]
    if any(m == INF for _, _, m in edges):
        return False
    if k == 2:
        return True
    if len(edges) != k - 1:
        return False
    degree = {v: 0 for v in nodes}
    for i, j, _ in edges:
        degree[i] += 1
        degree[j] += 1
    heavy = [(i, j, m) for i, j, m in edges if m > 3]
    if len(heavy) > 1 or any(m > 5 for _, _, m in heavy):
        return False
    if heavy:
        if max(degree.values()) > 2:
            return False
        i, j, m = heavy[0]
        at_end = degree[i] == 1 or degree[j] == 1
        if m == 4:
            return at_end or k == 4
        return at_end and k <= 4
    branch = [v for v in nodes if degree[v] >= 3]
    if not branch:
        return True
    if len(branch) > 1 or degree[branch[0]] > 3:
        return False
    centre = branch[0]
    adjacency = {v: set() for v in nodes}
    for i, j, _ in edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    arms = []
    for start in adjacency[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [v for v in adjacency[cur] if v != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sum(1 / (a + 1) for a in arms) > 1


class Element:
    """A group element, stored as its ShortLex-least reduced word.

    Instances are interned per system: two elements of the same system are
    equal iff they are the same object iff their canonical words agree.
    """

    __slots__ = ("system", "word", "_vec", "_hash", "_inv", "_left", "_right", "_ldesc", "__weakref__")

    def __init__(self, system: CoxeterSystem, word: tuple[int, ...], vec: tuple):
        self.system = system
        self.word = word
        self._vec = vec
        self._hash = hash(word)
        self._inv = None
        self._left: list = [None] * system.rank
        self._right: list = [None] * system.rank
        self._ldesc = None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Element):
            return NotImplemented
        return self.system is other.system and self.word == other.word

    def __lt__(self, other: Element) -> bool:
        return (len(self.word), self.word) < (len(other.word), other.word)

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        if not self.word:
            return "1"
        return "".join(self.system.generators[i] for i in self.word)

    def __mul__(self, other: Element) -> Element:
        return self.system.mul(self, other)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def names(self) -> list[str]:
        return [self.system.generators[i] for i in self.word]

    @property
    def is_identity(self) -> bool:
        return not self.word

    def text(self) -> str:
        """Comma-separated generator names, ``"1"`` for the identity."""
        return ",".join(self.names) if self.word else "1"

    def sort_key(self) -> tuple:
        return (len(self.word), self.word)

    def inverse(self) -> Element:
        if self._inv is None:
            inv = self.system._inverse(self)
            self._inv = inv
            inv._inv = self
        return self._inv

    def lmul(self, i: int) -> Element:
        """s_i * self."""
        y = self._left[i]
        if y is None:
            sys_ = self.system
            y = sys_._from_vec(sys_._arith.act(i, self._vec))
            self._left[i] = y
            y._left[i] = self
        return y

    def rmul(self, i: int) -> Element:
        """self * s_i."""
        y = self._right[i]
        if y is None:
            y = self.inverse().lmul(i).inverse()
            self._right[i] = y
            y._right[i] = self
        return y

    def left_descents(self) -> frozenset[int]:
        if self._ldesc is None:
            sign = self.system._arith.sign
            self._ldesc = frozenset(i for i, c in enumerate(self._vec) if sign(c) < 0)
        return self._ldesc

    def right_descents(self) -> frozenset[int]:
        return self.inverse().left_descents()

    def has_left_descent(self, i: int) -> bool:
        return i in self.left_descents()

    def has_right_descent(self, i: int) -> bool:
        return i in self.inverse().left_descents()

    def support(self) -> frozenset[int]:
        return frozenset(self.word)


@dataclass(frozen=True, eq=False)
class Reflection:
    """A reflection with its positive root in the (possibly rescaled) simple-root basis."""

    element: Element
    root: tuple

    def __eq__(self, other) -> bool:
        return isinstance(other, Reflection) and self.element == other.element

    def __hash__(self) -> int:
        return hash(self.element)

    def __str__(self) -> str:
        return str(self.element)

    def support(self) -> frozenset[int]:
        sign = self.element.system._arith.sign
        return frozenset(i for i, c in enumerate(self.root) if sign(c) != 0)


class CoxeterSystem:
    """A Coxeter system given by generator names and a Coxeter matrix.

    The generator order is the fixed enumeration used for canonical words.
    Matrix entries are integers or ``math.inf``.
    """

    def __init__(self, generators: Sequence[str], matrix: Sequence[Sequence[float]], name: str | None = None,
                 *, exact: str = "auto"):
        generators = tuple(str(g) for g in generators)
        n = len(generators)
        if len(set(generators)) != n:
            raise CoxeterError("generator names must be distinct")
        if any(g in ("1", "") or "," in g or ";" in g for g in generators):
            raise CoxeterError("generator names may not be '1' or contain ',' or ';'")
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise CoxeterError("Coxeter matrix must be square of size len(generators)")
        m = [[_bond(x) for x in row] for row in matrix]
        for i in range(n):
            if m[i][i] != 1:
                raise CoxeterError(f"m({generators[i]},{generators[i]}) must be 1")
            for j in range(n):
                if i != j and (m[i][j] != m[j][i] or m[i][j] < 2):
                    raise CoxeterError(f"m({generators[i]},{generators[j]}) must be symmetric and >= 2")
        self.generators = generators
        self.index = {g: i for i, g in enumerate(generators)}
        self.matrix = tuple(tuple(row) for row in m)
        self.rank = n
        self.name = name
        cartan = _integer_cartan(m) if exact != "cyclotomic" else None
        self._arith = _IntArith(cartan) if cartan is not None else _CycArith(m)
        self.exact_mode = "integer" if cartan is not None else "cyclotomic"
        self._by_vec: dict[tuple, Element] = {}
        self._leq_cache: dict[tuple[Element, Element], bool] = {}
        self._lower: dict[Element, frozenset[Element]] = {}
        self._finite: dict[frozenset[int], bool] = {}
        self._inversions: dict[Element, tuple[Reflection, ...]] = {}
        self.cache: dict[str, object] = {}
        self.identity = self._from_vec(tuple(self._arith.one for _ in range(n)))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_json(cls, data: dict | str | Path) -> CoxeterSystem:
        """Load ``{"generators": [...], "matrix": [[...]]}``; ``"inf"`` marks infinite bonds."""
        if not isinstance(data, dict):
            path = Path(data)
            name = path.stem
            data = json.loads(path.read_text())
        else:
            name = data.get("name")
        if "type" in data and "matrix" not in data:
            return coxeter_type(data["type"])
        try:
            return cls(data["generators"], data["matrix"], name=data.get("name", name))
        except KeyError as exc:
            raise CoxeterError(f"system file lacks {exc}") from None

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "matrix": [["inf" if m == INF else int(m) for m in row] for row in self.matrix],
        }

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name or list(self.generators)})"

    def bond(self, i: int, j: int) -> float:
        return self.matrix[i][j]

    def commute(self, i: int, j: int) -> bool:
        return self.matrix[i][j] <= 2

    def subset(self, which: Iterable[int | str] | str | None) -> frozenset[int]:
        """Normalise a subset of S given by names, indices, ``"S"``/``"∅"`` or ``None`` (all of S)."""
        if which is None or which == "S":
            return frozenset(range(self.rank))
        if isinstance(which, str):
            which = which.strip()
            if which in ("∅", "", "{}", "0", "empty"):
                return frozenset()
            which = [p for p in which.strip("{}").split(",") if p.strip()]
        out = set()
        for g in which:
            if isinstance(g, int):
                if not 0 <= g < self.rank:
                    raise CoxeterError(f"generator index {g} out of range")
                out.add(g)
            else:
                g = g.strip()
                if g not in self.index:
                    raise CoxeterError(f"unknown generator {g!r}")
                out.add(self.index[g])
        return frozenset(out)

    def subset_names(self, I: Iterable[int]) -> list[str]:
        return [self.generators[i] for i in sorted(I)]

    # -- element construction ---------------------------------------------------

    def _from_vec(self, vec: tuple) -> Element:
        el = self._by_vec.get(vec)
        if el is not None:
            return el
        arith = self._arith
        sign = arith.sign
        path: list[tuple] = []
        letters: list[int] = []
        v = vec
        while True:
            found = self._by_vec.get(v)
            if found is not None:
                break
            for i, c in enumerate(v):
                if sign(c) < 0:
                    break
            else:
                found = Element(self, (), v)
                self._by_vec[v] = found
                break
            path.append(v)
            letters.append(i)
            v = arith.act(i, v)
        # every suffix of a ShortLex-least word is ShortLex-least
        el = found
        tail = found.word
        for k in range(len(letters) - 1, -1, -1):
            tail = (letters[k],) + tail
            el = Element(self, tail, path[k])
            self._by_vec[path[k]] = el
        return el

    def element(self, word: Iterable[int | str] | str = ()) -> Element:
        """Reduce a word (names, indices, or a comma-separated string) to its canonical element."""
        if isinstance(word, str):
            word = word.strip()
            word = [] if word in ("1", "") else [w for w in word.split(",") if w.strip()]
        letters = []
        for g in word:
            if isinstance(g, str):
                g = g.strip()
                if g == "1":
                    continue
                if g not in self.index:
                    raise CoxeterError(f"unknown generator {g!r}")
                letters.append(self.index[g])
            else:
                if not 0 <= g < self.rank:
                    raise CoxeterError(f"generator index {g} out of range")
                letters.append(g)
        vec = self.identity._vec
        act = self._arith.act
        for i in reversed(letters):
            vec = act(i, vec)
        return self._from_vec(vec)

    reduce = element

    def gen(self, g: int | str) -> Element:
        i = g if isinstance(g, int) else self.index[g]
        return self.identity.lmul(i)

    def _inverse(self, x: Element) -> Element:
        vec = self.identity._vec
        act = self._arith.act
        for i in x.word:
            vec = act(i, vec)
        return self._from_vec(vec)

    def mul(self, x: Element, y: Element) -> Element:
        if x.system is not self or y.system is not self:
            raise CoxeterError("elements belong to different Coxeter systems")
        if not x.word:
            return y
        if not y.word:
            return x
        if len(x.word) <= len(y.word):
            z = y
            for i in reversed(x.word):
                z = z.lmul(i)
            return z
        z = x
        for i in y.word:
            z = z.rmul(i)
        return z

    def word_product(self, *parts: Element) -> Element:
        out = self.identity
        for p in parts:
            out = self.mul(out, p)
        return out

    # -- basic invariants ---------------------------------------------------------

    def descents(self, x: Element, side: str = "left") -> frozenset[int]:
        if side == "left":
            return x.left_descents()
        if side == "right":
            return x.right_descents()
        raise CoxeterError("side must be 'left' or 'right'")

    def inversions(self, x: Element) -> tuple[Reflection, ...]:
        """N(x) = {t : l(tx) < l(x)}, listed as t_i = s_1...s_i...s_1 along the canonical word."""
        cached = self._inversions.get(x)
        if cached is not None:
            return cached
        arith = self._arith
        out = []
        word = x.word
        prefix = self.identity
        for k, i in enumerate(word):
            t = self.mul(prefix, self.mul(self.gen(i), prefix.inverse()))
            root = [arith.zero] * self.rank
            root[i] = arith.one
            root = tuple(root)
            for j in reversed(word[:k]):
                root = arith.root_act(j, root)
            out.append(Reflection(t, root))
            prefix = prefix.rmul(i)
        result = tuple(out)
        self._inversions[x] = result
        return result

    def is_reflection(self, x: Element) -> bool:
        if x.length % 2 == 0 or x.inverse() is not x:
            return False
        return any(r.element is x for r in self.inversions(x))

    def reflection(self, t: Element) -> Reflection:
        for r in self.inversions(t):
            if r.element is t:
                return r
        raise CoxeterError(f"{t} is not a reflection")

    def reflection_support(self, t: Reflection | Element) -> frozenset[int]:
        if isinstance(t, Element):
            t = self.reflection(t)
        return t.support()

    def bruhat_leq(self, x: Element, y: Element) -> bool:
        """Bruhat order by the lifting recursion on left descents of y."""
        if x.system is not self or y.system is not self:
            raise CoxeterError("elements belong to different Coxeter systems")
        return self._leq(x, y)

    def _leq(self, x: Element, y: Element) -> bool:
        if x is y:
            return True
        lx, ly = len(x.word), len(y.word)
        if lx >= ly:
            return False
        if lx == 0:
            return True
        key = (x, y)
        cached = self._leq_cache.get(key)
        if cached is not None:
            return cached
        s = y.word[0]
        sy = y.lmul(s)
        if s in x.left_descents():
            res = self._leq(x.lmul(s), sy)
        else:
            res = self._leq(x, sy)
        self._leq_cache[key] = res
        return res

    def lower_interval(self, y: Element) -> frozenset[Element]:
        """All x with x <= y in Bruhat order."""
        cached = self._lower.get(y)
        if cached is not None:
            return cached
        if not y.word:
            res = frozenset([y])
        else:
            s = y.word[0]
            below = self.lower_interval(y.lmul(s))
            res = below | frozenset(z.lmul(s) for z in below)
        self._lower[y] = res
        return res

    def bruhat_interval(self, x: Element, y: Element) -> list[Element]:
        """Elements of [x, y] sorted by ShortLex."""
        if not self._leq(x, y):
            return []
        return sorted(z for z in self.lower_interval(y) if self._leq(x, z))

    def in_parabolic(self, x: Element, I: Iterable[int]) -> bool:
        return set(x.word) <= set(I)

    def coset_decompose(self, x: Element, I: Iterable[int]) -> tuple[Element, Element]:
        """x = u v with u in W^I, v in W_I and lengths adding."""
        I = frozenset(I)
        u = x
        v = self.identity
        while True:
            d = u.right_descents() & I
            if not d:
                return u, v
            i = min(d)
            u = u.rmul(i)
            v = v.lmul(i)

    def min_coset_rep(self, x: Element, I: Iterable[int]) -> Element:
        return self.coset_decompose(x, I)[0]

    def is_min_coset_rep(self, x: Element, I: Iterable[int]) -> bool:
        return not (x.right_descents() & frozenset(I))

    def is_finite(self, I: Iterable[int] | None = None) -> bool:
        """Whether W_I is finite, by the classification of connected finite Coxeter graphs."""
        I = frozenset(range(self.rank)) if I is None else frozenset(I)
        cached = self._finite.get(I)
        if cached is not None:
            return cached
        remaining = set(I)
        result = True
        while remaining and result:
            start = remaining.pop()
            comp = {start}
            queue = [start]
            while queue:
                i = queue.pop()
                for j in list(remaining):
                    if self.matrix[i][j] != 2:
                        remaining.discard(j)
                        comp.add(j)
                        queue.append(j)
            result = _component_is_finite(sorted(comp), self.matrix)
        self._finite[I] = result
        return result

    def longest_element(self, I: Iterable[int] | None = None, *, bound: int = 100_000) -> Element:
        I = frozenset(range(self.rank)) if I is None else frozenset(I)
        if not self.is_finite(I):
            raise InfiniteGroupError(f"infinite parabolic subgroup generated by {self.subset_names(I)}")
        x = self.identity
        while True:
            up = [i for i in sorted(I) if not x.has_right_descent(i)]
            if not up:
                return x
            x = x.rmul(up[0])
            if x.length > bound:
                raise InfiniteGroupError("longest element search exceeded its bound")

    def enumerate(self, I: Iterable[int] | None = None, max_len: int | None = None,
                  quotient: bool = False) -> Iterator[Element]:
        """Elements of W_I (or of W^I when ``quotient``) by length, ShortLex within a length."""
        I = frozenset(range(self.rank)) if I is None else frozenset(I)
        if max_len is None:
            if quotient and not (self.is_finite() or I == frozenset(range(self.rank))):
                raise InfiniteGroupError("unbounded enumeration of W^I in an infinite group")
            if not quotient and not self.is_finite(I):
                raise InfiniteGroupError("unbounded enumeration of an infinite parabolic subgroup")
        gens = range(self.rank) if quotient else sorted(I)
        level = [self.identity]
        seen = {self.identity}
        k = 0
        while level:
            yield from level
            if max_len is not None and k >= max_len:
                return
            nxt = set()
            for x in level:
                for i in gens:
                    # W^I is closed under suffixes, W_I under prefixes
                    y = x.lmul(i) if quotient else x.rmul(i)
                    if len(y.word) == k + 1 and y not in seen:
                        if quotient and (y.right_descents() & I):
                            continue
                        nxt.add(y)
            seen |= nxt
            level = sorted(nxt)
            k += 1

    def elements(self, I: Iterable[int] | None = None, max_len: int | None = None) -> list[Element]:
        return list(self.enumerate(I, max_len))

    def quotient(self, I: Iterable[int], max_len: int | None = None) -> list[Element]:
        return list(self.enumerate(I, max_len, quotient=True))

    def reflections(self) -> list[Element]:
        """All reflections of a finite group, as N(w_0)."""
        return [r.element for r in self.inversions(self.longest_element())]


def _bond(x) -> float:
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        x = int(x)
    if isinstance(x, float) and math.isinf(x):
        return INF
    if int(x) != x:
        raise CoxeterError(f"bond order {x!r} is not an integer")
    return int(x)


def coxeter_type(name: str, prefix: str = "s") -> CoxeterSystem:
    """Named systems: A_n, B_n, D_n, E6-8, F4, G2, H3, H4, I2(m) (m may be inf)."""
    raw = name.strip()
    s = raw.upper().replace("_", "")
    if s.startswith("I2"):
        inner = s[2:].strip("()")
        m = _bond(inner.lower())
        return CoxeterSystem([f"{prefix}1", f"{prefix}2"], [[1, m], [m, 1]], name=raw)
    kind, rank = s[0], int(s[1:])
    names = [f"{prefix}{i + 1}" for i in range(rank)]
    m = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]

    def link(i, j, w=3):
        m[i][j] = m[j][i] = w

    if kind == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif kind in "BC":
        for i in range(rank - 1):
            link(i, i + 1)
        if rank >= 2:
            link(rank - 2, rank - 1, 4)
    elif kind == "D":
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif kind == "E":
        # Bourbaki: 1-3-4-5-..., 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, rank - 1):
            link(i, i + 1)
    elif kind == "F" and rank == 4:
        link(0, 1)
        link(1, 2, 4)
        link(2, 3)
    elif kind == "G" and rank == 2:
        link(0, 1, 6)
    elif kind == "H" and rank in (3, 4):
        link(0, 1, 5)
        for i in range(1, rank - 1):
            link(i, i + 1)
    else:
        raise CoxeterError(f"unknown Coxeter type {name!r}")
    return CoxeterSystem(names, m, name=raw)


def load_system(arg: str) -> CoxeterSystem:
    """A system file path, or a type name such as ``A2`` or ``I2(inf)``."""
    path = Path(arg)
    if path.exists():
        return CoxeterSystem.from_json(path)
    try:
        return coxeter_type(arg)
    except (ValueError, IndexError):
        raise CoxeterError(f"no system file or known type named {arg!r}") from None


# module-level conveniences mirroring the system methods

def reduce(system: CoxeterSystem, word) -> Element:
    return system.element(word)


def mul(x: Element, y: Element) -> Element:
    return x.system.mul(x, y)


def inv(x: Element) -> Element:
    return x.inverse()


def length(x: Element) -> int:
    return x.length


def descents(x: Element, side: str = "left") -> frozenset[int]:
    return x.system.descents(x, side)


def inversions(x: Element) -> tuple[Reflection, ...]:
    return x.system.inversions(x)


def bruhat_leq(x: Element, y: Element) -> bool:
    return x.system.bruhat_leq(x, y)


def coset_decompose(x: Element, I: Iterable[int]) -> tuple[Element, Element]:
    return x.system.coset_decompose(x, I)


def longest_element(system: CoxeterSystem, I: Iterable[int] | None = None) -> Element:
    return system.longest_element(I)


def reflection_support(t: Reflection) -> frozenset[int]:
    return t.support()
