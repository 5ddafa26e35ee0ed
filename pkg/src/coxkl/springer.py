"""Springer's poset V = {[I, a, b]}, its W x W action, and the b~, c, c_inv polynomials."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .coxeter import CoxeterError, CoxeterSystem, Element
from .klpoly import PolyTable, classical, generic_kl_from_r, orthogonal_inverse
from .laurent import ABAR, ALPHA, ONE, ZERO, LaurentPoly, QPoly


@dataclass(frozen=True)
class VElement:
    I: frozenset
    a: Element
    b: Element

    def __post_init__(self):
        W = self.a.system
        if self.b.system is not W:
            raise CoxeterError("a and b lie in different systems")
        if not W.is_min_coset_rep(self.a, self.I):
            raise CoxeterError(f"a = {self.a} is not a minimal coset representative for I = {self._names()}")

    @property
    def system(self) -> CoxeterSystem:
        return self.a.system

    @property
    def d(self) -> int:
        return -self.a.length + self.b.length + len(self.I)

    def _names(self) -> str:
        return "{" + ",".join(self.system.subset_names(self.I)) + "}"

    def sort_key(self) -> tuple:
        return (self.d, sorted(self.I), self.a.sort_key(), self.b.sort_key())

    def __lt__(self, other: VElement) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"[I={self._names()}; a={self.a}; b={self.b}]"

    def short(self) -> str:
        W = self.system
        if not self.I:
            I = "∅"
        elif len(self.I) == W.rank:
            I = "S"
        else:
            I = ",".join(W.subset_names(self.I))
        return f"[{I};{self.a.text()};{self.b.text()}]"

    def to_json(self) -> dict:
        return {"I": self.system.subset_names(self.I), "a": self.a.names, "b": self.b.names}

    @classmethod
    def from_json(cls, W: CoxeterSystem, data: dict) -> VElement:
        return cls(W.subset(data["I"]), W.element(data["a"]), W.element(data["b"]))

    @classmethod
    def parse(cls, W: CoxeterSystem, text: str) -> VElement:
        """Parse "[I;a;b]" or "[I={s1,s2}; a=s1s2; b=s2]"."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"bad V element {text!r}")
        parts = [p.strip() for p in body[1:-1].split(";")]
        if len(parts) != 3:
            raise ValueError(f"bad V element {text!r}")
        parts = [re.sub(r"^[Iab]\s*=\s*", "", p) for p in parts]
        I = parts[0].strip("{}").strip()
        I_set = W.subset(I if I in ("S", "∅", "") else [g.strip() for g in I.split(",") if g.strip()])
        return cls(I_set, _parse_word(W, parts[1]), _parse_word(W, parts[2]))


def _parse_word(W: CoxeterSystem, text: str) -> Element:
    text = text.strip()
    if "," in text or text in ("", "1") or text in W.index:
        return W.element(text)
    # concatenated names such as "s1s2": greedy longest-match tokenisation
    names = sorted(W.generators, key=len, reverse=True)
    out, i = [], 0
    while i < len(text):
        for g in names:
            if text.startswith(g, i):
                out.append(g)
                i += len(g)
                break
        else:
            raise CoxeterError(f"cannot parse word {text!r}")
    return W.element(out)


@dataclass(frozen=True)
class PairGenerator:
    """(s, 1) when side is "left", (1, s) when side is "right"."""

    side: str
    s: int

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")

    def __str__(self) -> str:
        return f"(s{self.s},1)" if self.side == "left" else f"(1,s{self.s})"


class SpringerPoset:
    """All V-side computations for one Coxeter system W."""

    def __init__(self, W: CoxeterSystem):
        self.W = W
        self.S = frozenset(range(W.rank))
        self.kl = classical(W)
        self.tables = {"right": PolyTable("b~"), "mixed": PolyTable("b~")}
        self.c_table = PolyTable("c")
        self.p_table = PolyTable("p")
        self.cinv_table = PolyTable("c_inv")
        self._all: list[VElement] | None = None

    def v(self, I, a, b) -> VElement:
        W = self.W
        a = a if isinstance(a, Element) else W.element(a)
        b = b if isinstance(b, Element) else W.element(b)
        return VElement(W.subset(I), a, b)

    def parse(self, text: str) -> VElement:
        return VElement.parse(self.W, text)

    @staticmethod
    def d(v: VElement) -> int:
        return v.d

    # -- action --------------------------------------------------------------

    def act(self, g: PairGenerator, v: VElement) -> VElement:
        if g.side == "right":
            return VElement(v.I, v.a, v.b.lmul(g.s))
        sa = v.a.lmul(g.s)
        if len(sa.word) < len(v.a.word) or not (sa.right_descents() & v.I):
            return VElement(v.I, sa, v.b)
        # case (b): sa = a t with t in I
        t = self.W.mul(v.a.inverse(), sa)
        return VElement(v.I, v.a, self.W.mul(v.b, t))

    def act_element(self, x: Element, y: Element, v: VElement) -> VElement:
        """(x, y).v, using that (x,1).[J,c,d] = [J,u,d g^-1] where xc = u g, u in W^J, g in W_J."""
        u, g = self.W.coset_decompose(self.W.mul(x, v.a), v.I)
        return VElement(v.I, u, self.W.word_product(y, v.b, g.inverse()))

    def hecke_act(self, g: PairGenerator, v: VElement) -> dict[VElement, LaurentPoly]:
        gv = self.act(g, v)
        if gv.d > v.d:
            return {gv: ONE}
        return {gv: ONE, v: ALPHA}

    def hecke_act_inv(self, g: PairGenerator, v: VElement) -> dict[VElement, LaurentPoly]:
        out = dict(self.hecke_act(g, v))
        out[v] = out.get(v, ZERO) - ALPHA
        return {k: c for k, c in out.items() if c}

    # -- b~ ------------------------------------------------------------------

    def b(self, w: VElement, v: VElement, policy: str = "right") -> LaurentPoly:
        """b~_{w,v}.  ``policy`` "right" reduces b_v by (1,s); "mixed" first shortens a_v by (s,1)."""
        table = self.tables[policy]
        cached = table.get(w, v)
        if cached is not None:
            return cached
        if w == v:
            val = ONE
        elif v.b.is_identity:
            val = self._base(w, v)
        elif policy == "mixed" and v.a.length:
            # v = sigma^-1 . v' with d(v') = d(v) + 1, so Delta(m_v) = T_sigma Delta(m_v')
            sigma = PairGenerator("left", min(v.a.left_descents()))
            vp = self.act(sigma, v)
            sw = self.act(sigma, w)
            val = self.b(sw, vp, policy)
            if sw.d < w.d:
                val = val + ALPHA * self.b(w, vp, policy)
        else:
            sigma = PairGenerator("right", min(v.b.left_descents()))
            vp = self.act(sigma, v)
            sw = self.act(sigma, w)
            val = self.b(sw, vp, policy)
            if sw.d > w.d:
                val = val + ABAR * self.b(w, vp, policy)
        table.put(w, v, val)
        return val

    def _base(self, w: VElement, v: VElement) -> LaurentPoly:
        if not w.I <= v.I or not self.W.in_parabolic(w.b, v.I):
            return ZERO
        r = self.kl.r(self.W.mul(v.a, w.b), w.a)
        if not r:
            return ZERO
        return ABAR ** (len(v.I) - len(w.I)) * r

    # -- order ---------------------------------------------------------------

    def leq1(self, w: VElement, v: VElement) -> bool:
        W = self.W
        return w.I <= v.I and W.bruhat_leq(v.a, w.a) and W.bruhat_leq(w.b, v.b)

    def leq2(self, w: VElement, v: VElement) -> bool:
        # b1 = b2 c forces c = b2^-1 b1
        W = self.W
        if not w.I <= v.I:
            return False
        c = W.mul(v.b.inverse(), w.b)
        if not W.in_parabolic(c, v.I) or w.b.length != v.b.length + c.length:
            return False
        return W.bruhat_leq(W.mul(v.a, c), w.a)

    def leq(self, w: VElement, v: VElement) -> bool:
        if w.d > v.d:
            return False
        return bool(self.b(w, v))

    # -- finite enumeration ---------------------------------------------------

    def subsets(self) -> list[frozenset]:
        n = self.W.rank
        return [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]

    def all_elements(self) -> list[VElement]:
        if self._all is None:
            if not self.W.is_finite():
                raise CoxeterError("V is infinite for an infinite Coxeter group")
            group = self.W.elements()
            out = []
            for I in self.subsets():
                for a in self.W.quotient(I):
                    for b in group:
                        out.append(VElement(I, a, b))
            out.sort()
            self._all = out
        return self._all

    def closure_order(self) -> dict[VElement, frozenset[VElement]]:
        """Down-sets of the order generated by leq1 and leq2 (finite W only)."""
        els = self.all_elements()
        below = {v: {w for w in els if self.leq1(w, v) or self.leq2(w, v)} for v in els}
        changed = True
        while changed:
            changed = False
            for v in els:
                new = set(below[v])
                for w in below[v]:
                    new |= below[w]
                if len(new) != len(below[v]):
                    below[v] = new
                    changed = True
        return {v: frozenset(s) for v, s in below.items()}

    def candidates(self, w: VElement, v: VElement) -> Iterator[VElement]:
        """Superset of [w, v] built from length bounds; finite even for infinite W."""
        W = self.W
        a_max = w.a.length + len(v.I) - len(w.I)
        for K in self.subsets():
            if not (w.I <= K <= v.I):
                continue
            for a in W.enumerate(K, max_len=a_max, quotient=True):
                b_max = v.d + a.length - len(w.I)
                if b_max < 0:
                    continue
                for b in W.enumerate(max_len=b_max):
                    yield VElement(K, a, b)

    def interval(self, w: VElement, v: VElement) -> list[VElement]:
        if not self.leq(w, v):
            return []
        if self.W.is_finite():
            pool: Iterable[VElement] = self.all_elements()
        else:
            pool = self.candidates(w, v)
        return sorted(z for z in pool if w.d <= z.d <= v.d and self.leq(w, z) and self.leq(z, v))

    # -- c and c_inv ----------------------------------------------------------

    def c(self, w: VElement, v: VElement) -> QPoly:
        if not self.leq(w, v):
            return QPoly()
        cached = self.c_table.get(w, v)
        if cached is None:
            interval = self.interval(w, v)
            _, big_p = generic_kl_from_r(interval, self.d, self.b, self.leq, tops=[v], p_table=self.p_table)
            for (x, y), val in big_p.items():
                self.c_table.put(x, y, val)
            cached = self.c_table.get(w, v)
        return cached

    def c_inv(self, w: VElement, v: VElement) -> QPoly:
        if not self.leq(w, v):
            return QPoly()
        cached = self.cinv_table.get(w, v)
        if cached is None:
            interval = self.interval(w, v)
            table = orthogonal_inverse(interval, self.d, self.c, self.leq, tops=[v])
            for (x, y), val in table.items():
                self.cinv_table.put(x, y, val)
            cached = self.cinv_table.get(w, v)
        return cached

    # -- graph and interval diagnostics ---------------------------------------

    def edge(self, w: VElement, v: VElement) -> bool:
        """Derivative criterion: b~'_{w,v}(1) != 0."""
        return w != v and self.b(w, v).derivative_at_one() != 0

    def edge_combinatorial(self, w: VElement, v: VElement) -> bool:
        W = self.W
        if w.d < v.d and w.I == v.I:
            # w = (1,t).v
            if w.a == v.a and W.is_reflection(W.mul(w.b, v.b.inverse())):
                return True
            # w = (t,1).v: t c = a g with g in W_J and b_w = b_v g^-1
            g = W.mul(w.b.inverse(), v.b)
            if W.in_parabolic(g, v.I) and W.is_reflection(W.word_product(w.a, g, v.a.inverse())):
                return True
        if w.I < v.I and len(v.I - w.I) == 1:
            f = W.mul(v.a.inverse(), w.a)
            if W.in_parabolic(f, v.I) and w.b == W.mul(v.b, f):
                return True
        return False

    def deodhar_count(self, w: VElement, z: VElement, v: VElement) -> int:
        interval = self.interval(w, v)
        if z not in interval:
            raise ValueError("z must lie in [w, v]")
        return sum(1 for y in interval if y != z and (self.edge(y, z) or self.edge(z, y)))

    def mobius(self, w: VElement, v: VElement, interval: list[VElement] | None = None) -> int:
        if not self.leq(w, v):
            return 0
        interval = interval if interval is not None else self.interval(w, v)
        mu: dict[VElement, int] = {}
        for z in interval:  # sorted by d, so predecessors come first
            mu[z] = 1 if z == w else -sum(mu[y] for y in mu if self.leq(y, z))
        return mu[v]

    def covers(self, interval: list[VElement]) -> list[tuple[VElement, VElement]]:
        out = []
        for x in interval:
            ups = [y for y in interval if y != x and x.d < y.d and self.leq(x, y)]
            for y in ups:
                if not any(z != y and z.d < y.d and self.leq(z, y) for z in ups):
                    out.append((x, y))
        return out

    def chain_sizes(self, w: VElement, v: VElement) -> set[int]:
        """Numbers of elements of the maximal chains of [w, v]."""
        interval = self.interval(w, v)
        up: dict[VElement, list[VElement]] = {z: [] for z in interval}
        for x, y in self.covers(interval):
            up[x].append(y)
        sizes: dict[VElement, set[int]] = {}
        for z in reversed(interval):
            sizes[z] = {1} if z == v else {n + 1 for y in up[z] for n in sizes[y]}
        return sizes[w]

    def to_dot(self, elements: list[VElement], name: str = "V") -> str:
        els = sorted(elements)
        ids = {z: f"n{i}" for i, z in enumerate(els)}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for z in els:
            lines.append(f'  {ids[z]} [label="{z.short()}"];')
        for d in sorted({z.d for z in els}):
            same = " ".join(ids[z] for z in els if z.d == d)
            lines.append(f"  {{ rank=same; {same} }}  // d={d}")
        for x, y in self.covers(els):
            lines.append(f"  {ids[x]} -> {ids[y]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def poset(W: CoxeterSystem) -> SpringerPoset:
    eng = W.cache.get("springer")
    if eng is None:
        eng = SpringerPoset(W)
        W.cache["springer"] = eng
    return eng
