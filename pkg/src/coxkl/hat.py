"""The enlarged Coxeter system W^ = <S, theta(S)>, the set Omega = U W z_I W, and twisted data for A = T^ \\ W.

Throughout, A is the set of reflections of W^ not lying in the standard
parabolic subgroup W = W^_S.  A reflection belongs to A exactly when its
support is not contained in S.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .coxeter import INF, CoxeterError, CoxeterSystem, Element, _bond
from .klpoly import PolyTable, classical, generic_kl_from_r
from .laurent import ABAR, ONE, ZERO, LaurentPoly, QPoly
from .springer import VElement


class NotInOmega(CoxeterError):
    """The element is not of the form a * z_I * b."""


@dataclass(frozen=True)
class OmegaElement:
    a: Element
    I: frozenset
    b: Element

    def sort_key(self) -> tuple:
        return (sorted(self.I), self.a.sort_key(), self.b.sort_key())

    def __lt__(self, other: OmegaElement) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        W = self.a.system
        return f"{self.a} * z[{','.join(W.subset_names(self.I))}] * {self.b}"


def _theta_name(name: str, taken: set[str]) -> str:
    out = "t" + name[1:] if name.startswith("s") else name + "'"
    while out in taken:
        out += "'"
    return out


class HatSystem:
    """W^ built from W by adding theta(r) for each r in S.

    ``hat_bonds`` maps a generator name to m(r, theta(r)) (default 3);
    ``theta_bonds`` lists triples (r, s, m) giving m(theta(r), theta(s)) (default 2).
    """

    def __init__(self, base: CoxeterSystem, hat_bonds: dict | None = None,
                 theta_bonds: Iterable | None = None, theta_names: dict | None = None):
        self.base = W = base
        n = W.rank
        self.n = n
        taken = set(W.generators)
        names = []
        for g in W.generators:
            nm = (theta_names or {}).get(g) or _theta_name(g, taken)
            taken.add(nm)
            names.append(nm)
        self.theta_names = names
        m = [[1 if i == j else 2 for j in range(2 * n)] for i in range(2 * n)]
        for i in range(n):
            for j in range(n):
                m[i][j] = W.matrix[i][j]
        self.hat_bonds = {}
        for i, g in enumerate(W.generators):
            val = _bond((hat_bonds or {}).get(g, 3))
            if val < 3:
                raise CoxeterError(f"m({g}, theta({g})) must be at least 3, got {val}")
            m[i][n + i] = m[n + i][i] = val
            self.hat_bonds[g] = val
        self.theta_bonds = []
        for r, s, val in theta_bonds or ():
            i, j = W.index[r], W.index[s]
            val = _bond(val)
            if i == j or val < 2:
                raise CoxeterError(f"invalid theta bond ({r}, {s}, {val})")
            m[n + i][n + j] = m[n + j][n + i] = val
            self.theta_bonds.append((r, s, val))
        self.hat = CoxeterSystem(list(W.generators) + names, m, name=f"hat({W.name})")
        self.S = frozenset(range(n))
        self.R = frozenset(range(n, 2 * n))
        self.kl_hat = classical(self.hat)
        self.kl = classical(W)
        self._z = {I: self._make_z(I) for I in self.subsets()}
        self._z_inv = {z: I for I, z in self._z.items()}
        self._tlen: dict[Element, int] = {}
        self.ra_table = PolyTable("R^A")
        self.ra_generic_table = PolyTable("R^A")
        self.pa_table = PolyTable("p_A")
        self.pa_big = PolyTable("P_A")
        self.pc_table = PolyTable("p_T+A")
        self.pc_big = PolyTable("P_T+A")

    @classmethod
    def from_config(cls, base: CoxeterSystem, config: dict | str | Path | None) -> HatSystem:
        if config is None or config == "default":
            return cls(base)
        if not isinstance(config, dict):
            config = json.loads(Path(config).read_text())
        return cls(base, config.get("hat_bonds"), config.get("theta_bonds"), config.get("theta_names"))

    def to_config(self) -> dict:
        return {
            "hat_bonds": {g: ("inf" if v == INF else int(v)) for g, v in self.hat_bonds.items()},
            "theta_bonds": [[r, s, "inf" if v == INF else int(v)] for r, s, v in self.theta_bonds],
        }

    # -- embeddings and z_I ----------------------------------------------------

    def subsets(self) -> list[frozenset]:
        n = self.n
        return [frozenset(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)]

    def embed(self, x: Element) -> Element:
        if x.system is self.hat:
            return x
        return self.hat.element(x.word)

    def restrict(self, x: Element) -> Element:
        if not self.in_base(x):
            raise CoxeterError(f"{x} does not lie in W")
        return self.base.element(x.word)

    def in_base(self, x: Element) -> bool:
        return x.support() <= self.S

    def theta(self, i: int | str) -> Element:
        if isinstance(i, str):
            i = self.base.index[i]
        return self.hat.gen(self.n + i)

    def _make_z(self, I: frozenset) -> Element:
        return self.hat.element([self.n + i for i in range(self.n) if i not in I])

    def z(self, I) -> Element:
        return self._z[self.base.subset(I) if not isinstance(I, frozenset) else I]

    def i_of_z(self, z: Element) -> frozenset:
        """I_z by the commuting-support rule."""
        supp = z.support()
        if not supp <= self.R:
            raise CoxeterError(f"{z} is not in the subgroup generated by theta(S)")
        return frozenset(r for r in self.S if all(self.hat.commute(r, k) for k in supp))

    def i_of_z_conjugation(self, z: Element) -> frozenset:
        """I_z = S ∩ z S z^-1, computed directly."""
        H = self.hat
        out = set()
        for r in self.S:
            conj = H.word_product(z.inverse(), H.gen(r), z)
            if conj.length == 1 and conj.word[0] in self.S:
                out.add(r)
        return frozenset(out)

    # -- twisted length --------------------------------------------------------

    def twisted_length(self, x: Element) -> int:
        cached = self._tlen.get(x)
        if cached is None:
            outside = sum(1 for t in self.hat.inversions(x.inverse()) if not t.support() <= self.S)
            cached = x.length - 2 * outside
            self._tlen[x] = cached
        return cached

    # -- Omega ---------------------------------------------------------------

    def omega(self, a, I, b) -> OmegaElement:
        W = self.base
        a = a if isinstance(a, Element) else W.element(a)
        b = b if isinstance(b, Element) else W.element(b)
        I = W.subset(I) if not isinstance(I, frozenset) else I
        if not W.is_min_coset_rep(a, I):
            raise CoxeterError(f"{a} is not a minimal coset representative for {W.subset_names(I)}")
        return OmegaElement(a, I, b)

    def element(self, x: OmegaElement) -> Element:
        return self.hat.word_product(self.embed(x.a), self._z[x.I], self.embed(x.b))

    def omega_decompose(self, x: Element) -> OmegaElement:
        H = self.hat
        left, rest = [], x
        while True:
            d = rest.left_descents() & self.S
            if not d:
                break
            s = min(d)
            left.append(s)
            rest = rest.lmul(s)
        right, core = [], rest
        while True:
            d = core.right_descents() & self.S
            if not d:
                break
            s = min(d)
            right.append(s)
            core = core.rmul(s)
        I = self._z_inv.get(core)
        if I is None:
            raise NotInOmega(f"{x} is not in Omega: its minimal double coset representative {core} is no z_I")
        W = self.base
        A = W.element(left)
        B = W.element(list(reversed(right)))
        u, c = W.coset_decompose(A, I)
        out = OmegaElement(u, I, W.mul(c, B))
        assert self.element(out) == x
        return out

    def as_omega(self, x: Element | OmegaElement) -> OmegaElement:
        return x if isinstance(x, OmegaElement) else self.omega_decompose(x)

    def phi(self, v: VElement) -> OmegaElement:
        return OmegaElement(v.a, v.I, v.b.inverse())

    def phi_inv(self, x: Element | OmegaElement) -> VElement:
        x = self.as_omega(x)
        return VElement(x.I, x.a, x.b.inverse())

    def phi_prime(self, v: VElement) -> Element:
        if not self.base.is_finite():
            raise CoxeterError("phi' needs W finite")
        return self.hat.mul(self.element(self.phi(v)), self.embed(self.base.longest_element()))

    def omega_enumerate(self) -> list[OmegaElement]:
        W = self.base
        if not W.is_finite():
            raise CoxeterError("Omega is infinite when W is infinite")
        group = W.elements()
        return sorted(OmegaElement(a, I, b) for I in self.subsets() for a in W.quotient(I) for b in group)

    def omega_length(self, x: OmegaElement) -> int:
        """-l(a) - l(z_I) + l(b), the closed form of the twisted length on Omega."""
        return -x.a.length - (self.n - len(x.I)) + x.b.length

    def pi_project(self, x: Element) -> Element:
        return self.hat.coset_decompose(x, self.S)[0]

    # -- R^A ------------------------------------------------------------------

    def r_a(self, x: Element | OmegaElement, y: Element | OmegaElement) -> LaurentPoly:
        """R^A_{x,y} on Omega by right reduction of y's b-part and the closed form at b = 1."""
        x, y = self.as_omega(x), self.as_omega(y)
        return self._r_a(x, y)

    def _r_a(self, x: OmegaElement, y: OmegaElement) -> LaurentPoly:
        cached = self.ra_table.get(x, y)
        if cached is not None:
            return cached
        W = self.base
        if y.b.is_identity:
            if not W.in_parabolic(x.b, y.I):
                val = ZERO
            else:
                rz = self.kl_hat.r(self._z[y.I], self._z[x.I])
                val = rz * self.kl.r(W.mul(y.a, x.b.inverse()), x.a) if rz else ZERO
        else:
            t = min(y.b.right_descents())
            yt = OmegaElement(y.a, y.I, y.b.rmul(t))
            xt = OmegaElement(x.a, x.I, x.b.rmul(t))
            val = self._r_a(xt, yt)
            if not x.b.has_right_descent(t):
                val = val + ABAR * self._r_a(x, yt)
        self.ra_table.put(x, y, val)
        return val

    def left_descents_a(self, y: Element) -> list[int]:
        ly = self.twisted_length(y)
        return [s for s in range(self.hat.rank) if self.twisted_length(y.lmul(s)) < ly]

    def right_descents_a(self, y: Element) -> list[int]:
        """Twisted right descents among S (every s in S is a simple reflection for the right action)."""
        ly = self.twisted_length(y)
        return [s for s in sorted(self.S) if self.twisted_length(y.rmul(s)) < ly]

    def r_a_generic(self, x: Element | OmegaElement, y: Element | OmegaElement, max_depth: int = 200,
                    max_search: int = 20000) -> LaurentPoly:
        """R^A_{x,y} from twisted lengths alone, without the normal form a * z_I * b.

        A step by s with s a twisted descent of y but not of x lowers the gap
        l_A(y) - l_A(x) and produces two terms.  Steps where s is a descent of
        both or of neither leave R^A unchanged; they are searched (cheapest pair
        first) until such a lowering step is available.  Left steps use all of
        S^, right steps use S.
        """
        x = self.element(x) if isinstance(x, OmegaElement) else x
        y = self.element(y) if isinstance(y, OmegaElement) else y
        return self._r_gen(x, y, max_depth, max_search)

    def _desc(self, x: Element, side: str, g: int) -> bool:
        nx = x.lmul(g) if side == "left" else x.rmul(g)
        return self.twisted_length(nx) < self.twisted_length(x)

    def _moves(self):
        return [("left", g) for g in range(self.hat.rank)] + [("right", g) for g in sorted(self.S)]

    @staticmethod
    def _apply(x: Element, side: str, g: int) -> Element:
        return x.lmul(g) if side == "left" else x.rmul(g)

    def _r_gen(self, x: Element, y: Element, depth: int, max_search: int) -> LaurentPoly:
        lx, ly = self.twisted_length(x), self.twisted_length(y)
        if lx > ly:
            return ZERO
        if lx == ly:
            return ONE if x == y else ZERO
        cached = self.ra_generic_table.get(x, y)
        if cached is not None:
            return cached
        if depth <= 0:
            raise RecursionError(f"twisted R-recursion exceeded its depth limit at ({x}, {y})")
        heap = [(x.length + y.length, 0, x, y)]
        seen = {(x, y)}
        counter = 0
        val = None
        while heap:
            _, _, px, py = heapq.heappop(heap)
            known = self.ra_generic_table.get(px, py)
            if known is not None:
                val = known
                break
            neutral = []
            for side, g in self._moves():
                dy, dx = self._desc(py, side, g), self._desc(px, side, g)
                if dy and not dx:
                    sx, sy = self._apply(px, side, g), self._apply(py, side, g)
                    val = self._r_gen(sx, sy, depth - 1, max_search) + ABAR * self._r_gen(px, sy, depth - 1, max_search)
                    break
                if dy == dx:
                    neutral.append((self._apply(px, side, g), self._apply(py, side, g)))
            if val is not None:
                break
            for nx, ny in neutral:
                if (nx, ny) not in seen:
                    seen.add((nx, ny))
                    counter += 1
                    heapq.heappush(heap, (nx.length + ny.length, counter, nx, ny))
            if len(seen) > max_search:
                break
        if val is None:
            raise RecursionError(f"no gap-lowering step found from ({x}, {y}) within {max_search} states")
        self.ra_generic_table.put(x, y, val)
        return val

    def r_a_translated(self, x: Element | OmegaElement, y: Element | OmegaElement) -> LaurentPoly:
        """R^A_{x,y} = R~_{y w_S, x w_S}; needs W finite."""
        w0 = self.embed(self.base.longest_element())
        x = self.element(x) if isinstance(x, OmegaElement) else x
        y = self.element(y) if isinstance(y, OmegaElement) else y
        return self.kl_hat.r(self.hat.mul(y, w0), self.hat.mul(x, w0))

    def leq_a(self, x: Element | OmegaElement, y: Element | OmegaElement) -> bool:
        """x <=_A y.  Omega pairs use R^A != 0; other pairs need W finite."""
        try:
            ox, oy = self.as_omega(x), self.as_omega(y)
        except NotInOmega:
            if not self.base.is_finite():
                raise
            return self.leq_a_translated(x, y)
        return bool(self._r_a(ox, oy))

    def leq_a_translated(self, x: Element | OmegaElement, y: Element | OmegaElement) -> bool:
        w0 = self.embed(self.base.longest_element())
        x = self.element(x) if isinstance(x, OmegaElement) else x
        y = self.element(y) if isinstance(y, OmegaElement) else y
        return self.hat.bruhat_leq(self.hat.mul(y, w0), self.hat.mul(x, w0))

    # -- P_A and its complement ---------------------------------------------------

    def omega_interval(self, x: OmegaElement, y: OmegaElement) -> list[OmegaElement]:
        if not self._r_a(x, y):
            return []
        if self.base.is_finite():
            pool = self.omega_enumerate()
        else:
            from .springer import poset
            pool = [self.phi(v) for v in poset(self.base).candidates(self.phi_inv(x), self.phi_inv(y))]
        return sorted(z for z in pool if self._r_a(x, z) and self._r_a(z, y))

    def p_a(self, x: Element | OmegaElement, y: Element | OmegaElement) -> QPoly:
        x, y = self.as_omega(x), self.as_omega(y)
        if not self._r_a(x, y):
            return QPoly()
        cached = self.pa_big.get(x, y)
        if cached is None:
            interval = self.omega_interval(x, y)
            _, big = generic_kl_from_r(interval, self.omega_length, self._r_a,
                                       lambda a, b: bool(self._r_a(a, b)), tops=[y], p_table=self.pa_table)
            for (a, b), val in big.items():
                self.pa_big.put(a, b, val)
            cached = self.pa_big.get(x, y)
        return cached

    def p_complement(self, x: Element | OmegaElement, y: Element | OmegaElement) -> QPoly:
        """P_{T^+A}(x, y): the same solver on the opposite order, with R^{T^+A}_{x,y} = R^A_{y,x}."""
        x, y = self.as_omega(x), self.as_omega(y)
        if not self._r_a(y, x):
            return QPoly()
        cached = self.pc_big.get(x, y)
        if cached is None:
            interval = self.omega_interval(y, x)
            _, big = generic_kl_from_r(interval, lambda z: -self.omega_length(z), lambda a, b: self._r_a(b, a),
                                       lambda a, b: bool(self._r_a(b, a)), tops=[y], p_table=self.pc_table)
            for (a, b), val in big.items():
                self.pc_big.put(a, b, val)
            cached = self.pc_big.get(x, y)
        return cached

    # -- factorisation identity for finite W ----------------------------------------

    def remark_sides(self, a1: Element, z1: Element, a2: Element, z2: Element, b2: Element
                     ) -> tuple[LaurentPoly, LaurentPoly]:
        """Both sides of R~_{a1 z1 w, a2 z2 b2 w} = R~_{z1,z2} R~_{a1 b2^-1, a2} [b2 in W_{I_1}], w = w_S."""
        W, H = self.base, self.hat
        I1, I2 = self.i_of_z(z1), self.i_of_z(z2)
        if not (W.is_min_coset_rep(a1, I1) and W.is_min_coset_rep(a2, I2)):
            raise CoxeterError("a_i must be minimal coset representatives for I_{z_i}")
        w0 = self.embed(W.longest_element())
        lhs = self.kl_hat.r(H.word_product(self.embed(a1), z1, w0),
                            H.word_product(self.embed(a2), z2, self.embed(b2), w0))
        if W.in_parabolic(b2, I1):
            rhs = self.kl_hat.r(z1, z2) * self.kl.r(W.mul(a1, b2.inverse()), a2)
        else:
            rhs = ZERO
        return lhs, rhs

    def remark_check(self, a1: Element, z1: Element, a2: Element, z2: Element, b2: Element) -> bool:
        lhs, rhs = self.remark_sides(a1, z1, a2, z2, b2)
        return lhs == rhs

    def theta_subgroup(self, max_len: int | None = None) -> list[Element]:
        return self.hat.enumerate(self.R, max_len=max_len)


def build_hat(W: CoxeterSystem, config: dict | str | Path | None = None) -> HatSystem:
    return HatSystem.from_config(W, config)
