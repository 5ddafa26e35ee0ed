"""Named verification suites comparing the Springer-side and twisted-side computations."""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .coxeter import CoxeterError, CoxeterSystem
from .hat import HatSystem, build_hat
from .klpoly import classical
from .laurent import ABAR, ONE, ZERO, LaurentPoly, QPoly
from .springer import SpringerPoset, VElement, poset


class UsageError(Exception):
    """Bad suite name or a configuration the suite cannot handle."""


def encode(value):
    """JSON-friendly canonical form used both for reports and for case comparison."""
    if isinstance(value, LaurentPoly):
        return {"u": value.to_json()}
    if isinstance(value, QPoly):
        return {"q": value.to_json()}
    if isinstance(value, VElement):
        return value.short()
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


@dataclass
class Case:
    check: str
    inputs: dict
    expected: object
    actual: object
    passed: bool = field(init=False)

    def __post_init__(self):
        self.inputs = encode(self.inputs)
        self.expected = encode(self.expected)
        self.actual = encode(self.actual)
        self.passed = json.dumps(self.expected, sort_keys=True) == json.dumps(self.actual, sort_keys=True)

    def to_json(self) -> dict:
        return {"check": self.check, "inputs": self.inputs, "expected": self.expected,
                "actual": self.actual, "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    cases: list[Case]
    duration: float
    config: dict
    notes: dict = field(default_factory=dict)
    budget_s: float = 0.0
    version: str = __version__

    @property
    def config_digest(self) -> str:
        return hashlib.sha256(json.dumps(self.config, sort_keys=True).encode()).hexdigest()[:16]

    @property
    def counts(self) -> dict:
        passed = sum(c.passed for c in self.cases)
        by_check: dict[str, list[int]] = {}
        for c in self.cases:
            entry = by_check.setdefault(c.check, [0, 0])
            entry[0] += 1
            entry[1] += c.passed
        return {"total": len(self.cases), "passed": passed, "failed": len(self.cases) - passed,
                "by_check": {k: {"total": t, "passed": p} for k, (t, p) in by_check.items()}}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json(self, failures_only: bool = False) -> dict:
        cases = [c for c in self.cases if not c.passed] if failures_only else self.cases
        return {
            "suite": self.suite,
            "pass": self.ok,
            "counts": self.counts,
            "duration_s": round(self.duration, 3),
            "budget_s": self.budget_s,
            "version": self.version,
            "config": self.config,
            "config_digest": self.config_digest,
            "notes": self.notes,
            "cases": [c.to_json() for c in cases],
        }

    def to_text(self) -> str:
        counts = self.counts
        lines = [f"suite {self.suite}: {'PASS' if self.ok else 'FAIL'} "
                 f"({counts['passed']}/{counts['total']} cases, {self.duration:.2f}s)"]
        for check, c in counts["by_check"].items():
            lines.append(f"  {check}: {c['passed']}/{c['total']}")
        for key, val in self.notes.items():
            lines.append(f"  note {key}: {json.dumps(val, sort_keys=True)}")
        for c in self.cases:
            if not c.passed:
                lines.append(f"  FAILED {c.check} {json.dumps(c.inputs)}: "
                             f"expected {json.dumps(c.expected)} got {json.dumps(c.actual)}")
        return "\n".join(lines)


class Context:
    """Shared state for one suite run."""

    EXHAUSTIVE_LIMIT = 100  # |V| up to this size is checked pair-exhaustively

    def __init__(self, W: CoxeterSystem, hat_config=None, *, slow: bool = False, seed: int = 0,
                 sample: int | None = None):
        self.W = W
        self.hat_config = hat_config
        self.h: HatSystem = build_hat(W, hat_config)
        self.P: SpringerPoset = poset(W)
        self.slow = slow
        self.seed = seed
        self.sample = sample
        self.rng = random.Random(seed)
        self._V: list[VElement] | None = None
        self._leq: dict[VElement, frozenset[VElement]] | None = None
        self._closure: dict[VElement, frozenset[VElement]] | None = None

    def config(self) -> dict:
        return {"W": self.W.to_json(), "hat": self.h.to_config(), "seed": self.seed,
                "sample": self.sample, "slow": self.slow}

    @property
    def finite(self) -> bool:
        return self.W.is_finite()

    def require_finite(self, what: str) -> None:
        if not self.finite:
            raise UsageError(f"{what} needs a finite W")

    def V(self) -> list[VElement]:
        if self._V is None:
            if self.finite:
                self._V = self.P.all_elements()
                if len(self._V) > 1000 and not self.slow:
                    raise UsageError(f"|V| = {len(self._V)}: this case is tagged slow, pass --slow")
            else:
                W = self.W
                out = []
                for I in self.P.subsets():
                    for a in W.enumerate(I, max_len=1, quotient=True):
                        for b in W.enumerate(max_len=2):
                            out.append(VElement(I, a, b))
                self._V = sorted(out)
        return self._V

    def below(self) -> dict[VElement, frozenset[VElement]]:
        """Down-sets {w : w <= v} computed from b~ != 0 over the element list."""
        if self._leq is None:
            V = self.V()
            self._leq = {v: frozenset(w for w in V if w.d <= v.d and self.P.leq(w, v)) for v in V}
        return self._leq

    def closure(self) -> dict[VElement, frozenset[VElement]]:
        if self._closure is None:
            self._closure = self.P.closure_order()
        return self._closure

    def exhaustive(self) -> bool:
        return self.sample is None and len(self.V()) <= self.EXHAUSTIVE_LIMIT

    def pairs(self, default_n: int) -> list[tuple[VElement, VElement]]:
        """All pairs for small cases; otherwise a seeded sample, half of it comparable pairs."""
        V = self.V()
        if self.exhaustive():
            return [(w, v) for w in V for v in V]
        n = self.sample if self.sample is not None else default_n
        if n >= len(V) ** 2:
            return [(w, v) for w in V for v in V]
        rng = random.Random(self.seed)
        out = []
        for k in range(n):
            v = V[rng.randrange(len(V))]
            if k % 2:
                w = V[rng.randrange(len(V))]
            else:
                low = sorted(self.below()[v]) if self.finite else [w for w in V if self.P.leq(w, v)]
                w = low[rng.randrange(len(low))]
            out.append((w, v))
        return out

    def comparable_pairs(self, default_n: int) -> list[tuple[VElement, VElement]]:
        V = self.V()
        below = self.below()
        if self.exhaustive():
            return [(w, v) for v in V for w in sorted(below[v])]
        n = self.sample if self.sample is not None else default_n
        rng = random.Random(self.seed + 1)
        out = []
        for _ in range(n):
            v = V[rng.randrange(len(V))]
            low = sorted(below[v])
            out.append((low[rng.randrange(len(low))], v))
        return out


# -- suites ---------------------------------------------------------------


def _cardinality(W: CoxeterSystem, P: SpringerPoset) -> int:
    order = len(W.elements())
    return sum(len(W.quotient(I)) * order for I in P.subsets())


def suite_iso(ctx: Context) -> tuple[list[Case], dict]:
    ctx.require_finite("iso")
    W, h, P = ctx.W, ctx.h, ctx.P
    cases = []
    V = ctx.V()
    Om = h.omega_enumerate()
    n = _cardinality(W, P)
    cases.append(Case("cardinality", {"formula": "sum |W^I| |W|"}, {"V": n, "Omega": n},
                      {"V": len(V), "Omega": len(Om)}))
    for v in V:
        x = h.element(h.phi(v))
        cases.append(Case("phi-bijective", {"v": v}, v, h.phi_inv(x)))
    image = {h.phi(v) for v in V}
    cases.append(Case("phi-onto", {}, len(Om), len(image & set(Om))))

    closure = ctx.closure()
    for w, v in ctx.pairs(default_n=2000):
        expected = w in closure[v]
        x, y = h.phi(w), h.phi(v)
        actual = {"R^A": bool(h.r_a(x, y)), "translated": h.leq_a_translated(x, y)}
        cases.append(Case("order-isomorphism", {"w": w, "v": v},
                          {"R^A": expected, "translated": expected}, actual))
    for v in V:
        fv = h.element(h.phi(v))
        for s in range(W.rank):
            hs = h.hat.gen(s)
            left = h.element(h.phi(P.act(_g("left", s), v)))
            right = h.element(h.phi(P.act(_g("right", s), v)))
            cases.append(Case("equivariance", {"v": v, "s": W.generators[s]},
                              [str(h.hat.mul(hs, fv)), str(h.hat.mul(fv, hs))], [str(left), str(right)]))

    H = h.hat
    if H.is_finite() and len(H.elements()) <= 2000:
        om_elems = {h.element(x) for x in Om}
        for y in H.elements():
            if y in om_elems:
                continue
            above = any(h.leq_a_translated(x, y) for x in om_elems)
            under = any(h.leq_a_translated(y, z) for z in om_elems)
            cases.append(Case("local-closedness", {"y": str(y)}, False, above and under))
        bad = [(str(y), str(x)) for x in H.elements() for y in H.lower_interval(x)
               if not H.bruhat_leq(h.pi_project(y), h.pi_project(x))]
        cases.append(Case("projection-monotone-bruhat", {"pairs": "all x <= y in W^"}, [], bad))
    for w, v in ctx.pairs(default_n=2000):
        x, y = h.element(h.phi(w)), h.element(h.phi(v))
        if h.leq_a(x, y):
            cases.append(Case("projection-monotone-twisted", {"w": w, "v": v}, True,
                              h.leq_a_translated(h.pi_project(x), h.pi_project(y))))
    return cases, {}


def _g(side: str, s: int):
    from .springer import PairGenerator
    return PairGenerator(side, s)


def suite_lengths(ctx: Context) -> tuple[list[Case], dict]:
    W, h = ctx.W, ctx.h
    n = W.rank
    cases = []
    for v in ctx.V():
        x = h.phi(v)
        el = h.element(x)
        cases.append(Case("length-bridge", {"x": str(x)}, h.omega_length(x), h.twisted_length(el)))
        cases.append(Case("twisted-length-vs-d", {"v": v}, v.d - n, h.twisted_length(el)))
        if ctx.finite:
            w0 = W.longest_element()
            cases.append(Case("phi-prime-length", {"v": v}, -v.d + n + w0.length, h.phi_prime(v).length))
    for I in h.subsets():
        z = h.z(I)
        cases.append(Case("z-length", {"I": W.subset_names(I)}, n - len(I), z.length))
        cases.append(Case("I-of-z_I", {"I": W.subset_names(I)}, W.subset_names(I), W.subset_names(h.i_of_z(z))))
    for z in h.theta_subgroup(max_len=n):
        cases.append(Case("I_z-commuting-vs-conjugation", {"z": str(z)},
                          W.subset_names(h.i_of_z_conjugation(z)), W.subset_names(h.i_of_z(z))))
    return cases, {}


def _z_orientation(h: HatSystem) -> dict:
    """For I ⊆ J compare abar^(|J|-|I|) with R~_{z_J,z_I} and with R~_{z_I,z_J}."""
    K = h.kl_hat
    lower_first = larger_first = total = 0
    for I in h.subsets():
        for J in h.subsets():
            if I <= J:
                total += 1
                target = ABAR ** (len(J) - len(I))
                lower_first += K.r(h.z(J), h.z(I)) == target
                larger_first += K.r(h.z(I), h.z(J)) == target
    return {"pairs I⊆J": total, "R~(z_J,z_I) matches": lower_first, "R~(z_I,z_J) matches": larger_first}


def suite_b_dual_route(ctx: Context) -> tuple[list[Case], dict]:
    h, P = ctx.h, ctx.P
    cases = []
    for w, v in ctx.pairs(default_n=1000):
        b = P.b(w, v)
        cases.append(Case("b=R^A(phi,phi)", {"w": w, "v": v}, b, h.r_a(h.phi(w), h.phi(v))))
        cases.append(Case("b-right=b-mixed", {"w": w, "v": v}, b, P.b(w, v, "mixed")))
        if b:
            cases.append(Case("monic", {"w": w, "v": v}, True, b.is_monic_abar(v.d - w.d)))
        else:
            cases.append(Case("zero-iff-not-leq1-leq2", {"w": w, "v": v}, False,
                              ctx.finite and w in ctx.closure()[v]))
    if ctx.exhaustive():
        Om = [h.phi(v) for v in ctx.V()]
        for x in Om:
            for y in Om:
                cases.append(Case("closed-form=generic", {"x": str(x), "y": str(y)},
                                  h.r_a(x, y), h.r_a_generic(x, y)))
        below = {y: [z for z in Om if h.r_a(z, y)] for y in Om} if ctx.finite else None
        for x in Om:
            for y in Om:
                if below is not None:
                    middle = [z for z in below[y] if h.r_a(x, z)]
                else:
                    middle = h.omega_interval(x, y)
                total = ZERO
                for z in middle:
                    total = total + h.r_a(x, z) * h.r_a(z, y).bar()
                cases.append(Case("R^A-inversion", {"x": str(x), "y": str(y)}, ONE if x == y else ZERO, total))
    orient = _z_orientation(h)
    for I in h.subsets():
        for J in h.subsets():
            if I <= J:
                cases.append(Case("R~(z_J,z_I)=abar^|J-I|", {"I": ctx.W.subset_names(I), "J": ctx.W.subset_names(J)},
                                  ABAR ** (len(J) - len(I)), h.kl_hat.r(h.z(J), h.z(I))))
    return cases, {"z-orientation": orient}


def suite_involution(ctx: Context) -> tuple[list[Case], dict]:
    P = ctx.P
    cases = []
    for w, v in ctx.pairs(default_n=500):
        if ctx.finite:
            below = ctx.below()[v]
            middle = [z for z in below if P.leq(w, z)]
        else:
            middle = P.interval(w, v)
        total = ZERO
        for z in middle:
            total = total + P.b(w, z) * P.b(z, v).bar()
        cases.append(Case("sum b(w,z)(u) b(z,v)(1/u) = delta", {"w": w, "v": v},
                          ONE if w == v else ZERO, total))
    return cases, {}


def suite_finite_classical(ctx: Context) -> tuple[list[Case], dict]:
    ctx.require_finite("finite-classical")
    W, h, P = ctx.W, ctx.h, ctx.P
    H, K = h.hat, h.kl_hat
    cases = []
    V = ctx.V()
    w0 = h.embed(W.longest_element())
    top = H.word_product(w0, h.z(frozenset()), w0)
    interval = sorted(str(x) for x in H.bruhat_interval(H.identity, top))
    image = sorted(str(h.phi_prime(v)) for v in V)
    cases.append(Case("phi-prime-image", {"interval": f"[1, {top}]"}, interval, image))
    pp = {v: h.phi_prime(v) for v in V}
    for w, v in ctx.pairs(default_n=2000):
        cases.append(Case("phi-prime-order", {"w": w, "v": v}, P.leq(w, v), H.bruhat_leq(pp[v], pp[w])))
        cases.append(Case("b=R~(phi'v,phi'w)", {"w": w, "v": v}, P.b(w, v), K.r(pp[v], pp[w])))
    notes = {"c=P_A": {"P_A(phi w, phi v)": 0, "P_A(phi v, phi w)": 0},
             "cinv=P_T+A": {"P_T+A(phi w, phi v)": 0, "P_T+A(phi v, phi w)": 0}, "pairs": 0}
    for w, v in ctx.comparable_pairs(default_n=300):
        c, ci = P.c(w, v), P.c_inv(w, v)
        x, y = h.phi(w), h.phi(v)
        cases.append(Case("c=Q(phi'v,phi'w)", {"w": w, "v": v}, c, K.q(pp[v], pp[w])))
        cases.append(Case("cinv=P(phi'v,phi'w)", {"w": w, "v": v}, ci, K.p(pp[v], pp[w])))
        lower, literal = h.p_a(x, y), h.p_a(y, x)
        cases.append(Case("c=P_A(phi w,phi v)", {"w": w, "v": v}, c, lower))
        comp_lower, comp_literal = h.p_complement(y, x), h.p_complement(x, y)
        cases.append(Case("cinv=P_T+A(phi v,phi w)", {"w": w, "v": v}, ci, comp_lower))
        notes["pairs"] += 1
        notes["c=P_A"]["P_A(phi w, phi v)"] += c == lower
        notes["c=P_A"]["P_A(phi v, phi w)"] += c == literal
        notes["cinv=P_T+A"]["P_T+A(phi v, phi w)"] += ci == comp_lower
        notes["cinv=P_T+A"]["P_T+A(phi w, phi v)"] += ci == comp_literal
    notes["z-orientation"] = _z_orientation(h)
    return cases, notes


def hat_variants(W: CoxeterSystem) -> list[tuple[str, dict | None]]:
    g = W.generators
    if W.rank == 1:
        return [("default", None), ("m=4", {"hat_bonds": {g[0]: 4}}), ("m=inf", {"hat_bonds": {g[0]: "inf"}})]
    return [("default", None), ("theta-bond-3", {"theta_bonds": [[g[0], g[1], 3]]})]


def suite_hat_invariance(ctx: Context) -> tuple[list[Case], dict]:
    W = ctx.W
    variants = [(name, build_hat(W, cfg)) for name, cfg in hat_variants(W)]
    (_, ref), others = variants[0], variants[1:]
    cases = []
    pairs = ctx.pairs(default_n=1000)
    cpairs = ctx.comparable_pairs(default_n=300)
    for name, h in others:
        for w, v in pairs:
            cases.append(Case(f"b-table[{name}]", {"w": w, "v": v},
                              ref.r_a(ref.phi(w), ref.phi(v)), h.r_a(h.phi(w), h.phi(v))))
        for w, v in cpairs:
            cases.append(Case(f"c-table[{name}]", {"w": w, "v": v},
                              ref.p_a(ref.phi(w), ref.phi(v)), h.p_a(h.phi(w), h.phi(v))))
    for w, v in cpairs:
        cases.append(Case("c-table[springer]", {"w": w, "v": v}, ref.p_a(ref.phi(w), ref.phi(v)), ctx.P.c(w, v)))
    return cases, {"variants": [name for name, _ in variants],
                   "hat types": {name: h.hat.matrix for name, h in variants}}


def _covers(ctx: Context) -> dict[VElement, list[VElement]]:
    below = ctx.below()
    up: dict[VElement, list[VElement]] = {v: [] for v in ctx.V()}
    for v, low in below.items():
        strict = [w for w in low if w != v]
        for w in strict:
            if not any(z != w and w in below[z] for z in strict):
                up[w].append(v)
    return up


def suite_purity_mobius(ctx: Context) -> tuple[list[Case], dict]:
    ctx.require_finite("purity-mobius")
    V = ctx.V()
    below = ctx.below()
    up = _covers(ctx)
    cases = []
    for w in V:
        above = sorted(v for v in V if w in below[v])
        mu: dict[VElement, int] = {}
        for z in above:  # increasing d
            mu[z] = 1 if z == w else -sum(mu[y] for y in mu if y in below[z] and y != z)
        for v in above:
            n = v.d - w.d
            if n > 4:
                continue
            # maximal chains of [w, v] by cover steps
            sizes = {w: {1}}
            for z in above:
                if z == w or z not in below[v]:
                    continue
                sizes[z] = {k + 1 for y in above if y in sizes and z in up[y] for k in sizes[y]}
            cases.append(Case("pure", {"w": w, "v": v}, [n + 1], sorted(sizes[v])))
            cases.append(Case("mobius", {"w": w, "v": v}, (-1) ** n, mu[v]))
    return cases, {}


def suite_graph_deodhar(ctx: Context) -> tuple[list[Case], dict]:
    ctx.require_finite("graph-deodhar")
    P = ctx.P
    V = ctx.V()
    below = ctx.below()
    cases = []
    edges: dict[VElement, set[VElement]] = {v: set() for v in V}
    for w in V:
        for v in V:
            if w == v:
                continue
            e = P.edge(w, v)
            cases.append(Case("edge-criteria", {"w": w, "v": v}, e, P.edge_combinatorial(w, v)))
            if e:
                edges[w].add(v)
    reach: dict[VElement, set[VElement]] = {}
    for w in sorted(V, reverse=True):  # decreasing d: successors first
        r = {w}
        for v in edges[w]:
            r |= reach[v]
        reach[w] = r
    for w in V:
        for v in V:
            cases.append(Case("path-characterization", {"w": w, "v": v}, w in below[v], v in reach[w]))
    nbrs = {z: edges[z] | {y for y in V if z in edges[y]} for z in V}
    for v in V:
        for w in below[v]:
            inside = {z for z in below[v] if w in below[z]}
            need = v.d - w.d
            for z in inside:
                count = len(nbrs[z] & inside)
                cases.append(Case("deodhar", {"w": w, "z": z, "v": v, "edges": count}, True, count >= need))
    return cases, {}


def suite_remark(ctx: Context) -> tuple[list[Case], dict]:
    ctx.require_finite("remark")
    W, h = ctx.W, ctx.h
    thetas = h.theta_subgroup(max_len=None if h.hat.is_finite(h.R) else 2 * W.rank)
    pieces = [(z, a) for z in thetas for a in W.quotient(h.i_of_z(z))]
    group = W.elements()
    total = len(pieces) ** 2 * len(group)
    if total <= 2000 and ctx.sample is None:
        tuples = [(z1, a1, z2, a2, b2) for (z1, a1) in pieces for (z2, a2) in pieces for b2 in group]
    else:
        rng = random.Random(ctx.seed)
        n = ctx.sample or 200
        tuples = [(*pieces[rng.randrange(len(pieces))], *pieces[rng.randrange(len(pieces))],
                   group[rng.randrange(len(group))]) for _ in range(n)]
    cases = []
    for z1, a1, z2, a2, b2 in tuples:
        lhs, rhs = h.remark_sides(a1, z1, a2, z2, b2)
        cases.append(Case("factorization", {"a1": str(a1), "z1": str(z1), "a2": str(a2), "z2": str(z2),
                                            "b2": str(b2)}, rhs, lhs))
    return cases, {"admissible tuples": total, "checked": len(tuples)}


def reversed_system(W: CoxeterSystem) -> CoxeterSystem:
    order = list(range(W.rank))[::-1]
    return CoxeterSystem([W.generators[i] for i in order],
                         [[W.matrix[i][j] for j in order] for i in order], name=f"{W.name}-reversed")


def suite_enumeration_invariance(ctx: Context) -> tuple[list[Case], dict]:
    W = ctx.W
    if W.rank < 2:
        raise UsageError("enumeration-invariance needs at least two generators")
    W2 = reversed_system(W)
    h2 = build_hat(W2, ctx.hat_config)
    P2 = poset(W2)
    h = ctx.h

    def move(v: VElement) -> VElement:
        return VElement(W2.subset(W.subset_names(v.I)), W2.element(v.a.names), W2.element(v.b.names))

    cases = []
    for w, v in ctx.pairs(default_n=1000):
        w2, v2 = move(w), move(v)
        ref = h.r_a(h.phi(w), h.phi(v))
        cases.append(Case("hat-route b", {"w": w, "v": v}, ref, h2.r_a(h2.phi(w2), h2.phi(v2))))
        cases.append(Case("springer b", {"w": w, "v": v}, ctx.P.b(w, v), P2.b(w2, v2)))
    return cases, {"z_I (first)": {str(I and W.subset_names(I)): str(h.z(I)) for I in h.subsets()},
                   "z_I (reversed)": {str(I and W2.subset_names(I)): str(h2.z(I)) for I in h2.subsets()}}


SUITES: dict[str, tuple[Callable[[Context], tuple[list[Case], dict]], float]] = {
    "iso": (suite_iso, 30.0),
    "lengths": (suite_lengths, 10.0),
    "b-dual-route": (suite_b_dual_route, 120.0),
    "involution": (suite_involution, 120.0),
    "finite-classical": (suite_finite_classical, 300.0),
    "hat-invariance": (suite_hat_invariance, 180.0),
    "purity-mobius": (suite_purity_mobius, 60.0),
    "graph-deodhar": (suite_graph_deodhar, 120.0),
    "remark": (suite_remark, 60.0),
    "enumeration-invariance": (suite_enumeration_invariance, 180.0),
}


def run_suite(name: str, W: CoxeterSystem, hat_config=None, *, slow: bool = False, seed: int = 0,
              sample: int | None = None) -> SuiteReport:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    fn, budget = SUITES[name]
    ctx = Context(W, hat_config, slow=slow, seed=seed, sample=sample)
    start = time.perf_counter()
    try:
        cases, notes = fn(ctx)
    except CoxeterError as exc:
        raise UsageError(str(exc)) from exc
    return SuiteReport(name, cases, time.perf_counter() - start, ctx.config(), notes, budget)
