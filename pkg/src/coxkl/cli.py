"""Command line front end: ``coxkl element|poly|poset|verify``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .coxeter import CoxeterError, CoxeterSystem, Element, load_system
from .hat import HatSystem, NotInOmega, OmegaElement, build_hat
from .klpoly import MemoConflict, classical
from .laurent import LaurentPoly, QPoly
from .springer import SpringerPoset, VElement, _parse_word, poset
from .verify import SUITES, UsageError, run_suite

CACHE_VERSION = 1


class CliError(Exception):
    """Reported on stderr with exit status 2."""


# -- argument parsing helpers -------------------------------------------------------


def _system(args) -> CoxeterSystem:
    if not args.system:
        raise CliError("a Coxeter system is required (--system/--W)")
    try:
        return load_system(args.system)
    except (OSError, ValueError, KeyError) as exc:
        raise CliError(f"cannot load system {args.system!r}: {exc}") from None


def _word(W: CoxeterSystem, text: str | None, flag: str) -> Element:
    if text is None:
        raise CliError(f"{flag} is required")
    try:
        return _parse_word(W, text)
    except CoxeterError as exc:
        raise CliError(str(exc)) from None


def _velement(P: SpringerPoset, text: str | None, flag: str) -> VElement:
    if text is None:
        raise CliError(f"{flag} is required")
    try:
        return P.parse(text)
    except (CoxeterError, ValueError) as exc:
        raise CliError(f"invalid V element {text!r}: {exc}") from None


def _hat_element(h: HatSystem, text: str | None, flag: str) -> OmegaElement:
    if text is None:
        raise CliError(f"{flag} is required")
    try:
        if "*" in text:
            a, zpart, b = (p.strip() for p in text.split("*"))
            I = zpart.strip()[2:-1] if zpart.startswith("z[") else zpart
            return h.omega(_parse_word(h.base, a), h.base.subset(I if I else "∅"), _parse_word(h.base, b))
        return h.omega_decompose(_parse_word(h.hat, text))
    except (CoxeterError, ValueError) as exc:
        raise CliError(f"invalid element of Omega {text!r}: {exc}") from None


def _subset(W: CoxeterSystem, text: str | None):
    try:
        return W.subset(text if text is not None else "∅")
    except CoxeterError as exc:
        raise CliError(str(exc)) from None


def _emit(obj) -> None:
    if isinstance(obj, str):
        print(obj)
    else:
        print(json.dumps(obj, sort_keys=True, ensure_ascii=False))


def _poly_out(p, *, kind: str, gap: int | None = None, forms: str = "default") -> dict:
    if isinstance(p, LaurentPoly):
        out = {"abar": p.abar_json()}
        if forms == "all":
            out["u"] = p.to_json()
        return out
    assert isinstance(p, QPoly)
    out = {"q": p.to_json()}
    if forms == "all" and gap is not None:
        out["u"] = p.to_u(gap).to_json()
    return out


# -- on-disk memo cache --------------------------------------------------------------------


class DiskCache:
    """JSON-lines copy of the memo tables, keyed by a digest of the system and hat."""

    def __init__(self, path: str, W: CoxeterSystem, h: HatSystem | None):
        self.path = Path(path)
        self.W, self.h = W, h
        cfg = {"W": W.to_json(), "hat": h.to_config() if h else None, "version": CACHE_VERSION}
        self.digest = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:16]

    def _tables(self):
        W, h = self.W, self.h
        yield "R~W", classical(W).R
        yield "b~", poset(W).tables["right"]
        if h is not None:
            yield "R~H", h.kl_hat.R
            yield "R^A", h.ra_table

    def _enc(self, name: str, x):
        if isinstance(x, Element):
            return x.names
        if isinstance(x, VElement):
            return x.to_json()
        return {"a": x.a.names, "I": self.W.subset_names(x.I), "b": x.b.names}

    def _dec(self, name: str, data):
        if name == "R~W":
            return self.W.element(data)
        if name == "R~H":
            return self.h.hat.element(data)
        if name == "b~":
            return VElement.from_json(self.W, data)
        return OmegaElement(self.W.element(data["a"]), self.W.subset(data["I"]), self.W.element(data["b"]))

    def load(self) -> int:
        if not self.path.exists():
            return 0
        lines = self.path.read_text().splitlines()
        if not lines:
            return 0
        header = json.loads(lines[0])
        if header.get("cache") != "coxkl" or header.get("version") != CACHE_VERSION \
                or header.get("digest") != self.digest:
            print(f"coxkl: ignoring cache {self.path} built for another configuration", file=sys.stderr)
            return 0
        tables = dict(self._tables())
        n = 0
        for line in lines[1:]:
            rec = json.loads(line)
            table = tables.get(rec["table"])
            if table is None:
                continue
            poly = LaurentPoly.from_json(rec["poly"]["u"])
            table.put(self._dec(rec["table"], rec["x"]), self._dec(rec["table"], rec["y"]), poly)
            n += 1
        return n

    def save(self) -> int:
        header = {"cache": "coxkl", "version": CACHE_VERSION, "digest": self.digest, "tool": __version__}
        rows = []
        for name, table in self._tables():
            for (x, y), p in table.items():
                rows.append({"table": name, "x": self._enc(name, x), "y": self._enc(name, y),
                             "kind": table.kind, "poly": {"u": p.to_json()}})
        rows.sort(key=lambda r: json.dumps(r, sort_keys=True, ensure_ascii=False))
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        with tmp.open("w") as fh:
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for r in rows:
                fh.write(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n")
        tmp.replace(self.path)
        return len(rows)


# -- subcommands -----------------------------------------------------------------------


def cmd_element(args) -> int:
    W = _system(args)
    op = args.op
    if op == "reduce":
        _emit(str(_word(W, args.word, "--word")))
    elif op == "mul":
        _emit(str(W.mul(_word(W, args.x, "--x"), _word(W, args.y, "--y"))))
    elif op == "inv":
        _emit(str(_word(W, args.word, "--word").inverse()))
    elif op == "length":
        _emit(str(_word(W, args.word, "--word").length))
    elif op == "descents":
        x = _word(W, args.word, "--word")
        _emit(W.subset_names(W.descents(x, args.side)))
    elif op == "inversions":
        x = _word(W, args.word, "--word")
        _emit(sorted((str(t) for t in W.inversions(x)), key=lambda s: (len(s), s)))
    elif op == "bruhat-leq":
        _emit(W.bruhat_leq(_word(W, args.x, "--x"), _word(W, args.y, "--y")))
    elif op == "coset":
        u, v = W.coset_decompose(_word(W, args.word, "--word"), _subset(W, args.I))
        _emit([str(u), str(v)])
    elif op == "longest":
        try:
            _emit(str(W.longest_element(_subset(W, args.I if args.I is not None else "S"))))
        except CoxeterError as exc:
            raise CliError(str(exc)) from None
    return 0


def cmd_poly(args) -> int:
    W = _system(args)
    op = args.op
    needs_hat = op in ("ra", "ra-generic", "pa", "pc")
    h = build_hat(W, args.hat) if needs_hat else None
    cache = DiskCache(args.cache, W, h) if args.cache else None
    if cache:
        cache.load()
    P = poset(W)
    if op in ("r", "p", "q"):
        x, y = _word(W, args.x, "--x"), _word(W, args.y, "--y")
        eng = classical(W, args.policy if op == "r" else "first")
        if op == "r":
            out = _poly_out(eng.r(x, y), kind=op, forms=args.forms)
        else:
            val = eng.p(x, y) if op == "p" else eng.q(x, y)
            out = _poly_out(val, kind=op, gap=y.length - x.length, forms=args.forms)
    elif op in ("b", "c", "cinv"):
        w, v = _velement(P, args.w, "--w"), _velement(P, args.v, "--v")
        if op == "b":
            out = _poly_out(P.b(w, v, "mixed" if args.policy == "mixed" else "right"), kind=op, forms=args.forms)
        else:
            val = P.c(w, v) if op == "c" else P.c_inv(w, v)
            out = _poly_out(val, kind=op, gap=v.d - w.d, forms=args.forms)
    else:
        x, y = _hat_element(h, args.x, "--x"), _hat_element(h, args.y, "--y")
        if op == "ra":
            out = _poly_out(h.r_a(x, y), kind=op, forms=args.forms)
        elif op == "ra-generic":
            out = _poly_out(h.r_a_generic(x, y), kind=op, forms=args.forms)
        elif op == "pa":
            out = _poly_out(h.p_a(x, y), kind=op, gap=h.omega_length(y) - h.omega_length(x), forms=args.forms)
        else:
            out = _poly_out(h.p_complement(x, y), kind=op, gap=h.omega_length(x) - h.omega_length(y),
                            forms=args.forms)
    if cache:
        cache.save()
    _emit(out)
    return 0


def cmd_poset(args) -> int:
    W = _system(args)
    P = poset(W)
    if args.w is not None or args.v is not None:
        w, v = _velement(P, args.w, "--w"), _velement(P, args.v, "--v")
        elements = P.interval(w, v)
    else:
        if not W.is_finite():
            raise CliError("the full poset of an infinite group cannot be enumerated; give --w and --v")
        w = v = None
        elements = P.all_elements()
    op = args.op
    if op == "mobius":
        if w is None:
            raise CliError("mobius needs --w and --v")
        _emit(str(P.mobius(w, v, elements)))
    elif op == "interval":
        if args.format == "dot":
            _emit(P.to_dot(elements).rstrip("\n"))
        else:
            _emit([{"v": z.short(), "d": z.d} for z in elements])
    elif op == "hasse":
        if args.format == "json":
            _emit([[x.short(), y.short()] for x, y in P.covers(elements)])
        else:
            _emit(P.to_dot(elements).rstrip("\n"))
    elif op == "edges":
        edges = [(x, y) for x in elements for y in elements if P.edge(x, y)]
        if args.format == "json":
            _emit([[x.short(), y.short()] for x, y in edges])
        else:
            ids = {z: f"n{i}" for i, z in enumerate(elements)}
            lines = ["digraph edges {"] + [f'  {ids[z]} [label="{z.short()}"];' for z in elements]
            lines += [f"  {ids[x]} -> {ids[y]};" for x, y in edges] + ["}"]
            _emit("\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    W = _system(args)
    try:
        report = run_suite(args.suite, W, args.hat, slow=args.slow, seed=args.seed, sample=args.sample)
    except UsageError as exc:
        raise CliError(str(exc)) from None
    if args.report == "json":
        text = json.dumps(report.to_json(failures_only=args.failures_only), sort_keys=True, ensure_ascii=False)
    else:
        text = report.to_text()
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(report.to_text().splitlines()[0])
    else:
        print(text)
    return 0 if report.ok else 1


# -- parser ----------------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--system", "--W", dest="system", help="system JSON file or type name such as A2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxkl", description=__doc__)
    parser.add_argument("--version", action="version", version=f"coxkl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("element", help="word problem, lengths, descents, Bruhat order")
    p.add_argument("op", choices=["reduce", "mul", "inv", "length", "descents", "inversions",
                                  "bruhat-leq", "coset", "longest"])
    _common(p)
    p.add_argument("--word")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--I", help="subset of generators, comma separated, or ∅ / S")
    p.set_defaults(func=cmd_element)

    p = sub.add_parser("poly", help="R~, P, Q, b~, c, c_inv, R^A, P_A polynomials")
    p.add_argument("op", choices=["r", "p", "q", "b", "c", "cinv", "ra", "ra-generic", "pa", "pc"])
    _common(p)
    p.add_argument("--hat", default="default", help="'default' or a hat config JSON file")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--w")
    p.add_argument("--v")
    p.add_argument("--policy", choices=["first", "last", "right", "mixed"], default="first")
    p.add_argument("--forms", choices=["default", "all"], default="default",
                   help="'all' adds the u-form to the output")
    p.add_argument("--cache", help="JSON-lines memo cache file")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("poset", help="intervals, Hasse diagrams, Möbius values, graph edges of V")
    p.add_argument("op", choices=["interval", "hasse", "mobius", "edges"])
    _common(p)
    p.add_argument("--w")
    p.add_argument("--v")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=list(SUITES))
    _common(p)
    p.add_argument("--hat", default="default")
    p.add_argument("--report", choices=["json", "text"], default="text")
    p.add_argument("--slow", action="store_true", help="allow cases tagged slow")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, help="sample size instead of the default scope")
    p.add_argument("--failures-only", action="store_true", help="omit passing cases from JSON reports")
    p.add_argument("--out", help="write the report to a file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, NotInOmega) as exc:
        print(f"coxkl: error: {exc}", file=sys.stderr)
        return 2
    except MemoConflict as exc:
        print(f"coxkl: cache conflict: {exc}", file=sys.stderr)
        return 1
    except CoxeterError as exc:
        print(f"coxkl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
