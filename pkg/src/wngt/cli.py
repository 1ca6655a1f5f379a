"""Command-line front end.

Exit codes: 0 success, 1 bad arguments or I/O, 2 non-reduced word,
3 non-gatherable, 4 search cap exceeded.  ``verify`` exits with the number
of failed fixtures.
"""
import argparse
import json
import sys
from fractions import Fraction

from .errors import CapExceeded, NonReduced, WngtError
from .rootsys import SystemType
from .weyl import (AffineElement, AffineRoot, element_to_json, from_word, length, lambda_sequence,
                   minuscule_indices, pi_element, reduced_word, sequence_to_json)
from .words import default_cap, is_gatherable, is_minimal_ngt, make_triple, triples_in


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------
# parsing helpers

def parse_word(sys_, text):
    """'i,j,k' with an optional leading 'pi:r' token; returns (pi, letters)."""
    tokens = [t.strip() for t in (text or "").split(",") if t.strip()]
    pi = None
    if tokens and tokens[0].startswith("pi:"):
        r = int(tokens.pop(0)[3:])
        if r != 0 and r not in minuscule_indices(sys_):
            raise UsageError(f"pi:{r} is not a minuscule index of {sys_}")
        pi = pi_element(sys_, r) if r else None
    try:
        letters = [int(t) for t in tokens]
    except ValueError as exc:
        raise UsageError(f"bad word {text!r}") from exc
    if any(not 0 <= i <= sys_.rank for i in letters):
        raise UsageError(f"generator index out of range 0..{sys_.rank}")
    return pi, letters


def parse_root(text):
    """'c1,...,cn@k' (level defaults to 0)."""
    coords, _, level = text.strip().partition("@")
    try:
        return AffineRoot(tuple(int(c) for c in coords.split(",")), int(level or 0))
    except ValueError as exc:
        raise UsageError(f"bad root {text!r}") from exc


def parse_triple(sys_, text):
    """'beta;gamma;alpha' or 'beta;alpha'."""
    parts = [parse_root(p) for p in text.split(";") if p.strip()]
    if len(parts) == 3:
        beta, gamma, alpha = parts
        t = make_triple(sys_, alpha, beta)
        if t.gamma != gamma:
            raise UsageError("gamma must equal alpha + beta")
        return t
    if len(parts) == 2:
        return make_triple(sys_, parts[1], parts[0])
    raise UsageError("a triple needs two or three roots separated by ';'")


def _fmt(c):
    return str(c) if not isinstance(c, Fraction) else f"{c.numerator}/{c.denominator}"


def _element_text(e):
    return "b=(" + ",".join(_fmt(c) for c in e.b) + ") w=(" + ",".join(map(str, e.w)) + ")"


def _system(args):
    return SystemType(args.type, args.rank)


def _cap(args):
    return args.cap if args.cap is not None else default_cap()


# ---------------------------------------------------------------------
# commands

def cmd_lambda(args, out):
    sys_ = _system(args)
    pi, word = parse_word(sys_, args.word)
    try:
        lam = lambda_sequence(sys_, word)
    except NonReduced as exc:
        print(f"non-reduced at position {exc.position}", file=sys.stderr)
        return 2
    e = from_word(sys_, word, pi)
    if args.format == "json":
        out.write(json.dumps({"format": 1, "element": element_to_json(e),
                              "lambda": sequence_to_json(lam), "length": len(lam)}) + "\n")
    else:
        for r in lam:
            out.write(f"{r}\n")
        out.write(f"{_element_text(e)}\nlength {len(lam)}\n")
    return 0


def cmd_gather(args, out):
    sys_ = _system(args)
    pi, word = parse_word(sys_, args.word)
    try:
        lam = lambda_sequence(sys_, word)
    except NonReduced as exc:
        print(f"non-reduced at position {exc.position}", file=sys.stderr)
        return 2
    if args.triple:
        triple = parse_triple(sys_, args.triple)
    else:
        triple = is_minimal_ngt(from_word(sys_, word))
        if triple is None:
            found = triples_in(sys_, lam)
            if not found:
                raise UsageError("the word carries no triple; pass --triple")
            triple = found[0]
    try:
        res = is_gatherable(sys_, word, triple, cap=_cap(args))
    except CapExceeded as exc:
        out.write(f"cap-exceeded {exc.cap}\n")
        return 4
    if args.format == "json":
        out.write(json.dumps({"format": 1, "triple": str(triple), "gatherable": res.gatherable,
                              "witness": [list(m) for m in res.witness],
                              "explored": res.explored}) + "\n")
    else:
        out.write(f"triple {triple}\n")
        out.write(("gatherable" if res.gatherable else "non-gatherable") + f" (explored {res.explored})\n")
        for kind, pos in res.witness:
            out.write(f"  {kind} at {pos}\n")
    return 0 if res.gatherable else 3


def cmd_catalog(args, out):
    from .catalog import brute_enumerate, catalog_b, catalog_cd, Catalog
    sys_ = _system(args)
    if args.mode == "brute":
        try:
            cat = brute_enumerate(sys_, args.max_len, cap=_cap(args), jobs=args.jobs)
        except CapExceeded as exc:
            print(f"cap-exceeded {exc.cap}", file=sys.stderr)
            return 4
    elif sys_.family == "B":
        cat = catalog_b(sys_.rank, args.max_len)
    elif sys_.family in "CD":
        cat = catalog_cd(sys_.family, sys_.rank, args.max_len)
    else:
        # no minimal NGT exist in type A
        cat = Catalog("A", sys_.rank, args.max_len, parameters={"mode": "construct"})
    text = cat.dumps()
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    print(f"{len(cat)} records", file=sys.stderr)
    return 0


def _fixtures():
    """(name, check) pairs; each check returns (ok, detail)."""
    from .ngt import build_varpi, vthpib_family
    from .planar import BPositiveData, bpositive_element, parity_correct_element
    from .words import nonmovable_endpoints

    def six_line():
        e = bpositive_element(BPositiveData(6, 1, 2, (3,), (1,)))
        ok = e.b == (0, -1, -1, -1, 0, 0) and tuple(e.w) == (1, -4, -3, -2, 5, 6)
        ok = ok and e * e == AffineElement.identity(e.system) and is_minimal_ngt(e) is not None
        return ok, _element_text(e)

    def seven_line():
        e = bpositive_element(BPositiveData(7, 1, 1, (1, 2, 2), (0, 1, 2)))
        return length(e) == 87 and e * e == AffineElement.identity(e.system), f"length {length(e)}"

    def parity():
        sys_ = SystemType("B", 5)
        e = AffineElement.make(sys_, (-1, -1, -1, 0, 0), (-3, -2, -1, 4, 5))
        x = parity_correct_element(e, ("top", "right"))
        ok = x.b == (-1, -1, -2, 0, 0) and x.inverse().b == (2, -1, -1, 0, 0)
        return ok, f"{_element_text(x)}; inverse {_element_text(x.inverse())}"

    def d_example():
        sys_ = SystemType("D", 4)
        v = build_varpi(sys_, (-1, -1, 0, 0), 2)
        t = is_minimal_ngt(v.varpi)
        want = (AffineRoot((1, 0, 1, 0), 1), AffineRoot((1, 1, 0, 0), 1), AffineRoot((0, 1, -1, 0), 0))
        ok = v.valid and t is not None and t.roots() == want
        _, word = reduced_word(v.varpi)
        ok = ok and not is_gatherable(sys_, word, t)
        return ok, str(t)

    def d_weights():
        sys_ = SystemType("D", 5)
        v = build_varpi(sys_, (-1, -1, -1, 0, 0), 3)
        p1 = pi_element(sys_, 1)
        w1, w2 = p1 * v.varpi, v.varpi * p1
        ok = w1.b == (2, -1, -1, 0, 0) and w2.b == (-1, -1, -2, 0, 0) and w2 == w1.inverse()
        ok = ok and is_minimal_ngt(w1) is not None
        return ok, f"{w1.b} {w2.b}"

    def braid():
        sys_ = SystemType("D", 4)
        return from_word(sys_, [4, 2, 4]) == from_word(sys_, [2, 4, 2]), "424 = 242"

    def pib():
        sys_ = SystemType("B", 3)
        a0 = AffineRoot((-1, 0, 0), 1)
        e1 = vthpib_family(sys_, 1, 1, [0, 0, 0])
        e2 = vthpib_family(sys_, 2, -1, [0, 0, 0])
        f1, l1 = nonmovable_endpoints(e1)
        f2, _ = nonmovable_endpoints(e2)
        ok = f1 == a0 and l1 == AffineRoot((-1, 1, 0), 2) and f2 == a0
        ok = ok and is_minimal_ngt(e1) is None and is_minimal_ngt(e2) is None
        return ok, f"{f1} .. {l1}"

    return [("six-line B example", six_line), ("seven-line B example", seven_line),
            ("top parity correction", parity), ("D-E example", d_example),
            ("D-E parity weights", d_weights), ("D braid 424=242", braid),
            ("pi_b endpoints", pib)]


def cmd_verify(args, out):
    failed = 0
    for name, check in _fixtures():
        try:
            ok, detail = check()
        except WngtError as exc:
            ok, detail = False, f"error: {exc}"
        failed += not ok
        out.write(f"{'PASS' if ok else 'FAIL':4}  {name:24}  {detail}\n")
    out.write(f"{failed} failed\n")
    return min(failed, 255)


def cmd_render(args, out):
    from .planar import (BPositiveData, Configuration, config_from_bpositive, config_from_word,
                         render_svg)
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        if "events" in data:
            cfg = Configuration.from_json(data)
        else:
            cfg = config_from_bpositive(BPositiveData(data["n"], data["u"], data["v"],
                                                      data["p"], data["t"]))
    elif args.word is not None and args.rank:
        _, word = parse_word(SystemType("B", args.rank), args.word)
        cfg = config_from_word(word, args.rank)
    else:
        raise UsageError("render needs --config or --word with --rank")
    svg = render_svg(cfg)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        out.write(svg)
    return 0


# ---------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="wngt", description="Lambda-sequences and non-gatherable triples "
                                         "in classical affine Weyl groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def system_args(q):
        q.add_argument("--type", required=True, choices=["A", "B", "C", "D"])
        q.add_argument("--rank", required=True, type=int)

    q = sub.add_parser("lambda", help="lambda-sequence and element of a word")
    system_args(q)
    q.add_argument("--word", default="")
    q.add_argument("--format", choices=["text", "json"], default="text")
    q.set_defaults(func=cmd_lambda)

    q = sub.add_parser("gather", help="can a triple be gathered")
    system_args(q)
    q.add_argument("--word", required=True)
    q.add_argument("--triple", help="'beta;gamma;alpha' with roots as c1,..,cn@k")
    q.add_argument("--cap", type=int)
    q.add_argument("--format", choices=["text", "json"], default="text")
    q.set_defaults(func=cmd_gather)

    q = sub.add_parser("catalog", help="write a JSON-lines catalog of minimal NGT")
    system_args(q)
    q.add_argument("--max-len", type=int, required=True)
    q.add_argument("--mode", choices=["brute", "construct"], default="construct")
    q.add_argument("--out")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--cap", type=int)
    q.set_defaults(func=cmd_catalog)

    q = sub.add_parser("verify", help="replay the built-in fixtures")
    q.add_argument("--paper-examples", action="store_true")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("render", help="draw a B-type configuration as SVG")
    q.add_argument("--config")
    q.add_argument("--word")
    q.add_argument("--rank", type=int)
    q.add_argument("--out")
    q.set_defaults(func=cmd_render)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "cap", None) is not None and args.cap <= 0:
        print("the cap must be positive", file=sys.stderr)
        return 1
    try:
        return args.func(args, out)
    except (UsageError, WngtError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
