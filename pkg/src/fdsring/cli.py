"""Command-line front end: ``fdsring <subcommand> ...``.

File formats
  .fds        line 1: state count n; line 2: n successors; '#' starts a comment
  tree code   comma-separated level-order child counts on one line
  FDS code    one component per line: ``length;code;code;...``

Exit status: 0 on success, 2 on usage or parse errors, 3 when the algebra
says no (no quotient, no root, not in LD_K).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import fds as F
from .cycles import Permutation, chinese_witness
from .division import divide_by_cancellative, divide_dendrons, divide_trees
from .forest import CodeError, decode_cf, format_code, parse_code
from .ldk import LdkError, discover_k, factor_ldk
from .oracle import KINDS, enumerate_kind, fixtures
from .roots import NatPolynomial, NoRootError, check_poly_injectivity, kth_root
from .unrolling import format_periodic, unroll, unroll_truncated


class AlgebraFailure(Exception):
    pass


def _load(path: str) -> F.Fds:
    return F.read_fds(path)


def _emit(a: F.Fds, out: str | None, label: str) -> None:
    a = a.canonical()
    if out:
        F.write_fds(out, a, comment=label)
    else:
        sys.stdout.write(F.format_fds(a))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _read_tree(path: str):
    with open(path) as fh:
        rows = [r for r in fh.read().splitlines() if r.strip() and not r.lstrip().startswith("#")]
    if len(rows) != 1:
        raise CodeError(f"{path}: expected exactly one code line")
    return decode_cf(parse_code(rows[0]))


# -- handlers ---------------------------------------------------------------


def cmd_sum(ns):
    _emit(F.fds_sum(_load(ns.a), _load(ns.b)), ns.output, "sum")


def cmd_prod(ns):
    _emit(F.product(_load(ns.a), _load(ns.b)), ns.output, "product")


def cmd_canon(ns):
    a = _load(ns.input)
    sys.stdout.write(F.format_fds_code(F.canonical_code(a)))
    if ns.output:
        F.write_fds(ns.output, a.canonical(), comment="canonical form")


def cmd_truncate(ns):
    _emit(F.truncate(_load(ns.input), ns.depth), ns.output, f"truncated at depth {ns.depth}")


def cmd_supp(ns):
    _emit(F.supp(_load(ns.input), ns.lengths), ns.output, "support")


def cmd_unroll(ns):
    a = _load(ns.input)
    if ns.depth is None:
        for p in unroll(a):
            sys.stdout.write(format_periodic(p))
    else:
        for t in unroll_truncated(a, ns.depth):
            print(format_code(t.code))


def cmd_divide(ns):
    c, a = _load(ns.dividend), _load(ns.divisor)
    if not (c.is_dendron() and a.is_dendron()):
        raise ValueError("divide expects two dendrons; use divide-cancel for general FDSs")
    out = divide_dendrons(c, a)
    if not out.ok:
        raise AlgebraFailure(out.reason)
    _emit(out.quotient, ns.output, "quotient")


def cmd_divide_tree(ns):
    out = divide_trees(_read_tree(ns.dividend), _read_tree(ns.divisor))
    if not out.ok:
        raise AlgebraFailure(out.reason)
    print(format_code(out.quotient.code))


def cmd_divide_cancel(ns):
    d, a = _load(ns.dividend), _load(ns.divisor)
    if not a.has_fixpoint():
        raise ValueError("divisor has no fixpoint, so it is not cancellative")
    out = divide_by_cancellative(d, a)
    if not out.ok:
        raise AlgebraFailure(out.reason)
    _emit(out.quotient, ns.output, "quotient")


def cmd_root(ns):
    try:
        b = kth_root(_load(ns.input), ns.k)
    except NoRootError as exc:
        raise AlgebraFailure(exc.reason) from exc
    _emit(b, ns.output, f"{ns.k}-th root")


def cmd_polycheck(ns):
    poly = NatPolynomial(_load(p) for p in ns.poly)
    rep = check_poly_injectivity(poly, ns.bound)
    print(f"checked {rep.checked} classes up to {ns.bound} states")
    for x, y in rep.violations:
        print("collision:", " ".join(map(str, x.succ)), "|", " ".join(map(str, y.succ)))
    print("injective" if rep.injective else f"{len(rep.violations)} collisions")


def cmd_witness(ns):
    pair = chinese_witness(ns.cycles)
    x, xp = pair.x.to_fds(), pair.x_prime.to_fds()
    if ns.outdir:
        os.makedirs(ns.outdir, exist_ok=True)
        F.write_fds(os.path.join(ns.outdir, "X.fds"), x, comment=f"X = {pair.x}")
        F.write_fds(os.path.join(ns.outdir, "X_prime.fds"), xp, comment=f"X' = {pair.x_prime}")
    print(f"X  = {pair.x}")
    print(f"X' = {pair.x_prime}")
    for a in pair.lengths:
        ca = F.cycle(a)
        px, pxp = F.product(ca, x), F.product(ca, xp)
        if px != pxp:
            raise AlgebraFailure(f"C_{a} X != C_{a} X'")
        print(f"C_{a} X = C_{a} X' = {Permutation.from_fds(px)}")


def cmd_factor_ldk(ns):
    p = _load(ns.input)
    ks = [ns.k] if ns.k is not None else discover_k(p)
    if not ks:
        raise AlgebraFailure("no K makes every predecessor count a power of K + 1")
    last = None
    for K in ks:
        try:
            factors = factor_ldk(p, K)
        except LdkError as exc:
            last = exc
            continue
        print(f"K = {K}")
        for i, f in enumerate(factors):
            print(f)
            if ns.outdir:
                os.makedirs(ns.outdir, exist_ok=True)
                F.write_fds(os.path.join(ns.outdir, f"factor{i}.fds"), f.to_fds(), comment=f"rhizomes {f}")
        return
    raise AlgebraFailure(last.reason if last else "factorisation failed")


def cmd_enum(ns):
    n = 0
    for v in enumerate_kind(ns.kind, ns.size):
        n += 1
        if ns.count_only:
            continue
        if ns.kind == "tree":
            print(format_code(v.code))
        else:
            print(" ".join(map(str, v.succ)) or "(empty)")
    if ns.count_only:
        print(n)


def cmd_fixtures(ns):
    ok = True
    for fx in fixtures():
        good = fx.holds()
        ok &= good
        print(f"{fx.name}: {fx.relation} {'holds' if good else 'FAILS'}")
        if ns.outdir:
            os.makedirs(ns.outdir, exist_ok=True)
            F.write_fds(os.path.join(ns.outdir, f"{fx.name}.lhs.fds"), fx.lhs, comment=fx.name)
            F.write_fds(os.path.join(ns.outdir, f"{fx.name}.rhs.fds"), fx.rhs, comment=fx.name)
    if not ok:
        raise AlgebraFailure("a fixture does not hold")


def cmd_dot(ns):
    sys.stdout.write(F.to_dot(_load(ns.input)))


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fdsring",
        description="Arithmetic on finite dynamical systems.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    for name, fn, help_ in (("sum", cmd_sum, "disjoint union"), ("prod", cmd_prod, "direct product")):
        p = add(name, fn, help_)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("-o", "--output")

    p = add("canon", cmd_canon, "print the canonical code")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="also write the canonically relabelled .fds")

    p = add("truncate", cmd_truncate, "states of depth at most k")
    p.add_argument("input")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("-o", "--output")

    p = add("supp", cmd_supp, "components with the given cycle lengths")
    p.add_argument("input")
    p.add_argument("--lengths", type=_int_list, required=True)
    p.add_argument("-o", "--output")

    p = add("unroll", cmd_unroll, "periodic trees, or their truncations with --depth")
    p.add_argument("input")
    p.add_argument("--depth", type=int)

    p = add("divide", cmd_divide, "dendron division")
    p.add_argument("dividend")
    p.add_argument("divisor")
    p.add_argument("-o", "--output")

    p = add("divide-tree", cmd_divide_tree, "tree division on code files")
    p.add_argument("dividend")
    p.add_argument("divisor")

    p = add("divide-cancel", cmd_divide_cancel, "division by an FDS with a fixpoint")
    p.add_argument("dividend")
    p.add_argument("divisor")
    p.add_argument("-o", "--output")

    p = add("root", cmd_root, "k-th root")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output")

    p = add("polycheck", cmd_polycheck, "search for collisions of a polynomial")
    p.add_argument("--poly", nargs="+", required=True, metavar="COEFF.fds",
                   help="coefficient files a_0 a_1 ... (an empty FDS is the file '0')")
    p.add_argument("--bound", type=int, required=True)

    p = add("witness", cmd_witness, "two permutations no C_a can tell apart")
    p.add_argument("--cycles", type=_int_list, required=True)
    p.add_argument("-o", "--outdir")

    p = add("factor-ldk", cmd_factor_ldk, "unique factorisation into linear dendrons")
    p.add_argument("input")
    p.add_argument("--k", type=int, help="rhizomes per factor (discovered when omitted)")
    p.add_argument("-o", "--outdir")

    p = add("enum", cmd_enum, "list isomorphism classes")
    p.add_argument("--kind", choices=KINDS, default="fds")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--count-only", action="store_true")

    p = add("fixtures", cmd_fixtures, "check the named identities")
    p.add_argument("-o", "--outdir")

    p = add("dot", cmd_dot, "Graphviz export")
    p.add_argument("input")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ns.fn(ns)
    except AlgebraFailure as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 3
    except (F.FdsFormatError, CodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
