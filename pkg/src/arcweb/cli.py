"""
Command line front end.

    arcweb enum   --algebra A|Abar|cW --rank K
    arcweb mult   --algebra A|Abar|cW --left X --right Y [--order leftmost|all|random|<list>]
    arcweb map    --map sign|top_bar --input X
    arcweb verify --suite NAME [--algebra ..] [--rank K] [--samples N] [--seed S]
    arcweb export --algebra A|Abar|cW --rank K [--output FILE]

Text output has one record per line; ``--format json`` mirrors the same
fields. Malformed arguments exit with status 2, failed verification with 1.
"""

import argparse
import json
import random
import re
import sys

from .diagrams import DiagramError, OrientedCircleDiagram, degree
from .embedding import top_bar
from .linear import LinearCombination
from .sign_adjusted import sign_map
from .stacked import surgery_orders
from .verify import ALGEBRAS, SUITES, algebra_basis, product, run_suite
from .web_algebra import WebBasisElement, cw_orders
from .webs import to_records

ORDER_POLICIES = ("leftmost", "all", "random")


class UsageError(Exception):
    """Arguments parse but do not make sense together."""


def parse_element(algebra, text):
    if algebra == "cW":
        return WebBasisElement.parse(text)
    return OrientedCircleDiagram.parse(text)


def parse_operand(algebra, text):
    """A basis element, or a linear combination in the printed '[..] + [..]' form."""
    if "[" in text or text.strip() == "0":
        return LinearCombination.parse(text, lambda t: parse_element(algebra, t))
    return LinearCombination.single(parse_element(algebra, text))


def element_degree(e):
    return e.degree() if isinstance(e, WebBasisElement) else degree(e)


def lc_json(lc):
    return [{"basis": str(b), "coeff": c, "degree": element_degree(b)} for b, c in lc.items()]


def _emit(args, text_lines, obj):
    if args.format == "json":
        print(json.dumps(obj, indent=None, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


# -- verbs -----------------------------------------------------------------------------

def cmd_enum(args):
    els = algebra_basis(args.algebra, args.rank)
    lines = [f"{e}\tdeg={element_degree(e)}" for e in els]
    _emit(args, lines, {"algebra": args.algebra, "rank": args.rank,
                        "basis": [{"basis": str(e), "degree": element_degree(e)} for e in els]})
    return 0


def _explicit_order(algebra, text):
    toks = [t.strip() for t in text.split(",") if t.strip()]
    if algebra == "cW":
        return tuple(toks)
    out = []
    for t in toks:
        m = re.fullmatch(r"(\d+)-(\d+)\*?", t)
        if not m:
            raise UsageError(f"bad surgery pair {t!r}")
        out.append((int(m.group(1)), int(m.group(2))))
    return tuple(out)


def _orders_for(algebra, middle):
    return cw_orders(middle) if algebra == "cW" else surgery_orders(middle, strict=True)


def _mult_lc(algebra, x, y, order):
    out = LinearCombination()
    for a, ca in x.items():
        for b, cb in y.items():
            out = out + product(algebra, a, b, order).scale(ca * cb)
    return out


def cmd_mult(args):
    x = parse_operand(args.algebra, args.left)
    y = parse_operand(args.algebra, args.right)
    if args.order in ("leftmost", "random", "all"):
        singles = len(x) == 1 and len(y) == 1
        if args.order == "leftmost" or not singles:
            if args.order != "leftmost" and not singles:
                raise UsageError("--order all/random needs single basis elements")
            res = _mult_lc(args.algebra, x, y, "leftmost")
            _emit(args, [str(res)], {"product": lc_json(res)})
            return 0
        a, b = x.items()[0][0], y.items()[0][0]
        if a.top != b.bottom:
            _emit(args, ["0"], {"product": []})
            return 0
        orders = _orders_for(args.algebra, a.top)
        if args.order == "random":
            o = random.Random(args.seed).choice(orders)
            res = product(args.algebra, a, b, o)
            label = ",".join(str(t) for t in o)
            _emit(args, [f"order {label}", str(res)], {"order": label, "product": lc_json(res)})
            return 0
        results = [(",".join(str(t) for t in o), product(args.algebra, a, b, o)) for o in orders]
        distinct = {r for _, r in results}
        lines = [f"order {lab}: {r}" for lab, r in results]
        if len(distinct) == 1:
            lines.append(str(results[0][1]))
        _emit(args, lines, {"orders": [{"order": lab, "product": lc_json(r)} for lab, r in results],
                            "independent": len(distinct) == 1})
        return 0 if len(distinct) == 1 else 1
    res = _mult_lc(args.algebra, x, y, _explicit_order(args.algebra, args.order))
    _emit(args, [str(res)], {"product": lc_json(res)})
    return 0


def cmd_map(args):
    x = parse_operand("A", args.input)
    if args.map == "sign":
        res = sign_map(x)
        _emit(args, [str(res)], {"map": "sign", "result": lc_json(res)})
        return 0
    res = top_bar(x)
    lines, recs = [], []
    for w, c in res.items():
        r = to_records(w.web())
        lines.append(f"term coeff={c} basis=[{w}] degree={w.degree()}")
        lines.extend(r)
        recs.append({"basis": str(w), "coeff": c, "degree": w.degree(), "records": r})
    _emit(args, lines, {"map": "top_bar", "result": recs})
    return 0


def cmd_verify(args):
    reports = run_suite(args.suite, args.algebra, args.rank, args.samples, args.seed, args.relaxed)
    ok = all(r.ok for r in reports)
    lines = [line for r in reports for line in r.lines()]
    _emit(args, lines, {"suite": args.suite, "ok": ok,
                        "reports": [{"name": r.suite, "checked": r.checked, "skipped": r.skipped,
                                     "failures": r.failures, "notes": r.notes} for r in reports]})
    return 0 if ok else 1


def multiplication_table(algebra, rank):
    """(x, y, x*y) for all basis pairs (within one block for A and Ā), canonical order."""
    els = algebra_basis(algebra, rank)
    out = []
    for x in els:
        for y in els:
            if getattr(x, "block", None) != getattr(y, "block", None):
                continue
            out.append((x, y, product(algebra, x, y)))
    return out


def table_text(algebra, rank, table):
    lines = [f"# algebra={algebra} rank={rank}"]
    lines += [f"[{x}] * [{y}] = {p}" for x, y, p in table]
    return "\n".join(lines) + "\n"


_ROW = re.compile(r"^\[([^\]]*)\] \* \[([^\]]*)\] = (.*)$")


def parse_table(text):
    """Inverse of table_text: (algebra, rank, [(x, y, product)])."""
    lines = [l for l in text.splitlines() if l.strip()]
    m = re.fullmatch(r"# algebra=(\w+) rank=(\d+)", lines[0].strip()) if lines else None
    if not m or m.group(1) not in ALGEBRAS:
        raise ValueError("missing '# algebra=.. rank=..' header")
    algebra, rank = m.group(1), int(m.group(2))
    rows = []
    for line in lines[1:]:
        r = _ROW.match(line)
        if not r:
            raise ValueError(f"bad table row {line!r}")
        x, y = (parse_element(algebra, r.group(k)) for k in (1, 2))
        rows.append((x, y, LinearCombination.parse(r.group(3), lambda t: parse_element(algebra, t))))
    return algebra, rank, rows


def cmd_export(args):
    table = multiplication_table(args.algebra, args.rank)
    if args.format == "json":
        data = json.dumps({"algebra": args.algebra, "rank": args.rank,
                           "products": [{"left": str(x), "right": str(y), "product": lc_json(p)}
                                        for x, y, p in table]}, sort_keys=True) + "\n"
    else:
        data = table_text(args.algebra, args.rank, table)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)
    return 0


# -- parser -------------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="arcweb", description="Type D arc algebras and web algebras.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, algebra=True, rank=True):
        if algebra:
            sp.add_argument("--algebra", choices=ALGEBRAS, default="Abar")
        if rank:
            sp.add_argument("--rank", type=int, default=2)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("enum", help="list a basis with degrees")
    common(sp)
    sp.set_defaults(func=cmd_enum)

    sp = sub.add_parser("mult", help="multiply two elements")
    common(sp, rank=False)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--order", default="leftmost",
                    help="leftmost, all, random, or a comma separated list of surgery pairs")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_mult)

    sp = sub.add_parser("map", help="apply sign (A -> Abar) or top_bar (Abar -> cW)")
    common(sp, algebra=False, rank=False)
    sp.add_argument("--map", choices=("sign", "top_bar"), required=True)
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_map)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp)
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--samples", type=int, default=None, help="random samples instead of exhaustive")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--relaxed", action="store_true",
                    help="order suite: ignore the marked-to-the-right eligibility clause")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="write the full multiplication table")
    common(sp)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "rank", 1) is not None and getattr(args, "rank", 1) < 0:
        parser.error("--rank must be non-negative")
    if getattr(args, "rank", None) == 0 and getattr(args, "algebra", "cW") != "cW":
        parser.error("arc algebras need --rank >= 1")
    try:
        return args.func(args)
    except (DiagramError, UsageError, ValueError) as e:
        parser.error(str(e))


if __name__ == "__main__":
    sys.exit(main())
