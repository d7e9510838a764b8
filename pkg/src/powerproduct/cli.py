"""Command-line front end.

Exit codes: 0 success, 1 a verification or agreement check failed,
2 bad arguments or a size-cap breach.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from . import basis, determinant, identities, structure
from .compositions import count_weak_compositions, enumerate_B
from .matrixcore import build_V, build_Vhat, exponent_matrix, ExactMatrix

SIZE_CAP_ENV = "POWERPRODUCT_SIZE_CAP"
DEFAULT_SIZE_CAP = 5000


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _int_range(s: str) -> list[int]:
    """``lo:hi`` inclusive, or a comma list."""
    try:
        if ":" in s:
            lo, hi = (int(x) for x in s.split(":"))
            vals = list(range(lo, hi + 1))
        else:
            vals = [int(x) for x in s.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {s!r}")
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError(f"range {s!r} must be nonempty and positive")
    return vals


def _check_cap(n: int, d: int, cap: int) -> int:
    s = count_weak_compositions(n, d)
    if s > cap:
        raise UsageError(f"s({n},{d}) = {s} exceeds size cap {cap}")
    return s


def _order(n: int, d: int, name: str):
    if name == "lex":
        return enumerate_B(n, d)
    return structure.canonical_B(n, d)


# -- commands ------------------------------------------------------------


def cmd_gen(args) -> tuple[int, str]:
    _check_cap(args.n, args.d, args.size_cap)
    order = _order(args.n, args.d, args.order)
    if args.what == "b":
        M = ExactMatrix(exponent_matrix(order))
    elif args.what == "vhat":
        M = build_Vhat(args.n, args.d, order)
    else:
        M = build_V(args.n, args.d, order)
    if args.format == "csv":
        return 0, M.to_csv()
    doc = {
        "n": args.n,
        "d": args.d,
        "order_tag": order.order_tag,
        "what": args.what,
        "exponents": [list(a) for a in order],
        "matrix": json.loads(M.to_json()),
    }
    return 0, json.dumps(doc, sort_keys=True) + "\n"


def cmd_det(args) -> tuple[int, str]:
    n, d = args.n, args.d
    count_weak_compositions(n, d)
    if args.check_closed_form and n != 2:
        raise UsageError("--check-closed-form applies to n = 2 only")
    status = 0
    doc = {"n": n, "d": d, "method": args.method, "agreement": None, "closed_form": None}
    value = None
    if args.method in ("blocks", "both"):
        f = determinant.det_V(n, d)
        value = f.value
        doc["factorization"] = f.to_dict()
    if args.method in ("bareiss", "both"):
        _check_cap(n, d, args.size_cap)
        full = determinant.det_V_full(n, d, size_cap=args.size_cap)
        doc["bareiss_value"] = str(full)
        if value is None:
            value = full
            doc["factorization"] = determinant.factorize(full).to_dict()
        else:
            doc["agreement"] = full == value
            if full != value:
                status = 1
    doc["value"] = str(value)
    if args.check_closed_form:
        closed = determinant.det_V2_closed(d)
        doc["closed_form"] = {"value": str(closed), "matches": closed == value}
        if closed != value:
            status = 1
    if args.format == "csv":
        return status, f"n,d,value\n{n},{d},{value}\n"
    return status, _dump(doc)


def cmd_sparsity(args) -> tuple[int, str]:
    ns = args.n_range or ([args.n] if args.n else None)
    ds = args.d_range or ([args.d] if args.d else None)
    if not ns or not ds:
        raise UsageError("give --n/--d or --n-range/--d-range")
    rows = structure.sparsity_table(ns, ds)
    status = 0
    counted = {}
    if args.count:
        for r in rows:
            _check_cap(r.n, r.d, args.size_cap)
            c = structure.nnz_count(build_V(r.n, r.d))
            counted[(r.n, r.d)] = c
            if c != r.nnz:
                status = 1
    if args.format == "csv":
        return status, structure.sparsity_csv(rows)
    out = []
    for r in rows:
        item = {
            "n": r.n,
            "d": r.d,
            "nnz": str(r.nnz),
            "s_nd": str(r.s),
            "sparsity": structure._decimal6(r.sparsity),
            "sparsity_exact": f"{r.sparsity.numerator}/{r.sparsity.denominator}",
        }
        if (r.n, r.d) in counted:
            item["nnz_counted"] = str(counted[(r.n, r.d)])
        out.append(item)
    return status, _dump({"rows": out})


def cmd_basis(args) -> tuple[int, str]:
    if args.product_monomial:
        _check_cap(args.product_monomial, args.product_monomial, args.size_cap)
        y = basis.product_monomial_coeffs(args.product_monomial)
        status = 0
        if args.check:
            ind = basis.indicator(y.n, y.d, (1,) * y.n, basis.MONOMIAL)
            status = 0 if basis.from_linear_power(y) == ind else 1
        return status, y.to_json() + "\n"
    if not args.input:
        raise UsageError("give --input FILE or --product-monomial N")
    text = sys.stdin.read() if args.input == "-" else open(args.input).read()
    try:
        p = basis.PolyCoeffs.from_json(text)
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"bad polynomial file: {e}")
    _check_cap(p.n, p.d, args.size_cap)
    target = args.to or (basis.LINEAR_POWER if p.basis == basis.MONOMIAL else basis.MONOMIAL)
    if target == p.basis:
        q = p
    elif target == basis.LINEAR_POWER:
        q = basis.to_linear_power(p)
    else:
        q = basis.from_linear_power(p)
    status = 0
    if args.check and q is not p:
        back = basis.from_linear_power(q) if q.basis == basis.LINEAR_POWER else basis.to_linear_power(q)
        status = 0 if back == p else 1
    return status, q.to_json() + "\n"


def _suite_blocks(n_max: int):
    checked = 0
    for n in range(1, n_max + 1):
        for d in range(1, n_max + 1):
            try:
                structure.block_decompose(n, d, verify=True)
            except structure.DecompositionError as e:
                return identities.VerificationReport("blocks", False, {"n_max": n_max}, checked,
                                                     {"n": n, "d": d, "error": str(e)})
            checked += 1
    return identities.VerificationReport("blocks", True, {"n_max": n_max}, checked)


def _suite_sparsity(n_max: int):
    checked = 0
    for n in range(1, n_max + 1):
        for d in range(1, n_max + 1):
            c, f = structure.nnz_count(build_V(n, d)), structure.nnz_formula(n, d)
            checked += 1
            if c != f:
                return identities.VerificationReport("sparsity", False, {"n_max": n_max}, checked,
                                                     {"n": n, "d": d, "counted": c, "formula": f})
    return identities.VerificationReport("sparsity", True, {"n_max": n_max}, checked)


def _suite_inverse(n_max: int):
    checked = 0
    for n in range(1, n_max + 1):
        for d in range(1, n_max + 1):
            r = structure.inverse_pattern_check(n, d, size_cap=10**6)
            checked += 1
            if not r.holds:
                return identities.VerificationReport("inverse", False, {"n_max": n_max}, checked,
                                                     {"n": n, "d": d, "position": [list(x) for x in r.counterexample]})
    return identities.VerificationReport("inverse", True, {"n_max": n_max}, checked)


def _suite_product_monomial(n_max: int):
    for n in range(1, n_max + 1):
        ind = basis.indicator(n, n, (1,) * n, basis.MONOMIAL)
        if basis.to_linear_power(ind) != basis.product_monomial_coeffs(n):
            return identities.VerificationReport("product-monomial", False, {"n_max": n_max}, n, {"n": n})
    return identities.VerificationReport("product-monomial", True, {"n_max": n_max}, n_max)


def _suite_nonsingular(n_max: int):
    checked = 0
    for n in range(1, n_max + 1):
        for d in range(1, n_max + 1):
            checked += 1
            try:
                determinant.det_V(n, d)
            except determinant.NonsingularityError as e:
                return identities.VerificationReport("nonsingular", False, {"n_max": n_max}, checked,
                                                     {"n": n, "d": d, "error": str(e)})
    return identities.VerificationReport("nonsingular", True, {"n_max": n_max}, checked)


SUITES: dict[str, Callable[[int], identities.VerificationReport]] = {
    "gf": lambda n_max: identities.sweep_gf(m_max=min(8, n_max - 1), n_max=n_max),
    "rearrangement": identities.sweep_rearrangement,
    "delta": identities.sweep_delta,
    "couples": identities.sweep_couples,
    "involution": identities.sweep_involution,
    "blocks": _suite_blocks,
    "sparsity": _suite_sparsity,
    "inverse": _suite_inverse,
    "product-monomial": _suite_product_monomial,
    "nonsingular": _suite_nonsingular,
}


def cmd_verify(args) -> tuple[int, str]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [SUITES[name](args.n_max) for name in names]
    status = 0 if all(r.passed for r in reports) else 1
    if args.format == "csv":
        lines = ["identity,passed,checked"] + [f"{r.identity},{str(r.passed).lower()},{r.checked}" for r in reports]
        return status, "\n".join(lines) + "\n"
    return status, _dump({"passed": status == 0, "reports": [r.to_dict() for r in reports]})


def cmd_conjecture(args) -> tuple[int, str]:
    try:
        rep = determinant.conjecture_explore(args.d, args.n_max)
    except ValueError as e:
        raise UsageError(str(e))
    status = 0 if rep.passed else 1
    if args.format == "csv":
        lines = ["prime,expression,coefficients"]
        for p, f in sorted(rep.polynomials.items()):
            coeffs = " ".join(f.to_dict()["coefficients"])
            lines.append(f"{p},{f.expression()},{coeffs}")
        return status, "\n".join(lines) + "\n"
    return status, rep.to_json() + "\n"


# -- parser ----------------------------------------------------------------


def _default_cap() -> int:
    raw = os.environ.get(SIZE_CAP_ENV)
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        return _positive(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"{SIZE_CAP_ENV} must be a positive integer, got {raw!r}")


def _global_flags(parser: argparse.ArgumentParser, format_default, cap_default, output_default) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default=format_default)
    parser.add_argument("--size-cap", type=_positive, default=cap_default,
                        help=f"largest matrix side s(n,d) to materialize (env {SIZE_CAP_ENV})")
    parser.add_argument("--output", default=output_default, help="write to this path instead of stdout")


def build_parser(default_cap: int = DEFAULT_SIZE_CAP) -> argparse.ArgumentParser:
    # separate action objects: the top level carries real defaults, subcommands
    # suppress theirs so a flag given before the subcommand is not overwritten
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS, argparse.SUPPRESS, argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="powerproduct", description=__doc__.splitlines()[0])
    _global_flags(p, "json", default_cap, None)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="emit B(n,d) and V(n,d) or V̂(n,d)")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--d", type=_positive, required=True)
    g.add_argument("--order", choices=("lex", "canonical", "canonical-block"), default="canonical")
    g.add_argument("--what", choices=("v", "vhat", "b"), default="v")
    g.set_defaults(func=cmd_gen)

    dt = sub.add_parser("det", parents=[common], help="exact determinant of V(n,d)")
    dt.add_argument("--n", type=_positive, required=True)
    dt.add_argument("--d", type=_positive, required=True)
    dt.add_argument("--method", choices=("blocks", "bareiss", "both"), default="blocks")
    dt.add_argument("--check-closed-form", action="store_true")
    dt.set_defaults(func=cmd_det)

    sp = sub.add_parser("sparsity", parents=[common], help="nonzero counts and sparsity")
    sp.add_argument("--n", type=_positive)
    sp.add_argument("--d", type=_positive)
    sp.add_argument("--n-range", type=_int_range)
    sp.add_argument("--d-range", type=_int_range)
    sp.add_argument("--count", action="store_true", help="also count zeros of the built matrix")
    sp.set_defaults(func=cmd_sparsity)

    b = sub.add_parser("basis", parents=[common], help="convert a form between bases")
    b.add_argument("--input", help="polynomial JSON file, or - for stdin")
    b.add_argument("--to", choices=basis.BASES)
    b.add_argument("--product-monomial", type=_positive, metavar="N")
    b.add_argument("--check", action="store_true", help="verify the round trip")
    b.set_defaults(func=cmd_basis)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    v.add_argument("--n-max", type=_positive, default=5)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conjecture", parents=[common], help="exponent polynomials of det V(n,d)")
    c.add_argument("--d", type=_positive, required=True)
    c.add_argument("--n-max", type=_positive, required=True)
    c.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    try:
        parser = build_parser(_default_cap())
    except UsageError as e:
        print(f"powerproduct: error: {e}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        status, text = args.func(args)
    except (UsageError, ValueError) as e:
        print(f"powerproduct: error: {e}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
