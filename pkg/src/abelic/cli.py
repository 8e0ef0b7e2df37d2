"""``abelic`` command line: one JSON envelope in, one JSON document out.

Exit codes: 0 success, 1 domain error (error document on stderr),
2 malformed input (bad JSON, schema violation, unknown subcommand).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import Any, Callable

import jsonschema

from . import bounds, ledger, polarization, splitting, torsion
from .errors import AbelicError, MalformedInput
from .isogeny import degree, dual_and_alpha, kernel_structure
from .matrices import Matrix
from .orders import (
    ZZ,
    OrderSpec,
    canonical_associate,
    element_from_json,
    element_ops,
    element_to_json,
    euclid_divmod,
    gcd,
    order_from_json,
    order_to_json,
    rational_from_json,
    rational_to_str,
)
from .schemas import SCHEMA_VERSION, SCHEMAS, SUBCOMMANDS

DEFAULT_PRECISION = bounds.DEFAULT_PRECISION


# ---------------------------------------------------------------- parsing helpers
def _order(doc: dict, inner: Any = None) -> OrderSpec:
    if isinstance(inner, dict) and "order" in inner:
        return order_from_json(inner["order"])
    if "order" in doc:
        return order_from_json(doc["order"])
    return ZZ


def _matrix(doc: dict, key: str) -> Matrix:
    raw = doc[key]
    order = _order(doc, raw)
    if isinstance(raw, dict):
        return Matrix.from_json(raw, order)
    return Matrix(order, [[element_from_json(order, e) for e in row] for row in raw])


def _q(x) -> Fraction:
    return Fraction(rational_from_json(x))


def _jsonable(v):
    if isinstance(v, Fraction):
        return rational_to_str(v)
    if isinstance(v, ledger.Affine):
        return str(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# ---------------------------------------------------------------- handlers
def cmd_order(doc: dict, opts: dict) -> dict:
    order = order_from_json(doc["order"])
    x, y = element_from_json(order, doc["x"]), element_from_json(order, doc["y"])
    ops = element_ops(x, y)
    out = {k: (element_to_json(v) if hasattr(v, "order") else rational_to_str(v)) for k, v in ops.items()}
    out["order"] = order_to_json(order)
    out["euclidean"] = order.euclidean
    if order.euclidean:
        if not x.is_zero():
            out["canonical_x"] = element_to_json(canonical_associate(x)[0])
        if not y.is_zero():
            q, r = euclid_divmod(x, y)
            out["quotient"], out["remainder"] = element_to_json(q), element_to_json(r)
        if not (x.is_zero() and y.is_zero()):
            out["gcd"] = element_to_json(gcd(x, y))
    return out


def cmd_deg(doc: dict, opts: dict) -> dict:
    return {"degree": degree(_matrix(doc, "matrix"))}


def cmd_dual(doc: dict, opts: dict) -> dict:
    m = _matrix(doc, "matrix")
    dual, alpha = dual_and_alpha(m)
    n = m.rows
    d1, d2 = degree(m), degree(dual)
    return {
        "alpha": alpha,
        "dual": dual.to_json(),
        "degree": d1,
        "dual_degree": d2,
        "degree_relation": d1 * d2 == alpha ** (2 * n),
    }


def cmd_kernel(doc: dict, opts: dict) -> dict:
    m = _matrix(doc, "matrix")
    over = doc.get("over", "Z")
    divs = kernel_structure(m, over=over)
    out = {
        "over": over,
        "divisors": divs if over == "Z" else [element_to_json(d) for d in divs],
        "size": degree(m),
    }
    if doc.get("enumerate"):
        ps = torsion.enumerate_kernel(m, cap=opts["cap"])
        out["modulus"] = ps.model.modulus
        out["points"] = [list(p) for p in ps.as_tuples()]
    return out


def _build_split(doc: dict) -> splitting.SubvarietySplit:
    P = _matrix(doc, "P")
    strategy = doc.get("strategy", "unimodular")
    if not isinstance(strategy, str):
        strategy = _matrix(doc, "strategy")
    return splitting.full_split(P, strategy, doc.get("budget", 3))


def cmd_split(doc: dict, opts: dict) -> dict:
    s = _build_split(doc)
    out = s.to_json()
    out["diagram"] = splitting.diagram_check(s)
    out["push_degree"] = splitting.push_degree_bound(s)
    return out


def cmd_verify_equivalence(doc: dict, opts: dict) -> dict:
    s = _build_split(doc)
    v = polarization.verify_relchiave(s)
    return {
        "alpha": s.alpha,
        "binom": v["binom"],
        "flags": {k: v[k] for k in ("tensor_collapse", "pullback", "restricted", "restricted_small")},
        "lhs": v["lhs"].to_json(),
        "rhs": v["rhs"].to_json(),
        "ok": v["ok"],
    }


def _hclass(item, order: OrderSpec, N: int) -> polarization.HermitianClass:
    if item == "identity":
        return polarization.HermitianClass.identity(order, N)
    return polarization.HermitianClass.from_json(item, order_from_json(item["order"]) if "order" in item else order)


def cmd_verify_gael(doc: dict, opts: dict) -> dict:
    rows = _matrix(doc, "rows")
    order = rows.order
    N, n = rows.cols, doc["n"]
    if "N" in doc and doc["N"] != N:
        raise MalformedInput("N=%d does not match rows of length %d" % (doc["N"], N))
    ref = doc.get("reference", "identity")
    if ref == "identity":
        refs = [polarization.HermitianClass.identity(order, N)] * max(N - n, 0)
    else:
        refs = [_hclass(r, order, N) for r in ref]
    v = polarization.verify_gael(rows, n, refs)
    return {"lhs": rational_to_str(v["lhs"]), "rhs": rational_to_str(v["rhs"]), "equal": v["equal"], "binom": v["binom"]}


def cmd_bound(doc: dict, opts: dict) -> dict:
    prec = opts["precision"]
    t = doc["type"]
    if t == "main":
        q = bounds.BoundQuery.make(_q(doc["degH"]), _q(doc["degY"]), doc["codim"], _q(doc["eta"]), _q(doc.get("c", 1)))
        return bounds.main_bound(q, prec).to_json()
    if t == "effective":
        return bounds.effective_bogomolov(_q(doc.get("C", 1)), _q(doc["degY"]), doc["codim"], _q(doc["eta"]), prec).to_json()
    if t == "isogeny":
        return bounds.isogeny_bound(
            _q(doc["deg_pullback_B"]), _q(doc["deg_pullback_Y"]), doc["codim"], _q(doc["eta"]), _q(doc.get("C", 1)), prec
        ).to_json()
    if t == "theta":
        theta, quarter = bounds.translate_theta(
            _q(doc.get("c1", 1)), _q(doc["degB"]), _q(doc["degY"]), doc["codim"], _q(doc["eta"]), prec
        )
        return {"theta": theta.to_json(), "quarter": quarter.to_json(), "rule": ledger.translation_rule()}
    if t == "galateau":
        if "lambda" in doc:
            lam = doc["lambda"]
        elif "dimB" in doc and "codim" in doc:
            lam = bounds.galateau_lambda(doc["dimB"], doc["codim"])
        else:
            raise MalformedInput("galateau needs lambda or (dimB, codim)")
        out = bounds.galateau_bound(_q(doc["C0"]), _q(doc["omega"]), _q(doc["degY"]), lam, prec).to_json()
        out["lambda"] = lam
        return out
    raise MalformedInput("unknown bound type %r" % (t,))


def cmd_ledger(doc: dict, opts: dict) -> dict:
    if doc["theorem"] == "2.8":
        trace = ledger.thm28_ledger(doc["g"], doc["d"], _q(doc["eta"]) if "eta" in doc else None)
    else:
        trace = ledger.thm41_ledger(
            doc["codim"],
            _q(doc["eta"]),
            doc["alphas"],
            doc["binoms"],
            doc.get("ns"),
            doc.get("dim_y", 1),
            _q(doc["degH"]) if "degH" in doc else None,
            _q(doc["degY"]) if "degY" in doc else None,
            opts["precision"],
        )
    out = trace.to_json()
    out["independent_check"] = all(ledger.naive_verify(trace))
    return out


def cmd_oracle(doc: dict, opts: dict) -> dict:
    if opts.get("seed") is None:
        raise MalformedInput("the oracle subcommand needs an explicit seed")
    suite = doc["suite"]
    scope = {k: v for k, v in doc.items() if k not in ("schema", "subcommand", "suite", "precision", "seed", "cap")}
    scope["suites"] = ["degrees", "kernels", "stab"] if suite == "all" else [suite]
    scope["seed"] = opts["seed"]
    scope["cap"] = opts["cap"]
    summary = torsion.cross_check(scope)
    return {
        "suites": summary,
        "checked": sum(s["checked"] for s in summary.values()),
        "passed": sum(s["passed"] for s in summary.values()),
        "ok": all(s["passed"] == s["checked"] for s in summary.values()),
    }


HANDLERS: dict[str, Callable[[dict, dict], dict]] = {
    "order": cmd_order,
    "deg": cmd_deg,
    "dual": cmd_dual,
    "kernel": cmd_kernel,
    "split": cmd_split,
    "verify-equivalence": cmd_verify_equivalence,
    "verify-gael": cmd_verify_gael,
    "bound": cmd_bound,
    "ledger": cmd_ledger,
    "oracle": cmd_oracle,
}
assert set(HANDLERS) == set(SUBCOMMANDS)


# ---------------------------------------------------------------- dispatch
def dispatch(envelope: dict, precision: int = DEFAULT_PRECISION, seed: int | None = None, cap: int = 10_000) -> dict:
    """Validate and run one envelope; returns the output document or raises."""
    if not isinstance(envelope, dict):
        raise MalformedInput("the input document must be a JSON object")
    name = envelope.get("subcommand")
    if name not in HANDLERS:
        raise MalformedInput("unknown subcommand %r; expected one of %s" % (name, ", ".join(SUBCOMMANDS)))
    try:
        jsonschema.validate(envelope, SCHEMAS[name])
    except jsonschema.ValidationError as exc:
        raise MalformedInput("schema violation at %s: %s" % ("/".join(map(str, exc.absolute_path)) or "<root>", exc.message)) from None
    opts = {
        "precision": envelope.get("precision", precision),
        "seed": envelope.get("seed", seed),
        "cap": envelope.get("cap", cap),
    }
    result = HANDLERS[name](envelope, opts)
    out = {"schema": SCHEMA_VERSION, "subcommand": name}
    out.update(_jsonable(result))
    return out


def render(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".abelic-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error_doc(exc: AbelicError) -> str:
    return render({"schema": SCHEMA_VERSION, "error": {"code": exc.code, "type": type(exc).__name__, "message": str(exc)}})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abelic", description="Exact computations on powers of CM elliptic curves.")
    p.add_argument("subcommand", nargs="?", choices=SUBCOMMANDS, help="overrides the envelope's subcommand field")
    p.add_argument("--input", "-i", help="input JSON file (default: stdin)")
    p.add_argument("--output", "-o", help="output file, written atomically (default: stdout)")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working precision in bits")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized suites")
    p.add_argument("--cap", type=int, default=10_000, help="enumeration cap")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        try:
            envelope = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput("invalid JSON: %s" % exc) from None
        if args.subcommand:
            if not isinstance(envelope, dict):
                raise MalformedInput("the input document must be a JSON object")
            if envelope.get("subcommand", args.subcommand) != args.subcommand:
                raise MalformedInput("subcommand %r conflicts with the document's %r" % (args.subcommand, envelope["subcommand"]))
            envelope = dict(envelope, subcommand=args.subcommand)
        out = dispatch(envelope, args.precision, args.seed, args.cap)
    except MalformedInput as exc:
        sys.stderr.write(_error_doc(exc))
        return 2
    except AbelicError as exc:
        sys.stderr.write(_error_doc(exc))
        return 1
    except OSError as exc:
        sys.stderr.write(_error_doc(MalformedInput(str(exc))))
        return 2
    text = render(out)
    if args.output:
        _write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
