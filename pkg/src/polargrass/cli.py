"""Command line front end.

Every command takes one instance from ``--form/--field/--params`` or a list of
instances from ``--campaign FILE`` (a JSON array of
``{"form": ..., "field": ..., "params": {...}, "k": ...}`` objects).  Rows are
written as JSON lines or CSV in campaign order.

Exit status: 0 when every check passes, 1 on a mismatch, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .certificates import certificate_hermitian, certificate_quadratic_even, \
    certificate_quadratic_odd, certificate_to_json, certify_all, verify_certificate
from .exterior import SpanAccumulator
from .extension import extend_normalize_even, extend_normalize_odd
from .fields import FieldError, parse_field
from .forms import form_from_json, form_to_json, polarize
from .lifting import find_quotient_kernel, fixture_to_json, lift_embedding, nucleus_fixture, \
    rational_subgeometry, validate_quotient, weyl_like_bounds
from .polar import decomposition_verify, embedding_span, enumerate_points
from .spanning import GenDescriptor, predicted_dim, verify_genset

__all__ = ["main", "parse_params", "DEFAULT_GRID"]

_INT_KEYS = ("n", "d0", "d", "m", "dp0")

DEFAULT_GRID = (
    [{"form": "hermitian", "field": "2^2", "params": {"n": n, "d0": d0, "d": d}}
     for n, d0, d in [(2, 0, 0), (2, 1, 0), (2, 0, 1), (3, 0, 0)]]
    + [{"form": "symplectic", "field": q, "params": {"n": n, "d": d}}
       for q in ("2", "3") for n, d in [(2, 0), (3, 0), (2, 1), (2, 2)]]
    + [{"form": "quadratic", "field": "3", "params": {"n": n, "d0": d0, "d": d}}
       for n, d0, d in [(2, 0, 0), (2, 1, 0), (2, 2, 0), (2, 1, 1)]]
    + [{"form": "quadratic", "field": q, "params": {"n": n, "m": m, "dp0": dp0, "d": d}}
       for q in ("2", "2^2") for n, m, dp0, d in
       [(2, 0, 0, 0), (2, 1, 0, 0), (2, 0, 1, 0), (2, 0, 1, 1), (3, 0, 0, 0)]]
)


class InputError(ValueError):
    pass


def parse_params(text: str | dict | None) -> dict:
    """``"n=2,d0=1,kappa=1:1"`` -> ``{"n": 2, "d0": 1, "kappa": ["1", "1"]}``."""
    if text is None:
        return {}
    if isinstance(text, dict):
        return dict(text)
    out: dict = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not key=value")
        key = key.strip()
        if key in _INT_KEYS:
            out[key] = int(val)
        elif key in ("kappa", "lambda", "mu"):
            out[key] = [v for v in val.split(":") if v]
        else:
            raise InputError(f"unknown parameter {key!r}")
    return out


def build_form(instance: dict):
    params = parse_params(instance.get("params"))
    kind = instance["form"]
    if kind == "symplectic":
        kind = "alternating"
    return form_from_json({"kind": kind, "field": parse_field(str(instance["field"])), **params})


def _ks(form, instance: dict, top: int) -> list[int]:
    k = instance.get("k")
    if k is not None:
        return [int(k)]
    return list(range(1, top + 1))


def _header(form) -> dict:
    p = form.params
    return {"form": form.kind, "field": form.field.text, "N": form.N, "n": p.n, "d0": p.d0, "d": p.d}


def cmd_verify_dims(instance: dict, opts: dict) -> tuple[list[dict], bool]:
    f = build_form(instance)
    p = f.params
    rows, ok = [], True
    for k in _ks(f, instance, p.n + p.d):
        pred = predicted_dim(f.kind, f.field.char, f.N, k, p.n, p.d)
        dim = embedding_span(f, k, stop_at=pred if opts.get("fast") else None).dim
        match = dim == pred
        ok &= match
        rows.append({**_header(f), "k": k, "regime": "main" if k <= p.n else "radical",
                     "dim": dim, "predicted": pred, "match": match})
    return rows, ok


def cmd_genset(instance: dict, opts: dict) -> tuple[list[dict], bool]:
    f = build_form(instance)
    if f.kind == "quadratic" and f.field.char == 2:
        f = polarize(f)
    p = f.params
    rows, ok = [], True
    for k in _ks(f, instance, p.n + p.d):
        r = verify_genset(f, k)
        ok &= r.span_equal
        rows.append({**_header(f), "k": k, "span_equal": r.span_equal,
                     "cardinality": r.cardinality, "dim": r.dim, "is_basis": r.is_basis})
    return rows, ok


def cmd_certify(instance: dict, opts: dict) -> tuple[list[dict], bool]:
    f = build_form(instance)
    if f.kind == "alternating":
        return [{**_header(f), "skipped": "alternating forms are covered by genset"}], True
    target = opts.get("target") or instance.get("target")
    descriptor = opts.get("descriptor") or instance.get("descriptor")
    if target or descriptor:
        if descriptor:
            g = GenDescriptor.from_json(json.loads(descriptor) if isinstance(descriptor, str)
                                        else descriptor)
            c = certificate_quadratic_even(f, g)
        else:
            J = [int(t) - 1 for t in str(target).split(",")]
            c = certificate_hermitian(f, J) if f.kind == "hermitian" \
                else certificate_quadratic_odd(f, J)
        good = bool(verify_certificate(c))
        return [{**certificate_to_json(c), "verified": good}], good
    rows, ok = [], True
    for k in _ks(f, instance, f.params.n):
        certs = certify_all(f, k)
        verified = sum(bool(verify_certificate(c)) for c in certs)
        acc = SpanAccumulator(f.field, f.N, k).extend(c.target for c in certs)
        good = verified == len(certs)
        row = {**_header(f), "k": k, "certificates": len(certs), "verified": verified,
               "span_dim": acc.dim}
        if f.kind == "quadratic" and f.field.char == 2:
            row["expected_dim"] = embedding_span(polarize(f), k).dim
            good &= acc.same_span(embedding_span(polarize(f), k))
        else:
            row["expected_dim"] = acc.length
            good &= acc.dim == acc.length
        ok &= good
        rows.append({**row, "ok": good})
    return rows, ok


def cmd_decompose(instance: dict, opts: dict) -> tuple[list[dict], bool]:
    f = build_form(instance)
    p = f.params
    if p.d == 0:
        raise InputError("decompose needs a degenerate form (d > 0)")
    rows, ok = [], True
    for k in _ks(f, instance, p.n + p.d):
        r = decomposition_verify(f, k)
        ok &= r.holds
        rows.append({**_header(f), "k": k, "holds": r.holds, "dim": r.dim_full,
                     "dim_sum": r.dim_sum, "parts": [list(x) for x in r.parts]})
    return rows, ok


def cmd_extend(instance: dict, opts: dict) -> tuple[list[dict], bool]:
    f = build_form(instance)
    if f.kind != "quadratic":
        raise InputError("extend needs a quadratic form")
    r = extend_normalize_even(f) if f.field.char == 2 else extend_normalize_odd(f)
    E = r.field
    return [{**_header(f), "extension": E.text, "g": r.degree,
             "basis": [[E.format_element(x) for x in v] for v in r.basis],
             "normalized": form_to_json(r.form)}], True


def cmd_lift(instance: dict, opts: dict) -> tuple[list[dict], bool]:
    F = parse_field(str(instance["field"]))
    n = int(parse_params(instance.get("params")).get("n", 2))
    pair = nucleus_fixture(n, F)
    rep = validate_quotient(pair)
    row = {"fixture": "nucleus", "field": F.text, "n": n, "points": len(pair.top.images),
           "lines": len(pair.top.lines), "valid": rep.ok,
           "kernel_search_top": find_quotient_kernel(pair.top) is not None,
           "kernel_search_bottom": find_quotient_kernel(pair.bottom) is not None}
    ok = rep.ok
    sub = opts.get("subfield") or instance.get("subfield")
    if sub:
        S = parse_field(str(sub))
        pts, lines = rational_subgeometry(pair.top, S, pair.bottom)
        lifted = lift_embedding(pair, S, pts, lines)
        g = F.e // S.e
        row.update({"subfield": S.text, "rational_points": len(pts), "lifted_dim": lifted.dim,
                    "e1": lifted.e1, "injective": lifted.injective,
                    "weyl_like_bounds": list(weyl_like_bounds(2 * n + 2, 2, g))})
        ok &= lifted.e1 and lifted.injective
    if opts.get("dump"):
        row["fixture_json"] = fixture_to_json(pair)
    return [row], ok


def cmd_points(instance: dict, opts: dict) -> tuple[list[dict], bool]:
    f = build_form(instance)
    k = int(instance.get("k") or 1)
    return [{"k": k, "basis": S.rows_text()} for S in enumerate_points(f, k)], True


COMMANDS = {
    "verify-dims": cmd_verify_dims,
    "genset": cmd_genset,
    "certify": cmd_certify,
    "decompose": cmd_decompose,
    "extend": cmd_extend,
    "lift": cmd_lift,
    "points": cmd_points,
}


def _run(job):
    command, instance, opts = job
    return COMMANDS[command](instance, opts)


def _write(rows: Iterable[dict], fmt: str, out):
    rows = list(rows)
    if fmt == "jsonl":
        for r in rows:
            out.write(json.dumps(r, sort_keys=False) + "\n")
        return
    keys: list[str] = []
    for r in rows:
        keys += [k for k in r if k not in keys]
    w = csv.DictWriter(out, fieldnames=keys)
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polargrass", description="Exact checks on the spans of polar Grassmannian embeddings.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--form", choices=["hermitian", "symplectic", "alternating", "quadratic"])
    ap.add_argument("--field", help="p, p^e, 'p^e mod=[c0,...,1]' or Q")
    ap.add_argument("--params", help="comma separated key=value, e.g. n=2,d0=1,d=0")
    ap.add_argument("--k", type=int, help="grade; default runs every valid k")
    ap.add_argument("--campaign", help="JSON array of instances, or 'default' for the built-in grid")
    ap.add_argument("--target", help="1-based coordinates for certify, e.g. 1,5")
    ap.add_argument("--descriptor", help='JSON descriptor for certify, e.g. {"C": [[1, 3]]}')
    ap.add_argument("--subfield", help="subfield for lift, e.g. 2")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for campaigns")
    ap.add_argument("--fast", action="store_true", help="stop spans once the prediction is reached")
    ap.add_argument("--dump", action="store_true", help="include the fixture itself in lift output")
    ap.add_argument("--out", help="output file (default stdout)")
    ap.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    return ap


def _instances(args) -> list[dict]:
    if args.campaign:
        if args.campaign == "default":
            return [dict(x) for x in DEFAULT_GRID]
        with open(args.campaign) as fh:
            data = json.load(fh)
        if not isinstance(data, list):
            raise InputError("campaign file must hold a JSON array")
        return data
    if args.command == "lift":
        if not args.field:
            raise InputError("lift needs --field")
        return [{"field": args.field, "params": args.params}]
    if not (args.form and args.field):
        raise InputError("give --form and --field, or --campaign")
    inst = {"form": args.form, "field": args.field, "params": args.params}
    if args.k is not None:
        inst["k"] = args.k
    return [inst]


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    opts = {"fast": args.fast, "target": args.target, "descriptor": args.descriptor,
            "subfield": args.subfield, "dump": args.dump}
    try:
        instances = _instances(args)
        jobs = [(args.command, inst, opts) for inst in instances]
        if args.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                results = list(ex.map(_run, jobs))
        else:
            results = [_run(j) for j in jobs]
    except (InputError, FieldError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows = [r for rs, _ in results for r in rs]
    ok = all(good for _, good in results)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _write(rows, args.format, fh)
    else:
        buf = io.StringIO()
        _write(rows, args.format, buf)
        sys.stdout.write(buf.getvalue())
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
