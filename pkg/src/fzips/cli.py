"""Command line interface: classify, standard, enumerate, strata, oracle.

Exit codes: 0 success, 1 I/O or unparsable JSON, 2 validation or domain
error, 3 size guard.  Tables are rendered from the same records that the
JSON output prints.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import weyl
from .classify import InconsistencyError, a_number, classify, codim, eo_partition, is_ordinary
from .forms import PolarizedFZip, classify_polarized, iota, polarized_subset, SYMPLECTIC
from .fzip import FZip, TypeFunction, standard_fzip, validate
from .gf import make_field
from .oracle import SizeGuardError, enumerate_fzips, gl_orbits

EXIT_OK, EXIT_IO, EXIT_DOMAIN, EXIT_SIZE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str, payload=None):
        super().__init__(message)
        self.code = code
        self.payload = payload


# ---------------------------------------------------------------- helpers

def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_IO, f"malformed JSON in {path}: {exc}")


def _load_fzip(obj) -> FZip | PolarizedFZip:
    try:
        if isinstance(obj, dict) and "form" in obj:
            return PolarizedFZip.from_json(obj)
        return FZip.from_json(obj)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise CliError(EXIT_DOMAIN, f"not an F-zip record: {exc!r}")


def _emit(data, fmt: str, out: str | None, table=None) -> None:
    text = json.dumps(data, indent=2) if fmt == "json" else table(data)
    if out:
        try:
            Path(out).write_text(text + "\n")
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write {out}: {exc}")
    else:
        print(text)


def _render(rows: list[dict], columns: list[str]) -> str:
    cells = [[str(r.get(c, "")) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(columns)]
    line = lambda vals: "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()
    out = [line(columns), line(["-" * w for w in widths])]
    out += [line(row) for row in cells]
    return "\n".join(out)


def _kv_table(data: dict) -> str:
    rows = [{"key": k, "value": json.dumps(v) if isinstance(v, (dict, list)) else v}
            for k, v in data.items()]
    return _render(rows, ["key", "value"])


def _parse_type(text: str) -> TypeFunction:
    try:
        return TypeFunction.parse(text)
    except ValueError as exc:
        raise CliError(EXIT_DOMAIN, f"bad type {text!r}: {exc}")


def _parse_window(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip())
    except ValueError:
        raise CliError(EXIT_DOMAIN, f"bad permutation window {text!r}")


def _field(args):
    try:
        return make_field(args.p, args.k)
    except ValueError as exc:
        raise CliError(EXIT_DOMAIN, str(exc))


# ---------------------------------------------------------------- commands

def classification_record(z: FZip, trace: bool = False) -> dict:
    rep = validate(z)
    if not rep.ok:
        raise CliError(EXIT_DOMAIN, "validation failed", {"errors": rep.errors})
    u, tr = classify(z)
    J = z.tau.subset()
    out = {
        "type": z.tau.to_json(),
        "u": list(u.window),
        "length": weyl.length(u),
        "codim": codim(u, J),
        "ordinary": is_ordinary(u, J),
    }
    if set(z.tau.support) <= {0, 1}:
        out["a_number"] = a_number(z)
    if trace:
        out["trace"] = tr.to_json()
    return out


def cmd_classify(args) -> int:
    z = _load_fzip(_read_json(args.input))
    if isinstance(z, PolarizedFZip):
        out = classification_record(z.zip, args.trace)
        try:
            u1 = classify_polarized(z)
        except ValueError as exc:
            raise CliError(EXIT_DOMAIN, str(exc))
        J1 = polarized_subset(z.zip.tau, z.form.kind)
        out["polarized"] = {
            "kind": z.form.kind,
            "u": list(u1.window),
            "length": weyl.length(u1),
            "codim": weyl.dim_par(J1) - weyl.length(u1),
            "iota": list(iota(u1, z.form.kind).window),
        }
    else:
        out = classification_record(z, args.trace)
    _emit(out, args.format, args.output, _kv_table)
    return EXIT_OK


def cmd_standard(args) -> int:
    tau = _parse_type(args.type)
    F = _field(args)
    J = tau.subset()
    reps = weyl.min_coset_reps(J)
    if args.all:
        targets = reps
    elif args.u:
        u = weyl.WeylElement(weyl.A, _parse_window(args.u))
        if u.rank != tau.height or not weyl.is_min_left(u, J):
            raise CliError(EXIT_DOMAIN, f"{list(u.window)} is not a minimal coset representative for {tau}")
        targets = [u]
    else:
        raise CliError(EXIT_DOMAIN, "give --u or --all")
    records = [standard_fzip(tau, u, F).to_json() for u in targets]
    if args.outdir:
        d = Path(args.outdir)
        try:
            d.mkdir(parents=True, exist_ok=True)
            for u, rec in zip(targets, records):
                name = "standard_" + "_".join(str(x) for x in u.window) + ".json"
                (d / name).write_text(json.dumps(rec, indent=2) + "\n")
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write to {d}: {exc}")
        print(json.dumps({"written": len(records), "directory": str(d)}))
    else:
        _emit(records if args.all else records[0], "json", args.output)
    return EXIT_OK


def _subset_from_args(args) -> weyl.SimpleSubset:
    if args.type:
        return _parse_type(args.type).subset()
    if args.siegel:
        return polarized_subset(TypeFunction.of({0: args.siegel, 1: args.siegel}), SYMPLECTIC)
    if args.rank is None:
        raise CliError(EXIT_DOMAIN, "give --type, --siegel or --kind/--rank/--J")
    try:
        excluded = [int(x) for x in args.exclude.split(",") if x.strip()] if args.exclude else []
        if args.J is not None:
            inc = [int(x) for x in args.J.split(",") if x.strip()]
            return weyl.SimpleSubset.of(args.kind, args.rank, inc)
        full = weyl.SimpleSubset.full(args.kind, args.rank)
        return weyl.SimpleSubset.of(args.kind, args.rank, [i for i in full if i not in excluded])
    except ValueError as exc:
        raise CliError(EXIT_DOMAIN, str(exc))


def enumerate_records(J: weyl.SimpleSubset) -> list[dict]:
    reps = weyl.min_coset_reps(J)
    top = weyl.dim_par(J)
    low = [u for u in reps if all(weyl.bruhat_leq(u, v) for v in reps)]
    high = [u for u in reps if all(weyl.bruhat_leq(v, u) for v in reps)]
    rows = []
    for k, u in enumerate(sorted(reps, key=lambda w: (-weyl.length(w), w.window)), 1):
        marks = [m for m, hit in (("min", u in low), ("max", u in high)) if hit]
        rows.append({
            "index": k,
            "u": list(u.window),
            "length": weyl.length(u),
            "codim": top - weyl.length(u),
            "ordinary": weyl.length(u) == top,
            "Bruhat": "/".join(marks),
        })
    return rows


def cmd_enumerate(args) -> int:
    J = _subset_from_args(args)
    data = {"kind": J.kind, "rank": J.rank, "J": J.to_json(), "rows": enumerate_records(J)}
    cols = ["index", "u", "length", "codim", "ordinary", "Bruhat"]
    _emit(data, args.format, args.output, lambda d: _render(d["rows"], cols))
    return EXIT_OK


def cmd_strata(args) -> int:
    obj = _read_json(args.input)
    items = obj.get("items", obj) if isinstance(obj, dict) else obj
    if not isinstance(items, list):
        raise CliError(EXIT_DOMAIN, "family must be a list of F-zips or {\"items\": [...]}")
    family = []
    for k, rec in enumerate(items):
        label, body = (rec.get("label", k), rec["fzip"]) if isinstance(rec, dict) and "fzip" in rec else (k, rec)
        z = _load_fzip(body)
        z = z.zip if isinstance(z, PolarizedFZip) else z
        rep = validate(z)
        if not rep.ok:
            raise CliError(EXIT_DOMAIN, f"item {label} is invalid", {"errors": rep.errors})
        family.append((label, z))
    try:
        part = eo_partition(family)
    except ValueError as exc:
        raise CliError(EXIT_DOMAIN, str(exc))
    data = part.to_json()
    cols = ["u", "size", "codim", "ordinary"]
    _emit(data, args.format, args.output, lambda d: _render(d["strata"], cols))
    return EXIT_OK


def cmd_oracle(args) -> int:
    tau = _parse_type(args.type)
    F = _field(args)
    items = enumerate_fzips(tau, F, limit=args.max_size)
    report = gl_orbits(items, F, args.mode)
    data = report.to_json()
    if not args.representatives:
        for o in data["orbits"]:
            o.pop("representative")

    def table(d):
        head = _kv_table({k: v for k, v in d.items() if k != "orbits"})
        rows = [{"u": o["u"]["window"], "size": o["size"]} for o in d["orbits"]]
        return head + "\n\n" + _render(rows, ["u", "size"])

    _emit(data, args.format, args.output, table)
    return EXIT_OK if report.ok else EXIT_DOMAIN


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fzips", description="Classification of F-zips over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="accepted for reproducibility; computations are deterministic")
        p.add_argument("--max-size", type=int, default=100_000, help="size guard for enumerations")

    p = sub.add_parser("classify", help="classify an F-zip JSON file")
    p.add_argument("input", help="F-zip JSON file, or - for stdin")
    p.add_argument("--trace", action="store_true", help="include the refinement trace")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("standard", help="emit standard F-zips")
    p.add_argument("--type", required=True, help="'1,1' or 'i:d,...'")
    p.add_argument("--u", help="permutation window, e.g. 2,1")
    p.add_argument("--all", action="store_true", help="one file per minimal coset representative")
    p.add_argument("--outdir", help="directory for the emitted files")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    common(p, fmt=False)
    p.set_defaults(func=cmd_standard)

    p = sub.add_parser("enumerate", help="table of strata indexed by minimal coset representatives")
    p.add_argument("--type", help="GL type '1,1' or 'i:d,...'")
    p.add_argument("--siegel", type=int, help="symplectic Siegel type of genus g")
    p.add_argument("--kind", choices=[weyl.A, weyl.BC], default=weyl.BC)
    p.add_argument("--rank", type=int)
    p.add_argument("--J", help="included simple reflections, e.g. 2,3,4")
    p.add_argument("--exclude", help="excluded simple reflections, e.g. 1")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("strata", help="EO partition of a family of F-zips")
    p.add_argument("input", help="family JSON file")
    common(p)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("oracle", help="exhaustive orbit computation over a small field")
    p.add_argument("--type", required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=["auto", "full", "generators"], default="auto")
    p.add_argument("--representatives", action="store_true", help="include orbit representatives")
    common(p)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_size", 1) <= 0:
        print("error: --max-size must be positive", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.payload is not None:
            print(json.dumps(exc.payload, indent=2), file=sys.stderr)
        return exc.code
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ValueError, InconsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
