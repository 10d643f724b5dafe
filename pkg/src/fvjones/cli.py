"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (violations, embedding errors,
oracle mismatches), 2 input error, 3 state cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import states as _states
from .diagram import CutTangle, parse_tangle, validate, writhe
from .errors import EmbeddingViolation, InvalidTangle, StateCapExceeded, TangleSyntaxError
from .laurent import fv_scale, render, writhe_prefactor
from .oracle import oracle_census

SCHEMA = 1


class _InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc


def _load(path: str) -> CutTangle:
    try:
        return parse_tangle(_read(path))
    except (TangleSyntaxError, InvalidTangle) as exc:
        raise _InputError(str(exc)) from exc


def _bits(state: str) -> str:
    return state.replace("A", "0").replace("B", "1")


def _oracle_chunk(t, cap, lo, hi):
    """Rows of (state, smoothed, main census, oracle census); failures become error text."""
    rows = []
    n = len(t.crossings)
    for k in range(lo, hi):
        state = _states.state_from_index(n, k)
        smoothed = _states.resolve_state(t, state)
        try:
            main = _states.classify(smoothed, t.surface)
        except EmbeddingViolation as exc:
            main = f"error: {exc.message}"
        try:
            other = oracle_census(smoothed, t)
        except EmbeddingViolation as exc:
            other = f"error: {exc.message}"
        rows.append((state, smoothed, main, other))
    return rows


def _record_chunk(t, cap, lo, hi):
    return list(_states.state_records(t, cap, lo, hi))


def _run_chunks(fn, t: CutTangle, cap: int, jobs: int):
    n = len(t.crossings)
    if n > cap:
        raise StateCapExceeded(n, cap)
    total = 2 ** n
    if jobs <= 1 or total < 64:
        return fn(t, cap, 0, total)
    chunk = -(-total // (jobs * 4))
    bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(fn, *zip(*[(t, cap, lo, hi) for lo, hi in bounds])):
            out.extend(part)
    return out


def cmd_validate(args) -> int:
    try:
        t = parse_tangle(_read(args.file), check=False)
    except TangleSyntaxError as exc:
        raise _InputError(str(exc)) from exc
    violations = validate(t)
    for v in violations:
        print(v)
    return 1 if violations else 0


def cmd_jones(args) -> int:
    t = _load(args.file)
    if _states.is_empty(t):
        raise _InputError("the empty diagram has no bracket value")
    normalized = not args.bracket
    if args.states:
        records = _run_chunks(_record_chunk, t, args.max_crossings, args.jobs)
        value = _states.bracket_from_records(records)
    else:
        records = None
        value = _states.flat_bracket(t, args.max_crossings, args.jobs)
    w = writhe(t)
    if normalized:
        value = fv_scale(writhe_prefactor(w), value)

    if args.format == "json":
        doc = {"schema": SCHEMA, "command": "jones", "normalized": normalized,
               "surface": str(t.surface), "writhe": w, "value": value.to_json()}
        if records is not None:
            doc["states"] = [{"state": _bits(r.state), "exponent": r.exponent,
                              "t": r.census.t, "e": r.census.e} for r in records]
        print(json.dumps(doc))
    else:
        if records is not None:
            for r in records:
                print(f"{_bits(r.state) or '-'} {r.exponent:+d} t={r.census.t} e={r.census.e}")
            print("total:")
        print(render(value))
    return 0


def cmd_oracle(args) -> int:
    t = _load(args.file)
    rows = _run_chunks(_oracle_chunk, t, args.max_crossings, args.jobs)
    bad = [(state, sm, a, b) for state, sm, a, b in rows if a != b or isinstance(a, str)]
    if args.format == "json":
        print(json.dumps({
            "schema": SCHEMA, "command": "oracle", "checked": len(rows), "mismatches": [
                {"state": _bits(s), "smoothed": str(sm), "main": list(a) if not isinstance(a, str) else a,
                 "oracle": list(b) if not isinstance(b, str) else b} for s, sm, a, b in bad]}))
    else:
        for s, sm, a, b in bad:
            print(f"MISMATCH state={_bits(s) or '-'} main={_fmt(a)} oracle={_fmt(b)} smoothed={sm}")
        print(f"checked {len(rows)} states, {len(bad)} mismatches")
    return 1 if bad else 0


def _fmt(census):
    if isinstance(census, str):
        return census
    return f"(t={census.t},e={census.e})"


def _canonical_header(t: CutTangle) -> str:
    if t.surface.is_torus:
        return "T(K')"
    return "C(K')" if t.surface.d % 2 else "C(Kbar')"


def cmd_canonical(args) -> int:
    t = _load(args.file)
    records = _run_chunks(_record_chunk, t, args.max_crossings, args.jobs)
    header = _canonical_header(t)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "command": "canonical", "canonical": header,
                          "states": [{"state": _bits(r.state), "t": r.census.t, "e": r.census.e}
                                     for r in records]}))
    else:
        print(f"canonical: {header}")
        for r in records:
            print(f"{_bits(r.state) or '-'} O^{r.census.t} eight^{r.census.e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="tangle file, or - for stdin")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-crossings", type=int, default=_states.DEFAULT_CAP, metavar="N",
                        help="refuse inputs with more classical crossings (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")

    parser = argparse.ArgumentParser(prog="fvjones", description="Flat-virtual Jones polynomial of cylinder and torus tangles.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check a tangle file").set_defaults(func=cmd_validate)
    p = sub.add_parser("jones", parents=[common], help="flat-virtual Jones polynomial")
    p.add_argument("--bracket", action="store_true", help="print the unnormalized bracket")
    p.add_argument("--states", action="store_true", help="also print every state's census")
    p.set_defaults(func=cmd_jones)
    sub.add_parser("oracle", parents=[common],
                   help="cross-check the reduction against component tracing").set_defaults(func=cmd_oracle)
    sub.add_parser("canonical", parents=[common],
                   help="per-state semi-trivial decomposition").set_defaults(func=cmd_canonical)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_crossings < 0 or args.jobs < 1:
        print("error: --max-crossings must be >= 0 and --jobs >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EmbeddingViolation as exc:
        where = "" if exc.state is None else f" (state {_bits(exc.state) or '-'})"
        print(f"embedding violation: {exc.message}{where}", file=sys.stderr)
        return 1
    except StateCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
