"""Command-line entry point.

Subcommands read and write the plain matrix text format, JSON bundles and
CSV tables.  Domain errors exit with status 1 and print ``CODE: message``
on stderr; usage errors exit with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys

from .array_codes import BlockGeneratorMatrix, check_block_rank_conditions, evenodd_generator, ring_generator
from .errors import ArsssError, BadParams, NotEnoughShares, RankConditionViolated
from .generator import GeneratorMatrix, check_rank_conditions, construct, score
from .leakage import conditional_entropy
from .matrix import inverse, parse_matrix, submatrix
from .prob import ProbSequence
from .scheme import (
    SharesBundle,
    decode_symbol,
    encode,
    make_auxiliary,
    plan_mixture,
    recover_bundle,
    run_plan,
    selected_rows,
)

TABLE_QS = (4, 8, 12, 16)
TABLE_GENERATOR = ((1, 1), (1, -1))


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def load_generator(path: str, L: int | None = None):
    matrix, header, tag = parse_matrix(_read(path))
    if not matrix:
        raise BadParams(f"{path} holds no matrix rows")
    L = header.get("L", 1) if L is None else L
    kind = header.get("kind", "custom")
    if tag == "block":
        return BlockGeneratorMatrix(matrix, header["k"], L, header["l"], kind)
    return GeneratorMatrix(matrix, len(matrix[0]), L, kind)


def _indices(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad index list {text!r}") from exc
    if any(v < 1 for v in values):
        raise UsageError("share indices are 1-based")
    return [v - 1 for v in values]


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _load_secret(path: str) -> ProbSequence:
    obj = json.loads(_read(path))
    if isinstance(obj, dict) and "values" in obj:
        obj = [obj]
    if isinstance(obj, dict):
        obj = obj.get("secret", obj.get("symbols"))
    if not isinstance(obj, list):
        raise BadParams("secret file must hold a list of probability vectors")
    return ProbSequence.from_json(obj)


def _load_bundle(path: str) -> SharesBundle:
    return SharesBundle.from_json(json.loads(_read(path)))


def _generator_text(G) -> str:
    s = score(G)
    return G.to_text() + f"OC={s.oc} IL={s.il}\n"


# ----------------------------------------------------------------------
# subcommands

def cmd_construct(args, out):
    kind = args.kind
    if kind in ("evenodd", "ring") and args.p is None:
        raise UsageError(f"--p is required for {kind} codes")
    if kind == "evenodd":
        G = evenodd_generator(args.p, args.L, args.n_prime)
    elif kind == "ring":
        if args.n is None or args.k is None:
            raise UsageError("--n and --k are required")
        G = ring_generator(args.n, args.k, args.p, args.L)
    else:
        if args.n is None or args.k is None:
            raise UsageError("--n and --k are required")
        G = construct(kind, args.n, args.k, args.L, args.seed)
    out.write(_generator_text(G))


def cmd_verify(args, out):
    G = load_generator(args.matrix, args.L)
    result = check_block_rank_conditions(G) if isinstance(G, BlockGeneratorMatrix) else check_rank_conditions(G)
    s = score(G)
    if not result:
        rows = ",".join(str(i + 1) for i in result.witness)
        out.write(f"FAIL condition={'i' * result.condition} rows={rows}\n")
        raise RankConditionViolated(f"condition ({'i' * result.condition}) fails on rows {rows}")
    out.write(f"OK n={G.n} k={G.k} L={G.L} OC={s.oc} IL={s.il}\n")


def cmd_encode(args, out):
    G = load_generator(args.matrix, args.L)
    S = _load_secret(args.secret)
    X = make_auxiliary(S, G.k, args.seed, G.l)
    bundle = encode(G, X, with_negatives=args.negatives)
    out.write(bundle.dumps())


def cmd_recover(args, out):
    G = load_generator(args.matrix, args.L)
    bundle = _load_bundle(args.shares)
    S = recover_bundle(G, bundle, _indices(args.indices))
    out.write(json.dumps(S.to_json()) + "\n")


def cmd_plan(args, out):
    G = load_generator(args.matrix, args.L)
    bundle = _load_bundle(args.shares)
    if G.l != 1:
        raise BadParams("mixture planning supports scalar generators only")
    chosen = sorted(_indices(args.indices))[: G.k]
    if len(chosen) < G.k:
        raise NotEnoughShares(f"need {G.k} shares, got {len(chosen)}")
    row = args.row - 1
    if not 0 <= row < G.k:
        raise UsageError(f"--row must lie in [1, {G.k}]")
    sub = submatrix(G.matrix, selected_rows(G, chosen))
    A = inverse(sub)[row]
    shares = bundle.shares.select(chosen)
    negatives = bundle.negatives.select(chosen) if bundle.negatives is not None else None
    plan = plan_mixture(A, shares.resolutions, args.method, negatives is not None)
    report = plan.to_json()
    report["shares"] = [i + 1 for i in chosen]
    reads = run_plan(plan, shares, negatives)
    report["decoded"] = decode_symbol(plan, reads, sub, row, bundle.q, bundle.m).to_json()
    out.write(json.dumps(report, indent=1) + "\n")


def _fmt(x: float) -> str:
    return f"{x:.10f}"


def _analysis_rows(G, subset, qs, m):
    yield "q,H_S,H_S_given,ratio,lower,upper"
    for q in qs:
        r = conditional_entropy(G, subset, q, m)
        yield ",".join([str(q), _fmt(r.H_S), _fmt(r.H_S_given_Y), _fmt(r.ratio),
                        _fmt(r.lower_bound), _fmt(r.upper_bound)])


def cmd_analyze(args, out):
    G = load_generator(args.matrix, args.L)
    for line in _analysis_rows(G, _indices(args.subset), _ints(args.q), args.m):
        out.write(line + "\n")


def cmd_tables(args, out):
    G = GeneratorMatrix(TABLE_GENERATOR, 2, 1, "custom")
    m = 2 if args.which == "1" else 4
    for line in _analysis_rows(G, [0], TABLE_QS, m):
        out.write(line + "\n")


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arsss", description="Ramp secret sharing over probability vectors.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a generator matrix")
    c.add_argument("--kind", required=True,
                   choices=["vandermonde", "cauchy", "random", "circulant", "evenodd", "ring"])
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--L", type=int, default=1)
    c.add_argument("--seed", type=int)
    c.add_argument("--p", type=int, help="prime for evenodd and ring codes")
    c.add_argument("--n-prime", dest="n_prime", type=int, help="EVENODD columns before truncation")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the rank conditions")
    v.add_argument("--matrix", required=True)
    v.add_argument("--L", type=int)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("encode", help="share a secret")
    e.add_argument("--matrix", required=True)
    e.add_argument("--secret", required=True)
    e.add_argument("--seed", type=int, help="seed for reproducible shares; OS entropy when omitted")
    e.add_argument("--negatives", action="store_true", help="also synthesise Y-")
    e.add_argument("--L", type=int)
    e.set_defaults(func=cmd_encode)

    r = sub.add_parser("recover", help="recover the secret from k shares")
    r.add_argument("--matrix", required=True)
    r.add_argument("--shares", required=True)
    r.add_argument("--indices", required=True, help="1-based share numbers, e.g. 1,3,4")
    r.add_argument("--L", type=int)
    r.set_defaults(func=cmd_recover)

    pl = sub.add_parser("plan", help="mixture plan for one decoded symbol")
    pl.add_argument("--matrix", required=True)
    pl.add_argument("--shares", required=True)
    pl.add_argument("--indices", required=True)
    pl.add_argument("--method", choices=["i", "ii"], default="i")
    pl.add_argument("--row", type=int, default=1, help="1-based symbol of X to decode")
    pl.add_argument("--L", type=int)
    pl.set_defaults(func=cmd_plan)

    a = sub.add_parser("analyze", help="exact leakage of a share subset")
    a.add_argument("--matrix", required=True)
    a.add_argument("--q", required=True, help="comma-separated resolutions")
    a.add_argument("--m", type=int, default=2)
    a.add_argument("--subset", required=True, help="1-based share numbers")
    a.add_argument("--L", type=int)
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tables", help="leakage tables of the two-share scheme")
    t.add_argument("--which", choices=["1", "2"], required=True)
    t.set_defaults(func=cmd_tables)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except UsageError as exc:
        err.write(f"USAGE: {exc}\n")
        return 2
    except ArsssError as exc:
        err.write(f"{exc.code}: {exc}\n")
        return 1
    except (json.JSONDecodeError, KeyError) as exc:
        err.write(f"BAD_INPUT: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
