"""Command line front end: ``twobridge <command> p/q [options]``.

Exit status is 0 on success, 2 on bad input and 3 when a verification
step fails.  ``TBL_LOG`` (e.g. ``DEBUG``) sets the log level.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .alexpoly import alexander_polynomial, content, genus
from .cyclegraph import bottoms, build_cycle, reduction_chain, segments, summits, to_dot
from .orderability import certify
from .pairs import (CoprimePair, canonical_pairs, euclid_data, even_continued_fraction,
                    parse_fraction)
from .presentation import chain_presentation, rewrite_R0, schubert_word
from .rtfn import (NestedWordError, WitnessError, build_witness, derive_nested_words,
                   parafree_chain_report, verify_witness)

log = logging.getLogger("twobridge")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 2, 3


class VerificationFailure(RuntimeError):
    pass


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x if -2**63 <= x < 2**63 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return str(x)


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2)


def _chain_json(chain) -> list:
    out = []
    for st in chain:
        if isinstance(st, tuple):
            out.append({"negate": {"from": st[1].to_json(), "to": st[2].to_json()}})
        else:
            out.append({"reduce": st.to_json()})
    return out


def _chain_text(pair, chain) -> str:
    parts = [str(pair)]
    for st in chain:
        if isinstance(st, tuple):
            parts.append(f"~ {st[2]}")
        else:
            parts.append(f"-> {st.target}")
    return " ".join(parts)


# -- reports ------------------------------------------------------------------------

def analyze(pair: CoprimePair, level: int = 3) -> dict:
    delta = alexander_polynomial(pair)
    cf = even_continued_fraction(pair)
    w = build_witness(pair, verify=False)
    wrep = verify_witness(pair, w)
    if not wrep.ok:
        raise VerificationFailure(f"witness checks failed: {wrep.failures()}")
    words = derive_nested_words(pair, w)
    chain = parafree_chain_report(pair, level, words)
    verdict = certify(pair)
    if len(cf) != delta.degree or genus(pair) != len(cf) // 2:
        raise VerificationFailure("genus from relator, polynomial and continued fraction disagree")
    return {
        "pair": pair.to_json(),
        "knot": pair.is_knot,
        "continued_fraction": list(cf.entries),
        "presentation": {"schubert": str(schubert_word(pair)), "R0": str(rewrite_R0(pair))},
        "alexander": {"poly": str(delta), "coeffs": delta.to_json(), "content": content(delta),
                      "genus": genus(pair)},
        "reduction_chain": _chain_json(reduction_chain(pair)),
        "witness": {"N": w.N, "n": w.multiplicities, "checks": wrep.checks},
        "nested_words": words.to_json(),
        "chain_report": chain.to_json(),
        "verdict": verdict.to_json(),
    }


def _analyze_text(rep: dict) -> str:
    p, q = rep["pair"]["p"], rep["pair"]["q"]
    ch = rep["chain_report"]
    lines = [
        f"L({p}/{q})  {'knot' if rep['knot'] else 'two-component link'}",
        f"even continued fraction of p/(p-q): {rep['continued_fraction']}",
        f"R_0 = {rep['presentation']['R0']}",
        f"Alexander polynomial: {rep['alexander']['poly']}  (content {rep['alexander']['content']},"
        f" genus {rep['alexander']['genus']})",
        f"witness: N = {rep['witness']['N']}, n = {rep['witness']['n']}",
        f"chain verdict: {ch['verdict']}",
    ]
    for lv in ch["levels"]:
        lines.append(f"  level {lv['n']}: C = {lv['C_values']}, index {lv['index']}")
    v = rep["verdict"]
    lines.append(f"verdict: {v['status']}  ({'; '.join(v['reasons'])})")
    return "\n".join(lines)


def _witness_report(pair: CoprimePair) -> tuple[dict, str]:
    w = build_witness(pair, verify=False)
    rep = verify_witness(pair, w)
    if not rep.ok:
        raise VerificationFailure(f"witness checks failed: {rep.failures()} {rep.notes}")
    words = derive_nested_words(pair, w)
    data = {"witness": w.to_json(), "checks": rep.to_json(), "nested_words": words.to_json()}
    lines = [f"witness for {pair}: N = {w.N}, n = {w.multiplicities}"]
    for i, g in enumerate(w.gammas):
        lines.append(f"  Gamma_{i}: {' '.join(map(str, g.gradings))}")
    for i, st in enumerate(w.stages, start=1):
        lines.append(f"  Upsilon_{i} (offset {st.offset}): {' '.join(map(str, st.upsilon.gradings))}")
    for i, (a, b) in enumerate(zip(words.ahat, words.acheck)):
        lines.append(f"  A^_{i} = {a}    Av_{i} = {b}")
    for i, (a, b) in enumerate(zip(words.vhat, words.vcheck), start=1):
        lines.append(f"  V^_{i} = {a}    Vv_{i} = {b}")
    lines.append("  checks: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}"
                                          for k, v in list(rep.checks.items()) + list(words.checks)))
    return data, "\n".join(lines)


# -- commands -----------------------------------------------------------------------

def cmd_analyze(args) -> int:
    rep = analyze(args.pair, args.level)
    print(dump_json(rep) if args.json else _analyze_text(rep))
    return EXIT_OK


def cmd_certify(args) -> int:
    v = certify(args.pair)
    if args.json:
        print(dump_json(v))
    else:
        print(f"{args.pair}: {v.status.value}  ({'; '.join(v.reasons)})")
    return EXIT_OK


def cmd_present(args) -> int:
    pair = args.pair
    cp = chain_presentation(pair, args.level)
    if args.json:
        print(dump_json({"schubert": str(schubert_word(pair)), "R0": rewrite_R0(pair),
                         "chain": cp}))
    else:
        print(schubert_word(pair))
        print(f"R_0 = {rewrite_R0(pair)}")
        print(cp)
    return EXIT_OK


def cmd_witness(args) -> int:
    data, text = _witness_report(args.pair)
    print(dump_json(data) if args.json else text)
    return EXIT_OK


def cmd_graph(args) -> int:
    pair = args.pair
    c = build_cycle(pair)
    kappa = euclid_data(pair)[0] if pair.q > 0 else None
    if args.dot:
        sys.stdout.write(to_dot(c, f"Gamma_{pair.p}_{pair.q}", kappa))
    elif args.json:
        seg = segments(c)
        print(dump_json({"pair": pair, "gradings": list(c.gradings), "summits": summits(c),
                         "bottoms": bottoms(c),
                         "segments": [[s.start, s.sign, s.length] for s in seg.segments]}))
    else:
        print(f"Gamma({pair.p},{pair.q}): {' '.join(map(str, c.gradings))}")
        print(f"summits at {summits(c)}, bottoms at {bottoms(c)}")
    return EXIT_OK


def cmd_reduce_chain(args) -> int:
    pair = args.pair
    chain = reduction_chain(pair)
    if args.json:
        print(dump_json({"pair": pair, "chain": _chain_json(chain)}))
    else:
        print(_chain_text(pair, chain))
    return EXIT_OK


def _batch_one(pair: CoprimePair) -> dict:
    row = {"pair": str(pair)}
    try:
        w = build_witness(pair, verify=False)
        rep = verify_witness(pair, w)
        derive_nested_words(pair, w)
        row["N"] = w.N
        row["witness"] = "ok" if rep.ok else "FAIL " + ",".join(rep.failures())
    except (WitnessError, NestedWordError) as exc:
        row["N"] = None
        row["witness"] = f"FAIL {exc}"
    row["verdict"] = certify(pair).status.value
    return row


def _read_pairs(path: str) -> list[CoprimePair]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append(parse_fraction(line))
    return out


def cmd_batch(args) -> int:
    if args.file:
        pairs = _read_pairs(args.file)
    else:
        pairs = list(canonical_pairs(args.max_p))
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as ex:
            rows = list(ex.map(_batch_one, pairs))
    else:
        rows = [_batch_one(p) for p in pairs]
    counts: dict[str, int] = {}
    for r in rows:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    failures = [r["pair"] for r in rows if r["witness"] != "ok"]
    if args.json:
        print(dump_json({"rows": rows, "counts": counts, "failures": failures}))
    else:
        for r in rows:
            print(f"{r['pair']:>10}  N={r['N']}  {r['witness']:<4}  {r['verdict']}")
        print(f"pairs: {len(rows)}  " + "  ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
              + f"  witness failures: {len(failures)}")
    return EXIT_VERIFY if failures else EXIT_OK


# -- entry point --------------------------------------------------------------------

def _pair_arg(text: str) -> CoprimePair:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twobridge",
                                 description="Invariants and orderability of two-bridge links L(p/q).")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_pair(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("pair", type=_pair_arg, help="fraction p/q")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)
        return sp

    sp = with_pair("analyze", cmd_analyze, "full report")
    sp.add_argument("--level", type=int, default=3, help="highest chain level (default 3)")
    with_pair("certify", cmd_certify, "bi-orderability verdict")
    sp = with_pair("present", cmd_present, "group presentations")
    sp.add_argument("--level", type=int, default=1, help="chain level n for Y_n (default 1)")
    with_pair("witness", cmd_witness, "nested subgraph witness and words")
    sp = with_pair("graph", cmd_graph, "incremental cycle graph")
    sp.add_argument("--dot", action="store_true", help="emit DOT")
    with_pair("reduce-chain", cmd_reduce_chain, "reduction chain to a base case")

    sp = sub.add_parser("batch", help="sweep many pairs")
    sp.add_argument("--max-p", type=int, default=60)
    sp.add_argument("--file", help="file with one p/q per line")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_batch)
    return ap


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("TBL_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "level", 0) < 0:
        print("twobridge: error: --level must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (VerificationFailure, WitnessError, NestedWordError) as exc:
        print(f"twobridge: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (OSError, ValueError) as exc:
        print(f"twobridge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
