"""Command-line entry point: ``kmn-ebi <command> ...``.

Exit codes: 0 ok, 1 mismatch or failed replay, 2 invalid input,
3 oracle state cap exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from . import constructions as cons
from .core import InvalidParams, LabelingError, derive_partition, induce_labels, random_labeling
from .fileformat import labeling_to_dict, read_labeling, write_labeling
from .oracle import NAIVE_MAX_CELLS, SearchConfig, StateCapExceeded, canonical_search, naive_search
from .theorem import range_overlap_check, theorem_ebi

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3
SWEEP_FIELDS = ("m", "n", "q", "r", "theorem_max", "constructive_max", "ok")


class _Invalid(Exception):
    pass


def _params(m: int, n: int):
    try:
        return derive_partition(m, n)
    except InvalidParams as exc:
        raise _Invalid(str(exc)) from None


def _emit(fmt: str, payload: dict, table: str, rows: list[dict] | None = None,
          fields: Sequence[str] | None = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        if rows is None:
            rows = [{"key": k, "value": json.dumps(v) if isinstance(v, (list, dict)) else v}
                    for k, v in payload.items()]
        if rows or fields:
            writer = csv.DictWriter(buf, fieldnames=list(fields or rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(table)


def _fmt_set(values) -> str:
    vals = sorted(values)
    if not vals:
        return "{}"
    if vals == list(range(vals[-1] + 1)):
        return "{0}" if vals[-1] == 0 else f"{{0..{vals[-1]}}}"
    return "{" + ",".join(map(str, vals)) + "}"


# -- commands ---------------------------------------------------------------


def cmd_params(args) -> int:
    p = _params(args.m, args.n)
    layout = [size for block, size in p.blocks if block != "*"]
    payload = {"m": p.m, "n": p.n, "q": p.q, "r": p.r, "blocks": layout, "star": p.r}
    star = f" + star[{p.r}]" if p.r else ""
    _emit(args.format, payload, f"K_{{{p.m},{p.n}}}: q={p.q}, r={p.r}, blocks {layout}{star}")
    return EXIT_OK


def _labeling_table(lab) -> str:
    p = lab.params
    s = induce_labels(lab)
    lines = [f"K_{{{p.m},{p.n}}}  q={p.q} r={p.r}"]
    header = " ".join(f"u{c}" for c in range(1, p.n + 1))
    lines.append(f"{'':>8}  {header}")
    for k, row in enumerate(lab.row_strings()):
        v = p.a_from_index(k)
        cells = " ".join(ch.rjust(len(f"u{c + 1}")) for c, ch in enumerate(row))
        lines.append(f"{str(v):>8}  {cells}   {s.labels_a[k].value}")
    labels = " ".join(s.labels_b[c].value.rjust(len(f"u{c + 1}")) for c in range(p.n))
    lines.append(f"{'label':>8}  {labels}")
    lines.append(f"vA1={s.vA1} vA0={s.vA0} vB1={s.vB1} vB0={s.vB0} index={s.index}")
    return "\n".join(lines)


def cmd_construct(args) -> int:
    p = _params(args.m, args.n)
    if args.labeling == "f":
        lab = cons.build_f(p)
        defects: list[int] = []
    else:
        try:
            defects = cons.f_prime_defects(cons.build_f_prime_literal(p))
            lab = cons.build_f_prime(p)
        except InvalidParams as exc:
            raise _Invalid(str(exc)) from None
    payload = labeling_to_dict(lab)
    payload["construction"] = {"labeling": args.labeling, "rebalanced_columns": defects}
    if args.output:
        write_labeling(lab, args.output)
    s = induce_labels(lab)
    rows = [{"vertex": str(p.a_from_index(k)), "row": row, "deg1": s.deg1_a[k],
             "label": s.labels_a[k].value} for k, row in enumerate(lab.row_strings())]
    table = _labeling_table(lab)
    if defects:
        table += f"\nrebalanced columns: {', '.join(f'u_{c}' for c in defects)}"
    _emit(args.format, payload, table, rows)
    return EXIT_OK


def cmd_summarize(args) -> int:
    try:
        lab = read_labeling(args.file)
    except (OSError, ValueError) as exc:
        raise _Invalid(str(exc)) from None
    payload = labeling_to_dict(lab)
    _emit(args.format, payload, _labeling_table(lab))
    return EXIT_OK


def cmd_trajectory(args) -> int:
    p = _params(args.m, args.n)
    try:
        traj = cons.trajectory_for(p, args.labeling)
    except InvalidParams as exc:
        raise _Invalid(str(exc)) from None
    except cons.TrajectoryError as exc:
        print(f"replay failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    rows = [{"step": k, "pivot": str(op.pivot), "a_one": str(op.a_one),
             "a_zero": str(op.a_zero), "index_after": idx}
            for k, (op, idx) in enumerate(traj.steps, start=1)]
    achieved = traj.achieved.to_list()
    payload = {"m": p.m, "n": p.n, "labeling": args.labeling, "start_index": traj.start_index,
               "steps": rows, "achieved": achieved}
    lines = [f"start index {traj.start_index}", "step  pivot  a_one    a_zero   index"]
    lines += [f"{r['step']:>4}  {r['pivot']:<5}  {r['a_one']:<7}  {r['a_zero']:<7}  {r['index_after']}"
              for r in rows]
    lines.append(f"achieved {_fmt_set(achieved)}")
    _emit(args.format, payload, "\n".join(lines), rows)
    return EXIT_OK


def _verify(m: int, n: int, with_oracle: bool = False, cap: int = 50_000_000, threads: int = 1,
            seed: int | None = None, samples: int = 100) -> tuple[int, dict]:
    p = _params(m, n)
    theo = theorem_ebi(p)
    try:
        built = cons.constructive_ebi(p)
    except (AssertionError, cons.TrajectoryError, LabelingError) as exc:
        return EXIT_MISMATCH, {"m": m, "n": n, "q": p.q, "r": p.r, "theorem": theo.to_list(),
                               "constructive": None, "error": str(exc), "agree": False}
    report: dict = {"m": m, "n": n, "q": p.q, "r": p.r,
                    "theorem": theo.to_list(), "constructive": built.to_list()}
    agree = built == theo
    if n >= 4:
        ov = range_overlap_check(p)
        report["range_overlap"] = {"ok": ov.ok, "low_max": ov.low_max, "threshold": ov.threshold,
                                   "case": ov.case, "failures": ov.failures}
        agree = agree and ov.ok
    code = EXIT_OK
    reference = theo
    if with_oracle:
        try:
            res = canonical_search(m, n, SearchConfig(state_cap=cap, threads=threads))
        except StateCapExceeded as exc:
            report["oracle"] = {"status": "cap_exceeded", "visited": exc.visited, "cap": exc.cap}
            code = EXIT_CAP
        else:
            report["oracle"] = {"status": "ok", **res.to_dict()}
            agree = agree and res.indices == theo
            reference = res.indices
    else:
        report["oracle"] = {"status": "skipped"}
    if seed is not None:
        rng = np.random.default_rng(seed)
        misses = [idx for idx in (induce_labels(random_labeling(p, rng)).index for _ in range(samples))
                  if idx not in reference]
        report["spot_checks"] = {"seed": seed, "samples": samples, "outside": sorted(set(misses))}
        agree = agree and not misses
    report["agree"] = agree
    if not agree:
        code = EXIT_MISMATCH
    return code, report


def cmd_verify(args) -> int:
    code, report = _verify(args.m, args.n, args.oracle, args.cap, args.threads, args.seed, args.samples)
    lines = [f"K_{{{args.m},{args.n}}}",
             f"theorem      {_fmt_set(report['theorem'])}",
             f"constructive {_fmt_set(report['constructive'] or [])}"]
    if "range_overlap" in report:
        ov = report["range_overlap"]
        lines.append(f"range overlap {'ok' if ov['ok'] else 'FAILED'} ({ov['case']}: "
                     f"{ov['low_max']} >= {ov['threshold']})")
    oracle = report["oracle"]
    if oracle["status"] == "ok":
        lines.append(f"oracle       {_fmt_set(oracle['indices'])} "
                     f"({oracle['states_visited']} states, {oracle['elapsed_s']:.2f}s)")
    elif oracle["status"] == "cap_exceeded":
        lines.append(f"oracle       state cap {oracle['cap']} exhausted")
    if "spot_checks" in report:
        sc = report["spot_checks"]
        lines.append(f"spot checks  {sc['samples']} samples, outside: {sc['outside'] or 'none'}")
    lines.append("verdict      " + ("agree" if report["agree"] else "MISMATCH"))
    _emit(args.format, report, "\n".join(lines))
    return code


def cmd_brute(args) -> int:
    if args.m < 1 or args.n < 1 or args.m * args.n < 2:
        raise _Invalid(f"need positive part sizes with m*n >= 2, got ({args.m}, {args.n})")
    cfg = SearchConfig(state_cap=args.cap, threads=args.threads)
    try:
        canon = canonical_search(args.m, args.n, cfg)
    except StateCapExceeded as exc:
        _emit(args.format, {"m": args.m, "n": args.n, "status": "cap_exceeded",
                            "visited": exc.visited, "cap": exc.cap},
              f"state cap {exc.cap} exhausted after {exc.visited} states")
        return EXIT_CAP
    payload: dict = {"m": args.m, "n": args.n, "status": "ok", "canonical": canon.to_dict()}
    lines = [f"K_{{{args.m},{args.n}}}  EBI = {canon.indices}",
             f"canonical: {canon.states_visited} states, {canon.leaves} leaves, {canon.elapsed:.2f}s"]
    code = EXIT_OK
    if args.m * args.n <= NAIVE_MAX_CELLS:
        try:
            naive = naive_search(args.m, args.n, cfg)
        except StateCapExceeded as exc:
            payload["naive"] = {"status": "cap_exceeded", "visited": exc.visited}
            lines.append("naive: state cap exhausted")
        else:
            same = naive.indices == canon.indices
            payload["naive"] = naive.to_dict()
            payload["naive_agrees"] = same
            lines.append(f"naive: {naive.leaves} labelings, {'agrees' if same else 'DISAGREES'}")
            if not same:
                code = EXIT_MISMATCH
    _emit(args.format, payload, "\n".join(lines))
    return code


def cmd_sweep(args) -> int:
    rows = []
    for m in range(3, args.m_max + 1, 2):
        for n in range(2, m, 2):
            code, rep = _verify(m, n)
            c = rep["constructive"]
            rows.append({"m": m, "n": n, "q": rep["q"], "r": rep["r"],
                         "theorem_max": max(rep["theorem"]),
                         "constructive_max": max(c) if c else None,
                         "ok": code == EXIT_OK})
    mismatches = [r for r in rows if not r["ok"]]
    payload = {"m_max": args.m_max, "pairs": len(rows), "mismatches": len(mismatches), "rows": rows}
    lines = ["   m    n    q    r  theorem  constructive  ok"]
    lines += [f"{r['m']:>4} {r['n']:>4} {r['q']:>4} {r['r']:>4} {r['theorem_max']:>8} "
              f"{r['constructive_max']!s:>13}  {'yes' if r['ok'] else 'NO'}" for r in rows]
    lines.append(f"{len(rows)} pairs, {len(mismatches)} mismatches")
    _emit(args.format, payload, "\n".join(lines), rows, fields=SWEEP_FIELDS)
    return EXIT_MISMATCH if mismatches else EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmn-ebi", description="Edge-balanced index sets of K_{m,n}.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
        return sp

    def mn(sp):
        sp.add_argument("m", type=int)
        sp.add_argument("n", type=int)
        return sp

    def search(sp):
        sp.add_argument("--cap", type=int, default=50_000_000, help="oracle state cap")
        sp.add_argument("--threads", type=int, default=1)
        return sp

    common(mn(sub.add_parser("params", help="quotient, remainder, and A-partition"))).set_defaults(
        func=cmd_params)

    sp = common(mn(sub.add_parser("construct", help="emit the index-0 or index-(n-2) labeling")))
    sp.add_argument("--labeling", choices=("f", "fprime"), default="f")
    sp.add_argument("--output", "-o", help="also write the labeling document here")
    sp.set_defaults(func=cmd_construct)

    sp = common(sub.add_parser("summarize", help="re-derive vertex labels of a labeling file"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_summarize)

    sp = common(mn(sub.add_parser("trajectory", help="replay a switch schedule")))
    sp.add_argument("--labeling", choices=("f", "fprime"), default="fprime")
    sp.set_defaults(func=cmd_trajectory)

    sp = common(search(mn(sub.add_parser("verify", help="theorem vs constructions (vs oracle)"))))
    sp.add_argument("--oracle", action="store_true")
    sp.add_argument("--seed", type=int, help="also test random edge-friendly labelings")
    sp.add_argument("--samples", type=int, default=100)
    sp.set_defaults(func=cmd_verify)

    common(search(mn(sub.add_parser("brute", help="exhaustive EBI of any small K_{m,n}")))).set_defaults(
        func=cmd_brute)

    sp = common(sub.add_parser("sweep", help="verify every valid (m, n) with m <= m_max"))
    sp.add_argument("m_max", type=int)
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INVALID
    if getattr(args, "cap", 1) <= 0 or getattr(args, "threads", 1) < 1:
        print("error: --cap and --threads must be positive", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except _Invalid as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
