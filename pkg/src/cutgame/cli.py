"""Command line interface.

Exit codes: 0 success or confirmed, 1 verification failure, 2 usage error,
3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable

from . import closedform, correspondence
from .closedform import ONE_THREE_EVEN, ClosedFormFamily, classify_cutset, family_grundy, row_table
from .engine import CutSet, get_table
from .errors import CutGameError, DomainError, ResourceLimitError
from .periodicity import detect
from .report import CONFIRMED, VerdictReport
from .strategy import Analyzer, Position

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

FORMATS = ("text", "json", "csv")


@dataclass
class OutputDocument:
    command: str
    parameters: dict[str, Any]
    payload: Any
    format: str = "text"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputDocument":
        return cls(**json.loads(text))


class UsageError(CutGameError):
    pass


def parse_int_list(text: str) -> list[int]:
    """'4,6' -> [4, 6]; '4..7' -> [4, 5, 6, 7]; pieces may be mixed."""
    out: list[int] = []
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if ".." in piece:
                lo, hi = piece.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(piece))
    except ValueError:
        raise UsageError(f"malformed integer list {text!r}") from None
    if not out:
        raise UsageError(f"empty integer list {text!r}")
    return out


def parse_cutset(text: str) -> CutSet:
    try:
        return CutSet.parse(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _fmt_set(values) -> str:
    return "{" + ",".join(map(str, values)) + "}"


def _csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


# Commands ------------------------------------------------------------------


def cmd_seq(args) -> tuple[OutputDocument, int]:
    cutset = parse_cutset(args.cutset)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    params = {"cutset": list(cutset.cuts), "n": args.n, "closed_form": args.closed_form}
    if args.closed_form:
        family = classify_cutset(cutset)
        if family is None:
            raise UsageError(f"no proven closed form for cut-set {cutset}")
        params["family"] = str(family)
        values = [family_grundy(n, family) for n in range(1, args.n + 1)]
    else:
        values = get_table(cutset).values(args.n)
    return OutputDocument("seq", params, {"values": values}, args.format), EXIT_OK


def cmd_nimset(args) -> tuple[OutputDocument, int]:
    cutset = parse_cutset(args.cutset)
    ns, ps = parse_int_list(args.n), parse_int_list(args.p)
    if min(ns) < 1 or min(ps) < 1:
        raise UsageError("--n and --p must be >= 1")
    table = get_table(cutset)
    rows = [{"n": n, "p": p, "values": table.nim_set(n, p).to_list()} for p in ps for n in ns]
    params = {"cutset": list(cutset.cuts), "n": ns, "p": ps}
    return OutputDocument("nimset", params, {"nim_sets": rows}, args.format), EXIT_OK


def cmd_table(args) -> tuple[OutputDocument, int]:
    if args.c < 2:
        raise UsageError("--c must be >= 2")
    rows = row_table(args.c)
    return OutputDocument("table", {"c": args.c}, {"rows": rows}, args.format), EXIT_OK


def _c_values(args, default: list[int]) -> list[int]:
    return parse_int_list(args.c) if args.c else default


def _verify_tasks(args) -> list[tuple[Callable[..., VerdictReport], tuple]]:
    t = args.target
    n = args.n
    p_range = parse_int_list(args.p) if args.p else None
    if t == "theorem1":
        return [(closedform.verify_theorem1, (c, n or 30 * c)) for c in _c_values(args, [2, 3, 4, 5, 6])]
    if t == "theorem5":
        return [(correspondence.verify_theorem5, (c, n or 24 * c)) for c in _c_values(args, [4, 5, 6])]
    if t == "theorem8":
        groups = [parse_int_list(args.c)] if args.c else [[2, 3], [3, 4, 5]]
        return [(closedform.verify_theorem8, (g, n or 80)) for g in groups]
    if t == "lemma3":
        p_max = max(p_range) if p_range else 6
        return [(correspondence.verify_lemma_three, (c, args.k or 40, p_max)) for c in _c_values(args, [4, 5])]
    if t == "claim":
        return [(correspondence.verify_claim_table, ())]
    if t in ("cor2", "stick", "lemma7"):
        fn = {
            "cor2": correspondence.verify_corollary_two,
            "stick": correspondence.verify_stick,
            "lemma7": correspondence.verify_lemma_seven,
        }[t]
        return [(fn, (c, n or 40, p_range or [4, 5, 6, 7])) for c in _c_values(args, [2, 3])]
    if t in ("lemma1", "entering"):
        fn = correspondence.verify_lemma_one if t == "lemma1" else correspondence.verify_entering_lemma
        return [(fn, (c, n or 36, p_range or [4])) for c in _c_values(args, [2, 3])]
    if t == "rem1":
        p_max = max(p_range) if p_range else 4
        return [(correspondence.verify_rem1, (c, n or 40, p_max)) for c in _c_values(args, [2, 3])]
    if t == "maplemma":
        return [(correspondence.verify_map_lemma, (c, n or 24 * c)) for c in _c_values(args, [4, 5])]
    if t == "height":
        p_max = max(p_range) if p_range else 3
        return [(correspondence.verify_height, (c, n or 30, p_max)) for c in _c_values(args, [2, 3])]
    if t == "special":
        return [(correspondence.verify_special_clause, (c, 1)) for c in _c_values(args, [2, 3])]
    if t == "observations":
        return [(closedform.verify_observations, (c, args.periods or 3)) for c in _c_values(args, list(range(2, 9)))]
    if t == "prop1":
        return [(closedform.verify_prop1, (c, args.periods or 5)) for c in _c_values(args, [2, 3])]
    if t == "table1":
        return [(closedform.verify_table1, (n or 60,))]
    raise UsageError(f"unknown verify target {t!r}")


def _call(task):
    fn, fargs = task
    return fn(*fargs)


VERIFY_TARGETS = (
    "theorem1", "theorem5", "theorem8", "lemma3", "claim", "cor2", "stick", "lemma7",
    "rem1", "maplemma", "observations", "prop1", "table1", "lemma1", "entering", "height", "special",
)


def cmd_verify(args) -> tuple[OutputDocument, int]:
    tasks = _verify_tasks(args)
    try:
        if args.threads > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=args.threads) as pool:
                reports = list(pool.map(_call, tasks))
        else:
            reports = [_call(t) for t in tasks]
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    ok = all(r.ok for r in reports)
    params = {"target": args.target, "c": args.c, "n": args.n, "p": args.p, "k": args.k, "periods": args.periods}
    payload = {"all_confirmed": ok, "reports": [r.to_dict() for r in reports]}
    return OutputDocument("verify", params, payload, args.format), EXIT_OK if ok else EXIT_FAILED


def cmd_period(args) -> tuple[OutputDocument, int]:
    cutset = parse_cutset(args.cutset)
    if args.min_periods < 2:
        raise UsageError("--min-periods must be >= 2")
    values = get_table(cutset).values(args.n)
    report = detect(values, args.min_periods)
    params = {"cutset": list(cutset.cuts), "n": args.n, "min_periods": args.min_periods}
    return OutputDocument("period", params, report.to_dict(), args.format), EXIT_OK


def cmd_move(args) -> tuple[OutputDocument, int]:
    cutset = parse_cutset(args.cutset)
    piles = parse_int_list(args.piles)
    try:
        pos = Position(piles, cutset)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    analyzer = Analyzer(cutset)
    value = analyzer.position_value(pos.piles)
    move = analyzer.best_move(pos)
    payload: dict[str, Any] = {
        "value": value,
        "outcome": "P-position" if value == 0 else "N-position",
        "move": move.to_dict() if move else None,
    }
    if move:
        payload["result"] = list(move.apply(pos).piles)
    params = {"cutset": list(cutset.cuts), "piles": piles}
    return OutputDocument("move", params, payload, args.format), EXIT_OK


def _explore_cutset(args) -> tuple[CutSet, Callable[[int], int] | None, str | None]:
    xs = parse_int_list(args.x) if args.x else []
    ys = parse_int_list(args.y) if args.y else []
    if any(x % 2 or x < 4 for x in xs):
        raise UsageError("--x must list even numbers >= 4")
    if any(y % 2 == 0 or y < 5 for y in ys):
        raise UsageError("--y must list odd numbers >= 5")
    fam = args.family
    if fam == "A":
        if not xs:
            raise UsageError("family A needs --x")
        cutset = CutSet(sorted({1, 3, *xs, *ys}))
        target = ClosedFormFamily(ONE_THREE_EVEN, min(xs) // 2)
        return cutset, lambda n: family_grundy(n, target), f"(0,1)^{min(xs) // 2}(+2)"
    if fam == "B":
        if not xs or not ys:
            raise UsageError("family B needs --x and --y")
        cutset = CutSet(sorted({1, *xs, *ys}))
        x, y = min(xs), min(ys)
        if 3 * x < y:
            reduced = get_table([1, x])
            return cutset, reduced.grundy, f"G_{{1,{x}}}"
        return cutset, None, None
    if fam == "C":
        if not args.cutset:
            raise UsageError("family C needs --cutset")
        cutset = parse_cutset(args.cutset)
        if not ({1, 2} <= set(cutset.cuts) and 3 not in cutset and cutset.cuts != (1, 2)):
            raise UsageError("family C needs {1,2} in the cut-set, 3 absent, and more than {1,2}")
        return cutset, None, None
    return CutSet([1, 2]), None, None


def cmd_explore(args) -> tuple[OutputDocument, int]:
    cutset, target, target_name = _explore_cutset(args)
    values = get_table(cutset).values(args.n)
    report = detect(values, args.min_periods)
    payload: dict[str, Any] = {
        "cutset": list(cutset.cuts),
        "values": values,
        "period": report.to_dict(),
        "target": target_name,
    }
    if target is not None:
        divergence = next((n for n, v in enumerate(values, start=1) if v != target(n)), None)
        payload["target_values"] = [target(n) for n in range(1, args.n + 1)]
        payload["agree_up_to"] = args.n if divergence is None else divergence - 1
        payload["divergence"] = divergence
        payload["status"] = CONFIRMED if divergence is None else "diverged"
    else:
        payload["status"] = report.status
    params = {"family": args.family, "x": args.x, "y": args.y, "cutset": args.cutset, "n": args.n}
    return OutputDocument("explore", params, payload, args.format), EXIT_OK


# Rendering -----------------------------------------------------------------


def render_text(doc: OutputDocument) -> str:
    p = doc.payload
    if doc.command == "seq":
        return ",".join(map(str, p["values"]))
    if doc.command == "nimset":
        return "\n".join(f"N({r['n']},{r['p']}) = {_fmt_set(r['values'])}" for r in p["nim_sets"])
    if doc.command == "table":
        width = max(len(str(v)) for row in p["rows"] for v in row)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in p["rows"])
    if doc.command == "verify":
        lines = []
        for r in p["reports"]:
            line = f"{r['lemma_id']} {r['parameters']} {r['window']}: {r['status']} ({r['checked']} checks)"
            if r["counterexample"]:
                line += f" counterexample={r['counterexample']}"
            lines.append(line)
        lines.append("all confirmed" if p["all_confirmed"] else "FAILED")
        return "\n".join(lines)
    if doc.command == "period":
        if p["status"] != CONFIRMED:
            return f"not-found on window 1..{p['verified_up_to']}"
        return (
            f"preperiod={p['preperiod']} period={p['period']} saltus={p['saltus']} "
            f"({p['status']}, n<={p['verified_up_to']})"
        )
    if doc.command == "move":
        head = f"value={p['value']} {p['outcome']}"
        if p["move"] is None:
            return head + "\nno winning move"
        m = p["move"]
        return head + f"\nsplit pile {m['pile_index']} into {'+'.join(map(str, m['replacement']))}"
    if doc.command == "explore":
        lines = [f"cut-set {_fmt_set(p['cutset'])}", ",".join(map(str, p["values"]))]
        per = p["period"]
        if per["status"] == CONFIRMED:
            lines.append(f"detector: preperiod={per['preperiod']} period={per['period']} saltus={per['saltus']}")
        else:
            lines.append("detector: not-found")
        if p["target"]:
            if p.get("divergence") is None and "divergence" in p:
                lines.append(f"matches {p['target']} on 1..{p['agree_up_to']} (confirmed-on-window)")
            elif "divergence" in p:
                lines.append(f"diverges from {p['target']} at n={p['divergence']}")
        return "\n".join(lines)
    return json.dumps(p)


def render_csv(doc: OutputDocument) -> str:
    p = doc.payload
    if doc.command == "seq":
        return _csv([["n", "value"]] + [[n, v] for n, v in enumerate(p["values"], start=1)])
    if doc.command == "nimset":
        rows = [["n", "p", "value"]]
        for r in p["nim_sets"]:
            rows += [[r["n"], r["p"], v] for v in r["values"]]
        return _csv(rows)
    if doc.command == "table":
        return _csv([["row"] + [f"col{j + 1}" for j in range(len(p["rows"][0]))]] + [[i + 1] + row for i, row in enumerate(p["rows"])])
    if doc.command == "verify":
        rows = [["lemma_id", "parameters", "window", "status", "checked", "counterexample"]]
        for r in p["reports"]:
            rows.append([
                r["lemma_id"], json.dumps(r["parameters"]), json.dumps(r["window"]), r["status"], r["checked"],
                json.dumps(r["counterexample"]) if r["counterexample"] else "",
            ])
        return _csv(rows)
    if doc.command == "period":
        return _csv([["field", "value"]] + [[k, "" if v is None else v] for k, v in p.items()])
    if doc.command == "move":
        m = p["move"]
        return _csv([["pile_index", "replacement", "value"], [
            "" if m is None else m["pile_index"], "" if m is None else " ".join(map(str, m["replacement"])), p["value"],
        ]])
    if doc.command == "explore":
        target = p.get("target_values")
        rows = [["n", "value", "target"]]
        for n, v in enumerate(p["values"], start=1):
            rows.append([n, v, "" if target is None else target[n - 1]])
        return _csv(rows)
    raise ValueError(doc.command)


def render(doc: OutputDocument) -> str:
    if doc.format == "json":
        return doc.to_json()
    if doc.format == "csv":
        return render_csv(doc)
    return render_text(doc)


# Parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")

    parser = argparse.ArgumentParser(prog="cutgame", description="Nim-values of the partition game CUT.")
    parser.add_argument("--threads", type=int, default=1, help="max worker processes for verify sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", parents=[common], help="nim-sequence G(1..n)")
    s.add_argument("--cutset", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--closed-form", action="store_true", help="use a proven closed form instead of the engine")
    s.set_defaults(func=cmd_seq)

    s = sub.add_parser("nimset", parents=[common], help="nim-sets N(n, p)")
    s.add_argument("--cutset", required=True)
    s.add_argument("--n", required=True, help="pile size, list or range like 1..19")
    s.add_argument("--p", required=True, help="pile count, list or range")
    s.set_defaults(func=cmd_nimset)

    s = sub.add_parser("table", parents=[common], help="first period for {1,2c} as six rows")
    s.add_argument("--c", type=int, required=True)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify", parents=[common], help="bounded check of a stated result")
    s.add_argument("target", choices=VERIFY_TARGETS)
    s.add_argument("--c", help="c value(s); for theorem8 the list c_1,c_2,...")
    s.add_argument("--n", type=int, help="upper end of the n window (bound for maplemma, part size for height)")
    s.add_argument("--p", help="pile counts, e.g. 4..7")
    s.add_argument("--k", type=int, help="k window for lemma3")
    s.add_argument("--periods", type=int, help="number of periods for observations/prop1")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("period", parents=[common], help="detect arithmetic periodicity")
    s.add_argument("--cutset", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--min-periods", type=int, default=3)
    s.set_defaults(func=cmd_period)

    s = sub.add_parser("move", parents=[common], help="winning move in a multi-pile position")
    s.add_argument("--cutset", required=True)
    s.add_argument("--piles", required=True)
    s.set_defaults(func=cmd_move)

    s = sub.add_parser("explore", parents=[common], help="empirical sweep of an open family")
    s.add_argument("family", choices=("A", "B", "C", "D"))
    s.add_argument("--x", help="even numbers >= 4")
    s.add_argument("--y", help="odd numbers >= 5")
    s.add_argument("--cutset", help="full cut-set (family C)")
    s.add_argument("--n", type=int, default=80)
    s.add_argument("--min-periods", type=int, default=3)
    s.set_defaults(func=cmd_explore)
    return parser


def run(argv: list[str] | None = None) -> tuple[str, int]:
    """Run a command and return (rendered output, exit code)."""
    args = build_parser().parse_args(argv)
    try:
        doc, code = args.func(args)
    except (UsageError, DomainError) as exc:
        return f"error: {exc}", EXIT_USAGE
    except ResourceLimitError as exc:
        return f"error: {exc}", EXIT_RESOURCE
    return render(doc), code


def main(argv: list[str] | None = None) -> int:
    out, code = run(argv)
    stream = sys.stderr if out.startswith("error:") and code in (EXIT_USAGE, EXIT_RESOURCE) else sys.stdout
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
