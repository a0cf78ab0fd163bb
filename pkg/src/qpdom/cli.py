"""Command-line interface: ``qpdom <command> ...``.

Exit status is 0 on success, 1 on usage or input errors and 2 when a run
detects an internal invariant violation (a frontier/oracle mismatch).
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import bounds, generators, oracle, qp_dp, sweep
from .errors import BadParam, ConstructionUnverified, QPDomError
from .tree_core import (
    RootedTree,
    Tree,
    format_edge_list,
    format_parent_array,
    leaves,
    parse_tree,
    root_and_renumber,
    strong_support_vertices,
    support_vertices,
)

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


@dataclass
class RunReport:
    command: str
    input: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps({k: v for k, v in asdict(self).items() if k != "exit_code"}, sort_keys=True)


class _Timer:
    def __init__(self, report: RunReport):
        self.report = report

    def __call__(self, phase: str):
        self.phase = phase
        return self

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timing[self.phase] = max(time.perf_counter() - self.t0, 0.0)


def _load(source: str | Path, fmt: str | None) -> Tree | RootedTree:
    text = sys.stdin.read() if str(source) == "-" else Path(source).read_text()
    return parse_tree(text, fmt)


def _digest(t: Tree | RootedTree) -> dict:
    return {"n": t.n, "delta": int(t.max_degree)}


def _as_tree(t: Tree | RootedTree) -> Tree:
    return t.to_tree() if isinstance(t, RootedTree) else t


def cmd_compute(source, k: int, emit_code: bool = False, fmt: str | None = None) -> RunReport:
    rep = RunReport("compute")
    timer = _Timer(rep)
    with timer("parse"):
        t = _load(source, fmt)
    rep.input = _digest(t)
    with timer("dp"):
        rep.outputs = {"k": k, "value": qp_dp.qp_number_frontier(t, k)}
    if emit_code:
        with timer("code"):
            rep.outputs["code"] = sorted(qp_dp.qp_code(t, k))
    return rep


def cmd_chain(source, fmt: str | None = None) -> RunReport:
    rep = RunReport("chain")
    timer = _Timer(rep)
    with timer("parse"):
        t = _load(source, fmt)
    rep.input = _digest(t)
    with timer("dp"):
        chain = qp_dp.qp_chain(t)
    rep.outputs = {**chain.to_dict(), "gamma": chain.gamma, "flags": chain.flags()}
    return rep


def cmd_verify(source, k: int, members, fmt: str | None = None) -> RunReport:
    rep = RunReport("verify")
    timer = _Timer(rep)
    with timer("parse"):
        t = _as_tree(_load(source, fmt))
    rep.input = _digest(t)
    with timer("check"):
        s = t.check_set(members)
        bad = oracle.violations(t, s, k)
        rep.outputs = {
            "k": k,
            "set": sorted(s),
            "is_dominating": oracle.is_dominating(t, s),
            "is_k_quasiperfect": oracle.is_k_quasiperfect(t, s, k),
            "undominated": bad["undominated"],
            "over_dominated": {str(v): c for v, c in bad["over_dominated"].items()},
        }
    return rep


def cmd_oracle(source, k: int, collect_all: bool = False, fmt: str | None = None) -> RunReport:
    rep = RunReport("oracle")
    timer = _Timer(rep)
    with timer("parse"):
        t = _as_tree(_load(source, fmt))
    rep.input = _digest(t)
    with timer("search"):
        rep.outputs = {"k": k, **oracle.brute_min(t, k, collect_all=collect_all).to_dict()}
    return rep


def cmd_crosscheck(max_n: int, k_policy: str = "all", workers: int = 1, findings: str | None = None) -> RunReport:
    rep = RunReport("crosscheck", input={"max_n": max_n, "k_policy": k_policy})
    kfix = 0 if k_policy == "all" else int(k_policy)
    with _Timer(rep)("sweep"):
        result = sweep.sweep(max_n, kfix, workers)
    rep.outputs = result.summary()
    rep.outputs["findings"] = result.findings()[:20]
    if findings:
        sweep.write_findings(result, findings)
    if result.total("frontier_oracle_mismatches"):
        rep.exit_code = EXIT_INVARIANT
    return rep


# first positional value of ``gen`` per family
_PRIMARY = {
    "path": "n",
    "star": "n",
    "corona": "n",
    "comb": "m",
    "random": "n",
    "random_caterpillar": "n",
    "chain_case11": "delta",
    "chain_case12": "delta",
}


def parse_family(family: str, tokens: list[str], seed: int | None = None) -> generators.FamilySpec:
    name = family.replace("-", "_")
    params: dict = {}
    for tok in tokens:
        key, sep, val = tok.partition("=")
        if not sep:
            if name not in _PRIMARY:
                raise BadParam(f"{family}: use key=value parameters")
            key, val = _PRIMARY[name], tok
        if key == "strict":
            params[key] = [int(x) for x in val.split(",") if x]
        elif key == "pattern":
            params[key] = val
        else:
            params[key] = int(val)
    if seed is not None:
        params.setdefault("seed", seed)
    return generators.FamilySpec(name, params)


def cmd_gen(spec: generators.FamilySpec, fmt: str = "edges") -> tuple[RunReport, str]:
    rep = RunReport("gen", input={"family": spec.family, "params": spec.params})
    with _Timer(rep)("build"):
        t = spec.build()
    header = f"# qpdom {spec.to_json()}\n"
    if fmt == "parent":
        body = format_parent_array(root_and_renumber(t, 1).rooted)
    else:
        body = format_edge_list(t)
    rep.outputs = {"n": t.n, "delta": t.max_degree}
    return rep, header + body


def cmd_bench(sizes: list[int], k: int = 3, seed: int = 0, repetitions: int = 5) -> RunReport:
    if not sizes or sizes != sorted(sizes) or sizes[0] < 1:
        raise BadParam("sizes must be positive and ascending")
    rep = RunReport("bench", input={"sizes": sizes, "k": k, "seed": seed, "repetitions": repetitions})
    rows = []
    qp_dp.qp_number_frontier(generators.path(3), k)  # compile outside the clock
    for n in sizes:
        with _Timer(rep)(f"build_{n}"):
            rt = root_and_renumber(generators.random_tree(n, seed), 1).rooted
        runs = []
        for _ in range(repetitions):
            t0 = time.perf_counter()
            value = qp_dp.qp_number_frontier(rt, k)
            runs.append(time.perf_counter() - t0)
        med = statistics.median(runs)
        rows.append({"n": n, "value": value, "median_s": med, "ns_per_vertex": 1e9 * med / n})
    for prev, cur in zip(rows, rows[1:]):
        cur["ratio"] = cur["median_s"] / prev["median_s"] if prev["median_s"] > 0 else None
    rep.outputs = {"rows": rows}
    rep.timing["dp_total"] = sum(r["median_s"] for r in rows) * repetitions
    return rep


def cmd_analyze(source, fmt: str | None = None) -> RunReport:
    rep = RunReport("analyze")
    timer = _Timer(rep)
    with timer("parse"):
        t = _as_tree(_load(source, fmt))
    rep.input = _digest(t)
    with timer("analysis"):
        gamma = qp_dp.domination_number(t)
        gamma11 = qp_dp.qp_number_frontier(t, 1)
        code = qp_dp.qp_code(t, max(t.max_degree, 1))
        out = {
            "gamma": gamma,
            "gamma_11": gamma11,
            "bound_k1": bounds.upper_bound(gamma, 1),
            "gamma_code": sorted(code),
            "leaves": sorted(leaves(t)),
        }
        if t.n >= 2:
            out["support"] = sorted(support_vertices(t))
            out["strong_support"] = sorted(strong_support_vertices(t))
            out["extremal"] = bounds.extremal_check(t).to_dict()
        out["perfect_closure"] = sorted(bounds.perfect_closure(t, code))
        out["augmentation_k1"] = bounds.augment_code(t, code, 1).to_dict()
    rep.outputs = out
    return rep


# ---------------------------------------------------------------------------
# argparse front end
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _human(rep: RunReport) -> str:
    o = rep.outputs
    if rep.command == "compute":
        lines = [f"gamma_1{o['k']} = {o['value']}"]
        if "code" in o:
            lines.append("code: " + " ".join(map(str, o["code"])))
        return "\n".join(lines)
    if rep.command == "chain":
        lines = [" ".join(map(str, o["values"])), f"gamma = {o['gamma']}  (Delta = {o['delta']})"]
        for i, f in enumerate(o["flags"], start=1):
            lines.append(f"  k={i} {f} k={i + 1}" + ("  strict drop" if f == ">" else ""))
        return "\n".join(lines)
    if rep.command == "verify":
        ok = o["is_k_quasiperfect"]
        lines = [f"{'valid' if ok else 'invalid'} {o['k']}-quasiperfect dominating set"]
        if o["undominated"]:
            lines.append("undominated: " + " ".join(map(str, o["undominated"])))
        for v, c in o["over_dominated"].items():
            lines.append(f"vertex {v}: {c} neighbors in set > {o['k']}")
        return "\n".join(lines)
    if rep.command == "bench":
        lines = []
        for r in o["rows"]:
            ratio = f"  x{r['ratio']:.2f}" if r.get("ratio") else ""
            lines.append(f"n={r['n']:>9}  {r['median_s'] * 1e3:9.2f} ms  {r['ns_per_vertex']:7.1f} ns/vertex{ratio}")
        return "\n".join(lines)
    return json.dumps(o, indent=1, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qpdom", description="k-quasiperfect domination in trees")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_file(sp):
        sp.add_argument("file", help="tree file ('-' for stdin)")
        sp.add_argument("--format", choices=["parent", "edges"], default=None)
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("compute", help="gamma_1k and optionally a witness code")
    add_file(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--emit-code", action="store_true")

    sp = sub.add_parser("chain", help="the full QP-chain")
    add_file(sp)

    sp = sub.add_parser("verify", help="check a vertex set")
    add_file(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--set", required=True, help="comma-separated vertex ids")

    sp = sub.add_parser("oracle", help="brute-force minimum")
    add_file(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--collect-all", action="store_true")

    sp = sub.add_parser("crosscheck", help="exhaustive DP vs oracle sweep")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--k-policy", default="all", help="'all' or a fixed k")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--findings", help="write counterexamples as JSON here")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("gen", help="emit a tree family member")
    sp.add_argument("family", nargs="?")
    sp.add_argument("params", nargs="*", help="value or key=value")
    sp.add_argument("--manifest", help="FamilySpec JSON file instead of family/params")
    sp.add_argument("--format", choices=["parent", "edges"], default="edges")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("analyze", help="extremal structure, closure and augmentation")
    add_file(sp)

    sp = sub.add_parser("bench", help="time the frontier DP on random trees")
    sp.add_argument("--sizes", required=True, help="comma-separated, ascending")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--repetitions", type=int, default=5)
    sp.add_argument("--json", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            rep = cmd_compute(args.file, args.k, args.emit_code, args.format)
        elif args.command == "chain":
            rep = cmd_chain(args.file, args.format)
        elif args.command == "verify":
            members = [int(x) for x in args.set.split(",") if x.strip()]
            rep = cmd_verify(args.file, args.k, members, args.format)
        elif args.command == "oracle":
            rep = cmd_oracle(args.file, args.k, args.collect_all, args.format)
        elif args.command == "crosscheck":
            rep = cmd_crosscheck(args.max_n, args.k_policy, args.workers, args.findings)
        elif args.command == "gen":
            if args.manifest:
                spec = generators.FamilySpec.from_json(Path(args.manifest).read_text())
            elif args.family:
                spec = parse_family(args.family, args.params, args.seed)
            else:
                raise BadParam("gen needs a family or --manifest")
            rep, text = cmd_gen(spec, args.format)
            if args.json:
                rep.outputs["tree"] = text
                print(rep.to_json())
            else:
                sys.stdout.write(text)
            return rep.exit_code
        elif args.command == "analyze":
            rep = cmd_analyze(args.file, args.format)
        else:  # bench
            sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
            rep = cmd_bench(sizes, args.k, args.seed, args.repetitions)
    except ConstructionUnverified as exc:
        print(f"qpdom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (QPDomError, OSError, ValueError) as exc:
        print(f"qpdom: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(rep.to_json() if args.json else _human(rep))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
