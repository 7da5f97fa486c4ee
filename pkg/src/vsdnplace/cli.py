"""Command-line front end: solve, rpf, converge, report.

Exit status: 0 ok, 1 usage/config/parse error, 2 capacity error, 3 I/O error.
Errors go to stderr as a single ``error[<code>]: <message>`` line.
"""
from __future__ import annotations

import argparse
import datetime as dt
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__, kernels
from .errors import VsdnPlaceError
from .output import RunManifest, csv_text, dumps_json, write_csv, write_json, write_text_atomic
from .paths import all_pairs_shortest, dist_csv
from .placement import (
    ALL_OBJECTIVES,
    ObjectiveKind,
    compute_cost_tensor,
    converge_candidates,
    solve_many,
)
from .rpf import rpf_simulate, tradeoff_observed, tradeoff_scan
from .topology import parse_graphml
from .vsdn import generate_vsdns, load_scenario

log = logging.getLogger("vsdnplace")

EXIT_OK, EXIT_CONFIG, EXIT_CAPACITY, EXIT_IO = 0, 1, 2, 3

SOLVE_COLUMNS = ["objective", "controllers", "hypervisors", "worst", "avg", "avg_max", "max_avg"]
SCAN_COLUMNS = ["controller", "hypervisor", "worst", "avg", "avg_max", "max_avg", "cs", "cp", "dptc",
                "reduction", "is_latency_opt_worst", "is_latency_opt_avg", "is_latency_opt_avgmax",
                "is_latency_opt_maxavg", "is_reduction_max"]
PLOT_COLUMNS = ["controller", "hypervisor", "vsdn", "cs", "cp", "dptc"]
OBJECTIVE_CHOICES = [o.value for o in ObjectiveKind] + ["all"]


class UsageError(VsdnPlaceError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error[usage]: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, required=True, help="output directory")
    common.add_argument("--threads", type=int, default=1, help="worker threads, 0 = auto (results are identical)")
    common.add_argument("--quiet", action="store_true", help="suppress progress output")
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--topology", type=Path, required=True, help="Topology Zoo GraphML file")
    model.add_argument("--scenario", type=Path, required=True, help="scenario config (key = value)")
    model.add_argument("--dump-dist", action="store_true", help="also write distances.csv")

    parser = _Parser(prog="vsdnplace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common, model], help="optimal placement per latency objective")
    p.add_argument("--objective", choices=OBJECTIVE_CHOICES, default="all")

    p = sub.add_parser("rpf", parents=[common, model], help="reverse path-flow load analysis")
    p.add_argument("--controller", type=int, help="controller node index (with --hypervisor)")
    p.add_argument("--hypervisor", type=int, help="hypervisor node index (with --controller)")
    p.add_argument("--scan", action="store_true", help="scan every candidate (controller, hypervisor) pair")

    p = sub.add_parser("converge", parents=[common, model], help="winning placements over regenerated scenarios")
    p.add_argument("--iterations", type=int, default=100)

    sub.add_parser("report", parents=[common], help="summarize solve + scan outputs in --out")
    return parser


class _Inputs:
    def __init__(self, args):
        scenario_text = args.scenario.read_text(encoding="utf-8")
        topo_bytes = args.topology.read_bytes()
        # Validate the config alone first so key errors beat topology errors.
        config = load_scenario(scenario_text)
        self.topology = parse_graphml(topo_bytes, speed_km_per_ms=config.propagation_speed_km_per_ms,
                                      default_link_latency_ms=config.default_link_latency_ms)
        config.check_topology(self.topology.num_nodes)
        self.config = config
        self.table = all_pairs_shortest(self.topology, threads=args.threads)
        self.vsdns = generate_vsdns(config, self.topology)
        self.costs = compute_cost_tensor(self.table, self.vsdns,
                                         config.hypervisor_candidates, config.controller_candidates)

    def node_rows(self):
        return [[n.index, n.source_id, n.label,
                 "" if n.latitude is None else n.latitude,
                 "" if n.longitude is None else n.longitude] for n in self.topology.nodes]

    def node_records(self):
        return [{"index": n.index, "source_id": n.source_id, "label": n.label} for n in self.topology.nodes]


def _write_common(args, inputs: _Inputs, outputs: list[str]) -> None:
    write_csv(args.out / "nodes.csv", ["index", "source_id", "label", "latitude", "longitude"], inputs.node_rows())
    outputs.append("nodes.csv")
    if args.dump_dist:
        write_text_atomic(args.out / "distances.csv", dist_csv(inputs.table))
        outputs.append("distances.csv")


def cmd_solve(args, outputs: list[str]) -> _Inputs:
    inputs = _Inputs(args)
    objectives = ALL_OBJECTIVES if args.objective == "all" else (ObjectiveKind(args.objective),)
    results = solve_many(objectives, inputs.config, inputs.costs, inputs.vsdns, threads=args.threads)
    records = [results[o].as_record() for o in objectives]
    write_json(args.out / "solve.json", {"nodes": inputs.node_records(), "results": records})
    write_csv(args.out / "solve.csv", SOLVE_COLUMNS, [
        [r["objective"], r["controllers"], r["hypervisors"], r["metrics"]["worst"], r["metrics"]["avg"],
         r["metrics"]["avg_max"], r["metrics"]["max_avg"]] for r in records
    ])
    outputs += ["solve.json", "solve.csv"]
    _write_common(args, inputs, outputs)
    for r in records:
        log.info("%-7s C=%s H=%s value=%.4f ms", r["objective"], r["controllers"], r["hypervisors"],
                 r["objective_value"])
    return inputs


def _plot_rows(loads):
    return [[load.controller, load.hypervisor, v, *load.per_vsdn[v]] for load in loads for v in sorted(load.per_vsdn)]


def cmd_rpf(args, outputs: list[str]) -> _Inputs:
    single = args.controller is not None or args.hypervisor is not None
    if args.scan == single:
        raise UsageError("give either --scan or both --controller and --hypervisor")
    if single and (args.controller is None or args.hypervisor is None):
        raise UsageError("--controller and --hypervisor go together")
    inputs = _Inputs(args)
    cfg = inputs.config
    if args.scan:
        rows = tradeoff_scan(inputs.table, inputs.vsdns, cfg.controller_candidates, cfg.hypervisor_candidates,
                             inputs.costs, cfg.c_proc_ms, cfg.h_proc_ms)
        records = []
        for r in rows:
            rec = {"controller": r.controller, "hypervisor": r.hypervisor, **r.metrics.as_dict(),
                   **{k: v for k, v in r.load.as_dict().items() if k not in ("controller", "hypervisor")},
                   "latency_optimal": sorted(o.value for o in r.latency_optimal),
                   "reduction_max": r.reduction_max}
            records.append(rec)
        write_json(args.out / "scan.json", {
            "nodes": inputs.node_records(),
            "c_proc_ms": cfg.c_proc_ms,
            "h_proc_ms": cfg.h_proc_ms,
            "rows": records,
            "tradeoff_observed": tradeoff_observed(rows),
        })
        write_csv(args.out / "scan.csv", SCAN_COLUMNS, [
            [r.controller, r.hypervisor, r.metrics.worst, r.metrics.avg, r.metrics.avg_max, r.metrics.max_avg,
             r.load.cs, r.load.cp, r.load.dptc, r.load.reduction,
             *(o in r.latency_optimal for o in ALL_OBJECTIVES), r.reduction_max]
            for r in rows
        ])
        write_csv(args.out / "scan_plot.csv", PLOT_COLUMNS, _plot_rows([r.load for r in rows]))
        outputs += ["scan.json", "scan.csv", "scan_plot.csv"]
        log.info("scanned %d pairs; trade-off observed: %s", len(rows), tradeoff_observed(rows))
    else:
        n = inputs.topology.num_nodes
        for name, idx in (("--controller", args.controller), ("--hypervisor", args.hypervisor)):
            if not 0 <= idx < n:
                raise UsageError(f"{name} {idx} is not a node index (0..{n - 1})")
        load = rpf_simulate(inputs.table, inputs.vsdns, args.controller, args.hypervisor,
                            cfg.c_proc_ms, cfg.h_proc_ms)
        write_json(args.out / "rpf.json", {"nodes": inputs.node_records(), "load": load.as_dict(),
                                           "c_proc_ms": cfg.c_proc_ms, "h_proc_ms": cfg.h_proc_ms})
        write_csv(args.out / "rpf.csv", ["controller", "hypervisor", "cs", "cp", "dptc", "reduction"],
                  [[load.controller, load.hypervisor, load.cs, load.cp, load.dptc, load.reduction]])
        write_csv(args.out / "rpf_plot.csv", PLOT_COLUMNS, _plot_rows([load]))
        outputs += ["rpf.json", "rpf.csv", "rpf_plot.csv"]
        log.info("C=%d H=%d cs=%d cp=%d dptc=%d reduction=%.4f", load.controller, load.hypervisor,
                 load.cs, load.cp, load.dptc, load.reduction)
    _write_common(args, inputs, outputs)
    return inputs


def cmd_converge(args, outputs: list[str]) -> _Inputs:
    if args.iterations < 1:
        raise UsageError("--iterations must be >= 1")
    inputs = _Inputs(args)
    tables = converge_candidates(inputs.config, inputs.topology, args.iterations,
                                 threads=args.threads, table=inputs.table)
    rows, payload = [], {}
    for obj in ALL_OBJECTIVES:
        payload[obj.value] = []
        for rank, (placement, wins) in enumerate(tables[obj], 1):
            rows.append([obj.value, rank, placement.controllers, placement.hypervisors, wins])
            payload[obj.value].append({"controllers": list(placement.controllers),
                                       "hypervisors": list(placement.hypervisors), "wins": wins})
    write_csv(args.out / "converge.csv", ["objective", "rank", "controllers", "hypervisors", "wins"], rows)
    write_json(args.out / "converge.json", {"iterations": args.iterations, "base_seed": inputs.config.seed,
                                            "nodes": inputs.node_records(), "tables": payload})
    outputs += ["converge.csv", "converge.json"]
    _write_common(args, inputs, outputs)
    for obj in ALL_OBJECTIVES:
        top, wins = tables[obj][0]
        log.info("%-7s most frequent %s (%d/%d)", obj.value, top.label(), wins, args.iterations)
    return inputs


def _load_json(path: Path, what: str):
    if not path.is_file():
        raise UsageError(f"{path} not found; run `vsdnplace {what}` with the same --out first")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from None


def render_report(scan: dict, solve: dict | None) -> str:
    labels = {n["index"]: n["label"] for n in scan.get("nodes", [])}

    def name(i):
        return f"{i} ({labels[i]})" if labels.get(i) else str(i)

    rows = scan["rows"]
    lines = ["Controller/hypervisor trade-off summary", "=" * 39, ""]
    lines.append(f"pairs scanned: {len(rows)}   c_proc_ms={scan['c_proc_ms']}   h_proc_ms={scan['h_proc_ms']}")
    lines.append("")
    lines.append("Latency-optimal single pairs:")
    for obj in ALL_OBJECTIVES:
        r = next(r for r in rows if obj.value in r["latency_optimal"])
        lines.append(f"  {obj.value:<7} controller {name(r['controller'])}, hypervisor {name(r['hypervisor'])}: "
                     f"{r[obj.metric]:.4f} ms, reduction {r['reduction']:.4f}")
    top = next(r for r in rows if r["reduction_max"])
    lines.append("")
    lines.append(f"Reduction-maximal pair: controller {name(top['controller'])}, hypervisor {name(top['hypervisor'])}: "
                 f"reduction {top['reduction']:.4f} (cs={top['cs']}, cp={top['cp']}, dptc={top['dptc']})")
    lines.append("  latencies there: " + ", ".join(f"{o.value}={top[o.metric]:.4f} ms" for o in ALL_OBJECTIVES))
    lines.append("")
    if len(rows) == 1:
        lines.append("Verdict: no trade-off possible (single candidate pair).")
    elif scan["tradeoff_observed"]:
        losing = [o.value for o in ALL_OBJECTIVES if o.value not in top["latency_optimal"]]
        lines.append("Verdict: trade-off observed. The pair that blocks the most hypervisor load is not "
                     f"latency-optimal for: {', '.join(losing)}.")
    else:
        lines.append("Verdict: no trade-off observed. One pair is both latency-optimal and reduction-maximal.")
    if solve:
        lines += ["", "Optimal placements (full search space):"]
        for r in solve["results"]:
            lines.append(f"  {r['objective']:<7} controllers {[name(c) for c in r['controllers']]}, "
                         f"hypervisors {[name(h) for h in r['hypervisors']]}: {r['objective_value']:.4f} ms")
    return "\n".join(lines) + "\n"


def cmd_report(args, outputs: list[str]) -> None:
    scan = _load_json(args.out / "scan.json", "rpf --scan")
    solve_path = args.out / "solve.json"
    solve = _load_json(solve_path, "solve") if solve_path.exists() else None
    text = render_report(scan, solve)
    write_text_atomic(args.out / "report.txt", text)
    outputs.append("report.txt")
    if not args.quiet:
        sys.stdout.write(text)


COMMANDS = {"solve": cmd_solve, "rpf": cmd_rpf, "converge": cmd_converge, "report": cmd_report}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    started = dt.datetime.now(dt.timezone.utc)
    t0 = time.perf_counter()
    outputs: list[str] = []
    try:
        if args.threads < 0:
            raise UsageError("--threads must be >= 0")
        inputs = COMMANDS[args.command](args, outputs)
        manifest = RunManifest(
            command=args.command,
            topology=str(getattr(args, "topology", None) or "") or None,
            scenario=str(getattr(args, "scenario", None) or "") or None,
            output_dir=str(args.out),
            tool_version=__version__,
            backend=kernels.BACKEND,
            threads=args.threads,
            config=inputs.config.as_dict() if inputs else None,
            outputs=outputs,
            started_at=started.isoformat(timespec="seconds"),
            duration_s=round(time.perf_counter() - t0, 6),
        )
        write_text_atomic(args.out / f"manifest-{args.command}.json", manifest.to_json())
    except VsdnPlaceError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_status
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
