"""Command-line front end: build, schedule, verify, compare, ls."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from celltiler import decomp
from celltiler.circuit import GateKind, swap_metrics, t_metrics
from celltiler.lsx import ModeError, extract_ls, validate_ls
from celltiler.router import compare, compare_csv
from celltiler.scheduler import (
    ScheduleError,
    ctrl_add_step,
    full_multiplier_schedule,
    render_timeline,
    reset_step,
    timeline_rows,
    toffoli_step,
    validate_schedule,
)
from celltiler.sim import assert_equiv, classical_run
from celltiler.tiler import (
    RegisterSpec,
    build_multiplier_layout,
    effectiveness_ratio,
    initial_mapping,
    qubit_count,
    usage_ratio,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

DECOMPS = {
    "ccz_tdepth1": (decomp.ccz_tdepth1, "ccz", ("a", "b", "c"), "CCZ"),
    "toffoli_tdepth2": (decomp.toffoli_tdepth2, "toffoli", ("a", "b", "t"), "Toffoli"),
    "toffoli_mb": (decomp.toffoli_mb, "toffoli", ("a", "b", "t"), "Toffoli"),
    "controlled_s": (decomp.controlled_s, "cs", ("q1", "q2"), "CS"),
    "and_4anc": (decomp.and_4anc, "and", ("a", "b", "t"), "AND"),
    "and_3anc": (decomp.and_3anc, "and", ("a", "b", "t"), "AND"),
}


def _cmd_build(args) -> int:
    n = args.n
    layout = build_multiplier_layout(n)
    spec = RegisterSpec.for_width(n)
    mapping = initial_mapping(layout, spec)
    used = len(layout.used_sites())
    comp = len(layout.computational_sites())
    size = layout.lattice.size
    print(f"{qubit_count(n)} qubits, usage {used}/{size}, effectiveness {comp}/{size}")
    if args.out:
        payload = json.loads(layout.to_json())
        payload["mapping"] = {str(k): [s.x, s.y, s.z] for k, s in sorted(mapping.items(), key=lambda kv: str(kv[0]))}
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True))
        print(f"layout written to {args.out}")
    return EXIT_OK


def _cmd_schedule(args) -> int:
    n = args.n
    sched, _final = full_multiplier_schedule(n, optimize_toffoli_depth=args.optimize_toffoli_depth)
    layout = build_multiplier_layout(n)
    spec = RegisterSpec.for_width(n)
    mapping = initial_mapping(layout, spec)

    step, m1 = toffoli_step(layout, mapping, spec, optimize_depth=args.optimize_toffoli_depth)
    c, d = swap_metrics(step)
    print(f"toffoli step: swapC={c} swapD={d}")
    for j in range(1, n):
        step, m1 = ctrl_add_step(layout, m1, j, spec)
        c, d = swap_metrics(step)
        print(f"ctrl-add {j}: swapC={c} swapD={d}")
        if j <= n - 2:
            step, m1 = reset_step(layout, m1, j, spec)
            c, d = swap_metrics(step)
            print(f"reset {j}: swapC={c} swapD={d}")

    out = sched
    if args.lower_clifford_t:
        out = decomp.lower_schedule(sched, style="tdepth2")
    c, d = swap_metrics(sched)
    tc, td = t_metrics(out)
    print(f"total: swapC={c} swapD={d} tC={tc} tD={td} moments={len(out)}")
    if args.out:
        Path(args.out).write_text(out.to_json())
        print(f"schedule written to {args.out}")
    if args.timeline:
        print(render_timeline(sched))
    return EXIT_OK


def _cmd_verify(args) -> int:
    target = args.target
    if target.isdigit():
        n = int(target)
        if n < 1:
            print("operand width must be >= 1", file=sys.stderr)
            return EXIT_USAGE
        if n > 4:
            print("exhaustive verification supports n <= 4", file=sys.stderr)
            return EXIT_USAGE
        layout = build_multiplier_layout(n)
        spec = RegisterSpec.for_width(n)
        mapping = initial_mapping(layout, spec)
        sched, _ = full_multiplier_schedule(n)
        report = validate_schedule(layout, mapping, sched)
        if not report.ok:
            print(f"adjacency violations: {len(report.violations)}")
            return EXIT_FAIL
        good = 0
        cases = 0
        for a in range(2 ** n):
            for b in range(2 ** n):
                bits = {spec.a[i]: (a >> i) & 1 for i in range(n)}
                bits |= {spec.b[i]: (b >> i) & 1 for i in range(n)}
                out = classical_run(sched, mapping, bits)
                p = sum(out[spec.p[k]] << k for k in range(2 * n))
                ok = (
                    p == a * b
                    and all(out[spec.a[i]] == (a >> i) & 1 for i in range(n))
                    and all(out[spec.b[i]] == (b >> i) & 1 for i in range(n))
                    and out[spec.z] == 0
                )
                cases += 1
                good += ok
        print(f"{good}/{cases} products correct")
        return EXIT_OK if good == cases else EXIT_FAIL
    if target not in DECOMPS:
        print(f"unknown verification target {target!r}", file=sys.stderr)
        return EXIT_USAGE
    build, ref, data, name = DECOMPS[target]
    report = assert_equiv(build(), ref, data, tol=1e-10)
    if report.ok:
        print(f"equivalent to {name}, tol 1e-10")
        return EXIT_OK
    print(f"NOT equivalent to {name}: {report.detail}")
    return EXIT_FAIL


def _cmd_compare(args) -> int:
    if not (2 <= args.nmin <= args.nmax):
        print("need 2 <= n-min <= n-max", file=sys.stderr)
        return EXIT_USAGE
    rows = compare(range(args.nmin, args.nmax + 1))
    text = compare_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text)
        print(f"comparison written to {args.csv}")
    else:
        print(text, end="")
    for r in rows:
        print(
            f"n={r['n']}: routed/tiled swapC ratio {r['ratio_swapC']:.2f}, "
            f"swapD ratio {r['ratio_swapD']:.2f}"
        )
    return EXIT_OK


def _cmd_ls(args) -> int:
    n = args.n
    layout = build_multiplier_layout(n)
    sched, _ = full_multiplier_schedule(n)
    lowered = decomp.lower_schedule(sched, style="tdepth2")
    try:
        program = extract_ls(lowered, layout, args.mode)
    except ModeError as exc:
        print(f"mode-error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = validate_ls(program, args.mode)
    bound = 2 if args.mode == "2d" else 4
    cnots = lowered.count(GateKind.CNOT)
    print(f"CNOTs in: {cnots}, LS patterns: {program.pattern_count}, "
          f"transversal: {program.transversal_count}, steps: {len(program.steps)}")
    if report.ok:
        print(f"parallel bound {bound}: satisfied")
    else:
        print(f"parallel bound {bound}: {len(report.violations)} violations")
    if args.out:
        Path(args.out).write_text(program.to_json())
        print(f"program written to {args.out}")
    return EXIT_OK if report.ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="celltiler",
        description="Standard-cell tiling and SWAP scheduling for Toffoli circuits",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("build", help="build a multiplier layout")
    p.add_argument("n", type=int)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("schedule", help="emit the multiplier schedule and metrics")
    p.add_argument("n", type=int)
    p.add_argument("--optimize-toffoli-depth", action="store_true")
    p.add_argument("--lower-clifford-t", action="store_true")
    p.add_argument("--timeline", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_schedule)

    p = sub.add_parser("verify", help="verify a multiplier width or decomposition")
    p.add_argument("target")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("compare", help="tiled vs greedy-routed SWAP metrics")
    p.add_argument("nmin", type=int)
    p.add_argument("nmax", type=int)
    p.add_argument("--csv", default=None)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("ls", help="extract a lattice-surgery program")
    p.add_argument("n", type=int)
    p.add_argument("mode", choices=["2d", "3d"])
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_ls)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (ValueError, ScheduleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
