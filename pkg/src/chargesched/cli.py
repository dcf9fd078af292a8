"""Command line front end: single runs, sweeps and oracle checks."""

from __future__ import annotations

import argparse
import sys

from . import harness, verify


def _parse_seeds(text: str) -> tuple[int, ...]:
    # "0-29" or "3,7,11" or a mix: "0-4,9"
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def _parse_values(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def _scenario_params(args) -> harness.ScenarioParams:
    return harness.ScenarioParams(
        plane_side=args.plane, num_nodes=args.nodes, speed_v=args.speed, seed=args.seed
    )


def _cmd_run(args) -> int:
    params = _scenario_params(args)
    scenario = harness.generate_scenario(params)
    record, tour = harness.run_pipeline(
        scenario,
        args.lam,
        args.dt,
        args.scheme,
        sigma=args.sigma,
        seed=args.seed,
        timed=args.timings,
        with_tour=True,
    )
    if args.out:
        harness.write_csv([record], args.out)
    if args.dump_tour:
        harness.write_tour(tour, scenario.charger.speed_v, args.dump_tour)
    print(
        f"{record.scheme}: utility {record.utility_morer:.3f} (schedule) / "
        f"{record.utility_travel:.3f} (with travel), {record.stop_grids} stops, "
        f"tour {record.tour_len_m:.1f} m, {record.gamma} grids, {record.slots} slots"
    )
    return 0


def _cmd_sweep(args) -> int:
    config = harness.ExperimentConfig(
        schemes=tuple(args.schemes.split(",")),
        sweep_name=args.sweep,
        sweep_values=_parse_values(args.values),
        lam=args.lam,
        dt=args.dt,
        seeds=_parse_seeds(args.seeds),
        sigma=args.sigma,
        scenario=harness.ScenarioParams(plane_side=args.plane, num_nodes=args.nodes, speed_v=args.speed),
        timed=args.timings,
    )
    records, summary = harness.run_experiment(config)
    harness.write_csv(records, args.out)
    for (scheme, value), means in summary.items():
        tag = "" if value is None else f" {args.sweep}={value:g}"
        print(
            f"{scheme}{tag}: mean utility {means['utility_morer']:.3f} (schedule) / "
            f"{means['utility_travel']:.3f} (with travel), {means['stop_grids']:.1f} stops"
        )
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_oracle_check(args) -> int:
    reports = verify.run_all(max_size=args.max_size)
    for report in reports:
        print(report.line())
    return 0 if all(r.passed for r in reports) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chargesched",
        description="Plan stops, dwell slots and a travel tour for a mobile wireless charger.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one scenario end to end")
    sweep_p = sub.add_parser("sweep", help="run a parameter sweep and write a CSV")
    for p in (run_p, sweep_p):
        p.add_argument("--lambda", dest="lam", type=float, default=0.15, help="cell-power error ratio in [0,1)")
        p.add_argument("--dt", type=float, default=30.0, help="slot length, seconds")
        p.add_argument("--sigma", type=float, default=None, help="substitute search granularity, meters (default: cell side / 100)")
        p.add_argument("--nodes", type=int, default=40)
        p.add_argument("--plane", type=float, default=50.0, help="plane side, meters")
        p.add_argument("--speed", type=float, default=1.0, help="charger speed, m/s")
        p.add_argument("--timings", action="store_true", help="record wall time per run (breaks CSV byte-reproducibility)")
    run_p.add_argument("--scheme", choices=harness.SCHEMES, default="more")
    run_p.add_argument("--seed", type=int, default=0)
    run_p.add_argument("--out", default=None, help="write the record as CSV")
    run_p.add_argument("--dump-tour", default=None, help="write the final tour as JSON")
    run_p.set_defaults(func=_cmd_run)

    sweep_p.add_argument("--sweep", choices=("lambda", "dt"), required=True)
    sweep_p.add_argument("--values", required=True, help="comma-separated sweep values")
    sweep_p.add_argument("--seeds", default="0-29", help="comma list and/or lo-hi ranges")
    sweep_p.add_argument("--schemes", default="more,edf,random")
    sweep_p.add_argument("--out", required=True)
    sweep_p.set_defaults(func=_cmd_sweep)

    oc = sub.add_parser("oracle-check", help="run the oracle verification suites")
    oc.add_argument("--max-size", type=int, default=1_000_000, help="cap on enumerated assignments per instance")
    oc.set_defaults(func=_cmd_oracle_check)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # surface one line, fail nonzero
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
