"""Command-line front end: validate scenes, plan inspection tours, and run
the ablation benchmark harness.

Exit codes: 0 success, 1 usage, 2 validation, 3 infeasible, 4 resource.
"""
from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import baselines
from .errors import (InfeasibleViewpointError, InvalidTourError,
                     OccupiedEndpointError, PlanningError, ResourceLimitError,
                     SceneParseError, SceneValidationError)
from .graph import load_cost_matrix, save_cost_matrix
from .pipeline import plan_inspection
from .plot import save_svg
from .scene import load_scene, validate_scene
from .solver import DiscreteSwarmSolver
from .viewpoints import boustrophedon_tour, generate_viewpoints

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_RESOURCE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master RNG seed")
    p.add_argument("--particles", type=int, default=100)
    p.add_argument("--generations", type=int, default=200)
    p.add_argument("--stall", type=int, default=30)
    p.add_argument("--mutation-period", type=int, default=3)
    p.add_argument("--seed-fraction", type=float, default=0.1)
    p.add_argument("--no-init-seed", action="store_true",
                   help="disable the deterministic back-and-forth seeding")
    p.add_argument("--no-mutation", action="store_true")
    p.add_argument("--no-edge-exchange", action="store_true")
    p.add_argument("--serial", action="store_true",
                   help="force serial particle updates (default)")
    p.add_argument("--parallel", action="store_true",
                   help="update particles in a thread pool")


def _solver_params(args, seed=None) -> dict:
    return dict(
        n_particles=args.particles,
        max_generations=args.generations,
        stall_generations=args.stall,
        mutation_period=args.mutation_period,
        seed_fraction=0.0 if args.no_init_seed else args.seed_fraction,
        use_mutation=not args.no_mutation,
        use_edge_exchange=not args.no_edge_exchange,
        parallel=args.parallel and not args.serial,
        random_state=args.seed if seed is None else seed,
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="inspectour",
                     description="Coverage inspection tour planner")
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("validate", help="validate a scene file")
    pv.add_argument("--scene", required=True)

    pp = sub.add_parser("plan", help="plan an inspection tour")
    pp.add_argument("--scene", required=True)
    pp.add_argument("--out", required=True, help="output directory")
    pp.add_argument("--heuristic", choices=("admissible", "paper"),
                    default="admissible")
    pp.add_argument("--start-node", type=int, default=None)
    pp.add_argument("--plot", action="store_true",
                    help="also write an SVG projection of the path")
    pp.add_argument("--plot-axis", choices=("x", "y", "z"), default="y",
                    help="axis dropped by the SVG projection")
    _add_solver_flags(pp)

    pb = sub.add_parser("bench", help="run the ablation benchmark")
    pb.add_argument("--scene", action="append", default=[],
                    help="scene instance (repeatable)")
    pb.add_argument("--matrix", action="append", default=[],
                    help="raw cost-matrix instance (repeatable)")
    pb.add_argument("--out", required=True, help="output directory")
    pb.add_argument("--trials", type=int, default=15,
                    help="seeded trials per algorithm and instance")
    pb.add_argument("--heuristic", choices=("admissible", "paper"),
                    default="admissible")
    _add_solver_flags(pb)
    return parser


def cmd_validate(args) -> int:
    scene = load_scene(args.scene)
    problems = validate_scene(scene)
    if problems:
        for p in problems:
            print(f"INVALID: {p}")
        return EXIT_VALIDATION
    plan = generate_viewpoints(scene)
    print(f"OK: {len(scene.surfaces)} surface(s), "
          f"{len(scene.obstacles)} obstacle(s), "
          f"{len(plan.viewpoints)} viewpoint(s)")
    return EXIT_OK


def _tour_document(result) -> dict:
    legs = []
    for a, b in zip(result.tour[:-1], result.tour[1:]):
        leg = result.graph.leg(a, b)
        legs.append({
            "from": int(a),
            "to": int(b),
            "cost": float(result.graph.cost[a, b]),
            "virtual": bool(result.graph.virtual[a, b]),
            "waypoints": ([[float(c) for c in result.grid.center(w)]
                           for w in leg.waypoints] if leg else []),
        })
    return {
        "total_cost": result.report.best_fitness,
        "generations": result.report.generations_run,
        "viewpoint_order": [int(x) for x in result.tour],
        "viewpoints": [
            {"id": vp.id,
             "position": [float(c) for c in vp.position],
             "orientation": [float(c) for c in vp.orientation],
             "surface_index": vp.surface_index}
            for vp in result.plan.viewpoints
        ],
        "legs": legs,
    }


def cmd_plan(args) -> int:
    scene = load_scene(args.scene)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = plan_inspection(
        scene, heuristic_mode=args.heuristic, start_node=args.start_node,
        **_solver_params(args))

    tour_path = out_dir / "tour.json"
    with open(tour_path, "w") as fh:
        json.dump(_tour_document(result), fh, indent=2, sort_keys=True)
        fh.write("\n")

    conv_path = out_dir / "convergence.csv"
    with open(conv_path, "w") as fh:
        fh.write("generation,best_fitness\n")
        for g, fit in enumerate(result.report.convergence):
            fh.write(f"{g},{fit!r}\n")

    if args.plot:
        save_svg(result, out_dir / "plan.svg", drop_axis=args.plot_axis)

    save_cost_matrix(out_dir / "cost_matrix.txt", result.graph.cost)
    print(f"tour cost {result.report.best_fitness:.6g} over "
          f"{result.graph.n_nodes} viewpoints "
          f"({result.report.generations_run} generations) -> {tour_path}")
    return EXIT_OK


def _bench_algorithms(args):
    base = _solver_params(args)

    def run_solver(cost, seed, **over):
        params = dict(base)
        params.update(random_state=seed, **over)
        solver = DiscreteSwarmSolver(**params)
        solver.fit(cost)
        return solver.report_.best_fitness, solver.report_.generations_run

    def nn2opt(cost, seed):
        _, c = baselines.nearest_neighbor_two_opt(cost)
        return c, 0

    return {
        "enhanced": lambda cost, seed, seed_tour: run_solver(
            cost, seed, seed_tour=seed_tour),
        "no_init": lambda cost, seed, seed_tour: run_solver(
            cost, seed, seed_tour=None, seed_fraction=0.0),
        "no_mutation": lambda cost, seed, seed_tour: run_solver(
            cost, seed, seed_tour=seed_tour, use_mutation=False),
        "no_edge_exchange": lambda cost, seed, seed_tour: run_solver(
            cost, seed, seed_tour=seed_tour, use_edge_exchange=False),
        "plain": lambda cost, seed, seed_tour: run_solver(
            cost, seed, seed_tour=None, seed_fraction=0.0,
            use_mutation=False, use_edge_exchange=False),
        "nn_2opt": lambda cost, seed, seed_tour: nn2opt(cost, seed),
    }


def cmd_bench(args) -> int:
    instances = []
    for path in args.scene:
        scene = load_scene(path)
        plan = generate_viewpoints(scene)
        from .graph import build_graph
        from .voxel import build_grid
        grid = build_grid(scene)
        graph = build_graph(plan, grid, scene.axis_weights,
                            heuristic_mode=args.heuristic)
        instances.append((path, graph.cost, boustrophedon_tour(plan)))
    for path in args.matrix:
        instances.append((path, load_cost_matrix(path), None))
    if not instances:
        print("bench: no instances given (use --scene and/or --matrix)",
              file=sys.stderr)
        return EXIT_USAGE

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    algorithms = _bench_algorithms(args)
    rows = []
    results_path = out_dir / "results.csv"
    try:
        for name, cost, seed_tour in instances:
            for algo, fn in algorithms.items():
                for trial in range(args.trials):
                    seed = args.seed + trial
                    t0 = time.perf_counter()
                    value, effort = fn(cost, seed, seed_tour)
                    rows.append(baselines.BenchResult(
                        algorithm=algo, instance=str(name), seed=seed,
                        cost=value, wall_time=time.perf_counter() - t0,
                        effort=effort))
    finally:
        with open(results_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["algorithm", "instance", "seed", "cost", "time",
                        "effort"])
            for r in rows:
                w.writerow([r.algorithm, r.instance, r.seed,
                            repr(r.cost), f"{r.wall_time:.6f}", r.effort])

    with open(out_dir / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["instance", "algorithm", "mean_cost", "sd_cost",
                    "mean_time", "improvement_vs_plain_pct"])
        for name, _, _ in instances:
            by_algo = {}
            for r in rows:
                if r.instance == str(name):
                    by_algo.setdefault(r.algorithm, []).append(r)
            plain_mean = statistics.mean(
                x.cost for x in by_algo.get("plain", [])) if by_algo.get(
                    "plain") else None
            for algo, rs in by_algo.items():
                costs = [x.cost for x in rs]
                mean = statistics.mean(costs)
                sd = statistics.stdev(costs) if len(costs) > 1 else 0.0
                impr = ""
                if plain_mean:
                    impr = f"{100.0 * (plain_mean - mean) / plain_mean:.3f}"
                w.writerow([name, algo, f"{mean:.6f}", f"{sd:.6f}",
                            f"{statistics.mean(x.wall_time for x in rs):.6f}",
                            impr])
    print(f"wrote {len(rows)} rows -> {results_path}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "validate":
            return cmd_validate(args)
        if args.command == "plan":
            return cmd_plan(args)
        if args.command == "bench":
            return cmd_bench(args)
        parser.error(f"unknown command {args.command!r}")
    except (SceneParseError, SceneValidationError, InvalidTourError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InfeasibleViewpointError, OccupiedEndpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except PlanningError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
