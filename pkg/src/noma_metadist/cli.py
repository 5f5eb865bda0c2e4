"""Command-line interface for noma-metadist.

Subcommands:
    moments    CCP moments per rank and order, optionally swept
    metadist   Meta-distribution ccdf over a reliability grid
    simulate   Per-realization CCP samples from the Monte Carlo oracle
    allocate   TMR-constrained two-user power and rate allocation
    reproduce  Curve data of the four reference setups (fig1 to fig4)
    rerun      Repeat a run from its manifest

Every CSV is written with a header row next to a ``<name>.manifest.json`` holding the
resolved run configuration and seed. Exit codes: 0 success, 2 usage error, 3
numerical failure, 4 infeasible allocation or TMR.
"""

import argparse
import csv
import json
import logging
import math
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from noma_metadist import __version__
from noma_metadist.allocation import solve_tmr, ue_rate
from noma_metadist.client import NomaClient
from noma_metadist.core.config import DEFAULT_ALPHA_POINTS, Config
from noma_metadist.core.exceptions import (
    ConfigurationError,
    DomainError,
    InfeasibleAllocationError,
    InfeasibleTmrError,
    InvalidMomentsError,
    NumericalFailureError,
    ParameterValidationError,
)
from noma_metadist.metadist import md_ccdf, variance
from noma_metadist.models.allocation import RAProblem
from noma_metadist.models.common import MomentMethod, Scheme, validated
from noma_metadist.models.metadist import BetaMD, DegenerateMD, MetaDistribution
from noma_metadist.models.network import Allocation, NetworkParams, db_to_linear, effective_alloc
from noma_metadist.models.run import RunConfig, RunMode, SweepSpec, SweepVariable, ThresholdUnit
from noma_metadist.models.simulation import SimConfig, SimulationResult
from noma_metadist.simulator import empirical_md, empirical_moments

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_INFEASIBLE = 4

Row = dict[str, Any]

MOMENT_COLUMNS = ("sweep_value", "i", "b", "moment", "method", "std_err", "feasible")
METADIST_COLUMNS = (
    "sweep_value",
    "alpha",
    "i",
    "ccdf_analytic",
    "ccdf_empirical",
    "shape_a",
    "shape_b",
    "feasible",
)
SUMMARY_COLUMNS = ("sweep_value", "i", "method", "scp", "variance", "rate", "feasible")
ALLOCATE_COLUMNS = (
    "scheme",
    "tmr",
    "p2",
    "theta1_db",
    "theta2_db",
    "rate_1",
    "rate_2",
    "total_rate",
)

FIGURES = ("fig1", "fig2", "fig3", "fig4")

# Figure setups: lambda=10, eta=4, N=2 throughout.
_FIG1_POWER_SPLITS = (0.5, 0.1)
_FIG1_THRESHOLDS = (1.0, 0.5)
_FIG23_P1 = 1.0 / 3.0
_FIG23_SWEEP = SweepSpec(variable=SweepVariable.THETA_DB, start=-10.0, stop=15.0, steps=26)
_FIG3_BETAS = (0.0, 0.1, 0.2)
_FIG4_SWEEP = SweepSpec(variable=SweepVariable.THETA1_DB, start=-10.0, stop=30.0, steps=41)
# (scheme, TMR, P_2, theta_2 in dB)
_FIG4_CASES = (
    (Scheme.C_NOMA, 0.1, 0.18, -9.0),
    (Scheme.C_NOMA, 0.4, 0.54, -0.7),
    (Scheme.E_NOMA, 0.1, 0.47, -7.0),
)


class UsageError(Exception):
    """Raised for command-line input that argparse cannot reject by itself."""


def _float_list(text: str) -> tuple[float, ...]:
    """Parse a comma-separated list of reals; an empty string gives an empty tuple."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    try:
        return tuple(float(item) for item in items)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.split(",") if item.strip())
    except ValueError as exc:
        message = f"expected comma-separated integers, got {text!r}"
        raise argparse.ArgumentTypeError(message) from exc


def _sweep(text: str) -> SweepSpec:
    """Parse VARIABLE:START:STOP:STEPS."""
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected VARIABLE:START:STOP:STEPS, got {text!r}")
    try:
        return SweepSpec(
            variable=SweepVariable(parts[0]),
            start=float(parts[1]),
            stop=float(parts[2]),
            steps=int(parts[3]),
        )
    except ValueError as exc:
        choices = ", ".join(v.value for v in SweepVariable)
        raise argparse.ArgumentTypeError(f"invalid sweep {text!r} (variables: {choices})") from exc


def _network_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("network and allocation")
    group.add_argument("--scheme", type=Scheme, choices=list(Scheme), default=Scheme.E_NOMA)
    group.add_argument("--lambda", dest="lam", type=float, default=10.0, help="BS intensity")
    group.add_argument("--eta", type=float, default=4.0, help="path-loss exponent (> 2)")
    group.add_argument("--beta-sic", type=float, default=0.0, help="residual SIC fraction")
    group.add_argument("--n-users", type=int, default=2, help="NOMA group size N")
    group.add_argument(
        "--powers", type=_float_list, default=None, help="P_1,...,P_N (default 0.5,0.5)"
    )
    thresholds = group.add_mutually_exclusive_group()
    thresholds.add_argument("--thetas-db", type=_float_list, default=None, help="thresholds in dB")
    thresholds.add_argument(
        "--thetas", type=_float_list, default=None, help="linear thresholds (default 1,0.5)"
    )
    group.add_argument("--ranks", type=_int_list, default=None, help="ranks to report")
    return parent


def _run_arguments() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("run")
    group.add_argument("--sweep", type=_sweep, default=None, help="VARIABLE:START:STOP:STEPS")
    group.add_argument("--mode", type=RunMode, choices=list(RunMode), default=None)
    group.add_argument("--realizations", type=int, default=None, help="Monte Carlo runs")
    group.add_argument("--seed", type=int, default=None, help="root seed (NOMA_MD_SEED)")
    group.add_argument("--workers", type=int, default=None, help="processes (NOMA_MD_WORKERS)")
    group.add_argument("--out", type=Path, default=None, help="output CSV (directory: reproduce)")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="noma-metadist",
        description="Meta distribution of the coverage probability for downlink NOMA.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="logging level (NOMA_MD_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)
    network, run = _network_arguments(), _run_arguments()

    moments = commands.add_parser("moments", parents=[network, run], help="CCP moments")
    moments.add_argument("--orders", type=_float_list, default=(1.0, 2.0), help="orders b")

    metadist = commands.add_parser("metadist", parents=[network, run], help="MD ccdf")
    metadist.add_argument("--alphas", type=_float_list, default=None, help="alpha grid")
    metadist.add_argument("--alpha-points", type=int, default=DEFAULT_ALPHA_POINTS)

    commands.add_parser("simulate", parents=[network, run], help="Monte Carlo CCP samples")

    allocate = commands.add_parser("allocate", parents=[network, run], help="TMR allocation")
    allocate.add_argument("--tmr", type=float, required=True, help="UE_2 minimum rate (nats)")
    allocate.add_argument("--theta1-db", type=float, default=None, help="fixed theta_1 in dB")

    reproduce = commands.add_parser("reproduce", parents=[run], help="figure data")
    reproduce.add_argument("figure", choices=FIGURES)

    rerun = commands.add_parser("rerun", help="repeat a run from its manifest")
    rerun.add_argument("manifest", type=Path)
    rerun.add_argument("--out", type=Path, default=None, help="override the output path")
    return parser


def _allocation(args: argparse.Namespace) -> tuple[Allocation, ThresholdUnit]:
    n = args.n_users
    if args.powers is None and args.thetas is None and args.thetas_db is None and n != 2:
        raise UsageError("give --powers and --thetas or --thetas-db when --n-users is not 2")
    powers = args.powers if args.powers is not None else (0.5, 0.5)
    if args.thetas_db is not None:
        return (
            validated(
                Allocation,
                powers=powers,
                thresholds=tuple(db_to_linear(t) for t in args.thetas_db),
            ),
            ThresholdUnit.DB,
        )
    thetas = args.thetas if args.thetas is not None else (1.0, 0.5)
    return validated(Allocation, powers=powers, thresholds=thetas), ThresholdUnit.LINEAR


def config_from_args(args: argparse.Namespace, runtime: Config) -> RunConfig:
    """Resolve the parsed arguments of moments, metadist, simulate or allocate.

    Raises:
        UsageError: If the arguments are inconsistent
        ParameterValidationError: If a parameter is outside its domain
    """
    params = validated(
        NetworkParams, lam=args.lam, eta=args.eta, beta_sic=args.beta_sic, n_users=args.n_users
    )
    alloc, unit = _allocation(args)
    fields: dict[str, Any] = {
        "command": args.command,
        "scheme": args.scheme,
        "params": params,
        "allocation": alloc,
        "thresholds_unit": unit,
        "mode": args.mode or RunMode.ANALYTIC_EXACT,
        "sweep": args.sweep,
        "ranks": args.ranks,
        "seed": args.seed if args.seed is not None else runtime.seed,
        "workers": args.workers if args.workers is not None else runtime.workers,
        "out": args.out or Path(f"{args.command}.csv"),
    }
    if args.realizations is not None:
        fields["realizations"] = args.realizations
    if args.command == "moments":
        fields["orders"] = args.orders
    if args.command == "metadist":
        alphas = args.alphas
        if alphas is None:
            alphas = tuple(float(a) for a in np.linspace(0.0, 1.0, args.alpha_points))
        if not alphas:
            raise UsageError("the alpha grid is empty")
        fields["alphas"] = alphas
    if args.command == "simulate":
        fields["mode"] = RunMode.SIMULATE
    if args.command == "allocate":
        fields["tmr"] = args.tmr
        fields["theta1_db"] = args.theta1_db
    return validated(RunConfig, **fields)


def _client(config: RunConfig, params: NetworkParams) -> NomaClient:
    simulation = SimConfig(n_realizations=config.realizations, rng_seed=config.seed)
    return NomaClient(
        params,
        simulation=simulation,
        config=Config(config.seed, workers=config.workers),
    )


def _points(config: RunConfig) -> list[tuple[float | None, NetworkParams, Allocation]]:
    try:
        return config.points()
    except ValueError as exc:
        raise UsageError(f"sweep leaves the parameter domain: {exc}") from exc


def _simulate(client: NomaClient, config: RunConfig, alloc: Allocation) -> SimulationResult | None:
    """Run the simulator for modes that need it; None for infeasible allocations."""
    if not config.mode.simulates:
        return None
    try:
        return client.simulator.run(alloc, config.scheme)
    except InfeasibleAllocationError as exc:
        logger.info("skipping simulation: %s", exc)
        return None


def cmd_moments(config: RunConfig) -> list[Row]:
    """Moment rows (sweep_value, i, b, moment, method, std_err, feasible).

    Infeasible allocations are reported with moment 0 and feasible = 0.
    """
    rows: list[Row] = []
    analytic = config.mode.analytic_method
    for value, params, alloc in _points(config):
        logger.info("moments at sweep value %s", value)
        client = _client(config, params)
        result = _simulate(client, config, alloc)
        feasible = _feasible(params, alloc)
        for i in config.rank_list():
            for b in config.orders:
                base = {"sweep_value": value, "i": i, "b": b, "feasible": int(feasible)}
                if analytic is not None:
                    moment = 0.0
                    if feasible:
                        moment = client.moment(config.scheme, alloc, i, b, analytic)
                    rows.append({**base, "moment": moment, "method": analytic.value})
                if config.mode.simulates:
                    moment, std_err = 0.0, 0.0
                    if result is not None:
                        moment, std_err = empirical_moments(result.samples(i), b)
                    rows.append(
                        {
                            **base,
                            "moment": moment,
                            "method": MomentMethod.SIMULATED.value,
                            "std_err": std_err,
                        }
                    )
    return rows


def _feasible(params: NetworkParams, alloc: Allocation) -> bool:
    try:
        effective_alloc(params, alloc)
    except InfeasibleAllocationError:
        return False
    return True


def _shapes(md: MetaDistribution) -> tuple[float | None, float | None]:
    if isinstance(md, BetaMD):
        return md.shape_a, md.shape_b
    return None, None


def cmd_metadist(config: RunConfig) -> list[Row]:
    """Meta-distribution rows (sweep_value, alpha, i, ccdf_analytic, ccdf_empirical, shapes)."""
    if not config.alphas:
        raise UsageError("the alpha grid is empty")
    rows: list[Row] = []
    analytic = config.mode.analytic_method
    for value, params, alloc in _points(config):
        client = _client(config, params)
        result = _simulate(client, config, alloc)
        feasible = _feasible(params, alloc)
        for i in config.rank_list():
            md: MetaDistribution | None = None
            if analytic is not None:
                md = client.meta_distribution(config.scheme, alloc, i, analytic)
            empirical: list[float | None] = [None] * len(config.alphas)
            if result is not None:
                empirical = list(empirical_md(result.samples(i), config.alphas)[0])
            elif config.mode.simulates:
                empirical = [0.0] * len(config.alphas)
            shape_a, shape_b = _shapes(md) if md is not None else (None, None)
            for alpha, emp in zip(config.alphas, empirical, strict=True):
                rows.append(
                    {
                        "sweep_value": value,
                        "alpha": alpha,
                        "i": i,
                        "ccdf_analytic": md_ccdf(md, alpha) if md is not None else None,
                        "ccdf_empirical": None if emp is None else float(emp),
                        "shape_a": shape_a,
                        "shape_b": shape_b,
                        "feasible": int(feasible),
                    }
                )
    return rows


def cmd_simulate(config: RunConfig) -> tuple[list[Row], dict[str, Any]]:
    """Per-realization CCP rows and a summary of the run.

    Raises:
        InfeasibleAllocationError: If the allocation has a zero CCP
    """
    rows: list[Row] = []
    summary: dict[str, Any] = {"points": []}
    for value, params, alloc in _points(config):
        result = _client(config, params).simulator.run(alloc, config.scheme)
        for index, ccp in enumerate(result.ccp):
            row: Row = {"sweep_value": value, "realization": index}
            row.update({f"ccp_{i}": float(ccp[i - 1]) for i in range(1, params.n_users + 1)})
            rows.append(row)
        summary["points"].append(
            {
                "sweep_value": value,
                "network_resamples": result.network_resamples,
                "placement_resamples": result.placement_resamples,
                "moments": [
                    result.moment_set(i).model_dump(mode="json") for i in config.rank_list()
                ],
            }
        )
    return rows, summary


def cmd_allocate(config: RunConfig) -> list[Row]:
    """Solve the TMR allocation and return it as a single row.

    Raises:
        UsageError: If no TMR was given
        InfeasibleTmrError: If UE_2 cannot reach the TMR
    """
    if config.tmr is None:
        raise UsageError("allocate needs --tmr")
    theta_1 = None if config.theta1_db is None else db_to_linear(config.theta1_db)
    method = config.mode.analytic_method or MomentMethod.EXACT
    problem = validated(
        RAProblem,
        params=config.params,
        scheme=config.scheme,
        theta_1=theta_1,
        tmr=config.tmr,
        method=method,
    )
    result = solve_tmr(problem)
    return [
        {
            "scheme": config.scheme.value,
            "tmr": config.tmr,
            "p2": result.p2,
            "theta1_db": 10.0 * math.log10(result.theta_1),
            "theta2_db": result.theta_2_db,
            "rate_1": result.rate_1,
            "rate_2": result.rate_2,
            "total_rate": result.total_rate,
        }
    ]


def moment_summary(config: RunConfig, methods: Sequence[MomentMethod], *, rate: bool) -> list[Row]:
    """SCP and variance rows per sweep point, rank and analytic method.

    Infeasible points are reported with zero SCP and variance.
    """
    rows: list[Row] = []
    for value, params, alloc in _points(config):
        client = _client(config, params)
        feasible = _feasible(params, alloc)
        for i in config.rank_list():
            for method in methods:
                scp = var = 0.0
                if feasible:
                    moments = client.moments(config.scheme, alloc, i, method)
                    scp, var = moments.m1, variance(moments.m1, moments.m2)
                row: Row = {
                    "sweep_value": value,
                    "i": i,
                    "method": method.value,
                    "scp": scp,
                    "variance": var,
                    "feasible": int(feasible),
                }
                if rate:
                    row["rate"] = ue_rate(params, alloc, config.scheme, i, method)
                rows.append(row)
    return rows


def write_csv(path: Path, columns: Sequence[str], rows: Sequence[Row]) -> None:
    """Write rows under a header; missing values are left empty."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=list(columns), extrasaction="raise")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: ("" if v is None else v) for key, v in row.items()})


def manifest_path(path: Path) -> Path:
    """Sidecar manifest of an output file."""
    return path.with_name(f"{path.stem}.manifest.json")


def write_manifest(path: Path, config: RunConfig, extra: dict[str, Any] | None = None) -> Path:
    """Write the manifest of the output file at path and return its location."""
    payload = {
        "version": __version__,
        "output": path.name,
        "seed": config.seed,
        "config": config.model_dump(mode="json"),
        "extra": extra or {},
    }
    target = manifest_path(path)
    target.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target


def load_manifest(path: Path) -> RunConfig:
    """Rebuild the run configuration stored in a manifest.

    Raises:
        UsageError: If the file is not a readable manifest
    """
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        data = payload["config"]
        data["params"].pop("delta", None)
    except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"cannot read manifest {path}: {exc}") from exc
    return validated(RunConfig, **data)


def _emit(config: RunConfig, columns: Sequence[str], rows: Sequence[Row], **extra: Any) -> Path:
    if config.out is None:
        raise UsageError("no output path")
    write_csv(config.out, columns, rows)
    write_manifest(config.out, config, extra or None)
    print(f"wrote {len(rows)} rows to {config.out}")
    return config.out


def execute(config: RunConfig) -> Path:
    """Run a resolved configuration and write its CSV and manifest."""
    if config.command == "moments":
        return _emit(config, MOMENT_COLUMNS, cmd_moments(config))
    if config.command == "metadist":
        return _emit(config, METADIST_COLUMNS, cmd_metadist(config))
    if config.command == "simulate":
        rows, summary = cmd_simulate(config)
        columns = ["sweep_value", "realization"]
        columns += [f"ccp_{i}" for i in range(1, config.params.n_users + 1)]
        for point in summary["points"]:
            for moments in point["moments"]:
                print(
                    f"UE_{moments['rank']}: SCP {moments['m1']:.6f} "
                    f"(+/- {moments['m1_std_err']:.2g}), M2 {moments['m2']:.6f}"
                )
        return _emit(config, columns, rows, **summary)
    if config.command == "allocate":
        return _emit(config, ALLOCATE_COLUMNS, cmd_allocate(config))
    if config.command.startswith("reproduce:"):
        return _emit(config, _REPRODUCE_COLUMNS[config.command], _figure_rows(config))
    raise UsageError(f"cannot execute command {config.command!r}")


_REPRODUCE_COLUMNS = {
    "reproduce:metadist": METADIST_COLUMNS,
    "reproduce:summary": SUMMARY_COLUMNS,
    "reproduce:summary-both": SUMMARY_COLUMNS,
    "reproduce:rates": SUMMARY_COLUMNS,
}


def _figure_rows(config: RunConfig) -> list[Row]:
    kind = config.command
    if kind == "reproduce:metadist":
        return cmd_metadist(config)
    method = config.mode.analytic_method or MomentMethod.EXACT
    if kind == "reproduce:summary-both":
        return moment_summary(config, (MomentMethod.EXACT, MomentMethod.APPROX), rate=False)
    return moment_summary(config, (method,), rate=kind == "reproduce:rates")


def figure_configs(figure: str, base: RunConfig) -> list[tuple[str, RunConfig]]:
    """(file stem, configuration) of every curve of a figure.

    base supplies the mode, seed, realizations and workers.
    """
    shared = {
        "mode": base.mode,
        "seed": base.seed,
        "realizations": base.realizations,
        "workers": base.workers,
    }
    params = NetworkParams()
    curves: list[tuple[str, RunConfig]] = []
    if figure == "fig1":
        alphas = tuple(float(a) for a in np.linspace(0.0, 1.0, DEFAULT_ALPHA_POINTS))
        for scheme in Scheme:
            for p1 in _FIG1_POWER_SPLITS:
                alloc = Allocation(powers=(p1, 1.0 - p1), thresholds=_FIG1_THRESHOLDS)
                for i in (1, 2):
                    stem = f"fig1_{scheme.value}_p1-{p1:g}_ue{i}"
                    curves.append(
                        (
                            stem,
                            RunConfig(
                                command="reproduce:metadist",
                                scheme=scheme,
                                params=params,
                                allocation=alloc,
                                thresholds_unit=ThresholdUnit.LINEAR,
                                ranks=(i,),
                                alphas=alphas,
                                **shared,
                            ),
                        )
                    )
    elif figure in ("fig2", "fig3"):
        alloc = Allocation(powers=(_FIG23_P1, 1.0 - _FIG23_P1), thresholds=(1.0, 1.0))
        schemes = (Scheme.C_NOMA,) if figure == "fig2" else tuple(Scheme)
        betas = (0.0,) if figure == "fig2" else _FIG3_BETAS
        kind = "reproduce:summary-both" if figure == "fig2" else "reproduce:summary"
        for scheme in schemes:
            for beta in betas:
                for i in (1, 2):
                    stem = f"{figure}_{scheme.value}_beta-{beta:g}_ue{i}"
                    curves.append(
                        (
                            stem,
                            RunConfig(
                                command=kind,
                                scheme=scheme,
                                params=NetworkParams(beta_sic=beta),
                                allocation=alloc,
                                sweep=_FIG23_SWEEP,
                                ranks=(i,),
                                **shared,
                            ),
                        )
                    )
    elif figure == "fig4":
        for scheme, tmr, p2, theta2_db in _FIG4_CASES:
            alloc = Allocation.from_db((1.0 - p2, p2), (0.0, theta2_db))
            for i in (1, 2):
                stem = f"fig4_{scheme.value}_tmr-{tmr:g}_ue{i}"
                curves.append(
                    (
                        stem,
                        RunConfig(
                            command="reproduce:rates",
                            scheme=scheme,
                            params=params,
                            allocation=alloc,
                            sweep=_FIG4_SWEEP,
                            ranks=(i,),
                            tmr=tmr,
                            **shared,
                        ),
                    )
                )
    else:
        raise UsageError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
    return curves


def cmd_reproduce(figure: str, base: RunConfig, out_dir: Path) -> list[Path]:
    """Write one CSV and manifest per curve of a figure into out_dir."""
    written = []
    for stem, config in figure_configs(figure, base):
        logger.info("reproducing %s", stem)
        written.append(execute(config.model_copy(update={"out": out_dir / f"{stem}.csv"})))
    return written


def _reproduce_base(args: argparse.Namespace, runtime: Config) -> RunConfig:
    fields: dict[str, Any] = {
        "command": "reproduce",
        "scheme": Scheme.E_NOMA,
        "params": NetworkParams(),
        "allocation": Allocation(powers=(0.5, 0.5), thresholds=_FIG1_THRESHOLDS),
        "mode": args.mode or RunMode.ANALYTIC_EXACT,
        "seed": args.seed if args.seed is not None else runtime.seed,
        "workers": args.workers if args.workers is not None else runtime.workers,
    }
    if args.realizations is not None:
        fields["realizations"] = args.realizations
    return validated(RunConfig, **fields)


def _dispatch(args: argparse.Namespace, runtime: Config) -> int:
    if args.command == "reproduce":
        if args.sweep is not None:
            raise UsageError("reproduce uses the sweeps of the figures; drop --sweep")
        out_dir = args.out or Path(args.figure)
        paths = cmd_reproduce(args.figure, _reproduce_base(args, runtime), out_dir)
        print(f"{args.figure}: {len(paths)} curves written to {out_dir}")
        return EXIT_OK
    if args.command == "rerun":
        config = load_manifest(args.manifest)
        if args.out is not None:
            config = config.model_copy(update={"out": args.out})
        execute(config)
        return EXIT_OK
    execute(config_from_args(args, runtime))
    return EXIT_OK


def _configure_logging(level: int) -> None:
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


_EXIT_CODES: tuple[tuple[type[BaseException], int], ...] = (
    (UsageError, EXIT_USAGE),
    (ConfigurationError, EXIT_USAGE),
    (ParameterValidationError, EXIT_USAGE),
    (ValidationError, EXIT_USAGE),
    (InfeasibleAllocationError, EXIT_INFEASIBLE),
    (InfeasibleTmrError, EXIT_INFEASIBLE),
    (NumericalFailureError, EXIT_NUMERICAL),
    (InvalidMomentsError, EXIT_NUMERICAL),
    (DomainError, EXIT_USAGE),
)


def exit_code(exc: BaseException) -> int:
    """Exit code of an error raised while running a command."""
    for kind, code in _EXIT_CODES:
        if isinstance(exc, kind):
            return code
    raise exc


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the noma-metadist command.

    Returns:
        The process exit code
    """
    args = build_parser().parse_args(argv)
    try:
        runtime = Config(log_level=args.log_level)
        _configure_logging(runtime.log_level)
        return _dispatch(args, runtime)
    except Exception as exc:
        code = exit_code(exc)
        print(f"noma-metadist: error: {exc}", file=sys.stderr)
        return code


__all__: list[str] = [
    "build_parser",
    "cmd_allocate",
    "cmd_metadist",
    "cmd_moments",
    "cmd_reproduce",
    "cmd_simulate",
    "config_from_args",
    "execute",
    "exit_code",
    "figure_configs",
    "load_manifest",
    "main",
    "moment_summary",
]
