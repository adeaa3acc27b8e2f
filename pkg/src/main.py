import argparse
import dataclasses
import logging
import os

from src import __version__
from src.appendix_sums import assemble, mean_entropy_sum
from src.closed_forms import mean_capacity_for, mean_entropy, variance_entropy
from src.estimators import Sampler, Statistic, estimate
from src.exceptions import (
    ConfigError,
    ConvergenceError,
    DomainError,
    InsufficientDataError,
    IntegrityError,
    UnsupportedDifferenceError,
)
from src.figure_data import (
    FIGURE1_COLUMNS,
    FIGURE2_COLUMNS,
    FIGURE3_COLUMNS,
    capacity_series,
    standardized_histogram,
    variance_series,
)
from src.jacobi import EnsembleParams
from src.logger_config import configure_logger
from src.quadrature import QuadratureConfig, capacity_quad, mean_entropy_quad, variance_quad
from src.report_writer import write_csv, write_json
from src.sampling import ChainConfig
from src.special_functions import evaluate
from src.sweep_config_loader import SweepConfigLoader
from src.verification import SUITES, run_suites
from src.work_pool import ordered_map

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_UNSUPPORTED = 3
EXIT_IO = 4

CLOSED_STATISTICS = ("mean-entropy", "variance-entropy", "mean-capacity")


def _common_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, default=1, help="Smaller subsystem dimension.")
    common.add_argument("--n", type=int, default=None, help="Larger subsystem dimension (defaults to m).")
    common.add_argument("--seed", type=int, default=0, help="Random seed.")
    common.add_argument("--tol", type=float, default=None, help="Tolerance.")
    common.add_argument("--out", default=None, help="Output path; stdout when omitted.")
    return common


def build_parser():
    '''
    :return: argparse parser for the fermi_rmt command line.
    '''
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="fermi_rmt",
                                     description="Entanglement statistics of fermionic Gaussian states.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    commands = parser.add_subparsers(dest="command", required=True)

    for name in ("exact", "quad", "sums"):
        sub = commands.add_parser(name, parents=[common])
        sub.add_argument("--stat", choices=CLOSED_STATISTICS, default="mean-entropy")

    sample = commands.add_parser("sample", parents=[common])
    sample.add_argument("--stat", choices=[s.value for s in Statistic], default=Statistic.ENTROPY.value)
    sample.add_argument("--sampler", choices=[s.value for s in Sampler], default=Sampler.LOGGAS.value)
    sample.add_argument("--samples", type=int, default=20000)
    sample.add_argument("--chains", type=int, default=4)
    sample.add_argument("--walkers", type=int, default=256)
    sample.add_argument("--burn-in", type=int, default=400)
    sample.add_argument("--thinning", type=int, default=10)

    verify = commands.add_parser("verify", parents=[common])
    verify.add_argument("--suite", choices=SUITES, default="all")
    verify.add_argument("--trials", type=int, default=1000)
    verify.add_argument("--max-m", type=int, default=5)
    verify.add_argument("--samples", type=int, default=20000)

    figure = commands.add_parser("figure", parents=[common])
    figure.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    figure.add_argument("--m-max", type=int, default=12)
    figure.add_argument("--n-max", type=int, default=12)
    figure.add_argument("--a", type=int, choices=(0, 1, 2, 3), default=None)
    figure.add_argument("--samples", type=int, default=20000)
    figure.add_argument("--bins", type=int, default=40)

    sweep = commands.add_parser("sweep", parents=[common])
    sweep.add_argument("--config", required=True, help="Sweep configuration file.")
    return parser


def _ensemble(args):
    return EnsembleParams(args.m, args.n if args.n is not None else args.m)


def _quad_config(args):
    return QuadratureConfig(target_abs_tol=args.tol) if args.tol else QuadratureConfig()


def exact_record(e, statistic):
    '''
    Closed-form record: basis terms, float value and provenance.

    :param e: EnsembleParams.
    :param statistic: One of CLOSED_STATISTICS.
    :return: Dict with statistic, m, n, status, terms and value.
    '''
    status = "proven"
    if statistic == "mean-entropy":
        value = mean_entropy(e)
    elif statistic == "variance-entropy":
        value, status = variance_entropy(e)
    else:
        value = mean_capacity_for(e)
    return {"statistic": statistic, "m": e.m, "n": e.n, "status": status,
            "terms": value.describe(), "value": evaluate(value)}


def quad_record(e, statistic, cfg):
    '''
    Quadrature record for one statistic.

    :param e: EnsembleParams.
    :param statistic: One of CLOSED_STATISTICS.
    :param cfg: QuadratureConfig.
    :return: Dict with statistic, m, n, value, err_estimate and nodes_used.
    '''
    route = {"mean-entropy": mean_entropy_quad, "variance-entropy": variance_quad,
             "mean-capacity": capacity_quad}[statistic]
    result = route(e, cfg)
    return {"statistic": statistic, "m": e.m, "n": e.n, "value": result.value,
            "err_estimate": result.err_estimate, "nodes_used": result.nodes_used}


def sums_record(e, statistic):
    '''
    Exact mode-sum record for one statistic.

    :param e: EnsembleParams.
    :param statistic: One of CLOSED_STATISTICS.
    :return: Dict with statistic, m, n, terms, value and terms_evaluated.
    '''
    if statistic == "mean-entropy":
        report = mean_entropy_sum(e)
        value, terms = report.exact, report.terms_evaluated
    else:
        assembled = assemble(e)
        value = assembled.variance if statistic == "variance-entropy" else assembled.capacity
        terms = sum(r.terms_evaluated for r in (assembled.i_a, assembled.i_b, assembled.i_c))
    return {"statistic": statistic, "m": e.m, "n": e.n, "terms": value.describe(),
            "value": evaluate(value), "terms_evaluated": terms}


def cmd_exact(args):
    '''
    Write the closed form of --stat at (m, n) as JSON.

    :param args: Parsed arguments.
    :return: Exit code.
    '''
    write_json(args.out, exact_record(_ensemble(args), args.stat))
    return EXIT_OK


def cmd_quad(args):
    '''
    Write the quadrature estimate of --stat at (m, n) as JSON.

    :param args: Parsed arguments.
    :return: Exit code.
    '''
    write_json(args.out, quad_record(_ensemble(args), args.stat, _quad_config(args)))
    return EXIT_OK


def cmd_sums(args):
    '''
    Write the exact mode-sum value of --stat at (m, n) as JSON.

    :param args: Parsed arguments.
    :return: Exit code.
    '''
    write_json(args.out, sums_record(_ensemble(args), args.stat))
    return EXIT_OK


def _chain_config(args, **overrides):
    options = {"seed": args.seed}
    for name in ("chains", "walkers", "burn_in", "thinning"):
        if hasattr(args, name):
            options[name] = getattr(args, name)
    options.update(overrides)
    return ChainConfig(**options)


def cmd_sample(args):
    '''
    Run a sampler and write its StatSummary record as JSON.

    :param args: Parsed arguments.
    :return: Exit code.
    '''
    summary = estimate(_ensemble(args), _chain_config(args), args.stat, args.samples, sampler=args.sampler)
    write_json(args.out, summary.to_record())
    return EXIT_OK


def cmd_verify(args):
    '''
    Run the selected verification suites and write one record per check.

    :param args: Parsed arguments.
    :return: EXIT_OK when every check passes, else EXIT_VERIFICATION_FAILED.
    '''
    logger = logging.getLogger("fermi_rmt")
    results = run_suites(args.suite, trials=args.trials, max_m=args.max_m, samples=args.samples,
                         seed=args.seed, tolerance=args.tol)
    write_json(args.out, [result.to_record() for result in results])
    failed = [result.check for result in results if not result.passed]
    if failed:
        logger.warning("Verification failed: %s", ", ".join(failed))
        return EXIT_VERIFICATION_FAILED
    logger.info("Verification passed: %d checks.", len(results))
    return EXIT_OK


def _figure_meta(args, which):
    return {"figure": which, "seed": args.seed, "samples": args.samples, "version": __version__,
            "tolerance": args.tol if args.tol else QuadratureConfig().target_abs_tol}


def _suffixed(path, a):
    if path is None or path == "-":
        return path
    root, extension = os.path.splitext(path)
    return "%s_a%d%s" % (root, a, extension or ".csv")


def cmd_figure(args):
    '''
    Write the data series behind figure --which as CSV; figure 3 without --a
    writes one file per a = 0..3.

    :param args: Parsed arguments.
    :return: Exit code.
    '''
    cfg = _chain_config(args)
    meta = _figure_meta(args, args.which)
    if args.which == 1:
        write_csv(args.out, FIGURE1_COLUMNS, variance_series(args.m_max, args.samples, cfg), meta)
    elif args.which == 2:
        e = _ensemble(args)
        meta.update({"m": e.m, "n": e.n, "bins": args.bins})
        write_csv(args.out, FIGURE2_COLUMNS, standardized_histogram(e.m, e.n, args.samples, cfg, args.bins), meta)
    elif args.a is not None:
        meta["a"] = args.a
        write_csv(args.out, FIGURE3_COLUMNS, capacity_series(args.a, args.n_max, args.samples, cfg), meta)
    else:
        for a in (0, 1, 2, 3):
            write_csv(_suffixed(args.out, a), FIGURE3_COLUMNS, capacity_series(a, args.n_max, args.samples, cfg),
                      dict(meta, a=a))
    return EXIT_OK


def _sweep_cell(job):
    '''
    Evaluate every configured statistic and route at one (m, n) cell.

    Routes without a closed form for the cell give None and are left out of max_delta.

    :param job: Tuple ((m, n), SweepConfig).
    :return: List of rows aligned with the sweep columns.
    '''
    (m, n), config = job
    e = EnsembleParams(m, n)
    quad_cfg = QuadratureConfig()
    rows = []
    for statistic in config.statistics:
        values = {}
        for route in config.routes:
            try:
                if route == "exact":
                    values[route] = exact_record(e, statistic)["value"]
                elif route == "quadrature":
                    values[route] = quad_record(e, statistic, quad_cfg)["value"]
                else:
                    values[route] = sums_record(e, statistic)["value"]
            except UnsupportedDifferenceError:
                values[route] = None
        present = [v for v in values.values() if v is not None]
        delta = max(present) - min(present) if len(present) > 1 else None
        rows.append([m, n, statistic] + [values[route] for route in config.routes]
                    + [delta, None if delta is None else delta <= config.tolerance])
    return rows


def cmd_sweep(args):
    '''
    Expand the sweep configuration, evaluate the cells in parallel and write
    the rows in grid order.

    :param args: Parsed arguments.
    :return: Exit code.
    '''
    config = SweepConfigLoader(args.config).load_config()
    if args.seed:
        config = dataclasses.replace(config, seed=args.seed)
    rows = [row for cell_rows in ordered_map(_sweep_cell, [(cell, config) for cell in config.cells])
            for row in cell_rows]
    columns = ["m", "n", "statistic"] + list(config.routes) + ["max_delta", "agree"]
    meta = {"seed": config.seed, "tolerance": config.tolerance, "version": __version__,
            "routes": "+".join(config.routes), "statistics": "+".join(config.statistics)}
    if config.output == "json":
        write_json(args.out, {"meta": meta, "rows": [dict(zip(columns, row)) for row in rows]})
    else:
        write_csv(args.out, columns, rows, meta)
    return EXIT_OK


COMMANDS = {
    "exact": cmd_exact,
    "quad": cmd_quad,
    "sums": cmd_sums,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "figure": cmd_figure,
    "sweep": cmd_sweep,
}


def main(argv=None):
    '''
    Command-line entry point.

    Exit codes: 0 success, 1 verification failure (including quadrature that does
    not converge and violated numerical invariants), 2 invalid input or too few
    samples, 3 unsupported closed form, 4 I/O failure.

    :param argv: Argument list; sys.argv[1:] when None.
    :return: Exit code.
    '''
    logger = configure_logger()
    logger.info("Application started.")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_INVALID_INPUT
    try:
        code = COMMANDS[args.command](args)
    except UnsupportedDifferenceError as error:
        logger.error("Unsupported closed form: %s", error)
        code = EXIT_UNSUPPORTED
    except (DomainError, ConfigError, InsufficientDataError) as error:
        logger.error("Invalid input: %s", error)
        code = EXIT_INVALID_INPUT
    except (ConvergenceError, IntegrityError) as error:
        logger.error("Numerical check failed: %s", error)
        code = EXIT_VERIFICATION_FAILED
    except OSError as error:
        logger.error("I/O failure: %s", error)
        code = EXIT_IO
    except Exception:
        logger.exception("An error occurred during execution.")
        raise
    logger.info("Application finished with exit code %d.", code)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
