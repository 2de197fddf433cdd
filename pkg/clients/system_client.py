"""
System client: the cavity-scatter command line.

Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure (including an
ensemble with at least one failed cavity), 3 I/O error.
"""

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import control
from adapters import CsvLevelAdapter, parse_level_unit
from billiard import Rectangle
from clients.client import Client
from clients.comparison_client import ComparisonClient
from clients.config_loader import RunConfig, read_config
from clients.ensemble_client import EnsembleClient, cavity_status
from clients.logging_config import setup_logging
from clients.logging_config import system_logger as logger
from clients.model_client import ModelClient
from clients.output_client import OutputClient, Table
from errors import CavityScatterError, ConfigError, OutputError, UsageError
from spectral_stats import EnsembleReport

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> CommandParser:
    common = CommandParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="Run configuration JSON")
    common.add_argument("--seed", type=int, default=None, help="Override master_seed")
    common.add_argument("--out", type=Path, default=None, help="Output directory (default runs/<command>)")
    common.add_argument("--format", choices=("csv", "json"), default=control.output_format, help="Table format")
    common.add_argument("--quiet", action="store_true", help="Only warnings and errors on the console")
    common.add_argument("--log-dir", default=control.log_dir, help="Directory for system.log")

    parser = CommandParser(prog=control.TOOL_NAME, description="Point-coupled rectangular cavity resonances")
    parser.add_argument("--version", action="version", version=f"%(prog)s {control.TOOL_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)

    subparsers.add_parser("modes", parents=[common], help="Eigenvalues, weights and Weyl count of the cavity")
    xi = subparsers.add_parser("xi", parents=[common], help="Tabulate xi and Z on the k and kappa grids")
    xi.add_argument("--oracle", action="store_true", help="Add the method-of-images value at each kappa")
    subparsers.add_parser("reflect", parents=[common], help="Reflection amplitude and phase on the k grid")
    subparsers.add_parser("amplitudes", parents=[common], help="Point-junction versus tube amplitudes")
    resonances = subparsers.add_parser("resonances", parents=[common], help="Complex resonances of the cavity")
    resonances.add_argument("--oracle", action="store_true", help="Add phase-scan peaks and first-order estimates")
    subparsers.add_parser("ensemble", parents=[common], help="Random-cavity spacing statistics")

    compare = subparsers.add_parser("compare", parents=[common], help="Compare spacings with Poisson or a reference")
    compare.add_argument("--against", default="poisson", help="'poisson' or a spacings/histogram/levels file or run dir")
    source = compare.add_mutually_exclusive_group()
    source.add_argument("--input", type=Path, default=None, help="Run directory holding spacings.csv")
    source.add_argument("--control", type=int, default=None, metavar="N", help="Decoupled control on N levels")
    compare.add_argument("--unit", default="GHz", help="Unit of a levels reference: GHz, per_m or per_m2")
    compare.add_argument("--rect", type=float, nargs=2, default=None, metavar=("C1_M", "C2_M"))
    compare.add_argument("--plot", action="store_true", help="Write histogram.png")

    ingest = subparsers.add_parser("ingest", parents=[common], help="Validate and normalize an external level list")
    ingest.add_argument("path", type=Path, help="CSV file with one level per row")
    ingest.add_argument("--unit", required=True, help="GHz, per_m or per_m2")
    ingest.add_argument("--rect", type=float, nargs=2, default=None, metavar=("C1_M", "C2_M"))
    return parser


class SystemClient(Client[int]):
    """Client that runs one subcommand and writes its outputs through a single OutputClient."""

    def __init__(self, args: argparse.Namespace, config: RunConfig):
        """Initialize the system client."""
        logger.info("Initializing SystemClient")
        self.args = args
        self.command = args.command
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError(f"must lie in [0, 2^64), got {args.seed}", key_path="--seed")
            config = dataclasses.replace(config, ensemble=dataclasses.replace(config.ensemble, master_seed=args.seed))
        self.config = config
        self.out_dir = args.out or Path("runs") / self.command
        self.output = OutputClient(
            self.out_dir,
            self.command,
            fmt=args.format,
            config=config.to_dict(),
            master_seed=config.ensemble.master_seed,
        )
        self.failed_cavities: List[int] = []
        logger.info("SystemClient initialized successfully")

    def get_name(self) -> str:
        """Get the name of this client."""
        return "SystemClient"

    def run(self) -> int:
        """Run the subcommand, write its files and return the exit code."""
        logger.info(f"Starting {control.TOOL_NAME} {self.command}")
        tables = getattr(self, f"_run_{self.command}")()
        for table in tables:
            self.output.add_table(table)
        manifest = self.output.run()
        logger.info(f"Manifest written to {manifest}")
        if self.failed_cavities:
            logger.error(f"Error in {len(self.failed_cavities)} cavities: {self.failed_cavities}")
            return EXIT_NUMERICAL
        return EXIT_OK

    # ========== SUBCOMMANDS ==========

    def _run_modes(self) -> List[Table]:
        return ModelClient(self.config).modes()

    def _run_xi(self) -> List[Table]:
        return ModelClient(self.config).xi(oracle=self.args.oracle)

    def _run_reflect(self) -> List[Table]:
        return ModelClient(self.config).reflect()

    def _run_amplitudes(self) -> List[Table]:
        return ModelClient(self.config).amplitudes()

    def _run_resonances(self) -> List[Table]:
        return ModelClient(self.config).resonances(oracle=self.args.oracle)

    def _run_ensemble(self) -> List[Table]:
        client = EnsembleClient(self.config.ensemble)
        tables = client.run()
        self._record_report(client.report)
        self.output.update_summary(**client.summary())
        return tables

    def _run_compare(self) -> List[Table]:
        spec = self.config.ensemble
        args = self.args
        client = ComparisonClient(
            spec.bins,
            spec.s_max,
            against=args.against,
            unit=parse_level_unit(args.unit),
            rect=Rectangle(*args.rect) if args.rect else None,
            plot=args.plot,
        )
        if args.control is not None:
            client.load_control(args.control, spec.master_seed, (spec.c_min_m, spec.c_max_m))
        elif args.input is not None:
            client.load_run(args.input)
        else:
            ensemble = EnsembleClient(spec)
            ensemble.run()
            self._record_report(ensemble.report)
            client.use_spacings(ensemble.report.spacings)
        tables = client.run()
        self.output.update_summary(**client.summary)
        if client.figure_png is not None:
            self.output.add_binary("histogram.png", client.figure_png)
        return tables

    def _run_ingest(self) -> List[Table]:
        args = self.args
        levels = CsvLevelAdapter().read_levels(args.path, parse_level_unit(args.unit))
        rect = Rectangle(*args.rect) if args.rect else None
        energies = levels.energies()
        table = Table(name="levels", columns=["rank", "value", "unit", "energy_per_m2"])
        for i, (value, energy) in enumerate(zip(levels.values, energies)):
            table.rows.append([i + 1, float(value), levels.unit.value, float(energy)])
        spacings = Table(name="spacings", columns=["cavity_id", "s"])
        spacings.rows.extend([0, float(s)] for s in levels.unfolded_spacings(rect))
        self.output.update_summary(source=str(levels.source), level_count=len(levels.values))
        return [table, spacings]

    def _record_report(self, report: EnsembleReport) -> None:
        self.output.set_cavities(cavity_status(report))
        self.failed_cavities = report.failed_cavities


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the cavity-scatter command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    setup_logging(args.log_dir, quiet=args.quiet)
    try:
        config = read_config(args.config)
        return SystemClient(args, config).run()
    except (UsageError, ConfigError) as e:
        logger.error(f"Error in configuration: {str(e)}")
        return EXIT_USAGE
    except OutputError as e:
        logger.error(f"Error writing or reading files: {str(e)}")
        return EXIT_IO
    except CavityScatterError as e:
        logger.error(f"Numerical error: {str(e)}")
        return EXIT_NUMERICAL
    except ValueError as e:
        logger.error(f"Invalid argument: {str(e)}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Error writing or reading files: {str(e)}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
