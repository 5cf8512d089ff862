"""crtp-sim command line: run, scan, spectrum and report."""

from concurrent.futures import ProcessPoolExecutor
import logging
from pathlib import Path
import sys
from typing import Dict, List, Optional, Sequence, Tuple

import click
from pydantic import ValidationError

from agents.scanner import heard_power_db, scan_all, sweep_length
from config.logging_setup import configure_logging
from config.models.core_models import Discovery
from config.models.scenario_models import HijackerConfig, JammerConfig, Scenario
from config.settings import get_output_config, get_phy_config
from services.codec.uri import format_address
from services.engine.csv_exporter import CSVExporter
from services.engine.report_generator import ReportGenerator
from services.engine.scenario_loader import load_scenario
from services.engine.simulator import Simulation, entity_rng, run
from services.engine.trace_writer import write_outputs
from services.errors import CrtpSimError
from services.phy.dsp import power_spectrum
from services.phy.signal_chain import capture_link, cw_power, cw_tone, jammer_signal
from services.phy.signal_ops import Signal, linear_to_db

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_USAGE = 64

SCAN_HEADERS = ("ADDRESS", "CH", "RATE", "PACKETS", "PL", "SNR_DB", "I_BITS", "I_S_BITS")


# ----------------------------------------------------------------------
# HELPERS
# ----------------------------------------------------------------------

def parse_seed_range(text: str) -> List[int]:
    """`A..B`, inclusive on both ends."""
    start, sep, stop = text.partition("..")
    try:
        first, last = int(start), int(stop)
    except ValueError:
        raise click.BadParameter(f"expected A..B, got {text!r}", param_hint="--seeds") from None
    if not sep or first < 0 or last < first:
        raise click.BadParameter(f"expected 0 <= A <= B, got {text!r}", param_hint="--seeds")
    return list(range(first, last + 1))


def _run_one(scenario_path: str, seed: int, out_dir: str) -> Tuple[int, Dict[str, str]]:
    """Worker for seed sweeps; each process loads its own copy of the scenario."""
    scenario = load_scenario(scenario_path)
    trace, metrics = run(scenario, seed)
    write_outputs(trace, metrics, out_dir)
    return seed, {drone: status.value for drone, status in metrics.final_status.items()}


def format_table(rows: Sequence[Sequence[str]], headers: Sequence[str]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in [headers, *rows]]
    return "\n".join(lines) + "\n"


def _capture(scenario: Scenario, entity: str, seed: int) -> Signal:
    try:
        entry = scenario.entry(entity)
    except KeyError:
        raise click.BadParameter(f"no roster entry {entity!r}", param_hint="--entity") from None
    if isinstance(entry, JammerConfig):
        return jammer_signal(entry, int(entity_rng(seed, entry.id).integers(2**32)))
    if isinstance(entry, HijackerConfig):
        reference_db = max((gcs.tx_power_db for gcs in scenario.gcs_stations), default=0.0)
        return cw_tone(cw_power(reference_db, entry.cw_margin_db, entry.sample_rate), entry.sample_rate)
    raise click.BadParameter(f"{entity!r} is a {entry.role}, not a transmitter chain", param_hint="--entity")


def _scan_row(sim: Simulation, found: Discovery) -> Tuple[str, ...]:
    """Discovery plus what a sniffer at the noise floor recovers from the link."""
    address = format_address(found.address, ":")
    link_snr = heard_power_db(sim.medium, found, 0, sim.tick) - sim.scenario.medium.noise_floor_db
    capture = capture_link(link_snr, int(entity_rng(sim.seed, address).integers(2**31)))
    return (
        address,
        str(found.channel),
        found.datarate.value,
        str(found.packets_seen),
        str(found.payload_length),
        f"{capture.snr_db:.1f}",
        f"{capture.mutual_information:.3f}",
        f"{capture.scanned_information:.3f}",
    )


# ----------------------------------------------------------------------
# COMMANDS
# ----------------------------------------------------------------------

@click.group(no_args_is_help=False)
@click.option("--log-level", default=None, help="Override LOG_LEVEL (DEBUG, INFO, WARNING, ...).")
def cli(log_level: Optional[str]):
    """Simulate scanning, jamming and hijacking attacks on CRTP drone links."""
    configure_logging(log_level)


@cli.command("run")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False))
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Override the scenario seed.")
@click.option("--seeds", "seed_range", default=None, help="Seed sweep A..B, one output directory per seed.")
@click.option("--out", "out_dir", default=None, help="Output directory (default: $CRTP_SIM_OUT).")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Processes for seed sweeps.")
def run_command(scenario_path: str, seed: Optional[int], seed_range: Optional[str],
                out_dir: Optional[str], workers: Optional[int]):
    """Run a scenario and write trace.tsv and metrics.csv."""
    if seed is not None and seed_range is not None:
        raise click.UsageError("--seed and --seeds are mutually exclusive")
    out = Path(out_dir or get_output_config().out)
    scenario = load_scenario(scenario_path)

    if seed_range is None:
        trace, metrics = run(scenario, seed)
        paths = write_outputs(trace, metrics, out)
        for drone, status in metrics.final_status.items():
            click.echo(f"{drone:<12} {status.value}")
        for gcs, tick in metrics.link_lost_tick.items():
            if tick is not None:
                click.echo(f"{gcs:<12} link lost at {tick}")
        click.echo(f"trace: {paths['trace']}")
        return

    seeds = parse_seed_range(seed_range)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_one, scenario_path, s, str(out / f"seed_{s}")) for s in seeds]
        results = [future.result() for future in futures]
    for s, statuses in results:
        summary = " ".join(f"{drone}={status}" for drone, status in statuses.items())
        click.echo(f"seed {s:<6} {summary}")
    logger.info(f"{len(results)} seeds written under {out}")


@cli.command("scan")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False))
@click.option("--seed", type=click.IntRange(min=0), default=None)
def scan_command(scenario_path: str, seed: Optional[int]):
    """Sweep every channel and datarate and list the links heard (passive sniffer)."""
    scenario = load_scenario(scenario_path)
    rates, dwell = scenario.sim.scan_datarates, scenario.sim.scan_dwell
    sim = Simulation(scenario, seed)
    needed = sweep_length(rates, dwell)
    if sim.advance(needed) < needed:
        logger.warning(f"scenario ends after {sim.tick} ticks, before the {needed}-tick sweep completes")

    discoveries = scan_all(sim.medium, rates, dwell)
    if not discoveries:
        logger.warning("scan heard no traffic")
    rows = [_scan_row(sim, d) for d in discoveries]
    click.echo(format_table(rows, SCAN_HEADERS), nl=False)


@cli.command("spectrum")
@click.option("--scenario", "scenario_path", required=True, type=click.Path(dir_okay=False))
@click.option("--entity", required=True, help="Jammer or hijacker id.")
@click.option("--fft", "fft_size", type=int, default=None, help="FFT size (power of two).")
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False), help="Spectrum CSV.")
@click.option("--samples", "samples_path", default=None, type=click.Path(dir_okay=False), help="Time-domain CSV.")
@click.option("--seed", type=click.IntRange(min=0), default=None)
def spectrum_command(scenario_path: str, entity: str, fft_size: Optional[int], out_path: Optional[str],
                     samples_path: Optional[str], seed: Optional[int]):
    """Power spectrum of a jammer's noise chain or a hijacker's CW tone."""
    scenario = load_scenario(scenario_path)
    signal = _capture(scenario, entity, scenario.sim.seed if seed is None else seed)
    spectrum = power_spectrum(signal, fft_size or get_phy_config().fft_size)

    exporter = CSVExporter()
    if out_path:
        exporter.export_spectrum(spectrum, out_path)
    if samples_path:
        exporter.export_samples(signal, samples_path)
    click.echo(f"bins: {len(spectrum)}")
    click.echo(f"total power: {linear_to_db(spectrum.total_power):.2f} dB")
    click.echo(f"peak: {spectrum.peak_frequency / 1e6:.3f} MHz")


@cli.command("report")
@click.option("--trace", "trace_path", required=True, type=click.Path(dir_okay=False))
def report_command(trace_path: str):
    """Summarise a trace file."""
    generator = ReportGenerator()
    click.echo(generator.render(generator.summarize(trace_path)), nl=False)


# ----------------------------------------------------------------------
# ENTRY POINTS
# ----------------------------------------------------------------------

def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and map failures onto exit codes."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=args, prog_name="crtp-sim", standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"Error: {exc.format_message()}", err=True)
        ctx = exc.ctx
        click.echo(ctx.get_help() if ctx is not None else cli.get_help(click.Context(cli)), err=True)
        return EXIT_USAGE
    except OSError as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_IO
    except (CrtpSimError, ValidationError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_VALIDATION
    except click.Abort:
        return EXIT_VALIDATION
    return EXIT_OK


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
