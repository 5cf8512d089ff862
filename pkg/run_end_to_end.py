# run_end_to_end.py
import json
import logging
from pathlib import Path
import sys
import time

import click

from config.logging_setup import configure_logging
from services.engine.scenario_loader import load_scenario
from services.engine.simulator import run
from services.engine.trace_writer import TRACE_FILE, write_outputs

logger = logging.getLogger(__name__)

ROOT = Path(__file__).resolve().parent
SCENARIO_DIR = ROOT / "scenarios"
GOLDEN_DIR = ROOT / "tests" / "golden"
GOLDEN_SCENARIOS = ("jam_manual.toy", "jam_autonomous.toy", "hijack_manual.toy", "hijack_autonomous.toy")


def run_all(out_dir: Path, seed: int, update_golden: bool) -> dict:
    summary = {}
    for path in sorted(SCENARIO_DIR.glob("*.toy")):
        logger.info(f"=== {path.name} ===")
        started = time.perf_counter()
        trace, metrics = run(load_scenario(path), seed)
        elapsed = time.perf_counter() - started

        paths = write_outputs(trace, metrics, out_dir / path.stem)
        summary[path.name] = {
            "seconds": round(elapsed, 2),
            "final_status": {drone: status.value for drone, status in metrics.final_status.items()},
            "link_lost_tick": metrics.link_lost_tick,
            "hijack_phases": metrics.hijack_phases,
            "alerts": len(metrics.alerts),
        }
        logger.info(f"{path.name}: {len(trace)} events in {elapsed:.2f}s")

        if update_golden and path.name in GOLDEN_SCENARIOS:
            GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
            golden = GOLDEN_DIR / path.name.replace(".toy", ".tsv")
            golden.write_bytes(paths["trace"].read_bytes())
            logger.info(f"golden trace updated: {golden}")
    return summary


@click.command()
@click.option("--out", "out_dir", default="e2e_out", type=click.Path(file_okay=False), help="Output root.")
@click.option("--seed", type=click.IntRange(min=0), default=1)
@click.option("--update-golden", is_flag=True, help=f"Refresh tests/golden from the {TRACE_FILE} outputs.")
def main(out_dir: str, seed: int, update_golden: bool):
    """Run every shipped scenario once and print a JSON outcome summary."""
    configure_logging()
    summary = run_all(Path(out_dir), seed, update_golden)
    logger.info("=== END-TO-END COMPLETE ===")
    click.echo(json.dumps(summary, indent=2))


if __name__ == "__main__":
    sys.exit(main())
