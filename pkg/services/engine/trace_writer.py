"""Trace and metrics output files."""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Tuple, Union

from config.models.core_models import Metrics, TraceEvent
from services.errors import OutputError

from .csv_exporter import CSVExporter
from .trace_format import format_trace_line, parse_trace_line

logger = logging.getLogger(__name__)

TRACE_FILE = "trace.tsv"
METRICS_FILE = "metrics.csv"


def read_trace(path: Union[str, Path]) -> List[Tuple[int, str, str, Dict[str, str]]]:
    with open(path, encoding="utf-8") as handle:
        return [parse_trace_line(line) for line in handle if line.strip()]


def write_trace(trace: Iterable[TraceEvent], path: Path) -> int:
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for event in trace:
            handle.write(format_trace_line(event) + "\n")
            count += 1
    return count


def write_outputs(trace: List[TraceEvent], metrics: Metrics, out_dir: Union[str, Path]) -> Dict[str, Path]:
    """Write trace.tsv (one event per line) and metrics.csv into `out_dir`."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        trace_path = out / TRACE_FILE
        written = write_trace(trace, trace_path)
        metrics_path = CSVExporter().export_metrics(metrics, out / METRICS_FILE)
    except OSError as exc:
        raise OutputError(f"cannot write outputs to {out}: {exc}") from exc

    logger.info(f"wrote {written} trace events to {trace_path} and metrics to {metrics_path}")
    return {"trace": trace_path, "metrics": metrics_path}
