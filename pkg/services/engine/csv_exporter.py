"""CSV exports: run metrics, jammer spectra and raw sample captures."""

import csv
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Union

import numpy as np

from config.models.core_models import Metrics
from services.phy.dsp import Spectrum
from services.phy.signal_ops import Signal

from .trace_format import format_value

logger = logging.getLogger(__name__)


class CSVExporter:
    """
    Writes simulator results as CSV with a fixed column order.

    Metrics are flattened into one (section, entity, address, metric, value) row
    per number so that runs with different rosters share a header.
    """

    # -------------------------------------------------------------------------
    # Public Methods
    # -------------------------------------------------------------------------

    def export_metrics(self, metrics: Metrics, path: Union[str, Path]) -> Path:
        rows = list(self._metric_rows(metrics))
        self._write(path, self._get_csv_headers(), rows)
        logger.debug(f"metrics: {len(rows)} rows")
        return Path(path)

    def export_spectrum(self, spectrum: Spectrum, path: Union[str, Path]) -> Path:
        power_db = spectrum.power_db()
        rows = [
            {
                "frequency_hz": format_value(float(freq)),
                "power": format_value(float(power)),
                "power_db": format_value(float(level)),
            }
            for freq, power, level in zip(spectrum.bin_frequencies, spectrum.power, power_db)
        ]
        self._write(path, ["frequency_hz", "power", "power_db"], rows)
        logger.info(f"spectrum with {len(rows)} bins written to {path}")
        return Path(path)

    def export_samples(self, signal: Signal, path: Union[str, Path]) -> Path:
        times = np.arange(len(signal)) / signal.sample_rate
        rows = [
            {
                "index": index,
                "time_s": format_value(float(t)),
                "i": format_value(float(sample.real)),
                "q": format_value(float(sample.imag)),
            }
            for index, (t, sample) in enumerate(zip(times, signal.samples))
        ]
        self._write(path, ["index", "time_s", "i", "q"], rows)
        logger.info(f"{len(rows)} samples written to {path}")
        return Path(path)

    # -------------------------------------------------------------------------
    # Internal Helpers
    # -------------------------------------------------------------------------

    def _write(self, path: Union[str, Path], headers: List[str], rows: List[Dict[str, Any]]) -> None:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=headers, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)

    def _get_csv_headers(self) -> List[str]:
        return ["section", "entity", "address", "metric", "value"]

    def _row(self, section: str, entity: str, metric: str, value: Any, address: str = "") -> Dict[str, Any]:
        return {
            "section": section,
            "entity": entity,
            "address": address,
            "metric": metric,
            "value": format_value(value),
        }

    def _metric_rows(self, metrics: Metrics) -> Iterator[Dict[str, Any]]:
        yield self._row("run", "sim", "attack_onset", metrics.attack_onset)
        for link in metrics.links:
            for name in ("frames_sent", "frames_acked", "frames_lost", "pdr"):
                yield self._row("link", link.sender, name, getattr(link, name), link.address)
        for gcs_id, tick in metrics.link_lost_tick.items():
            yield self._row("gcs", gcs_id, "link_lost_tick", tick)
            yield self._row("gcs", gcs_id, "time_to_link_loss", metrics.time_to_link_loss.get(gcs_id))
            yield self._row("gcs", gcs_id, "mission_complete", metrics.mission_complete.get(gcs_id, False))
        for drone_id, status in metrics.final_status.items():
            yield self._row("drone", drone_id, "final_status", status)
        for hijacker_id, phases in metrics.hijack_phases.items():
            for phase, tick in phases.items():
                yield self._row("hijack", hijacker_id, phase, tick)
        for alert in metrics.alerts:
            yield self._row("alert", alert.link or "", "tick", alert.tick)
            yield self._row("alert", alert.link or "", "per", float(alert.per))
