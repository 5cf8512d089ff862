"""Rebuild run metrics from a trace file alone."""

from dataclasses import dataclass, field
import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

import pandas as pd

from config.models.core_models import EventKind, HijackPhase

from .trace_writer import read_trace

logger = logging.getLogger(__name__)

LINK_COLUMNS = ["sender", "address", "sent", "acked", "lost", "pdr"]


@dataclass
class TraceSummary:
    events: int
    duration: int
    links: pd.DataFrame
    final_status: Dict[str, str] = field(default_factory=dict)
    link_lost: Dict[str, int] = field(default_factory=dict)
    attack_onset: Optional[int] = None
    phases: Dict[str, Dict[str, int]] = field(default_factory=dict)
    alerts: List[Dict[str, object]] = field(default_factory=list)
    missions_complete: List[str] = field(default_factory=list)

    def time_to_link_loss(self) -> Dict[str, Optional[int]]:
        if self.attack_onset is None:
            return {gcs: None for gcs in self.link_lost}
        return {gcs: tick - self.attack_onset for gcs, tick in self.link_lost.items()}


class ReportGenerator:
    """Summarises a trace with pandas; works on any trace written by the engine."""

    def load_frame(self, path: Union[str, Path]) -> pd.DataFrame:
        records = [
            {"tick": tick, "entity": entity, "kind": kind, **{f"d_{k}": v for k, v in details.items()}}
            for tick, entity, kind, details in read_trace(path)
        ]
        return pd.DataFrame.from_records(records)

    def summarize(self, path: Union[str, Path]) -> TraceSummary:
        frame = self.load_frame(path)
        if frame.empty:
            logger.warning(f"trace {path} is empty")
            return TraceSummary(events=0, duration=0, links=pd.DataFrame(columns=LINK_COLUMNS))

        def of_kind(kind: EventKind) -> pd.DataFrame:
            return frame[frame["kind"] == kind.value]

        stats = of_kind(EventKind.LINK_STATS)
        links = pd.DataFrame({
            "sender": stats["entity"],
            "address": stats.get("d_address"),
            "sent": pd.to_numeric(stats.get("d_sent")),
            "acked": pd.to_numeric(stats.get("d_acked")),
            "lost": pd.to_numeric(stats.get("d_lost")),
            "pdr": pd.to_numeric(stats.get("d_pdr")),
        }, columns=LINK_COLUMNS).reset_index(drop=True) if not stats.empty else pd.DataFrame(columns=LINK_COLUMNS)

        final = of_kind(EventKind.FINAL_STATUS)
        lost = of_kind(EventKind.LINK_LOST)

        onsets = list(of_kind(EventKind.JAMMER_ON)["tick"])
        phases: Dict[str, Dict[str, int]] = {}
        phase_rows = of_kind(EventKind.PHASE)
        for row in phase_rows.itertuples(index=False):
            phase = getattr(row, "d_phase")
            phases.setdefault(row.entity, {}).setdefault(phase, int(row.tick))
            if phase in (HijackPhase.JAM_CW.value, HijackPhase.CONNECT.value):
                onsets.append(row.tick)

        alerts = [
            {"link": row.entity, "tick": int(row.tick), "per": float(getattr(row, "d_per"))}
            for row in of_kind(EventKind.JAM_ALERT).itertuples(index=False)
        ]

        summary = TraceSummary(
            events=len(frame),
            duration=int(frame["tick"].max()),
            links=links,
            final_status=dict(zip(final["entity"], final["d_status"])) if not final.empty else {},
            link_lost=lost.groupby("entity")["tick"].min().astype(int).to_dict() if not lost.empty else {},
            attack_onset=int(min(onsets)) if onsets else None,
            phases=phases,
            alerts=alerts,
            missions_complete=sorted(set(of_kind(EventKind.MISSION_COMPLETE)["entity"])),
        )
        logger.info(f"summarised {summary.events} events from {path}")
        return summary

    def render(self, summary: TraceSummary) -> str:
        """Plain aligned text for stdout."""
        lines = [f"events: {summary.events}  duration: {summary.duration}"]
        onset = "-" if summary.attack_onset is None else str(summary.attack_onset)
        lines.append(f"attack onset: {onset}")
        if not summary.links.empty:
            table = summary.links.copy()
            table["pdr"] = table["pdr"].map(lambda v: f"{v:.3f}")
            lines.append("")
            lines.append(table.to_string(index=False))
        if summary.final_status:
            lines.append("")
            for drone, status in summary.final_status.items():
                lines.append(f"{drone:<12} {status}")
        ttl = summary.time_to_link_loss()
        for gcs, tick in summary.link_lost.items():
            after = "" if ttl.get(gcs) is None else f" ({ttl[gcs]} ticks after onset)"
            lines.append(f"{gcs:<12} link lost at {tick}{after}")
        for gcs in summary.missions_complete:
            lines.append(f"{gcs:<12} mission complete")
        for hijacker, phases in summary.phases.items():
            ordered = " ".join(f"{name}@{tick}" for name, tick in phases.items())
            lines.append(f"{hijacker:<12} {ordered}")
        for alert in summary.alerts:
            lines.append(f"{alert['link']:<12} jam alert at {alert['tick']} (PER {alert['per']:.2f})")
        return "\n".join(lines) + "\n"
