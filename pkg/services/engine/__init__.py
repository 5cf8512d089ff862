"""Simulation engine: scenario loading, the tick loop and its outputs."""

from .csv_exporter import CSVExporter
from .report_generator import ReportGenerator, TraceSummary
from .scenario_loader import load_scenario, load_scenario_text, parse_scenario_text
from .simulator import Simulation, entity_rng, run
from .trace_format import format_trace_line, format_value, parse_trace_line
from .trace_writer import read_trace, write_outputs, write_trace

__all__ = [
    "CSVExporter",
    "ReportGenerator",
    "TraceSummary",
    "load_scenario",
    "load_scenario_text",
    "parse_scenario_text",
    "Simulation",
    "entity_rng",
    "run",
    "format_trace_line",
    "format_value",
    "parse_trace_line",
    "read_trace",
    "write_outputs",
    "write_trace",
]
