"""Root logger wiring shared by the CLI and helper scripts."""

import logging
import sys
from typing import Optional

import structlog

from config.settings import LoggingConfig, get_logging_config


def configure_logging(level: Optional[str] = None, config: Optional[LoggingConfig] = None) -> None:
    """Install a structlog-rendered handler on the root logger (stderr only)."""
    config = config or get_logging_config()
    renderer = (
        structlog.processors.JSONRenderer()
        if config.format.lower() == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    formatter = structlog.stdlib.ProcessorFormatter(
        processor=renderer,
        foreign_pre_chain=[
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso"),
        ],
    )

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel((level or config.level).upper())
