"""Configuration settings for the CRTP attack simulator."""

from functools import lru_cache
import logging

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# RADIO MEDIUM CONFIGURATION
# ----------------------------------------------------------------------

class MediumConfig(BaseSettings):
    """Link budget and loss-curve defaults for the shared medium."""
    model_config = SettingsConfigDict(env_prefix="CRTP_MEDIUM_")

    # all powers are dB relative to a unit-power legitimate transmitter
    noise_floor_db: float = -30.0
    theta_low_db: float = 5.0
    theta_high_db: float = 15.0
    adjacent_leakage_db: float = -20.0
    tx_power_db: float = 0.0

    air_log_retention: int = 4096


# ----------------------------------------------------------------------
# TIMING CONFIGURATION
# ----------------------------------------------------------------------

class TimingConfig(BaseSettings):
    """Tick-based protocol timers (100 ticks per second by default)."""
    model_config = SettingsConfigDict(env_prefix="CRTP_TIMING_")

    tick_rate: int = 100
    loss_timeout: int = 200
    command_period: int = 10
    ack_timeout: int = 50
    land_duration: int = 100
    scan_dwell: int = 1
    cw_duration: int = 250


# ----------------------------------------------------------------------
# SIGNAL CHAIN CONFIGURATION
# ----------------------------------------------------------------------

class PhyConfig(BaseSettings):
    """SDR flow-graph parameters used for interferer power and spectra."""
    model_config = SettingsConfigDict(env_prefix="CRTP_PHY_")

    sample_rate: float = 10e6
    rf_gain_db: float = 14.0
    if_gain_db: float = 47.0
    bb_gain_db: float = 0.0
    cutoff_hz: float = 4e6
    transition_hz: float = 1e6
    fft_size: int = 1024
    capture_duration: float = 0.001
    histogram_bins: int = 64
    stopband_attenuation_db: float = 60.0


# ----------------------------------------------------------------------
# DEFENSE CONFIGURATION
# ----------------------------------------------------------------------

class DefenseConfig(BaseSettings):
    """Jam detector and hopping defaults."""
    model_config = SettingsConfigDict(env_prefix="CRTP_DEFENSE_")

    jam_window: int = 100
    jam_threshold: float = 0.5
    epoch_length: int = 5


# ----------------------------------------------------------------------
# LOGGING / OUTPUT CONFIGURATION
# ----------------------------------------------------------------------

class LoggingConfig(BaseSettings):
    """Logging configuration."""
    model_config = SettingsConfigDict(env_prefix="LOG_")

    level: str = "INFO"
    format: str = "console"


class OutputConfig(BaseSettings):
    """Where run outputs land when --out is not given."""
    model_config = SettingsConfigDict(env_prefix="CRTP_SIM_")

    out: str = "sim_out"


# ----------------------------------------------------------------------
# APP SETTINGS
# ----------------------------------------------------------------------

class Settings(BaseSettings):
    """Main application settings."""
    model_config = SettingsConfigDict(extra="ignore")

    medium: MediumConfig = Field(default_factory=MediumConfig)
    timing: TimingConfig = Field(default_factory=TimingConfig)
    phy: PhyConfig = Field(default_factory=PhyConfig)
    defense: DefenseConfig = Field(default_factory=DefenseConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


# ----------------------------------------------------------------------
# Lazy accessors (cached singletons)
# ----------------------------------------------------------------------

@lru_cache()
def get_config() -> Settings:
    """Return global app configuration."""
    return Settings()


@lru_cache()
def get_medium_config() -> MediumConfig:
    """Return medium defaults."""
    return get_config().medium


@lru_cache()
def get_timing_config() -> TimingConfig:
    """Return timer defaults."""
    return get_config().timing


@lru_cache()
def get_phy_config() -> PhyConfig:
    """Return signal chain defaults."""
    return get_config().phy


@lru_cache()
def get_defense_config() -> DefenseConfig:
    """Return defense defaults."""
    return get_config().defense


@lru_cache()
def get_logging_config() -> LoggingConfig:
    """Return logging configuration."""
    return get_config().logging


def get_output_config() -> OutputConfig:
    """Return output configuration (not cached, CRTP_SIM_OUT may change between runs)."""
    return OutputConfig()
