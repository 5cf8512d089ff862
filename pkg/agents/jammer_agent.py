"""Constant jammer: wideband noise parked on one channel."""

from dataclasses import dataclass
import logging
from typing import List, Optional

from config.models.core_models import AgentRole, EventKind, InterferenceKind
from config.models.scenario_models import JammerConfig
from services.medium.radio_medium import channel_to_frequency
from services.phy.signal_chain import jammer_power
from services.phy.signal_ops import linear_to_db

from .base import BaseAgent, SimContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InterferenceContribution:
    channel: int
    power: float
    kind: InterferenceKind = InterferenceKind.GAUSSIAN


def jammer_active(tick: int, config: JammerConfig) -> bool:
    return tick >= config.start_tick and (config.stop_tick is None or tick < config.stop_tick)


def jammer_step(tick: int, config: JammerConfig, power: float) -> List[InterferenceContribution]:
    """What the jammer puts on the air this tick; nothing outside its active window."""
    if not jammer_active(tick, config) or power <= 0.0:
        return []
    return [InterferenceContribution(config.channel, power, InterferenceKind.GAUSSIAN)]


class JammerAgent(BaseAgent):
    """Drives the SDR signal chain once per activation and replays its power every tick."""

    role = AgentRole.JAMMER

    def __init__(self, config: JammerConfig, ctx: SimContext):
        super().__init__(config, ctx)
        self.power: Optional[float] = None

    def step(self, tick: int) -> None:
        cfg = self.config
        if not jammer_active(tick, cfg):
            if self.power is not None:
                self.power = None
                self.emit(tick, EventKind.JAMMER_OFF, channel=cfg.channel)
                logger.info(f"{self.id}: jammer off at tick {tick}")
            return

        if self.power is None:
            seed = int(self.ctx.rng(self.id).integers(2**32))
            self.power = jammer_power(cfg, seed)
            self.emit(
                tick,
                EventKind.JAMMER_ON,
                channel=cfg.channel,
                frequency_mhz=channel_to_frequency(cfg.channel),
                power=self.power,
                power_db=linear_to_db(self.power),
            )
            logger.info(f"{self.id}: jamming channel {cfg.channel} from tick {tick}, {linear_to_db(self.power):.1f} dB")

        for contribution in jammer_step(tick, cfg, self.power):
            self.ctx.medium.add_interference(contribution.channel, contribution.power, contribution.kind)
