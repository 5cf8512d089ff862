"""
Fixed-tick simulation loop binding the medium, the roster agents and the defenses.
"""

import logging
from typing import Dict, List, Optional, Tuple
import zlib

import numpy as np

from agents.base import AgentFactory, BaseAgent, InboundFrame, OutboundFrame
from config.models.core_models import (
    EventKind,
    HijackPhase,
    JamAlert,
    LinkMetrics,
    Metrics,
    TraceEvent,
)
from config.models.crtp_models import RadioUri
from config.models.scenario_models import DroneConfig, Scenario
from services.defenses.jam_detector import JamDetector
from services.medium.radio_medium import RadioMedium

logger = logging.getLogger(__name__)

ENGINE_ENTITY = "sim"


def entity_rng(seed: int, entity_id: str) -> np.random.Generator:
    """Independent stream per entity: adding an agent never perturbs the others' draws."""
    return np.random.default_rng([seed, zlib.crc32(entity_id.encode("utf-8"))])


class Simulation:
    """
    One deterministic run of a scenario.

    Each tick: the medium forgets last tick's interference, agents step in roster
    order (queueing frames and declaring interference), queued frames are delivered
    in queue order, then the jam detectors look at the updated link statistics.
    """

    def __init__(self, scenario: Scenario, seed: Optional[int] = None):
        self.scenario = scenario
        self.seed = scenario.sim.seed if seed is None else seed
        self.duration = scenario.sim.duration
        self.tick = 0
        self.trace: List[TraceEvent] = []
        self.alerts: List[JamAlert] = []
        self.finished = False

        defense = scenario.defense
        self.hop_schedule = defense.hop_schedule(self.seed)
        self.medium = RadioMedium(scenario.medium, stats_capacity=defense.jam_window)

        self._rngs: Dict[str, np.random.Generator] = {}
        self._outbox: List[OutboundFrame] = []

        self.emit(0, ENGINE_ENTITY, EventKind.SCENARIO_START,
                  seed=self.seed, duration=self.duration, entities=len(scenario.roster))

        self.agents: List[BaseAgent] = [AgentFactory.create(entry, self) for entry in scenario.roster]
        self._by_id: Dict[str, BaseAgent] = {agent.id: agent for agent in self.agents}
        for agent in self.agents:
            agent.register(self.medium)

        self.detectors: Dict[str, JamDetector] = {}
        if defense.jam_detection:
            for gcs in scenario.gcs_stations:
                self.detectors[gcs.id] = JamDetector(gcs.id, defense.jam_window, defense.jam_threshold)

        logger.info(
            f"simulation ready: {len(self.agents)} agents, {self.duration} ticks, seed {self.seed}"
            + (", hopping" if self.hop_schedule else "")
        )

    # -------------------------------------------------------------------------
    # Context offered to agents
    # -------------------------------------------------------------------------

    def rng(self, entity_id: str) -> np.random.Generator:
        if entity_id not in self._rngs:
            self._rngs[entity_id] = entity_rng(self.seed, entity_id)
        return self._rngs[entity_id]

    def emit(self, tick: int, entity: str, kind: EventKind, **details) -> None:
        self.trace.append(TraceEvent(tick=tick, entity=entity, kind=kind, details=details))

    def send(self, frame: OutboundFrame) -> None:
        self._outbox.append(frame)

    def controller_of(self, uri: RadioUri) -> Optional[bytes]:
        for gcs in self.scenario.gcs_stations:
            if gcs.link.cell == uri.cell:
                return gcs.radio_address
        return None

    def drone_config_for(self, uri: RadioUri) -> Optional[DroneConfig]:
        for drone in self.scenario.drones:
            if drone.uri.cell == uri.cell:
                return drone
        return None

    def agent(self, entity_id: str) -> BaseAgent:
        return self._by_id[entity_id]

    # -------------------------------------------------------------------------
    # Loop
    # -------------------------------------------------------------------------

    def step(self) -> None:
        tick = self.tick
        self.medium.begin_tick(tick)
        for agent in self.agents:
            agent.step(tick)
        self._deliver(tick)
        self._run_detectors(tick)
        self.tick += 1

    def _deliver(self, tick: int) -> None:
        outbox, self._outbox = self._outbox, []
        for frame in outbox:
            draw = float(self.rng(frame.sender_id).random())
            result = self.medium.transmit_frame(frame.sender_id, frame.address, frame.packet, draw)
            if result.delivered:
                sender = self.medium.transceiver(frame.sender_id)
                self._by_id[result.receiver_id].on_frame(
                    tick, InboundFrame(sender.sender_address, frame.packet, result.snr_db)
                )
            self._by_id[frame.sender_id].on_outcome(tick, frame, result)

    def _run_detectors(self, tick: int) -> None:
        for gcs in self.scenario.gcs_stations:
            detector = self.detectors.get(gcs.id)
            if detector is None:
                continue
            alert = detector.update(self.medium.link_stats(gcs.id, gcs.link.address))
            if alert is not None:
                self.alerts.append(alert)
                self.emit(tick, gcs.id, EventKind.JAM_ALERT, per=alert.per, window=alert.window)

    def advance(self, ticks: int) -> int:
        """Run up to `ticks` more ticks without passing the scenario duration."""
        target = min(self.tick + max(ticks, 0), self.duration)
        while self.tick < target:
            self.step()
        return self.tick

    def run(self) -> Tuple[List[TraceEvent], Metrics]:
        self.advance(self.duration - self.tick)
        self.finish()
        return self.trace, self.metrics()

    def finish(self) -> None:
        """Append the end-of-run summary events once."""
        if self.finished:
            return
        self.finished = True
        end = self.duration
        for sender_id, address, stats in self.medium.all_link_stats():
            self.emit(end, sender_id, EventKind.LINK_STATS,
                      address=address, sent=stats.frames_sent, acked=stats.frames_acked,
                      lost=stats.frames_lost, pdr=stats.pdr)
        for drone in self.scenario.drones:
            state = self.agent(drone.id).state
            self.emit(end, drone.id, EventKind.FINAL_STATUS,
                      status=state.status.value,
                      controller=state.controlling_address,
                      last_setpoint=state.last_setpoint)
        logger.info(f"run finished at tick {end}: {len(self.trace)} trace events")

    # -------------------------------------------------------------------------
    # Metrics
    # -------------------------------------------------------------------------

    def attack_onset(self) -> Optional[int]:
        onsets = [
            event.tick for event in self.trace
            if event.kind == EventKind.JAMMER_ON
            or (event.kind == EventKind.PHASE
                and event.details.get("phase") in (HijackPhase.JAM_CW.value, HijackPhase.CONNECT.value))
        ]
        return min(onsets) if onsets else None

    def metrics(self) -> Metrics:
        onset = self.attack_onset()
        links = [
            LinkMetrics(sender=sender_id, address=address,
                        frames_sent=stats.frames_sent, frames_acked=stats.frames_acked)
            for sender_id, address, stats in self.medium.all_link_stats()
        ]

        link_lost: Dict[str, Optional[int]] = {}
        time_to_loss: Dict[str, Optional[int]] = {}
        mission: Dict[str, bool] = {}
        for gcs in self.scenario.gcs_stations:
            agent = self.agent(gcs.id)
            link_lost[gcs.id] = agent.link_lost_tick
            mission[gcs.id] = agent.done
            if agent.link_lost_tick is not None and onset is not None:
                time_to_loss[gcs.id] = agent.link_lost_tick - onset
            else:
                time_to_loss[gcs.id] = None

        return Metrics(
            links=links,
            attack_onset=onset,
            link_lost_tick=link_lost,
            time_to_link_loss=time_to_loss,
            final_status={d.id: self.agent(d.id).state.status for d in self.scenario.drones},
            mission_complete=mission,
            hijack_phases={h.id: dict(self.agent(h.id).phase_ticks) for h in self.scenario.hijackers},
            alerts=list(self.alerts),
        )


def run(scenario: Scenario, seed_override: Optional[int] = None) -> Tuple[List[TraceEvent], Metrics]:
    """Run `scenario` to completion; identical (scenario, seed) pairs give identical traces."""
    return Simulation(scenario, seed_override).run()
