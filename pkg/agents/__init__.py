"""Roster agents: drones, ground stations and attackers."""

from .base import AgentFactory, BaseAgent, InboundFrame, OutboundFrame, SimContext

__all__ = ["AgentFactory", "BaseAgent", "InboundFrame", "OutboundFrame", "SimContext"]
