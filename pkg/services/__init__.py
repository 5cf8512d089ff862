"""Simulator services: codec, signal processing, medium, defenses, engine and CLI."""
