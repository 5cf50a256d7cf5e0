"""Shared utilities: error hierarchy and serialisation helpers."""
