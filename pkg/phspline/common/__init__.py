"""Shared infrastructure: logging, settings, errors, number formatting."""
