"""Stasheff integrations with external libraries."""
