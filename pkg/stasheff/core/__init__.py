"""Core mathematical modules of Stasheff."""
