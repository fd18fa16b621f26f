"""Core modules for hashembed."""
