"""Integration tests - drive the CLI end to end."""
