"""Tests for sepbayes."""
