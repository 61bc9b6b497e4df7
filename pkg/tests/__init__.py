"""Tests for ahb-inverse."""
