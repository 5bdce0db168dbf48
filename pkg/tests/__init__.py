"""Tests for the entanglion package."""
