"""Tests for consensusmine."""
