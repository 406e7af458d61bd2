"""Tests for lucaslehmer."""
