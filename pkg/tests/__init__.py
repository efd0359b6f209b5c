"""Tests for tangent-bundle-nn."""
