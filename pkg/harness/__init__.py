"""Harness layer - oracles, generators and self-test suites."""
